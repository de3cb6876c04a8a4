use std::ffi::{CStr, CString};
use std::ptr;

use signed_covers_ffi::*;

fn parse(text: &str) -> *mut ScovGraph {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { scov_graph_parse(text.as_ptr(), &mut g) }, ScovStatus::Ok);
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(scov_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn negative_loop_has_no_cover() {
    let g = parse("e x x -\n");
    let mut fa = true;
    unsafe {
        assert_eq!(scov_graph_is_flow_admissible(g, &mut fa), ScovStatus::Ok);
        assert!(!fa);
        let mut c = ptr::null_mut();
        assert_eq!(scov_find_k_cover(g, 2, &mut c), ScovStatus::NotFound);
        assert!(c.is_null());
        let mut k = 0;
        assert_eq!(scov_min_uniform_cover(g, 6, &mut k), ScovStatus::NotFound);
        assert_eq!(scov_find_k_cover(g, 0, &mut c), ScovStatus::InvalidArgument);
        assert!(last_error().contains("k must be positive"));
        scov_graph_free(g);
    }
}

#[test]
fn arrays_build_graphs_and_switching_keeps_balance() {
    let (us, vs, signs) = ([0u32, 1, 2], [1u32, 2, 0], [-1i8, -1, 1]);
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(scov_graph_new(3, us.as_ptr(), vs.as_ptr(), signs.as_ptr(), 3, &mut g), ScovStatus::Ok);
        assert_eq!(scov_graph_vertex_count(g), 3);
        let mut balanced = false;
        assert_eq!(scov_graph_is_balanced(g, &mut balanced), ScovStatus::Ok);
        assert!(balanced);
        let mut h = ptr::null_mut();
        assert_eq!(scov_graph_switch(g, [1u32].as_ptr(), 1, &mut h), ScovStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(scov_graph_to_edge_list(h, &mut text), ScovStatus::Ok);
        let s = CStr::from_ptr(text).to_str().unwrap().to_string();
        scov_string_free(text);
        assert_eq!(s.matches(" +").count(), 3, "{s}");
        assert_eq!(scov_graph_switch(g, [7u32].as_ptr(), 1, &mut h), ScovStatus::InvalidArgument);
        let mut bad = ptr::null_mut();
        assert_eq!(scov_graph_new(2, us.as_ptr(), vs.as_ptr(), [3i8, 1, 1].as_ptr(), 1, &mut bad), ScovStatus::InvalidArgument);
        assert_eq!(scov_graph_new(2, us.as_ptr(), vs.as_ptr(), signs.as_ptr(), 3, &mut bad), ScovStatus::InvalidArgument);
        scov_graph_free(h);
        scov_graph_free(g);
    }
}

#[test]
fn six_cover_of_figure_eight_with_a_positive_loop() {
    let g = parse("e x x -\ne x x -\ne x x +\n");
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(scov_find_k_cover(g, 6, &mut c), ScovStatus::Ok);
        assert_eq!(scov_cover_k(c), 6);
        let mut valid = false;
        assert_eq!(scov_cover_verify(g, c, &mut valid), ScovStatus::Ok);
        assert!(valid);
        let (mut mult, mut barbell, mut len) = (0, false, 0);
        let mut total = 0;
        for i in 0..scov_cover_member_count(c) {
            assert_eq!(scov_cover_member(c, i, &mut mult, &mut barbell, &mut len), ScovStatus::Ok);
            let mut buf = vec![0u32; len];
            assert_eq!(scov_cover_member_edges(c, i, buf.as_mut_ptr(), len), ScovStatus::Ok);
            total += mult as usize * len;
            if len > 0 {
                assert_eq!(scov_cover_member_edges(c, i, buf.as_mut_ptr(), len - 1), ScovStatus::InvalidArgument);
            }
        }
        assert_eq!(total, 18);
        assert_eq!(scov_cover_member(c, 99, &mut mult, &mut barbell, &mut len), ScovStatus::InvalidArgument);
        scov_cover_free(c);
        scov_graph_free(g);
    }
}

#[test]
fn null_handles_are_reported() {
    unsafe {
        let mut out = false;
        assert_eq!(scov_graph_is_eulerian(ptr::null(), &mut out), ScovStatus::NullPointer);
        assert!(last_error().contains("`g` is null"));
        assert_eq!(scov_graph_edge_count(ptr::null()), 0);
        assert_eq!(scov_cover_k(ptr::null()), 0);
        scov_graph_free(ptr::null_mut());
        scov_cover_free(ptr::null_mut());
        scov_string_free(ptr::null_mut());
    }
}
