//! C interface to `signed-covers`.
//!
//! Graphs and cover certificates are opaque heap handles released with
//! their `_free` function. Every fallible call returns a [`ScovStatus`];
//! on failure a message is available from [`scov_last_error`] on the same
//! thread. Strings returned through out-pointers are owned by the caller
//! and released with [`scov_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use signed_covers::circuits::is_flow_admissible;
use signed_covers::cover::{find_k_cover, min_uniform_cover, verify_cover};
use signed_covers::format::{parse_edge_list, write_edge_list};
use signed_covers::necklace::detect_necklace;
use signed_covers::signing::{is_balanced, switch_at};
use signed_covers::{CoverCertificate, Error, Sign, SignedCircuitKind, SignedGraph, SwitchSet, VertexId};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScovStatus {
    Ok = 0,
    /// The requested cover or structure does not exist.
    NotFound = 1,
    InvalidArgument = 2,
    ResourceLimit = 3,
    NullPointer = 4,
    ParseError = 5,
    Panic = 6,
}

/// Opaque signed multigraph.
pub struct ScovGraph {
    graph: SignedGraph,
}

/// Opaque cover certificate.
pub struct ScovCover {
    cert: CoverCertificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> ScovStatus {
    match e {
        Error::InvalidArgument(_) => ScovStatus::InvalidArgument,
        Error::ResourceLimit(_) => ScovStatus::ResourceLimit,
        Error::Parse { .. } => ScovStatus::ParseError,
    }
}

fn fail(status: ScovStatus, msg: impl Into<String>) -> ScovStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> ScovStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, turning a panic into [`ScovStatus::Panic`].
fn guarded(f: impl FnOnce() -> ScovStatus) -> ScovStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            fail(ScovStatus::Panic, msg)
        }
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(ScovStatus::NullPointer, concat!("`", stringify!($p), "` is null"));
        })+
    };
}

fn hand_out(s: String, out: *mut *mut c_char) -> ScovStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for null before calling.
            unsafe { *out = c.into_raw() };
            ScovStatus::Ok
        }
        Err(_) => fail(ScovStatus::InvalidArgument, "string contains a nul byte"),
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn scov_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn scov_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the edge-list text format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn scov_graph_parse(text: *const c_char, out: *mut *mut ScovGraph) -> ScovStatus {
    guarded(|| {
        non_null!(text, out);
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(ScovStatus::ParseError, "input is not UTF-8");
        };
        match parse_edge_list(text) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(ScovGraph { graph }));
                ScovStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Builds a graph on `vertex_count` vertices from parallel arrays of
/// endpoints and signs (`-1` or `+1`).
///
/// # Safety
/// `us`, `vs` and `signs` must each point to `edge_count` readable values
/// (they may be null when `edge_count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn scov_graph_new(
    vertex_count: u32,
    us: *const u32,
    vs: *const u32,
    signs: *const i8,
    edge_count: usize,
    out: *mut *mut ScovGraph,
) -> ScovStatus {
    guarded(|| {
        non_null!(out);
        if edge_count > 0 {
            non_null!(us, vs, signs);
        }
        let slice = |p: *const u32| if edge_count == 0 { &[][..] } else { std::slice::from_raw_parts(p, edge_count) };
        let (us, vs) = (slice(us), slice(vs));
        let signs = if edge_count == 0 { &[][..] } else { std::slice::from_raw_parts(signs, edge_count) };
        let mut edges = Vec::with_capacity(edge_count);
        for i in 0..edge_count {
            let sign = match signs[i] {
                1 => Sign::Positive,
                -1 => Sign::Negative,
                s => return fail(ScovStatus::InvalidArgument, format!("edge {i}: sign {s} is not -1 or +1")),
            };
            edges.push((us[i], vs[i], sign));
        }
        match SignedGraph::from_edges(vertex_count as usize, edges) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(ScovGraph { graph }));
                ScovStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `g` must be null or a live graph handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn scov_graph_free(g: *mut ScovGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn scov_graph_vertex_count(g: *const ScovGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.vertex_count())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn scov_graph_edge_count(g: *const ScovGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edge_count())
}

unsafe fn predicate(g: *const ScovGraph, out: *mut bool, f: fn(&SignedGraph) -> bool) -> ScovStatus {
    guarded(|| {
        non_null!(g, out);
        *out = f(&(*g).graph);
        ScovStatus::Ok
    })
}

/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn scov_graph_is_eulerian(g: *const ScovGraph, out: *mut bool) -> ScovStatus {
    predicate(g, out, SignedGraph::is_eulerian)
}

/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn scov_graph_is_balanced(g: *const ScovGraph, out: *mut bool) -> ScovStatus {
    predicate(g, out, is_balanced)
}

/// Every edge lies in some signed circuit.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn scov_graph_is_flow_admissible(g: *const ScovGraph, out: *mut bool) -> ScovStatus {
    predicate(g, out, is_flow_admissible)
}

/// New graph obtained by switching at the given vertices.
///
/// # Safety
/// `g` must be a live graph handle, `vertices` must point to `len` values
/// (or be null with `len` 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn scov_graph_switch(
    g: *const ScovGraph,
    vertices: *const u32,
    len: usize,
    out: *mut *mut ScovGraph,
) -> ScovStatus {
    guarded(|| {
        non_null!(g, out);
        if len > 0 {
            non_null!(vertices);
        }
        let g = &(*g).graph;
        let ids = if len == 0 { &[][..] } else { std::slice::from_raw_parts(vertices, len) };
        if let Some(bad) = ids.iter().find(|&&v| v as usize >= g.vertex_count()) {
            return fail(ScovStatus::InvalidArgument, format!("vertex {bad} is out of range"));
        }
        let set: SwitchSet = ids.iter().map(|&v| VertexId(v)).collect();
        *out = Box::into_raw(Box::new(ScovGraph { graph: switch_at(g, &set) }));
        ScovStatus::Ok
    })
}

/// The graph in edge-list text format.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn scov_graph_to_edge_list(g: *const ScovGraph, out: *mut *mut c_char) -> ScovStatus {
    guarded(|| {
        non_null!(g, out);
        hand_out(write_edge_list(&(*g).graph), out)
    })
}

/// Number of beads if the graph is a necklace, else `NotFound`.
///
/// # Safety
/// `g` must be a live graph handle and `length` writable.
#[no_mangle]
pub unsafe extern "C" fn scov_necklace_length(g: *const ScovGraph, length: *mut usize) -> ScovStatus {
    guarded(|| {
        non_null!(g, length);
        match detect_necklace(&(*g).graph) {
            Some(s) => {
                *length = s.length;
                ScovStatus::Ok
            }
            None => fail(ScovStatus::NotFound, "not a necklace"),
        }
    })
}

/// Exact search for a `k`-cover. `NotFound` means none exists.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn scov_find_k_cover(g: *const ScovGraph, k: u32, out: *mut *mut ScovCover) -> ScovStatus {
    guarded(|| {
        non_null!(g, out);
        match find_k_cover(&(*g).graph, k) {
            Ok(Some(cert)) => {
                *out = Box::into_raw(Box::new(ScovCover { cert }));
                ScovStatus::Ok
            }
            Ok(None) => fail(ScovStatus::NotFound, format!("no {k}-cover exists")),
            Err(e) => from_error(e),
        }
    })
}

/// Least `k <= k_max` with a `k`-cover, or `NotFound`.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn scov_min_uniform_cover(g: *const ScovGraph, k_max: u32, out: *mut u32) -> ScovStatus {
    guarded(|| {
        non_null!(g, out);
        match min_uniform_cover(&(*g).graph, k_max) {
            Ok(Some(k)) => {
                *out = k;
                ScovStatus::Ok
            }
            Ok(None) => fail(ScovStatus::NotFound, format!("no k-cover with k <= {k_max}")),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `c` must be null or a live cover handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn scov_cover_free(c: *mut ScovCover) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// The cover's `k`, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live cover handle.
#[no_mangle]
pub unsafe extern "C" fn scov_cover_k(c: *const ScovCover) -> u32 {
    c.as_ref().map_or(0, |c| c.cert.k)
}

/// Number of distinct members, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live cover handle.
#[no_mangle]
pub unsafe extern "C" fn scov_cover_member_count(c: *const ScovCover) -> usize {
    c.as_ref().map_or(0, |c| c.cert.members.len())
}

/// Member `index`: its multiplicity, whether it is a barbell, and its
/// number of edges.
///
/// # Safety
/// `c` must be a live cover handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn scov_cover_member(
    c: *const ScovCover,
    index: usize,
    multiplicity: *mut u32,
    is_barbell: *mut bool,
    edge_count: *mut usize,
) -> ScovStatus {
    guarded(|| {
        non_null!(c, multiplicity, is_barbell, edge_count);
        let cert = &(*c).cert;
        let Some(m) = cert.members.get(index) else {
            return fail(ScovStatus::InvalidArgument, format!("member {index} does not exist"));
        };
        *multiplicity = m.multiplicity;
        *is_barbell = m.kind == SignedCircuitKind::Barbell;
        *edge_count = m.edges.len();
        ScovStatus::Ok
    })
}

/// Copies the edge ids of member `index` into `buf`, which must hold at
/// least the member's edge count.
///
/// # Safety
/// `c` must be a live cover handle and `buf` must point to `cap` writable values.
#[no_mangle]
pub unsafe extern "C" fn scov_cover_member_edges(c: *const ScovCover, index: usize, buf: *mut u32, cap: usize) -> ScovStatus {
    guarded(|| {
        non_null!(c, buf);
        let cert = &(*c).cert;
        let Some(m) = cert.members.get(index) else {
            return fail(ScovStatus::InvalidArgument, format!("member {index} does not exist"));
        };
        if cap < m.edges.len() {
            return fail(ScovStatus::InvalidArgument, format!("buffer holds {cap} ids, member has {}", m.edges.len()));
        }
        let out = std::slice::from_raw_parts_mut(buf, cap);
        for (slot, e) in out.iter_mut().zip(m.edges.iter()) {
            *slot = e.0;
        }
        ScovStatus::Ok
    })
}

/// Checks the certificate against `g`.
///
/// # Safety
/// `g` and `c` must be live handles and `valid` writable.
#[no_mangle]
pub unsafe extern "C" fn scov_cover_verify(g: *const ScovGraph, c: *const ScovCover, valid: *mut bool) -> ScovStatus {
    guarded(|| {
        non_null!(g, c, valid);
        match verify_cover(&(*g).graph, &(*c).cert) {
            Ok(r) => {
                *valid = r.valid;
                ScovStatus::Ok
            }
            Err(rej) => {
                *valid = false;
                fail(ScovStatus::InvalidArgument, rej.to_string())
            }
        }
    })
}

/// The certificate as JSON: `{"k", "host", "members": [{"kind", "edges", "multiplicity"}]}`.
///
/// # Safety
/// `c` must be a live cover handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn scov_cover_to_json(c: *const ScovCover, out: *mut *mut c_char) -> ScovStatus {
    guarded(|| {
        non_null!(c, out);
        match serde_json::to_string(&(*c).cert) {
            Ok(s) => hand_out(s, out),
            Err(e) => fail(ScovStatus::InvalidArgument, e.to_string()),
        }
    })
}
