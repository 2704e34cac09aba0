//! C interface to `subcode`.
//!
//! Codes and graphs are opaque handles created by `subcode_*` constructors and
//! released with the matching `_free` function. Every function returns a
//! [`SubcodeStatus`]; on failure `subcode_last_error` describes the cause.
//! Strings returned to the caller are freed with [`subcode_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use subcode::bounds::{johnson_bound, one_incidence_bound, resolve_upper, BoundsDb};
use subcode::clique::{build_distance_graph, build_extension_graph, max_clique, SearchConfig, SearchStatus, SubspaceGraph};
use subcode::codes::{emit_code, parse_code, SubspaceCode};
use subcode::constructions::{lifted_mrd, lifted_mrd_plus_one};
use subcode::Error;

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubcodeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Overflow = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubcodeConstruction {
    LiftedMrd = 0,
    LiftedMrdPlusOne = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubcodeSearchStatus {
    Complete = 0,
    TargetReached = 1,
    TimeLimit = 2,
    NodeLimit = 3,
    Interrupted = 4,
}

/// Limits for [`subcode_max_clique`]; zero means unlimited or unset.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SubcodeSearchOptions {
    pub time_limit_ms: u64,
    pub node_limit: u64,
    pub target: usize,
    pub threads: usize,
    pub seed: u64,
    pub warm_start: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SubcodeCliqueResult {
    pub lower: usize,
    pub upper: usize,
    pub optimal: bool,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub status: SubcodeSearchStatus,
}

/// Opaque subspace code.
pub struct SubcodeCode(SubspaceCode);

/// Opaque conflict graph whose vertices are subspaces.
pub struct SubcodeGraph(SubspaceGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(SubcodeStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => SubcodeStatus::Parse,
            _ => SubcodeStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

macro_rules! from_lib {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Error::from(e).into()
            }
        }
    )*};
}

from_lib!(
    subcode::codes::CodeError,
    subcode::codes::ParseError,
    subcode::bounds::BoundsError,
    subcode::clique::CliqueError,
    subcode::constructions::ConstructionError
);

fn null(what: &str) -> Failure {
    Failure(SubcodeStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records any error and converts panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SubcodeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SubcodeStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            SubcodeStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn to_u64(x: &num_bigint::BigUint) -> Result<u64, Failure> {
    u64::try_from(x).map_err(|_| Failure(SubcodeStatus::Overflow, format!("{x} does not fit in 64 bits")))
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn subcode_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn subcode_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a code in the text format used by the command line tool.
#[no_mangle]
pub unsafe extern "C" fn subcode_code_parse(text: *const c_char, out: *mut *mut SubcodeCode) -> SubcodeStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure(SubcodeStatus::InvalidUtf8, e.to_string()))?;
        let code = parse_code(s)?;
        put(out, Box::into_raw(Box::new(SubcodeCode(code))), "out")
    })
}

/// Canonical text of a code; free it with [`subcode_string_free`].
#[no_mangle]
pub unsafe extern "C" fn subcode_code_emit(code: *const SubcodeCode, out: *mut *mut c_char) -> SubcodeStatus {
    guard(|| {
        let c = as_ref(code, "code")?;
        let text = emit_code(&c.0)?;
        let s = CString::new(text).expect("code text has no NUL");
        put(out, s.into_raw(), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn subcode_code_free(code: *mut SubcodeCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

#[no_mangle]
pub unsafe extern "C" fn subcode_code_len(code: *const SubcodeCode, out: *mut usize) -> SubcodeStatus {
    guard(|| put(out, as_ref(code, "code")?.0.len(), "out"))
}

/// Minimum subspace distance, or -1 for codes with fewer than two codewords.
#[no_mangle]
pub unsafe extern "C" fn subcode_code_min_distance(code: *const SubcodeCode, out: *mut i64) -> SubcodeStatus {
    guard(|| {
        let d = as_ref(code, "code")?.0.min_distance()?;
        put(out, d.map_or(-1, |d| d as i64), "out")
    })
}

/// A binary lifted MRD code of `k`-subspaces of `F_2^v` with distance `d`.
#[no_mangle]
pub unsafe extern "C" fn subcode_code_construct(
    kind: SubcodeConstruction,
    v: usize,
    k: usize,
    d: usize,
    out: *mut *mut SubcodeCode,
) -> SubcodeStatus {
    guard(|| {
        let c = match kind {
            SubcodeConstruction::LiftedMrd => lifted_mrd(v, k, d)?,
            SubcodeConstruction::LiftedMrdPlusOne => lifted_mrd_plus_one(v, k, d)?,
        };
        put(out, Box::into_raw(Box::new(SubcodeCode(c))), "out")
    })
}

/// The code of orthogonal complements.
#[no_mangle]
pub unsafe extern "C" fn subcode_code_orthogonal(code: *const SubcodeCode, out: *mut *mut SubcodeCode) -> SubcodeStatus {
    guard(|| {
        let c = as_ref(code, "code")?.0.orthogonal();
        put(out, Box::into_raw(Box::new(SubcodeCode(c))), "out")
    })
}

/// Johnson bound on `A_q(v,d;k)` over the built-in bounds table.
#[no_mangle]
pub unsafe extern "C" fn subcode_bound_johnson(q: u32, v: u32, d: u32, k: u32, out: *mut u64) -> SubcodeStatus {
    guard(|| put(out, to_u64(&johnson_bound(q, v, d, k, &BoundsDb::seeded())?.value)?, "out"))
}

/// Best upper bound on `A_q(v,d;k)` the library can derive.
#[no_mangle]
pub unsafe extern "C" fn subcode_bound_upper(q: u32, v: u32, d: u32, k: u32, out: *mut u64) -> SubcodeStatus {
    guard(|| put(out, to_u64(&resolve_upper(q, v, d, k, &BoundsDb::seeded())?.value)?, "out"))
}

/// `(q^k+1)(q^k+1-c)`.
#[no_mangle]
pub unsafe extern "C" fn subcode_bound_one_incidence(q: u32, k: u32, c: u64, out: *mut u64) -> SubcodeStatus {
    guard(|| put(out, to_u64(&one_incidence_bound(q, k, c)?)?, "out"))
}

/// All `k`-subspaces of `F_q^v`, adjacent at distance at least `d`.
#[no_mangle]
pub unsafe extern "C" fn subcode_distance_graph(
    q: u32,
    v: usize,
    k: usize,
    d: usize,
    out: *mut *mut SubcodeGraph,
) -> SubcodeStatus {
    guard(|| {
        let g = build_distance_graph(q, v, k, d)?;
        put(out, Box::into_raw(Box::new(SubcodeGraph(g))), "out")
    })
}

/// Solids that extend a `(7,17,6;3)_2` code at distance 5, adjacent at
/// distance 6.
#[no_mangle]
pub unsafe extern "C" fn subcode_extension_graph(code: *const SubcodeCode, out: *mut *mut SubcodeGraph) -> SubcodeStatus {
    guard(|| {
        let g = build_extension_graph(&as_ref(code, "code")?.0)?;
        put(out, Box::into_raw(Box::new(SubcodeGraph(g))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn subcode_graph_free(graph: *mut SubcodeGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

#[no_mangle]
pub unsafe extern "C" fn subcode_graph_size(
    graph: *const SubcodeGraph,
    vertices: *mut usize,
    edges: *mut usize,
) -> SubcodeStatus {
    guard(|| {
        let g = &as_ref(graph, "graph")?.0.graph;
        put(vertices, g.n(), "vertices")?;
        put(edges, g.edge_count(), "edges")
    })
}

/// Searches for a maximum clique. Vertices of the best clique are written to
/// `clique` (ascending); `capacity` must be at least `result.lower`.
#[no_mangle]
pub unsafe extern "C" fn subcode_max_clique(
    graph: *const SubcodeGraph,
    options: *const SubcodeSearchOptions,
    result: *mut SubcodeCliqueResult,
    clique: *mut usize,
    capacity: usize,
) -> SubcodeStatus {
    guard(|| {
        let g = &as_ref(graph, "graph")?.0.graph;
        let o = if options.is_null() { SubcodeSearchOptions::default() } else { *options };
        let cfg = SearchConfig {
            time_limit: (o.time_limit_ms > 0).then(|| Duration::from_millis(o.time_limit_ms)),
            node_limit: (o.node_limit > 0).then_some(o.node_limit),
            target: (o.target > 0).then_some(o.target),
            threads: o.threads.max(1),
            seed: o.seed,
            warm_start: o.warm_start,
            ..SearchConfig::default()
        };
        let r = max_clique(g, &cfg)?;
        let status = match r.status {
            SearchStatus::Complete => SubcodeSearchStatus::Complete,
            SearchStatus::TargetReached => SubcodeSearchStatus::TargetReached,
            SearchStatus::TimeLimit => SubcodeSearchStatus::TimeLimit,
            SearchStatus::NodeLimit => SubcodeSearchStatus::NodeLimit,
            SearchStatus::Interrupted => SubcodeSearchStatus::Interrupted,
        };
        let summary = SubcodeCliqueResult {
            lower: r.lower,
            upper: r.upper,
            optimal: r.optimal,
            nodes: r.nodes,
            elapsed_ms: r.elapsed.as_millis() as u64,
            status,
        };
        put(result, summary, "result")?;
        if r.clique.is_empty() {
            return Ok(());
        }
        if clique.is_null() {
            return Err(null("clique"));
        }
        if capacity < r.clique.len() {
            return Err(Failure(
                SubcodeStatus::BufferTooSmall,
                format!("clique has {} vertices, buffer holds {capacity}", r.clique.len()),
            ));
        }
        ptr::copy_nonoverlapping(r.clique.as_ptr(), clique, r.clique.len());
        Ok(())
    })
}

/// The code formed by the subspaces of the given vertices.
#[no_mangle]
pub unsafe extern "C" fn subcode_graph_code(
    graph: *const SubcodeGraph,
    vertices: *const usize,
    count: usize,
    out: *mut *mut SubcodeCode,
) -> SubcodeStatus {
    guard(|| {
        let sg = &as_ref(graph, "graph")?.0;
        let vs: &[usize] = match count {
            0 => &[],
            _ if vertices.is_null() => return Err(null("vertices")),
            _ => std::slice::from_raw_parts(vertices, count),
        };
        if let Some(&bad) = vs.iter().find(|&&v| v >= sg.vertices.len()) {
            return Err(Failure(SubcodeStatus::Domain, format!("vertex {bad} out of range")));
        }
        let words = sg.subspaces(vs);
        let (field, ambient) = match sg.vertices.first() {
            Some(u) => (u.field(), u.ambient()),
            None => return Err(Failure(SubcodeStatus::Domain, "graph has no vertices".into())),
        };
        let code = SubspaceCode::new(field, ambient, words)?;
        put(out, Box::into_raw(Box::new(SubcodeCode(code))), "out")
    })
}
