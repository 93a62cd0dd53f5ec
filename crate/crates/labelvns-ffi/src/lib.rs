//! C ABI over the solver library.
//!
//! Conventions:
//!
//! * Graphs and solutions are opaque handles, created and destroyed by this
//!   library; every `lvns_*_free` accepts null.
//! * Fallible calls return an [`LvnsStatus`]; on failure
//!   [`lvns_last_error`] carries a detail message for the calling thread,
//!   valid until that thread's next call into the library.
//! * Array getters follow the two-call pattern: they always return the full
//!   length and copy at most `cap` elements into `buf`.
//! * Panics never cross the boundary; they surface as
//!   `LVNS_STATUS_INTERNAL_ERROR`.

use std::cell::RefCell;
use std::ffi::{CStr, CString, c_char};
use std::panic::{AssertUnwindSafe, catch_unwind};
use std::time::Duration;

use labelvns::{
    GeneratorParams, LabelledGraph, ProblemSpec, SolveError, SolverConfig, Variant, exact_solve,
    extract_forest, generate, parse_instance, solve, write_instance,
};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LvnsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A parameter was out of its domain (density, label budget, ...).
    InvalidArgument = 2,
    /// The instance text is not well-formed.
    ParseError = 3,
    /// The graph is disconnected under the full label set, so the
    /// spanning-tree problem has no feasible solution.
    Unsolvable = 4,
    /// The instance exceeds the exact solver's label cap.
    LabelLimitExceeded = 5,
    /// Neither an iteration limit nor a time limit was given.
    NoBudget = 6,
    /// The instance text is not valid UTF-8.
    InvalidUtf8 = 7,
    /// A panic was caught at the boundary; a bug in this library.
    InternalError = 8,
}

/// Problem selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LvnsProblem {
    /// Minimize the number of labels spanning the graph; `kbar` is ignored.
    Mlst = 0,
    /// Minimize components using at most `kbar` labels.
    Klsf = 1,
}

/// Search scheme selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LvnsVariant {
    Basic = 0,
    Complementary = 1,
    Intelligent = 2,
}

/// Opaque edge-labelled graph handle.
pub struct LvnsGraph {
    inner: LabelledGraph,
}

/// Opaque solution handle, produced by the heuristic or the exact solver.
pub struct LvnsSolution {
    labels: Vec<usize>,
    forest: Vec<usize>,
    label_count: usize,
    component_count: usize,
    feasible: bool,
    iterations: u64,
    wall_ms: u64,
    subsets_examined: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("nul bytes stripped");
    });
}

fn guarded(body: impl FnOnce() -> LvnsStatus) -> LvnsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            LvnsStatus::InternalError
        }
    }
}

/// Detail message for the most recent failure on the calling thread. The
/// pointer stays valid until this thread's next call into the library.
#[no_mangle]
pub extern "C" fn lvns_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses instance text (header line `n m l`, then one `u v c` line per
/// edge) into a graph handle owned by the caller.
///
/// # Safety
/// `text` must point to a nul-terminated string and `out` to writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn lvns_graph_parse(
    text: *const c_char,
    out: *mut *mut LvnsGraph,
) -> LvnsStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            set_error("text and out must be non-null");
            return LvnsStatus::NullPointer;
        }
        let text = match unsafe { CStr::from_ptr(text) }.to_str() {
            Ok(text) => text,
            Err(_) => {
                set_error("instance text is not valid UTF-8");
                return LvnsStatus::InvalidUtf8;
            }
        };
        match parse_instance(text) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(LvnsGraph { inner })) };
                LvnsStatus::Ok
            }
            Err(error) => {
                set_error(&error.to_string());
                LvnsStatus::ParseError
            }
        }
    })
}

/// Generates a seeded random instance; identical parameters give identical
/// graphs.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn lvns_graph_generate(
    node_count: usize,
    label_count: usize,
    edge_density: f64,
    seed: u64,
    out: *mut *mut LvnsGraph,
) -> LvnsStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out must be non-null");
            return LvnsStatus::NullPointer;
        }
        let params = GeneratorParams {
            node_count,
            label_count,
            edge_density,
            seed,
        };
        match generate(&params) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(LvnsGraph { inner })) };
                LvnsStatus::Ok
            }
            Err(error) => {
                set_error(&error.to_string());
                LvnsStatus::InvalidArgument
            }
        }
    })
}

/// Renders the graph in canonical instance text as a nul-terminated string;
/// release it with [`lvns_string_free`].
///
/// # Safety
/// `graph` must be a live handle from this library and `out_text` writable.
#[no_mangle]
pub unsafe extern "C" fn lvns_graph_write(
    graph: *const LvnsGraph,
    out_text: *mut *mut c_char,
) -> LvnsStatus {
    guarded(|| {
        if graph.is_null() || out_text.is_null() {
            set_error("graph and out_text must be non-null");
            return LvnsStatus::NullPointer;
        }
        let graph = unsafe { &*graph };
        if graph.inner.edge_count() == 0 {
            set_error("the text format cannot represent a graph without edges");
            return LvnsStatus::InvalidArgument;
        }
        let text = write_instance(&graph.inner);
        let text = CString::new(text).expect("instance text has no nul bytes");
        unsafe { *out_text = text.into_raw() };
        LvnsStatus::Ok
    })
}

/// Number of nodes; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn lvns_graph_node_count(graph: *const LvnsGraph) -> usize {
    if graph.is_null() { 0 } else { unsafe { &*graph }.inner.node_count() }
}

/// Number of edges; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn lvns_graph_edge_count(graph: *const LvnsGraph) -> usize {
    if graph.is_null() { 0 } else { unsafe { &*graph }.inner.edge_count() }
}

/// Number of labels; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn lvns_graph_label_count(graph: *const LvnsGraph) -> usize {
    if graph.is_null() { 0 } else { unsafe { &*graph }.inner.label_count() }
}

/// Releases a graph handle; accepts null.
#[no_mangle]
pub unsafe extern "C" fn lvns_graph_free(graph: *mut LvnsGraph) {
    if !graph.is_null() {
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// Releases a string returned by this library; accepts null.
#[no_mangle]
pub unsafe extern "C" fn lvns_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}

fn problem_spec(problem: LvnsProblem, kbar: usize) -> ProblemSpec {
    match problem {
        LvnsProblem::Mlst => ProblemSpec::Mlst,
        LvnsProblem::Klsf => ProblemSpec::Klsf { label_budget: kbar },
    }
}

/// Runs the heuristic solver. `kbar` is the label budget for the forest
/// problem and ignored otherwise; a zero `max_iterations` or `max_time_ms`
/// means "no limit of that kind", but at least one must be positive.
///
/// # Safety
/// `graph` must be a live handle from this library and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lvns_solve(
    graph: *const LvnsGraph,
    problem: LvnsProblem,
    kbar: usize,
    variant: LvnsVariant,
    seed: u64,
    max_iterations: u64,
    max_time_ms: u64,
    out: *mut *mut LvnsSolution,
) -> LvnsStatus {
    guarded(|| {
        if graph.is_null() || out.is_null() {
            set_error("graph and out must be non-null");
            return LvnsStatus::NullPointer;
        }
        if max_iterations == 0 && max_time_ms == 0 {
            set_error("at least one of max_iterations and max_time_ms must be positive");
            return LvnsStatus::NoBudget;
        }
        let graph = unsafe { &*graph };
        let spec = problem_spec(problem, kbar);
        let config = SolverConfig {
            variant: match variant {
                LvnsVariant::Basic => Variant::BasicVns,
                LvnsVariant::Complementary => Variant::CoVns,
                LvnsVariant::Intelligent => Variant::IntVns,
            },
            max_iterations: (max_iterations > 0).then_some(max_iterations),
            max_elapsed: (max_time_ms > 0).then(|| Duration::from_millis(max_time_ms)),
            seed,
            record_trace: false,
        };
        match solve(&graph.inner, &spec, &config) {
            Ok(result) => {
                let solution = LvnsSolution {
                    labels: result.labels.members(),
                    forest: result.forest.edges().to_vec(),
                    label_count: result.evaluation.label_count,
                    component_count: result.evaluation.component_count,
                    feasible: result.evaluation.feasible,
                    iterations: result.iterations_used,
                    wall_ms: result.wall_time.as_millis() as u64,
                    subsets_examined: 0,
                };
                unsafe { *out = Box::into_raw(Box::new(solution)) };
                LvnsStatus::Ok
            }
            Err(error) => {
                set_error(&error.to_string());
                match error {
                    SolveError::Unsolvable => LvnsStatus::Unsolvable,
                    SolveError::InvalidBudget { .. } => LvnsStatus::InvalidArgument,
                    SolveError::Unbounded => LvnsStatus::NoBudget,
                }
            }
        }
    })
}

/// Runs the exact solver (exhaustive enumeration; limited to small label
/// counts). `kbar` as in [`lvns_solve`].
///
/// # Safety
/// `graph` must be a live handle from this library and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lvns_oracle(
    graph: *const LvnsGraph,
    problem: LvnsProblem,
    kbar: usize,
    out: *mut *mut LvnsSolution,
) -> LvnsStatus {
    guarded(|| {
        if graph.is_null() || out.is_null() {
            set_error("graph and out must be non-null");
            return LvnsStatus::NullPointer;
        }
        let graph = unsafe { &*graph };
        let spec = problem_spec(problem, kbar);
        match exact_solve(&graph.inner, &spec) {
            Ok(result) => {
                let solution = LvnsSolution {
                    forest: extract_forest(&graph.inner, &result.optimum).edges().to_vec(),
                    labels: result.optimum.members(),
                    label_count: result.evaluation.label_count,
                    component_count: result.evaluation.component_count,
                    feasible: result.evaluation.feasible,
                    iterations: 0,
                    wall_ms: 0,
                    subsets_examined: result.subsets_examined,
                };
                unsafe { *out = Box::into_raw(Box::new(solution)) };
                LvnsStatus::Ok
            }
            Err(error) => {
                set_error(&error.to_string());
                match error {
                    labelvns::OracleError::TooManyLabels(_) => LvnsStatus::LabelLimitExceeded,
                    labelvns::OracleError::Unsolvable => LvnsStatus::Unsolvable,
                    labelvns::OracleError::InvalidBudget { .. } => LvnsStatus::InvalidArgument,
                }
            }
        }
    })
}

/// Number of labels in the solution; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn lvns_solution_label_count(solution: *const LvnsSolution) -> usize {
    if solution.is_null() { 0 } else { unsafe { &*solution }.label_count }
}

/// Component count of the solution's induced subgraph; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn lvns_solution_component_count(solution: *const LvnsSolution) -> usize {
    if solution.is_null() { 0 } else { unsafe { &*solution }.component_count }
}

/// Whether the solution satisfies its problem's feasibility rule; false for
/// a null handle.
#[no_mangle]
pub unsafe extern "C" fn lvns_solution_feasible(solution: *const LvnsSolution) -> bool {
    if solution.is_null() { false } else { unsafe { &*solution }.feasible }
}

/// Completed search iterations (0 for exact solutions); 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn lvns_solution_iterations(solution: *const LvnsSolution) -> u64 {
    if solution.is_null() { 0 } else { unsafe { &*solution }.iterations }
}

/// Wall-clock milliseconds of the solver run (0 for exact solutions); 0 for
/// a null handle.
#[no_mangle]
pub unsafe extern "C" fn lvns_solution_wall_ms(solution: *const LvnsSolution) -> u64 {
    if solution.is_null() { 0 } else { unsafe { &*solution }.wall_ms }
}

/// Subsets examined by the exact solver (0 for heuristic solutions); 0 for a
/// null handle.
#[no_mangle]
pub unsafe extern "C" fn lvns_solution_subsets_examined(solution: *const LvnsSolution) -> u64 {
    if solution.is_null() { 0 } else { unsafe { &*solution }.subsets_examined }
}

/// Copies the solution's label ids (ascending) into `buf` (at most `cap`
/// elements) and returns the full label count; call with `cap = 0` to size
/// the buffer. Null `solution` gives 0.
///
/// # Safety
/// `buf` must point to at least `cap` writable elements when `cap > 0`.
#[no_mangle]
pub unsafe extern "C" fn lvns_solution_labels(
    solution: *const LvnsSolution,
    buf: *mut usize,
    cap: usize,
) -> usize {
    if solution.is_null() {
        return 0;
    }
    let labels = &unsafe { &*solution }.labels;
    if !buf.is_null() {
        for (i, &label) in labels.iter().take(cap).enumerate() {
            unsafe { *buf.add(i) = label };
        }
    }
    labels.len()
}

/// Copies the solution's spanning-forest edge indices into `buf` (at most
/// `cap` elements) and returns the full edge count; same contract as
/// [`lvns_solution_labels`].
///
/// # Safety
/// `buf` must point to at least `cap` writable elements when `cap > 0`.
#[no_mangle]
pub unsafe extern "C" fn lvns_solution_forest(
    solution: *const LvnsSolution,
    buf: *mut usize,
    cap: usize,
) -> usize {
    if solution.is_null() {
        return 0;
    }
    let forest = &unsafe { &*solution }.forest;
    if !buf.is_null() {
        for (i, &index) in forest.iter().take(cap).enumerate() {
            unsafe { *buf.add(i) = index };
        }
    }
    forest.len()
}

/// Releases a solution handle; accepts null.
#[no_mangle]
pub unsafe extern "C" fn lvns_solution_free(solution: *mut LvnsSolution) {
    if !solution.is_null() {
        drop(unsafe { Box::from_raw(solution) });
    }
}
