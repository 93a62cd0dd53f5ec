//! Heuristic and exact solvers for edge-labelled graph problems: find a
//! smallest label subset whose induced subgraph spans the nodes (minimum
//! labelling spanning tree), or a bounded label subset minimizing the number
//! of connected components (k-labelled spanning forest).
//!
//! The crate provides:
//!
//! * [`graph`] — labelled graphs, label sets, component counting;
//! * [`problem`] — the two problem definitions and their shared evaluation
//!   and comparison rules;
//! * [`constructive`] — greedy and probabilistic constructive heuristics;
//! * [`solver`] — the variable neighbourhood search engine in three
//!   variants;
//! * [`oracle`] — exact solving by exhaustive enumeration, for small
//!   instances and for validating the heuristics;
//! * [`instance`] — the plain-text instance format and a seeded random
//!   instance generator.
//!
//! Every randomized entry point takes either an explicit RNG or a seed, and
//! equal inputs always produce equal outputs (timing aside), so experiments
//! are reproducible run to run.

pub mod constructive;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod problem;
pub mod solver;

pub use constructive::{
    TemperatureSchedule, acceptance_probability, mvca, mvca_traced, probabilistic_construct,
    probabilistic_construct_traced,
};
pub use graph::{
    ComponentPartition, ComponentTracker, Edge, EdgeForest, GraphError, Label, LabelSet,
    LabelledGraph, NodeId, components, extract_forest, hamming_distance,
};
pub use instance::{
    GeneratorError, GeneratorParams, ParseError, generate, parse_instance, write_instance,
};
pub use oracle::{MAX_ORACLE_LABELS, OracleError, OracleResult, exact_solve};
pub use problem::{Evaluation, ProblemSpec, better_than, evaluate};
pub use solver::{
    ConstructionMode, NoopObserver, SearchObserver, SolveError, SolveResult, SolverConfig,
    TracePoint, Variant, complementary, local_search, random_initial, reactive_update_qmax, shake,
    solve, solve_observed,
};
