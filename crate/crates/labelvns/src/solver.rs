//! The variable neighbourhood search engine and its three variants: the
//! basic scheme, the complementary scheme (each iteration restarts from a
//! greedy build over the labels the incumbent does not use), and the
//! intelligent scheme (probabilistic construction plus a reactive shake
//! amplitude).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};
use thiserror::Error;

use crate::constructive::{
    TemperatureSchedule, construction_complete, mvca, probabilistic_construct,
};
use crate::graph::{EdgeForest, Label, LabelSet, LabelledGraph, extract_forest};
use crate::problem::{Evaluation, ProblemSpec, better_than, evaluate};

/// Which search scheme to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Shake + greedy-repair local search, fixed shake ceiling.
    BasicVns,
    /// Adds the complementary restart before every iteration.
    CoVns,
    /// Complementary restart with probabilistic construction, probabilistic
    /// repair, and a reactive shake ceiling.
    IntVns,
}

/// Run limits and reproducibility knobs. At least one of `max_iterations`
/// and `max_elapsed` must be set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub variant: Variant,
    pub max_iterations: Option<u64>,
    pub max_elapsed: Option<Duration>,
    pub seed: u64,
    /// Record the best-so-far evaluation at every improvement.
    pub record_trace: bool,
}

impl SolverConfig {
    pub fn new(variant: Variant, seed: u64) -> Self {
        Self {
            variant,
            max_iterations: None,
            max_elapsed: None,
            seed,
            record_trace: false,
        }
    }

    pub fn with_max_iterations(mut self, max_iterations: u64) -> Self {
        self.max_iterations = Some(max_iterations);
        self
    }

    pub fn with_max_elapsed(mut self, max_elapsed: Duration) -> Self {
        self.max_elapsed = Some(max_elapsed);
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph is disconnected under the full label set; no connected label subset exists")]
    Unsolvable,
    #[error("label budget {label_budget} outside the valid range 1..={label_count}")]
    InvalidBudget {
        label_budget: usize,
        label_count: usize,
    },
    #[error("solver configuration sets neither max_iterations nor max_elapsed")]
    Unbounded,
}

/// Best-so-far evaluation after a completed iteration; `iteration` 0 is the
/// initial solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TracePoint {
    pub iteration: u64,
    pub evaluation: Evaluation,
}

/// Everything a run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub labels: LabelSet,
    pub evaluation: Evaluation,
    /// Spanning forest of the subgraph induced by `labels`.
    pub forest: EdgeForest,
    /// Completed outer iterations.
    pub iterations_used: u64,
    pub wall_time: Duration,
    pub trace: Option<Vec<TracePoint>>,
}

/// Hooks into the search loop; all methods default to no-ops. Useful for
/// instrumentation and for asserting search invariants from tests.
pub trait SearchObserver {
    /// A complementary construction replaced `incumbent` with `result`.
    fn complementary_applied(&mut self, _incumbent: &LabelSet, _result: &LabelSet) {}
    /// Local search produced `result` from a shaken candidate.
    fn local_search_done(&mut self, _result: &LabelSet) {}
    /// The reactive scheme set the shake ceiling to `q_max` with a best
    /// solution of `best_len` labels; `improved` tells which rule fired.
    fn qmax_updated(&mut self, _improved: bool, _q_max: usize, _best_len: usize) {}
}

/// Observer that ignores every event.
pub struct NoopObserver;

impl SearchObserver for NoopObserver {}

/// Chooses how repair and complementary steps build label sets.
pub enum ConstructionMode<'a> {
    Greedy,
    Probabilistic(&'a mut TemperatureSchedule),
}

/// Builds a random starting solution: labels are tried in a uniformly random
/// order and kept until the stop rule of the problem is met (connected, or
/// the kLSF budget is filled).
pub fn random_initial<R: Rng>(
    graph: &LabelledGraph,
    problem: &ProblemSpec,
    rng: &mut R,
) -> Result<LabelSet, SolveError> {
    use crate::graph::{ComponentTracker, components};
    if matches!(problem, ProblemSpec::Mlst)
        && components(graph, &graph.all_labels()).component_count() != 1
    {
        return Err(SolveError::Unsolvable);
    }
    let mut order: Vec<Label> = (0..graph.label_count()).collect();
    use rand::seq::SliceRandom;
    order.shuffle(rng);
    let mut set = LabelSet::empty(graph.label_count());
    let mut tracker = ComponentTracker::new(graph);
    for label in order {
        if construction_complete(problem, set.len(), tracker.component_count()) {
            break;
        }
        set.insert(label);
        tracker.add_label(label);
    }
    Ok(set)
}

/// Shake move: removes `q` uniformly random labels (all of them when the set
/// has fewer than `q`), i.e. jumps to Hamming distance `min(q, |set|)`.
pub fn shake<R: Rng>(incumbent: &LabelSet, q: usize, rng: &mut R) -> LabelSet {
    let members = incumbent.members();
    let amount = q.min(members.len());
    let mut out = incumbent.clone();
    for index in rand::seq::index::sample(rng, members.len(), amount) {
        out.remove(members[index]);
    }
    out
}

/// Complementary construction: builds a solution from scratch using only the
/// labels the incumbent does **not** use. The result is disjoint from the
/// incumbent and may well be infeasible; it is handed to local search as-is.
pub fn complementary<R: Rng>(
    graph: &LabelledGraph,
    incumbent: &LabelSet,
    problem: &ProblemSpec,
    mode: ConstructionMode<'_>,
    rng: &mut R,
) -> LabelSet {
    let allowed = incumbent.complement();
    let start = LabelSet::empty(graph.label_count());
    if allowed.is_empty() {
        return start;
    }
    match mode {
        ConstructionMode::Greedy => mvca(graph, &allowed, problem, &start),
        ConstructionMode::Probabilistic(schedule) => {
            probabilistic_construct(graph, &allowed, problem, &start, schedule, rng)
        }
    }
}

/// Local search: repair the candidate to feasibility, then drop every label
/// whose removal does not hurt, and (kLSF only) greedily refill up to the
/// budget.
///
/// * repair — spanning-tree problem: add labels (greedy, or probabilistic in
///   `Probabilistic` mode) until connected or no labels remain; forest
///   problem: drop uniformly random labels until within budget.
/// * drop — scan labels in ascending id order and remove each one whose
///   removal leaves the evaluation at least as good, repeating until a full
///   pass removes nothing.
/// * refill (kLSF) — greedy adds until the budget is filled or the subgraph
///   is connected.
pub fn local_search<R: Rng>(
    graph: &LabelledGraph,
    candidate: LabelSet,
    problem: &ProblemSpec,
    mode: ConstructionMode<'_>,
    rng: &mut R,
) -> LabelSet {
    let mut current = candidate;
    match problem {
        ProblemSpec::Mlst => {
            let full = graph.all_labels();
            current = match mode {
                ConstructionMode::Greedy => mvca(graph, &full, problem, &current),
                ConstructionMode::Probabilistic(schedule) => {
                    probabilistic_construct(graph, &full, problem, &current, schedule, rng)
                }
            };
        }
        ProblemSpec::Klsf { label_budget } => {
            let members = current.members();
            if members.len() > *label_budget {
                let excess = members.len() - label_budget;
                for index in rand::seq::index::sample(rng, members.len(), excess) {
                    current.remove(members[index]);
                }
            }
        }
    }

    loop {
        let mut removed_any = false;
        let mut current_eval = evaluate(graph, &current, problem);
        for label in current.members() {
            let mut trial = current.clone();
            trial.remove(label);
            let trial_eval = evaluate(graph, &trial, problem);
            if !better_than(&current_eval, &trial_eval, problem) {
                current = trial;
                current_eval = trial_eval;
                removed_any = true;
            }
        }
        if !removed_any {
            break;
        }
    }

    if problem.is_klsf() {
        current = mvca(graph, &graph.all_labels(), problem, &current);
    }
    current
}

/// Reactive update of the shake ceiling: one step down on improvement, one
/// step up on stagnation, clamped into `[ceil(best_len / 2), 2 * best_len]`.
/// The clamp also re-centers the ceiling when the best solution's size jumps
/// (e.g. a large improvement), so the interval invariant holds after every
/// update.
pub fn reactive_update_qmax(improved: bool, q_max: usize, best_len: usize) -> usize {
    assert!(best_len >= 1, "reactive update needs a non-empty best solution");
    let moved = if improved {
        q_max.saturating_sub(1)
    } else {
        q_max + 1
    };
    moved.clamp(best_len.div_ceil(2), 2 * best_len)
}

/// Runs the configured variant to its budget and returns the best solution
/// found. Identical inputs (graph, problem, config) give identical results,
/// except `wall_time`, whenever no elapsed-time limit is in play.
pub fn solve(
    graph: &LabelledGraph,
    problem: &ProblemSpec,
    config: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    solve_observed(graph, problem, config, &mut NoopObserver)
}

/// [`solve`] with observer hooks into the search loop.
pub fn solve_observed(
    graph: &LabelledGraph,
    problem: &ProblemSpec,
    config: &SolverConfig,
    observer: &mut dyn SearchObserver,
) -> Result<SolveResult, SolveError> {
    if config.max_iterations.is_none() && config.max_elapsed.is_none() {
        return Err(SolveError::Unbounded);
    }
    if let ProblemSpec::Klsf { label_budget } = problem {
        if *label_budget == 0 || *label_budget > graph.label_count() {
            return Err(SolveError::InvalidBudget {
                label_budget: *label_budget,
                label_count: graph.label_count(),
            });
        }
    }

    let started = Instant::now();
    let deadline = config.max_elapsed.map(|limit| started + limit);
    let out_of_time = || deadline.is_some_and(|d| Instant::now() >= d);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut best = random_initial(graph, problem, &mut rng)?;
    let mut best_eval = evaluate(graph, &best, problem);
    let mut incumbent = best.clone();
    let mut incumbent_eval = best_eval;
    // Shake ceiling starts at the size of the initial solution; the floor of
    // 1 only matters for edge-case instances whose solution is empty.
    let mut q_max = best.len().max(1);
    let mut iterations: u64 = 0;
    let mut trace = config.record_trace.then(|| {
        vec![TracePoint {
            iteration: 0,
            evaluation: best_eval,
        }]
    });

    loop {
        if config
            .max_iterations
            .is_some_and(|limit| iterations >= limit)
            || out_of_time()
        {
            break;
        }

        match config.variant {
            Variant::BasicVns => {}
            Variant::CoVns => {
                let rebuilt =
                    complementary(graph, &incumbent, problem, ConstructionMode::Greedy, &mut rng);
                observer.complementary_applied(&incumbent, &rebuilt);
                incumbent_eval = evaluate(graph, &rebuilt, problem);
                incumbent = rebuilt;
            }
            Variant::IntVns => {
                let mut schedule = TemperatureSchedule::from_best_size(best.len().max(1));
                let rebuilt = complementary(
                    graph,
                    &incumbent,
                    problem,
                    ConstructionMode::Probabilistic(&mut schedule),
                    &mut rng,
                );
                observer.complementary_applied(&incumbent, &rebuilt);
                incumbent_eval = evaluate(graph, &rebuilt, problem);
                incumbent = rebuilt;
            }
        }

        let mut interrupted = false;
        let mut q = 1;
        while q <= q_max {
            if out_of_time() {
                interrupted = true;
                break;
            }
            let shaken = shake(&incumbent, q, &mut rng);
            let repaired = match config.variant {
                Variant::IntVns => {
                    let mut schedule = TemperatureSchedule::from_best_size(best.len().max(1));
                    local_search(
                        graph,
                        shaken,
                        problem,
                        ConstructionMode::Probabilistic(&mut schedule),
                        &mut rng,
                    )
                }
                _ => local_search(graph, shaken, problem, ConstructionMode::Greedy, &mut rng),
            };
            observer.local_search_done(&repaired);
            let repaired_eval = evaluate(graph, &repaired, problem);
            if better_than(&repaired_eval, &incumbent_eval, problem) {
                incumbent = repaired;
                incumbent_eval = repaired_eval;
                q = 1;
            } else {
                q += 1;
            }
        }

        // The best solution is updated before the reactive rule reads it.
        let improved = better_than(&incumbent_eval, &best_eval, problem);
        if improved {
            best = incumbent.clone();
            best_eval = incumbent_eval;
        }
        if interrupted {
            if improved {
                if let Some(points) = &mut trace {
                    points.push(TracePoint {
                        iteration: iterations + 1,
                        evaluation: best_eval,
                    });
                }
            }
            break;
        }
        iterations += 1;
        if improved {
            if let Some(points) = &mut trace {
                points.push(TracePoint {
                    iteration: iterations,
                    evaluation: best_eval,
                });
            }
        }
        if matches!(config.variant, Variant::IntVns) {
            q_max = reactive_update_qmax(improved, q_max, best.len().max(1));
            observer.qmax_updated(improved, q_max, best.len().max(1));
        }
    }

    Ok(SolveResult {
        forest: extract_forest(graph, &best),
        labels: best,
        evaluation: best_eval,
        iterations_used: iterations,
        wall_time: started.elapsed(),
        trace,
    })
}
