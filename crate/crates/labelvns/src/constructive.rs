//! Constructive heuristics: the deterministic greedy (MVCA) and its
//! probabilistic variant with Boltzmann acceptance under an adaptive
//! geometric cooling schedule.

use rand::Rng;

use crate::graph::{ComponentTracker, Label, LabelSet, LabelledGraph};
use crate::problem::ProblemSpec;

/// Redraw budget per construction step, as a multiple of the candidate pool
/// size; when exhausted the step falls back to the greedy-best label.
const REDRAW_FACTOR: usize = 10;

/// Geometric cooling schedule driven by the size of the current best
/// solution: starting from `T = |best|` every cooling step multiplies the
/// temperature by `alpha = 1/|best|`, so after `j` accepted labels the
/// temperature is exactly `|best|^(1-j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperatureSchedule {
    temperature: f64,
    alpha: f64,
}

impl TemperatureSchedule {
    /// Schedule seeded from the size of the current best solution.
    pub fn from_best_size(best_len: usize) -> Self {
        assert!(best_len >= 1, "cooling schedule needs a non-empty best solution");
        Self {
            temperature: best_len as f64,
            alpha: 1.0 / best_len as f64,
        }
    }

    /// Schedule with explicit parameters; `alpha` must lie in `[0, 1]` so the
    /// temperature never increases.
    pub fn new(temperature: f64, alpha: f64) -> Self {
        assert!(temperature >= 0.0, "temperature must be non-negative");
        assert!((0.0..=1.0).contains(&alpha), "alpha must lie in [0, 1]");
        Self { temperature, alpha }
    }

    /// One geometric cooling step.
    pub fn cool(&mut self) {
        self.temperature *= self.alpha;
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Probability of accepting a candidate that is `delta` components worse than
/// the greedy-best remaining candidate, at temperature `temperature`.
///
/// `delta = 0` is accepted unconditionally; at `temperature = 0` any positive
/// `delta` is rejected outright.
pub fn acceptance_probability(delta: f64, temperature: f64) -> f64 {
    if delta <= 0.0 {
        1.0
    } else if temperature <= 0.0 {
        0.0
    } else {
        (-delta / temperature).exp()
    }
}

/// True once a constructive pass must stop growing the set: the induced
/// subgraph is connected, or (kLSF) the label budget is reached.
pub(crate) fn construction_complete(
    problem: &ProblemSpec,
    label_count: usize,
    component_count: usize,
) -> bool {
    match problem {
        ProblemSpec::Mlst => component_count == 1,
        ProblemSpec::Klsf { label_budget } => {
            label_count >= *label_budget || component_count == 1
        }
    }
}

/// Greedy constructive heuristic: repeatedly adds the candidate label that
/// minimizes the resulting component count (ties to the smallest label id),
/// starting from `start` and drawing candidates from `allowed` only.
///
/// Stops when the set is connected, the kLSF budget is exhausted, or no
/// candidates remain; feasibility is not guaranteed when `allowed` is
/// insufficient.
pub fn mvca(
    graph: &LabelledGraph,
    allowed: &LabelSet,
    problem: &ProblemSpec,
    start: &LabelSet,
) -> LabelSet {
    mvca_traced(graph, allowed, problem, start).0
}

/// [`mvca`] plus the order in which labels were added.
pub fn mvca_traced(
    graph: &LabelledGraph,
    allowed: &LabelSet,
    problem: &ProblemSpec,
    start: &LabelSet,
) -> (LabelSet, Vec<Label>) {
    assert!(start.is_subset(allowed), "start must be a subset of allowed");
    let mut current = start.clone();
    let mut tracker = ComponentTracker::with_labels(graph, &current);
    let mut added = Vec::new();
    loop {
        if construction_complete(problem, current.len(), tracker.component_count()) {
            break;
        }
        let mut best: Option<(usize, Label)> = None;
        for label in allowed.iter().filter(|&l| !current.contains(l)) {
            let count = tracker.count_with_label(label);
            // Strict < keeps the smallest label id on ties.
            if best.map_or(true, |(c, _)| count < c) {
                best = Some((count, label));
            }
        }
        let Some((_, label)) = best else { break };
        current.insert(label);
        tracker.add_label(label);
        added.push(label);
    }
    (current, added)
}

/// Probabilistic constructive heuristic.
///
/// Candidates are drawn uniformly at random from the remaining pool. A draw
/// whose component count ties the greedy-best remaining candidate is accepted
/// outright; a deterioration of `delta` components is accepted with
/// probability `exp(-delta / T)`, otherwise the candidate is redrawn (with
/// replacement). After `10 * pool` failed draws in one step the greedy-best
/// label is taken. Every accepted label triggers one cooling step.
pub fn probabilistic_construct<R: Rng>(
    graph: &LabelledGraph,
    allowed: &LabelSet,
    problem: &ProblemSpec,
    start: &LabelSet,
    schedule: &mut TemperatureSchedule,
    rng: &mut R,
) -> LabelSet {
    probabilistic_construct_traced(graph, allowed, problem, start, schedule, rng).0
}

/// [`probabilistic_construct`] plus the order in which labels were added.
pub fn probabilistic_construct_traced<R: Rng>(
    graph: &LabelledGraph,
    allowed: &LabelSet,
    problem: &ProblemSpec,
    start: &LabelSet,
    schedule: &mut TemperatureSchedule,
    rng: &mut R,
) -> (LabelSet, Vec<Label>) {
    assert!(start.is_subset(allowed), "start must be a subset of allowed");
    let mut current = start.clone();
    let mut tracker = ComponentTracker::with_labels(graph, &current);
    let mut added = Vec::new();
    loop {
        if construction_complete(problem, current.len(), tracker.component_count()) {
            break;
        }
        let pool: Vec<Label> = allowed.iter().filter(|&l| !current.contains(l)).collect();
        if pool.is_empty() {
            break;
        }
        let counts: Vec<usize> = pool.iter().map(|&l| tracker.count_with_label(l)).collect();
        let best_idx = (0..pool.len()).min_by_key(|&i| counts[i]).unwrap();
        let best_count = counts[best_idx];

        let mut chosen = best_idx;
        for _ in 0..REDRAW_FACTOR * pool.len() {
            let idx = rng.gen_range(0..pool.len());
            let delta = (counts[idx] - best_count) as f64;
            if delta == 0.0 {
                chosen = idx;
                break;
            }
            let p = acceptance_probability(delta, schedule.temperature());
            if rng.gen::<f64>() < p {
                chosen = idx;
                break;
            }
        }
        let label = pool[chosen];
        current.insert(label);
        tracker.add_label(label);
        added.push(label);
        schedule.cool();
    }
    (current, added)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::components;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path4() -> LabelledGraph {
        // 0-1 and 2-3 share label 0; the middle edge carries label 1.
        LabelledGraph::from_triples(4, 2, &[(0, 1, 0), (1, 2, 1), (2, 3, 0)]).unwrap()
    }

    #[test]
    fn cooling_follows_best_size() {
        let mut s = TemperatureSchedule::from_best_size(4);
        assert_eq!(s.temperature(), 4.0);
        s.cool();
        assert_eq!(s.temperature(), 1.0);
        s.cool();
        assert_eq!(s.temperature(), 0.25);
    }

    #[test]
    fn cooling_with_single_label_best_is_constant() {
        let mut s = TemperatureSchedule::from_best_size(1);
        for _ in 0..5 {
            s.cool();
            assert_eq!(s.temperature(), 1.0);
        }
    }

    #[test]
    fn acceptance_probability_limits() {
        assert_eq!(acceptance_probability(0.0, 3.0), 1.0);
        assert_eq!(acceptance_probability(2.0, 0.0), 0.0);
        assert_eq!(acceptance_probability(2.0, f64::INFINITY), 1.0);
        // Monotone: non-increasing in delta, non-decreasing in temperature.
        for t in [0.1, 1.0, 7.5] {
            for pair in [(1.0, 2.0), (2.0, 5.0)] {
                assert!(acceptance_probability(pair.1, t) <= acceptance_probability(pair.0, t));
            }
        }
        for d in [0.5, 1.0, 4.0] {
            assert!(acceptance_probability(d, 1.0) <= acceptance_probability(d, 2.0));
        }
    }

    #[test]
    fn mvca_triangle_single_label() {
        let g = LabelledGraph::from_triples(3, 1, &[(0, 1, 0), (1, 2, 0), (0, 2, 0)]).unwrap();
        let out = mvca(&g, &g.all_labels(), &ProblemSpec::Mlst, &LabelSet::empty(1));
        assert_eq!(out, LabelSet::from_members(1, [0]));
    }

    #[test]
    fn mvca_path_adds_broader_label_first() {
        // Label 0 alone leaves 2 components, label 1 alone leaves 3, so the
        // greedy trace must be [0, 1].
        let g = path4();
        let (out, trace) = mvca_traced(&g, &g.all_labels(), &ProblemSpec::Mlst, &LabelSet::empty(2));
        assert_eq!(out, LabelSet::from_members(2, [0, 1]));
        assert_eq!(trace, vec![0, 1]);
    }

    #[test]
    fn mvca_with_no_candidates_returns_start() {
        let g = path4();
        let start = LabelSet::from_members(2, [1]);
        let out = mvca(&g, &start, &ProblemSpec::Mlst, &start);
        assert_eq!(out, start);
    }

    #[test]
    fn mvca_component_count_non_increasing_along_trace() {
        let g = LabelledGraph::from_triples(
            6,
            4,
            &[(0, 1, 0), (1, 2, 1), (2, 3, 2), (3, 4, 3), (4, 5, 0), (0, 3, 1)],
        )
        .unwrap();
        let (_, trace) = mvca_traced(&g, &g.all_labels(), &ProblemSpec::Mlst, &LabelSet::empty(4));
        let mut prefix = LabelSet::empty(4);
        let mut last = components(&g, &prefix).component_count();
        for label in trace {
            prefix.insert(label);
            let count = components(&g, &prefix).component_count();
            assert!(count <= last);
            last = count;
        }
    }

    #[test]
    fn mvca_klsf_stops_at_budget() {
        let g = LabelledGraph::from_triples(
            6,
            4,
            &[(0, 1, 0), (2, 3, 1), (4, 5, 2), (0, 2, 3), (1, 3, 3)],
        )
        .unwrap();
        let out = mvca(
            &g,
            &g.all_labels(),
            &ProblemSpec::Klsf { label_budget: 2 },
            &LabelSet::empty(4),
        );
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn probabilistic_single_candidate_is_taken_at_any_temperature() {
        let g = LabelledGraph::from_triples(3, 1, &[(0, 1, 0), (1, 2, 0)]).unwrap();
        for t in [0.0, 0.5, 100.0] {
            let mut schedule = TemperatureSchedule::new(t, 0.5);
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let out = probabilistic_construct(
                &g,
                &g.all_labels(),
                &ProblemSpec::Mlst,
                &LabelSet::empty(1),
                &mut schedule,
                &mut rng,
            );
            assert_eq!(out, LabelSet::from_members(1, [0]));
        }
    }

    #[test]
    fn probabilistic_is_deterministic_for_a_fixed_seed() {
        let g = LabelledGraph::from_triples(
            6,
            4,
            &[(0, 1, 0), (1, 2, 1), (2, 3, 2), (3, 4, 3), (4, 5, 0), (1, 4, 2)],
        )
        .unwrap();
        let run = || {
            let mut schedule = TemperatureSchedule::from_best_size(3);
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            probabilistic_construct_traced(
                &g,
                &g.all_labels(),
                &ProblemSpec::Mlst,
                &LabelSet::empty(4),
                &mut schedule,
                &mut rng,
            )
        };
        let (a, ta) = run();
        let (b, tb) = run();
        assert_eq!(a, b);
        assert_eq!(ta, tb);
    }

    #[test]
    fn probabilistic_at_zero_temperature_follows_a_greedy_trace() {
        let g = LabelledGraph::from_triples(
            7,
            5,
            &[(0, 1, 0), (1, 2, 1), (2, 3, 2), (3, 4, 3), (4, 5, 4), (5, 6, 0), (0, 4, 1)],
        )
        .unwrap();
        for seed in 0..20 {
            let mut schedule = TemperatureSchedule::new(0.0, 0.0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (_, trace) = probabilistic_construct_traced(
                &g,
                &g.all_labels(),
                &ProblemSpec::Mlst,
                &LabelSet::empty(5),
                &mut schedule,
                &mut rng,
            );
            // Every accepted label must tie the greedy-best component count
            // at its step, checked against an independent recount.
            let mut prefix = LabelSet::empty(5);
            for label in trace {
                let best = (0..5)
                    .filter(|&l| !prefix.contains(l))
                    .map(|l| {
                        let mut with = prefix.clone();
                        with.insert(l);
                        components(&g, &with).component_count()
                    })
                    .min()
                    .unwrap();
                prefix.insert(label);
                assert_eq!(components(&g, &prefix).component_count(), best);
            }
        }
    }
}
