//! Exact solver by exhaustive subset enumeration, used as the ground-truth
//! reference for small instances.

use thiserror::Error;

use crate::graph::{LabelSet, LabelledGraph, components};
use crate::problem::{Evaluation, ProblemSpec, better_than, evaluate};

/// Hard cap on the label count accepted by [`exact_solve`]; beyond this the
/// `2^l` subset space is no longer worth enumerating.
pub const MAX_ORACLE_LABELS: usize = 24;

/// Outcome of an exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// An optimal label set (the first one met in cardinality-ascending,
    /// lexicographic order, so ties resolve deterministically).
    pub optimum: LabelSet,
    pub evaluation: Evaluation,
    /// Number of subsets evaluated before returning.
    pub subsets_examined: u64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {0} labels; exact enumeration is capped at {MAX_ORACLE_LABELS}")]
    TooManyLabels(usize),
    #[error("graph is disconnected under the full label set; no connected label subset exists")]
    Unsolvable,
    #[error("label budget {label_budget} outside the valid range 1..={label_count}")]
    InvalidBudget { label_budget: usize, label_count: usize },
}

/// Exhaustively enumerates label subsets in cardinality-ascending order
/// (lexicographic within each cardinality) and returns a provably optimal
/// solution.
///
/// For the spanning-tree problem the first connected subset met is optimal
/// and enumeration stops there; for the bounded-label forest problem every
/// subset within the budget is scored and the best kept.
pub fn exact_solve(
    graph: &LabelledGraph,
    problem: &ProblemSpec,
) -> Result<OracleResult, OracleError> {
    let label_count = graph.label_count();
    if label_count > MAX_ORACLE_LABELS {
        return Err(OracleError::TooManyLabels(label_count));
    }
    if let ProblemSpec::Klsf { label_budget } = problem {
        if *label_budget == 0 || *label_budget > label_count {
            return Err(OracleError::InvalidBudget {
                label_budget: *label_budget,
                label_count,
            });
        }
    }

    let node_count = graph.node_count();
    let mut examined: u64 = 0;
    // Flat union-find scratch, reset per subset.
    let mut parent: Vec<usize> = (0..node_count).collect();

    let mut count_components = |members: &[usize]| -> usize {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut count = node_count;
        for &label in members {
            for &index in graph.edges_with_label(label) {
                let edge = &graph.edges()[index];
                let mut a = edge.u;
                while parent[a] != a {
                    parent[a] = parent[parent[a]];
                    a = parent[a];
                }
                let mut b = edge.v;
                while parent[b] != b {
                    parent[b] = parent[parent[b]];
                    b = parent[b];
                }
                if a != b {
                    parent[a] = b;
                    count -= 1;
                }
            }
        }
        count
    };

    match problem {
        ProblemSpec::Mlst => {
            if components(graph, &graph.all_labels()).component_count() != 1 {
                return Err(OracleError::Unsolvable);
            }
            for size in 0..=label_count {
                let mut combo: Vec<usize> = (0..size).collect();
                loop {
                    examined += 1;
                    if count_components(&combo) == 1 {
                        let optimum = LabelSet::from_members(label_count, combo);
                        let evaluation = evaluate(graph, &optimum, problem);
                        debug_assert!(evaluation.feasible);
                        return Ok(OracleResult {
                            optimum,
                            evaluation,
                            subsets_examined: examined,
                        });
                    }
                    if !next_combination(&mut combo, label_count) {
                        break;
                    }
                }
            }
            // The full set is connected, so the loop above always returns.
            unreachable!("full label set was verified connected");
        }
        ProblemSpec::Klsf { label_budget } => {
            let mut best: Option<(LabelSet, Evaluation)> = None;
            for size in 0..=*label_budget {
                let mut combo: Vec<usize> = (0..size).collect();
                loop {
                    examined += 1;
                    let component_count = count_components(&combo);
                    let candidate = LabelSet::from_members(label_count, combo.iter().copied());
                    let evaluation = evaluate(graph, &candidate, problem);
                    debug_assert_eq!(evaluation.component_count, component_count);
                    let replace = match &best {
                        None => true,
                        Some((_, incumbent)) => better_than(&evaluation, incumbent, problem),
                    };
                    if replace {
                        best = Some((candidate, evaluation));
                    }
                    if !next_combination(&mut combo, label_count) {
                        break;
                    }
                }
            }
            let (optimum, evaluation) = best.expect("the empty subset is always enumerated");
            Ok(OracleResult {
                optimum,
                evaluation,
                subsets_examined: examined,
            })
        }
    }
}

/// Advances `combo` (a strictly increasing index vector over `0..n`) to the
/// next combination in lexicographic order; returns false once exhausted.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_optimum_is_single_label() {
        let g = LabelledGraph::from_triples(3, 2, &[(0, 1, 0), (1, 2, 0), (0, 2, 1)]).unwrap();
        let result = exact_solve(&g, &ProblemSpec::Mlst).unwrap();
        assert_eq!(result.optimum, LabelSet::from_members(2, [0]));
        assert_eq!(result.evaluation.label_count, 1);
        assert_eq!(result.evaluation.component_count, 1);
        assert!(result.evaluation.feasible);
    }

    #[test]
    fn path_with_distinct_labels_needs_all_of_them() {
        let g = LabelledGraph::from_triples(4, 3, &[(0, 1, 0), (1, 2, 1), (2, 3, 2)]).unwrap();
        let result = exact_solve(&g, &ProblemSpec::Mlst).unwrap();
        assert_eq!(result.evaluation.label_count, 3);
        assert_eq!(result.optimum, LabelSet::from_members(3, [0, 1, 2]));
    }

    #[test]
    fn disconnected_graph_is_reported_unsolvable() {
        let g = LabelledGraph::from_triples(4, 2, &[(0, 1, 0), (2, 3, 1)]).unwrap();
        assert_eq!(exact_solve(&g, &ProblemSpec::Mlst), Err(OracleError::Unsolvable));
    }

    #[test]
    fn forest_tie_breaks_to_the_lexicographically_first_subset() {
        // {0} and {1} both reach 3 components under a budget of 1; the
        // enumeration order keeps {0}.
        let g = LabelledGraph::from_triples(4, 2, &[(0, 1, 0), (2, 3, 1)]).unwrap();
        let result = exact_solve(&g, &ProblemSpec::Klsf { label_budget: 1 }).unwrap();
        assert_eq!(result.optimum, LabelSet::from_members(2, [0]));
        assert_eq!(result.evaluation.component_count, 3);
    }

    #[test]
    fn label_cap_is_enforced() {
        let edges: Vec<(usize, usize, usize)> = (0..25).map(|i| (i, i + 1, i)).collect();
        let g = LabelledGraph::from_triples(26, 25, &edges).unwrap();
        assert_eq!(
            exact_solve(&g, &ProblemSpec::Mlst),
            Err(OracleError::TooManyLabels(25))
        );
    }

    #[test]
    fn budget_outside_range_is_rejected() {
        let g = LabelledGraph::from_triples(3, 2, &[(0, 1, 0), (1, 2, 1)]).unwrap();
        for label_budget in [0, 3] {
            assert_eq!(
                exact_solve(&g, &ProblemSpec::Klsf { label_budget }),
                Err(OracleError::InvalidBudget {
                    label_budget,
                    label_count: 2
                })
            );
        }
    }

    #[test]
    fn first_hit_matches_full_enumeration() {
        // Cross-check the early-exit cardinality scan against a complete
        // 2^l sweep scoring every subset.
        let g = LabelledGraph::from_triples(
            6,
            5,
            &[
                (0, 1, 0),
                (1, 2, 1),
                (2, 3, 2),
                (3, 4, 3),
                (4, 5, 4),
                (0, 2, 1),
                (1, 4, 3),
                (0, 5, 0),
            ],
        )
        .unwrap();
        let result = exact_solve(&g, &ProblemSpec::Mlst).unwrap();
        let mut best_size = usize::MAX;
        for mask in 0u32..(1 << 5) {
            let members = (0..5).filter(|&l| mask & (1 << l) != 0);
            let set = LabelSet::from_members(5, members);
            let eval = evaluate(&g, &set, &ProblemSpec::Mlst);
            if eval.feasible {
                best_size = best_size.min(set.len());
            }
        }
        assert_eq!(result.evaluation.label_count, best_size);
    }

    #[test]
    fn forest_search_matches_full_enumeration() {
        let g = LabelledGraph::from_triples(
            7,
            6,
            &[
                (0, 1, 0),
                (1, 2, 1),
                (3, 4, 2),
                (4, 5, 3),
                (5, 6, 4),
                (0, 6, 5),
                (2, 3, 5),
            ],
        )
        .unwrap();
        let problem = ProblemSpec::Klsf { label_budget: 3 };
        let result = exact_solve(&g, &problem).unwrap();
        let mut best: Option<Evaluation> = None;
        for mask in 0u32..(1 << 6) {
            let members: Vec<usize> = (0..6).filter(|&l| mask & (1 << l) != 0).collect();
            if members.len() > 3 {
                continue;
            }
            let set = LabelSet::from_members(6, members);
            let eval = evaluate(&g, &set, &problem);
            best = match best {
                None => Some(eval),
                Some(b) if better_than(&eval, &b, &problem) => Some(eval),
                keep => keep,
            };
        }
        assert_eq!(result.evaluation, best.unwrap());
    }

    #[test]
    fn subsets_examined_counts_the_early_exit_prefix() {
        // Triangle with one label: the empty set fails, {0} succeeds.
        let g = LabelledGraph::from_triples(3, 1, &[(0, 1, 0), (1, 2, 0)]).unwrap();
        let result = exact_solve(&g, &ProblemSpec::Mlst).unwrap();
        assert_eq!(result.subsets_examined, 2);
    }

    #[test]
    fn single_node_graph_needs_no_labels() {
        let g = LabelledGraph::from_triples(1, 1, &[]).unwrap();
        let result = exact_solve(&g, &ProblemSpec::Mlst).unwrap();
        assert_eq!(result.optimum, LabelSet::empty(1));
        assert_eq!(result.evaluation.label_count, 0);
    }
}
