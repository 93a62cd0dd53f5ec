//! Problem definitions, solution evaluation and the strict-improvement
//! ordering shared by every search component.

use crate::graph::{components, LabelSet, LabelledGraph};

/// Which labelling problem is being solved.
///
/// `Mlst` asks for the smallest label set whose induced subgraph is connected.
/// `Klsf` asks, under a budget of at most `label_budget` labels, for the label
/// set minimizing the number of connected components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemSpec {
    Mlst,
    Klsf { label_budget: usize },
}

impl ProblemSpec {
    pub fn label_budget(&self) -> Option<usize> {
        match self {
            ProblemSpec::Mlst => None,
            ProblemSpec::Klsf { label_budget } => Some(*label_budget),
        }
    }

    pub fn is_klsf(&self) -> bool {
        matches!(self, ProblemSpec::Klsf { .. })
    }
}

/// Derived metrics of a label set against a graph and problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Evaluation {
    pub label_count: usize,
    pub component_count: usize,
    pub feasible: bool,
}

/// Evaluates `labels`: cardinality, induced component count, and feasibility
/// (MLST: connected; kLSF: within the label budget).
pub fn evaluate(graph: &LabelledGraph, labels: &LabelSet, problem: &ProblemSpec) -> Evaluation {
    let label_count = labels.len();
    let component_count = components(graph, labels).component_count();
    let feasible = match problem {
        ProblemSpec::Mlst => component_count == 1,
        ProblemSpec::Klsf { label_budget } => label_count <= *label_budget,
    };
    Evaluation {
        label_count,
        component_count,
        feasible,
    }
}

/// Strict "is `a` better than `b`" ordering.
///
/// Feasible always beats infeasible. Among feasible solutions MLST compares
/// label counts while kLSF compares `(component_count, label_count)`
/// lexicographically, so the search prefers frugal solutions among equals.
/// Among infeasible solutions MLST compares `(component_count, label_count)`
/// and kLSF (over budget) compares label counts.
pub fn better_than(a: &Evaluation, b: &Evaluation, problem: &ProblemSpec) -> bool {
    if a.feasible != b.feasible {
        return a.feasible;
    }
    match (problem, a.feasible) {
        (ProblemSpec::Mlst, true) => a.label_count < b.label_count,
        (ProblemSpec::Mlst, false) => {
            (a.component_count, a.label_count) < (b.component_count, b.label_count)
        }
        (ProblemSpec::Klsf { .. }, true) => {
            (a.component_count, a.label_count) < (b.component_count, b.label_count)
        }
        (ProblemSpec::Klsf { .. }, false) => a.label_count < b.label_count,
    }
}
