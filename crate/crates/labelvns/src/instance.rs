//! Plain-text instance format (parser and canonical writer) and the seeded
//! random instance generator.
//!
//! The format is line-oriented: a `n m l` header followed by exactly `m`
//! edge lines `u v c`, single-space separated, each line `\n`-terminated.
//! The writer always emits the canonical form: endpoints ordered `min max`
//! and edges sorted by `(min, max, label)`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use thiserror::Error;

use crate::graph::{Edge, LabelledGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header, expected \"n m l\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: node, edge and label counts must all be positive")]
    EmptyDimension { line: usize },
    #[error("line {line}: malformed edge, expected \"u v c\"")]
    MalformedEdge { line: usize },
    #[error("line {line}: node {node} out of range for node count {node_count}")]
    NodeOutOfRange {
        line: usize,
        node: usize,
        node_count: usize,
    },
    #[error("line {line}: label {label} out of range for label count {label_count}")]
    LabelOutOfRange {
        line: usize,
        label: usize,
        label_count: usize,
    },
    #[error("line {line}: self-loop at node {node}")]
    SelfLoop { line: usize, node: usize },
    #[error("line {line}: duplicate edge")]
    DuplicateEdge { line: usize },
    #[error("expected {expected} edge lines, found {found}")]
    WrongEdgeCount { expected: usize, found: usize },
}

fn split_numbers<const N: usize>(line: &str) -> Option<[usize; N]> {
    let mut out = [0; N];
    let mut fields = line.split(' ');
    for slot in &mut out {
        *slot = fields.next()?.parse().ok()?;
    }
    if fields.next().is_some() {
        return None;
    }
    Some(out)
}

/// Parses the text form of an instance, reporting the first problem found
/// with its 1-based line number.
pub fn parse_instance(text: &str) -> Result<LabelledGraph, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or(ParseError::MalformedHeader { line: 1 })?;
    let [node_count, edge_count, label_count] =
        split_numbers(header).ok_or(ParseError::MalformedHeader { line: 1 })?;
    if node_count == 0 || edge_count == 0 || label_count == 0 {
        return Err(ParseError::EmptyDimension { line: 1 });
    }

    let mut edges = Vec::with_capacity(edge_count);
    let mut seen = HashSet::with_capacity(edge_count);
    for (index, raw) in lines {
        let line = index + 1;
        if edges.len() == edge_count {
            // Anything beyond the declared edge count, even a blank line.
            return Err(ParseError::WrongEdgeCount {
                expected: edge_count,
                found: edge_count + 1,
            });
        }
        let [u, v, label] = split_numbers(raw).ok_or(ParseError::MalformedEdge { line })?;
        for node in [u, v] {
            if node >= node_count {
                return Err(ParseError::NodeOutOfRange {
                    line,
                    node,
                    node_count,
                });
            }
        }
        if label >= label_count {
            return Err(ParseError::LabelOutOfRange {
                line,
                label,
                label_count,
            });
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, node: u });
        }
        if !seen.insert((u.min(v), u.max(v), label)) {
            return Err(ParseError::DuplicateEdge { line });
        }
        edges.push(Edge { u, v, label });
    }
    if edges.len() != edge_count {
        return Err(ParseError::WrongEdgeCount {
            expected: edge_count,
            found: edges.len(),
        });
    }
    Ok(LabelledGraph::new(node_count, label_count, edges).expect("fields validated line by line"))
}

/// Renders a graph in canonical text form: `min max label` per edge, sorted
/// by `(min, max, label)`. Parsing the result reproduces the graph, and the
/// output is bit-identical for equal graphs.
pub fn write_instance(graph: &LabelledGraph) -> String {
    assert!(
        graph.edge_count() > 0,
        "the text format cannot represent a graph without edges"
    );
    let mut rows: Vec<(usize, usize, usize)> = graph
        .edges()
        .iter()
        .map(|e| (e.u.min(e.v), e.u.max(e.v), e.label))
        .collect();
    rows.sort_unstable();
    let mut out = format!(
        "{} {} {}\n",
        graph.node_count(),
        graph.edge_count(),
        graph.label_count()
    );
    for (u, v, label) in rows {
        out.push_str(&format!("{u} {v} {label}\n"));
    }
    out
}

/// Parameters for the seeded random generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorParams {
    pub node_count: usize,
    pub label_count: usize,
    /// Fraction of all node pairs that receive an edge, in `(0, 1]`.
    pub edge_density: f64,
    pub seed: u64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("node count must be at least 2")]
    TooFewNodes,
    #[error("label count must be at least 1")]
    NoLabels,
    #[error("edge density must lie in (0, 1], got {0}")]
    DensityOutOfRange(f64),
    #[error("node count {node_count} at density {edge_density} rounds to zero edges")]
    NoEdges {
        node_count: usize,
        edge_density: f64,
    },
}

/// Maps a rank in `0..n*(n-1)/2` to the pair at that position in the
/// lexicographic order (0,1), (0,2), ..., (n-2,n-1).
fn unrank_pair(mut rank: usize, node_count: usize) -> (usize, usize) {
    let mut u = 0;
    loop {
        let row = node_count - 1 - u;
        if rank < row {
            return (u, u + 1 + rank);
        }
        rank -= row;
        u += 1;
    }
}

/// Generates a random instance: `round(density * n * (n-1) / 2)` distinct
/// node pairs drawn uniformly, with the first `min(m, l)` edges (in
/// canonical pair order) carrying labels `0, 1, ...` so that every label
/// occurs whenever `m >= l`; remaining edges get uniform random labels.
///
/// The same parameters always produce the same graph. Connectivity is not
/// guaranteed.
pub fn generate(params: &GeneratorParams) -> Result<LabelledGraph, GeneratorError> {
    if params.node_count < 2 {
        return Err(GeneratorError::TooFewNodes);
    }
    if params.label_count == 0 {
        return Err(GeneratorError::NoLabels);
    }
    if !(params.edge_density > 0.0 && params.edge_density <= 1.0) {
        return Err(GeneratorError::DensityOutOfRange(params.edge_density));
    }
    let total_pairs = params.node_count * (params.node_count - 1) / 2;
    let edge_count = (params.edge_density * total_pairs as f64).round() as usize;
    if edge_count == 0 {
        return Err(GeneratorError::NoEdges {
            node_count: params.node_count,
            edge_density: params.edge_density,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut ranks = rand::seq::index::sample(&mut rng, total_pairs, edge_count).into_vec();
    ranks.sort_unstable();
    let coverage = edge_count.min(params.label_count);
    let edges: Vec<Edge> = ranks
        .iter()
        .enumerate()
        .map(|(i, &rank)| {
            let (u, v) = unrank_pair(rank, params.node_count);
            let label = if i < coverage {
                i
            } else {
                rng.gen_range(0..params.label_count)
            };
            Edge { u, v, label }
        })
        .collect();
    Ok(LabelledGraph::new(params.node_count, params.label_count, edges)
        .expect("sampled pairs are distinct and in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::components;

    const TRIANGLE: &str = "3 3 2\n0 1 0\n0 2 1\n1 2 0\n";

    #[test]
    fn parses_a_canonical_instance() {
        let g = parse_instance(TRIANGLE).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.label_count(), 2);
        assert_eq!(g.edges()[1], Edge { u: 0, v: 2, label: 1 });
    }

    #[test]
    fn write_then_parse_is_identity_on_canonical_graphs() {
        let g = parse_instance(TRIANGLE).unwrap();
        assert_eq!(write_instance(&g), TRIANGLE);
    }

    #[test]
    fn write_normalizes_edge_order_and_orientation() {
        let g = LabelledGraph::from_triples(3, 2, &[(2, 1, 0), (1, 0, 0), (0, 2, 1)]).unwrap();
        assert_eq!(write_instance(&g), "3 3 2\n0 1 0\n0 2 1\n1 2 0\n");
    }

    #[test]
    fn write_is_idempotent_through_a_parse() {
        let text = write_instance(&generate(&GeneratorParams {
            node_count: 12,
            label_count: 5,
            edge_density: 0.4,
            seed: 9,
        })
        .unwrap());
        assert_eq!(write_instance(&parse_instance(&text).unwrap()), text);
    }

    #[test]
    fn header_errors_are_reported_on_line_one() {
        assert_eq!(
            parse_instance(""),
            Err(ParseError::MalformedHeader { line: 1 })
        );
        assert_eq!(
            parse_instance("3 3\n"),
            Err(ParseError::MalformedHeader { line: 1 })
        );
        assert_eq!(
            parse_instance("3 x 2\n"),
            Err(ParseError::MalformedHeader { line: 1 })
        );
        assert_eq!(
            parse_instance("3 0 2\n"),
            Err(ParseError::EmptyDimension { line: 1 })
        );
    }

    #[test]
    fn edge_errors_carry_their_line_number() {
        assert_eq!(
            parse_instance("3 2 1\n0 0 0\n1 2 0\n"),
            Err(ParseError::SelfLoop { line: 2, node: 0 })
        );
        assert_eq!(
            parse_instance("3 2 1\n0 1 0\n0 3 0\n"),
            Err(ParseError::NodeOutOfRange {
                line: 3,
                node: 3,
                node_count: 3
            })
        );
        assert_eq!(
            parse_instance("3 2 1\n0 1 0\n1 2 1\n"),
            Err(ParseError::LabelOutOfRange {
                line: 3,
                label: 1,
                label_count: 1
            })
        );
        assert_eq!(
            parse_instance("3 2 1\n0 1 0\n1 0 0\n"),
            Err(ParseError::DuplicateEdge { line: 3 })
        );
        assert_eq!(
            parse_instance("3 2 1\n0 1 0\n1 2\n"),
            Err(ParseError::MalformedEdge { line: 3 })
        );
        assert_eq!(
            parse_instance("3 2 1\n0  1 0\n1 2 0\n"),
            Err(ParseError::MalformedEdge { line: 2 })
        );
    }

    #[test]
    fn edge_count_mismatches_are_rejected() {
        assert_eq!(
            parse_instance("3 3 2\n0 1 0\n0 2 1\n"),
            Err(ParseError::WrongEdgeCount {
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            parse_instance("3 2 2\n0 1 0\n0 2 1\n1 2 0\n"),
            Err(ParseError::WrongEdgeCount {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn two_nodes_at_full_density_give_the_single_edge() {
        let g = generate(&GeneratorParams {
            node_count: 2,
            label_count: 1,
            edge_density: 1.0,
            seed: 0,
        })
        .unwrap();
        assert_eq!(g.edges(), &[Edge { u: 0, v: 1, label: 0 }]);
    }

    #[test]
    fn edge_count_follows_the_density_formula() {
        let g = generate(&GeneratorParams {
            node_count: 20,
            label_count: 8,
            edge_density: 0.5,
            seed: 3,
        })
        .unwrap();
        // round(0.5 * 190)
        assert_eq!(g.edge_count(), 95);
    }

    #[test]
    fn every_label_occurs_when_edges_suffice() {
        let g = generate(&GeneratorParams {
            node_count: 10,
            label_count: 8,
            edge_density: 0.5,
            seed: 11,
        })
        .unwrap();
        for label in 0..8 {
            assert!(
                !g.edges_with_label(label).is_empty(),
                "label {label} missing"
            );
        }
    }

    #[test]
    fn generation_is_deterministic_in_the_seed() {
        let params = GeneratorParams {
            node_count: 15,
            label_count: 6,
            edge_density: 0.3,
            seed: 77,
        };
        assert_eq!(
            write_instance(&generate(&params).unwrap()),
            write_instance(&generate(&params).unwrap())
        );
        let other = GeneratorParams { seed: 78, ..params };
        assert_ne!(
            write_instance(&generate(&params).unwrap()),
            write_instance(&generate(&other).unwrap())
        );
    }

    #[test]
    fn generated_edges_are_canonical_and_within_range() {
        let g = generate(&GeneratorParams {
            node_count: 9,
            label_count: 4,
            edge_density: 0.7,
            seed: 5,
        })
        .unwrap();
        let mut last = None;
        for e in g.edges() {
            assert!(e.u < e.v);
            let key = (e.u, e.v);
            assert!(last.map_or(true, |prev| prev < key), "pairs out of order");
            last = Some(key);
        }
        // Full density must produce the complete graph.
        let full = generate(&GeneratorParams {
            node_count: 6,
            label_count: 2,
            edge_density: 1.0,
            seed: 0,
        })
        .unwrap();
        assert_eq!(full.edge_count(), 15);
        assert_eq!(components(&full, &full.all_labels()).component_count(), 1);
    }

    #[test]
    fn generator_rejects_bad_parameters() {
        let base = GeneratorParams {
            node_count: 10,
            label_count: 3,
            edge_density: 0.5,
            seed: 0,
        };
        assert_eq!(
            generate(&GeneratorParams { node_count: 1, ..base }),
            Err(GeneratorError::TooFewNodes)
        );
        assert_eq!(
            generate(&GeneratorParams { label_count: 0, ..base }),
            Err(GeneratorError::NoLabels)
        );
        for edge_density in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(
                generate(&GeneratorParams { edge_density, ..base }),
                Err(GeneratorError::DensityOutOfRange(_))
            ));
        }
        assert_eq!(
            generate(&GeneratorParams {
                node_count: 2,
                edge_density: 0.1,
                ..base
            }),
            Err(GeneratorError::NoEdges {
                node_count: 2,
                edge_density: 0.1
            })
        );
    }

    #[test]
    fn unranking_enumerates_pairs_in_order() {
        let expected = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (rank, pair) in expected.iter().enumerate() {
            assert_eq!(unrank_pair(rank, 4), *pair);
        }
    }
}
