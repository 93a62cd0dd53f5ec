//! Labelled-graph representation and the set machinery every solver component
//! shares: component counting under a label subset, Hamming distance between
//! label sets, and spanning forest extraction.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Node identifier, dense in `[0, node_count)`.
pub type NodeId = usize;
/// Label identifier, dense in `[0, label_count)`.
pub type Label = usize;

/// An undirected edge carrying exactly one label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub label: Label,
}

/// Errors raised when assembling a [`LabelledGraph`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("node count must be positive")]
    NoNodes,
    #[error("label count must be positive")]
    NoLabels,
    #[error("edge {index}: endpoint {node} out of range (node count is {node_count})")]
    NodeOutOfRange {
        index: usize,
        node: NodeId,
        node_count: usize,
    },
    #[error("edge {index}: label {label} out of range (label count is {label_count})")]
    LabelOutOfRange {
        index: usize,
        label: Label,
        label_count: usize,
    },
    #[error("edge {index}: self-loop at node {node}")]
    SelfLoop { index: usize, node: NodeId },
    #[error("edge {index}: duplicate edge ({u}, {v}) with label {label}")]
    DuplicateEdge {
        index: usize,
        u: NodeId,
        v: NodeId,
        label: Label,
    },
}

/// Immutable undirected graph whose every edge carries one label.
///
/// Endpoints and labels are dense 0-based ids. Parallel edges between the same
/// endpoints are allowed as long as their labels differ; self-loops and
/// duplicate `(endpoints, label)` triples are rejected at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    node_count: usize,
    label_count: usize,
    edges: Vec<Edge>,
    // Edge indices grouped by label, each group in edge-index order.
    by_label: Vec<Vec<usize>>,
}

impl LabelledGraph {
    pub fn new(node_count: usize, label_count: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        if node_count == 0 {
            return Err(GraphError::NoNodes);
        }
        if label_count == 0 {
            return Err(GraphError::NoLabels);
        }
        let mut seen: HashSet<(NodeId, NodeId, Label)> = HashSet::with_capacity(edges.len());
        for (index, e) in edges.iter().enumerate() {
            if e.u >= node_count {
                return Err(GraphError::NodeOutOfRange {
                    index,
                    node: e.u,
                    node_count,
                });
            }
            if e.v >= node_count {
                return Err(GraphError::NodeOutOfRange {
                    index,
                    node: e.v,
                    node_count,
                });
            }
            if e.label >= label_count {
                return Err(GraphError::LabelOutOfRange {
                    index,
                    label: e.label,
                    label_count,
                });
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop { index, node: e.u });
            }
            let key = (e.u.min(e.v), e.u.max(e.v), e.label);
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge {
                    index,
                    u: key.0,
                    v: key.1,
                    label: e.label,
                });
            }
        }
        let mut by_label = vec![Vec::new(); label_count];
        for (index, e) in edges.iter().enumerate() {
            by_label[e.label].push(index);
        }
        Ok(Self {
            node_count,
            label_count,
            edges,
            by_label,
        })
    }

    /// Convenience constructor from `(u, v, label)` triples.
    pub fn from_triples(
        node_count: usize,
        label_count: usize,
        triples: &[(NodeId, NodeId, Label)],
    ) -> Result<Self, GraphError> {
        let edges = triples
            .iter()
            .map(|&(u, v, label)| Edge { u, v, label })
            .collect();
        Self::new(node_count, label_count, edges)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn label_count(&self) -> usize {
        self.label_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Indices of the edges carrying `label`, in edge-index order.
    pub fn edges_with_label(&self, label: Label) -> &[usize] {
        &self.by_label[label]
    }

    /// The set containing every label of this graph.
    pub fn all_labels(&self) -> LabelSet {
        LabelSet::full(self.label_count)
    }
}

/// A subset of a graph's labels; the solution representation for both
/// problems. Equality is value-semantic on the member set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabelSet {
    universe: usize,
    blocks: Vec<u64>,
    len: usize,
}

impl LabelSet {
    /// The empty set over a universe of `universe` labels.
    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            blocks: vec![0; universe.div_ceil(64)],
            len: 0,
        }
    }

    /// The set of all labels `0..universe`.
    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for label in 0..universe {
            set.insert(label);
        }
        set
    }

    pub fn from_members<I: IntoIterator<Item = Label>>(universe: usize, members: I) -> Self {
        let mut set = Self::empty(universe);
        for label in members {
            set.insert(label);
        }
        set
    }

    /// Number of labels the set ranges over (not the cardinality).
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, label: Label) -> bool {
        assert!(label < self.universe, "label {label} outside universe {}", self.universe);
        self.blocks[label / 64] >> (label % 64) & 1 == 1
    }

    /// Adds `label`; returns true if it was not present before.
    pub fn insert(&mut self, label: Label) -> bool {
        assert!(label < self.universe, "label {label} outside universe {}", self.universe);
        let mask = 1u64 << (label % 64);
        let block = &mut self.blocks[label / 64];
        if *block & mask == 0 {
            *block |= mask;
            self.len += 1;
            true
        } else {
            false
        }
    }

    /// Removes `label`; returns true if it was present.
    pub fn remove(&mut self, label: Label) -> bool {
        assert!(label < self.universe, "label {label} outside universe {}", self.universe);
        let mask = 1u64 << (label % 64);
        let block = &mut self.blocks[label / 64];
        if *block & mask != 0 {
            *block &= !mask;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            std::iter::successors(Some(block), |b| Some(b & b.wrapping_sub(1)))
                .take_while(|&b| b != 0)
                .map(move |b| i * 64 + b.trailing_zeros() as usize)
        })
    }

    pub fn members(&self) -> Vec<Label> {
        self.iter().collect()
    }

    /// Labels of the universe not in this set.
    pub fn complement(&self) -> Self {
        let mut out = Self::empty(self.universe);
        for label in 0..self.universe {
            if !self.contains(label) {
                out.insert(label);
            }
        }
        out
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        assert_eq!(self.universe, other.universe, "label sets over different universes");
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        assert_eq!(self.universe, other.universe, "label sets over different universes");
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Hamming distance between two label sets over the same universe: the
/// cardinality of their symmetric difference.
pub fn hamming_distance(a: &LabelSet, b: &LabelSet) -> usize {
    assert_eq!(a.universe, b.universe, "label sets over different universes");
    a.blocks
        .iter()
        .zip(&b.blocks)
        .map(|(x, y)| (x ^ y).count_ones() as usize)
        .sum()
}

/// Connected-component partition of a label-induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    component_count: usize,
    representative: Vec<NodeId>,
}

impl ComponentPartition {
    pub fn component_count(&self) -> usize {
        self.component_count
    }

    /// Canonical representative of the component containing `node`.
    pub fn representative(&self, node: NodeId) -> NodeId {
        self.representative[node]
    }

    pub fn same_component(&self, a: NodeId, b: NodeId) -> bool {
        self.representative[a] == self.representative[b]
    }
}

/// Maximal acyclic subset of the edges induced by a label set, stored as
/// indices into the parent graph's edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeForest {
    edges: Vec<usize>,
}

impl EdgeForest {
    /// Indices into the parent graph's edge list, ascending.
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Clone)]
struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
            components: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        // Path halving.
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two nodes were in distinct components.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        self.components -= 1;
        true
    }
}

/// Incrementally maintained components of a growing label-induced subgraph.
///
/// Starts from the edgeless subgraph (every node its own component); labels
/// can only be added. Deleting a label invalidates the structure, so callers
/// that shrink a set rebuild from scratch.
pub struct ComponentTracker<'g> {
    graph: &'g LabelledGraph,
    dsu: UnionFind,
}

impl<'g> ComponentTracker<'g> {
    pub fn new(graph: &'g LabelledGraph) -> Self {
        Self {
            graph,
            dsu: UnionFind::new(graph.node_count()),
        }
    }

    /// Builds the tracker with every label of `labels` already applied.
    pub fn with_labels(graph: &'g LabelledGraph, labels: &LabelSet) -> Self {
        assert_eq!(
            labels.universe(),
            graph.label_count(),
            "label set universe does not match graph"
        );
        let mut tracker = Self::new(graph);
        for label in labels.iter() {
            tracker.add_label(label);
        }
        tracker
    }

    pub fn add_label(&mut self, label: Label) {
        for &ei in self.graph.edges_with_label(label) {
            let e = self.graph.edges()[ei];
            self.dsu.union(e.u, e.v);
        }
    }

    pub fn component_count(&self) -> usize {
        self.dsu.components
    }

    /// Component count if `label` were added, without mutating the tracker.
    pub fn count_with_label(&self, label: Label) -> usize {
        let mut dsu = self.dsu.clone();
        for &ei in self.graph.edges_with_label(label) {
            let e = self.graph.edges()[ei];
            dsu.union(e.u, e.v);
        }
        dsu.components
    }

    pub fn partition(&self) -> ComponentPartition {
        let mut dsu = self.dsu.clone();
        let representative = (0..self.graph.node_count()).map(|v| dsu.find(v)).collect();
        ComponentPartition {
            component_count: dsu.components,
            representative,
        }
    }
}

/// Connected-component partition of the subgraph containing exactly the edges
/// whose label is in `labels`. The empty set yields one component per node.
pub fn components(graph: &LabelledGraph, labels: &LabelSet) -> ComponentPartition {
    ComponentTracker::with_labels(graph, labels).partition()
}

/// Deterministic spanning forest of the subgraph induced by `labels`: edges
/// are scanned in index order and kept iff they join two components not yet
/// connected. The result has `n - components(graph, labels)` edges.
pub fn extract_forest(graph: &LabelledGraph, labels: &LabelSet) -> EdgeForest {
    assert_eq!(
        labels.universe(),
        graph.label_count(),
        "label set universe does not match graph"
    );
    let mut dsu = UnionFind::new(graph.node_count());
    let mut kept = Vec::new();
    for (ei, e) in graph.edges().iter().enumerate() {
        if labels.contains(e.label) && dsu.union(e.u, e.v) {
            kept.push(ei);
        }
    }
    EdgeForest { edges: kept }
}
