//! Immutable finite simple undirected graphs with stable string labels,
//! plus the constructions the rest of the crate is built on: induced
//! subgraphs, rims, balls, joins, neighborhood unions, isomorphism, and
//! the sorted JSON / DOT wire formats.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::dense::DenseGraph;

/// Errors for graph construction and lookups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(VertexLabel),
    #[error("vertex {0:?} already exists")]
    DuplicateVertex(VertexLabel),
    #[error("self-loop on vertex {0:?} is not allowed")]
    SelfLoop(VertexLabel),
    #[error("no edge between {0:?} and {1:?}")]
    NotAnEdge(VertexLabel, VertexLabel),
    #[error("label collision between operands: {0:?}")]
    LabelCollision(Vec<VertexLabel>),
    #[error("vertex set must not be empty")]
    EmptyVertexSet,
    #[error("vertex labels must be non-empty strings")]
    EmptyLabel,
    #[error("parse error: {0}")]
    Parse(String),
}

/// A printable, non-empty vertex label. Ordering is lexicographic byte
/// order, which is the tie-break order used everywhere in this crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexLabel(Arc<str>);

impl VertexLabel {
    pub fn new(s: impl AsRef<str>) -> Result<Self, GraphError> {
        let s = s.as_ref();
        if s.is_empty() {
            return Err(GraphError::EmptyLabel);
        }
        Ok(VertexLabel(Arc::from(s)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl std::str::FromStr for VertexLabel {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VertexLabel::new(s)
    }
}

impl Serialize for VertexLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for VertexLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        VertexLabel::new(s).map_err(D::Error::custom)
    }
}

/// Isomorphism-invariant cache key: unequal keys imply non-isomorphic
/// graphs; equal keys require confirmation by [`Graph::is_isomorphic`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalKey(Box<[u32]>);

impl CanonicalKey {
    pub(crate) fn from_stream(stream: Vec<u32>) -> Self {
        CanonicalKey(stream.into_boxed_slice())
    }
}

/// An immutable finite simple undirected graph. All mutating operations
/// return a new value; deterministic iteration everywhere comes from the
/// ordered adjacency maps.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexLabel, BTreeSet<VertexLabel>>,
}

impl Default for Graph {
    fn default() -> Self {
        Graph::new()
    }
}

impl Graph {
    /// The empty graph (no vertices).
    pub fn new() -> Self {
        Graph {
            adj: BTreeMap::new(),
        }
    }

    /// Builds a graph from explicit vertex and edge lists. Every edge
    /// endpoint must appear in the vertex list; self-loops are rejected.
    pub fn from_parts<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = VertexLabel>,
        E: IntoIterator<Item = (VertexLabel, VertexLabel)>,
    {
        let mut adj: BTreeMap<VertexLabel, BTreeSet<VertexLabel>> = BTreeMap::new();
        for v in vertices {
            adj.entry(v).or_default();
        }
        let mut g = Graph { adj };
        for (u, v) in edges {
            g.insert_edge(&u, &v)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: &VertexLabel, v: &VertexLabel) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u.clone()));
        }
        if !self.adj.contains_key(u) {
            return Err(GraphError::UnknownVertex(u.clone()));
        }
        if !self.adj.contains_key(v) {
            return Err(GraphError::UnknownVertex(v.clone()));
        }
        self.adj.get_mut(u).unwrap().insert(v.clone());
        self.adj.get_mut(v).unwrap().insert(u.clone());
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|ns| ns.len()).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexLabel> {
        self.adj.keys()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexLabel> {
        self.adj.keys().cloned().collect()
    }

    pub fn has_vertex(&self, v: &VertexLabel) -> bool {
        self.adj.contains_key(v)
    }

    /// Edges as (min, max) label pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (&VertexLabel, &VertexLabel)> {
        self.adj
            .iter()
            .flat_map(|(u, ns)| ns.iter().filter(move |v| u < *v).map(move |v| (u, v)))
    }

    pub fn neighbors(&self, v: &VertexLabel) -> Result<&BTreeSet<VertexLabel>, GraphError> {
        self.adj
            .get(v)
            .ok_or_else(|| GraphError::UnknownVertex(v.clone()))
    }

    pub fn degree(&self, v: &VertexLabel) -> Result<usize, GraphError> {
        Ok(self.neighbors(v)?.len())
    }

    pub fn has_edge(&self, u: &VertexLabel, v: &VertexLabel) -> Result<bool, GraphError> {
        if !self.adj.contains_key(v) {
            return Err(GraphError::UnknownVertex(v.clone()));
        }
        Ok(self.neighbors(u)?.contains(v))
    }

    /// A new graph with an added isolated-or-connected vertex: `label`
    /// becomes adjacent to exactly `neighbors`, which must already exist.
    pub fn with_vertex<I>(&self, label: VertexLabel, neighbors: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = VertexLabel>,
    {
        if self.adj.contains_key(&label) {
            return Err(GraphError::DuplicateVertex(label));
        }
        let mut g = self.clone();
        g.adj.insert(label.clone(), BTreeSet::new());
        for n in neighbors {
            if n == label {
                return Err(GraphError::UnknownVertex(n));
            }
            g.insert_edge(&label, &n)?;
        }
        Ok(g)
    }

    /// A new graph with `v` (and its incident edges) removed.
    pub fn without_vertex(&self, v: &VertexLabel) -> Result<Self, GraphError> {
        if !self.adj.contains_key(v) {
            return Err(GraphError::UnknownVertex(v.clone()));
        }
        let mut g = self.clone();
        let ns = g.adj.remove(v).unwrap();
        for n in ns {
            g.adj.get_mut(&n).unwrap().remove(v);
        }
        Ok(g)
    }

    /// A new graph with the edge (u, v) present. Adding an existing edge
    /// is a no-op; self-loops and unknown endpoints are errors.
    pub fn with_edge(&self, u: &VertexLabel, v: &VertexLabel) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.insert_edge(u, v)?;
        Ok(g)
    }

    /// A new graph with the edge (u, v) removed; the edge must exist.
    pub fn without_edge(&self, u: &VertexLabel, v: &VertexLabel) -> Result<Self, GraphError> {
        if !self.has_edge(u, v)? {
            return Err(GraphError::NotAnEdge(u.clone(), v.clone()));
        }
        let mut g = self.clone();
        g.adj.get_mut(u).unwrap().remove(v);
        g.adj.get_mut(v).unwrap().remove(u);
        Ok(g)
    }

    /// Induced subgraph on `set`: exactly the edges with both endpoints in
    /// `set`.
    pub fn induced_subgraph(&self, set: &BTreeSet<VertexLabel>) -> Result<Self, GraphError> {
        let mut adj: BTreeMap<VertexLabel, BTreeSet<VertexLabel>> = BTreeMap::new();
        for v in set {
            let ns = self.neighbors(v)?;
            adj.insert(v.clone(), ns.intersection(set).cloned().collect());
        }
        Ok(Graph { adj })
    }

    /// The rim O(v): induced subgraph on the neighbors of `v`, excluding
    /// `v` itself.
    pub fn rim(&self, v: &VertexLabel) -> Result<Self, GraphError> {
        let ns = self.neighbors(v)?.clone();
        self.induced_subgraph(&ns)
    }

    /// The ball U(v): induced subgraph on `{v} ∪ neighbors(v)`.
    pub fn ball(&self, v: &VertexLabel) -> Result<Self, GraphError> {
        let mut set = self.neighbors(v)?.clone();
        set.insert(v.clone());
        self.induced_subgraph(&set)
    }

    /// The join G ⊕ H: both graphs plus every cross edge. Label sets must
    /// be disjoint.
    pub fn join(&self, other: &Graph) -> Result<Self, GraphError> {
        let colliding: Vec<VertexLabel> = self
            .adj
            .keys()
            .filter(|v| other.adj.contains_key(v))
            .cloned()
            .collect();
        if !colliding.is_empty() {
            return Err(GraphError::LabelCollision(colliding));
        }
        let mut adj = self.adj.clone();
        for (v, ns) in &other.adj {
            adj.insert(v.clone(), ns.clone());
        }
        for u in self.adj.keys() {
            for v in other.adj.keys() {
                adj.get_mut(u).unwrap().insert(v.clone());
                adj.get_mut(v).unwrap().insert(u.clone());
            }
        }
        Ok(Graph { adj })
    }

    /// The neighborhood union U(S) = ⋃_{v ∈ S} U(v) as an induced
    /// subgraph; S must be a non-empty subset of the vertices.
    pub fn neighborhood_union(&self, set: &BTreeSet<VertexLabel>) -> Result<Self, GraphError> {
        if set.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut union = BTreeSet::new();
        for v in set {
            union.extend(self.neighbors(v)?.iter().cloned());
            union.insert(v.clone());
        }
        self.induced_subgraph(&union)
    }

    /// Connectivity; the empty graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        self.to_dense().0.is_connected()
    }

    pub fn component_count(&self) -> usize {
        self.to_dense().0.component_count()
    }

    /// Exact isomorphism test (backtracking with color refinement).
    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.to_dense().0.iso_mapping(&other.to_dense().0).is_some()
    }

    /// Isomorphism-invariant key from iterated degree refinement. Equal
    /// keys do NOT imply isomorphism; unequal keys do imply
    /// non-isomorphism.
    pub fn canonical_key(&self) -> CanonicalKey {
        self.to_dense().0.canonical_key()
    }

    /// Dense index form plus the index -> label table (indices follow
    /// sorted label order).
    pub(crate) fn to_dense(&self) -> (DenseGraph, Vec<VertexLabel>) {
        let labels: Vec<VertexLabel> = self.adj.keys().cloned().collect();
        let index: BTreeMap<&VertexLabel, usize> =
            labels.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut dense = DenseGraph::new(labels.len());
        for (u, ns) in &self.adj {
            for v in ns {
                if u < v {
                    dense.add_edge(index[u], index[v]);
                }
            }
        }
        (dense, labels)
    }

    /// Sorted, compact JSON: `{"vertices":[...],"edges":[...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }

    /// Parses the JSON wire format, validating endpoints and rejecting
    /// self-loops; the message carries the position for malformed input.
    pub fn parse_json(s: &str) -> Result<Self, GraphError> {
        serde_json::from_str(s).map_err(|e| GraphError::Parse(e.to_string()))
    }

    /// SHA-256 of the sorted JSON form, lowercase hex.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.to_json().as_bytes());
        hex::encode(hasher.finalize())
    }

    /// DOT format: every vertex gets a node line (isolated vertices
    /// survive), every edge one `--` line, all sorted.
    pub fn to_dot(&self) -> String {
        fn quoted(label: &VertexLabel) -> String {
            format!("\"{}\"", label.as_str().replace('\\', "\\\\").replace('"', "\\\""))
        }
        let mut out = String::from("graph {\n");
        for v in self.adj.keys() {
            out.push_str(&format!("  {};\n", quoted(v)));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {} -- {};\n", quoted(u), quoted(v)));
        }
        out.push_str("}\n");
        out
    }

    /// The cycle C_n labeled "1".."n". Panics if `n < 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let labels: Vec<VertexLabel> = (1..=n)
            .map(|i| VertexLabel::new(i.to_string()).unwrap())
            .collect();
        let edges = (0..n).map(|i| (labels[i].clone(), labels[(i + 1) % n].clone()));
        Graph::from_parts(labels.clone(), edges).unwrap()
    }

    /// The path P_n labeled "1".."n" (P_0 is the empty graph).
    pub fn path(n: usize) -> Self {
        let labels: Vec<VertexLabel> = (1..=n)
            .map(|i| VertexLabel::new(i.to_string()).unwrap())
            .collect();
        let edges = (1..n).map(|i| (labels[i - 1].clone(), labels[i].clone()));
        Graph::from_parts(labels.clone(), edges).unwrap()
    }

    /// The complete graph K_n labeled "1".."n" (K_0 is the empty graph).
    pub fn complete(n: usize) -> Self {
        let labels: Vec<VertexLabel> = (1..=n)
            .map(|i| VertexLabel::new(i.to_string()).unwrap())
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
        Graph::from_parts(labels, edges).unwrap()
    }

    /// n isolated vertices labeled "1".."n" (n = 2 is the 0-sphere S0).
    pub fn edgeless(n: usize) -> Self {
        let labels = (1..=n).map(|i| VertexLabel::new(i.to_string()).unwrap());
        Graph::from_parts(labels, std::iter::empty()).unwrap()
    }
}

impl fmt::Debug for Graph {
    /// Compact JSON keeps assertion diffs readable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_json())
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            vertices: Vec<&'a VertexLabel>,
            edges: Vec<(&'a VertexLabel, &'a VertexLabel)>,
        }
        Wire {
            vertices: self.adj.keys().collect(),
            edges: self.edges().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            vertices: Vec<VertexLabel>,
            edges: Vec<(VertexLabel, VertexLabel)>,
        }
        let wire = Wire::deserialize(deserializer)?;
        Graph::from_parts(wire.vertices, wire.edges).map_err(D::Error::custom)
    }
}
