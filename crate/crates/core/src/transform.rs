//! The topology-preserving moves: delete/glue a simple point, delete/glue
//! a simple edge, and contract a simple set to a fresh vertex. Every
//! operation verifies its own precondition against the oracle; applied
//! moves can be recorded in a [`Trace`] and replayed with the same
//! verification, which makes a trace a homotopy-equivalence certificate
//! between its endpoint graphs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contract::{Contractibility, Oracle, OracleBudget};
use crate::graph::{Graph, GraphError, VertexLabel};

/// One replayable move. The payload carries everything precondition
/// checking needs at replay time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Transformation {
    DeletePoint {
        v: VertexLabel,
    },
    GluePoint {
        v: VertexLabel,
        rim: Vec<VertexLabel>,
    },
    DeleteEdge {
        u: VertexLabel,
        v: VertexLabel,
    },
    GlueEdge {
        u: VertexLabel,
        v: VertexLabel,
    },
    ContractSet {
        set: Vec<VertexLabel>,
        z: VertexLabel,
    },
}

/// A replayable certificate of homotopy equivalence: the digest of the
/// starting graph plus an ordered list of moves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub initial_digest: String,
    pub steps: Vec<Transformation>,
}

impl Trace {
    /// An empty trace anchored at `initial`.
    pub fn new(initial: &Graph) -> Self {
        Trace {
            initial_digest: initial.digest(),
            steps: Vec::new(),
        }
    }

    pub fn record(&mut self, step: Transformation) {
        self.steps.push(step);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serialization cannot fail")
    }

    pub fn parse_json(s: &str) -> Result<Self, GraphError> {
        serde_json::from_str(s).map_err(|e| GraphError::Parse(e.to_string()))
    }
}

/// Why a transformation was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{v:?} is not a simple point; its rim is {rim:?}")]
    NotSimplePoint { v: VertexLabel, rim: Graph },
    #[error("rim set induces a non-contractible graph: {rim:?}")]
    RimNotContractible { rim: Graph },
    #[error("edge ({u:?},{v:?}) already present")]
    EdgeAlreadyPresent { u: VertexLabel, v: VertexLabel },
    #[error("joint rim of {u:?},{v:?} is not contractible: {joint_rim:?}")]
    JointRimNotContractible {
        u: VertexLabel,
        v: VertexLabel,
        joint_rim: Graph,
    },
    #[error("set {set:?} does not induce a contractible graph")]
    SetNotContractible { set: Vec<VertexLabel> },
    #[error("neighborhood union of {set:?} is not contractible")]
    NeighborhoodUnionNotContractible { set: Vec<VertexLabel> },
    #[error("contractibility check exhausted its budget during {operation}")]
    Undecided { operation: &'static str },
    #[error("internal consistency failure: {detail}")]
    Internal { detail: String },
}

/// Why a replay failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("initial digest mismatch: trace expects {expected}, graph has {actual}")]
    DigestMismatch { expected: String, actual: String },
    #[error("step {index} failed: {source}")]
    Step {
        index: usize,
        source: TransformError,
    },
}

fn check_contractible(
    oracle: &Oracle,
    g: &Graph,
    budget: OracleBudget,
    operation: &'static str,
) -> Result<bool, TransformError> {
    match oracle.is_contractible(g, budget) {
        Contractibility::Contractible(_) => Ok(true),
        Contractibility::NonContractible => Ok(false),
        Contractibility::Undecided => Err(TransformError::Undecided { operation }),
    }
}

/// Deletes `v` after verifying it is a simple point.
pub fn delete_simple_point(
    oracle: &Oracle,
    g: &Graph,
    v: &VertexLabel,
    budget: OracleBudget,
) -> Result<Graph, TransformError> {
    let rim = g.rim(v)?;
    if !check_contractible(oracle, &rim, budget, "delete_simple_point")? {
        return Err(TransformError::NotSimplePoint {
            v: v.clone(),
            rim,
        });
    }
    Ok(g.without_vertex(v)?)
}

/// Glues a fresh vertex whose rim is exactly `rim_set`, which must induce
/// a contractible subgraph.
pub fn glue_point(
    oracle: &Oracle,
    g: &Graph,
    rim_set: &BTreeSet<VertexLabel>,
    new_label: &VertexLabel,
    budget: OracleBudget,
) -> Result<Graph, TransformError> {
    if g.has_vertex(new_label) {
        return Err(GraphError::DuplicateVertex(new_label.clone()).into());
    }
    let rim = g.induced_subgraph(rim_set)?;
    if !check_contractible(oracle, &rim, budget, "glue_point")? {
        return Err(TransformError::RimNotContractible { rim });
    }
    Ok(g.with_vertex(new_label.clone(), rim_set.iter().cloned())?)
}

fn joint_rim(g: &Graph, u: &VertexLabel, v: &VertexLabel) -> Result<Graph, GraphError> {
    let common: BTreeSet<VertexLabel> = g
        .neighbors(u)?
        .intersection(g.neighbors(v)?)
        .cloned()
        .collect();
    g.induced_subgraph(&common)
}

/// Deletes the edge (u, v) after verifying it is a simple edge
/// (contractible joint rim).
pub fn delete_simple_edge(
    oracle: &Oracle,
    g: &Graph,
    u: &VertexLabel,
    v: &VertexLabel,
    budget: OracleBudget,
) -> Result<Graph, TransformError> {
    if !g.has_edge(u, v)? {
        return Err(GraphError::NotAnEdge(u.clone(), v.clone()).into());
    }
    let joint = joint_rim(g, u, v)?;
    if !check_contractible(oracle, &joint, budget, "delete_simple_edge")? {
        return Err(TransformError::JointRimNotContractible {
            u: u.clone(),
            v: v.clone(),
            joint_rim: joint,
        });
    }
    Ok(g.without_edge(u, v)?)
}

/// Glues the edge (u, v) between existing non-adjacent vertices after
/// verifying their joint rim is contractible. The joint rim is the same
/// graph with or without the edge, so checking before insertion is sound.
pub fn glue_simple_edge(
    oracle: &Oracle,
    g: &Graph,
    u: &VertexLabel,
    v: &VertexLabel,
    budget: OracleBudget,
) -> Result<Graph, TransformError> {
    if u == v {
        return Err(GraphError::SelfLoop(u.clone()).into());
    }
    if g.has_edge(u, v)? {
        return Err(TransformError::EdgeAlreadyPresent {
            u: u.clone(),
            v: v.clone(),
        });
    }
    let joint = joint_rim(g, u, v)?;
    if !check_contractible(oracle, &joint, budget, "glue_simple_edge")? {
        return Err(TransformError::JointRimNotContractible {
            u: u.clone(),
            v: v.clone(),
            joint_rim: joint,
        });
    }
    Ok(g.with_edge(u, v)?)
}

/// The contraction result (G − S) ∪ {z} with z adjacent to the external
/// neighborhood of S. Callers verify simplicity first.
pub(crate) fn contracted_graph(
    g: &Graph,
    set: &BTreeSet<VertexLabel>,
    z: &VertexLabel,
) -> Result<Graph, GraphError> {
    let mut external: BTreeSet<VertexLabel> = BTreeSet::new();
    for s in set {
        external.extend(g.neighbors(s)?.iter().cloned());
    }
    let external: BTreeSet<VertexLabel> = external.difference(set).cloned().collect();
    let rest: BTreeSet<VertexLabel> = g
        .vertices()
        .filter(|v| !set.contains(*v))
        .cloned()
        .collect();
    g.induced_subgraph(&rest)?
        .with_vertex(z.clone(), external)
}

fn verify_simple_set_preconditions(
    oracle: &Oracle,
    g: &Graph,
    set: &BTreeSet<VertexLabel>,
    z: &VertexLabel,
    budget: OracleBudget,
    operation: &'static str,
) -> Result<(), TransformError> {
    if set.is_empty() {
        return Err(GraphError::EmptyVertexSet.into());
    }
    if g.has_vertex(z) {
        return Err(GraphError::DuplicateVertex(z.clone()).into());
    }
    let induced = g.induced_subgraph(set)?;
    let union = g.neighborhood_union(set)?;
    // Decide both halves so a definite failure is always reported as
    // such, distinguishing which requirement broke.
    let set_ok = check_contractible(oracle, &induced, budget, operation);
    let union_ok = check_contractible(oracle, &union, budget, operation);
    let labels: Vec<VertexLabel> = set.iter().cloned().collect();
    match (set_ok, union_ok) {
        (Ok(false), _) => Err(TransformError::SetNotContractible { set: labels }),
        (_, Ok(false)) => Err(TransformError::NeighborhoodUnionNotContractible { set: labels }),
        (Err(e), _) | (_, Err(e)) => Err(e),
        (Ok(true), Ok(true)) => Ok(()),
    }
}

/// Contracts the simple set `set` to the fresh vertex `z`.
pub fn contract_simple_set(
    oracle: &Oracle,
    g: &Graph,
    set: &BTreeSet<VertexLabel>,
    z: &VertexLabel,
    budget: OracleBudget,
) -> Result<Graph, TransformError> {
    verify_simple_set_preconditions(oracle, g, set, z, budget, "contract_simple_set")?;
    Ok(contracted_graph(g, set, z)?)
}

/// Contraction by its two-move decomposition: glue `z` with rim U(S),
/// then delete every member of S (each is simple in the intermediate
/// graph: its rim there is a cone with apex z). Must produce exactly the
/// same graph as [`contract_simple_set`]; a failure after the input
/// preconditions pass indicates a bug, not bad input.
pub fn contract_via_glue_then_delete(
    oracle: &Oracle,
    g: &Graph,
    set: &BTreeSet<VertexLabel>,
    z: &VertexLabel,
    budget: OracleBudget,
) -> Result<Graph, TransformError> {
    verify_simple_set_preconditions(oracle, g, set, z, budget, "contract_via_glue_then_delete")?;
    let union_vertices = g
        .neighborhood_union(set)
        .map_err(TransformError::Graph)?
        .vertex_set();
    let mut current =
        glue_point(oracle, g, &union_vertices, z, budget).map_err(|e| TransformError::Internal {
            detail: format!("gluing z with rim U(S) failed: {e}"),
        })?;
    for s in set {
        current =
            delete_simple_point(oracle, &current, s, budget).map_err(|e| {
                TransformError::Internal {
                    detail: format!("deleting set member {s:?} failed: {e}"),
                }
            })?;
    }
    Ok(current)
}

/// Applies one recorded step with full precondition verification.
pub fn apply(
    oracle: &Oracle,
    g: &Graph,
    step: &Transformation,
    budget: OracleBudget,
) -> Result<Graph, TransformError> {
    match step {
        Transformation::DeletePoint { v } => delete_simple_point(oracle, g, v, budget),
        Transformation::GluePoint { v, rim } => {
            let rim_set: BTreeSet<VertexLabel> = rim.iter().cloned().collect();
            glue_point(oracle, g, &rim_set, v, budget)
        }
        Transformation::DeleteEdge { u, v } => delete_simple_edge(oracle, g, u, v, budget),
        Transformation::GlueEdge { u, v } => glue_simple_edge(oracle, g, u, v, budget),
        Transformation::ContractSet { set, z } => {
            let s: BTreeSet<VertexLabel> = set.iter().cloned().collect();
            contract_simple_set(oracle, g, &s, z, budget)
        }
    }
}

/// Replays a trace from `g0` with full precondition verification at each
/// step, returning the final graph. The digest of `g0` must match the
/// trace anchor; a failing step is reported with its index.
pub fn replay(
    oracle: &Oracle,
    trace: &Trace,
    g0: &Graph,
    budget: OracleBudget,
) -> Result<Graph, ReplayError> {
    let actual = g0.digest();
    if actual != trace.initial_digest {
        return Err(ReplayError::DigestMismatch {
            expected: trace.initial_digest.clone(),
            actual,
        });
    }
    let mut current = g0.clone();
    for (index, step) in trace.steps.iter().enumerate() {
        current = apply(oracle, &current, step, budget)
            .map_err(|source| ReplayError::Step { index, source })?;
    }
    Ok(current)
}

/// Replays a trace checking only structure (labels, membership, edge
/// presence), skipping the contractibility verification. Only for traces
/// this process already verified; the verification flag is lowered
/// explicitly by calling this function.
pub fn replay_unverified(trace: &Trace, g0: &Graph) -> Result<Graph, ReplayError> {
    let actual = g0.digest();
    if actual != trace.initial_digest {
        return Err(ReplayError::DigestMismatch {
            expected: trace.initial_digest.clone(),
            actual,
        });
    }
    let mut current = g0.clone();
    for (index, step) in trace.steps.iter().enumerate() {
        let wrap = |source: TransformError| ReplayError::Step { index, source };
        current = match step {
            Transformation::DeletePoint { v } => {
                current.without_vertex(v).map_err(|e| wrap(e.into()))?
            }
            Transformation::GluePoint { v, rim } => current
                .with_vertex(v.clone(), rim.iter().cloned())
                .map_err(|e| wrap(e.into()))?,
            Transformation::DeleteEdge { u, v } => {
                current.without_edge(u, v).map_err(|e| wrap(e.into()))?
            }
            Transformation::GlueEdge { u, v } => {
                if current.has_edge(u, v).map_err(|e| wrap(e.into()))? {
                    return Err(wrap(TransformError::EdgeAlreadyPresent {
                        u: u.clone(),
                        v: v.clone(),
                    }));
                }
                current.with_edge(u, v).map_err(|e| wrap(e.into()))?
            }
            Transformation::ContractSet { set, z } => {
                let s: BTreeSet<VertexLabel> = set.iter().cloned().collect();
                if s.is_empty() {
                    return Err(wrap(GraphError::EmptyVertexSet.into()));
                }
                if current.has_vertex(z) {
                    return Err(wrap(GraphError::DuplicateVertex(z.clone()).into()));
                }
                contracted_graph(&current, &s, z).map_err(|e| wrap(e.into()))?
            }
        };
    }
    Ok(current)
}

/// The deterministic fresh-label scheme for contractions: `z<k>` with the
/// smallest k not colliding with an existing vertex.
pub fn fresh_z_label(g: &Graph) -> VertexLabel {
    for k in 0u64.. {
        let candidate = VertexLabel::new(format!("z{k}")).unwrap();
        if !g.has_vertex(&candidate) {
            return candidate;
        }
    }
    unreachable!("finite graphs cannot exhaust all z<k> labels")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VertexLabel {
        VertexLabel::new(s).unwrap()
    }

    fn set(labels: &[&str]) -> BTreeSet<VertexLabel> {
        labels.iter().map(|s| v(s)).collect()
    }

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn delete_point_cases() {
        let o = Oracle::new();
        let p4 = Graph::path(4);
        let p3 = delete_simple_point(&o, &p4, &v("1"), budget()).unwrap();
        assert!(p3.is_isomorphic(&Graph::path(3)));

        let k4 = Graph::complete(4);
        let k3 = delete_simple_point(&o, &k4, &v("2"), budget()).unwrap();
        assert!(k3.is_isomorphic(&Graph::complete(3)));

        let c4 = Graph::cycle(4);
        let err = delete_simple_point(&o, &c4, &v("1"), budget()).unwrap_err();
        assert!(matches!(err, TransformError::NotSimplePoint { .. }));
    }

    #[test]
    fn glue_point_cases() {
        let o = Oracle::new();
        let k1 = Graph::from_parts([v("a")], []).unwrap();
        let k2 = glue_point(&o, &k1, &set(&["a"]), &v("b"), budget()).unwrap();
        assert!(k2.has_edge(&v("a"), &v("b")).unwrap());

        let k3 = Graph::complete(3);
        let k4 = glue_point(&o, &k3, &k3.vertex_set(), &v("d"), budget()).unwrap();
        assert!(k4.is_isomorphic(&Graph::complete(4)));

        // Two opposite vertices of C4 induce S0: rejected.
        let c4 = Graph::cycle(4);
        let err = glue_point(&o, &c4, &set(&["1", "3"]), &v("x"), budget()).unwrap_err();
        assert!(matches!(err, TransformError::RimNotContractible { .. }));

        let err = glue_point(&o, &c4, &set(&["1"]), &v("2"), budget()).unwrap_err();
        assert!(matches!(
            err,
            TransformError::Graph(GraphError::DuplicateVertex(_))
        ));
    }

    #[test]
    fn edge_cases() {
        let o = Oracle::new();
        let k3 = Graph::complete(3);
        let p3 = delete_simple_edge(&o, &k3, &v("1"), &v("2"), budget()).unwrap();
        assert!(p3.is_isomorphic(&Graph::path(3)));

        // K4 minus an edge is the diamond.
        let k4 = Graph::complete(4);
        let diamond = delete_simple_edge(&o, &k4, &v("1"), &v("2"), budget()).unwrap();
        assert_eq!(diamond.edge_count(), 5);

        // C4 edges have empty joint rims.
        let c4 = Graph::cycle(4);
        let err = delete_simple_edge(&o, &c4, &v("1"), &v("2"), budget()).unwrap_err();
        assert!(matches!(
            err,
            TransformError::JointRimNotContractible { .. }
        ));

        // Gluing a C4 diagonal: the two common neighbors are non-adjacent.
        let err = glue_simple_edge(&o, &c4, &v("1"), &v("3"), budget()).unwrap_err();
        assert!(matches!(
            err,
            TransformError::JointRimNotContractible { .. }
        ));

        // P3 endpoints share the middle vertex: gluing closes the triangle.
        let p3 = Graph::path(3);
        let c3 = glue_simple_edge(&o, &p3, &v("1"), &v("3"), budget()).unwrap();
        assert!(c3.is_isomorphic(&Graph::cycle(3)));

        let err = glue_simple_edge(&o, &k3, &v("1"), &v("2"), budget()).unwrap_err();
        assert!(matches!(err, TransformError::EdgeAlreadyPresent { .. }));
    }

    #[test]
    fn glue_then_delete_restores_exactly() {
        let o = Oracle::new();
        let g = Graph::path(4);
        let rim = set(&["2", "3"]);
        let glued = glue_point(&o, &g, &rim, &v("x"), budget()).unwrap();
        let back = delete_simple_point(&o, &glued, &v("x"), budget()).unwrap();
        assert_eq!(back, g);

        let with_edge = glue_simple_edge(&o, &g, &v("1"), &v("3"), budget()).unwrap();
        let back = delete_simple_edge(&o, &with_edge, &v("1"), &v("3"), budget()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn contract_cases() {
        let o = Oracle::new();
        let c6 = Graph::cycle(6);
        let contracted =
            contract_simple_set(&o, &c6, &set(&["1", "2", "3"]), &v("z0"), budget()).unwrap();
        let expected = Graph::from_parts(
            [v("4"), v("5"), v("6"), v("z0")],
            [
                (v("4"), v("5")),
                (v("5"), v("6")),
                (v("6"), v("z0")),
                (v("4"), v("z0")),
            ],
        )
        .unwrap();
        assert_eq!(contracted, expected);

        // Singleton contraction is a relabeling.
        let p4 = Graph::path(4);
        let relabeled = contract_simple_set(&o, &p4, &set(&["2"]), &v("w"), budget()).unwrap();
        assert!(relabeled.is_isomorphic(&p4));
        assert!(relabeled.has_vertex(&v("w")));

        // Contracting all of a contractible graph gives K1.
        let whole = contract_simple_set(&o, &p4, &p4.vertex_set(), &v("z0"), budget()).unwrap();
        assert_eq!(whole.vertex_count(), 1);
        assert_eq!(whole.edge_count(), 0);
    }

    #[test]
    fn contract_rejections_distinguish_requirements() {
        let o = Oracle::new();
        // {1,2,4,5} in C6 induces two disjoint edges: the set itself fails.
        let c6 = Graph::cycle(6);
        let err =
            contract_simple_set(&o, &c6, &set(&["1", "2", "4", "5"]), &v("z0"), budget())
                .unwrap_err();
        assert!(matches!(err, TransformError::SetNotContractible { .. }));

        // An adjacent pair of C4 is contractible but U(S) is all of C4.
        let c4 = Graph::cycle(4);
        let err = contract_simple_set(&o, &c4, &set(&["1", "2"]), &v("z0"), budget()).unwrap_err();
        assert!(matches!(
            err,
            TransformError::NeighborhoodUnionNotContractible { .. }
        ));

        let err = contract_simple_set(&o, &c4, &set(&["1", "2"]), &v("3"), budget()).unwrap_err();
        assert!(matches!(
            err,
            TransformError::Graph(GraphError::DuplicateVertex(_))
        ));
    }

    #[test]
    fn dual_route_agreement() {
        let o = Oracle::new();
        let c6 = Graph::cycle(6);
        let s = set(&["1", "2", "3"]);
        let direct = contract_simple_set(&o, &c6, &s, &v("z0"), budget()).unwrap();
        let via = contract_via_glue_then_delete(&o, &c6, &s, &v("z0"), budget()).unwrap();
        assert_eq!(direct, via);

        let p5 = Graph::path(5);
        let s = set(&["3"]);
        let direct = contract_simple_set(&o, &p5, &s, &v("z0"), budget()).unwrap();
        let via = contract_via_glue_then_delete(&o, &p5, &s, &v("z0"), budget()).unwrap();
        assert_eq!(direct, via);
    }

    #[test]
    fn replay_and_forgery() {
        let o = Oracle::new();
        let c6 = Graph::cycle(6);
        let mut trace = Trace::new(&c6);
        trace.record(Transformation::ContractSet {
            set: vec![v("1"), v("2"), v("3")],
            z: v("z0"),
        });
        let end = replay(&o, &trace, &c6, budget()).unwrap();
        assert!(end.is_isomorphic(&Graph::cycle(4)));

        // Empty trace replays to the start graph.
        let empty = Trace::new(&c6);
        assert_eq!(replay(&o, &empty, &c6, budget()).unwrap(), c6);

        // Forge a non-simple deletion as a second step.
        let mut forged = trace.clone();
        forged.record(Transformation::DeletePoint { v: v("4") });
        let err = replay(&o, &forged, &c6, budget()).unwrap_err();
        match err {
            ReplayError::Step { index, source } => {
                assert_eq!(index, 1);
                assert!(matches!(source, TransformError::NotSimplePoint { .. }));
            }
            other => panic!("expected step failure, got {other:?}"),
        }

        // Wrong starting graph.
        let err = replay(&o, &trace, &Graph::cycle(5), budget()).unwrap_err();
        assert!(matches!(err, ReplayError::DigestMismatch { .. }));

        // The unverified replayer still applies structure faithfully.
        let end2 = replay_unverified(&trace, &c6).unwrap();
        assert_eq!(end2, end);
    }

    #[test]
    fn trace_wire_format() {
        let c6 = Graph::cycle(6);
        let mut trace = Trace::new(&c6);
        trace.record(Transformation::ContractSet {
            set: vec![v("1"), v("2"), v("3")],
            z: v("z0"),
        });
        trace.record(Transformation::DeletePoint { v: v("4") });
        trace.record(Transformation::GluePoint {
            v: v("a"),
            rim: vec![v("5")],
        });
        trace.record(Transformation::DeleteEdge { u: v("5"), v: v("6") });
        trace.record(Transformation::GlueEdge { u: v("5"), v: v("6") });
        let s = trace.to_json();
        let expected = format!(
            concat!(
                r#"{{"initial_digest":"{}","steps":["#,
                r#"{{"kind":"contract_set","set":["1","2","3"],"z":"z0"}},"#,
                r#"{{"kind":"delete_point","v":"4"}},"#,
                r#"{{"kind":"glue_point","v":"a","rim":["5"]}},"#,
                r#"{{"kind":"delete_edge","u":"5","v":"6"}},"#,
                r#"{{"kind":"glue_edge","u":"5","v":"6"}}]}}"#
            ),
            c6.digest()
        );
        assert_eq!(s, expected);
        assert_eq!(Trace::parse_json(&s).unwrap(), trace);
    }

    #[test]
    fn fresh_labels_skip_collisions() {
        let g = Graph::from_parts([v("z0"), v("z2")], []).unwrap();
        assert_eq!(fresh_z_label(&g), v("z1"));
        assert_eq!(fresh_z_label(&Graph::cycle(3)), v("z0"));
    }
}
