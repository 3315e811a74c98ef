//! Exact contractibility decisions.
//!
//! A graph is contractible when it can be built from K1 by repeatedly
//! gluing a vertex whose rim (neighborhood subgraph) is itself
//! contractible — equivalently, when some vertex has a contractible rim
//! and the graph without it is contractible. The oracle decides this by
//! memoized backtracking and returns a deletion-order certificate on
//! success. Budgets bound the recursion; exhaustion yields `Undecided`,
//! never a wrong answer.

use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dense::{iter_bits, DenseGraph};
use crate::graph::{CanonicalKey, Graph, GraphError, VertexLabel};

/// Recursion allowance for one oracle operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_recursive_calls: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_recursive_calls: 1_000_000,
        }
    }
}

impl OracleBudget {
    pub fn new(max_recursive_calls: u64) -> Self {
        OracleBudget {
            max_recursive_calls,
        }
    }

    fn meter(&self) -> Meter {
        Meter {
            remaining: self.max_recursive_calls,
        }
    }
}

/// Counts recursive oracle calls; hitting zero aborts the computation.
struct Meter {
    remaining: u64,
}

/// Internal signal: the budget ran out mid-computation.
struct Exhausted;

impl Meter {
    fn tick(&mut self) -> Result<(), Exhausted> {
        if self.remaining == 0 {
            return Err(Exhausted);
        }
        self.remaining -= 1;
        Ok(())
    }
}

/// Witness of contractibility: deleting the vertices in order leaves K1,
/// and every deleted vertex has a contractible rim at deletion time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionCertificate {
    pub deletion_order: Vec<VertexLabel>,
}

/// Three-valued oracle outcome with certificate on success.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Contractibility {
    Contractible(ContractionCertificate),
    NonContractible,
    Undecided,
}

impl Contractibility {
    pub fn is_contractible(&self) -> bool {
        matches!(self, Contractibility::Contractible(_))
    }

    pub fn certificate(&self) -> Option<&ContractionCertificate> {
        match self {
            Contractibility::Contractible(c) => Some(c),
            _ => None,
        }
    }

    pub fn ternary(&self) -> Ternary {
        match self {
            Contractibility::Contractible(_) => Ternary::True,
            Contractibility::NonContractible => Ternary::False,
            Contractibility::Undecided => Ternary::Undecided,
        }
    }
}

/// Three-valued truth for budgeted predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ternary {
    True,
    False,
    Undecided,
}

impl Ternary {
    pub fn is_true(self) -> bool {
        self == Ternary::True
    }

    pub fn is_false(self) -> bool {
        self == Ternary::False
    }

    pub fn is_undecided(self) -> bool {
        self == Ternary::Undecided
    }

    /// Kleene conjunction: False dominates, then Undecided.
    pub fn and(self, other: Ternary) -> Ternary {
        match (self, other) {
            (Ternary::False, _) | (_, Ternary::False) => Ternary::False,
            (Ternary::Undecided, _) | (_, Ternary::Undecided) => Ternary::Undecided,
            _ => Ternary::True,
        }
    }
}

/// Simple points of a graph, with budget-exhausted candidates listed
/// separately (they are neither confirmed nor refuted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePoints {
    pub simple: Vec<VertexLabel>,
    pub undecided: Vec<VertexLabel>,
}

/// Simple edges of a graph, with undecided candidates listed separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleEdges {
    pub simple: Vec<(VertexLabel, VertexLabel)>,
    pub undecided: Vec<(VertexLabel, VertexLabel)>,
}

/// Simple sets of a graph within a size range, ordered by size then
/// lexicographically; undecided candidates listed separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleSets {
    pub simple: Vec<BTreeSet<VertexLabel>>,
    pub undecided: Vec<BTreeSet<VertexLabel>>,
}

/// Result of greedy simple-point reduction: the residue after repeatedly
/// deleting the lexicographically smallest simple point, the deletions
/// performed, and whether the run stopped early on budget exhaustion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyReduction {
    pub residue: Graph,
    pub deletions: ContractionCertificate,
    pub undecided: bool,
}

/// Why certificate verification failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("step {index}: vertex {label:?} is not in the graph")]
    UnknownVertex { index: usize, label: VertexLabel },
    #[error("step {index}: rim of {label:?} is not contractible")]
    RimNotContractible { index: usize, label: VertexLabel },
    #[error("step {index}: rim check for {label:?} exhausted the budget")]
    RimUndecided { index: usize, label: VertexLabel },
    #[error("after all deletions {vertex_count} vertices remain; K1 expected")]
    ResidueNotSingleton { vertex_count: usize },
}

/// Memoized cache entry: a graph together with its decided verdict
/// (`Some(order)` = contractible with that local deletion order).
struct CacheEntry {
    graph: DenseGraph,
    order: Option<Vec<u32>>,
}

/// The contractibility oracle. The memo cache maps isomorphism-invariant
/// keys to decided graphs; hits are confirmed by exact isomorphism and
/// certificates are translated through the isomorphism. Only decided
/// verdicts are cached — `Undecided` is never stored.
pub struct Oracle {
    cache: Mutex<HashMap<CanonicalKey, Vec<CacheEntry>>>,
    use_cache: bool,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new()
    }
}

impl Oracle {
    pub fn new() -> Self {
        Oracle {
            cache: Mutex::new(HashMap::new()),
            use_cache: true,
        }
    }

    /// An oracle that never caches; answers must match the caching one.
    pub fn without_cache() -> Self {
        Oracle {
            cache: Mutex::new(HashMap::new()),
            use_cache: false,
        }
    }

    /// Number of decided graphs currently memoized.
    pub fn cache_len(&self) -> usize {
        self.cache.lock().unwrap().values().map(|b| b.len()).sum()
    }

    fn cache_lookup(&self, key: &CanonicalKey, g: &DenseGraph) -> Option<Option<Vec<u32>>> {
        if !self.use_cache {
            return None;
        }
        let cache = self.cache.lock().unwrap();
        let bucket = cache.get(key)?;
        for entry in bucket {
            if entry.graph == *g {
                return Some(entry.order.clone());
            }
            if let Some(mapping) = entry.graph.iso_mapping(g) {
                let order = entry
                    .order
                    .as_ref()
                    .map(|o| o.iter().map(|&i| mapping[i as usize]).collect());
                return Some(order);
            }
        }
        None
    }

    fn cache_insert(&self, key: CanonicalKey, g: &DenseGraph, order: Option<Vec<u32>>) {
        if !self.use_cache {
            return;
        }
        let mut cache = self.cache.lock().unwrap();
        let bucket = cache.entry(key).or_default();
        // Racing duplicate inserts are harmless (same graph, same verdict),
        // but skip the obvious repeat.
        if bucket.iter().any(|e| e.graph == *g) {
            return;
        }
        bucket.push(CacheEntry {
            graph: g.clone(),
            order,
        });
    }

    /// Core recursion. Returns `Some(order)` with a local-index deletion
    /// order if `g` is contractible, `None` if it is not, or the
    /// exhaustion signal. The order for K1 is empty: certificates stop AT
    /// K1, they do not delete the last vertex.
    fn decide(&self, g: &DenseGraph, meter: &mut Meter) -> Result<Option<Vec<u32>>, Exhausted> {
        meter.tick()?;
        let n = g.vertex_count();
        if n == 0 {
            return Ok(None);
        }
        if n == 1 {
            return Ok(Some(Vec::new()));
        }
        // Gluing always attaches to an existing vertex, so every member of
        // the contractible family is connected.
        if !g.is_connected() {
            return Ok(None);
        }

        let key = g.canonical_key();
        if let Some(order) = self.cache_lookup(&key, g) {
            return Ok(order);
        }

        // Candidates in ascending rim size, then index (= label) order:
        // small rims are cheap to certify and prune faster.
        let mut candidates: Vec<usize> = (0..n).collect();
        candidates.sort_by_key(|&v| (g.degree(v), v));

        for v in candidates {
            let (rim, _) = g.rim_graph(v);
            if self.decide(&rim, meter)?.is_none() {
                continue;
            }
            let rest = g.without_vertex(v);
            if let Some(rest_order) = self.decide(&rest, meter)? {
                let mut order = Vec::with_capacity(rest_order.len() + 1);
                order.push(v as u32);
                // Rest indices skip v; translate them back to g's space.
                order.extend(
                    rest_order
                        .iter()
                        .map(|&i| if (i as usize) < v { i } else { i + 1 }),
                );
                self.cache_insert(key, g, Some(order.clone()));
                return Ok(Some(order));
            }
        }

        self.cache_insert(key, g, None);
        Ok(None)
    }

    /// Decides a labeled graph, translating the certificate to labels.
    fn decide_labeled(
        &self,
        g: &Graph,
        meter: &mut Meter,
    ) -> Result<Option<ContractionCertificate>, Exhausted> {
        let (dense, labels) = g.to_dense();
        let order = self.decide(&dense, meter)?;
        Ok(order.map(|o| ContractionCertificate {
            deletion_order: o.iter().map(|&i| labels[i as usize].clone()).collect(),
        }))
    }

    /// Is `g` contractible? Exact within the budget; `Undecided` on
    /// exhaustion. The empty graph and all disconnected graphs are not
    /// contractible.
    pub fn is_contractible(&self, g: &Graph, budget: OracleBudget) -> Contractibility {
        let mut meter = budget.meter();
        match self.decide_labeled(g, &mut meter) {
            Ok(Some(cert)) => Contractibility::Contractible(cert),
            Ok(None) => Contractibility::NonContractible,
            Err(Exhausted) => Contractibility::Undecided,
        }
    }

    /// Is `v` a simple point (contractible rim)?
    pub fn is_simple_point(
        &self,
        g: &Graph,
        v: &VertexLabel,
        budget: OracleBudget,
    ) -> Result<Ternary, GraphError> {
        let rim = g.rim(v)?;
        Ok(self.is_contractible(&rim, budget).ternary())
    }

    /// Is (u, v) a simple edge (contractible joint rim O(u) ∩ O(v))?
    pub fn is_simple_edge(
        &self,
        g: &Graph,
        u: &VertexLabel,
        v: &VertexLabel,
        budget: OracleBudget,
    ) -> Result<Ternary, GraphError> {
        if !g.has_edge(u, v)? {
            return Err(GraphError::NotAnEdge(u.clone(), v.clone()));
        }
        let joint: BTreeSet<VertexLabel> = g
            .neighbors(u)?
            .intersection(g.neighbors(v)?)
            .cloned()
            .collect();
        let joint_rim = g.induced_subgraph(&joint)?;
        Ok(self.is_contractible(&joint_rim, budget).ternary())
    }

    /// Is `set` a simple set (induced subgraph contractible AND
    /// neighborhood union contractible)? The budget covers both checks.
    pub fn is_simple_set(
        &self,
        g: &Graph,
        set: &BTreeSet<VertexLabel>,
        budget: OracleBudget,
    ) -> Result<Ternary, GraphError> {
        if set.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let induced = g.induced_subgraph(set)?;
        let union = g.neighborhood_union(set)?;
        let mut meter = budget.meter();
        let first = match self.decide_labeled(&induced, &mut meter) {
            Ok(Some(_)) => Ternary::True,
            Ok(None) => return Ok(Ternary::False),
            Err(Exhausted) => Ternary::Undecided,
        };
        let second = match self.decide_labeled(&union, &mut meter) {
            Ok(Some(_)) => Ternary::True,
            Ok(None) => return Ok(Ternary::False),
            Err(Exhausted) => Ternary::Undecided,
        };
        Ok(first.and(second))
    }

    /// All simple points in lexicographic label order; candidates whose
    /// check exhausted its (per-candidate) budget are listed separately.
    pub fn enumerate_simple_points(&self, g: &Graph, budget: OracleBudget) -> SimplePoints {
        let mut simple = Vec::new();
        let mut undecided = Vec::new();
        for v in g.vertices() {
            match self.is_simple_point(g, v, budget).expect("vertex exists") {
                Ternary::True => simple.push(v.clone()),
                Ternary::False => {}
                Ternary::Undecided => undecided.push(v.clone()),
            }
        }
        SimplePoints { simple, undecided }
    }

    /// All simple edges in lexicographic (min, max) order; per-candidate
    /// budget as for points.
    pub fn enumerate_simple_edges(&self, g: &Graph, budget: OracleBudget) -> SimpleEdges {
        let mut simple = Vec::new();
        let mut undecided = Vec::new();
        let edges: Vec<(VertexLabel, VertexLabel)> = g
            .edges()
            .map(|(u, v)| (u.clone(), v.clone()))
            .collect();
        for (u, v) in edges {
            match self.is_simple_edge(g, &u, &v, budget).expect("edge exists") {
                Ternary::True => simple.push((u, v)),
                Ternary::False => {}
                Ternary::Undecided => undecided.push((u, v)),
            }
        }
        SimpleEdges { simple, undecided }
    }

    /// All simple sets with size in `min_size..=max_size`, ordered by size
    /// then lexicographically by sorted labels. Only connected candidate
    /// sets are tested (a disconnected induced subgraph is never
    /// contractible). Sizes are clamped to the vertex count; per-candidate
    /// budget.
    pub fn enumerate_simple_sets(
        &self,
        g: &Graph,
        min_size: usize,
        max_size: usize,
        budget: OracleBudget,
    ) -> SimpleSets {
        let mut simple = Vec::new();
        let mut undecided = Vec::new();
        for set in connected_vertex_sets(g, min_size, max_size) {
            match self
                .is_simple_set(g, &set, budget)
                .expect("set members exist")
            {
                Ternary::True => simple.push(set),
                Ternary::False => {}
                Ternary::Undecided => undecided.push(set),
            }
        }
        SimpleSets { simple, undecided }
    }

    /// Repeatedly deletes the lexicographically smallest simple point
    /// until none remains (or the run-wide budget is exhausted). A
    /// heuristic fast path, not the ground-truth oracle.
    pub fn greedy_reduce(&self, g: &Graph, budget: OracleBudget) -> GreedyReduction {
        let mut meter = budget.meter();
        let mut current = g.clone();
        let mut deletion_order = Vec::new();
        let mut undecided = false;
        'outer: loop {
            let labels: Vec<VertexLabel> = current.vertices().cloned().collect();
            for v in labels {
                let rim = current.rim(&v).expect("vertex exists");
                match self.decide_labeled(&rim, &mut meter) {
                    Ok(Some(_)) => {
                        current = current.without_vertex(&v).expect("vertex exists");
                        deletion_order.push(v);
                        continue 'outer;
                    }
                    Ok(None) => {}
                    Err(Exhausted) => {
                        undecided = true;
                        break 'outer;
                    }
                }
            }
            break;
        }
        GreedyReduction {
            residue: current,
            deletions: ContractionCertificate { deletion_order },
            undecided,
        }
    }

    /// Re-verifies a certificate against `g`: every deleted vertex must
    /// have a contractible rim at its turn, and exactly K1 must remain.
    /// The budget covers the whole verification.
    pub fn verify_certificate(
        &self,
        g: &Graph,
        certificate: &ContractionCertificate,
        budget: OracleBudget,
    ) -> Result<(), CertificateError> {
        let mut meter = budget.meter();
        let mut current = g.clone();
        for (index, label) in certificate.deletion_order.iter().enumerate() {
            let rim = current
                .rim(label)
                .map_err(|_| CertificateError::UnknownVertex {
                    index,
                    label: label.clone(),
                })?;
            match self.decide_labeled(&rim, &mut meter) {
                Ok(Some(_)) => {}
                Ok(None) => {
                    return Err(CertificateError::RimNotContractible {
                        index,
                        label: label.clone(),
                    })
                }
                Err(Exhausted) => {
                    return Err(CertificateError::RimUndecided {
                        index,
                        label: label.clone(),
                    })
                }
            }
            current = current.without_vertex(label).expect("rim lookup succeeded");
        }
        if current.vertex_count() != 1 {
            return Err(CertificateError::ResidueNotSingleton {
                vertex_count: current.vertex_count(),
            });
        }
        Ok(())
    }
}

/// Enumerates the connected vertex sets of `g` with size in
/// `min_size..=max_size` (clamped to the vertex count), each as a sorted
/// label set, ordered by size then lexicographically. Uses
/// connected-subgraph expansion, so only connected sets are ever built.
pub fn connected_vertex_sets(
    g: &Graph,
    min_size: usize,
    max_size: usize,
) -> Vec<BTreeSet<VertexLabel>> {
    let (dense, labels) = g.to_dense();
    let n = dense.vertex_count();
    let min_size = min_size.max(1);
    let max_size = max_size.min(n);
    if min_size > max_size {
        return Vec::new();
    }
    let words = n.div_ceil(64);
    let mut out: Vec<Vec<u32>> = Vec::new();

    // Wernicke-style expansion: each connected set is generated exactly
    // once, rooted at its smallest vertex.
    #[allow(clippy::too_many_arguments)]
    fn extend(
        dense: &DenseGraph,
        gt_root: &[u64],
        sub: &mut Vec<u32>,
        ext: Vec<u64>,
        closed: Vec<u64>,
        min_size: usize,
        max_size: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        if sub.len() >= min_size {
            let mut s = sub.clone();
            s.sort_unstable();
            out.push(s);
        }
        if sub.len() == max_size {
            return;
        }
        let mut ext_work = ext;
        loop {
            let Some(w) = iter_bits(&ext_work).next() else {
                break;
            };
            ext_work[w / 64] &= !(1u64 << (w % 64));
            // Child extension: remaining candidates plus w's exclusive
            // neighborhood (neighbors not already seen), above the root.
            let mut child_ext = ext_work.clone();
            let mut child_closed = closed.clone();
            for i in 0..child_ext.len() {
                child_ext[i] |= dense.row(w)[i] & !closed[i] & gt_root[i];
                child_closed[i] |= dense.row(w)[i];
            }
            child_closed[w / 64] |= 1u64 << (w % 64);
            sub.push(w as u32);
            extend(
                dense,
                gt_root,
                sub,
                child_ext,
                child_closed,
                min_size,
                max_size,
                out,
            );
            sub.pop();
        }
    }

    for root in 0..n {
        let mut gt_root = vec![0u64; words];
        for i in root + 1..n {
            gt_root[i / 64] |= 1u64 << (i % 64);
        }
        let mut ext = vec![0u64; words];
        let mut closed = vec![0u64; words];
        for (i, (e, c)) in ext.iter_mut().zip(closed.iter_mut()).enumerate() {
            *e = dense.row(root)[i] & gt_root[i];
            *c = dense.row(root)[i];
        }
        closed[root / 64] |= 1u64 << (root % 64);
        let mut sub = vec![root as u32];
        extend(
            &dense,
            &gt_root,
            &mut sub,
            ext,
            closed,
            min_size,
            max_size,
            &mut out,
        );
    }

    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out.into_iter()
        .map(|s| s.into_iter().map(|i| labels[i as usize].clone()).collect())
        .collect()
}
