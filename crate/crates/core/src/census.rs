//! Exhaustive small-graph censuses up to isomorphism. These power the
//! exhaustive differential and invariant-consistency test suites: every
//! connected graph on up to seven vertices, and every graph (connected or
//! not) on up to six.

use std::collections::HashMap;

use crate::graph::{CanonicalKey, Graph, VertexLabel};

fn numeric_label(i: usize) -> VertexLabel {
    VertexLabel::new(i.to_string()).expect("numeric labels are non-empty")
}

/// Inserts `g` into `bucket_map` unless an isomorphic graph is already
/// present; returns whether it was new. Buckets share an
/// isomorphism-invariant key, so the pairwise check only runs within a
/// bucket.
fn insert_up_to_iso(bucket_map: &mut HashMap<CanonicalKey, Vec<Graph>>, g: Graph) -> Option<Graph> {
    let bucket = bucket_map.entry(g.canonical_key()).or_default();
    if bucket.iter().any(|h| h.is_isomorphic(&g)) {
        return None;
    }
    bucket.push(g.clone());
    Some(g)
}

/// Every connected graph on exactly `n` vertices, one representative per
/// isomorphism class, labeled "1".."n". Built by vertex extension: every
/// connected graph on k+1 vertices arises from a connected graph on k
/// vertices (drop a non-cut vertex, which always exists) by attaching a
/// new vertex to a nonempty neighbor subset. Deterministic output order.
///
/// Class counts for n = 1..=7: 1, 1, 2, 6, 21, 112, 853.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new(); // the empty graph is not connected
    }
    let mut reps = vec![Graph::complete(1)];
    for k in 2..=n {
        let new_label = numeric_label(k);
        let existing: Vec<VertexLabel> = (1..k).map(numeric_label).collect();
        let mut buckets: HashMap<CanonicalKey, Vec<Graph>> = HashMap::new();
        let mut next = Vec::new();
        for base in &reps {
            for mask in 1u32..(1 << (k - 1)) {
                let neighbors = existing
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask & (1 << i) != 0)
                    .map(|(_, l)| l.clone());
                let candidate = base
                    .with_vertex(new_label.clone(), neighbors)
                    .expect("fresh label, existing neighbors");
                if let Some(g) = insert_up_to_iso(&mut buckets, candidate) {
                    next.push(g);
                }
            }
        }
        reps = next;
    }
    reps
}

/// Every graph on exactly `n` vertices (connected or not), one
/// representative per isomorphism class, labeled "1".."n", by exhausting
/// all 2^(n choose 2) edge subsets. Cost doubles per vertex pair; intended
/// for n ≤ 6. Deterministic output order.
///
/// Class counts for n = 0..=6: 1, 1, 2, 4, 11, 34, 156.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let labels: Vec<VertexLabel> = (1..=n).map(numeric_label).collect();
    let pairs: Vec<(VertexLabel, VertexLabel)> = labels
        .iter()
        .enumerate()
        .flat_map(|(i, u)| labels[i + 1..].iter().map(move |w| (u.clone(), w.clone())))
        .collect();
    assert!(pairs.len() < 64, "edge-mask enumeration needs fewer than 64 vertex pairs");
    let mut buckets: HashMap<CanonicalKey, Vec<Graph>> = HashMap::new();
    let mut reps = Vec::new();
    for mask in 0..(1u64 << pairs.len()) {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, e)| e.clone());
        let candidate =
            Graph::from_parts(labels.iter().cloned(), edges).expect("valid edge masks");
        if let Some(g) = insert_up_to_iso(&mut buckets, candidate) {
            reps.push(g);
        }
    }
    reps
}
