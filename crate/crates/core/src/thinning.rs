//! Two-phase skeletonization. Phase 1 repeatedly deletes the
//! lexicographically smallest simple point; Phase 2 contracts one simple
//! set (largest size first within the configured bound, lexicographic
//! within a size); the loop repeats until neither phase can act. The
//! result is a skeleton — no simple point and no simple set within the
//! size bound — together with a replayable trace and statistics.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::contract::{connected_vertex_sets, Oracle, OracleBudget, Ternary};
use crate::graph::{Graph, VertexLabel};
use crate::transform::{contracted_graph, fresh_z_label, Trace, Transformation};

/// Thinning parameters. `max_set_size` must be at least 2: contracting a
/// singleton is a relabeling and never shrinks the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThinningConfig {
    pub max_set_size: usize,
    pub budget: OracleBudget,
}

impl Default for ThinningConfig {
    fn default() -> Self {
        ThinningConfig {
            max_set_size: 3,
            budget: OracleBudget::default(),
        }
    }
}

/// Action counts for one thinning run. Undecided candidates are skipped,
/// never acted on; their count discloses how complete the fixpoint claim
/// is.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinningStats {
    pub points_deleted: u64,
    pub sets_contracted: u64,
    pub undecided_candidates_skipped: u64,
}

/// Thinning output: the skeleton, a trace that replays from the input to
/// the skeleton, and run statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinningReport {
    pub skeleton: Graph,
    pub trace: Trace,
    pub stats: ThinningStats,
}

impl ThinningReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

/// Thins `g` to a skeleton. Deterministic: identical input and config
/// produce an identical report. Panics if `cfg.max_set_size < 2`.
pub fn thin(oracle: &Oracle, g: &Graph, cfg: &ThinningConfig) -> ThinningReport {
    assert!(
        cfg.max_set_size >= 2,
        "max_set_size must be at least 2 (singleton contraction is a relabeling)"
    );
    let mut current = g.clone();
    let mut trace = Trace::new(g);
    let mut stats = ThinningStats::default();
    // Simple-point verdicts for the current graph. Deleting a vertex
    // changes the rim of its neighbors only, so only those entries are
    // invalidated; a contraction rewires globally and clears the map.
    let mut verdicts: BTreeMap<VertexLabel, Ternary> = BTreeMap::new();

    'outer: loop {
        // Phase 1: exhaust simple-point deletions, smallest label first,
        // rescanning after each deletion.
        loop {
            let labels: Vec<VertexLabel> = current.vertices().cloned().collect();
            let mut deleted = None;
            for v in labels {
                let verdict = match verdicts.get(&v) {
                    Some(&t) => t,
                    None => {
                        let t = oracle
                            .is_simple_point(&current, &v, cfg.budget)
                            .expect("vertex exists");
                        if t.is_undecided() {
                            stats.undecided_candidates_skipped += 1;
                        }
                        verdicts.insert(v.clone(), t);
                        t
                    }
                };
                if verdict.is_true() {
                    let neighbors = current.neighbors(&v).expect("vertex exists").clone();
                    current = current.without_vertex(&v).expect("vertex exists");
                    trace.record(Transformation::DeletePoint { v: v.clone() });
                    stats.points_deleted += 1;
                    verdicts.remove(&v);
                    for n in neighbors {
                        verdicts.remove(&n);
                    }
                    deleted = Some(());
                    break;
                }
            }
            if deleted.is_none() {
                break;
            }
        }

        // Phase 2: contract the first simple set, searching larger sizes
        // first (lexicographic within a size) so a single contraction can
        // absorb what smaller ones would only nibble.
        let candidates = connected_vertex_sets(&current, 2, cfg.max_set_size);
        for size in (2..=cfg.max_set_size.min(current.vertex_count())).rev() {
            for set in candidates.iter().filter(|s| s.len() == size) {
                match oracle
                    .is_simple_set(&current, set, cfg.budget)
                    .expect("set members exist")
                {
                    Ternary::True => {
                        let z = fresh_z_label(&current);
                        current = contracted_graph(&current, set, &z)
                            .expect("set members exist and z is fresh");
                        trace.record(Transformation::ContractSet {
                            set: set.iter().cloned().collect(),
                            z,
                        });
                        stats.sets_contracted += 1;
                        verdicts.clear();
                        continue 'outer;
                    }
                    Ternary::False => {}
                    Ternary::Undecided => stats.undecided_candidates_skipped += 1,
                }
            }
        }
        break;
    }

    ThinningReport {
        skeleton: current,
        trace,
        stats,
    }
}

/// Is `g` already a skeleton for this config — no simple point and no
/// simple set of size `2..=max_set_size`? Undecided candidates make the
/// answer `Undecided` (unless a definite simple candidate exists, which
/// decides `False`).
pub fn is_skeleton(oracle: &Oracle, g: &Graph, cfg: &ThinningConfig) -> Ternary {
    let mut any_undecided = false;
    for v in g.vertices() {
        match oracle
            .is_simple_point(g, v, cfg.budget)
            .expect("vertex exists")
        {
            Ternary::True => return Ternary::False,
            Ternary::False => {}
            Ternary::Undecided => any_undecided = true,
        }
    }
    for set in connected_vertex_sets(g, 2, cfg.max_set_size) {
        match oracle
            .is_simple_set(g, &set, cfg.budget)
            .expect("set members exist")
        {
            Ternary::True => return Ternary::False,
            Ternary::False => {}
            Ternary::Undecided => any_undecided = true,
        }
    }
    if any_undecided {
        Ternary::Undecided
    } else {
        Ternary::True
    }
}
