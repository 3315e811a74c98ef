//! Shared fixtures for the integration suites: one memoizing oracle and
//! one contractibility-annotated census of small connected graphs, both
//! computed once per test binary.
#![allow(dead_code)]

use std::sync::OnceLock;

use digitop::census::connected_graphs;
use digitop::cubical::minimal_digital_sphere;
use digitop::invariants::{betti_numbers, euler_characteristic, full_clique_complex};
use digitop::{Graph, Oracle, OracleBudget, VertexLabel};
use rand::Rng;

pub fn oracle() -> &'static Oracle {
    static ORACLE: OnceLock<Oracle> = OnceLock::new();
    ORACLE.get_or_init(Oracle::new)
}

pub fn budget() -> OracleBudget {
    OracleBudget::default()
}

/// Every connected graph on 1..=7 vertices up to isomorphism, annotated
/// with its (exact) contractibility. 996 classes.
pub fn contractible_census() -> &'static [(Graph, bool)] {
    static CENSUS: OnceLock<Vec<(Graph, bool)>> = OnceLock::new();
    CENSUS.get_or_init(|| {
        let mut rows = Vec::new();
        for n in 1..=7 {
            for g in connected_graphs(n) {
                let verdict = oracle().is_contractible(&g, budget());
                let contractible = match verdict.ternary() {
                    digitop::Ternary::True => true,
                    digitop::Ternary::False => false,
                    digitop::Ternary::Undecided => {
                        panic!("default budget must decide every graph on ≤ 7 vertices")
                    }
                };
                rows.push((g, contractible));
            }
        }
        rows
    })
}

pub fn label(s: &str) -> VertexLabel {
    VertexLabel::new(s).unwrap()
}

pub fn octahedron() -> Graph {
    minimal_digital_sphere(2)
}

/// A random graph on `n` vertices labeled "1".."n" with independent edge
/// probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let labels: Vec<VertexLabel> = (1..=n).map(|i| label(&i.to_string())).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Graph::from_parts(labels, edges).unwrap()
}

/// Euler characteristic together with the Betti vector up to the larger
/// of the two graphs' clique-complex dimensions — the pair every
/// topology-preserving transformation must keep fixed.
pub fn homology_summary(a: &Graph, b: &Graph) -> ((i64, Vec<usize>), (i64, Vec<usize>)) {
    let dim = full_clique_complex(a)
        .dimension()
        .max(full_clique_complex(b).dimension())
        .unwrap_or(0);
    (
        (euler_characteristic(a), betti_numbers(a, dim)),
        (euler_characteristic(b), betti_numbers(b, dim)),
    )
}

pub fn assert_homology_preserved(before: &Graph, after: &Graph, context: &str) {
    let (x, y) = homology_summary(before, after);
    assert_eq!(x, y, "homology must be preserved: {context}");
}
