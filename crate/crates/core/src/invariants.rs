//! Clique-complex invariants. The cliques of a graph, ordered by
//! inclusion, form a simplicial complex (a k-dimensional simplex for each
//! (k+1)-clique). This module enumerates that complex, computes its Euler
//! characteristic, and computes its Betti numbers over GF(2) by Gaussian
//! elimination on boundary matrices.

use std::collections::HashMap;

use crate::dense::DenseGraph;
use crate::graph::{Graph, VertexLabel};

/// The clique complex of a graph up to some dimension. Level `k` lists the
/// k-dimensional simplices, i.e. the (k+1)-cliques, each sorted, the level
/// itself in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueComplex {
    pub cliques_by_dim: Vec<Vec<Vec<VertexLabel>>>,
}

impl CliqueComplex {
    /// Simplex counts per dimension (index k = number of (k+1)-cliques).
    pub fn counts(&self) -> Vec<usize> {
        self.cliques_by_dim.iter().map(Vec::len).collect()
    }

    /// Largest dimension with at least one simplex, or `None` for the
    /// empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.cliques_by_dim
            .iter()
            .rposition(|level| !level.is_empty())
    }
}

/// Enumerates cliques as sorted index tuples, levels `0..max_size-1`
/// (level k holds the (k+1)-cliques). Depth-first extension in ascending
/// vertex order, so every level comes out lexicographically sorted.
fn clique_index_levels(dense: &DenseGraph, max_size: usize) -> Vec<Vec<Vec<u32>>> {
    let n = dense.vertex_count();
    let mut levels: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max_size];
    if max_size == 0 || n == 0 {
        return levels;
    }
    // Neighbors of v with index strictly above v: extending only upward
    // generates each clique exactly once, in lexicographic order.
    fn upper_neighbors(dense: &DenseGraph, v: usize) -> Vec<u64> {
        let mut mask: Vec<u64> = dense.row(v).to_vec();
        let word = v / 64;
        for lower in mask.iter_mut().take(word) {
            *lower = 0;
        }
        let bit = v % 64;
        if bit == 63 {
            mask[word] = 0;
        } else {
            mask[word] &= !((1u64 << (bit + 1)) - 1);
        }
        mask
    }

    fn extend(
        dense: &DenseGraph,
        clique: &mut Vec<u32>,
        allowed: &[u64],
        levels: &mut [Vec<Vec<u32>>],
        max_size: usize,
    ) {
        levels[clique.len() - 1].push(clique.clone());
        if clique.len() == max_size {
            return;
        }
        for u in crate::dense::iter_bits(allowed) {
            let next_allowed: Vec<u64> = upper_neighbors(dense, u)
                .iter()
                .zip(allowed)
                .map(|(&nb, &al)| nb & al)
                .collect();
            clique.push(u as u32);
            extend(dense, clique, &next_allowed, levels, max_size);
            clique.pop();
        }
    }

    let mut clique: Vec<u32> = Vec::with_capacity(max_size);
    for v in 0..n {
        let allowed = upper_neighbors(dense, v);
        clique.push(v as u32);
        extend(dense, &mut clique, &allowed, &mut levels, max_size);
        clique.pop();
    }
    levels
}

/// The clique complex of `g` up to dimension `max_dim` inclusive. Levels
/// beyond the complex's actual dimension are present but empty, so
/// `counts()` always has length `max_dim + 1`.
pub fn clique_complex(g: &Graph, max_dim: usize) -> CliqueComplex {
    let (dense, labels) = g.to_dense();
    let levels = clique_index_levels(&dense, max_dim + 1);
    let cliques_by_dim = levels
        .into_iter()
        .map(|level| {
            level
                .into_iter()
                .map(|clique| {
                    clique
                        .into_iter()
                        .map(|i| labels[i as usize].clone())
                        .collect()
                })
                .collect()
        })
        .collect();
    CliqueComplex { cliques_by_dim }
}

/// The full clique complex of `g`: every clique, no padding levels. The
/// empty graph yields a complex with no levels at all.
pub fn full_clique_complex(g: &Graph) -> CliqueComplex {
    if g.is_empty() {
        return CliqueComplex {
            cliques_by_dim: Vec::new(),
        };
    }
    let mut complex = clique_complex(g, g.vertex_count().saturating_sub(1));
    while complex
        .cliques_by_dim
        .last()
        .is_some_and(|level| level.is_empty())
    {
        complex.cliques_by_dim.pop();
    }
    complex
}

/// Euler characteristic of the clique complex: the alternating sum
/// `Σ (-1)^k · (number of (k+1)-cliques)` over every clique of `g`.
pub fn euler_characteristic(g: &Graph) -> i64 {
    let (dense, _) = g.to_dense();
    let levels = clique_index_levels(&dense, dense.vertex_count());
    levels
        .iter()
        .enumerate()
        .map(|(k, level)| {
            let count = level.len() as i64;
            if k % 2 == 0 {
                count
            } else {
                -count
            }
        })
        .sum()
}

/// Rank of a GF(2) matrix given as bit-packed rows, by elimination with a
/// pivot table keyed on each pivot row's leading column.
fn gf2_rank(rows: Vec<Vec<u64>>) -> usize {
    let mut pivot_by_lead: HashMap<usize, Vec<u64>> = HashMap::new();
    let mut rank = 0usize;
    for mut row in rows {
        loop {
            let Some(lead) = crate::dense::iter_bits(&row).next() else {
                break; // reduced to zero: dependent row
            };
            match pivot_by_lead.get(&lead) {
                Some(pivot) => {
                    for (slot, word) in pivot.iter().enumerate() {
                        row[slot] ^= word;
                    }
                }
                None => {
                    pivot_by_lead.insert(lead, row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Betti numbers `b_0 ..= b_max_dim` of the clique complex over GF(2):
/// `b_k = (number of k-simplices) − rank ∂_k − rank ∂_{k+1}`, where `∂_k`
/// sends a k-simplex to the sum of its (k−1)-faces. Cliques one dimension
/// above `max_dim` participate through `∂_{max_dim+1}`.
pub fn betti_numbers(g: &Graph, max_dim: usize) -> Vec<usize> {
    let (dense, _) = g.to_dense();
    // Need simplices up to dimension max_dim + 1, i.e. cliques of size
    // max_dim + 2.
    let levels = clique_index_levels(&dense, max_dim + 2);

    // Column index of each simplex within its level.
    let position: Vec<HashMap<&[u32], usize>> = levels
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, clique)| (clique.as_slice(), i))
                .collect()
        })
        .collect();

    // ranks[k] = rank of ∂_k mapping level k to level k−1, for k ≥ 1.
    let mut ranks = vec![0usize; max_dim + 2];
    for k in 1..=(max_dim + 1) {
        if levels[k].is_empty() {
            continue;
        }
        let face_words = levels[k - 1].len().div_ceil(64).max(1);
        let rows: Vec<Vec<u64>> = levels[k]
            .iter()
            .map(|simplex| {
                let mut row = vec![0u64; face_words];
                let mut face = Vec::with_capacity(simplex.len() - 1);
                for omit in 0..simplex.len() {
                    face.clear();
                    face.extend(
                        simplex
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != omit)
                            .map(|(_, &v)| v),
                    );
                    let col = position[k - 1][face.as_slice()];
                    row[col / 64] ^= 1u64 << (col % 64);
                }
                row
            })
            .collect();
        ranks[k] = gf2_rank(rows);
    }

    (0..=max_dim)
        .map(|k| levels[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}
