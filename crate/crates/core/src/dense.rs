//! Index-based bitset graphs backing the hot paths: color refinement,
//! isomorphism search, and the contractibility search. Not part of the
//! public API; the label-to-index boundary lives in `graph`.

use crate::graph::CanonicalKey;

/// Separator sentinel inside refinement signature streams.
const SIG_SEP: u32 = u32::MAX;

/// A simple undirected graph on vertices `0..n` stored as adjacency bitsets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct DenseGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

/// Iterates the set bit positions of a bitset slice.
pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl DenseGraph {
    pub(crate) fn new(n: usize) -> Self {
        let words = words_for(n);
        DenseGraph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub(crate) fn vertex_count(&self) -> usize {
        self.n
    }

    pub(crate) fn edge_count(&self) -> usize {
        let set: usize = self.rows.iter().map(|w| w.count_ones() as usize).sum();
        set / 2
    }

    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    fn row_mut(&mut self, v: usize) -> &mut [u64] {
        &mut self.rows[v * self.words..(v + 1) * self.words]
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.row_mut(u)[v / 64] |= 1 << (v % 64);
        self.row_mut(v)[u / 64] |= 1 << (u % 64);
    }

    pub(crate) fn has_edge(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn neighbors_of(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    /// Connectivity; the empty graph counts as disconnected.
    pub(crate) fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![0u64; self.words];
        let mut frontier = vec![0u64; self.words];
        seen[0] |= 1;
        frontier[0] |= 1;
        loop {
            let mut next = vec![0u64; self.words];
            let mut any = false;
            for v in iter_bits(&frontier).collect::<Vec<_>>() {
                for (nw, rw) in next.iter_mut().zip(self.row(v)) {
                    *nw |= rw;
                }
            }
            for w in 0..self.words {
                next[w] &= !seen[w];
                if next[w] != 0 {
                    any = true;
                    seen[w] |= next[w];
                }
            }
            if !any {
                break;
            }
            frontier = next;
        }
        seen.iter().map(|w| w.count_ones() as usize).sum::<usize>() == self.n
    }

    /// Number of connected components.
    pub(crate) fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for u in self.neighbors_of(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        count
    }

    /// Induced subgraph on the vertices in `mask` (a bitset over `0..n`).
    /// New indices follow ascending old-index order; returns the map
    /// new-index -> old-index alongside the graph.
    pub(crate) fn induced(&self, mask: &[u64]) -> (DenseGraph, Vec<u32>) {
        let keep: Vec<u32> = iter_bits(mask).map(|v| v as u32).collect();
        let mut sub = DenseGraph::new(keep.len());
        for (i, &vi) in keep.iter().enumerate() {
            for (j, &vj) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(vi as usize, vj as usize) {
                    sub.add_edge(i, j);
                }
            }
        }
        (sub, keep)
    }

    /// The graph with vertex `v` removed; old index `i` becomes
    /// `i` when `i < v` and `i - 1` otherwise.
    pub(crate) fn without_vertex(&self, v: usize) -> DenseGraph {
        let mut g = DenseGraph::new(self.n - 1);
        let old = |i: usize| if i < v { i } else { i + 1 };
        for i in 0..self.n - 1 {
            for j in i + 1..self.n - 1 {
                if self.has_edge(old(i), old(j)) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Induced subgraph on the neighbors of `v` (the rim), with index map.
    pub(crate) fn rim_graph(&self, v: usize) -> (DenseGraph, Vec<u32>) {
        self.induced(self.row(v))
    }

    /// Iterated neighborhood color refinement. Returns per-vertex stable
    /// colors plus the label-independent signature stream used as the
    /// isomorphism-invariant key.
    pub(crate) fn refinement(&self) -> Refinement {
        let n = self.n;
        let mut colors = vec![0u32; n];
        loop {
            let mut sigs: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
            for v in 0..n {
                let mut around: Vec<u32> = self.neighbors_of(v).map(|u| colors[u]).collect();
                around.sort_unstable();
                sigs.push((colors[v], around));
            }
            let mut uniq: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
            uniq.sort();
            uniq.dedup();
            let mut next = vec![0u32; n];
            for v in 0..n {
                next[v] = uniq.binary_search(&&sigs[v]).unwrap() as u32;
            }
            // Signatures sort first by the old color, and colors are dense
            // ranks, so a stable partition reproduces the same color vector.
            if next == colors {
                break;
            }
            colors = next;
        }

        // Signature stream: n, m, then every vertex's (color, degree,
        // sorted neighbor colors) in sorted order, SEP-terminated.
        let mut entries: Vec<Vec<u32>> = (0..n)
            .map(|v| {
                let mut e = vec![colors[v], self.degree(v) as u32];
                let mut around: Vec<u32> = self.neighbors_of(v).map(|u| colors[u]).collect();
                around.sort_unstable();
                e.extend(around);
                e
            })
            .collect();
        entries.sort();
        let mut stream = vec![n as u32, self.edge_count() as u32];
        for e in entries {
            stream.extend(e);
            stream.push(SIG_SEP);
        }
        Refinement {
            colors,
            key: CanonicalKey::from_stream(stream),
        }
    }

    pub(crate) fn canonical_key(&self) -> CanonicalKey {
        self.refinement().key
    }

    /// Exact isomorphism search: returns a mapping `self`-index ->
    /// `other`-index if one exists. Color refinement prunes the search.
    pub(crate) fn iso_mapping(&self, other: &DenseGraph) -> Option<Vec<u32>> {
        if self.n != other.n || self.edge_count() != other.edge_count() {
            return None;
        }
        let ra = self.refinement();
        let rb = other.refinement();
        if ra.key != rb.key {
            return None;
        }
        let n = self.n;
        // Map each color to its candidate target vertices.
        let mut by_color_b: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
        for v in 0..n {
            by_color_b.entry(rb.colors[v]).or_default().push(v);
        }
        // Assign the most constrained (smallest class) vertices first.
        let mut order: Vec<usize> = (0..n).collect();
        let class_size = |v: usize| by_color_b.get(&ra.colors[v]).map_or(0, |c| c.len());
        order.sort_by_key(|&v| (class_size(v), ra.colors[v], v));

        let mut mapping = vec![u32::MAX; n];
        let mut used = vec![false; n];
        let mut assigned: Vec<usize> = Vec::with_capacity(n);

        #[allow(clippy::too_many_arguments)]
        fn backtrack(
            a: &DenseGraph,
            b: &DenseGraph,
            order: &[usize],
            by_color_b: &std::collections::BTreeMap<u32, Vec<usize>>,
            colors_a: &[u32],
            pos: usize,
            mapping: &mut Vec<u32>,
            used: &mut Vec<bool>,
            assigned: &mut Vec<usize>,
        ) -> bool {
            if pos == order.len() {
                return true;
            }
            let va = order[pos];
            let Some(cands) = by_color_b.get(&colors_a[va]) else {
                return false;
            };
            'cand: for &vb in cands {
                if used[vb] {
                    continue;
                }
                for &pa in assigned.iter() {
                    if a.has_edge(va, pa) != b.has_edge(vb, mapping[pa] as usize) {
                        continue 'cand;
                    }
                }
                mapping[va] = vb as u32;
                used[vb] = true;
                assigned.push(va);
                if backtrack(a, b, order, by_color_b, colors_a, pos + 1, mapping, used, assigned)
                {
                    return true;
                }
                assigned.pop();
                used[vb] = false;
                mapping[va] = u32::MAX;
            }
            false
        }

        if backtrack(
            self,
            other,
            &order,
            &by_color_b,
            &ra.colors,
            0,
            &mut mapping,
            &mut used,
            &mut assigned,
        ) {
            Some(mapping)
        } else {
            None
        }
    }
}

pub(crate) struct Refinement {
    pub(crate) colors: Vec<u32>,
    pub(crate) key: CanonicalKey,
}
