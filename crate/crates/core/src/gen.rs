//! Deterministic, seeded instance generation.
//!
//! All randomness comes from SplitMix64 so that a `(n, p, r, seed)` tuple
//! pins down the generated graph bit-for-bit, across platforms and across
//! reimplementations in other languages. The generator, the uniform-double
//! derivation, and the bounded sampling are each fixed below; test vectors
//! are frozen in the tests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// SplitMix64: `state += 0x9E3779B97F4A7C15`, then finalize the old state
/// with the murmur-style mix (`>> 30` * 0xBF58476D1CE4E5B9, `>> 27` *
/// 0x94D049BB133111EB, `>> 31`).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`: the top 53 bits scaled by 2^-53.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound`, by modulo reduction (the reduction method is
    /// part of the reproducibility contract).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        self.next_u64() % bound
    }
}

/// Parameters of a planted instance: a random root graph, its line graph,
/// and `r` noise edges. Identical specs generate bit-identical graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    /// Root-graph vertex count.
    pub n: usize,
    /// Root edge probability in `[0, 1]`.
    pub p: f64,
    /// Number of planted noise edges.
    pub r: usize,
    pub seed: u64,
}

/// Erdős–Rényi style root graph: each pair `(u, v)` with `u < v`, visited in
/// lexicographic order, draws one double and keeps the edge iff it is below
/// `p`.
pub fn random_root(n: usize, p: f64, seed: u64) -> Graph {
    assert!(n >= 1, "root graph needs at least one vertex");
    assert!((0.0..=1.0).contains(&p), "p must lie in [0, 1]");
    random_root_from(&mut SplitMix64::new(seed), n, p)
}

fn random_root_from(rng: &mut SplitMix64, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.next_f64() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges).expect("generated pairs are valid")
}

/// A planted YES-instance: the line graph of the seeded root plus `r`
/// distinct noise edges, sampled without replacement by index-mapping into
/// the lexicographically ordered non-edge set. Deleting the planted edges
/// restores a line graph, so `r` is an upper bound on the optimum.
pub fn planted_instance(spec: &GenSpec) -> Result<(Graph, usize)> {
    assert!(spec.n >= 1, "root graph needs at least one vertex");
    assert!((0.0..=1.0).contains(&spec.p), "p must lie in [0, 1]");
    let mut rng = SplitMix64::new(spec.seed);
    let root = random_root_from(&mut rng, spec.n, spec.p);
    let (l, _) = root.line_graph_of();
    let total_pairs = (l.n() * l.n().saturating_sub(1) / 2) as u64;
    let available = total_pairs - l.m() as u64;
    if spec.r as u64 > available {
        return Err(Error::NotEnoughNonEdges {
            requested: spec.r,
            available: available as usize,
        });
    }

    // Partial Fisher-Yates over the virtual index range 0..available.
    let mut remap: std::collections::HashMap<u64, u64> = std::collections::HashMap::new();
    let mut chosen = Vec::with_capacity(spec.r);
    for i in 0..spec.r as u64 {
        let j = i + rng.below(available - i);
        let pick = *remap.get(&j).unwrap_or(&j);
        let displaced = *remap.get(&i).unwrap_or(&i);
        remap.insert(j, displaced);
        chosen.push(pick);
    }

    let noise: Vec<(usize, usize)> = chosen.iter().map(|&idx| nth_non_edge(&l, idx)).collect();
    let g = l
        .add_edges(&noise)
        .expect("noise edges are valid non-edges");
    debug_assert_eq!(g.m(), l.m() + spec.r);
    Ok((g, spec.r))
}

/// The `idx`-th non-edge of `g` in lexicographic pair order.
fn nth_non_edge(g: &Graph, idx: u64) -> (usize, usize) {
    let n = g.n();
    let mut remaining = idx;
    for u in 0..n {
        let above = g.neighbors(u).iter().filter(|&&v| v > u).count() as u64;
        let row = (n - u - 1) as u64 - above;
        if remaining >= row {
            remaining -= row;
            continue;
        }
        // Walk the sorted neighbor list to the remaining-th non-neighbor.
        let mut nbrs = g.neighbors(u).iter().filter(|&&v| v > u).peekable();
        for v in (u + 1)..n {
            if nbrs.peek() == Some(&&v) {
                nbrs.next();
                continue;
            }
            if remaining == 0 {
                return (u, v);
            }
            remaining -= 1;
        }
    }
    unreachable!("index within the non-edge count")
}

/// An adversarial chain: a claw whose leaf hangs a pendant vertex that
/// starts a path of `levels` triangles, consecutive triangles sharing one
/// vertex. Triangles are small cliques for every budget, so the chain
/// populates one level per triangle. Vertex labels are shuffled by the
/// seed; `k` only documents the budget the instance is aimed at.
pub fn chain_instance(levels: usize, k: usize, seed: u64) -> Graph {
    let _ = k; // triangles are below every small-clique threshold
    assert!(levels >= 1, "need at least one chain link");
    let n = 5 + 2 * levels;
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (0, 3), (1, 4)];
    for i in 1..=levels {
        let prev = if i == 1 { 4 } else { 3 + 2 * i - 1 };
        let a = 3 + 2 * i;
        let x = 4 + 2 * i;
        edges.push((prev, a));
        edges.push((prev, x));
        edges.push((a, x));
    }

    // Seeded relabeling.
    let mut rng = SplitMix64::new(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    let relabeled: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edge_list(n, &relabeled).expect("chain edges are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognize::is_line_graph;
    use crate::solve::{min_deletion, MinDeletion};

    #[test]
    fn splitmix64_reference_vectors() {
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xe220a8397b1dcdaf);
        assert_eq!(rng.next_u64(), 0x6e789e6aa1b965f4);
        assert_eq!(rng.next_u64(), 0x06c45d188009454f);
        assert_eq!(rng.next_u64(), 0xf88bb8a8724c81ec);
        let mut rng = SplitMix64::new(42);
        assert_eq!(rng.next_u64(), 0xbdd732262feb6e95);
        assert_eq!(rng.next_u64(), 0x28efe333b266f103);
    }

    #[test]
    fn probability_extremes() {
        assert_eq!(random_root(5, 0.0, 7).m(), 0);
        assert_eq!(random_root(5, 1.0, 7), Graph::complete(5));
    }

    #[test]
    fn same_seed_same_graph() {
        assert_eq!(random_root(30, 0.3, 42), random_root(30, 0.3, 42));
        let spec = GenSpec {
            n: 12,
            p: 0.3,
            r: 3,
            seed: 99,
        };
        let (a, _) = planted_instance(&spec).unwrap();
        let (b, _) = planted_instance(&spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn different_seeds_usually_differ() {
        assert_ne!(random_root(30, 0.3, 1), random_root(30, 0.3, 2));
    }

    #[test]
    fn planted_without_noise_is_a_line_graph() {
        for seed in 0..10 {
            let spec = GenSpec {
                n: 8,
                p: 0.4,
                r: 0,
                seed,
            };
            let (g, bound) = planted_instance(&spec).unwrap();
            assert_eq!(bound, 0);
            assert!(is_line_graph(&g));
        }
    }

    #[test]
    fn planted_noise_count_is_exact() {
        let spec = GenSpec {
            n: 9,
            p: 0.35,
            r: 4,
            seed: 3,
        };
        let (g, bound) = planted_instance(&spec).unwrap();
        let root = random_root(9, 0.35, 3);
        let (l, _) = root.line_graph_of();
        assert_eq!(bound, 4);
        assert_eq!(g.m(), l.m() + 4);
        assert_eq!(g.n(), l.n());
    }

    #[test]
    fn planted_single_noise_edge_is_near_line() {
        let spec = GenSpec {
            n: 6,
            p: 0.5,
            r: 1,
            seed: 11,
        };
        let (g, _) = planted_instance(&spec).unwrap();
        match min_deletion(&g, 1) {
            MinDeletion::Exact(d) => assert!(d <= 1),
            MinDeletion::MoreThan(_) => panic!("planted bound violated"),
        }
    }

    #[test]
    fn planted_rejects_excess_noise() {
        let spec = GenSpec {
            n: 2,
            p: 1.0,
            r: 5,
            seed: 0,
        };
        // L(K2) is a single vertex: no non-edges at all.
        assert!(matches!(
            planted_instance(&spec),
            Err(Error::NotEnoughNonEdges { .. })
        ));
    }

    #[test]
    fn chain_shape() {
        let g = chain_instance(1, 2, 0);
        assert_eq!(g.n(), 7);
        assert_eq!(g.m(), 7);
        assert!(!is_line_graph(&g));
        let g6 = chain_instance(6, 2, 0);
        assert_eq!(g6.n(), 17);
        assert_eq!(g6.m(), 22);
    }

    #[test]
    fn chain_is_deterministic_and_claw_like() {
        assert_eq!(chain_instance(3, 1, 5), chain_instance(3, 1, 5));
        // One deletion fixes the single claw regardless of labels.
        let g = chain_instance(3, 1, 5);
        assert_eq!(min_deletion(&g, 2), MinDeletion::Exact(1));
    }
}
