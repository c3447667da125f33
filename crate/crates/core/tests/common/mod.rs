//! Shared test helpers: an independent line-graph oracle and small-graph
//! enumeration. The oracle decides line-graph-ness by backtracking over edge
//! partitions into cliques (at most two cliques per vertex) and shares no
//! code with the library's incremental recognizer.

#![allow(dead_code)]

use lgk_core::Graph;

/// Independent ground truth: true iff the edges of `g` can be partitioned
/// into cliques such that no vertex lies in more than two of them.
pub fn oracle_is_line_graph(g: &Graph) -> bool {
    let edges: Vec<(usize, usize)> = g.edges().map(|e| e.endpoints()).collect();
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut counts = vec![0usize; g.n()];
    partition_exists(g, &edges, &mut cliques, &mut counts)
}

fn partition_exists(
    g: &Graph,
    edges: &[(usize, usize)],
    cliques: &mut Vec<Vec<usize>>,
    counts: &mut Vec<usize>,
) -> bool {
    let uncovered = edges
        .iter()
        .copied()
        .find(|&(u, v)| !cliques.iter().any(|c| c.contains(&u) && c.contains(&v)));
    let (u, v) = match uncovered {
        None => return true,
        Some(e) => e,
    };

    // Fresh clique {u, v}.
    if counts[u] < 2 && counts[v] < 2 {
        cliques.push(vec![u, v]);
        counts[u] += 1;
        counts[v] += 1;
        if partition_exists(g, edges, cliques, counts) {
            return true;
        }
        counts[u] -= 1;
        counts[v] -= 1;
        cliques.pop();
    }

    // Absorb the edge into an existing clique, adding whichever endpoints
    // are missing. Every newly covered pair must be a real edge not covered
    // by any other clique.
    for id in 0..cliques.len() {
        let joiners: Vec<usize> = [u, v]
            .into_iter()
            .filter(|w| !cliques[id].contains(w))
            .collect();
        if joiners.is_empty() || joiners.iter().any(|&w| counts[w] >= 2) {
            continue;
        }
        let mut ok = true;
        'check: for &w in &joiners {
            for &x in &cliques[id] {
                if !g.has_edge(w, x) || covered_elsewhere(cliques, id, w, x) {
                    ok = false;
                    break 'check;
                }
            }
        }
        if joiners.len() == 2 && covered_elsewhere(cliques, id, u, v) {
            ok = false;
        }
        if !ok {
            continue;
        }
        for &w in &joiners {
            cliques[id].push(w);
            counts[w] += 1;
        }
        if partition_exists(g, edges, cliques, counts) {
            return true;
        }
        for &w in &joiners {
            cliques[id].pop();
            counts[w] -= 1;
        }
    }
    false
}

fn covered_elsewhere(cliques: &[Vec<usize>], skip: usize, a: usize, b: usize) -> bool {
    cliques
        .iter()
        .enumerate()
        .any(|(id, c)| id != skip && c.contains(&a) && c.contains(&b))
}

/// Builds the graph on `n` vertices whose edge set is given by the bits of
/// `mask` over pairs in lexicographic order.
pub fn graph_from_bits(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut idx = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if mask >> idx & 1 == 1 {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Minimal standalone generator for test sampling; deliberately not the
/// library's generator so the two cannot share a bug.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        // xorshift64
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}
