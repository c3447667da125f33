//! The nine minimal non-line graphs, forbidden-subgraph extraction, and the
//! greedy edge-disjoint packing that builds the modulator.
//!
//! The pattern set is shipped as edge lists under `data/` and self-checked in
//! tests: each pattern is not a line graph, deleting any single vertex yields
//! a line graph, and the nine are pairwise non-isomorphic. Pattern 1 is the
//! claw.

use std::sync::LazyLock;

use crate::graph::{Graph, VertexSet};
use crate::recognize::is_line_graph;

const PATTERN_DATA: [&str; 9] = [
    include_str!("../data/pattern_1.txt"),
    include_str!("../data/pattern_2.txt"),
    include_str!("../data/pattern_3.txt"),
    include_str!("../data/pattern_4.txt"),
    include_str!("../data/pattern_5.txt"),
    include_str!("../data/pattern_6.txt"),
    include_str!("../data/pattern_7.txt"),
    include_str!("../data/pattern_8.txt"),
    include_str!("../data/pattern_9.txt"),
];

/// The nine minimal non-line graphs, each on at most 6 vertices.
#[derive(Debug)]
pub struct PatternSet {
    patterns: Vec<Graph>,
}

impl PatternSet {
    /// Patterns in shipping order; index 0 is pattern 1 (the claw).
    pub fn patterns(&self) -> &[Graph] {
        &self.patterns
    }

    pub fn claw(&self) -> &Graph {
        &self.patterns[0]
    }

    /// 1-based id of the pattern isomorphic to `g`, if any.
    pub fn id_of(&self, g: &Graph) -> Option<usize> {
        self.patterns
            .iter()
            .position(|p| is_isomorphic_small(g, p))
            .map(|i| i + 1)
    }
}

static PATTERNS: LazyLock<PatternSet> = LazyLock::new(|| {
    let patterns = PATTERN_DATA
        .iter()
        .map(|text| crate::graph::parse_edge_list(text).expect("embedded pattern parses"))
        .collect();
    PatternSet { patterns }
});

pub fn beineke_patterns() -> &'static PatternSet {
    &PATTERNS
}

/// Isomorphism test by branch-and-prune over vertex bijections. Intended for
/// pattern-sized graphs; cost is bounded by `n!` with degree pruning.
pub fn is_isomorphic_small(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let mut deg_a: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return false;
    }
    let mut image = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    extend_isomorphism(a, b, 0, &mut image, &mut used)
}

fn extend_isomorphism(
    a: &Graph,
    b: &Graph,
    v: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if v == a.n() {
        return true;
    }
    for w in b.vertices() {
        if used[w] || a.degree(v) != b.degree(w) {
            continue;
        }
        let consistent = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(image[u], w));
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        if extend_isomorphism(a, b, v + 1, image, used) {
            return true;
        }
        image[v] = usize::MAX;
        used[w] = false;
    }
    false
}

/// Exhaustively searches all vertex subsets of pattern size for an induced
/// occurrence of one of the nine patterns. Exponential in `n`; meant for
/// cross-checks on small graphs.
pub fn contains_pattern_subset(g: &Graph) -> Option<(VertexSet, usize)> {
    let pats = beineke_patterns();
    for size in [4usize, 5, 6] {
        if size > g.n() {
            break;
        }
        let mut found = None;
        for_each_combination(g.n(), size, &mut |subset| {
            let vs = VertexSet::new(subset.to_vec());
            let (sub, _) = g.induced_subgraph(&vs).expect("subset in range");
            if let Some(id) = pats.id_of(&sub) {
                found = Some((vs, id));
                return false;
            }
            true
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Calls `f` on every `size`-combination of `0..n` in lexicographic order,
/// stopping early when `f` returns false.
pub(crate) fn for_each_combination(n: usize, size: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if size > n {
        return;
    }
    let mut subset: Vec<usize> = (0..size).collect();
    loop {
        if !f(&subset) {
            return;
        }
        // Advance to the next combination.
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if subset[i] < n - size + i {
                subset[i] += 1;
                for j in (i + 1)..size {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Finds a minimal vertex set inducing one of the nine patterns, or `None`
/// when `g` is a line graph.
///
/// Minimization pins one obstruction vertex at a time: order the unpinned
/// vertices ascending, binary-search the shortest prefix whose union with
/// the pinned set is not a line graph (line-graph-ness is hereditary, so the
/// predicate is monotone in the prefix), pin the last prefix vertex, and
/// shrink the universe to that prefix. Every obstruction inside the current
/// universe contains all pinned vertices, so when the pinned set itself
/// stops being a line graph it is exactly a minimal obstruction.
pub fn find_forbidden_subgraph(g: &Graph) -> Option<VertexSet> {
    if is_line_graph(g) {
        return None;
    }
    let mut universe: Vec<usize> = (0..g.n()).collect();
    let mut pinned: Vec<usize> = Vec::new();
    loop {
        if !pinned.is_empty() && !line_on_union(g, &pinned, &[]) {
            assert!(
                pinned.len() <= 6,
                "minimal obstruction exceeds pattern size"
            );
            return Some(VertexSet::new(pinned));
        }
        let (mut lo, mut hi) = (1usize, universe.len());
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if line_on_union(g, &pinned, &universe[..mid]) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        pinned.push(universe[lo - 1]);
        pinned.sort_unstable();
        universe.truncate(lo - 1);
    }
}

fn line_on_union(g: &Graph, pinned: &[usize], prefix: &[usize]) -> bool {
    let mut vs: Vec<usize> = Vec::with_capacity(pinned.len() + prefix.len());
    vs.extend_from_slice(pinned);
    vs.extend_from_slice(prefix);
    let (sub, _) = g
        .induced_subgraph(&VertexSet::new(vs))
        .expect("vertices in range");
    is_line_graph(&sub)
}

/// A vertex set `S` such that `G - (S \ {v})` is a line graph for every
/// `v` in `S`, produced by greedy packing of pairwise edge-disjoint
/// forbidden induced subgraphs.
#[derive(Debug, Clone)]
pub struct Modulator {
    pub s: VertexSet,
    /// Vertex sets of the packed forbidden subgraphs, in packing order.
    pub packing: Vec<VertexSet>,
}

/// Outcome of the packing loop: either a modulator, or proof that more than
/// `k` pairwise edge-disjoint forbidden subgraphs exist, each of which needs
/// a private deleted edge.
#[derive(Debug, Clone)]
pub enum ModulatorOutcome {
    Built(Modulator),
    TooManyPacked { packing: Vec<VertexSet> },
}

/// Greedy packing: repeatedly find a forbidden induced subgraph using at
/// most one vertex of the current `S` (try dropping all of `S`, then keeping
/// each `v` in ascending order) and add its vertices to `S`. Each packed
/// subgraph shares at most one vertex with the previous `S`, so the packed
/// subgraphs are pairwise edge-disjoint.
pub fn build_modulator(g: &Graph, k: usize) -> ModulatorOutcome {
    let mut s: Vec<usize> = Vec::new();
    let mut packing: Vec<VertexSet> = Vec::new();
    loop {
        match find_packable(g, &s) {
            None => {
                return ModulatorOutcome::Built(Modulator {
                    s: VertexSet::new(s),
                    packing,
                });
            }
            Some(w) => {
                packing.push(w.clone());
                if packing.len() > k {
                    return ModulatorOutcome::TooManyPacked { packing };
                }
                s.extend(w.iter());
                s.sort_unstable();
                s.dedup();
            }
        }
    }
}

/// A forbidden subgraph of `G - (S \ {kept})` for the first choice of
/// `kept` in deterministic order (none first, then ascending), mapped back
/// to original vertex ids.
fn find_packable(g: &Graph, s: &[usize]) -> Option<VertexSet> {
    let keep_choices = std::iter::once(None).chain(s.iter().copied().map(Some));
    for kept in keep_choices {
        let alive: VertexSet = g
            .vertices()
            .filter(|v| !s.contains(v) || Some(*v) == kept)
            .collect();
        let (sub, map) = g.induced_subgraph(&alive).expect("alive set in range");
        if let Some(local) = find_forbidden_subgraph(&sub) {
            return Some(local.iter().map(|v| map[v]).collect());
        }
    }
    None
}
