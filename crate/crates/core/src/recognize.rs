//! Line-graph recognition via clique partition witnesses.
//!
//! A clique partition witness for `G` is a multiset of cliques such that
//! every clique induces a complete subgraph, two distinct cliques share at
//! most one vertex, every vertex lies in exactly two cliques (counting
//! multiplicity), and every edge lies in exactly one clique. A graph is a
//! line graph iff such a witness exists.
//!
//! [`recognize`] constructs a witness (or rejects) by adding vertices one at
//! a time in BFS order per component: the new vertex must join two disjoint
//! existing cliques, or one existing clique plus a fresh singleton. All
//! admissible joins are explored with backtracking, so rejection means no
//! witness exists. Components with at most 4 vertices are solved by
//! exhaustive search instead, picking the lexicographically smallest witness;
//! above that size the witness is essentially unique, so the incremental
//! search commits to the first extension in deterministic order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A multiset of cliques certifying that a graph is a line graph.
///
/// Held in canonical form: each clique sorted, cliques sorted
/// lexicographically. The multiset matters: an isolated vertex carries two
/// copies of its singleton so that the exactly-two-cliques rule stays
/// uniform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliquePartitionWitness {
    n: usize,
    cliques: Vec<Vec<usize>>,
    /// vertex -> ids of the cliques containing it (exactly two when valid)
    membership: Vec<Vec<usize>>,
}

impl CliquePartitionWitness {
    pub fn from_cliques(n: usize, mut cliques: Vec<Vec<usize>>) -> Self {
        for c in &mut cliques {
            c.sort_unstable();
            c.dedup();
        }
        cliques.sort();
        let mut membership = vec![Vec::new(); n];
        for (id, c) in cliques.iter().enumerate() {
            for &v in c {
                if v < n {
                    membership[v].push(id);
                }
            }
        }
        CliquePartitionWitness {
            n,
            cliques,
            membership,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    pub fn clique(&self, id: usize) -> &[usize] {
        &self.cliques[id]
    }

    /// Ids of the cliques containing `v`, in ascending order.
    pub fn cliques_of(&self, v: usize) -> &[usize] {
        &self.membership[v]
    }

    /// Looks up a clique by its exact vertex set.
    pub fn find_clique(&self, members: &[usize]) -> Option<usize> {
        self.cliques
            .binary_search_by(|c| c.as_slice().cmp(members))
            .ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&WitnessJson {
            cliques: self.cliques.clone(),
        })
        .expect("witness serialization cannot fail")
    }

    pub fn from_json(n: usize, text: &str) -> Result<Self> {
        let parsed: WitnessJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("witness JSON: {e}"),
        })?;
        Ok(Self::from_cliques(n, parsed.cliques))
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    cliques: Vec<Vec<usize>>,
}

/// The first condition a candidate witness violates, in the order of the
/// witness definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessViolation {
    VertexOutOfRange { clique: usize, vertex: usize },
    NotAClique { clique: usize },
    CliquesShareTwoVertices { a: usize, b: usize },
    VertexNotInTwoCliques { vertex: usize, count: usize },
    EdgeNotCoveredOnce { u: usize, v: usize, count: usize },
}

impl fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessViolation::VertexOutOfRange { clique, vertex } => {
                write!(f, "clique {clique} contains unknown vertex {vertex}")
            }
            WitnessViolation::NotAClique { clique } => {
                write!(f, "clique {clique} does not induce a complete subgraph")
            }
            WitnessViolation::CliquesShareTwoVertices { a, b } => {
                write!(f, "cliques {a} and {b} intersect in more than one vertex")
            }
            WitnessViolation::VertexNotInTwoCliques { vertex, count } => {
                write!(f, "vertex {vertex} lies in {count} cliques, expected 2")
            }
            WitnessViolation::EdgeNotCoveredOnce { u, v, count } => {
                write!(f, "edge {u}-{v} lies in {count} cliques, expected 1")
            }
        }
    }
}

/// Checks the five witness conditions against `g`, reporting the first
/// violation.
pub fn validate_witness(
    g: &Graph,
    w: &CliquePartitionWitness,
) -> std::result::Result<(), WitnessViolation> {
    for (id, c) in w.cliques().iter().enumerate() {
        for &v in c {
            if v >= g.n() {
                return Err(WitnessViolation::VertexOutOfRange {
                    clique: id,
                    vertex: v,
                });
            }
        }
    }
    for (id, c) in w.cliques().iter().enumerate() {
        if !g.is_clique(&VertexSet::new(c.clone())) {
            return Err(WitnessViolation::NotAClique { clique: id });
        }
    }
    // Pairwise intersections via shared membership: three-way overlap on a
    // vertex or a two-vertex overlap both surface here.
    for v in 0..g.n().min(w.n) {
        let ids = w.cliques_of(v);
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let shared = intersection_size(w.clique(a), w.clique(b));
                if shared > 1 {
                    return Err(WitnessViolation::CliquesShareTwoVertices { a, b });
                }
            }
        }
    }
    for v in 0..g.n() {
        let count = if v < w.n { w.cliques_of(v).len() } else { 0 };
        if count != 2 {
            return Err(WitnessViolation::VertexNotInTwoCliques { vertex: v, count });
        }
    }
    for e in g.edges() {
        let (u, v) = e.endpoints();
        let count = w
            .cliques_of(u)
            .iter()
            .filter(|&&id| w.clique(id).binary_search(&v).is_ok())
            .count();
        if count != 1 {
            return Err(WitnessViolation::EdgeNotCoveredOnce { u, v, count });
        }
    }
    Ok(())
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut out) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out += 1;
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub fn is_line_graph(g: &Graph) -> bool {
    recognize(g).is_some()
}

/// Decides line-graph-ness and constructs a witness on success.
pub fn recognize(g: &Graph) -> Option<CliquePartitionWitness> {
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for comp in g.components() {
        let found = if comp.len() <= 4 {
            tiny_component_witness(g, &comp)
        } else {
            incremental_component_witness(g, &comp)
        };
        cliques.extend(found?);
    }
    Some(CliquePartitionWitness::from_cliques(g.n(), cliques))
}

/// Exhaustive search for components with at most 4 vertices: enumerate every
/// partition of the component's edges into cliques with at most two cliques
/// per vertex, pad with singletons, and keep the lexicographically smallest.
/// Whitney uniqueness does not apply at this size (K3 is both L(K3) and
/// L(K_{1,3})), so the tie is broken canonically.
fn tiny_component_witness(g: &Graph, comp: &[usize]) -> Option<Vec<Vec<usize>>> {
    let edges: Vec<(usize, usize)> = comp
        .iter()
        .flat_map(|&u| {
            g.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
        .collect();

    let mut best: Option<Vec<Vec<usize>>> = None;
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut counts = vec![0usize; comp.len()];
    let local = |v: usize| comp.binary_search(&v).expect("vertex in component");
    enumerate_partitions(
        g,
        &edges,
        0,
        &mut cliques,
        &mut counts,
        &local,
        &mut |cliques| {
            let mut candidate = cliques.to_vec();
            for &v in comp {
                let occurrences = cliques
                    .iter()
                    .filter(|c| c.binary_search(&v).is_ok())
                    .count();
                for _ in occurrences..2 {
                    candidate.push(vec![v]);
                }
            }
            for c in &mut candidate {
                c.sort_unstable();
            }
            candidate.sort();
            match &best {
                Some(b) if *b <= candidate => {}
                _ => best = Some(candidate),
            }
        },
    );
    best
}

/// Enumerates all partitions of `edges[next..]` into cliques, extending the
/// current partial state. Each covered edge belongs to exactly one clique and
/// no vertex joins more than two cliques.
fn enumerate_partitions(
    g: &Graph,
    edges: &[(usize, usize)],
    next: usize,
    cliques: &mut Vec<Vec<usize>>,
    counts: &mut Vec<usize>,
    local: &dyn Fn(usize) -> usize,
    emit: &mut dyn FnMut(&[Vec<usize>]),
) {
    // Find the first edge not yet covered by the partial partition.
    let mut next = next;
    while next < edges.len() {
        let (u, v) = edges[next];
        let covered = cliques
            .iter()
            .any(|c| c.binary_search(&u).is_ok() && c.binary_search(&v).is_ok());
        if !covered {
            break;
        }
        next += 1;
    }
    if next == edges.len() {
        emit(cliques);
        return;
    }
    let (u, v) = edges[next];

    // Option: open a fresh clique {u, v}.
    if counts[local(u)] < 2 && counts[local(v)] < 2 {
        cliques.push(vec![u, v]);
        counts[local(u)] += 1;
        counts[local(v)] += 1;
        enumerate_partitions(g, edges, next + 1, cliques, counts, local, emit);
        counts[local(u)] -= 1;
        counts[local(v)] -= 1;
        cliques.pop();
    }

    // Option: grow an existing clique to absorb the edge. Absorbing a vertex
    // is only allowed if it is adjacent to the whole clique and none of the
    // new pairs is already covered elsewhere.
    for id in 0..cliques.len() {
        let has_u = cliques[id].binary_search(&u).is_ok();
        let has_v = cliques[id].binary_search(&v).is_ok();
        let join: &[usize] = match (has_u, has_v) {
            (true, false) => &[v],
            (false, true) => &[u],
            (false, false) => &[u, v],
            (true, true) => unreachable!("edge would already be covered"),
        };
        if join.iter().any(|&w| counts[local(w)] >= 2) {
            continue;
        }
        let extendable = join.iter().all(|&w| {
            cliques[id].iter().all(|&x| g.has_edge(w, x))
                && cliques
                    .iter()
                    .enumerate()
                    .filter(|&(other, _)| other != id)
                    .all(|(_, c)| {
                        // No pair w-x may live in another clique already.
                        !(c.binary_search(&w).is_ok()
                            && cliques[id].iter().any(|&x| c.binary_search(&x).is_ok()))
                    })
        }) && (join.len() < 2
            || !cliques.iter().enumerate().any(|(other, c)| {
                other != id && c.binary_search(&u).is_ok() && c.binary_search(&v).is_ok()
            }));
        if !extendable {
            continue;
        }
        let saved = cliques[id].clone();
        for &w in join {
            let pos = cliques[id].binary_search(&w).unwrap_err();
            cliques[id].insert(pos, w);
            counts[local(w)] += 1;
        }
        enumerate_partitions(g, edges, next + 1, cliques, counts, local, emit);
        for &w in join {
            counts[local(w)] -= 1;
        }
        cliques[id] = saved;
    }
}

/// One admissible way to attach the next vertex to the partial witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Attach {
    /// Join one existing clique covering the whole prior neighborhood; a
    /// fresh singleton becomes the second clique.
    Single(usize),
    /// Join two disjoint existing cliques partitioning the prior
    /// neighborhood.
    Pair(usize, usize),
}

struct SearchState {
    /// Global clique storage; members kept sorted.
    cliques: Vec<Vec<usize>>,
    /// vertex -> clique ids (exactly two once the vertex is placed)
    member_of: Vec<[usize; 2]>,
    /// Stamp array marking the current prior neighborhood.
    stamp: Vec<u32>,
    round: u32,
}

/// Incremental witness construction for a component with at least 5
/// vertices, exploring all attachments with backtracking.
fn incremental_component_witness(g: &Graph, comp: &[usize]) -> Option<Vec<Vec<usize>>> {
    let order = bfs_order(g, comp);
    let mut st = SearchState {
        cliques: Vec::new(),
        member_of: vec![[usize::MAX; 2]; g.n()],
        stamp: vec![0; g.n()],
        round: 0,
    };

    // First vertex: two copies of its singleton.
    let v0 = order[0];
    st.cliques.push(vec![v0]);
    st.cliques.push(vec![v0]);
    st.member_of[v0] = [0, 1];

    // Each frame owns the attachment choices for one vertex; undo information
    // is implicit because every attachment touches a bounded set of cells.
    struct Frame {
        options: Vec<Attach>,
        next: usize,
        applied: Option<Attach>,
    }
    let mut frames: Vec<Frame> = Vec::with_capacity(order.len());
    let mut pos = 1;

    loop {
        if pos == order.len() {
            return Some(st.cliques);
        }
        if frames.len() < pos {
            let options = attachment_options(g, &mut st, order[pos]);
            frames.push(Frame {
                options,
                next: 0,
                applied: None,
            });
        }
        let frame = frames.last_mut().expect("frame pushed above");
        if let Some(att) = frame.applied.take() {
            undo_attachment(&mut st, order[pos], att);
        }
        if frame.next < frame.options.len() {
            let att = frame.options[frame.next];
            frame.next += 1;
            frame.applied = Some(att);
            apply_attachment(&mut st, order[pos], att);
            pos += 1;
        } else {
            frames.pop();
            if pos == 1 {
                return None;
            }
            pos -= 1;
        }
    }
}

fn bfs_order(g: &Graph, comp: &[usize]) -> Vec<usize> {
    let mut order = vec![comp[0]];
    let mut seen = std::collections::HashSet::new();
    seen.insert(comp[0]);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in g.neighbors(u) {
            if seen.insert(v) {
                order.push(v);
            }
        }
    }
    debug_assert_eq!(order.len(), comp.len());
    order
}

/// Enumerates the admissible attachments of `v`: its already-placed
/// neighborhood must be exactly one existing clique, or the disjoint union
/// of two existing cliques. Options are returned in deterministic order.
fn attachment_options(g: &Graph, st: &mut SearchState, v: usize) -> Vec<Attach> {
    st.round += 1;
    let round = st.round;
    let mut nprev: Vec<usize> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&u| st.member_of[u][0] != usize::MAX)
        .collect();
    nprev.sort_unstable();
    for &u in &nprev {
        st.stamp[u] = round;
    }
    debug_assert!(!nprev.is_empty(), "BFS order keeps the prefix connected");

    // Candidate cliques: cliques of prior neighbors fully inside nprev.
    let mut candidates: Vec<usize> = Vec::new();
    for &u in &nprev {
        for &id in &st.member_of[u] {
            if st.cliques[id].len() <= nprev.len()
                && st.cliques[id].iter().all(|&x| st.stamp[x] == round)
            {
                candidates.push(id);
            }
        }
    }
    candidates.sort_unstable();
    candidates.dedup();

    let mut options = Vec::new();
    for &id in &candidates {
        if st.cliques[id].len() == nprev.len() {
            options.push(Attach::Single(id));
        }
    }
    // Pairs: the first clique must contain the minimum prior neighbor, the
    // second must be exactly the remainder.
    let x0 = nprev[0];
    for &c1 in &candidates {
        if st.cliques[c1].binary_search(&x0).is_err() || st.cliques[c1].len() == nprev.len() {
            continue;
        }
        let rest: Vec<usize> = nprev
            .iter()
            .copied()
            .filter(|x| st.cliques[c1].binary_search(x).is_err())
            .collect();
        for &c2 in &candidates {
            if c2 != c1 && st.cliques[c2].as_slice() == rest.as_slice() {
                options.push(Attach::Pair(c1.min(c2), c1.max(c2)));
            }
        }
    }
    options.sort_unstable();
    options.dedup();
    options
}

fn apply_attachment(st: &mut SearchState, v: usize, att: Attach) {
    match att {
        Attach::Single(c) => {
            insert_sorted(&mut st.cliques[c], v);
            st.cliques.push(vec![v]);
            st.member_of[v] = [c, st.cliques.len() - 1];
        }
        Attach::Pair(c1, c2) => {
            insert_sorted(&mut st.cliques[c1], v);
            insert_sorted(&mut st.cliques[c2], v);
            st.member_of[v] = [c1, c2];
        }
    }
}

fn undo_attachment(st: &mut SearchState, v: usize, att: Attach) {
    match att {
        Attach::Single(c) => {
            remove_sorted(&mut st.cliques[c], v);
            st.cliques.pop();
        }
        Attach::Pair(c1, c2) => {
            remove_sorted(&mut st.cliques[c1], v);
            remove_sorted(&mut st.cliques[c2], v);
        }
    }
    st.member_of[v] = [usize::MAX; 2];
}

fn insert_sorted(list: &mut Vec<usize>, v: usize) {
    let pos = list.binary_search(&v).unwrap_err();
    list.insert(pos, v);
}

fn remove_sorted(list: &mut Vec<usize>, v: usize) {
    let pos = list.binary_search(&v).expect("element present");
    list.remove(pos);
}

/// A root graph `H` with `L(H) = G`, together with the correspondence
/// sending each vertex of `G` to the pair of clique ids forming its `H`
/// edge. The correspondence is verified during construction, so no
/// isomorphism search is ever needed.
#[derive(Debug, Clone)]
pub struct RootGraph {
    pub h: Graph,
    /// G-vertex -> (clique id, clique id) = endpoints of its H-edge.
    pub correspondence: Vec<(usize, usize)>,
}

/// Reconstructs the root graph from a witness. The witness must validate
/// against `g`.
pub fn root_graph(g: &Graph, w: &CliquePartitionWitness) -> Result<RootGraph> {
    validate_witness(g, w).map_err(Error::InvalidWitness)?;
    let q = w.cliques().len();
    let mut correspondence = Vec::with_capacity(g.n());
    let mut h_edges = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let ids = w.cliques_of(v);
        debug_assert_eq!(ids.len(), 2);
        correspondence.push((ids[0], ids[1]));
        h_edges.push((ids[0], ids[1]));
    }
    let h = Graph::from_edge_list(q, &h_edges)
        .map_err(|e| Error::InternalInvariant(format!("root graph construction produced {e}")))?;
    if h.m() != g.n() {
        return Err(Error::InternalInvariant(
            "two vertices mapped to the same root edge".into(),
        ));
    }

    // Verify L(H) reproduces G exactly under the correspondence.
    let (l, edge_map) = h.line_graph_of();
    let mut edge_to_lvertex = std::collections::HashMap::new();
    for (lv, e) in edge_map.iter().enumerate() {
        edge_to_lvertex.insert(e.endpoints(), lv);
    }
    let lvert: Vec<usize> = correspondence
        .iter()
        .map(|&(a, b)| edge_to_lvertex[&(a.min(b), a.max(b))])
        .collect();
    if l.m() != g.m() || !g.edges().all(|e| l.has_edge(lvert[e.u()], lvert[e.v()])) {
        return Err(Error::InternalInvariant(
            "line graph of the root does not reproduce the input".into(),
        ));
    }
    Ok(RootGraph { h, correspondence })
}

/// Independent recognizer: no induced claw, and every two odd triangles
/// sharing an edge span a K4. A triangle is odd when some outside vertex is
/// adjacent to an odd number of its corners.
pub fn recognize_via_odd_triangles(g: &Graph) -> bool {
    // Induced K_{1,3}: a vertex with three pairwise non-adjacent neighbors.
    for v in g.vertices() {
        let nbrs = g.neighbors(v);
        for (i, &a) in nbrs.iter().enumerate() {
            for (j, &b) in nbrs.iter().enumerate().skip(i + 1) {
                if g.has_edge(a, b) {
                    continue;
                }
                for &c in &nbrs[j + 1..] {
                    if !g.has_edge(a, c) && !g.has_edge(b, c) {
                        return false;
                    }
                }
            }
        }
    }

    // Collect triangles and their oddness.
    let mut triangles: Vec<(usize, usize, usize)> = Vec::new();
    for u in g.vertices() {
        for &v in g.neighbors(u).iter().filter(|&&v| v > u) {
            for &w in g.neighbors(v).iter().filter(|&&w| w > v) {
                if g.has_edge(u, w) {
                    triangles.push((u, v, w));
                }
            }
        }
    }
    let odd: Vec<bool> = triangles
        .iter()
        .map(|&(a, b, c)| {
            g.vertices().any(|x| {
                x != a
                    && x != b
                    && x != c
                    && (g.has_edge(x, a) as usize
                        + g.has_edge(x, b) as usize
                        + g.has_edge(x, c) as usize)
                        % 2
                        == 1
            })
        })
        .collect();

    // Group triangles by edge; odd pairs sharing an edge need the fourth
    // edge closing a K4.
    let mut by_edge: std::collections::HashMap<(usize, usize), Vec<usize>> =
        std::collections::HashMap::new();
    for (t, &(a, b, c)) in triangles.iter().enumerate() {
        for (x, y) in [(a, b), (a, c), (b, c)] {
            by_edge.entry((x, y)).or_default().push(t);
        }
    }
    for ((x, y), ts) in by_edge {
        for (i, &t1) in ts.iter().enumerate() {
            if !odd[t1] {
                continue;
            }
            for &t2 in &ts[i + 1..] {
                if !odd[t2] {
                    continue;
                }
                let third = |t: usize| {
                    let (a, b, c) = triangles[t];
                    [a, b, c].into_iter().find(|&z| z != x && z != y).unwrap()
                };
                if !g.has_edge(third(t1), third(t2)) {
                    return false;
                }
            }
        }
    }
    true
}
