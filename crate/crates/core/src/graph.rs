//! Simple undirected graphs with dense 0-based vertex ids.
//!
//! Graphs are immutable after construction. Every operation that derives a
//! new graph returns a fresh value; adjacency lists are kept sorted so that
//! iteration order (and everything downstream of it) is deterministic.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An undirected edge with canonical endpoint order `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Canonicalizes the endpoint order. Panics on a self-loop; inputs that
    /// may contain self-loops must be validated before constructing edges.
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "self-loop at vertex {a}");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

/// A sorted, duplicate-free set of vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSet(vertices)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// A sorted, duplicate-free set of canonical edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeSet(Vec<Edge>);

impl EdgeSet {
    pub fn new(mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        EdgeSet(edges)
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Edge] {
        &self.0
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet::new(iter.into_iter().collect())
    }
}

/// A simple undirected graph: no self-loops, no parallel edges.
///
/// Adjacency lists are sorted and symmetric; `m` equals half the degree sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs and reversed
    /// orientations collapse to a single edge; self-loops and out-of-range
    /// endpoints are rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut canonical = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n {
                return Err(Error::VertexOutOfRange { vertex: a, n });
            }
            if b >= n {
                return Err(Error::VertexOutOfRange { vertex: b, n });
            }
            if a == b {
                return Err(Error::SelfLoop { vertex: a });
            }
            canonical.push((a.min(b), a.max(b)));
        }
        canonical.sort_unstable();
        canonical.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canonical {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            adj,
            m: canonical.len(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u).collect())
            .collect();
        Graph {
            adj,
            m: n * n.saturating_sub(1) / 2,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// Edges in canonical order: ascending by smaller endpoint, then larger.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .filter(move |&&v| v > u)
                .map(move |&v| Edge::new(u, v))
        })
    }

    /// The subgraph induced by `w`, relabeled to dense ids `0..w.len()`.
    /// The returned map sends each new id to its original vertex.
    pub fn induced_subgraph(&self, w: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        for v in w.iter() {
            if v >= self.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n(),
                });
            }
        }
        let map: Vec<usize> = w.iter().collect();
        let mut inverse = vec![usize::MAX; self.n()];
        for (new, &old) in map.iter().enumerate() {
            inverse[old] = new;
        }
        let mut adj = vec![Vec::new(); map.len()];
        let mut m = 0;
        for (new, &old) in map.iter().enumerate() {
            for &nb in &self.adj[old] {
                let mapped = inverse[nb];
                if mapped != usize::MAX {
                    adj[new].push(mapped);
                    if mapped > new {
                        m += 1;
                    }
                }
            }
        }
        // Neighbor lists stay sorted because the relabeling is monotone.
        Ok((Graph { adj, m }, map))
    }

    /// Same vertex set, edge set `E(G) \ F`. Every edge of `F` must exist.
    pub fn delete_edges(&self, f: &EdgeSet) -> Result<Graph> {
        for e in f.iter() {
            if !self.has_edge(e.u(), e.v()) {
                return Err(Error::MissingEdge { u: e.u(), v: e.v() });
            }
        }
        let mut adj = self.adj.clone();
        for e in f.iter() {
            let (u, v) = e.endpoints();
            let iu = adj[u].binary_search(&v).expect("checked above");
            adj[u].remove(iu);
            let iv = adj[v].binary_search(&u).expect("checked above");
            adj[v].remove(iv);
        }
        Ok(Graph {
            adj,
            m: self.m - f.len(),
        })
    }

    /// Removes every edge incident to a vertex of `vs`, keeping the vertex
    /// set intact. The affected vertices become isolated.
    pub fn isolate_vertices(&self, vs: &VertexSet) -> Graph {
        let adj: Vec<Vec<usize>> = self
            .adj
            .iter()
            .enumerate()
            .map(|(u, nbrs)| {
                if vs.contains(u) {
                    Vec::new()
                } else {
                    nbrs.iter().copied().filter(|&v| !vs.contains(v)).collect()
                }
            })
            .collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    /// Adds edges; endpoints must be in range, self-loops rejected, and
    /// already-present edges collapse silently.
    pub fn add_edges(&self, extra: &[(usize, usize)]) -> Result<Graph> {
        let mut pairs: Vec<(usize, usize)> = self.edges().map(|e| e.endpoints()).collect();
        pairs.extend_from_slice(extra);
        Graph::from_edge_list(self.n(), &pairs)
    }

    /// True iff every pair of vertices in `w` is adjacent.
    pub fn is_clique(&self, w: &VertexSet) -> bool {
        let vs = w.as_slice();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// The line graph: one vertex per edge, adjacency iff the two edges share
    /// an endpoint. The returned map sends each line-graph vertex to the edge
    /// it represents (in canonical edge order).
    pub fn line_graph_of(&self) -> (Graph, Vec<Edge>) {
        let edge_list: Vec<Edge> = self.edges().collect();
        let mut edge_id = vec![Vec::new(); self.n()];
        for (id, e) in edge_list.iter().enumerate() {
            edge_id[e.u()].push(id);
            edge_id[e.v()].push(id);
        }
        let mut adj = vec![Vec::new(); edge_list.len()];
        let mut m = 0;
        for ids in &edge_id {
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    adj[a].push(b);
                    adj[b].push(a);
                    m += 1;
                }
            }
        }
        // Two edges share at most one endpoint in a simple graph, so no pair
        // is recorded twice.
        for list in &mut adj {
            list.sort_unstable();
        }
        (Graph { adj, m }, edge_list)
    }

    /// Connected components as sorted vertex lists, ordered by minimum id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Parses the shared edge-list text format: a `n m` header line followed by
/// `m` lines `u v` (0-indexed). Lines starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let a = parse_field(fields.next(), idx + 1)?;
        let b = parse_field(fields.next(), idx + 1)?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: idx + 1,
                msg: "expected exactly two fields".into(),
            });
        }
        match header {
            None => header = Some((a, b)),
            Some(_) => edges.push((a, b)),
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing `n m` header line".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header declares {m} edges but {} were given", edges.len()),
        });
    }
    Graph::from_edge_list(n, &edges)
}

fn parse_field(field: Option<&str>, line: usize) -> Result<usize> {
    field
        .ok_or(Error::Parse {
            line,
            msg: "expected two whitespace-separated integers".into(),
        })?
        .parse()
        .map_err(|e| Error::Parse {
            line,
            msg: format!("not an integer: {e}"),
        })
}

/// Serializes a graph in the edge-list text format, canonical edge order.
pub fn to_edge_list_text(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u(), e.v());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edge_list(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn from_edge_list_builds_p3() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(1, 0) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn duplicate_orientations_collapse() {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn self_loop_rejected() {
        assert_eq!(
            Graph::from_edge_list(2, &[(0, 0)]),
            Err(Error::SelfLoop { vertex: 0 })
        );
    }

    #[test]
    fn endpoint_out_of_range_rejected() {
        assert!(matches!(
            Graph::from_edge_list(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn induced_subgraph_of_k4_is_k3() {
        let k4 = Graph::complete(4);
        let (sub, map) = k4.induced_subgraph(&VertexSet::new(vec![0, 1, 2])).unwrap();
        assert_eq!(sub, Graph::complete(3));
        assert_eq!(map, vec![0, 1, 2]);
    }

    #[test]
    fn induced_subgraph_empty_set() {
        let g = cycle(5);
        let (sub, map) = g.induced_subgraph(&VertexSet::default()).unwrap();
        assert_eq!(sub.n(), 0);
        assert!(map.is_empty());
    }

    #[test]
    fn induced_subgraph_of_c5_consecutive_is_p3() {
        let c5 = cycle(5);
        let (sub, _) = c5.induced_subgraph(&VertexSet::new(vec![1, 2, 3])).unwrap();
        assert_eq!(sub, path(3));
    }

    #[test]
    fn induced_subgraph_rejects_unknown_vertex() {
        let g = path(3);
        assert!(g.induced_subgraph(&VertexSet::new(vec![0, 7])).is_err());
    }

    #[test]
    fn delete_edges_turns_k3_into_p3() {
        let k3 = Graph::complete(3);
        let g = k3
            .delete_edges(&EdgeSet::new(vec![Edge::new(0, 1)]))
            .unwrap();
        assert_eq!(g.m(), 2);
        assert!(!g.has_edge(0, 1) && g.has_edge(0, 2) && g.has_edge(1, 2));
    }

    #[test]
    fn delete_no_edges_is_identity() {
        let g = cycle(4);
        assert_eq!(g.delete_edges(&EdgeSet::default()).unwrap(), g);
    }

    #[test]
    fn delete_star_edge_leaves_isolated_leaf() {
        let claw = star(3);
        let g = claw
            .delete_edges(&EdgeSet::new(vec![Edge::new(0, 1)]))
            .unwrap();
        assert_eq!(g.degree(1), 0);
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn delete_missing_edge_rejected() {
        let g = path(3);
        assert_eq!(
            g.delete_edges(&EdgeSet::new(vec![Edge::new(0, 2)])),
            Err(Error::MissingEdge { u: 0, v: 2 })
        );
    }

    #[test]
    fn clique_checks() {
        let k4 = Graph::complete(4);
        assert!(k4.is_clique(&VertexSet::new(vec![0, 1, 2, 3])));
        let c4 = cycle(4);
        assert!(!c4.is_clique(&VertexSet::new(vec![0, 1, 2])));
        assert!(c4.is_clique(&VertexSet::new(vec![2])));
        assert!(c4.is_clique(&VertexSet::default()));
    }

    #[test]
    fn line_graph_of_triangle_and_claw_is_k3() {
        let (lk3, _) = Graph::complete(3).line_graph_of();
        assert_eq!(lk3, Graph::complete(3));
        let (lclaw, _) = star(3).line_graph_of();
        assert_eq!(lclaw, Graph::complete(3));
    }

    #[test]
    fn line_graph_of_p4_is_p3() {
        let (l, map) = path(4).line_graph_of();
        assert_eq!(l, path(3));
        assert_eq!(map.len(), 3);
    }

    #[test]
    fn line_graph_of_k14_is_k4() {
        let (l, _) = star(4).line_graph_of();
        assert_eq!(l, Graph::complete(4));
    }

    #[test]
    fn components_split_and_sort() {
        let g = Graph::from_edge_list(6, &[(4, 2), (2, 0), (1, 5)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 2, 4], vec![1, 5], vec![3]]);
    }

    #[test]
    fn isolate_vertices_strips_incident_edges() {
        let k4 = Graph::complete(4);
        let g = k4.isolate_vertices(&VertexSet::new(vec![0]));
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 3);
        assert_eq!(g.degree(0), 0);
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(parse_edge_list("abc def\n").is_err());
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("2 1\n").is_err());
        assert!(parse_edge_list("2 1\n0 1 9\n").is_err());
    }

    #[test]
    fn parse_ignores_comments_and_blanks() {
        let g = parse_edge_list("# a triangle\n3 3\n\n0 1\n1 2\n# done\n0 2\n").unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    prop_compose! {
        fn arb_graph(max_n: usize)
            (n in 0..=max_n)
            (n in Just(n), bits in prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2))
            -> Graph
        {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if bits[idx] {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            Graph::from_edge_list(n, &edges).unwrap()
        }
    }

    proptest! {
        #[test]
        fn edge_list_text_roundtrip(g in arb_graph(12)) {
            let text = to_edge_list_text(&g);
            prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
        }

        #[test]
        fn induced_on_full_vertex_set_is_identity(g in arb_graph(10)) {
            let all: VertexSet = g.vertices().collect();
            let (sub, map) = g.induced_subgraph(&all).unwrap();
            prop_assert_eq!(&sub, &g);
            prop_assert_eq!(map, g.vertices().collect::<Vec<_>>());
        }

        #[test]
        fn line_graph_edge_count_is_sum_of_degree_choose_two(g in arb_graph(14)) {
            let (l, map) = g.line_graph_of();
            let expected: usize = g.vertices().map(|v| {
                let d = g.degree(v);
                d * d.saturating_sub(1) / 2
            }).sum();
            prop_assert_eq!(l.m(), expected);
            prop_assert_eq!(l.n(), g.m());
            prop_assert_eq!(map.len(), g.m());
        }

        #[test]
        fn degree_sum_is_twice_edge_count(g in arb_graph(16)) {
            let sum: usize = g.vertices().map(|v| g.degree(v)).sum();
            prop_assert_eq!(sum, 2 * g.m());
        }
    }
}
