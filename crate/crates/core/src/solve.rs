//! Exact decision/optimization solvers for the edge-deletion problem, used
//! as ground truth when testing the reduction rules.
//!
//! Both solvers favor auditability over speed: the branching solver deletes
//! single edges of a forbidden induced subgraph (at most 15 branches per
//! level), and the brute-force solver enumerates edge subsets outright. Both
//! are deterministic, so a failing equivalence test reproduces exactly.

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph, VertexSet};
use crate::patterns::{find_forbidden_subgraph, for_each_combination};
use crate::recognize::{recognize, CliquePartitionWitness};

/// Limits for [`solve_bruteforce`]; beyond these the subset enumeration is
/// no longer reasonable to run.
pub const BRUTE_FORCE_MAX_EDGES: usize = 40;
pub const BRUTE_FORCE_MAX_BUDGET: usize = 5;

/// A set of deleted edges together with a witness certifying that the
/// remaining graph is a line graph.
#[derive(Debug, Clone)]
pub struct Solution {
    pub deleted: EdgeSet,
    pub certificate: CliquePartitionWitness,
}

/// Bounded-depth branching on forbidden subgraphs: any solution must delete
/// at least one edge inside any forbidden induced subgraph, so branching on
/// those edges is complete. Returns the first solution in deterministic
/// branch order.
pub fn solve_branching(g: &Graph, k: usize) -> Option<Solution> {
    if let Some(certificate) = recognize(g) {
        return Some(Solution {
            deleted: EdgeSet::default(),
            certificate,
        });
    }
    if k == 0 {
        return None;
    }
    let w = find_forbidden_subgraph(g).expect("non-line graph contains an obstruction");
    for e in edges_within(g, &w) {
        let next = g
            .delete_edges(&EdgeSet::new(vec![e]))
            .expect("edge taken from the graph");
        if let Some(sub) = solve_branching(&next, k - 1) {
            let mut deleted: Vec<Edge> = sub.deleted.iter().collect();
            deleted.push(e);
            return Some(Solution {
                deleted: EdgeSet::new(deleted),
                certificate: sub.certificate,
            });
        }
    }
    None
}

fn edges_within(g: &Graph, w: &VertexSet) -> Vec<Edge> {
    let vs = w.as_slice();
    let mut out = Vec::new();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if g.has_edge(u, v) {
                out.push(Edge::new(u, v));
            }
        }
    }
    out
}

/// Exhaustive oracle: enumerates all edge subsets of size `0..=k` in
/// deterministic order and returns the first whose deletion leaves a line
/// graph. Guarded to stay enumerable.
pub fn solve_bruteforce(g: &Graph, k: usize) -> Result<Option<Solution>> {
    if g.m() > BRUTE_FORCE_MAX_EDGES || k > BRUTE_FORCE_MAX_BUDGET {
        return Err(Error::InstanceTooLarge {
            edges: g.m(),
            budget: k,
        });
    }
    let edges: Vec<Edge> = g.edges().collect();
    for size in 0..=k.min(edges.len()) {
        let mut found = None;
        for_each_combination(edges.len(), size, &mut |ids| {
            let f = EdgeSet::new(ids.iter().map(|&i| edges[i]).collect());
            let candidate = g.delete_edges(&f).expect("subset of edges");
            if let Some(certificate) = recognize(&candidate) {
                found = Some(Solution {
                    deleted: f,
                    certificate,
                });
                return false;
            }
            true
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Smallest deletion size, capped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinDeletion {
    Exact(usize),
    MoreThan(usize),
}

/// The minimum number of edge deletions turning `g` into a line graph, or
/// `MoreThan(cap)` when it exceeds the cap.
pub fn min_deletion(g: &Graph, cap: usize) -> MinDeletion {
    for k in 0..=cap {
        if solve_branching(g, k).is_some() {
            return MinDeletion::Exact(k);
        }
    }
    MinDeletion::MoreThan(cap)
}
