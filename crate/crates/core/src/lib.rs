//! Line-graph toolkit: recognition via clique partition witnesses, exact
//! edge-deletion solvers, a polynomial kernel for the edge-deletion problem,
//! and seeded instance generators.

pub mod error;
pub mod gen;
pub mod graph;
pub mod kernel;
pub mod patterns;
pub mod recognize;
pub mod solve;

pub use error::{Error, Result};
pub use gen::{chain_instance, planted_instance, random_root, GenSpec, SplitMix64};
pub use graph::{parse_edge_list, to_edge_list_text, Edge, EdgeSet, Graph, VertexSet};
pub use kernel::{
    anchor_cliques, build_levels, kernel_vertex_bound, kernel_vertex_bound_for, kernelize,
    kernelize_with_trace, witness_of_complement, Anchor, KernelOutcome, KernelStats, KernelVerdict,
    LevelStructure, RemovedCounts, RuleTrace, StageTimings,
};
pub use patterns::{
    beineke_patterns, build_modulator, contains_pattern_subset, find_forbidden_subgraph,
    is_isomorphic_small, Modulator, ModulatorOutcome, PatternSet,
};
pub use recognize::{
    is_line_graph, recognize, recognize_via_odd_triangles, root_graph, validate_witness,
    CliquePartitionWitness, RootGraph, WitnessViolation,
};
pub use solve::{min_deletion, solve_branching, solve_bruteforce, MinDeletion, Solution};
