//! Monochromatic tree partitions and covers of edge-colored graphs.
//!
//! Given a graph whose edges each carry one of `r` colors, this crate asks
//! how few monochromatic trees are needed to cover or partition the vertex
//! set, and how large a single monochromatic component must be. It provides:
//!
//! - exact, small-instance oracles for the cover number, partition number,
//!   and their worst-case-over-colorings variants (`oracles`);
//! - extremal colorings that pin those numbers from below (`constructions`);
//! - constructive partition and cover algorithms with checkable certificates
//!   (`partitioners`, `certificate`);
//! - seeded random-graph experiments probing where those algorithms' degree
//!   and connectivity hypotheses start to hold (`random_lab`).
//!
//! All algorithms are deterministic given their inputs and seeds: ties break
//! toward the lowest color, then the lowest vertex index.

pub mod bitset;
pub mod certificate;
pub mod colored;
pub mod constructions;
mod dsu;
pub mod ecg;
pub mod graph;
pub mod oracles;
pub mod partitioners;
pub mod random_lab;

pub use bitset::VertexSet;
pub use certificate::{
    verify_cover, verify_partition, CertificateFile, CoverCertificate, CoverPart,
    PartitionCertificate, TreeBlock, Violation,
};
pub use colored::{
    build_colored_graph, component_ids, largest_mono_component, mono_components, ColoredGraph,
    ColoringError, MonoComponent,
};
pub use constructions::{
    affine_plane_coloring, anchored_coloring, cover_lower_bound_graph,
    distinct_cover_impossible_graph, verify_promise, witness_set_coloring, BoundKind,
    ConstructionError, ConstructionMeta, PromiseError,
};
pub use ecg::{format_ecg, parse_ecg, read_ecg, write_ecg, EcgError};
pub use graph::{greedy_independent_set, independence_number, Graph, GraphError};
pub use oracles::{
    distinct_color_cover_exists, tc_exact, tc_graph_exact, tm_graph_exact, tp_exact,
    ColoringExtremal, CoverSolution, OracleError, OracleLimits, PartitionSolution,
};
pub use partitioners::{
    aux_cover, complete_partition, double_star, gnp_two_color_partition, hk_partition,
    large_mono_structure, leaf_partition, leafy_spanning_tree, mindeg_absorbing_partition,
    two_color_cover, verify_atp, AbsorbingTreePartition, DoubleStar, HkExit, HkOutcome,
    LargeMonoStructure, LeafMode, LeafPartition, LeafyTree, PartitionerError, StepOneState,
    ZAttachment,
};
pub use random_lab::{
    adversarial_tc_lower_bound, rebuild_instance, check_common_neighborhoods, check_leaf_degradation,
    check_local_connectivity, find_witness_set, random_coloring, sample_gnp, threshold_sweep,
    tm_experiment, verify_witness_clauses, AdversarialBound, ConnectivityStats, ExperimentReport,
    FormulaTag, LeafDegradationReport, NeighborhoodStats, PRule, SolverId, SweepConfig, SweepRow,
    TmRow, TmStats, WitnessSearch,
};
