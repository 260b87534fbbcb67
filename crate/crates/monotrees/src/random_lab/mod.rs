//! Seeded random-graph experiments.
//!
//! Samples `G(n,p)`, colors it, and probes where the partitioners' degree and
//! connectivity hypotheses start to hold: statistical checks of the common-
//! neighborhood, local-connectivity, and leaf-degradation properties, a
//! witness-set search powering adversarial lower-bound colorings, and a
//! threshold-sweep harness emitting CSV reports.
//!
//! Everything is reproducible: graphs and colorings are functions of their
//! seeds, and sweeps draw from counter-based RNG streams keyed by
//! `(base seed, cell index, trial index)` so parallel execution order cannot
//! change any result.

mod checks;
mod experiment;
mod sample;
mod witness;

pub use checks::{
    check_common_neighborhoods, check_leaf_degradation, check_local_connectivity,
    ConnectivityStats, LeafDegradationReport, NeighborhoodStats,
};
pub use experiment::{
    rebuild_instance, threshold_sweep, ExperimentReport, FormulaTag, PRule, SolverId, SweepConfig,
    SweepRow,
};
pub use sample::{coloring_with_rng, gnp_with_rng, random_coloring, sample_gnp};
pub use witness::{
    adversarial_tc_lower_bound, find_witness_set, tm_experiment, verify_witness_clauses,
    AdversarialBound, TmRow, TmStats, WitnessSearch,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent RNG stream for one `(cell, trial)` task of a sweep keyed by
/// the base seed. Streams never collide for `trial < 2^32`.
pub fn stream_rng(base: u64, cell: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    rng.set_stream((cell << 32) | (trial & 0xFFFF_FFFF));
    rng
}
