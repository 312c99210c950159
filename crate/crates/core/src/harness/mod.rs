//! Instance generators, ratings ingestion and delta sweeps for experiments.

pub mod ratings;
pub mod sweep;
pub mod synthetic;

pub use ratings::{ingest_ratings, instance_from_ratings, stand_in_ratings, RatingsSpec, STAND_IN_GAMMA};
pub use sweep::{delta_sweep, Stat, SweepConfig, SweepPoint, SweepResult, SweepRow};
pub use synthetic::{
    gen_attractive, gen_synthetic, gen_two_group, AttractiveSpec, QualityRule, SyntheticSpec, TwoGroupSpec,
};
