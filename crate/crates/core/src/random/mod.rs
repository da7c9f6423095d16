//! Random supports and isolated-edge statistics.

mod models;
mod rng;
mod stats;

pub use models::{
    gen_er_support, gen_uniform_support, gen_unconstrained_support, ErModel, ErModelParams, ModelError,
    ModelRegistry, SupportModel, UniformAffineFullModel, UniformAffineModel, UniformHomogeneousModel, UniformModelParams,
    UniformUnconstrainedModel, UniformVariant,
};
pub use rng::{floor_pow, splitmix64, trial_rng, TrialRng};
pub use stats::{
    count_isolated_edges, isolated_edge_stats, matching_tail_probability, sample_isolated_edges, IsolatedEdgeStats,
    SampleMoments,
};
