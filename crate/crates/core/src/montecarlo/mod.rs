//! Path simulation, occupation measurement and rejection sampling.

pub mod conditioned;
pub mod estimate;
pub mod path;
pub mod rng;
pub mod sigma;
pub mod taboo;

pub use conditioned::{
    sample_conditioned, AcceptedPath, ConditionRequest, ConditionedError, ConditionedSample, Record,
};
pub use estimate::{
    estimate_event, estimate_event_with, estimate_events, simulate_occupation, Event, McEstimate, McOptions, PathSpec,
    StartLaw,
};
pub use path::{occupation_outside, simulate_bm, steps_for, Kernel, OccupationMode, OccupationSample, PathGrid};
pub use rng::{chunk_rng, path_rng, run_chunks, with_threads, Chunking, DEFAULT_CHUNK};
pub use sigma::{sample_sigma, sigma_cap};
pub use taboo::{simulate_taboo, TabooMode};
