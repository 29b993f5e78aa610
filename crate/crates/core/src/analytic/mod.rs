//! Real-valued closed forms: eigen-series, qsd, taboo kernels, asymptotics, saddle.

pub mod asymptotics;
pub mod qsd;
pub mod saddle;
pub mod series;
pub mod taboo;

pub use asymptotics::{asymp_prob_leq_s, asymp_snu, log_asymp_prob_leq_s, log_asymp_snu, AsymptoticInput, LogScale};
pub use qsd::{qsd_cdf, qsd_density, qsd_quantile, qsd_sample};
pub use saddle::{
    cardano_root, saddle_exponent, saddle_h, saddle_t0, saddle_v, saddle_vp, saddle_vpp, SaddleExponent,
    SaddleFunctions,
};
pub use series::{exit_prob_zero, exit_time_density, EigenPair, SeriesTolerance};
pub use taboo::{
    absorbed_density, taboo_drift, taboo_stationary_cdf, taboo_stationary_density, taboo_transition_cdf,
    taboo_transition_density, taboo_transition_quantile,
};
