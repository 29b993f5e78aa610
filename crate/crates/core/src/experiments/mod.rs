//! Named verification suites tying simulation to closed forms.

pub mod cor_outside;
pub mod prop_asymp;
pub mod qsd_stationarity;
pub mod ratio_qsd;
pub mod report;
pub mod thm_main;
pub mod trend;

pub use cor_outside::{exp_cor_outside, CorOutsideConfig};
pub use prop_asymp::{exp_prop_asymp, PropAsympConfig};
pub use qsd_stationarity::{exp_qsd_stationarity, QsdStationarityConfig};
pub use ratio_qsd::{exp_ratio_qsd, ratio_limit, RatioQsdConfig};
pub use report::{format_float, Cell, ExperimentReport, Verdict};
pub use thm_main::{exp_thm_main, ThmMainConfig};

/// Names accepted by [`crate::experiments`] front ends.
pub const NAMES: [&str; 5] = ["ratio-qsd", "qsd-stationarity", "thm-main", "prop-asymp", "cor-outside"];
