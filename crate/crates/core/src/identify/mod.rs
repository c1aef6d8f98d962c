//! Harmonic regression of coefficient histories and conversion to static
//! and dynamic derivatives.

mod derivatives;
mod fit;
mod loops;
mod quality;

use thiserror::Error;

use crate::kinematics::Mode;

pub use derivatives::{
    extract, extract_alpha_mode, extract_q_mode, fit_channels, identify_series, separate_rates,
    ChannelDerivatives, ChannelFits, DerivativeSet, Provenance,
};
pub use fit::{
    components_to_polar, estimate_frequency, fit_harmonic, fit_harmonic_phased, polar_to_components, HarmonicFit,
};
pub use loops::{loop_metrics, loop_metrics_phased, LoopMetrics, Orientation};
pub use quality::{validate_fit, validate_fit_with, QualityFlag, QualityThresholds};

pub use crate::series::{Channel, CoefficientSeries, SeriesMetadata};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IdentifyError {
    #[error("insufficient samples: {reason}")]
    InsufficientSamples { reason: String },
    #[error("non-finite data at sample {index}")]
    NonFiniteData { index: usize },
    #[error("{phases} phase samples but {values} values")]
    LengthMismatch { phases: usize, values: usize },
    #[error("angular frequency must be finite and > 0, got {0}")]
    InvalidFrequency(f64),
    #[error("series carries no motion frequency; supply one")]
    MissingFrequency,
    #[error("series carries no oscillation spec")]
    MissingSpec,
    #[error("oscillation amplitude is zero")]
    ZeroAmplitude,
    #[error("reduced frequency is zero")]
    ZeroReducedFrequency,
    #[error("extraction for {expected:?} mode given a {found:?} spec")]
    ModeMismatch { expected: Mode, found: Mode },
    #[error("runs are not comparable: {0}")]
    ConditionMismatch(String),
    #[error("missing {0}")]
    MissingComponent(&'static str),
}
