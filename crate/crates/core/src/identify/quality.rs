use std::fmt;

use crate::kinematics::{Mode, OscillationSpec};

use super::fit::HarmonicFit;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityThresholds {
    /// Residual RMS allowed as a fraction of the fitted amplitude.
    pub residual_ratio: f64,
    pub condition: f64,
    /// q-mode in-phase part allowed as a fraction of the fitted amplitude.
    pub contamination_ratio: f64,
}

impl Default for QualityThresholds {
    fn default() -> Self {
        Self {
            residual_ratio: 1e-3,
            condition: 10.0,
            contamination_ratio: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QualityFlag {
    ResidualHigh { residual_rms: f64, threshold: f64 },
    IllConditioned { indicator: f64, threshold: f64 },
    Contamination { ratio: f64, threshold: f64 },
}

impl fmt::Display for QualityFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QualityFlag::ResidualHigh { residual_rms, threshold } => {
                write!(f, "residual {residual_rms:.3e} > {threshold:.3e}")
            }
            QualityFlag::IllConditioned { indicator, threshold } => {
                write!(f, "conditioning {indicator:.3e} > {threshold:.3e}")
            }
            QualityFlag::Contamination { ratio, threshold } => {
                write!(f, "q-mode in-phase ratio {ratio:.3e} > {threshold:.3e}")
            }
        }
    }
}

pub fn validate_fit(fit: &HarmonicFit, spec: &OscillationSpec) -> Vec<QualityFlag> {
    validate_fit_with(fit, spec, &QualityThresholds::default())
}

pub fn validate_fit_with(
    fit: &HarmonicFit,
    spec: &OscillationSpec,
    limits: &QualityThresholds,
) -> Vec<QualityFlag> {
    let mut flags = Vec::new();
    let residual_limit = limits.residual_ratio * fit.amplitude;
    if fit.residual_rms > residual_limit {
        flags.push(QualityFlag::ResidualHigh {
            residual_rms: fit.residual_rms,
            threshold: residual_limit,
        });
    }
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(fit.condition_indicator <= limits.condition) {
        flags.push(QualityFlag::IllConditioned {
            indicator: fit.condition_indicator,
            threshold: limits.condition,
        });
    }
    if spec.mode == Mode::Q && fit.amplitude > 0.0 {
        let ratio = fit.in_phase.abs() / fit.amplitude;
        if ratio > limits.contamination_ratio {
            flags.push(QualityFlag::Contamination {
                ratio,
                threshold: limits.contamination_ratio,
            });
        }
    }
    flags
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identify::fit::fit_harmonic;
    use std::f64::consts::TAU;

    fn spec(mode: Mode) -> OscillationSpec {
        OscillationSpec::from_degrees(mode, 3.16, 4.59, 0.0811, 2, 720).unwrap()
    }

    #[test]
    fn exact_fit_is_clean() {
        let fit = HarmonicFit::from_components(0.1, 0.4, 0.05);
        assert!(validate_fit(&fit, &spec(Mode::Alpha)).is_empty());
    }

    #[test]
    fn wrong_frequency_leaves_residual() {
        let omega = 5.0;
        let t: Vec<f64> = (0..1440).map(|i| i as f64 * TAU / omega / 720.0).collect();
        let y: Vec<f64> = t.iter().map(|t| 0.3 + 0.4 * (omega * t).sin()).collect();
        let fit = fit_harmonic(&t, &y, 1.1 * omega, 0).unwrap();
        assert!(fit.residual_rms >= 0.1 * 0.4, "{}", fit.residual_rms);
        let flags = validate_fit(&fit, &spec(Mode::Alpha));
        assert!(flags.iter().any(|f| matches!(f, QualityFlag::ResidualHigh { .. })));
    }

    #[test]
    fn contamination_only_in_q_mode() {
        let fit = HarmonicFit::from_components(0.0, 0.1, 0.5);
        assert!(validate_fit(&fit, &spec(Mode::Alpha)).is_empty());
        let flags = validate_fit(&fit, &spec(Mode::Q));
        assert!(matches!(flags[..], [QualityFlag::Contamination { .. }]));
    }

    #[test]
    fn conditioning_flag() {
        let mut fit = HarmonicFit::from_components(0.0, 0.1, 0.5);
        fit.condition_indicator = 1e3;
        let flags = validate_fit(&fit, &spec(Mode::Alpha));
        assert!(matches!(flags[..], [QualityFlag::IllConditioned { .. }]));
    }
}
