//! Hysteresis-loop metrics of a coefficient plotted against incidence.

use serde::Serialize;

use super::fit::{fit_harmonic_phased, window};
use super::IdentifyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopMetrics {
    /// `∮ y dx` over the last full cycle (trapezoidal). Equals `π·α_B·b` for
    /// `x = α_B sin ωt` and a first-harmonic `y` with cosine part `b`.
    pub signed_area: f64,
    /// Sign of `signed_area`: negative is `Clockwise`.
    pub orientation: Orientation,
    /// In-phase part of `y` per unit of `x`; `None` when `x` does not move.
    pub major_axis_slope: Option<f64>,
}

const DEGENERATE_RTOL: f64 = 1e-10;

pub fn loop_metrics(
    times: &[f64],
    x: &[f64],
    y: &[f64],
    omega: f64,
    skip_cycles: usize,
) -> Result<LoopMetrics, IdentifyError> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(IdentifyError::InvalidFrequency(omega));
    }
    let phases: Vec<f64> = times.iter().map(|t| omega * t).collect();
    loop_metrics_phased(&phases, x, y, skip_cycles)
}

pub fn loop_metrics_phased(
    phases: &[f64],
    x: &[f64],
    y: &[f64],
    skip_cycles: usize,
) -> Result<LoopMetrics, IdentifyError> {
    if x.len() != phases.len() || y.len() != phases.len() {
        return Err(IdentifyError::LengthMismatch {
            phases: phases.len(),
            values: x.len().min(y.len()),
        });
    }
    let w = window(phases, skip_cycles)?;
    let xs = &x[w.last_cycle_start..w.end];
    let ys = &y[w.last_cycle_start..w.end];
    if xs.len() < 3 {
        return Err(IdentifyError::InsufficientSamples {
            reason: format!("{} samples in the last cycle", xs.len()),
        });
    }

    let n = xs.len();
    let signed_area: f64 = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            0.5 * (ys[i] + ys[j]) * (xs[j] - xs[i])
        })
        .sum();

    let range = |v: &[f64]| {
        let (lo, hi) = v
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &a| (lo.min(a), hi.max(a)));
        hi - lo
    };
    let scale = range(xs) * range(ys);
    let orientation = if signed_area.abs() <= DEGENERATE_RTOL * scale || signed_area == 0.0 {
        Orientation::Degenerate
    } else if signed_area < 0.0 {
        Orientation::Clockwise
    } else {
        Orientation::Counterclockwise
    };

    let fx = fit_harmonic_phased(phases, x, skip_cycles)?;
    let fy = fit_harmonic_phased(phases, y, skip_cycles)?;
    let x_power = fx.in_phase * fx.in_phase + fx.out_phase * fx.out_phase;
    let major_axis_slope = (fx.amplitude > 1e-14 * (1.0 + fx.mean.abs()))
        .then(|| (fy.in_phase * fx.in_phase + fy.out_phase * fx.out_phase) / x_power);

    Ok(LoopMetrics {
        signed_area,
        orientation,
        major_axis_slope,
    })
}
