use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};

use super::IdentifyError;

/// First-harmonic decomposition `y ≈ mean + a·sin(ωt) + b·cos(ωt)` of one
/// coefficient channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicFit {
    pub mean: f64,
    /// `a`, the sine (in-phase with displacement) component.
    pub in_phase: f64,
    /// `b`, the cosine (in-phase with rate) component.
    pub out_phase: f64,
    pub amplitude: f64,
    /// `atan2(b, a)`, so that `y = mean + amplitude·sin(ωt + phase)`.
    pub phase: f64,
    pub residual_rms: f64,
    /// Ratio of extreme singular values of the column-scaled design matrix;
    /// exactly 1 on a uniform periodic grid.
    pub condition_indicator: f64,
    pub samples: usize,
    pub cycles: usize,
}

impl HarmonicFit {
    pub fn from_components(mean: f64, in_phase: f64, out_phase: f64) -> Self {
        let (amplitude, phase) = components_to_polar(in_phase, out_phase);
        Self {
            mean,
            in_phase,
            out_phase,
            amplitude,
            phase,
            residual_rms: 0.0,
            condition_indicator: 1.0,
            samples: 0,
            cycles: 0,
        }
    }
}

pub fn components_to_polar(in_phase: f64, out_phase: f64) -> (f64, f64) {
    (in_phase.hypot(out_phase), out_phase.atan2(in_phase))
}

pub fn polar_to_components(amplitude: f64, phase: f64) -> (f64, f64) {
    let (s, c) = phase.sin_cos();
    (amplitude * c, amplitude * s)
}

/// Index range holding a whole number of periods after `skip_cycles`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Window {
    pub start: usize,
    pub end: usize,
    pub cycles: usize,
    /// First index of the last full cycle.
    pub last_cycle_start: usize,
}

const PHASE_EPS: f64 = 1e-9;
pub(crate) const MIN_FIT_SAMPLES: usize = 8;

pub(crate) fn window(phases: &[f64], skip_cycles: usize) -> Result<Window, IdentifyError> {
    let n = phases.len();
    if n < 2 {
        return Err(IdentifyError::InsufficientSamples {
            reason: format!("{n} samples cannot cover a period"),
        });
    }
    let origin = phases[0] + TAU * skip_cycles as f64;
    // Each sample stands for the interval up to the next one; the last
    // interval is taken equal to the one before it.
    let cover_end = phases[n - 1] + (phases[n - 1] - phases[n - 2]);
    let span = (cover_end - origin) / TAU;
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(span + PHASE_EPS >= 1.0) {
        return Err(IdentifyError::InsufficientSamples {
            reason: format!(
                "{:.3} periods remain after skipping {skip_cycles}, need at least 1",
                span.max(0.0)
            ),
        });
    }
    let cycles = (span + PHASE_EPS).floor() as usize;
    let pos = |p: f64| (p - origin) / TAU;
    let start = phases.partition_point(|&p| pos(p) < -PHASE_EPS);
    let end = phases.partition_point(|&p| pos(p) < cycles as f64 - PHASE_EPS);
    let last_cycle_start = phases.partition_point(|&p| pos(p) < (cycles - 1) as f64 - PHASE_EPS);
    let used = end - start;
    if used < MIN_FIT_SAMPLES {
        return Err(IdentifyError::InsufficientSamples {
            reason: format!("{used} samples in the fit window, need at least {MIN_FIT_SAMPLES}"),
        });
    }
    Ok(Window {
        start,
        end,
        cycles,
        last_cycle_start,
    })
}

/// Least-squares fit of `values` onto `{1, sin(ωt), cos(ωt)}` after skipping
/// `skip_cycles` periods, over the largest whole number of remaining periods.
pub fn fit_harmonic(
    times: &[f64],
    values: &[f64],
    omega: f64,
    skip_cycles: usize,
) -> Result<HarmonicFit, IdentifyError> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(IdentifyError::InvalidFrequency(omega));
    }
    let phases: Vec<f64> = times.iter().map(|t| omega * t).collect();
    fit_harmonic_phased(&phases, values, skip_cycles)
}

/// As [`fit_harmonic`] with the motion phase `ωt` supplied per sample.
pub fn fit_harmonic_phased(
    phases: &[f64],
    values: &[f64],
    skip_cycles: usize,
) -> Result<HarmonicFit, IdentifyError> {
    if phases.len() != values.len() {
        return Err(IdentifyError::LengthMismatch {
            phases: phases.len(),
            values: values.len(),
        });
    }
    if let Some(index) = phases
        .iter()
        .zip(values)
        .position(|(p, v)| !(p.is_finite() && v.is_finite()))
    {
        return Err(IdentifyError::NonFiniteData { index });
    }
    let w = window(phases, skip_cycles)?;
    let (mean, a, b, residual_rms, condition_indicator) =
        least_squares(&phases[w.start..w.end], &values[w.start..w.end])?;
    let (amplitude, phase) = components_to_polar(a, b);
    Ok(HarmonicFit {
        mean,
        in_phase: a,
        out_phase: b,
        amplitude,
        phase,
        residual_rms,
        condition_indicator,
        samples: w.end - w.start,
        cycles: w.cycles,
    })
}

fn least_squares(phases: &[f64], values: &[f64]) -> Result<(f64, f64, f64, f64, f64), IdentifyError> {
    let n = phases.len();
    let design = DMatrix::from_fn(n, 3, |i, j| match j {
        0 => 1.0,
        1 => phases[i].sin(),
        _ => phases[i].cos(),
    });
    let y = DVector::from_column_slice(values);

    // Householder QR; the singular values of R are those of the design.
    let qr = design.clone().qr();
    let r = qr.r();
    let qty = qr.q().transpose() * &y;
    let coeffs = r
        .solve_upper_triangular(&qty)
        .ok_or_else(|| IdentifyError::InsufficientSamples {
            reason: "design matrix is rank deficient".into(),
        })?;

    let residual = &y - &design * &coeffs;
    let residual_rms = (residual.norm_squared() / n as f64).sqrt();

    // Column scaling removes the trivial √2 between the constant and the
    // trigonometric columns of an orthogonal design.
    let scales = [1.0, std::f64::consts::SQRT_2, std::f64::consts::SQRT_2];
    let scaled = DMatrix::from_fn(3, 3, |i, j| r[(i, j)] * scales[j]);
    let sv = scaled.singular_values();
    let (max, min) = sv
        .iter()
        .fold((0.0f64, f64::INFINITY), |(hi, lo), &s| (hi.max(s), lo.min(s)));
    let condition_indicator = if min > 0.0 { max / min } else { f64::INFINITY };

    Ok((coeffs[0], coeffs[1], coeffs[2], residual_rms, condition_indicator))
}

/// Angular frequency of the dominant harmonic in a sampled record.
///
/// A periodogram scan on the record's own frequency grid picks the peak,
/// golden-section search on the fit residual refines it, and the result is snapped to a whole
/// number of periods over the record when within 2% of one.
pub fn estimate_frequency(times: &[f64], values: &[f64]) -> Result<f64, IdentifyError> {
    let n = times.len();
    if n != values.len() {
        return Err(IdentifyError::LengthMismatch {
            phases: n,
            values: values.len(),
        });
    }
    if n < MIN_FIT_SAMPLES {
        return Err(IdentifyError::InsufficientSamples {
            reason: format!("{n} samples, need at least {MIN_FIT_SAMPLES}"),
        });
    }
    if let Some(index) = times
        .iter()
        .zip(values)
        .position(|(t, v)| !(t.is_finite() && v.is_finite()))
    {
        return Err(IdentifyError::NonFiniteData { index });
    }
    let span = times[n - 1] - times[0] + (times[n - 1] - times[n - 2]);
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(span > 0.0) {
        return Err(IdentifyError::InvalidFrequency(0.0));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let power = |omega: f64| {
        let (mut s, mut c) = (0.0, 0.0);
        for (t, v) in times.iter().zip(values) {
            let (sin, cos) = (omega * (t - times[0])).sin_cos();
            s += (v - mean) * sin;
            c += (v - mean) * cos;
        }
        s * s + c * c
    };
    let base = TAU / span;
    let bins = (n / 2).max(1);
    let best = (1..=bins)
        .map(|j| (j, power(base * j as f64)))
        .fold((0, -1.0), |acc, (j, p)| if p > acc.1 { (j, p) } else { acc });
    if best.1 <= 0.0 {
        return Err(IdentifyError::ZeroAmplitude);
    }
    let residual = |omega: f64| {
        let phases: Vec<f64> = times.iter().map(|t| omega * (t - times[0])).collect();
        least_squares(&phases, values).map_or(f64::INFINITY, |r| r.3)
    };
    let (mut lo, mut hi) = (base * (best.0 as f64 - 1.0).max(0.5), base * (best.0 as f64 + 1.0));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if residual(m1) > residual(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let omega = 0.5 * (lo + hi);
    let periods = omega * span / TAU;
    let whole = periods.round();
    Ok(if whole >= 1.0 && (periods - whole).abs() < 0.02 {
        TAU * whole / span
    } else {
        omega
    })
}
