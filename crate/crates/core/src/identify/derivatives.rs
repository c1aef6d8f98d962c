//! Conversion of fitted harmonic components into derivatives.
//!
//! For a motion `θ = α0 + α_B sin(ωt)` the first-harmonic response
//! `mean + a sin(ωt) + b cos(ωt)` gives, per channel:
//! - α-mode: slope `a/α_B` and damping sum `b/(k·α_B)` (`C_·q + C_·α̇`),
//! - q-mode: rate derivative `b/(k·α_B)` (`C_·q`); `a/α_B` should vanish.
//!
//! The α̇ derivative follows from the difference of the two runs.

use crate::kinematics::{Mode, OscillationSpec};
use crate::series::{Channel, CoefficientSeries};

use super::fit::{fit_harmonic_phased, HarmonicFit};
use super::IdentifyError;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChannelFits {
    pub lift: Option<HarmonicFit>,
    pub drag: Option<HarmonicFit>,
    pub moment: Option<HarmonicFit>,
}

impl ChannelFits {
    pub fn get(&self, channel: Channel) -> Option<&HarmonicFit> {
        match channel {
            Channel::Lift => self.lift.as_ref(),
            Channel::Drag => self.drag.as_ref(),
            Channel::Moment => self.moment.as_ref(),
        }
    }

    pub fn set(&mut self, channel: Channel, fit: HarmonicFit) {
        let slot = match channel {
            Channel::Lift => &mut self.lift,
            Channel::Drag => &mut self.drag,
            Channel::Moment => &mut self.moment,
        };
        *slot = Some(fit);
    }

    pub fn iter(&self) -> impl Iterator<Item = (Channel, &HarmonicFit)> {
        Channel::ALL
            .into_iter()
            .filter_map(move |c| self.get(c).map(|f| (c, f)))
    }
}

/// Fit every present channel of `series`. `omega` defaults to the series'
/// own motion frequency.
pub fn fit_channels(
    series: &CoefficientSeries,
    omega: Option<f64>,
    skip_cycles: usize,
) -> Result<ChannelFits, IdentifyError> {
    let omega = omega
        .or(series.metadata.omega)
        .ok_or(IdentifyError::MissingFrequency)?;
    if !(omega.is_finite() && omega > 0.0) {
        return Err(IdentifyError::InvalidFrequency(omega));
    }
    let phases = series.phases_at(omega);
    let mut fits = ChannelFits::default();
    for (channel, values) in series.channels() {
        fits.set(channel, fit_harmonic_phased(&phases, values, skip_cycles)?);
    }
    Ok(fits)
}

/// Identified quantities for one coefficient channel; all per radian.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChannelDerivatives {
    /// Mean coefficient at α0.
    pub trim_value: Option<f64>,
    /// `C_·α`
    pub static_slope: Option<f64>,
    /// `C_·q`
    pub rate_derivative: Option<f64>,
    /// `C_·α̇`
    pub aoa_rate_derivative: Option<f64>,
    /// `C_·q + C_·α̇`
    pub damping_sum: Option<f64>,
    /// q-mode in-phase residue `a/α_B`; zero when α is truly constant.
    pub contamination: Option<f64>,
    /// `C_·u`; reserved, never populated by any extraction mode.
    pub speed_derivative: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub mode: Mode,
    pub reduced_frequency: f64,
    pub body_amplitude: f64,
    pub mean_incidence: f64,
    pub freestream_speed: Option<f64>,
    pub ref_chord: Option<f64>,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DerivativeSet {
    pub lift: Option<ChannelDerivatives>,
    pub drag: Option<ChannelDerivatives>,
    pub moment: Option<ChannelDerivatives>,
    pub provenance: Vec<Provenance>,
    pub diagnostics: Vec<(Mode, Channel, HarmonicFit)>,
}

impl DerivativeSet {
    pub fn get(&self, channel: Channel) -> Option<&ChannelDerivatives> {
        match channel {
            Channel::Lift => self.lift.as_ref(),
            Channel::Drag => self.drag.as_ref(),
            Channel::Moment => self.moment.as_ref(),
        }
    }

    fn slot(&mut self, channel: Channel) -> &mut Option<ChannelDerivatives> {
        match channel {
            Channel::Lift => &mut self.lift,
            Channel::Drag => &mut self.drag,
            Channel::Moment => &mut self.moment,
        }
    }

    pub fn channels(&self) -> impl Iterator<Item = (Channel, &ChannelDerivatives)> {
        Channel::ALL
            .into_iter()
            .filter_map(move |c| self.get(c).map(|d| (c, d)))
    }

    pub fn reduced_frequency(&self) -> Option<f64> {
        self.provenance.first().map(|p| p.reduced_frequency)
    }

    pub fn has_mode(&self, mode: Mode) -> bool {
        self.provenance.iter().any(|p| p.mode == mode)
    }

    /// Attach condition details (speed, chord, source) to every provenance entry.
    pub fn with_condition(mut self, speed: Option<f64>, chord: Option<f64>, source: &str) -> Self {
        for p in &mut self.provenance {
            p.freestream_speed = speed;
            p.ref_chord = chord;
            p.source = source.to_string();
        }
        self
    }
}

fn check_spec(spec: &OscillationSpec, mode: Mode) -> Result<(), IdentifyError> {
    if spec.mode != mode {
        return Err(IdentifyError::ModeMismatch {
            expected: mode,
            found: spec.mode,
        });
    }
    if !(spec.body_amplitude.is_finite() && spec.body_amplitude > 0.0) {
        return Err(IdentifyError::ZeroAmplitude);
    }
    if !(spec.reduced_frequency.is_finite() && spec.reduced_frequency > 0.0) {
        return Err(IdentifyError::ZeroReducedFrequency);
    }
    Ok(())
}

fn provenance(spec: &OscillationSpec) -> Provenance {
    Provenance {
        mode: spec.mode,
        reduced_frequency: spec.reduced_frequency,
        body_amplitude: spec.body_amplitude,
        mean_incidence: spec.mean_incidence,
        freestream_speed: None,
        ref_chord: None,
        source: String::new(),
    }
}

pub fn extract_alpha_mode(
    fits: &ChannelFits,
    spec: &OscillationSpec,
) -> Result<DerivativeSet, IdentifyError> {
    check_spec(spec, Mode::Alpha)?;
    let amp = spec.body_amplitude;
    let rate_scale = spec.reduced_frequency * amp;
    let mut set = DerivativeSet {
        provenance: vec![provenance(spec)],
        ..Default::default()
    };
    for (channel, fit) in fits.iter() {
        *set.slot(channel) = Some(ChannelDerivatives {
            trim_value: Some(fit.mean),
            static_slope: Some(fit.in_phase / amp),
            damping_sum: Some(fit.out_phase / rate_scale),
            ..Default::default()
        });
        set.diagnostics.push((Mode::Alpha, channel, *fit));
    }
    Ok(set)
}

pub fn extract_q_mode(
    fits: &ChannelFits,
    spec: &OscillationSpec,
) -> Result<DerivativeSet, IdentifyError> {
    check_spec(spec, Mode::Q)?;
    let amp = spec.body_amplitude;
    let rate_scale = spec.reduced_frequency * amp;
    let mut set = DerivativeSet {
        provenance: vec![provenance(spec)],
        ..Default::default()
    };
    for (channel, fit) in fits.iter() {
        *set.slot(channel) = Some(ChannelDerivatives {
            trim_value: Some(fit.mean),
            rate_derivative: Some(fit.out_phase / rate_scale),
            contamination: Some(fit.in_phase / amp),
            ..Default::default()
        });
        set.diagnostics.push((Mode::Q, channel, *fit));
    }
    Ok(set)
}

/// Dispatches on `spec.mode`.
pub fn extract(fits: &ChannelFits, spec: &OscillationSpec) -> Result<DerivativeSet, IdentifyError> {
    match spec.mode {
        Mode::Alpha => extract_alpha_mode(fits, spec),
        Mode::Q => extract_q_mode(fits, spec),
    }
}

/// Fit and extract a generated or ingested series whose metadata carries
/// the oscillation spec.
pub fn identify_series(
    series: &CoefficientSeries,
    skip_cycles: usize,
) -> Result<DerivativeSet, IdentifyError> {
    let spec = series.metadata.spec.ok_or(IdentifyError::MissingSpec)?;
    let fits = fit_channels(series, None, skip_cycles)?;
    let set = extract(&fits, &spec)?;
    let cond = series.metadata.condition;
    Ok(set.with_condition(
        cond.map(|c| c.freestream_speed),
        cond.map(|c| c.ref_chord),
        &series.metadata.source,
    ))
}

const MATCH_RTOL: f64 = 1e-9;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= MATCH_RTOL * a.abs().max(b.abs())
}

fn check_compatible(alpha: &Provenance, q: &Provenance) -> Result<(), IdentifyError> {
    if !close(alpha.reduced_frequency, q.reduced_frequency) {
        return Err(IdentifyError::ConditionMismatch(format!(
            "reduced frequency {} vs {}",
            alpha.reduced_frequency, q.reduced_frequency
        )));
    }
    let pairs = [
        ("freestream speed", alpha.freestream_speed, q.freestream_speed),
        ("reference chord", alpha.ref_chord, q.ref_chord),
    ];
    for (what, a, b) in pairs {
        if let (Some(a), Some(b)) = (a, b) {
            if !close(a, b) {
                return Err(IdentifyError::ConditionMismatch(format!("{what} {a} vs {b}")));
            }
        }
    }
    Ok(())
}

/// Merge an α-mode set (damping sums) with a q-mode set (rate derivatives)
/// and form `C_·α̇ = damping_sum − C_·q` per channel.
pub fn separate_rates(
    alpha_set: &DerivativeSet,
    q_set: &DerivativeSet,
) -> Result<DerivativeSet, IdentifyError> {
    let alpha_prov = alpha_set
        .provenance
        .iter()
        .find(|p| p.mode == Mode::Alpha)
        .ok_or(IdentifyError::MissingComponent("α-mode provenance"))?;
    let q_prov = q_set
        .provenance
        .iter()
        .find(|p| p.mode == Mode::Q)
        .ok_or(IdentifyError::MissingComponent("q-mode provenance"))?;
    check_compatible(alpha_prov, q_prov)?;

    let mut merged = DerivativeSet {
        provenance: vec![alpha_prov.clone(), q_prov.clone()],
        diagnostics: alpha_set
            .diagnostics
            .iter()
            .chain(&q_set.diagnostics)
            .copied()
            .collect(),
        ..Default::default()
    };
    let mut separated = 0;
    for channel in Channel::ALL {
        let a = alpha_set.get(channel);
        let q = q_set.get(channel);
        let entry = match (a, q) {
            (None, None) => continue,
            (Some(a), None) => *a,
            (None, Some(q)) => *q,
            (Some(a), Some(q)) => {
                let mut d = ChannelDerivatives {
                    trim_value: a.trim_value.or(q.trim_value),
                    static_slope: a.static_slope,
                    damping_sum: a.damping_sum,
                    rate_derivative: q.rate_derivative,
                    contamination: q.contamination,
                    ..Default::default()
                };
                if let (Some(sum), Some(rate)) = (d.damping_sum, d.rate_derivative) {
                    d.aoa_rate_derivative = Some(sum - rate);
                    separated += 1;
                }
                d
            }
        };
        *merged.slot(channel) = Some(entry);
    }
    if separated == 0 {
        return Err(IdentifyError::MissingComponent(
            "no channel carries both a damping sum and a rate derivative",
        ));
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn agard(mode: Mode) -> OscillationSpec {
        OscillationSpec::from_degrees(mode, 3.16, 4.59, 0.0811, 1, 720).unwrap()
    }

    fn lift_only(fit: HarmonicFit) -> ChannelFits {
        ChannelFits {
            lift: Some(fit),
            ..Default::default()
        }
    }

    #[test]
    fn alpha_mode_slope_and_damping() {
        let spec = agard(Mode::Alpha);
        let amp = spec.body_amplitude;
        let fits = lift_only(HarmonicFit::from_components(0.3, 5.0 * amp, 10.0 * 0.0811 * amp));
        let set = extract_alpha_mode(&fits, &spec).unwrap();
        let d = set.lift.unwrap();
        assert!((d.static_slope.unwrap() - 5.0).abs() < 1e-14);
        assert!((d.damping_sum.unwrap() - 10.0).abs() < 1e-13);
        assert_eq!(d.trim_value, Some(0.3));
        assert_eq!(d.rate_derivative, None);
        assert_eq!(d.aoa_rate_derivative, None);
        assert_eq!(d.speed_derivative, None);
        assert!(set.drag.is_none());
    }

    #[test]
    fn alpha_mode_rounded_values() {
        // a = 0.4005, b = 0.06496 with α_B = 0.0801 rad.
        let mut spec = agard(Mode::Alpha);
        spec.body_amplitude = 0.0801;
        let fits = lift_only(HarmonicFit::from_components(0.0, 0.4005, 0.06496));
        let d = extract_alpha_mode(&fits, &spec).unwrap().lift.unwrap();
        assert!((d.static_slope.unwrap() - 5.0).abs() < 1e-3);
        assert!((d.damping_sum.unwrap() - 10.0).abs() < 1e-3);
    }

    #[test]
    fn zero_amplitude_and_frequency() {
        let mut spec = agard(Mode::Alpha);
        spec.body_amplitude = 0.0;
        let fits = lift_only(HarmonicFit::from_components(0.0, 1.0, 1.0));
        assert_eq!(extract_alpha_mode(&fits, &spec).unwrap_err(), IdentifyError::ZeroAmplitude);
        let mut spec = agard(Mode::Q);
        spec.reduced_frequency = 0.0;
        assert_eq!(extract_q_mode(&fits, &spec).unwrap_err(), IdentifyError::ZeroReducedFrequency);
    }

    #[test]
    fn q_mode_rate_derivative() {
        let spec = agard(Mode::Q);
        let b = -3.0 * 0.0811 * spec.body_amplitude;
        assert!((b - -0.019488).abs() < 5e-6);
        let fits = ChannelFits {
            moment: Some(HarmonicFit::from_components(0.0, 0.0, b)),
            ..Default::default()
        };
        let d = extract_q_mode(&fits, &spec).unwrap().moment.unwrap();
        assert!((d.rate_derivative.unwrap() + 3.0).abs() < 1e-13);
        assert_eq!(d.contamination, Some(0.0));
        assert_eq!(d.static_slope, None);
    }

    #[test]
    fn mode_mismatch() {
        let fits = lift_only(HarmonicFit::from_components(0.0, 1.0, 1.0));
        assert!(matches!(
            extract_q_mode(&fits, &agard(Mode::Alpha)),
            Err(IdentifyError::ModeMismatch { .. })
        ));
    }

    fn sets(damping: f64, rate: f64) -> (DerivativeSet, DerivativeSet) {
        let alpha_spec = agard(Mode::Alpha);
        let q_spec = agard(Mode::Q);
        let r = 0.0811 * alpha_spec.body_amplitude;
        let a = extract_alpha_mode(
            &ChannelFits {
                moment: Some(HarmonicFit::from_components(0.0, -0.1, damping * r)),
                ..Default::default()
            },
            &alpha_spec,
        )
        .unwrap();
        let q = extract_q_mode(
            &ChannelFits {
                moment: Some(HarmonicFit::from_components(0.0, 0.0, rate * r)),
                ..Default::default()
            },
            &q_spec,
        )
        .unwrap();
        (a, q)
    }

    #[test]
    fn separation_arithmetic() {
        let (a, q) = sets(-4.2, -3.0);
        let merged = separate_rates(&a, &q).unwrap();
        let m = merged.moment.unwrap();
        assert!((m.aoa_rate_derivative.unwrap() + 1.2).abs() < 1e-12);
        assert_eq!(
            m.aoa_rate_derivative.unwrap(),
            m.damping_sum.unwrap() - m.rate_derivative.unwrap()
        );
        assert!(merged.has_mode(Mode::Alpha) && merged.has_mode(Mode::Q));

        let (a, q) = sets(2.5, 2.5);
        let m = separate_rates(&a, &q).unwrap().moment.unwrap();
        assert_eq!(m.aoa_rate_derivative, Some(0.0));
    }

    #[test]
    fn separation_requires_matching_conditions() {
        let (a, q) = sets(-4.2, -3.0);
        let mut q = q.with_condition(Some(33.0), Some(1.0), "q");
        let a = a.with_condition(Some(66.0), Some(1.0), "a");
        assert!(matches!(separate_rates(&a, &q), Err(IdentifyError::ConditionMismatch(_))));
        q.provenance[0].freestream_speed = Some(66.0);
        q.provenance[0].reduced_frequency = 0.2;
        assert!(matches!(separate_rates(&a, &q), Err(IdentifyError::ConditionMismatch(_))));
    }

    #[test]
    fn separation_requires_both_modes() {
        let (a, _) = sets(-4.2, -3.0);
        assert!(matches!(separate_rates(&a, &a), Err(IdentifyError::MissingComponent(_))));
    }
}
