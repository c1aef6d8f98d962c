//! Prescribed harmonic motions for the two forced-oscillation modes.
//!
//! Angle conventions used throughout the crate:
//! - every angle is in radians internally; degrees only enter through the
//!   `*_deg` constructors used by the config layer,
//! - `relative_aoa = body_pitch - flow_angle`,
//! - nondimensional rates use `c / (2V)`, reduced frequency is `k = ωc / (2V)`,
//! - `t = 0` is the ascending zero crossing of the oscillatory part.
//!
//! In the α-mode the body pitches in a fixed stream, so angle of attack and
//! pitch rate move together. In the q-mode the flow direction oscillates with
//! the body at equal amplitude, which holds the angle of attack at its mean
//! while the pitch rate still oscillates.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinematicsError {
    #[error("nondimensionalization undefined at freestream speed {0} m/s")]
    NonDimensionalizationUndefined(f64),
    #[error("q-mode decoupling requires equal amplitudes (body {body} rad, flow {flow} rad)")]
    DecouplingViolation { body: f64, flow: f64 },
    #[error("invalid `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },
    #[error("schedule for {expected:?} requested with a {found:?} spec")]
    ModeMismatch { expected: Mode, found: Mode },
}

fn invalid(field: &'static str, reason: impl Into<String>) -> KinematicsError {
    KinematicsError::InvalidParameter {
        field,
        reason: reason.into(),
    }
}

/// `x(t) = A sin(ωt + φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Harmonic {
    pub amplitude: f64,
    pub angular_frequency: f64,
    pub phase: f64,
}

impl Harmonic {
    pub fn new(amplitude: f64, angular_frequency: f64, phase: f64) -> Result<Self, KinematicsError> {
        if !(amplitude.is_finite() && amplitude >= 0.0) {
            return Err(invalid("amplitude", format!("must be finite and >= 0, got {amplitude}")));
        }
        if !(angular_frequency.is_finite() && angular_frequency > 0.0) {
            return Err(invalid(
                "angular_frequency",
                format!("must be finite and > 0, got {angular_frequency}"),
            ));
        }
        if !phase.is_finite() {
            return Err(invalid("phase", "must be finite"));
        }
        Ok(Self {
            amplitude,
            angular_frequency,
            phase,
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.amplitude * (self.angular_frequency * t + self.phase).sin()
    }
}

/// Freestream state and reference geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlightCondition {
    /// m/s
    pub freestream_speed: f64,
    /// m/s; only used to derive the Mach number.
    pub sound_speed: Option<f64>,
    /// kg/m³
    pub density: f64,
    /// m
    pub ref_chord: f64,
    /// m
    pub ref_span: f64,
    /// m²
    pub ref_area: f64,
}

impl FlightCondition {
    pub const SEA_LEVEL_DENSITY: f64 = 1.225;

    /// Sea-level density, unit span and `area = chord`.
    pub fn new(freestream_speed: f64, ref_chord: f64) -> Self {
        Self {
            freestream_speed,
            sound_speed: None,
            density: Self::SEA_LEVEL_DENSITY,
            ref_chord,
            ref_span: 1.0,
            ref_area: ref_chord,
        }
    }

    /// Standard Dynamics Model reference geometry (S = 0.1238 m², b = 0.6096 m,
    /// c = 0.2299 m).
    pub fn sdm(freestream_speed: f64) -> Self {
        Self {
            freestream_speed,
            sound_speed: None,
            density: Self::SEA_LEVEL_DENSITY,
            ref_chord: 0.2299,
            ref_span: 0.6096,
            ref_area: 0.1238,
        }
    }

    pub fn with_speed(mut self, freestream_speed: f64) -> Self {
        self.freestream_speed = freestream_speed;
        self
    }

    pub fn with_sound_speed(mut self, sound_speed: f64) -> Self {
        self.sound_speed = Some(sound_speed);
        self
    }

    pub fn mach(&self) -> Option<f64> {
        self.sound_speed.map(|a| self.freestream_speed / a)
    }

    pub fn validate(&self) -> Result<(), KinematicsError> {
        let positive = |field: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(invalid(field, format!("must be finite and > 0, got {v}")))
            }
        };
        if !(self.freestream_speed.is_finite() && self.freestream_speed >= 0.0) {
            return Err(invalid(
                "freestream_speed",
                format!("must be finite and >= 0, got {}", self.freestream_speed),
            ));
        }
        positive("density", self.density)?;
        positive("ref_chord", self.ref_chord)?;
        positive("ref_span", self.ref_span)?;
        positive("ref_area", self.ref_area)?;
        if let Some(a) = self.sound_speed {
            positive("sound_speed", a)?;
            let mach = self.freestream_speed / a;
            if mach >= 1.0 {
                return Err(invalid("sound_speed", format!("Mach {mach} outside [0, 1)")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Body pitch oscillation in a fixed stream.
    Alpha,
    /// Body pitch plus equal flow-direction oscillation; α held constant.
    Q,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Alpha => "alpha",
            Mode::Q => "q",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "alpha" | "alpha-mode" | "alpha_mode" | "aoa" => Ok(Mode::Alpha),
            "q" | "q-mode" | "q_mode" | "pitch-rate" => Ok(Mode::Q),
            other => Err(format!("unknown oscillation mode `{other}` (expected `alpha` or `q`)")),
        }
    }
}

/// One forced-oscillation case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillationSpec {
    pub mode: Mode,
    /// α0, rad
    pub mean_incidence: f64,
    /// α_B, rad
    pub body_amplitude: f64,
    /// α_A, rad; q-mode only
    pub flow_amplitude: Option<f64>,
    /// k = ωc / (2V)
    pub reduced_frequency: f64,
    pub cycles: usize,
    pub samples_per_cycle: usize,
}

impl OscillationSpec {
    /// Half-degree rotation step.
    pub const DEFAULT_SAMPLES_PER_CYCLE: usize = 720;
    pub const MIN_SAMPLES_PER_CYCLE: usize = 8;

    pub fn alpha_mode(
        mean_incidence: f64,
        body_amplitude: f64,
        reduced_frequency: f64,
        cycles: usize,
        samples_per_cycle: usize,
    ) -> Result<Self, KinematicsError> {
        let spec = Self {
            mode: Mode::Alpha,
            mean_incidence,
            body_amplitude,
            flow_amplitude: None,
            reduced_frequency,
            cycles,
            samples_per_cycle,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn q_mode(
        mean_incidence: f64,
        body_amplitude: f64,
        flow_amplitude: f64,
        reduced_frequency: f64,
        cycles: usize,
        samples_per_cycle: usize,
    ) -> Result<Self, KinematicsError> {
        let spec = Self {
            mode: Mode::Q,
            mean_incidence,
            body_amplitude,
            flow_amplitude: Some(flow_amplitude),
            reduced_frequency,
            cycles,
            samples_per_cycle,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Degree-denominated constructor used at external boundaries. In the
    /// q-mode the flow amplitude is set equal to the body amplitude.
    pub fn from_degrees(
        mode: Mode,
        mean_incidence_deg: f64,
        amplitude_deg: f64,
        reduced_frequency: f64,
        cycles: usize,
        samples_per_cycle: usize,
    ) -> Result<Self, KinematicsError> {
        let mean = mean_incidence_deg.to_radians();
        let amp = amplitude_deg.to_radians();
        match mode {
            Mode::Alpha => Self::alpha_mode(mean, amp, reduced_frequency, cycles, samples_per_cycle),
            Mode::Q => Self::q_mode(mean, amp, amp, reduced_frequency, cycles, samples_per_cycle),
        }
    }

    /// Same case in the other mode (flow amplitude follows the body amplitude).
    pub fn with_mode(&self, mode: Mode) -> Self {
        let flow_amplitude = match mode {
            Mode::Alpha => None,
            Mode::Q => Some(self.body_amplitude),
        };
        Self {
            mode,
            flow_amplitude,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<(), KinematicsError> {
        if !self.mean_incidence.is_finite() {
            return Err(invalid("mean_incidence", "must be finite"));
        }
        if !(self.body_amplitude.is_finite() && self.body_amplitude > 0.0) {
            return Err(invalid(
                "body_amplitude",
                format!("must be finite and > 0, got {}", self.body_amplitude),
            ));
        }
        if !(self.reduced_frequency.is_finite() && self.reduced_frequency > 0.0) {
            return Err(invalid(
                "reduced_frequency",
                format!("must be finite and > 0, got {}", self.reduced_frequency),
            ));
        }
        if self.cycles == 0 {
            return Err(invalid("cycles", "must be >= 1"));
        }
        if self.samples_per_cycle < Self::MIN_SAMPLES_PER_CYCLE {
            return Err(invalid(
                "samples_per_cycle",
                format!(
                    "must be >= {}, got {}",
                    Self::MIN_SAMPLES_PER_CYCLE,
                    self.samples_per_cycle
                ),
            ));
        }
        match (self.mode, self.flow_amplitude) {
            (Mode::Alpha, _) => Ok(()),
            (Mode::Q, None) => Err(invalid("flow_amplitude", "required in q-mode")),
            (Mode::Q, Some(flow)) if flow != self.body_amplitude => {
                Err(KinematicsError::DecouplingViolation {
                    body: self.body_amplitude,
                    flow,
                })
            }
            (Mode::Q, Some(_)) => Ok(()),
        }
    }

    pub fn total_samples(&self) -> usize {
        self.cycles * self.samples_per_cycle
    }

    pub fn omega(&self, cond: &FlightCondition) -> Result<f64, KinematicsError> {
        omega_from_k(self.reduced_frequency, cond)
    }
}

/// Instantaneous kinematic state. `phase` is ωt evaluated exactly on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MotionState {
    pub time: f64,
    pub phase: f64,
    pub body_pitch: f64,
    pub relative_aoa: f64,
    pub flow_angle: f64,
    pub pitch_rate: f64,
    pub nondim_pitch_rate: f64,
    pub aoa_rate: f64,
    pub nondim_aoa_rate: f64,
    /// θ̈, rad/s²
    pub pitch_accel: f64,
    /// θ̈·(c / 2V)²
    pub nondim_pitch_accel: f64,
}

impl MotionState {
    /// A motionless state at incidence `alpha`.
    pub fn at_rest(alpha: f64) -> Self {
        Self {
            time: 0.0,
            phase: 0.0,
            body_pitch: alpha,
            relative_aoa: alpha,
            flow_angle: 0.0,
            pitch_rate: 0.0,
            nondim_pitch_rate: 0.0,
            aoa_rate: 0.0,
            nondim_aoa_rate: 0.0,
            pitch_accel: 0.0,
            nondim_pitch_accel: 0.0,
        }
    }
}

/// A generated motion with the case that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub spec: OscillationSpec,
    pub condition: FlightCondition,
    pub omega: f64,
    pub states: Vec<MotionState>,
}

impl Schedule {
    pub fn times(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.time).collect()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// ω = 2kV / c.
pub fn omega_from_k(k: f64, cond: &FlightCondition) -> Result<f64, KinematicsError> {
    if !(k.is_finite() && k > 0.0) {
        return Err(invalid("reduced_frequency", format!("must be finite and > 0, got {k}")));
    }
    if !(cond.ref_chord.is_finite() && cond.ref_chord > 0.0) {
        return Err(invalid("ref_chord", format!("must be finite and > 0, got {}", cond.ref_chord)));
    }
    let v = cond.freestream_speed;
    if !(v.is_finite() && v > 0.0) {
        return Err(KinematicsError::NonDimensionalizationUndefined(v));
    }
    Ok(2.0 * k * v / cond.ref_chord)
}

/// `cycles × samples_per_cycle` uniform stamps `i·T/spp`, endpoint excluded.
pub fn sample_grid(spec: &OscillationSpec, omega: f64) -> Vec<f64> {
    let period = TAU / omega;
    let spp = spec.samples_per_cycle as f64;
    (0..spec.total_samples())
        .map(|i| i as f64 * period / spp)
        .collect()
}

fn grid_phase(i: usize, samples_per_cycle: usize) -> f64 {
    TAU * i as f64 / samples_per_cycle as f64
}

pub fn alpha_mode_schedule(
    spec: &OscillationSpec,
    cond: &FlightCondition,
) -> Result<Schedule, KinematicsError> {
    if spec.mode != Mode::Alpha {
        return Err(KinematicsError::ModeMismatch {
            expected: Mode::Alpha,
            found: spec.mode,
        });
    }
    build_schedule(spec, cond)
}

pub fn q_mode_schedule(
    spec: &OscillationSpec,
    cond: &FlightCondition,
) -> Result<Schedule, KinematicsError> {
    if spec.mode != Mode::Q {
        return Err(KinematicsError::ModeMismatch {
            expected: Mode::Q,
            found: spec.mode,
        });
    }
    build_schedule(spec, cond)
}

/// Dispatches on `spec.mode`.
pub fn schedule(spec: &OscillationSpec, cond: &FlightCondition) -> Result<Schedule, KinematicsError> {
    build_schedule(spec, cond)
}

fn build_schedule(spec: &OscillationSpec, cond: &FlightCondition) -> Result<Schedule, KinematicsError> {
    spec.validate()?;
    let omega = spec.omega(cond)?;
    let k = spec.reduced_frequency;
    let amp = spec.body_amplitude;
    let mean = spec.mean_incidence;
    let times = sample_grid(spec, omega);

    let states = times
        .into_iter()
        .enumerate()
        .map(|(i, time)| {
            let phase = grid_phase(i, spec.samples_per_cycle);
            let (s, c) = phase.sin_cos();
            let body_pitch = mean + amp * s;
            let pitch_rate = omega * amp * c;
            let nondim_pitch_rate = k * amp * c;
            let pitch_accel = -omega * omega * amp * s;
            let nondim_pitch_accel = -k * k * amp * s;
            let (flow_angle, relative_aoa, aoa_rate, nondim_aoa_rate) = match spec.mode {
                Mode::Alpha => (0.0, body_pitch, pitch_rate, nondim_pitch_rate),
                // α_A = α_B, so θ − λ is α0 identically.
                Mode::Q => (amp * s, mean, 0.0, 0.0),
            };
            MotionState {
                time,
                phase,
                body_pitch,
                relative_aoa,
                flow_angle,
                pitch_rate,
                nondim_pitch_rate,
                aoa_rate,
                nondim_aoa_rate,
                pitch_accel,
                nondim_pitch_accel,
            }
        })
        .collect();

    Ok(Schedule {
        spec: *spec,
        condition: *cond,
        omega,
        states,
    })
}
