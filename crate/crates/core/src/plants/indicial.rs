//! Time-marching thin-airfoil plant built on the two-pole Wagner
//! approximation.
//!
//! Circulatory lift is `2π(α_e − A1·x1 − A2·x2)` where each lag state obeys
//! `dx_i/ds + b_i·x_i = dα_e/ds` in semichord-distance time `s = 2Vt/c`. The
//! states are advanced with the exact integrator for an input that is linear
//! within the step. Apparent-mass terms come from the analytic rates carried
//! by the motion state.

use std::f64::consts::PI;

use super::theodorsen::{TheodorsenConfig, JONES_A1, JONES_A2, JONES_B1, JONES_B2};
use super::PlantError;
use crate::kinematics::{FlightCondition, KinematicsError, MotionState};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IndicialState {
    pub x1: f64,
    pub x2: f64,
    /// `None` until the first sample; the first sample acts as a step input.
    pub prev_effective_aoa: Option<f64>,
}

impl IndicialState {
    pub fn reset() -> Self {
        Self::default()
    }
}

/// Three-quarter-chord downwash angle: `α + (½ − a)·q̂`.
pub fn effective_aoa(s: &MotionState, cfg: &TheodorsenConfig) -> f64 {
    s.relative_aoa + (0.5 - cfg.pitch_axis) * s.nondim_pitch_rate
}

/// `(1 − e^{−x}) / x`, accurate near zero.
fn ramp_gain(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - 0.5 * x
    } else {
        -(-x).exp_m1() / x
    }
}

/// Advance one sample. Returns `(C_L, C_m, next_state)`.
pub fn indicial_step(
    state: IndicialState,
    s: &MotionState,
    dt: f64,
    cond: &FlightCondition,
    cfg: &TheodorsenConfig,
) -> Result<(f64, f64, IndicialState), PlantError> {
    let v = cond.freestream_speed;
    if !(v.is_finite() && v > 0.0) {
        return Err(KinematicsError::NonDimensionalizationUndefined(v).into());
    }
    let alpha_e = effective_aoa(s, cfg);
    let (x1, x2) = match state.prev_effective_aoa {
        None => (state.x1 + alpha_e, state.x2 + alpha_e),
        Some(prev) => {
            if !(dt.is_finite() && dt > 0.0) {
                return Err(PlantError::InvalidParameter {
                    field: "dt",
                    reason: format!("time step must be > 0, got {dt}"),
                });
            }
            let ds = 2.0 * v * dt / cond.ref_chord;
            let d_alpha = alpha_e - prev;
            let advance = |x: f64, b: f64| x * (-b * ds).exp() + d_alpha * ramp_gain(b * ds);
            (advance(state.x1, JONES_B1), advance(state.x2, JONES_B2))
        }
    };

    let a = cfg.pitch_axis;
    let circ_lift = 2.0 * PI * (alpha_e - JONES_A1 * x1 - JONES_A2 * x2);
    let nc_lift = PI * (s.nondim_aoa_rate - a * s.nondim_pitch_accel);
    let circ_moment = 0.5 * (a + 0.5) * circ_lift;
    let nc_moment = 0.5
        * PI
        * (a * s.nondim_aoa_rate - 0.5 * s.nondim_pitch_rate - (0.125 + a * a) * s.nondim_pitch_accel);

    let next = IndicialState {
        x1,
        x2,
        prev_effective_aoa: Some(alpha_e),
    };
    Ok((circ_lift + nc_lift, circ_moment + nc_moment, next))
}
