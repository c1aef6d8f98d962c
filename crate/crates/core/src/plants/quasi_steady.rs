use serde::{Deserialize, Serialize};

use super::{Loads, PlantError};
use crate::kinematics::{FlightCondition, MotionState};

/// Linear quasi-steady derivative model. Slopes are per radian; rate
/// derivatives multiply the nondimensional rates `q̂` and `α̇̂`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuasiSteadyParams {
    #[serde(default)]
    pub cl0: f64,
    #[serde(default)]
    pub cl_alpha: f64,
    #[serde(default)]
    pub cl_q: f64,
    #[serde(default)]
    pub cl_alphadot: f64,
    #[serde(default)]
    pub cd0: f64,
    #[serde(default)]
    pub cd_alpha: f64,
    #[serde(default)]
    pub cd_q: f64,
    #[serde(default)]
    pub cm0: f64,
    #[serde(default)]
    pub cm_alpha: f64,
    #[serde(default)]
    pub cm_q: f64,
    #[serde(default)]
    pub cm_alphadot: f64,
    /// κ in `C_D += κ·C_L²`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub induced_drag_factor: Option<f64>,
    /// Scale every slope by the Prandtl–Glauert factor `1/√(1 − M²)`.
    #[serde(default)]
    pub mach_scaling: bool,
    // Forward-speed derivatives are carried but never excited (u = 0).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cl_u: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cd_u: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cm_u: Option<f64>,
}

impl QuasiSteadyParams {
    pub fn validate(&self) -> Result<(), PlantError> {
        let values = [
            ("cl0", self.cl0),
            ("cl_alpha", self.cl_alpha),
            ("cl_q", self.cl_q),
            ("cl_alphadot", self.cl_alphadot),
            ("cd0", self.cd0),
            ("cd_alpha", self.cd_alpha),
            ("cd_q", self.cd_q),
            ("cm0", self.cm0),
            ("cm_alpha", self.cm_alpha),
            ("cm_q", self.cm_q),
            ("cm_alphadot", self.cm_alphadot),
        ];
        for (field, v) in values {
            if !v.is_finite() {
                return Err(PlantError::InvalidParameter {
                    field,
                    reason: format!("must be finite, got {v}"),
                });
            }
        }
        if let Some(kappa) = self.induced_drag_factor {
            if !(kappa.is_finite() && kappa >= 0.0) {
                return Err(PlantError::InvalidParameter {
                    field: "induced_drag_factor",
                    reason: format!("must be finite and >= 0, got {kappa}"),
                });
            }
        }
        Ok(())
    }

    /// Parameters in effect at `cond`: slopes scaled when Mach scaling is on.
    pub fn at_condition(&self, cond: &FlightCondition) -> Result<Self, PlantError> {
        if !self.mach_scaling {
            return Ok(*self);
        }
        let mach = cond.mach().ok_or(PlantError::MachUnavailable)?;
        if !(0.0..1.0).contains(&mach) {
            return Err(PlantError::InvalidParameter {
                field: "sound_speed",
                reason: format!("Mach {mach} outside [0, 1)"),
            });
        }
        let f = (1.0 - mach * mach).sqrt().recip();
        Ok(Self {
            cl_alpha: self.cl_alpha * f,
            cl_q: self.cl_q * f,
            cl_alphadot: self.cl_alphadot * f,
            cd_alpha: self.cd_alpha * f,
            cd_q: self.cd_q * f,
            cm_alpha: self.cm_alpha * f,
            cm_q: self.cm_q * f,
            cm_alphadot: self.cm_alphadot * f,
            ..*self
        })
    }
}

pub fn quasi_steady_loads(p: &QuasiSteadyParams, s: &MotionState) -> Loads {
    let alpha = s.relative_aoa;
    let q = s.nondim_pitch_rate;
    let ad = s.nondim_aoa_rate;
    let lift = p.cl0 + p.cl_alpha * alpha + p.cl_q * q + p.cl_alphadot * ad;
    let mut drag = p.cd0 + p.cd_alpha * alpha + p.cd_q * q;
    if let Some(kappa) = p.induced_drag_factor {
        drag += kappa * lift * lift;
    }
    let moment = p.cm0 + p.cm_alpha * alpha + p.cm_q * q + p.cm_alphadot * ad;
    Loads { lift, drag, moment }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{alpha_mode_schedule, Mode, OscillationSpec};

    fn state(alpha: f64, q: f64, ad: f64) -> MotionState {
        MotionState {
            relative_aoa: alpha,
            body_pitch: alpha,
            nondim_pitch_rate: q,
            nondim_aoa_rate: ad,
            ..MotionState::at_rest(alpha)
        }
    }

    fn sample_params() -> QuasiSteadyParams {
        QuasiSteadyParams {
            cl0: 0.2,
            cl_alpha: 5.0,
            cl_q: 7.0,
            cl_alphadot: 3.0,
            cd0: 0.02,
            cd_alpha: 0.3,
            cd_q: 0.1,
            cm0: -0.01,
            cm_alpha: -0.8,
            cm_q: -3.0,
            cm_alphadot: -1.2,
            ..Default::default()
        }
    }

    #[test]
    fn rest_state_returns_offsets() {
        let p = sample_params();
        let l = quasi_steady_loads(&p, &state(0.0, 0.0, 0.0));
        assert_eq!((l.lift, l.drag, l.moment), (0.2, 0.02, -0.01));
    }

    #[test]
    fn lift_slope_only() {
        let p = QuasiSteadyParams {
            cl_alpha: 5.0,
            ..Default::default()
        };
        assert_eq!(quasi_steady_loads(&p, &state(0.1, 0.0, 0.0)).lift, 0.5);
    }

    #[test]
    fn agard_peak_rate_oscillatory_lift() {
        // α-mode at t = 0: α = α0, q̂ = α̇̂ = k·α_B.
        let p = QuasiSteadyParams {
            cl_alpha: 5.0,
            cl_q: 6.5,
            cl_alphadot: 3.5,
            ..Default::default()
        };
        let spec = OscillationSpec::from_degrees(Mode::Alpha, 3.16, 4.59, 0.0811, 1, 720).unwrap();
        let sched = alpha_mode_schedule(&spec, &FlightCondition::sdm(100.0)).unwrap();
        let s = sched.states[0];
        let osc = quasi_steady_loads(&p, &s).lift - 5.0 * spec.mean_incidence;
        assert!((osc - 0.06496).abs() < 2e-5, "{osc}");
        assert!((osc - 10.0 * 0.0811 * spec.body_amplitude).abs() < 1e-15);
    }

    #[test]
    fn superposition_up_to_offsets() {
        let p = sample_params();
        let a = state(0.05, 0.01, -0.02);
        let b = state(-0.03, 0.004, 0.007);
        let sum = state(0.02, 0.014, -0.013);
        let (la, lb, ls) = (
            quasi_steady_loads(&p, &a),
            quasi_steady_loads(&p, &b),
            quasi_steady_loads(&p, &sum),
        );
        assert!((ls.lift - (la.lift + lb.lift - p.cl0)).abs() < 1e-15);
        assert!((ls.drag - (la.drag + lb.drag - p.cd0)).abs() < 1e-15);
        assert!((ls.moment - (la.moment + lb.moment - p.cm0)).abs() < 1e-15);
    }

    #[test]
    fn induced_drag_adds_lift_squared() {
        let p = QuasiSteadyParams {
            cl_alpha: 5.0,
            cd0: 0.02,
            induced_drag_factor: Some(0.05),
            ..Default::default()
        };
        let l = quasi_steady_loads(&p, &state(0.1, 0.0, 0.0));
        assert!((l.drag - (0.02 + 0.05 * 0.25)).abs() < 1e-15);
    }

    #[test]
    fn mach_scaling() {
        let p = QuasiSteadyParams {
            cl_alpha: 5.0,
            cl0: 0.1,
            mach_scaling: true,
            ..Default::default()
        };
        let cond = FlightCondition::sdm(204.0).with_sound_speed(340.0);
        let scaled = p.at_condition(&cond).unwrap();
        assert!((scaled.cl_alpha - 5.0 / 0.8).abs() < 1e-12);
        assert_eq!(scaled.cl0, 0.1);
        assert_eq!(
            p.at_condition(&FlightCondition::sdm(50.0)).unwrap_err(),
            PlantError::MachUnavailable
        );
        let off = QuasiSteadyParams { mach_scaling: false, ..p };
        assert_eq!(off.at_condition(&cond).unwrap(), off);
    }

    #[test]
    fn validation() {
        assert!(sample_params().validate().is_ok());
        let bad = QuasiSteadyParams {
            induced_drag_factor: Some(-1.0),
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = QuasiSteadyParams {
            cm_q: f64::INFINITY,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
