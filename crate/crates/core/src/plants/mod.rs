//! Surrogate unsteady-aerodynamic plants with known ground truth.
//!
//! - [`QuasiSteadyParams`]: linear derivative model, exactly in the span of
//!   the harmonic regression.
//! - [`FlatPlatePlant`]: frequency-domain thin-airfoil response synthesized
//!   directly from the complex load amplitudes.
//! - [`IndicialPlant`]: time-marching Wagner-function model that produces
//!   lagging hysteresis loops and a start-up transient.

mod bessel;
pub mod indicial;
pub mod quasi_steady;
pub mod theodorsen;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kinematics::{FlightCondition, KinematicsError, Mode, MotionState, Schedule};
use crate::series::{is_uniform, CoefficientSeries, SeriesMetadata};

pub use indicial::{effective_aoa, indicial_step, IndicialState};
pub use quasi_steady::{quasi_steady_loads, QuasiSteadyParams};
pub use theodorsen::{
    jones_c, pitch_loads, qmode_loads, theodorsen_c, theodorsen_pitch_loads,
    theodorsen_qmode_loads, wagner_phi, ComplexLoads, Kernel, TheodorsenConfig,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlantError {
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error("reduced frequency {0} outside the domain k >= 0")]
    DomainError(f64),
    #[error("Mach scaling requested but the condition has no sound speed")]
    MachUnavailable,
    #[error("invalid plant parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },
    #[error("empty motion schedule")]
    EmptySchedule,
}

/// One `(C_L, C_D, C_m)` sample.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Loads {
    pub lift: f64,
    pub drag: f64,
    pub moment: f64,
}

/// Quasi-steady drag model shared by the flat-plate and indicial plants.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DragPolar {
    #[serde(default)]
    pub cd0: f64,
    #[serde(default)]
    pub cd_alpha: f64,
    #[serde(default)]
    pub cd_q: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub induced_drag_factor: Option<f64>,
}

impl DragPolar {
    pub fn eval(&self, s: &MotionState, lift: f64) -> f64 {
        let mut cd = self.cd0 + self.cd_alpha * s.relative_aoa + self.cd_q * s.nondim_pitch_rate;
        if let Some(kappa) = self.induced_drag_factor {
            cd += kappa * lift * lift;
        }
        cd
    }

    pub fn validate(&self) -> Result<(), PlantError> {
        for (field, v) in [("cd0", self.cd0), ("cd_alpha", self.cd_alpha), ("cd_q", self.cd_q)] {
            if !v.is_finite() {
                return Err(PlantError::InvalidParameter {
                    field,
                    reason: format!("must be finite, got {v}"),
                });
            }
        }
        match self.induced_drag_factor {
            Some(kappa) if !(kappa.is_finite() && kappa >= 0.0) => Err(PlantError::InvalidParameter {
                field: "induced_drag_factor",
                reason: format!("must be finite and >= 0, got {kappa}"),
            }),
            _ => Ok(()),
        }
    }
}

/// Thin airfoil in steady harmonic state: lift slope 2π about the mean,
/// oscillatory part from the complex load amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlatPlatePlant {
    #[serde(rename = "pitch_axis", default)]
    pub config: TheodorsenConfig,
    #[serde(default)]
    pub kernel: Kernel,
    #[serde(default)]
    pub drag: DragPolar,
}

impl FlatPlatePlant {
    pub fn complex_loads(&self, mode: Mode, k: f64) -> Result<ComplexLoads, PlantError> {
        let c = self.kernel.eval(k)?;
        Ok(match mode {
            Mode::Alpha => pitch_loads(k, &self.config, c),
            Mode::Q => qmode_loads(k, &self.config, c),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndicialPlant {
    #[serde(rename = "pitch_axis", default)]
    pub config: TheodorsenConfig,
    #[serde(default)]
    pub drag: DragPolar,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Plant {
    QuasiSteady(QuasiSteadyParams),
    FlatPlate(FlatPlatePlant),
    Indicial(IndicialPlant),
}

impl Plant {
    pub fn tag(&self) -> &'static str {
        match self {
            Plant::QuasiSteady(_) => "quasi_steady",
            Plant::FlatPlate(_) => "flat_plate",
            Plant::Indicial(_) => "indicial",
        }
    }

    /// Whether the output carries a start-up transient the identifier must skip.
    pub fn has_transient(&self) -> bool {
        matches!(self, Plant::Indicial(_))
    }

    pub fn validate(&self) -> Result<(), PlantError> {
        match self {
            Plant::QuasiSteady(p) => p.validate(),
            Plant::FlatPlate(p) => {
                p.config.validate()?;
                p.drag.validate()
            }
            Plant::Indicial(p) => {
                p.config.validate()?;
                p.drag.validate()
            }
        }
    }

    /// Loads with the body held at incidence `alpha` (no motion). Valid at
    /// zero freestream speed.
    pub fn static_loads(&self, alpha: f64, cond: &FlightCondition) -> Result<Loads, PlantError> {
        self.validate()?;
        let s = MotionState::at_rest(alpha);
        Ok(match self {
            Plant::QuasiSteady(p) => {
                let p = if cond.freestream_speed > 0.0 { p.at_condition(cond)? } else { *p };
                quasi_steady_loads(&p, &s)
            }
            Plant::FlatPlate(FlatPlatePlant { config, drag, .. })
            | Plant::Indicial(IndicialPlant { config, drag }) => {
                let lift = 2.0 * PI * alpha;
                Loads {
                    lift,
                    drag: drag.eval(&s, lift),
                    moment: 0.5 * (config.pitch_axis + 0.5) * lift,
                }
            }
        })
    }

    pub fn simulate(&self, schedule: &Schedule) -> Result<CoefficientSeries, PlantError> {
        simulate(self, schedule)
    }
}

/// One coefficient sample per motion state. The indicial plant starts from
/// the reset state and keeps its transient.
pub fn simulate(plant: &Plant, schedule: &Schedule) -> Result<CoefficientSeries, PlantError> {
    if schedule.states.is_empty() {
        return Err(PlantError::EmptySchedule);
    }
    plant.validate()?;
    let cond = &schedule.condition;
    cond.validate()?;

    let loads: Vec<Loads> = match plant {
        Plant::QuasiSteady(p) => {
            let p = p.at_condition(cond)?;
            schedule.states.iter().map(|s| quasi_steady_loads(&p, s)).collect()
        }
        Plant::FlatPlate(p) => flat_plate_loads(p, schedule)?,
        Plant::Indicial(p) => {
            let mut state = IndicialState::reset();
            let mut prev_time = None;
            let mut out = Vec::with_capacity(schedule.len());
            for s in &schedule.states {
                let dt = prev_time.map_or(0.0, |t0| s.time - t0);
                let (lift, moment, next) = indicial_step(state, s, dt, cond, &p.config)?;
                state = next;
                prev_time = Some(s.time);
                out.push(Loads {
                    lift,
                    drag: p.drag.eval(s, lift),
                    moment,
                });
            }
            out
        }
    };

    let times = schedule.times();
    let uniform = is_uniform(&times);
    Ok(CoefficientSeries {
        phases: Some(schedule.states.iter().map(|s| s.phase).collect()),
        lift: Some(loads.iter().map(|l| l.lift).collect()),
        drag: Some(loads.iter().map(|l| l.drag).collect()),
        moment: Some(loads.iter().map(|l| l.moment).collect()),
        times,
        metadata: SeriesMetadata {
            spec: Some(schedule.spec),
            condition: Some(*cond),
            omega: Some(schedule.omega),
            source: plant.tag().to_string(),
            uniform,
        },
    })
}

fn flat_plate_loads(p: &FlatPlatePlant, schedule: &Schedule) -> Result<Vec<Loads>, PlantError> {
    let spec = &schedule.spec;
    let h = p.complex_loads(spec.mode, spec.reduced_frequency)?;
    let amp = spec.body_amplitude;
    let mean_lift = 2.0 * PI * spec.mean_incidence;
    let mean_moment = 0.5 * (p.config.pitch_axis + 0.5) * mean_lift;
    // α_B·Im(H·e^{iψ}) = α_B·(Re H·sin ψ + Im H·cos ψ)
    let response = |hc: Complex64, sin: f64, cos: f64| amp * (hc.re * sin + hc.im * cos);
    Ok(schedule
        .states
        .iter()
        .map(|s| {
            let (sin, cos) = s.phase.sin_cos();
            let lift = mean_lift + response(h.lift, sin, cos);
            let moment = mean_moment + response(h.moment, sin, cos);
            Loads {
                lift,
                drag: p.drag.eval(s, lift),
                moment,
            }
        })
        .collect())
}
