//! Frequency-domain thin-airfoil loads for harmonic pitch (α-mode) and for
//! pitch with compensating flow rotation (q-mode).
//!
//! Complex amplitudes are per radian of body-pitch amplitude: for a motion
//! `θ = α_B sin(ωt)` the coefficient response is `α_B·Im(H e^{iωt})`, so
//! `Re H` is the in-phase slope and `Im H / k` the out-of-phase derivative.
//! Lift is normalized by `q∞·c`, moment by `q∞·c²` about the pitch axis.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{bessel, PlantError};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Two-pole exponential approximation of the Wagner function,
/// `φ(s) = 1 − A1·e^{−b1·s} − A2·e^{−b2·s}`.
pub const JONES_A1: f64 = 0.165;
pub const JONES_B1: f64 = 0.0455;
pub const JONES_A2: f64 = 0.335;
pub const JONES_B2: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TheodorsenConfig {
    /// Pitch axis in semichords aft of midchord (`-0.5` is the quarter chord).
    pub pitch_axis: f64,
}

impl Default for TheodorsenConfig {
    fn default() -> Self {
        Self { pitch_axis: -0.5 }
    }
}

impl TheodorsenConfig {
    pub fn validate(&self) -> Result<(), PlantError> {
        if self.pitch_axis.is_finite() && self.pitch_axis.abs() <= 2.0 {
            Ok(())
        } else {
            Err(PlantError::InvalidParameter {
                field: "pitch_axis",
                reason: format!("must be finite with |a| <= 2, got {}", self.pitch_axis),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexLoads {
    pub lift: Complex64,
    pub moment: Complex64,
}

/// Lift-deficiency function used to build the circulatory loads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    /// Exact Hankel-function form.
    #[default]
    Theodorsen,
    /// Rational form matching the indicial plant.
    Jones,
}

impl Kernel {
    pub fn eval(self, k: f64) -> Result<Complex64, PlantError> {
        match self {
            Kernel::Theodorsen => theodorsen_c(k),
            Kernel::Jones => {
                check_k(k)?;
                Ok(jones_c(k))
            }
        }
    }
}

fn check_k(k: f64) -> Result<(), PlantError> {
    if k.is_finite() && k >= 0.0 {
        Ok(())
    } else {
        Err(PlantError::DomainError(k))
    }
}

/// `C(k) = H1(k) / (H1(k) + i·H0(k))` with `Hn = Jn − i·Yn`.
pub fn theodorsen_c(k: f64) -> Result<Complex64, PlantError> {
    check_k(k)?;
    if k == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let (j0, y0, j1, y1) = bessel::j0_y0_j1_y1(k);
    let h0 = Complex64::new(j0, -y0);
    let h1 = Complex64::new(j1, -y1);
    Ok(h1 / (h1 + I * h0))
}

/// `C_J(k) = 1 − A1·ik/(ik + b1) − A2·ik/(ik + b2)`.
pub fn jones_c(k: f64) -> Complex64 {
    let ik = I * k;
    Complex64::new(1.0, 0.0) - JONES_A1 * ik / (ik + JONES_B1) - JONES_A2 * ik / (ik + JONES_B2)
}

pub fn wagner_phi(s: f64) -> f64 {
    1.0 - JONES_A1 * (-JONES_B1 * s).exp() - JONES_A2 * (-JONES_B2 * s).exp()
}

/// Pure pitch about axis `a` with lift-deficiency value `c`.
pub fn pitch_loads(k: f64, cfg: &TheodorsenConfig, c: Complex64) -> ComplexLoads {
    let a = cfg.pitch_axis;
    let ik = I * k;
    let circ = 1.0 + ik * (0.5 - a);
    let lift = 2.0 * PI * c * circ + PI * k * (I + a * k);
    let moment = PI * (a + 0.5) * c * circ
        + 0.5 * PI * ((0.125 + a * a) * k * k - ik * (0.5 - a));
    ComplexLoads { lift, moment }
}

/// Pitch with the flow rotating in step (equivalent plunge `ḣ/V = −θ`), so
/// only pitch-rate and apparent-mass terms remain.
pub fn qmode_loads(k: f64, cfg: &TheodorsenConfig, c: Complex64) -> ComplexLoads {
    let a = cfg.pitch_axis;
    let ik = I * k;
    let lift = PI * a * k * k + 2.0 * PI * c * ik * (0.5 - a);
    let moment = PI * (a + 0.5) * (0.5 - a) * c * ik + 0.5 * PI * (0.125 + a * a) * k * k
        - 0.25 * PI * ik;
    ComplexLoads { lift, moment }
}

pub fn theodorsen_pitch_loads(k: f64, cfg: &TheodorsenConfig) -> Result<ComplexLoads, PlantError> {
    Ok(pitch_loads(k, cfg, theodorsen_c(k)?))
}

pub fn theodorsen_qmode_loads(k: f64, cfg: &TheodorsenConfig) -> Result<ComplexLoads, PlantError> {
    Ok(qmode_loads(k, cfg, theodorsen_c(k)?))
}
