//! Forced-oscillation identification of longitudinal static and dynamic
//! stability derivatives.
//!
//! A prescribed pitch motion ([`kinematics`]) drives a surrogate aerodynamic
//! plant ([`plants`]); the resulting coefficient histories are regressed onto
//! their first harmonic and converted to derivatives ([`identify`]).
//! [`scenarios`] runs the eVTOL transition cases and [`interface`] holds the
//! config, file formats and command line.

pub mod identify;
pub mod interface;
pub mod kinematics;
pub mod plants;
pub mod scenarios;
pub mod series;
pub mod validation;

pub use identify::{DerivativeSet, HarmonicFit, IdentifyError, LoopMetrics, Orientation};
pub use kinematics::{FlightCondition, Mode, OscillationSpec, Schedule};
pub use plants::{Plant, PlantError};
pub use scenarios::{run_sweep, SweepPlan, SweepReport};
pub use series::{Channel, CoefficientSeries};
