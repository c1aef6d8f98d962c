//! eVTOL transition scenarios, the AGARD CT2 preset and case sweeps.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::identify::{
    extract, fit_channels, loop_metrics_phased, separate_rates, validate_fit, Channel,
    DerivativeSet, IdentifyError, LoopMetrics, QualityFlag,
};
use crate::kinematics::{schedule, FlightCondition, KinematicsError, Mode, OscillationSpec};
use crate::plants::{Loads, Plant, PlantError, QuasiSteadyParams};
use crate::series::CoefficientSeries;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionScenario {
    pub name: String,
    /// Height above ground, m.
    pub altitude: f64,
    /// m/s
    pub vertical_velocity: f64,
    /// m/s
    pub forward_velocity: f64,
    /// Replaces the plan's plant for this scenario only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plant: Option<Plant>,
}

impl TransitionScenario {
    pub fn new(name: &str, altitude: f64, vertical_velocity: f64, forward_velocity: f64) -> Self {
        Self {
            name: name.to_string(),
            altitude,
            vertical_velocity,
            forward_velocity,
            plant: None,
        }
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.name.trim().is_empty() {
            return Err(ScenarioError::InvalidScenario {
                name: self.name.clone(),
                reason: "name is empty".into(),
            });
        }
        if !(self.altitude.is_finite() && self.altitude >= 0.0) {
            return Err(ScenarioError::InvalidScenario {
                name: self.name.clone(),
                reason: format!("altitude must be finite and >= 0, got {}", self.altitude),
            });
        }
        if !(self.vertical_velocity.is_finite() && self.forward_velocity.is_finite()) {
            return Err(ScenarioError::InvalidScenario {
                name: self.name.clone(),
                reason: "velocities must be finite".into(),
            });
        }
        if self.forward_velocity < 0.0 {
            return Err(ScenarioError::InvalidScenario {
                name: self.name.clone(),
                reason: format!("forward velocity must be >= 0, got {}", self.forward_velocity),
            });
        }
        Ok(())
    }
}

/// The three snapshots of the UT24 transition corridor.
pub fn builtin_scenarios() -> Vec<TransitionScenario> {
    vec![
        TransitionScenario::new("transition-beginning", 15.0, 0.0, 0.0),
        TransitionScenario::new("mid-transition", 200.0, 2.5, 33.0),
        TransitionScenario::new("transition-end", 450.0, 0.0, 66.0),
    ]
}

pub const AGARD_CT2_MEAN_DEG: f64 = 3.16;
pub const AGARD_CT2_AMPLITUDE_DEG: f64 = 4.59;
pub const AGARD_CT2_REDUCED_FREQUENCY: f64 = 0.0811;
pub const AGARD_CT2_MACH: f64 = 0.6;

/// AGARD CT2 dynamic test condition. Chord and speed are left to the caller.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgardCt2 {
    pub spec: OscillationSpec,
    pub mach: f64,
}

impl AgardCt2 {
    /// Flight condition at speed `V` with the sound speed set for Mach 0.6.
    pub fn condition(&self, ref_chord: f64, freestream_speed: f64) -> FlightCondition {
        FlightCondition::new(freestream_speed, ref_chord).with_sound_speed(freestream_speed / self.mach)
    }
}

pub fn agard_ct2_preset() -> AgardCt2 {
    let spec = OscillationSpec::from_degrees(
        Mode::Alpha,
        AGARD_CT2_MEAN_DEG,
        AGARD_CT2_AMPLITUDE_DEG,
        AGARD_CT2_REDUCED_FREQUENCY,
        3,
        OscillationSpec::DEFAULT_SAMPLES_PER_CYCLE,
    )
    .expect("preset is valid");
    AgardCt2 {
        spec,
        mach: AGARD_CT2_MACH,
    }
}

/// Which velocity sets the nondimensionalizing speed `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpeedBasis {
    #[default]
    Forward,
    /// `√(u² + w²)`
    Total,
}

/// Oscillation settings shared by every scenario, angles in degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillationTemplate {
    pub modes: Vec<Mode>,
    pub mean_deg: f64,
    pub amplitude_deg: f64,
    pub reduced_frequency: f64,
    pub cycles: usize,
    pub samples_per_cycle: usize,
    /// `None` picks 2 for plants with a start-up transient and 0 otherwise.
    pub skip_cycles: Option<usize>,
}

impl OscillationTemplate {
    pub fn agard_ct2() -> Self {
        Self {
            modes: vec![Mode::Alpha, Mode::Q],
            mean_deg: AGARD_CT2_MEAN_DEG,
            amplitude_deg: AGARD_CT2_AMPLITUDE_DEG,
            reduced_frequency: AGARD_CT2_REDUCED_FREQUENCY,
            cycles: 3,
            samples_per_cycle: OscillationSpec::DEFAULT_SAMPLES_PER_CYCLE,
            skip_cycles: None,
        }
    }

    pub fn spec(&self, mode: Mode) -> Result<OscillationSpec, KinematicsError> {
        OscillationSpec::from_degrees(
            mode,
            self.mean_deg,
            self.amplitude_deg,
            self.reduced_frequency,
            self.cycles,
            self.samples_per_cycle,
        )
    }

    pub fn skip_for(&self, plant: &Plant) -> usize {
        self.skip_cycles
            .unwrap_or(if plant.has_transient() { 2 } else { 0 })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub scenarios: Vec<TransitionScenario>,
    pub oscillation: OscillationTemplate,
    /// Speed is replaced per scenario.
    pub condition: FlightCondition,
    pub plant: Plant,
    pub speed_basis: SpeedBasis,
    /// Add `atan(w/u)` to the mean incidence of each scenario.
    pub incidence_from_vertical_velocity: bool,
}

impl SweepPlan {
    pub fn new(scenarios: Vec<TransitionScenario>, condition: FlightCondition, plant: Plant) -> Self {
        Self {
            scenarios,
            oscillation: OscillationTemplate::agard_ct2(),
            condition,
            plant,
            speed_basis: SpeedBasis::Forward,
            incidence_from_vertical_velocity: false,
        }
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.scenarios.is_empty() {
            return Err(ScenarioError::EmptyPlan);
        }
        for s in &self.scenarios {
            s.validate()?;
            if let Some(p) = &s.plant {
                p.validate()?;
            }
        }
        if self.oscillation.modes.is_empty() {
            return Err(ScenarioError::InvalidTemplate("no oscillation modes".into()));
        }
        for &mode in &self.oscillation.modes {
            self.oscillation
                .spec(mode)
                .map_err(|e| ScenarioError::InvalidTemplate(e.to_string()))?;
        }
        self.plant.validate()?;
        Ok(())
    }

    pub fn speed(&self, s: &TransitionScenario) -> f64 {
        match self.speed_basis {
            SpeedBasis::Forward => s.forward_velocity,
            SpeedBasis::Total => s.forward_velocity.hypot(s.vertical_velocity),
        }
    }

    pub fn plant_for<'a>(&'a self, s: &'a TransitionScenario) -> &'a Plant {
        s.plant.as_ref().unwrap_or(&self.plant)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("sweep plan has no scenarios")]
    EmptyPlan,
    #[error("scenario '{name}': {reason}")]
    InvalidScenario { name: String, reason: String },
    #[error("oscillation template: {0}")]
    InvalidTemplate(String),
    #[error(transparent)]
    Plant(#[from] PlantError),
    #[error("trend table needs at least 2 OK scenarios, found {0}")]
    TooFewPoints(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScenarioStatus {
    Ok,
    StaticOnly,
    Failed(String),
}

impl fmt::Display for ScenarioStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioStatus::Ok => f.write_str("OK"),
            ScenarioStatus::StaticOnly => f.write_str("STATIC_ONLY"),
            ScenarioStatus::Failed(reason) => write!(f, "FAILED({reason})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub scenario: TransitionScenario,
    /// Nondimensionalizing speed actually used, m/s.
    pub speed: f64,
    pub reduced_frequency: f64,
    /// Mean incidence used, rad.
    pub mean_incidence: f64,
    pub status: ScenarioStatus,
    pub derivatives: Option<DerivativeSet>,
    /// Loads at the mean incidence with no motion.
    pub static_loads: Option<Loads>,
    /// Coefficient against α over the last α-mode cycle.
    pub loops: Vec<(Channel, LoopMetrics)>,
    pub flags: Vec<(Mode, Channel, QualityFlag)>,
    pub series: Vec<(Mode, CoefficientSeries)>,
    /// α over each generated series, rad.
    pub incidence: Vec<(Mode, Vec<f64>)>,
}

impl ScenarioResult {
    pub fn loop_for(&self, channel: Channel) -> Option<&LoopMetrics> {
        self.loops.iter().find(|(c, _)| *c == channel).map(|(_, m)| m)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub results: Vec<ScenarioResult>,
    /// Assumptions carried into the output.
    pub notes: Vec<String>,
}

impl SweepReport {
    pub fn ok_count(&self) -> usize {
        self.results
            .iter()
            .filter(|r| r.status == ScenarioStatus::Ok)
            .count()
    }
}

#[derive(Debug, Error)]
enum CaseError {
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error(transparent)]
    Plant(#[from] PlantError),
    #[error(transparent)]
    Identify(#[from] IdentifyError),
}

/// Run every scenario of the plan. Scenarios run in parallel; the report
/// keeps plan order and per-scenario failures never abort the sweep.
pub fn run_sweep(plan: &SweepPlan) -> Result<SweepReport, ScenarioError> {
    plan.validate()?;
    let results = plan
        .scenarios
        .par_iter()
        .map(|s| run_scenario(plan, s))
        .collect();
    let mut notes = vec!["altitude in metres above ground; not used in the identification".to_string()];
    notes.push(match plan.speed_basis {
        SpeedBasis::Forward => "V = forward velocity".to_string(),
        SpeedBasis::Total => "V = total velocity (forward and vertical)".to_string(),
    });
    if plan.incidence_from_vertical_velocity {
        notes.push("mean incidence includes atan(w/u)".to_string());
    }
    Ok(SweepReport { results, notes })
}

fn run_scenario(plan: &SweepPlan, s: &TransitionScenario) -> ScenarioResult {
    let plant = plan.plant_for(s);
    let speed = plan.speed(s);
    let mut mean_incidence = plan.oscillation.mean_deg.to_radians();
    if plan.incidence_from_vertical_velocity && s.forward_velocity > 0.0 {
        mean_incidence += (s.vertical_velocity / s.forward_velocity).atan();
    }
    let cond = plan.condition.with_speed(speed);
    let mut result = ScenarioResult {
        scenario: s.clone(),
        speed,
        reduced_frequency: plan.oscillation.reduced_frequency,
        mean_incidence,
        status: ScenarioStatus::Ok,
        derivatives: None,
        static_loads: None,
        loops: Vec::new(),
        flags: Vec::new(),
        series: Vec::new(),
        incidence: Vec::new(),
    };

    match plant.static_loads(mean_incidence, &cond) {
        Ok(l) => result.static_loads = Some(l),
        Err(e) => {
            result.status = ScenarioStatus::Failed(e.to_string());
            return result;
        }
    }
    if s.forward_velocity == 0.0 || speed == 0.0 {
        result.status = ScenarioStatus::StaticOnly;
        return result;
    }
    if let Err(e) = run_dynamic(plan, plant, &cond, mean_incidence, &mut result) {
        result.status = ScenarioStatus::Failed(e.to_string());
        result.derivatives = None;
        result.loops.clear();
    }
    result
}

fn run_dynamic(
    plan: &SweepPlan,
    plant: &Plant,
    cond: &FlightCondition,
    mean_incidence: f64,
    out: &mut ScenarioResult,
) -> Result<(), CaseError> {
    let skip = plan.oscillation.skip_for(plant);
    let runs: Vec<_> = plan
        .oscillation
        .modes
        .par_iter()
        .map(|&mode| -> Result<_, CaseError> {
            let mut spec = plan.oscillation.spec(mode)?;
            spec.mean_incidence = mean_incidence;
            let sched = schedule(&spec, cond)?;
            let series = plant.simulate(&sched)?;
            let alpha: Vec<f64> = sched.states.iter().map(|st| st.relative_aoa).collect();
            let fits = fit_channels(&series, None, skip)?;
            let set = extract(&fits, &spec)?.with_condition(
                Some(cond.freestream_speed),
                Some(cond.ref_chord),
                plant.tag(),
            );
            let flags: Vec<_> = fits
                .iter()
                .flat_map(|(ch, fit)| validate_fit(fit, &spec).into_iter().map(move |f| (mode, ch, f)))
                .collect();
            Ok((mode, series, alpha, set, flags))
        })
        .collect::<Result<_, _>>()?;

    let mut merged: Option<DerivativeSet> = None;
    let alpha_set = runs.iter().find(|r| r.0 == Mode::Alpha).map(|r| &r.3);
    let q_set = runs.iter().find(|r| r.0 == Mode::Q).map(|r| &r.3);
    if let (Some(a), Some(q)) = (alpha_set, q_set) {
        merged = Some(separate_rates(a, q)?);
    } else if let Some(set) = alpha_set.or(q_set) {
        merged = Some(set.clone());
    }

    for (mode, series, alpha, _, flags) in runs {
        if mode == Mode::Alpha {
            let phases = series.phases_at(series.metadata.omega.unwrap_or(1.0));
            for (channel, y) in series.channels() {
                let m = loop_metrics_phased(&phases, &alpha, y, skip)?;
                out.loops.push((channel, m));
            }
        }
        out.flags.extend(flags);
        out.incidence.push((mode, alpha));
        out.series.push((mode, series));
    }
    out.derivatives = merged;
    Ok(())
}

/// Which identified quantity a trend row tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrendQuantity {
    StaticSlope,
    RateDerivative,
    AoaRateDerivative,
    DampingSum,
    Trim,
}

impl TrendQuantity {
    pub const ALL: [TrendQuantity; 5] = [
        TrendQuantity::StaticSlope,
        TrendQuantity::RateDerivative,
        TrendQuantity::AoaRateDerivative,
        TrendQuantity::DampingSum,
        TrendQuantity::Trim,
    ];

    pub fn label(self, channel: Channel) -> String {
        let c = channel.symbol();
        match self {
            TrendQuantity::StaticSlope => format!("{c}α"),
            TrendQuantity::RateDerivative => format!("{c}q"),
            TrendQuantity::AoaRateDerivative => format!("{c}α̇"),
            TrendQuantity::DampingSum => format!("{c}q+{c}α̇"),
            TrendQuantity::Trim => format!("{c}0"),
        }
    }

    fn pick(self, d: &crate::identify::ChannelDerivatives) -> Option<f64> {
        match self {
            TrendQuantity::StaticSlope => d.static_slope,
            TrendQuantity::RateDerivative => d.rate_derivative,
            TrendQuantity::AoaRateDerivative => d.aoa_rate_derivative,
            TrendQuantity::DampingSum => d.damping_sum,
            TrendQuantity::Trim => d.trim_value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Constant,
    StrictlyIncreasing,
    StrictlyDecreasing,
    NonDecreasing,
    NonIncreasing,
    Mixed,
}

impl fmt::Display for Monotonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monotonicity::Constant => "constant",
            Monotonicity::StrictlyIncreasing => "strictly increasing",
            Monotonicity::StrictlyDecreasing => "strictly decreasing",
            Monotonicity::NonDecreasing => "non-decreasing",
            Monotonicity::NonIncreasing => "non-increasing",
            Monotonicity::Mixed => "mixed",
        })
    }
}

fn classify(deltas: &[f64]) -> Monotonicity {
    let pos = deltas.iter().filter(|d| **d > 0.0).count();
    let neg = deltas.iter().filter(|d| **d < 0.0).count();
    let n = deltas.len();
    match (pos, neg) {
        (0, 0) => Monotonicity::Constant,
        (p, 0) if p == n => Monotonicity::StrictlyIncreasing,
        (0, q) if q == n => Monotonicity::StrictlyDecreasing,
        (_, 0) => Monotonicity::NonDecreasing,
        (0, _) => Monotonicity::NonIncreasing,
        _ => Monotonicity::Mixed,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendRow {
    pub channel: Channel,
    pub quantity: TrendQuantity,
    /// Forward speeds, ascending.
    pub speeds: Vec<f64>,
    pub values: Vec<f64>,
    /// `values[i + 1] - values[i]`
    pub deltas: Vec<f64>,
    pub monotonicity: Monotonicity,
}

/// Derivatives against forward speed over the OK scenarios. Quantities that
/// are missing in any OK scenario are left out.
pub fn trend_table(report: &SweepReport) -> Result<Vec<TrendRow>, ScenarioError> {
    let mut ok: Vec<&ScenarioResult> = report
        .results
        .iter()
        .filter(|r| r.status == ScenarioStatus::Ok && r.derivatives.is_some())
        .collect();
    if ok.len() < 2 {
        return Err(ScenarioError::TooFewPoints(ok.len()));
    }
    ok.sort_by(|a, b| a.scenario.forward_velocity.total_cmp(&b.scenario.forward_velocity));
    let speeds: Vec<f64> = ok.iter().map(|r| r.scenario.forward_velocity).collect();

    let mut rows = Vec::new();
    for channel in Channel::ALL {
        for quantity in TrendQuantity::ALL {
            let values: Option<Vec<f64>> = ok
                .iter()
                .map(|r| {
                    r.derivatives
                        .as_ref()
                        .and_then(|d| d.get(channel))
                        .and_then(|d| quantity.pick(d))
                })
                .collect();
            let Some(values) = values else { continue };
            let deltas: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
            rows.push(TrendRow {
                channel,
                quantity,
                speeds: speeds.clone(),
                monotonicity: classify(&deltas),
                values,
                deltas,
            });
        }
    }
    Ok(rows)
}

/// Quasi-steady plant with every slope set, used by presets and tests.
pub fn example_quasi_steady() -> QuasiSteadyParams {
    QuasiSteadyParams {
        cl0: 0.1,
        cl_alpha: 5.0,
        cl_q: 6.0,
        cl_alphadot: 4.0,
        cd0: 0.02,
        cd_alpha: 0.3,
        cd_q: 0.1,
        cm0: -0.01,
        cm_alpha: -0.8,
        cm_q: -3.0,
        cm_alphadot: -1.5,
        ..Default::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plants::{FlatPlatePlant, IndicialPlant};

    fn plan(plant: Plant) -> SweepPlan {
        SweepPlan::new(builtin_scenarios(), FlightCondition::sdm(1.0), plant)
    }

    #[test]
    fn builtin_table() {
        let s = builtin_scenarios();
        assert_eq!(s.len(), 3);
        assert_eq!(s[0].forward_velocity, 0.0);
        assert_eq!((s[1].altitude, s[1].vertical_velocity, s[1].forward_velocity), (200.0, 2.5, 33.0));
        assert_eq!((s[2].altitude, s[2].vertical_velocity, s[2].forward_velocity), (450.0, 0.0, 66.0));
    }

    #[test]
    fn agard_preset() {
        let p = agard_ct2_preset();
        assert_eq!(p.spec.reduced_frequency, 0.0811);
        assert!((p.spec.mean_incidence - 0.05515).abs() < 5e-6);
        let cond = p.condition(0.2299, 100.0);
        assert!((cond.mach().unwrap() - 0.6).abs() < 1e-15);
        let omega = p.spec.omega(&cond).unwrap();
        assert!((omega - 70.55).abs() < 5e-3);
    }

    #[test]
    fn quasi_steady_statuses() {
        let report = run_sweep(&plan(Plant::QuasiSteady(example_quasi_steady()))).unwrap();
        let statuses: Vec<_> = report.results.iter().map(|r| r.status.clone()).collect();
        assert_eq!(statuses, [ScenarioStatus::StaticOnly, ScenarioStatus::Ok, ScenarioStatus::Ok]);
        assert!(report.results[0].derivatives.is_none());
        assert!(report.results[0].static_loads.is_some());
        let names: Vec<_> = report.results.iter().map(|r| r.scenario.name.as_str()).collect();
        assert_eq!(names, ["transition-beginning", "mid-transition", "transition-end"]);
    }

    #[test]
    fn injected_cmq_is_recovered() {
        let report = run_sweep(&plan(Plant::QuasiSteady(example_quasi_steady()))).unwrap();
        let m = report.results[1].derivatives.as_ref().unwrap().moment.unwrap();
        assert!((m.rate_derivative.unwrap() + 3.0).abs() < 1e-9);
        assert!((m.aoa_rate_derivative.unwrap() + 1.5).abs() < 1e-9);
    }

    #[test]
    fn failure_is_isolated() {
        let mut p = plan(Plant::QuasiSteady(example_quasi_steady()));
        // Mach scaling without a sound speed fails at speed only.
        p.scenarios[2].plant = Some(Plant::QuasiSteady(QuasiSteadyParams {
            mach_scaling: true,
            ..example_quasi_steady()
        }));
        let report = run_sweep(&p).unwrap();
        assert_eq!(report.results[1].status, ScenarioStatus::Ok);
        assert!(matches!(report.results[2].status, ScenarioStatus::Failed(_)));
    }

    #[test]
    fn speed_independent_trends_are_flat() {
        for plant in [
            Plant::QuasiSteady(example_quasi_steady()),
            Plant::FlatPlate(FlatPlatePlant::default()),
        ] {
            let rows = trend_table(&run_sweep(&plan(plant)).unwrap()).unwrap();
            assert!(!rows.is_empty());
            for row in rows {
                assert!(row.deltas.iter().all(|d| *d == 0.0), "{row:?}");
                assert_eq!(row.monotonicity, Monotonicity::Constant);
            }
        }
    }

    #[test]
    fn mach_scaling_raises_lift_slope() {
        let mut p = plan(Plant::QuasiSteady(QuasiSteadyParams {
            mach_scaling: true,
            ..example_quasi_steady()
        }));
        p.condition = p.condition.with_sound_speed(340.0);
        let rows = trend_table(&run_sweep(&p).unwrap()).unwrap();
        let row = rows
            .iter()
            .find(|r| r.channel == Channel::Lift && r.quantity == TrendQuantity::StaticSlope)
            .unwrap();
        assert_eq!(row.speeds, [33.0, 66.0]);
        assert_eq!(row.monotonicity, Monotonicity::StrictlyIncreasing);
        let expect = |v: f64| 5.0 / (1.0 - (v / 340.0f64).powi(2)).sqrt();
        assert!((row.values[0] - expect(33.0)).abs() < 1e-9);
        assert!((row.values[1] - expect(66.0)).abs() < 1e-9);
    }

    #[test]
    fn too_few_points() {
        let mut p = plan(Plant::QuasiSteady(example_quasi_steady()));
        p.scenarios.truncate(2);
        let report = run_sweep(&p).unwrap();
        assert_eq!(trend_table(&report).unwrap_err(), ScenarioError::TooFewPoints(1));
    }

    #[test]
    fn repeated_runs_are_identical() {
        let mut p = plan(Plant::Indicial(IndicialPlant::default()));
        p.oscillation.cycles = 4;
        p.oscillation.samples_per_cycle = 64;
        let a = run_sweep(&p).unwrap();
        let b = run_sweep(&p).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_plan_rejected() {
        let mut p = plan(Plant::QuasiSteady(example_quasi_steady()));
        p.scenarios.clear();
        assert_eq!(run_sweep(&p).unwrap_err(), ScenarioError::EmptyPlan);
    }
}
