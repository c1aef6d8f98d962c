//! Built-in self-checks run by `forcedosc validate`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::identify::{extract, fit_channels, loop_metrics_phased, separate_rates, Channel, Orientation};
use crate::interface::{parse_monitor_table, write_series};
use crate::kinematics::{schedule, FlightCondition, Mode, OscillationSpec};
use crate::plants::{
    jones_c, pitch_loads, simulate, theodorsen_c, IndicialPlant, Plant, TheodorsenConfig,
};
use crate::scenarios::{agard_ct2_preset, example_quasi_steady};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> CheckResult {
    CheckResult { name, passed, detail }
}

/// Reference value of `C(0.1)` from a Bessel power-series evaluation.
pub const THEODORSEN_AT_0_1: Complex64 = Complex64::new(0.8319241, -0.1723022);

pub fn theodorsen_limits() -> CheckResult {
    let c0 = theodorsen_c(0.0).expect("k = 0 is in range");
    let c100 = theodorsen_c(100.0).expect("k = 100 is in range");
    let c01 = theodorsen_c(0.1).expect("k = 0.1 is in range");
    let e0 = (c0 - 1.0).norm();
    let e100 = (c100 - 0.5).norm();
    let e01 = (c01 - THEODORSEN_AT_0_1).norm();
    check(
        "theodorsen limits",
        e0 == 0.0 && e100 < 0.01 && e01 < 5e-3,
        format!("|C(0)-1| = {e0:.1e}, |C(100)-0.5| = {e100:.2e}, |C(0.1)-ref| = {e01:.2e}"),
    )
}

pub fn jones_cross_check() -> CheckResult {
    let (mut re, mut im) = (0.0f64, 0.0f64);
    let n = 400;
    for i in 0..=n {
        let k = 10f64.powf(-2.0 + 2.0 * i as f64 / n as f64);
        let d = jones_c(k) - theodorsen_c(k).expect("k in range");
        re = re.max(d.re.abs());
        im = im.max(d.im.abs());
    }
    check(
        "jones cross-check",
        re <= 0.03 && im <= 0.03,
        format!("max per-part deviation over k in [0.01, 1]: re {re:.4}, im {im:.4}"),
    )
}

/// Last-cycle complex amplitudes of the indicial plant against the
/// frequency-domain loads built with the same exponential kernel.
pub fn indicial_consistency() -> CheckResult {
    let cfg = TheodorsenConfig::default();
    let plant = Plant::Indicial(IndicialPlant::default());
    let cond = FlightCondition::sdm(100.0);
    let mut worst = 0.0f64;
    let mut detail = Vec::new();
    for k in [0.05, 0.0811, 0.2] {
        let result = (|| -> Result<f64, String> {
            let spec = OscillationSpec::from_degrees(Mode::Alpha, 3.16, 4.59, k, 22, 720).map_err(|e| e.to_string())?;
            let series = simulate(&plant, &schedule(&spec, &cond).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let fits = fit_channels(&series, None, 21).map_err(|e| e.to_string())?;
            let want = pitch_loads(k, &cfg, jones_c(k));
            let amp = spec.body_amplitude;
            let rel = |ch: Channel, h: Complex64| {
                let f = fits.get(ch).expect("channel fitted");
                (Complex64::new(f.in_phase, f.out_phase) / amp - h).norm() / h.norm()
            };
            Ok(rel(Channel::Lift, want.lift).max(rel(Channel::Moment, want.moment)))
        })();
        match result {
            Ok(e) => {
                worst = worst.max(e);
                detail.push(format!("k={k}: {e:.2e}"));
            }
            Err(e) => {
                worst = f64::INFINITY;
                detail.push(format!("k={k}: {e}"));
            }
        }
    }
    check("indicial consistency", worst <= 0.01, detail.join(", "))
}

pub fn round_trip() -> CheckResult {
    let params = example_quasi_steady();
    let plant = Plant::QuasiSteady(params);
    let preset = agard_ct2_preset();
    let cond = preset.condition(0.2299, 100.0);
    let run = |mode: Mode| -> Result<_, String> {
        let spec = preset.spec.with_mode(mode);
        let series = simulate(&plant, &schedule(&spec, &cond).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        extract(&fit_channels(&series, None, 0).map_err(|e| e.to_string())?, &spec).map_err(|e| e.to_string())
    };
    let merged = run(Mode::Alpha)
        .and_then(|a| run(Mode::Q).map(|q| (a, q)))
        .and_then(|(a, q)| separate_rates(&a, &q).map_err(|e| e.to_string()));
    let set = match merged {
        Ok(s) => s,
        Err(e) => return check("round trip", false, e),
    };
    let pairs = [
        (set.lift.and_then(|d| d.static_slope), params.cl_alpha),
        (set.lift.and_then(|d| d.rate_derivative), params.cl_q),
        (set.lift.and_then(|d| d.aoa_rate_derivative), params.cl_alphadot),
        (set.moment.and_then(|d| d.static_slope), params.cm_alpha),
        (set.moment.and_then(|d| d.rate_derivative), params.cm_q),
        (set.moment.and_then(|d| d.aoa_rate_derivative), params.cm_alphadot),
        (set.drag.and_then(|d| d.rate_derivative), params.cd_q),
    ];
    let worst = pairs
        .iter()
        .map(|(got, want)| got.map_or(f64::INFINITY, |g| (g - want).abs() / want.abs()))
        .fold(0.0, f64::max);
    check("round trip", worst <= 1e-9, format!("worst relative error {worst:.1e}"))
}

pub fn loop_area_identity() -> CheckResult {
    let amp = 4.59f64.to_radians();
    let mut worst = 0.0f64;
    let mut orientation_ok = true;
    for (a, b) in [(0.4, -0.02), (-0.3, 0.05), (1.0, -1e-3), (0.0, 0.2)] {
        let phases: Vec<f64> = (0..720).map(|i| 2.0 * PI * i as f64 / 720.0).collect();
        let x: Vec<f64> = phases.iter().map(|p| amp * p.sin()).collect();
        let y: Vec<f64> = phases.iter().map(|p| a * p.sin() + b * p.cos()).collect();
        match loop_metrics_phased(&phases, &x, &y, 0) {
            Ok(m) => {
                let want = PI * amp * b;
                worst = worst.max((m.signed_area - want).abs() / want.abs());
                orientation_ok &= (m.orientation == Orientation::Clockwise) == (b < 0.0);
            }
            Err(_) => worst = f64::INFINITY,
        }
    }
    check(
        "loop area",
        worst <= 1e-3 && orientation_ok,
        format!("worst relative error {worst:.1e}, orientation {}", if orientation_ok { "ok" } else { "wrong" }),
    )
}

pub fn series_round_trip() -> CheckResult {
    let plant = Plant::Indicial(IndicialPlant::default());
    let spec = agard_ct2_preset().spec;
    let outcome = schedule(&spec, &FlightCondition::sdm(33.0))
        .map_err(|e| e.to_string())
        .and_then(|s| simulate(&plant, &s).map_err(|e| e.to_string()))
        .and_then(|series| {
            let text = write_series(&series);
            let back = parse_monitor_table(&text).map_err(|e| e.to_string())?;
            let same = back.times == series.times
                && back.lift == series.lift
                && back.drag == series.drag
                && back.moment == series.moment
                && write_series(&back) == text;
            Ok(same)
        });
    match outcome {
        Ok(same) => check("series round trip", same, format!("{} samples", spec.total_samples())),
        Err(e) => check("series round trip", false, e),
    }
}

pub fn run_oracle_suite() -> Vec<CheckResult> {
    vec![
        theodorsen_limits(),
        jones_cross_check(),
        indicial_consistency(),
        round_trip(),
        loop_area_identity(),
        series_round_trip(),
    ]
}
