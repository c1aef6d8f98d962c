mod common;

use std::f64::consts::PI;

use common::{classical_pitch, classical_qmode, rel, theodorsen_oracle};
use forcedosc::kinematics::{schedule, FlightCondition, Mode, OscillationSpec};
use forcedosc::plants::{
    jones_c, pitch_loads, qmode_loads, simulate, theodorsen_c, theodorsen_pitch_loads,
    theodorsen_qmode_loads, wagner_phi, FlatPlatePlant, IndicialPlant, Kernel, Plant,
    TheodorsenConfig,
};
use forcedosc::identify::fit_channels;
use forcedosc::Channel;
use num_complex::Complex64;

#[test]
fn bessel_oracle_reference_points() {
    // Tabulated values: J0(1), J1(1), Y0(1), Y1(1).
    let (j0, j1, y0, y1) = common::bessel_series(1.0);
    assert!((j0 - 0.765_197_686_557_966_6).abs() < 1e-14);
    assert!((j1 - 0.440_050_585_744_933_5).abs() < 1e-14);
    assert!((y0 - 0.088_256_964_215_676_96).abs() < 1e-13);
    assert!((y1 + 0.781_212_821_300_288_7).abs() < 1e-13);
}

#[test]
fn theodorsen_matches_series_oracle() {
    let c = theodorsen_c(0.1).unwrap();
    let oracle = theodorsen_oracle(0.1);
    assert!((oracle - Complex64::new(0.832, -0.172)).norm() < 1e-3);
    assert!((c - oracle).norm() < 5e-3);
    for i in 0..=60 {
        let k = 10f64.powf(-2.0 + 3.0 * i as f64 / 60.0);
        let d = (theodorsen_c(k).unwrap() - theodorsen_oracle(k)).norm();
        assert!(d < 1e-6, "k = {k}: {d}");
    }
}

#[test]
fn jones_is_transform_of_wagner() {
    // C_J(k) = ik ∫0^∞ φ(s) e^{-iks} ds, integrated past the slow pole.
    for k in [0.05, 0.0811, 0.2, 0.7] {
        let ds = 1e-3;
        let n = (400.0 / ds) as usize;
        let i = Complex64::i();
        let mut integral = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let s = (j as f64 + 0.5) * ds;
            // Subtract the step part, whose transform is 1/(ik).
            integral += (wagner_phi(s) - 1.0) * (-i * k * s).exp() * ds;
        }
        let cj = 1.0 + i * k * integral;
        assert!((cj - jones_c(k)).norm() < 1e-5, "k = {k}: {cj} vs {}", jones_c(k));
    }
}

#[test]
fn pitch_loads_match_classical_form() {
    for a in [-0.5, 0.0, 0.3] {
        let cfg = TheodorsenConfig { pitch_axis: a };
        for k in [0.01, 0.0811, 0.5, 2.0] {
            let c = theodorsen_oracle(k);
            let (cl, cm) = classical_pitch(k, a, c);
            let got = pitch_loads(k, &cfg, c);
            assert!((got.lift - cl).norm() < 1e-12 * (1.0 + cl.norm()), "a={a} k={k}");
            assert!((got.moment - cm).norm() < 1e-12 * (1.0 + cm.norm()), "a={a} k={k}");
            let (cl, cm) = classical_qmode(k, a, c);
            let got = qmode_loads(k, &cfg, c);
            assert!((got.lift - cl).norm() < 1e-12 * (1.0 + cl.norm()), "q a={a} k={k}");
            assert!((got.moment - cm).norm() < 1e-12 * (1.0 + cm.norm()), "q a={a} k={k}");
        }
    }
}

#[test]
fn quasi_steady_limit_of_pitch_loads() {
    let cfg = TheodorsenConfig::default();
    let h = theodorsen_pitch_loads(1e-6, &cfg).unwrap();
    assert!((h.lift.re - 2.0 * PI).abs() < 1e-4);
    // Quarter-chord axis carries no static moment.
    assert!(h.moment.re.abs() < 1e-4);
    let q = theodorsen_qmode_loads(1e-6, &cfg).unwrap();
    assert!(q.lift.norm() < 1e-4);
}

#[test]
fn flat_plate_series_carries_complex_amplitude() {
    let cond = FlightCondition::sdm(50.0);
    for kernel in [Kernel::Theodorsen, Kernel::Jones] {
        let plant = FlatPlatePlant { kernel, ..Default::default() };
        for mode in [Mode::Alpha, Mode::Q] {
            let spec = OscillationSpec::from_degrees(mode, 2.0, 3.0, 0.15, 2, 64).unwrap();
            let series = simulate(&Plant::FlatPlate(plant), &schedule(&spec, &cond).unwrap()).unwrap();
            let fits = fit_channels(&series, None, 0).unwrap();
            let h = plant.complex_loads(mode, 0.15).unwrap();
            let lift = fits.get(Channel::Lift).unwrap();
            let amp = spec.body_amplitude;
            assert!((lift.in_phase / amp - h.lift.re).abs() < 1e-12);
            assert!((lift.out_phase / amp - h.lift.im).abs() < 1e-12);
            assert!(rel(lift.mean, 2.0 * PI * spec.mean_incidence) < 1e-12);
        }
    }
}

#[test]
fn indicial_step_follows_wagner() {
    // A step in α: lift rises from half to full steady value along φ(s).
    let cond = FlightCondition::new(10.0, 1.0);
    let alpha = 0.01;
    let spec = OscillationSpec::alpha_mode(alpha, 1e-9, 0.001, 1, 4000).unwrap();
    let sched = schedule(&spec, &cond).unwrap();
    let series = simulate(&Plant::Indicial(IndicialPlant::default()), &sched).unwrap();
    let lift = series.lift.unwrap();
    for i in [0usize, 100, 1000, 3999] {
        let s = 2.0 * cond.freestream_speed * sched.states[i].time / cond.ref_chord;
        let want = 2.0 * PI * alpha * wagner_phi(s);
        assert!((lift[i] - want).abs() < 1e-3 * 2.0 * PI * alpha, "i = {i}");
    }
}
