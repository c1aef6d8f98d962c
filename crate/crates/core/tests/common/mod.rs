#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `J0, J1, Y0, Y1` by ascending power series. Accurate for `x` up to about 10.
pub fn bessel_series(x: f64) -> (f64, f64, f64, f64) {
    let h = 0.5 * x;
    let h2 = h * h;
    let (mut j0, mut j1) = (0.0, 0.0);
    let (mut y0_sum, mut y1_sum) = (0.0, 0.0);
    // term0 = (-1)^m h^{2m} / (m!)^2, term1 = (-1)^m h^{2m+1} / (m! (m+1)!)
    let mut term0 = 1.0;
    let mut term1 = h;
    let mut harmonic = 0.0; // H_m
    for m in 0..200 {
        if m > 0 {
            let mf = m as f64;
            term0 *= -h2 / (mf * mf);
            term1 *= -h2 / (mf * (mf + 1.0));
            harmonic += 1.0 / mf;
        }
        j0 += term0;
        j1 += term1;
        if m > 0 {
            y0_sum += -term0 * harmonic;
        }
        let h_next = harmonic + 1.0 / (m as f64 + 1.0);
        y1_sum += term1 * (harmonic + h_next);
        if term0.abs() < 1e-18 && term1.abs() < 1e-18 && m > 5 {
            break;
        }
    }
    let log_term = (h.ln() + EULER_GAMMA) * 2.0 / PI;
    let y0 = log_term * j0 + (2.0 / PI) * y0_sum;
    // Y1 = -2/(πx) + (2/π) ln(x/2) J1 - (1/π) Σ (-1)^m (ψ(m+1) + ψ(m+2)) h^{2m+1}/(m!(m+1)!)
    // with ψ(n+1) = -γ + H_n.
    let y1 = -2.0 / (PI * x) + (2.0 / PI) * h.ln() * j1
        - (1.0 / PI) * (y1_sum - 2.0 * EULER_GAMMA * j1);
    (j0, j1, y0, y1)
}

pub fn theodorsen_oracle(k: f64) -> Complex64 {
    let (j0, j1, y0, y1) = bessel_series(k);
    let h0 = Complex64::new(j0, -y0);
    let h1 = Complex64::new(j1, -y1);
    h1 / (h1 + Complex64::i() * h0)
}

/// Classical dimensional thin-airfoil loads for `α = e^{iωt}` with a plunge
/// `h` (positive down) written as `h = h_amp·e^{iωt}`. Semichord, density
/// and speed are all 1, so `k = ω`. Returns (C_L, C_m about the axis) with
/// lift over `q·c` and moment over `q·c²`.
pub fn classical_loads(k: f64, a: f64, c: Complex64, h_amp: Complex64) -> (Complex64, Complex64) {
    let i = Complex64::i();
    let (b, v, rho) = (1.0, 1.0, 1.0);
    let w = k;
    let alpha = Complex64::new(1.0, 0.0);
    let alpha_dot = i * w * alpha;
    let alpha_ddot = -w * w * alpha;
    let h_dot = i * w * h_amp;
    let h_ddot = -w * w * h_amp;
    let downwash = h_dot + v * alpha + b * (0.5 - a) * alpha_dot;
    let lift = PI * rho * b * b * (h_ddot + v * alpha_dot - b * a * alpha_ddot)
        + 2.0 * PI * rho * v * b * c * downwash;
    let moment = PI * rho * b * b * (b * a * h_ddot - v * b * (0.5 - a) * alpha_dot - b * b * (0.125 + a * a) * alpha_ddot)
        + 2.0 * PI * rho * v * b * b * (a + 0.5) * c * downwash;
    let q_inf = 0.5 * rho * v * v;
    let chord = 2.0 * b;
    (lift / (q_inf * chord), moment / (q_inf * chord * chord))
}

/// Pure pitch about `a`.
pub fn classical_pitch(k: f64, a: f64, c: Complex64) -> (Complex64, Complex64) {
    classical_loads(k, a, c, Complex64::new(0.0, 0.0))
}

/// Pitch with the stream rotated by the same angle: plunge velocity `ḣ = -V·θ`.
pub fn classical_qmode(k: f64, a: f64, c: Complex64) -> (Complex64, Complex64) {
    // ḣ = iω h = -θ  =>  h = -1/(iω) = i/ω
    classical_loads(k, a, c, Complex64::new(0.0, 1.0 / k))
}

pub fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a - b).abs() / b.abs()
    }
}
