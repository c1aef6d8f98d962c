//! Bessel functions of the first and second kind, orders 0 and 1, for
//! positive real arguments.
//!
//! Polynomial approximations of Abramowitz & Stegun 9.4.1–9.4.6. Absolute
//! error is below 1e-7 everywhere (relative below ~1e-7 for the singular
//! `Y0`, `Y1` near zero).

use std::f64::consts::FRAC_2_PI;

fn poly(coeffs: &[f64], z: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c)
}

const J0_SMALL: [f64; 7] = [
    1.0, -2.2499997, 1.2656208, -0.3163866, 0.0444479, -0.0039444, 0.0002100,
];
const Y0_SMALL: [f64; 7] = [
    0.36746691, 0.60559366, -0.74350384, 0.25300117, -0.04261214, 0.00427916, -0.00024846,
];
const J1_SMALL: [f64; 7] = [
    0.5, -0.56249985, 0.21093573, -0.03954289, 0.00443319, -0.00031761, 0.00001109,
];
// Leading term is -2/π; the tabulated -0.6366198 loses ~1e-7 relative.
const Y1_SMALL: [f64; 7] = [
    -FRAC_2_PI, 0.2212091, 2.1682709, -1.3164827, 0.3123951, -0.0400976, 0.0027873,
];

const F0: [f64; 7] = [
    0.79788456, -0.00000077, -0.00552740, -0.00009512, 0.00137237, -0.00072805, 0.00014476,
];
#[allow(clippy::approx_constant)]
const THETA0: [f64; 7] = [
    -0.78539816, -0.04166397, -0.00003954, 0.00262573, -0.00054125, -0.00029333, 0.00013558,
];
const F1: [f64; 7] = [
    0.79788456, 0.00000156, 0.01659667, 0.00017105, -0.00249511, 0.00113653, -0.00020033,
];
const THETA1: [f64; 7] = [
    -2.35619449, 0.12499612, 0.00005650, -0.00637879, 0.00074348, 0.00079824, -0.00029166,
];

/// `(J0, Y0, J1, Y1)` at `x > 0`.
pub(crate) fn j0_y0_j1_y1(x: f64) -> (f64, f64, f64, f64) {
    debug_assert!(x > 0.0);
    if x <= 3.0 {
        let z = (x / 3.0) * (x / 3.0);
        let log_term = FRAC_2_PI * (0.5 * x).ln();
        let j0 = poly(&J0_SMALL, z);
        let y0 = log_term * j0 + poly(&Y0_SMALL, z);
        let j1 = x * poly(&J1_SMALL, z);
        let y1 = log_term * j1 + poly(&Y1_SMALL, z) / x;
        (j0, y0, j1, y1)
    } else {
        let u = 3.0 / x;
        let scale = x.sqrt().recip();
        let f0 = poly(&F0, u);
        let t0 = x + poly(&THETA0, u);
        let f1 = poly(&F1, u);
        let t1 = x + poly(&THETA1, u);
        (
            scale * f0 * t0.cos(),
            scale * f0 * t0.sin(),
            scale * f1 * t1.cos(),
            scale * f1 * t1.sin(),
        )
    }
}
