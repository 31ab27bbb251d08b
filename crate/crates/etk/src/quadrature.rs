//! Adaptive Gauss–Kronrod quadrature (7–15 point rule) for the radial
//! matrix elements that lack a closed form.

use crate::error::{Error, Result};

// K15 abscissae (positive half) and weights, with the embedded G7 rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

/// One Kronrod step: returns (integral, error estimate).
fn kronrod_step<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    for j in 0..7 {
        let x = half * XGK[j];
        let fsum = f(center - x) + f(center + x);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }
    kronrod *= half;
    gauss *= half;
    (kronrod, (kronrod - gauss).abs())
}

/// Integrate `f` over [a, b] by adaptive bisection of the 7–15 rule until the
/// summed error estimate drops below `rel_tol` of the accumulated integral
/// (or `abs_tol` in absolute terms).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<f64> {
    const MAX_SEGMENTS: usize = 4000;

    let mut stack = vec![(a, b, 0u32)];
    let mut total: f64 = 0.0;
    let mut used = 0;
    while let Some((lo, hi, depth)) = stack.pop() {
        used += 1;
        if used > MAX_SEGMENTS {
            return Err(Error::Domain(
                "quadrature failed to converge within the segment budget".into(),
            ));
        }
        let (val, err) = kronrod_step(&f, lo, hi);
        if !val.is_finite() {
            return Err(Error::Domain(format!(
                "integrand not finite on [{lo}, {hi}]"
            )));
        }
        // error goal split evenly over the original span
        let goal = (rel_tol * (total.abs() + val.abs())).max(abs_tol) * (hi - lo) / (b - a);
        if err <= goal || depth >= 48 {
            total += val;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    Ok(total)
}

/// ∫₀^∞ V(r) g(r) dr against the radial density of an isotropic 3-D Gaussian
/// with per-axis variance `c2`, evaluated numerically. Dual path to
/// [`crate::potentials::Potential::gaussian_moment`].
pub fn radial_moment<F: Fn(f64) -> f64>(v: F, c2: f64) -> Result<f64> {
    if !(c2 > 0.0) || !c2.is_finite() {
        return Err(Error::Domain(format!(
            "radial moment needs a positive variance, got {c2}"
        )));
    }
    let sigma = c2.sqrt();
    let norm = (2.0 / std::f64::consts::PI).sqrt();
    // substitute r = σu; the weight u² exp(-u²/2) is negligible past u = 12
    let integrand = |u: f64| v(sigma * u) * norm * u * u * (-0.5 * u * u).exp();
    const SPLITS: [f64; 7] = [0.0, 0.8, 1.6, 2.6, 4.0, 6.5, 12.0];

    // fixed composite rule first; the matrix-element integrands are smooth
    // and almost always pass, the adaptive pass is the safety net
    let mut total = 0.0;
    let mut err = 0.0;
    for pair in SPLITS.windows(2) {
        let (val, e) = kronrod_step(&integrand, pair[0], pair[1]);
        total += val;
        err += e;
    }
    if total.is_finite() && err <= 1e-13 * total.abs().max(1e-12) {
        return Ok(total);
    }

    let mut total = 0.0;
    for pair in SPLITS.windows(2) {
        total += integrate(&integrand, pair[0], pair[1], 1e-13, 1e-15)?;
    }
    Ok(total)
}
