//! Small special-function helpers: log-gamma and the closed-form moments of
//! the radial density of an isotropic 3-D Gaussian.

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Lanczos approximation, g = 7, 9 coefficients. Accurate to ~1e-13 relative
// for real arguments of interest here (x > 0).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    if x < 0.5 {
        // reflection: Γ(x) Γ(1-x) = π / sin(πx)
        return std::f64::consts::PI.ln()
            - (std::f64::consts::PI * x).sin().ln()
            - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

/// ∫₀^∞ rᵝ g(r) dr for the radial density g(r) = √(2/π) r² c2^(-3/2)
/// exp(-r²/(2 c2)) of an isotropic 3-D Gaussian with per-axis variance c2.
///
/// Equals 2^(β/2+1) Γ((β+3)/2) c2^(β/2) / √π; finite for β > -3.
pub fn radial_gaussian_power_moment(beta: f64, c2: f64) -> f64 {
    debug_assert!(beta > -3.0);
    debug_assert!(c2 > 0.0);
    2f64.powf(0.5 * beta + 1.0) * gamma(0.5 * (beta + 3.0)) * c2.powf(0.5 * beta)
        / std::f64::consts::PI.sqrt()
}

/// ∫₀^∞ ln(r) g(r) dr for the same density: ln √c2 + (2 - γ - ln 2)/2,
/// from E[ln χ²₃] = ln 2 + ψ(3/2) with ψ(3/2) = 2 - γ - 2 ln 2.
pub fn radial_gaussian_log_moment(c2: f64) -> f64 {
    debug_assert!(c2 > 0.0);
    0.5 * c2.ln() + 0.5 * (2.0 - EULER_GAMMA - std::f64::consts::LN_2)
}
