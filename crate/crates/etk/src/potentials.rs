//! Catalog of kinematics and pairwise potentials with analytic first and
//! second derivatives, concavity metadata for the b-functions, and the
//! variational-character classification.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::VariationalCharacter;
use crate::special;

/// Sign of d²/dy² of a b-function b(y) = f(√y) over the probed domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurvatureSign {
    Negative,
    Zero,
    Positive,
    Indefinite,
}

impl fmt::Display for CurvatureSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CurvatureSign::Negative => "concave",
            CurvatureSign::Zero => "flat",
            CurvatureSign::Positive => "convex",
            CurvatureSign::Indefinite => "indefinite",
        };
        f.write_str(s)
    }
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// User-supplied kinetic energy T(p) with analytic derivatives.
///
/// The mass of the owning system is ignored here: bake any mass dependence
/// into the closures.
#[derive(Clone)]
pub struct CustomKinematics {
    pub eval: RealFn,
    pub deriv1: RealFn,
    pub deriv2: RealFn,
    pub bt_curvature: CurvatureSign,
}

impl fmt::Debug for CustomKinematics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomKinematics")
            .field("bt_curvature", &self.bt_curvature)
            .finish_non_exhaustive()
    }
}

/// Kinetic energy T(p). T'(p) must be positive for p > 0.
#[derive(Debug, Clone)]
pub enum Kinematics {
    /// T(p) = p²/(2m), with m taken from the owning system.
    NonRelativistic,
    Custom(CustomKinematics),
}

impl Kinematics {
    pub fn eval(&self, p: f64, m: f64) -> f64 {
        match self {
            Kinematics::NonRelativistic => p * p / (2.0 * m),
            Kinematics::Custom(k) => (k.eval)(p),
        }
    }

    pub fn deriv1(&self, p: f64, m: f64) -> f64 {
        match self {
            Kinematics::NonRelativistic => p / m,
            Kinematics::Custom(k) => (k.deriv1)(p),
        }
    }

    pub fn deriv2(&self, p: f64, m: f64) -> f64 {
        match self {
            Kinematics::NonRelativistic => 1.0 / m,
            Kinematics::Custom(k) => (k.deriv2)(p),
        }
    }

    /// Concavity of b_T(y) = T(√y). Non-relativistic kinematics gives
    /// b_T(y) = y/(2m), identically flat.
    pub fn bt_curvature(&self) -> CurvatureSign {
        match self {
            Kinematics::NonRelativistic => CurvatureSign::Zero,
            Kinematics::Custom(k) => k.bt_curvature,
        }
    }

    pub fn is_nonrelativistic(&self) -> bool {
        matches!(self, Kinematics::NonRelativistic)
    }
}

/// User-supplied potential with analytic derivatives.
#[derive(Clone)]
pub struct CustomPotential {
    pub eval: RealFn,
    pub deriv1: RealFn,
    pub deriv2: RealFn,
    pub bv_curvature: CurvatureSign,
    /// Finite limit of V at r → ∞ when it exists (None for confining tails).
    pub asymptote: Option<f64>,
    /// Optional closed form for the radial Gaussian moment (see
    /// [`Potential::gaussian_moment`]).
    pub gaussian_moment: Option<RealFn>,
}

impl fmt::Debug for CustomPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomPotential")
            .field("bv_curvature", &self.bv_curvature)
            .field("asymptote", &self.asymptote)
            .finish_non_exhaustive()
    }
}

/// Pairwise central potential V(r), r > 0.
///
/// Built-in families carry closed-form derivatives and concavity metadata.
/// Attractive power laws are written V = -G rᵝ for β < 0 and confining ones
/// V = +G rᵝ for β > 0, so the sign follows the exponent.
#[derive(Debug, Clone)]
pub enum Potential {
    Power { g: f64, beta: f64 },
    TruncCoulomb { c: f64, d: f64 },
    Exciton { c: f64, d: f64 },
    Linear { beta: f64 },
    Cubic { alpha: f64 },
    Log { beta: f64 },
    Gauss { beta: f64 },
    CubicLinear { alpha: f64, beta: f64, mix: f64 },
    CubicLog { alpha: f64, beta: f64, mix: f64 },
    CubicGauss { alpha: f64, beta: f64, mix: f64 },
    Custom(CustomPotential),
}

fn require_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be > 0, got {v}")))
    }
}

fn require_mix(mix: f64) -> Result<()> {
    if (0.0..=1.0).contains(&mix) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "blend parameter must lie in [0, 1], got {mix}"
        )))
    }
}

impl Potential {
    /// V(r) = sign(β) G rᵝ with G > 0 and -2 < β, β ≠ 0. Below β = -2 the
    /// system collapses and no stationary point exists.
    pub fn power(g: f64, beta: f64) -> Result<Self> {
        require_positive("G", g)?;
        if beta == 0.0 || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "power-law exponent must be nonzero, got {beta}"
            )));
        }
        if beta <= -2.0 {
            return Err(Error::InvalidParameter(format!(
                "power-law exponent must satisfy beta > -2, got {beta}"
            )));
        }
        Ok(Potential::Power { g, beta })
    }

    /// V(r) = -c/(r+d), c > 0, d ≥ 0. d = 0 is the pure Coulomb case.
    pub fn trunc_coulomb(c: f64, d: f64) -> Result<Self> {
        require_positive("c", c)?;
        if d < 0.0 || !d.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "truncation distance must be >= 0, got {d}"
            )));
        }
        Ok(Potential::TruncCoulomb { c, d })
    }

    /// V(r) = -c/√(r²+d²), c > 0, d ≥ 0.
    pub fn exciton(c: f64, d: f64) -> Result<Self> {
        require_positive("c", c)?;
        if d < 0.0 || !d.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "smoothing distance must be >= 0, got {d}"
            )));
        }
        Ok(Potential::Exciton { c, d })
    }

    pub fn linear(beta: f64) -> Result<Self> {
        require_positive("beta", beta)?;
        Ok(Potential::Linear { beta })
    }

    pub fn cubic(alpha: f64) -> Result<Self> {
        require_positive("alpha", alpha)?;
        Ok(Potential::Cubic { alpha })
    }

    pub fn log(beta: f64) -> Result<Self> {
        require_positive("beta", beta)?;
        Ok(Potential::Log { beta })
    }

    pub fn gauss(beta: f64) -> Result<Self> {
        require_positive("beta", beta)?;
        Ok(Potential::Gauss { beta })
    }

    /// V(r) = α C r³ + β (1-C) r. Degenerate blends C = 0 and C = 1 are
    /// substituted exactly by the pure component.
    pub fn cubic_linear(alpha: f64, beta: f64, mix: f64) -> Result<Self> {
        require_positive("alpha", alpha)?;
        require_positive("beta", beta)?;
        require_mix(mix)?;
        Ok(match mix {
            0.0 => Potential::Linear { beta },
            1.0 => Potential::Cubic { alpha },
            _ => Potential::CubicLinear { alpha, beta, mix },
        })
    }

    /// V(r) = α C r³ + β (1-C) ln r.
    pub fn cubic_log(alpha: f64, beta: f64, mix: f64) -> Result<Self> {
        require_positive("alpha", alpha)?;
        require_positive("beta", beta)?;
        require_mix(mix)?;
        Ok(match mix {
            0.0 => Potential::Log { beta },
            1.0 => Potential::Cubic { alpha },
            _ => Potential::CubicLog { alpha, beta, mix },
        })
    }

    /// V(r) = α C r³ - β (1-C) e^(-r²). Whenever the Gaussian well is present
    /// (C < 1) its amplitude must exceed one, otherwise it is too shallow to
    /// hold a three-boson bound state at C = 0.
    pub fn cubic_gauss(alpha: f64, beta: f64, mix: f64) -> Result<Self> {
        require_positive("alpha", alpha)?;
        require_positive("beta", beta)?;
        require_mix(mix)?;
        if mix < 1.0 && beta <= 1.0 {
            return Err(Error::NoBoundState(format!(
                "gaussian amplitude must exceed 1 to support a bound state, got {beta}"
            )));
        }
        Ok(match mix {
            0.0 => Potential::Gauss { beta },
            1.0 => Potential::Cubic { alpha },
            _ => Potential::CubicGauss { alpha, beta, mix },
        })
    }

    /// Identifier used by the command line and config files.
    pub fn id(&self) -> &'static str {
        match self {
            Potential::Power { .. } => "power",
            Potential::TruncCoulomb { .. } => "trunc-coulomb",
            Potential::Exciton { .. } => "exciton",
            Potential::Linear { .. } => "linear",
            Potential::Cubic { .. } => "cubic",
            Potential::Log { .. } => "log",
            Potential::Gauss { .. } => "gauss",
            Potential::CubicLinear { .. } => "cubic-linear",
            Potential::CubicLog { .. } => "cubic-log",
            Potential::CubicGauss { .. } => "cubic-gauss",
            Potential::Custom(_) => "custom",
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            Potential::Power { g, beta } => beta.signum() * g * r.powf(beta),
            Potential::TruncCoulomb { c, d } => -c / (r + d),
            Potential::Exciton { c, d } => -c / (r * r + d * d).sqrt(),
            Potential::Linear { beta } => beta * r,
            Potential::Cubic { alpha } => alpha * r * r * r,
            Potential::Log { beta } => beta * r.ln(),
            Potential::Gauss { beta } => -beta * (-r * r).exp(),
            Potential::CubicLinear { alpha, beta, mix } => {
                mix * alpha * r * r * r + (1.0 - mix) * beta * r
            }
            Potential::CubicLog { alpha, beta, mix } => {
                mix * alpha * r * r * r + (1.0 - mix) * beta * r.ln()
            }
            Potential::CubicGauss { alpha, beta, mix } => {
                mix * alpha * r * r * r - (1.0 - mix) * beta * (-r * r).exp()
            }
            Potential::Custom(ref c) => (c.eval)(r),
        }
    }

    pub fn deriv1(&self, r: f64) -> f64 {
        match *self {
            Potential::Power { g, beta } => beta.signum() * g * beta * r.powf(beta - 1.0),
            Potential::TruncCoulomb { c, d } => c / ((r + d) * (r + d)),
            Potential::Exciton { c, d } => c * r * (r * r + d * d).powf(-1.5),
            Potential::Linear { beta } => beta,
            Potential::Cubic { alpha } => 3.0 * alpha * r * r,
            Potential::Log { beta } => beta / r,
            Potential::Gauss { beta } => 2.0 * beta * r * (-r * r).exp(),
            Potential::CubicLinear { alpha, beta, mix } => {
                3.0 * mix * alpha * r * r + (1.0 - mix) * beta
            }
            Potential::CubicLog { alpha, beta, mix } => {
                3.0 * mix * alpha * r * r + (1.0 - mix) * beta / r
            }
            Potential::CubicGauss { alpha, beta, mix } => {
                3.0 * mix * alpha * r * r + 2.0 * (1.0 - mix) * beta * r * (-r * r).exp()
            }
            Potential::Custom(ref c) => (c.deriv1)(r),
        }
    }

    pub fn deriv2(&self, r: f64) -> f64 {
        match *self {
            Potential::Power { g, beta } => {
                beta.signum() * g * beta * (beta - 1.0) * r.powf(beta - 2.0)
            }
            Potential::TruncCoulomb { c, d } => -2.0 * c / ((r + d) * (r + d) * (r + d)),
            Potential::Exciton { c, d } => {
                c * (d * d - 2.0 * r * r) * (r * r + d * d).powf(-2.5)
            }
            Potential::Linear { .. } => 0.0,
            Potential::Cubic { alpha } => 6.0 * alpha * r,
            Potential::Log { beta } => -beta / (r * r),
            Potential::Gauss { beta } => 2.0 * beta * (1.0 - 2.0 * r * r) * (-r * r).exp(),
            Potential::CubicLinear { alpha, mix, .. } => 6.0 * mix * alpha * r,
            Potential::CubicLog { alpha, beta, mix } => {
                6.0 * mix * alpha * r - (1.0 - mix) * beta / (r * r)
            }
            Potential::CubicGauss { alpha, beta, mix } => {
                6.0 * mix * alpha * r
                    + 2.0 * (1.0 - mix) * beta * (1.0 - 2.0 * r * r) * (-r * r).exp()
            }
            Potential::Custom(ref c) => (c.deriv2)(r),
        }
    }

    /// d²b_V/dy² at y = r², computed from the analytic derivatives:
    /// [V''(r) r - V'(r)] / (4 r³).
    pub fn bv_second_derivative(&self, r: f64) -> f64 {
        (self.deriv2(r) * r - self.deriv1(r)) / (4.0 * r * r * r)
    }

    /// Analytic concavity of b_V(y) = V(√y) over r > 0.
    ///
    /// Established per family: attractive power laws, both Coulomb
    /// truncations, linear, logarithmic and Gaussian wells are concave;
    /// powers above r² are convex; r² itself is flat; the mixed families
    /// combine opposite curvatures and carry no universal sign.
    pub fn bv_curvature(&self) -> CurvatureSign {
        match *self {
            Potential::Power { beta, .. } => {
                // sign of sign(β)·β(β-2); negative both for attractive
                // exponents and for confining ones below r²
                if beta == 2.0 {
                    CurvatureSign::Zero
                } else if beta < 2.0 {
                    CurvatureSign::Negative
                } else {
                    CurvatureSign::Positive
                }
            }
            Potential::TruncCoulomb { .. }
            | Potential::Exciton { .. }
            | Potential::Linear { .. }
            | Potential::Log { .. }
            | Potential::Gauss { .. } => CurvatureSign::Negative,
            Potential::Cubic { .. } => CurvatureSign::Positive,
            Potential::CubicLinear { .. }
            | Potential::CubicLog { .. }
            | Potential::CubicGauss { .. } => CurvatureSign::Indefinite,
            Potential::Custom(ref c) => c.bv_curvature,
        }
    }

    /// Finite limit of V at r → ∞, when one exists. Confining tails
    /// (including the logarithm) return None.
    pub fn asymptote(&self) -> Option<f64> {
        match *self {
            Potential::Power { beta, .. } => (beta < 0.0).then_some(0.0),
            Potential::TruncCoulomb { .. } | Potential::Exciton { .. } => Some(0.0),
            Potential::Gauss { .. } => Some(0.0),
            Potential::Linear { .. }
            | Potential::Cubic { .. }
            | Potential::Log { .. }
            | Potential::CubicLinear { .. }
            | Potential::CubicLog { .. }
            | Potential::CubicGauss { .. } => None,
            Potential::Custom(ref c) => c.asymptote,
        }
    }

    /// Closed form of ∫₀^∞ V(r) g(r) dr against the radial density of an
    /// isotropic 3-D Gaussian with per-axis variance `c2`,
    /// g(r) = √(2/π) r² c2^(-3/2) exp(-r²/(2 c2)). Returns None for families
    /// handled by quadrature.
    pub fn gaussian_moment(&self, c2: f64) -> Option<f64> {
        match *self {
            Potential::Power { g, beta } => {
                Some(beta.signum() * g * special::radial_gaussian_power_moment(beta, c2))
            }
            Potential::Linear { beta } => {
                Some(beta * special::radial_gaussian_power_moment(1.0, c2))
            }
            Potential::Cubic { alpha } => {
                Some(alpha * special::radial_gaussian_power_moment(3.0, c2))
            }
            Potential::Log { beta } => Some(beta * special::radial_gaussian_log_moment(c2)),
            Potential::Gauss { beta } => Some(-beta * (1.0 + 2.0 * c2).powf(-1.5)),
            Potential::CubicLinear { alpha, beta, mix } => Some(
                mix * alpha * special::radial_gaussian_power_moment(3.0, c2)
                    + (1.0 - mix) * beta * special::radial_gaussian_power_moment(1.0, c2),
            ),
            Potential::CubicLog { alpha, beta, mix } => Some(
                mix * alpha * special::radial_gaussian_power_moment(3.0, c2)
                    + (1.0 - mix) * beta * special::radial_gaussian_log_moment(c2),
            ),
            Potential::CubicGauss { alpha, beta, mix } => Some(
                mix * alpha * special::radial_gaussian_power_moment(3.0, c2)
                    - (1.0 - mix) * beta * (1.0 + 2.0 * c2).powf(-1.5),
            ),
            Potential::TruncCoulomb { .. } | Potential::Exciton { .. } => None,
            Potential::Custom(ref c) => c.gaussian_moment.as_ref().map(|f| f(c2)),
        }
    }
}

/// Default sample grid for cross-checking curvature metadata: r geometric in
/// [1e-3, 1e3], 200 points, passed as y = r². Sampling can only falsify a
/// universal concavity claim, so the analytic metadata stays authoritative;
/// this grid guards against algebra slips in new families.
pub fn default_curvature_grid() -> Vec<f64> {
    let n = 200;
    let (lo, hi) = (1e-3f64, 1e3f64);
    let step = (hi / lo).ln() / (n - 1) as f64;
    (0..n).map(|i| (lo * (step * i as f64).exp()).powi(2)).collect()
}

/// Classify the sign of d²b_V/dy² on a positive sample grid of y values.
///
/// Returns `Indefinite` when both signs appear beyond the noise floor.
pub fn bv_curvature_sign(potential: &Potential, y_samples: &[f64]) -> Result<CurvatureSign> {
    if y_samples.is_empty() || y_samples.iter().any(|&y| y <= 0.0) {
        return Err(Error::Domain("curvature samples must be positive".into()));
    }
    let values: Vec<f64> = y_samples
        .iter()
        .map(|&y| potential.bv_second_derivative(y.sqrt()))
        .collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain(
            "b_V second derivative is not finite on the sample grid".into(),
        ));
    }
    let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if scale == 0.0 {
        return Ok(CurvatureSign::Zero);
    }
    let floor = 1e-12 * scale;
    let any_pos = values.iter().any(|&v| v > floor);
    let any_neg = values.iter().any(|&v| v < -floor);
    Ok(match (any_neg, any_pos) {
        (true, false) => CurvatureSign::Negative,
        (false, true) => CurvatureSign::Positive,
        (false, false) => CurvatureSign::Zero,
        (true, true) => CurvatureSign::Indefinite,
    })
}

/// Variational character of the envelope approximation from the concavity of
/// b_T and b_V: both concave → upper bound, both convex → lower bound, a flat
/// side defers to the other, both flat → exact, anything else → undefined.
pub fn classify_character(kinematics: &Kinematics, potential: &Potential) -> VariationalCharacter {
    use CurvatureSign::*;
    let from = |s: CurvatureSign| match s {
        Negative => VariationalCharacter::UpperBound,
        Positive => VariationalCharacter::LowerBound,
        Zero => VariationalCharacter::Exact,
        Indefinite => VariationalCharacter::Undefined,
    };
    match (kinematics.bt_curvature(), potential.bv_curvature()) {
        (Zero, s) => from(s),
        (s, Zero) => from(s),
        (Negative, Negative) => VariationalCharacter::UpperBound,
        (Positive, Positive) => VariationalCharacter::LowerBound,
        _ => VariationalCharacter::Undefined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn families_for_derivative_check() -> Vec<Potential> {
        vec![
            Potential::power(1.0, -1.0).unwrap(),
            Potential::power(0.7, -0.5).unwrap(),
            Potential::power(2.0, 2.0).unwrap(),
            Potential::trunc_coulomb(1.0, 3.0).unwrap(),
            Potential::exciton(1.0, 0.5).unwrap(),
            Potential::linear(1.0).unwrap(),
            Potential::cubic(1.0).unwrap(),
            Potential::log(1.0).unwrap(),
            Potential::gauss(10.0).unwrap(),
            Potential::cubic_linear(1.0, 1.0, 0.4).unwrap(),
            Potential::cubic_log(1.0, 1.0, 0.6).unwrap(),
            Potential::cubic_gauss(1.0, 10.0, 0.3).unwrap(),
        ]
    }

    /// Centered finite differences with steps proportional to r, keeping the
    /// relative truncation error uniform across the probed decades.
    fn fd1(pot: &Potential, r: f64) -> f64 {
        let h = 3e-6 * r;
        (pot.eval(r + h) - pot.eval(r - h)) / (2.0 * h)
    }

    fn fd2(pot: &Potential, r: f64) -> f64 {
        // fourth-order stencil: the Gaussian family needs it, its fourth
        // derivative dwarfs V'' around r ~ 3
        let h = 4e-4 * r;
        (-pot.eval(r + 2.0 * h) + 16.0 * pot.eval(r + h) - 30.0 * pot.eval(r)
            + 16.0 * pot.eval(r - h)
            - pot.eval(r - 2.0 * h))
            / (12.0 * h * h)
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        for pot in families_for_derivative_check() {
            let grid: Vec<f64> =
                (0..40).map(|k| 1e-2 * (1e4f64).powf(k as f64 / 39.0)).collect();
            let v_scale = grid.iter().map(|&r| pot.eval(r).abs()).fold(0.0, f64::max);
            for &r in &grid {
                let d1 = pot.deriv1(r);
                let d2 = pot.deriv2(r);
                let scale1 = d1.abs().max(1e-12);
                assert!(
                    (d1 - fd1(&pot, r)).abs() / scale1 < 1e-6,
                    "{} V' mismatch at r={r}: {d1} vs {}",
                    pot.id(),
                    fd1(&pot, r)
                );
                // the second-difference quotient loses ~eps/h² of the
                // function scale, so skip radii where V'' is negligible
                // against V (cancellations inside a mix) and the deep
                // Gaussian tail where everything has underflowed anyway
                let fd_floor = 1e-2 * (pot.eval(r).abs() + d1.abs() * r) / (r * r);
                if d2.abs() > fd_floor && pot.eval(r).abs() > 1e-30 * v_scale {
                    assert!(
                        (d2 - fd2(&pot, r)).abs() / d2.abs() < 1e-6,
                        "{} V'' mismatch at r={r}: {d2} vs {}",
                        pot.id(),
                        fd2(&pot, r)
                    );
                }
            }
        }
    }

    #[test]
    fn curvature_signs_match_sampling() {
        let grid = default_curvature_grid();
        for pot in families_for_derivative_check() {
            let sampled = bv_curvature_sign(&pot, &grid).unwrap();
            assert_eq!(sampled, pot.bv_curvature(), "family {}", pot.id());
        }
    }

    #[test]
    fn curvature_examples() {
        let grid = default_curvature_grid();
        let cubic = Potential::cubic(1.0).unwrap();
        assert_eq!(bv_curvature_sign(&cubic, &grid).unwrap(), CurvatureSign::Positive);
        let linear = Potential::linear(1.0).unwrap();
        assert_eq!(bv_curvature_sign(&linear, &grid).unwrap(), CurvatureSign::Negative);
        let harmonic = Potential::power(1.0, 2.0).unwrap();
        assert_eq!(bv_curvature_sign(&harmonic, &grid).unwrap(), CurvatureSign::Zero);
    }

    #[test]
    fn classify_examples() {
        let kin = Kinematics::NonRelativistic;
        let gauss = Potential::gauss(10.0).unwrap();
        assert_eq!(classify_character(&kin, &gauss), VariationalCharacter::UpperBound);
        let harmonic = Potential::power(1.0, 2.0).unwrap();
        assert_eq!(classify_character(&kin, &harmonic), VariationalCharacter::Exact);
        let mix = Potential::cubic_linear(1.0, 1.0, 0.5).unwrap();
        assert_eq!(classify_character(&kin, &mix), VariationalCharacter::Undefined);
        let cubic = Potential::cubic(1.0).unwrap();
        assert_eq!(classify_character(&kin, &cubic), VariationalCharacter::LowerBound);
    }

    #[test]
    fn attractive_power_law_is_upper_bound() {
        let kin = Kinematics::NonRelativistic;
        for beta in [-1.9, -1.5, -1.0, -0.5, -0.1] {
            let pot = Potential::power(1.0, beta).unwrap();
            assert_eq!(classify_character(&kin, &pot), VariationalCharacter::UpperBound);
        }
    }

    #[test]
    fn mixes_reduce_exactly_at_endpoints() {
        let lin = Potential::cubic_linear(2.0, 0.7, 0.0).unwrap();
        assert!(matches!(lin, Potential::Linear { beta } if beta == 0.7));
        let cub = Potential::cubic_linear(2.0, 0.7, 1.0).unwrap();
        assert!(matches!(cub, Potential::Cubic { alpha } if alpha == 2.0));
        let log = Potential::cubic_log(2.0, 0.7, 0.0).unwrap();
        assert!(matches!(log, Potential::Log { beta } if beta == 0.7));
        let gss = Potential::cubic_gauss(2.0, 10.0, 0.0).unwrap();
        assert!(matches!(gss, Potential::Gauss { beta } if beta == 10.0));
        // eval agrees bit-for-bit with the pure family
        let pure = Potential::linear(0.7).unwrap();
        for r in [0.1, 1.0, 7.3] {
            assert_eq!(lin.eval(r), pure.eval(r));
        }
    }

    #[test]
    fn shallow_gaussian_mix_is_rejected() {
        let err = Potential::cubic_gauss(1.0, 0.5, 0.0).unwrap_err();
        assert!(matches!(err, Error::NoBoundState(_)));
        // with the well switched off entirely the amplitude is irrelevant
        assert!(Potential::cubic_gauss(1.0, 0.5, 1.0).is_ok());
    }

    #[test]
    fn parameter_validation() {
        assert!(Potential::power(-1.0, -1.0).is_err());
        assert!(Potential::power(1.0, -2.0).is_err());
        assert!(Potential::power(1.0, 0.0).is_err());
        assert!(Potential::trunc_coulomb(1.0, -0.1).is_err());
        assert!(Potential::cubic_linear(1.0, 1.0, 1.5).is_err());
    }

    #[test]
    fn curvature_sample_errors() {
        let pot = Potential::linear(1.0).unwrap();
        assert!(bv_curvature_sign(&pot, &[]).is_err());
        assert!(bv_curvature_sign(&pot, &[1.0, -1.0]).is_err());
    }

    #[test]
    fn custom_kinematics_dispatch() {
        use std::sync::Arc;
        // ultra-relativistic T(p) = p; b_T(y) = √y is concave
        let kin = Kinematics::Custom(CustomKinematics {
            eval: Arc::new(|p| p),
            deriv1: Arc::new(|_| 1.0),
            deriv2: Arc::new(|_| 0.0),
            bt_curvature: CurvatureSign::Negative,
        });
        assert_relative_eq!(kin.eval(2.0, 1.0), 2.0);
        assert_eq!(kin.bt_curvature(), CurvatureSign::Negative);
        let lin = Potential::linear(1.0).unwrap();
        assert_eq!(classify_character(&kin, &lin), VariationalCharacter::UpperBound);
        let cub = Potential::cubic(1.0).unwrap();
        assert_eq!(classify_character(&kin, &cub), VariationalCharacter::Undefined);
    }

    proptest! {
        /// V' of every family matches finite differences at random radii.
        #[test]
        fn prop_deriv1_consistent(idx in 0usize..12, logr in -2.0f64..2.0) {
            let pot = &families_for_derivative_check()[idx];
            let r = 10f64.powf(logr);
            let d1 = pot.deriv1(r);
            let num = fd1(pot, r);
            let scale = d1.abs().max(1e-9);
            prop_assert!((d1 - num).abs() / scale < 1e-5);
        }
    }
}
