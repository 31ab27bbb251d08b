//! Closed-form solutions of the compact equations for the families where
//! they exist: attractive power laws and the truncated Coulomb potential.
//!
//! These paths serve as independent cross-checks of the generic solver; the
//! solver itself never uses them.

use crate::error::{Error, Result};
use crate::model::{EnvelopeSolution, SystemSpec, VariationalCharacter};
use crate::potentials::{classify_character, Kinematics, Potential};
use crate::solver::compact_residual;

/// Which real root of t³ ± 3t - 2Y = 0 to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicBranch {
    /// t³ + 3t - 2Y = 0, any real Y.
    Plus,
    /// t³ - 3t - 2Y = 0, requires Y ≥ 1.
    Minus,
}

/// Real root of t³ ± 3t - 2Y = 0 via hyperbolic functions:
/// F₊(Y) = 2 sinh(asinh(Y)/3), F₋(Y) = 2 cosh(acosh(Y)/3).
pub fn cubic_f(branch: CubicBranch, y: f64) -> Result<f64> {
    match branch {
        CubicBranch::Plus => Ok(2.0 * (y.asinh() / 3.0).sinh()),
        CubicBranch::Minus => {
            if y < 1.0 {
                return Err(Error::Domain(format!(
                    "F- requires Y >= 1 for a real root, got {y}"
                )));
            }
            Ok(2.0 * (y.acosh() / 3.0).cosh())
        }
    }
}

fn require_nonrelativistic(spec: &SystemSpec, what: &str) -> Result<()> {
    match spec.kinematics() {
        Kinematics::NonRelativistic => Ok(()),
        _ => Err(Error::InvalidParameter(format!(
            "{what} assumes non-relativistic kinematics"
        ))),
    }
}

fn finish(
    spec: &SystemSpec,
    phi: f64,
    q: f64,
    rho0: f64,
    energy: f64,
) -> EnvelopeSolution {
    let c2 = spec.pair_count_f64();
    let p0 = q / (c2.sqrt() * rho0);
    let character = if phi == 2.0 {
        classify_character(spec.kinematics(), spec.potential())
    } else {
        VariationalCharacter::Undefined
    };
    EnvelopeSolution {
        energy,
        p0,
        rho0,
        q_used: q,
        phi_used: phi,
        character,
        root_count: 1,
        residual_rel: {
            let r = compact_residual(spec, q, rho0).residual;
            let scale = (spec.particle_count() as f64 * spec.kinetic_d1(p0) * p0).abs();
            r.abs() / scale.max(f64::MIN_POSITIVE)
        },
    }
}

/// Closed form for the attractive power law V(r) = -G rᵝ, -2 < β < 0:
///
/// ```text
///   rho0 = [N Q²/(m |β| G (C²_N)²)]^(1/(2+β)),
///   E    = -(2+β) [(G/2)² (C²_N)^(2-β) (N Q²/(2 m |β|))^β]^(1/(2+β)).
/// ```
pub fn solve_power_law(spec: &SystemSpec, phi: f64) -> Result<EnvelopeSolution> {
    require_nonrelativistic(spec, "the power-law closed form")?;
    let (g, beta) = match *spec.potential() {
        Potential::Power { g, beta } => (g, beta),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "power-law closed form called on family `{}`",
                spec.potential().id()
            )))
        }
    };
    if !(-2.0 < beta && beta < 0.0) {
        return Err(Error::InvalidParameter(format!(
            "power-law closed form requires -2 < beta < 0, got {beta}"
        )));
    }
    let q = spec.global_q(phi)?;
    let n = spec.particle_count() as f64;
    let m = spec.mass();
    let c2 = spec.pair_count_f64();
    let ab = beta.abs();

    let rho0 = (n * q * q / (m * ab * g * c2 * c2)).powf(1.0 / (2.0 + beta));
    let energy = -(2.0 + beta)
        * ((0.5 * g).powi(2) * c2.powf(2.0 - beta) * (n * q * q / (2.0 * m * ab)).powf(beta))
            .powf(1.0 / (2.0 + beta));
    Ok(finish(spec, phi, q, rho0, energy))
}

/// φ value that the dominantly-orbital coupling yields for power-law
/// potentials: √(2+β), independent of G, m and N.
pub fn power_law_phi(beta: f64) -> Result<f64> {
    if beta <= -2.0 {
        return Err(Error::InvalidParameter(format!(
            "power-law exponent must satisfy beta > -2, got {beta}"
        )));
    }
    Ok((2.0 + beta).sqrt())
}

/// Dimensionless quantities of the truncated-Coulomb closed form: the
/// coupling A = (N/(C²_N)²) Q²/(m c d) and the scaled radius y = rho0/d,
/// which satisfies y³ = A (y+1)².
#[derive(Debug, Clone, Copy)]
pub struct TruncCoulombAux {
    pub a: f64,
    pub y: f64,
}

/// Scaled radius of the truncated-Coulomb stationary point, the positive
/// root of y³ = A (y+1)², expressed through F₋.
pub fn trunc_coulomb_scaled_radius(a: f64) -> Result<TruncCoulombAux> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("A must be > 0, got {a}")));
    }
    let disc = a * (a + 6.0);
    let arg = (2.0 * a * a * a + 18.0 * a * a + 27.0 * a) / (2.0 * disc.powf(1.5));
    let y = disc.sqrt() / 3.0 * cubic_f(CubicBranch::Minus, arg)? + a / 3.0;
    Ok(TruncCoulombAux { a, y })
}

/// Closed form for V(r) = -c/(r+d), d > 0:
///
/// ```text
///   rho0 = d y,   E = -C²_N (c/d) (y+2) / (2 (y+1)²),
/// ```
///
/// with y from [`trunc_coulomb_scaled_radius`]. At d = 0 use the power-law
/// path instead (pure Coulomb).
pub fn solve_trunc_coulomb(spec: &SystemSpec, phi: f64) -> Result<EnvelopeSolution> {
    require_nonrelativistic(spec, "the truncated-Coulomb closed form")?;
    let (c, d) = match *spec.potential() {
        Potential::TruncCoulomb { c, d } => (c, d),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "truncated-Coulomb closed form called on family `{}`",
                spec.potential().id()
            )))
        }
    };
    if d <= 0.0 {
        return Err(Error::InvalidParameter(
            "truncated-Coulomb closed form requires d > 0; use the power-law path for the pure Coulomb case"
                .into(),
        ));
    }
    let q = spec.global_q(phi)?;
    let n = spec.particle_count() as f64;
    let m = spec.mass();
    let c2 = spec.pair_count_f64();

    let a = (n / (c2 * c2)) * q * q / (m * c * d);
    let aux = trunc_coulomb_scaled_radius(a)?;
    let y = aux.y;
    let rho0 = d * y;
    let energy = -c2 * (c / d) * (y + 2.0) / (2.0 * (y + 1.0) * (y + 1.0));
    Ok(finish(spec, phi, q, rho0, energy))
}

/// Asymptotic truncated-Coulomb energies, returned as
/// (E at d ≫ r, E at d ≪ r):
///
/// ```text
///   E_{d>>r} = -C²_N c/d + (3/2) (N/C²_N)^(1/3) (Q² c²/(m d⁴))^(1/3),
///   E_{d<<r} = -(C²_N)³ m c²/(2 N Q²) + (C²_N)⁴ m² c³ d/(N² Q⁴).
/// ```
///
/// d = 0 is allowed here and gives the pure-Coulomb limit in the second slot.
pub fn trunc_coulomb_limits(spec: &SystemSpec, phi: f64) -> Result<(f64, f64)> {
    require_nonrelativistic(spec, "the truncated-Coulomb limits")?;
    let (c, d) = match *spec.potential() {
        Potential::TruncCoulomb { c, d } => (c, d),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "truncated-Coulomb limits called on family `{}`",
                spec.potential().id()
            )))
        }
    };
    let q = spec.global_q(phi)?;
    let n = spec.particle_count() as f64;
    let m = spec.mass();
    let c2 = spec.pair_count_f64();

    let large_d = if d > 0.0 {
        -c2 * c / d + 1.5 * (n / c2).powf(1.0 / 3.0) * (q * q * c * c / (m * d.powi(4))).powf(1.0 / 3.0)
    } else {
        f64::INFINITY
    };
    let small_d = -c2.powi(3) * m * c * c / (2.0 * n * q * q)
        + c2.powi(4) * m * m * c.powi(3) * d / (n * n * q.powi(4));
    Ok((large_d, small_d))
}
