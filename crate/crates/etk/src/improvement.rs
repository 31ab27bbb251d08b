//! φ-improvement of the envelope theory through the dominantly-orbital
//! coupling.
//!
//! The orbital point (p̃0, ρ̃0) solves the two parameter equations of the
//! compact set with the global quantum number replaced by its orbital-only
//! aggregate λ = Σ_α (l_α + (D-2)/2). The curvature of the effective radial
//! problem around that point fixes φ, and a second resolution of the compact
//! equations with Q_φ(N) yields the improved spectrum. The construction
//! requires D > 1.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{EnvelopeSolution, SystemSpec};
use crate::solver::{solve_compact_with, stationary_points, SolverConfig};

/// Outcome of the dominantly-orbital coupling.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhiReport {
    /// Momentum scale of the orbital point.
    pub p_tilde: f64,
    /// Pair-distance scale of the orbital point.
    pub rho_tilde: f64,
    /// Effective mass μ = p̃0 / (N T'(p̃0)).
    pub mu: f64,
    /// Effective spring constant of the radial oscillation.
    pub k: f64,
    /// Orbital-only global quantum number λ.
    pub lambda: f64,
    /// Resulting quantum-number deformation; φ = 2 recovers the classical
    /// envelope theory.
    pub phi: f64,
}

/// Solve the orbital-point equations
/// N T'(p̃0) p̃0 = C²_N V'(ρ̃0) ρ̃0 with √(C²_N) p̃0 ρ̃0 = λ.
///
/// Shares the elimination and bracketing strategy of the compact solver,
/// including the minimal-energy rule when several stationary points exist.
pub fn solve_dosm_point(spec: &SystemSpec) -> Result<(f64, f64)> {
    solve_dosm_point_with(spec, &SolverConfig::default())
}

pub fn solve_dosm_point_with(spec: &SystemSpec, config: &SolverConfig) -> Result<(f64, f64)> {
    let lambda = spec.orbital_lambda()?;
    if !(lambda > 0.0) {
        return Err(Error::UnsupportedImprovement(format!(
            "orbital quantum number λ = {lambda} must be positive for the dominantly orbital coupling"
        )));
    }
    let points = stationary_points(spec, lambda, config)?;
    let best = points
        .iter()
        .min_by(|a, b| a.energy.total_cmp(&b.energy))
        .expect("stationary_points is non-empty");
    Ok((best.p, best.rho))
}

/// Compute φ from the curvature of the effective radial problem at the
/// orbital point:
///
/// ```text
///   μ = p̃0 / (N T'(p̃0)),
///   k = 2N p̃0 T'(p̃0)/ρ̃0² + N p̃0² T''(p̃0)/ρ̃0² + C²_N V''(ρ̃0),
///   φ = λ / (N p̃0 T'(p̃0)) · √(k / (C²_N μ)).
/// ```
pub fn compute_phi(spec: &SystemSpec) -> Result<PhiReport> {
    compute_phi_with(spec, &SolverConfig::default())
}

pub fn compute_phi_with(spec: &SystemSpec, config: &SolverConfig) -> Result<PhiReport> {
    let lambda = spec.orbital_lambda()?;
    let (p, rho) = solve_dosm_point_with(spec, config)?;
    let n = spec.particle_count() as f64;
    let c2 = spec.pair_count_f64();
    let t1 = spec.kinetic_d1(p);
    let t2 = spec.kinetic_d2(p);
    let mu = p / (n * t1);
    let k = 2.0 * n * p * t1 / (rho * rho)
        + n * p * p * t2 / (rho * rho)
        + c2 * spec.potential().deriv2(rho);
    if !(k > 0.0) {
        return Err(Error::ImprovementUndefined(format!(
            "effective spring constant k = {k} is not positive at the orbital point"
        )));
    }
    let phi = lambda / (n * p * t1) * (k / (c2 * mu)).sqrt();
    Ok(PhiReport {
        p_tilde: p,
        rho_tilde: rho,
        mu,
        k,
        lambda,
        phi,
    })
}

/// Improved envelope solution: compute φ from scratch, then solve the
/// compact equations with Q_φ(N).
///
/// φ can instead be pinned by hand (for instance fitted on a known level) by
/// calling [`crate::solver::solve_compact`] with the desired value directly.
pub fn solve_improved(spec: &SystemSpec) -> Result<EnvelopeSolution> {
    solve_improved_with(spec, &SolverConfig::default())
}

pub fn solve_improved_with(spec: &SystemSpec, config: &SolverConfig) -> Result<EnvelopeSolution> {
    let report = compute_phi_with(spec, config)?;
    solve_compact_with(spec, report.phi, config)
}
