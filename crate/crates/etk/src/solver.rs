//! Generic resolution of the compact equations by bracketed root finding.
//!
//! The two parameter equations
//!
//! ```text
//!   N T'(p0) p0 = C²_N V'(rho0) rho0,
//!   Q = √(C²_N) p0 rho0,
//! ```
//!
//! are reduced to a single residual in rho0 by eliminating p0 through the
//! second relation, scanned for sign changes on a logarithmic bracket and
//! refined by bisection. The energy E = N T(p0) + C²_N V(rho0) is evaluated
//! at every stationary point and the minimal one is returned. The solver
//! works from V' directly and never from family-specific printed reductions,
//! so a new potential only needs its derivatives.

use crate::error::{Error, Result};
use crate::model::{EnvelopeSolution, SystemSpec, VariationalCharacter};
use crate::potentials::classify_character;

/// Bracket scan and refinement settings.
///
/// The defaults resolve every figure-family root: the scan covers twelve
/// decades of rho0 with 600 intervals, enough to separate the two stationary
/// points of the cubic-Gaussian blends.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub rho_min: f64,
    pub rho_max: f64,
    pub intervals: usize,
    /// Relative width at which bisection stops.
    pub tol_rel: f64,
    pub max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            rho_min: 1e-6,
            rho_max: 1e6,
            intervals: 600,
            tol_rel: 1e-12,
            max_iter: 200,
        }
    }
}

/// A stationary point of the compact equations.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StationaryPoint {
    pub rho: f64,
    pub p: f64,
    pub energy: f64,
}

/// Trial rho0 together with the stationarity residual
/// N T'(p0) p0 - C²_N V'(rho0) rho0 at p0 = Q/(√C²_N rho0).
#[derive(Debug, Clone, Copy)]
pub struct CompactResidual {
    pub rho: f64,
    pub residual: f64,
}

/// Evaluate the stationarity residual at a trial rho0.
pub fn compact_residual(spec: &SystemSpec, q: f64, rho: f64) -> CompactResidual {
    let c2 = spec.pair_count_f64();
    let p = q / (c2.sqrt() * rho);
    let n = spec.particle_count() as f64;
    let residual = n * spec.kinetic_d1(p) * p - c2 * spec.potential().deriv1(rho) * rho;
    CompactResidual { rho, residual }
}

fn energy_at(spec: &SystemSpec, q: f64, rho: f64) -> StationaryPoint {
    let c2 = spec.pair_count_f64();
    let p = q / (c2.sqrt() * rho);
    let n = spec.particle_count() as f64;
    let energy = n * spec.kinetic(p) + c2 * spec.potential().eval(rho);
    StationaryPoint { rho, p, energy }
}

/// Relative size of the stationarity residual against its two sides.
fn residual_rel(spec: &SystemSpec, q: f64, rho: f64) -> f64 {
    let c2 = spec.pair_count_f64();
    let p = q / (c2.sqrt() * rho);
    let n = spec.particle_count() as f64;
    let lhs = n * spec.kinetic_d1(p) * p;
    let rhs = c2 * spec.potential().deriv1(rho) * rho;
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE)
}

fn bisect(
    spec: &SystemSpec,
    q: f64,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    config: &SolverConfig,
) -> f64 {
    for _ in 0..config.max_iter {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= config.tol_rel * mid {
            return mid;
        }
        let f_mid = compact_residual(spec, q, mid).residual;
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid * f_lo < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    0.5 * (lo + hi)
}

/// All stationary points of the compact equations for a given Q, sorted by
/// rho. Used both for the spectrum (Q = Q_φ) and for the dominantly-orbital
/// point (Q = λ).
pub(crate) fn stationary_points(
    spec: &SystemSpec,
    q: f64,
    config: &SolverConfig,
) -> Result<Vec<StationaryPoint>> {
    if !(q > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "global quantum number must be > 0, got {q}"
        )));
    }
    let log_lo = config.rho_min.ln();
    let step = (config.rho_max / config.rho_min).ln() / config.intervals as f64;

    let mut roots: Vec<f64> = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    let mut finite_seen = false;
    for i in 0..=config.intervals {
        let rho = (log_lo + step * i as f64).exp();
        let f = compact_residual(spec, q, rho).residual;
        if !f.is_finite() {
            prev = None;
            continue;
        }
        finite_seen = true;
        if f == 0.0 {
            roots.push(rho);
            prev = None;
            continue;
        }
        if let Some((rho_prev, f_prev)) = prev {
            if f_prev * f < 0.0 {
                roots.push(bisect(spec, q, rho_prev, rho, f_prev, config));
            }
        }
        prev = Some((rho, f));
    }
    if !finite_seen {
        return Err(Error::Domain(
            "stationarity residual is not finite anywhere on the scan bracket".into(),
        ));
    }
    if roots.is_empty() {
        return Err(Error::NoBoundState(format!(
            "no stationary point of the compact equations for {} on [{}, {}]",
            spec.potential().id(),
            config.rho_min,
            config.rho_max
        )));
    }
    // collapse duplicates from a root sitting exactly on a grid node
    roots.dedup_by(|b, a| (*b - *a).abs() <= 1e-9 * a.abs());
    Ok(roots.into_iter().map(|rho| energy_at(spec, q, rho)).collect())
}

/// Solve the compact equations at a given φ and return the minimal-energy
/// stationary point.
///
/// The returned character is the concavity classification for φ = 2; for any
/// other φ the variational character can no longer be guaranteed and
/// `Undefined` is reported.
pub fn solve_compact(spec: &SystemSpec, phi: f64) -> Result<EnvelopeSolution> {
    solve_compact_with(spec, phi, &SolverConfig::default())
}

pub fn solve_compact_with(
    spec: &SystemSpec,
    phi: f64,
    config: &SolverConfig,
) -> Result<EnvelopeSolution> {
    let q = spec.global_q(phi)?;
    let points = stationary_points(spec, q, config)?;
    let best = points
        .iter()
        .copied()
        .min_by(|a, b| a.energy.total_cmp(&b.energy))
        .expect("stationary_points is non-empty");
    let character = if phi == 2.0 {
        classify_character(spec.kinematics(), spec.potential())
    } else {
        VariationalCharacter::Undefined
    };
    Ok(EnvelopeSolution {
        energy: best.energy,
        p0: best.p,
        rho0: best.rho,
        q_used: q,
        phi_used: phi,
        character,
        root_count: points.len(),
        residual_rel: residual_rel(spec, q, best.rho),
    })
}
