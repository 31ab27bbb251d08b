//! Independent reference energies for the three-boson ground state from a
//! symmetrized correlated-Gaussian variational expansion.
//!
//! Trial functions exp(-(a x² + b y²)/2) live on the Jacobi coordinates
//! x = r₁-r₂, y = (r₁+r₂)/2 - r₃ and are summed over the three pair
//! relabelings, which turns the tensor grid of widths into correlated
//! Gaussians. Overlap and kinetic elements are analytic; potential elements
//! reduce to one-dimensional radial moments ∫ V(r) g(r) dr against Gaussian
//! pair densities, taken in closed form when the family provides one and by
//! adaptive quadrature otherwise. The generalized eigenproblem is solved
//! after pruning nearly dependent basis vectors, and the width grid is
//! refined (nested, so the energy is monotone) until the ground energy
//! stabilizes. Every returned energy is a variational upper bound on the
//! true ground energy.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::SystemSpec;
use crate::potentials::Potential;
use crate::quadrature;
use crate::solver;

/// Geometric width grid and convergence policy for the oracle.
#[derive(Debug, Clone, Serialize)]
pub struct GaussianBasisConfig {
    /// Grid sizes per Jacobi coordinate.
    pub n_a: usize,
    pub n_b: usize,
    /// Geometric width range (inverse length squared).
    pub a_min: f64,
    pub a_max: f64,
    /// Stop refining once the energy moves by less than tol_rel·|E|.
    pub tol_rel: f64,
    /// Overlap conditioning threshold: basis vectors whose conditional
    /// residual falls under 1/cond_cap are pruned.
    pub cond_cap: f64,
    /// Refinement stops before the (pruned-input) basis would exceed this.
    pub max_basis: usize,
}

impl Default for GaussianBasisConfig {
    fn default() -> Self {
        Self {
            n_a: 12,
            n_b: 12,
            a_min: 1e-2,
            a_max: 1e2,
            tol_rel: 1e-7,
            cond_cap: 1e12,
            max_basis: 1100,
        }
    }
}

impl GaussianBasisConfig {
    /// Anchor the width window to a natural length scale: widths scale as
    /// inverse length squared, so the window moves to [a_min, a_max]/scale².
    pub fn scaled_to(&self, length_scale: f64) -> Self {
        let s2 = length_scale * length_scale;
        Self {
            a_min: self.a_min / s2,
            a_max: self.a_max / s2,
            ..self.clone()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.a_min > 0.0 && self.a_max > self.a_min) {
            return Err(Error::InvalidParameter(format!(
                "width range must satisfy 0 < a_min < a_max, got [{}, {}]",
                self.a_min, self.a_max
            )));
        }
        if self.n_a * self.n_b < 4 {
            return Err(Error::InvalidParameter(
                "basis grid must hold at least 4 functions".into(),
            ));
        }
        if !(self.tol_rel > 0.0) {
            return Err(Error::InvalidParameter("tol_rel must be > 0".into()));
        }
        if !(self.cond_cap > 1.0) {
            return Err(Error::InvalidParameter("cond_cap must exceed 1".into()));
        }
        Ok(())
    }
}

/// Variational reference energy and its convergence diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct OracleResult {
    /// Ground energy; a variational upper bound on the true value.
    pub energy: f64,
    /// Basis functions retained after conditioning pruning, last stage.
    pub basis_size: usize,
    pub converged: bool,
    /// Energy change over the last grid refinement.
    pub delta_last: f64,
    /// Energy after each refinement stage (non-increasing).
    pub stage_energies: Vec<f64>,
}

/// |e_approx - e_exact| / |e_exact|.
pub fn relative_error(e_approx: f64, e_exact: f64) -> Result<f64> {
    if e_exact == 0.0 {
        return Err(Error::Domain(
            "relative error undefined against a zero reference".into(),
        ));
    }
    Ok((e_approx - e_exact).abs() / e_exact.abs())
}

/// Symmetric 2x2 quadratic form over the two Jacobi vectors.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Quad2 {
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
}

impl Quad2 {
    fn det(&self) -> f64 {
        self.xx * self.yy - self.xy * self.xy
    }

    fn add(&self, other: &Quad2) -> Quad2 {
        Quad2 {
            xx: self.xx + other.xx,
            xy: self.xy + other.xy,
            yy: self.yy + other.yy,
        }
    }
}

/// The three quadratic forms a x_c² + b y_c² of the pair relabelings,
/// expressed in the base coordinates. The relabeling maps have unit
/// determinant, so det = a·b for all three.
pub(crate) fn pair_forms(a: f64, b: f64) -> [Quad2; 3] {
    [
        Quad2 { xx: a, xy: 0.0, yy: b },
        // x₂ = x/2 + y, y₂ = 3x/4 - y/2
        Quad2 {
            xx: 0.25 * a + 0.5625 * b,
            xy: 0.5 * a - 0.375 * b,
            yy: a + 0.25 * b,
        },
        // x₃ = y - x/2, y₃ = -3x/4 - y/2
        Quad2 {
            xx: 0.25 * a + 0.5625 * b,
            xy: -(0.5 * a - 0.375 * b),
            yy: a + 0.25 * b,
        },
    ]
}

/// Coefficients of the three pair separations over (x, y):
/// r₁₂ = |x|, r₁₃ = |x/2 + y|, r₂₃ = |y - x/2|.
const PAIR_WEIGHTS: [(f64, f64); 3] = [(1.0, 0.0), (0.5, 1.0), (-0.5, 1.0)];

/// Per-axis variance of the pair separation w·(x, y) under exp(-x^T C x / 2).
fn pair_variance(c: &Quad2, w: (f64, f64)) -> f64 {
    let det = c.det();
    (w.0 * w.0 * c.yy - 2.0 * w.0 * w.1 * c.xy + w.1 * w.1 * c.xx) / det
}

/// Overlap of two correlated Gaussians: ((2π)²/det C)^(3/2).
fn overlap(c: &Quad2) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    (two_pi * two_pi / c.det()).powf(1.5)
}

/// Kinetic element over the overlap: (3/2) Tr(Λ A C⁻¹ B) with
/// Λ = diag(2/m, 3/(2m)) from the Jacobi reduced masses m/2 and 2m/3.
fn kinetic_ratio(a: &Quad2, b: &Quad2, c: &Quad2, m: f64) -> f64 {
    let det = c.det();
    let inv = Quad2 {
        xx: c.yy / det,
        xy: -c.xy / det,
        yy: c.xx / det,
    };
    // M = A · C⁻¹ · B, diagonal entries only
    let ai_xx = a.xx * inv.xx + a.xy * inv.xy;
    let ai_xy = a.xx * inv.xy + a.xy * inv.yy;
    let ai_yx = a.xy * inv.xx + a.yy * inv.xy;
    let ai_yy = a.xy * inv.xy + a.yy * inv.yy;
    let m00 = ai_xx * b.xx + ai_xy * b.xy;
    let m11 = ai_yx * b.xy + ai_yy * b.yy;
    let lambda_x = 2.0 / m;
    let lambda_y = 1.5 / m;
    1.5 * (lambda_x * m00 + lambda_y * m11)
}

fn potential_moment(pot: &Potential, c2: f64) -> Result<f64> {
    match pot.gaussian_moment(c2) {
        Some(v) => Ok(v),
        None => quadrature::radial_moment(|r| pot.eval(r), c2),
    }
}

/// Overlap, kinetic and potential elements between two symmetrized basis
/// functions, up to the common symmetrization prefactor.
///
/// `bra_form` selects which of the three relabeled forms represents the bra;
/// the result is independent of the choice, which the tests use as a
/// permutation-symmetry check and to validate the assembly fast path.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn symmetrized_elements(
    bra: (f64, f64),
    ket: (f64, f64),
    m: f64,
    pot: &Potential,
    bra_form: usize,
) -> Result<(f64, f64, f64)> {
    let a = pair_forms(bra.0, bra.1)[bra_form];
    let kets = pair_forms(ket.0, ket.1);
    let mut s_sum = 0.0;
    let mut t_sum = 0.0;
    let mut v_sum = 0.0;
    for kf in &kets {
        let c = a.add(kf);
        let s = overlap(&c);
        s_sum += s;
        t_sum += s * kinetic_ratio(&a, kf, &c, m);
        for w in PAIR_WEIGHTS {
            v_sum += s * potential_moment(pot, pair_variance(&c, w))?;
        }
    }
    Ok((s_sum, t_sum, v_sum))
}

/// Assembly fast path for the diagonal bra form: the mirrored ket forms 2
/// and 3 then contribute identically (conjugation by x → -x leaves the bra
/// and the kinetic weights invariant and only swaps the 13/23 separations),
/// so form 2 is computed once and doubled; a diagonal overlap matrix also
/// makes the 13 and 23 separations of form 1 coincide.
fn symmetrized_elements_fast(
    bra: (f64, f64),
    ket: (f64, f64),
    m: f64,
    pot: &Potential,
) -> Result<(f64, f64, f64)> {
    let a = pair_forms(bra.0, bra.1)[0];
    let kets = pair_forms(ket.0, ket.1);

    let c1 = a.add(&kets[0]);
    let s1 = overlap(&c1);
    let t1 = s1 * kinetic_ratio(&a, &kets[0], &c1, m);
    let v1 = s1
        * (potential_moment(pot, pair_variance(&c1, PAIR_WEIGHTS[0]))?
            + 2.0 * potential_moment(pot, pair_variance(&c1, PAIR_WEIGHTS[1]))?);

    let c2 = a.add(&kets[1]);
    let s2 = overlap(&c2);
    let t2 = s2 * kinetic_ratio(&a, &kets[1], &c2, m);
    let mut v2 = 0.0;
    for w in PAIR_WEIGHTS {
        v2 += potential_moment(pot, pair_variance(&c2, w))?;
    }
    v2 *= s2;

    Ok((s1 + 2.0 * s2, t1 + 2.0 * t2, v1 + 2.0 * v2))
}

/// Nested geometric grid: stage s holds (n-1)·2^s + 1 points; halving the
/// log-step keeps every earlier point bit-exactly, so refined bases contain
/// the earlier ones and the variational energies are monotone across stages.
fn width_grid(a_min: f64, a_max: f64, base_n: usize, stage: u32) -> Vec<f64> {
    let segments = (base_n - 1) << stage;
    let lo = a_min.ln();
    let step = (a_max.ln() - lo) / segments as f64;
    (0..=segments).map(|i| (lo + step * i as f64).exp()).collect()
}

struct StageSolution {
    energy: f64,
    kept: usize,
}

fn solve_stage(
    s_raw: &DMatrix<f64>,
    h_raw: &DMatrix<f64>,
    cond_cap: f64,
) -> Result<StageSolution> {
    let n = s_raw.nrows();
    let mut s = s_raw.clone();
    let mut h = h_raw.clone();

    // normalize to unit diagonal
    let norms: Vec<f64> = (0..n).map(|i| s[(i, i)].sqrt()).collect();
    for i in 0..n {
        for j in 0..n {
            let f = norms[i] * norms[j];
            s[(i, j)] /= f;
            h[(i, j)] /= f;
        }
    }

    // greedy conditioning filter: grow a Cholesky factor, dropping vectors
    // whose conditional residual against the kept set breaches cond_cap
    let threshold = 1.0 / cond_cap;
    let mut kept: Vec<usize> = Vec::new();
    let mut l_rows: Vec<Vec<f64>> = Vec::new();
    for i in 0..n {
        let k = kept.len();
        let mut w = vec![0.0; k];
        for (row, &j) in kept.iter().enumerate() {
            let mut acc = s[(i, j)];
            for t in 0..row {
                acc -= l_rows[row][t] * w[t];
            }
            w[row] = acc / l_rows[row][row];
        }
        let pivot = 1.0 - w.iter().map(|v| v * v).sum::<f64>();
        if pivot > threshold {
            w.push(pivot.sqrt());
            l_rows.push(w);
            kept.push(i);
        }
    }
    if kept.len() < 2 {
        return Err(Error::Domain(
            "overlap conditioning pruned the basis away; widen the grid".into(),
        ));
    }

    let k = kept.len();
    let mut l = DMatrix::<f64>::zeros(k, k);
    for (r, row) in l_rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            l[(r, c)] = v;
        }
    }
    let mut hk = DMatrix::<f64>::zeros(k, k);
    for (r, &i) in kept.iter().enumerate() {
        for (c, &j) in kept.iter().enumerate() {
            hk[(r, c)] = h[(i, j)];
        }
    }

    // reduce L⁻¹ H L⁻ᵀ and diagonalize
    let y = l
        .solve_lower_triangular(&hk)
        .ok_or_else(|| Error::Domain("overlap factor is singular".into()))?;
    let yt = y.transpose();
    let m_red = l
        .solve_lower_triangular(&yt)
        .ok_or_else(|| Error::Domain("overlap factor is singular".into()))?;
    let sym = 0.5 * (&m_red + m_red.transpose());
    let eigen = sym.symmetric_eigen();
    let energy = eigen.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(StageSolution { energy, kept: k })
}

/// Grow the raw overlap/Hamiltonian matrices to cover `widths`, computing
/// only the rows that were not present before.
fn extend_matrices(
    s: &mut DMatrix<f64>,
    h: &mut DMatrix<f64>,
    widths: &[(f64, f64)],
    m: f64,
    pot: &Potential,
) -> Result<()> {
    let old = s.nrows();
    let n = widths.len();
    if n == old {
        return Ok(());
    }
    let mut s_new = DMatrix::<f64>::zeros(n, n);
    let mut h_new = DMatrix::<f64>::zeros(n, n);
    s_new.view_mut((0, 0), (old, old)).copy_from(s);
    h_new.view_mut((0, 0), (old, old)).copy_from(h);
    for i in old..n {
        for j in 0..=i {
            let (sv, tv, vv) = symmetrized_elements_fast(widths[i], widths[j], m, pot)?;
            if !(sv.is_finite() && tv.is_finite() && vv.is_finite()) {
                return Err(Error::Domain(
                    "non-finite matrix element in the oracle basis".into(),
                ));
            }
            s_new[(i, j)] = sv;
            s_new[(j, i)] = sv;
            h_new[(i, j)] = tv + vv;
            h_new[(j, i)] = tv + vv;
        }
    }
    *s = s_new;
    *h = h_new;
    Ok(())
}

/// Variational ground energy for three identical bosons (N = 3, D = 3,
/// ground state, non-relativistic kinematics).
pub fn oracle_ground_energy(spec: &SystemSpec, config: &GaussianBasisConfig) -> Result<OracleResult> {
    config.validate()?;
    if spec.particle_count() != 3 || spec.dimension() != 3 {
        return Err(Error::InvalidSystem(
            "the variational oracle covers three particles at D = 3".into(),
        ));
    }
    if !spec.state().is_ground() {
        return Err(Error::InvalidSystem(
            "the variational oracle covers the bosonic ground state".into(),
        ));
    }
    if !spec.kinematics().is_nonrelativistic() {
        return Err(Error::InvalidSystem(
            "the variational oracle assumes non-relativistic kinematics".into(),
        ));
    }

    let m = spec.mass();
    let pot = spec.potential();

    // Widths in insertion order: refinement stages append the midpoints of
    // one coordinate grid at a time, so the earlier basis is a prefix of the
    // later one, previously assembled elements are reused, and the greedy
    // conditioning filter makes identical decisions on that prefix.
    let mut stage_a = 0u32;
    let mut stage_b = 0u32;
    let mut grid_a = width_grid(config.a_min, config.a_max, config.n_a, stage_a);
    let mut grid_b = width_grid(config.a_min, config.a_max, config.n_b, stage_b);
    let mut widths: Vec<(f64, f64)> = Vec::new();
    for &a in &grid_a {
        for &b in &grid_b {
            widths.push((a, b));
        }
    }

    let mut s = DMatrix::<f64>::zeros(0, 0);
    let mut h = DMatrix::<f64>::zeros(0, 0);
    let mut stage_energies: Vec<f64> = Vec::new();
    let mut kept = None;
    loop {
        extend_matrices(&mut s, &mut h, &widths, m, pot)?;
        let sol = solve_stage(&s, &h, config.cond_cap)?;
        kept = Some(sol.kept);
        stage_energies.push(sol.energy);
        if stage_energies.len() >= 2 {
            let delta = stage_energies[stage_energies.len() - 2] - sol.energy;
            if delta.abs() <= config.tol_rel * sol.energy.abs() {
                break;
            }
        }

        // refine the coarser coordinate grid first; stop at the basis cap
        let extend_a = {
            let next_a = width_grid(config.a_min, config.a_max, config.n_a, stage_a + 1);
            (next_a.len() * grid_b.len() <= config.max_basis).then_some(next_a)
        };
        let refined = if grid_a.len() <= grid_b.len() {
            extend_a.map(|g| (g, true)).or_else(|| {
                let next_b = width_grid(config.a_min, config.a_max, config.n_b, stage_b + 1);
                (grid_a.len() * next_b.len() <= config.max_basis).then_some((next_b, false))
            })
        } else {
            let next_b = width_grid(config.a_min, config.a_max, config.n_b, stage_b + 1);
            (grid_a.len() * next_b.len() <= config.max_basis)
                .then_some((next_b, false))
                .or_else(|| extend_a.map(|g| (g, true)))
        };
        let Some((next_grid, is_a)) = refined else {
            break;
        };
        if is_a {
            // odd indices of the refined grid are the new midpoints
            for (idx, &a) in next_grid.iter().enumerate() {
                if idx % 2 == 1 {
                    for &b in &grid_b {
                        widths.push((a, b));
                    }
                }
            }
            grid_a = next_grid;
            stage_a += 1;
        } else {
            for (idx, &b) in next_grid.iter().enumerate() {
                if idx % 2 == 1 {
                    for &a in &grid_a {
                        widths.push((a, b));
                    }
                }
            }
            grid_b = next_grid;
            stage_b += 1;
        }
    }

    let energy = *stage_energies.last().expect("at least one stage runs");
    let delta_last = if stage_energies.len() >= 2 {
        (stage_energies[stage_energies.len() - 2] - energy).abs()
    } else {
        f64::INFINITY
    };
    let converged = delta_last <= config.tol_rel * energy.abs();

    // tails with a finite limit at infinity only bind below C²_N · V(∞)
    if let Some(v_inf) = pot.asymptote() {
        let dissociated = spec.pair_count_f64() * v_inf;
        if energy >= dissociated - 1e-10 * dissociated.abs().max(1.0) {
            return Err(Error::NoBoundState(format!(
                "variational energy {energy} does not fall below the dissociation level {dissociated}"
            )));
        }
    }

    Ok(OracleResult {
        energy,
        basis_size: kept.expect("at least one stage runs"),
        converged,
        delta_last,
        stage_energies,
    })
}

/// Oracle with the width window anchored to the classical envelope scale:
/// the pair-distance rho0 of the φ = 2 solution sets the natural length.
pub fn oracle_ground_energy_auto(spec: &SystemSpec) -> Result<OracleResult> {
    let classical = solver::solve_compact(spec, 2.0)?;
    let config = GaussianBasisConfig::default().scaled_to(classical.rho0);
    oracle_ground_energy(spec, &config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SystemSpec;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn three_bosons(potential: Potential) -> SystemSpec {
        SystemSpec::three_bosons(1.0, potential).unwrap()
    }

    #[test]
    fn harmonic_oscillator_reference() {
        let spec = three_bosons(Potential::power(1.0, 2.0).unwrap());
        let result = oracle_ground_energy_auto(&spec).unwrap();
        let exact = 3.0 * 6.0f64.sqrt();
        assert!(
            ((result.energy - exact) / exact).abs() < 1e-6,
            "E = {}, exact = {exact}",
            result.energy
        );
        assert!(result.converged);
        // variational: never below the true value
        assert!(result.energy >= exact - 1e-9);
    }

    #[test]
    fn coulomb_lies_between_the_envelope_bounds() {
        let spec = three_bosons(Potential::power(1.0, -1.0).unwrap());
        let result = oracle_ground_energy_auto(&spec).unwrap();
        assert!(
            result.energy < -0.5 && result.energy > -1.125,
            "E = {}",
            result.energy
        );
    }

    #[test]
    fn energy_monotone_under_basis_growth() {
        let spec = three_bosons(Potential::exciton(1.0, 0.5).unwrap());
        let result = oracle_ground_energy_auto(&spec).unwrap();
        assert!(result.stage_energies.len() >= 2);
        for pair in result.stage_energies.windows(2) {
            assert!(
                pair[1] <= pair[0] + 1e-9 * pair[0].abs(),
                "stages {:?}",
                result.stage_energies
            );
        }
    }

    #[test]
    fn shallow_gaussian_reports_no_bound_state() {
        let spec = three_bosons(Potential::gauss(0.5).unwrap());
        let config = GaussianBasisConfig::default();
        assert!(matches!(
            oracle_ground_energy(&spec, &config),
            Err(Error::NoBoundState(_))
        ));
    }

    #[test]
    fn dual_path_matrix_elements_agree() {
        // quadrature against the closed forms, gaussian and power families
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let pots = [
            Potential::gauss(10.0).unwrap(),
            Potential::power(1.0, -1.0).unwrap(),
            Potential::power(0.7, -1.5).unwrap(),
            Potential::power(2.0, 2.0).unwrap(),
            Potential::cubic(1.3).unwrap(),
            Potential::linear(0.4).unwrap(),
            Potential::log(1.1).unwrap(),
        ];
        for _ in 0..40 {
            let c2 = 10f64.powf(rng.random_range(-2.0..2.0));
            for pot in &pots {
                let analytic = pot.gaussian_moment(c2).unwrap();
                let numeric = quadrature::radial_moment(|r| pot.eval(r), c2).unwrap();
                assert!(
                    (analytic - numeric).abs() <= 1e-10 * analytic.abs().max(1e-3),
                    "{} at c2={c2}: {analytic} vs {numeric}",
                    pot.id()
                );
            }
        }
    }

    #[test]
    fn bra_form_choice_is_irrelevant() {
        // permutation symmetry of the element machinery
        let pot = Potential::exciton(1.0, 0.8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let bra = (
                10f64.powf(rng.random_range(-1.5..1.5)),
                10f64.powf(rng.random_range(-1.5..1.5)),
            );
            let ket = (
                10f64.powf(rng.random_range(-1.5..1.5)),
                10f64.powf(rng.random_range(-1.5..1.5)),
            );
            let base = symmetrized_elements(bra, ket, 1.0, &pot, 0).unwrap();
            for form in 1..3 {
                let alt = symmetrized_elements(bra, ket, 1.0, &pot, form).unwrap();
                assert_relative_eq!(base.0, alt.0, max_relative = 1e-10);
                assert_relative_eq!(base.1, alt.1, max_relative = 1e-10);
                assert_relative_eq!(base.2, alt.2, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn relative_error_contract() {
        assert_relative_eq!(relative_error(-0.5, -1.0).unwrap(), 0.5);
        assert_relative_eq!(relative_error(7.3, 7.3).unwrap(), 0.0);
        assert_relative_eq!(
            relative_error(7.3485, 7.348469).unwrap(),
            4.218e-6,
            max_relative = 1e-3
        );
        assert!(relative_error(1.0, 0.0).is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = GaussianBasisConfig::default();
        cfg.a_min = -1.0;
        assert!(cfg.validate().is_err());
        let mut cfg = GaussianBasisConfig::default();
        cfg.n_a = 1;
        cfg.n_b = 2;
        assert!(cfg.validate().is_err());
        let mut cfg = GaussianBasisConfig::default();
        cfg.tol_rel = 0.0;
        assert!(cfg.validate().is_err());
    }
}
