//! Domain types shared across the solver, the improvement and the oracle,
//! plus quantum-number bookkeeping.
//!
//! Everything is expressed in natural units (ħ = c = 1). All types are
//! immutable value objects and safe to share between threads.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::potentials::{Kinematics, Potential};

/// Number of particle pairs, N(N-1)/2.
pub fn pair_count(n: u32) -> Result<u32> {
    if n < 2 {
        return Err(Error::InvalidSystem(format!(
            "need at least 2 particles, got {n}"
        )));
    }
    Ok(n * (n - 1) / 2)
}

/// Radial and orbital quantum numbers (n_α, l_α) of the N-1 internal
/// Jacobi coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuantumNumbers {
    pairs: Vec<(u32, u32)>,
}

impl QuantumNumbers {
    /// One (n, l) pair per internal coordinate; `pairs.len()` must equal N-1.
    pub fn new(pairs: Vec<(u32, u32)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidSystem(
                "quantum-number set must hold at least one (n, l) pair".into(),
            ));
        }
        Ok(Self { pairs })
    }

    /// Ground state: every internal excitation zero.
    pub fn ground(coordinates: usize) -> Result<Self> {
        Self::new(vec![(0, 0); coordinates])
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn coordinate_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_ground(&self) -> bool {
        self.pairs.iter().all(|&(n, l)| n == 0 && l == 0)
    }

    fn radial_sum(&self) -> f64 {
        self.pairs.iter().map(|&(n, _)| n as f64).sum()
    }

    fn orbital_sum(&self) -> f64 {
        self.pairs.iter().map(|&(_, l)| l as f64).sum()
    }
}

/// Global quantum number Q_φ(N) entering the third compact equation.
///
/// For D ≥ 2 this is Σ_α (φ n_α + l_α + (D+φ-2)/2); the classical value is
/// recovered at φ = 2. One-dimensional systems carry no angular momentum and
/// use Σ_α (n_α + 1/2) instead; requesting φ ≠ 2 there is an error because
/// the improvement is not defined at D = 1.
pub fn global_q(state: &QuantumNumbers, dim: u32, phi: f64) -> Result<f64> {
    if !(phi > 0.0) {
        return Err(Error::InvalidParameter(format!("phi must be > 0, got {phi}")));
    }
    match dim {
        0 => Err(Error::InvalidSystem("dimension must be >= 1".into())),
        1 => {
            if state.orbital_sum() != 0.0 {
                return Err(Error::InvalidSystem(
                    "one-dimensional states cannot carry orbital excitation".into(),
                ));
            }
            if phi != 2.0 {
                return Err(Error::UnsupportedImprovement(
                    "improvement unavailable at D=1: the global quantum number has no phi dependence there"
                        .into(),
                ));
            }
            Ok(state.radial_sum() + 0.5 * state.coordinate_count() as f64)
        }
        d => {
            let count = state.coordinate_count() as f64;
            Ok(phi * state.radial_sum()
                + state.orbital_sum()
                + 0.5 * (d as f64 + phi - 2.0) * count)
        }
    }
}

/// Orbital-only aggregate Σ_α (l_α + (D-2)/2) used by the dominantly-orbital
/// coupling. Defined for D ≥ 2 only.
pub fn orbital_lambda(state: &QuantumNumbers, dim: u32) -> Result<f64> {
    if dim < 2 {
        return Err(Error::UnsupportedImprovement(
            "improvement unavailable at D=1: the dominantly orbital state method requires D >= 2"
                .into(),
        ));
    }
    let count = state.coordinate_count() as f64;
    Ok(state.orbital_sum() + 0.5 * (dim as f64 - 2.0) * count)
}

/// Whether an envelope approximation bounds the genuine spectrum.
///
/// Decided by the concavity of b_T(y) = T(√y) and b_V(y) = V(√y): both
/// concave gives an upper bound, both convex a lower bound, a vanishing
/// second derivative defers to the other function, and both vanishing means
/// the Hamiltonian was a harmonic oscillator, reproduced exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VariationalCharacter {
    UpperBound,
    LowerBound,
    Exact,
    Undefined,
}

impl std::fmt::Display for VariationalCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            VariationalCharacter::UpperBound => "upper-bound",
            VariationalCharacter::LowerBound => "lower-bound",
            VariationalCharacter::Exact => "exact",
            VariationalCharacter::Undefined => "undefined",
        };
        f.write_str(s)
    }
}

/// An N-body system of identical particles: H = Σ T(p_i) + Σ_{i<j} V(r_ij).
#[derive(Debug, Clone)]
pub struct SystemSpec {
    n: u32,
    m: f64,
    dim: u32,
    kinematics: Kinematics,
    potential: Potential,
    state: QuantumNumbers,
}

impl SystemSpec {
    pub fn new(
        n: u32,
        m: f64,
        dim: u32,
        kinematics: Kinematics,
        potential: Potential,
        state: QuantumNumbers,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSystem(format!(
                "need at least 2 particles, got {n}"
            )));
        }
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::InvalidSystem(format!("mass must be > 0, got {m}")));
        }
        if dim < 1 {
            return Err(Error::InvalidSystem("dimension must be >= 1".into()));
        }
        if state.coordinate_count() != (n - 1) as usize {
            return Err(Error::InvalidSystem(format!(
                "state holds {} (n, l) pairs but N-1 = {}",
                state.coordinate_count(),
                n - 1
            )));
        }
        if dim == 1 && state.orbital_sum() != 0.0 {
            return Err(Error::InvalidSystem(
                "one-dimensional states cannot carry orbital excitation".into(),
            ));
        }
        Ok(Self {
            n,
            m,
            dim,
            kinematics,
            potential,
            state,
        })
    }

    /// Bosonic ground state with non-relativistic kinematics.
    pub fn bosonic_ground(n: u32, m: f64, dim: u32, potential: Potential) -> Result<Self> {
        let state = QuantumNumbers::ground((n.max(2) - 1) as usize)?;
        Self::new(n, m, dim, Kinematics::NonRelativistic, potential, state)
    }

    /// Three identical bosons at D = 3, the configuration probed by the
    /// accuracy studies.
    pub fn three_bosons(m: f64, potential: Potential) -> Result<Self> {
        Self::bosonic_ground(3, m, 3, potential)
    }

    pub fn particle_count(&self) -> u32 {
        self.n
    }

    pub fn mass(&self) -> f64 {
        self.m
    }

    pub fn dimension(&self) -> u32 {
        self.dim
    }

    pub fn kinematics(&self) -> &Kinematics {
        &self.kinematics
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn state(&self) -> &QuantumNumbers {
        &self.state
    }

    /// Replace the potential, keeping everything else.
    pub fn with_potential(&self, potential: Potential) -> Self {
        Self {
            potential,
            ..self.clone()
        }
    }

    /// C²_N = N(N-1)/2, the number of pairs, as a float.
    pub fn pair_count_f64(&self) -> f64 {
        (self.n * (self.n - 1) / 2) as f64
    }

    pub fn global_q(&self, phi: f64) -> Result<f64> {
        global_q(&self.state, self.dim, phi)
    }

    pub fn orbital_lambda(&self) -> Result<f64> {
        orbital_lambda(&self.state, self.dim)
    }

    pub fn kinetic(&self, p: f64) -> f64 {
        self.kinematics.eval(p, self.m)
    }

    pub fn kinetic_d1(&self, p: f64) -> f64 {
        self.kinematics.deriv1(p, self.m)
    }

    pub fn kinetic_d2(&self, p: f64) -> f64 {
        self.kinematics.deriv2(p, self.m)
    }
}

/// Solution of the compact equations for one level.
///
/// `p0` and `rho0` approximate the mean values ⟨p_i²⟩ = p0² and
/// ⟨r_ij²⟩ = rho0²; the third compact equation √(C²_N) p0 rho0 = Q holds by
/// construction, and `residual_rel` records how well the remaining stationarity
/// equation is satisfied.
#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeSolution {
    pub energy: f64,
    pub p0: f64,
    pub rho0: f64,
    /// Global quantum number actually used (Q_φ).
    pub q_used: f64,
    /// φ = 2 for the classical envelope theory.
    pub phi_used: f64,
    pub character: VariationalCharacter,
    /// Number of stationary points found on the scan bracket.
    pub root_count: usize,
    /// Relative residual of the stationarity equation at the returned root.
    pub residual_rel: f64,
}

impl EnvelopeSolution {
    /// Legacy collective radius: r0² = C²_N · rho0². Kept as a derived
    /// accessor only; rho0 is the preferred scale for pairwise potentials.
    pub fn r0_squared(&self, pair_count: f64) -> f64 {
        pair_count * self.rho0 * self.rho0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::Potential;
    use approx::assert_relative_eq;

    fn bgs(n: u32) -> QuantumNumbers {
        QuantumNumbers::ground((n - 1) as usize).unwrap()
    }

    #[test]
    fn pair_count_matches_formula() {
        assert_eq!(pair_count(2).unwrap(), 1);
        assert_eq!(pair_count(3).unwrap(), 3);
        assert_eq!(pair_count(10).unwrap(), 45);
        assert!(matches!(pair_count(1), Err(Error::InvalidSystem(_))));
    }

    #[test]
    fn global_q_three_boson_ground_state() {
        let state = bgs(3);
        // classical value 2 * (3/2)
        assert_relative_eq!(global_q(&state, 3, 2.0).unwrap(), 3.0);
        // Q_phi reduces to phi + 1 for three bosons at D = 3
        for phi in [0.5, 1.0, 1.5, 2.0, 3.0] {
            assert_relative_eq!(global_q(&state, 3, phi).unwrap(), phi + 1.0);
        }
    }

    #[test]
    fn global_q_one_dimensional() {
        let state = bgs(3);
        assert_relative_eq!(global_q(&state, 1, 2.0).unwrap(), 1.0);
        assert!(matches!(
            global_q(&state, 1, 1.0),
            Err(Error::UnsupportedImprovement(_))
        ));
    }

    #[test]
    fn global_q_is_affine_in_phi() {
        // slope must be Σ n_α + (N-1)/2
        let state = QuantumNumbers::new(vec![(1, 0), (0, 2), (3, 1)]).unwrap();
        let d = 4;
        let q1 = global_q(&state, d, 1.0).unwrap();
        let q2 = global_q(&state, d, 2.0).unwrap();
        let q3 = global_q(&state, d, 3.0).unwrap();
        let slope = 4.0 + 3.0 / 2.0;
        assert_relative_eq!(q2 - q1, slope, epsilon = 1e-12);
        assert_relative_eq!(q3 - q2, slope, epsilon = 1e-12);
    }

    #[test]
    fn global_q_ground_state_any_n_d() {
        for n in 2..=6u32 {
            for d in 2..=4u32 {
                let state = bgs(n);
                let classical = global_q(&state, d, 2.0).unwrap();
                assert_relative_eq!(classical, (n - 1) as f64 * d as f64 / 2.0);
                let phi = 1.3;
                let q = global_q(&state, d, phi).unwrap();
                assert_relative_eq!(q, (n - 1) as f64 * (d as f64 + phi - 2.0) / 2.0);
            }
        }
    }

    #[test]
    fn orbital_lambda_values() {
        assert_relative_eq!(orbital_lambda(&bgs(3), 3).unwrap(), 1.0);
        assert_relative_eq!(orbital_lambda(&bgs(3), 4).unwrap(), 2.0);
        let state = QuantumNumbers::new(vec![(0, 1), (0, 0), (0, 0)]).unwrap();
        assert_relative_eq!(orbital_lambda(&state, 3).unwrap(), 2.5);
        assert!(matches!(
            orbital_lambda(&bgs(3), 1),
            Err(Error::UnsupportedImprovement(_))
        ));
    }

    #[test]
    fn system_spec_validation() {
        let pot = Potential::power(1.0, -1.0).unwrap();
        assert!(SystemSpec::bosonic_ground(3, 1.0, 3, pot.clone()).is_ok());
        assert!(SystemSpec::bosonic_ground(1, 1.0, 3, pot.clone()).is_err());
        assert!(SystemSpec::bosonic_ground(3, -1.0, 3, pot.clone()).is_err());
        // wrong number of internal coordinates
        let state = QuantumNumbers::ground(3).unwrap();
        assert!(SystemSpec::new(3, 1.0, 3, Kinematics::NonRelativistic, pot, state).is_err());
    }

    #[test]
    fn r0_is_derived_from_rho0() {
        let sol = EnvelopeSolution {
            energy: -0.5,
            p0: 1.0,
            rho0: 3.0,
            q_used: 3.0,
            phi_used: 2.0,
            character: VariationalCharacter::UpperBound,
            root_count: 1,
            residual_rel: 0.0,
        };
        assert_relative_eq!(sol.r0_squared(3.0), 27.0);
    }
}
