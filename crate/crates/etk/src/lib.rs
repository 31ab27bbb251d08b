//! Envelope-theory toolkit for N-body Hamiltonians with pairwise central
//! potentials.
//!
//! The envelope theory approximates H = Σ T(p_i) + Σ_{i<j} V(r_ij) by tangent
//! harmonic-oscillator Hamiltonians, which reduces each level to three
//! compact equations for the energy E and the scales p0, rho0. This crate
//! provides:
//!
//! - the generic compact-equation solver ([`solver`]) plus the closed forms
//!   for attractive power laws and the truncated Coulomb well
//!   ([`closed_form`]),
//! - the φ-improvement through the dominantly-orbital coupling
//!   ([`improvement`]),
//! - a catalog of potential families with concavity metadata and the
//!   upper/lower-bound classification ([`potentials`]),
//! - an independent correlated-Gaussian variational reference for the
//!   three-boson ground state ([`oracle`]),
//! - the accuracy-study sweeps comparing all three ([`experiments`]).
//!
//! Natural units (ħ = c = 1) throughout.
//!
//! ```
//! use etk::{Potential, SystemSpec};
//!
//! // three unit-mass bosons bound by -1/r
//! let spec = SystemSpec::three_bosons(1.0, Potential::power(1.0, -1.0)?)?;
//! let classical = etk::solver::solve_compact(&spec, 2.0)?;
//! assert!((classical.energy + 0.5).abs() < 1e-9);
//! let improved = etk::improvement::solve_improved(&spec)?;
//! assert!((improved.energy + 1.125).abs() < 1e-7);
//! # Ok::<(), etk::Error>(())
//! ```

pub mod closed_form;
pub mod error;
pub mod experiments;
pub mod improvement;
pub mod model;
pub mod oracle;
pub mod potentials;
pub mod quadrature;
mod special;
pub mod solver;

pub use error::{Error, Result};
pub use improvement::PhiReport;
pub use model::{
    global_q, orbital_lambda, pair_count, EnvelopeSolution, QuantumNumbers, SystemSpec,
    VariationalCharacter,
};
pub use oracle::{GaussianBasisConfig, OracleResult};
pub use potentials::{classify_character, CurvatureSign, Kinematics, Potential};
pub use solver::SolverConfig;
