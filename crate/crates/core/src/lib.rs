//! Second-order projection-operator (time-convolutionless) expansion of the
//! quantum evolution operator, with a truncated Dyson comparator, semigroup
//! propagation over long times and imaginary-time partition functions.
//!
//! Matrices are dense complex `n × n` in the computational basis. `P` keeps
//! the diagonal, `Q = 1 − P` keeps the rest.

pub mod error;
pub mod expansion;
pub mod hamiltonian;
pub mod interaction;
pub mod matrix;
pub mod models;
pub mod projection;
pub mod propagation;
pub mod quadrature;
pub mod thermo;

pub use error::{Error, Result};
pub use expansion::{dyson2_step, k2_integral, sigma2_matrix, tcl2_step, Tcl2StepResult};
pub use hamiltonian::TimeDependentHamiltonian;
pub use interaction::InteractionFrame;
pub use matrix::ComplexMatrix;
pub use models::{lambda_hamiltonian, xy_hamiltonian, Field, LambdaParams, XYChainParams};
pub use projection::{project_diag, project_offdiag, ProjectorPair};
pub use propagation::{
    propagate, reference_propagate, Method, Observable, ObservableSeries, PropagatorTrajectory,
};
pub use quadrature::QuadratureSpec;
pub use thermo::{partition_sweep, z_dyson2, z_exact, z_tcl2, PartitionResult};

pub use num_complex::Complex64;
