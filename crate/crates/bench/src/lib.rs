//! Shared fixtures for the benchmarks.

use tcl_core::{
    lambda_hamiltonian, xy_hamiltonian, ComplexMatrix, LambdaParams, QuadratureSpec,
    TimeDependentHamiltonian, XYChainParams,
};

pub fn lambda_system() -> TimeDependentHamiltonian {
    lambda_hamiltonian(&LambdaParams::reference())
}

pub fn xy_chain(sites: usize) -> ComplexMatrix {
    xy_hamiltonian(&XYChainParams::new(sites, 1.0).expect("valid chain"))
}

pub fn xy_chain_dynamics(sites: usize) -> TimeDependentHamiltonian {
    TimeDependentHamiltonian::constant(xy_chain(sites))
}

pub fn default_quadrature() -> QuadratureSpec {
    QuadratureSpec::default()
}
