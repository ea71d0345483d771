//! Interaction frame with respect to the diagonal part of `H`.
//!
//! `U(t, t0) = U₀(t, t0) U_I(t, t0)` with `U₀ = exp[−iΦ(t)]`,
//! `Φ(t) = ∫_{t0}^{t} P H(s) ds`, and `U_I` generated by the zero-diagonal
//! `H_I(t) = e^{iΦ(t)} Q H(t) e^{−iΦ(t)}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::TimeDependentHamiltonian;
use crate::matrix::ComplexMatrix;
use crate::projection::project_offdiag;
use crate::quadrature::QuadratureSpec;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone)]
pub struct InteractionFrame {
    base: TimeDependentHamiltonian,
    t0: f64,
    quad: QuadratureSpec,
}

impl InteractionFrame {
    pub fn new(base: TimeDependentHamiltonian, t0: f64, quad: QuadratureSpec) -> Self {
        Self { base, t0, quad }
    }

    pub fn base(&self) -> &TimeDependentHamiltonian {
        &self.base
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    /// Diagonal entries of `Φ(t)`, without the `t ≥ t0` check.
    fn phase_entries(&self, t: f64) -> Vec<Complex64> {
        let dim = self.base.dim();
        if self.base.has_zero_diagonal() {
            return vec![Complex64::new(0.0, 0.0); dim];
        }
        if self.base.is_constant() {
            let d = t - self.t0;
            return self
                .base
                .evaluate(self.t0)
                .diagonal()
                .into_iter()
                .map(|x| x * d)
                .collect();
        }
        let mut acc = vec![Complex64::new(0.0, 0.0); dim];
        for (s, w) in self.quad.nodes(self.t0, t) {
            for (a, x) in acc.iter_mut().zip(self.base.evaluate(s).diagonal()) {
                *a += x * w;
            }
        }
        acc
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if t < self.t0 {
            Err(Error::InvalidInterval { t0: self.t0, t })
        } else {
            Ok(())
        }
    }

    /// `Φ(t) = ∫_{t0}^{t} P H(s) ds` as a diagonal matrix.
    pub fn integrate_diagonal_phase(&self, t: f64) -> Result<ComplexMatrix> {
        self.check_time(t)?;
        ComplexMatrix::from_diagonal(&self.phase_entries(t))
    }

    /// `U₀(t, t0) = exp[−iΦ(t)]`.
    pub fn u_zero(&self, t: f64) -> Result<ComplexMatrix> {
        self.integrate_diagonal_phase(t)?.scale(-I).exp_diagonal()
    }

    /// `H_I(t)`; identical to the base Hamiltonian when that has a zero diagonal.
    pub fn interaction_hamiltonian(&self) -> TimeDependentHamiltonian {
        if self.base.has_zero_diagonal() {
            return self.base.clone();
        }
        let frame = self.clone();
        TimeDependentHamiltonian::new(self.base.dim(), true, move |t| {
            let phase = frame.phase_entries(t);
            let q = project_offdiag(&frame.base.evaluate(t));
            let rotor: Vec<Complex64> = phase.iter().map(|p| (I * p).exp()).collect();
            let counter: Vec<Complex64> = phase.iter().map(|p| (-I * p).exp()).collect();
            ComplexMatrix::from_fn(q.dim(), |j, k| rotor[j] * q[(j, k)] * counter[k])
                .expect("finite phases")
        })
        .expect("frame preserves dimension")
    }
}

/// `U = U₀ U_I`.
pub fn recombine(u0: &ComplexMatrix, ui: &ComplexMatrix) -> Result<ComplexMatrix> {
    u0.matmul(ui)
}
