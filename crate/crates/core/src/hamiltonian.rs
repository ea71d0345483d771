use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

type Evaluator = dyn Fn(f64) -> ComplexMatrix + Send + Sync;

/// A Hamiltonian `t ↦ H(t)` of fixed dimension.
///
/// Two flags describe structure the numerics exploit: `has_zero_diagonal`
/// (the interaction frame is trivial) and `is_constant` (frame phases are
/// exact products instead of quadratures).
#[derive(Clone)]
pub struct TimeDependentHamiltonian {
    dim: usize,
    evaluator: Arc<Evaluator>,
    has_zero_diagonal: bool,
    is_constant: bool,
}

impl TimeDependentHamiltonian {
    /// Wraps an evaluator. `has_zero_diagonal` is a promise by the caller;
    /// see [`Self::check_zero_diagonal`].
    pub fn new<F>(dim: usize, has_zero_diagonal: bool, evaluator: F) -> Result<Self>
    where
        F: Fn(f64) -> ComplexMatrix + Send + Sync + 'static,
    {
        if dim == 0 {
            return Err(Error::InvalidDimension(dim));
        }
        let probe = evaluator(0.0);
        if probe.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: probe.dim(),
            });
        }
        Ok(Self {
            dim,
            evaluator: Arc::new(evaluator),
            has_zero_diagonal,
            is_constant: false,
        })
    }

    pub fn constant(matrix: ComplexMatrix) -> Self {
        let dim = matrix.dim();
        let has_zero_diagonal = matrix.diagonal_norm() == 0.0;
        Self {
            dim,
            evaluator: Arc::new(move |_| matrix.clone()),
            has_zero_diagonal,
            is_constant: true,
        }
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Ok(Self::constant(ComplexMatrix::zeros(dim)?))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn has_zero_diagonal(&self) -> bool {
        self.has_zero_diagonal
    }

    pub fn is_constant(&self) -> bool {
        self.is_constant
    }

    pub fn evaluate(&self, t: f64) -> ComplexMatrix {
        let h = (self.evaluator)(t);
        debug_assert_eq!(h.dim(), self.dim);
        h
    }

    /// Verifies the zero-diagonal promise at the given sample times.
    pub fn check_zero_diagonal(&self, samples: &[f64]) -> Result<()> {
        for &t in samples {
            let h = self.evaluate(t);
            let norm = h.diagonal_norm();
            if norm > 1e-13 * h.frobenius_norm().max(1.0) {
                return Err(Error::NonZeroDiagonal { norm });
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TimeDependentHamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TimeDependentHamiltonian")
            .field("dim", &self.dim)
            .field("has_zero_diagonal", &self.has_zero_diagonal)
            .field("is_constant", &self.is_constant)
            .finish_non_exhaustive()
    }
}
