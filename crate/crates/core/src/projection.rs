//! The diagonal projector `P` and its complement `Q = 1 − P`, acting on
//! matrices in the computational basis.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;

/// `P A`: keeps the diagonal, zeroes everything else.
pub fn project_diag(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    ComplexMatrix::from_raw(nalgebra::DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            a[(i, j)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// `Q A`: zeroes the diagonal.
pub fn project_offdiag(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    ComplexMatrix::from_raw(nalgebra::DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(0.0, 0.0)
        } else {
            a[(i, j)]
        }
    }))
}

/// Basis size tag for a `(P, Q)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectorPair {
    dim: usize,
}

impl ProjectorPair {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn diag(&self, a: &ComplexMatrix) -> crate::Result<ComplexMatrix> {
        self.check(a)?;
        Ok(project_diag(a))
    }

    pub fn offdiag(&self, a: &ComplexMatrix) -> crate::Result<ComplexMatrix> {
        self.check(a)?;
        Ok(project_offdiag(a))
    }

    fn check(&self, a: &ComplexMatrix) -> crate::Result<()> {
        if a.dim() == self.dim {
            Ok(())
        } else {
            Err(crate::Error::DimensionMismatch {
                left: self.dim,
                right: a.dim(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows).unwrap()
    }

    #[test]
    fn worked_examples() {
        let a = real(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(project_diag(&a), real(&[&[1.0, 0.0], &[0.0, 4.0]]));
        assert_eq!(project_offdiag(&a), real(&[&[0.0, 2.0], &[3.0, 0.0]]));

        let i3 = ComplexMatrix::identity(3).unwrap();
        assert_eq!(project_diag(&i3), i3);
        assert_eq!(project_offdiag(&i3), ComplexMatrix::zeros(3).unwrap());

        let e32 = ComplexMatrix::unit(3, 2, 1).unwrap();
        assert_eq!(project_diag(&e32), ComplexMatrix::zeros(3).unwrap());
    }

    #[test]
    fn pair_checks_dimension() {
        let pair = ProjectorPair::new(3);
        assert!(pair.diag(&ComplexMatrix::identity(3).unwrap()).is_ok());
        assert!(pair.offdiag(&ComplexMatrix::identity(2).unwrap()).is_err());
    }

    fn matrix_strategy() -> impl Strategy<Value = ComplexMatrix> {
        (2usize..=8).prop_flat_map(|n| {
            prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), n * n).prop_map(|v| {
                let data: Vec<Complex64> =
                    v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect();
                ComplexMatrix::from_row_major(&data).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn projector_algebra(a in matrix_strategy()) {
            let zero = ComplexMatrix::zeros(a.dim()).unwrap();
            let p = project_diag(&a);
            let q = project_offdiag(&a);
            prop_assert!(project_diag(&p).distance(&p).unwrap() <= 1e-14);
            prop_assert!(project_offdiag(&q).distance(&q).unwrap() <= 1e-14);
            prop_assert!(project_diag(&q).distance(&zero).unwrap() <= 1e-14);
            prop_assert!(project_offdiag(&p).distance(&zero).unwrap() <= 1e-14);
            prop_assert!(p.add(&q).unwrap().distance(&a).unwrap() <= 1e-14);
            // a zero-diagonal matrix is annihilated by P
            prop_assert!(project_diag(&q).frobenius_norm() == 0.0);
        }
    }
}
