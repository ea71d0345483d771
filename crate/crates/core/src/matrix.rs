//! Dense complex square matrices.
//!
//! [`ComplexMatrix`] carries every operator in the crate: Hamiltonians,
//! propagators, projector images. Storage is a dense `nalgebra` matrix; the
//! only non-trivial factorization used is the Hermitian eigendecomposition
//! behind [`ComplexMatrix::exp_hermitian`].

use std::fmt;
use std::ops::Index;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance for [`ComplexMatrix::exp_diagonal`]'s diagonality check.
pub const DIAGONAL_TOLERANCE: f64 = 1e-14;
/// Relative tolerance for Hermiticity checks.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self(DMatrix::identity(dim, dim)))
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self(DMatrix::zeros(dim, dim)))
    }

    /// Builds a matrix entry by entry, rejecting non-finite values.
    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        check_dim(dim)?;
        let m = DMatrix::from_fn(dim, dim, f);
        let out = Self(m);
        out.check_finite()?;
        Ok(out)
    }

    /// Builds a matrix from row-major data of length `dim²`.
    pub fn from_row_major(data: &[Complex64]) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim * dim != data.len() {
            return Err(Error::NotSquare { len: data.len() });
        }
        Self::from_fn(dim, |i, j| data[i * dim + j])
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::NotSquare {
                len: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::from_fn(dim, |i, j| rows[i][j])
    }

    /// Builds a real matrix from rows of `f64`.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Result<Self> {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i] } else { ZERO })
    }

    /// The matrix unit `E_ij` (zero-based indices).
    pub fn unit(dim: usize, row: usize, col: usize) -> Result<Self> {
        check_index(row, dim)?;
        check_index(col, dim)?;
        Self::from_fn(dim, |i, j| if i == row && j == col { ONE } else { ZERO })
    }

    pub(crate) fn from_raw(m: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        Self(m)
    }

    pub(crate) fn raw(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<Complex64> {
        (row < self.dim() && col < self.dim()).then(|| self.0[(row, col)])
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|k| self.0[(k, k)]).collect()
    }

    /// Row-major copy of the entries.
    pub fn to_row_major(&self) -> Vec<Complex64> {
        let n = self.dim();
        (0..n * n).map(|k| self.0[(k / n, k % n)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.check_finite().is_ok()
    }

    fn check_finite(&self) -> Result<()> {
        let n = self.dim();
        for j in 0..n {
            for i in 0..n {
                let z = self.0[(i, j)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            })
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self(&self.0 * &other.0))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self(&self.0 + &other.0))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self(&self.0 - &other.0))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self(&self.0 * factor)
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|k| self.0[(k, k)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for j in 0..n {
            for i in 0..n {
                acc += self.0[(i, j)].norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Frobenius norm of `self − other`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.frobenius_norm())
    }

    /// Kronecker product; `self` indexes the most significant block.
    pub fn kron(&self, other: &Self) -> Self {
        let (m, n) = (self.dim(), other.dim());
        let mut out = DMatrix::<Complex64>::zeros(m * n, m * n);
        for ai in 0..m {
            for aj in 0..m {
                let a = self.0[(ai, aj)];
                if a == ZERO {
                    continue;
                }
                for bj in 0..n {
                    for bi in 0..n {
                        out[(ai * n + bi, aj * n + bj)] = a * other.0[(bi, bj)];
                    }
                }
            }
        }
        Self(out)
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn offdiagonal_norm(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for j in 0..n {
            for i in 0..n {
                if i != j {
                    acc += self.0[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    /// Euclidean norm of the diagonal.
    pub fn diagonal_norm(&self) -> f64 {
        self.diagonal()
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// ‖H − H†‖_F.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for j in 0..n {
            for i in 0..n {
                acc += (self.0[(i, j)] - self.0[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn check_hermitian(&self) -> Result<()> {
        let defect = self.hermitian_defect();
        let tolerance = HERMITIAN_TOLERANCE * self.frobenius_norm();
        if defect <= tolerance {
            Ok(())
        } else {
            Err(Error::NotHermitian { defect, tolerance })
        }
    }

    /// Entrywise exponential of a diagonal matrix.
    pub fn exp_diagonal(&self) -> Result<Self> {
        let offdiag = self.offdiagonal_norm();
        let tolerance = DIAGONAL_TOLERANCE * self.frobenius_norm();
        if offdiag > tolerance {
            return Err(Error::NotDiagonal { offdiag, tolerance });
        }
        let diag: Vec<Complex64> = self.diagonal().into_iter().map(Complex64::exp).collect();
        Self::from_diagonal(&diag)
    }

    /// `exp(scale·H)` for Hermitian `H`, via `H = V Λ V†`.
    pub fn exp_hermitian(&self, scale: Complex64) -> Result<Self> {
        self.check_hermitian()?;
        let n = self.dim();
        let eig =
            SymmetricEigen::try_new(self.0.clone(), f64::EPSILON, 0).ok_or(Error::Eigensolver)?;
        let v = &eig.eigenvectors;
        let lambda = &eig.eigenvalues;
        let scaled = DMatrix::from_fn(n, n, |i, k| v[(i, k)] * (scale * lambda[k]).exp());
        Ok(Self(scaled * v.adjoint()))
    }

    /// Eigenvalues of a Hermitian matrix, in nondecreasing order.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        self.check_hermitian()?;
        let mut values: Vec<f64> = self
            .0
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        values.sort_by(f64::total_cmp);
        Ok(values)
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        Err(Error::InvalidDimension(dim))
    } else {
        Ok(())
    }
}

pub(crate) fn check_index(index: usize, bound: usize) -> Result<()> {
    if index < bound {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, bound })
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[(i, j)]
    }
}

impl PartialEq for ComplexMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.to_row_major() == other.to_row_major()
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let rows: Vec<Vec<Complex64>> = (0..n)
            .map(|i| (0..n).map(|j| self.0[(i, j)]).collect())
            .collect();
        f.debug_struct("ComplexMatrix")
            .field("dim", &n)
            .field("rows", &rows)
            .finish()
    }
}
