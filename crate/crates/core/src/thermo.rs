//! Partition functions `Z = Tr exp(−βH)` from the evolution operator at
//! imaginary time `t = −iβ`.
//!
//! For a zero-diagonal `H` the second-order diagonal factor becomes
//! `exp[β² P H² / 2]`, so the projection-operator estimate is
//! `Σ_k exp(β² (H²)_kk / 2)` while the truncated Dyson series gives
//! `Tr(I + β² H² / 2)`. `(H²)_kk = Σ_j |H_kj|²` for Hermitian `H`, so neither
//! needs the full product.

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::models::{xy_hamiltonian, XYChainParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionResult {
    pub a_beta: f64,
    pub z_exact: f64,
    pub z_tcl2: f64,
    pub z_dyson2: f64,
    pub z_average: f64,
}

fn check_beta(beta: f64) -> Result<()> {
    if beta >= 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "inverse temperature must be finite and nonnegative, got {beta}"
        )))
    }
}

fn check_zero_diagonal(h: &ComplexMatrix) -> Result<()> {
    let norm = h.diagonal_norm();
    if norm <= 1e-13 * h.frobenius_norm().max(1.0) {
        Ok(())
    } else {
        Err(Error::NonZeroDiagonal { norm })
    }
}

/// `(H²)_kk` for Hermitian `H`, as squared row norms.
pub fn squared_row_norms(h: &ComplexMatrix) -> Vec<f64> {
    let n = h.dim();
    (0..n)
        .map(|k| (0..n).map(|j| h[(k, j)].norm_sqr()).sum())
        .collect()
}

fn exact_from_spectrum(eigenvalues: &[f64], beta: f64) -> f64 {
    eigenvalues.iter().map(|&e| (-beta * e).exp()).sum()
}

fn tcl2_from_weights(weights: &[f64], beta: f64) -> f64 {
    weights.iter().map(|&w| (0.5 * beta * beta * w).exp()).sum()
}

fn dyson2_from_weights(weights: &[f64], beta: f64) -> f64 {
    weights.len() as f64 + 0.5 * beta * beta * weights.iter().sum::<f64>()
}

/// `Tr exp(−βH)` by eigendecomposition.
pub fn z_exact(h: &ComplexMatrix, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(exact_from_spectrum(&h.hermitian_eigenvalues()?, beta))
}

/// `Tr exp[β² P H² / 2]`; requires a Hermitian, zero-diagonal `H`.
pub fn z_tcl2(h: &ComplexMatrix, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    h.check_hermitian()?;
    check_zero_diagonal(h)?;
    Ok(tcl2_from_weights(&squared_row_norms(h), beta))
}

/// `Tr(I + β² H² / 2)`; requires a Hermitian, zero-diagonal `H`.
pub fn z_dyson2(h: &ComplexMatrix, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    h.check_hermitian()?;
    check_zero_diagonal(h)?;
    Ok(dyson2_from_weights(&squared_row_norms(h), beta))
}

/// Closed-form projection-operator estimate for the 10-site chain.
pub fn z_closed_form_tcl_n10(a_beta: f64) -> f64 {
    let x = a_beta * a_beta;
    8.0 * (2.5 * x).exp() * (0.5 * x).cosh() * (44.0 * x.cosh() + (2.0 * x).cosh() + 83.0)
}

/// Closed-form Dyson estimate for the 10-site chain.
pub fn z_closed_form_dyson_n10(a_beta: f64) -> f64 {
    1024.0 + 2560.0 * a_beta * a_beta
}

/// All four partition functions of the XY chain on a grid of `Aβ` values.
///
/// The chain is diagonalized once; each grid point then costs `O(2^N)`.
pub fn partition_sweep(p: &XYChainParams, a_beta_grid: &[f64]) -> Result<Vec<PartitionResult>> {
    if p.coupling() == 0.0 {
        return Err(Error::InvalidParameter(
            "Aβ grid needs a nonzero coupling".into(),
        ));
    }
    for &a_beta in a_beta_grid {
        check_beta(a_beta)?;
    }
    let h = xy_hamiltonian(p);
    let spectrum = h.hermitian_eigenvalues()?;
    let weights = squared_row_norms(&h);
    Ok(a_beta_grid
        .iter()
        .map(|&a_beta| {
            let beta = a_beta / p.coupling().abs();
            let z_tcl2 = tcl2_from_weights(&weights, beta);
            let z_dyson2 = dyson2_from_weights(&weights, beta);
            PartitionResult {
                a_beta,
                z_exact: exact_from_spectrum(&spectrum, beta),
                z_tcl2,
                z_dyson2,
                z_average: 0.5 * (z_tcl2 + z_dyson2),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::domain_wall_count;

    fn chain(n: usize, a: f64) -> ComplexMatrix {
        xy_hamiltonian(&XYChainParams::new(n, a).unwrap())
    }

    #[test]
    fn infinite_temperature() {
        let h = chain(5, 1.0);
        assert_eq!(z_exact(&h, 0.0).unwrap(), 32.0);
        assert_eq!(z_tcl2(&h, 0.0).unwrap(), 32.0);
        assert_eq!(z_dyson2(&h, 0.0).unwrap(), 32.0);
    }

    #[test]
    fn two_level_exact() {
        let h = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap();
        assert!((z_exact(&h, 1.0).unwrap() - 2.0 * 1f64.cosh()).abs() <= 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        let h = chain(4, 1.0);
        assert!(z_exact(&h, -1.0).is_err());
        let diag = ComplexMatrix::from_real_rows(&[&[1.0, 0.5], &[0.5, 0.0]]).unwrap();
        assert!(matches!(
            z_tcl2(&diag, 1.0),
            Err(Error::NonZeroDiagonal { .. })
        ));
        assert!(matches!(
            z_dyson2(&diag, 1.0),
            Err(Error::NonZeroDiagonal { .. })
        ));
        let skew = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(
            z_exact(&skew, 1.0),
            Err(Error::NotHermitian { .. })
        ));
        let p = XYChainParams::new(4, 0.0).unwrap();
        assert!(partition_sweep(&p, &[0.1]).is_err());
        let p = XYChainParams::new(4, 1.0).unwrap();
        assert!(partition_sweep(&p, &[-0.1]).is_err());
    }

    #[test]
    fn row_norms_match_full_square() {
        for n in 3..=6 {
            let h = chain(n, 1.3);
            let h2 = h.matmul(&h).unwrap();
            for (k, w) in squared_row_norms(&h).into_iter().enumerate() {
                assert!((h2[(k, k)].re - w).abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn tcl2_matches_domain_wall_sum() {
        for n in [4usize, 6] {
            let a = 0.8;
            let h = chain(n, a);
            for beta in [0.3, 1.1] {
                let walls: f64 = (0..1usize << n)
                    .map(|k| {
                        (0.5 * beta * beta * a * a * domain_wall_count(k, n).unwrap() as f64).exp()
                    })
                    .sum();
                let z = z_tcl2(&h, beta).unwrap();
                assert!((z - walls).abs() <= 1e-12 * walls);
            }
        }
    }

    #[test]
    fn closed_forms_at_zero_and_one() {
        assert_eq!(z_closed_form_tcl_n10(0.0), 1024.0);
        assert_eq!(z_closed_form_dyson_n10(0.0), 1024.0);
        assert_eq!(z_closed_form_dyson_n10(1.0), 3584.0);
        assert_eq!(z_closed_form_dyson_n10(0.5), 1664.0);
    }

    #[test]
    fn closed_form_tcl_matches_binomial_expansion() {
        for ab in [0.2, 0.5, 1.0] {
            let x: f64 = ab * ab;
            let series = 2.0
                * (1.0
                    + 45.0 * x.exp()
                    + 210.0 * (2.0 * x).exp()
                    + 210.0 * (3.0 * x).exp()
                    + 45.0 * (4.0 * x).exp()
                    + (5.0 * x).exp());
            assert!((z_closed_form_tcl_n10(ab) - series).abs() <= 1e-12 * series);
        }
    }

    #[test]
    fn imaginary_time_semigroup() {
        let h = chain(4, 0.9);
        let (b1, b2) = (0.35, 0.8);
        let left = h
            .exp_hermitian((-b1).into())
            .unwrap()
            .matmul(&h.exp_hermitian((-b2).into()).unwrap())
            .unwrap();
        let right = h.exp_hermitian((-(b1 + b2)).into()).unwrap();
        assert!(left.distance(&right).unwrap() <= 1e-10);
    }

    #[test]
    fn estimates_agree_to_second_order() {
        let h = chain(6, 1.0);
        let tr2: f64 = squared_row_norms(&h).iter().sum();
        let residual = |beta: f64, z: f64| (z - 64.0 - 0.5 * beta * beta * tr2).abs();
        for f in [z_exact, z_tcl2] {
            let (b, hb) = (0.1, 0.05);
            let ratio = residual(b, f(&h, b).unwrap()) / residual(hb, f(&h, hb).unwrap());
            assert!((15.0..17.0).contains(&ratio), "ratio {ratio}");
        }
    }

    #[test]
    fn small_sweep_is_monotone() {
        let p = XYChainParams::new(6, 1.0).unwrap();
        let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
        let rows = partition_sweep(&p, &grid).unwrap();
        assert_eq!(rows[0].z_exact, 64.0);
        assert_eq!(rows[0].z_tcl2, 64.0);
        for w in rows.windows(2) {
            assert!(w[1].z_exact >= w[0].z_exact);
            assert!(w[1].z_tcl2 >= w[0].z_tcl2);
            assert!(w[1].z_dyson2 >= w[0].z_dyson2);
            assert!(w[1].z_average >= w[0].z_average);
        }
    }
}
