//! Second-order short-time propagators.
//!
//! The projection-operator step writes the interaction-frame propagator as
//! a product `U_I = M · D` of a diagonal factor `D = exp[∫K]` and a
//! correction `M = [1 − Σ]⁻¹ I`, each truncated at second order in `H_I`:
//!
//! ```text
//! ∫K      = −∫_{t0}^{t} ds ∫_{t0}^{s} ds₁ P H_I(s) H_I(s₁)
//! M       = I − i ∫ Q H_I(s) ds − ∫ ds ∫^{s} ds₁ Q H_I(s) H_I(s₁)
//! ```
//!
//! `[1 − Σ]⁻¹` is never inverted; it is the truncated geometric series
//! `I + Σ₁ + Σ₂` (using `Σ₁² = 0`). The comparator is the second-order
//! Dyson series `I − i∫H − ∫∫ H(t′)H(s)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::TimeDependentHamiltonian;
use crate::interaction::{recombine, InteractionFrame};
use crate::matrix::ComplexMatrix;
use crate::projection::{project_diag, project_offdiag};
use crate::quadrature::QuadratureSpec;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// One projection-operator step over `[t0, t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tcl2StepResult {
    /// Full propagator `U(t, t0) = U₀ · M · D`.
    pub u_step: ComplexMatrix,
    /// `D = exp[∫K]`, diagonal.
    pub diag_factor: ComplexMatrix,
    /// `M = [1 − Σ]⁻¹ I` to second order.
    pub offdiag_factor: ComplexMatrix,
    /// `U₀ = exp[−i∫PH]`; the identity for zero-diagonal `H`.
    pub frame_factor: ComplexMatrix,
}

impl Tcl2StepResult {
    /// `U_I = M · D`.
    pub fn interaction_propagator(&self) -> ComplexMatrix {
        self.offdiag_factor
            .matmul(&self.diag_factor)
            .expect("same dim")
    }
}

fn check_interval(t0: f64, t: f64) -> Result<()> {
    if t < t0 || !t.is_finite() || !t0.is_finite() {
        Err(Error::InvalidInterval { t0, t })
    } else {
        Ok(())
    }
}

fn check_zero_diagonal(h_i: &TimeDependentHamiltonian) -> Result<()> {
    if h_i.has_zero_diagonal() {
        Ok(())
    } else {
        let norm = h_i.evaluate(0.0).diagonal_norm();
        Err(Error::NonZeroDiagonal { norm })
    }
}

fn ordered(
    h: &TimeDependentHamiltonian,
    t0: f64,
    t: f64,
    quad: &QuadratureSpec,
) -> (ComplexMatrix, ComplexMatrix) {
    if h.is_constant() {
        // exact: H·d and H²·d²/2
        let m = h.evaluate(t0);
        let d = t - t0;
        let square = m.matmul(&m).expect("square");
        return (
            m.scale(Complex64::new(d, 0.0)),
            square.scale(Complex64::new(0.5 * d * d, 0.0)),
        );
    }
    quad.ordered_integrals(h.dim(), t0, t, |s| h.evaluate(s))
}

fn k2_from_second(second: &ComplexMatrix) -> ComplexMatrix {
    project_diag(second).scale(Complex64::new(-1.0, 0.0))
}

fn sigma2_from(first: &ComplexMatrix, second: &ComplexMatrix) -> ComplexMatrix {
    let id = ComplexMatrix::identity(first.dim()).expect("dim ≥ 1");
    id.sub(&project_offdiag(first).scale(I))
        .and_then(|m| m.sub(&project_offdiag(second)))
        .expect("same dim")
}

/// `∫_{t0}^{t} K(s) ds` at second order, a diagonal matrix.
pub fn k2_integral(
    h_i: &TimeDependentHamiltonian,
    t0: f64,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<ComplexMatrix> {
    check_interval(t0, t)?;
    check_zero_diagonal(h_i)?;
    let (_, second) = ordered(h_i, t0, t, quad);
    Ok(k2_from_second(&second))
}

/// `M = [1 − Σ(t)]⁻¹ I` at second order.
pub fn sigma2_matrix(
    h_i: &TimeDependentHamiltonian,
    t0: f64,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<ComplexMatrix> {
    check_interval(t0, t)?;
    check_zero_diagonal(h_i)?;
    let (first, second) = ordered(h_i, t0, t, quad);
    Ok(sigma2_from(&first, &second))
}

/// Second-order projection-operator propagator `U(t, t0)`.
///
/// Accuracy requires `(t − t0)·‖H‖ ≲ 1`; this is not enforced.
pub fn tcl2_step(
    h: &TimeDependentHamiltonian,
    t0: f64,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<Tcl2StepResult> {
    check_interval(t0, t)?;
    let frame = InteractionFrame::new(h.clone(), t0, quad.clone());
    let h_i = frame.interaction_hamiltonian();
    let (first, second) = ordered(&h_i, t0, t, quad);
    let diag_factor = k2_from_second(&second).exp_diagonal()?;
    let offdiag_factor = sigma2_from(&first, &second);
    let frame_factor = frame.u_zero(t)?;
    let u_i = offdiag_factor.matmul(&diag_factor)?;
    let u_step = if h.has_zero_diagonal() {
        u_i
    } else {
        recombine(&frame_factor, &u_i)?
    };
    Ok(Tcl2StepResult {
        u_step,
        diag_factor,
        offdiag_factor,
        frame_factor,
    })
}

/// Second-order Dyson propagator `I − i∫H − ∫dt′∫^{t′}ds H(t′)H(s)`.
pub fn dyson2_step(
    h: &TimeDependentHamiltonian,
    t0: f64,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<ComplexMatrix> {
    check_interval(t0, t)?;
    let (first, second) = ordered(h, t0, t, quad);
    ComplexMatrix::identity(h.dim())?
        .sub(&first.scale(I))?
        .sub(&second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_zero_diag_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
        let a = ComplexMatrix::from_fn(dim, |i, j| {
            if i == j {
                c(0.0, 0.0)
            } else {
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            }
        })
        .unwrap();
        a.add(&a.adjoint()).unwrap().scale(c(0.5, 0.0))
    }

    #[test]
    fn constant_shortcut_matches_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_zero_diag_hermitian(&mut rng, 4);
        let fixed = TimeDependentHamiltonian::constant(m.clone());
        let copy = m.clone();
        let sampled = TimeDependentHamiltonian::new(4, true, move |_| copy.clone()).unwrap();
        assert!(!sampled.is_constant());
        let q = QuadratureSpec::default();
        let a = tcl2_step(&fixed, 0.3, 0.45, &q).unwrap().u_step;
        let b = tcl2_step(&sampled, 0.3, 0.45, &q).unwrap().u_step;
        assert!(a.distance(&b).unwrap() <= 1e-14);
        let a = dyson2_step(&fixed, 0.3, 0.45, &q).unwrap();
        let b = dyson2_step(&sampled, 0.3, 0.45, &q).unwrap();
        assert!(a.distance(&b).unwrap() <= 1e-14);
    }

    #[test]
    fn zero_hamiltonian_gives_identity() {
        let h = TimeDependentHamiltonian::zero(3).unwrap();
        let q = QuadratureSpec::default();
        let id = ComplexMatrix::identity(3).unwrap();
        assert_eq!(
            k2_integral(&h, 0.0, 0.3, &q).unwrap(),
            ComplexMatrix::zeros(3).unwrap()
        );
        assert_eq!(sigma2_matrix(&h, 0.0, 0.3, &q).unwrap(), id);
        assert_eq!(tcl2_step(&h, 0.0, 0.3, &q).unwrap().u_step, id);
        assert_eq!(dyson2_step(&h, 0.0, 0.3, &q).unwrap(), id);
    }

    #[test]
    fn rejects_reversed_interval() {
        let h = TimeDependentHamiltonian::zero(2).unwrap();
        let q = QuadratureSpec::default();
        let err = Error::InvalidInterval { t0: 1.0, t: 0.5 };
        assert_eq!(k2_integral(&h, 1.0, 0.5, &q).unwrap_err(), err);
        assert_eq!(sigma2_matrix(&h, 1.0, 0.5, &q).unwrap_err(), err);
        assert_eq!(tcl2_step(&h, 1.0, 0.5, &q).unwrap_err(), err);
        assert_eq!(dyson2_step(&h, 1.0, 0.5, &q).unwrap_err(), err);
    }

    #[test]
    fn k2_rejects_diagonal_hamiltonian() {
        let h = TimeDependentHamiltonian::constant(ComplexMatrix::identity(2).unwrap());
        let q = QuadratureSpec::default();
        assert!(matches!(
            k2_integral(&h, 0.0, 0.1, &q),
            Err(Error::NonZeroDiagonal { .. })
        ));
    }

    #[test]
    fn constant_hamiltonian_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let q = QuadratureSpec::default();
        for dim in [2, 3, 5] {
            let hm = random_zero_diag_hermitian(&mut rng, dim);
            let h = TimeDependentHamiltonian::constant(hm.clone());
            let (t0, t) = (0.3, 0.45);
            let d = t - t0;
            let h2 = hm.matmul(&hm).unwrap();

            let k = k2_integral(&h, t0, t, &q).unwrap();
            let expect = project_diag(&h2).scale(c(-d * d / 2.0, 0.0));
            assert!(k.distance(&expect).unwrap() <= 1e-12);

            let dy = dyson2_step(&h, t0, t, &q).unwrap();
            let expect = ComplexMatrix::identity(dim)
                .unwrap()
                .sub(&hm.scale(c(0.0, d)))
                .unwrap()
                .sub(&h2.scale(c(d * d / 2.0, 0.0)))
                .unwrap();
            assert!(dy.distance(&expect).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn step_factorization_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let q = QuadratureSpec::default();
        let hm = random_zero_diag_hermitian(&mut rng, 4);
        let h = TimeDependentHamiltonian::constant(hm);
        let step = tcl2_step(&h, 0.0, 0.2, &q).unwrap();
        assert_eq!(step.u_step, step.interaction_propagator());
        assert_eq!(step.diag_factor.offdiagonal_norm(), 0.0);
        assert_eq!(step.frame_factor, ComplexMatrix::identity(4).unwrap());
        let pd = project_diag(&step.u_step);
        assert!(pd.distance(&step.diag_factor).unwrap() <= 1e-13);
    }

    #[test]
    fn first_order_block_is_anti_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let q = QuadratureSpec::default();
        let hm = random_zero_diag_hermitian(&mut rng, 3);
        let h = TimeDependentHamiltonian::constant(hm);
        let (t0, t) = (0.0, 0.15);
        let m = sigma2_matrix(&h, t0, t, &q).unwrap();
        let (first, second) = q.ordered_integrals(3, t0, t, |s| h.evaluate(s));
        let first_order = m
            .sub(&ComplexMatrix::identity(3).unwrap())
            .unwrap()
            .add(&project_offdiag(&second))
            .unwrap();
        assert!(
            first_order
                .distance(&project_offdiag(&first).scale(-I))
                .unwrap()
                <= 1e-15
        );
        let sum = first_order.add(&first_order.adjoint()).unwrap();
        assert!(sum.frobenius_norm() <= 1e-15);
    }

    #[test]
    fn steps_converge_to_each_other_at_third_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let q = QuadratureSpec::default();
        let h = TimeDependentHamiltonian::constant(random_zero_diag_hermitian(&mut rng, 3));
        let gap = |d: f64| {
            let a = tcl2_step(&h, 0.0, d, &q).unwrap().u_step;
            let b = dyson2_step(&h, 0.0, d, &q).unwrap();
            a.distance(&b).unwrap()
        };
        let ratio = gap(0.02) / gap(0.01);
        assert!((7.0..9.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn nonzero_diagonal_uses_frame() {
        // H = diag(d) + V: the step should still be a second-order
        // approximation of exp(−iHτ).
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let q = QuadratureSpec::default();
        let v = random_zero_diag_hermitian(&mut rng, 3);
        let d = ComplexMatrix::from_diagonal(&[c(0.4, 0.0), c(-0.9, 0.0), c(1.3, 0.0)]).unwrap();
        let hm = d.add(&v).unwrap();
        let h = TimeDependentHamiltonian::constant(hm.clone());
        let err = |tau: f64| {
            let step = tcl2_step(&h, 0.0, tau, &q).unwrap();
            assert!(step.frame_factor.offdiagonal_norm() == 0.0);
            let exact = hm.exp_hermitian(c(0.0, -tau)).unwrap();
            step.u_step.distance(&exact).unwrap()
        };
        let ratio = err(0.02) / err(0.01);
        assert!((7.0..9.0).contains(&ratio), "ratio {ratio}");
    }
}
