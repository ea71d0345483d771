//! Composite Gauss–Legendre rules for single and nested (time-ordered)
//! matrix-valued integrals.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

pub const DEFAULT_RULE_ORDER: usize = 4;
pub const DEFAULT_PANELS: usize = 1;

/// Node count per panel and number of equal panels on each interval.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    rule_order: usize,
    panels: usize,
    // nodes and weights on [-1, 1]
    reference: Vec<(f64, f64)>,
}

impl QuadratureSpec {
    pub fn new(rule_order: usize, panels: usize) -> Result<Self> {
        if rule_order < 2 {
            return Err(Error::InvalidParameter(format!(
                "quadrature rule order must be at least 2, got {rule_order}"
            )));
        }
        if panels == 0 {
            return Err(Error::InvalidParameter(
                "quadrature needs at least one panel".into(),
            ));
        }
        let degree = NonZeroUsize::new(rule_order).expect("checked above");
        let reference = GaussLegendre::new(degree).as_node_weight_pairs().to_vec();
        Ok(Self {
            rule_order,
            panels,
            reference,
        })
    }

    pub fn with_order(rule_order: usize) -> Result<Self> {
        Self::new(rule_order, DEFAULT_PANELS)
    }

    pub fn rule_order(&self) -> usize {
        self.rule_order
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    /// Nodes and weights of the composite rule on `[a, b]`.
    pub fn nodes(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let width = (b - a) / self.panels as f64;
        let mut out = Vec::with_capacity(self.panels * self.rule_order);
        for p in 0..self.panels {
            let lo = a + width * p as f64;
            let half = 0.5 * width;
            let mid = lo + half;
            out.extend(
                self.reference
                    .iter()
                    .map(|&(x, w)| (mid + half * x, half * w)),
            );
        }
        out
    }

    pub fn integrate_scalar(&self, a: f64, b: f64, f: impl Fn(f64) -> Complex64) -> Complex64 {
        self.nodes(a, b).into_iter().map(|(s, w)| f(s) * w).sum()
    }

    /// `∫_a^b f(s) ds` for a matrix-valued integrand of dimension `dim`.
    pub fn integrate_matrix(
        &self,
        dim: usize,
        a: f64,
        b: f64,
        f: impl Fn(f64) -> ComplexMatrix,
    ) -> ComplexMatrix {
        let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
        for (s, w) in self.nodes(a, b) {
            acc += f(s).raw() * Complex64::new(w, 0.0);
        }
        ComplexMatrix::from_raw(acc)
    }

    /// First- and second-order time-ordered integrals of `f` over `[a, b]`:
    /// `(∫ f(s) ds, ∫ ds f(s) ∫_a^s ds₁ f(s₁))`.
    ///
    /// The inner integral is evaluated with the same composite rule on
    /// `[a, s]` for every outer node `s`.
    pub fn ordered_integrals(
        &self,
        dim: usize,
        a: f64,
        b: f64,
        f: impl Fn(f64) -> ComplexMatrix,
    ) -> (ComplexMatrix, ComplexMatrix) {
        let mut first = DMatrix::<Complex64>::zeros(dim, dim);
        let mut second = DMatrix::<Complex64>::zeros(dim, dim);
        for (s, w) in self.nodes(a, b) {
            let outer = f(s);
            let w = Complex64::new(w, 0.0);
            first += outer.raw() * w;
            let inner = self.integrate_matrix(dim, a, s, &f);
            second += (outer.raw() * inner.raw()) * w;
        }
        (
            ComplexMatrix::from_raw(first),
            ComplexMatrix::from_raw(second),
        )
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::new(DEFAULT_RULE_ORDER, DEFAULT_PANELS).expect("default rule is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_specs() {
        assert!(QuadratureSpec::new(1, 1).is_err());
        assert!(QuadratureSpec::new(4, 0).is_err());
        let d = QuadratureSpec::default();
        assert_eq!((d.rule_order(), d.panels()), (4, 1));
    }

    #[test]
    fn exact_for_low_degree_polynomials() {
        let q = QuadratureSpec::new(4, 3).unwrap();
        // degree 7 is the limit for 4 nodes
        let val = q.integrate_scalar(0.5, 2.0, |s| Complex64::new(s.powi(7), 0.0));
        let exact = (2.0f64.powi(8) - 0.5f64.powi(8)) / 8.0;
        assert!((val.re - exact).abs() <= 1e-12 * exact);
    }

    #[test]
    fn ordered_integral_of_constant() {
        let q = QuadratureSpec::default();
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[2.0, 0.0]]).unwrap();
        let (first, second) = q.ordered_integrals(2, 1.0, 1.5, |_| m.clone());
        let h = 0.5;
        assert!(first.distance(&m.scale(Complex64::new(h, 0.0))).unwrap() <= 1e-14);
        let m2 = m
            .matmul(&m)
            .unwrap()
            .scale(Complex64::new(h * h / 2.0, 0.0));
        assert!(second.distance(&m2).unwrap() <= 1e-14);
    }

    #[test]
    fn ordered_integral_respects_time_order() {
        // f(s) = s·A + B with [A, B] ≠ 0; second-order term is
        // A²(h³/6)... computed on [0, 1] by hand:
        //   ∫₀¹ds ∫₀^s ds₁ (sA + B)(s₁A + B)
        //   = A²/8 + AB/3 + BA/6 + B²/2
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]).unwrap();
        let q = QuadratureSpec::default();
        let (_, second) = q.ordered_integrals(2, 0.0, 1.0, |s| {
            a.scale(Complex64::new(s, 0.0)).add(&b).unwrap()
        });
        let ab = a.matmul(&b).unwrap();
        let ba = b.matmul(&a).unwrap();
        let expect = ab
            .scale(Complex64::new(1.0 / 3.0, 0.0))
            .add(&ba.scale(Complex64::new(1.0 / 6.0, 0.0)))
            .unwrap();
        assert!(second.distance(&expect).unwrap() <= 1e-14);
    }
}
