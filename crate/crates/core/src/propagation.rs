//! Long-time propagation by the semigroup iteration
//! `U(t_k, 0) = U(t_k, t_{k−1}) · U(t_{k−1}, 0)`, plus the fixed-step RK4
//! reference integrator used as ground truth.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expansion::{dyson2_step, tcl2_step};
use crate::hamiltonian::TimeDependentHamiltonian;
use crate::matrix::{check_index, ComplexMatrix};
use crate::quadrature::QuadratureSpec;

/// Default RK4 substeps per output step; with step 0.1 the inner step is 0.005.
pub const DEFAULT_SUBSTEPS: usize = 20;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Tcl2,
    Dyson2,
    Reference,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Tcl2 => "tcl2",
            Method::Dyson2 => "dyson2",
            Method::Reference => "reference",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Samples `U(t_k, 0)` on an increasing grid starting at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagatorTrajectory {
    times: Vec<f64>,
    operators: Vec<ComplexMatrix>,
    method: Method,
}

impl PropagatorTrajectory {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.operators[0].dim()
    }

    pub fn last(&self) -> &ComplexMatrix {
        self.operators.last().expect("trajectory starts at t = 0")
    }
}

/// `0, h, 2h, …, T`; the last interval is shortened when `T/h` is not
/// integral (within a relative `1e-9`).
pub fn time_grid(total: f64, step: f64) -> Result<Vec<f64>> {
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "total time must be positive, got {total}"
        )));
    }
    if !(step > 0.0 && step <= total) {
        return Err(Error::InvalidParameter(format!(
            "step must satisfy 0 < step ≤ total, got {step}"
        )));
    }
    let ratio = total / step;
    let nearest = ratio.round();
    let n = if (ratio - nearest).abs() <= 1e-9 * ratio {
        nearest as usize
    } else {
        ratio.ceil() as usize
    };
    let mut grid: Vec<f64> = (0..n).map(|k| k as f64 * step).collect();
    grid.push(total);
    Ok(grid)
}

/// Propagates with the projection-operator or Dyson step on the grid from
/// [`time_grid`]. Per-step propagators are computed in parallel and folded
/// sequentially, one left-multiplication per step.
pub fn propagate(
    h: &TimeDependentHamiltonian,
    total: f64,
    step: f64,
    method: Method,
    quad: &QuadratureSpec,
) -> Result<PropagatorTrajectory> {
    let times = time_grid(total, step)?;
    let one_step = |t0: f64, t: f64| match method {
        Method::Tcl2 => tcl2_step(h, t0, t, quad).map(|r| r.u_step),
        Method::Dyson2 => dyson2_step(h, t0, t, quad),
        Method::Reference => Err(Error::InvalidParameter(
            "reference trajectories come from reference_propagate".into(),
        )),
    };
    // a constant H gives the same propagator on every full-width interval
    let shared = if h.is_constant() {
        Some(one_step(0.0, step)?)
    } else {
        None
    };
    let steps: Vec<ComplexMatrix> = times
        .par_windows(2)
        .map(|w| match &shared {
            Some(u) if ((w[1] - w[0]) - step).abs() <= 1e-9 * step => Ok(u.clone()),
            _ => one_step(w[0], w[1]),
        })
        .collect::<Result<_>>()?;
    let mut operators = Vec::with_capacity(times.len());
    operators.push(ComplexMatrix::identity(h.dim())?);
    for u in &steps {
        let next = u.matmul(operators.last().expect("nonempty"))?;
        operators.push(next);
    }
    Ok(PropagatorTrajectory {
        times,
        operators,
        method,
    })
}

fn check_substeps(substeps: usize) -> Result<()> {
    if substeps == 0 {
        Err(Error::InvalidParameter(
            "substeps must be at least 1".into(),
        ))
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy)]
enum Side {
    // dU/dt = −iHU
    Forward,
    // dV/dt = iVH
    Inverse,
}

fn rk4_segment(
    h: &TimeDependentHamiltonian,
    t_start: f64,
    t_end: f64,
    substeps: usize,
    initial: DMatrix<Complex64>,
    side: Side,
) -> DMatrix<Complex64> {
    let rhs = |t: f64, u: &DMatrix<Complex64>| -> DMatrix<Complex64> {
        let hm = h.evaluate(t);
        match side {
            Side::Forward => (hm.raw() * u) * -I,
            Side::Inverse => (u * hm.raw()) * I,
        }
    };
    let dt = (t_end - t_start) / substeps as f64;
    let half = Complex64::new(0.5 * dt, 0.0);
    let full = Complex64::new(dt, 0.0);
    let sixth = Complex64::new(dt / 6.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let mut u = initial;
    for k in 0..substeps {
        let t = t_start + k as f64 * dt;
        let k1 = rhs(t, &u);
        let k2 = rhs(t + 0.5 * dt, &(&u + &k1 * half));
        let k3 = rhs(t + 0.5 * dt, &(&u + &k2 * half));
        let k4 = rhs(t + dt, &(&u + &k3 * full));
        let incr = &k1 + &k2 * two + &k3 * two + &k4;
        u = &u + incr * sixth;
    }
    u
}

/// `U(t, t0)` from RK4 with `substeps` equal steps.
pub fn reference_evolve(
    h: &TimeDependentHamiltonian,
    t0: f64,
    t: f64,
    substeps: usize,
) -> Result<ComplexMatrix> {
    check_substeps(substeps)?;
    if t < t0 {
        return Err(Error::InvalidInterval { t0, t });
    }
    let id = DMatrix::identity(h.dim(), h.dim());
    Ok(ComplexMatrix::from_raw(rk4_segment(
        h,
        t0,
        t,
        substeps,
        id,
        Side::Forward,
    )))
}

/// RK4 trajectory sampled on [`time_grid`]`(total, h_out)`, integrating
/// continuously with `substeps` RK4 steps per output interval.
pub fn reference_propagate(
    h: &TimeDependentHamiltonian,
    total: f64,
    h_out: f64,
    substeps: usize,
) -> Result<PropagatorTrajectory> {
    check_substeps(substeps)?;
    let times = time_grid(total, h_out)?;
    let mut operators = Vec::with_capacity(times.len());
    let mut u: DMatrix<Complex64> = DMatrix::identity(h.dim(), h.dim());
    operators.push(ComplexMatrix::from_raw(u.clone()));
    for w in times.windows(2) {
        u = rk4_segment(h, w[0], w[1], substeps, u, Side::Forward);
        operators.push(ComplexMatrix::from_raw(u.clone()));
    }
    Ok(PropagatorTrajectory {
        times,
        operators,
        method: Method::Reference,
    })
}

/// `U⁻¹(T, 0)` from RK4 on `dU⁻¹/dt = i U⁻¹ H`, on the same grid as
/// [`reference_propagate`].
pub fn reference_inverse(
    h: &TimeDependentHamiltonian,
    total: f64,
    h_out: f64,
    substeps: usize,
) -> Result<ComplexMatrix> {
    check_substeps(substeps)?;
    let times = time_grid(total, h_out)?;
    let mut v: DMatrix<Complex64> = DMatrix::identity(h.dim(), h.dim());
    for w in times.windows(2) {
        v = rk4_segment(h, w[0], w[1], substeps, v, Side::Inverse);
    }
    Ok(ComplexMatrix::from_raw(v))
}

/// What to read off a matrix element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    /// `|U_{row,col}|²`
    Population,
    Real,
    Imag,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl ObservableSeries {
    fn check_grid(&self, other: &Self) -> Result<()> {
        if self.times == other.times {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Euclidean distance between the sample vectors.
    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        self.check_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt())
    }

    pub fn max_abs_distance(&self, other: &Self) -> Result<f64> {
        self.check_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

pub fn observe(
    traj: &PropagatorTrajectory,
    row: usize,
    col: usize,
    observable: Observable,
) -> Result<ObservableSeries> {
    let dim = traj.dim();
    check_index(row, dim)?;
    check_index(col, dim)?;
    let values = traj
        .operators
        .iter()
        .map(|u| {
            let z = u[(row, col)];
            match observable {
                Observable::Population => z.norm_sqr(),
                Observable::Real => z.re,
                Observable::Imag => z.im,
            }
        })
        .collect();
    Ok(ObservableSeries {
        times: traj.times.clone(),
        values,
    })
}

/// `|U(t_k, 0)_{row,col}|²` (zero-based indices).
pub fn population(traj: &PropagatorTrajectory, row: usize, col: usize) -> Result<ObservableSeries> {
    observe(traj, row, col, Observable::Population)
}

/// Pointwise mean of two series on the same grid.
pub fn average_series(a: &ObservableSeries, b: &ObservableSeries) -> Result<ObservableSeries> {
    a.check_grid(b)?;
    Ok(ObservableSeries {
        times: a.times.clone(),
        values: a
            .values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| 0.5 * (x + y))
            .collect(),
    })
}
