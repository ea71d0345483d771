//! Built-in Hamiltonians: the Λ-system driven by two detuned fields and the
//! periodic XY spin chain, with closed-form coefficient integrals for the
//! former and a domain-wall counter for the latter.
//!
//! Λ-system levels use zero-based indices: 0 = |1⟩ (ground), 1 = |2⟩,
//! 2 = |3⟩ (excited). Chain basis states put site 1 in the most
//! significant bit.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::TimeDependentHamiltonian;
use crate::matrix::ComplexMatrix;

/// Hilbert-space cap for the chain: `2^12 = 4096`.
pub const MAX_XY_SITES: usize = 12;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Which of the two driving fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    /// Couples |2⟩ ↔ |3⟩.
    First,
    /// Couples |1⟩ ↔ |3⟩.
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaParams {
    omega_rabi_1: f64,
    omega_rabi_2: f64,
    detuning_1: f64,
    detuning_2: f64,
}

impl LambdaParams {
    pub fn new(
        omega_rabi_1: f64,
        omega_rabi_2: f64,
        detuning_1: f64,
        detuning_2: f64,
    ) -> Result<Self> {
        let all = [omega_rabi_1, omega_rabi_2, detuning_1, detuning_2];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "Λ-system parameters must be finite".into(),
            ));
        }
        if detuning_1 == 0.0 || detuning_2 == 0.0 {
            return Err(Error::InvalidParameter("detunings must be nonzero".into()));
        }
        Ok(Self {
            omega_rabi_1,
            omega_rabi_2,
            detuning_1,
            detuning_2,
        })
    }

    /// Ω₁ = 1, Ω₂ = 0.7, ω₁ = 1.3, ω₂ = 5.3.
    pub fn reference() -> Self {
        Self::new(1.0, 0.7, 1.3, 5.3).expect("valid constants")
    }

    pub fn rabi(&self, field: Field) -> f64 {
        match field {
            Field::First => self.omega_rabi_1,
            Field::Second => self.omega_rabi_2,
        }
    }

    pub fn detuning(&self, field: Field) -> f64 {
        match field {
            Field::First => self.detuning_1,
            Field::Second => self.detuning_2,
        }
    }
}

/// `H(t) = Ω₁(t)E₃₂ + Ω₂(t)E₃₁ + h.c.` with `Ω_i(t) = Ω_i e^{iω_i t}`.
pub fn lambda_hamiltonian(p: &LambdaParams) -> TimeDependentHamiltonian {
    let p = *p;
    TimeDependentHamiltonian::new(3, true, move |t| {
        let a = p.omega_rabi_1 * Complex64::cis(p.detuning_1 * t);
        let b = p.omega_rabi_2 * Complex64::cis(p.detuning_2 * t);
        let z = real(0.0);
        ComplexMatrix::from_rows(&[vec![z, z, b.conj()], vec![z, z, a.conj()], vec![b, a, z]])
            .expect("finite parameters give finite entries")
    })
    .expect("3×3 evaluator")
}

/// `∫_{t0}^{t} e^{ics} ds`, evaluated without cancellation for small `c(t − t0)`.
pub fn phase_integral(c: f64, t0: f64, t: f64) -> Complex64 {
    let d = t - t0;
    let theta = c * d;
    if theta == 0.0 {
        return real(d);
    }
    // (e^{iθ} − 1)/(iθ) = sin θ/θ + 2i sin²(θ/2)/θ
    let half = (0.5 * theta).sin();
    let ratio = Complex64::new(theta.sin() / theta, 2.0 * half * half / theta);
    Complex64::cis(c * t0) * ratio * d
}

/// `∫_{t0}^{t} dt₁ e^{−i a t₁} ∫_{t0}^{t₁} ds e^{i b s}` for `b ≠ 0`.
///
/// Roughly `log10(1/|b(t − t0)|)` digits are lost to cancellation when
/// `|b(t − t0)| ≪ 1`.
pub fn ordered_phase_integral(a: f64, b: f64, t0: f64, t: f64) -> Complex64 {
    debug_assert!(b != 0.0);
    (phase_integral(b - a, t0, t) - Complex64::cis(b * t0) * phase_integral(-a, t0, t)) / (I * b)
}

/// `h_i(t, t0) = ∫_{t0}^{t} Ω_i e^{iω_i s} ds`.
pub fn lambda_h(field: Field, t: f64, t0: f64, p: &LambdaParams) -> Complex64 {
    p.rabi(field) * phase_integral(p.detuning(field), t0, t)
}

/// `f_i(t, t0) = −Ω_i² ∫dt′ ∫^{t′} ds e^{i(s − t′)ω_i}`.
pub fn lambda_f(field: Field, t: f64, t0: f64, p: &LambdaParams) -> Complex64 {
    let w = p.detuning(field);
    -p.rabi(field).powi(2) * ordered_phase_integral(w, w, t0, t)
}

/// `g(t, t0) = ∫dt₁ ∫^{t₁} ds e^{−it₁ω₁ + isω₂}`.
pub fn lambda_g(t: f64, t0: f64, p: &LambdaParams) -> Complex64 {
    ordered_phase_integral(p.detuning_1, p.detuning_2, t0, t)
}

/// `g` with the detunings exchanged: `∫dt₁ ∫^{t₁} ds e^{−it₁ω₂ + isω₁}`.
///
/// This, not `g*`, is what the time-ordered second-order term puts in the
/// (|1⟩, |2⟩) entry: `−Ω₁Ω₂ · lambda_g_swapped`.
pub fn lambda_g_swapped(t: f64, t0: f64, p: &LambdaParams) -> Complex64 {
    ordered_phase_integral(p.detuning_2, p.detuning_1, t0, t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XYChainParams {
    sites: usize,
    coupling: f64,
}

impl XYChainParams {
    pub fn new(sites: usize, coupling: f64) -> Result<Self> {
        if sites < 3 {
            return Err(Error::InvalidParameter(format!(
                "periodic XY chain needs at least 3 sites, got {sites}"
            )));
        }
        if sites > MAX_XY_SITES {
            return Err(Error::InvalidParameter(format!(
                "{sites} sites exceeds the cap of {MAX_XY_SITES} (dimension 2^{MAX_XY_SITES})"
            )));
        }
        if !coupling.is_finite() {
            return Err(Error::InvalidParameter("coupling must be finite".into()));
        }
        Ok(Self { sites, coupling })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn dim(&self) -> usize {
        1 << self.sites
    }
}

/// Kronecker chain with `ops` placed at the given sites and identities
/// elsewhere; site 0 is the leftmost factor.
fn site_chain(sites: usize, ops: &[(usize, &ComplexMatrix)]) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2).expect("2 > 0");
    let factor = |k: usize| ops.iter().find(|(s, _)| *s == k).map_or(&id, |(_, m)| *m);
    let mut out = factor(0).clone();
    for k in 1..sites {
        out = out.kron(factor(k));
    }
    out
}

/// `H = A Σ_i (σ₊ⁱσ₋ⁱ⁺¹ + σ₋ⁱσ₊ⁱ⁺¹)` with the bond `(N, 1)` closing the ring.
pub fn xy_hamiltonian(p: &XYChainParams) -> ComplexMatrix {
    let n = p.sites;
    let raise = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).expect("2×2");
    let lower = raise.adjoint();
    let mut h = ComplexMatrix::zeros(p.dim()).expect("dim ≥ 8");
    for i in 0..n {
        let j = (i + 1) % n;
        let forward = site_chain(n, &[(i, &raise), (j, &lower)]);
        let backward = site_chain(n, &[(i, &lower), (j, &raise)]);
        h = h
            .add(&forward)
            .and_then(|h| h.add(&backward))
            .expect("same dim");
    }
    h.scale(real(p.coupling))
}

/// Number of cyclically adjacent bit pairs that differ in the `sites`-bit
/// expansion of `basis_index`.
pub fn domain_wall_count(basis_index: usize, sites: usize) -> Result<u32> {
    if sites == 0 || sites >= usize::BITS as usize {
        return Err(Error::InvalidParameter(format!(
            "unsupported site count {sites}"
        )));
    }
    let bound = 1usize << sites;
    crate::matrix::check_index(basis_index, bound)?;
    let rotated = (basis_index >> 1) | ((basis_index & 1) << (sites - 1));
    Ok((basis_index ^ rotated).count_ones())
}
