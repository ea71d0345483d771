//! Hamiltonians from a TOML file:
//!
//! ```toml
//! dim = 2
//!
//! [[terms]]
//! coefficient = [0.5, 0.0]      # complex, optional (default 1)
//! frequency = 1.3               # w in exp(i*w*t), optional (default 0)
//! matrix = [
//!     [[0.0, 0.0], [1.0, 0.0]],
//!     [[0.0, 0.0], [0.0, 0.0]],
//! ]
//! ```
//!
//! `H(t) = Σ coefficient · exp(i·frequency·t) · matrix`; each matrix entry is
//! a `[re, im]` pair. Hermiticity is not enforced; list both a harmonic term
//! and its conjugate partner for a physical drive.

use std::ops::Range;
use std::path::Path;

use serde::Deserialize;
use tcl_core::{Complex64, ComplexMatrix, TimeDependentHamiltonian};
use toml::Spanned;

use crate::error::{CliError, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    dim: Spanned<i64>,
    #[serde(default)]
    terms: Vec<Term>,
}

type Rows = Vec<Spanned<Vec<Spanned<[f64; 2]>>>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Term {
    coefficient: Option<Spanned<[f64; 2]>>,
    frequency: Option<Spanned<f64>>,
    matrix: Spanned<Rows>,
}

struct Located<'a> {
    origin: &'a str,
    text: &'a str,
}

impl Located<'_> {
    fn error(&self, span: Option<Range<usize>>, message: impl std::fmt::Display) -> CliError {
        let message = match span {
            Some(span) => {
                let before = &self.text[..span.start.min(self.text.len())];
                let line = before.matches('\n').count() + 1;
                let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
                format!("line {line}, column {col}: {message}")
            }
            None => message.to_string(),
        };
        CliError::Parse {
            path: self.origin.to_string(),
            message,
        }
    }
}

fn pair(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

/// Parses the custom format; `origin` names the source in diagnostics.
pub fn parse_custom_hamiltonian(text: &str, origin: &str) -> Result<TimeDependentHamiltonian> {
    let src = Located { origin, text };
    let doc: Document = toml::from_str(text).map_err(|e| src.error(e.span(), e.message()))?;

    let dim = *doc.dim.get_ref();
    if dim < 1 {
        return Err(src.error(
            Some(doc.dim.span()),
            format!("dim must be at least 1, got {dim}"),
        ));
    }
    let dim = dim as usize;

    let mut constant = ComplexMatrix::zeros(dim)?;
    let mut harmonics: Vec<(f64, ComplexMatrix)> = Vec::new();
    for term in &doc.terms {
        let coefficient = match &term.coefficient {
            Some(c) if !c.get_ref().iter().all(|v| v.is_finite()) => {
                return Err(src.error(Some(c.span()), "coefficient is not finite"));
            }
            Some(c) => pair(*c.get_ref()),
            None => Complex64::new(1.0, 0.0),
        };
        let frequency = match &term.frequency {
            Some(w) if !w.get_ref().is_finite() => {
                return Err(src.error(Some(w.span()), "frequency is not finite"));
            }
            Some(w) => *w.get_ref(),
            None => 0.0,
        };

        let rows = term.matrix.get_ref();
        if rows.len() != dim {
            return Err(src.error(
                Some(term.matrix.span()),
                format!("matrix has {} rows, expected {dim}", rows.len()),
            ));
        }
        let mut entries = Vec::with_capacity(dim);
        for row in rows {
            if row.get_ref().len() != dim {
                return Err(src.error(
                    Some(row.span()),
                    format!("row has {} entries, expected {dim}", row.get_ref().len()),
                ));
            }
            let mut out = Vec::with_capacity(dim);
            for entry in row.get_ref() {
                if !entry.get_ref().iter().all(|v| v.is_finite()) {
                    return Err(src.error(Some(entry.span()), "matrix entry is not finite"));
                }
                out.push(coefficient * pair(*entry.get_ref()));
            }
            entries.push(out);
        }
        let m = ComplexMatrix::from_rows(&entries)?;
        if frequency == 0.0 {
            constant = constant.add(&m)?;
        } else {
            harmonics.push((frequency, m));
        }
    }

    if harmonics.is_empty() {
        return Ok(TimeDependentHamiltonian::constant(constant));
    }
    let zero_diagonal =
        constant.diagonal_norm() == 0.0 && harmonics.iter().all(|(_, m)| m.diagonal_norm() == 0.0);
    let h = TimeDependentHamiltonian::new(dim, zero_diagonal, move |t| {
        harmonics.iter().fold(constant.clone(), |acc, (w, m)| {
            acc.add(&m.scale(Complex64::cis(w * t))).expect("same dim")
        })
    })?;
    Ok(h)
}

/// Reads and parses a custom Hamiltonian file.
pub fn load_custom_hamiltonian(path: &Path) -> Result<TimeDependentHamiltonian> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_custom_hamiltonian(&text, &path.display().to_string())
}
