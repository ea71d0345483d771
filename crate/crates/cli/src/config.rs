use std::path::PathBuf;

use tcl_core::propagation::DEFAULT_SUBSTEPS;
use tcl_core::quadrature::DEFAULT_RULE_ORDER;
use tcl_core::{LambdaParams, Observable, XYChainParams};

use crate::error::{CliError, Result};

/// What one `propagate` output column holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMethod {
    Tcl2,
    Dyson2,
    Reference,
    /// Pointwise mean of the tcl2 and dyson2 observables.
    Average,
}

impl OutputMethod {
    pub fn label(self) -> &'static str {
        match self {
            Self::Tcl2 => "tcl2",
            Self::Dyson2 => "dyson2",
            Self::Reference => "reference",
            Self::Average => "average",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "tcl2" => Ok(Self::Tcl2),
            "dyson2" => Ok(Self::Dyson2),
            "reference" => Ok(Self::Reference),
            "average" => Ok(Self::Average),
            other => Err(CliError::Config(format!(
                "unknown method `{other}` (expected tcl2, dyson2, reference or average)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub enum ModelChoice {
    Lambda(LambdaParams),
    Xy(XYChainParams),
    Custom(PathBuf),
}

#[derive(Debug, Clone)]
pub struct PropagateJob {
    pub model: ModelChoice,
    pub t_max: f64,
    pub step: f64,
    pub methods: Vec<OutputMethod>,
    pub quad_order: usize,
    pub substeps: usize,
    /// Zero-based matrix element `(row, col)` of `U(t, 0)`.
    pub element: (usize, usize),
    pub observable: Observable,
}

impl PropagateJob {
    /// Defaults for the driven three-level system.
    pub fn lambda_defaults() -> Self {
        Self {
            model: ModelChoice::Lambda(LambdaParams::reference()),
            t_max: 20.0,
            step: 0.1,
            methods: vec![
                OutputMethod::Tcl2,
                OutputMethod::Dyson2,
                OutputMethod::Reference,
                OutputMethod::Average,
            ],
            quad_order: DEFAULT_RULE_ORDER,
            substeps: DEFAULT_SUBSTEPS,
            element: (0, 0),
            observable: Observable::Population,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(CliError::Config(format!(
                "t-max must be positive, got {}",
                self.t_max
            )));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(CliError::Config(format!(
                "step must be positive, got {}",
                self.step
            )));
        }
        if self.methods.is_empty() {
            return Err(CliError::Config("no methods selected".into()));
        }
        if self.quad_order < 2 {
            return Err(CliError::Config("quad-order must be at least 2".into()));
        }
        if self.substeps == 0 {
            return Err(CliError::Config("substeps must be at least 1".into()));
        }
        Ok(())
    }

    /// Column label such as `pop_1_1` (one-based indices).
    pub fn observable_label(&self) -> String {
        let prefix = match self.observable {
            Observable::Population => "pop",
            Observable::Real => "re",
            Observable::Imag => "im",
        };
        format!("{prefix}_{}_{}", self.element.0 + 1, self.element.1 + 1)
    }
}

#[derive(Debug, Clone)]
pub struct PartitionJob {
    pub chain: XYChainParams,
    pub a_beta: Vec<f64>,
}

impl PartitionJob {
    pub fn validate(&self) -> Result<()> {
        if self.a_beta.is_empty() {
            return Err(CliError::Config("empty a-beta grid".into()));
        }
        if let Some(bad) = self.a_beta.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
            return Err(CliError::Config(format!(
                "a-beta values must be nonnegative, got {bad}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum Job {
    Propagate(PropagateJob),
    Partition(PartitionJob),
}

/// A validated run: what to compute and where the CSV goes (`-` for stdout).
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub job: Job,
    pub output: PathBuf,
}

/// Comma-separated method list; duplicates are dropped, order kept.
pub fn parse_methods(list: &str) -> Result<Vec<OutputMethod>> {
    let mut out = Vec::new();
    for item in list.split(',').filter(|s| !s.trim().is_empty()) {
        let m = OutputMethod::parse(item)?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err(CliError::Config("no methods selected".into()));
    }
    Ok(out)
}

// decimal string -> (integer mantissa, decimal places)
fn parse_decimal(s: &str) -> Result<(i128, u32)> {
    let bad = || CliError::Config(format!("`{s}` is not a plain decimal number"));
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
        || frac.len() > 12
        || int.len() > 12
    {
        return Err(bad());
    }
    let digits: i128 = format!("{int}{frac}").parse().map_err(|_| bad())?;
    Ok((if neg { -digits } else { digits }, frac.len() as u32))
}

/// `start:stop:step` (inclusive, decimal-exact) or a comma-separated list.
///
/// Range points are `(start + k·step)` evaluated in scaled integers and
/// divided once, so `0:1:0.1` yields exactly the literals `0.1`, `0.2`, ….
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (a, da) = parse_decimal(start)?;
            let (b, db) = parse_decimal(stop)?;
            let (h, dh) = parse_decimal(step)?;
            let places = da.max(db).max(dh);
            let scale = |v: i128, d: u32| v * 10i128.pow(places - d);
            let (a, b, h) = (scale(a, da), scale(b, db), scale(h, dh));
            if h <= 0 {
                return Err(CliError::Config(format!(
                    "grid step must be positive in `{spec}`"
                )));
            }
            if b < a {
                return Err(CliError::Config(format!(
                    "grid stop precedes start in `{spec}`"
                )));
            }
            let count = (b - a) / h;
            if count > 100_000 {
                return Err(CliError::Config(format!(
                    "grid `{spec}` has too many points"
                )));
            }
            let denom = 10f64.powi(places as i32);
            Ok((0..=count).map(|k| (a + k * h) as f64 / denom).collect())
        }
        [_] => spec
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Config(format!("`{s}` is not a number")))
            })
            .collect(),
        _ => Err(CliError::Config(format!(
            "grid `{spec}` must be start:stop:step or a comma list"
        ))),
    }
}
