use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use tcl_core::propagation::DEFAULT_SUBSTEPS;
use tcl_core::quadrature::DEFAULT_RULE_ORDER;
use tcl_core::{LambdaParams, Observable, XYChainParams};

use crate::config::{
    parse_grid, parse_methods, Job, ModelChoice, PartitionJob, PropagateJob, RunConfig,
};
use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "tclprop",
    version,
    about = "Second-order projection-operator and Dyson propagators, partition functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Propagate U(t, 0) and write one matrix-element observable per method.
    Propagate(PropagateArgs),
    /// Exact and approximate partition functions of the periodic XY chain.
    Partition(PartitionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    /// Three-level system driven by two detuned fields.
    Lambda,
    /// Periodic XY chain (time independent).
    Xy,
    /// Hamiltonian read from --hamiltonian.
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObservableArg {
    /// |U_rc|^2
    Population,
    /// Re U_rc
    Re,
    /// Im U_rc
    Im,
}

#[derive(Debug, clap::Args)]
pub struct PropagateArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Lambda)]
    pub model: ModelArg,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub rabi1: f64,
    #[arg(long, default_value_t = 0.7, allow_negative_numbers = true)]
    pub rabi2: f64,
    #[arg(long, default_value_t = 1.3, allow_negative_numbers = true)]
    pub detuning1: f64,
    #[arg(long, default_value_t = 5.3, allow_negative_numbers = true)]
    pub detuning2: f64,
    /// Chain length for --model xy.
    #[arg(long, default_value_t = 4)]
    pub sites: usize,
    /// Coupling A for --model xy.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub coupling: f64,
    /// TOML Hamiltonian file for --model custom.
    #[arg(long, value_name = "FILE")]
    pub hamiltonian: Option<PathBuf>,
    #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
    pub t_max: f64,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub step: f64,
    /// Comma list from tcl2, dyson2, reference, average.
    #[arg(long, default_value = "tcl2,dyson2,reference,average")]
    pub methods: String,
    /// Gauss-Legendre nodes per step.
    #[arg(long, default_value_t = DEFAULT_RULE_ORDER)]
    pub quad_order: usize,
    /// RK4 steps per output interval for the reference.
    #[arg(long, default_value_t = DEFAULT_SUBSTEPS)]
    pub substeps: usize,
    /// One-based row of the matrix element.
    #[arg(long, default_value_t = 1)]
    pub row: usize,
    /// One-based column of the matrix element.
    #[arg(long, default_value_t = 1)]
    pub col: usize,
    #[arg(long, value_enum, default_value_t = ObservableArg::Population)]
    pub observable: ObservableArg,
    /// Output CSV path, `-` for standard output.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct PartitionArgs {
    #[arg(long, default_value_t = 10)]
    pub sites: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub coupling: f64,
    /// `start:stop:step` (inclusive) or a comma list of A·beta values.
    #[arg(long, default_value = "0:1:0.1")]
    pub a_beta: String,
    /// Output CSV path, `-` for standard output.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

fn one_based(name: &str, v: usize) -> Result<usize> {
    v.checked_sub(1)
        .ok_or_else(|| CliError::Config(format!("{name} is one-based, got 0")))
}

impl PropagateArgs {
    fn into_job(self) -> Result<PropagateJob> {
        let model = match self.model {
            ModelArg::Lambda => ModelChoice::Lambda(LambdaParams::new(
                self.rabi1,
                self.rabi2,
                self.detuning1,
                self.detuning2,
            )?),
            ModelArg::Xy => ModelChoice::Xy(XYChainParams::new(self.sites, self.coupling)?),
            ModelArg::Custom => ModelChoice::Custom(self.hamiltonian.ok_or_else(|| {
                CliError::Config("--model custom needs --hamiltonian FILE".into())
            })?),
        };
        let job = PropagateJob {
            model,
            t_max: self.t_max,
            step: self.step,
            methods: parse_methods(&self.methods)?,
            quad_order: self.quad_order,
            substeps: self.substeps,
            element: (one_based("row", self.row)?, one_based("col", self.col)?),
            observable: match self.observable {
                ObservableArg::Population => Observable::Population,
                ObservableArg::Re => Observable::Real,
                ObservableArg::Im => Observable::Imag,
            },
        };
        job.validate()?;
        Ok(job)
    }
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self> {
        match cli.command {
            Command::Propagate(args) => {
                let output = args.out.clone();
                Ok(RunConfig {
                    job: Job::Propagate(args.into_job()?),
                    output,
                })
            }
            Command::Partition(args) => {
                let job = PartitionJob {
                    chain: XYChainParams::new(args.sites, args.coupling)?,
                    a_beta: parse_grid(&args.a_beta)?,
                };
                job.validate()?;
                Ok(RunConfig {
                    job: Job::Partition(job),
                    output: args.out,
                })
            }
        }
    }
}
