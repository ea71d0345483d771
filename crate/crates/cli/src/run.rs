use std::io::Write;
use std::path::Path;

use tcl_core::propagation::{average_series, observe};
use tcl_core::{
    lambda_hamiltonian, partition_sweep, propagate, reference_propagate, xy_hamiltonian, Method,
    ObservableSeries, QuadratureSpec, TimeDependentHamiltonian,
};

use crate::config::{Job, ModelChoice, OutputMethod, PartitionJob, PropagateJob, RunConfig};
use crate::custom::load_custom_hamiltonian;
use crate::error::{CliError, Result};
use crate::format::{partition_csv, propagate_csv, SeriesColumn};

fn build_hamiltonian(model: &ModelChoice) -> Result<TimeDependentHamiltonian> {
    Ok(match model {
        ModelChoice::Lambda(p) => lambda_hamiltonian(p),
        ModelChoice::Xy(p) => TimeDependentHamiltonian::constant(xy_hamiltonian(p)),
        ModelChoice::Custom(path) => load_custom_hamiltonian(path)?,
    })
}

/// CSV text for a propagation run.
pub fn run_propagate(job: &PropagateJob) -> Result<String> {
    job.validate()?;
    let h = build_hamiltonian(&job.model)?;
    let (row, col) = job.element;
    if row >= h.dim() || col >= h.dim() {
        return Err(CliError::Config(format!(
            "element ({}, {}) is outside the {}-dimensional space",
            row + 1,
            col + 1,
            h.dim()
        )));
    }
    let quad = QuadratureSpec::with_order(job.quad_order)?;
    let wants = |m: OutputMethod| job.methods.contains(&m);
    let averaged = wants(OutputMethod::Average);
    let series = |method: Method| -> Result<ObservableSeries> {
        let traj = propagate(&h, job.t_max, job.step, method, &quad)?;
        Ok(observe(&traj, row, col, job.observable)?)
    };

    let tcl2 = (averaged || wants(OutputMethod::Tcl2))
        .then(|| series(Method::Tcl2))
        .transpose()?;
    let dyson2 = (averaged || wants(OutputMethod::Dyson2))
        .then(|| series(Method::Dyson2))
        .transpose()?;
    let reference = if wants(OutputMethod::Reference) {
        let traj = reference_propagate(&h, job.t_max, job.step, job.substeps)?;
        Some(observe(&traj, row, col, job.observable)?)
    } else {
        None
    };
    let average = match (&tcl2, &dyson2) {
        (Some(a), Some(b)) if averaged => Some(average_series(a, b)?),
        _ => None,
    };

    let pick = |m: OutputMethod| -> &ObservableSeries {
        let s = match m {
            OutputMethod::Tcl2 => &tcl2,
            OutputMethod::Dyson2 => &dyson2,
            OutputMethod::Reference => &reference,
            OutputMethod::Average => &average,
        };
        s.as_ref().expect("computed above")
    };
    let columns: Vec<SeriesColumn<'_>> = job
        .methods
        .iter()
        .map(|&m| SeriesColumn {
            method: m.label(),
            values: &pick(m).values,
        })
        .collect();
    let times = &pick(job.methods[0]).times;
    Ok(propagate_csv(times, &job.observable_label(), &columns))
}

/// CSV text for a partition-function sweep.
pub fn run_partition(job: &PartitionJob) -> Result<String> {
    job.validate()?;
    Ok(partition_csv(&partition_sweep(&job.chain, &job.a_beta)?))
}

pub fn render(cfg: &RunConfig) -> Result<String> {
    match &cfg.job {
        Job::Propagate(job) => run_propagate(job),
        Job::Partition(job) => run_partition(job),
    }
}

fn write_output(path: &Path, text: &str) -> Result<()> {
    let fail = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(text.as_bytes()).map_err(fail)?;
        stdout.flush().map_err(fail)
    } else {
        std::fs::write(path, text).map_err(fail)
    }
}

/// Computes the CSV and writes it; nothing is written on failure.
pub fn execute(cfg: &RunConfig) -> Result<()> {
    let text = render(cfg)?;
    write_output(&cfg.output, &text)
}
