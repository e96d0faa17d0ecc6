use std::io::Write;
use std::path::{Path, PathBuf};

use super::{load_dataset, write_results, Implementation, RunSpec};
use crate::clustering::{run_baseline, run_popcorn};
use crate::{data, ClusteringResult, DenseMatrix, Error, KKMeansConfig, KernelSpec, Precision, Result, Scalar};

/// First line of every stdout report.
pub const REPORT_HEADER: &str = "# popcorn-report v1";

const COLUMNS: &str =
    "run\tseed\timpl\tkernel\tprecision\tn\td\tk\titerations\tconverged\tobjective\tkernel_matrix_s\tpairwise_distances_s\targmin_update_s";

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub run: usize,
    pub seed: u64,
    pub result: ClusteringResult,
    pub output_path: Option<PathBuf>,
}

/// Label file of run `run`: the `-o` path itself for single runs,
/// `<path>.run<r>` when several runs are requested.
fn output_for(spec: &RunSpec, run: usize) -> Option<PathBuf> {
    let base = spec.output_path.as_ref()?;
    if spec.runs == 1 {
        return Some(base.clone());
    }
    let mut s = base.as_os_str().to_os_string();
    s.push(format!(".run{run}"));
    Some(PathBuf::from(s))
}

fn load_points<T: Scalar>(spec: &RunSpec, seed: u64) -> Result<DenseMatrix<T>> {
    match &spec.input_path {
        Some(path) => load_dataset(path, spec.n, spec.d),
        None => {
            let (n, d) = spec
                .n
                .zip(spec.d)
                .ok_or_else(|| Error::Usage("-n and -d are required without -i".into()))?;
            Ok(data::uniform(n, d, seed))
        }
    }
}

fn execute<T: Scalar>(spec: &RunSpec, out: &mut dyn Write) -> Result<Vec<RunOutcome>> {
    let stdout_err = |e| Error::io(Path::new("<stdout>"), e);
    writeln!(out, "{REPORT_HEADER}").map_err(stdout_err)?;
    writeln!(out, "{COLUMNS}").map_err(stdout_err)?;

    let mut outcomes = Vec::with_capacity(spec.runs);
    for run in 0..spec.runs {
        let seed = spec.seed.wrapping_add(run as u64);
        let points = load_points::<T>(spec, seed)?;
        let mut cfg = KKMeansConfig::new(spec.k)
            .with_kernel(KernelSpec::of_family(spec.kernel))
            .with_seed(seed)
            .with_max_iters(spec.max_iters);
        cfg.tol = spec.tol;
        cfg.check_convergence = spec.check_convergence;

        let result = match spec.implementation {
            Implementation::Popcorn => run_popcorn(&points, &cfg)?,
            Implementation::Baseline => run_baseline(&points, &cfg)?,
        };
        let output_path = output_for(spec, run);
        if let Some(path) = &output_path {
            write_results(&result, path)?;
        }
        let t = &result.timings;
        writeln!(
            out,
            "{run}\t{seed}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.9e}\t{:.6}\t{:.6}\t{:.6}",
            spec.implementation.name(),
            spec.kernel,
            spec.precision.name(),
            points.rows(),
            points.cols(),
            spec.k,
            result.iterations_run,
            u8::from(result.converged),
            result.final_objective,
            t.kernel_matrix_seconds,
            t.pairwise_distances_seconds,
            t.argmin_update_seconds,
        )
        .map_err(stdout_err)?;
        outcomes.push(RunOutcome {
            run,
            seed,
            result,
            output_path,
        });
    }
    Ok(outcomes)
}

/// Runs every clustering described by `spec`, writing the report to `out`.
pub fn run_with_output(spec: &RunSpec, out: &mut dyn Write) -> Result<Vec<RunOutcome>> {
    spec.validate()?;
    match spec.precision {
        Precision::Single => execute::<f32>(spec, out),
        Precision::Double => execute::<f64>(spec, out),
    }
}

/// Runs `spec` against stdout. Returns the process exit code.
pub fn run_main(spec: &RunSpec) -> i32 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run_with_output(spec, &mut lock) {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("kkmeans: {e}");
            1
        }
    }
}
