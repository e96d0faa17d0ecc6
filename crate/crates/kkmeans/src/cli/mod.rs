//! Command-line front end.
//!
//! ```text
//! kkmeans -n 1000 -d 16 -k 10 -f polynomial -s 1 -l 2 -m 30 -c 0 -o labels.txt
//! ```
//!
//! | flag | meaning |
//! |------|---------|
//! | `-n INT` | number of points |
//! | `-d INT` | dimensionality |
//! | `-k INT` | number of clusters |
//! | `--runs INT` | independent runs, seeds `s, s+1, …` |
//! | `-t FLOAT` | convergence tolerance (fraction of relabelled points) |
//! | `-m INT` | maximum iterations |
//! | `-c {0,1}` | check convergence |
//! | `--init random` | label initialisation |
//! | `-f {linear,polynomial,sigmoid,gaussian}` | kernel |
//! | `-i PATH` | libsvm or CSV input; a uniform random dataset otherwise |
//! | `-s INT` | seed |
//! | `-l {0,2}` | `0` naive baseline, `2` sparse driver |
//! | `-o PATH` | write labels (and `PATH.timings.csv`) |
//! | `--precision {f32,f64}` | arithmetic precision |

mod io;
mod run;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Parser;

pub use io::{load_csv, load_dataset, load_libsvm, timings_path, write_results, InputFormat};
pub use run::{run_main, run_with_output, RunOutcome, REPORT_HEADER};

use crate::{Error, KernelFamily, Precision, Result};

/// Which clustering driver to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Implementation {
    Baseline,
    #[default]
    Popcorn,
}

impl Implementation {
    pub fn code(self) -> u8 {
        match self {
            Implementation::Baseline => 0,
            Implementation::Popcorn => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Implementation::Baseline => "baseline",
            Implementation::Popcorn => "popcorn",
        }
    }
}

impl FromStr for Implementation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "0" => Ok(Implementation::Baseline),
            "2" => Ok(Implementation::Popcorn),
            other => Err(format!("invalid implementation `{other}` (expected 0 or 2)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum InitMethod {
    #[default]
    Random,
}

impl fmt::Display for InitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("random")
    }
}

impl FromStr for InitMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "random" => Ok(InitMethod::Random),
            other => Err(format!("invalid init method `{other}` (only `random` is supported)")),
        }
    }
}

/// A fully parsed command line.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    /// Point count; with `-i` it may be left to the file.
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub k: usize,
    pub runs: usize,
    pub tol: f64,
    pub max_iters: usize,
    pub check_convergence: bool,
    pub init: InitMethod,
    pub kernel: KernelFamily,
    pub input_path: Option<PathBuf>,
    pub seed: u64,
    pub implementation: Implementation,
    pub output_path: Option<PathBuf>,
    pub precision: Precision,
}

impl RunSpec {
    pub fn new(n: usize, d: usize, k: usize) -> Self {
        Self {
            n: Some(n),
            d: Some(d),
            k,
            runs: 1,
            tol: 1e-4,
            max_iters: 30,
            check_convergence: false,
            init: InitMethod::Random,
            kernel: KernelFamily::Polynomial,
            input_path: None,
            seed: 1,
            implementation: Implementation::Popcorn,
            output_path: None,
            precision: Precision::Single,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Usage("-k must be at least 1".into()));
        }
        if self.runs == 0 {
            return Err(Error::Usage("--runs must be at least 1".into()));
        }
        if !(self.tol >= 0.0) {
            return Err(Error::Usage(format!("-t must be >= 0, got {}", self.tol)));
        }
        if self.input_path.is_none() {
            match (self.n, self.d) {
                (Some(n), Some(d)) if n > 0 && d > 0 => {}
                (Some(_), Some(_)) => return Err(Error::Usage("-n and -d must be positive".into())),
                _ => {
                    return Err(Error::Usage(
                        "-n and -d are required when no input file is given".into(),
                    ))
                }
            }
        }
        if let Some(n) = self.n {
            if self.k > n {
                return Err(Error::Usage(format!("-k {} exceeds -n {n}", self.k)));
            }
        }
        Ok(())
    }
}

fn parse_flag01(s: &str) -> std::result::Result<bool, String> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(format!("expected 0 or 1, got `{other}`")),
    }
}

fn parse_kernel(s: &str) -> std::result::Result<KernelFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "kkmeans", about = "Kernel K-means via sparse linear algebra", version)]
struct Args {
    #[arg(short = 'n')]
    n: Option<usize>,
    #[arg(short = 'd')]
    d: Option<usize>,
    #[arg(short = 'k')]
    k: usize,
    #[arg(long = "runs", default_value_t = 1)]
    runs: usize,
    #[arg(short = 't', default_value_t = 1e-4)]
    tol: f64,
    #[arg(short = 'm', default_value_t = 30)]
    max_iters: usize,
    #[arg(short = 'c', action = clap::ArgAction::Set, value_parser = parse_flag01, default_value = "0")]
    check_convergence: bool,
    #[arg(long = "init", default_value = "random")]
    init: InitMethod,
    #[arg(short = 'f', value_parser = parse_kernel, default_value = "polynomial")]
    kernel: KernelFamily,
    #[arg(short = 'i')]
    input: Option<PathBuf>,
    #[arg(short = 's', default_value_t = 1)]
    seed: u64,
    #[arg(short = 'l', default_value = "2")]
    implementation: Implementation,
    #[arg(short = 'o')]
    output: Option<PathBuf>,
    #[arg(long = "precision", default_value = "f32")]
    precision: Precision,
}

/// Parses command-line arguments, not including the program name.
pub fn parse_args<I, S>(argv: I) -> Result<RunSpec>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(
        std::iter::once(std::ffi::OsString::from("kkmeans")).chain(argv.into_iter().map(Into::into)),
    )
    .map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            Error::Help(e.to_string())
        }
        _ => Error::Usage(e.to_string()),
    })?;
    let spec = RunSpec {
        n: args.n,
        d: args.d,
        k: args.k,
        runs: args.runs,
        tol: args.tol,
        max_iters: args.max_iters,
        check_convergence: args.check_convergence,
        init: args.init,
        kernel: args.kernel,
        input_path: args.input,
        seed: args.seed,
        implementation: args.implementation,
        output_path: args.output,
        precision: args.precision,
    };
    spec.validate()?;
    Ok(spec)
}

/// Renders `spec` back into arguments that [`parse_args`] maps to the same
/// spec.
pub fn render(spec: &RunSpec) -> Vec<String> {
    let mut out = Vec::new();
    let mut push = |flag: &str, value: String| {
        out.push(flag.to_string());
        out.push(value);
    };
    if let Some(n) = spec.n {
        push("-n", n.to_string());
    }
    if let Some(d) = spec.d {
        push("-d", d.to_string());
    }
    push("-k", spec.k.to_string());
    push("--runs", spec.runs.to_string());
    push("-t", spec.tol.to_string());
    push("-m", spec.max_iters.to_string());
    push("-c", u8::from(spec.check_convergence).to_string());
    push("--init", spec.init.to_string());
    push("-f", spec.kernel.name().to_string());
    if let Some(p) = &spec.input_path {
        push("-i", p.display().to_string());
    }
    push("-s", spec.seed.to_string());
    push("-l", spec.implementation.code().to_string());
    if let Some(p) = &spec.output_path {
        push("-o", p.display().to_string());
    }
    push("--precision", spec.precision.name().to_string());
    out
}
