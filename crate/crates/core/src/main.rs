use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use waveguide_tunneling::checks::{run_checks, CheckConfig, CheckLevel};
use waveguide_tunneling::exec::Execution;
use waveguide_tunneling::geometry::{CrossSection, GuideGeometry, Medium};
use waveguide_tunneling::modes::{survey, AxialWavenumber};
use waveguide_tunneling::sweep::{run_sweep, write_csv, SweepJob};
use waveguide_tunneling::verify::DEFAULT_ORDER;
use waveguide_tunneling::Error;

/// Mode transmission through an undersized rectangular waveguide section.
#[derive(Debug, Parser)]
#[command(name = "wgtunnel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a frequency sweep described by a JSON job file and write CSV.
    Sweep {
        job: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Worker threads (1 runs sequentially).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run the built-in numerical self-checks.
    Check {
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        level: Level,
        /// Gauss-Legendre points per axis.
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// List the propagation status of low-order modes in both guide sections.
    Modes {
        geometry: PathBuf,
        /// Angular frequency in rad/s.
        #[arg(long)]
        omega: f64,
        /// Largest mode index listed.
        #[arg(long, default_value_t = 3)]
        cap: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Level {
    Fast,
    Full,
}

enum Failure {
    Input(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolated { .. }
            | Error::SingularDenominator
            | Error::SingularSystem => Failure::Invariant(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn io_failure(what: &str, e: io::Error) -> Failure {
    Failure::Input(format!("{what}: {e}"))
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| io_failure(&p.display().to_string(), e))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn sweep(job: &PathBuf, output: Option<&PathBuf>, threads: Option<usize>) -> Result<(), Failure> {
    let file = File::open(job).map_err(|e| io_failure(&job.display().to_string(), e))?;
    let job = SweepJob::from_reader(file)?;
    let rows = run_sweep(&job, Execution::with_threads(threads))?;
    let mut out = open_output(output)?;
    write_csv(&mut out, &rows)?;
    out.flush().map_err(|e| io_failure("output", e))?;
    Ok(())
}

fn check(level: Level, order: usize, threads: Option<usize>) -> Result<(), Failure> {
    if order == 0 {
        return Err(Failure::Input("--order must be at least 1".into()));
    }
    let cfg = CheckConfig {
        level: match level {
            Level::Fast => CheckLevel::Fast,
            Level::Full => CheckLevel::Full,
        },
        quadrature_order: order,
        ..CheckConfig::default()
    };
    let report = run_checks(&cfg, Execution::with_threads(threads));
    print!("{report}");
    if report.all_passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .suites
            .iter()
            .filter(|s| !s.passed)
            .map(|s| s.name)
            .collect();
        Err(Failure::Invariant(format!(
            "failed suites: {}",
            failed.join(", ")
        )))
    }
}

fn modes(path: &PathBuf, omega: f64, cap: u32) -> Result<(), Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| io_failure(&path.display().to_string(), e))?;
    let g: GuideGeometry =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("geometry: {e}")))?;
    g.validate()?;
    let sections: [(&str, CrossSection, Medium); 2] = [
        ("outer", g.outer_section(), g.outer_medium()),
        ("inner", g.inner_section(), g.inner_medium()),
    ];
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    let row_err = |e: csv::Error| Failure::Input(format!("output: {e}"));
    w.write_record(["section", "mode", "cutoff_omega", "status", "h", "kappa"])
        .map_err(row_err)?;
    for (name, section, medium) in sections {
        for s in survey(&section, &medium, omega, cap)? {
            let (status, h, kappa) = match s.axial {
                Some(AxialWavenumber::Propagating(h)) => {
                    ("propagating", format!("{h:?}"), String::new())
                }
                Some(AxialWavenumber::Evanescent(k)) => {
                    ("evanescent", String::new(), format!("{k:?}"))
                }
                None => ("at_cutoff", String::new(), String::new()),
            };
            w.write_record([
                name,
                &s.index.to_string(),
                &format!("{:?}", s.cutoff_omega),
                status,
                &h,
                &kappa,
            ])
            .map_err(row_err)?;
        }
    }
    w.flush().map_err(|e| io_failure("output", e))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Sweep {
            job,
            output,
            threads,
        } => sweep(job, output.as_ref(), *threads),
        Command::Check {
            level,
            order,
            threads,
        } => check(*level, *order, *threads),
        Command::Modes {
            geometry,
            omega,
            cap,
        } => modes(geometry, *omega, *cap),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
