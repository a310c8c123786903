use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use batsonar::objectives::Registry;
use batsonar::{grid_oracle, lookup};
use batsonar_bench::compare::write_comparison;
use batsonar_bench::config::{parse_goals, DEFAULT_MOMENTUM};
use batsonar_bench::report::format_point;
use batsonar_bench::{
    compare, emit_report, run_suite_with, Algorithm, AngleSpec, BenchError, ConfigError, Format, Overrides,
    Schedule, SuiteConfig, SuiteReport,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

/// Seeded benchmark suites for bat-sonar search.
#[derive(Debug, Parser)]
#[command(name = "batsonar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one suite and write its per-epoch report.
    Run {
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Run several suites on one objective and tabulate them side by side.
    Compare {
        /// JSON config files, one suite each.
        configs: Vec<PathBuf>,
        /// Extra suite built from the shared flags: ssu, ssm[:<mu>], msu[:<units>] or ga.
        #[arg(long = "with", value_name = "ALGO")]
        with: Vec<String>,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Check the built-in optima against an exhaustive grid.
    Oracle {
        #[arg(long)]
        function: Option<String>,
        /// Grid spacing.
        #[arg(long, default_value_t = 1e-3)]
        resolution: f64,
    },
}

#[derive(Debug, Args)]
struct SuiteArgs {
    /// JSON file with any SuiteConfig fields; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    function: Option<String>,
    #[arg(long)]
    algorithm: Option<Algorithm>,
    #[arg(long)]
    epochs: Option<usize>,
    /// Signals per unit (generations for ga).
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long)]
    beams: Option<usize>,
    /// fixed:<radians> or rand:<lo>,<hi>
    #[arg(long)]
    angle: Option<AngleSpec>,
    #[arg(long)]
    momentum: Option<f64>,
    #[arg(long)]
    stagnation_window: Option<usize>,
    #[arg(long)]
    units: Option<usize>,
    /// GA population size.
    #[arg(long)]
    population: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// <g1>,<g2>
    #[arg(long, value_parser = parse_goals)]
    goals: Option<(f64, f64)>,
    #[arg(long)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write every accepted move to <out stem>.trajectory.csv.
    #[arg(long)]
    trajectory: bool,
    /// Run epochs one after another instead of across threads.
    #[arg(long)]
    sequential: bool,
}

impl SuiteArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            function: self.function.clone(),
            algorithm: self.algorithm,
            epochs: self.epochs,
            iters: self.iters,
            beams: self.beams,
            angle: self.angle,
            momentum: self.momentum,
            stagnation_window: self.stagnation_window,
            units: self.units,
            population: self.population,
            seed: self.seed,
            goals: self.goals,
            format: self.format,
            out: self.out.clone(),
            trajectory: self.trajectory,
        }
    }

    fn load(&self, file: Option<&Path>) -> Result<SuiteConfig, BenchError> {
        let mut cfg = match file {
            Some(p) => SuiteConfig::from_json_file(p)?,
            None => SuiteConfig::default(),
        };
        self.overrides().apply(&mut cfg);
        Ok(cfg)
    }

    fn schedule(&self) -> Schedule {
        if self.sequential {
            Schedule::Sequential
        } else {
            Schedule::Parallel
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<(), BenchError> {
    match command {
        Command::Run { suite } => run(&suite),
        Command::Compare { configs, with, suite } => run_compare(&configs, &with, &suite),
        Command::Oracle { function, resolution } => oracle(function.as_deref(), resolution),
    }
}

fn run(args: &SuiteArgs) -> Result<(), BenchError> {
    let cfg = args.load(args.config.as_deref())?;
    if cfg.trajectory && cfg.out.is_none() {
        return Err(ConfigError::new("out", "--trajectory needs --out to place the trajectory file").into());
    }
    let report = run_suite_with(&cfg, args.schedule())?;
    emit_report(&report, report.config.format, report.config.out.as_deref())?;
    print_summary(&report);
    Ok(())
}

fn print_summary(report: &SuiteReport) {
    let s = &report.summary;
    let points: Vec<String> = s.max_argpoints.iter().map(|p| format_point(p)).collect();
    eprintln!(
        "{} on {} ({} epochs, seed {}): max {} at [{}], avg {:.6}, iterations {:.2}, \
         efficiency {:.3}%, goal1 {:.2}%, goal2 {:.2}%, euclidean {:.6}",
        report.config.label(),
        report.config.function,
        s.epochs,
        report.config.seed,
        s.max_obtained,
        points.join(" | "),
        s.avg_obtained,
        s.avg_iterations,
        s.efficiency,
        s.performance_1,
        s.performance_2,
        s.euclidean,
    );
}

/// `msu:3` → msu with 3 units, `ssm:0.5` → ssm with momentum 0.5.
fn apply_with(spec: &str, cfg: &mut SuiteConfig) -> Result<(), ConfigError> {
    let bad = |m: String| ConfigError::new("with", m);
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    cfg.algorithm = name.parse().map_err(bad)?;
    match (cfg.algorithm, arg) {
        (Algorithm::Msu, a) => {
            cfg.sonar.momentum = None;
            cfg.sonar.unit_count = match a {
                Some(a) => a.parse().map_err(|_| bad(format!("`{spec}`: unit count must be an integer")))?,
                None => cfg.sonar.unit_count.max(2),
            };
        }
        (Algorithm::Ssm, a) => {
            cfg.sonar.unit_count = 1;
            let mu = match a {
                Some(a) => a.parse().map_err(|_| bad(format!("`{spec}`: momentum must be a number")))?,
                None => cfg.sonar.momentum.unwrap_or(DEFAULT_MOMENTUM),
            };
            cfg.sonar.momentum = Some(mu);
        }
        (_, Some(_)) => return Err(bad(format!("`{spec}`: {name} takes no argument"))),
        (_, None) => {
            cfg.sonar.unit_count = 1;
            cfg.sonar.momentum = None;
        }
    }
    Ok(())
}

fn run_compare(files: &[PathBuf], with: &[String], args: &SuiteArgs) -> Result<(), BenchError> {
    let mut configs = Vec::new();
    for f in files {
        configs.push(args.load(Some(f))?);
    }
    for spec in with {
        let mut cfg = args.load(args.config.as_deref())?;
        apply_with(spec, &mut cfg)?;
        configs.push(cfg);
    }
    let cmp = compare(&configs, args.schedule())?;
    let format = args.format.unwrap_or_default();
    let io_err = |path: &Path| {
        let path = path.to_owned();
        move |source| BenchError::Io { path, source }
    };
    match &args.out {
        Some(p) => {
            let file = File::create(p).map_err(io_err(p))?;
            write_comparison(&cmp, format, BufWriter::new(file)).map_err(io_err(p))?;
        }
        None => write_comparison(&cmp, format, io::stdout().lock()).map_err(io_err(Path::new("<stdout>")))?,
    }
    eprintln!("note: {}", cmp.note);
    Ok(())
}

fn oracle(function: Option<&str>, resolution: f64) -> Result<(), BenchError> {
    let names = match function {
        Some(f) => {
            lookup::<f64>(f).map_err(|e| ConfigError::new("function", e.to_string()))?;
            vec![f.to_owned()]
        }
        None => Registry::<f64>::builtins().names(),
    };
    if !(resolution > 0.0 && resolution.is_finite()) {
        return Err(ConfigError::new("resolution", format!("must be positive, got {resolution}")).into());
    }
    let mut out = io::stdout().lock();
    let io_err = |source| BenchError::Io { path: "<stdout>".into(), source };
    writeln!(out, "function,known_value,grid_value,abs_diff,grid_points,status").map_err(io_err)?;
    let mut mismatch = Vec::new();
    for name in names {
        let spec = lookup::<f64>(&name)?;
        let known = spec.known_optimum().ok_or_else(|| batsonar::Error::MissingOptimum(name.clone()))?;
        let grid = grid_oracle(&spec, resolution)?;
        let diff = (known.value - grid.value).abs();
        let ok = diff <= known.tolerance
            && known
                .points
                .iter()
                .all(|k| grid.points.iter().any(|g| g.iter().zip(k).all(|(a, b)| (a - b).abs() <= 0.05)));
        let points: Vec<String> = grid.points.iter().map(|p| format_point(p)).collect();
        let shown = if points.len() > 4 { format!("{} points", points.len()) } else { points.join(" | ") };
        writeln!(
            out,
            "{name},{},{},{diff:.3e},{shown},{}",
            known.value,
            grid.value,
            if ok { "ok" } else { "MISMATCH" }
        )
        .map_err(io_err)?;
        if !ok {
            mismatch.push(name);
        }
    }
    if mismatch.is_empty() {
        Ok(())
    } else {
        Err(batsonar::Error::InvalidParams(format!(
            "grid disagrees with the known optimum of {}",
            mismatch.join(", ")
        ))
        .into())
    }
}
