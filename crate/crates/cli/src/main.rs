//! `relent`: Wigner angles, boosted-state sweeps, witness evaluation and the
//! observer-independence property checks.
//!
//! Exit codes: 0 success, 1 property-check failure, 2 invalid input,
//! 3 numeric failure.

use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relent_core::boost::boost_mixed;
use relent_core::classcheck::{run_condition1_suite, run_condition2_suite, run_soundness_suite, SuiteReport};
use relent_core::kinematics::{wigner_angle_from_speeds, BoostScenario, MomentumGeometry};
use relent_core::measures::{witness_hmgh, WitnessPath, WitnessReport, WitnessVariant};
use relent_core::scan::{
    fig2_csv, fig3_csv, format_sig12, scan_fig2, scan_fig3, thread_pool, DeltaRange, MomentumChoice, ScanConfig,
    SpinChoice, DEFAULT_PARTICLE_SPEED, FIG2_DEFAULT_GRID, FIG3_DEFAULT_GRID,
};
use relent_core::states::{read_state, write_spin_matrix, write_state, StoredState};
use relent_core::Error;

#[derive(Parser)]
#[command(
    name = "relent",
    version,
    about = "Lorentz-boosted three-particle spin-momentum entanglement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Wigner rotation angle for observer speed u and particle speed v.
    Wigner {
        #[arg(long = "observer-speed", short = 'u')]
        observer_speed: f64,
        #[arg(long = "particle-speed", short = 'v')]
        particle_speed: f64,
    },
    /// Parameter sweeps written as CSV.
    #[command(subcommand)]
    Scan(ScanCommand),
    /// Evaluate the GME witness on a state file.
    Witness {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Symmetric)]
        variant: VariantArg,
    },
    /// Boost a composite state file; writes the boosted state and its spin matrix.
    Boost {
        file: PathBuf,
        #[command(flatten)]
        boost: BoostArgs,
        /// Output path of the boosted state.
        #[arg(long)]
        out: PathBuf,
        /// Output path of the reduced spin matrix (default: <out>.spin.json).
        #[arg(long = "spin-out")]
        spin_out: Option<PathBuf>,
    },
    /// Run a property-check suite.
    Check {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ScanCommand {
    /// Witness and GME bound over the (alpha, delta) grid.
    Fig2(ScanArgs),
    /// m-concurrence per partition as a function of delta.
    Fig3(ScanArgs),
}

#[derive(Args)]
struct BoostArgs {
    /// Wigner angle in radians, in [0, pi/2].
    #[arg(long, conflicts_with = "observer_speed")]
    delta: Option<f64>,
    #[arg(long = "observer-speed")]
    observer_speed: Option<f64>,
    #[arg(long = "particle-speed", default_value_t = DEFAULT_PARTICLE_SPEED)]
    particle_speed: f64,
}

#[derive(Args)]
struct ScanArgs {
    /// Upper end of the delta grid in radians (default pi/2).
    #[arg(long, conflicts_with = "observer_speed")]
    delta: Option<f64>,
    /// Sweep delta from 0 to the Wigner angle of this observer speed.
    #[arg(long = "observer-speed")]
    observer_speed: Option<f64>,
    #[arg(long = "particle-speed", default_value_t = DEFAULT_PARTICLE_SPEED)]
    particle_speed: f64,
    /// Grid size: `N` or `NxM` (alpha x delta for fig2; delta points for fig3).
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, value_enum, default_value_t = SpinArg::Ghz)]
    spin: SpinArg,
    /// Angle for `--spin ghz-alpha`.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
    alpha: f64,
    /// `product`, `antisymmetric`, or six coefficients `c0,..,c5` (each `re` or `re:im`).
    #[arg(long, default_value = "antisymmetric")]
    momentum: String,
    #[arg(long, value_enum, default_value_t = VariantArg::Symmetric)]
    variant: VariantArg,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpinArg {
    Ghz,
    W,
    GhzAlpha,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Symmetric,
    AsPrinted,
}

impl From<VariantArg> for WitnessVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Symmetric => WitnessVariant::Symmetric,
            VariantArg::AsPrinted => WitnessVariant::AsPrinted,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Condition1,
    Condition2,
    Soundness,
}

/// Failure of a subcommand with its exit code.
enum Failure {
    Check(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn parse_grid(grid: Option<&str>, default: (usize, usize), two_d: bool) -> Result<(usize, usize), Error> {
    let Some(g) = grid else { return Ok(default) };
    let bad = || Error::Input(format!("invalid --grid {g:?}"));
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match g.split_once(['x', 'X']) {
        Some((a, d)) if two_d => Ok((parse(a)?, parse(d)?)),
        Some(_) => Err(bad()),
        None => {
            let n = parse(g)?;
            Ok(if two_d { (n, n) } else { (default.0, n) })
        }
    }
}

fn scan_config(args: &ScanArgs, fig2: bool) -> Result<ScanConfig, Error> {
    let defaults = if fig2 {
        ScanConfig::fig2_default()
    } else {
        ScanConfig::fig3_default(SpinChoice::Ghz)
    };
    let default_grid = if fig2 {
        (FIG2_DEFAULT_GRID, FIG2_DEFAULT_GRID)
    } else {
        (defaults.n_alpha, FIG3_DEFAULT_GRID)
    };
    let (n_alpha, n_delta) = parse_grid(args.grid.as_deref(), default_grid, fig2)?;
    let delta_range = match (args.delta, args.observer_speed) {
        (_, Some(u)) => DeltaRange::ObserverSpeed(u),
        (Some(max), None) => DeltaRange::Direct { max },
        (None, None) => DeltaRange::Direct { max: FRAC_PI_2 },
    };
    let config = ScanConfig {
        delta_range,
        particle_speed: args.particle_speed,
        n_alpha,
        n_delta,
        spin: match args.spin {
            SpinArg::Ghz => SpinChoice::Ghz,
            SpinArg::W => SpinChoice::W,
            SpinArg::GhzAlpha => SpinChoice::GhzAlpha(args.alpha),
        },
        momentum: args.momentum.parse::<MomentumChoice>()?,
        variant: args.variant.into(),
        threads: args.threads,
    };
    config.validate()?;
    Ok(config)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_wigner(u: f64, v: f64) -> Result<(), Failure> {
    let delta = wigner_angle_from_speeds(u, v)?;
    println!("delta_rad = {delta:.12e}");
    println!("delta_deg = {:.12e}", delta.to_degrees());
    Ok(())
}

fn cmd_scan(cmd: &ScanCommand) -> Result<(), Failure> {
    let (csv, out) = match cmd {
        ScanCommand::Fig2(args) => (fig2_csv(&scan_fig2(&scan_config(args, true)?)?), &args.out),
        ScanCommand::Fig3(args) => (fig3_csv(&scan_fig3(&scan_config(args, false)?)?), &args.out),
    };
    emit(&csv, out.as_deref())?;
    Ok(())
}

fn print_report(label: &str, r: &WitnessReport) {
    println!(
        "{label}: value {} | offdiag {} | populations {}, {}, {} | printed offdiag {}",
        format_sig12(r.value),
        format_sig12(r.offdiag_term),
        format_sig12(r.population_terms[0]),
        format_sig12(r.population_terms[1]),
        format_sig12(r.population_terms[2]),
        format_sig12(r.printed_offdiag),
    );
}

fn cmd_witness(file: &Path, variant: WitnessVariant) -> Result<(), Failure> {
    let state = read_state(file)?;
    let rho = state.spin_density()?;
    let mut primary = None;
    for v in [WitnessVariant::Symmetric, WitnessVariant::AsPrinted] {
        for (path, name) in [
            (WitnessPath::PauliSettings, "pauli-settings"),
            (WitnessPath::MatrixElements, "matrix-elements"),
        ] {
            let r = witness_hmgh(&rho, path, v)?;
            print_report(&format!("{v} / {name}"), &r);
            if v == variant && path == WitnessPath::MatrixElements {
                primary = Some(r);
            }
        }
    }
    let r = primary.expect("requested variant evaluated");
    println!("value = {}", format_sig12(r.value));
    if r.detects_gme() {
        println!("verdict: genuinely multipartite entangled");
    } else {
        println!("verdict: not detected by this witness");
    }
    Ok(())
}

fn scenario_from(args: &BoostArgs) -> Result<BoostScenario, Error> {
    let geometry = MomentumGeometry::symmetric(args.particle_speed)?;
    match (args.delta, args.observer_speed) {
        (Some(d), None) => BoostScenario::with_delta(d, geometry),
        (None, Some(u)) => BoostScenario::from_speeds(u, geometry),
        _ => Err(Error::Input("give exactly one of --delta or --observer-speed".into())),
    }
}

fn cmd_boost(file: &Path, args: &BoostArgs, out: &Path, spin_out: Option<&Path>) -> Result<(), Failure> {
    let scenario = scenario_from(args)?;
    let state = read_state(file)?.to_mixed()?;
    let boosted = boost_mixed(&state, &scenario)?;
    let stored = if boosted.full.members().len() == 1 {
        StoredState::from_composite(&boosted.full.members()[0].1)
    } else {
        StoredState::from_mixed(&boosted.full)
    };
    write_state(&stored, out)?;
    let spin_path = spin_out.map(Path::to_path_buf).unwrap_or_else(|| {
        let mut p = out.as_os_str().to_owned();
        p.push(".spin.json");
        PathBuf::from(p)
    });
    write_spin_matrix(&boosted.spin, &spin_path)?;
    println!("delta = {}", format_sig12(scenario.delta()));
    println!("boosted state -> {}", out.display());
    println!("spin matrix   -> {}", spin_path.display());
    Ok(())
}

fn cmd_check(suite: SuiteArg, trials: usize, seed: u64, threads: Option<usize>) -> Result<(), Failure> {
    let run = || match suite {
        SuiteArg::Condition1 => run_condition1_suite(trials, seed),
        SuiteArg::Condition2 => run_condition2_suite(trials, seed),
        SuiteArg::Soundness => run_soundness_suite(trials, seed),
    };
    let report: SuiteReport = match threads {
        Some(n) => thread_pool(n)?.install(run)?,
        None => run()?,
    };
    for line in &report.lines {
        println!("{line}");
    }
    println!(
        "{}: {} checks, max deviation {:.3e}",
        report.name, report.checks, report.max_deviation
    );
    if report.passed() {
        println!("PASS");
        Ok(())
    } else {
        Err(Failure::Check(report.failures.join("; ")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Wigner {
            observer_speed,
            particle_speed,
        } => cmd_wigner(*observer_speed, *particle_speed),
        Command::Scan(cmd) => cmd_scan(cmd),
        Command::Witness { file, variant } => cmd_witness(file, (*variant).into()),
        Command::Boost {
            file,
            boost,
            out,
            spin_out,
        } => cmd_boost(file, boost, out, spin_out.as_deref()),
        Command::Check {
            suite,
            trials,
            seed,
            threads,
        } => cmd_check(*suite, *trials, *seed, *threads),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("property check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numeric() { 3 } else { 2 })
        }
    }
}
