use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twophase_lbm::config::ScenarioConfig;
use twophase_lbm::harness::io;
use twophase_lbm::harness::{convergence_study, preset, run, Engine, EngineRun, RunOptions, TestId};
use twophase_lbm::SolverError;

#[derive(Parser)]
#[command(name = "twophase", version, about = "Two-phase 1D tube solvers: lattice Boltzmann and finite-difference reference")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or both engines and write snapshots.
    Run(RunArgs),
    /// Run both engines and write the comparison report.
    Compare(RunArgs),
    /// Observed order of accuracy of the LBM across mesh scales.
    Converge {
        #[command(flatten)]
        case: CaseArgs,
        /// Comma-separated mesh scales forming a geometric sequence.
        #[arg(long, value_delimiter = ',', value_parser = parse_rational, default_value = "1/2,1,2")]
        scales: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the preset configurations in config-file format.
    Presets {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
        test: Option<u32>,
        /// Write one `test<N>.cfg` per preset into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CaseArgs {
    /// Published test case; ignored when --config is given.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=4))]
    test: u32,
    /// Configuration file (`key = value` lines).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Diffusive mesh scale, e.g. `1/2` or `2`.
    #[arg(long, value_parser = parse_rational, default_value = "1/2")]
    scale: f64,
    /// Override the node count after scaling.
    #[arg(long)]
    nx: Option<usize>,
    /// Override the number of time steps after scaling; the ramp keeps its
    /// fraction of the run.
    #[arg(long)]
    nt: Option<u64>,
    /// Always run the full step count instead of stopping at steady state.
    #[arg(long)]
    no_early_exit: bool,
    /// Accepted for reproducibility scripts; every run is deterministic.
    #[arg(long)]
    seedless: bool,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[arg(long, value_enum, default_value_t = EngineArg::Both)]
    engine: EngineArg,
    /// Snapshot interval in steps; the final state is always written.
    #[arg(long)]
    snapshot_every: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Write snapshot CSV files only (no report, config or charts).
    #[arg(long)]
    csv_only: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Lbm,
    Fd,
    Both,
}

fn parse_rational(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            let d: f64 = d.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            n / d
        }
        None => s.trim().parse().map_err(|e| format!("{s}: {e}"))?,
    };
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(format!("{s}: expected a positive number"))
    }
}

impl CaseArgs {
    fn base(&self) -> Result<ScenarioConfig, SolverError> {
        match &self.config {
            Some(path) => io::read_config(path),
            None => Ok(preset(TestId::from_number(self.test).expect("validated by clap")).config),
        }
    }

    fn config(&self) -> Result<ScenarioConfig, SolverError> {
        let mut c = self.base()?.scaled(self.scale)?;
        if let Some(nx) = self.nx {
            c.nx = nx;
        }
        override_nt(&mut c, self.nt);
        c.validate()?;
        Ok(c)
    }

    fn steady_exit(&self) -> Option<f64> {
        (!self.no_early_exit).then_some(twophase_lbm::harness::run::STEADY_TOLERANCE)
    }
}

fn override_nt(c: &mut ScenarioConfig, nt: Option<u64>) {
    if let Some(nt) = nt {
        c.n_ramp = ((c.n_ramp as f64 * nt as f64 / c.nt as f64).round() as u64).max(1);
        c.nt = nt;
    }
}

fn create_dir(dir: &Path) -> Result<(), SolverError> {
    std::fs::create_dir_all(dir).map_err(|e| SolverError::Io(format!("{}: {e}", dir.display())))
}

fn write_charts(dir: &Path, lbm: Option<&EngineRun>, fd: Option<&EngineRun>) -> Result<(), SolverError> {
    type Field = fn(&twophase_lbm::harness::Snapshot) -> &Vec<f64>;
    let fields: [(&str, Field); 4] =
        [("alpha_g", |s| &s.alpha_g), ("u_g", |s| &s.u_g), ("u_l", |s| &s.u_l), ("p_k", |s| &s.p_k)];
    for (name, get) in fields {
        let mut series = Vec::new();
        for (label, r) in [("LBM", lbm), ("FD", fd)] {
            if let Some(r) = r {
                series.push((label, r.last().x.as_slice(), get(r.last()).as_slice()));
            }
        }
        io::write_text(&dir.join(format!("{name}.svg")), &io::svg_chart(name, &series))?;
    }
    Ok(())
}

fn cmd_run(args: &RunArgs, force_both: bool) -> Result<(), SolverError> {
    let config = args.case.config()?;
    let engine = match (force_both, args.engine) {
        (true, _) | (_, EngineArg::Both) => Engine::Both,
        (_, EngineArg::Lbm) => Engine::Lbm,
        (_, EngineArg::Fd) => Engine::Fd,
    };
    let opts = RunOptions { engine, snapshot_every: args.snapshot_every, steady_exit: args.case.steady_exit(), track_invariants: false };
    let out = run(&config, &opts)?;
    create_dir(&args.out)?;
    for (tag, r) in [("lbm", &out.lbm), ("fd", &out.fd)] {
        if let Some(r) = r {
            io::write_text(&args.out.join(format!("{tag}.csv")), &io::snapshots_to_csv(&r.snapshots))?;
            let o = twophase_lbm::harness::Outlet::of(r.last());
            println!(
                "{tag}: steps {} ({:.1} s){} outlet alpha_g {:.6} u_g {:.6e} u_l {:.6e} flux {:.6e}",
                r.steps,
                r.runtime_s,
                if r.steady { " steady" } else { "" },
                o.alpha_g,
                o.u_g,
                o.u_l,
                o.mixture_flux
            );
        }
    }
    if !args.csv_only {
        io::write_text(&args.out.join("config.cfg"), &io::config_to_string(&config))?;
        if let Some(report) = &out.report {
            let text = io::report_to_string(report);
            io::write_text(&args.out.join("report.txt"), &text)?;
            print!("{text}");
        }
        write_charts(&args.out, out.lbm.as_ref(), out.fd.as_ref())?;
    }
    Ok(())
}

fn cmd_converge(case: &CaseArgs, scales: &[f64], out: Option<&Path>) -> Result<(), SolverError> {
    let mut base = case.base()?;
    if let Some(nx) = case.nx {
        base.nx = nx;
    }
    override_nt(&mut base, case.nt);
    let opts = RunOptions { engine: Engine::Lbm, snapshot_every: None, steady_exit: case.steady_exit(), track_invariants: false };
    let report = convergence_study(&base, scales, &opts)?;
    let mut text = format!("scales = {:?}\nsteps = {:?}\n", report.scales, report.steps);
    for f in &report.fields {
        let e = &f.estimate;
        let order = e.order.map_or("undefined".to_string(), |p| format!("{p:.3}"));
        let band = e.band.map_or("undefined".to_string(), |(lo, hi)| format!("{lo:.3}..{hi:.3}"));
        text.push_str(&format!(
            "{}: order = {order} band = {band} monotone = {} differences_rms = {:?} differences_max = {:?}\n",
            f.name, e.monotone, e.differences, e.differences_max
        ));
    }
    print!("{text}");
    if let Some(dir) = out {
        create_dir(dir)?;
        io::write_text(&dir.join("convergence.txt"), &text)?;
    }
    Ok(())
}

fn cmd_presets(test: Option<u32>, out: Option<&Path>) -> Result<(), SolverError> {
    let ids: Vec<TestId> = match test {
        Some(n) => vec![TestId::from_number(n).expect("validated by clap")],
        None => TestId::ALL.to_vec(),
    };
    if let Some(dir) = out {
        create_dir(dir)?;
    }
    for id in ids {
        let text = io::config_to_string(&preset(id).config);
        match out {
            Some(dir) => io::write_text(&dir.join(format!("test{}.cfg", id.number())), &text)?,
            None => print!("# TEST #{}\n{text}\n", id.number()),
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args, false),
        Command::Compare(args) => cmd_run(args, true),
        Command::Converge { case, scales, out } => cmd_converge(case, scales, out.as_deref()),
        Command::Presets { test, out } => cmd_presets(*test, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
