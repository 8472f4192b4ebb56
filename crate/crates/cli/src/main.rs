//! `ctsb`: runs one experiment, writes `<out>/<experiment>.json` and
//! `<out>/<experiment>.csv`, and exits 0 (all metrics pass), 1 (a tolerance
//! failed, or the run could not finish numerically) or 2 (invalid input).

mod args;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use ctsb::experiments::{self as ex, Comparison, Report};
use ctsb::sampling::SamplerConfig;

use args::{Cli, Command, FileConfig};

const OUT_DIR_ENV: &str = "CTSB_OUT_DIR";

enum Failure {
    Input(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<ctsb::Error> for Failure {
    fn from(e: ctsb::Error) -> Self {
        match e {
            ctsb::Error::Quadrature { .. } | ctsb::Error::Truncation { .. } => Self::Runtime(e.into()),
            _ => Self::Input(e.into()),
        }
    }
}

fn input<T>(r: anyhow::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Input)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn out_dir(cli: &Cli, file: &FileConfig) -> PathBuf {
    cli.out_dir
        .clone()
        .or_else(|| file.get("out_dir").map(PathBuf::from))
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("ctsb-out"))
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let file = match &cli.config {
        Some(p) => input(FileConfig::load(p))?,
        None => FileConfig::default(),
    };
    let seed = input(file.pick(cli.seed, "seed"))?;
    let report = dispatch(&cli.command, &file, seed)?;
    let dir = out_dir(&cli, &file);
    write_outputs(&dir, &report).map_err(Failure::Runtime)?;
    print_summary(&report, &dir);
    Ok(report)
}

macro_rules! set {
    ($file:expr, $target:expr, $flag:expr, $key:literal) => {
        if let Some(v) = input($file.pick($flag.clone(), $key))? {
            $target = v;
        }
    };
    ($file:expr, $target:expr, $flag:expr, $key:literal, $map:expr) => {
        if let Some(v) = input($file.pick($flag.clone(), $key))? {
            $target = $map(v);
        }
    };
}

fn dispatch(cmd: &Command, file: &FileConfig, seed: Option<u64>) -> Result<Report, Failure> {
    let report = match cmd {
        Command::EuclidIsometry(a) => {
            let mut c = ex::EuclidIsometryConfig::default();
            set!(file, c.dims, a.dims, "dims", |v: args::IntList| v.0);
            set!(file, c.max_degree, a.max_degree, "max_degree");
            set!(file, c.polys_per_point, a.polys, "polys");
            set!(file, c.grid, a.grid, "grid", |g: args::GridSpec| g.points());
            c.seed = seed.unwrap_or(c.seed);
            ex::euclid_isometry(&c)?
        }
        Command::EuclidRatio(a) => {
            let mut c = ex::EuclidRatioConfig::default();
            set!(file, c.quad.order, a.order, "order");
            ex::euclid_ratio(&c)?
        }
        Command::Uncertainty(a) => {
            let mut c = ex::UncertaintyConfig::default();
            set!(file, c.n_states, a.states, "states");
            set!(file, c.quad.order, a.order, "order");
            c.seed = seed.unwrap_or(c.seed);
            ex::uncertainty(&c)?
        }
        Command::Su2Isometry(a) => {
            let mut c = ex::Su2IsometryConfig::default();
            set!(file, c.dims, a.n, "n", |v: args::IntList| v.0);
            set!(file, c.grid, a.grid, "grid", |g: args::GridSpec| g.points());
            set!(file, c.matrices_per_dim, a.matrices, "matrices");
            set!(file, c.sampler.n_paths, a.mc_paths, "mc_paths");
            set!(file, c.sampler.n_steps, a.mc_steps, "mc_steps");
            if let Some(s) = seed {
                c.seed = s;
                c.sampler.seed = s;
            }
            ex::su2_isometry(&c)?
        }
        Command::TransformEquiv(a) => {
            let mut c = ex::TransformEquivConfig::default();
            set!(file, c.dims, a.n, "n", |v: args::IntList| v.0);
            set!(file, c.n_points, a.points, "points");
            set!(file, c.order, a.order, "order");
            set!(file, c.max_log_norm, a.max_log_norm, "max_log_norm");
            c.seed = seed.unwrap_or(c.seed);
            ex::transform_equiv(&c)?
        }
        Command::HeatkProperties(a) => {
            let mut c = ex::HeatkPropertiesConfig::default();
            set!(file, c.mass_order, a.mass_order, "mass_order");
            set!(file, c.trend_order, a.trend_order, "trend_order");
            c.seed = seed.unwrap_or(c.seed);
            ex::heatk_properties(&c)?
        }
        Command::NuInvariance(a) => {
            let mut c = ex::NuInvarianceConfig::default();
            set!(file, c.t, a.t, "t");
            set!(file, c.variants, a.variants, "variants", |v: args::PairList| v.0);
            set!(file, c.control_t, a.control_t, "control_t");
            let s: &mut SamplerConfig = &mut c.sampler;
            set!(file, s.n_paths, a.paths, "paths");
            set!(file, s.n_steps, a.steps, "steps");
            set!(file, s.antithetic, a.antithetic, "antithetic");
            s.seed = seed.unwrap_or(s.seed);
            ex::nu_invariance(&c)?
        }
        Command::LargeS(a) => {
            let mut c = ex::LargeSConfig::default();
            set!(file, c.s_values, a.s, "s", |v: args::FloatList| v.0);
            set!(file, c.theta_grid, a.theta_grid, "theta_grid");
            set!(file, c.n_entries, a.entries, "entries");
            c.seed = seed.unwrap_or(c.seed);
            ex::large_s(&c)?
        }
        Command::ParamsRoundtrip(a) => {
            let mut c = ex::ParamsRoundtripConfig::default();
            set!(file, c.grid, a.grid, "grid", |g: args::GridSpec| g.points());
            set!(file, c.random_triples, a.triples, "triples");
            c.seed = seed.unwrap_or(c.seed);
            ex::params_roundtrip(&c)?
        }
    };
    debug_assert_eq!(report.experiment, cmd.name());
    Ok(report)
}

fn write_outputs(dir: &Path, report: &Report) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let json = dir.join(format!("{}.json", report.experiment));
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    std::fs::write(&json, text).with_context(|| format!("cannot write {}", json.display()))?;

    let csv_path = dir.join(format!("{}.csv", report.experiment));
    let mut w = csv::Writer::from_path(&csv_path).with_context(|| format!("cannot write {}", csv_path.display()))?;
    w.write_record(&report.grid.columns)?;
    for row in &report.grid.rows {
        // NaN marks a column that does not apply to the row
        w.write_record(row.iter().map(|v| if v.is_nan() { String::new() } else { format!("{v:e}") }))?;
    }
    w.flush()?;
    Ok(())
}

fn print_summary(report: &Report, dir: &Path) {
    for m in &report.metrics {
        let bound = match (m.comparison, m.target) {
            (Comparison::AtMost, _) => format!("<= {:.1e}", m.tolerance),
            (Comparison::AtLeast, _) => format!(">= {:.1e}", m.tolerance),
            (Comparison::RelativeTo, t) => format!("= {} ± {}%", t.unwrap_or(f64::NAN), m.tolerance * 100.0),
        };
        println!("{:<4} {:<36} {:>12.4e} {bound}", if m.pass { "ok" } else { "FAIL" }, m.name, m.value);
    }
    println!("{}: {} ({})", report.experiment, if report.pass { "pass" } else { "fail" }, dir.display());
}
