use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use extdomain::config::{parse_method, resolve, Case, Overrides};
use extdomain::error::{HarnessError, Result};
use extdomain::{output, run_case1, run_case2, sweep_thresholds};
use extdomain_core::{Case1Profile, TransportMethod};

#[derive(Parser)]
#[command(name = "extdomain", version, about = "Extended-domain vs scaled-domain tumour growth experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Frozen u = C = 1 run against the closed-form solution.
    Case1(Common),
    /// Coupled system, extended vs scaled scheme.
    Case2(Common),
    /// Relative radius error over the (dx, alpha_thr) grid of the frozen case.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct Common {
    /// Transport method: U (upwind) or M (MUSCL).
    #[arg(long, value_parser = method_arg)]
    method: Option<TransportMethod>,
    #[arg(long)]
    dx: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long = "alpha-thr")]
    alpha_thr: Option<f64>,
    /// Initial profile of the frozen case: i, ii or iii.
    #[arg(long, value_parser = profile_arg)]
    profile: Option<Case1Profile>,
    /// key = value experiment file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated dx values (defaults to the method's reference table).
    #[arg(long, value_delimiter = ',')]
    dx_list: Option<Vec<f64>>,
    /// Comma-separated thresholds.
    #[arg(long, value_delimiter = ',')]
    thr_list: Option<Vec<f64>>,
}

fn method_arg(s: &str) -> std::result::Result<TransportMethod, String> {
    parse_method(s).ok_or_else(|| format!("expected U or M, got `{s}`"))
}

fn profile_arg(s: &str) -> std::result::Result<Case1Profile, String> {
    Case1Profile::from_tag(s).ok_or_else(|| format!("expected i, ii or iii, got `{s}`"))
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            method: self.method,
            dx: self.dx,
            dt: self.dt,
            alpha_thr: self.alpha_thr,
            profile: self.profile,
            config: self.config.clone(),
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Case1(args) => {
            let s = resolve(Case::One, &args.overrides())?;
            let run = run_case1(&s)?;
            output::write_run(&args.out, &run)?;
            let r = &run.report;
            println!(
                "case1 method={} profile={} dx={} alpha_thr={}: l_h={:.6} delta_ell={:.3e} linf={:.3e} (scaled: {:.3e})",
                s.method.label(),
                s.profile.tag(),
                s.dx,
                s.alpha_thr,
                r.ell_a,
                r.delta_ell.unwrap_or(f64::NAN),
                r.linf_interior.unwrap_or(f64::NAN),
                r.linf_interior_b.unwrap_or(f64::NAN),
            );
        }
        Command::Case2(args) => {
            let s = resolve(Case::Two, &args.overrides())?;
            let run = run_case2(&s)?;
            output::write_run(&args.out, &run)?;
            let r = &run.report;
            println!(
                "case2 method={} alpha_thr={}: l_A={:.6} l_B={:.6} relative difference={:.3e}",
                s.method.label(),
                s.alpha_thr,
                r.ell_a,
                r.ell_b,
                r.scheme_diff
            );
        }
        Command::Sweep(args) => {
            let mut s = resolve(Case::One, &args.common.overrides())?;
            if let Some(v) = args.dx_list {
                s.dx_list = v;
            }
            if let Some(v) = args.thr_list {
                s.thr_list = v;
            }
            if s.dx_list.is_empty() || s.thr_list.is_empty() {
                return Err(HarnessError::Argument("sweep lists must be non-empty".into()));
            }
            let table = sweep_thresholds(&s);
            std::fs::create_dir_all(&args.common.out)
                .map_err(|source| HarnessError::Io { path: args.common.out.clone(), source })?;
            output::write_table(&args.common.out.join("table.csv"), &table)?;
            println!("sweep method={} profile={}", s.method.label(), s.profile.tag());
            print!("{:>8}", "dx");
            for t in &table.thr {
                print!(" {:>10}", t);
            }
            println!();
            for (dx, row) in table.dx.iter().zip(&table.values) {
                print!("{dx:>8}");
                for v in row {
                    print!(" {v:>10.2e}");
                }
                println!();
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
