//! `trishell` command-line interface.
//!
//! Exit codes: 0 success, 1 usage/config error, 2 numerical failure,
//! 3 success with warnings (truncation not converged, clamped tables,
//! invalid sweep cells).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trishell_core::validate::Spacing;

use trishell_cli::commands::{
    cmd_ablation, cmd_export_netlist, cmd_fit, cmd_solve_circuit, cmd_solve_ssh, cmd_validate,
    CommandContext,
};
use trishell_cli::error::CliError;

const GEOMETRY_KEYS: &str = "\
  geometry.r_brain_m, geometry.t_skull_m, geometry.t_scalp_m";
const SOURCE_KEYS: &str = "\
  source.p_r_am, source.d_m, source.r_dip_m | source.eta";
const TISSUE_KEYS: &str = "\
  tissues.{brain,skull,scalp} = {\"static\": {sigma_s_per_m, eps_rel}}
                              | {\"table_csv\": \"path\"} | {\"synthetic\": true}";
const GRID_KEYS: &str = "\
  frequency_grid.{f_min_hz, f_max_hz, n_points, spacing} (default: 75 points,
  10 Hz - 50 kHz, linear)";
const SSH_KEYS: &str = "\
  ssh.{tol, l_cap} (default 1e-10, 500)";
const OUT_KEYS: &str = "\
  output_dir (default \"out\"), params_file (default <out>/fitted_params.json)";

fn help_solve_ssh() -> String {
    format!(
        "Config keys read:\n{GEOMETRY_KEYS}\n{SOURCE_KEYS}\n{TISSUE_KEYS}\n{GRID_KEYS}\n{SSH_KEYS}\n{OUT_KEYS}\n\nOutput: <out>/ssh_spectrum.csv (frequency_hz,v_re,v_im,v_abs,l_max_used)"
    )
}

fn help_solve_circuit() -> String {
    format!(
        "Config keys read:\n{GEOMETRY_KEYS}\n{SOURCE_KEYS}\n{TISSUE_KEYS}\n{GRID_KEYS}\n{OUT_KEYS}\n\nOutput: <out>/circuit_spectrum.csv (frequency_hz,v_re,v_im,v_abs)"
    )
}

fn help_fit() -> String {
    format!(
        "Config keys read:\n{GEOMETRY_KEYS}\n{SOURCE_KEYS}\n{OUT_KEYS}\n  \
fit.t_skull_values_m, fit.eccentricity_values,\n  \
fit.static_tissues.{{brain,skull,scalp}}.{{sigma_s_per_m, eps_rel}},\n  \
fit.objective_frequency_hz, fit.gamma_degree, fit.alpha_degree,\n  \
fit.gamma_abscissa ([\"psi12\",\"psi23\",\"psi23\"]), fit.gamma_stage_eta,\n  \
fit.optimizer.{{max_iters, tol, initial_step}}\n\nOutputs: params JSON (params_file) and <out>/fit_report.json"
    )
}

fn help_validate() -> String {
    format!(
        "Config keys read:\n{GEOMETRY_KEYS}\n{SOURCE_KEYS}\n{TISSUE_KEYS}\n{GRID_KEYS}\n{SSH_KEYS}\n{OUT_KEYS}\n  \
sweep.eta_values, sweep.t_skull_values_m (defaults: standard sweep grids)\n\nOutputs: <out>/sweep.csv and <out>/sweep_summary.json"
    )
}

fn help_ablation() -> String {
    format!(
        "Config keys read:\n{GEOMETRY_KEYS}\n{SOURCE_KEYS}\n{TISSUE_KEYS}\n{GRID_KEYS}\n{OUT_KEYS}\n  \
ablation.eta (default: source.eta, else 0.935), ablation.static_anchor_hz\n  (default: grid f_min)\n\nOutput: <out>/ablation.csv (frequency_hz,v_ohmic,v_disp_r,v_disp_rc)"
    )
}

fn help_netlist() -> String {
    format!(
        "Config keys read:\n{GEOMETRY_KEYS}\n{SOURCE_KEYS}\n{TISSUE_KEYS}\n{OUT_KEYS}\n  \
netlist.f_hz (overridden by --frequency-hz)\n\nOutput: <out>/netlist.cir (SPICE deck, node G emitted as ground `0`)"
    )
}

/// Lumped RC surrogate circuit of a three-shell spherical head with a
/// spherical-harmonics reference solver.
#[derive(Parser)]
#[command(name = "trishell", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Run configuration JSON file.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output directory (overrides config output_dir).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Frequency grid spacing override.
    #[arg(long, value_name = "SPACING", value_enum)]
    frequency_spacing: Option<SpacingArg>,
    /// Worker threads for independent sweep points.
    #[arg(long, value_name = "N", default_value_t = 1)]
    jobs: usize,
    /// Progress notes on stderr.
    #[arg(long)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpacingArg {
    Linear,
    Log,
}

impl From<SpacingArg> for Spacing {
    fn from(value: SpacingArg) -> Self {
        match value {
            SpacingArg::Linear => Spacing::Linear,
            SpacingArg::Log => Spacing::Log,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the spherical-harmonics reference over the frequency grid.
    #[command(name = "solve-ssh", after_help = help_solve_ssh())]
    SolveSsh {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evaluate the surrogate circuit over the frequency grid.
    #[command(name = "solve-circuit", after_help = help_solve_circuit())]
    SolveCircuit {
        #[command(flatten)]
        common: CommonArgs,
        /// Fitted-parameter JSON file.
        #[arg(long, value_name = "PATH")]
        params: PathBuf,
    },
    /// Identify the circuit parameters against the reference solution.
    #[command(after_help = help_fit())]
    Fit {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// MRFE sweep over eccentricity and skull thickness.
    #[command(after_help = help_validate())]
    Validate {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_name = "PATH")]
        params: PathBuf,
    },
    /// Compare ohmic-static, dispersive-R and dispersive-RC configurations.
    #[command(after_help = help_ablation())]
    Ablation {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_name = "PATH")]
        params: PathBuf,
    },
    /// Export the circuit as a SPICE netlist frozen at one frequency.
    #[command(name = "export-netlist", after_help = help_netlist())]
    ExportNetlist {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_name = "PATH")]
        params: PathBuf,
        /// Frequency the element values are evaluated at, in Hz.
        #[arg(long, value_name = "HZ")]
        frequency_hz: Option<f64>,
    },
}

type Action = Box<dyn FnOnce(&CommandContext) -> Result<Vec<String>, CliError>>;

fn run(cli: Cli) -> Result<Vec<String>, CliError> {
    let (common, action): (&CommonArgs, Action) = match &cli.command {
        Command::SolveSsh { common } => (common, Box::new(cmd_solve_ssh)),
        Command::SolveCircuit { common, params } => {
            let params = params.clone();
            (common, Box::new(move |ctx| cmd_solve_circuit(ctx, &params)))
        }
        Command::Fit { common } => (common, Box::new(cmd_fit)),
        Command::Validate { common, params } => {
            let params = params.clone();
            (common, Box::new(move |ctx| cmd_validate(ctx, &params)))
        }
        Command::Ablation { common, params } => {
            let params = params.clone();
            (common, Box::new(move |ctx| cmd_ablation(ctx, &params)))
        }
        Command::ExportNetlist {
            common,
            params,
            frequency_hz,
        } => {
            let params = params.clone();
            let f = *frequency_hz;
            (
                common,
                Box::new(move |ctx| cmd_export_netlist(ctx, &params, f)),
            )
        }
    };

    let ctx = CommandContext::load(
        &common.config,
        common.out.as_deref(),
        common.jobs,
        common.verbose,
        common.frequency_spacing.map(Spacing::from),
    )?;
    action(&ctx)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };

    match run(cli) {
        Ok(warnings) if warnings.is_empty() => ExitCode::SUCCESS,
        Ok(warnings) => {
            for w in warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::from(3)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
