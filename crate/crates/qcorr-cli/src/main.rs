//! Command-line front end for the qcorr library.
//!
//! Subcommands:
//!
//! * `quantify` — steering, concurrence, and discord of a family state.
//! * `channel`  — the same quantifiers after a noisy channel.
//! * `swap`     — entanglement swapping of two identical family states.
//! * `sweep`    — run a TOML-described parameter sweep.
//! * `figure`   — canned sweeps reproducing the study's figure data.
//!
//! Usage errors exit with status 2 (clap's default); domain and I/O
//! errors exit with status 1 and print the library's error name.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qcorr::channels::{apply_channel, gad_channel, lift_two_qubit, pd_channel, sdc_channel};
use qcorr::quantifiers::{concurrence, f3_steering, interferometric_power};
use qcorr::states::{make_almeida_from, BellIndex, DensityOperator};
use qcorr::swapping::swap;
use qcorr::sweep::figures::figure_data_with_grid;
use qcorr::sweep::output::{fmt_float, write_output};
use qcorr::sweep::{OutputFormat, OutputSpec, SweepConfig};
use qcorr::{Error, Result};

#[derive(Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Quantum correlations of two-qubit states under noise and entanglement swapping"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum, Default)]
enum FormatArg {
    /// Comma-separated values.
    #[default]
    Csv,
    /// JSON document.
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ChannelArg {
    /// Phase damping.
    Pd,
    /// Generalized amplitude damping.
    Gad,
    /// Collective dephasing.
    Sdc,
}

#[derive(Subcommand)]
enum Command {
    /// Print steering, concurrence, and discord of the (k, theta) state.
    Quantify {
        /// Mixing weight, 0 <= k <= 1.
        #[arg(long)]
        k: f64,
        /// Preparation angle in radians, 0 <= theta <= pi/4.
        #[arg(long)]
        theta: f64,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
    },
    /// Send the (k, theta) state through a noisy channel, then quantify.
    Channel {
        /// Which channel to apply.
        #[arg(long, value_enum)]
        channel: ChannelArg,
        /// Mixing weight, 0 <= k <= 1.
        #[arg(long)]
        k: f64,
        /// Preparation angle in radians, 0 <= theta <= pi/4.
        #[arg(long)]
        theta: f64,
        /// Channel strength, 0 <= p <= 1.
        #[arg(long)]
        p: f64,
        /// Dissipation rate, 0 <= gamma <= 1 (gad only).
        #[arg(long, required_if_eq("channel", "gad"))]
        gamma: Option<f64>,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
    },
    /// Swap two identical (k, theta) pairs through a Bell projector.
    Swap {
        /// Mixing weight, 0 <= k <= 1.
        #[arg(long)]
        k: f64,
        /// Preparation angle in radians, 0 <= theta <= pi/4.
        #[arg(long)]
        theta: f64,
        /// Bell measurement outcome, 1..4.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        bell: u8,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
    },
    /// Run a parameter sweep described by a TOML config file.
    Sweep {
        /// Path to the sweep configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output file (defaults to the config's output path, else stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format (defaults to the config's choice, else csv).
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Emit the data set behind a figure (1..9, b1, b2, b3).
    Figure {
        /// Figure identifier.
        id: String,
        /// Grid points per swept axis (default 101; 201 for figures 8, 9).
        #[arg(long)]
        grid: Option<usize>,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Quantify { k, theta, format } => quantify_cmd(k, theta, format),
        Command::Channel {
            channel,
            k,
            theta,
            p,
            gamma,
            format,
        } => channel_cmd(channel, k, theta, p, gamma, format),
        Command::Swap {
            k,
            theta,
            bell,
            format,
        } => swap_cmd(k, theta, bell, format),
        Command::Sweep {
            config,
            out,
            format,
        } => sweep_cmd(&config, out, format),
        Command::Figure {
            id,
            grid,
            out,
            format,
        } => figure_cmd(&id, grid, out, format),
    }
}

/// The three headline quantifiers of a two-qubit state.
fn quantifier_triple(rho: &DensityOperator) -> Result<[(&'static str, f64); 3]> {
    Ok([
        ("steering", f3_steering(rho)?),
        ("concurrence", concurrence(rho)?),
        ("discord", interferometric_power(rho)?),
    ])
}

fn print_quantity_csv(pairs: &[(&str, f64)]) {
    println!("quantity,value");
    for (name, value) in pairs {
        println!("{name},{}", fmt_float(*value));
    }
}

fn state_entries(rho: &DensityOperator) -> Vec<Vec<[f64; 2]>> {
    let m = rho.matrix();
    (0..rho.dim())
        .map(|i| {
            (0..rho.dim())
                .map(|j| {
                    let e = m[(i, j)];
                    [e.re, e.im]
                })
                .collect()
        })
        .collect()
}

fn quantify_cmd(k: f64, theta: f64, format: FormatArg) -> Result<()> {
    let rho = make_almeida_from(k, theta)?;
    let values = quantifier_triple(&rho)?;
    match format {
        FormatArg::Csv => print_quantity_csv(&values),
        FormatArg::Json => {
            let doc = json!({
                "k": k,
                "theta": theta,
                "steering": values[0].1,
                "concurrence": values[1].1,
                "discord": values[2].1,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("plain JSON tree")
            );
        }
    }
    Ok(())
}

fn channel_cmd(
    channel: ChannelArg,
    k: f64,
    theta: f64,
    p: f64,
    gamma: Option<f64>,
    format: FormatArg,
) -> Result<()> {
    if !matches!(channel, ChannelArg::Gad) && gamma.is_some() {
        return Err(Error::Domain(
            "gamma is only meaningful for the gad channel".to_string(),
        ));
    }
    let input = make_almeida_from(k, theta)?;
    let (label, lifted) = match channel {
        ChannelArg::Pd => ("pd", lift_two_qubit(&pd_channel(p)?)?),
        ChannelArg::Gad => (
            "gad",
            lift_two_qubit(&gad_channel(
                p,
                gamma.expect("required_if_eq enforces this"),
            )?)?,
        ),
        ChannelArg::Sdc => ("sdc", sdc_channel(p)?),
    };
    let output = apply_channel(&input, &lifted)?;
    let values = quantifier_triple(&output)?;
    match format {
        FormatArg::Csv => print_quantity_csv(&values),
        FormatArg::Json => {
            let mut doc = json!({
                "channel": label,
                "k": k,
                "theta": theta,
                "p": p,
                "steering": values[0].1,
                "concurrence": values[1].1,
                "discord": values[2].1,
                "state": state_entries(&output),
            });
            if let Some(g) = gamma {
                doc["gamma"] = json!(g);
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("plain JSON tree")
            );
        }
    }
    Ok(())
}

fn swap_cmd(k: f64, theta: f64, bell: u8, format: FormatArg) -> Result<()> {
    let rho = make_almeida_from(k, theta)?;
    let outcome = swap(&rho, &rho, BellIndex::from_index(bell)?)?;
    let state = outcome.state.expect("swap errors on zero probability");
    let values = quantifier_triple(&state)?;
    match format {
        FormatArg::Csv => {
            println!("quantity,value");
            println!("probability,{}", fmt_float(outcome.probability));
            for (name, value) in &values {
                println!("{name},{}", fmt_float(*value));
            }
        }
        FormatArg::Json => {
            let doc = json!({
                "k": k,
                "theta": theta,
                "bell": bell,
                "probability": outcome.probability,
                "steering": values[0].1,
                "concurrence": values[1].1,
                "discord": values[2].1,
                "state": state_entries(&state),
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("plain JSON tree")
            );
        }
    }
    Ok(())
}

fn sweep_cmd(config: &PathBuf, out: Option<PathBuf>, format: Option<FormatArg>) -> Result<()> {
    let text = std::fs::read_to_string(config)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", config.display())))?;
    let cfg = SweepConfig::from_toml_str(&text)?;
    let result = qcorr::sweep::run_sweep(&cfg)?;
    let mut spec = cfg.output.clone().unwrap_or_default();
    if let Some(path) = out {
        spec.path = Some(path);
    }
    if let Some(f) = format {
        spec.format = f.into();
    }
    write_output(&result, &spec)
}

fn figure_cmd(
    id: &str,
    grid: Option<usize>,
    out: Option<PathBuf>,
    format: FormatArg,
) -> Result<()> {
    let result = figure_data_with_grid(id, grid)?;
    let spec = OutputSpec {
        path: out,
        format: format.into(),
    };
    write_output(&result, &spec)
}
