use anyhow::Context;
use camlopa::{detect, localize_files, run_eval, simulate_to_dir, CliError, EvalOptions, ModelOverrides, RunConfig};
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "camlopa", version, about = "Find WiFi cameras that are watching you and estimate where they are")]
struct Cli {
    /// JSON config with detection, processing and model sections.
    #[arg(long, global = true, env = "CAMLOPA_CONFIG")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Look for snooping cameras in a pcap or JSONL capture.
    Detect {
        capture: PathBuf,
        /// Tab-separated OUI vendor table.
        #[arg(long)]
        oui: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Estimate the camera azimuth from the three walk traces.
    Localize {
        csi1: PathBuf,
        csi2: PathBuf,
        csi3: PathBuf,
        /// Camera-to-device distance in metres.
        #[arg(long)]
        d: Option<f64>,
        /// Body size in metres.
        #[arg(long)]
        body: Option<f64>,
        /// 2.4 GHz channel; sets the wavelength.
        #[arg(long)]
        channel: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Write simulated traces, capture and ground truth for a scenario file.
    Simulate {
        scenario: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Localize every simulated room point and report the errors.
    Eval {
        /// Comma-separated room numbers, or "all".
        #[arg(long, default_value = "all")]
        rooms: String,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Relative amplitude noise; 0 disables noise and ripple.
        #[arg(long, default_value_t = 0.02)]
        noise: f64,
        /// Draw each point's true range from 2.0-4.5 m while the model keeps d.
        #[arg(long)]
        mismatch: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the per-point table here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_rooms(s: &str) -> Result<Vec<u8>, CliError> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|r| match r.trim().parse::<u8>() {
            Ok(n @ 1..=3) => Ok(n),
            _ => Err(CliError::Input(format!("bad room {r:?}; rooms are 1, 2 and 3"))),
        })
        .collect()
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(v).map_err(|e| CliError::Input(e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::load(cli.config.as_deref())
        .context("loading config")
        .map_err(|e| CliError::Input(format!("{e:#}")))?;
    match cli.cmd {
        Cmd::Detect { capture, oui, json } => {
            let r = detect(&capture, &cfg, oui.as_deref())?;
            if json {
                print_json(&r)?;
            } else {
                print!("{}", r.to_text());
            }
        }
        Cmd::Localize { csi1, csi2, csi3, d, body, channel, json } => {
            let ov = ModelOverrides { d, body_size: body, channel };
            let r = localize_files([&csi1, &csi2, &csi3], &cfg, ov)?;
            if json {
                print_json(&r)?;
            } else {
                print!("{}", r.to_text());
            }
        }
        Cmd::Simulate { scenario, out_dir, seed } => {
            let truth = simulate_to_dir(&scenario, &out_dir, seed)?;
            println!(
                "wrote {} (azimuth {:.2} deg, quadrant {})",
                out_dir.display(),
                truth.theta_deg,
                u8::from(truth.quadrant)
            );
        }
        Cmd::Eval { rooms, trials, noise, mismatch, seed, csv, json } => {
            if !(noise >= 0.0 && noise.is_finite()) {
                return Err(CliError::Input(format!("noise must be non-negative, got {noise}")));
            }
            let opts = EvalOptions { rooms: parse_rooms(&rooms)?, trials, noise, mismatch, seed };
            let summary = run_eval(&cfg, &opts).map_err(|e| CliError::Input(e.to_string()))?;
            let table = summary.to_csv();
            match &csv {
                Some(p) => std::fs::write(p, &table).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
                None if !json => print!("{table}"),
                None => {}
            }
            if json {
                print_json(&summary)?;
            } else {
                match summary.mean_abs_err_deg {
                    Some(m) => eprintln!("mean abs error {m:.2} deg over {} points", summary.points.len()),
                    None => eprintln!("no trials run"),
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("camlopa: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
