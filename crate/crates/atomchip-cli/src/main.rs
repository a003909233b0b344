//! Command-line front end: claim reports, parameter sweeps, gate simulation
//! and pulse-time optimization.
//!
//! Exit codes: 0 success, 1 one or more claim rows failed, 2 usage or
//! configuration error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use atomchip::config::ScenarioConfig;
use atomchip::gates::cz::{cz_error_for_total_time, cz_error_with_atom_spread};
use atomchip::gates::sim::{
    simulate_pulse_sequence, EnsembleState, LevelScheme, StateSpace, G1, RYD, RYD2,
};
use atomchip::gates::build_hadamard_pulse;
use atomchip::report::assemble_report;
use atomchip::rydberg::{blockade_shift_with_min, rydberg_level, CollectiveQubit};
use atomchip::sweep::{
    gnuplot_script, optimize_pulse_for_scenario, run_sweep, sweep_csv, SweepScale, SweepSpec,
};
use atomchip::units::fmt_sig9;

#[derive(Parser)]
#[command(name = "atomchip", version, about = "Waveguide-chip quantum-processor design calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Txt,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scale {
    Linear,
    Log,
}

#[derive(Clone, Copy, ValueEnum)]
enum Gate {
    Cz,
    Hadamard,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and write the claim-by-claim report.
    Report {
        /// Scenario config (omit for the bundled defaults).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Directory receiving report.txt, report.json and report.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Rendering echoed to stdout.
        #[arg(long, value_enum, default_value_t = Format::Txt)]
        format: Format,
    },
    /// Sweep one config parameter and evaluate an objective per point.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Dotted config path, e.g. dipole_trap.beam_power_each.
        #[arg(long)]
        param: String,
        /// Range minimum, in the parameter's configured unit.
        #[arg(long)]
        min: f64,
        /// Range maximum, in the parameter's configured unit.
        #[arg(long)]
        max: f64,
        #[arg(long, default_value_t = 10)]
        points: u32,
        #[arg(long, value_enum, default_value_t = Scale::Linear)]
        scale: Scale,
        /// Claim identifier or cz_error_optimized.
        #[arg(long)]
        objective: String,
        /// Output directory for sweep.csv and sweep.gnuplot (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (0 = default).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Seed for Monte-Carlo objectives.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Simulate one gate and print its fidelity report as JSON.
    SimulateGate {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Gate::Cz)]
        gate: Gate,
        /// Monte-Carlo samples for the atom-number spread (0 = point estimate).
        #[arg(long, default_value_t = 0)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Golden-section search for the gate time minimising the CZ error.
    OptimizePulse {
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Validate a config file against the schema.
    ValidateConfig {
        #[arg(long)]
        config: PathBuf,
    },
}

fn load_config(path: &Option<PathBuf>) -> atomchip::Result<ScenarioConfig> {
    match path {
        Some(p) => ScenarioConfig::from_path(p),
        None => Ok(ScenarioConfig::default()),
    }
}

fn write_file(path: &Path, contents: &str) -> atomchip::Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| atomchip::Error::Io(format!("cannot write {}: {e}", path.display())))
}

fn run() -> atomchip::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Report { config, out, format } => {
            let scenario = load_config(&config)?.validate()?;
            let report = assemble_report(&scenario)?;
            let (txt, json, csv) = (report.to_text(), report.to_json(), report.to_csv());
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir).map_err(|e| {
                    atomchip::Error::Io(format!("cannot create {}: {e}", dir.display()))
                })?;
                write_file(&dir.join("report.txt"), &txt)?;
                write_file(&dir.join("report.json"), &json)?;
                write_file(&dir.join("report.csv"), &csv)?;
            }
            match format {
                Format::Txt => print!("{txt}"),
                Format::Json => print!("{json}"),
                Format::Csv => print!("{csv}"),
            }
            let failed = report.failed_rows();
            if failed.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                for row in failed {
                    eprintln!("FAIL {}: {} {}", row.id, fmt_sig9(row.value), row.unit);
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Sweep { config, param, min, max, points, scale, objective, out, jobs, seed } => {
            let base = load_config(&config)?;
            let spec = SweepSpec {
                parameter: param,
                min,
                max,
                points,
                scale: match scale {
                    Scale::Linear => SweepScale::Linear,
                    Scale::Log => SweepScale::Log,
                },
                objective,
            };
            let rows = run_sweep(&base, &spec, jobs, seed)?;
            let csv = sweep_csv(&spec, &rows);
            match out {
                Some(dir) => {
                    std::fs::create_dir_all(&dir).map_err(|e| {
                        atomchip::Error::Io(format!("cannot create {}: {e}", dir.display()))
                    })?;
                    write_file(&dir.join("sweep.csv"), &csv)?;
                    write_file(&dir.join("sweep.gnuplot"), &gnuplot_script("sweep.csv", &spec))?;
                    eprintln!("wrote {} points to {}", rows.len(), dir.display());
                }
                None => print!("{csv}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SimulateGate { config, gate, samples, seed } => {
            let scenario = load_config(&config)?.validate()?;
            let level = rydberg_level(&scenario.scaling_model, scenario.two_qubit_n)?;
            let doc = match gate {
                Gate::Cz => {
                    let report = if samples > 0 && scenario.atom_number_sigma > 0.0 {
                        let qubit = CollectiveQubit {
                            atom_count: scenario.ensemble_atoms,
                            extent: scenario.qubit_extent,
                            site_pitch: scenario.site_pitch,
                        };
                        cz_error_with_atom_spread(
                            &qubit,
                            &qubit,
                            &level,
                            scenario.single_atom_rabi_hz,
                            scenario.site_pitch,
                            scenario.atom_number_sigma,
                            samples,
                            seed,
                        )?
                    } else {
                        cz_error_for_total_time(
                            scenario.cz_blockade_hz,
                            &level,
                            scenario.cz_total_time,
                        )?
                    };
                    serde_json::json!({
                        "gate": "cz",
                        "report": report,
                    })
                }
                Gate::Hadamard => {
                    let qubit = CollectiveQubit {
                        atom_count: scenario.ensemble_atoms,
                        extent: scenario.qubit_extent,
                        site_pitch: scenario.site_pitch,
                    };
                    let one_qubit_level =
                        rydberg_level(&scenario.scaling_model, scenario.one_qubit_n)?;
                    let blockade = blockade_shift_with_min(
                        &one_qubit_level,
                        scenario.qubit_extent,
                        scenario.min_vdw_distance,
                    )?;
                    let pulse = build_hadamard_pulse(&qubit, scenario.single_atom_rabi_hz)?;
                    let space = StateSpace::single(LevelScheme::FourLevel {
                        double_drive_ratio: qubit.double_excitation_ratio(),
                    });
                    let initial = EnsembleState::basis_state(space, &[G1]);
                    let fin = simulate_pulse_sequence(
                        &initial,
                        &[pulse.clone()],
                        &one_qubit_level,
                        blockade,
                    )?;
                    serde_json::json!({
                        "gate": "hadamard",
                        "pulse": pulse,
                        "populations": {
                            "logical_one": fin.population(&[G1]),
                            "rydberg": fin.population(&[RYD]),
                            "double_rydberg": fin.population(&[RYD2]),
                        },
                        "norm": fin.norm(),
                    })
                }
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("gate report serialises"));
            Ok(ExitCode::SUCCESS)
        }
        Command::OptimizePulse { config } => {
            let scenario = load_config(&config)?.validate()?;
            let optimum = optimize_pulse_for_scenario(&scenario)?;
            let mut notes = Vec::new();
            if optimum.boundary {
                notes.push("optimum sits on the search boundary (degenerate landscape)");
            }
            if optimum.grid_fallback {
                notes.push("landscape not unimodal; grid minimum used to bracket");
            }
            let doc = serde_json::json!({
                "optimal_duration_s": fmt_sig9(optimum.duration),
                "simulated_error": fmt_sig9(optimum.gate_error),
                "closed_form_error": fmt_sig9(optimum.formula_error),
                "notes": notes,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("optimum serialises"));
            Ok(ExitCode::SUCCESS)
        }
        Command::ValidateConfig { config } => {
            let parsed = ScenarioConfig::from_path(&config)?;
            parsed.validate()?;
            println!("config ok: {}", config.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
