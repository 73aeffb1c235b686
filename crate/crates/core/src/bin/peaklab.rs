use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use peaklab::harness::{
    parse_experiment, run_experiment, run_preset, verify_oracle, ExperimentOutput,
    PresetName, PresetOptions, PresetOutput,
};
use peaklab::{generate_instance, serialize_instance, Error, HeightScheme};

#[derive(Parser)]
#[command(name = "peaklab", version, about = "Multimodal peak-landscape experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    Equal,
    Linear,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a problem instance file.
    Gen {
        #[arg(long)]
        peaks: usize,
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum, default_value = "linear")]
        scheme: Scheme,
        #[arg(long, default_value_t = 0.5)]
        hmin: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the experiment described by a config file.
    Run {
        config: PathBuf,
        /// Overrides experiment.output_dir.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named reproduction: fig1, fig2, fig3, fig4 or table1.
    Preset {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = PresetOptions::default().instance_seed)]
        instance_seed: u64,
        /// Run seed (base seed for repeated presets).
        #[arg(long, default_value_t = PresetOptions::default().base_seed)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        hmin: f64,
        /// Repetitions for fig4/table1 (default 100).
        #[arg(long)]
        runs: Option<usize>,
        /// Let fig4 runs continue after wrong-basin convergence.
        #[arg(long)]
        no_early_stop: bool,
    },
    /// Check evaluation against an exhaustive scan on small instances.
    Verify {
        #[arg(long, default_value_t = 50)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn execute(cmd: Command) -> Result<(), String> {
    match cmd {
        Command::Gen {
            peaks,
            length,
            scheme,
            hmin,
            seed,
            out,
        } => {
            let scheme = match scheme {
                Scheme::Equal => HeightScheme::Equal,
                Scheme::Linear => HeightScheme::Linear { h_min: hmin },
            };
            let inst = generate_instance(peaks, length, scheme, seed).map_err(|e| e.to_string())?;
            let text = serialize_instance(&inst);
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Run { config, out } => {
            let text = fs::read_to_string(&config).map_err(|e| format!("{}: {e}", config.display()))?;
            let base = config.parent().unwrap_or(Path::new("."));
            let mut spec = parse_experiment(&text, base).map_err(|e| match e {
                Error::Parse { line: 0, message } => format!("{}: {message}", config.display()),
                Error::Parse { line, message } => format!("{}:{line}: {message}", config.display()),
                other => format!("{}: {other}", config.display()),
            })?;
            if let Some(dir) = out {
                spec.output_dir = dir;
            }
            let output = run_experiment(&spec).map_err(|e| e.to_string())?;
            let report = match &output {
                ExperimentOutput::Ga { report, .. } | ExperimentOutput::Climber { report } => report,
            };
            println!(
                "{} runs, {} successes (SR {:.2}), AES {}; wrote {}",
                report.runs,
                report.successes,
                report.success_rate,
                report.aes.map_or("-".into(), |a| format!("{a:.1}")),
                spec.output_dir.display()
            );
            Ok(())
        }
        Command::Preset {
            name,
            out,
            instance_seed,
            seed,
            hmin,
            runs,
            no_early_stop,
        } => {
            let preset: PresetName = name.parse().map_err(|e: Error| e.to_string())?;
            let opts = PresetOptions {
                instance_seed,
                base_seed: seed,
                h_min: hmin,
                runs,
                early_stop: !no_early_stop,
                output_dir: out.unwrap_or_else(|| PathBuf::from("out").join(preset.as_str())),
            };
            match run_preset(preset, &opts).map_err(|e| e.to_string())? {
                PresetOutput::Trace(run) => {
                    let last = run.trace.last().expect("trace has generation 0");
                    println!(
                        "{preset}: {} after {} generations, best fitness {}",
                        run.outcome.as_str(),
                        run.generations(),
                        last.best_fitness
                    );
                }
                PresetOutput::Sweep(sweep) => {
                    for (n, r) in &sweep {
                        println!(
                            "N={n:>6}  SR {:>5.2}  AES {}",
                            r.success_rate,
                            r.aes.map_or("-".into(), |a| format!("{a:.0}"))
                        );
                    }
                }
                PresetOutput::Climb(r) => println!(
                    "table1: SR {:.2}, mean evaluations {}, mean restarts {}",
                    r.success_rate,
                    r.aes.map_or("-".into(), |a| format!("{a:.1}")),
                    r.mean_restarts.map_or("-".into(), |a| format!("{a:.2}"))
                ),
            }
            println!("wrote {}", opts.output_dir.display());
            Ok(())
        }
        Command::Verify { instances, seed } => {
            let report = verify_oracle(instances, seed).map_err(|e| e.to_string())?;
            println!(
                "checked {} strings over {} instances: {} mismatches",
                report.strings_checked, report.instances, report.mismatches
            );
            if report.passed() {
                Ok(())
            } else {
                Err("evaluation disagrees with the exhaustive scan".into())
            }
        }
    }
}
