use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use vortexff::config::{parse_config, template, Format, Mode};
use vortexff::{output, run, selftest, Error};

/// Atomic form factors for twisted-photon scattering.
#[derive(Parser)]
#[command(name = "vortexff", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a TOML run configuration.
    ///
    /// Omitted [grid] keys default to a box of 1.2 support radii,
    /// 48 nodes per axis and 3 refinement levels.
    Run {
        config: PathBuf,
        /// Output file (default: [output] path, else standard output).
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Worker threads; results do not depend on this.
        #[arg(long, env = "VORTEXFF_THREADS")]
        threads: Option<usize>,
        #[arg(long)]
        grid_nodes: Option<usize>,
        #[arg(long)]
        grid_levels: Option<usize>,
    },
    /// Run the built-in oracle checks.
    Selftest,
    /// Print a commented configuration for a mode.
    PrintConfigTemplate {
        #[arg(value_parser = ["plane", "vortex", "tv_scan", "impact_profile", "xsec"])]
        mode: String,
    },
}

fn fail(e: Error) -> ExitCode {
    eprintln!("vortexff: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            output: out_path,
            format,
            threads,
            grid_nodes,
            grid_levels,
        } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => return fail(Error::Io(format!("{}: {e}", config.display()))),
            };
            let mut cfg = match parse_config(&text) {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            if let Some(n) = grid_nodes {
                cfg.grid.nodes_per_axis = n;
            }
            if let Some(l) = grid_levels {
                cfg.grid.refinement_levels = l;
            }
            if let Some(f) = format {
                cfg.output.format = match f {
                    FormatArg::Csv => Format::Csv,
                    FormatArg::Json => Format::Json,
                };
            }
            if let Some(p) = &out_path {
                cfg.output.path = Some(p.display().to_string());
            }
            let result = match threads {
                Some(t) => run::run_with_threads(&cfg, t),
                None => run::run(&cfg),
            };
            let result = match result {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            let path = cfg.output.path.as_ref().map(PathBuf::from);
            match output::write(&result, cfg.output.format, path.as_deref()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(e),
            }
        }
        Command::Selftest => {
            let checks = selftest::run_selftest();
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            if checks.iter().all(|c| c.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Command::PrintConfigTemplate { mode } => {
            print!("{}", template(Mode::from_name(&mode).expect("validated by clap")));
            ExitCode::SUCCESS
        }
    }
}
