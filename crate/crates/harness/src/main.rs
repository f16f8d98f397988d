use std::path::PathBuf;
use std::process::ExitCode;

use affine_dirac::group::io::ModelDocument;
use affine_dirac_harness::{catalog, run_suite, Config, RunOptions};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "affine-dirac", version, about = "Verify affine Dirac structures and their groupoids on example models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite on a catalog entry.
    Verify {
        #[arg(long)]
        entry: String,
        /// algebra, double, groupoid, presymp, quotient or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Shift one structure constant of the double by 1e-3 before checking.
        #[arg(long)]
        fault_inject: bool,
        /// JSON file with tolerance overrides.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Print the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// List catalog entries and their lagrangian subalgebras.
    ListEntries,
    /// Print the model JSON of an entry.
    DumpModel {
        #[arg(long)]
        entry: String,
        /// Which lagrangian to include; defaults to the first one.
        #[arg(long)]
        variant: Option<String>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Verify { entry, suite, seed, samples, report, fault_inject, config, json } => {
            let config = match config {
                Some(p) => Config::load(&p)?,
                None => Config::default(),
            };
            let opts = RunOptions { seed, samples, fault_inject, config };
            let rep = run_suite(&entry, &suite, &opts).map_err(|e| e.to_string())?;
            if json {
                println!("{}", rep.to_json());
            } else {
                print!("{}", rep.render());
                for note in &rep.notes {
                    println!("note: {note}");
                }
            }
            if let Some(path) = report {
                std::fs::write(&path, rep.to_json()).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(rep.pass)
        }
        Command::ListEntries => {
            for e in catalog::catalog() {
                let labels: Vec<String> =
                    e.variants.iter().map(|v| format!("{} (dim l∩g = {})", v.label, v.expected_meet)).collect();
                println!("{:<18} {}", e.name, e.description);
                println!("{:<18} l: {}", "", labels.join(", "));
            }
            Ok(true)
        }
        Command::DumpModel { entry, variant } => {
            let e = catalog::find(&entry).map_err(|e| e.to_string())?;
            let v = match variant {
                Some(label) => e
                    .variants
                    .iter()
                    .find(|v| v.label == label)
                    .copied()
                    .ok_or_else(|| format!("entry {entry} has no variant `{label}`"))?,
                None => e.variants[0],
            };
            let model = (v.build)().map_err(|e| e.to_string())?;
            let doc = ModelDocument::from_model(&model).map_err(|e| e.to_string())?;
            println!("{}", doc.to_json());
            Ok(true)
        }
    }
}
