use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use central_type::catalog;
use central_type::certificate::{self, Certificate, CertifyOptions, PipelineError};
use central_type::instance::{Instance, InstanceFile};
use central_type::selftest;

/// Certify groups of central type from bijective 1-cocycles.
///
/// Exit codes: 0 success, 2 usage, 10 bad input, 11 extension, 12 missing
/// table, 13 π not a cocycle, 14 not bijective, 15 cup class nontrivial,
/// 16 construction, 17 degenerate, 18 round trip, 19 twist, 20 reverify
/// mismatch, 21 extraction.
#[derive(Parser)]
#[command(name = "central-type", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on an instance file.
    Certify {
        file: PathBuf,
        /// Also build and verify the twist J_φ.
        #[arg(long)]
        twist: bool,
        /// Count abelian normal subgroups of order |Q| that have a complement.
        #[arg(long)]
        probe_complements: bool,
        /// How many times the ζ modulus may be multiplied by |Q|.
        #[arg(long, value_name = "K", default_value_t = 1)]
        modulus_escalation: usize,
        /// Fail with 14 unless π is bijective.
        #[arg(long)]
        require_bijective: bool,
        /// Print the certificate instead of the report.
        #[arg(long)]
        json: bool,
        /// Also write the certificate here.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Record stage timings in the certificate.
        #[arg(long)]
        timings: bool,
    },
    /// Normalize a supplied 2-cocycle `c` and extract π_c.
    Extract {
        file: PathBuf,
        #[arg(long, value_name = "K", default_value_t = 1)]
        modulus_escalation: usize,
    },
    /// List bijective classes and whether each yields c_π.
    Search {
        file: PathBuf,
        #[arg(long, value_name = "K", default_value_t = 1)]
        modulus_escalation: usize,
    },
    /// Run the built-in property battery.
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Print a built-in instance file: klein4, paper64, split-eg3-sample.
    Catalog { name: String },
    /// Re-check a certificate's witnesses and verdicts.
    Reverify { file: PathBuf },
}

fn load(path: &Path) -> Result<Instance, PipelineError> {
    Ok(InstanceFile::load(path)?.validate()?)
}

fn write_json(path: &Path, text: &str) -> Result<(), PipelineError> {
    std::fs::write(path, text).map_err(|e| PipelineError::Format(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), PipelineError> {
    match cli.command {
        Command::Certify {
            file,
            twist,
            probe_complements,
            modulus_escalation,
            require_bijective,
            json,
            out,
            timings,
        } => {
            let inst = load(&file)?;
            let opts = CertifyOptions {
                twist,
                probe_complements,
                escalations: modulus_escalation,
                require_bijective,
                timings,
            };
            let cert = certificate::certify(&inst, &opts)?;
            let text = cert.to_json();
            if let Some(path) = out {
                write_json(&path, &text)?;
            }
            if json {
                println!("{text}");
            } else {
                print!("{}", certificate::render_report(&cert));
            }
            match certificate::verdict_error(&cert) {
                Some(e) => Err(e),
                None => Ok(()),
            }
        }
        Command::Extract { file, modulus_escalation } => {
            let inst = load(&file)?;
            let (_, report) = certificate::extract(&inst, modulus_escalation)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(())
        }
        Command::Search { file, modulus_escalation } => {
            let inst = load(&file)?;
            let found = certificate::search(&inst, modulus_escalation)?;
            println!("{}", serde_json::to_string_pretty(&found).expect("report serializes"));
            Ok(())
        }
        Command::Selftest { seed } => {
            let checks = selftest::run(seed);
            let mut failed = 0;
            for c in &checks {
                println!("{} {:<28}{}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                failed += usize::from(!c.passed);
            }
            if failed > 0 {
                return Err(PipelineError::Mismatch(checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect()));
            }
            Ok(())
        }
        Command::Catalog { name } => {
            let inst = catalog::by_name(&name)
                .ok_or_else(|| PipelineError::Format(format!("unknown catalog entry {name}; known: {}", catalog::NAMES.join(", "))))?;
            println!("{}", inst.to_json());
            Ok(())
        }
        Command::Reverify { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| PipelineError::Format(format!("{}: {e}", file.display())))?;
            let cert = Certificate::from_json(&text)?;
            let bad = certificate::reverify(&cert)?;
            if !bad.is_empty() {
                return Err(PipelineError::Mismatch(bad));
            }
            println!("certificate re-verified: 0 mismatches");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
