use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use softtop::commands::{
    cmd_check, cmd_fuzz, cmd_generate, cmd_validate, parse_budget, CmdOutput, EXIT_INPUT_ERROR,
};
use softtop::instance::InstanceFile;

/// Finite soft topological spaces: validate instance files, generate
/// topologies from subbases, run checks and fuzz the embedding lemma.
///
/// Machine-readable JSON goes to stdout, the human report to stderr.
#[derive(Parser)]
#[command(name = "softtop", version, about)]
struct Args {
    /// Instance file (JSON document)
    #[arg(long)]
    input: Option<PathBuf>,

    /// Run the named check from the instance file
    #[arg(long, conflicts_with_all = ["generate", "fuzz"])]
    check: Option<String>,

    /// Print the topology generated from the named `generate` declaration
    #[arg(long, conflicts_with = "fuzz")]
    generate: Option<String>,

    /// Run randomized embedding-lemma verification (no input file needed)
    #[arg(long)]
    fuzz: bool,

    /// Base seed; all randomness flows from it
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Number of fuzz instances
    #[arg(long, default_value_t = 200)]
    count: usize,

    /// Budget overrides: comma-separated key=value pairs with keys
    /// bits, opens, factors, universe, params, subbase
    #[arg(long)]
    budget: Option<String>,

    /// Suppress the human report; emit JSON on stdout only
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let budget = match args.budget.as_deref().map(parse_budget).transpose() {
        Ok(b) => b.unwrap_or_default(),
        Err(e) => {
            let out = CmdOutput {
                exit_code: EXIT_INPUT_ERROR,
                machine: serde_json::json!({ "ok": false, "error": e }),
                human: format!("input error: {e}\n"),
            };
            return emit(out, args.json);
        }
    };

    let output = if args.fuzz {
        cmd_fuzz(args.seed, args.count, &budget)
    } else {
        let Some(path) = &args.input else {
            return emit(
                CmdOutput {
                    exit_code: EXIT_INPUT_ERROR,
                    machine: serde_json::json!({
                        "ok": false,
                        "error": "--input FILE is required unless --fuzz is given",
                    }),
                    human: "input error: --input FILE is required unless --fuzz is given\n".into(),
                },
                args.json,
            );
        };
        let file = match load_instance(path) {
            Ok(f) => f,
            Err(e) => {
                return emit(
                    CmdOutput {
                        exit_code: EXIT_INPUT_ERROR,
                        machine: serde_json::json!({ "ok": false, "error": e }),
                        human: format!("input error: {e}\n"),
                    },
                    args.json,
                )
            }
        };
        if let Some(name) = &args.check {
            cmd_check(&file, name, &budget)
        } else if let Some(name) = &args.generate {
            cmd_generate(&file, name, &budget)
        } else {
            cmd_validate(&file, &budget)
        }
    };
    emit(output, args.json)
}

fn load_instance(path: &PathBuf) -> Result<InstanceFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

fn emit(output: CmdOutput, json_only: bool) -> ExitCode {
    println!(
        "{}",
        serde_json::to_string_pretty(&output.machine).expect("reports serialize")
    );
    if !json_only && !output.human.is_empty() {
        eprint!("{}", output.human);
    }
    ExitCode::from(output.exit_code as u8)
}
