//! Command-line front end: construct, analyze, classify, equiv, verify,
//! oracle and counterexample, over the JSON interchange format.
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on a schema error.
//! Errors are emitted to stderr as {"error": code, "stage": name, "detail": text}.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use linked_modules::analysis::{is_linked, weight_support, Confidence, SearchParams};
use linked_modules::classify::{classify_linked, decide_equivalence};
use linked_modules::construction::{
    build_counterexample_charp, build_representation, charp_violation, verify_homomorphism,
};
use linked_modules::error::Error;
use linked_modules::json as payload;
use linked_modules::oracle::{
    composition_series_count, enumerate_submodules, is_uniserial_bruteforce,
};

#[derive(Parser)]
#[command(
    name = "linked-modules",
    about = "Exact construction, analysis and classification of linked modules \
             of split solvable Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized search, for reproducible runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Trial budget for randomized searches.
    #[arg(long, global = true, default_value_t = 20)]
    trials: u32,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a representation from an invariants document.
    Construct { input: PathBuf },
    /// Admissibility, nilpotency series, factor invariants, linkedness.
    Analyze { input: PathBuf },
    /// Extract the canonical invariant tuple of a linked representation.
    Classify { input: PathBuf },
    /// Decide equivalence of two representations of the same algebra.
    Equiv { first: PathBuf, second: PathBuf },
    /// Check the defining relations of a representation.
    Verify { input: PathBuf },
    /// Enumerate the full submodule lattice over a small finite field.
    Oracle { input: PathBuf },
    /// Emit the characteristic-p fixture on which classification fails.
    Counterexample {
        #[arg(long)]
        p: u64,
    },
}

enum CliError {
    Schema(payload::SchemaError, &'static str),
    Domain(Error, &'static str),
    Io(std::io::Error, String),
}

impl CliError {
    fn emit(&self) -> ExitCode {
        let (code, stage, detail) = match self {
            CliError::Schema(e, stage) => ("schema".to_string(), *stage, e.to_string()),
            CliError::Domain(e, stage) => (e.code().to_string(), *stage, e.to_string()),
            CliError::Io(e, path) => ("io".to_string(), "io", format!("{path}: {e}")),
        };
        eprintln!(
            "{}",
            json!({"error": code, "stage": stage, "detail": detail})
        );
        match self {
            CliError::Schema(..) => ExitCode::from(2),
            _ => ExitCode::from(1),
        }
    }
}

fn read_doc(path: &Path, stage: &'static str) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(e, path.display().to_string()))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Schema(
            payload::SchemaError {
                path: "$".into(),
                detail: format!("invalid JSON: {e}"),
            },
            stage,
        )
    })
}

fn write_result(output: &Option<PathBuf>, value: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    match output {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Io(e, path.display().to_string())),
        None => {
            use std::io::Write;
            // tolerate a closed pipe on the consumer side
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let params = SearchParams {
        trials: cli.trials,
        seed: cli.seed,
    };
    match run(&cli, &params) {
        Ok(value) => match write_result(&cli.output, &value) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => e.emit(),
        },
        Err(e) => e.emit(),
    }
}

fn run(cli: &Cli, params: &SearchParams) -> Result<Value, CliError> {
    match &cli.command {
        Command::Construct { input } => {
            const STAGE: &str = "construct";
            let doc = read_doc(input, STAGE)?;
            let (inv, alg) =
                payload::parse_invariants_doc(&doc).map_err(|e| CliError::Schema(e, STAGE))?;
            if let Some(v) = charp_violation(inv.field, &inv.p1, inv.m) {
                eprintln!("warning: classification hypothesis fails: {v}");
            }
            let rep =
                build_representation(&inv, &alg).map_err(|e| CliError::Domain(e, STAGE))?;
            Ok(payload::representation_to_json(&rep))
        }
        Command::Analyze { input } => {
            const STAGE: &str = "analyze";
            let doc = read_doc(input, STAGE)?;
            let rep = payload::parse_representation_doc(&doc)
                .map_err(|e| CliError::Schema(e, STAGE))?;
            let verdict = is_linked(&rep, params).map_err(|e| CliError::Domain(e, STAGE))?;
            let factors: Vec<Value> = verdict
                .factors
                .iter()
                .map(|f| match f {
                    Some((p, s)) => json!({"p": payload::poly_to_json(p), "s": s}),
                    None => Value::Null,
                })
                .collect();
            let support = match &verdict.y {
                Some(y) => {
                    let sup = weight_support(&rep, y);
                    Value::Array(sup.iter().map(payload::scalar_to_json).collect())
                }
                None => Value::Null,
            };
            Ok(json!({
                "schema": payload::SCHEMA,
                "admissible": verdict.admissible,
                "length": verdict.length,
                "filtration_dims": verdict.filtration_dims,
                "factors": factors,
                "linked": verdict.linked,
                "y": verdict.y.as_ref().map(payload::ycoords_to_json),
                "support": support,
                "probabilistic": matches!(verdict.confidence, Confidence::ProbabilisticNegative),
            }))
        }
        Command::Classify { input } => {
            const STAGE: &str = "classify";
            let doc = read_doc(input, STAGE)?;
            let rep = payload::parse_representation_doc(&doc)
                .map_err(|e| CliError::Schema(e, STAGE))?;
            let result = classify_linked(&rep, params).map_err(|e| CliError::Domain(e, STAGE))?;
            let mut out = payload::invariants_to_json(&result.invariants, &result.algebra);
            let map = out.as_object_mut().expect("object");
            map.insert(
                "basis_change".into(),
                payload::mat_to_json(&result.basis_change),
            );
            map.insert("gamma".into(), payload::scalar_to_json(&result.gamma));
            map.insert("y".into(), payload::ycoords_to_json(&result.y));
            map.insert(
                "diagnostics".into(),
                Value::Array(result.diagnostics.iter().map(|d| json!(d)).collect()),
            );
            Ok(out)
        }
        Command::Equiv { first, second } => {
            const STAGE: &str = "equiv";
            let doc1 = read_doc(first, STAGE)?;
            let doc2 = read_doc(second, STAGE)?;
            let rep1 = payload::parse_representation_doc(&doc1)
                .map_err(|e| CliError::Schema(e, STAGE))?;
            let rep2 = payload::parse_representation_doc(&doc2)
                .map_err(|e| CliError::Schema(e, STAGE))?;
            let (equivalent, witness) = decide_equivalence(&rep1, &rep2, params)
                .map_err(|e| CliError::Domain(e, STAGE))?;
            Ok(json!({
                "schema": payload::SCHEMA,
                "equivalent": equivalent,
                "witness": witness.as_ref().map(payload::mat_to_json),
            }))
        }
        Command::Verify { input } => {
            const STAGE: &str = "verify";
            let doc = read_doc(input, STAGE)?;
            let rep = payload::parse_representation_doc(&doc)
                .map_err(|e| CliError::Schema(e, STAGE))?;
            let violations = verify_homomorphism(&rep);
            Ok(json!({
                "schema": payload::SCHEMA,
                "valid": violations.is_empty(),
                "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            }))
        }
        Command::Oracle { input } => {
            const STAGE: &str = "oracle";
            let doc = read_doc(input, STAGE)?;
            let rep = payload::parse_representation_doc(&doc)
                .map_err(|e| CliError::Schema(e, STAGE))?;
            let lattice = enumerate_submodules(&rep).map_err(|e| CliError::Domain(e, STAGE))?;
            Ok(json!({
                "schema": payload::SCHEMA,
                "submodule_dims": lattice.dims(),
                "is_chain": is_uniserial_bruteforce(&lattice),
                "composition_series": composition_series_count(&lattice),
            }))
        }
        Command::Counterexample { p } => {
            const STAGE: &str = "counterexample";
            let rep = build_counterexample_charp(*p).map_err(|e| CliError::Domain(e, STAGE))?;
            Ok(payload::representation_to_json(&rep))
        }
    }
}
