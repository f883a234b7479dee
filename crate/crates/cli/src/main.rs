//! `euler-tactics`: check theorems, prove them with tactics, replay and score proof scripts.
//!
//! Exit status: 0 on success, 1 when a theorem is invalid or a proof fails,
//! 2 on usage or parse errors.

use std::fs;
use std::net::{Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use euler_tactics::engine::Proof;
use euler_tactics::metrics::{proof_metrics_with, MetricsConfig};
use euler_tactics::semantics::unforced_cells;
use euler_tactics::tactics::{self, apply_tactic};
use euler_tactics::textio::{self, ReplayMode, TextError};

#[derive(Parser)]
#[command(name = "euler-tactics", version, about)]
struct Cli {
    /// Print a single JSON document on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether theorems are valid; report a witness cell when not.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Check files on this many threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Prove a theorem with a tactic and print the proof script.
    Prove {
        file: PathBuf,
        #[arg(long, default_value = "venn_depth")]
        tactic: String,
        /// Write the script here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Replay a proof script step by step.
    Replay {
        script: PathBuf,
        /// Re-run recorded tactics and require them to reproduce their steps,
        /// and fail on unfinished proofs.
        #[arg(long)]
        strict_replay: bool,
    },
    /// Readability metrics of a proof script.
    Metrics {
        script: PathBuf,
        /// Leave consequents out of the clutter count.
        #[arg(long)]
        antecedent_only: bool,
        /// Do not count discharge steps in the proof length.
        #[arg(long)]
        no_discharges: bool,
    },
    /// Run the HTTP service until interrupted.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Bind on all interfaces instead of localhost.
        #[arg(long)]
        public: bool,
        /// Save every session's script here on shutdown.
        #[arg(long)]
        snapshot_dir: Option<PathBuf>,
    },
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn refuted(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn text_failure(path: &Path, e: TextError) -> Failure {
    let message = format!("{}:{e}", path.display());
    match e {
        TextError::Replay { .. } => Failure::refuted(message),
        _ => Failure::usage(message),
    }
}

fn emit(json_mode: bool, human: &str, doc: Value) {
    if json_mode {
        println!("{doc}");
    } else if !human.is_empty() {
        println!("{human}");
    }
}

fn check_one(path: &Path) -> Value {
    let outcome = read(path).and_then(|text| {
        textio::parse_named_theorem(&text).map_err(|e| text_failure(path, e))
    });
    let theorem = match outcome {
        Ok((_, t)) => t,
        Err(f) => return json!({"file": path.display().to_string(), "error": f.message}),
    };
    let cells = unforced_cells(theorem.antecedent(), theorem.consequent())
        .expect("parsed theorems are conjunctive");
    let witness = cells.iter().next().map(|c| c.to_string());
    json!({
        "file": path.display().to_string(),
        "valid": cells.is_empty(),
        "witness": witness,
    })
}

fn check(files: &[PathBuf], jobs: usize, json_mode: bool) -> Result<(), Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::usage(e.to_string()))?;
    let results: Vec<Value> = pool.install(|| files.par_iter().map(|f| check_one(f)).collect());
    let mut human = Vec::new();
    let (mut parse_error, mut invalid) = (false, false);
    for r in &results {
        let file = r["file"].as_str().unwrap_or_default();
        if let Some(e) = r["error"].as_str() {
            eprintln!("error: {e}");
            parse_error = true;
        } else if r["valid"] == json!(true) {
            human.push(format!("{file}: VALID"));
        } else {
            invalid = true;
            human.push(format!(
                "{file}: INVALID (witness cell {})",
                r["witness"].as_str().unwrap_or("?")
            ));
        }
    }
    emit(json_mode, &human.join("\n"), json!({"results": results}));
    if parse_error {
        Err(Failure {
            code: 2,
            message: String::new(),
        })
    } else if invalid {
        Err(Failure::refuted(""))
    } else {
        Ok(())
    }
}

fn prove(file: &Path, tactic: &str, output: Option<&Path>, json_mode: bool) -> Result<(), Failure> {
    if tactics::lookup(tactic).is_none() {
        let known: Vec<_> = tactics::registry().iter().map(|t| t.name).collect();
        return Err(Failure::usage(format!(
            "unknown tactic `{tactic}` (known: {})",
            known.join(", ")
        )));
    }
    let text = read(file)?;
    let (name, theorem) = textio::parse_named_theorem(&text).map_err(|e| text_failure(file, e))?;
    let name = name.unwrap_or_else(|| {
        file.file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("theorem")
            .to_string()
    });
    let proof = apply_tactic(&Proof::new(theorem), tactic, 0)
        .map_err(|e| Failure::refuted(format!("{}: {e}", file.display())))?;
    if !proof.is_finished() {
        return Err(Failure::refuted(format!(
            "{}: {tactic} stopped with {} open subgoal(s)",
            file.display(),
            proof.current().subgoals().len()
        )));
    }
    let script = textio::save_script(&proof, &name);
    log::info!("{tactic} proved {} in {} steps", file.display(), proof.len());
    if let Some(out) = output {
        fs::write(out, &script).map_err(|e| Failure::usage(format!("{}: {e}", out.display())))?;
    }
    let doc = json!({
        "finished": true,
        "script": script,
        "metrics": proof_metrics_with(&proof, MetricsConfig::default()),
    });
    let human = if output.is_some() { "" } else { script.trim_end() };
    emit(json_mode, human, doc);
    Ok(())
}

fn load(path: &Path, mode: ReplayMode) -> Result<Proof, Failure> {
    let text = read(path)?;
    textio::load_script(&text, mode).map_err(|e| text_failure(path, e))
}

fn replay(script: &Path, strict: bool, json_mode: bool) -> Result<(), Failure> {
    let mode = if strict {
        ReplayMode::Rerun
    } else {
        ReplayMode::Recorded
    };
    let proof = load(script, mode)?;
    let finished = proof.is_finished();
    let status = if finished { "FINISHED" } else { "UNFINISHED" };
    emit(
        json_mode,
        &format!("{}: {status} after {} steps", script.display(), proof.len()),
        json!({"file": script.display().to_string(), "finished": finished, "steps": proof.len()}),
    );
    if strict && !finished {
        return Err(Failure::refuted(""));
    }
    Ok(())
}

fn metrics(script: &Path, config: MetricsConfig) -> Result<(), Failure> {
    let proof = load(script, ReplayMode::Recorded)?;
    println!("{}", proof_metrics_with(&proof, config).to_json());
    Ok(())
}

fn serve(port: u16, public: bool, snapshot_dir: Option<PathBuf>) -> Result<(), Failure> {
    let host = if public {
        Ipv4Addr::UNSPECIFIED
    } else {
        Ipv4Addr::LOCALHOST
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::usage(e.to_string()))?;
    runtime
        .block_on(euler_tactics::service::serve(
            SocketAddr::from((host, port)),
            snapshot_dir,
        ))
        .map_err(|e| Failure::usage(format!("serve: {e}")))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("EULER_TACTICS_LOG")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { files, jobs } => check(&files, jobs, cli.json),
        Command::Prove {
            file,
            tactic,
            output,
        } => prove(&file, &tactic, output.as_deref(), cli.json),
        Command::Replay {
            script,
            strict_replay,
        } => replay(&script, strict_replay, cli.json),
        Command::Metrics {
            script,
            antecedent_only,
            no_discharges,
        } => metrics(
            &script,
            MetricsConfig {
                include_consequents: !antecedent_only,
                count_discharges: !no_discharges,
            },
        ),
        Command::Serve {
            port,
            public,
            snapshot_dir,
        } => serve(port, public, snapshot_dir),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
