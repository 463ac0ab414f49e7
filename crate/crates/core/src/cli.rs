//! Command-line front end.
//!
//! Every command prints a short human-readable report, or with `--json` a
//! single-line JSON object. Distance records carry the keys `command`,
//! `method`, `distance` (null when an FPT budget is exceeded), `witness`
//! (operations joined by `"; "`) and `verified`; some methods add extra
//! keys such as `k`, `partition_size` or `t1_binary`.
//!
//! Exit status: 0 on success, 1 when a computation fails or a script does
//! not verify, 2 on usage errors and unreadable files.

use std::fs;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::generate::gen_random;
use crate::linkcut::{linkcut_distance, linkcut_script};
use crate::ops::OperationSequence;
use crate::permutation::{optimal_permutation, permutation_distance};
use crate::rearrangement::{
    approx_binary, brute_force_distance_with_limit, check_sequence, exact_distance_with_limit,
    fpt_distance_with, partition_size, CandidateSet, FptOptions, FptOutcome,
    DEFAULT_EXACT_LIMIT, DEFAULT_ORACLE_LIMIT,
};
use crate::reduction::{build_reduction, ThreeDMInstance};
use crate::tree::LabelledTree;

#[derive(Debug, Parser)]
#[command(name = "rearrange", version, about = "Distances between fully labelled rooted trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a distance and a witness sequence.
    Dist {
        method: DistMethod,
        /// First tree: a file, or inline Newick ending in `;`.
        t1: String,
        /// Second tree: a file, or inline Newick ending in `;`.
        t2: String,
        /// Budget for `fpt`.
        #[arg(long)]
        k: Option<usize>,
        /// Labels the `fpt` search may relabel.
        #[arg(long, default_value = "all")]
        candidates: CandidateArg,
        /// Largest label set accepted by `exact` (default 40) and `oracle` (default 8).
        #[arg(long)]
        limit: Option<usize>,
        /// Worker threads for `fpt`.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print a minimum link-and-cut script.
    Script {
        t1: String,
        t2: String,
        #[arg(long)]
        json: bool,
    },
    /// Replay a script from the first tree and compare with the second.
    Verify {
        t1: String,
        script: String,
        t2: String,
        #[arg(long)]
        json: bool,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// A random recursive tree and a randomly perturbed copy.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        ops: usize,
        #[arg(long)]
        json: bool,
    },
    /// The tree pair built from a 3-dimensional matching instance file.
    #[command(name = "reduction3dm")]
    Reduction3dm {
        instance: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistMethod {
    /// Link-and-cut distance.
    Linkcut,
    /// Permutation distance (isomorphic trees only).
    Perm,
    /// Rearrangement distance by branch and bound.
    Exact,
    /// Rearrangement distance by trying every permutation.
    Oracle,
    /// Rearrangement distance if at most `--k`.
    Fpt,
    /// Link-and-cut distance as a rearrangement upper bound.
    Approx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CandidateArg {
    Vg,
    X,
    All,
}

impl From<CandidateArg> for CandidateSet {
    fn from(c: CandidateArg) -> Self {
        match c {
            CandidateArg::Vg => CandidateSet::MovementGraph,
            CandidateArg::X => CandidateSet::WithActive,
            CandidateArg::All => CandidateSet::All,
        }
    }
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn read_input(arg: &str) -> Result<String, Failure> {
    match fs::read_to_string(arg) {
        Ok(text) => Ok(text),
        Err(e) => Err(Failure::Usage(format!("cannot read {arg}: {e}"))),
    }
}

fn load_tree(arg: &str) -> Result<LabelledTree, Failure> {
    let text = if !Path::new(arg).exists() && arg.trim_end().ends_with(';') {
        arg.to_string()
    } else {
        read_input(arg)?
    };
    LabelledTree::parse(&text).map_err(|e| Failure::Compute(format!("{arg}: {e}")))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<i32, Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Compute(format!("write failed: {e}")))?;
    Ok(0)
}

fn record(out: &mut dyn Write, map: Map<String, Value>) -> Result<i32, Failure> {
    emit(out, &format!("{}\n", Value::Object(map)))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Dist {
            method,
            t1,
            t2,
            k,
            candidates,
            limit,
            threads,
            json,
        } => {
            let (t1, t2) = (load_tree(&t1)?, load_tree(&t2)?);
            dist(out, method, &t1, &t2, k, candidates.into(), limit, threads, json)
        }
        Command::Script { t1, t2, json } => {
            let (t1, t2) = (load_tree(&t1)?, load_tree(&t2)?);
            let script = linkcut_script(&t1, &t2)?;
            if json {
                let mut map = Map::new();
                map.insert("command".into(), json!("script"));
                map.insert("distance".into(), json!(script.len()));
                map.insert("witness".into(), json!(script.to_string()));
                record(out, map)
            } else {
                emit(out, &script.to_script())
            }
        }
        Command::Verify { t1, script, t2, json } => {
            let (t1, t2) = (load_tree(&t1)?, load_tree(&t2)?);
            let seq = OperationSequence::parse_script(&read_input(&script)?)
                .map_err(|e| Failure::Compute(format!("{script}: {e}")))?;
            let verdict = check_sequence(&t1, &seq, &t2);
            let code = if verdict.verified { 0 } else { 1 };
            if json {
                let mut map = Map::new();
                map.insert("command".into(), json!("verify"));
                map.insert("verified".into(), json!(verdict.verified));
                map.insert("diagnostic".into(), json!(verdict.diagnostic));
                map.insert("operations".into(), json!(seq.len()));
                record(out, map)?;
            } else {
                emit(out, &format!("{verdict}\n"))?;
            }
            Ok(code)
        }
        Command::Gen { what } => match what {
            GenCommand::Random { seed, n, ops, json } => {
                let (t1, t2, seq) = gen_random(seed, n, ops).map_err(|e| match e {
                    Error::Parameter(msg) => Failure::Usage(msg),
                    other => other.into(),
                })?;
                if json {
                    let mut map = Map::new();
                    map.insert("command".into(), json!("gen random"));
                    map.insert("seed".into(), json!(seed));
                    map.insert("t1".into(), json!(t1.to_newick()));
                    map.insert("t2".into(), json!(t2.to_newick()));
                    map.insert("witness".into(), json!(seq.to_string()));
                    record(out, map)
                } else {
                    emit(
                        out,
                        &format!("{}\n{}\n{}", t1.to_newick(), t2.to_newick(), seq.to_script()),
                    )
                }
            }
            GenCommand::Reduction3dm { instance, json } => {
                let h = ThreeDMInstance::parse(&read_input(&instance)?)?;
                let (t1, t2) = build_reduction(&h)?;
                if json {
                    let mut map = Map::new();
                    map.insert("command".into(), json!("gen reduction3dm"));
                    map.insert("triples".into(), json!(h.triples.len()));
                    map.insert("vertices".into(), json!(t1.len() + 1));
                    map.insert("t1".into(), json!(t1.to_newick()));
                    map.insert("t2".into(), json!(t2.to_newick()));
                    record(out, map)
                } else {
                    emit(out, &format!("{}\n{}\n", t1.to_newick(), t2.to_newick()))
                }
            }
        },
    }
}

#[allow(clippy::too_many_arguments)]
fn dist(
    out: &mut dyn Write,
    method: DistMethod,
    t1: &LabelledTree,
    t2: &LabelledTree,
    k: Option<usize>,
    candidates: CandidateSet,
    limit: Option<usize>,
    threads: usize,
    json: bool,
) -> Result<i32, Failure> {
    let mut extra = Map::new();
    let result: Option<(usize, OperationSequence)> = match method {
        DistMethod::Linkcut => Some((linkcut_distance(t1, t2)?, linkcut_script(t1, t2)?)),
        DistMethod::Perm => {
            let distance = permutation_distance(t1, t2)?;
            let pi = optimal_permutation(t1, t2)?;
            let mut witness = OperationSequence::default();
            if !pi.is_empty() {
                witness.push(pi);
            }
            Some((distance, witness))
        }
        DistMethod::Exact => {
            let r = exact_distance_with_limit(t1, t2, limit.unwrap_or(DEFAULT_EXACT_LIMIT))?;
            Some((r.distance, r.witness))
        }
        DistMethod::Oracle => {
            let r = brute_force_distance_with_limit(t1, t2, limit.unwrap_or(DEFAULT_ORACLE_LIMIT))?;
            Some((r.distance, r.witness))
        }
        DistMethod::Fpt => {
            let k = k.ok_or_else(|| Failure::Usage("`dist fpt` needs --k".into()))?;
            if threads == 0 {
                return Err(Failure::Usage("--threads must be at least 1".into()));
            }
            extra.insert("k".into(), json!(k));
            extra.insert("partition_size".into(), json!(partition_size(t1, t2)?));
            match fpt_distance_with(t1, t2, k, &FptOptions { candidates, threads })? {
                FptOutcome::Found(r) => Some((r.distance, r.witness)),
                FptOutcome::ExceedsBudget { .. } => None,
            }
        }
        DistMethod::Approx => {
            let res = approx_binary(t1, t2)?;
            extra.insert("t1_binary".into(), json!(res.t1_binary));
            Some((res.result.distance, res.result.witness))
        }
    };

    let name = format!("{method:?}").to_lowercase();
    let verified = result
        .as_ref()
        .map(|(_, w)| check_sequence(t1, w, t2).verified);
    if json {
        let mut map = Map::new();
        map.insert("command".into(), json!("dist"));
        map.insert("method".into(), json!(name));
        map.insert("distance".into(), json!(result.as_ref().map(|(d, _)| d)));
        map.insert(
            "witness".into(),
            json!(result.as_ref().map(|(_, w)| w.to_string())),
        );
        map.insert("verified".into(), json!(verified));
        map.extend(extra);
        return record(out, map);
    }
    match result {
        Some((distance, witness)) => {
            let check = if verified == Some(true) { "verified" } else { "NOT verified" };
            emit(
                out,
                &format!(
                    "{name} distance: {} ({} operation(s), witness {check})\n{}",
                    distance,
                    witness.len(),
                    witness.to_script()
                ),
            )
        }
        None => emit(
            out,
            &format!(
                "{name} distance: more than {} (family partition has {} classes)\n",
                extra["k"], extra["partition_size"]
            ),
        ),
    }
}
