//! Input schema, report builders and the command-line front end.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classify::{
    decide_unipotent_nilpotent, is_good, is_special_diagonal, match_rigid_family, match_special,
    weak_verdict_index_zero, weak_verdict_rigid, Problem as ProblemKind,
};
use crate::decider::{decide_generic, decide_weak_distinct, DecisionReport};
use crate::error::{DspError, Result};
use crate::genericity::{
    check_generalized_rank, find_relation, gcd_reduction, AdditiveScalar, ClassSpec, EigenScalar, Mode,
    MultiplicativeScalar, SpecTuple, DEFAULT_STATE_BUDGET,
};
use crate::jnf::{Jnf, JnfTuple, Partition};
use crate::realize::{linalg::CMatrix, realize, realize_from, Budget, SearchOutcome};

pub const SCHEMA_VERSION: &str = "1";

/// Exit status for a successful report (including `found: false`).
pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_INPUT: i32 = 2;
/// Not-applicable verdicts and exhausted budgets.
pub const EXIT_NOT_APPLICABLE: i32 = 3;

pub fn exit_code(err: &DspError) -> i32 {
    match err {
        DspError::NotApplicable(_)
        | DspError::ResourceExceeded(_)
        | DspError::SamplingExhausted(_)
        | DspError::KappaNotTwo(_)
        | DspError::IllConditioned => EXIT_NOT_APPLICABLE,
        _ => EXIT_INVALID_INPUT,
    }
}

pub fn error_kind(err: &DspError) -> &'static str {
    match err {
        DspError::InvalidPartition(_) => "invalid_partition",
        DspError::InvalidJnf(_) => "invalid_jnf",
        DspError::InvalidTuple(_) => "invalid_tuple",
        DspError::ReductionUndefined(_) => "reduction_undefined",
        DspError::InvalidChoice(_) => "invalid_choice",
        DspError::InvalidInput(_) => "invalid_input",
        DspError::NotApplicable(_) => "not_applicable",
        DspError::ResourceExceeded(_) => "resource_exceeded",
        DspError::SamplingExhausted(_) => "sampling_exhausted",
        DspError::UnsupportedScalar(_) => "unsupported_scalar",
        DspError::SlotCollision(_) => "slot_collision",
        DspError::KappaNotTwo(_) => "kappa_not_two",
        DspError::IllConditioned => "ill_conditioned",
        DspError::ScalarParse(_) => "scalar_parse",
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Exact {
    Text(String),
    Number(serde_json::Number),
}

impl Exact {
    fn text(&self) -> String {
        match self {
            Exact::Text(s) => s.clone(),
            Exact::Number(n) => n.to_string(),
        }
    }
}

/// An eigenvalue as written in an input file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarInput {
    Polar {
        #[serde(rename = "mod")]
        modulus: Exact,
        arg: Exact,
    },
    Plain(Exact),
}

impl ScalarInput {
    fn additive(&self) -> Result<AdditiveScalar> {
        match self {
            ScalarInput::Plain(e) => e.text().parse(),
            ScalarInput::Polar { .. } => {
                Err(DspError::InvalidInput("polar eigenvalues need multiplicative mode".into()))
            }
        }
    }

    fn multiplicative(&self) -> Result<MultiplicativeScalar> {
        match self {
            ScalarInput::Plain(e) => e.text().parse(),
            ScalarInput::Polar { modulus, arg } => {
                format!("{{mod: {}, arg: {}}}", modulus.text(), arg.text()).parse()
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassInput {
    blocks: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eigenvalues: Option<Vec<ScalarInput>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemInput {
    #[serde(default)]
    mode: Mode,
    classes: Vec<ClassInput>,
}

/// A validated problem: the JNF tuple and, when every class carries
/// eigenvalues, the exact eigenvalue data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub mode: Mode,
    pub tuple: JnfTuple,
    pub specs: Option<SpecTuple>,
}

fn build_specs<S: EigenScalar>(
    jnfs: &[Jnf],
    evs: &[Vec<ScalarInput>],
    parse: impl Fn(&ScalarInput) -> Result<S>,
) -> Result<Vec<ClassSpec<S>>> {
    jnfs.iter()
        .zip(evs)
        .map(|(jnf, values)| ClassSpec::new(jnf.clone(), values.iter().map(&parse).collect::<Result<Vec<_>>>()?))
        .collect()
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Problem> {
        let input: ProblemInput =
            serde_json::from_str(text).map_err(|e| DspError::InvalidInput(format!("malformed problem: {e}")))?;
        let jnfs = input.classes.iter().map(|c| Jnf::from_blocks(c.blocks.clone())).collect::<Result<Vec<_>>>()?;
        let tuple = JnfTuple::new(jnfs.clone())?;
        let given = input.classes.iter().filter(|c| c.eigenvalues.is_some()).count();
        let specs = if given == 0 {
            None
        } else if given < input.classes.len() {
            return Err(DspError::InvalidInput("eigenvalues must be given for every class or none".into()));
        } else {
            let evs: Vec<Vec<ScalarInput>> = input.classes.iter().map(|c| c.eigenvalues.clone().unwrap()).collect();
            Some(match input.mode {
                Mode::Additive => SpecTuple::Additive(build_specs(&jnfs, &evs, ScalarInput::additive)?),
                Mode::Multiplicative => SpecTuple::Multiplicative(build_specs(&jnfs, &evs, ScalarInput::multiplicative)?),
            })
        };
        Ok(Problem { mode: input.mode, tuple, specs })
    }

    /// Canonical input text for this problem; reparses to an equal value.
    pub fn echo(&self) -> Value {
        let texts = self.specs.as_ref().map(SpecTuple::eigenvalue_texts);
        let classes: Vec<Value> = self
            .tuple
            .entries()
            .iter()
            .enumerate()
            .map(|(j, jnf)| {
                let blocks: Vec<&[usize]> = jnf.slots().iter().map(Partition::parts).collect();
                match &texts {
                    Some(t) => json!({ "blocks": blocks, "eigenvalues": t[j] }),
                    None => json!({ "blocks": blocks }),
                }
            })
            .collect();
        json!({ "mode": self.mode, "classes": classes })
    }

    fn require_specs(&self, command: &str) -> Result<&SpecTuple> {
        self.specs
            .as_ref()
            .ok_or_else(|| DspError::InvalidInput(format!("{command} needs eigenvalues for every class")))
    }
}

fn envelope(command: &str, problem: Option<&Problem>, body: Value) -> Value {
    let mut report = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let Some(p) = problem {
        report["input"] = p.echo();
    }
    if let (Value::Object(out), Value::Object(extra)) = (&mut report, body) {
        out.extend(extra);
    }
    report
}

pub fn error_report(command: &str, source: Option<&str>, err: &DspError) -> Value {
    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": { "kind": error_kind(err), "message": err.to_string() },
    });
    if let Some(s) = source {
        report["source"] = json!(s);
    }
    report
}

pub fn invariants_report(problem: &Problem) -> Value {
    let t = &problem.tuple;
    let classes: Vec<Value> = t
        .entries()
        .iter()
        .map(|j| json!({ "r": j.min_shifted_rank(), "d": j.class_dim(), "z": j.centralizer_dim() }))
        .collect();
    envelope(
        "invariants",
        Some(problem),
        json!({
            "n": t.size(),
            "p": t.p(),
            "classes": classes,
            "rigidity_index": t.rigidity_index(),
            "provenance": "index of rigidity 2n² − Σ d_j with d_j = n² − z_j",
        }),
    )
}

fn decision_body(report: &DecisionReport, with_trace: bool) -> Value {
    let mut body = json!({
        "verdict": report.verdict,
        "conditions": report.conditions,
        "rigidity_index": report.rigidity_index,
        "termination": report.trace.termination,
        "terminal_size": report.trace.terminal.size(),
        "expected_moduli_dimension": report.expected_moduli_dimension,
        "provenance": report.provenance,
    });
    if with_trace {
        body["trace"] = json!(report.trace);
    }
    body
}

pub fn decide_report(problem: &Problem, weak: bool, with_trace: bool) -> Result<Value> {
    let report = if weak { decide_weak_distinct(&problem.tuple)? } else { decide_generic(&problem.tuple) };
    let mut body = decision_body(&report, with_trace);
    body["problem"] = json!(if weak { "weak_dsp" } else { "dsp" });
    Ok(envelope("decide", Some(problem), body))
}

pub fn generic_report(problem: &Problem) -> Result<Value> {
    let specs = problem.require_specs("generic")?;
    let evs = specs.check_evs()?;
    if !evs {
        return Ok(envelope(
            "generic",
            Some(problem),
            json!({
                "evs": false,
                "generic": false,
                "provenance": "eigenvalues violate the trace/determinant condition",
            }),
        ));
    }
    let (witness, generalized_rank) = match specs {
        SpecTuple::Additive(s) => (find_relation(s)?, check_generalized_rank(s, DEFAULT_STATE_BUDGET)?),
        SpecTuple::Multiplicative(s) => (find_relation(s)?, check_generalized_rank(s, DEFAULT_STATE_BUDGET)?),
    };
    let reduction = gcd_reduction(specs)?;
    Ok(envelope(
        "generic",
        Some(problem),
        json!({
            "evs": true,
            "generic": witness.is_none(),
            "witness": witness,
            "gcd_reduction": reduction,
            "generalized_rank": generalized_rank,
            "provenance": "non-genericity relations over equal-size eigenvalue selections, k < n",
        }),
    ))
}

/// Single-eigenvalue classes whose eigenvalues sum to zero (resp. multiply to
/// one): subtracting (resp. dividing by) them gives nilpotent (resp.
/// unipotent) classes with the same constraint.
fn shifts_to_unipotent(specs: &SpecTuple) -> bool {
    fn plain<S: EigenScalar>(specs: &[ClassSpec<S>]) -> bool {
        specs.iter().fold(S::identity(), |acc, c| acc.combine(&c.eigenvalues()[0])).is_identity()
    }
    match specs {
        SpecTuple::Additive(s) => plain(s),
        SpecTuple::Multiplicative(s) => plain(s),
    }
}

fn outcome_or_reason<T: Serialize>(r: Result<T>) -> Value {
    match r {
        Ok(v) => json!(v),
        Err(e) => json!({ "not_applicable": error_kind(&e), "reason": e.to_string() }),
    }
}

pub fn classify_report(problem: &Problem) -> Result<Value> {
    let t = &problem.tuple;
    let special = match_special(t);
    let mut body = json!({
        "rigidity_index": t.rigidity_index(),
        "rigid_family": match_rigid_family(t),
        "special_case": special,
        "good": is_good(t),
    });
    if t.entries().iter().all(|j| j.slot_count() == 1) && problem.specs.as_ref().is_none_or(shifts_to_unipotent) {
        body["unipotent_nilpotent"] = json!({
            "dsp": decide_unipotent_nilpotent(t, ProblemKind::Dsp, problem.mode)?,
            "weak_dsp": decide_unipotent_nilpotent(t, ProblemKind::WeakDsp, problem.mode)?,
            "provenance": "single-eigenvalue classes: rank-sum condition outside the special and almost special tables",
        });
    }
    if let Some(specs) = &problem.specs {
        match is_special_diagonal(specs) {
            Ok(w) => {
                let (verdict, _) = weak_verdict_rigid(specs)?;
                body["special_diagonal"] = json!(w.is_some());
                if let Some(w) = w {
                    body["special_diagonal_witness"] = json!({
                        "l": w.l,
                        "n1": w.n1,
                        "quotient": Problem { mode: problem.mode, tuple: w.quotient.jnf_tuple()?, specs: Some(w.quotient.clone()) }.echo()["classes"],
                    });
                }
                body["weak_verdict"] = json!({
                    "verdict": verdict,
                    "provenance": "rigid case: special-diagonal tuples obstruct the weak problem",
                });
            }
            Err(DspError::KappaNotTwo(k)) => {
                body["special_diagonal"] = json!({ "not_applicable": "kappa_not_two", "rigidity_index": k });
                if k == 0 {
                    body["weak_verdict"] = json!({
                        "verdict": outcome_or_reason(weak_verdict_index_zero(specs, DEFAULT_STATE_BUDGET)),
                        "provenance": "zero index: relations forced by a common multiplicity factor",
                    });
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(envelope("classify", Some(problem), body))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum EntryInput {
    Pair([f64; 2]),
    Real(f64),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum WarmInput {
    Wrapped { matrices: Vec<Vec<Vec<EntryInput>>> },
    Bare(Vec<Vec<Vec<EntryInput>>>),
}

/// Matrices from a warm-start file: row-major, entries as numbers or
/// `[re, im]` pairs, either bare or under a `matrices` key.
pub fn parse_warm_start(text: &str) -> Result<Vec<CMatrix>> {
    let input: WarmInput =
        serde_json::from_str(text).map_err(|e| DspError::InvalidInput(format!("malformed warm start: {e}")))?;
    let raw = match input {
        WarmInput::Wrapped { matrices } | WarmInput::Bare(matrices) => matrices,
    };
    raw.into_iter()
        .map(|rows| {
            let n = rows.len();
            if n == 0 || rows.iter().any(|r| r.len() != n) {
                return Err(DspError::InvalidInput("warm start matrices must be square".into()));
            }
            Ok(CMatrix::from_fn(n, n, |i, j| match rows[i][j] {
                EntryInput::Pair([re, im]) => num_complex::Complex64::new(re, im),
                EntryInput::Real(re) => num_complex::Complex64::new(re, 0.0),
            }))
        })
        .collect()
}

pub fn realize_report(problem: &Problem, budget: &Budget, warm: Option<&[CMatrix]>) -> Result<Value> {
    let specs = problem.require_specs("realize")?;
    let outcome: SearchOutcome = match warm {
        Some(w) => realize_from(specs, w, budget)?,
        None => realize(specs, budget)?,
    };
    let summary = outcome.found.as_ref().map(|r| {
        json!({
            "residual": r.residual,
            "burnside_dim": r.burnside_dim,
            "centralizer_nullity": r.centralizer_nullity,
            "class_membership_ok": r.class_membership_ok,
            "irreducible": r.is_irreducible(),
            "trivial_centralizer": r.has_trivial_centralizer(),
            "restart": r.restart,
            "iterations": r.iterations,
        })
    });
    Ok(envelope(
        "realize",
        Some(problem),
        json!({
            "found": outcome.found.is_some(),
            "summary": summary,
            "witness": outcome.found,
            "restarts_run": outcome.restarts_run,
            "ill_conditioned_restarts": outcome.ill_conditioned_restarts,
            "budget": budget,
            "provenance": "numerical search; absence of a witness is not a nonexistence claim",
        }),
    ))
}

/// Diagonal-JNF tuples of `p + 1` entries at size `n` with index 2 passing
/// the generic-eigenvalue criterion, one per multiset of entries.
pub fn enumerate_rigid(n: usize, p: usize, with_distinct: bool) -> Result<Vec<JnfTuple>> {
    if n == 0 || p == 0 {
        return Err(DspError::InvalidInput("need n ≥ 1 and p ≥ 1".into()));
    }
    let partitions = Partition::all(n);
    let mut out = Vec::new();
    let mut pick = vec![0usize; p + 1];
    loop {
        let entries: Vec<Jnf> =
            pick.iter().map(|&i| Jnf::diagonal(partitions[i].parts()).expect("positive parts")).collect();
        let t = JnfTuple::new(entries)?;
        if t.rigidity_index() == 2 && is_good(&t) && (!with_distinct || t.has_distinct_entry()) {
            out.push(t);
        }
        // Next nondecreasing index vector.
        let Some(pos) = (0..pick.len()).rev().find(|&i| pick[i] + 1 < partitions.len()) else { break };
        pick[pos] += 1;
        for i in pos + 1..pick.len() {
            pick[i] = pick[pos];
        }
    }
    Ok(out)
}

pub fn enumerate_report(n: usize, p: usize, with_distinct: bool) -> Result<Value> {
    let tuples = enumerate_rigid(n, p, with_distinct)?;
    let families: Vec<Value> = tuples
        .iter()
        .map(|t| {
            json!({
                "multiplicities": t.entries().iter().map(Jnf::multiplicities).collect::<Vec<_>>(),
                "family": match_rigid_family(t),
            })
        })
        .collect();
    Ok(envelope(
        "enumerate-rigid",
        None,
        json!({
            "n": n,
            "p": p,
            "with_distinct": with_distinct,
            "count": tuples.len(),
            "tuples": families,
            "provenance": "exhaustive over diagonal JNFs: index 2 and the generic-eigenvalue criterion",
        }),
    ))
}

#[derive(Parser, Debug)]
#[command(name = "dspkit", version, about = "Decide and realize Deligne–Simpson problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Problem file, a directory of `.json` problems, or `-` for stdin.
    pub input: PathBuf,
    /// Worker threads for batch directories and realization restarts.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Per-class r, d, z and the index of rigidity.
    Invariants(InputArgs),
    /// Solvability for generic eigenvalues, or the weak problem.
    Decide {
        #[command(flatten)]
        io: InputArgs,
        /// Weak problem (requires a class with distinct eigenvalues).
        #[arg(long)]
        weak: bool,
        /// Include every reduction step.
        #[arg(long)]
        trace: bool,
    },
    /// Trace/determinant condition, relations and gcd reduction.
    Generic(InputArgs),
    /// Rigid families, special cases and their verdicts.
    Classify(InputArgs),
    /// Numerical search for a realizing tuple.
    Realize {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 200)]
        iters: usize,
        /// Overridden by DSPKIT_SEED when set.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Residual tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Starting matrices, one per class.
        #[arg(long)]
        warm_start: Option<PathBuf>,
    },
    /// All rigid diagonal tuples of a given shape.
    EnumerateRigid {
        /// Matrix size.
        #[arg(long)]
        n: usize,
        /// Number of classes minus one.
        #[arg(long)]
        p: usize,
        /// Keep only tuples with a distinct-eigenvalue entry.
        #[arg(long)]
        with_distinct: bool,
    },
}

fn read_source(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| DspError::InvalidInput(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| DspError::InvalidInput(format!("{}: {e}", path.display())))
}

fn seed_override(seed: u64) -> Result<u64> {
    match std::env::var("DSPKIT_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| DspError::InvalidInput(format!("DSPKIT_SEED={v:?} is not a u64"))),
        Err(_) => Ok(seed),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Invariants(_) => "invariants",
        Command::Decide { .. } => "decide",
        Command::Generic(_) => "generic",
        Command::Classify(_) => "classify",
        Command::Realize { .. } => "realize",
        Command::EnumerateRigid { .. } => "enumerate-rigid",
    }
}

/// Runs one problem text through `command`.
pub fn run_on_text(command: &Command, text: &str) -> Result<Value> {
    let problem = Problem::from_json(text)?;
    match command {
        Command::Invariants(_) => Ok(invariants_report(&problem)),
        Command::Decide { weak, trace, .. } => decide_report(&problem, *weak, *trace),
        Command::Generic(_) => generic_report(&problem),
        Command::Classify(_) => classify_report(&problem),
        Command::Realize { io, restarts, iters, seed, tol, warm_start } => {
            let budget = Budget {
                restarts: *restarts,
                iters: *iters,
                seed: seed_override(*seed)?,
                residual_tol: *tol,
                jobs: io.jobs,
                ..Budget::default()
            };
            let warm = warm_start.as_deref().map(|p| read_source(p).and_then(|t| parse_warm_start(&t))).transpose()?;
            realize_report(&problem, &budget, warm.as_deref())
        }
        Command::EnumerateRigid { .. } => unreachable!("takes no input"),
    }
}

fn batch_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| DspError::InvalidInput(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn emit(out: &mut dyn Write, value: &Value, pretty: bool) {
    let text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    let _ = writeln!(out, "{}", text.expect("reports serialize"));
}

/// Parses `args` and runs the command, writing reports to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID_INPUT } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let name = command_name(&cli.command);
    let io = match &cli.command {
        Command::EnumerateRigid { n, p, with_distinct } => {
            return match enumerate_report(*n, *p, *with_distinct) {
                Ok(v) => {
                    emit(out, &v, true);
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(err, "dspkit {name}: {e}");
                    emit(out, &error_report(name, None, &e), true);
                    exit_code(&e)
                }
            };
        }
        Command::Invariants(io) | Command::Generic(io) | Command::Classify(io) => io,
        Command::Decide { io, .. } | Command::Realize { io, .. } => io,
    };
    if io.input.is_dir() {
        let files = match batch_files(&io.input) {
            Ok(f) => f,
            Err(e) => {
                let _ = writeln!(err, "dspkit {name}: {e}");
                return exit_code(&e);
            }
        };
        let work = |path: &PathBuf| {
            let source = path.display().to_string();
            match read_source(path).and_then(|t| run_on_text(&cli.command, &t)) {
                Ok(mut v) => {
                    v["source"] = json!(source);
                    (v, EXIT_OK, None)
                }
                Err(e) => (error_report(name, Some(&source), &e), exit_code(&e), Some(format!("{source}: {e}"))),
            }
        };
        let results: Vec<_> = if io.jobs > 1 {
            match rayon::ThreadPoolBuilder::new().num_threads(io.jobs).build() {
                Ok(pool) => pool.install(|| files.par_iter().map(work).collect()),
                Err(_) => files.iter().map(work).collect(),
            }
        } else {
            files.iter().map(work).collect()
        };
        let mut code = EXIT_OK;
        for (v, c, diag) in results {
            if let Some(d) = diag {
                let _ = writeln!(err, "dspkit {name}: {d}");
            }
            emit(out, &v, false);
            code = code.max(c);
        }
        return code;
    }
    match read_source(&io.input).and_then(|t| run_on_text(&cli.command, &t)) {
        Ok(v) => {
            emit(out, &v, true);
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "dspkit {name}: {e}");
            emit(out, &error_report(name, Some(&io.input.display().to_string()), &e), true);
            exit_code(&e)
        }
    }
}
