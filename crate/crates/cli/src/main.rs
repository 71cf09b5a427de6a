//! `nilgrade`: construct, verify, classify and compare algebras; run the
//! completion searches and the acceptance suite. Every command prints one
//! JSON document. Exit status is 0 on success, 1 on domain errors (with a
//! JSON error document) and 2 on usage errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nilgrade_core::acceptance::{self, AcceptanceConfig};
use nilgrade_core::algebra::Algebra;
use nilgrade_core::classify::witness::{witness_approx, witness_exact};
use nilgrade_core::classify::{
    canonical_form_a6, canonical_form_b4, witness_isomorphism, CanonicalForm, WitnessConfig, WitnessMode,
};
use nilgrade_core::families::{
    family_a6, family_b4, null_filiform, representative, FamilyParamsA6, FamilyParamsB4, RepresentativeId, Theorem,
};
use nilgrade_core::grading::{characteristic_sequence, is_naturally_graded};
use nilgrade_core::json::{algebra_from_json, algebra_to_json, gaussian_to_scalar, scalar_to_gaussian, SCHEMA};
use nilgrade_core::nonexistence::{search_completion, verdict, CompletionProblem, Scenario, SearchConfig};
use nilgrade_core::scalar::{ApproxComplex, FieldDescriptor, Fp, Gaussian, Scalar};

#[derive(Parser)]
#[command(name = "nilgrade", version, about = "Naturally graded nilpotent associative algebras with characteristic sequence (n-3,2,1)")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by all subcommands.
#[derive(Args)]
struct RunConfig {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "NILGRADE_SEED", default_value_t = 42)]
    seed: u64,
    /// Tolerance for approximate witnesses.
    #[arg(long, global = true, env = "NILGRADE_TOL", default_value_t = 1e-9)]
    tol: f64,
    /// Random samples for the characteristic sequence.
    #[arg(long, global = true, default_value_t = 20)]
    samples: usize,
    /// Write the JSON document here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Progress messages on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and print its table.
    Construct(ConstructArgs),
    /// Check associativity, nilindex, characteristic sequence and grading.
    Verify {
        file: PathBuf,
    },
    /// Canonical form of a parameter tuple.
    Classify(ClassifyArgs),
    /// Search for an isomorphism between two family-shaped algebras.
    Isomorphic(IsomorphicArgs),
    /// Completion search for a Jordan shape or gradation scenario.
    Nonexist(NonexistArgs),
    /// Run the acceptance criteria.
    Acceptance {
        /// Comma-separated criterion numbers; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Nullfiliform,
    A6,
    B4,
    Rep,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    Teo,
    Teo1,
    Extra,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::Teo => Theorem::Teo,
            TheoremArg::Teo1 => Theorem::Teo1,
            TheoremArg::Extra => Theorem::Extra,
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[arg(long)]
    n: usize,
    /// Comma-separated scalars such as `1,1/2,0,2-i,1,0`; for `rep`, the
    /// continuous parameter if the entry has one.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    params: String,
    /// List for `--family rep`.
    #[arg(long, value_enum, default_value = "teo")]
    theorem: TheoremArg,
    /// 1-based list position for `--family rep`.
    #[arg(long)]
    index: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassifyFamily {
    A6,
    B4,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, value_enum)]
    family: ClassifyFamily,
    #[arg(long, allow_hyphen_values = true)]
    params: String,
    /// Also search for an approximate isomorphism to the representative.
    #[arg(long)]
    witness: bool,
    /// Dimension used for the witness search.
    #[arg(long, default_value_t = 7)]
    n: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Approx,
    Exact,
}

#[derive(Args)]
struct IsomorphicArgs {
    a: PathBuf,
    b: PathBuf,
    #[arg(long, value_enum, default_value = "approx")]
    mode: ModeArg,
    /// Prime for exact mode when the inputs are over ℚ(i).
    #[arg(long, default_value_t = 5)]
    prime: u64,
    /// Restarts (approx) or candidates (exact); exact mode enumerates everything by default.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct NonexistArgs {
    #[arg(long, default_value_t = 7)]
    n: usize,
    /// `shape:2,4,1` or `r:r1,r2`.
    #[arg(long)]
    scenario: String,
    /// Primes, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "5,13")]
    field: Vec<u64>,
    #[arg(long, default_value_t = 8)]
    max_solutions: usize,
    #[arg(long, default_value_t = 50_000_000)]
    node_budget: u64,
}

/// A failure with a machine-readable kind and optional extra fields.
struct DomainError {
    kind: &'static str,
    message: String,
    extra: Value,
}

impl DomainError {
    fn new(kind: &'static str, message: impl ToString) -> Self {
        DomainError { kind, message: message.to_string(), extra: Value::Null }
    }
}

impl From<anyhow::Error> for DomainError {
    fn from(e: anyhow::Error) -> Self {
        DomainError::new("error", format!("{e:#}"))
    }
}

type Outcome = Result<Value, DomainError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Verify { file } => cmd_verify(&cli.run, file),
        Command::Classify(a) => cmd_classify(&cli.run, a),
        Command::Isomorphic(a) => cmd_isomorphic(&cli.run, a),
        Command::Nonexist(a) => cmd_nonexist(&cli.run, a),
        Command::Acceptance { only } => cmd_acceptance(&cli.run, only),
    };
    let (doc, code) = match result {
        Ok(v) => {
            // a report can carry a failing verdict
            let failed = v.get("passed") == Some(&Value::Bool(false));
            (v, if failed { 1 } else { 0 })
        }
        Err(e) => {
            let mut err = json!({ "kind": e.kind, "message": e.message });
            if let Value::Object(extra) = e.extra {
                err.as_object_mut().expect("object").extend(extra);
            }
            (json!({ "schema": SCHEMA, "error": err }), 1)
        }
    };
    let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    match &cli.run.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => {
            use std::io::Write;
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
    }
    ExitCode::from(code)
}

fn log(run: &RunConfig, msg: impl AsRef<str>) {
    if run.verbose {
        eprintln!("{}", msg.as_ref());
    }
}

/// Comma-separated Gaussian-rational literals.
fn parse_params(text: &str) -> Result<Vec<Gaussian>, DomainError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut bad = Vec::new();
    let mut out = Vec::new();
    for tok in text.split(',') {
        match tok.trim().parse::<Gaussian>() {
            Ok(v) => out.push(v),
            Err(_) => bad.push(tok.trim().to_string()),
        }
    }
    if bad.is_empty() {
        Ok(out)
    } else {
        Err(DomainError {
            kind: "parse",
            message: format!("cannot parse parameter(s): {}", bad.join(", ")),
            extra: json!({ "tokens": bad }),
        })
    }
}

fn fixed<const N: usize>(v: Vec<Gaussian>, what: &str) -> Result<[Gaussian; N], DomainError> {
    let len = v.len();
    v.try_into().map_err(|_| DomainError::new("parse", format!("{what} takes {N} parameters, got {len}")))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

// ------------------------------------------------------------------ construct

fn cmd_construct(a: &ConstructArgs) -> Outcome {
    let params = parse_params(&a.params)?;
    let z = Gaussian::zero();
    let alg = match a.family {
        FamilyKind::Nullfiliform => null_filiform(a.n, &z),
        FamilyKind::A6 => family_a6(a.n, &FamilyParamsA6::new(fixed(params, "a6")?)),
        FamilyKind::B4 => family_b4(a.n, &FamilyParamsB4::new(fixed(params, "b4")?)),
        FamilyKind::Rep => {
            let index = a.index.ok_or_else(|| DomainError::new("usage", "--index is required for --family rep"))?;
            let id = RepresentativeId::new(a.theorem.into(), index, params.into_iter().next())
                .map_err(|e| DomainError::new("family", e))?;
            representative(&id, a.n, &z)
        }
    }
    .map_err(|e| DomainError::new("family", e))?;
    Ok(algebra_to_json(&gaussian_to_scalar(&alg)))
}

// --------------------------------------------------------------------- verify

fn read_algebra(path: &Path) -> Result<Algebra<Scalar>, DomainError> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(DomainError::from)?;
    algebra_from_json(&text).map_err(|e| DomainError::new("input", format!("{}: {e}", path.display())))
}

fn cmd_verify(run: &RunConfig, file: &Path) -> Outcome {
    let a = read_algebra(file)?;
    let violations = a.verify_associativity();
    if !violations.is_empty() {
        let triples: Vec<[usize; 3]> = violations.iter().map(|v| [v.triple.0 + 1, v.triple.1 + 1, v.triple.2 + 1]).collect();
        return Err(DomainError {
            kind: "not_associative",
            message: format!("{} basis triples violate associativity", triples.len()),
            extra: json!({ "violations": triples }),
        });
    }
    let filt = a.power_filtration().map_err(|e| DomainError::new("not_nilpotent", e))?;
    log(run, format!("nilindex {}", filt.nilindex));
    let report = characteristic_sequence(&a, run.samples, run.seed).map_err(|e| DomainError::new("grading", e))?;
    let natural = is_naturally_graded(&a).map_err(|e| DomainError::new("grading", e))?;
    Ok(json!({
        "schema": SCHEMA,
        "associative": true,
        "nilindex": filt.nilindex,
        "filtration_dims": filt.dims(),
        "char_sequence": report.sequence.0,
        "witness": to_value(&report.witness),
        "graded": natural.graded,
        "degrees": natural.gradation.map(|g| g.degrees),
        "note": natural.note,
    }))
}

// ------------------------------------------------------------------- classify

fn form_json(form: &CanonicalForm<Gaussian>) -> Value {
    let label = form.id.concrete_label(&Gaussian::zero()).unwrap_or_else(|_| form.id.entry().label.to_string());
    json!({
        "schema": SCHEMA,
        "representative": label,
        "id": to_value(&form.id),
        "listed_as": form.id.entry().label,
        "branch": form.branch,
        "branch_trace": form.trace,
        "continuous_params": form.id.param.as_ref().map(to_value),
        "params": to_value(&form.params),
        "invariants": form.invariants.as_ref().map(to_value),
        "needs_extension": form.needs_extension,
        "derived_rule": form.derived,
        "discrepancy": form.discrepancy,
    })
}

fn cmd_classify(run: &RunConfig, a: &ClassifyArgs) -> Outcome {
    let params = parse_params(&a.params)?;
    let (form, source) = match a.family {
        ClassifyFamily::A6 => {
            let p = FamilyParamsA6::new(fixed(params, "a6")?);
            let form = canonical_form_a6(&p).map_err(|e| DomainError::new("unclassified", e))?;
            (form, family_a6(a.n, &p))
        }
        ClassifyFamily::B4 => {
            let p = FamilyParamsB4::new(fixed(params, "b4")?);
            let form = canonical_form_b4(&p).map_err(|e| DomainError::new("unclassified", e))?;
            (form, family_b4(a.n, &p))
        }
    };
    let mut doc = form_json(&form);
    if a.witness {
        let src = source.map_err(|e| DomainError::new("family", e))?;
        let rep = representative(&form.id, a.n, &Gaussian::zero()).map_err(|e| DomainError::new("family", e))?;
        let cfg = WitnessConfig { mode: WitnessMode::Approx { tol: run.tol }, seed: run.seed, budget: Some(10_000) };
        log(run, "searching for a witness");
        doc["witness"] = match witness_isomorphism(&src, &rep, &cfg) {
            Ok(w) => to_value(&w),
            Err(e) => json!({ "error": e.to_string() }),
        };
    }
    Ok(doc)
}

// ----------------------------------------------------------------- isomorphic

fn cmd_isomorphic(run: &RunConfig, a: &IsomorphicArgs) -> Outcome {
    let (x, y) = (read_algebra(&a.a)?, read_algebra(&a.b)?);
    let err = |e: nilgrade_core::classify::ClassifyError| {
        let kind = if matches!(e, nilgrade_core::classify::ClassifyError::BudgetExhausted { .. }) {
            "budget_exhausted"
        } else {
            "witness"
        };
        DomainError::new(kind, e)
    };
    let witness = match (x.field(), y.field()) {
        (FieldDescriptor::Fp { p }, FieldDescriptor::Fp { p: q }) => {
            if p != q {
                return Err(DomainError::new("input", "algebras are over different prime fields"));
            }
            let conv = |s: &Algebra<Scalar>| {
                s.map_scalars(&Fp::new(0, p), |v| match v {
                    Scalar::Prime(f) => Ok(*f),
                    _ => Err(DomainError::new("input", "mixed fields")),
                })
            };
            witness_exact(&conv(&x)?, &conv(&y)?, a.budget).map_err(err)?
        }
        (FieldDescriptor::ApproxC { .. }, _) | (_, FieldDescriptor::ApproxC { .. }) => {
            let conv = |s: &Algebra<Scalar>| {
                s.map_scalars(&ApproxComplex::new(0.0, 0.0, run.tol), |v| match v {
                    Scalar::Approx(c) => Ok(ApproxComplex::new(c.re, c.im, run.tol)),
                    other => other
                        .to_gaussian()
                        .map(|g| ApproxComplex::from_gaussian(&g, run.tol))
                        .ok_or_else(|| DomainError::new("input", "unsupported field")),
                })
            };
            witness_approx(&conv(&x)?, &conv(&y)?, run.seed, a.budget.unwrap_or(10_000), run.tol).map_err(err)?
        }
        _ => {
            let gx = scalar_to_gaussian(&x).map_err(|e| DomainError::new("input", e))?;
            let gy = scalar_to_gaussian(&y).map_err(|e| DomainError::new("input", e))?;
            let cfg = match a.mode {
                ModeArg::Approx => {
                    WitnessConfig { mode: WitnessMode::Approx { tol: run.tol }, seed: run.seed, budget: a.budget.or(Some(10_000)) }
                }
                ModeArg::Exact => WitnessConfig { mode: WitnessMode::Exact { p: a.prime }, seed: run.seed, budget: a.budget },
            };
            witness_isomorphism(&gx, &gy, &cfg).map_err(err)?
        }
    };
    Ok(json!({ "schema": SCHEMA, "isomorphic": true, "witness": to_value(&witness) }))
}

// ------------------------------------------------------------------- nonexist

fn cmd_nonexist(run: &RunConfig, a: &NonexistArgs) -> Outcome {
    let scenario: Scenario = a.scenario.parse().map_err(|e| DomainError::new("usage", e))?;
    let cfg = SearchConfig { node_budget: a.node_budget, max_solutions: a.max_solutions };
    let mut reports = Vec::new();
    let mut rows = Vec::new();
    for &p in &a.field {
        let prob = CompletionProblem::new(a.n, scenario.clone(), p).map_err(|e| DomainError::new("usage", e))?;
        log(run, format!("{scenario} over F_{p}: {} unknown coefficients", prob.unknown_count()));
        let start = Instant::now();
        let rep = search_completion(&prob, &cfg).map_err(|e| DomainError::new("budget_exhausted", e))?;
        rows.push(json!({
            "field": p,
            "unknowns": prob.unknown_count(),
            "solutions_found": rep.solutions.len(),
            "truncated": rep.truncated,
            "nodes": rep.nodes,
            "elapsed": start.elapsed().as_secs_f64(),
        }));
        reports.push(rep);
    }
    let verdict = verdict(&reports).to_string();
    let mut doc = if rows.len() == 1 {
        rows.pop().expect("one row")
    } else {
        json!({ "results": rows })
    };
    let obj = doc.as_object_mut().expect("object");
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("scenario".into(), json!(scenario.to_string()));
    obj.insert("n".into(), json!(a.n));
    obj.insert("verdict".into(), json!(verdict));
    Ok(doc)
}

// ----------------------------------------------------------------- acceptance

fn cmd_acceptance(run: &RunConfig, only: &[usize]) -> Outcome {
    if let Some(bad) = only.iter().find(|&&id| id == 0 || id > acceptance::TITLES.len()) {
        return Err(DomainError::new("usage", anyhow!("no criterion {bad}")));
    }
    let cfg = AcceptanceConfig { seed: run.seed, tol: run.tol };
    let mut outcomes = Vec::new();
    for id in 1..=acceptance::TITLES.len() {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let o = acceptance::run_one(&cfg, id);
        log(run, o.to_string());
        outcomes.push(o);
    }
    let passed = outcomes.iter().all(|o| o.passed);
    Ok(json!({
        "schema": SCHEMA,
        "seed": run.seed,
        "tol": run.tol,
        "criteria": to_value(&outcomes),
        "passed": passed,
    }))
}
