//! The acceptance suite: nine pass/fail criteria shared by the `acceptance`
//! test target and the `acceptance` CLI subcommand.
//!
//! Oracles here are deliberately computed by a different route than the code
//! under test: transported tables are rebuilt from raw products, ∇ is parsed
//! from a plain-text polynomial, gradings are checked through the power
//! filtration.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, BasisChange};
use crate::classify::transform::{d_value, e_value, transform_a6_complete};
use crate::classify::witness::{to_fp, witness_exact};
use crate::classify::{
    canonical_form_a6, canonical_form_b4, invariants_a6, nabla, transform_a6_params, witness_isomorphism, CanonicalForm,
    CompleteChange, GeneratorChange, WitnessConfig, WitnessMode,
};
use crate::families::{
    a6_gradation, b4_gradation, entries_of, family_a6, family_b4, recognize_a6, representative, xyz, FamilyParamsA6,
    FamilyParamsB4, ParamKind, RepresentativeId, Theorem, TEO_LISTED_ENTRY5,
};
use crate::grading::{characteristic_sequence, CharacteristicSequence, Gradation};
use crate::nonexistence::{
    reduce_gaussian_algebra, search_completion, verdict, CompletionProblem, Scenario, SearchConfig, Verdict,
};
use crate::scalar::{rat, reduce_gaussian, Field, Fp, Gaussian};

#[derive(Clone, Debug)]
pub struct AcceptanceConfig {
    pub seed: u64,
    /// Residual bound for approximate witnesses.
    pub tol: f64,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig { seed: 42, tol: 1e-9 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Wall-clock time; left out of JSON so reports stay reproducible.
    #[serde(skip)]
    pub seconds: f64,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}. {}: {} ({:.1}s)", self.id, self.title, self.detail, self.seconds)
    }
}

pub const TITLES: [&str; 9] = [
    "family well-formedness",
    "transport oracle",
    "invariance laws",
    "classifier idempotence",
    "classifier soundness",
    "pairwise separation",
    "nonexistence refutation",
    "nabla oracle",
    "known-discrepancy report",
];

/// Runs the selected criteria (all when `only` is empty), in order.
pub fn run(cfg: &AcceptanceConfig, only: &[usize]) -> Vec<CriterionOutcome> {
    (1..=TITLES.len())
        .filter(|id| only.is_empty() || only.contains(id))
        .map(|id| run_one(cfg, id))
        .collect()
}

pub fn run_one(cfg: &AcceptanceConfig, id: usize) -> CriterionOutcome {
    let start = Instant::now();
    let (passed, detail) = match id {
        1 => family_well_formedness(cfg),
        2 => transport_oracle(cfg),
        3 => invariance_laws(cfg),
        4 => classifier_idempotence(),
        5 => classifier_soundness(cfg),
        6 => pairwise_separation(),
        7 => nonexistence_refutation(),
        8 => nabla_oracle(),
        9 => discrepancy_report(),
        _ => (false, format!("no criterion {id}")),
    };
    CriterionOutcome {
        id,
        title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

// ------------------------------------------------------------------ helpers

fn g(v: i64) -> Gaussian {
    Gaussian::from_int(v)
}

fn gr(n: i64, d: i64) -> Gaussian {
    Gaussian::from_rational(rat(n, d))
}

/// Small Gaussian integer; purely real three times out of four.
fn small(rng: &mut ChaCha8Rng, r: i64) -> Gaussian {
    let re = rng.random_range(-r..=r);
    let im = if rng.random_bool(0.25) { rng.random_range(-1..=1) } else { 0 };
    Gaussian::from_ints(re, im)
}

fn small_nonzero(rng: &mut ChaCha8Rng, r: i64) -> Gaussian {
    loop {
        let v = small(rng, r);
        if !v.is_zero() {
            return v;
        }
    }
}

fn random_a6(rng: &mut ChaCha8Rng) -> FamilyParamsA6<Gaussian> {
    FamilyParamsA6::new(std::array::from_fn(|_| small(rng, 3)))
}

fn random_b4(rng: &mut ChaCha8Rng) -> FamilyParamsB4<Gaussian> {
    loop {
        let p = FamilyParamsB4::new(std::array::from_fn(|_| small(rng, 3)));
        if !(p.beta[1].is_zero() && p.beta[3].is_zero()) {
            return p;
        }
    }
}

fn random_change(rng: &mut ChaCha8Rng, p: &FamilyParamsA6<Gaussian>) -> GeneratorChange<Gaussian> {
    loop {
        let ch = GeneratorChange {
            a1: small_nonzero(rng, 3),
            a2: small(rng, 3),
            a3: small(rng, 3),
            b2: small(rng, 3),
            b3: small(rng, 3),
            c3: small_nonzero(rng, 3),
        };
        let d = d_value(p, &ch.a1, &ch.a2, &ch.a3);
        let e = e_value(p, &ch.a1, &ch.a2, &ch.a3, &ch.b2, &ch.b3);
        if !d.is_zero() && !e.is_zero() {
            return ch;
        }
    }
}

/// Power-filtration dimensions must equal the tail sums of the component
/// sizes: with A_1 generating, A^k = A_k ⊕ A_{k+1} ⊕ …
fn generated_in_degree_one<F: Field>(a: &Algebra<F>, grading: &Gradation) -> bool {
    let Ok(filt) = a.power_filtration() else { return false };
    let sizes: Vec<usize> = grading.components.iter().map(Vec::len).collect();
    let want: Vec<usize> = (0..sizes.len()).map(|k| sizes[k..].iter().sum()).collect();
    filt.dims() == want
}

// -------------------------------------------------------------- criterion 1

fn family_well_formedness(cfg: &AcceptanceConfig) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in [7usize, 8, 9, 12] {
        let want_seq = CharacteristicSequence(vec![n - 3, 2, 1]);
        for k in 0..20 {
            let a6 = random_a6(&mut rng);
            let b4 = random_b4(&mut rng);
            let cases = [
                ("a6", a6.to_string(), family_a6(n, &a6).map_err(|e| e.to_string()), a6_gradation(n)),
                ("b4", b4.to_string(), family_b4(n, &b4).map_err(|e| e.to_string()), b4_gradation(n)),
            ];
            for (fam, label, alg, grading) in cases {
                checked += 1;
                let alg = match alg {
                    Ok(a) => a,
                    Err(e) => {
                        failures.push(format!("{fam} n={n} {label}: {e}"));
                        continue;
                    }
                };
                let nil = alg.power_filtration().map(|f| f.nilindex).ok();
                let seq = characteristic_sequence(&alg, 8, cfg.seed ^ k).map(|r| r.sequence).ok();
                let ok = alg.is_associative()
                    && nil == Some(n - 3)
                    && seq.as_ref() == Some(&want_seq)
                    && grading.is_homogeneous(&alg)
                    && generated_in_degree_one(&alg, &grading);
                if !ok {
                    failures.push(format!("{fam} n={n} {label}: nilindex {nil:?}, sequence {seq:?}"));
                }
            }
        }
    }
    summarize(checked, failures, "algebras associative, nilindex n-3, C = (n-3,2,1), graded")
}

fn summarize(checked: usize, failures: Vec<String>, what: &str) -> (bool, String) {
    if failures.is_empty() {
        (true, format!("{checked}/{checked} {what}"))
    } else {
        let shown: Vec<&String> = failures.iter().take(3).collect();
        (false, format!("{} of {checked} failed; first: {shown:?}", failures.len()))
    }
}

// -------------------------------------------------------------- criterion 2

/// Parameters read from the table transported along the change, with the
/// new basis assembled from raw products and z' fixed by e1'·z' = 0.
fn transported_params(n: usize, p: &FamilyParamsA6<Gaussian>, ch: &GeneratorChange<Gaussian>) -> Option<FamilyParamsA6<Gaussian>> {
    let a = family_a6(n, p).ok()?;
    let (x, y, z) = xyz(n);
    let mut e1 = a.zero_vector();
    e1[0] = ch.a1.clone();
    e1[x] = ch.a2.clone();
    e1[z] = ch.a3.clone();
    let mut xv = a.zero_vector();
    xv[x] = ch.b2.clone();
    xv[z] = ch.b3.clone();
    let u = a.multiply(&e1, &a.basis_vector(x)).ok()?[y].clone();
    let v = a.multiply(&e1, &a.basis_vector(z)).ok()?[y].clone();
    let mut zv = a.zero_vector();
    zv[x] = v.mul(&ch.c3).neg().div(&u)?;
    zv[z] = ch.c3.clone();
    let mut cols = vec![e1.clone()];
    for _ in 1..n - 3 {
        let next = a.multiply(&e1, cols.last()?).ok()?;
        cols.push(next);
    }
    let yv = a.multiply(&e1, &xv).ok()?;
    cols.extend([xv, yv, zv]);
    let change = BasisChange::from_columns(&cols, &Gaussian::zero()).ok()?;
    recognize_a6(&a.apply_basis_change(&change).ok()?)
}

fn transport_oracle(cfg: &AcceptanceConfig) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(2));
    let mut failures = Vec::new();
    for _ in 0..200 {
        let p = random_a6(&mut rng);
        let ch = random_change(&mut rng, &p);
        let closed = transform_a6_params(&p, &ch).ok();
        let oracle = transported_params(7, &p, &ch);
        if closed.is_none() || closed != oracle {
            failures.push(format!("{p} under {ch:?}"));
        }
    }
    summarize(200, failures, "closed-form transports equal the structure-constant round trip")
}

// -------------------------------------------------------------- criterion 3

fn invariance_laws(cfg: &AcceptanceConfig) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(3));
    let mut failures = Vec::new();
    for _ in 0..200 {
        let p = random_a6(&mut rng);
        let ch = random_change(&mut rng, &p);
        let Ok(q) = transform_a6_params(&p, &ch) else {
            failures.push(format!("{p}: inadmissible"));
            continue;
        };
        let (i, j) = (invariants_a6(&p), invariants_a6(&q));
        let d = d_value(&p, &ch.a1, &ch.a2, &ch.a3);
        let e = e_value(&p, &ch.a1, &ch.a2, &ch.a3, &ch.b2, &ch.b3);
        let c = &ch.c3;
        let laws = [
            j.i1.mul(&d) == i.i1.mul(c),
            j.i2.mul(&d.square()) == i.i2.mul(&c.square()),
            j.i3.mul(&d.square()) == i.i3.mul(&c.square()),
            nabla(&q).mul(&d.pow(4)).mul(&e) == nabla(&p).mul(&ch.a1.square()).mul(&c.pow(4)),
        ];
        if let Some(k) = laws.iter().position(|ok| !ok) {
            failures.push(format!("law {} fails for {p}", k + 1));
        }
    }
    summarize(200, failures, "changes satisfy the I1, I2, I3 and nabla laws")
}

// -------------------------------------------------------------- criterion 4

/// Sampled values of a continuous parameter.
fn samples(kind: ParamKind) -> Vec<Gaussian> {
    match kind {
        ParamKind::Alpha | ParamKind::Beta => vec![g(0), g(1), g(-1), g(2), Gaussian::i()],
        ParamKind::Gamma => vec![g(2), Gaussian::i(), gr(1, 2), g(-1), Gaussian::from_ints(1, 1)],
        ParamKind::Delta => vec![g(1), g(-1), Gaussian::i(), g(2), gr(1, 3)],
    }
}

fn representatives(theorem: Theorem, sampler: impl Fn(ParamKind) -> Vec<Gaussian>) -> Vec<RepresentativeId<Gaussian>> {
    let mut out = Vec::new();
    for e in entries_of(theorem) {
        match e.kind {
            None => out.push(RepresentativeId::new(theorem, e.index, None).expect("listed")),
            Some(kind) => {
                for v in sampler(kind) {
                    out.push(RepresentativeId::new(theorem, e.index, Some(v)).expect("admissible sample"));
                }
            }
        }
    }
    out
}

fn classify_tuple(theorem: Theorem, t: &[Gaussian]) -> Result<CanonicalForm<Gaussian>, String> {
    let r = if theorem == Theorem::Teo1 {
        canonical_form_b4(&FamilyParamsB4::new(std::array::from_fn(|k| t[k].clone())))
    } else {
        canonical_form_a6(&FamilyParamsA6::new(std::array::from_fn(|k| t[k].clone())))
    };
    r.map_err(|e| e.to_string())
}

fn classifier_idempotence() -> (bool, String) {
    let mut checked = 0;
    let mut failures = Vec::new();
    for theorem in [Theorem::Teo, Theorem::Teo1, Theorem::Extra] {
        for id in representatives(theorem, samples) {
            checked += 1;
            let t = id.tuple(&Gaussian::zero()).expect("ℚ(i) has i");
            match classify_tuple(theorem, &t) {
                Ok(f) if f.id == id && f.params == t => {}
                Ok(f) => failures.push(format!("{id} -> {}", f.id)),
                Err(e) => failures.push(format!("{id}: {e}")),
            }
        }
    }
    summarize(checked, failures, "representatives map to themselves")
}

// -------------------------------------------------------------- criterion 5

/// Random tuple steered towards one of several regions of the case tree.
fn steered_tuple(rng: &mut ChaCha8Rng) -> FamilyParamsA6<Gaussian> {
    let mut a: [Gaussian; 6] = std::array::from_fn(|_| small(rng, 2));
    match rng.random_range(0..7) {
        0 => {}
        1 => a[4] = a[2].clone(),
        2 => {
            a[4] = a[2].clone();
            a[5] = small_nonzero(rng, 2);
            a[1] = a[2].square().div(&a[5]).expect("nonzero");
        }
        3 => {
            a[2] = g(0);
            a[5] = g(0);
            a[4] = small_nonzero(rng, 2);
        }
        4 => {
            a[5] = small_nonzero(rng, 2);
            while a[4] == a[2] {
                a[4] = small(rng, 2);
            }
            a[1] = a[2].mul(&a[4]).div(&a[5]).expect("nonzero");
        }
        5 => {
            let gamma = loop {
                let v = small(rng, 2);
                if !v.is_zero() && !v.is_one() {
                    break v;
                }
            };
            let base = FamilyParamsA6::new([g(0), g(1), g(0), gamma.clone(), g(1), gamma.mul(&g(1).sub(&gamma))]);
            loop {
                let ch = CompleteChange {
                    a1: small_nonzero(rng, 2),
                    a2: small(rng, 2),
                    a3: small(rng, 2),
                    b2: small(rng, 2),
                    b3: small(rng, 2),
                    c: small_nonzero(rng, 2),
                };
                if let Ok(q) = transform_a6_complete(&base, &ch) {
                    return q;
                }
            }
        }
        _ => {
            for v in a.iter_mut() {
                if rng.random_bool(0.5) {
                    *v = g(0);
                }
            }
        }
    }
    FamilyParamsA6::new(a)
}

fn reduce_params(t: &[Gaussian], p: u64) -> Option<Vec<Fp>> {
    t.iter().map(|v| reduce_gaussian(v, p)).collect()
}

fn classifier_soundness(cfg: &AcceptanceConfig) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(5));
    let mut failures = Vec::new();
    let (mut exact_checked, mut exact_skipped) = (0, 0);
    let mut worst: f64 = 0.0;
    for k in 0..100u64 {
        let p = steered_tuple(&mut rng);
        let form = match canonical_form_a6(&p) {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("{p}: {e}"));
                continue;
            }
        };
        let a = family_a6(7, &p).expect("any tuple is admissible");
        let rep = representative(&form.id, 7, &Gaussian::zero()).expect("classifier output is valid");
        let wcfg = WitnessConfig { mode: WitnessMode::Approx { tol: cfg.tol }, seed: cfg.seed.wrapping_add(k), budget: Some(10_000) };
        match witness_isomorphism(&a, &rep, &wcfg) {
            Ok(w) if w.residual < cfg.tol => worst = worst.max(w.residual),
            Ok(w) => failures.push(format!("{p}: residual {:e}", w.residual)),
            Err(e) => failures.push(format!("{p} vs {}: {e}", form.id)),
        }
        if form.needs_extension {
            continue;
        }
        // good reduction: same branch and the reduced canonical parameters
        let reduced = reduce_params(&p.alpha, 13).and_then(|r| canonical_form_a6(&FamilyParamsA6::new(std::array::from_fn(|i| r[i]))).ok());
        let same = match (&reduced, reduce_params(&form.params, 13)) {
            (Some(f13), Some(want)) => f13.branch == form.branch && f13.params == want,
            _ => false,
        };
        if !same {
            exact_skipped += 1;
            continue;
        }
        exact_checked += 1;
        let pair = to_fp(&a, 13).and_then(|a13| Ok((a13, to_fp(&rep, 13)?)));
        match pair.and_then(|(a13, r13)| witness_exact(&a13, &r13, None)) {
            Ok(_) => {}
            Err(e) => failures.push(format!("{p} over F_13: {e}")),
        }
    }
    let (ok, head) = summarize(100, failures, "approximate witnesses found");
    (ok, format!("{head}; worst residual {worst:.1e}; exact F_13 witnesses for {exact_checked} tuples, {exact_skipped} without good reduction"))
}

// -------------------------------------------------------------- criterion 6

fn separation_samples(kind: ParamKind) -> Vec<Gaussian> {
    match kind {
        ParamKind::Alpha | ParamKind::Beta => vec![g(0), g(2)],
        // γ and 1 − γ share α6
        ParamKind::Gamma => vec![g(2), g(-1)],
        ParamKind::Delta => vec![g(2), g(3)],
    }
}

fn pairwise_separation() -> (bool, String) {
    let z = Gaussian::zero();
    let groups = [
        {
            let mut v = representatives(Theorem::Teo, separation_samples);
            v.extend(representatives(Theorem::Extra, separation_samples));
            v
        },
        representatives(Theorem::Teo1, separation_samples),
    ];
    let (mut pairs, mut by_fingerprint, mut by_search, mut collisions) = (0, 0, 0, 0);
    let mut failures = Vec::new();
    for reps in &groups {
        let prepared: Vec<_> = reps
            .iter()
            .map(|id| {
                let t = id.tuple(&z).expect("ℚ(i) has i");
                let form = classify_tuple(id.theorem, &t).ok();
                let print = form.map(|f| (f.branch, f.params));
                let alg = representative(id, 7, &z).expect("valid representative");
                (id, print, to_fp(&alg, 5).ok())
            })
            .collect();
        for (s, (ia, fa, ma)) in prepared.iter().enumerate() {
            for (ib, fb, mb) in &prepared[s + 1..] {
                pairs += 1;
                let fp_sep = fa.is_some() && fb.is_some() && fa != fb;
                let search_sep = match (ma, mb) {
                    (Some(a), Some(b)) => witness_exact(a, b, None).is_err(),
                    _ => false,
                };
                by_fingerprint += usize::from(fp_sep);
                by_search += usize::from(search_sep);
                if fp_sep && !search_sep {
                    collisions += 1;
                }
                if !fp_sep && !search_sep {
                    failures.push(format!("{ia} / {ib}"));
                }
            }
        }
    }
    let (ok, head) = summarize(pairs, failures, "pairs separated");
    (
        ok,
        format!("{head}; {by_fingerprint} by fingerprint, {by_search} by empty F_5 search, {collisions} by fingerprint alone"),
    )
}

// -------------------------------------------------------------- criterion 7

fn nonexistence_refutation() -> (bool, String) {
    let cfg = SearchConfig::default();
    let mut notes = Vec::new();
    let mut ok = true;
    let forbidden = ["shape:2,4,1", "r:1,3", "r:2,1"];
    let existing = ["r:1,1", "r:1,2"];
    for s in forbidden.iter().chain(&existing) {
        let scenario: Scenario = s.parse().expect("valid scenario");
        let mut reports = Vec::new();
        for p in [5u64, 13] {
            let prob = CompletionProblem::new(7, scenario.clone(), p).expect("valid problem");
            match search_completion(&prob, &cfg) {
                Ok(r) => {
                    let sound = r.solutions.iter().all(|a| independent_completion_check(&prob, a));
                    ok &= sound;
                    reports.push(r);
                }
                Err(e) => {
                    ok = false;
                    notes.push(format!("{s} over F_{p}: {e}"));
                }
            }
        }
        if reports.len() < 2 {
            continue;
        }
        let v = verdict(&reports);
        let expected = if forbidden.contains(s) { Verdict::RefutedAtDeskScale } else { Verdict::CompletionsExist };
        ok &= v == expected && reports.iter().all(|r| !r.truncated || !r.is_empty());
        notes.push(format!("{s}: {v}"));
    }
    // the families themselves are completions of the existing scenarios
    let z = Gaussian::zero();
    let a6 = family_a6(7, &FamilyParamsA6::from_ints(&z, [1, 1, 0, 0, 1, 2])).expect("valid");
    let b4 = family_b4(7, &FamilyParamsB4::from_ints(&z, [1, 1, 0, 1])).expect("valid");
    for (alg, s) in [(a6, Scenario::Degrees { r1: 1, r2: 1 }), (b4, Scenario::Degrees { r1: 1, r2: 2 })] {
        for p in [5u64, 13] {
            let red = reduce_gaussian_algebra(&alg, p).expect("integral table");
            ok &= CompletionProblem::new(7, s.clone(), p).expect("valid").accepts(&red);
        }
    }
    (ok, notes.join("; "))
}

/// Associativity and generation checked without the search's own helpers.
fn independent_completion_check(prob: &CompletionProblem, a: &Algebra<Fp>) -> bool {
    if !a.verify_associativity().is_empty() {
        return false;
    }
    match &prob.degrees {
        Some(d) => {
            let grading = Gradation::from_degrees(d.clone());
            grading.is_homogeneous(a) && generated_in_degree_one(a, &grading)
        }
        None => true,
    }
}

// -------------------------------------------------------------- criterion 8

/// ∇ written out as text; parsed and evaluated term by term.
const NABLA_TEXT: &str = "a3^3 a4 + a3^2 a4 a5 - a1 a3^2 a4 a5 + a2 a3 a4^2 a5 - a1 a3 a4 a5^2 \
    - a1 a3^2 a6 - 3 a2 a3 a4 a6 + a1 a2 a3 a4 a6 - a2^2 a4^2 a6 + a3 a5 a6 + a1^2 a3 a5 a6 \
    + a2 a4 a5 a6 + a1 a2 a4 a5 a6 - a1 a5^2 a6 - a2 a6^2 + 2 a1 a2 a6^2 - a1^2 a2 a6^2";

fn eval_polynomial_text(text: &str, a: &[Gaussian; 6]) -> Gaussian {
    let spaced = text.replace('+', " + ").replace('-', " - ");
    let mut total = g(0);
    let mut sign = 1;
    let mut term: Option<Gaussian> = None;
    let flush = |total: &mut Gaussian, term: &mut Option<Gaussian>, sign: i64| {
        if let Some(t) = term.take() {
            *total = total.add(&t.mul(&g(sign)));
        }
    };
    for tok in spaced.split_whitespace() {
        match tok {
            "+" | "-" => {
                flush(&mut total, &mut term, sign);
                sign = if tok == "-" { -1 } else { 1 };
            }
            _ => {
                let factor = if let Some(var) = tok.strip_prefix('a') {
                    let (idx, exp) = var.split_once('^').unwrap_or((var, "1"));
                    let idx: usize = idx.parse().expect("variable index");
                    a[idx - 1].pow(exp.parse().expect("exponent"))
                } else {
                    g(tok.parse().expect("integer coefficient"))
                };
                term = Some(term.unwrap_or_else(|| g(1)).mul(&factor));
            }
        }
    }
    flush(&mut total, &mut term, sign);
    total
}

fn nabla_oracle() -> (bool, String) {
    let values = [g(1), g(2), g(-1), g(3), gr(1, 2), Gaussian::i(), Gaussian::from_ints(1, 1), gr(-2, 3), g(5), Gaussian::from_ints(2, -1)];
    let mut failures = Vec::new();
    for v in &values {
        let delta_tuple = [g(1), g(1), g(0), g(0), g(1), v.clone()];
        let gamma_tuple = [g(0), g(1), g(0), v.clone(), g(1), v.mul(&g(1).sub(v))];
        let d_val = eval_polynomial_text(NABLA_TEXT, &delta_tuple);
        let g_val = eval_polynomial_text(NABLA_TEXT, &gamma_tuple);
        let pd = FamilyParamsA6::new(delta_tuple);
        let pg = FamilyParamsA6::new(gamma_tuple);
        if d_val != v.neg() || nabla(&pd) != d_val {
            failures.push(format!("nabla(1,1,0,0,1,{v}) = {d_val}"));
        }
        if !g_val.is_zero() || !nabla(&pg).is_zero() {
            failures.push(format!("nabla(0,1,0,{v},1,..) = {g_val}"));
        }
        let bd = canonical_form_a6(&pd).map(|f| f.branch).unwrap_or_default();
        if bd != "b.2.2.2" {
            failures.push(format!("δ = {v} lands in {bd}"));
        }
        if !v.is_one() {
            let bg = canonical_form_a6(&pg).map(|f| f.branch).unwrap_or_default();
            if bg != "b.2.2.1" {
                failures.push(format!("γ = {v} lands in {bg}"));
            }
        }
    }
    summarize(values.len(), failures, "samples give nabla = -δ (branch b.2.2.2) and nabla = 0 (branch b.2.2.1)")
}

// -------------------------------------------------------------- criterion 9

fn discrepancy_report() -> (bool, String) {
    let p = FamilyParamsA6::from_ints(&Gaussian::zero(), [0, 1, 0, 1, 0, 0]);
    let printed = FamilyParamsA6::from_ints(&Gaussian::zero(), TEO_LISTED_ENTRY5);
    match (canonical_form_a6(&p), canonical_form_a6(&printed)) {
        (Ok(f), Ok(pf)) => {
            let ok = f.branch == "a.1.1.2.2" && f.discrepancy.is_some();
            (ok, format!("branch {}, flagged: {}; printed tuple {printed} classifies as {}", f.branch, f.discrepancy.is_some(), pf.id))
        }
        (Err(e), _) | (_, Err(e)) => (false, e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_text_matches_library() {
        let a = [g(2), g(-1), g(3), Gaussian::i(), g(1), gr(1, 2)];
        assert_eq!(eval_polynomial_text(NABLA_TEXT, &a), nabla(&FamilyParamsA6::new(a.clone())));
        assert_eq!(eval_polynomial_text("2 a1^2 - a2 + 1", &a), g(2 * 4 + 1 + 1));
    }

    #[test]
    fn oracle_transport_agrees_on_identity() {
        let p = FamilyParamsA6::from_ints(&g(0), [1, 2, 0, 1, 3, 1]);
        assert_eq!(transported_params(7, &p, &GeneratorChange::identity(&g(0))), Some(p));
    }
}
