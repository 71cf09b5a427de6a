//! Completion searches over prime fields for forbidden Jordan shapes and
//! gradation scenarios.
//!
//! A scenario fixes left multiplication by `e1` in adapted form (each Jordan
//! block of `L_{e1}` is a chain `e1·v_j = v_{j+1}`, the first block being the
//! powers of `e1` itself) and, for the gradation scenarios, a degree for every
//! basis vector. The remaining structure constants are unknowns over `F_p`;
//! a product of degree-`a` and degree-`b` vectors may only have coefficients
//! on degree-`a+b` vectors. The search assigns unknowns depth-first, solving
//! associativity identities that became linear in a single unknown before
//! branching, and rejects partial tables whose degree-`d` component is not
//! spanned by `A_1·A_{d−1}`.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::scalar::{is_prime, Field, Fp, Gaussian, Scalar};

/// Fixed verdict wording for scenarios with no completion over any tested prime.
pub const REFUTED_AT_DESK_SCALE: &str = "refuted at desk scale";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NonexistenceError {
    #[error("invalid scenario `{0}`")]
    BadScenario(String),
    #[error("dimension {n} does not fit scenario {scenario}")]
    DimensionMismatch { n: usize, scenario: String },
    #[error("{p} is not a usable prime")]
    BadPrime { p: u64 },
    #[error("coefficient {value} does not reduce modulo {p}")]
    NotReducible { value: String, p: u64 },
    #[error("search budget of {tried} nodes exhausted; no conclusion")]
    BudgetExhausted { tried: u64 },
}

/// What is prescribed besides the adapted form of `L_{e1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scenario {
    /// Ordered Jordan block sizes of `L_{e1}`; no gradation is imposed.
    Shape(Vec<usize>),
    /// Characteristic sequence (n−3, 2, 1) with `e_{n−2}` in degree `r1`,
    /// `e_{n−1}` in degree `r1 + 1` and `e_n` in degree `r2`.
    Degrees { r1: usize, r2: usize },
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scenario::Shape(s) => {
                let parts: Vec<String> = s.iter().map(ToString::to_string).collect();
                write!(f, "shape:{}", parts.join(","))
            }
            Scenario::Degrees { r1, r2 } => write!(f, "r:{r1},{r2}"),
        }
    }
}

impl FromStr for Scenario {
    type Err = NonexistenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NonexistenceError::BadScenario(s.to_string());
        let (kind, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = rest
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if nums.contains(&0) {
            return Err(bad());
        }
        match (kind.trim(), nums.as_slice()) {
            ("shape", [_, ..]) => Ok(Scenario::Shape(nums)),
            ("r", [r1, r2]) => Ok(Scenario::Degrees { r1: *r1, r2: *r2 }),
            _ => Err(bad()),
        }
    }
}

/// The product `e_i·e_j` (0-based) restricted to the basis vectors in `span`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnknownProduct {
    pub i: usize,
    pub j: usize,
    pub span: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CompletionProblem {
    pub n: usize,
    pub scenario: Scenario,
    /// Ordered Jordan block sizes of `L_{e1}`.
    pub shape: Vec<usize>,
    /// Degree of each basis vector, when a gradation is imposed.
    pub degrees: Option<Vec<usize>>,
    /// Fixed products `e1·e_j` as (j, target) with target `None` for zero.
    pub known: Vec<(usize, Option<usize>)>,
    pub unknowns: Vec<UnknownProduct>,
    pub p: u64,
}

impl CompletionProblem {
    pub fn new(n: usize, scenario: Scenario, p: u64) -> Result<Self, NonexistenceError> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(NonexistenceError::BadPrime { p });
        }
        let mismatch = || NonexistenceError::DimensionMismatch { n, scenario: scenario.to_string() };
        let (shape, degrees) = match &scenario {
            Scenario::Shape(s) => {
                if s.iter().sum::<usize>() != n || s[0] < 2 {
                    return Err(mismatch());
                }
                (s.clone(), None)
            }
            Scenario::Degrees { r1, r2 } => {
                if n < 6 {
                    return Err(mismatch());
                }
                let mut d: Vec<usize> = (1..=n - 3).collect();
                d.extend([*r1, r1 + 1, *r2]);
                (vec![n - 3, 2, 1], Some(d))
            }
        };
        let mut known = Vec::with_capacity(n);
        let mut start = 0;
        for &len in &shape {
            for t in 0..len {
                let target = (t + 1 < len).then_some(start + t + 1);
                known.push((start + t, target));
            }
            start += len;
        }
        let mut unknowns = Vec::new();
        for i in 1..n {
            for j in 0..n {
                let span: Vec<usize> = match &degrees {
                    Some(d) => (0..n).filter(|&m| d[m] == d[i] + d[j]).collect(),
                    None => (0..n).collect(),
                };
                if !span.is_empty() {
                    unknowns.push(UnknownProduct { i, j, span });
                }
            }
        }
        Ok(CompletionProblem { n, scenario, shape, degrees, known, unknowns, p })
    }

    pub fn unknown_count(&self) -> usize {
        self.unknowns.iter().map(|u| u.span.len()).sum()
    }

    /// Whether `a` is a completion of this problem: the fixed products and
    /// spans are respected, `a` is associative and, under a gradation, each
    /// degree component is generated from degree one.
    pub fn accepts(&self, a: &Algebra<Fp>) -> bool {
        if a.dim() != self.n || a.proto().modulus() != self.p {
            return false;
        }
        for &(j, target) in &self.known {
            for m in 0..self.n {
                let want = u64::from(target == Some(m));
                if a.coeff(0, j, m).value() != want {
                    return false;
                }
            }
        }
        for i in 1..self.n {
            for j in 0..self.n {
                let allowed = self.unknowns.iter().find(|u| u.i == i && u.j == j).map(|u| u.span.as_slice());
                for (m, c) in a.product(i, j) {
                    if !c.is_zero() && !allowed.is_some_and(|s| s.contains(m)) {
                        return false;
                    }
                }
            }
        }
        if !a.is_associative() {
            return false;
        }
        let Some(deg) = &self.degrees else { return true };
        let table = |i: usize, j: usize, m: usize| a.coeff(i, j, m).value();
        generation_holds(deg, self.p, &table, &mut |_, _, _| true)
    }
}

/// `A_d = A_1·A_{d−1}` for every degree `d ≥ 2`, checked on the degrees whose
/// generating products are all available through `ready`.
fn generation_holds(
    deg: &[usize],
    p: u64,
    coeff: &dyn Fn(usize, usize, usize) -> u64,
    ready: &mut dyn FnMut(usize, usize, usize) -> bool,
) -> bool {
    let top = deg.iter().copied().max().unwrap_or(0);
    for d in 2..=top {
        let target: Vec<usize> = (0..deg.len()).filter(|&m| deg[m] == d).collect();
        if target.is_empty() {
            continue;
        }
        let mut rows = Vec::new();
        let mut complete = true;
        'outer: for a in (0..deg.len()).filter(|&a| deg[a] == 1) {
            for b in (0..deg.len()).filter(|&b| deg[b] == d - 1) {
                if !target.iter().all(|&m| ready(a, b, m)) {
                    complete = false;
                    break 'outer;
                }
                rows.push(target.iter().map(|&m| coeff(a, b, m)).collect::<Vec<_>>());
            }
        }
        if complete && rank_mod_p(rows, p) < target.len() {
            return false;
        }
    }
    true
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % p;
                for k in c..cols {
                    rows[r][k] = (rows[r][k] + p - f * rows[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    /// Maximum number of search nodes before giving up.
    pub node_budget: u64,
    /// Stop after this many completions have been collected.
    pub max_solutions: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { node_budget: 50_000_000, max_solutions: 8 }
    }
}

#[derive(Clone, Debug)]
pub struct CompletionReport {
    pub scenario: Scenario,
    pub p: u64,
    pub solutions: Vec<Algebra<Fp>>,
    /// True when the search stopped at `max_solutions`, so more may exist.
    pub truncated: bool,
    pub nodes: u64,
}

impl CompletionReport {
    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Entry {
    Zero,
    One,
    Var(usize),
}

struct Compiled {
    n: usize,
    p: u64,
    /// c[(i·n + j)·n + m]
    table: Vec<Entry>,
    equations: Vec<Vec<(bool, Entry, Entry)>>,
    by_var: Vec<Vec<usize>>,
    var_count: usize,
    order: Vec<usize>,
    degrees: Option<Vec<usize>>,
}

impl Compiled {
    fn new(prob: &CompletionProblem) -> Self {
        let n = prob.n;
        let mut table = vec![Entry::Zero; n * n * n];
        for &(j, target) in &prob.known {
            if let Some(m) = target {
                table[j * n + m] = Entry::One;
            }
        }
        let mut keys = Vec::new();
        for u in &prob.unknowns {
            for &m in &u.span {
                let target_deg = prob.degrees.as_ref().map_or(0, |d| d[m]);
                keys.push((target_deg, u.i, u.j, m));
            }
        }
        keys.sort_unstable();
        for (v, &(_, i, j, m)) in keys.iter().enumerate() {
            table[(i * n + j) * n + m] = Entry::Var(v);
        }
        let var_count = keys.len();
        let at = |i: usize, j: usize, m: usize| table[(i * n + j) * n + m];
        let mut equations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let mut terms = Vec::new();
                        for l in 0..n {
                            let (a, b) = (at(i, j, l), at(l, k, m));
                            if a != Entry::Zero && b != Entry::Zero {
                                terms.push((true, a, b));
                            }
                            let (a, b) = (at(j, k, l), at(i, l, m));
                            if a != Entry::Zero && b != Entry::Zero {
                                terms.push((false, a, b));
                            }
                        }
                        if !terms.is_empty() {
                            equations.push(terms);
                        }
                    }
                }
            }
        }
        let mut by_var = vec![Vec::new(); var_count];
        for (e, terms) in equations.iter().enumerate() {
            for (_, a, b) in terms {
                for x in [a, b] {
                    if let Entry::Var(v) = x {
                        if by_var[*v].last() != Some(&e) {
                            by_var[*v].push(e);
                        }
                    }
                }
            }
        }
        Compiled { n, p: prob.p, table, equations, by_var, var_count, order: (0..var_count).collect(), degrees: prob.degrees.clone() }
    }
}

/// Outcome of evaluating one equation under a partial assignment.
enum Eval {
    Holds,
    Conflict,
    /// Exactly one unknown, occurring linearly: value to assign.
    Forces(usize, u64),
    Open,
}

struct State<'a> {
    c: &'a Compiled,
    values: Vec<Option<u64>>,
    trail: Vec<usize>,
    nodes: u64,
    budget: u64,
    max_solutions: usize,
    solutions: Vec<Vec<u64>>,
    exhausted: bool,
}

impl<'a> State<'a> {
    fn value(&self, e: Entry) -> Option<u64> {
        match e {
            Entry::Zero => Some(0),
            Entry::One => Some(1),
            Entry::Var(v) => self.values[v],
        }
    }

    fn eval(&self, eq: &[(bool, Entry, Entry)]) -> Eval {
        let p = self.c.p;
        let mut constant = 0u64;
        let mut var: Option<(usize, u64)> = None;
        for &(plus, a, b) in eq {
            let (va, vb) = (self.value(a), self.value(b));
            let (coef, v) = match (va, vb) {
                (Some(x), Some(y)) => {
                    let t = x * y % p;
                    constant = if plus { (constant + t) % p } else { (constant + p - t) % p };
                    continue;
                }
                (Some(x), None) => (x, b),
                (None, Some(y)) => (y, a),
                (None, None) => return Eval::Open,
            };
            if coef == 0 {
                continue;
            }
            let Entry::Var(v) = v else { unreachable!() };
            let coef = if plus { coef } else { p - coef };
            match &mut var {
                None => var = Some((v, coef)),
                Some((w, acc)) if *w == v => *acc = (*acc + coef) % p,
                Some(_) => return Eval::Open,
            }
        }
        match var {
            Some((v, a)) if a != 0 => Eval::Forces(v, (p - constant) % p * inv_mod(a, p) % p),
            _ if constant == 0 => Eval::Holds,
            _ => Eval::Conflict,
        }
    }

    fn assign(&mut self, v: usize, x: u64) {
        self.values[v] = Some(x);
        self.trail.push(v);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.values[v] = None;
        }
    }

    /// Solves single-unknown linear identities to a fixed point.
    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(e) = queue.pop() {
            match self.eval(&self.c.equations[e]) {
                Eval::Conflict => return false,
                Eval::Forces(v, x) => {
                    self.assign(v, x);
                    queue.extend(self.c.by_var[v].iter().copied());
                }
                Eval::Holds | Eval::Open => {}
            }
        }
        true
    }

    fn generation_ok(&self) -> bool {
        let Some(deg) = &self.c.degrees else { return true };
        let n = self.c.n;
        let coeff = |i: usize, j: usize, m: usize| self.value(self.c.table[(i * n + j) * n + m]).unwrap_or(0);
        let mut ready = |i: usize, j: usize, m: usize| self.value(self.c.table[(i * n + j) * n + m]).is_some();
        generation_holds(deg, self.c.p, &coeff, &mut ready)
    }

    fn dfs(&mut self) {
        if self.exhausted || self.solutions.len() >= self.max_solutions {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if !self.generation_ok() {
            return;
        }
        let Some(&v) = self.c.order.iter().find(|&&v| self.values[v].is_none()) else {
            let all_hold = self.c.equations.iter().all(|eq| matches!(self.eval(eq), Eval::Holds));
            if all_hold {
                self.solutions.push(self.values.iter().map(|x| x.unwrap()).collect());
            }
            return;
        };
        for x in 0..self.c.p {
            let mark = self.trail.len();
            self.assign(v, x);
            if self.propagate(self.c.by_var[v].clone()) {
                self.dfs();
            }
            self.undo(mark);
            if self.exhausted || self.solutions.len() >= self.max_solutions {
                return;
            }
        }
    }
}

/// Enumerates completions of `prob`, in lexicographic order of the unknowns,
/// up to `cfg.max_solutions`. An empty result with `truncated == false` means
/// no completion exists over `F_p`.
pub fn search_completion(prob: &CompletionProblem, cfg: &SearchConfig) -> Result<CompletionReport, NonexistenceError> {
    let compiled = Compiled::new(prob);
    let mut root = State {
        c: &compiled,
        values: vec![None; compiled.var_count],
        trail: Vec::new(),
        nodes: 1,
        budget: cfg.node_budget,
        max_solutions: cfg.max_solutions,
        solutions: Vec::new(),
        exhausted: false,
    };
    let report = |solutions: Vec<Vec<u64>>, truncated: bool, nodes: u64| CompletionReport {
        scenario: prob.scenario.clone(),
        p: prob.p,
        solutions: solutions.iter().map(|s| to_algebra(&compiled, s)).collect(),
        truncated,
        nodes,
    };
    if !root.propagate((0..compiled.equations.len()).collect()) || !root.generation_ok() {
        return Ok(report(Vec::new(), false, 1));
    }
    let Some(&first) = compiled.order.iter().find(|&&v| root.values[v].is_none()) else {
        root.nodes -= 1;
        root.dfs();
        return Ok(report(root.solutions, false, 1));
    };
    let base = root.values.clone();
    let spent = AtomicU64::new(1);
    let share = (cfg.node_budget / compiled.p).max(1);
    let branches: Vec<(Vec<Vec<u64>>, bool, bool)> = (0..compiled.p)
        .into_par_iter()
        .map(|x| {
            let mut st = State {
                c: &compiled,
                values: base.clone(),
                trail: Vec::new(),
                nodes: 0,
                budget: share,
                max_solutions: cfg.max_solutions,
                solutions: Vec::new(),
                exhausted: false,
            };
            st.assign(first, x);
            if st.propagate(compiled.by_var[first].clone()) {
                st.dfs();
            }
            spent.fetch_add(st.nodes, Ordering::Relaxed);
            let full = st.solutions.len() >= cfg.max_solutions;
            (st.solutions, st.exhausted, full)
        })
        .collect();
    let nodes = spent.load(Ordering::Relaxed);
    let mut solutions = Vec::new();
    let mut truncated = false;
    for (sols, exhausted, full) in branches {
        if solutions.len() >= cfg.max_solutions {
            truncated = true;
            break;
        }
        if exhausted {
            return Err(NonexistenceError::BudgetExhausted { tried: nodes });
        }
        truncated |= full;
        solutions.extend(sols);
    }
    if solutions.len() > cfg.max_solutions {
        solutions.truncate(cfg.max_solutions);
        truncated = true;
    }
    Ok(report(solutions, truncated, nodes))
}

fn to_algebra(c: &Compiled, values: &[u64]) -> Algebra<Fp> {
    let n = c.n;
    let proto = Fp::new(0, c.p);
    let mut a = Algebra::zero_algebra(n, &proto);
    for i in 0..n {
        for j in 0..n {
            let coeffs: Vec<(usize, Fp)> = (0..n)
                .filter_map(|m| {
                    let v = match c.table[(i * n + j) * n + m] {
                        Entry::Zero => 0,
                        Entry::One => 1,
                        Entry::Var(v) => values[v],
                    };
                    (v != 0).then(|| (m, Fp::from_u64(v, c.p)))
                })
                .collect();
            a.set_product(i, j, coeffs).expect("indices in range");
        }
    }
    a
}

/// Outcome across several primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// No completion over at least two distinct primes. Evidence, not a proof over ℂ.
    RefutedAtDeskScale,
    /// No completion, but only one prime was tried.
    NoCompletionOverOnePrime,
    /// Some prime admits a completion.
    CompletionsExist,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::RefutedAtDeskScale => f.write_str(REFUTED_AT_DESK_SCALE),
            Verdict::NoCompletionOverOnePrime => f.write_str("no completion over a single prime"),
            Verdict::CompletionsExist => f.write_str("completions exist"),
        }
    }
}

pub fn verdict(reports: &[CompletionReport]) -> Verdict {
    if reports.iter().any(|r| !r.is_empty()) {
        return Verdict::CompletionsExist;
    }
    let mut primes: Vec<u64> = reports.iter().map(|r| r.p).collect();
    primes.sort_unstable();
    primes.dedup();
    if primes.len() >= 2 {
        Verdict::RefutedAtDeskScale
    } else {
        Verdict::NoCompletionOverOnePrime
    }
}

/// Coefficient-wise reduction of an exact algebra modulo `p`.
///
/// Fails when a denominator is divisible by `p` or when `i` is needed and
/// `p ≢ 1 (mod 4)`. Only rational and Gaussian-rational tables reduce.
pub fn reduce_mod_p(a: &Algebra<Scalar>, p: u64) -> Result<Algebra<Fp>, NonexistenceError> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(NonexistenceError::BadPrime { p });
    }
    a.map_scalars(&Fp::new(0, p), |s| {
        let not_reducible = || NonexistenceError::NotReducible { value: s.to_string(), p };
        let g = s.to_gaussian().ok_or_else(not_reducible)?;
        reduce_gaussian_checked(&g, p).ok_or_else(not_reducible)
    })
}

/// Same as [`reduce_mod_p`] for an algebra already over ℚ(i).
pub fn reduce_gaussian_algebra(a: &Algebra<Gaussian>, p: u64) -> Result<Algebra<Fp>, NonexistenceError> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(NonexistenceError::BadPrime { p });
    }
    a.map_scalars(&Fp::new(0, p), |g| {
        reduce_gaussian_checked(g, p).ok_or_else(|| NonexistenceError::NotReducible { value: g.to_string(), p })
    })
}

fn reduce_gaussian_checked(g: &Gaussian, p: u64) -> Option<Fp> {
    let pb = BigInt::from(p);
    let denominators_ok = [&g.re, &g.im].iter().all(|q| !q.denom().mod_floor(&pb).to_u64().is_some_and(|d| d == 0));
    if !denominators_ok {
        return None;
    }
    crate::scalar::reduce_gaussian(g, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family_a6, family_b4, FamilyParamsA6, FamilyParamsB4};

    fn run(n: usize, s: &str, p: u64) -> CompletionReport {
        let prob = CompletionProblem::new(n, s.parse().unwrap(), p).unwrap();
        search_completion(&prob, &SearchConfig::default()).unwrap()
    }

    #[test]
    fn scenario_round_trip() {
        for s in ["shape:2,4,1", "r:1,3", "r:2,1"] {
            assert_eq!(s.parse::<Scenario>().unwrap().to_string(), s);
        }
        assert!("r:1".parse::<Scenario>().is_err());
        assert!("shape:".parse::<Scenario>().is_err());
        assert!("r:0,1".parse::<Scenario>().is_err());
    }

    #[test]
    fn long_second_block_has_no_completion() {
        assert!(run(7, "shape:2,4,1", 5).is_empty());
    }

    #[test]
    fn forbidden_degree_scenarios_have_no_completion() {
        for s in ["r:1,3", "r:2,1"] {
            for p in [5, 13] {
                let rep = run(7, s, p);
                eprintln!("{s} F_{p}: {} solutions, {} nodes", rep.solutions.len(), rep.nodes);
                assert!(rep.is_empty() && !rep.truncated, "{s} over F_{p}");
            }
        }
    }

    #[test]
    fn verdict_needs_two_primes() {
        let five = run(7, "r:1,3", 5);
        assert_eq!(verdict(&[five.clone(), five.clone()]), Verdict::NoCompletionOverOnePrime);
        let both = [five, run(7, "r:1,3", 13)];
        assert_eq!(verdict(&both).to_string(), REFUTED_AT_DESK_SCALE);
        assert_eq!(verdict(&[run(7, "r:1,1", 5)]), Verdict::CompletionsExist);
    }

    #[test]
    fn existing_scenarios_have_completions() {
        for s in ["r:1,1", "r:1,2"] {
            let rep = run(7, s, 5);
            assert!(!rep.is_empty(), "{s}");
            let prob = CompletionProblem::new(7, s.parse().unwrap(), 5).unwrap();
            for a in &rep.solutions {
                assert!(prob.accepts(a));
            }
        }
    }

    #[test]
    fn family_reductions_are_completions() {
        let g = Gaussian::zero();
        let a6 = family_a6(7, &FamilyParamsA6::from_ints(&g, [1, 1, 0, 0, 1, 2])).unwrap();
        let a6 = reduce_gaussian_algebra(&a6, 5).unwrap();
        assert!(CompletionProblem::new(7, Scenario::Degrees { r1: 1, r2: 1 }, 5).unwrap().accepts(&a6));
        let b4 = family_b4(7, &FamilyParamsB4::from_ints(&g, [0, 1, 0, 0])).unwrap();
        let b4 = reduce_gaussian_algebra(&b4, 5).unwrap();
        assert!(CompletionProblem::new(7, Scenario::Degrees { r1: 1, r2: 2 }, 5).unwrap().accepts(&b4));
        assert!(!CompletionProblem::new(7, Scenario::Degrees { r1: 1, r2: 1 }, 5).unwrap().accepts(&b4));
    }

    #[test]
    fn reduction_rejects_bad_denominators() {
        let mut a = Algebra::zero_algebra(2, &Gaussian::zero());
        a.set_product(0, 0, vec![(1, Gaussian::from_rational(crate::scalar::rat(1, 5)))]).unwrap();
        assert!(reduce_gaussian_algebra(&a, 5).is_err());
        assert!(reduce_gaussian_algebra(&a, 7).is_ok());
        let mut b = Algebra::zero_algebra(2, &Gaussian::zero());
        b.set_product(0, 0, vec![(1, Gaussian::i())]).unwrap();
        assert!(reduce_gaussian_algebra(&b, 7).is_err());
        assert_eq!(reduce_gaussian_algebra(&b, 13).unwrap().coeff(0, 0, 1).value(), 5);
    }
}
