//! Greedy and oblivious local-search maximization, plus brute-force oracles.
//!
//! Every tie is broken towards the smallest element index, so identical
//! inputs always produce identical traces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::SetFunction;
use crate::ground::{k_subsets, Subset};
use crate::matroid::{Matroid, MatroidKind, ENUMERATE_CAP};
use crate::value::Value;

/// Largest ground set the cardinality brute force will enumerate.
pub const BRUTE_FORCE_CAP: usize = 22;

#[derive(Debug, Clone, Serialize)]
pub struct TraceStep {
    pub step: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub added: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub removed: Option<usize>,
    pub value: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub algorithm: &'static str,
    pub params: serde_json::Value,
    /// The run uses no randomness; rerunning reproduces the trace exactly.
    pub deterministic: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub selected: Subset,
    pub value: Value,
    pub iterations: usize,
    pub trace: Vec<TraceStep>,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptResult {
    pub optimum: Subset,
    pub value: Value,
    pub enumerated: u64,
}

fn check_claims(f: &SetFunction) -> Result<()> {
    // claims are positive assertions only; the cheap one is verified here
    if f.claims().normalized && !f.eval(&Subset::empty(f.n())).is_zero() {
        return Err(Error::InvalidArgument("function claims normalization but f(∅) != 0".into()));
    }
    Ok(())
}

/// Standard greedy: `p` rounds, each adding the element of largest marginal
/// gain.
pub fn greedy_cardinality(f: &SetFunction, p: usize) -> Result<SolveResult> {
    let n = f.n();
    if p > n {
        return Err(Error::InvalidArgument(format!("p = {p} exceeds ground set size {n}")));
    }
    check_claims(f)?;
    let mut s = Subset::empty(n);
    let mut current = f.eval(&s);
    let mut trace = vec![TraceStep { step: 0, added: None, removed: None, value: current }];
    for step in 1..=p {
        // f(S) is common to every candidate, so comparing f(S ∪ {u}) ranks
        // marginal gains exactly.
        let mut best: Option<(usize, Value)> = None;
        for u in (0..n).filter(|&u| !s.contains(u)) {
            let v = f.eval(&s.with(u));
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((u, v));
            }
        }
        let (u, v) = best.expect("p <= n leaves a candidate");
        s.insert(u);
        current = v;
        trace.push(TraceStep { step, added: Some(u), removed: None, value: v });
    }
    Ok(SolveResult {
        selected: s,
        value: current,
        iterations: p,
        trace,
        certificate: Certificate { algorithm: "greedy", params: serde_json::json!({ "p": p }), deterministic: true },
    })
}

/// Greedy basis: repeatedly add the feasible element of largest value.
pub fn greedy_basis(f: &SetFunction, m: &Matroid) -> Result<Subset> {
    if f.n() != m.n() {
        return Err(Error::GroundMismatch { ground: f.n(), subset: m.n() });
    }
    let mut s = Subset::empty(m.n());
    while s.len() < m.rank() {
        let mut best: Option<(usize, Value)> = None;
        for u in (0..m.n()).filter(|&u| !s.contains(u)) {
            let t = s.with(u);
            if !m.independent(&t) {
                continue;
            }
            let v = f.eval(&t);
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((u, v));
            }
        }
        match best {
            Some((u, _)) => s.insert(u),
            None => return Err(Error::Internal("no feasible extension below the rank".into())),
        }
    }
    Ok(s)
}

#[derive(Debug, Clone)]
pub struct LocalSearchOptions {
    /// Starting set; extended to a basis if partial. Defaults to the greedy
    /// basis.
    pub init: Option<Subset>,
    /// Accept a swap only if it beats `(1 + epsilon) f(S)`.
    pub epsilon: f64,
    pub max_iters: usize,
}

impl Default for LocalSearchOptions {
    fn default() -> LocalSearchOptions {
        LocalSearchOptions { init: None, epsilon: 0.0, max_iters: 1_000_000 }
    }
}

fn improves(new: Value, old: Value, epsilon: f64) -> bool {
    if epsilon == 0.0 {
        new > old
    } else {
        new.to_f64() > (1.0 + epsilon) * old.to_f64()
    }
}

/// Oblivious single-swap local search over the bases of `m`. Each iteration
/// applies the first improving swap in scan order (`u` ascending outside
/// `S`, then `v` ascending inside `S`) and restarts the scan.
pub fn local_search_matroid(f: &SetFunction, m: &Matroid, opts: &LocalSearchOptions) -> Result<SolveResult> {
    if !m.is_validated() {
        return Err(Error::InvalidMatroid("local search needs a validated matroid".into()));
    }
    if f.n() != m.n() {
        return Err(Error::GroundMismatch { ground: f.n(), subset: m.n() });
    }
    if opts.epsilon.is_nan() || opts.epsilon < 0.0 {
        return Err(Error::InvalidArgument(format!("epsilon = {} must be >= 0", opts.epsilon)));
    }
    check_claims(f)?;
    let mut s = match &opts.init {
        Some(init) => m.extend_to_basis(init)?,
        None => greedy_basis(f, m)?,
    };
    let n = m.n();
    let mut current = f.eval(&s);
    let mut trace = vec![TraceStep { step: 0, added: None, removed: None, value: current }];
    let mut iterations = 0;
    while iterations < opts.max_iters {
        let swap = (0..n).filter(|&u| !s.contains(u)).find_map(|u| {
            s.iter().find_map(|v| {
                let t = s.swap(u, v);
                if !m.independent(&t) {
                    return None;
                }
                let val = f.eval(&t);
                improves(val, current, opts.epsilon).then_some((u, v, t, val))
            })
        });
        let Some((u, v, t, val)) = swap else { break };
        s = t;
        current = val;
        iterations += 1;
        trace.push(TraceStep { step: iterations, added: Some(u), removed: Some(v), value: val });
    }
    Ok(SolveResult {
        selected: s,
        value: current,
        iterations,
        trace,
        certificate: Certificate {
            algorithm: "local_search",
            params: serde_json::json!({
                "rank": m.rank(),
                "epsilon": opts.epsilon,
                "max_iters": opts.max_iters,
                "init": opts.init.as_ref().map(Subset::to_vec),
            }),
            deterministic: true,
        },
    })
}

/// Whether the brute force ranges over `|S| <= p` or exactly `|S| = p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeMode {
    AtMost,
    Exactly,
}

fn best_of(f: &SetFunction, masks: impl Iterator<Item = u64>) -> Option<(u64, Value, u64)> {
    let mut best: Option<(u64, Value)> = None;
    let mut count = 0;
    for mask in masks {
        count += 1;
        let v = f.eval_mask(mask);
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((mask, v));
        }
    }
    best.map(|(m, v)| (m, v, count))
}

/// Exact maximum over sets of size `p` (or at most `p`), by enumeration.
pub fn brute_force_cardinality(f: &SetFunction, p: usize, mode: SizeMode) -> Result<OptResult> {
    let n = f.n();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::CapExceeded { what: "brute force", cap: BRUTE_FORCE_CAP, n });
    }
    if p > n {
        return Err(Error::InvalidArgument(format!("p = {p} exceeds ground set size {n}")));
    }
    let sizes = match mode {
        SizeMode::AtMost => 0..=p,
        SizeMode::Exactly => p..=p,
    };
    let masks = sizes.flat_map(move |k| k_subsets(n, k));
    let (mask, value, enumerated) = best_of(f, masks).expect("at least one feasible set");
    Ok(OptResult { optimum: Subset::from_mask(n, mask), value, enumerated })
}

/// Exact maximum over the bases of `m`.
pub fn brute_force_matroid(f: &SetFunction, m: &Matroid) -> Result<OptResult> {
    let n = m.n();
    if f.n() != n {
        return Err(Error::GroundMismatch { ground: f.n(), subset: n });
    }
    let explicit = matches!(m.kind(), MatroidKind::Explicit { .. });
    if !explicit && n > ENUMERATE_CAP {
        return Err(Error::CapExceeded { what: "brute force", cap: ENUMERATE_CAP, n });
    }
    let bases = k_subsets(n, m.rank()).filter(|&mask| m.independent(&Subset::from_mask(n, mask)));
    let (mask, value, enumerated) = best_of(f, bases).ok_or_else(|| Error::InvalidMatroid("no basis".into()))?;
    Ok(OptResult { optimum: Subset::from_mask(n, mask), value, enumerated })
}

/// `OPT / ALG`; 1 when both are zero, infinite when only `ALG` is.
pub fn empirical_ratio(opt: Value, alg: Value) -> f64 {
    let (o, a) = (opt.to_f64(), alg.to_f64());
    if a == 0.0 {
        if o == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        o / a
    }
}
