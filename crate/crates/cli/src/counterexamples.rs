//! Fixed counterexample suite: each entry evaluates one named pair and
//! compares both sides of the inequality with the expected integers.

use serde::Serialize;
use weaksub::check::{self, CheckReport};
use weaksub::zoo;
use weaksub::{Mode, Property, SetFunction, Subset, Value};

/// `B` used by the threshold and supermodular-pair fixtures.
const B: i128 = 7;

#[derive(Debug, Serialize)]
pub struct Entry {
    pub name: String,
    pub s: Vec<String>,
    pub t: Vec<String>,
    pub lhs: Value,
    pub rhs: Value,
    pub expected_lhs: Value,
    pub expected_rhs: Value,
    pub reproduced: bool,
    /// Exhaustive weak-submodularity scan of the same function.
    pub scan: CheckReport,
}

fn labels(f: &SetFunction, s: &Subset) -> Vec<String> {
    s.iter().map(|i| f.ground().label(i).to_string()).collect()
}

fn entry(name: &str, f: SetFunction, s: &[usize], t: &[usize], expected: (i128, i128)) -> anyhow::Result<Entry> {
    let s = f.ground().subset(s.iter().copied())?;
    let t = f.ground().subset(t.iter().copied())?;
    let (lhs, rhs) = check::pair_sides(&f, Property::WeaklySubmodular, &s, &t)?;
    let (el, er) = (Value::Int(expected.0), Value::Int(expected.1));
    let reproduced = lhs.identical(el) && rhs.identical(er) && Value::violates_ge(lhs, rhs);
    let scan = check::check_weakly_submodular(&f, Mode::Exhaustive)?;
    Ok(Entry { name: name.into(), s: labels(&f, &s), t: labels(&f, &t), lhs, rhs, expected_lhs: el, expected_rhs: er, reproduced, scan })
}

pub fn run() -> anyhow::Result<Vec<Entry>> {
    let n = 3;
    let star = zoo::max_cut(&zoo::star_counterexample(n))?;
    // S = R ∪ {s}, T = R ∪ {t}
    let nn = n as i128;
    let star_entry = entry("max_cut_star_n3", star, &[0, 1, 2, 3], &[0, 1, 2, 4], (2 * nn * nn + 2 * nn, 2 * nn * nn + 4 * nn))?;
    // |S∖T| = 4, |T∖S| = 4, |S∩T| = 1
    let quartic = zoo::raw_cardinality_profile(9, &[Value::ZERO, Value::ZERO, Value::ZERO, Value::ZERO, Value::Int(1)]);
    let quartic_entry = entry("cardinality_power_4_at_4_4_1", quartic, &[0, 1, 2, 3, 4], &[4, 5, 6, 7, 8], (6250, 6570))?;
    let thr = zoo::threshold(3, 3, Value::Int(B))?;
    let thr_entry = entry("threshold_k3", thr, &[0, 1], &[1, 2], (0, B))?;
    let pair = zoo::supermodular_pair(Value::Int(B))?;
    // {a1, b} and {a2, b}
    let pair_entry = entry("supermodular_pair", pair, &[0, 2], &[1, 2], (0, B))?;
    Ok(vec![star_entry, quartic_entry, thr_entry, pair_entry])
}
