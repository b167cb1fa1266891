//! Exhaustive and sampled verifiers for the defining set-function properties.
//!
//! Exhaustive checkers first tabulate `f` on all `2^n` subsets and then scan
//! the pair space in lexicographic bitmask order. The scan is split across
//! the rayon pool by the first set of the pair; the reported witness is
//! always the first violation in scan order, independent of which worker
//! finishes first.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::SetFunction;
use crate::ground::Subset;
use crate::value::Value;
use crate::zoo::CardinalityProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    NormalizedNonnegative,
    Monotone,
    Submodular,
    WeaklySubmodular,
    CardinalityFamily,
    ExchangeAxiom,
}

impl Property {
    pub fn parse(s: &str) -> Option<Property> {
        Some(match s {
            "normalized_nonnegative" | "normalized" | "nonnegative" => Property::NormalizedNonnegative,
            "monotone" => Property::Monotone,
            "submodular" => Property::Submodular,
            "weakly_submodular" => Property::WeaklySubmodular,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Mode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// Largest `n` each exhaustive scan accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Pairwise checks (submodular, weakly submodular): `~4^n / 2` pairs.
    pub pairwise: usize,
    /// Adjacent-pair monotonicity: `n 2^(n-1)` pairs.
    pub monotone: usize,
    /// Normalization and sign: `2^n` evaluations.
    pub sign: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps { pairwise: 12, monotone: 14, sign: 20 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    NotNormalized,
    Negative,
    NotMonotone,
    NotSubmodular,
    NotWeaklySubmodular,
    CardinalityFamily,
    ExchangeAxiom,
}

/// A concrete counterexample. For inequality violations `lhs < rhs` and both
/// sides can be recomputed from the oracle.
#[derive(Debug, Clone, Serialize)]
pub struct ViolationWitness {
    pub kind: ViolationKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Subset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Subset>,
    /// Element added to `s` in a monotonicity violation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<usize>,
    /// `(a, b, c) = (|S∖T|, |T∖S|, |S∩T|)` for cardinality-only checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple: Option<[u64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Value>,
}

impl ViolationWitness {
    fn pair(kind: ViolationKind, s: Subset, t: Subset, lhs: Value, rhs: Value) -> ViolationWitness {
        ViolationWitness { kind, s: Some(s), t: Some(t), element: None, triple: None, lhs: Some(lhs), rhs: Some(rhs) }
    }

    pub(crate) fn sets(kind: ViolationKind, s: Subset, t: Option<Subset>) -> ViolationWitness {
        ViolationWitness { kind, s: Some(s), t, element: None, triple: None, lhs: None, rhs: None }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub property: Property,
    pub mode: Mode,
    pub pairs_checked: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ViolationWitness>,
}

impl CheckReport {
    pub(crate) fn new(property: Property, mode: Mode, pairs_checked: u64, witness: Option<ViolationWitness>) -> CheckReport {
        CheckReport { property, mode, pairs_checked, passed: witness.is_none(), witness }
    }
}

/// Both sides of `f(S) + f(T) >= f(S∪T) + f(S∩T)`.
pub fn submodular_sides(fs: Value, ft: Value, fu: Value, fi: Value) -> (Value, Value) {
    (fs + ft, fu + fi)
}

/// Both sides of `|T| f(S) + |S| f(T) >= |S∩T| f(S∪T) + |S∪T| f(S∩T)`.
#[allow(clippy::too_many_arguments)]
pub fn weak_sides(s_len: usize, t_len: usize, u_len: usize, i_len: usize, fs: Value, ft: Value, fu: Value, fi: Value) -> (Value, Value) {
    (fs.scale(t_len) + ft.scale(s_len), fu.scale(i_len) + fi.scale(u_len))
}

/// Recomputes both sides of a pairwise witness directly from the oracle.
pub fn pair_sides(f: &SetFunction, property: Property, s: &Subset, t: &Subset) -> Result<(Value, Value)> {
    let u = s.union(t);
    let i = s.intersection(t);
    let (fs, ft, fu, fi) = (f.evaluate(s)?, f.evaluate(t)?, f.evaluate(&u)?, f.evaluate(&i)?);
    Ok(match property {
        Property::Submodular => submodular_sides(fs, ft, fu, fi),
        Property::WeaklySubmodular => weak_sides(s.len(), t.len(), u.len(), i.len(), fs, ft, fu, fi),
        other => return Err(Error::InvalidArgument(format!("{other:?} is not a pairwise property"))),
    })
}

/// Draws a subset of `0..n` by an independent fair coin per element.
pub(crate) fn coin_subset(rng: &mut ChaCha8Rng, n: usize) -> Subset {
    let mut s = Subset::empty(n);
    for i in 0..n {
        if rng.gen::<bool>() {
            s.insert(i);
        }
    }
    s
}

/// Property checks with configurable exhaustive caps.
#[derive(Debug, Clone, Copy, Default)]
pub struct Checker {
    pub caps: Caps,
}

impl Checker {
    pub fn new(caps: Caps) -> Checker {
        Checker { caps }
    }

    fn require(&self, what: &'static str, cap: usize, n: usize) -> Result<()> {
        if n > cap {
            return Err(Error::CapExceeded { what, cap, n });
        }
        Ok(())
    }

    pub fn normalized_nonnegative(&self, f: &SetFunction, mode: Mode) -> Result<CheckReport> {
        let n = f.n();
        let property = Property::NormalizedNonnegative;
        let empty = Subset::empty(n);
        let f0 = f.eval(&empty);
        if !f0.is_zero() {
            let w = ViolationWitness {
                lhs: Some(f0),
                rhs: Some(Value::ZERO),
                ..ViolationWitness::sets(ViolationKind::NotNormalized, empty, None)
            };
            return Ok(CheckReport::new(property, mode, 1, Some(w)));
        }
        let negative = |v: Value| Value::violates_ge(v, Value::ZERO);
        let witness_at = |s: Subset, v: Value| ViolationWitness {
            lhs: Some(v),
            rhs: Some(Value::ZERO),
            ..ViolationWitness::sets(ViolationKind::Negative, s, None)
        };
        match mode {
            Mode::Exhaustive => {
                self.require("sign check", self.caps.sign, n)?;
                let total = 1u64 << n;
                let hit = (1..total).into_par_iter().find_first(|&m| negative(f.eval_mask(m)));
                Ok(match hit {
                    Some(m) => {
                        let s = Subset::from_mask(n, m);
                        let v = f.eval(&s);
                        CheckReport::new(property, mode, m + 1, Some(witness_at(s, v)))
                    }
                    None => CheckReport::new(property, mode, total, None),
                })
            }
            Mode::Sampled { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for k in 0..samples {
                    let s = coin_subset(&mut rng, n);
                    let v = f.eval(&s);
                    if negative(v) {
                        return Ok(CheckReport::new(property, mode, k + 2, Some(witness_at(s, v))));
                    }
                }
                Ok(CheckReport::new(property, mode, samples + 1, None))
            }
        }
    }

    /// Checks `f(S ∪ {e}) >= f(S)` on adjacent pairs, which implies
    /// monotonicity on all nested pairs by transitivity.
    pub fn monotone(&self, f: &SetFunction, mode: Mode) -> Result<CheckReport> {
        let n = f.n();
        let property = Property::Monotone;
        let witness = |s: Subset, e: usize, lhs: Value, rhs: Value| ViolationWitness {
            element: Some(e),
            lhs: Some(lhs),
            rhs: Some(rhs),
            ..ViolationWitness::sets(ViolationKind::NotMonotone, s, None)
        };
        match mode {
            Mode::Exhaustive => {
                self.require("monotonicity check", self.caps.monotone, n)?;
                let table = tabulate(f);
                let total = 1u64 << n;
                let first_bad =
                    |m: u64| (0..n).find(|&e| m >> e & 1 == 0 && Value::violates_ge(table[(m | 1 << e) as usize], table[m as usize]));
                let hit = (0..total).into_par_iter().find_map_first(|m| first_bad(m).map(|e| (m, e)));
                Ok(match hit {
                    Some((m, e)) => {
                        let before: u64 = (0..m).map(|a| (n - a.count_ones() as usize) as u64).sum();
                        let rank = (0..e).filter(|&x| m >> x & 1 == 0).count() as u64;
                        let w = witness(Subset::from_mask(n, m), e, table[(m | 1 << e) as usize], table[m as usize]);
                        CheckReport::new(property, mode, before + rank + 1, Some(w))
                    }
                    None => CheckReport::new(property, mode, n as u64 * (total / 2), None),
                })
            }
            Mode::Sampled { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for k in 0..samples {
                    let s = coin_subset(&mut rng, n);
                    let outside: Vec<usize> = (0..n).filter(|&i| !s.contains(i)).collect();
                    if outside.is_empty() {
                        continue;
                    }
                    let e = outside[rng.gen_range(0..outside.len())];
                    let (lo, hi) = (f.eval(&s), f.eval(&s.with(e)));
                    if Value::violates_ge(hi, lo) {
                        return Ok(CheckReport::new(property, mode, k + 1, Some(witness(s, e, hi, lo))));
                    }
                }
                Ok(CheckReport::new(property, mode, samples, None))
            }
        }
    }

    pub fn submodular(&self, f: &SetFunction, mode: Mode) -> Result<CheckReport> {
        self.pairwise(f, mode, Property::Submodular)
    }

    pub fn weakly_submodular(&self, f: &SetFunction, mode: Mode) -> Result<CheckReport> {
        self.pairwise(f, mode, Property::WeaklySubmodular)
    }

    fn pairwise(&self, f: &SetFunction, mode: Mode, property: Property) -> Result<CheckReport> {
        let n = f.n();
        let kind = match property {
            Property::Submodular => ViolationKind::NotSubmodular,
            _ => ViolationKind::NotWeaklySubmodular,
        };
        match mode {
            Mode::Exhaustive => {
                self.require("pairwise check", self.caps.pairwise, n)?;
                let table = tabulate(f);
                let total = 1u64 << n;
                let sides = |a: u64, b: u64| {
                    let (u, i) = (a | b, a & b);
                    let (fs, ft, fu, fi) = (table[a as usize], table[b as usize], table[u as usize], table[i as usize]);
                    match property {
                        Property::Submodular => submodular_sides(fs, ft, fu, fi),
                        _ => weak_sides(
                            a.count_ones() as usize,
                            b.count_ones() as usize,
                            u.count_ones() as usize,
                            i.count_ones() as usize,
                            fs,
                            ft,
                            fu,
                            fi,
                        ),
                    }
                };
                let hit = (0..total).into_par_iter().find_map_first(|a| {
                    (a..total).find_map(|b| {
                        let (lhs, rhs) = sides(a, b);
                        Value::violates_ge(lhs, rhs).then_some((a, b, lhs, rhs))
                    })
                });
                Ok(match hit {
                    Some((a, b, lhs, rhs)) => {
                        // pairs {a', b'} with a' < a, then (a, a..=b)
                        let before = a * total - a * (a.saturating_sub(1)) / 2;
                        let w = ViolationWitness::pair(kind, Subset::from_mask(n, a), Subset::from_mask(n, b), lhs, rhs);
                        CheckReport::new(property, mode, before + (b - a) + 1, Some(w))
                    }
                    None => CheckReport::new(property, mode, total * (total + 1) / 2, None),
                })
            }
            Mode::Sampled { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for k in 0..samples {
                    let s = coin_subset(&mut rng, n);
                    let t = coin_subset(&mut rng, n);
                    let (lhs, rhs) = pair_sides(f, property, &s, &t)?;
                    if Value::violates_ge(lhs, rhs) {
                        return Ok(CheckReport::new(property, mode, k + 1, Some(ViolationWitness::pair(kind, s, t, lhs, rhs))));
                    }
                }
                Ok(CheckReport::new(property, mode, samples, None))
            }
        }
    }
}

/// `f` on every subset, indexed by bitmask.
fn tabulate(f: &SetFunction) -> Vec<Value> {
    let n = f.n();
    (0..1u64 << n).into_par_iter().map(|m| f.eval_mask(m)).collect()
}

pub fn check_normalized_nonnegative(f: &SetFunction, mode: Mode) -> Result<CheckReport> {
    Checker::default().normalized_nonnegative(f, mode)
}

pub fn check_monotone(f: &SetFunction, mode: Mode) -> Result<CheckReport> {
    Checker::default().monotone(f, mode)
}

pub fn check_submodular(f: &SetFunction, mode: Mode) -> Result<CheckReport> {
    Checker::default().submodular(f, mode)
}

pub fn check_weakly_submodular(f: &SetFunction, mode: Mode) -> Result<CheckReport> {
    Checker::default().weakly_submodular(f, mode)
}

/// Both sides of the weak-submodularity inequality for a function of `|S|`
/// alone, with `a = |S∖T|`, `b = |T∖S|`, `c = |S∩T|`:
/// `(b+c) f(a+c) + (a+c) f(b+c) >= c f(a+b+c) + (a+b+c) f(c)`.
pub fn cardinality_family_sides(profile: &CardinalityProfile, a: u64, b: u64, c: u64) -> (Value, Value) {
    let lhs = profile.at(a + c).scale((b + c) as usize) + profile.at(b + c).scale((a + c) as usize);
    let rhs = profile.at(a + b + c).scale(c as usize) + profile.at(c).scale((a + b + c) as usize);
    (lhs, rhs)
}

/// Scans every triple `0 <= a <= a_max`, `0 <= b <= b_max`, `0 <= c <= c_max`
/// (a outermost, c innermost) for a violation.
pub fn check_cardinality_family(profile: &CardinalityProfile, a_max: u64, b_max: u64, c_max: u64) -> Result<CheckReport> {
    if a_max == 0 || b_max == 0 || c_max == 0 {
        return Err(Error::InvalidArgument("cardinality bounds must be >= 1".into()));
    }
    let mut checked = 0u64;
    for a in 0..=a_max {
        for b in 0..=b_max {
            for c in 0..=c_max {
                checked += 1;
                let (lhs, rhs) = cardinality_family_sides(profile, a, b, c);
                if Value::violates_ge(lhs, rhs) {
                    let w = ViolationWitness {
                        kind: ViolationKind::CardinalityFamily,
                        s: None,
                        t: None,
                        element: None,
                        triple: Some([a, b, c]),
                        lhs: Some(lhs),
                        rhs: Some(rhs),
                    };
                    return Ok(CheckReport::new(Property::CardinalityFamily, Mode::Exhaustive, checked, Some(w)));
                }
            }
        }
    }
    Ok(CheckReport::new(Property::CardinalityFamily, Mode::Exhaustive, checked, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::from_fn;
    use crate::zoo;

    #[test]
    fn nonzero_empty_set_is_reported() {
        let f = from_fn(3, true, |s| Value::Int(1 + s.len() as i128));
        let r = check_normalized_nonnegative(&f, Mode::Exhaustive).unwrap();
        assert!(!r.passed);
        let w = r.witness.unwrap();
        assert_eq!(w.kind, ViolationKind::NotNormalized);
        assert!(w.s.unwrap().is_empty());
    }

    #[test]
    fn negative_value_is_reported() {
        let f = from_fn(3, true, |s| Value::Int(if s.to_vec() == [1, 2] { -1 } else { 0 }));
        let r = check_normalized_nonnegative(&f, Mode::Exhaustive).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.kind, ViolationKind::Negative);
        assert_eq!(w.s.unwrap().to_vec(), vec![1, 2]);
        assert_eq!(r.pairs_checked, 7);
    }

    #[test]
    fn caps_are_errors_not_sampling() {
        let f = zoo::cardinality_power(9, 2).unwrap();
        let err = Checker::new(Caps { pairwise: 8, ..Caps::default() }).weakly_submodular(&f, Mode::Exhaustive);
        assert!(matches!(err, Err(Error::CapExceeded { cap: 8, n: 9, .. })));
        assert!(check_monotone(&zoo::cardinality_power(15, 1).unwrap(), Mode::Exhaustive).is_err());
        assert!(check_normalized_nonnegative(&zoo::cardinality_power(21, 1).unwrap(), Mode::Exhaustive).is_err());
    }

    #[test]
    fn pair_counts_on_pass() {
        let f = zoo::linear(&[1, 2, 3].map(Value::from)).unwrap();
        let r = check_submodular(&f, Mode::Exhaustive).unwrap();
        assert!(r.passed);
        assert_eq!(r.pairs_checked, 8 * 9 / 2);
        let r = check_monotone(&f, Mode::Exhaustive).unwrap();
        assert_eq!(r.pairs_checked, 3 * 4);
    }

    #[test]
    fn witness_position_matches_sequential_scan() {
        // unit dispersion on 4 points: first failing pair in scan order
        let f = zoo::metric_dispersion(&zoo::DistanceMatrix::unit(4)).unwrap();
        let r = check_submodular(&f, Mode::Exhaustive).unwrap();
        let total = 16u64;
        let mut pos = 0;
        let mut expected = None;
        'outer: for a in 0..total {
            for b in a..total {
                pos += 1;
                let s = Subset::from_mask(4, a);
                let t = Subset::from_mask(4, b);
                let (l, r) = pair_sides(&f, Property::Submodular, &s, &t).unwrap();
                if l < r {
                    expected = Some((a, b, pos));
                    break 'outer;
                }
            }
        }
        let (a, b, pos) = expected.unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.s.unwrap().to_mask(), Some(a));
        assert_eq!(w.t.unwrap().to_mask(), Some(b));
        assert_eq!(r.pairs_checked, pos);
    }

    #[test]
    fn sampled_is_reproducible() {
        let f = zoo::max_cut(&zoo::star_counterexample(3)).unwrap();
        let mode = Mode::Sampled { samples: 5000, seed: 42 };
        let a = check_weakly_submodular(&f, mode).unwrap();
        let b = check_weakly_submodular(&f, mode).unwrap();
        assert!(!a.passed);
        assert_eq!(a.pairs_checked, b.pairs_checked);
        assert_eq!(a.witness.unwrap().s, b.witness.unwrap().s);
    }

    #[test]
    fn cardinality_bounds_must_be_positive() {
        let p = zoo::CardinalityProfile::power(2);
        assert!(check_cardinality_family(&p, 0, 3, 3).is_err());
    }
}
