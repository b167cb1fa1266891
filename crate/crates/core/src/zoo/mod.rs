//! Builders for the function families inside and outside the weakly
//! submodular class, and the welfare-to-partition-matroid reduction.

pub mod random;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::function::{Claims, Oracle, SetFunction};
use crate::ground::{GroundSet, Subset};
use crate::matroid::Matroid;
use crate::value::Value;

fn all_exact(vals: &[Value]) -> bool {
    vals.iter().all(|v| v.is_exact())
}

fn require_nonneg(vals: &[Value], what: &str) -> Result<()> {
    match vals.iter().position(|v| v.to_f64().is_nan() || v.to_f64() < 0.0) {
        Some(i) => Err(Error::InvalidArgument(format!("{what}[{i}] = {} is negative", vals[i]))),
        None => Ok(()),
    }
}

// ---------------------------------------------------------------- linear

#[derive(Debug)]
struct Linear {
    weights: Vec<Value>,
    exact: bool,
}

impl Oracle for Linear {
    fn eval(&self, s: &Subset) -> Value {
        s.iter().map(|i| self.weights[i]).sum()
    }

    fn exact(&self) -> bool {
        self.exact
    }
}

/// `f(S) = Σ_{e∈S} w_e` with non-negative weights.
pub fn linear(weights: &[Value]) -> Result<SetFunction> {
    require_nonneg(weights, "weight")?;
    let oracle = Linear { weights: weights.to_vec(), exact: all_exact(weights) };
    let claims = Claims::MONOTONE.submodular().weakly_submodular();
    Ok(SetFunction::new(GroundSet::indexed(weights.len()), oracle, claims, "linear"))
}

// ---------------------------------------------------------------- coverage

#[derive(Debug)]
struct Coverage {
    covers: Vec<Vec<usize>>,
    item_weights: Vec<Value>,
    exact: bool,
}

impl Oracle for Coverage {
    fn eval(&self, s: &Subset) -> Value {
        let mut covered = Subset::empty(self.item_weights.len());
        for e in s.iter() {
            for &item in &self.covers[e] {
                covered.insert(item);
            }
        }
        covered.iter().map(|i| self.item_weights[i]).sum()
    }

    fn exact(&self) -> bool {
        self.exact
    }
}

/// Weighted coverage: ground element `e` covers the items `covers[e]`, and
/// `f(S)` is the total weight of items covered by `S`.
pub fn coverage(covers: Vec<Vec<usize>>, item_weights: &[Value]) -> Result<SetFunction> {
    require_nonneg(item_weights, "item weight")?;
    let m = item_weights.len();
    for (e, items) in covers.iter().enumerate() {
        if let Some(&bad) = items.iter().find(|&&i| i >= m) {
            return Err(Error::InvalidArgument(format!("element {e} covers item {bad}, but only {m} items exist")));
        }
    }
    let n = covers.len();
    let oracle = Coverage { covers, item_weights: item_weights.to_vec(), exact: all_exact(item_weights) };
    let claims = Claims::MONOTONE.submodular().weakly_submodular();
    Ok(SetFunction::new(GroundSet::indexed(n), oracle, claims, "coverage"))
}

// ---------------------------------------------------------------- dispersion

/// Symmetric non-negative distances with zero diagonal satisfying the
/// triangle inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Value>,
}

impl DistanceMatrix {
    pub fn new(rows: Vec<Vec<Value>>) -> Result<DistanceMatrix> {
        let n = rows.len();
        if let Some(r) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidMetric(format!("row {r} has {} entries, expected {n}", rows[r].len())));
        }
        let d: Vec<Value> = rows.into_iter().flatten().collect();
        let m = DistanceMatrix { n, d };
        m.validate()?;
        Ok(m)
    }

    /// All off-diagonal distances equal to 1.
    pub fn unit(n: usize) -> DistanceMatrix {
        let d = (0..n * n).map(|k| Value::Int((k / n != k % n) as i128)).collect();
        DistanceMatrix { n, d }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for u in 0..n {
            if !self.get(u, u).is_zero() {
                return Err(Error::InvalidMetric(format!("d({u},{u}) = {} is not zero", self.get(u, u))));
            }
            for v in 0..n {
                let duv = self.get(u, v);
                if duv.to_f64().is_nan() || duv.to_f64() < 0.0 {
                    return Err(Error::InvalidMetric(format!("d({u},{v}) = {duv} is negative")));
                }
                if !duv.identical(self.get(v, u)) && duv != self.get(v, u) {
                    return Err(Error::InvalidMetric(format!("d({u},{v}) != d({v},{u})")));
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if Value::violates_ge(self.get(u, v) + self.get(v, w), self.get(u, w)) {
                        return Err(Error::InvalidMetric(format!("triangle inequality fails for ({u},{v},{w})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, u: usize, v: usize) -> Value {
        self.d[u * self.n + v]
    }

    pub fn is_exact(&self) -> bool {
        all_exact(&self.d)
    }

    /// `d(S) = Σ_{{u,v} ⊆ S} d(u,v)`.
    pub fn within(&self, s: &Subset) -> Value {
        let pts = s.to_vec();
        let mut total = Value::ZERO;
        for (k, &u) in pts.iter().enumerate() {
            for &v in &pts[k + 1..] {
                total = total + self.get(u, v);
            }
        }
        total
    }
}

#[derive(Debug)]
struct Dispersion {
    metric: DistanceMatrix,
}

impl Oracle for Dispersion {
    fn eval(&self, s: &Subset) -> Value {
        self.metric.within(s)
    }

    fn exact(&self) -> bool {
        self.metric.is_exact()
    }
}

/// Sum of pairwise distances inside the set.
pub fn metric_dispersion(metric: &DistanceMatrix) -> Result<SetFunction> {
    metric.validate()?;
    let oracle = Dispersion { metric: metric.clone() };
    Ok(SetFunction::new(GroundSet::indexed(metric.len()), oracle, Claims::MONOTONE.weakly_submodular(), "dispersion"))
}

/// `d(S, T) = Σ_{u∈S, v∈T} d(u,v)` for disjoint `S`, `T`.
pub fn cross_dispersion(metric: &DistanceMatrix, s: &Subset, t: &Subset) -> Result<Value> {
    for x in [s, t] {
        if x.universe() != metric.len() {
            return Err(Error::GroundMismatch { ground: metric.len(), subset: x.universe() });
        }
    }
    if !s.is_disjoint(t) {
        return Err(Error::InvalidArgument("cross dispersion needs disjoint sets".into()));
    }
    Ok(s.iter().flat_map(|u| t.iter().map(move |v| metric.get(u, v))).sum())
}

// ---------------------------------------------------------------- segmentation

/// Rows are ground elements (items), columns are individuals. Every row sums
/// to a non-negative value.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentationMatrix {
    rows: Vec<Vec<Value>>,
}

impl SegmentationMatrix {
    pub fn new(rows: Vec<Vec<Value>>) -> Result<SegmentationMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::InvalidMatrix(format!("row {i} has {} columns, expected {cols}", r.len())));
            }
            let sum: Value = r.iter().copied().sum();
            if Value::violates_ge(sum, Value::ZERO) || sum.to_f64().is_nan() {
                return Err(Error::InvalidMatrix(format!("row {i} sums to {sum} < 0")));
            }
        }
        Ok(SegmentationMatrix { rows })
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> Value {
        self.rows[i][j]
    }
}

#[derive(Debug)]
struct Segmentation {
    m: SegmentationMatrix,
    exact: bool,
}

impl Oracle for Segmentation {
    fn eval(&self, s: &Subset) -> Value {
        if s.is_empty() {
            return Value::ZERO;
        }
        (0..self.m.cols()).map(|j| s.iter().map(|i| self.m.get(i, j)).reduce(|a, b| if b > a { b } else { a }).unwrap_or(Value::ZERO)).sum()
    }

    fn exact(&self) -> bool {
        self.exact
    }
}

/// `σ(S) = Σ_j max_{i∈S} M_ij`, with `σ(∅) = 0`.
pub fn segmentation(m: &SegmentationMatrix) -> Result<SetFunction> {
    let m = SegmentationMatrix::new(m.rows.clone())?;
    let exact = m.rows.iter().all(|r| all_exact(r));
    let n = m.rows();
    Ok(SetFunction::new(GroundSet::indexed(n), Segmentation { m, exact }, Claims::MONOTONE.weakly_submodular(), "segmentation"))
}

// ---------------------------------------------------------------- cardinality

/// A function of `|S|` alone: `p(k) = Σ_d c_d k^d` for `k >= 1`, `p(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CardinalityProfile {
    coeffs: Vec<Value>,
}

impl CardinalityProfile {
    pub fn new(coeffs: Vec<Value>) -> CardinalityProfile {
        CardinalityProfile { coeffs }
    }

    /// `k ↦ k^d`, with `|∅|^0` read as 0 so the profile stays normalized.
    pub fn power(d: usize) -> CardinalityProfile {
        let mut coeffs = vec![Value::ZERO; d + 1];
        coeffs[d] = Value::Int(1);
        CardinalityProfile { coeffs }
    }

    pub fn coeffs(&self) -> &[Value] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn at(&self, k: u64) -> Value {
        if k == 0 {
            return Value::ZERO;
        }
        let k = Value::Int(k as i128);
        self.coeffs.iter().rev().fold(Value::ZERO, |acc, &c| acc * k + c)
    }
}

#[derive(Debug)]
struct Cardinality {
    profile: CardinalityProfile,
}

impl Oracle for Cardinality {
    fn eval(&self, s: &Subset) -> Value {
        self.profile.at(s.len() as u64)
    }

    fn exact(&self) -> bool {
        all_exact(&self.profile.coeffs)
    }
}

/// `f(S) = |S|^k` for `k <= 3`.
pub fn cardinality_power(n: usize, k: usize) -> Result<SetFunction> {
    if k > 3 {
        return Err(Error::InvalidArgument(format!("cardinality power {k} is outside the weakly submodular range 0..=3")));
    }
    let profile = CardinalityProfile::power(k);
    let claims = Claims { submodular: k <= 1, ..Claims::MONOTONE.weakly_submodular() };
    Ok(SetFunction::new(GroundSet::indexed(n), Cardinality { profile }, claims, format!("cardinality_power({k})")))
}

/// `f(S) = Σ_d c_d |S|^d` with degree at most 3, non-negative coefficients
/// and zero constant term.
pub fn cardinality_polynomial(n: usize, coeffs: &[Value]) -> Result<SetFunction> {
    require_nonneg(coeffs, "coefficient")?;
    let profile = CardinalityProfile::new(coeffs.to_vec());
    if profile.degree() > 3 {
        return Err(Error::InvalidArgument(format!("degree {} polynomial is not weakly submodular in general", profile.degree())));
    }
    if coeffs.first().is_some_and(|c| !c.is_zero()) {
        return Err(Error::InvalidArgument("constant term must be zero".into()));
    }
    let claims = Claims { submodular: profile.degree() <= 1, ..Claims::MONOTONE.weakly_submodular() };
    Ok(SetFunction::new(GroundSet::indexed(n), Cardinality { profile }, claims, "cardinality_poly"))
}

/// Unrestricted cardinality polynomial for counterexample studies; claims
/// nothing.
pub fn raw_cardinality_profile(n: usize, coeffs: &[Value]) -> SetFunction {
    let profile = CardinalityProfile::new(coeffs.to_vec());
    SetFunction::new(GroundSet::indexed(n), Cardinality { profile }, Claims::NONE, "raw_cardinality_profile")
}

// ---------------------------------------------------------------- threshold

#[derive(Debug)]
struct Threshold {
    k: usize,
    b: Value,
}

impl Oracle for Threshold {
    fn eval(&self, s: &Subset) -> Value {
        if s.len() >= self.k {
            self.b
        } else {
            Value::ZERO
        }
    }

    fn exact(&self) -> bool {
        self.b.is_exact()
    }
}

/// `f(S) = B` if `|S| >= k`, else 0.
pub fn threshold(n: usize, k: usize, b: Value) -> Result<SetFunction> {
    if k == 0 {
        return Err(Error::InvalidArgument("threshold k must be >= 1".into()));
    }
    if b.to_f64().is_nan() || b.to_f64() <= 0.0 {
        return Err(Error::InvalidArgument(format!("threshold value B = {b} must be positive")));
    }
    let claims = Claims { submodular: k == 1, weakly_submodular: k <= 2, ..Claims::MONOTONE };
    Ok(SetFunction::new(GroundSet::indexed(n), Threshold { k, b }, claims, format!("threshold({k})")))
}

// ---------------------------------------------------------------- combinations

#[derive(Debug)]
struct Combination {
    parts: Vec<(Value, SetFunction)>,
}

impl Oracle for Combination {
    fn eval(&self, s: &Subset) -> Value {
        self.parts.iter().map(|(a, f)| *a * f.eval(s)).sum()
    }

    fn exact(&self) -> bool {
        self.parts.iter().all(|(a, f)| a.is_exact() && f.is_exact())
    }
}

/// `g(S) = Σ α_i f_i(S)` with `α_i >= 0`.
pub fn linear_combination(fs: &[SetFunction], alphas: &[Value]) -> Result<SetFunction> {
    if fs.is_empty() || fs.len() != alphas.len() {
        return Err(Error::InvalidArgument(format!("{} functions but {} coefficients", fs.len(), alphas.len())));
    }
    require_nonneg(alphas, "alpha")?;
    let ground = fs[0].ground().clone();
    if let Some(f) = fs.iter().find(|f| f.ground() != &ground) {
        return Err(Error::InvalidArgument(format!("{} is over a different ground set", f.name())));
    }
    let claims = fs.iter().map(SetFunction::claims).reduce(Claims::meet).unwrap_or(Claims::NONE);
    let parts = alphas.iter().copied().zip(fs.iter().cloned()).collect();
    Ok(SetFunction::new(ground, Combination { parts }, claims, "combination"))
}

/// Max-sum diversification objective `g(S) + d(S)`.
pub fn msd_objective(g: &SetFunction, metric: &DistanceMatrix) -> Result<SetFunction> {
    let d = metric_dispersion(metric)?;
    if d.n() != g.n() {
        return Err(Error::InvalidArgument(format!("metric has {} points but g has {} elements", d.n(), g.n())));
    }
    let d = SetFunction::new(g.ground().clone(), Dispersion { metric: metric.clone() }, d.claims(), "dispersion");
    linear_combination(&[g.clone(), d], &[Value::Int(1), Value::Int(1)])
}

#[derive(Debug)]
struct Complement {
    inner: SetFunction,
}

impl Oracle for Complement {
    fn eval(&self, s: &Subset) -> Value {
        self.inner.eval(&s.complement())
    }

    fn exact(&self) -> bool {
        self.inner.is_exact()
    }
}

/// `f̄(S) = f(U ∖ S)`. Claims nothing; callers check what they need.
pub fn complement(f: &SetFunction) -> SetFunction {
    SetFunction::new(f.ground().clone(), Complement { inner: f.clone() }, Claims::NONE, format!("complement({})", f.name()))
}

#[derive(Debug)]
struct ZeroAtTop {
    inner: SetFunction,
}

impl Oracle for ZeroAtTop {
    fn eval(&self, s: &Subset) -> Value {
        if s.len() == s.universe() {
            Value::ZERO
        } else {
            self.inner.eval(s)
        }
    }

    fn exact(&self) -> bool {
        self.inner.is_exact()
    }
}

/// Same as `f` except that the full ground set maps to 0. Non-monotone
/// whenever `f` is positive somewhere below `U`.
pub fn zero_at_top(f: &SetFunction) -> SetFunction {
    let c = f.claims();
    let claims = Claims {
        normalized: c.normalized && f.n() > 0,
        nonnegative: c.nonnegative,
        weakly_submodular: c.weakly_submodular && c.monotone,
        ..Claims::NONE
    };
    SetFunction::new(f.ground().clone(), ZeroAtTop { inner: f.clone() }, claims, format!("zero_at_top({})", f.name()))
}

// ---------------------------------------------------------------- max cut

/// Undirected graph with non-negative edge weights and no self-loops.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(usize, usize, Value)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize, Value)>) -> Result<Graph> {
        Graph::labelled((0..vertices).map(|i| i.to_string()).collect(), edges)
    }

    pub fn labelled(labels: Vec<String>, edges: Vec<(usize, usize, Value)>) -> Result<Graph> {
        let n = labels.len();
        for &(u, v, w) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at {u}")));
            }
            if w.to_f64().is_nan() || w.to_f64() < 0.0 {
                return Err(Error::InvalidArgument(format!("edge ({u},{v}) has negative weight {w}")));
            }
        }
        Ok(Graph { labels, edges })
    }

    pub fn vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn edges(&self) -> &[(usize, usize, Value)] {
        &self.edges
    }
}

#[derive(Debug)]
struct Cut {
    edges: Vec<(usize, usize, Value)>,
}

impl Oracle for Cut {
    fn eval(&self, s: &Subset) -> Value {
        self.edges.iter().filter(|(u, v, _)| s.contains(*u) != s.contains(*v)).map(|e| e.2).sum()
    }

    fn exact(&self) -> bool {
        self.edges.iter().all(|e| e.2.is_exact())
    }
}

/// Weight of edges crossing `(S, V ∖ S)`. Normalized and non-negative but
/// not monotone.
pub fn max_cut(g: &Graph) -> Result<SetFunction> {
    let ground = GroundSet::new(g.labels.iter().cloned())?;
    let claims = Claims { normalized: true, nonnegative: true, ..Claims::NONE };
    Ok(SetFunction::new(ground, Cut { edges: g.edges.clone() }, claims, "max_cut"))
}

/// Vertices `r0..r{n-1}, s, t` with unit edges `s–r_i` and `r_i–t`.
/// Indices: `R = 0..n`, `s = n`, `t = n + 1`.
pub fn star_counterexample(n: usize) -> Graph {
    let mut labels: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
    labels.push("s".into());
    labels.push("t".into());
    let edges = (0..n).flat_map(|r| [(n, r, Value::Int(1)), (r, n + 1, Value::Int(1))]).collect();
    Graph { labels, edges }
}

// ---------------------------------------------------------------- supermodular pair

#[derive(Debug)]
struct BothOf {
    b: Value,
}

impl Oracle for BothOf {
    fn eval(&self, s: &Subset) -> Value {
        if s.contains(0) && s.contains(1) {
            self.b
        } else {
            Value::ZERO
        }
    }

    fn exact(&self) -> bool {
        self.b.is_exact()
    }
}

/// On ground `{a1, a2, b}`: `f(S) = B` iff `{a1, a2} ⊆ S`. Supermodular
/// degree 1 yet not weakly submodular.
pub fn supermodular_pair(b: Value) -> Result<SetFunction> {
    if b.to_f64().is_nan() || b.to_f64() <= 0.0 {
        return Err(Error::InvalidArgument(format!("B = {b} must be positive")));
    }
    let ground = GroundSet::new(["a1", "a2", "b"])?;
    let claims = Claims::MONOTONE;
    Ok(SetFunction::new(ground, BothOf { b }, claims, "supermodular_pair"))
}

// ---------------------------------------------------------------- welfare

/// Agents with valuations over a shared item universe.
#[derive(Debug, Clone)]
pub struct WelfareInstance {
    valuations: Vec<SetFunction>,
}

impl WelfareInstance {
    pub fn new(valuations: Vec<SetFunction>) -> Result<WelfareInstance> {
        let Some(first) = valuations.first() else {
            return Err(Error::InvalidArgument("welfare instance needs at least one agent".into()));
        };
        let items = first.ground().clone();
        for (i, v) in valuations.iter().enumerate() {
            if v.ground() != &items {
                return Err(Error::InvalidArgument(format!("agent {i} values a different item universe")));
            }
            let c = v.claims();
            if !(c.normalized && c.nonnegative) {
                return Err(Error::InvalidArgument(format!("agent {i} valuation must be normalized and non-negative")));
            }
        }
        Ok(WelfareInstance { valuations })
    }

    pub fn agents(&self) -> usize {
        self.valuations.len()
    }

    pub fn items(&self) -> usize {
        self.valuations[0].n()
    }

    /// Index of `(agent, item)` in the reduced ground set.
    pub fn element(&self, agent: usize, item: usize) -> usize {
        agent * self.items() + item
    }

    /// Items each agent receives under a set of `(agent, item)` elements.
    pub fn allocation(&self, s: &Subset) -> Vec<Subset> {
        let m = self.items();
        (0..self.agents())
            .map(|i| {
                let mut bundle = Subset::empty(m);
                for u in (0..m).filter(|&u| s.contains(i * m + u)) {
                    bundle.insert(u);
                }
                bundle
            })
            .collect()
    }

    /// `Σ_i v_i(S_i)` for an explicit allocation.
    pub fn welfare(&self, bundles: &[Subset]) -> Value {
        self.valuations.iter().zip(bundles).map(|(v, s)| v.eval(s)).sum()
    }
}

#[derive(Debug)]
struct Welfare {
    instance: WelfareInstance,
}

impl Oracle for Welfare {
    fn eval(&self, s: &Subset) -> Value {
        self.instance.welfare(&self.instance.allocation(s))
    }

    fn exact(&self) -> bool {
        self.instance.valuations.iter().all(SetFunction::is_exact)
    }
}

/// Reduces welfare maximization to maximizing
/// `f'(S') = Σ_i v_i(π_i(S'))` over `U' = agents × items`, subject to the
/// partition matroid with one capacity-1 block per item.
///
/// Lifting preserves submodularity but not weak submodularity: with two or
/// more agents the set sizes in the inequality count other agents' elements
/// (`S = {(1,a)} ∪ X`, `T = {(1,b)} ∪ X` breaks it for `v_1 = |S|²` once
/// `|X| >= 2`). The weak claim is kept only when it is guaranteed.
pub fn welfare_reduction(w: &WelfareInstance) -> Result<(SetFunction, Matroid)> {
    let (agents, items) = (w.agents(), w.items());
    let item_labels = w.valuations[0].ground().clone();
    let labels = (0..agents).flat_map(|i| item_labels.labels().iter().map(move |u| format!("{i}:{u}")));
    let ground: Arc<GroundSet> = GroundSet::new(labels)?;
    let c = w.valuations.iter().map(SetFunction::claims).reduce(Claims::meet).unwrap_or(Claims::NONE);
    let claims = Claims { weakly_submodular: (agents == 1 && c.weakly_submodular) || (c.submodular && c.monotone), ..c };
    let blocks: Vec<Vec<usize>> = (0..items).map(|u| (0..agents).map(|i| w.element(i, u)).collect()).collect();
    let matroid = Matroid::partition(agents * items, blocks, vec![1; items])?;
    let f = SetFunction::new(ground, Welfare { instance: w.clone() }, claims, "welfare");
    Ok((f, matroid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::{self, Mode};

    fn ints(v: &[i64]) -> Vec<Value> {
        v.iter().map(|&x| Value::from(x)).collect()
    }

    fn set(n: usize, e: &[usize]) -> Subset {
        Subset::from_indices(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn linear_examples() {
        let f = linear(&ints(&[1, 2, 3])).unwrap();
        assert_eq!(f.evaluate(&set(3, &[0, 2])).unwrap(), Value::Int(4));
        assert_eq!(f.evaluate(&set(3, &[])).unwrap(), Value::Int(0));
        let z = linear(&ints(&[0, 0, 0])).unwrap();
        assert_eq!(z.evaluate(&set(3, &[0, 1, 2])).unwrap(), Value::Int(0));
        assert!(linear(&ints(&[1, -1])).is_err());
    }

    #[test]
    fn coverage_examples() {
        let f = coverage(vec![vec![0], vec![0]], &ints(&[1])).unwrap();
        assert_eq!(f.evaluate(&set(2, &[0])).unwrap(), Value::Int(1));
        assert_eq!(f.evaluate(&set(2, &[0, 1])).unwrap(), Value::Int(1));
        let g = coverage(vec![vec![0], vec![1]], &ints(&[2, 5])).unwrap();
        assert_eq!(g.evaluate(&set(2, &[0, 1])).unwrap(), Value::Int(7));
        assert!(coverage(vec![vec![3]], &ints(&[1])).is_err());
    }

    #[test]
    fn metric_validation() {
        let bad_tri = vec![ints(&[0, 1, 5]), ints(&[1, 0, 1]), ints(&[5, 1, 0])];
        assert!(matches!(DistanceMatrix::new(bad_tri), Err(Error::InvalidMetric(_))));
        let asym = vec![ints(&[0, 1]), ints(&[2, 0])];
        assert!(DistanceMatrix::new(asym).is_err());
        let diag = vec![ints(&[1, 1]), ints(&[1, 0])];
        assert!(DistanceMatrix::new(diag).is_err());
        assert!(DistanceMatrix::new(vec![ints(&[0, 1]), ints(&[1])]).is_err());
    }

    #[test]
    fn dispersion_examples() {
        let f = metric_dispersion(&DistanceMatrix::unit(3)).unwrap();
        assert_eq!(f.evaluate(&set(3, &[])).unwrap(), Value::Int(0));
        assert_eq!(f.evaluate(&set(3, &[1])).unwrap(), Value::Int(0));
        assert_eq!(f.evaluate(&set(3, &[0, 1, 2])).unwrap(), Value::Int(3));
        let g = metric_dispersion(&DistanceMatrix::unit(7)).unwrap();
        for k in 0..=7usize {
            let s = set(7, &(0..k).collect::<Vec<_>>());
            assert_eq!(g.evaluate(&s).unwrap(), Value::Int((k * k.saturating_sub(1) / 2) as i128));
        }
    }

    #[test]
    fn cross_dispersion_examples() {
        let d = DistanceMatrix::unit(5);
        assert_eq!(cross_dispersion(&d, &set(5, &[]), &set(5, &[1, 2])).unwrap(), Value::Int(0));
        assert_eq!(cross_dispersion(&d, &set(5, &[0, 1]), &set(5, &[2, 3, 4])).unwrap(), Value::Int(6));
        assert!(cross_dispersion(&d, &set(5, &[0, 1]), &set(5, &[1])).is_err());
    }

    #[test]
    fn segmentation_examples() {
        let m = SegmentationMatrix::new(vec![ints(&[1, -1]), ints(&[0, 3]), ints(&[2, 2])]).unwrap();
        let f = segmentation(&m).unwrap();
        // max(1,0) + max(-1,3)
        assert_eq!(f.evaluate(&set(3, &[0, 1])).unwrap(), Value::Int(4));
        assert_eq!(f.evaluate(&set(3, &[0])).unwrap(), Value::Int(0));
        assert_eq!(f.evaluate(&set(3, &[])).unwrap(), Value::Int(0));
        let col = SegmentationMatrix::new(vec![ints(&[4]), ints(&[7]), ints(&[1])]).unwrap();
        let g = segmentation(&col).unwrap();
        assert_eq!(g.evaluate(&set(3, &[0, 2])).unwrap(), Value::Int(4));
        assert!(SegmentationMatrix::new(vec![ints(&[1, -2])]).is_err());
    }

    #[test]
    fn cardinality_examples() {
        let f = cardinality_power(6, 2).unwrap();
        assert_eq!(f.evaluate(&set(6, &[0, 1, 2, 3, 4])).unwrap(), Value::Int(25));
        let p = cardinality_polynomial(4, &ints(&[0, 1, 1, 1])).unwrap();
        assert_eq!(p.evaluate(&set(4, &[2, 3])).unwrap(), Value::Int(14));
        assert!(cardinality_power(4, 4).is_err());
        assert!(cardinality_polynomial(4, &ints(&[0, 0, 0, 0, 1])).is_err());
        assert!(cardinality_polynomial(4, &ints(&[0, -1])).is_err());
        assert!(cardinality_polynomial(4, &ints(&[1, 1])).is_err());
        let raw = CardinalityProfile::power(4);
        let r = check::check_cardinality_family(&raw, 8, 8, 8).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn threshold_claims() {
        assert!(threshold(5, 2, Value::Int(1)).unwrap().claims().weakly_submodular);
        assert!(!threshold(5, 3, Value::Int(1)).unwrap().claims().weakly_submodular);
        assert!(threshold(5, 0, Value::Int(1)).is_err());
        assert!(threshold(5, 1, Value::Int(0)).is_err());
    }

    #[test]
    fn combination_examples() {
        let f = linear(&ints(&[1, 2, 3])).unwrap();
        let zero = linear_combination(std::slice::from_ref(&f), &ints(&[0])).unwrap();
        let double = linear_combination(std::slice::from_ref(&f), &ints(&[2])).unwrap();
        for m in 0..8u64 {
            let s = Subset::from_mask(3, m);
            assert_eq!(zero.evaluate(&s).unwrap(), Value::ZERO);
            assert!(double.evaluate(&s).unwrap().identical(f.evaluate(&s).unwrap().scale(2)));
        }
        let other = linear(&ints(&[1, 2])).unwrap();
        assert!(linear_combination(&[f.clone(), other], &ints(&[1, 1])).is_err());
        assert!(linear_combination(&[f], &ints(&[-1])).is_err());
    }

    #[test]
    fn complement_of_linear() {
        let f = linear(&ints(&[1, 2, 3])).unwrap();
        let c = complement(&f);
        assert_eq!(c.evaluate(&set(3, &[0])).unwrap(), Value::Int(5));
        let cc = complement(&c);
        for m in 0..8u64 {
            let s = Subset::from_mask(3, m);
            assert!(cc.evaluate(&s).unwrap().identical(f.evaluate(&s).unwrap()));
        }
    }

    #[test]
    fn zero_at_top_is_non_monotone() {
        let f = metric_dispersion(&DistanceMatrix::unit(3)).unwrap();
        let g = zero_at_top(&f);
        assert_eq!(g.evaluate(&set(3, &[0, 1, 2])).unwrap(), Value::ZERO);
        for m in 0..7u64 {
            let s = Subset::from_mask(3, m);
            assert!(g.evaluate(&s).unwrap().identical(f.evaluate(&s).unwrap()));
        }
        let r = check::check_monotone(&g, Mode::Exhaustive).unwrap();
        let w = r.witness.unwrap();
        let s = w.s.unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.with(w.element.unwrap()).len(), 3);
    }

    #[test]
    fn star_gadget_values() {
        let g = star_counterexample(3);
        let f = max_cut(&g).unwrap();
        let r = [0, 1, 2];
        assert_eq!(f.evaluate(&set(5, &[])).unwrap(), Value::Int(0));
        assert_eq!(f.evaluate(&set(5, &[0, 1, 2, 3, 4])).unwrap(), Value::Int(0));
        assert_eq!(f.evaluate(&set(5, &r)).unwrap(), Value::Int(6));
        assert_eq!(f.evaluate(&set(5, &[0, 1, 2, 3])).unwrap(), Value::Int(3));
        assert_eq!(f.evaluate(&set(5, &[0, 1, 2, 4])).unwrap(), Value::Int(3));
        assert!(Graph::new(2, vec![(0, 0, Value::Int(1))]).is_err());
        assert!(Graph::new(2, vec![(0, 2, Value::Int(1))]).is_err());
    }

    #[test]
    fn supermodular_pair_values() {
        let f = supermodular_pair(Value::Int(7)).unwrap();
        assert_eq!(f.evaluate(&set(3, &[0, 1])).unwrap(), Value::Int(7));
        assert_eq!(f.evaluate(&set(3, &[2])).unwrap(), Value::Int(0));
        let (l, r) = check::pair_sides(&f, check::Property::WeaklySubmodular, &set(3, &[0, 2]), &set(3, &[1, 2])).unwrap();
        assert_eq!((l, r), (Value::Int(0), Value::Int(7)));
    }

    #[test]
    fn welfare_single_agent_is_identity() {
        let v = linear(&ints(&[3, 1, 4])).unwrap();
        let w = WelfareInstance::new(vec![v.clone()]).unwrap();
        let (f, m) = welfare_reduction(&w).unwrap();
        assert_eq!(m.rank(), 3);
        for mask in 0..8u64 {
            let s = Subset::from_mask(3, mask);
            assert!(m.is_independent(&s).unwrap());
            assert!(f.evaluate(&s).unwrap().identical(v.evaluate(&s).unwrap()));
        }
    }

    #[test]
    fn welfare_rejects_mismatched_universes() {
        let a = linear(&ints(&[1, 2])).unwrap();
        let b = linear(&ints(&[1, 2, 3])).unwrap();
        assert!(WelfareInstance::new(vec![a, b]).is_err());
        assert!(WelfareInstance::new(vec![]).is_err());
    }
}
