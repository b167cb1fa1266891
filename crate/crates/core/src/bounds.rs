//! Closed-form approximation bounds for greedy (cardinality constraint) and
//! oblivious local search (matroid constraint), with the identities used to
//! derive them.
//!
//! Floating-point routines avoid forming `((i+1)/i)^p` directly where it
//! can overflow: the greedy ratio is accumulated from the factors `i/a*_i`
//! and `b*_i/a*_i = 1 - i/a*_i`, all in `(0, 1)`. An exact rational mode
//! backs the float results for small parameters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `p` accepted by the exact rational greedy ratio.
pub const EXACT_GREEDY_CAP: usize = 32;

/// Version tag written into every [`RatioTable`].
pub const FORMULA_VERSION: &str = "greedy-product-sum/ls-discrete-max-t/v1";

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn step(i: usize) -> BigRational {
    rat(i as i64 + 1, i as i64)
}

/// Float value of a rational.
pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::Domain(format!("{name} must be >= 1")));
    }
    Ok(())
}

// ------------------------------------------------------------ identities

/// `(Σ_{j=1}^n q^{j-1}, i q^n - i)` with `q = (i+1)/i`.
pub fn geometric_identity(i: usize, n: usize) -> Result<(f64, f64)> {
    positive("i", i)?;
    positive("n", n)?;
    let q = (i as f64 + 1.0) / i as f64;
    let lhs: f64 = (1..=n).map(|j| q.powi(j as i32 - 1)).sum();
    let fi = i as f64;
    Ok((lhs, fi * q.powi(n as i32) - fi))
}

pub fn geometric_identity_exact(i: usize, n: usize) -> Result<(BigRational, BigRational)> {
    positive("i", i)?;
    positive("n", n)?;
    let q = step(i);
    let lhs = (1..=n).map(|j| q.pow(j as i32 - 1)).fold(BigRational::zero(), |a, b| a + b);
    let fi = int(i as i64);
    Ok((lhs, &fi * q.pow(n as i32) - &fi))
}

/// `(Σ_{j=1}^n j q^{j-1}, n i² q^{n+1} - (n+1) i² q^n + i²)`.
pub fn weighted_geometric_identity(i: usize, n: usize) -> Result<(f64, f64)> {
    positive("i", i)?;
    positive("n", n)?;
    let q = (i as f64 + 1.0) / i as f64;
    let lhs: f64 = (1..=n).map(|j| j as f64 * q.powi(j as i32 - 1)).sum();
    let (fi, fnn) = (i as f64, n as f64);
    let i2 = fi * fi;
    Ok((lhs, fnn * i2 * q.powi(n as i32 + 1) - (fnn + 1.0) * i2 * q.powi(n as i32) + i2))
}

pub fn weighted_geometric_identity_exact(i: usize, n: usize) -> Result<(BigRational, BigRational)> {
    positive("i", i)?;
    positive("n", n)?;
    let q = step(i);
    let lhs = (1..=n).map(|j| int(j as i64) * q.pow(j as i32 - 1)).fold(BigRational::zero(), |a, b| a + b);
    let i2 = int((i * i) as i64);
    let fnn = int(n as i64);
    let rhs = &fnn * &i2 * q.pow(n as i32 + 1) - (&fnn + BigRational::one()) * &i2 * q.pow(n as i32) + &i2;
    Ok((lhs, rhs))
}

// ------------------------------------------------------------ greedy

fn star_range(i: usize, p: usize) -> Result<()> {
    if i == 0 || i >= p {
        return Err(Error::Domain(format!("need 1 <= i <= p - 1, got i = {i}, p = {p}")));
    }
    Ok(())
}

/// `a*_i = 2 i² ((i+1)/i)^p − 2 i² − i p`.
pub fn a_star(i: usize, p: usize) -> Result<f64> {
    star_range(i, p)?;
    let fi = i as f64;
    let growth = (p as f64 * (1.0 / fi).ln_1p()).exp_m1();
    Ok(2.0 * fi * fi * growth - fi * p as f64)
}

/// `b*_i = a*_i − i`.
pub fn b_star(i: usize, p: usize) -> Result<f64> {
    Ok(a_star(i, p)? - i as f64)
}

pub fn a_star_exact(i: usize, p: usize) -> Result<BigRational> {
    star_range(i, p)?;
    let i2 = int(2 * (i * i) as i64);
    Ok(&i2 * step(i).pow(p as i32) - &i2 - int((i * p) as i64))
}

pub fn b_star_exact(i: usize, p: usize) -> Result<BigRational> {
    Ok(a_star_exact(i, p)? - int(i as i64))
}

/// Defining sum `Σ_{j=1}^{p} (i+p−j) q^{j−1}`.
pub fn a_star_sum(i: usize, p: usize) -> Result<BigRational> {
    star_range(i, p)?;
    Ok(weighted_powers(i, (1..=p).map(|j| i + p - j)))
}

/// Defining sum `Σ_{j=1}^{p−1} (i+p−j+1) q^{j−1}`.
pub fn b_star_sum(i: usize, p: usize) -> Result<BigRational> {
    star_range(i, p)?;
    Ok(weighted_powers(i, (1..p).map(|j| i + p - j + 1)))
}

/// `Σ_{j=1}^{n} c_j q^{j-1}` for `q = (k+1)/k`, by Horner's rule over
/// integers with a single division at the end.
fn weighted_powers(k: usize, coeffs: impl DoubleEndedIterator<Item = usize>) -> BigRational {
    let (num, den) = (BigInt::from(k + 1), BigInt::from(k));
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    for c in coeffs.rev() {
        acc = BigInt::from(c) * &den_pow + &num * acc;
        den_pow *= &den;
    }
    BigRational::new(acc * &den, den_pow)
}

/// `i / a*_i` in floating point, exactly 0 once `a*_i` leaves `f64` range.
fn inv_a_star(i: usize, p: usize) -> f64 {
    let fi = i as f64;
    let log_growth = p as f64 * (1.0 / fi).ln_1p();
    if log_growth > 700.0 {
        return 0.0;
    }
    fi / (2.0 * fi * fi * log_growth.exp_m1() - fi * p as f64)
}

fn greedy_p(p: usize) -> Result<()> {
    if p < 2 {
        return Err(Error::Domain(format!("greedy ratio needs p >= 2, got {p}")));
    }
    Ok(())
}

/// Greedy approximation bound
/// `(Σ_{i=1}^{p−1} (i/a*_i) Π_{j=i+1}^{p−1} b*_j/a*_j)^{−1}`.
///
/// The sum is accumulated from `i = p − 1` down so the running product
/// only ever multiplies factors in `(0, 1)`.
pub fn greedy_ratio(p: usize) -> Result<f64> {
    greedy_p(p)?;
    let mut total = 0.0;
    let mut tail = 1.0;
    for i in (1..p).rev() {
        let inv = inv_a_star(i, p);
        total += inv * tail;
        tail *= 1.0 - inv;
    }
    Ok(1.0 / total)
}

/// Same bound in exact rational arithmetic from the closed forms.
pub fn greedy_ratio_exact(p: usize) -> Result<BigRational> {
    greedy_p(p)?;
    if p > EXACT_GREEDY_CAP {
        return Err(Error::CapExceeded { what: "exact greedy ratio", cap: EXACT_GREEDY_CAP, n: p });
    }
    greedy_ratio_rational(p, a_star_exact, b_star_exact)
}

/// Same bound in exact arithmetic from the defining sums of `a*`, `b*`.
pub fn greedy_ratio_from_sums(p: usize) -> Result<BigRational> {
    greedy_p(p)?;
    if p > EXACT_GREEDY_CAP {
        return Err(Error::CapExceeded { what: "exact greedy ratio", cap: EXACT_GREEDY_CAP, n: p });
    }
    greedy_ratio_rational(p, a_star_sum, b_star_sum)
}

fn greedy_ratio_rational(
    p: usize,
    a: impl Fn(usize, usize) -> Result<BigRational>,
    b: impl Fn(usize, usize) -> Result<BigRational>,
) -> Result<BigRational> {
    let mut total = BigRational::zero();
    let mut tail = BigRational::one();
    for i in (1..p).rev() {
        let ai = a(i, p)?;
        total += int(i as i64) / &ai * &tail;
        tail = tail * b(i, p)? / ai;
    }
    Ok(total.recip())
}

// ------------------------------------------------------------ local search

fn ls_range(s: usize, t: usize) -> Result<()> {
    if t < 2 || t > s {
        return Err(Error::Domain(format!("need 2 <= t <= s, got s = {s}, t = {t}")));
    }
    Ok(())
}

/// Local-search bound for basis size `s` when `t = |S ∖ O|`:
/// `(2s X² − 2t X − 2s) / ((2s − t) X − 2s)` with `X = ((s+1)/s)^t`.
pub fn ls_discrete_bound(s: usize, t: usize) -> Result<f64> {
    ls_range(s, t)?;
    let (fs, ft) = (s as f64, t as f64);
    let x = (ft * (1.0 / fs).ln_1p()).exp();
    let den = (2.0 * fs - ft) * x - 2.0 * fs;
    if den.is_nan() || den <= 0.0 {
        return Err(Error::Internal(format!("non-positive denominator {den} at s = {s}, t = {t}")));
    }
    Ok((2.0 * fs * x * x - 2.0 * ft * x - 2.0 * fs) / den)
}

pub fn ls_discrete_bound_exact(s: usize, t: usize) -> Result<BigRational> {
    ls_range(s, t)?;
    let x = step(s).pow(t as i32);
    let (fs, ft) = (int(s as i64), int(t as i64));
    let two = int(2);
    let den = (&two * &fs - &ft) * &x - &two * &fs;
    if !den.is_positive() {
        return Err(Error::Internal(format!("non-positive denominator at s = {s}, t = {t}")));
    }
    Ok((&two * &fs * &x * &x - &two * &ft * &x - &two * &fs) / den)
}

/// The unsimplified bound `(YX − WZ + Ys)/(Ws) + ((s+1)/s)^t`, where
/// `W, X, Y, Z` are the weighted sums `Σ_{i=1}^t (c − i) q^{i−1}` with
/// `c = s, s+1, s+t, s+t+1`.
pub fn ls_bound_from_sums(s: usize, t: usize) -> Result<BigRational> {
    ls_range(s, t)?;
    let q = step(s);
    let weighted = |c: usize| weighted_powers(s, (1..=t).map(|i| c - i));
    let (w, x, y, z) = (weighted(s), weighted(s + 1), weighted(s + t), weighted(s + t + 1));
    let fs = int(s as i64);
    Ok((&y * &x - &w * &z + &y * &fs) / (&w * &fs) + q.pow(t as i32))
}

/// Worst case over `t ∈ {2..=s}` of the discrete bound. Returns the bound and
/// the maximizing `t` (smallest on ties).
pub fn ls_bound(s: usize) -> Result<(f64, usize)> {
    if s < 2 {
        return Err(Error::Domain(format!("local-search bound needs s >= 2, got {s}")));
    }
    let mut best = (f64::NEG_INFINITY, 0);
    for t in 2..=s {
        let v = ls_discrete_bound(s, t)?;
        if v > best.0 {
            best = (v, t);
        }
    }
    Ok(best)
}

// ------------------------------------------------------------ continuous relaxation

fn g_raw(x: f64, r: f64) -> Result<f64> {
    let xr = x.powf(r);
    let den = (2.0 - r) * xr - 2.0;
    if den.is_nan() || den <= 0.0 {
        return Err(Error::Domain(format!("denominator (2 - r) x^r - 2 = {den} is not positive")));
    }
    Ok((2.0 * xr * xr - 2.0 * r * xr - 2.0) / den)
}

/// `g(x, r) = (2x^{2r} − 2r x^r − 2) / ((2 − r) x^r − 2)` on
/// `2.25 <= x <= e`, `0 < r <= 1`.
pub fn g_continuous(x: f64, r: f64) -> Result<f64> {
    if !(2.25..=std::f64::consts::E).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [2.25, e]")));
    }
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::Domain(format!("r = {r} outside (0, 1]")));
    }
    g_raw(x, r)
}

/// `g(x, 1)` exactly, for rational `x > 2`.
pub fn g_at_r1_exact(x: &BigRational) -> Result<BigRational> {
    let two = int(2);
    let den = x - &two;
    if !den.is_positive() {
        return Err(Error::Domain("g(x, 1) needs x > 2".into()));
    }
    Ok((&two * x * x - &two * x - &two) / den)
}

/// Stationary point of `g(·, r)`: returns `(x*, g(x*, r))` with
/// `x* = ((2+r)/(2−r))^{1/r}` and `g(x*, r) = (2r² + 8)/(r − 2)²`.
///
/// `x*` lies in `(e, 3]`, just outside the domain of [`g_continuous`], so
/// the direct evaluation used for the consistency check skips the domain
/// test.
pub fn g_stationary(r: f64) -> Result<(f64, f64)> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::Domain(format!("r = {r} outside (0, 1]")));
    }
    let x_star = ((2.0 + r) / (2.0 - r)).powf(1.0 / r);
    let closed = (2.0 * r * r + 8.0) / ((r - 2.0) * (r - 2.0));
    let direct = g_raw(x_star, r)?;
    if (direct - closed).abs() > 1e-9 * closed.abs() {
        return Err(Error::Internal(format!("g(x*, {r}) = {direct} but the closed form gives {closed}")));
    }
    Ok((x_star, closed))
}

/// Exact stationary point for `r = 1/k`: `x* = ((2k+1)/(2k−1))^k`. The
/// value is computed from `x*^r = (2+r)/(2−r)` and checked against the
/// closed form.
pub fn g_stationary_exact(k: u32) -> Result<(BigRational, BigRational)> {
    if k == 0 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    let r = rat(1, k as i64);
    let two = int(2);
    let xr = (&two + &r) / (&two - &r);
    let x_star = xr.pow(k as i32);
    let direct = (&two * &xr * &xr - &two * &r * &xr - &two) / ((&two - &r) * &xr - &two);
    let closed = (&two * &r * &r + int(8)) / ((&r - &two) * (&r - &two));
    if direct != closed {
        return Err(Error::Internal(format!("exact g(x*, 1/{k}) disagrees with the closed form")));
    }
    Ok((x_star, closed))
}

// ------------------------------------------------------------ rearrangement

/// For non-increasing non-negative `alphas`, `betas`, `xs` of equal length,
/// checks `Σ α_i x_i · Σ β_i >= Σ β_i x_{n+1−i} · Σ α_i`.
pub fn rearrangement_check(alphas: &[f64], betas: &[f64], xs: &[f64]) -> Result<bool> {
    let n = alphas.len();
    if betas.len() != n || xs.len() != n {
        return Err(Error::InvalidArgument("sequences must have equal length".into()));
    }
    for (name, seq) in [("alphas", alphas), ("betas", betas), ("xs", xs)] {
        if seq.iter().any(|v| v.is_nan() || *v < 0.0) {
            return Err(Error::InvalidArgument(format!("{name} must be non-negative")));
        }
        if seq.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("{name} must be non-increasing")));
        }
    }
    let sa: f64 = alphas.iter().sum();
    let sb: f64 = betas.iter().sum();
    let lhs = alphas.iter().zip(xs).map(|(a, x)| a * x).sum::<f64>() * sb;
    let rhs = betas.iter().zip(xs.iter().rev()).map(|(b, x)| b * x).sum::<f64>() * sa;
    Ok(lhs >= rhs - crate::value::tolerance(lhs, rhs))
}

// ------------------------------------------------------------ tables

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Greedy,
    Local,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArithMode {
    /// IEEE double precision.
    F64,
    /// Exact rational arithmetic, rounded once to `f64` for display.
    Exact,
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioRow {
    pub param: usize,
    pub bound: f64,
    pub mode: ArithMode,
    /// Maximizing `t` for local-search rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmax_t: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioTable {
    pub kind: BoundKind,
    pub rows: Vec<RatioRow>,
    pub precision: &'static str,
    pub formula_version: &'static str,
}

impl RatioTable {
    /// Bounds for every parameter in `lo..=hi`. `exact` switches greedy
    /// rows to rational arithmetic (needs `hi <= 32`) and local rows to the
    /// exact discrete bound.
    pub fn build(kind: BoundKind, lo: usize, hi: usize, exact: bool) -> Result<RatioTable> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty range {lo}..={hi}")));
        }
        let mode = if exact { ArithMode::Exact } else { ArithMode::F64 };
        let rows = (lo..=hi)
            .map(|param| {
                let (bound, argmax_t) = match (kind, exact) {
                    (BoundKind::Greedy, false) => (greedy_ratio(param)?, None),
                    (BoundKind::Greedy, true) => (to_f64(&greedy_ratio_exact(param)?), None),
                    (BoundKind::Local, false) => {
                        let (b, t) = ls_bound(param)?;
                        (b, Some(t))
                    }
                    (BoundKind::Local, true) => {
                        let (_, t) = ls_bound(param)?;
                        (to_f64(&ls_discrete_bound_exact(param, t)?), Some(t))
                    }
                };
                Ok(RatioRow { param, bound, mode, argmax_t })
            })
            .collect::<Result<Vec<_>>>()?;
        let precision = if exact { "rational" } else { "f64" };
        Ok(RatioTable { kind, rows, precision, formula_version: FORMULA_VERSION })
    }

    /// CSV with header `param,bound,mode`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["param", "bound", "mode"]).map_err(|e| Error::Internal(e.to_string()))?;
        for r in &self.rows {
            let mode = match r.mode {
                ArithMode::F64 => "f64",
                ArithMode::Exact => "exact",
            };
            w.write_record([r.param.to_string(), format!("{:.12}", r.bound), mode.to_string()])
                .map_err(|e| Error::Internal(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }
}
