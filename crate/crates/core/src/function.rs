//! Value-oracle set functions.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ground::{GroundSet, Subset};
use crate::value::Value;

/// A deterministic map from subsets of `0..n` to values.
///
/// Implementations must be pure: the same subset always yields the same
/// value, bit for bit.
pub trait Oracle: Send + Sync + fmt::Debug {
    fn eval(&self, s: &Subset) -> Value;

    /// True when every value is produced in exact integer arithmetic.
    fn exact(&self) -> bool {
        false
    }
}

/// Properties a builder asserts about the function it produces.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Claims {
    pub normalized: bool,
    pub nonnegative: bool,
    pub monotone: bool,
    pub submodular: bool,
    pub weakly_submodular: bool,
}

impl Claims {
    pub const NONE: Claims = Claims { normalized: false, nonnegative: false, monotone: false, submodular: false, weakly_submodular: false };

    /// Normalized, non-negative and monotone.
    pub const MONOTONE: Claims =
        Claims { normalized: true, nonnegative: true, monotone: true, submodular: false, weakly_submodular: false };

    pub fn weakly_submodular(self) -> Claims {
        Claims { weakly_submodular: true, ..self }
    }

    pub fn submodular(self) -> Claims {
        Claims { submodular: true, ..self }
    }

    /// Properties preserved by non-negative combinations: everything both
    /// sides claim.
    pub fn meet(self, other: Claims) -> Claims {
        Claims {
            normalized: self.normalized && other.normalized,
            nonnegative: self.nonnegative && other.nonnegative,
            monotone: self.monotone && other.monotone,
            submodular: self.submodular && other.submodular,
            weakly_submodular: self.weakly_submodular && other.weakly_submodular,
        }
    }
}

type Memo = RwLock<HashMap<Subset, Value>>;

/// A set function over a ground set: oracle, declared claims and an optional
/// memo cache. Cloning is cheap and clones share the cache.
#[derive(Clone)]
pub struct SetFunction {
    ground: Arc<GroundSet>,
    oracle: Arc<dyn Oracle>,
    claims: Claims,
    name: String,
    memo: Option<Arc<Memo>>,
}

impl SetFunction {
    pub fn new(ground: Arc<GroundSet>, oracle: impl Oracle + 'static, claims: Claims, name: impl Into<String>) -> SetFunction {
        SetFunction { ground, oracle: Arc::new(oracle), claims, name: name.into(), memo: None }
    }

    /// Enables memoization. Cached values are the first evaluation, returned
    /// unchanged afterwards.
    pub fn memoized(mut self) -> SetFunction {
        self.memo = Some(Arc::new(RwLock::new(HashMap::new())));
        self
    }

    pub fn with_claims(mut self, claims: Claims) -> SetFunction {
        self.claims = claims;
        self
    }

    /// Replaces the ground set with one of the same size, e.g. to attach
    /// labels.
    pub fn with_ground(mut self, ground: Arc<GroundSet>) -> Result<SetFunction> {
        if ground.len() != self.n() {
            return Err(Error::GroundMismatch { ground: ground.len(), subset: self.n() });
        }
        self.ground = ground;
        Ok(self)
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn claims(&self) -> Claims {
        self.claims
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_exact(&self) -> bool {
        self.oracle.exact()
    }

    pub fn evaluate(&self, s: &Subset) -> Result<Value> {
        if s.universe() != self.n() {
            return Err(Error::GroundMismatch { ground: self.n(), subset: s.universe() });
        }
        Ok(self.eval(s))
    }

    /// Evaluates without the universe check. Callers guarantee `s` is over
    /// this function's ground set.
    pub(crate) fn eval(&self, s: &Subset) -> Value {
        let Some(memo) = &self.memo else {
            return self.oracle.eval(s);
        };
        if let Some(v) = memo.read().expect("memo lock poisoned").get(s) {
            return *v;
        }
        let v = self.oracle.eval(s);
        *memo.write().expect("memo lock poisoned").entry(s.clone()).or_insert(v)
    }

    /// Evaluates the set given by a bitmask (`n <= 64`).
    pub(crate) fn eval_mask(&self, mask: u64) -> Value {
        self.eval(&Subset::from_mask(self.n(), mask))
    }
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetFunction")
            .field("name", &self.name)
            .field("n", &self.n())
            .field("claims", &self.claims)
            .field("oracle", &self.oracle)
            .finish()
    }
}

impl Oracle for SetFunction {
    fn eval(&self, s: &Subset) -> Value {
        SetFunction::eval(self, s)
    }

    fn exact(&self) -> bool {
        self.is_exact()
    }
}

/// Oracle backed by a closure. Handy for tests and ad hoc fixtures.
pub struct FnOracle<F> {
    f: F,
    exact: bool,
}

impl<F: Fn(&Subset) -> Value + Send + Sync> FnOracle<F> {
    pub fn new(f: F, exact: bool) -> FnOracle<F> {
        FnOracle { f, exact }
    }
}

impl<F> fmt::Debug for FnOracle<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("FnOracle")
    }
}

impl<F: Fn(&Subset) -> Value + Send + Sync> Oracle for FnOracle<F> {
    fn eval(&self, s: &Subset) -> Value {
        (self.f)(s)
    }

    fn exact(&self) -> bool {
        self.exact
    }
}

/// Wraps a closure as a set function over `0..n` with no claims.
pub fn from_fn<F>(n: usize, exact: bool, f: F) -> SetFunction
where
    F: Fn(&Subset) -> Value + Send + Sync + 'static,
{
    SetFunction::new(GroundSet::indexed(n), FnOracle::new(f, exact), Claims::NONE, "custom")
}
