//! Set-function values.
//!
//! Functions built from integer data (unit distances, integer weights,
//! thresholds, cardinality powers) stay in exact integer arithmetic, so the
//! counterexample values reproduce bit-for-bit and inequality checks run with
//! zero tolerance. Anything touching a non-integral input falls back to `f64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};

/// Relative tolerance used for floating-point inequality checks.
pub const REL_TOL: f64 = 1e-9;

/// Largest integer magnitude that converts to `f64` without rounding.
const F64_EXACT_INT: f64 = 9_007_199_254_740_992.0;

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i128),
    Real(f64),
}

impl Value {
    pub const ZERO: Value = Value::Int(0);

    /// Builds a value from a float, keeping it exact when it is integral.
    pub fn from_f64(x: f64) -> Value {
        if x.is_finite() && x.fract() == 0.0 && x.abs() < F64_EXACT_INT {
            Value::Int(x as i128)
        } else {
            Value::Real(x)
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Value::Int(i) => i as f64,
            Value::Real(x) => x,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Value::Int(_))
    }

    pub fn is_zero(self) -> bool {
        match self {
            Value::Int(i) => i == 0,
            Value::Real(x) => x == 0.0,
        }
    }

    pub fn abs(self) -> Value {
        match self {
            Value::Int(i) => Value::Int(i.abs()),
            Value::Real(x) => Value::Real(x.abs()),
        }
    }

    /// Multiplies by a set cardinality.
    pub fn scale(self, k: usize) -> Value {
        self * Value::Int(k as i128)
    }

    /// Bit-exact identity: same variant and same bits.
    pub fn identical(self, other: Value) -> bool {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a == b,
            (Value::Real(a), Value::Real(b)) => a.to_bits() == b.to_bits(),
            _ => false,
        }
    }

    /// Whether `lhs < rhs` counts as a violation of `lhs >= rhs`.
    ///
    /// Exact values compare with zero slack; otherwise the slack is
    /// `1e-9 * max(1, |lhs|, |rhs|)`.
    pub fn violates_ge(lhs: Value, rhs: Value) -> bool {
        match (lhs, rhs) {
            (Value::Int(a), Value::Int(b)) => a < b,
            _ => {
                let (a, b) = (lhs.to_f64(), rhs.to_f64());
                a < b - tolerance(a, b)
            }
        }
    }
}

/// Absolute slack for comparing two floating-point sides.
pub fn tolerance(lhs: f64, rhs: f64) -> f64 {
    REL_TOL * 1f64.max(lhs.abs()).max(rhs.abs())
}

fn promote(a: Value, b: Value, int: impl Fn(i128, i128) -> Option<i128>, real: impl Fn(f64, f64) -> f64) -> Value {
    match (a, b) {
        (Value::Int(x), Value::Int(y)) => match int(x, y) {
            Some(v) => Value::Int(v),
            None => Value::Real(real(x as f64, y as f64)),
        },
        _ => Value::Real(real(a.to_f64(), b.to_f64())),
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        promote(self, rhs, i128::checked_add, |x, y| x + y)
    }
}

impl Sub for Value {
    type Output = Value;
    fn sub(self, rhs: Value) -> Value {
        promote(self, rhs, i128::checked_sub, |x, y| x - y)
    }
}

impl Mul for Value {
    type Output = Value;
    fn mul(self, rhs: Value) -> Value {
        promote(self, rhs, i128::checked_mul, |x, y| x * y)
    }
}

impl Neg for Value {
    type Output = Value;
    fn neg(self) -> Value {
        match self {
            Value::Int(i) => Value::Int(-i),
            Value::Real(x) => Value::Real(-x),
        }
    }
}

impl std::iter::Sum for Value {
    fn sum<I: Iterator<Item = Value>>(iter: I) -> Value {
        iter.fold(Value::ZERO, |acc, v| acc + v)
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Value) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Value) -> Option<Ordering> {
        match (*self, *other) {
            (Value::Int(a), Value::Int(b)) => Some(a.cmp(&b)),
            (a, b) => a.to_f64().partial_cmp(&b.to_f64()),
        }
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Value {
        Value::Int(i as i128)
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Value {
        Value::Real(x)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Real(x) => write!(f, "{x}"),
        }
    }
}

/// JSON integers become [`Value::Int`]; other numbers go through
/// [`Value::from_f64`].
impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Value, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Value;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Value, E> {
                Ok(Value::Int(v as i128))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Value, E> {
                Ok(Value::Int(v as i128))
            }
            fn visit_i128<E: de::Error>(self, v: i128) -> Result<Value, E> {
                Ok(Value::Int(v))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Value, E> {
                if v.is_finite() {
                    Ok(Value::from_f64(v))
                } else {
                    Err(E::custom("non-finite number"))
                }
            }
        }
        d.deserialize_any(V)
    }
}
