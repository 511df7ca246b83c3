//! Exact rationals and the extended value type `Γ ∪ {∞}`.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::Error;

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num/den` encoding used in reports. Integers are written `n/1`.
pub fn rat_to_string(r: &Rat) -> String {
    alloc::format!("{}/{}", r.numer(), r.denom())
}

pub fn checked_div(a: &Rat, b: &Rat) -> Result<Rat, Error> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// An element of `Γ ∪ {∞}` with `Γ ⊂ ℚ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Finite(Rat),
    Infinity,
}

impl Value {
    pub fn zero() -> Self {
        Value::Finite(Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Value::Finite(int(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::Infinity)
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Value::Finite(r) => Some(r),
            Value::Infinity => None,
        }
    }

    pub fn min(self, other: Value) -> Value {
        if other < self {
            other
        } else {
            self
        }
    }

    /// `k·self` for a non-negative integer `k`; `0·∞` is taken to be `0`.
    pub fn scale(&self, k: u64) -> Value {
        match self {
            _ if k == 0 => Value::zero(),
            Value::Finite(r) => Value::Finite(r * BigInt::from(k)),
            Value::Infinity => Value::Infinity,
        }
    }

    /// Difference of two values where the subtrahend is finite.
    pub fn sub_finite(&self, b: &Rat) -> Value {
        match self {
            Value::Finite(a) => Value::Finite(a - b),
            Value::Infinity => Value::Infinity,
        }
    }

    /// Quotient by a finite nonzero rational. `∞` stays `∞` for positive divisors.
    pub fn div(&self, b: &Rat) -> Result<Value, Error> {
        match self {
            Value::Finite(a) => Ok(Value::Finite(checked_div(a, b)?)),
            Value::Infinity if b.is_positive() => Ok(Value::Infinity),
            Value::Infinity => Err(Error::InvalidInput(String::from(
                "infinity divided by a non-positive rational",
            ))),
        }
    }
}

impl From<Rat> for Value {
    fn from(r: Rat) -> Self {
        Value::Finite(r)
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => a.cmp(b),
            (Value::Finite(_), Value::Infinity) => Ordering::Less,
            (Value::Infinity, Value::Finite(_)) => Ordering::Greater,
            (Value::Infinity, Value::Infinity) => Ordering::Equal,
        }
    }
}

impl Add for &Value {
    type Output = Value;
    fn add(self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            _ => Value::Infinity,
        }
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        &self + &rhs
    }
}

impl Add<&Rat> for &Value {
    type Output = Value;
    fn add(self, rhs: &Rat) -> Value {
        match self {
            Value::Finite(a) => Value::Finite(a + rhs),
            Value::Infinity => Value::Infinity,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Value::Infinity => f.write_str("inf"),
        }
    }
}

/// Parses the `num/den`, plain integer, or `inf` encodings.
pub fn parse_value(s: &str) -> Option<Value> {
    let s = s.trim();
    if s == "inf" {
        return Some(Value::Infinity);
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Value::Finite(Rat::new(n, d)))
}
