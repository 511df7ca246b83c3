//! Base valued fields `(K, ν)` with value group `ℤ` and residue field `𝔽_p`,
//! and the input normalization that makes every root of the generator have
//! positive value.

mod fpt;
mod rational;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::hash::Hash;

use num_bigint::BigInt;

use crate::arith::{Field, Poly, Value};
use crate::error::Error;

pub use fpt::{RatFunc, RationalFunctions};
pub use rational::PAdicRationals;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    /// `ℚ` with `ord_p`.
    Rationals,
    /// `𝔽_p(t)` with `ord_t`.
    RationalFunctions,
}

impl BaseKind {
    pub fn name(self) -> &'static str {
        match self {
            BaseKind::Rationals => "q",
            BaseKind::RationalFunctions => "fpt",
        }
    }
}

/// A field with a discrete rank-one valuation onto `ℤ` whose residue field is `𝔽_p`.
pub trait ValuedField: Field<Elem = <Self as ValuedField>::Scalar> + Debug + Send + Sync {
    /// Same as [`Field::Elem`], with the extra bounds the algorithms rely on.
    type Scalar: Clone + Eq + Hash + Debug + Send + Sync;

    fn kind(&self) -> BaseKind;

    /// Characteristic of the residue field.
    fn p(&self) -> u64;

    /// `ν(a)`, or `None` for `a = 0`.
    fn ord(&self, a: &Self::Elem) -> Option<i64>;

    fn value(&self, a: &Self::Elem) -> Value {
        match self.ord(a) {
            Some(k) => Value::from_int(k),
            None => Value::Infinity,
        }
    }

    /// Image in `𝔽_p` of an element of value zero.
    fn residue(&self, a: &Self::Elem) -> Result<u64, Error>;

    /// A representative of `r ∈ 𝔽_p`; `residue(lift(r)) = r`.
    fn lift(&self, r: u64) -> Self::Elem;

    /// `π^k` for the uniformizer `π` (`p` or `t`).
    fn uniformizer_pow(&self, k: i64) -> Self::Elem;

    #[allow(clippy::wrong_self_convention)]
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    /// The transcendental `t` of `𝔽_p(t)`; `None` for `ℚ`.
    fn param(&self) -> Option<Self::Elem>;

    fn elem_to_string(&self, a: &Self::Elem) -> String;

    /// Whether the printed form should carry an explicit minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;

    /// Whether the printed form can be used as a factor without parentheses.
    fn is_monomial(&self, a: &Self::Elem) -> bool;
}

/// Canonical text form, highest degree first, e.g. `x^2-2` or `x^2+2*t*x+(t^2+1)`.
/// The output parses back to the same polynomial.
pub fn format_poly<K: ValuedField>(field: &K, g: &Poly<K::Elem>, var: &str) -> String {
    if g.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    for (i, c) in g.coeffs().iter().enumerate().rev() {
        if field.is_zero(c) {
            continue;
        }
        let neg = field.is_negative(c);
        let mag = if neg { field.neg(c) } else { c.clone() };
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let coeff = field.elem_to_string(&mag);
        let coeff = if field.is_monomial(&mag) || coeff.ends_with(')') {
            coeff
        } else {
            format!("({coeff})")
        };
        let mono = match i {
            0 => String::new(),
            1 => String::from(var),
            _ => format!("{var}^{i}"),
        };
        match (i, field.is_one(&mag)) {
            (0, _) => out.push_str(&coeff),
            (_, true) => out.push_str(&mono),
            _ => {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    out
}

/// Result of [`normalize_input`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized<E> {
    /// `g(Y) = π^{nk} f(Y/π^k)` for the monic `f`.
    pub poly: Poly<E>,
    /// The scaling exponent `k`.
    pub shift: i64,
}

/// Makes `f` monic, checks that it is squarefree and substitutes `x = Y/π^k`
/// for the least `k ≥ 0` such that every non-leading coefficient of the monic
/// result has positive value.
pub fn normalize_input<K: ValuedField>(field: &K, f: &Poly<K::Elem>) -> Result<Normalized<K::Elem>, Error> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::InvalidInput(String::from("polynomial must have degree at least 1"))),
    };
    let f = f.monic(field);
    if f.gcd(field, &f.derivative(field)).deg() > 0 {
        return Err(Error::NotSquarefree);
    }
    let mut k = 0i64;
    for (i, a) in f.coeffs()[..n].iter().enumerate() {
        if let Some(v) = field.ord(a) {
            let w = (n - i) as i64;
            // least k with v + k·w > 0
            k = k.max((-v).div_euclid(w) + 1);
        }
    }
    let coeffs: Vec<K::Elem> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| field.mul(a, &field.uniformizer_pow(k * (n - i) as i64)))
        .collect();
    Ok(Normalized { poly: Poly::from_coeffs(field, coeffs), shift: k })
}
