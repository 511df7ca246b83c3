//! Dense univariate polynomials over a [`Field`] context.

use alloc::vec;
use alloc::vec::Vec;

use super::field::Field;
use crate::error::Error;

/// Dense coefficient list, lowest degree first, with no trailing zeros.
///
/// The coefficient field is not stored; every operation that needs it takes
/// the field context as an argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    /// The monomial `c·X^k`.
    pub fn monomial<F: Field<Elem = E>>(field: &F, c: E, k: usize) -> Self {
        if field.is_zero(&c) {
            return Self::zero();
        }
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The variable `X`.
    pub fn x<F: Field<Elem = E>>(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`, for size bookkeeping only.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.lead().is_some_and(|c| field.is_one(c))
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_degree<F: Field<Elem = E>>(&self, field: &F) -> Option<usize> {
        self.coeffs.iter().position(|c| !field.is_zero(c))
    }

    pub fn map<G: Field>(&self, target: &G, mut f: impl FnMut(&E) -> G::Elem) -> Poly<G::Elem> {
        Poly::from_coeffs(target, self.coeffs.iter().map(&mut f).collect())
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => field.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(field, coeffs)
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = field.mul(a, b);
                coeffs[i + j] = field.add(&coeffs[i + j], &t);
            }
        }
        Self::from_coeffs(field, coeffs)
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Self::from_coeffs(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    /// Multiplication by `X^k`.
    pub fn shift<F: Field<Elem = E>>(&self, field: &F, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base);
            }
        }
        acc
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn divmod<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> Result<(Self, Self), Error> {
        let lead = divisor.lead().ok_or(Error::DivisionByZero)?;
        let lead_inv = field.inv(lead).ok_or(Error::DivisionByZero)?;
        let d = divisor.coeffs.len();
        if self.coeffs.len() < d {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![field.zero(); rem.len() - d + 1];
        for k in (0..quot.len()).rev() {
            let c = field.mul(&rem[k + d - 1], &lead_inv);
            if field.is_zero(&c) {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                let t = field.mul(&c, b);
                rem[k + i] = field.sub(&rem[k + i], &t);
            }
            quot[k] = c;
        }
        rem.truncate(d - 1);
        Ok((Self::from_coeffs(field, quot), Self::from_coeffs(field, rem)))
    }

    pub fn rem<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> Result<Self, Error> {
        self.divmod(field, divisor).map(|(_, r)| r)
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn div_exact<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> Result<Self, Error> {
        let (q, r) = self.divmod(field, divisor)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput(alloc::string::String::from("inexact polynomial division")));
        }
        Ok(q)
    }

    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let inv = field.inv(l).expect("nonzero leading coefficient");
                self.scale(field, &inv)
            }
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(field, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// Extended gcd: `(g, s, t)` with `s·self + t·other = g` and `g` monic.
    pub fn xgcd<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(field), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(field, &r1).expect("nonzero divisor");
            let s = s0.sub(field, &q.mul(field, &s1));
            let t = t0.sub(field, &q.mul(field, &t1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
            t0 = core::mem::replace(&mut t1, t);
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = field.inv(l).expect("nonzero");
                (r0.scale(field, &inv), s0.scale(field, &inv), t0.scale(field, &inv))
            }
        }
    }

    pub fn derivative<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| field.mul(c, &field.from_i64(i as i64)))
            .collect();
        Self::from_coeffs(field, coeffs)
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    /// `self^e mod modulus` for an exponent given as little-endian 64-bit limbs.
    pub fn pow_mod_limbs<F: Field<Elem = E>>(&self, field: &F, limbs: &[u64], modulus: &Self) -> Self {
        let mut acc = Self::one(field).rem(field, modulus).expect("nonzero modulus");
        let base = self.rem(field, modulus).expect("nonzero modulus");
        for limb in limbs.iter().rev() {
            for bit in (0..64).rev() {
                acc = acc.mul(field, &acc).rem(field, modulus).expect("nonzero modulus");
                if (limb >> bit) & 1 == 1 {
                    acc = acc.mul(field, &base).rem(field, modulus).expect("nonzero modulus");
                }
            }
        }
        acc
    }

    pub fn pow_mod<F: Field<Elem = E>>(&self, field: &F, e: u64, modulus: &Self) -> Self {
        self.pow_mod_limbs(field, &[e], modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::prime::PrimeField;

    fn p(field: &PrimeField, c: &[u64]) -> Poly<u64> {
        Poly::from_coeffs(field, c.to_vec())
    }

    #[test]
    fn divmod_over_f5() {
        let f5 = PrimeField::new(5);
        // (y+2)(y+3) = y^2 + 5y + 6 = y^2 + 1 mod 5
        let (q, r) = p(&f5, &[1, 0, 1]).divmod(&f5, &p(&f5, &[2, 1])).unwrap();
        assert_eq!(q, p(&f5, &[3, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_over_f2() {
        let f2 = PrimeField::new(2);
        let g = p(&f2, &[1, 0, 1]).gcd(&f2, &p(&f2, &[1, 1]));
        assert_eq!(g, p(&f2, &[1, 1]));
    }

    #[test]
    fn identity_and_zero_division() {
        let f7 = PrimeField::new(7);
        let a = p(&f7, &[3, 4, 5]);
        assert_eq!(a.mul(&f7, &Poly::one(&f7)), a);
        assert_eq!(a.divmod(&f7, &Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn xgcd_bezout() {
        let f7 = PrimeField::new(7);
        let a = p(&f7, &[1, 2, 3, 1]);
        let b = p(&f7, &[6, 0, 1]);
        let (g, s, t) = a.xgcd(&f7, &b);
        assert_eq!(s.mul(&f7, &a).add(&f7, &t.mul(&f7, &b)), g);
        assert_eq!(g, a.gcd(&f7, &b));
    }

    #[test]
    fn derivative_and_eval() {
        let f5 = PrimeField::new(5);
        let a = p(&f5, &[1, 0, 1]);
        assert_eq!(a.derivative(&f5), p(&f5, &[0, 2]));
        assert_eq!(a.eval(&f5, &2), 0);
        assert_eq!(a.eval(&f5, &1), 2);
    }
}
