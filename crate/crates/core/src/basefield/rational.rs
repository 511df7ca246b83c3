//! `ℚ` with the `p`-adic valuation.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{BaseKind, ValuedField};
use crate::arith::{Field, PrimeField, Rat};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PAdicRationals {
    fp: PrimeField,
}

impl PAdicRationals {
    pub fn new(p: u64) -> Result<Self, Error> {
        Ok(PAdicRationals { fp: PrimeField::checked(p)? })
    }
}

/// Number of times `p` divides the nonzero integer `n`.
fn ord_int(n: &BigInt, p: &BigInt) -> i64 {
    let mut k = 0;
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

fn residue_int(fp: &PrimeField, n: &BigInt) -> u64 {
    let p = BigInt::from(fp.modulus());
    n.mod_floor(&p).to_u64().expect("residue below p")
}

impl Field for PAdicRationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }

    fn one(&self) -> Rat {
        Rat::one()
    }

    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }

    fn neg(&self, a: &Rat) -> Rat {
        -a
    }

    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }

    fn inv(&self, a: &Rat) -> Option<Rat> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn from_i64(&self, n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    fn characteristic(&self) -> u64 {
        0
    }
}

impl ValuedField for PAdicRationals {
    type Scalar = Rat;

    fn kind(&self) -> BaseKind {
        BaseKind::Rationals
    }

    fn p(&self) -> u64 {
        self.fp.modulus()
    }

    fn ord(&self, a: &Rat) -> Option<i64> {
        if a.is_zero() {
            return None;
        }
        let p = BigInt::from(self.p());
        Some(ord_int(a.numer(), &p) - ord_int(a.denom(), &p))
    }

    fn residue(&self, a: &Rat) -> Result<u64, Error> {
        let v = self.value(a);
        if v != crate::arith::Value::zero() {
            return Err(Error::NotAUnit(v));
        }
        let num = residue_int(&self.fp, a.numer());
        let den = residue_int(&self.fp, a.denom());
        Ok(self.fp.mul(&num, &self.fp.inv(&den).expect("unit denominator")))
    }

    fn lift(&self, r: u64) -> Rat {
        Rat::from_integer(BigInt::from(r))
    }

    fn uniformizer_pow(&self, k: i64) -> Rat {
        let p = BigInt::from(self.p());
        let m = num_traits::pow(p, k.unsigned_abs() as usize);
        if k >= 0 {
            Rat::from_integer(m)
        } else {
            Rat::new(BigInt::one(), m)
        }
    }

    fn from_bigint(&self, n: &BigInt) -> Rat {
        Rat::from_integer(n.clone())
    }

    fn param(&self) -> Option<Rat> {
        None
    }

    fn elem_to_string(&self, a: &Rat) -> String {
        if a.is_integer() {
            format!("{}", a.numer())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn is_negative(&self, a: &Rat) -> bool {
        a.is_negative()
    }

    fn is_monomial(&self, _a: &Rat) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{int, rat};
    use crate::arith::Value;

    #[test]
    fn valuations() {
        let q2 = PAdicRationals::new(2).unwrap();
        assert_eq!(q2.value(&int(12)), Value::from_int(2));
        assert_eq!(q2.value(&int(1)), Value::zero());
        assert_eq!(q2.value(&int(0)), Value::Infinity);
        assert_eq!(q2.value(&rat(3, 8)), Value::from_int(-3));
    }

    #[test]
    fn residues() {
        let q2 = PAdicRationals::new(2).unwrap();
        assert_eq!(q2.residue(&rat(5, 3)), Ok(1));
        let q5 = PAdicRationals::new(5).unwrap();
        assert_eq!(q5.residue(&int(7)), Ok(2));
        assert_eq!(q5.residue(&rat(-1, 2)), Ok(2));
        assert_eq!(q5.residue(&int(10)), Err(Error::NotAUnit(Value::from_int(1))));
        assert_eq!(q5.residue(&q5.lift(1)), Ok(1));
    }

    #[test]
    fn uniformizer_powers() {
        let q3 = PAdicRationals::new(3).unwrap();
        assert_eq!(q3.uniformizer_pow(2), int(9));
        assert_eq!(q3.uniformizer_pow(-1), rat(1, 3));
        assert_eq!(q3.uniformizer_pow(0), int(1));
    }
}
