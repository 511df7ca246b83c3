//! The rational function field `𝔽_p(t)` with the `t`-adic valuation.

use alloc::format;
use alloc::string::String;
use alloc::vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{BaseKind, ValuedField};
use crate::arith::{Field, Poly, PrimeField};
use crate::error::Error;

/// A reduced fraction `num/den` of polynomials in `t` with `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly<u64>,
    den: Poly<u64>,
}

impl RatFunc {
    pub fn num(&self) -> &Poly<u64> {
        &self.num
    }

    pub fn den(&self) -> &Poly<u64> {
        &self.den
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalFunctions {
    fp: PrimeField,
}

impl RationalFunctions {
    pub fn new(p: u64) -> Result<Self, Error> {
        Ok(RationalFunctions { fp: PrimeField::checked(p)? })
    }

    pub fn prime_field(&self) -> PrimeField {
        self.fp
    }

    /// Builds `num/den` in lowest terms. Panics if `den` is zero.
    pub fn fraction(&self, num: Poly<u64>, den: Poly<u64>) -> RatFunc {
        let fp = &self.fp;
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one(fp) };
        }
        let g = num.gcd(fp, &den);
        let num = num.div_exact(fp, &g).expect("gcd divides");
        let den = den.div_exact(fp, &g).expect("gcd divides");
        let lead_inv = fp.inv(den.lead().expect("nonzero")).expect("unit");
        RatFunc { num: num.scale(fp, &lead_inv), den: den.scale(fp, &lead_inv) }
    }

    pub fn from_poly(&self, num: Poly<u64>) -> RatFunc {
        RatFunc { num, den: Poly::one(&self.fp) }
    }
}

impl Field for RationalFunctions {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        self.from_poly(Poly::zero())
    }

    fn one(&self) -> RatFunc {
        self.from_poly(Poly::one(&self.fp))
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let fp = &self.fp;
        if a.den == b.den {
            return self.fraction(a.num.add(fp, &b.num), a.den.clone());
        }
        let num = a.num.mul(fp, &b.den).add(fp, &b.num.mul(fp, &a.den));
        self.fraction(num, a.den.mul(fp, &b.den))
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: a.num.neg(&self.fp), den: a.den.clone() }
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let fp = &self.fp;
        self.fraction(a.num.mul(fp, &b.num), a.den.mul(fp, &b.den))
    }

    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        (!a.num.is_zero()).then(|| self.fraction(a.den.clone(), a.num.clone()))
    }

    fn from_i64(&self, n: i64) -> RatFunc {
        self.from_poly(Poly::constant(&self.fp, self.fp.from_i64(n)))
    }

    fn characteristic(&self) -> u64 {
        self.fp.modulus()
    }
}

impl ValuedField for RationalFunctions {
    type Scalar = RatFunc;

    fn kind(&self) -> BaseKind {
        BaseKind::RationalFunctions
    }

    fn p(&self) -> u64 {
        self.fp.modulus()
    }

    fn ord(&self, a: &RatFunc) -> Option<i64> {
        let fp = &self.fp;
        let n = a.num.low_degree(fp)?;
        let d = a.den.low_degree(fp).expect("nonzero denominator");
        Some(n as i64 - d as i64)
    }

    fn residue(&self, a: &RatFunc) -> Result<u64, Error> {
        let v = self.value(a);
        if v != crate::arith::Value::zero() {
            return Err(Error::NotAUnit(v));
        }
        let fp = &self.fp;
        let n = a.num.coeff(fp, 0);
        let d = a.den.coeff(fp, 0);
        Ok(fp.mul(&n, &fp.inv(&d).expect("unit denominator")))
    }

    fn lift(&self, r: u64) -> RatFunc {
        self.from_poly(Poly::constant(&self.fp, r % self.p()))
    }

    fn uniformizer_pow(&self, k: i64) -> RatFunc {
        let fp = &self.fp;
        let m = Poly::monomial(fp, 1, k.unsigned_abs() as usize);
        if k >= 0 {
            self.from_poly(m)
        } else {
            RatFunc { num: Poly::one(fp), den: m }
        }
    }

    fn from_bigint(&self, n: &BigInt) -> RatFunc {
        let r = n.mod_floor(&BigInt::from(self.p())).to_u64().expect("residue below p");
        self.from_poly(Poly::constant(&self.fp, r))
    }

    fn param(&self) -> Option<RatFunc> {
        Some(self.from_poly(Poly::from_coeffs(&self.fp, vec![0, 1])))
    }

    fn elem_to_string(&self, a: &RatFunc) -> String {
        let num = poly_in_t(&a.num);
        if a.den.deg() == 0 {
            return num;
        }
        format!("({num})/({})", poly_in_t(&a.den))
    }

    fn is_negative(&self, _a: &RatFunc) -> bool {
        false
    }

    fn is_monomial(&self, a: &RatFunc) -> bool {
        a.den.deg() == 0 && a.num.coeffs().iter().filter(|&&c| c != 0).count() <= 1
    }
}

fn poly_in_t(g: &Poly<u64>) -> String {
    if g.is_zero() {
        return String::from("0");
    }
    let mut terms = alloc::vec::Vec::new();
    for (i, &c) in g.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => String::from("t"),
            _ => format!("t^{i}"),
        };
        terms.push(match (i, c) {
            (0, _) => format!("{c}"),
            (_, 1) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    terms.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Value;

    fn t_poly(k: &RationalFunctions, c: &[u64]) -> Poly<u64> {
        Poly::from_coeffs(&k.prime_field(), c.to_vec())
    }

    #[test]
    fn t_order_of_fraction() {
        let k = RationalFunctions::new(3).unwrap();
        // t^3 / (1 + t)
        let a = k.fraction(t_poly(&k, &[0, 0, 0, 1]), t_poly(&k, &[1, 1]));
        assert_eq!(k.value(&a), Value::from_int(3));
        assert_eq!(k.value(&k.zero()), Value::Infinity);
        assert_eq!(k.value(&k.inv(&a).unwrap()), Value::from_int(-3));
    }

    #[test]
    fn reduced_with_monic_denominator() {
        let k = RationalFunctions::new(5).unwrap();
        // (2t + 2) / (3t + 3) = 2/3 = 4
        let a = k.fraction(t_poly(&k, &[2, 2]), t_poly(&k, &[3, 3]));
        assert_eq!(a, k.from_i64(4));
        assert_eq!(k.residue(&a), Ok(4));
    }

    #[test]
    fn arithmetic_and_printing() {
        let k = RationalFunctions::new(3).unwrap();
        let t = k.param().unwrap();
        let a = k.add(&k.mul(&t, &t), &k.from_i64(-1));
        assert_eq!(k.elem_to_string(&a), "t^2+2");
        let b = k.div(&k.one(), &k.add(&t, &k.one())).unwrap();
        assert_eq!(k.elem_to_string(&b), "(1)/(t+1)");
        assert_eq!(k.mul(&b, &k.add(&t, &k.one())), k.one());
        assert_eq!(k.uniformizer_pow(-2), k.inv(&k.mul(&t, &t)).unwrap());
    }
}
