//! Finite fields as towers of simple extensions of `𝔽_p`.
//!
//! Level 0 is `𝔽_p`; level `t` is `level(t-1)[z_t]/(m_t)` for a monic irreducible
//! `m_t` with coefficients in level `t-1`. Elements are stored flat: an element of
//! level `t` is the concatenation of its `deg m_t` coefficients over level `t-1`,
//! so an element of a lower level embeds by zero padding.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigUint;
use rand_core::RngCore;

use super::factor::factor;
use super::field::Field;
use super::poly::Poly;
use super::prime::PrimeField;
use crate::error::Error;

/// Flat coefficient vector of a tower element, see the module docs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FfElem(pub Vec<u64>);

impl FfElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

/// A polynomial over some level of a tower.
pub type FfPoly = Poly<FfElem>;

#[derive(Debug)]
struct TowerData {
    prime: PrimeField,
    /// `mins[t-1]` defines level `t` over level `t-1`.
    mins: Vec<FfPoly>,
    /// `degrees[t]` is the absolute degree of level `t` over `𝔽_p`.
    degrees: Vec<usize>,
}

/// One level of a tower, usable as a [`Field`].
///
/// Cloning is cheap; the tower is shared. Extending a field never changes the
/// fields it was built from.
#[derive(Clone, Debug)]
pub struct FiniteField {
    tower: Arc<TowerData>,
    level: usize,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
            && self.tower.prime == other.tower.prime
            && self.tower.mins[..self.level] == other.tower.mins[..other.level]
    }
}

impl FiniteField {
    pub fn prime(p: u64) -> Self {
        Self::from_prime_field(PrimeField::new(p))
    }

    pub fn from_prime_field(prime: PrimeField) -> Self {
        FiniteField { tower: Arc::new(TowerData { prime, mins: Vec::new(), degrees: vec![1] }), level: 0 }
    }

    pub fn prime_field(&self) -> PrimeField {
        self.tower.prime
    }

    pub fn p(&self) -> u64 {
        self.tower.prime.modulus()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Degree over `𝔽_p`.
    pub fn absolute_degree(&self) -> usize {
        self.tower.degrees[self.level]
    }

    /// Number of elements.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p()).pow(self.absolute_degree() as u32)
    }

    /// The field one level down. Panics at level 0.
    pub fn parent(&self) -> FiniteField {
        assert!(self.level > 0, "the prime field has no parent");
        FiniteField { tower: self.tower.clone(), level: self.level - 1 }
    }

    /// Field at a lower level of the same tower.
    pub fn at_level(&self, level: usize) -> FiniteField {
        assert!(level <= self.level);
        FiniteField { tower: self.tower.clone(), level }
    }

    /// Minimal polynomial of the top generator over the parent level.
    pub fn defining_polynomial(&self) -> Option<&FfPoly> {
        self.level.checked_sub(1).map(|t| &self.tower.mins[t])
    }

    /// Adjoins a root of `m`, which must be monic, irreducible over `self`
    /// and of degree at least 2.
    pub fn extend(&self, m: &FfPoly) -> Result<FiniteField, Error> {
        match m.degree() {
            Some(d) if d >= 2 => {}
            _ => {
                return Err(Error::InvalidInput(String::from(
                    "tower levels must have degree at least 2",
                )))
            }
        }
        if !m.is_monic(self) {
            return Err(Error::InvalidInput(String::from("defining polynomial must be monic")));
        }
        let factors = factor(self, m, 0);
        if factors.len() != 1 || factors[0].1 != 1 {
            let witness = factors
                .iter()
                .map(|(g, k)| format!("({})^{}", self.poly_to_string(g, "y"), k))
                .collect::<Vec<_>>()
                .join("*");
            return Err(Error::Reducible(witness));
        }
        Ok(self.extend_unchecked(m))
    }

    pub(crate) fn extend_unchecked(&self, m: &FfPoly) -> FiniteField {
        let mut mins = self.tower.mins[..self.level].to_vec();
        let mut degrees = self.tower.degrees[..=self.level].to_vec();
        mins.push(m.clone());
        degrees.push(self.absolute_degree() * m.deg());
        FiniteField {
            tower: Arc::new(TowerData { prime: self.tower.prime, mins, degrees }),
            level: self.level + 1,
        }
    }

    pub fn from_u64(&self, a: u64) -> FfElem {
        let mut v = vec![0; self.absolute_degree()];
        v[0] = a % self.p();
        FfElem(v)
    }

    /// Embeds an element of a lower level of the same tower.
    pub fn embed(&self, a: &FfElem) -> FfElem {
        debug_assert!(a.0.len() <= self.absolute_degree());
        let mut v = a.0.clone();
        v.resize(self.absolute_degree(), 0);
        FfElem(v)
    }

    /// The class of `z_t` at the top level. Panics at level 0.
    pub fn generator(&self) -> FfElem {
        let sub = self.parent().absolute_degree();
        let mut v = vec![0; self.absolute_degree()];
        v[sub] = 1;
        FfElem(v)
    }

    /// Coordinates over the parent level, as a polynomial in the generator.
    pub fn to_parent_poly(&self, a: &FfElem) -> FfPoly {
        let parent = self.parent();
        let sub = parent.absolute_degree();
        let coeffs = a.0.chunks(sub).map(|c| FfElem(c.to_vec())).collect();
        Poly::from_coeffs(&parent, coeffs)
    }

    /// Inverse of [`to_parent_poly`](Self::to_parent_poly) after reduction modulo
    /// the defining polynomial.
    pub fn from_parent_poly(&self, g: &FfPoly) -> FfElem {
        let parent = self.parent();
        let m = &self.tower.mins[self.level - 1];
        let r = g.rem(&parent, m).expect("monic modulus");
        let mut v = Vec::with_capacity(self.absolute_degree());
        for c in r.coeffs() {
            v.extend_from_slice(&c.0);
        }
        v.resize(self.absolute_degree(), 0);
        FfElem(v)
    }

    /// `a^p`.
    pub fn frobenius(&self, a: &FfElem) -> FfElem {
        self.pow(a, self.p())
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: &FfElem) -> FfElem {
        (1..self.absolute_degree()).fold(a.clone(), |acc, _| self.frobenius(&acc))
    }

    pub fn random<R: RngCore>(&self, rng: &mut R) -> FfElem {
        FfElem((0..self.absolute_degree()).map(|_| rng.next_u64() % self.p()).collect())
    }

    /// All elements in lexicographic order of their coordinates. Intended for
    /// exhaustive checks over small fields.
    pub fn elements(&self) -> Vec<FfElem> {
        let d = self.absolute_degree();
        let p = self.p();
        let total = (p as u128).checked_pow(d as u32).expect("field too large to enumerate");
        assert!(total <= 1 << 20, "field too large to enumerate");
        (0..total as u64)
            .map(|mut k| {
                FfElem(
                    (0..d)
                        .map(|_| {
                            let c = k % p;
                            k /= p;
                            c
                        })
                        .collect(),
                )
            })
            .collect()
    }

    pub fn elem_to_string(&self, a: &FfElem) -> String {
        if a.0.len() == 1 {
            return format!("{}", a.0[0]);
        }
        let mut s = String::from("[");
        for (i, c) in a.0.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{c}");
        }
        s.push(']');
        s
    }

    pub fn poly_to_string(&self, g: &FfPoly, var: &str) -> String {
        if g.is_zero() {
            return String::from("0");
        }
        let mut terms = Vec::new();
        for (i, c) in g.coeffs().iter().enumerate().rev() {
            if self.is_zero(c) {
                continue;
            }
            let coeff = self.elem_to_string(c);
            let mono = match i {
                0 => String::new(),
                1 => String::from(var),
                _ => format!("{var}^{i}"),
            };
            terms.push(match (i, self.is_one(c)) {
                (0, _) => coeff,
                (_, true) => mono,
                _ => format!("{coeff}*{mono}"),
            });
        }
        terms.join("+")
    }
}

impl Field for FiniteField {
    type Elem = FfElem;

    fn zero(&self) -> FfElem {
        FfElem(vec![0; self.absolute_degree()])
    }

    fn one(&self) -> FfElem {
        self.from_u64(1)
    }

    fn is_zero(&self, a: &FfElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let f = self.tower.prime;
        FfElem(a.0.iter().zip(&b.0).map(|(x, y)| f.add(x, y)).collect())
    }

    fn neg(&self, a: &FfElem) -> FfElem {
        let f = self.tower.prime;
        FfElem(a.0.iter().map(|x| f.neg(x)).collect())
    }

    fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        if self.level == 0 {
            return FfElem(vec![self.tower.prime.mul(&a.0[0], &b.0[0])]);
        }
        let parent = self.parent();
        let prod = self.to_parent_poly(a).mul(&parent, &self.to_parent_poly(b));
        self.from_parent_poly(&prod)
    }

    fn inv(&self, a: &FfElem) -> Option<FfElem> {
        if self.is_zero(a) {
            return None;
        }
        if self.level == 0 {
            return self.tower.prime.inv(&a.0[0]).map(|x| FfElem(vec![x]));
        }
        let parent = self.parent();
        let m = &self.tower.mins[self.level - 1];
        let (g, s, _) = self.to_parent_poly(a).xgcd(&parent, m);
        debug_assert_eq!(g.degree(), Some(0));
        Some(self.from_parent_poly(&s))
    }

    fn from_i64(&self, n: i64) -> FfElem {
        self.from_u64(self.tower.prime.from_i64(n))
    }

    fn characteristic(&self) -> u64 {
        self.p()
    }
}
