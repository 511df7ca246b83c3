//! Inductive valuations on `K[x]` given by chains of key polynomials.
//!
//! A chain `(Q_1, β_1), …, (Q_r, β_r)` defines
//! `ν_i(Σ d_j Q_i^j) = min_j (j·β_i + ν_{i-1}(d_j))` for the `Q_i`-adic expansion,
//! with `ν_0` the valuation of the base field on constants.
//!
//! Homogeneous elements are handled through residues. Level `i` has relative
//! ramification `e_i`, value group `(1/E_i)ℤ` with `E_i = e_1⋯e_i`, a normalizer
//! monomial `π_i` of value `1/E_i` and a unit monomial `U_i = π_{i-1}^{β_i E_i}` of
//! value `e_i β_i`. The residual variable of level `i` is the class of
//! `y_i = Q_i^{e_i} / U_i`. Once a residual factor `ψ_i` over `κ_i` is fixed, the
//! next residue field is `κ_{i+1} = κ_i[y_i]/(ψ_i)`, with `κ_1 = 𝔽_p`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{is_irreducible, FfElem, FfPoly, Field, FiniteField, Poly, Rat, Value};
use crate::basefield::ValuedField;
use crate::error::Error;
use crate::newton::Side;

/// A Laurent monomial `π^{m_0} Q_1^{m_1} ⋯ Q_i^{m_i}`, stored as exponents.
pub type Monomial = Vec<i64>;

fn mono_add(a: &[i64], b: &[i64]) -> Monomial {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

fn mono_scale(a: &[i64], k: i64) -> Monomial {
    a.iter().map(|x| x * k).collect()
}

/// Digits of `h` in base `q`: `h = Σ d_j q^j` with `deg d_j < deg q`.
pub fn standard_expansion<F: Field>(field: &F, h: &Poly<F::Elem>, q: &Poly<F::Elem>) -> Vec<Poly<F::Elem>> {
    assert!(q.deg() >= 1 && q.is_monic(field), "expansion base must be monic of positive degree");
    let mut out = Vec::new();
    let mut rest = h.clone();
    while !rest.is_zero() {
        let (quo, rem) = rest.divmod(field, q).expect("monic divisor");
        out.push(rem);
        rest = quo;
    }
    out
}

/// A standard expansion together with the values of its coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion<E> {
    pub coefficients: Vec<Poly<E>>,
    pub values: Vec<Value>,
}

#[derive(Clone, Debug)]
pub struct Level<E> {
    pub key: Poly<E>,
    /// `deg Q_i / deg Q_{i-1}`.
    pub alpha: u64,
    pub beta: Rat,
    pub e_rel: u64,
    /// `E_i`.
    pub group_denominator: u64,
    normalizer: Monomial,
    unit: Monomial,
    /// `κ_i`.
    pub field: FiniteField,
    pub psi: Option<FfPoly>,
    /// `κ_{i+1}` and the image of `y_i` in it.
    residual: Option<(FiniteField, FfElem)>,
}

impl<E> Level<E> {
    pub fn normalizer(&self) -> &[i64] {
        &self.normalizer
    }

    pub fn unit(&self) -> &[i64] {
        &self.unit
    }

    /// `κ_{i+1}` once `ψ_i` is fixed.
    pub fn next_field(&self) -> Option<&FiniteField> {
        self.residual.as_ref().map(|(k, _)| k)
    }
}

#[derive(Clone, Debug)]
pub struct InductiveValuation<K: ValuedField> {
    base: K,
    prime_field: FiniteField,
    levels: Vec<Arc<Level<K::Scalar>>>,
}

impl<K: ValuedField> InductiveValuation<K> {
    /// The empty chain: the base valuation, defined on constants only.
    pub fn base(base: K) -> Self {
        let prime_field = FiniteField::prime(base.p());
        InductiveValuation { base, prime_field, levels: Vec::new() }
    }

    /// The chain with the single level `(Q_1, β_1)` for a monic linear `Q_1`.
    pub fn new(base: K, q1: Poly<K::Scalar>, beta1: Rat) -> Result<Self, Error> {
        Self::base(base).augment(q1, beta1)
    }

    pub fn base_field(&self) -> &K {
        &self.base
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> impl Iterator<Item = &Level<K::Scalar>> {
        self.levels.iter().map(|l| l.as_ref())
    }

    pub fn level(&self, i: usize) -> &Level<K::Scalar> {
        &self.levels[i - 1]
    }

    pub fn top(&self) -> Option<&Level<K::Scalar>> {
        self.levels.last().map(|l| l.as_ref())
    }

    /// The chain of the first `i` levels.
    pub fn truncated(&self, i: usize) -> Self {
        InductiveValuation { base: self.base.clone(), prime_field: self.prime_field.clone(), levels: self.levels[..i].to_vec() }
    }

    pub fn group_denominator(&self) -> u64 {
        self.top().map_or(1, |l| l.group_denominator)
    }

    pub fn betas(&self) -> Vec<Rat> {
        self.levels().map(|l| l.beta.clone()).collect()
    }

    pub fn keys(&self) -> Vec<Poly<K::Scalar>> {
        self.levels().map(|l| l.key.clone()).collect()
    }

    /// True for the empty chain and once the top residual factor is fixed.
    pub fn is_closed(&self) -> bool {
        self.top().is_none_or(|l| l.psi.is_some())
    }

    /// `κ_{i+1}` and the image of `y_i`; for `i = 0` this is `𝔽_p` with no variable.
    fn next_of(&self, i: usize) -> (&FiniteField, Option<&FfElem>) {
        if i == 0 {
            return (&self.prime_field, None);
        }
        let (k, y) = self.levels[i - 1].residual.as_ref().expect("residual factor fixed below the top level");
        (k, Some(y))
    }

    /// The residue field over which residual polynomials of the top level live.
    pub fn top_field(&self) -> &FiniteField {
        self.top().map_or(&self.prime_field, |l| &l.field)
    }

    /// `κ_{r+1}` of a closed chain of depth `r`.
    pub fn residue_field(&self) -> Option<&FiniteField> {
        if self.is_closed() {
            Some(self.next_of(self.depth()).0)
        } else {
            None
        }
    }

    fn normalizer_at(&self, i: usize) -> Monomial {
        if i == 0 {
            vec![1]
        } else {
            self.levels[i - 1].normalizer.clone()
        }
    }

    fn denominator_at(&self, i: usize) -> u64 {
        if i == 0 {
            1
        } else {
            self.levels[i - 1].group_denominator
        }
    }

    pub fn monomial_value(&self, m: &[i64]) -> Rat {
        let mut v = Rat::from_integer(BigInt::from(m.first().copied().unwrap_or(0)));
        for (i, &c) in m.iter().enumerate().skip(1) {
            if c != 0 {
                v += &self.levels[i - 1].beta * BigInt::from(c);
            }
        }
        v
    }

    /// `ν_r(h)` for the full chain.
    pub fn value(&self, h: &Poly<K::Scalar>) -> Value {
        self.value_at(self.depth(), h)
    }

    /// `ν_i(h)`. For `i = 0`, `h` must be constant.
    pub fn value_at(&self, i: usize, h: &Poly<K::Scalar>) -> Value {
        if h.is_zero() {
            return Value::Infinity;
        }
        if i == 0 {
            assert_eq!(h.deg(), 0, "the base valuation is only defined on constants");
            return self.base.value(&h.coeffs()[0]);
        }
        let lvl = &self.levels[i - 1];
        let mut best = Value::Infinity;
        for (j, d) in standard_expansion(&self.base, h, &lvl.key).iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let w = &self.value_at(i - 1, d) + &(&lvl.beta * BigInt::from(j));
            best = best.min(w);
        }
        best
    }

    /// The expansion of `h` in `q` with coefficient values under the full chain.
    pub fn expand(&self, h: &Poly<K::Scalar>, q: &Poly<K::Scalar>) -> Expansion<K::Scalar> {
        let coefficients = standard_expansion(&self.base, h, q);
        let values = coefficients.iter().map(|d| self.value(d)).collect();
        Expansion { coefficients, values }
    }

    /// Appends the level `(q, β)`. The chain must be closed; `q` must be monic of
    /// degree `e_r·deg ψ_r·deg Q_r` and `β > α·β_r` (Condition (*)).
    pub fn augment(&self, q: Poly<K::Scalar>, beta: Rat) -> Result<Self, Error> {
        if !self.is_closed() {
            return Err(Error::InvalidInput(String::from("augmenting a chain whose top residual factor is not fixed")));
        }
        if !q.is_monic(&self.base) || q.deg() == 0 {
            return Err(Error::InvalidInput(String::from("key polynomial must be monic of positive degree")));
        }
        let alpha = match self.top() {
            None => {
                if q.deg() != 1 {
                    return Err(Error::InvalidInput(String::from("the first key polynomial must be linear")));
                }
                1
            }
            Some(top) => {
                let expected = top.e_rel as usize * top.psi.as_ref().map_or(0, |p| p.deg()) * top.key.deg();
                if q.deg() != expected {
                    return Err(Error::InvalidInput(format!(
                        "key polynomial of degree {} does not lift a residual factor (expected degree {expected})",
                        q.deg()
                    )));
                }
                let alpha = (q.deg() / top.key.deg()) as u64;
                let bound = &top.beta * BigInt::from(alpha);
                if beta <= bound {
                    return Err(Error::ConditionStar {
                        beta_top: Box::new(top.beta.clone()),
                        alpha,
                        beta_next: Box::new(beta),
                    });
                }
                alpha
            }
        };
        let prev_e = self.group_denominator();
        let scaled = &beta * BigInt::from(prev_e);
        let e_rel = scaled.denom().to_u64().expect("ramification fits in u64");
        let group_denominator = prev_e * e_rel;
        let h = (&beta * BigInt::from(group_denominator)).to_integer().to_i64().expect("value fits in i64");
        let i = self.depth() + 1;
        let prev_pi = self.normalizer_at(i - 1);
        // π_i = Q_i^a π_{i-1}^b with a·h + b·e = 1
        let a = if e_rel == 1 {
            0
        } else {
            let g = BigInt::from(h).extended_gcd(&BigInt::from(e_rel));
            g.x.mod_floor(&BigInt::from(e_rel)).to_i64().expect("small")
        };
        let b = (1 - a * h) / e_rel as i64;
        let mut q_exp = vec![0; i + 1];
        q_exp[i] = a;
        let normalizer = mono_add(&q_exp, &mono_scale(&prev_pi, b));
        let unit = mono_scale(&prev_pi, h);
        let field = self.next_of(i - 1).0.clone();
        let mut levels = self.levels.clone();
        levels.push(Arc::new(Level {
            key: q,
            alpha,
            beta,
            e_rel,
            group_denominator,
            normalizer,
            unit,
            field,
            psi: None,
            residual: None,
        }));
        Ok(InductiveValuation { base: self.base.clone(), prime_field: self.prime_field.clone(), levels })
    }

    /// Fixes the residual factor `ψ_r` of the top level, extending the residue
    /// field when `deg ψ_r ≥ 2`.
    pub fn with_residual_factor(&self, psi: &FfPoly) -> Result<Self, Error> {
        let top = self.top().ok_or_else(|| Error::InvalidInput(String::from("no level to attach a residual factor to")))?;
        if top.psi.is_some() {
            return Err(Error::InvalidInput(String::from("residual factor already fixed")));
        }
        let field = &top.field;
        if psi.deg() == 0 || !psi.is_monic(field) || field.is_zero(&psi.coeff(field, 0)) {
            return Err(Error::InvalidInput(String::from("residual factor must be monic, non-constant and prime to y")));
        }
        if !is_irreducible(field, psi) {
            return Err(Error::Reducible(field.poly_to_string(psi, "y")));
        }
        let residual = if psi.deg() == 1 {
            (field.clone(), field.neg(&psi.coeffs()[0]))
        } else {
            let next = field.extend_unchecked(psi);
            let y = next.generator();
            (next, y)
        };
        let mut levels = self.levels.clone();
        let mut lvl = (**levels.last().expect("nonempty")).clone();
        lvl.psi = Some(psi.clone());
        lvl.residual = Some(residual);
        *levels.last_mut().expect("nonempty") = Arc::new(lvl);
        Ok(InductiveValuation { base: self.base.clone(), prime_field: self.prime_field.clone(), levels })
    }

    /// Fixes `ψ_r` and appends `(q, β)`.
    pub fn augment_with(&self, psi: &FfPoly, q: Poly<K::Scalar>, beta: Rat) -> Result<Self, Error> {
        self.with_residual_factor(psi)?.augment(q, beta)
    }

    /// Terms of `d` (with `deg d < deg Q_{i+1}`) of value `ν(m)`, divided by `m`,
    /// as a Laurent polynomial in `y_i` over `κ_i`: `(lowest power, coefficients)`.
    fn reduce_laurent(&self, i: usize, d: &Poly<K::Scalar>, m: &[i64]) -> (i64, Vec<FfElem>) {
        let lvl = &self.levels[i - 1];
        let target = Value::Finite(self.monomial_value(m));
        let mi = m.get(i).copied().unwrap_or(0);
        let rest = &m[..m.len().min(i)];
        let e = lvl.e_rel as i64;
        let mut terms: Vec<(i64, FfElem)> = Vec::new();
        for (j, a) in standard_expansion(&self.base, d, &lvl.key).iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let w = &self.value_at(i - 1, a) + &(&lvl.beta * BigInt::from(j));
            debug_assert!(w >= target, "term below the normalizing value");
            if w != target {
                continue;
            }
            let diff = j as i64 - mi;
            debug_assert_eq!(diff.rem_euclid(e), 0);
            let k = diff.div_euclid(e);
            let n = mono_add(rest, &mono_scale(&lvl.unit, -k));
            terms.push((k, self.reduce_unit(i - 1, a, &n)));
        }
        let Some(kmin) = terms.iter().map(|t| t.0).min() else {
            return (0, Vec::new());
        };
        let kmax = terms.iter().map(|t| t.0).max().expect("nonempty");
        let mut coeffs = vec![lvl.field.zero(); (kmax - kmin + 1) as usize];
        for (k, c) in terms {
            coeffs[(k - kmin) as usize] = c;
        }
        (kmin, coeffs)
    }

    /// Residue in `κ_{i+1}` of `d/m`, where `deg d < deg Q_{i+1}` and `ν_i(d) ≥ ν(m)`.
    fn reduce_unit(&self, i: usize, d: &Poly<K::Scalar>, m: &[i64]) -> FfElem {
        if i == 0 {
            let fp = &self.prime_field;
            if d.is_zero() {
                return fp.zero();
            }
            let m0 = m.first().copied().unwrap_or(0);
            let c = self.base.mul(&d.coeffs()[0], &self.base.uniformizer_pow(-m0));
            return match self.base.ord(&c) {
                Some(0) => fp.from_u64(self.base.residue(&c).expect("unit")),
                _ => fp.zero(),
            };
        }
        let (kmin, coeffs) = self.reduce_laurent(i, d, m);
        let (next, y) = self.next_of(i);
        let y = y.expect("level above zero");
        let mut acc = next.zero();
        let mut power = next.pow_signed(y, kmin).expect("y is a unit");
        for c in &coeffs {
            acc = next.add(&acc, &next.mul(&next.embed(c), &power));
            power = next.mul(&power, y);
        }
        acc
    }

    /// A polynomial `a` with `deg a < deg Q_{i+1}`, `ν_i(a) = ν(m)` and residue of
    /// `a/m` equal to `c ∈ κ_{i+1}` (or `a = 0` for `c = 0`).
    fn lift_unit(&self, i: usize, c: &FfElem, m: &[i64]) -> Poly<K::Scalar> {
        let base = &self.base;
        if i == 0 {
            let m0 = m.first().copied().unwrap_or(0);
            let r = base.mul(&base.lift(c.0[0]), &base.uniformizer_pow(m0));
            return Poly::constant(base, r);
        }
        let lvl = &self.levels[i - 1];
        let (next, y) = self.next_of(i);
        let y = y.expect("level above zero");
        if next.is_zero(c) {
            return Poly::zero();
        }
        let e = lvl.e_rel as i64;
        let mi = m.get(i).copied().unwrap_or(0);
        let rest = &m[..m.len().min(i)];
        let j0 = mi.rem_euclid(e);
        let k0 = (j0 - mi) / e;
        let shifted = next.mul(c, &next.pow_signed(y, -k0).expect("y is a unit"));
        let digits: Vec<FfElem> =
            if next.level() == lvl.field.level() { vec![shifted] } else { next.to_parent_poly(&shifted).into_coeffs() };
        let mut out = Poly::zero();
        for (k, ck) in digits.iter().enumerate() {
            if lvl.field.is_zero(ck) {
                continue;
            }
            let n = mono_add(rest, &mono_scale(&lvl.unit, -(k0 + k as i64)));
            let a = self.lift_unit(i - 1, ck, &n);
            let power = (j0 + k as i64 * e) as u64;
            out = out.add(base, &a.mul(base, &lvl.key.pow(base, power)));
        }
        out
    }

    /// The residue of an element of value zero as a polynomial in the residual
    /// variable `y_r` over `κ_r`.
    pub fn reduce(&self, h: &Poly<K::Scalar>) -> Result<FfPoly, Error> {
        let v = self.value(h);
        if v != Value::zero() {
            return Err(Error::NotAUnit(v));
        }
        let r = self.depth();
        if r == 0 {
            return Ok(Poly::constant(&self.prime_field, self.reduce_unit(0, h, &[])));
        }
        let field = &self.levels[r - 1].field;
        let (kmin, coeffs) = self.reduce_laurent(r, h, &[]);
        debug_assert!(kmin >= 0);
        let mut all = vec![field.zero(); kmin as usize];
        all.extend(coeffs);
        Ok(Poly::from_coeffs(field, all))
    }

    /// A polynomial of value zero whose [`reduce`](Self::reduce) is `g`.
    pub fn lift(&self, g: &FfPoly) -> Poly<K::Scalar> {
        let base = &self.base;
        let r = self.depth();
        if r == 0 {
            return if g.is_zero() { Poly::zero() } else { self.lift_unit(0, &g.coeffs()[0], &[]) };
        }
        let lvl = &self.levels[r - 1];
        let mut out = Poly::zero();
        for (k, c) in g.coeffs().iter().enumerate() {
            if lvl.field.is_zero(c) {
                continue;
            }
            let a = self.lift_unit(r - 1, c, &mono_scale(&lvl.unit, -(k as i64)));
            out = out.add(base, &a.mul(base, &lvl.key.pow(base, k as u64 * lvl.e_rel)));
        }
        out
    }

    /// The residual polynomial of `h` along `side` of its Newton polygon with
    /// respect to the top key, where `side.beta` is the top `β`. Its degree is
    /// `side.length / e_r` and its constant term is nonzero.
    pub fn residual_polynomial(&self, h: &Poly<K::Scalar>, side: &Side) -> Result<FfPoly, Error> {
        let r = self.depth();
        let lvl = self.top().ok_or_else(|| Error::SideMismatch(String::from("empty chain")))?;
        if lvl.beta != side.beta {
            return Err(Error::SideMismatch(format!("side beta {} differs from the top beta {}", side.beta, lvl.beta)));
        }
        let digits = standard_expansion(&self.base, h, &lvl.key);
        let s0 = side.left.index;
        let lead = digits.get(s0).ok_or_else(|| Error::SideMismatch(format!("no coefficient at index {s0}")))?;
        let v0 = self.value_at(r - 1, lead);
        if v0 != side.left.value {
            return Err(Error::SideMismatch(format!("value at index {s0} is {v0}, side starts at {}", side.left.value)));
        }
        let scaled = v0.finite().expect("finite") * BigInt::from(self.denominator_at(r - 1));
        let n = mono_scale(&self.normalizer_at(r - 1), scaled.to_integer().to_i64().expect("small"));
        let e = lvl.e_rel as usize;
        if !side.length.is_multiple_of(e) {
            return Err(Error::SideMismatch(format!("length {} not divisible by e = {e}", side.length)));
        }
        let coeffs: Vec<FfElem> = (0..=side.length / e)
            .map(|k| match digits.get(s0 + k * e) {
                Some(d) => self.reduce_unit(r - 1, d, &mono_add(&n, &mono_scale(&lvl.unit, -(k as i64)))),
                None => lvl.field.zero(),
            })
            .collect();
        let res = Poly::from_coeffs(&lvl.field, coeffs);
        if res.deg() != side.length / e || lvl.field.is_zero(&res.coeff(&lvl.field, 0)) {
            return Err(Error::SideMismatch(format!("side [{s0}, {}] is not a side of this polygon", side.right.index)));
        }
        Ok(res)
    }

    /// The next key polynomial lifting the monic residual factor `ψ` of the top
    /// level, together with `α_{r+1} = e_r·deg ψ`.
    pub fn lift_key(&self, psi: &FfPoly) -> Result<(Poly<K::Scalar>, u64), Error> {
        let r = self.depth();
        let lvl = self.top().ok_or_else(|| Error::InvalidInput(String::from("empty chain")))?;
        if psi.deg() == 0 || !psi.is_monic(&lvl.field) {
            return Err(Error::InvalidInput(String::from("residual factor must be monic and non-constant")));
        }
        if !is_irreducible(&lvl.field, psi) {
            return Err(Error::Reducible(lvl.field.poly_to_string(psi, "y")));
        }
        let base = &self.base;
        let f = psi.deg();
        let e = lvl.e_rel;
        let mut q = lvl.key.pow(base, e * f as u64);
        for (k, b) in psi.coeffs()[..f].iter().enumerate() {
            if lvl.field.is_zero(b) {
                continue;
            }
            let a = self.lift_unit(r - 1, b, &mono_scale(&lvl.unit, (f - k) as i64));
            q = q.add(base, &a.mul(base, &lvl.key.pow(base, e * k as u64)));
        }
        Ok((q, e * f as u64))
    }

    /// Human-readable `[(Q_1, β_1), …]` used in diagnostics.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .levels()
            .map(|l| format!("({}, {})", crate::basefield::format_poly(&self.base, &l.key, "x"), Value::Finite(l.beta.clone())))
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

impl<K: ValuedField> PartialEq for InductiveValuation<K> {
    fn eq(&self, other: &Self) -> bool {
        self.depth() == other.depth()
            && self.levels().zip(other.levels()).all(|(a, b)| a.key == b.key && a.beta == b.beta && a.psi == b.psi)
    }
}
