//! Factorization over tower fields: squarefree decomposition, distinct-degree
//! splitting, then equal-degree splitting (Cantor–Zassenhaus; trace map in
//! characteristic 2).

use alloc::vec::Vec;

use num_bigint::BigUint;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use super::poly::Poly;
use super::tower::{FfElem, FfPoly, FiniteField};

/// Default seed for the randomized equal-degree step.
pub const DEFAULT_SEED: u64 = 0;

/// Complete factorization of a nonzero `g` into monic irreducibles with
/// multiplicities, in canonical order (degree, then coefficients).
///
/// The leading coefficient of `g` is dropped. The result only depends on
/// `(field, g, seed)`.
pub fn factor(field: &FiniteField, g: &FfPoly, seed: u64) -> Vec<(FfPoly, usize)> {
    assert!(!g.is_zero(), "cannot factor the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(field, &g.monic(field)) {
        for (block, d) in distinct_degree(field, &part) {
            let mut pieces = Vec::new();
            equal_degree(field, &block, d, &mut rng, &mut pieces);
            out.extend(pieces.into_iter().map(|q| (q, mult)));
        }
    }
    out.sort_by(|(a, _), (b, _)| a.deg().cmp(&b.deg()).then_with(|| a.cmp(b)));
    out
}

pub fn is_irreducible(field: &FiniteField, g: &FfPoly) -> bool {
    if g.deg() == 0 {
        return false;
    }
    let f = factor(field, g, DEFAULT_SEED);
    f.len() == 1 && f[0].1 == 1
}

/// Pairwise coprime squarefree parts with their multiplicities.
pub fn squarefree_decomposition(field: &FiniteField, f: &FfPoly) -> Vec<(FfPoly, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let one = Poly::one(field);
    let c0 = f.gcd(field, &f.derivative(field));
    let mut w = f.div_exact(field, &c0).expect("gcd divides");
    let mut c = c0;
    let mut i = 1;
    while w != one {
        let y = w.gcd(field, &c);
        let z = w.div_exact(field, &y).expect("gcd divides");
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(field, &y).expect("gcd divides");
        w = y;
    }
    if c != one {
        // c'(x) = 0, so c = h(x^p) and h is the coefficientwise p-th root.
        let p = field.p() as usize;
        let root_coeffs = c.coeffs().iter().step_by(p).map(|a| field.pth_root(a)).collect();
        let h = Poly::from_coeffs(field, root_coeffs);
        out.extend(squarefree_decomposition(field, &h).into_iter().map(|(g, m)| (g, m * p)));
    }
    out
}

/// `h^q mod f` where `q` is the field order.
fn frobenius_mod(field: &FiniteField, h: &FfPoly, f: &FfPoly) -> FfPoly {
    (0..field.absolute_degree()).fold(h.clone(), |acc, _| acc.pow_mod(field, field.p(), f))
}

/// Splits a monic squarefree `f` into products of irreducibles of equal degree.
pub fn distinct_degree(field: &FiniteField, f: &FfPoly) -> Vec<(FfPoly, usize)> {
    let mut out = Vec::new();
    let x = Poly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(field, &rest).expect("monic");
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = frobenius_mod(field, &h, &rest);
        let g = rest.gcd(field, &h.sub(field, &x));
        if g.deg() > 0 {
            rest = rest.div_exact(field, &g).expect("gcd divides");
            h = h.rem(field, &rest).expect("monic");
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

fn random_poly(field: &FiniteField, deg_bound: usize, rng: &mut ChaCha8Rng) -> FfPoly {
    let coeffs: Vec<FfElem> = (0..deg_bound).map(|_| field.random(rng)).collect();
    Poly::from_coeffs(field, coeffs)
}

fn equal_degree(field: &FiniteField, f: &FfPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FfPoly>) {
    let n = f.deg();
    if n == d {
        out.push(f.clone());
        return;
    }
    let p = field.p();
    let one = Poly::one(field);
    let exponent: Option<Vec<u64>> = if p == 2 {
        None
    } else {
        let qd = field.order().pow(d as u32);
        let half: BigUint = (qd - BigUint::from(1u32)) >> 1u32;
        Some(half.to_u64_digits())
    };
    loop {
        let a = random_poly(field, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let b = match &exponent {
            Some(limbs) => a.pow_mod_limbs(field, limbs, f).sub(field, &one),
            None => {
                let steps = field.absolute_degree() * d;
                let mut term = a.rem(field, f).expect("monic");
                let mut trace = term.clone();
                for _ in 1..steps {
                    term = term.pow_mod(field, 2, f);
                    trace = trace.add(field, &term);
                }
                trace
            }
        };
        let g = f.gcd(field, &b);
        if g.deg() > 0 && g.deg() < n {
            let cofactor = f.div_exact(field, &g).expect("gcd divides");
            equal_degree(field, &g, d, rng, out);
            equal_degree(field, &cofactor, d, rng, out);
            return;
        }
    }
}

/// Multiplies factors back together, for checking purposes.
pub fn recombine(field: &FiniteField, factors: &[(FfPoly, usize)]) -> FfPoly {
    factors
        .iter()
        .fold(Poly::one(field), |acc, (g, k)| acc.mul(field, &g.pow(field, *k as u64)))
}
