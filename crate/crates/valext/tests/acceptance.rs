//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use valext::run::{leaf_multiset, render_config, Base, Efd, Format, RunConfig};
use valext_core::arith::{Poly, Rat, Value};
use valext_core::basefield::{PAdicRationals, RatFunc, RationalFunctions, ValuedField};
use valext_core::extend::{enumerate_extensions, ExtensionReport, Options};
use valext_core::maclane::InductiveValuation;
use valext_core::Error;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn efd(e: u64, f: u64, d: u64) -> Efd {
    Efd { e, f, d }
}

fn q_report(p: u64, poly: &str) -> Result<ExtensionReport<PAdicRationals>, String> {
    let k = PAdicRationals::new(p).map_err(|e| e.to_string())?;
    let f = valext::parse_poly(poly, &k).map_err(|e| e.to_string())?;
    enumerate_extensions(&k, &f, &Options::default()).map_err(|e| e.to_string())
}

fn multiset(base: Base, p: u64, poly: &str) -> Result<Vec<Efd>, String> {
    leaf_multiset(&RunConfig::new(base, p, poly)).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = q_report(2, "x^2-2")?;
    let elapsed = start.elapsed();
    let got: Vec<_> = r.leaves.iter().map(|l| (l.e, l.f, l.d)).collect();
    ensure(got == [(2, 1, 1)] && r.unique, || format!("got {got:?}, unique={}", r.unique))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    let table = render_config(&RunConfig::new(Base::Q, 2, "x^2-2")).map_err(|e| e.to_string())?;
    ensure(table.contains("e=2 f=1 d=1 unique=yes"), || table.clone())?;
    Ok(format!("(x^2-2, 2): one extension (2,1,1), unique, {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let r = q_report(5, "x^2+1")?;
    let got: Vec<_> = r.leaves.iter().map(|l| (l.e, l.f, l.d)).collect();
    ensure(got == [(1, 1, 1), (1, 1, 1)] && !r.unique, || format!("got {got:?}, unique={}", r.unique))?;
    Ok(String::from("(x^2+1, 5): two extensions (1,1,1), not unique"))
}

fn criterion_3() -> Outcome {
    let got = multiset(Base::Q, 5, "x^3-2")?;
    ensure(got == [efd(1, 1, 1), efd(1, 2, 1)], || format!("got {got:?}"))?;
    Ok(String::from("(x^3-2, 5): {(1,1,1), (1,2,1)}"))
}

fn criterion_4() -> Outcome {
    let got = multiset(Base::Q, 2, "x^3-2")?;
    ensure(got == [efd(3, 1, 1)], || format!("got {got:?}"))?;
    Ok(String::from("(x^3-2, 2): one extension (3,1,1)"))
}

fn criterion_5() -> Outcome {
    let r = q_report(2, "x^2+4")?;
    ensure(r.leaves.len() == 1, || format!("{} leaves", r.leaves.len()))?;
    let l = &r.leaves[0];
    let betas: Vec<String> = l.beta_chain.iter().map(Value::to_string).collect();
    ensure((l.e, l.f, l.d) == (2, 1, 1), || format!("got ({},{},{})", l.e, l.f, l.d))?;
    ensure(betas == ["1/1", "3/2"], || format!("beta chain {betas:?}"))?;
    ensure(l.chain.depth() == 2, || format!("chain depth {}", l.chain.depth()))?;
    Ok(String::from("(x^2+4, 2): (2,1,1) through the two-level chain (1, 3/2)"))
}

fn criterion_6() -> Outcome {
    let got = multiset(Base::Fpt, 3, "x^2-t")?;
    ensure(got == [efd(2, 1, 1)], || format!("x^2-t: got {got:?}"))?;
    let k = RationalFunctions::new(3).map_err(|e| e.to_string())?;
    let f = valext::parse_poly("x^2-x-t", &k).map_err(|e| e.to_string())?;
    let r = enumerate_extensions(&k, &f, &Options::default()).map_err(|e| e.to_string())?;
    let mut gens: Vec<Value> = r.leaves.iter().map(|l| l.generator_value.clone()).collect();
    gens.sort();
    let shapes: Vec<_> = r.leaves.iter().map(|l| (l.e, l.f, l.d)).collect();
    ensure(shapes == [(1, 1, 1), (1, 1, 1)], || format!("x^2-x-t: got {shapes:?}"))?;
    ensure(gens == [Value::zero(), Value::from_int(1)], || format!("generator values {gens:?}"))?;
    Ok(String::from("F_3(t): x^2-t gives (2,1,1); x^2-x-t gives two (1,1,1) with values {0, 1}"))
}

/// A random monic squarefree integer polynomial of degree at most 5.
#[derive(Clone, Debug)]
struct Case {
    p: u64,
    coeffs: Vec<i64>,
}

impl Case {
    fn text(&self) -> String {
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = c.unsigned_abs();
            let body = match (i, mag) {
                (0, _) => mag.to_string(),
                (1, 1) => String::from("x"),
                (1, _) => format!("{mag}*x"),
                (_, 1) => format!("x^{i}"),
                _ => format!("{mag}*x^{i}"),
            };
            out.push_str(sign);
            out.push_str(&body);
        }
        out
    }

    fn config(&self) -> RunConfig {
        RunConfig { format: Format::Json, ..RunConfig::new(Base::Q, self.p, self.text()) }
    }
}

fn int_poly(coeffs: &[i64]) -> Vec<Rat> {
    coeffs.iter().map(|&c| Rat::from_integer(BigInt::from(c))).collect()
}

/// Determinant by fraction-exact elimination.
fn determinant(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::from_integer(BigInt::from(1));
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col].clone();
        for r in col + 1..n {
            let factor = &m[r][col] / &m[col][col];
            let pivot = m[col].clone();
            for (x, y) in m[r].iter_mut().zip(&pivot).skip(col) {
                *x -= &factor * y;
            }
        }
    }
    det
}

/// `disc(f)` up to sign, as the resultant of `f` and `f'` via the Sylvester matrix.
fn discriminant(coeffs: &[i64]) -> BigInt {
    let f = int_poly(coeffs);
    let n = f.len() - 1;
    if n == 1 {
        return BigInt::from(1);
    }
    let df: Vec<Rat> = (1..=n).map(|i| &f[i] * Rat::from_integer(BigInt::from(i))).collect();
    let size = 2 * n - 1;
    let mut m = vec![vec![Rat::zero(); size]; size];
    for r in 0..n - 1 {
        for (j, c) in f.iter().rev().enumerate() {
            m[r][r + j] = c.clone();
        }
    }
    for r in 0..n {
        for (j, c) in df.iter().rev().enumerate() {
            m[n - 1 + r][r + j] = c.clone();
        }
    }
    determinant(m).to_integer()
}

fn fp_divides(p: u64, f: &[u64], g: &[u64]) -> Option<Vec<u64>> {
    // g monic; returns f / g when the remainder vanishes
    let mut r = f.to_vec();
    let (n, m) = (f.len() - 1, g.len() - 1);
    if n < m {
        return None;
    }
    let mut q = vec![0; n - m + 1];
    for i in (0..=n - m).rev() {
        let c = r[i + m] % p;
        q[i] = c;
        for j in 0..=m {
            r[i + j] = (r[i + j] + p * p - c * g[j] % p) % p;
        }
    }
    r[..m].iter().all(|&c| c == 0).then_some(q)
}

/// All monic irreducibles of degree `1..=max` over `𝔽_p` by sieving.
fn irreducibles(p: u64, max: usize) -> Vec<Vec<u64>> {
    let mut found: Vec<Vec<u64>> = Vec::new();
    for d in 1..=max {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g: Vec<u64> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
            g.push(1);
            let reducible = found.iter().any(|h| 2 * (h.len() - 1) <= d && fp_divides(p, &g, h).is_some());
            if !reducible {
                found.push(g);
            }
        }
    }
    found
}

fn factor_degrees_mod_p(p: u64, coeffs: &[i64], table: &[Vec<u64>]) -> Vec<u64> {
    let mut f: Vec<u64> = coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    let mut out = Vec::new();
    for g in table {
        while f.len() > 1 {
            match fp_divides(p, &f, g) {
                Some(q) => {
                    out.push((g.len() - 1) as u64);
                    f = q;
                }
                None => break,
            }
        }
    }
    out.sort();
    out
}

fn ord_p(n: i64, p: u64) -> Option<i64> {
    if n == 0 {
        return None;
    }
    let (mut n, mut k) = (n, 0);
    while n % p as i64 == 0 {
        n /= p as i64;
        k += 1;
    }
    Some(k)
}

/// Root valuations with multiplicity from the lower hull of `(i, ord_p a_i)`.
fn root_valuations(p: u64, coeffs: &[i64]) -> Vec<Value> {
    let pts: Vec<(usize, i64)> = coeffs.iter().enumerate().filter_map(|(i, &c)| ord_p(c, p).map(|v| (i, v))).collect();
    let mut out = vec![Value::Infinity; pts[0].0];
    let mut cur = pts[0];
    while cur.0 < coeffs.len() - 1 {
        let mut best: Option<((usize, i64), Rat)> = None;
        for &q in pts.iter().filter(|q| q.0 > cur.0) {
            let slope = Rat::new(BigInt::from(q.1 - cur.1), BigInt::from((q.0 - cur.0) as i64));
            let better = match &best {
                None => true,
                Some((b, s)) => slope < *s || (slope == *s && q.0 > b.0),
            };
            if better {
                best = Some((q, slope));
            }
        }
        let (next, slope) = best.expect("monic polynomial has a last point");
        for _ in cur.0..next.0 {
            out.push(Value::Finite(-slope.clone()));
        }
        cur = next;
    }
    out.sort();
    out
}

fn random_corpus(count: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let k = PAdicRationals::new(2).unwrap();
    let mut out = Vec::new();
    while out.len() < count {
        let deg = rng.random_range(1..=5);
        let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.random_range(-50..=50)).collect();
        coeffs.push(1);
        let f = Poly::from_coeffs(&k, int_poly(&coeffs));
        if f.gcd(&k, &f.derivative(&k)).deg() > 0 {
            continue;
        }
        let p = [2, 3, 5][rng.random_range(0..3)];
        out.push(Case { p, coeffs });
    }
    out
}

struct CorpusRun {
    case: Case,
    report: ExtensionReport<PAdicRationals>,
}

fn run_corpus(cases: &[Case]) -> Result<(Vec<CorpusRun>, Duration), String> {
    let start = Instant::now();
    let mut runs = Vec::new();
    for c in cases {
        let report = q_report(c.p, &c.text()).map_err(|e| format!("{} at p={}: {e}", c.text(), c.p))?;
        runs.push(CorpusRun { case: c.clone(), report });
    }
    Ok((runs, start.elapsed()))
}

fn criterion_7(runs: &[CorpusRun], elapsed: Duration) -> Outcome {
    let mut checks = 0;
    for r in runs {
        let n = r.case.coeffs.len() as u64 - 1;
        ensure(r.report.sum_efd == n, || format!("{}: sum {} != {n}", r.case.text(), r.report.sum_efd))?;
        ensure(!r.report.invariant_log.is_empty(), || format!("{}: no invariants checked", r.case.text()))?;
        ensure(r.report.invariant_log.iter().all(|c| c.passed), || format!("{}: failed check", r.case.text()))?;
        checks += r.report.invariant_log.len();
    }
    ensure(runs.len() >= 100, || format!("only {} cases", runs.len()))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} random cases: sum e*f*d = n, {checks} invariant checks passed, {elapsed:?}", runs.len()))
}

fn criterion_8(runs: &[CorpusRun]) -> Outcome {
    let tables: BTreeMap<u64, Vec<Vec<u64>>> = [2, 3, 5].into_iter().map(|p| (p, irreducibles(p, 5))).collect();
    let mut compared = 0;
    for r in runs {
        let disc = discriminant(&r.case.coeffs);
        if (disc % BigInt::from(r.case.p)).is_zero() {
            continue;
        }
        let mut expect: Vec<(u64, u64, u64)> =
            factor_degrees_mod_p(r.case.p, &r.case.coeffs, &tables[&r.case.p]).into_iter().map(|d| (1, d, 1)).collect();
        expect.sort();
        let mut got: Vec<_> = r.report.leaves.iter().map(|l| (l.e, l.f, l.d)).collect();
        got.sort();
        ensure(got == expect, || format!("{} at p={}: got {got:?}, oracle {expect:?}", r.case.text(), r.case.p))?;
        compared += 1;
    }
    ensure(compared > 0, || String::from("no case with p prime to the discriminant"))?;
    Ok(format!("{compared} cases with p not dividing disc(f) match the factorization mod p"))
}

fn criterion_9(runs: &[CorpusRun]) -> Outcome {
    for r in runs {
        let expect = root_valuations(r.case.p, &r.case.coeffs);
        let mut got: Vec<Value> = Vec::new();
        for l in &r.report.leaves {
            for _ in 0..l.e * l.f * l.d {
                got.push(l.generator_value.clone());
            }
        }
        got.sort();
        ensure(got == expect, || format!("{} at p={}: got {got:?}, polygon {expect:?}", r.case.text(), r.case.p))?;
    }
    Ok(format!("{} cases: weighted first slopes match the Newton polygon of f", runs.len()))
}

fn axioms<K: ValuedField>(
    chain: &InductiveValuation<K>,
    pairs: usize,
    rng: &mut ChaCha8Rng,
    random: &mut dyn FnMut(&mut ChaCha8Rng) -> Poly<K::Scalar>,
) -> Result<(), String> {
    let field = chain.base_field();
    for _ in 0..pairs {
        let (g, h) = (random(rng), random(rng));
        let (vg, vh) = (chain.value(&g), chain.value(&h));
        let prod = chain.value(&g.mul(field, &h));
        ensure(prod == &vg + &vh, || format!("{}: nu(gh) = {prod} != {vg} + {vh}", chain.describe()))?;
        let sum = chain.value(&g.add(field, &h));
        ensure(sum >= vg.clone().min(vh.clone()), || format!("{}: nu(g+h) = {sum} < min({vg}, {vh})", chain.describe()))?;
        for i in 1..chain.depth() {
            let (lo, hi) = (chain.value_at(i, &g), chain.value_at(i + 1, &g));
            ensure(lo <= hi, || format!("{}: nu_{i} = {lo} > nu_{} = {hi}", chain.describe(), i + 1))?;
        }
    }
    Ok(())
}

fn criterion_10(runs: &[CorpusRun]) -> Outcome {
    const PAIRS: usize = 500;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut chains = 0;
    for r in runs {
        let k = PAdicRationals::new(r.case.p).unwrap();
        let mut random = |rng: &mut ChaCha8Rng| {
            let deg = rng.random_range(0..=6);
            let c: Vec<i64> = (0..=deg).map(|_| rng.random_range(-50..=50)).collect();
            Poly::from_coeffs(&k, int_poly(&c))
        };
        for l in &r.report.leaves {
            if l.chain.depth() == 0 {
                continue;
            }
            axioms(&l.chain, PAIRS, &mut rng, &mut random)?;
            chains += 1;
        }
    }
    let k = RationalFunctions::new(3).unwrap();
    for poly in ["x^2-t", "x^2-x-t", "x^3-t^2*x-t^4"] {
        let f = valext::parse_poly(poly, &k).map_err(|e| e.to_string())?;
        let report = enumerate_extensions(&k, &f, &Options::default()).map_err(|e| e.to_string())?;
        let fp = k.prime_field();
        let mut random = |rng: &mut ChaCha8Rng| {
            let deg = rng.random_range(0..=6);
            let c: Vec<RatFunc> = (0..=deg)
                .map(|_| {
                    let t: Vec<u64> = (0..rng.random_range(1..=3)).map(|_| rng.random_range(0..3)).collect();
                    k.from_poly(Poly::from_coeffs(&fp, t))
                })
                .collect();
            Poly::from_coeffs(&k, c)
        };
        for l in &report.leaves {
            if l.chain.depth() > 0 {
                axioms(&l.chain, PAIRS, &mut rng, &mut random)?;
                chains += 1;
            }
        }
    }
    Ok(format!("{chains} chains x {PAIRS} pairs: multiplicative, ultrametric, monotone along the chain"))
}

fn criterion_11(cases: &[Case]) -> Outcome {
    for c in cases {
        let base = c.config();
        let first = render_config(&base).map_err(|e| e.to_string())?;
        let again = render_config(&base).map_err(|e| e.to_string())?;
        let parallel = render_config(&RunConfig { parallel: true, ..base.clone() }).map_err(|e| e.to_string())?;
        let reseeded = render_config(&RunConfig { seed: 99, parallel: true, ..base.clone() }).map_err(|e| e.to_string())?;
        ensure(first == again && first == parallel && first == reseeded, || format!("{}: JSON differs", c.text()))?;
    }
    Ok(format!("{} cases: byte-identical JSON across repeated, parallel and reseeded runs", cases.len()))
}

fn criterion_12() -> Outcome {
    let k = PAdicRationals::new(2).unwrap();
    let f = valext::parse_poly("x^3-3*x+2", &k).map_err(|e| e.to_string())?;
    let err = enumerate_extensions(&k, &f, &Options::default()).err();
    ensure(err == Some(Error::NotSquarefree), || format!("(x-1)^2(x+2): {err:?}"))?;
    let f = valext::parse_poly("x^2+4", &k).map_err(|e| e.to_string())?;
    let opts = Options { max_augmentations: Some(1), ..Options::default() };
    match enumerate_extensions(&k, &f, &opts) {
        Err(e @ Error::NonTermination { .. }) => {
            let msg = e.to_string();
            ensure(msg.contains("Case 2b"), || msg.clone())?;
        }
        other => return Err(format!("tiny limit gave {:?}", other.map(|r| r.leaves.len()))),
    }
    let out = valext::run(&RunConfig { max_augmentations: Some(1), ..RunConfig::new(Base::Q, 2, "x^2+4") });
    ensure(out.code == 3, || format!("exit code {}", out.code))?;
    Ok(String::from("non-squarefree input rejected; tiny augmentation limit reports Case 2b with exit 3"))
}

fn main() {
    let cases = random_corpus(120);
    let corpus = run_corpus(&cases);
    let with_corpus = |f: &dyn Fn(&[CorpusRun], Duration) -> Outcome| match &corpus {
        Ok((runs, elapsed)) => f(runs, *elapsed),
        Err(e) => Err(e.clone()),
    };
    let results: Vec<(usize, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4()),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, with_corpus(&criterion_7)),
        (8, with_corpus(&|r, _| criterion_8(r))),
        (9, with_corpus(&|r, _| criterion_9(r))),
        (10, with_corpus(&|r, _| criterion_10(r))),
        (11, criterion_11(&cases)),
        (12, criterion_12()),
    ];
    let mut failed = 0;
    for (n, r) in &results {
        match r {
            Ok(msg) => println!("PASS criterion {n:>2}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {n:>2}: {msg}");
            }
        }
    }
    println!("{}/{} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
