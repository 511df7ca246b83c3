//! Enumeration of all extensions of the base valuation to `K[x]/(f)`.
//!
//! Starting from `Q_1 = x`, every node expands `f` in its pending key polynomial,
//! takes the sides of the Newton polygon up to the characteristic index `θ`,
//! factors the residual polynomial of each side and branches on the factors. A
//! factor of multiplicity one closes the branch. A key polynomial dividing `f`
//! closes it too, with `β = ∞`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::arith::{factor, FfPoly, FiniteField, Poly, Rat, Value, DEFAULT_SEED};
use crate::basefield::{normalize_input, BaseKind, ValuedField};
use crate::error::Error;
use crate::maclane::InductiveValuation;
use crate::newton::{lower_hull, minimizers, polygon_invariants, NewtonPolygon, PolygonInvariants, PolygonPoint, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    /// Bound on the number of levels along a branch; `None` means `16·n`.
    pub max_augmentations: Option<usize>,
    pub check_invariants: bool,
    /// Explore sibling branches concurrently. Only effective with the `parallel`
    /// feature; the result is identical either way.
    pub parallel: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: DEFAULT_SEED, max_augmentations: None, check_invariants: true, parallel: false }
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionLeaf<K: ValuedField> {
    /// The closed chain `(Q_1, β_1), …, (Q_r, β_r)` with its residual factors.
    pub chain: InductiveValuation<K>,
    pub e: u64,
    pub f: u64,
    /// Always 1: the supported base fields are defectless.
    pub d: u64,
    pub beta_chain: Vec<Value>,
    /// The keys of the chain followed by `approx_factor`.
    pub key_polynomials: Vec<Poly<K::Scalar>>,
    /// The last key polynomial; a factor of `f` when `exact`, otherwise an
    /// approximation of one with `e·f = deg`.
    pub approx_factor: Poly<K::Scalar>,
    pub exact: bool,
    /// `ν′(x)` for the original generator.
    pub generator_value: Value,
    target: Arc<Poly<K::Scalar>>,
    shift: i64,
}

#[derive(Clone, Debug)]
pub enum Outcome<K: ValuedField> {
    Leaf(ExtensionLeaf<K>),
    Node(TreeNode<K>),
}

#[derive(Clone, Debug)]
pub struct Child<K: ValuedField> {
    /// `None` for the branch `β = ∞`.
    pub psi: Option<FfPoly>,
    /// `θ` of the child: the multiplicity of `ψ` in the residual polynomial.
    pub multiplicity: usize,
    pub alpha: u64,
    pub outcome: Outcome<K>,
}

#[derive(Clone, Debug)]
pub struct Branch<K: ValuedField> {
    pub beta: Value,
    pub side: Option<Side>,
    pub invariants: Option<PolygonInvariants>,
    pub residual: Option<FfPoly>,
    /// The field of the residual polynomial.
    pub field: FiniteField,
    pub children: Vec<Child<K>>,
}

#[derive(Clone, Debug)]
pub struct TreeNode<K: ValuedField> {
    /// The closed chain below the pending key.
    pub chain: InductiveValuation<K>,
    pub key: Poly<K::Scalar>,
    pub alpha: u64,
    pub theta: usize,
    pub polygon: NewtonPolygon,
    pub branches: Vec<Branch<K>>,
}

impl<K: ValuedField> TreeNode<K> {
    pub fn children(&self) -> impl Iterator<Item = &Child<K>> {
        self.branches.iter().flat_map(|b| b.children.iter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub check: &'static str,
    pub passed: bool,
    pub chain: String,
}

#[derive(Clone, Debug)]
pub struct ExtensionReport<K: ValuedField> {
    pub kind: BaseKind,
    pub p: u64,
    pub input: Poly<K::Scalar>,
    pub normalized: Poly<K::Scalar>,
    pub shift: i64,
    pub tree: TreeNode<K>,
    pub leaves: Vec<ExtensionLeaf<K>>,
    pub unique: bool,
    pub sum_efd: u64,
    pub invariant_log: Vec<InvariantCheck>,
}

impl<K: ValuedField> ExtensionReport<K> {
    pub fn degree(&self) -> usize {
        self.normalized.deg()
    }
}

struct Explorer<K: ValuedField> {
    field: K,
    target: Arc<Poly<K::Scalar>>,
    shift: i64,
    seed: u64,
    max_aug: usize,
    parallel: bool,
}

type Task<K> = (usize, InductiveValuation<K>, FfPoly, usize);

impl<K: ValuedField> Explorer<K> {
    fn leaf(&self, closed: &InductiveValuation<K>, approx: Poly<K::Scalar>, exact: bool) -> ExtensionLeaf<K> {
        let mut beta_chain: Vec<Value> = closed.betas().into_iter().map(Value::Finite).collect();
        let mut key_polynomials = closed.keys();
        key_polynomials.push(approx.clone());
        if exact {
            beta_chain.push(Value::Infinity);
        }
        let generator_value = beta_chain[0].sub_finite(&Rat::from_integer(BigInt::from(self.shift)));
        ExtensionLeaf {
            chain: closed.clone(),
            e: closed.group_denominator(),
            f: closed.residue_field().expect("closed chain").absolute_degree() as u64,
            d: 1,
            beta_chain,
            key_polynomials,
            approx_factor: approx,
            exact,
            generator_value,
            target: self.target.clone(),
            shift: self.shift,
        }
    }

    fn node(
        &self,
        chain: InductiveValuation<K>,
        key: Poly<K::Scalar>,
        alpha: u64,
        theta: usize,
        depth: usize,
    ) -> Result<TreeNode<K>, Error> {
        if depth > self.max_aug {
            return Err(Error::NonTermination {
                limit: self.max_aug,
                betas: chain.betas().into_iter().map(Value::Finite).collect(),
            });
        }
        let polygon = polygon_of(&chain, &self.target, &key)?;
        let mut branches = Vec::new();
        let s = polygon.min_index();
        if s > 0 {
            let leaf = self.leaf(&chain, key.clone(), true);
            branches.push(Branch {
                beta: Value::Infinity,
                side: None,
                invariants: None,
                residual: None,
                field: chain.residue_field().expect("closed chain").clone(),
                children: vec![Child { psi: None, multiplicity: s, alpha: 1, outcome: Outcome::Leaf(leaf) }],
            });
        }
        let mut tasks: Vec<Task<K>> = Vec::new();
        for side in polygon.sides.iter().filter(|s| s.right.index <= theta) {
            let lvl = chain.augment(key.clone(), side.beta.clone())?;
            let residual = lvl.residual_polynomial(&self.target, side)?;
            let invariants = polygon_invariants(&polygon, &side.beta, theta)?;
            let field = lvl.top_field().clone();
            for (psi, m) in factor(&field, &residual, self.seed) {
                tasks.push((branches.len(), lvl.clone(), psi, m));
            }
            branches.push(Branch {
                beta: Value::Finite(side.beta.clone()),
                side: Some(side.clone()),
                invariants: Some(invariants),
                residual: Some(residual),
                field,
                children: Vec::new(),
            });
        }
        let slots: Vec<usize> = tasks.iter().map(|t| t.0).collect();
        for (slot, child) in slots.into_iter().zip(self.children(tasks, depth)) {
            branches[slot].children.push(child?);
        }
        Ok(TreeNode { chain, key, alpha, theta, polygon, branches })
    }

    fn child(&self, task: Task<K>, depth: usize) -> Result<Child<K>, Error> {
        let (_, lvl, psi, m) = task;
        let closed = lvl.with_residual_factor(&psi)?;
        let (next, alpha) = lvl.lift_key(&psi)?;
        let outcome = if m == 1 {
            Outcome::Leaf(self.leaf(&closed, next, false))
        } else {
            Outcome::Node(self.node(closed, next, alpha, m, depth + 1)?)
        };
        Ok(Child { psi: Some(psi), multiplicity: m, alpha, outcome })
    }

    #[cfg(feature = "parallel")]
    fn children(&self, tasks: Vec<Task<K>>, depth: usize) -> Vec<Result<Child<K>, Error>> {
        use rayon::prelude::*;
        if self.parallel && tasks.len() > 1 {
            return tasks.into_par_iter().map(|t| self.child(t, depth)).collect();
        }
        tasks.into_iter().map(|t| self.child(t, depth)).collect()
    }

    #[cfg(not(feature = "parallel"))]
    fn children(&self, tasks: Vec<Task<K>>, depth: usize) -> Vec<Result<Child<K>, Error>> {
        let _ = self.parallel;
        tasks.into_iter().map(|t| self.child(t, depth)).collect()
    }
}

fn points_of(values: &[Value]) -> Vec<PolygonPoint> {
    values.iter().enumerate().map(|(j, v)| PolygonPoint::new(j, v.clone())).collect()
}

fn polygon_of<K: ValuedField>(
    chain: &InductiveValuation<K>,
    f: &Poly<K::Scalar>,
    key: &Poly<K::Scalar>,
) -> Result<NewtonPolygon, Error> {
    lower_hull(&points_of(&chain.expand(f, key).values), chain.group_denominator())
}

fn collect_leaves<K: ValuedField>(node: &TreeNode<K>, out: &mut Vec<ExtensionLeaf<K>>) {
    for c in node.children() {
        match &c.outcome {
            Outcome::Leaf(l) => out.push(l.clone()),
            Outcome::Node(n) => collect_leaves(n, out),
        }
    }
}

/// All extensions of the valuation of `field` to `field[x]/(f)`.
pub fn enumerate_extensions<K: ValuedField>(
    field: &K,
    f: &Poly<K::Scalar>,
    opts: &Options,
) -> Result<ExtensionReport<K>, Error> {
    let normalized = normalize_input(field, f)?;
    let n = normalized.poly.deg();
    let explorer = Explorer {
        field: field.clone(),
        target: Arc::new(normalized.poly.clone()),
        shift: normalized.shift,
        seed: opts.seed,
        max_aug: opts.max_augmentations.unwrap_or(16 * n),
        parallel: opts.parallel,
    };
    let tree = explorer.node(InductiveValuation::base(explorer.field.clone()), Poly::x(field), 1, n, 1)?;
    let mut leaves = Vec::new();
    collect_leaves(&tree, &mut leaves);
    let sum_efd = leaves.iter().map(|l| l.e * l.f * l.d).sum();
    let mut report = ExtensionReport {
        kind: field.kind(),
        p: field.p(),
        input: f.clone(),
        normalized: normalized.poly,
        shift: normalized.shift,
        unique: false,
        tree,
        leaves,
        sum_efd,
        invariant_log: Vec::new(),
    };
    report.unique = is_unique(&report);
    if opts.check_invariants {
        let mut log = Vec::new();
        check_subtree(&report.tree, &report.normalized, true, &mut log);
        let chain = String::from("[]");
        log.push(InvariantCheck { check: "sum of e*f*d equals n", passed: report.sum_efd == n as u64, chain: chain.clone() });
        log.push(InvariantCheck {
            check: "unique iff exactly one leaf",
            passed: report.unique == (report.leaves.len() == 1),
            chain,
        });
        for l in &report.leaves {
            log.push(InvariantCheck {
                check: "e*f equals the degree of the approximate factor",
                passed: (l.e * l.f) as usize == l.approx_factor.deg(),
                chain: l.chain.describe(),
            });
        }
        if let Some(bad) = log.iter().find(|c| !c.passed) {
            return Err(Error::InvariantViolation { check: String::from(bad.check), chain: bad.chain.clone() });
        }
        report.invariant_log = log;
    }
    ramification_sum_check(&report)?;
    Ok(report)
}

fn check_subtree<K: ValuedField>(node: &TreeNode<K>, f: &Poly<K::Scalar>, root: bool, log: &mut Vec<InvariantCheck>) {
    log.extend(node_invariant_checks(node, f, root));
    for c in node.children() {
        if let Outcome::Node(n) = &c.outcome {
            check_subtree(n, f, false, log);
        }
    }
}

/// `(δ, ε)` as a lexicographic key with `ε = ∞` largest.
fn delta_epsilon(inv: &PolygonInvariants) -> (usize, usize) {
    (inv.delta, inv.epsilon.unwrap_or(usize::MAX))
}

/// The assertions attached to one node and the edges leaving it.
pub fn node_invariant_checks<K: ValuedField>(node: &TreeNode<K>, f: &Poly<K::Scalar>, root: bool) -> Vec<InvariantCheck> {
    let mut out = Vec::new();
    let here = node.chain.describe();
    let mut record = |check: &'static str, passed: bool, chain: &String| {
        out.push(InvariantCheck { check, passed, chain: chain.clone() });
    };

    // the characteristic vertex sits at θ
    let previous = node.chain.top().map(|l| &l.beta * BigInt::from(node.alpha));
    let theta_ok = match &previous {
        None => root && node.polygon.point(node.theta).is_some() && node.theta == f.deg(),
        Some(bound) => {
            let (min, at) = minimizers(&node.polygon, bound);
            at.first() == Some(&node.theta) && min == node.chain.value(f)
        }
    };
    record("characteristic index equals the multiplicity", theta_ok, &here);

    let total: usize = node.children().map(|c| c.alpha as usize * c.multiplicity).sum();
    record("sum of alpha*theta over children equals theta", total == node.theta, &here);

    for branch in &node.branches {
        let (Some(side), Some(inv), Some(res)) = (&branch.side, &branch.invariants, &branch.residual) else {
            continue;
        };
        record("residual degree equals length / e", res.deg() == side.degree(), &here);
        record("theta bounds delta", inv.delta <= node.theta, &here);
        if let Some(bound) = &previous {
            record("condition (*)", side.beta > *bound, &here);
        }
        let nu_here = Value::Finite(side.line_value());
        for child in &branch.children {
            record("alpha*theta_child bounded by delta", child.alpha as usize * child.multiplicity <= inv.delta, &here);
            match &child.outcome {
                Outcome::Node(c) => {
                    for cb in &c.branches {
                        if let Some(ci) = &cb.invariants {
                            record("alpha*delta non-increasing", child.alpha as usize * ci.delta <= inv.delta, &here);
                            record("(delta, epsilon) non-increasing", delta_epsilon(ci) <= delta_epsilon(inv), &here);
                        }
                        let nu_next = match &cb.side {
                            Some(s) => Value::Finite(s.line_value()),
                            None => Value::Infinity,
                        };
                        record("value of f strictly increases", nu_next > nu_here, &here);
                    }
                }
                Outcome::Leaf(leaf) if !leaf.exact => {
                    record("terminal refinement", terminal_refinement_ok(leaf, f, child.alpha, side), &here);
                }
                Outcome::Leaf(_) => {}
            }
        }
    }
    out
}

/// One more augmentation past a multiplicity-one factor yields `θ = 1`, `δ = 1`,
/// Condition (*) and a larger value of `f`.
fn terminal_refinement_ok<K: ValuedField>(leaf: &ExtensionLeaf<K>, f: &Poly<K::Scalar>, alpha: u64, side: &Side) -> bool {
    let Ok(polygon) = polygon_of(&leaf.chain, f, &leaf.approx_factor) else {
        return false;
    };
    let bound = &side.beta * BigInt::from(alpha);
    let (min, at) = minimizers(&polygon, &bound);
    if at.first() != Some(&1) || min != Value::Finite(side.line_value()) {
        return false;
    }
    match polygon.sides.first() {
        None => polygon.min_index() == 1,
        Some(s) if polygon.min_index() == 0 => s.right.index == 1 && s.beta > bound,
        Some(_) => true,
    }
}

fn node_is_unique<K: ValuedField>(node: &TreeNode<K>) -> bool {
    let mut kids = node.children();
    match (kids.next(), kids.next()) {
        (Some(c), None) => match &c.outcome {
            Outcome::Leaf(_) => true,
            Outcome::Node(n) => node_is_unique(n),
        },
        _ => false,
    }
}

/// Whether every node has a single side below its characteristic vertex whose
/// residual polynomial is a power of one irreducible.
pub fn is_unique<K: ValuedField>(report: &ExtensionReport<K>) -> bool {
    node_is_unique(&report.tree)
}

pub fn ramification_sum_check<K: ValuedField>(report: &ExtensionReport<K>) -> Result<(), Error> {
    let n = report.degree() as u64;
    let sum: u64 = report.leaves.iter().map(|l| l.e * l.f * l.d).sum();
    if sum != n || report.sum_efd != n {
        return Err(Error::InvariantViolation {
            check: format!("sum of e*f*d = {sum}, expected {n}"),
            chain: String::from("[]"),
        });
    }
    Ok(())
}

/// Refinement of a leaf towards the factor of `f` it approximates.
struct Refiner<K: ValuedField> {
    chain: InductiveValuation<K>,
    key: Poly<K::Scalar>,
    beta: Value,
}

const MAX_REFINEMENTS: usize = 256;

impl<K: ValuedField> Refiner<K> {
    fn new(leaf: &ExtensionLeaf<K>) -> Self {
        let mut r = Refiner { chain: leaf.chain.clone(), key: leaf.approx_factor.clone(), beta: Value::Infinity };
        r.beta = r.key_value(&leaf.target);
        r
    }

    /// `ν′(key)`, read off the expansion of `f`: the first side has length one.
    fn key_value(&self, f: &Poly<K::Scalar>) -> Value {
        let exp = self.chain.expand(f, &self.key);
        match (exp.values.first(), exp.values.get(1)) {
            (Some(Value::Finite(v0)), Some(Value::Finite(v1))) => Value::Finite(v0 - v1),
            _ => Value::Infinity,
        }
    }

    /// `ν′(h)` when the expansion of `h` in the key has a unique term of least value.
    fn certified(&self, h: &Poly<K::Scalar>) -> Option<Value> {
        let exp = self.chain.expand(h, &self.key);
        let Value::Finite(beta) = &self.beta else {
            return Some(exp.values.first().cloned().unwrap_or(Value::Infinity));
        };
        let weights: Vec<Value> = exp
            .values
            .iter()
            .enumerate()
            .map(|(j, v)| v + &(beta * BigInt::from(j)))
            .collect();
        let min = weights.iter().min().cloned().unwrap_or(Value::Infinity);
        if min.is_infinite() {
            return Some(min);
        }
        (weights.iter().filter(|w| **w == min).count() == 1).then_some(min)
    }

    fn refine(&mut self, f: &Poly<K::Scalar>) -> Result<(), Error> {
        let Value::Finite(beta) = self.beta.clone() else {
            return Ok(());
        };
        let lvl = self.chain.augment(self.key.clone(), beta.clone())?;
        let polygon = polygon_of(&self.chain, f, &self.key)?;
        let side = polygon
            .sides
            .iter()
            .find(|s| s.left.index == 0 && s.right.index == 1)
            .ok_or_else(|| Error::SideMismatch(String::from("approximate factor is not simple")))?;
        let residual = lvl.residual_polynomial(f, side)?;
        let psi = residual.monic(lvl.top_field());
        self.chain = lvl.with_residual_factor(&psi)?;
        self.key = lvl.lift_key(&psi)?.0;
        self.beta = self.key_value(f);
        Ok(())
    }
}

/// `h(Y/π^k)`, re-expressing a polynomial in the original generator in terms of
/// the normalized one.
fn unshift<K: ValuedField>(field: &K, h: &Poly<K::Scalar>, shift: i64) -> Poly<K::Scalar> {
    let coeffs = h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| field.mul(a, &field.uniformizer_pow(-shift * i as i64)))
        .collect();
    Poly::from_coeffs(field, coeffs)
}

/// `ν′(h(x))` for the extension described by `leaf`, with `h` a polynomial in the
/// original generator.
pub fn extension_value<K: ValuedField>(leaf: &ExtensionLeaf<K>, h: &Poly<K::Scalar>) -> Result<Value, Error> {
    let field = leaf.chain.base_field().clone();
    let h = unshift(&field, h, leaf.shift);
    if h.is_zero() {
        return Ok(Value::Infinity);
    }
    let f = leaf.target.as_ref();
    let mut refiner = Refiner::new(leaf);
    let common = h.gcd(&field, f);
    if common.deg() > 0 {
        // the factor of this leaf divides exactly one of `common` and `f/common`
        let other = f.div_exact(&field, &common)?;
        for _ in 0..MAX_REFINEMENTS {
            if matches!(refiner.certified(&other), Some(Value::Finite(_))) {
                return Ok(Value::Infinity);
            }
            if matches!(refiner.certified(&common), Some(Value::Finite(_))) {
                break;
            }
            refiner.refine(f)?;
        }
    }
    for _ in 0..MAX_REFINEMENTS {
        if let Some(v) = refiner.certified(&h) {
            return Ok(v);
        }
        refiner.refine(f)?;
    }
    Err(Error::NonTermination { limit: MAX_REFINEMENTS, betas: refiner.chain.betas().into_iter().map(Value::Finite).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::arith::rat::{int, rat};
    use crate::basefield::{PAdicRationals, RationalFunctions};

    fn qp(c: &[i64]) -> Poly<Rat> {
        Poly::from_coeffs(&PAdicRationals::new(2).unwrap(), c.iter().map(|&a| int(a)).collect())
    }

    fn run(p: u64, c: &[i64]) -> ExtensionReport<PAdicRationals> {
        enumerate_extensions(&PAdicRationals::new(p).unwrap(), &qp(c), &Options::default()).unwrap()
    }

    fn efd<K: ValuedField>(r: &ExtensionReport<K>) -> Vec<(u64, u64, u64)> {
        let mut v: Vec<_> = r.leaves.iter().map(|l| (l.e, l.f, l.d)).collect();
        v.sort();
        v
    }

    #[test]
    fn eisenstein_at_two() {
        let r = run(2, &[-2, 0, 1]);
        assert_eq!(efd(&r), vec![(2, 1, 1)]);
        assert!(r.unique);
        assert_eq!(r.leaves[0].beta_chain, vec![Value::Finite(rat(1, 2))]);
        assert_eq!(r.tree.theta, 2);
        assert!(!r.invariant_log.is_empty());
    }

    #[test]
    fn split_at_five() {
        let r = run(5, &[1, 0, 1]);
        assert_eq!(efd(&r), vec![(1, 1, 1), (1, 1, 1)]);
        assert!(!r.unique);
        assert_eq!(r.shift, 1);
        for l in &r.leaves {
            assert_eq!(l.generator_value, Value::zero());
        }
    }

    #[test]
    fn cube_root_of_two() {
        let r = run(5, &[-2, 0, 0, 1]);
        assert_eq!(efd(&r), vec![(1, 1, 1), (1, 2, 1)]);
        let total: u64 = r.tree.children().map(|c| c.alpha * c.multiplicity as u64).sum();
        assert_eq!(total, 3);
        assert_eq!(efd(&run(2, &[-2, 0, 0, 1])), vec![(3, 1, 1)]);
    }

    #[test]
    fn two_level_chain() {
        let r = run(2, &[4, 0, 1]);
        assert_eq!(efd(&r), vec![(2, 1, 1)]);
        assert!(r.unique);
        assert_eq!(r.leaves[0].beta_chain, vec![Value::from_int(1), Value::Finite(rat(3, 2))]);
        let keys = &r.leaves[0].key_polynomials;
        assert_eq!(keys.len(), 3);
        assert_eq!(keys[1].deg(), 1);
        assert_eq!(keys[2].deg(), 2);
    }

    #[test]
    fn linear_and_root_at_zero() {
        assert_eq!(efd(&run(3, &[-1, 1])), vec![(1, 1, 1)]);
        // x (x - 1): the key x divides f
        let r = run(2, &[0, -1, 1]);
        assert_eq!(efd(&r), vec![(1, 1, 1), (1, 1, 1)]);
        assert!(r.leaves.iter().any(|l| l.exact && l.generator_value == Value::Infinity));
    }

    #[test]
    fn function_field_examples() {
        let k = RationalFunctions::new(3).unwrap();
        let t = k.param().unwrap();
        let f = Poly::from_coeffs(&k, vec![k.neg(&t), k.zero(), k.one()]);
        let r = enumerate_extensions(&k, &f, &Options::default()).unwrap();
        assert_eq!(efd(&r), vec![(2, 1, 1)]);

        let f = Poly::from_coeffs(&k, vec![k.neg(&t), k.from_i64(-1), k.one()]);
        let r = enumerate_extensions(&k, &f, &Options::default()).unwrap();
        assert_eq!(efd(&r), vec![(1, 1, 1), (1, 1, 1)]);
        let mut g: Vec<Value> = r.leaves.iter().map(|l| l.generator_value.clone()).collect();
        g.sort();
        assert_eq!(g, vec![Value::zero(), Value::from_int(1)]);
    }

    #[test]
    fn values_on_the_extension() {
        let r = run(2, &[-2, 0, 1]);
        let leaf = &r.leaves[0];
        assert_eq!(extension_value(leaf, &qp(&[0, 1])).unwrap(), Value::Finite(rat(1, 2)));
        assert_eq!(extension_value(leaf, &qp(&[1])).unwrap(), Value::zero());
        assert_eq!(extension_value(leaf, &qp(&[4, 2])).unwrap(), Value::Finite(rat(3, 2)));
        assert_eq!(extension_value(leaf, &qp(&[])).unwrap(), Value::Infinity);
        // x^2 - 2 vanishes in L
        assert_eq!(extension_value(leaf, &qp(&[-2, 0, 1])).unwrap(), Value::Infinity);
    }

    #[test]
    fn values_separate_the_two_roots() {
        // x^2 + 1 at 5: x - 2 vanishes to high order at one root only
        let r = run(5, &[1, 0, 1]);
        let k = PAdicRationals::new(5).unwrap();
        let h = Poly::from_coeffs(&k, vec![int(-2), int(1)]);
        let mut vals: Vec<Value> = r.leaves.iter().map(|l| extension_value(l, &h).unwrap()).collect();
        vals.sort();
        assert_eq!(vals, vec![Value::zero(), Value::from_int(1)]);
        // x - 1: x(x-1) has one exact root at zero
        let r = run(3, &[0, -1, 1]);
        let mut vals: Vec<Value> = r.leaves.iter().map(|l| extension_value(l, &qp(&[-1, 1])).unwrap()).collect();
        vals.sort();
        assert_eq!(vals, vec![Value::zero(), Value::Infinity]);
    }

    #[test]
    fn negative_controls() {
        let k = PAdicRationals::new(2).unwrap();
        assert_eq!(enumerate_extensions(&k, &qp(&[1, 2, 1]), &Options::default()).unwrap_err(), Error::NotSquarefree);
        let opts = Options { max_augmentations: Some(1), ..Options::default() };
        let err = enumerate_extensions(&k, &qp(&[4, 0, 1]), &opts).unwrap_err();
        assert!(matches!(err, Error::NonTermination { limit: 1, .. }));
        assert!(alloc::format!("{err}").contains("Case 2b"));
    }
}
