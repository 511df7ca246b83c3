//! Newton polygons: lower convex hulls of `(index, value)` point sets, their
//! sides, and the vertex invariants `δ`, `ε`, `ν⁺`, `θ` of a chosen side.
//!
//! Indices run along the horizontal axis and values along the vertical one. A
//! side of slope `-β` is the set of points minimizing `value + index·β`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{Rat, Value};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolygonPoint {
    pub index: usize,
    pub value: Value,
}

impl PolygonPoint {
    pub fn new(index: usize, value: Value) -> Self {
        PolygonPoint { index, value }
    }

    fn finite(&self) -> &Rat {
        self.value.finite().expect("hull points are finite")
    }

    /// `value + index·β`.
    pub fn weighted(&self, beta: &Rat) -> Value {
        &self.value + &(beta * BigInt::from(self.index))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    /// Negative of the slope.
    pub beta: Rat,
    pub left: PolygonPoint,
    pub right: PolygonPoint,
    /// Indices of the finite points lying on the side, increasing.
    pub support: Vec<usize>,
    /// Denominator of `β·E` for the group denominator `E` the hull was built with.
    pub e_rel: u64,
    pub length: usize,
}

impl Side {
    /// The common value of `value + index·β` along the side.
    pub fn line_value(&self) -> Rat {
        self.left.finite() + &self.beta * BigInt::from(self.left.index)
    }

    /// Degree of the residual polynomial attached to the side.
    pub fn degree(&self) -> usize {
        self.length / self.e_rel as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// The finite input points, by increasing index.
    pub points: Vec<PolygonPoint>,
    pub vertices: Vec<PolygonPoint>,
    /// By increasing index, hence decreasing `β`.
    pub sides: Vec<Side>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonInvariants {
    pub delta: usize,
    /// `None` stands for infinity.
    pub epsilon: Option<usize>,
    pub nu_plus: Value,
    pub theta: usize,
    pub pivotal_vertex: PolygonPoint,
    pub characteristic_vertex: PolygonPoint,
}

fn slope(a: &PolygonPoint, b: &PolygonPoint) -> Rat {
    (b.finite() - a.finite()) / BigInt::from(b.index as i64 - a.index as i64)
}

/// Lower convex hull of the finite points. Points of infinite value are ignored.
///
/// `group_denominator` is `E` with value group `(1/E)ℤ` below the polygon; it only
/// affects [`Side::e_rel`].
pub fn lower_hull(points: &[PolygonPoint], group_denominator: u64) -> Result<NewtonPolygon, Error> {
    let mut pts: Vec<PolygonPoint> = points.iter().filter(|p| !p.value.is_infinite()).cloned().collect();
    pts.sort_by_key(|p| p.index);
    if pts.is_empty() {
        return Err(Error::InvalidInput(alloc::string::String::from("Newton polygon of an empty point set")));
    }
    if pts.windows(2).any(|w| w[0].index == w[1].index) {
        return Err(Error::InvalidInput(alloc::string::String::from("repeated index in Newton polygon input")));
    }
    let mut hull: Vec<PolygonPoint> = Vec::new();
    for p in &pts {
        while hull.len() >= 2 && slope(&hull[hull.len() - 2], &hull[hull.len() - 1]) >= slope(&hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p.clone());
    }
    let big_e = BigInt::from(group_denominator);
    let sides = hull
        .windows(2)
        .map(|w| {
            let beta = -slope(&w[0], &w[1]);
            let level = w[0].weighted(&beta);
            let support = pts
                .iter()
                .filter(|p| p.index >= w[0].index && p.index <= w[1].index && p.weighted(&beta) == level)
                .map(|p| p.index)
                .collect();
            let e_rel = (&beta * &big_e).denom().to_u64().expect("small ramification");
            Side { beta, left: w[0].clone(), right: w[1].clone(), support, e_rel, length: w[1].index - w[0].index }
        })
        .collect();
    Ok(NewtonPolygon { points: pts, vertices: hull, sides })
}

impl NewtonPolygon {
    pub fn side(&self, beta: &Rat) -> Option<&Side> {
        self.sides.iter().find(|s| &s.beta == beta)
    }

    pub fn point(&self, index: usize) -> Option<&PolygonPoint> {
        self.points.iter().find(|p| p.index == index)
    }

    pub fn min_index(&self) -> usize {
        self.points[0].index
    }
}

/// Whether `β` is the negative slope of a side, i.e. `value + index·β` attains its
/// minimum at two or more points.
pub fn determines_side(poly: &NewtonPolygon, beta: &Rat) -> bool {
    poly.side(beta).is_some()
}

/// Invariants of the side of slope `-β`: `δ` is its right end, `ν⁺` and `ε` are
/// the minimum and the last minimizer of `value + index·β` beyond `δ`, and the
/// characteristic vertex is the point at index `θ`.
pub fn polygon_invariants(poly: &NewtonPolygon, beta: &Rat, theta: usize) -> Result<PolygonInvariants, Error> {
    let side = poly.side(beta).ok_or_else(|| Error::SideMismatch(format!("beta = {beta} determines no side")))?;
    let delta = side.right.index;
    let mut nu_plus = Value::Infinity;
    let mut epsilon = None;
    for p in poly.points.iter().filter(|p| p.index > delta) {
        let w = p.weighted(beta);
        if w <= nu_plus {
            nu_plus = w;
            epsilon = Some(p.index);
        }
    }
    let characteristic_vertex = poly
        .point(theta)
        .cloned()
        .ok_or_else(|| Error::SideMismatch(format!("no point at characteristic index {theta}")))?;
    Ok(PolygonInvariants {
        delta,
        epsilon,
        nu_plus,
        theta,
        pivotal_vertex: side.right.clone(),
        characteristic_vertex,
    })
}

/// The minimum of `value + index·β` over finite points, and all its minimizers.
pub fn minimizers(poly: &NewtonPolygon, beta: &Rat) -> (Value, Vec<usize>) {
    let mut best = Value::Infinity;
    let mut at = Vec::new();
    for p in &poly.points {
        let w = p.weighted(beta);
        if w < best {
            best = w;
            at.clear();
            at.push(p.index);
        } else if w == best {
            at.push(p.index);
        }
    }
    (best, at)
}
