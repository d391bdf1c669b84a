//! Convex lattice and rational polygons.
//!
//! Vertices are kept counterclockwise, starting at the lexicographically
//! smallest one, so two polygons are equal exactly when their vertex lists
//! are.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{
    edge_functional, edge_functional_rational, LatticePoint, Rational, RationalPoint, Unimodular,
};

/// A convex polygon with integer vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

/// A convex polygon with rational vertices, such as the dual of a lattice
/// polygon.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalPolygon {
    vertices: Vec<RationalPoint>,
}

/// Rotate a cyclic sequence so that its least element comes first.
fn rotate_to_min<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    if let Some(start) = (0..v.len()).min_by(|&i, &j| v[i].cmp(&v[j])) {
        v.rotate_left(start);
    }
    v
}

/// Cross product of `b − a` and `c − a`.
fn turn(a: &LatticePoint, b: &LatticePoint, c: &LatticePoint) -> BigInt {
    (b - a).det(&(c - a))
}

/// Andrew's monotone chain; collinear points are dropped. The result is
/// counterclockwise and starts at the lexicographically smallest point.
fn convex_hull(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<LatticePoint> = Vec::with_capacity(2 * pts.len());
    for p in &pts {
        while hull.len() >= 2 && !turn(&hull[hull.len() - 2], &hull[hull.len() - 1], p).is_positive() {
            hull.pop();
        }
        hull.push(p.clone());
    }
    // the upper pass must not pop into the finished lower chain
    let lower_len = hull.len() + 1;
    for p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && !turn(&hull[hull.len() - 2], &hull[hull.len() - 1], p).is_positive()
        {
            hull.pop();
        }
        hull.push(p.clone());
    }
    hull.pop();
    hull
}

/// Integer points of a convex CCW polygon, row by row, in lexicographic
/// order. With `strict` only interior points are returned.
pub(crate) fn scan_convex(vertices: &[LatticePoint], strict: bool) -> Vec<LatticePoint> {
    let n = vertices.len();
    let min_y = vertices.iter().map(|v| &v.y).min().cloned().unwrap_or_default();
    let max_y = vertices.iter().map(|v| &v.y).max().cloned().unwrap_or_default();
    let mut rows: Vec<(BigInt, BigInt, BigInt)> = Vec::new();
    let mut y = min_y;
    'rows: while y <= max_y {
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for i in 0..n {
            let p = &vertices[i];
            let q = &vertices[(i + 1) % n];
            let d = q - p;
            // inside: d.x·(y − p.y) − d.y·(x − p.x) ≥ 0, i.e. d.y·x ≤ rhs
            let rhs = &d.x * (&y - &p.y) + &d.y * &p.x;
            if d.y.is_zero() {
                if rhs.is_negative() || (strict && rhs.is_zero()) {
                    y += 1;
                    continue 'rows;
                }
            } else if d.y.is_positive() {
                let bound = if strict {
                    Integer::div_ceil(&rhs, &d.y) - 1
                } else {
                    Integer::div_floor(&rhs, &d.y)
                };
                hi = Some(match hi {
                    Some(h) if h < bound => h,
                    _ => bound,
                });
            } else {
                let bound = if strict {
                    Integer::div_floor(&rhs, &d.y) + 1
                } else {
                    Integer::div_ceil(&rhs, &d.y)
                };
                lo = Some(match lo {
                    Some(l) if l > bound => l,
                    _ => bound,
                });
            }
        }
        if let (Some(l), Some(h)) = (lo, hi) {
            if l <= h {
                rows.push((l, h, y.clone()));
            }
        }
        y += 1;
    }
    // rows are by y; re-sort into lexicographic (x, y) order
    let mut out: Vec<LatticePoint> = Vec::new();
    for (l, h, y) in rows {
        let mut x = l;
        while x <= h {
            out.push(LatticePoint::new(x.clone(), y.clone()));
            x += 1;
        }
    }
    out.sort();
    out
}

impl LatticePolygon {
    /// Convex hull of `points`.
    pub fn from_points(points: &[LatticePoint]) -> Result<Self> {
        let vertices = convex_hull(points);
        if vertices.len() < 3 {
            return Err(Error::DegeneratePolygon);
        }
        Ok(LatticePolygon { vertices })
    }

    /// Convenience constructor from integer pairs.
    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        let pts: Vec<LatticePoint> = coords.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect();
        LatticePolygon::from_points(&pts)
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges `(v_i, v_{i+1})` in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (&LatticePoint, &LatticePoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// True iff the origin lies in the interior.
    pub fn contains_origin_strictly(&self) -> bool {
        self.edges().all(|(p, q)| p.det(q).is_positive())
    }

    /// Ok iff the polygon is LDP: origin strictly interior and every vertex
    /// primitive.
    pub fn check_ldp(&self) -> Result<()> {
        if !self.contains_origin_strictly() {
            return Err(Error::OriginNotInterior);
        }
        for v in &self.vertices {
            if !v.is_primitive()? {
                return Err(Error::VertexNotPrimitive(v.clone()));
            }
        }
        Ok(())
    }

    pub fn is_ldp(&self) -> bool {
        self.check_ldp().is_ok()
    }

    /// The functional of each edge, i.e. the dual vertices in edge order.
    pub fn edge_functionals(&self) -> Result<Vec<RationalPoint>> {
        if !self.contains_origin_strictly() {
            return Err(Error::DualUndefined);
        }
        Ok(self.edges().map(|(p, q)| edge_functional(p, q)).collect())
    }

    /// `Δ* = {y : ⟨y, x⟩ ≥ −1 for all x ∈ Δ}`.
    pub fn dual(&self) -> Result<RationalPolygon> {
        Ok(RationalPolygon {
            vertices: rotate_to_min(self.edge_functionals()?),
        })
    }

    /// Twice the Euclidean area.
    pub fn normalized_volume(&self) -> BigInt {
        self.edges().map(|(p, q)| p.det(q)).sum()
    }

    /// All integer points of the polygon, boundary included, sorted
    /// lexicographically.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        scan_convex(&self.vertices, false)
    }

    pub fn interior_lattice_points(&self) -> Vec<LatticePoint> {
        scan_convex(&self.vertices, true)
    }

    /// Number of lattice points on the boundary.
    pub fn boundary_point_count(&self) -> BigInt {
        self.edges().map(|(p, q)| (q - p).content()).sum()
    }

    /// `κ_Δ(n) = −min{λ ≥ 0 : n ∈ λΔ}`, evaluated as `⟨m_σ, n⟩` on the
    /// spanning-fan cone `σ` that contains `n`.
    pub fn kappa(&self, n: &LatticePoint) -> Result<Rational> {
        if !self.contains_origin_strictly() {
            return Err(Error::DualUndefined);
        }
        if n.is_zero() {
            return Ok(Rational::zero());
        }
        // half-open cones [v_i, v_{i+1}) partition the punctured plane
        let (p, q) = self
            .edges()
            .find(|(p, q)| !p.det(n).is_negative() && n.det(q).is_positive())
            .expect("spanning-fan cones cover the plane");
        Ok(edge_functional(p, q).pair(n))
    }

    /// Lattice polygon with the origin inside whose dual is again a lattice
    /// polygon.
    pub fn is_reflexive(&self) -> bool {
        match self.edge_functionals() {
            Ok(fs) => fs.iter().all(RationalPoint::is_integral),
            Err(_) => false,
        }
    }

    /// Image under a unimodular map.
    pub fn transform(&self, m: &Unimodular) -> LatticePolygon {
        let pts: Vec<LatticePoint> = self.vertices.iter().map(|v| m.apply(v)).collect();
        LatticePolygon::from_points(&pts).expect("unimodular image of a polygon is a polygon")
    }

    pub fn to_rational(&self) -> RationalPolygon {
        RationalPolygon {
            vertices: self.vertices.iter().map(LatticePoint::to_rational).collect(),
        }
    }
}

impl fmt::Debug for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{:?}", self.vertices)
    }
}

#[derive(Serialize, Deserialize)]
struct PolygonRepr<P> {
    vertices: Vec<P>,
}

impl Serialize for LatticePolygon {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolygonRepr {
            vertices: self.vertices.clone(),
        }
        .serialize(serializer)
    }
}

/// Input vertices need not be ordered or minimal; the convex hull is taken.
impl<'de> Deserialize<'de> for LatticePolygon {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolygonRepr::<LatticePoint>::deserialize(deserializer)?;
        LatticePolygon::from_points(&repr.vertices).map_err(de::Error::custom)
    }
}

impl RationalPolygon {
    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&RationalPoint, &RationalPoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn contains_origin_strictly(&self) -> bool {
        self.edges().all(|(p, q)| p.det(q).is_positive())
    }

    /// Twice the Euclidean area, by the rational shoelace sum.
    pub fn normalized_volume(&self) -> Rational {
        self.edges().map(|(p, q)| p.det(q)).sum()
    }

    pub fn dual(&self) -> Result<RationalPolygon> {
        if !self.contains_origin_strictly() {
            return Err(Error::DualUndefined);
        }
        Ok(RationalPolygon {
            vertices: rotate_to_min(
                self.edges()
                    .map(|(p, q)| edge_functional_rational(p, q))
                    .collect(),
            ),
        })
    }

    /// Some iff every vertex is integral.
    pub fn to_lattice(&self) -> Option<LatticePolygon> {
        let vertices = self
            .vertices
            .iter()
            .map(RationalPoint::to_lattice)
            .collect::<Option<Vec<_>>>()?;
        Some(LatticePolygon { vertices })
    }

    /// Image under a unimodular map acting on rational points.
    pub fn transform(&self, m: &Unimodular) -> RationalPolygon {
        let mut vs: Vec<RationalPoint> = self.vertices.iter().map(|v| m.apply_rational(v)).collect();
        if m.det().is_negative() {
            vs.reverse();
        }
        RationalPolygon {
            vertices: rotate_to_min(vs),
        }
    }
}

impl fmt::Debug for RationalPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{:?}", self.vertices)
    }
}

impl Serialize for RationalPolygon {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolygonRepr {
            vertices: self.vertices.clone(),
        }
        .serialize(serializer)
    }
}
