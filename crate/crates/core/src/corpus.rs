//! Seeded random polygons and cones, the normal-form cone sweep, and the
//! catalogue of reflexive polygons.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fan::Cone;
use crate::lattice::{basis_to_x_axis, LatticePoint, Unimodular};
use crate::polygon::LatticePolygon;

/// Attempts made by [`random_ldp`] before giving up.
pub const RETRY_BUDGET: usize = 10_000;

fn random_primitive(rng: &mut ChaCha8Rng, bound: i64) -> LatticePoint {
    loop {
        let (x, y) = (rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if x.gcd(&y) == 1 {
            return LatticePoint::new(x, y);
        }
    }
}

/// Hull of between 3 and `max_vertices` random primitive points of
/// `[−B, B]²`, resampled until the origin is strictly inside.
pub fn random_ldp(seed: u64, bound: i64, max_vertices: usize) -> Result<LatticePolygon> {
    if bound < 1 {
        return Err(Error::InvalidParameter(format!("coordinate bound {bound} < 1")));
    }
    if max_vertices < 3 {
        return Err(Error::InvalidParameter(format!(
            "max_vertices {max_vertices} < 3"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        let n = rng.gen_range(3..=max_vertices);
        let pts: Vec<LatticePoint> = (0..n).map(|_| random_primitive(&mut rng, bound)).collect();
        if let Ok(p) = LatticePolygon::from_points(&pts) {
            if p.contains_origin_strictly() {
                debug_assert!(p.is_ldp());
                return Ok(p);
            }
        }
    }
    Err(Error::CorpusExhausted(RETRY_BUDGET))
}

/// A product of a few random shears and quarter turns; determinant 1.
pub fn random_unimodular(rng: &mut impl Rng) -> Unimodular {
    let mut m = Unimodular::identity();
    for _ in 0..rng.gen_range(1..=4) {
        let k = rng.gen_range(-2..=2);
        let g = if rng.gen_bool(0.5) {
            Unimodular::new([[1, k], [0, 1]])
        } else {
            Unimodular::new([[0, -1], [1, 0]])
        };
        m = g.expect("generator is unimodular").compose(&m);
    }
    m
}

/// A cone with random invariants `V ≤ max_v`, `a` a unit modulo `V`, in
/// normal form moved by a random orientation preserving unimodular map.
pub fn random_cone(seed: u64, max_v: i64) -> Result<Cone> {
    if max_v < 1 {
        return Err(Error::InvalidParameter(format!("max_V {max_v} < 1")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = rng.gen_range(1..=max_v);
    let a = if v == 1 {
        0
    } else {
        loop {
            let a = rng.gen_range(1..v);
            if a.gcd(&v) == 1 {
                break a;
            }
        }
    };
    let m = random_unimodular(&mut rng);
    Ok(Cone::normal_form(v, a)?.transform(&m))
}

/// Every normal-form cone `((1,0), (c, V))` with `V ≤ max_v`, ordered by
/// `V` then `a`.
pub fn normal_form_cones(max_v: i64) -> Vec<Cone> {
    let mut out = Vec::new();
    for v in 1..=max_v {
        for a in 0..v.max(1) {
            if (v == 1 && a == 0) || (v > 1 && a.gcd(&v) == 1) {
                out.push(Cone::normal_form(v, a).expect("coprime invariants"));
            }
        }
    }
    out
}

/// A vertex list that is equal for two polygons exactly when a linear map
/// in GL(2,ℤ) carries one onto the other.
///
/// Each choice of a vertex `v` and a neighbour `q` fixes a map sending `v`
/// to `(1, 0)` and `q` to some `(x, y)` with `0 ≤ x < y`; the smallest image
/// over all choices is the canonical one. Needs the origin strictly inside
/// and primitive vertices.
pub fn canonical_form(p: &LatticePolygon) -> Result<Vec<LatticePoint>> {
    p.check_ldp()?;
    let vs = p.vertices();
    let n = vs.len();
    let flip = Unimodular::new([[1, 0], [0, -1]]).expect("reflection");
    let mut best: Option<Vec<LatticePoint>> = None;
    for i in 0..n {
        let to_axis = basis_to_x_axis(&vs[i]);
        for q in [&vs[(i + 1) % n], &vs[(i + n - 1) % n]] {
            let mut m = to_axis.clone();
            let mut image = m.apply(q);
            if image.y < BigInt::from(0) {
                m = flip.compose(&m);
                image = m.apply(q);
            }
            let k = Integer::div_floor(&image.x, &image.y);
            let shear = Unimodular::from_big([[BigInt::from(1), -k], [BigInt::from(0), BigInt::from(1)]])
                .expect("shear");
            let m = shear.compose(&m);
            let cand = p.transform(&m).vertices().to_vec();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    Ok(best.expect("a polygon has vertices"))
}

pub fn equivalent(p: &LatticePolygon, q: &LatticePolygon) -> Result<bool> {
    Ok(canonical_form(p)? == canonical_form(q)?)
}

/// Compares the counterclockwise angles of `p` and `q` measured from the
/// direction of `s`, in `[0, 2π)`.
fn angle_cmp(s: (i64, i64), p: (i64, i64), q: (i64, i64)) -> Ordering {
    let det = |a: (i64, i64), b: (i64, i64)| a.0 * b.1 - a.1 * b.0;
    let dot = |a: (i64, i64), b: (i64, i64)| a.0 * b.0 + a.1 * b.1;
    let half = |p: (i64, i64)| {
        let d = det(s, p);
        if d > 0 || (d == 0 && dot(s, p) > 0) {
            0
        } else {
            1
        }
    };
    half(p).cmp(&half(q)).then_with(|| 0.cmp(&det(p, q)))
}

struct Search {
    points: Vec<(i64, i64)>,
    found: Vec<Vec<(i64, i64)>>,
}

fn det(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn turn(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i64 {
    det((b.0 - a.0, b.1 - a.1), (c.0 - b.0, c.1 - b.1))
}

/// `conv(0, a, b)` has no lattice points besides its vertices and the
/// points of the edge `ab`: by Pick, `det(a, b) = gcd(b − a)`.
fn empty_fan_triangle(a: (i64, i64), b: (i64, i64)) -> bool {
    let d = det(a, b);
    d > 0 && d == (b.0 - a.0).gcd(&(b.1 - a.1))
}

impl Search {
    fn extend(&mut self, path: &mut Vec<(i64, i64)>) {
        let s = path[0];
        let last = *path.last().expect("non-empty");
        for i in 0..self.points.len() {
            let p = self.points[i];
            if p <= s || angle_cmp(s, last, p) != Ordering::Less || !empty_fan_triangle(last, p) {
                continue;
            }
            if path.len() >= 2 && turn(path[path.len() - 2], last, p) <= 0 {
                continue;
            }
            path.push(p);
            if path.len() >= 3 && empty_fan_triangle(p, s) && turn(last, p, s) > 0 && turn(p, s, path[1]) > 0
            {
                self.found.push(path.clone());
            }
            self.extend(path);
            path.pop();
        }
    }
}

/// All lattice polygons with exactly one interior lattice point, up to
/// GL(2,ℤ), found by enumerating convex cycles of primitive points in
/// `[−3, 3]²` around the origin.
pub fn reflexive_catalogue() -> Vec<LatticePolygon> {
    let mut points = Vec::new();
    for x in -3i64..=3 {
        for y in -3i64..=3 {
            if x.gcd(&y) == 1 {
                points.push((x, y));
            }
        }
    }
    let mut search = Search {
        points: points.clone(),
        found: Vec::new(),
    };
    for &s in &points {
        search.extend(&mut vec![s]);
    }

    let mut classes: BTreeMap<(usize, BigInt, Vec<LatticePoint>), LatticePolygon> = BTreeMap::new();
    for cycle in search.found {
        let pts: Vec<LatticePoint> = cycle.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect();
        let Ok(p) = LatticePolygon::from_points(&pts) else {
            continue;
        };
        if p.len() != pts.len() || p.interior_lattice_points().len() != 1 {
            continue;
        }
        let canon = canonical_form(&p).expect("origin is the interior point");
        let rep = LatticePolygon::from_points(&canon).expect("canonical image is a polygon");
        classes
            .entry((p.len(), p.normalized_volume(), canon))
            .or_insert(rep);
    }
    classes.into_values().collect()
}
