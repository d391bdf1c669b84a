//! Cones, sails and fans.
//!
//! A two-dimensional cone is given by primitive generators `u1`, `u2` with
//! `det(u1, u2) = V > 0`. Its lattice points in the half-open fundamental
//! parallelogram are generated by `w = (a·u1 + u2) / V` for a unique residue
//! `a ∈ [0, V)`; the pair `(V, a)` classifies the cone up to orientation
//! preserving unimodular maps.
//!
//! The sail of a cone is the part of `∇ = conv(0, u1, u2)` cut off by the
//! convex hull of its nonzero lattice points. The lattice points on the
//! boundary of that hull, read from `u2` to `u1`, form a chain in which every
//! consecutive pair is a lattice basis; they are the rays of the minimal
//! unimodular refinement of the cone.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    edge_functional, int_repr, mod_floor, mod_inverse, LatticePoint, Rational, RationalPoint, Unimodular,
};
use crate::polygon::{scan_convex, LatticePolygon};

/// A strictly convex two-dimensional cone with its `(V, a, w)` invariants.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Cone {
    u1: LatticePoint,
    u2: LatticePoint,
    #[serde(rename = "V", serialize_with = "int_repr::serialize")]
    volume: BigInt,
    #[serde(serialize_with = "int_repr::serialize")]
    a: BigInt,
    w: LatticePoint,
}

impl Cone {
    /// Builds `cone(u1, u2)` and computes `V`, `a` and `w`.
    ///
    /// Unimodular cones get `a = 0` and `w = u2`.
    pub fn new(u1: LatticePoint, u2: LatticePoint) -> Result<Self> {
        for u in [&u1, &u2] {
            match u.is_primitive() {
                Ok(true) => {}
                Ok(false) => return Err(Error::InvalidCone(format!("generator {u} is not primitive"))),
                Err(_) => return Err(Error::InvalidCone("zero generator".into())),
            }
        }
        let volume = u1.det(&u2);
        if !volume.is_positive() {
            return Err(Error::InvalidCone(format!(
                "det({u1}, {u2}) = {volume} is not positive"
            )));
        }
        // Complete u1 to a basis (u1, c) with det(u1, c) = 1 and write
        // u2 = α·u1 + V·c; then a·u1 + u2 ≡ 0 (mod V) iff a ≡ −α.
        let e = u1.x.extended_gcd(&u1.y);
        let c = LatticePoint::new(-e.y, e.x);
        debug_assert!(u1.det(&c).is_one());
        let alpha = u2.det(&c);
        let a = mod_floor(&-alpha, &volume);
        let w = (&u1.scale(&a) + &u2)
            .div_exact(&volume)
            .expect("a·u1 + u2 is divisible by V");
        Ok(Cone { u1, u2, volume, a, w })
    }

    pub fn from_coords(u1: (i64, i64), u2: (i64, i64)) -> Result<Self> {
        Cone::new(LatticePoint::new(u1.0, u1.1), LatticePoint::new(u2.0, u2.1))
    }

    /// The cone with invariants `(V, a)` in normal form
    /// `cone((1, 0), (c, V))`, `c ≡ −a (mod V)`.
    pub fn normal_form(volume: impl Into<BigInt>, a: impl Into<BigInt>) -> Result<Self> {
        let volume = volume.into();
        let a = a.into();
        if !volume.is_positive() {
            return Err(Error::InvalidCone(format!("V = {volume} is not positive")));
        }
        if volume.is_one() {
            if !a.is_zero() {
                return Err(Error::InvalidCone("unimodular cones have a = 0".into()));
            }
        } else if a.is_negative() || a >= volume || !a.gcd(&volume).is_one() {
            return Err(Error::InvalidCone(format!(
                "a = {a} is not a unit modulo V = {volume}"
            )));
        }
        let c = mod_floor(&-a, &volume);
        Cone::new(LatticePoint::new(1, 0), LatticePoint::new(c, volume))
    }

    pub fn u1(&self) -> &LatticePoint {
        &self.u1
    }

    pub fn u2(&self) -> &LatticePoint {
        &self.u2
    }

    /// `V = det(u1, u2)`, the normalized volume of `∇`.
    pub fn volume(&self) -> &BigInt {
        &self.volume
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn w(&self) -> &LatticePoint {
        &self.w
    }

    pub fn is_unimodular(&self) -> bool {
        self.volume.is_one()
    }

    /// The functional dual to the edge `u1 − u2`: `⟨m_σ, u1⟩ = ⟨m_σ, u2⟩ = −1`.
    pub fn m_sigma(&self) -> RationalPoint {
        edge_functional(&self.u1, &self.u2)
    }

    /// `⌊i·w⌋ = ((i·a mod V)·u1 + i·u2) / V` for `i = 0, …, V − 1`.
    pub fn parallelogram_points(&self) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        let mut i = BigInt::zero();
        while i < self.volume {
            out.push(self.parallelogram_point(&i));
            i += 1;
        }
        out
    }

    pub(crate) fn parallelogram_point(&self, i: &BigInt) -> LatticePoint {
        let coeff = mod_floor(&(i * &self.a), &self.volume);
        (&self.u1.scale(&coeff) + &self.u2.scale(i))
            .div_exact(&self.volume)
            .expect("parallelogram point is integral")
    }

    /// Interior lattice points of `∇ = conv(0, u1, u2)`.
    pub fn interior_points(&self) -> Vec<LatticePoint> {
        scan_convex(&[LatticePoint::origin(), self.u1.clone(), self.u2.clone()], true)
    }

    /// The boundary chain `u2 = b₀, b₁, …, b_k = u1` of the sail.
    ///
    /// Walks the chain with `b_{i+1} = t·b_i − b_{i−1}`, `t` the least integer
    /// keeping `b_{i+1}` on the `u2` side of `u1`. Every lattice point on a
    /// hull edge is a chain point, so consecutive points always form a basis.
    pub fn sail_chain(&self) -> Vec<LatticePoint> {
        let mut chain = vec![self.u2.clone()];
        if self.is_unimodular() {
            chain.push(self.u1.clone());
            return chain;
        }
        let inv = mod_inverse(&self.a, &self.volume).expect("gcd(a, V) = 1");
        let first = (&self.u1 + &self.u2.scale(&inv))
            .div_exact(&self.volume)
            .expect("first sail point is integral");
        chain.push(first);
        loop {
            let cur = &chain[chain.len() - 1];
            let prev = &chain[chain.len() - 2];
            let d_cur = self.u1.det(cur);
            if d_cur.is_zero() {
                break;
            }
            let t = Integer::div_ceil(&self.u1.det(prev), &d_cur);
            let next = &cur.scale(&t) - prev;
            chain.push(next);
        }
        debug_assert_eq!(chain.last(), Some(&self.u1));
        chain
    }

    /// The sail chain together with `m_σ` and the functionals of the
    /// unimodular sub-cones.
    pub fn sail(&self) -> Sail {
        let boundary = self.sail_chain();
        let functionals = boundary
            .windows(2)
            .map(|w| edge_functional(&w[0], &w[1]))
            .collect();
        Sail {
            boundary,
            m_sigma: self.m_sigma(),
            functionals,
        }
    }

    /// `nvol(∇ ∖ sail)`: the area enclosed by the chain `b₀, …, b_k` and
    /// the edge `u1u2`. Zero for unimodular cones and collinear chains.
    pub fn sail_complement_volume(&self) -> Rational {
        let chain = self.sail_chain();
        let n = chain.len();
        let twice: BigInt = (0..n).map(|i| chain[i].det(&chain[(i + 1) % n])).sum();
        Rational::from(twice.abs())
    }

    /// Image under a unimodular map; orientation reversing maps swap the
    /// generators so that the determinant stays positive.
    pub fn transform(&self, m: &Unimodular) -> Cone {
        let (a, b) = (m.apply(&self.u1), m.apply(&self.u2));
        let (u1, u2) = if m.det().is_positive() { (a, b) } else { (b, a) };
        Cone::new(u1, u2).expect("unimodular image of a cone is a cone")
    }
}

impl<'de> Deserialize<'de> for Cone {
    /// Only `u1` and `u2` are read; the invariants are recomputed.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            u1: LatticePoint,
            u2: LatticePoint,
        }
        let r = Repr::deserialize(deserializer)?;
        Cone::new(r.u1, r.u2).map_err(serde::de::Error::custom)
    }
}

/// The boundary chain of a cone's sail and its dual functionals.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Sail {
    boundary: Vec<LatticePoint>,
    m_sigma: RationalPoint,
    functionals: Vec<RationalPoint>,
}

impl Sail {
    /// `b₀ = u2, …, b_k = u1`.
    pub fn boundary(&self) -> &[LatticePoint] {
        &self.boundary
    }

    /// Number of sail edges, one per unimodular sub-cone.
    pub fn k(&self) -> usize {
        self.functionals.len()
    }

    pub fn m_sigma(&self) -> &RationalPoint {
        &self.m_sigma
    }

    /// `m*₁, …, m*_k`, one per edge `(b_{i−1}, b_i)`; integral.
    pub fn functionals(&self) -> &[RationalPoint] {
        &self.functionals
    }

    /// `nvol(conv(m_σ, m*_i, m*_{i+1}))` for `i = 1, …, k − 1`.
    pub fn triangle_volumes(&self) -> Vec<Rational> {
        self.functionals
            .windows(2)
            .map(|f| (&f[0] - &self.m_sigma).det(&(&f[1] - &self.m_sigma)).abs())
            .collect()
    }
}

/// The cones over the edges of an LDP polygon, in counterclockwise order.
pub fn spanning_fan(p: &LatticePolygon) -> Result<Vec<Cone>> {
    p.check_ldp()?;
    p.edges()
        .map(|(v, next)| Cone::new(v.clone(), next.clone()))
        .collect()
}

/// A complete fan in the plane whose cones are all unimodular.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CompleteUnimodularFan {
    rays: Vec<LatticePoint>,
    #[serde(serialize_with = "int_repr::serialize_seq")]
    a_values: Vec<BigInt>,
}

impl CompleteUnimodularFan {
    /// Validates a counterclockwise ray list and computes `a_τ` for every
    /// ray `v` from its neighbours: `v_l + v_r = a_τ·v`.
    pub fn new(rays: Vec<LatticePoint>) -> Result<Self> {
        let n = rays.len();
        if n < 3 {
            return Err(Error::InvalidFan(format!("{n} rays cannot cover the plane")));
        }
        for i in 0..n {
            let d = rays[i].det(&rays[(i + 1) % n]);
            if !d.is_one() {
                return Err(Error::InvalidFan(format!(
                    "cone ({}, {}) has determinant {d}",
                    rays[i],
                    rays[(i + 1) % n]
                )));
            }
        }
        // every step turns by less than π, so the number of passes through
        // the positive x-axis is the winding number
        let windings = (0..n)
            .filter(|&i| rays[i].half() == 1 && rays[(i + 1) % n].half() == 0)
            .count();
        if windings != 1 {
            return Err(Error::InvalidFan(format!(
                "rays wind {windings} times around the origin"
            )));
        }
        let mut a_values = Vec::with_capacity(n);
        for i in 0..n {
            let left = &rays[(i + n - 1) % n];
            let right = &rays[(i + 1) % n];
            let a = left.det(right);
            debug_assert_eq!(&(left + right), &rays[i].scale(&a));
            a_values.push(a);
        }
        Ok(CompleteUnimodularFan { rays, a_values })
    }

    pub fn rays(&self) -> &[LatticePoint] {
        &self.rays
    }

    pub fn a_values(&self) -> &[BigInt] {
        &self.a_values
    }

    /// The integral functional of each cone `(ray_i, ray_{i+1})`.
    pub fn cone_functionals(&self) -> Vec<LatticePoint> {
        let n = self.rays.len();
        (0..n)
            .map(|i| {
                edge_functional(&self.rays[i], &self.rays[(i + 1) % n])
                    .to_lattice()
                    .expect("unimodular cone has an integral functional")
            })
            .collect()
    }
}

/// The fan whose rays pass through every boundary lattice point of the
/// union of all sails, starting at the polygon's first vertex.
pub fn refined_fan(p: &LatticePolygon) -> Result<CompleteUnimodularFan> {
    let mut rays = Vec::new();
    for cone in spanning_fan(p)? {
        let mut chain = cone.sail_chain();
        chain.reverse();
        // the last point is the next cone's first
        chain.pop();
        rays.extend(chain);
    }
    CompleteUnimodularFan::new(rays)
}
