//! Both sides of the twelve-point identity `12·Σ(κ+1)² = nvol(Δ) + nvol(Δ*)`,
//! its cone-wise form, and the intermediate identities linking them: the
//! twelve theorem for unimodular fans and the dual-chain decomposition.

use num_bigint::BigInt;
use serde::Serialize;

use crate::dedekind::cone_lhs_closed_form;
use crate::error::Result;
use crate::fan::{refined_fan, spanning_fan, CompleteUnimodularFan, Cone};
use crate::lattice::{int_repr, Rational};
use crate::polygon::LatticePolygon;

fn twelve() -> Rational {
    Rational::from(12)
}

/// `12·Σ (⟨m_σ, n⟩ + 1)²` over the interior lattice points `n` of
/// `conv(0, u1, u2)`.
pub fn cone_lhs_direct(c: &Cone) -> Rational {
    let m = c.m_sigma();
    let sum: Rational = c
        .interior_points()
        .iter()
        .map(|n| (m.pair(n) + Rational::one()).square())
        .sum();
    twelve() * sum
}

/// `nvol(∇ ∖ sail) + Σ nvol(conv(m_σ, m*_i, m*_{i+1}))`.
pub fn cone_rhs(c: &Cone) -> Rational {
    let (complement, triangles) = cone_rhs_parts(c);
    complement + triangles.iter().sum::<Rational>()
}

/// The sail complement volume and the individual triangle volumes.
pub fn cone_rhs_parts(c: &Cone) -> (Rational, Vec<Rational>) {
    (c.sail_complement_volume(), c.sail().triangle_volumes())
}

/// Cone-wise identity with each side computed independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub cone: Cone,
    pub lhs_direct: Rational,
    pub lhs_closed_form: Rational,
    pub rhs: Rational,
    pub sail_complement: Rational,
    pub triangles: Vec<Rational>,
    pub ok: bool,
}

pub fn verify_cone(c: &Cone) -> ConeReport {
    let lhs_direct = cone_lhs_direct(c);
    let lhs_closed_form =
        cone_lhs_closed_form(c.volume().clone(), c.a().clone()).expect("cone invariants are coprime");
    let (sail_complement, triangles) = cone_rhs_parts(c);
    let rhs = &sail_complement + triangles.iter().sum::<Rational>();
    let ok = lhs_direct == rhs && lhs_closed_form == rhs;
    ConeReport {
        cone: c.clone(),
        lhs_direct,
        lhs_closed_form,
        rhs,
        sail_complement,
        triangles,
        ok,
    }
}

/// `12·Σ (κ_Δ(n) + 1)²` over all lattice points of `p`.
pub fn global_lhs(p: &LatticePolygon) -> Result<Rational> {
    p.check_ldp()?;
    let mut sum = Rational::zero();
    for n in p.lattice_points() {
        sum += (p.kappa(&n)? + Rational::one()).square();
    }
    Ok(twelve() * sum)
}

/// `nvol(Δ) + nvol(Δ*)`.
pub fn global_rhs(p: &LatticePolygon) -> Result<Rational> {
    p.check_ldp()?;
    Ok(Rational::from(p.normalized_volume()) + p.dual()?.normalized_volume())
}

/// `Σ_τ (3 − a_τ)` over the rays of a complete unimodular fan.
pub fn twelve_theorem_sum(f: &CompleteUnimodularFan) -> BigInt {
    f.a_values().iter().map(|a| BigInt::from(3) - a).sum()
}

/// Signed determinants of the dual edges, one per ray of the refined fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualChain {
    #[serde(serialize_with = "int_repr::serialize_seq")]
    pub dets: Vec<BigInt>,
    #[serde(serialize_with = "int_repr::serialize")]
    pub total: BigInt,
}

/// For each ray `v` of the refined fan the dual edge runs from the
/// functional of the cone before `v` to that of the cone after it; its
/// signed length is `det(m_before, m_after)`.
pub fn dual_chain_sum(p: &LatticePolygon) -> Result<DualChain> {
    Ok(dual_chain_of(&refined_fan(p)?))
}

fn dual_chain_of(fan: &CompleteUnimodularFan) -> DualChain {
    let fs = fan.cone_functionals();
    let n = fs.len();
    let dets: Vec<BigInt> = (0..n).map(|i| fs[(i + n - 1) % n].det(&fs[i])).collect();
    let total = dets.iter().sum();
    DualChain { dets, total }
}

/// The quantities of the decomposition
/// `12 = nvol(Δ*) + nvol(∪ sails) − Σ triangles` and
/// `Σ det(τ*) = nvol(Δ*) − Σ triangles`, each computed separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub dual_volume: Rational,
    pub sail_union_volume: Rational,
    #[serde(serialize_with = "int_repr::serialize")]
    pub ray_count: BigInt,
    pub triangle_total: Rational,
    #[serde(serialize_with = "int_repr::serialize")]
    pub chain_total: BigInt,
    #[serde(serialize_with = "int_repr::serialize")]
    pub a_total: BigInt,
    pub sails_ok: bool,
    pub chain_ok: bool,
    pub twelve_split_ok: bool,
}

impl DecompositionReport {
    pub fn ok(&self) -> bool {
        self.sails_ok && self.chain_ok && self.twelve_split_ok
    }
}

pub fn verify_decomposition(p: &LatticePolygon) -> Result<DecompositionReport> {
    let cones = spanning_fan(p)?;
    let fan = refined_fan(p)?;
    decomposition_of(p, &cones, &fan)
}

fn decomposition_of(
    p: &LatticePolygon,
    cones: &[Cone],
    fan: &CompleteUnimodularFan,
) -> Result<DecompositionReport> {
    let dual_volume = p.dual()?.normalized_volume();
    let sail_union_volume: Rational = cones
        .iter()
        .map(|c| Rational::from(c.volume()) - c.sail_complement_volume())
        .sum();
    let ray_count = BigInt::from(fan.rays().len());
    let triangle_total: Rational = cones.iter().flat_map(|c| c.sail().triangle_volumes()).sum();
    let chain_total = dual_chain_of(fan).total;
    let a_total: BigInt = fan.a_values().iter().map(|a| BigInt::from(2) - a).sum();
    let sails_ok = sail_union_volume == Rational::from(&ray_count);
    let chain_ok = Rational::from(&chain_total) == &dual_volume - &triangle_total && chain_total == a_total;
    let twelve_split_ok = twelve() == &(&dual_volume + &sail_union_volume) - &triangle_total;
    Ok(DecompositionReport {
        dual_volume,
        sail_union_volume,
        ray_count,
        triangle_total,
        chain_total,
        a_total,
        sails_ok,
        chain_ok,
        twelve_split_ok,
    })
}

/// Everything checked for one LDP polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub polygon: LatticePolygon,
    pub lhs: Rational,
    pub rhs: Rational,
    pub nvol: Rational,
    pub dual_nvol: Rational,
    pub reflexive: bool,
    #[serde(serialize_with = "int_repr::serialize")]
    pub twelve_sum: BigInt,
    pub dual_chain: DualChain,
    pub decomposition: DecompositionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cones: Option<Vec<ConeReport>>,
    pub cone_identity_ok: bool,
    pub global_identity_ok: bool,
    pub additivity_ok: bool,
    pub bound_ok: bool,
    pub decomposition_ok: bool,
    pub twelve_ok: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cone_identity_ok
            && self.global_identity_ok
            && self.additivity_ok
            && self.bound_ok
            && self.decomposition_ok
            && self.twelve_ok
    }

    /// Drops the per-cone breakdown.
    pub fn without_cones(mut self) -> Self {
        self.cones = None;
        self
    }
}

/// Runs every check on `p`. The per-cone array is always filled in; use
/// [`VerificationReport::without_cones`] to drop it.
pub fn verify_polygon(p: &LatticePolygon) -> Result<VerificationReport> {
    let lhs = global_lhs(p)?;
    let nvol = Rational::from(p.normalized_volume());
    let dual_nvol = p.dual()?.normalized_volume();
    let rhs = &nvol + &dual_nvol;
    let reflexive = p.is_reflexive();

    let cones = spanning_fan(p)?;
    let fan = refined_fan(p)?;
    let reports: Vec<ConeReport> = cones.iter().map(verify_cone).collect();
    let cone_identity_ok = reports.iter().all(|r| r.ok);
    let cone_total: Rational = reports.iter().map(|r| &r.lhs_direct).sum();
    let additivity_ok = lhs == twelve() + cone_total;

    let twelve_sum = twelve_theorem_sum(&fan);
    let dual_chain = dual_chain_of(&fan);
    let decomposition = decomposition_of(p, &cones, &fan)?;
    let bound_ok = rhs >= twelve() && ((rhs == twelve()) == reflexive);

    Ok(VerificationReport {
        polygon: p.clone(),
        global_identity_ok: lhs == rhs,
        lhs,
        rhs,
        nvol,
        dual_nvol,
        reflexive,
        twelve_ok: twelve_sum == BigInt::from(12),
        twelve_sum,
        dual_chain,
        decomposition_ok: decomposition.ok(),
        decomposition,
        cones: Some(reports),
        cone_identity_ok,
        additivity_ok,
        bound_ok,
    })
}
