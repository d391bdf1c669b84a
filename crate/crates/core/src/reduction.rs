//! Cone reduction by induction on the volume.
//!
//! Near `u1` the sail has three consecutive chain points `u1, w′, v` with
//! `u1 + v = λ·w′`, `λ ≥ 2`. For `λ > 2` the cone is obtained from
//! `σ̂ = cone(u1 − w′, u2)` by a Case I step, for `λ = 2` from
//! `σ̂ = cone(w′, u2)` by a Case II step. Either way `V̂ < V`, and the change
//! in both sides of the cone-wise identity has a closed form in `(V̂, â)`.

use std::fmt;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::dedekind::cone_lhs_closed_form;
use crate::error::{Error, Result};
use crate::fan::Cone;
use crate::identity::cone_rhs_parts;
use crate::lattice::{int_repr, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    I,
    II,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::II => "II",
        })
    }
}

/// One step `σ̂ → σ` read backwards from `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub case: Case,
    pub before: Cone,
    pub after: Cone,
    pub lambda: BigInt,
    /// Change of the left-hand side, from the closed form.
    pub delta_lhs: Rational,
    /// Change of the right-hand side, from the sails.
    pub delta_rhs: Rational,
}

impl Serialize for ReductionStep {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ReductionStep", 7)?;
        s.serialize_field("case", &self.case)?;
        s.serialize_field("V", &int_repr::Ref(self.before.volume()))?;
        s.serialize_field("a", &int_repr::Ref(self.before.a()))?;
        s.serialize_field("V_hat", &int_repr::Ref(self.after.volume()))?;
        s.serialize_field("a_hat", &int_repr::Ref(self.after.a()))?;
        s.serialize_field("lambda", &int_repr::Ref(&self.lambda))?;
        s.serialize_field("delta", &self.delta_lhs)?;
        s.end()
    }
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "case {}, ({},{})→({},{}), delta {}",
            self.case,
            self.before.volume(),
            self.before.a(),
            self.after.volume(),
            self.after.a(),
            self.delta_lhs
        )
    }
}

fn lhs(c: &Cone) -> Rational {
    cone_lhs_closed_form(c.volume().clone(), c.a().clone()).expect("cone invariants are coprime")
}

fn rhs(c: &Cone) -> Rational {
    let (complement, triangles) = cone_rhs_parts(c);
    complement + triangles.iter().sum::<Rational>()
}

/// Undoes one Case I or Case II step at the `u1` end of the sail.
pub fn reduce_once(c: &Cone) -> Result<ReductionStep> {
    if c.is_unimodular() {
        return Err(Error::AlreadyReduced);
    }
    let chain = c.sail_chain();
    let k = chain.len() - 1;
    let u1 = c.u1();
    let w = &chain[k - 1];
    let v = &chain[k - 2];
    // det(u1, w′) = 1, so λ = det(u1, u1 + v) = det(u1, v)
    let lambda = u1.det(v);
    debug_assert_eq!(u1 + v, w.scale(&lambda));
    let (case, u1_hat) = if lambda > BigInt::from(2) {
        (Case::I, u1 - w)
    } else {
        (Case::II, w.clone())
    };
    let after = Cone::new(u1_hat, c.u2().clone())?;
    Ok(ReductionStep {
        case,
        delta_lhs: lhs(c) - lhs(&after),
        delta_rhs: rhs(c) - rhs(&after),
        before: c.clone(),
        after,
        lambda,
    })
}

/// Reduces until the cone is unimodular; empty for unimodular input.
pub fn reduction_chain(c: &Cone) -> Vec<ReductionStep> {
    let mut steps = Vec::new();
    let mut cur = c.clone();
    while !cur.is_unimodular() {
        let step = reduce_once(&cur).expect("non-unimodular cone reduces");
        cur = step.after.clone();
        steps.push(step);
    }
    steps
}

/// Change of the left-hand side in terms of the reduced cone's `(V̂, â)`.
///
/// Case I: `(â+1)(1 − (â+1)/(V̂(V̂+â)))`.
/// Case II: `(V̂−â−1)(1 + (V̂−â−1)/(V̂(2V̂−â)))`.
pub fn delta_lhs_formula(case: Case, v_hat: &BigInt, a_hat: &BigInt) -> Rational {
    match case {
        Case::I => {
            let t = Rational::from(a_hat + 1u8);
            let denom = v_hat * (v_hat + a_hat);
            &t * (Rational::one() - &t / Rational::from(denom))
        }
        Case::II => {
            let t = Rational::from(v_hat - a_hat - 1u8);
            let denom = v_hat * (BigInt::from(2) * v_hat - a_hat);
            &t * (Rational::one() + &t / Rational::from(denom))
        }
    }
}

/// The change of the right-hand side split into its volume part and its
/// triangle part.
///
/// Case I: `â` and `1 − (â+1)²/(V̂(V̂+â))`.
/// Case II: `V̂−â−1` and `(V̂−â−1)²/(V̂(2V̂−â))`.
pub fn delta_rhs_parts(case: Case, v_hat: &BigInt, a_hat: &BigInt) -> (Rational, Rational) {
    match case {
        Case::I => {
            let t = Rational::from(a_hat + 1u8);
            let denom = Rational::from(v_hat * (v_hat + a_hat));
            (Rational::from(a_hat), Rational::one() - t.square() / denom)
        }
        Case::II => {
            let t = Rational::from(v_hat - a_hat - 1u8);
            let denom = Rational::from(v_hat * (BigInt::from(2) * v_hat - a_hat));
            (t.clone(), t.square() / denom)
        }
    }
}

/// Outcome of [`verify_step`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepCheck {
    /// `V`, `a` and `w` related to `V̂`, `â`, `ŵ`, `û1` as the case demands.
    pub laws_ok: bool,
    /// The sail chain of `σ̂` is the one of `σ` with the last point
    /// replaced by `u1 − w′` (Case I) or dropped (Case II).
    pub sail_ok: bool,
    pub lhs_closed_forms: Rational,
    pub lhs_formula: Rational,
    pub rhs_geometric: Rational,
    pub rhs_parts: Rational,
    /// The volume and triangle parts agree separately with the sails.
    pub parts_ok: bool,
}

impl StepCheck {
    pub fn ok(&self) -> bool {
        self.laws_ok
            && self.sail_ok
            && self.parts_ok
            && self.lhs_closed_forms == self.lhs_formula
            && self.lhs_formula == self.rhs_geometric
            && self.rhs_geometric == self.rhs_parts
    }
}

/// Recomputes every quantity of a step from scratch.
pub fn verify_step(s: &ReductionStep) -> StepCheck {
    let (c, h) = (&s.before, &s.after);
    let (v, a, v_hat, a_hat) = (c.volume(), c.a(), h.volume(), h.a());
    let chain = c.sail_chain();
    let k = chain.len() - 1;
    let w_prime = &chain[k - 1];

    let laws_ok = s.lambda >= BigInt::from(2)
        && h.u2() == c.u2()
        && match s.case {
            Case::I => v == &(v_hat + a_hat) && a == a_hat && c.w() == h.w(),
            Case::II => v == &(BigInt::from(2) * v_hat - a_hat) && a == v_hat && c.w() == h.u1(),
        };

    let hat_chain = h.sail_chain();
    let sail_ok = match s.case {
        Case::I => {
            hat_chain.len() == chain.len() && hat_chain[..k] == chain[..k] && hat_chain[k] == c.u1() - w_prime
        }
        Case::II => hat_chain[..] == chain[..k],
    };

    let (vol_part, tri_part) = delta_rhs_parts(s.case, v_hat, a_hat);
    let (comp, tris) = cone_rhs_parts(c);
    let (comp_hat, tris_hat) = cone_rhs_parts(h);
    let tri_diff = tris.iter().sum::<Rational>() - tris_hat.iter().sum::<Rational>();
    let parts_ok = &comp - &comp_hat == vol_part && tri_diff == tri_part;

    StepCheck {
        laws_ok,
        sail_ok,
        lhs_closed_forms: lhs(c) - lhs(h),
        lhs_formula: delta_lhs_formula(s.case, v_hat, a_hat),
        rhs_geometric: rhs(c) - rhs(h),
        rhs_parts: vol_part + tri_part,
        parts_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(v: i64, a: i64) -> Cone {
        Cone::normal_form(v, a).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn case_one_example() {
        let c = nf(8, 3);
        assert_eq!(c.u2(), &crate::LatticePoint::new(5, 8));
        let s = reduce_once(&c).unwrap();
        assert_eq!(s.case, Case::I);
        assert_eq!((s.after.volume(), s.after.a()), (&big(5), &big(3)));
        assert_eq!(s.delta_lhs, Rational::frac(18, 5));
        assert_eq!(s.delta_rhs, Rational::frac(18, 5));
        let check = verify_step(&s);
        assert!(check.ok(), "{check:?}");
        assert_eq!(check.rhs_parts, Rational::frac(18, 5));
    }

    #[test]
    fn case_two_example() {
        let c = Cone::from_coords((1, 0), (2, 5)).unwrap();
        assert_eq!((c.volume(), c.a()), (&big(5), &big(3)));
        let s = reduce_once(&c).unwrap();
        assert_eq!(s.case, Case::II);
        assert_eq!(s.lambda, big(2));
        assert_eq!((s.after.volume(), s.after.a()), (&big(3), &big(1)));
        let check = verify_step(&s);
        assert!(check.ok(), "{check:?}");
        for d in [
            &check.lhs_closed_forms,
            &check.lhs_formula,
            &check.rhs_geometric,
            &check.rhs_parts,
        ] {
            assert_eq!(d, &Rational::frac(16, 15));
        }
    }

    #[test]
    fn volume_two_reduces_to_unimodular() {
        let c = Cone::from_coords((1, 0), (1, 2)).unwrap();
        let s = reduce_once(&c).unwrap();
        assert_eq!(s.case, Case::II);
        assert!(s.after.is_unimodular());
        assert!(verify_step(&s).ok());
        assert!(s.delta_lhs.is_zero());
    }

    #[test]
    fn unimodular_is_already_reduced() {
        let c = nf(1, 0);
        assert_eq!(reduce_once(&c), Err(Error::AlreadyReduced));
        assert!(reduction_chain(&c).is_empty());
        assert_eq!(
            Error::AlreadyReduced.to_string(),
            "already reduced: cone is unimodular"
        );
    }

    #[test]
    fn chain_from_eight_three() {
        let steps = reduction_chain(&nf(8, 3));
        let pairs: Vec<(BigInt, BigInt)> = steps
            .iter()
            .map(|s| (s.before.volume().clone(), s.before.a().clone()))
            .collect();
        assert_eq!(pairs[0], (big(8), big(3)));
        assert_eq!(pairs[1], (big(5), big(3)));
        assert_eq!(pairs[2], (big(3), big(1)));
        assert!(steps.last().unwrap().after.is_unimodular());
        assert!(steps.windows(2).all(|w| w[0].after == w[1].before));
        assert!(steps.len() <= 7);
        assert!(steps.iter().all(|s| verify_step(s).ok()));
        let total: Rational = steps.iter().map(|s| &s.delta_lhs).sum();
        assert_eq!(total, Rational::from(6));
    }

    #[test]
    fn residue_one_chains_step_down_by_one() {
        for n in 2..=30 {
            let steps = reduction_chain(&nf(n, 1));
            assert_eq!(steps.len(), n as usize - 1);
            let (last, rest) = steps.split_last().unwrap();
            for (i, s) in rest.iter().enumerate() {
                assert_eq!(s.case, Case::I);
                assert_eq!(s.before.volume(), &big(n - i as i64));
                assert_eq!(s.after.volume(), &big(n - i as i64 - 1));
                assert_eq!(s.after.a(), &big(1));
            }
            // the final step from V = 2 lands on a unimodular cone, which only
            // the Case II law V = 2V̂ − â admits
            assert_eq!(last.case, Case::II);
            assert_eq!(last.before.volume(), &big(2));
        }
    }

    #[test]
    fn formula_matches_closed_form_difference() {
        for v_hat in 1..=40i64 {
            for a_hat in 0..v_hat.max(1) {
                if num_integer::gcd(a_hat, v_hat) != 1 {
                    continue;
                }
                let lo = cone_lhs_closed_form(v_hat, a_hat).unwrap();
                // Case I: (V, a) = (V̂ + â, â), needs â ≥ 1
                if a_hat >= 1 {
                    let hi = cone_lhs_closed_form(v_hat + a_hat, a_hat).unwrap();
                    assert_eq!(delta_lhs_formula(Case::I, &big(v_hat), &big(a_hat)), hi - &lo);
                }
                // Case II: (V, a) = (2V̂ − â, V̂)
                let hi = cone_lhs_closed_form(2 * v_hat - a_hat, v_hat).unwrap();
                assert_eq!(delta_lhs_formula(Case::II, &big(v_hat), &big(a_hat)), hi - &lo);
            }
        }
    }

    #[test]
    fn trace_json() {
        let s = reduce_once(&nf(8, 3)).unwrap();
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"case":"I","V":8,"a":3,"V_hat":5,"a_hat":3,"lambda":3,"delta":"18/5"}"#
        );
        assert_eq!(s.to_string(), "case I, (8,3)→(5,3), delta 18/5");
    }
}
