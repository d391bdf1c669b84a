//! Sawtooth function, Dedekind sums and the closed form of the cone-wise
//! left-hand side.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{mod_floor, Rational};

/// `((x)) = x − ⌊x⌋ − 1/2` off the integers, `0` on them.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        return Rational::zero();
    }
    x - Rational::from(x.floor()) - Rational::frac(1, 2)
}

fn check_pair(h: &BigInt, k: &BigInt) -> Result<()> {
    if !k.is_positive() {
        return Err(Error::NonPositiveModulus(k.clone()));
    }
    if !h.gcd(k).is_one() {
        return Err(Error::NotCoprime {
            h: h.clone(),
            k: k.clone(),
        });
    }
    Ok(())
}

/// `s(h, k) = Σ_{i=1}^{k} ((h·i/k))((i/k))`, summed term by term.
///
/// Each nonzero term is `(2r − k)(2i − k) / 4k²` with `r = h·i mod k`.
pub fn dedekind_sum(h: impl Into<BigInt>, k: impl Into<BigInt>) -> Result<Rational> {
    let (h, k) = (h.into(), k.into());
    check_pair(&h, &k)?;
    if let (Some(hs), Some(ks)) = (mod_floor(&h, &k).to_i64(), k.to_i64()) {
        if ks <= 1 << 24 {
            return Ok(small_sum(hs, ks));
        }
    }
    Ok(big_sum(&h, &k))
}

fn big_sum(h: &BigInt, k: &BigInt) -> Rational {
    let two_k = k + k;
    let mut total = BigInt::zero();
    let mut i = BigInt::one();
    let mut r = mod_floor(h, k);
    let h_mod = r.clone();
    while &i < k {
        total += (&r + &r - k) * (&i + &i - k);
        i += 1;
        r += &h_mod;
        if &r >= k {
            r -= k;
        }
    }
    Rational::new(total, &two_k * &two_k).expect("k > 0")
}

/// The direct sum in machine integers: every term is below `k²` in size,
/// so `k ≤ 2²⁴` keeps the total far inside `i128`.
fn small_sum(h: i64, k: i64) -> Rational {
    let (h, k) = (i128::from(h), i128::from(k));
    let mut total: i128 = 0;
    let mut r = h;
    for i in 1..k {
        total += (2 * r - k) * (2 * i - k);
        r += h;
        if r >= k {
            r -= k;
        }
    }
    Rational::new(BigInt::from(total), BigInt::from(4 * k * k)).expect("k > 0")
}

/// `s(h, k)` by Euclidean descent: reduce `h` modulo `k`, then swap the
/// arguments with the reciprocity law
/// `s(h,k) + s(k,h) = −1/4 + (h/k + 1/(hk) + k/h) / 12`.
pub fn dedekind_sum_fast(h: impl Into<BigInt>, k: impl Into<BigInt>) -> Result<Rational> {
    let (h, k) = (h.into(), k.into());
    check_pair(&h, &k)?;
    let mut acc = Rational::zero();
    let mut negate = false;
    let (mut h, mut k) = (mod_floor(&h, &k), k);
    while !h.is_zero() {
        // s(h,k) = −s(k,h) − 1/4 + (h² + k² + 1)/(12hk)
        let term = Rational::new(&h * &h + &k * &k + 1u8, BigInt::from(12) * &h * &k).expect("h, k > 0")
            - Rational::frac(1, 4);
        if negate {
            acc -= &term;
        } else {
            acc += term;
        }
        negate = !negate;
        let next = mod_floor(&k, &h);
        k = h;
        h = next;
    }
    Ok(acc)
}

/// `(V − 1)(V − 2)/V + 12·s(a, V)`, the cone-wise left-hand side of a cone
/// with invariants `(V, a)`.
pub fn cone_lhs_closed_form(volume: impl Into<BigInt>, a: impl Into<BigInt>) -> Result<Rational> {
    let (v, a) = (volume.into(), a.into());
    check_pair(&a, &v)?;
    let head = Rational::new((&v - 1u8) * (&v - 2u8), v.clone()).expect("V > 0");
    Ok(head + Rational::from(12) * dedekind_sum_fast(a, v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `s(h, k)` straight from the sawtooth definition.
    fn by_definition(h: i64, k: i64) -> Rational {
        (1..=k)
            .map(|i| sawtooth(&Rational::frac(h * i, k)) * sawtooth(&Rational::frac(i, k)))
            .sum()
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth(&Rational::from(5)), Rational::zero());
        assert_eq!(sawtooth(&Rational::frac(1, 4)), Rational::frac(-1, 4));
        assert_eq!(sawtooth(&Rational::frac(9, 8)), Rational::frac(-3, 8));
        assert_eq!(sawtooth(&Rational::frac(-1, 4)), Rational::frac(1, 4));
        assert_eq!(sawtooth(&Rational::frac(1, 2)), Rational::zero());
    }

    #[test]
    fn sawtooth_is_odd_and_periodic() {
        for p in -40..=40 {
            for q in 1..=9 {
                let x = Rational::frac(p, q);
                let s = sawtooth(&x);
                assert_eq!(sawtooth(&-&x), -&s);
                assert_eq!(sawtooth(&(&x + Rational::one())), s);
                assert!(s > Rational::frac(-1, 2) && s < Rational::frac(1, 2));
            }
        }
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_sum(1, 3).unwrap(), Rational::frac(1, 18));
        assert_eq!(dedekind_sum(3, 8).unwrap(), Rational::frac(1, 16));
        assert_eq!(dedekind_sum(0, 1).unwrap(), Rational::zero());
        assert_eq!(dedekind_sum(8, 3).unwrap(), Rational::frac(-1, 18));
        assert_eq!(dedekind_sum(3, 5).unwrap(), Rational::zero());
        assert_eq!(dedekind_sum_fast(3, 8).unwrap(), Rational::frac(1, 16));
        assert_eq!(dedekind_sum_fast(8, 3).unwrap(), Rational::frac(-1, 18));
        assert_eq!(dedekind_sum_fast(1, 1).unwrap(), Rational::zero());
    }

    #[test]
    fn dedekind_errors() {
        assert!(matches!(dedekind_sum(2, 4), Err(Error::NotCoprime { .. })));
        assert!(matches!(dedekind_sum_fast(6, 9), Err(Error::NotCoprime { .. })));
        assert!(matches!(dedekind_sum(1, 0), Err(Error::NonPositiveModulus(_))));
        assert!(matches!(
            dedekind_sum_fast(1, -3),
            Err(Error::NonPositiveModulus(_))
        ));
        assert!(cone_lhs_closed_form(8, 2).is_err());
    }

    #[test]
    fn both_routes_match_definition() {
        for k in 1..=30i64 {
            for h in -2 * k..=2 * k {
                if num_integer::gcd(h, k) != 1 {
                    continue;
                }
                let d = by_definition(h, k);
                assert_eq!(dedekind_sum(h, k).unwrap(), d, "s({h},{k})");
                assert_eq!(dedekind_sum_fast(h, k).unwrap(), d, "s({h},{k})");
            }
        }
    }

    #[test]
    fn reciprocity_example() {
        let lhs = dedekind_sum(3, 8).unwrap() + dedekind_sum(8, 3).unwrap();
        assert_eq!(lhs, Rational::frac(1, 144));
        let rhs = Rational::frac(-1, 4)
            + (Rational::frac(3, 8) + Rational::frac(1, 24) + Rational::frac(8, 3)) / Rational::from(12);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(cone_lhs_closed_form(8, 3).unwrap(), Rational::from(6));
        assert_eq!(cone_lhs_closed_form(5, 3).unwrap(), Rational::frac(12, 5));
        assert_eq!(cone_lhs_closed_form(3, 1).unwrap(), Rational::frac(4, 3));
        assert_eq!(cone_lhs_closed_form(1, 0).unwrap(), Rational::zero());
        assert_eq!(cone_lhs_closed_form(3, 2).unwrap(), Rational::zero());
    }

    #[test]
    fn machine_and_big_paths_agree() {
        for k in 1..=60i64 {
            for h in 0..k {
                if num_integer::gcd(h, k) == 1 {
                    assert_eq!(big_sum(&h.into(), &k.into()), small_sum(h, k));
                }
            }
        }
    }

    #[test]
    fn large_arguments_stay_exact() {
        let k: BigInt = "1000000000000000000000007".parse().unwrap();
        let s = dedekind_sum_fast(1, k.clone()).unwrap();
        let expected = Rational::new((&k - 1u8) * (&k - 2u8), BigInt::from(12) * &k).unwrap();
        assert_eq!(s, expected);
    }
}
