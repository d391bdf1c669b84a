//! One line per acceptance criterion; exits non-zero if any fails.
//! Every comparison is exact.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ldp12::corpus::{normal_form_cones, random_ldp, reflexive_catalogue};
use ldp12::dedekind::{dedekind_sum, dedekind_sum_fast};
use ldp12::identity::{
    cone_lhs_direct, cone_rhs, cone_rhs_parts, dual_chain_sum, global_lhs, global_rhs, verify_cone,
    verify_decomposition, verify_polygon,
};
use ldp12::reduction::{reduce_once, reduction_chain, verify_step, Case};
use ldp12::{Cone, LatticePoint, LatticePolygon, Rational, RationalPoint};
use num_bigint::BigInt;
use num_integer::Integer;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pt(x: i64, y: i64) -> LatticePoint {
    LatticePoint::new(x, y)
}

fn example_triangle() -> LatticePolygon {
    LatticePolygon::from_coords(&[(0, -1), (3, 2), (-1, 2)]).expect("triangle")
}

fn triangle_global() -> Outcome {
    let p = example_triangle();
    let lhs = global_lhs(&p).map_err(|e| e.to_string())?;
    let rhs = global_rhs(&p).map_err(|e| e.to_string())?;
    let nvol = Rational::from(p.normalized_volume());
    let dual = p.dual().map_err(|e| e.to_string())?.normalized_volume();
    ensure(lhs == Rational::from(18), || format!("lhs = {lhs}"))?;
    ensure(rhs == Rational::from(18), || format!("rhs = {rhs}"))?;
    ensure(nvol == Rational::from(12) && dual == Rational::from(6), || {
        format!("split {nvol} + {dual}")
    })?;
    Ok(format!("lhs = rhs = {lhs} = {nvol} + {dual}"))
}

fn cone_eight_three() -> Outcome {
    let c = Cone::from_coords((3, 2), (-1, 2)).map_err(|e| e.to_string())?;
    ensure(
        c.volume() == &BigInt::from(8) && c.a() == &BigInt::from(3),
        || format!("(V, a) = ({}, {})", c.volume(), c.a()),
    )?;
    ensure(c.interior_points() == vec![pt(0, 1), pt(1, 1)], || {
        format!("interior points {:?}", c.interior_points())
    })?;
    let lhs = cone_lhs_direct(&c);
    let rhs = cone_rhs(&c);
    let (complement, triangles) = cone_rhs_parts(&c);
    ensure(lhs == Rational::from(6) && rhs == Rational::from(6), || {
        format!("lhs {lhs}, rhs {rhs}")
    })?;
    ensure(
        complement == Rational::from(5) && triangles == vec![Rational::frac(1, 2); 2],
        || format!("split {complement} + {triangles:?}"),
    )?;
    let sail = c.sail();
    ensure(sail.m_sigma() == &RationalPoint::frac((0, 1), (-1, 2)), || {
        format!("m_sigma = {}", sail.m_sigma())
    })?;
    let expected: Vec<RationalPoint> = [pt(-1, -1), pt(0, -1), pt(1, -2)]
        .iter()
        .map(LatticePoint::to_rational)
        .collect();
    ensure(sail.functionals() == expected.as_slice(), || {
        format!("functionals {:?}", sail.functionals())
    })?;
    Ok(format!(
        "V=8 a=3, 6 = {complement} + 1/2 + 1/2, m_sigma = {}",
        sail.m_sigma()
    ))
}

fn triangle_dual_chain() -> Outcome {
    let p = example_triangle();
    let chain = dual_chain_sum(&p).map_err(|e| e.to_string())?;
    let mut nonzero: Vec<BigInt> = chain
        .dets
        .iter()
        .filter(|d| d != &&BigInt::from(0))
        .cloned()
        .collect();
    nonzero.sort();
    let expected: Vec<BigInt> = [-1, -1, 1, 2, 4].into_iter().map(BigInt::from).collect();
    ensure(chain.total == BigInt::from(5), || {
        format!("total {}", chain.total)
    })?;
    ensure(nonzero == expected, || format!("nonzero dets {nonzero:?}"))?;
    let d = verify_decomposition(&p).map_err(|e| e.to_string())?;
    let rhs = &d.dual_volume - &d.triangle_total;
    ensure(
        d.dual_volume == Rational::from(6) && d.triangle_total == Rational::from(1),
        || format!("{} − {}", d.dual_volume, d.triangle_total),
    )?;
    ensure(Rational::from(&chain.total) == rhs && d.ok(), || format!("{d:?}"))?;
    Ok(format!("Σ det = {} = 6 − 1/2 − 1/2", chain.total))
}

fn dedekind_suite() -> Outcome {
    let mut pairs = 0usize;
    for k in 2..=200i64 {
        for h in 1..k {
            if h.gcd(&k) != 1 {
                continue;
            }
            let lhs = dedekind_sum(h, k).map_err(|e| e.to_string())?
                + dedekind_sum(k, h).map_err(|e| e.to_string())?;
            let rhs = Rational::frac(-1, 4)
                + (Rational::frac(h, k) + Rational::frac(1, h * k) + Rational::frac(k, h))
                    / Rational::from(12);
            ensure(lhs == rhs, || format!("reciprocity fails at ({h}, {k})"))?;
            pairs += 1;
        }
    }
    for k in 1..=200i64 {
        let s = dedekind_sum(1, k).map_err(|e| e.to_string())?;
        let first = Rational::frac((k - 1) * (k - 2), 12 * k);
        let second = Rational::frac(-1, 4) + Rational::frac(1, 6 * k) + Rational::frac(k, 12);
        ensure(s == first && s == second, || format!("s(1, {k}) = {s}"))?;
    }
    let mut compared = 0usize;
    for k in 1..=500i64 {
        for h in 0..k {
            if h.gcd(&k) != 1 {
                continue;
            }
            let slow = dedekind_sum(h, k).map_err(|e| e.to_string())?;
            let fast = dedekind_sum_fast(h, k).map_err(|e| e.to_string())?;
            ensure(slow == fast, || format!("s({h}, {k}): {slow} vs {fast}"))?;
            compared += 1;
        }
    }
    Ok(format!("{pairs} reciprocity pairs, {compared} fast/direct pairs"))
}

fn cone_sweep() -> Outcome {
    let cones = normal_form_cones(60);
    for c in &cones {
        let r = verify_cone(c);
        ensure(r.ok, || {
            format!(
                "(V, a) = ({}, {}): direct {}, closed {}, rhs {}",
                c.volume(),
                c.a(),
                r.lhs_direct,
                r.lhs_closed_form,
                r.rhs
            )
        })?;
    }
    Ok(format!("{} cones with V ≤ 60", cones.len()))
}

fn reduction_sweep() -> Outcome {
    let pinned = [
        ((8, 3), (5, 3), Case::I, Rational::frac(18, 5)),
        ((5, 3), (3, 1), Case::II, Rational::frac(16, 15)),
    ];
    for ((v, a), (vh, ah), case, delta) in pinned {
        let c = Cone::normal_form(v, a).map_err(|e| e.to_string())?;
        let s = reduce_once(&c).map_err(|e| e.to_string())?;
        let check = verify_step(&s);
        ensure(
            s.case == case
                && s.after.volume() == &BigInt::from(vh)
                && s.after.a() == &BigInt::from(ah)
                && check.ok()
                && check.lhs_closed_forms == delta
                && check.rhs_geometric == delta,
            || format!("pinned step ({v},{a}): {s} {check:?}"),
        )?;
    }
    let mut steps = 0usize;
    for c in normal_form_cones(60) {
        let chain = reduction_chain(&c);
        ensure(
            chain.len() < usize::try_from(c.volume()).unwrap_or(usize::MAX).max(1),
            || format!("chain of ({}, {}) too long", c.volume(), c.a()),
        )?;
        for s in &chain {
            let check = verify_step(s);
            ensure(check.ok() && s.delta_lhs == s.delta_rhs, || {
                format!("{s}: {check:?}")
            })?;
            ensure(s.after.volume() < s.before.volume(), || {
                format!("{s}: V does not drop")
            })?;
            steps += 1;
        }
    }
    Ok(format!("{steps} steps, pinned 18/5 and 16/15"))
}

fn random_polygons() -> Outcome {
    let mut reflexive = 0usize;
    for seed in 1..=1000u64 {
        let p = random_ldp(seed, 12, 8).map_err(|e| format!("seed {seed}: {e}"))?;
        let r = verify_polygon(&p).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(r.passed(), || {
            format!("seed {seed}: {:?}", r.clone().without_cones())
        })?;
        ensure(r.lhs == r.rhs && r.rhs >= Rational::from(12), || {
            format!("seed {seed}")
        })?;
        ensure((r.rhs == Rational::from(12)) == p.is_reflexive(), || {
            format!("seed {seed}: equality case")
        })?;
        if r.reflexive {
            reflexive += 1;
        }
    }
    Ok(format!("1000 polygons, {reflexive} reflexive"))
}

fn catalogue() -> Outcome {
    let cat = reflexive_catalogue();
    for p in &cat {
        let rhs = global_rhs(p).map_err(|e| e.to_string())?;
        ensure(rhs == Rational::from(12), || format!("{p:?}: rhs {rhs}"))?;
        ensure(global_lhs(p).map_err(|e| e.to_string())? == rhs, || {
            format!("{p:?}: lhs")
        })?;
    }
    ensure(cat.len() == 16, || format!("{} classes", cat.len()))?;
    Ok("16 classes, each with nvol + nvol* = 12".into())
}

fn main() -> ExitCode {
    let ms = Duration::from_millis;
    let criteria: [Criterion; 8] = [
        ("triangle: global identity 18 = 12 + 6", triangle_global, ms(10)),
        (
            "cone (3,2),(-1,2): cone identity 6 = 5 + 1/2 + 1/2",
            cone_eight_three,
            ms(10),
        ),
        (
            "triangle: dual chain 4 + 2 − 1 − 1 + 1",
            triangle_dual_chain,
            Duration::MAX,
        ),
        (
            "dedekind sums: reciprocity, s(1,k), fast route",
            dedekind_suite,
            ms(10_000),
        ),
        ("cone-wise identity for all V ≤ 60", cone_sweep, ms(60_000)),
        ("reduction steps for all V ≤ 60", reduction_sweep, ms(60_000)),
        (
            "global identity on 1000 random polygons",
            random_polygons,
            ms(300_000),
        ),
        ("reflexive catalogue", catalogue, ms(120_000)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:.0?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
