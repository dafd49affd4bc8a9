//! One PASS/FAIL line per acceptance criterion. All tolerances are exact:
//! every quantity compared here is an integer or a ring element.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use projtc::bounds::{
    binom_mod2, check_power_expansion, check_power_vanishing, fiber_tc_interval, height,
    relative_height, Enhancement,
};
use projtc::char_classes::{dual_total_sw, TotalSwClass};
use projtc::cli::{parse_spec, run, RunOptions, CORPUS};
use projtc::ring::{Element, PresentedRing};
use projtc::verification::{
    exhaustive_kernel_degree1, pascal_mod2, relative_height_bruteforce, OracleError,
};
use projtc::{build_projective_model, BoundSource, BundleSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_text(name: &str) -> &'static str {
    CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .unwrap_or_else(|| panic!("corpus file {name} missing"))
}

fn report_for(name: &str) -> Result<projtc::cli::Report, String> {
    let file = parse_spec(corpus_text(name)).map_err(|e| format!("{name}: {e}"))?;
    run(&file.bundle, &RunOptions::default()).map_err(|e| format!("{name}: {e}"))
}

fn interval_of(r: &projtc::cli::Report) -> (u32, Option<u32>) {
    (r.interval.lower(), r.interval.upper())
}

fn spec(base: PresentedRing, rank: u32, w: &str) -> BundleSpec {
    let w = base.parse(w).unwrap();
    BundleSpec::new(base, rank, &w, true).unwrap()
}

fn criterion_1() -> Outcome {
    let r = report_for("rp2_cubed_rank3.spec")?;
    let file = parse_spec(corpus_text("rp2_cubed_rank3.spec")).unwrap();
    let base = file.bundle.base();
    let dual = dual_total_sw(base, file.bundle.total_sw()).map_err(|e| e.to_string())?;
    let top = dual.component(base, 6);
    let expected_top = base.parse("a^2*b^2*c^2").unwrap();
    ensure(dual.top_degree() == 6, || {
        format!("m = {}", dual.top_degree())
    })?;
    ensure(top == expected_top, || {
        format!("top dual class {}", base.render(&top))
    })?;
    let h = r.heights.ok_or("no heights")?;
    ensure((h.v_l, h.v_r, h.v_sum) == (8, 8, 9), || {
        format!("heights {h:?}")
    })?;
    ensure(
        interval_of(&r) == (9, Some(9)) && r.interval.is_exact(),
        || format!("interval {}", r.interval),
    )?;
    Ok("m=6, top dual class (abc)^2, heights 8/8/9, interval [9, 9] exact".into())
}

fn criterion_2() -> Outcome {
    let mut seen = Vec::new();
    for d in [3u32, 7, 15] {
        let r = report_for(&format!("circle_rank{}.spec", d + 1))?;
        ensure(
            interval_of(&r) == (2 * d, Some(2 * d)) && r.interval.is_exact(),
            || format!("d={d}: interval {}", r.interval),
        )?;
        // independent construction, not through the corpus file
        let base = PresentedRing::monomial_quotient(&[("beta", 1, 2)], 1).unwrap();
        let s = spec(base, d + 1, "1 + beta");
        let m = build_projective_model(&s).map_err(|e| e.to_string())?;
        let h = height(m.e2b_ring(), m.kernel_class()).map_err(|e| e.to_string())?;
        ensure(h == 2 * d, || format!("d={d}: kernel height {h}"))?;
        ensure(binom_mod2(2 * d as u64, d as u64 - 1).unwrap() == 1, || {
            format!("d={d}: C(2d, d-1) even")
        })?;
        seen.push(format!("d={d}->{}", 2 * d));
    }
    let fibre = fiber_tc_interval(15).map_err(|e| e.to_string())?;
    ensure((fibre.lower(), fibre.upper()) == (16, Some(22)), || {
        format!("fibre interval for d=15 is {fibre}")
    })?;
    Ok(format!(
        "{}; fibre RP^15 interval [16, 22] < 30",
        seen.join(", ")
    ))
}

fn criterion_3() -> Outcome {
    for n in 1..=6u32 {
        let r = report_for(&format!("rp{n}_rank2.spec"))?;
        ensure(interval_of(&r) == (n + 1, Some(n + 1)), || {
            format!("RP^{n} rank 2: {}", r.interval)
        })?;
        let base = PresentedRing::monomial_quotient(&[("beta", 1, n as u16 + 1)], n).unwrap();
        let s = spec(base, 2, "1 + beta");
        let m = build_projective_model(&s).map_err(|e| e.to_string())?;
        let ring = m.e2b_ring();
        let h = height(ring, m.kernel_class()).map_err(|e| e.to_string())?;
        ensure(h == n + 1, || format!("RP^{n}: height of v_L + v_R is {h}"))?;
        let beta = ring.parse("beta").unwrap();
        for k in 2..=n + 2 {
            let lhs = ring.pow(m.kernel_class(), k);
            let rhs = ring.mul(&ring.pow(&beta, k - 1), m.kernel_class());
            ensure(lhs == rhs, || format!("RP^{n}: power {k} of v_L + v_R"))?;
        }
    }
    let r = report_for("rp2_rank3.spec")?;
    ensure(interval_of(&r) == (5, Some(5)), || {
        format!("RP^2 rank 3: {}", r.interval)
    })?;
    ensure(
        r.interval.lower_source() == BoundSource::KernelClassHeight,
        || "RP^2 rank 3 lower source".into(),
    )?;
    ensure(
        r.interval.upper_source() == Some(BoundSource::ClosedManifoldSharp),
        || "RP^2 rank 3 upper source".into(),
    )?;
    let base = PresentedRing::monomial_quotient(&[("beta", 1, 3)], 2).unwrap();
    let m = build_projective_model(&spec(base, 3, "1 + beta")).unwrap();
    let ring = m.e2b_ring();
    let v4 = ring.pow(m.v_l(), 4);
    ensure(v4 == ring.parse("beta^2*v_L^2").unwrap(), || "v_L^4".into())?;
    ensure(ring.pow(m.v_l(), 5).is_zero(), || "v_L^5".into())?;
    ensure(!ring.pow(m.kernel_class(), 5).is_zero(), || {
        "(v_L+v_R)^5".into()
    })?;
    ensure(ring.pow(m.kernel_class(), 6).is_zero(), || {
        "(v_L+v_R)^6".into()
    })?;
    Ok("RP^n rank 2 gives n+1 for n=1..6; RP^2 rank 3 gives [5, 5]".into())
}

fn criterion_4() -> Outcome {
    for n in 1..=6u32 {
        let r = report_for(&format!("rp{n}_rank2.spec"))?;
        ensure(
            r.interval.lower_source() == BoundSource::RelativeHeight,
            || format!("RP^{n}: lower source {}", r.interval.lower_source()),
        )?;
        ensure(r.interval.upper() == Some(n + 1), || {
            format!("RP^{n}: {}", r.interval)
        })?;
    }
    let t = report_for("torus_rank2.spec")?;
    ensure(interval_of(&t) == (2, Some(2)), || {
        format!("torus: {}", t.interval)
    })?;
    let base = t.flat();
    ensure(base["upper_source"] == "circle-closed-manifold", || {
        format!("torus upper source {}", base["upper_source"])
    })?;
    let h = report_for("hopf_s2_rank2.spec")?;
    ensure(interval_of(&h) == (1, Some(1)), || {
        format!("hopf: {}", h.interval)
    })?;
    ensure(h.interval.lower_source() == BoundSource::Orientable, || {
        "hopf source".into()
    })?;
    let hh = h.heights.ok_or("hopf heights")?;
    ensure(hh.v_l == 3 && hh.v_r == 3 && hh.v_sum == 1, || {
        format!("hopf heights {hh:?}")
    })?;
    Ok(
        "RP^n circle bundles n+1, torus [2, 2], orientable over S^2 [1, 1] with heights 3 and 1"
            .into(),
    )
}

/// 100 seeded random bundles shared by criteria 5 and 6.
fn random_family() -> Vec<BundleSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    (0..100).map(|_| random_spec(&mut rng, 3..=6)).collect()
}

fn criterion_5(family: &[BundleSpec]) -> Outcome {
    for (i, s) in family.iter().enumerate() {
        let m = build_projective_model(s).map_err(|e| format!("case {i}: {e}"))?;
        let ok = check_power_vanishing(&m, s).map_err(|e| format!("case {i}: {e}"))?;
        ensure(ok, || format!("case {i}: (v_L + v_R)^(n+2d) nonzero"))?;
    }
    Ok(format!("{} random bundles, 0 failures", family.len()))
}

fn criterion_6(family: &[BundleSpec]) -> Outcome {
    let mut identities = 0;
    for (i, s) in family.iter().enumerate() {
        let m = build_projective_model(s).map_err(|e| format!("case {i}: {e}"))?;
        let n = s.base_dim();
        let d = s.fiber_dim();
        for which in [Enhancement::Left, Enhancement::Right] {
            for j in 1..=n + d {
                let ok =
                    check_power_expansion(&m, s, which, j).map_err(|e| format!("case {i}: {e}"))?;
                ensure(ok, || format!("case {i}: {which:?} expansion at index {j}"))?;
                identities += 1;
            }
        }
        let dual = dual_total_sw(s.base(), s.total_sw()).unwrap();
        let hl = height(m.e2b_ring(), m.v_l()).unwrap();
        ensure(hl == dual.top_degree() + d, || {
            format!("case {i}: h(v_L) = {hl}, m + d = {}", dual.top_degree() + d)
        })?;
    }
    Ok(format!(
        "{identities} expansion identities and {} height checks, 0 failures",
        family.len()
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for i in 0..200 {
        let base = random_base(&mut rng, 4, 6);
        let rank = rng.gen_range(1..=6);
        let w = random_total_class(&mut rng, &base, rank);
        let class = TotalSwClass::new(&base, &w, rank).map_err(|e| e.to_string())?;
        let dual = dual_total_sw(&base, &class).map_err(|e| e.to_string())?;
        let product = base.mul(&w, dual.value());
        ensure(product == Element::one(), || {
            format!("case {i}: w * dual = {}", base.render(&product))
        })?;
    }
    Ok("200 random total classes, 0 failures".into())
}

fn criterion_8() -> Outcome {
    let mut pairs = 0;
    for a in 0..=64u64 {
        for b in 0..=a {
            let lucas = binom_mod2(a, b).unwrap();
            let pascal = pascal_mod2(a, b).unwrap();
            ensure(lucas == pascal, || {
                format!("C({a}, {b}): {lucas} vs {pascal}")
            })?;
            pairs += 1;
        }
    }
    ensure(pairs == 2145, || format!("{pairs} pairs"))?;
    Ok("2145 pairs agree".into())
}

fn criterion_9() -> Outcome {
    let mut checked = Vec::new();
    let mut models = 0;
    for (name, text) in CORPUS {
        let file = parse_spec(text).map_err(|e| format!("{name}: {e}"))?;
        if file.bundle.rank() < 2 {
            continue;
        }
        models += 1;
        let m = build_projective_model(&file.bundle).map_err(|e| e.to_string())?;
        match exhaustive_kernel_degree1(&m) {
            Ok(found) => {
                ensure(found == vec![m.kernel_class().clone()], || {
                    format!("{name}: kernel has {} nonzero classes", found.len())
                })?;
                checked.push(*name);
            }
            Err(OracleError::CapExceeded { .. }) => {}
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    ensure(checked.len() == models, || {
        format!(
            "only {} of {models} corpus models within the cap",
            checked.len()
        )
    })?;
    Ok(format!(
        "{} corpus models, degree-1 kernel is exactly {{v_L + v_R}}",
        checked.len()
    ))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let mut done = 0;
    let mut finite = 0;
    let mut attempts = 0;
    while done < 50 {
        attempts += 1;
        if attempts > 10_000 {
            return Err("could not draw 50 pairs within the oracle cap".into());
        }
        let base = random_base(&mut rng, 3, 4);
        let a = random_homogeneous(&mut rng, &base, 1);
        if a.is_zero() {
            continue;
        }
        let db = rng.gen_range(1..=2);
        let b = random_homogeneous(&mut rng, &base, db);
        let slow = match relative_height_bruteforce(&base, &a, &b) {
            Ok(h) => h,
            Err(OracleError::CapExceeded { .. }) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let fast = relative_height(&base, &a, &b).map_err(|e| e.to_string())?;
        ensure(fast == slow, || {
            format!(
                "h({} | {}): echelon {fast:?}, enumeration {slow:?}",
                base.render(&a),
                base.render(&b)
            )
        })?;
        finite += usize::from(fast.is_some_and(|h| h > 0));
        done += 1;
    }
    Ok(format!(
        "50 pairs agree ({finite} with positive relative height)"
    ))
}

fn main() -> ExitCode {
    let family = random_family();
    let criteria: Vec<Criterion> = vec![
        ("three line bundles over (RP^2)^3", Box::new(criterion_1)),
        (
            "circle base, non-orientable line plus trivial",
            Box::new(criterion_2),
        ),
        ("projectivized examples over RP^n", Box::new(criterion_3)),
        ("circle bundle examples", Box::new(criterion_4)),
        (
            "top power of v_L + v_R vanishes",
            Box::new(|| criterion_5(&family)),
        ),
        (
            "enhancement power expansion and height",
            Box::new(|| criterion_6(&family)),
        ),
        ("dual class inversion", Box::new(criterion_7)),
        (
            "Lucas parity against Pascal's triangle",
            Box::new(criterion_8),
        ),
        (
            "degree-1 diagonal kernel enumeration",
            Box::new(criterion_9),
        ),
        (
            "relative height against brute force",
            Box::new(criterion_10),
        ),
    ];
    let mut failures = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {:>2}: {title}: {detail} ({ms:.0} ms)",
                i + 1
            ),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {:>2}: {title}: {why} ({ms:.0} ms)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
