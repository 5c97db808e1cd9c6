//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use dessinry::braid::{braid_orbit, preset_gamma2_generators};
use dessinry::covers::roots::{poly_roots, real_coeffs, relative_residual};
use dessinry::covers::tracking::{numerical_monodromy, TrackOptions};
use dessinry::covers::{belyi_example, hurwitz_dessin, hurwitz_fiber, Lift};
use dessinry::enumeration::{count_transitive_tuples, enumerate, hall_count};
use dessinry::modular::table1::{check_row, table1_rows};
use dessinry::modular::{
    integrality_check, j_from_lambda_star, j_oracle, lambda_star, lambda_star_expressions,
    lambda_star_qseries, weber_f, weber_f1, weber_f2, CDd, Dd, UpperHalfPoint, DEFAULT_TOL,
};
use dessinry::origami::{orbit_of_dessins, BipartiteOrigami, RowDiagram};
use dessinry::perm::factorial;
use dessinry::MonodromyTuple;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn classes(n: usize, d: usize) -> Result<Vec<MonodromyTuple>, String> {
    Ok(enumerate(n, d).map_err(|e| e.to_string())?.tuples().cloned().collect())
}

fn criterion_1() -> Outcome {
    for (n, dmax) in [(3, 5), (4, 4)] {
        for d in 1..=dmax {
            let count = count_transitive_tuples(n, d).map_err(|e| e.to_string())?;
            let hall = hall_count(n - 1, d).map_err(|e| e.to_string())? * BigUint::from(factorial(d - 1));
            ensure(BigUint::from(count) == hall, || format!("n={n} d={d}: count {count} vs {hall}"))?;
        }
    }
    let c32 = enumerate(3, 2).map_err(|e| e.to_string())?.len();
    let c42 = enumerate(4, 2).map_err(|e| e.to_string())?.len();
    ensure(c32 == 3 && c42 == 7, || format!("enumerate(3,2) = {c32}, enumerate(4,2) = {c42}"))
}

fn criterion_2() -> Outcome {
    let text = include_str!("../fixtures/shear_pair.json");
    let rows = RowDiagram::collection_from_json(text).map_err(|e| e.to_string())?;
    let o = rows["O"].to_origami().map_err(|e| e.to_string())?;
    let o2 = rows["O_prime"].to_origami().map_err(|e| e.to_string())?;
    let image = o.delta_hor().map_err(|e| e.to_string())?;
    ensure(image.isomorphic(&o2).map_err(|e| e.to_string())?, || "delta_hor(O) is not O'".into())?;
    ensure(!o.isomorphic(&o2).map_err(|e| e.to_string())?, || "O is isomorphic to O'".into())
}

fn criterion_3() -> Outcome {
    let words = preset_gamma2_generators();
    for d in 1..=3 {
        let all = classes(4, d)?;
        let mut covered = BTreeSet::new();
        for t in &all {
            if covered.contains(t) {
                continue;
            }
            let shear = orbit_of_dessins(std::slice::from_ref(t)).map_err(|e| e.to_string())?;
            let word = braid_orbit(std::slice::from_ref(t), &words).map_err(|e| e.to_string())?;
            ensure(shear.orbit == word.orbit, || format!("orbits differ at {t}"))?;
            covered.extend(shear.orbit);
        }
        ensure(covered.len() == all.len(), || format!("d={d}: orbits do not cover the classes"))?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for d in 1..=3 {
        for t in classes(4, d)? {
            let o = BipartiteOrigami::from_dessin(&t).map_err(|e| e.to_string())?;
            let back = o.to_dessin().map_err(|e| e.to_string())?.canonical_form().map_err(|e| e.to_string())?;
            ensure(back == t, || format!("roundtrip changed {t}"))?;
        }
        for n in [3, 4] {
            for t in classes(n, d)? {
                let r = t.orientation_reverse().map_err(|e| e.to_string())?;
                ensure(r.orientation_reverse().map_err(|e| e.to_string())? == t, || format!("not involutive at {t}"))?;
                ensure(r.cycle_profile() == t.cycle_profile(), || format!("profile changed at {t}"))?;
                ensure(r.genus().ok() == t.genus().ok(), || format!("genus changed at {t}"))?;
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let (r2, r3, q3) = (2f64.sqrt(), 3f64.sqrt(), 3f64.powf(0.25));
    let closed = [
        (Lift::L1, c((1.0 + r3) / 2.0, r2 * q3 / 2.0)),
        (Lift::L2, c((1.0 + r3) / 2.0, -r2 * q3 / 2.0)),
        (Lift::L3, c((1.0 - r2 * q3 - r3) / 2.0, 0.0)),
        (Lift::L4, c((1.0 + r2 * q3 - r3) / 2.0, 0.0)),
    ];
    let fiber = hurwitz_fiber(c(2.0, 0.0)).map_err(|e| e.to_string())?;
    for (lift, s) in closed {
        let p = fiber.iter().find(|p| p.lift == Some(lift)).ok_or(format!("no {lift} over 2"))?;
        ensure((p.s - s).norm() < 1e-9, || format!("{lift}: {} vs {s}", p.s))?;
    }
    let quartic = real_coeffs(&[-3.0, 6.0, 0.0, -2.0, 1.0]);
    let roots = poly_roots(&quartic).map_err(|e| e.to_string())?;
    for z in &roots {
        ensure(relative_residual(&quartic, *z) <= 1e-10, || format!("residual at {z}"))?;
    }
    for printed in [-15088444949.0, 5379312192.0] {
        ensure(
            roots.iter().any(|z| z.im.abs() < 1e-12 && (z.re * 1e10).trunc() == printed),
            || format!("no root with digits {printed}e-10"),
        )?;
    }
    for a in [2.0, 3.0] {
        let labels: BTreeSet<Lift> =
            hurwitz_fiber(c(a, 0.0)).map_err(|e| e.to_string())?.iter().filter_map(|p| p.lift).collect();
        ensure(labels.len() == 4, || format!("labels over {a}: {labels:?}"))?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut tuples = Vec::new();
    for lift in Lift::ALL {
        let t = hurwitz_dessin(2.0, lift).map_err(|e| e.to_string())?;
        let profile = t.cycle_profile().0;
        ensure(profile == vec![vec![4], vec![2, 1, 1], vec![2, 1, 1], vec![2, 1, 1]], || format!("{lift}: {profile:?}"))?;
        ensure(t.genus().ok() == Some(0), || format!("{lift}: genus"))?;
        tuples.push(t);
    }
    let iso = |a: &MonodromyTuple, b: &MonodromyTuple| a.isomorphic(b).unwrap_or(false);
    ensure(!iso(&tuples[2], &tuples[3]), || "L3 and L4 are isomorphic".into())?;
    let reversed = tuples[1].orientation_reverse().map_err(|e| e.to_string())?;
    ensure(iso(&tuples[0], &reversed), || "L1 is not the reverse of L2".into())?;
    let l3_at_3 = hurwitz_dessin(3.0, Lift::L3).map_err(|e| e.to_string())?;
    ensure(l3_at_3 == tuples[2], || "L3 class differs between a = 2 and a = 3".into())?;
    let orbit = orbit_of_dessins(&tuples[..1]).map_err(|e| e.to_string())?;
    ensure(tuples.iter().all(|t| orbit.contains(t)), || "lifts are not in one orbit".into())
}

fn criterion_7() -> Outcome {
    let t = numerical_monodromy(&belyi_example(), &TrackOptions::default()).map_err(|e| e.to_string())?;
    let profile = t.cycle_profile().0;
    ensure(profile == vec![vec![3], vec![2, 1], vec![2, 1]], || format!("profile {profile:?}"))?;
    ensure(t.genus().ok() == Some(0), || "genus".into())
}

fn criterion_8() -> Outcome {
    let tol = DEFAULT_TOL;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let sqrt2 = CDd::real(Dd::from_f64(2.0).sqrt());
    for _ in 0..20 {
        let p = UpperHalfPoint::from_f64(rng.gen_range(-1.0..1.0), rng.gen_range(0.8..3.0)).map_err(|e| e.to_string())?;
        let f = weber_f(&p, tol).map_err(|e| e.to_string())?.value;
        let f1 = weber_f1(&p, tol).map_err(|e| e.to_string())?.value;
        let f2 = weber_f2(&p, tol).map_err(|e| e.to_string())?.value;
        ensure((f * f1 * f2 - sqrt2).abs_f64() < 1e-12, || format!("relation I at {p}"))?;
        let f8 = f.powi(8);
        ensure((f8 - f1.powi(8) - f2.powi(8)).abs_f64() < 1e-12 * f8.abs_f64().max(1.0), || format!("relation II at {p}"))?;
        let e = lambda_star_expressions(&p, tol).map_err(|e| e.to_string())?;
        ensure(e.spread() < 1e-11 * e.weber.value.abs_f64().max(1.0), || format!("lambda* spread {:e} at {p}", e.spread()))?;
    }
    for n in [1, 2, 3, 5] {
        let p = UpperHalfPoint::imaginary(Dd::from_i64(n).sqrt()).map_err(|e| e.to_string())?;
        let x = lambda_star(&p, tol).map_err(|e| e.to_string())?.value;
        let via = j_from_lambda_star(x).map_err(|e| e.to_string())?;
        let direct = j_oracle(&p, tol).map_err(|e| e.to_string())?.value;
        let rel = (via - direct).abs_f64() / direct.abs_f64();
        ensure(rel < 1e-8, || format!("j mismatch {rel:e} at n = {n}"))?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let rows = table1_rows();
    ensure(rows.len() == 20, || format!("{} rows", rows.len()))?;
    for row in &rows {
        let c = check_row(row, DEFAULT_TOL).map_err(|e| e.to_string())?;
        ensure(c.pass, || format!("n = {}: error {:e}, imag {:e}, value {}", c.n, c.error, c.imag, c.computed))?;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let s = lambda_star_qseries(50);
    ensure(s.coefficients.len() == 51, || "wrong length".into())?;
    ensure(s.coefficients[0] == BigInt::from(1) && s.coefficients[1] == BigInt::from(16), || "leading terms".into())?;
    let p = UpperHalfPoint::from_f64(0.0, 3.0).map_err(|e| e.to_string())?;
    let (value, tail) = s.eval_bounded(&p).map_err(|e| e.to_string())?;
    let direct = lambda_star(&p, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let gap = (value - direct.value).abs_f64();
    ensure(gap <= tail + direct.trunc_bound + 1e-28, || format!("gap {gap:e}, tail {tail:e}"))
}

fn criterion_11() -> Outcome {
    for n in 1..=4 {
        ensure(integrality_check(n, 1e-6).map_err(|e| e.to_string())?, || format!("n = {n}"))?;
    }
    Ok(())
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "enumeration vs Hall oracle", limit: secs(60), run: criterion_1 },
        Criterion { id: 2, name: "shear gate", limit: secs(1), run: criterion_2 },
        Criterion { id: 3, name: "origami/word orbit cross-validation", limit: secs(120), run: criterion_3 },
        Criterion { id: 4, name: "roundtrips and orientation reversal", limit: None, run: criterion_4 },
        Criterion { id: 5, name: "Hurwitz fibers", limit: None, run: criterion_5 },
        Criterion { id: 6, name: "Hurwitz monodromy", limit: secs(60), run: criterion_6 },
        Criterion { id: 7, name: "Belyi example", limit: None, run: criterion_7 },
        Criterion { id: 8, name: "modular identities", limit: None, run: criterion_8 },
        Criterion { id: 9, name: "ap table", limit: secs(30), run: criterion_9 },
        Criterion { id: 10, name: "lambda* q-series", limit: None, run: criterion_10 },
        Criterion { id: 11, name: "integrality witness", limit: None, run: criterion_11 },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| match c.limit {
            Some(limit) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            _ => Ok(()),
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {} ({elapsed:.2?})", c.id, c.name),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {} ({elapsed:.2?}): {msg}", c.id, c.name);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
