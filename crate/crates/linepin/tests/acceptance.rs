//! Acceptance gates for the whole crate: eight independent criteria, each
//! printing a single pass/fail line (visible with `--nocapture`). Every
//! check is exact; the wall-clock bounds are asserted where a criterion
//! carries one.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use linepin::classify::{
    classify_ortho_pinning, decompose_surrounding, detect_4pinning, OrthoPinningClass,
    SurroundingCase,
};
use linepin::cone::cone_from_halfspaces;
use linepin::generators::{
    gen_char_ortho, gen_five_block, gen_infinite, gen_ortho8, gen_quadric_4block, gen_six_k1,
    gen_six_k2, gen_six_k3, gen_tangent_4pinning, infinite_escape, random_family,
};
use linepin::linalg::rank;
use linepin::linespace::{
    degenerate_pair, halfspace_of, orthogonalize_family, plucker_form, to_plucker, Constraint,
    LineCoords,
};
use linepin::lp::surrounds_origin;
use linepin::oracle::{sample_escape, SampleBudget};
use linepin::pinning::{
    decide_pinning, helly_flat_reduce, minimize_pinning, positive_cone_reduce, steinitz_reduce,
    verify_escape, IsolationCase, PinningVerdict,
};
use linepin::polytopes::{
    decide_polytope_pinning, minimize_polytope_pinning, verify_polytope_escape,
};
use linepin::rat::{
    add, is_parallel, is_positive_multiple, is_zero_vec, rat, ratio, scale, zeros, RVec, Rat,
};

fn report(n: usize, name: &str, ok: bool, detail: &str) {
    println!("criterion {n} ({name}): {} [{detail}]", if ok { "pass" } else { "FAIL" });
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
}

fn iv(xs: &[i64]) -> RVec {
    xs.iter().map(|&x| rat(x)).collect()
}

fn c(lambda: Rat, d: [i64; 3]) -> Constraint {
    Constraint::new(lambda, [rat(d[0]), rat(d[1]), rat(d[2])]).unwrap()
}

fn without<T: Clone>(xs: &[T], i: usize) -> Vec<T> {
    let mut out = xs.to_vec();
    out.remove(i);
    out
}

fn isolation_dim(v: &PinningVerdict) -> Option<usize> {
    match v {
        PinningVerdict::Pinned(IsolationCase::PositiveSide(d))
        | PinningVerdict::Pinned(IsolationCase::NegativeSide(d)) => Some(*d),
        _ => None,
    }
}

/// The three six-member families whose halfspace tables are frozen below.
/// The first two are the named fixtures; the third shares its four flat
/// members with `gen_six_k3` but tilts the vertical pair downward, which
/// flips the last coefficient of their rows (and costs the family its
/// pinning, so it exists only here, for its table).
fn table_families() -> [Vec<Constraint>; 3] {
    let down_tilted = vec![
        c(rat(0), [0, -1, -1]),
        c(rat(0), [0, 1, -1]),
        c(rat(-1), [-1, 3, 0]),
        c(ratio(-1, 2), [1, -2, 0]),
        c(ratio(1, 4), [1, 2, 0]),
        c(ratio(1, 3), [-1, -3, 0]),
    ];
    [gen_six_k1(), gen_six_k2(), down_tilted]
}

const TABLE_ROWS: [[[i64; 5]; 6]; 3] = [
    [
        [-1, 0, 0, 0, -1],
        [1, 0, 0, 0, -1],
        [0, 0, 0, -1, 1],
        [0, 0, 0, 1, 1],
        [-1, -1, 2, 2, 0],
        [1, 1, -2, -2, 0],
    ],
    [
        [-1, 0, 0, 0, -1],
        [1, 0, 0, 0, -1],
        [0, 0, 0, -1, 1],
        [0, 0, 0, 1, 1],
        [1, -1, -2, 2, 0],
        [-2, 2, 3, -3, 0],
    ],
    [
        [-1, 0, 0, 0, -1],
        [1, 0, 0, 0, -1],
        [6, 2, -3, -1, 0],
        [-6, -3, 2, 1, 0],
        [6, -3, 2, -1, 0],
        [-6, 2, -3, 1, 0],
    ],
];

#[test]
fn criterion_1_halfspace_tables() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (f, (family, rows)) in table_families().iter().zip(&TABLE_ROWS).enumerate() {
        for (i, (g, row)) in family.iter().zip(rows).enumerate() {
            let h = halfspace_of(g).to_vec();
            if !is_positive_multiple(&h, &iv(row)) {
                bad.push(format!("family {f} member {i}: got {h:?}, want {row:?}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed.as_secs_f64() < 1.0;
    report(
        1,
        "halfspace tables",
        ok,
        &format!("18 coefficient rows, {} mismatches, {:.3}s", bad.len(), elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_2_fixture_verdicts() {
    let start = Instant::now();
    let mut bad = Vec::new();

    let ortho8 = gen_ortho8();
    if !matches!(decide_pinning(&ortho8).unwrap(), PinningVerdict::Pinned(_)) {
        bad.push("ortho8 not pinned".to_string());
    }
    for i in 0..ortho8.len() {
        let sub = without(&ortho8, i);
        match decide_pinning(&sub).unwrap() {
            PinningVerdict::NotPinned(cert) => {
                if !verify_escape(&sub, &cert) {
                    bad.push(format!("ortho8 minus {i}: certificate fails verification"));
                }
            }
            PinningVerdict::Pinned(_) => bad.push(format!("ortho8 minus {i}: still pinned")),
        }
    }

    match decide_pinning(&gen_quadric_4block()).unwrap() {
        PinningVerdict::NotPinned(cert) => {
            if !verify_escape(&gen_quadric_4block(), &cert) {
                bad.push("quadric block: certificate fails verification".to_string());
            }
        }
        PinningVerdict::Pinned(_) => bad.push("quadric block claimed pinned".to_string()),
    }

    let tangent = gen_tangent_4pinning();
    if !matches!(decide_pinning(&tangent).unwrap(), PinningVerdict::Pinned(_)) {
        bad.push("tangent quadruple not pinned".to_string());
    }
    match minimize_pinning(&tangent) {
        Ok(kept) if kept == vec![0, 1, 2, 3] => {}
        other => bad.push(format!("tangent quadruple minimized to {other:?}")),
    }

    for (name, family, dim) in
        [("six_k1", gen_six_k1(), 1), ("six_k2", gen_six_k2(), 2), ("six_k3", gen_six_k3(), 3)]
    {
        let verdict = decide_pinning(&family).unwrap();
        if isolation_dim(&verdict) != Some(dim) {
            bad.push(format!("{name}: expected pinned with dim E = {dim}, got {verdict:?}"));
        }
        for i in 0..family.len() {
            let sub = without(&family, i);
            match decide_pinning(&sub).unwrap() {
                PinningVerdict::NotPinned(cert) => {
                    if !verify_escape(&sub, &cert) {
                        bad.push(format!("{name} minus {i}: certificate fails verification"));
                    }
                }
                PinningVerdict::Pinned(_) => bad.push(format!("{name} minus {i}: still pinned")),
            }
        }
    }

    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed.as_secs_f64() < 30.0;
    report(
        2,
        "fixture verdicts",
        ok,
        &format!("{} failures, {:.2}s", bad.len(), elapsed.as_secs_f64()),
    );
}

/// 520 reproducible families of 5 to 10 members, a third of them built
/// around a degenerate pair (same supporting point, parallel shadow).
fn random_suite() -> Vec<Vec<Constraint>> {
    let mut rng = ChaCha20Rng::seed_from_u64(0x2026_0301);
    let mut out = Vec::with_capacity(520);
    for k in 0..520usize {
        let size = 5 + k % 6;
        let horizontal = k % 2 == 0;
        let family = if k % 3 == 0 {
            let mut family = random_family(&mut rng, size - 1, horizontal);
            let j = rng.gen_range(0..family.len());
            let base = family[j].clone();
            let flip = if rng.gen_bool(0.5) { rat(1) } else { rat(-1) };
            let dz = if horizontal { rat(0) } else { rat(rng.gen_range(-3..=3)) };
            family.push(
                Constraint::new(
                    base.lambda.clone(),
                    [&base.dir[0] * &flip, &base.dir[1] * &flip, dz],
                )
                .unwrap(),
            );
            family
        } else {
            random_family(&mut rng, size, horizontal)
        };
        out.push(family);
    }
    out
}

fn has_degenerate_pair(family: &[Constraint]) -> bool {
    family.iter().enumerate().any(|(i, a)| family.iter().skip(i + 1).any(|b| degenerate_pair(a, b)))
}

#[test]
fn criterion_3_minimization_bounds() {
    let start = Instant::now();
    let suite = random_suite();
    let mut bad = Vec::new();
    let mut pinned = 0usize;
    for (k, family) in suite.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(|| {
            let mut local = Vec::new();
            let shadow_pins = matches!(
                decide_pinning(&orthogonalize_family(family)).unwrap(),
                PinningVerdict::Pinned(_)
            );
            let pins = matches!(decide_pinning(family).unwrap(), PinningVerdict::Pinned(_));
            if shadow_pins && !pins {
                local.push(format!("family {k}: shadow pins but the family does not"));
            }
            if !pins {
                return (false, local);
            }
            let kept = minimize_pinning(family).unwrap();
            if kept.len() > 8 {
                local.push(format!("family {k}: minimized to {} members", kept.len()));
            }
            let sub: Vec<Constraint> = kept.iter().map(|&i| family[i].clone()).collect();
            if !has_degenerate_pair(&sub) && kept.len() > 6 {
                local.push(format!(
                    "family {k}: {} members kept without a degenerate pair",
                    kept.len()
                ));
            }
            if !matches!(decide_pinning(&sub).unwrap(), PinningVerdict::Pinned(_)) {
                local.push(format!("family {k}: minimized subfamily no longer pins"));
            }
            (true, local)
        }));
        match result {
            Ok((was_pinned, local)) => {
                pinned += was_pinned as usize;
                bad.extend(local);
            }
            Err(_) => bad.push(format!("family {k}: panicked during minimization")),
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && suite.len() >= 500 && pinned > 0;
    report(
        3,
        "minimization bounds",
        ok,
        &format!(
            "{} families ({pinned} pinned), {} violations, {:.2}s",
            suite.len(),
            bad.len(),
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_4_reduction_suite() {
    let start = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(0x2026_0302);
    let mut bad = Vec::new();
    let mut counts = Vec::new();

    for d in 2..=5usize {
        let mut surround = 0usize;
        let mut flats = 0usize;
        let mut positives = 0usize;
        let phase = Instant::now();

        let mut attempts = 0usize;
        while surround < 200 && attempts < 100_000 {
            attempts += 1;
            let m = 2 * d + 1 + attempts % (d + 2);
            let pts: Vec<RVec> =
                (0..m).map(|_| (0..d).map(|_| rat(rng.gen_range(-4..=4))).collect()).collect();
            if pts.iter().any(|p| is_zero_vec(p)) || !surrounds_origin(&pts, d) {
                continue;
            }
            surround += 1;
            let kept = steinitz_reduce(&pts, d).unwrap();
            let sub: Vec<RVec> = kept.iter().map(|&i| pts[i].clone()).collect();
            if kept.len() > 2 * d {
                bad.push(format!("d={d}: surrounding reduction kept {}", kept.len()));
            }
            if !surrounds_origin(&sub, d) {
                bad.push(format!("d={d}: reduced set no longer surrounds"));
            }
        }
        if surround < 200 {
            bad.push(format!("d={d}: only {surround} surrounding sets generated"));
        }
        let t_surround = phase.elapsed().as_secs_f64();

        attempts = 0;
        while flats < 200 && attempts < 100_000 {
            attempts += 1;
            let j = 1 + attempts % (d - 1).max(1);
            if j >= d {
                continue;
            }
            let basis: Vec<RVec> =
                (0..j).map(|_| (0..d).map(|_| rat(rng.gen_range(-3..=3))).collect()).collect();
            if rank(&basis) != j {
                continue;
            }
            let perp = linepin::linalg::null_space(&basis, d);
            let m = 2 * (d - j) + 1 + attempts % 3;
            let normals: Vec<RVec> = (0..m)
                .map(|_| {
                    let mut v = zeros(d);
                    for b in &perp {
                        v = add(&v, &scale(b, &rat(rng.gen_range(-3..=3))));
                    }
                    v
                })
                .collect();
            if normals.iter().any(|n| is_zero_vec(n)) {
                continue;
            }
            let cone = cone_from_halfspaces(&normals, d).unwrap();
            if !cone.rays.is_empty() || cone.lineality.len() != j {
                continue;
            }
            flats += 1;
            let kept = helly_flat_reduce(&normals, d).unwrap();
            if kept.len() > 2 * d - 2 * j {
                bad.push(format!("d={d} j={j}: flat reduction kept {}", kept.len()));
            }
            let sub: Vec<RVec> = kept.iter().map(|&i| normals[i].clone()).collect();
            let check = cone_from_halfspaces(&sub, d).unwrap();
            if !check.rays.is_empty() || check.lineality != cone.lineality {
                bad.push(format!("d={d} j={j}: reduced halfspaces cut a different flat"));
            }
        }
        if flats < 200 {
            bad.push(format!("d={d}: only {flats} flat suites generated"));
        }
        let t_flat = phase.elapsed().as_secs_f64() - t_surround;

        let mut e_d = zeros(d);
        e_d[d - 1] = rat(1);
        attempts = 0;
        while positives < 200 && attempts < 100_000 {
            attempts += 1;
            let m = d + 1 + attempts % 3;
            let rays: Vec<RVec> = (0..m)
                .map(|_| {
                    let mut v: RVec = (0..d - 1).map(|_| rat(rng.gen_range(-4..=4))).collect();
                    v.push(rat(rng.gen_range(1..=3)));
                    v
                })
                .collect();
            // The polar of the hull of the rays yields a halfspace
            // description of that hull, which sits strictly above the
            // horizontal hyperplane except at 0. Cap the facet count to
            // keep the suite fast, and pad with redundant positive
            // combinations so the reduction has something to discard.
            let mut halfspaces = cone_from_halfspaces(&rays, d).unwrap().generators();
            if halfspaces.len() < 2 || halfspaces.len() > 2 * d + 2 {
                continue;
            }
            for _ in 0..1 + attempts % 3 {
                let a = rng.gen_range(0..halfspaces.len());
                let b = rng.gen_range(0..halfspaces.len());
                let comb = add(
                    &scale(&halfspaces[a], &rat(rng.gen_range(1..=3))),
                    &scale(&halfspaces[b], &rat(rng.gen_range(1..=3))),
                );
                if !is_zero_vec(&comb) {
                    halfspaces.push(comb);
                }
            }
            if halfspaces.iter().any(|h| is_parallel(h, &e_d)) {
                continue;
            }
            positives += 1;
            match positive_cone_reduce(&halfspaces, d) {
                Ok(kept) => {
                    if kept.len() > 2 * d - 2 {
                        bad.push(format!("d={d}: positive reduction kept {}", kept.len()));
                    }
                    let sub: Vec<RVec> = kept.iter().map(|&i| halfspaces[i].clone()).collect();
                    let check = cone_from_halfspaces(&sub, d).unwrap();
                    let still_positive = check.lineality.is_empty()
                        && check.rays.iter().all(|r| r[d - 1].is_positive());
                    if !still_positive {
                        bad.push(format!("d={d}: reduced cone leaves the positive side"));
                    }
                }
                Err(e) => bad.push(format!("d={d}: positive reduction refused input: {e}")),
            }
        }
        if positives < 200 {
            bad.push(format!("d={d}: only {positives} positive cones generated"));
        }
        let t_positive = phase.elapsed().as_secs_f64() - t_surround - t_flat;

        counts.push(format!(
            "d={d}: {surround}+{flats}+{positives} ({t_surround:.1}s+{t_flat:.1}s+{t_positive:.1}s)"
        ));
    }

    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed.as_secs_f64() < 60.0;
    report(
        4,
        "reduction suite",
        ok,
        &format!(
            "{} [{}] {} violations, {:.2}s",
            counts.join(", "),
            "surround+flat+positive",
            bad.len(),
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_5_classification_round_trip() {
    let start = Instant::now();
    let mut bad = Vec::new();

    use OrthoPinningClass::*;
    let all = [L1, L2a, L2b, L3a, L3b, L3c, L4a, L4b, L4c, L4d, L5a, L5b, L6a, L6b, L7, L8];
    for class in all {
        match classify_ortho_pinning(&gen_char_ortho(class)) {
            Ok(got) if got == class => {}
            other => bad.push(format!("class {}: got {other:?}", class.label())),
        }
    }

    let cross: Vec<RVec> = (0..4)
        .flat_map(|i| {
            let mut p = zeros(4);
            let mut n = zeros(4);
            p[i] = rat(1);
            n[i] = rat(-1);
            [p, n]
        })
        .collect();
    match decompose_surrounding(&cross) {
        Ok(SurroundingCase::FourSegments) => {}
        other => bad.push(format!("coordinate cross decomposed as {other:?}")),
    }

    let mut fixtures: Vec<(String, Vec<Constraint>)> = vec![
        ("six_k1".into(), gen_six_k1()),
        ("six_k2".into(), gen_six_k2()),
        ("six_k3".into(), gen_six_k3()),
        ("quadric_4block".into(), gen_quadric_4block()),
        ("tangent_4pinning".into(), gen_tangent_4pinning()),
        ("ortho8".into(), gen_ortho8()),
        ("five_block".into(), gen_five_block()),
    ];
    for class in all {
        fixtures.push((format!("char_{}", class.label()), gen_char_ortho(class)));
    }
    for (name, family) in &fixtures {
        let expected = name == "tangent_4pinning";
        match detect_4pinning(family) {
            Ok(got) if got == expected => {}
            other => bad.push(format!("{name}: tangent-quadruple detection gave {other:?}")),
        }
    }

    let elapsed = start.elapsed();
    let ok = bad.is_empty();
    report(
        5,
        "classification round-trip",
        ok,
        &format!("{} failures, {:.2}s", bad.len(), elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_6_polytope_reduction() {
    let start = Instant::now();
    let mut bad = Vec::new();

    for n in [3usize, 5, 8] {
        let bodies = gen_infinite(n).unwrap();
        let report_full = decide_polytope_pinning(&bodies).unwrap();
        if !matches!(report_full.verdict, PinningVerdict::Pinned(_)) {
            bad.push(format!("n={n}: full family not pinned"));
            continue;
        }
        for i in 0..n {
            let reduced = without(&bodies, i);
            let gamma = infinite_escape(n, i).unwrap();
            match decide_polytope_pinning(&reduced).unwrap().verdict {
                PinningVerdict::NotPinned(_) => {}
                PinningVerdict::Pinned(_) => {
                    bad.push(format!("n={n}: still pinned without wedge {i}"));
                    continue;
                }
            }
            // The freed direction is the silhouette bisector of the removed
            // wedge: exact escape for the reduced family, blocked by the
            // full one. Scale once to confirm the witness is a direction.
            if !verify_polytope_escape(&reduced, &gamma).unwrap() {
                bad.push(format!("n={n}: bisector of wedge {i} is not an escape"));
            }
            let half: LineCoords =
                [&gamma[0] / rat(2), &gamma[1] / rat(2), &gamma[2] / rat(2), &gamma[3] / rat(2)];
            if !verify_polytope_escape(&reduced, &half).unwrap() {
                bad.push(format!("n={n}: scaled bisector of wedge {i} is not an escape"));
            }
            if verify_polytope_escape(&bodies, &gamma).unwrap() {
                bad.push(format!("n={n}: wedge {i} fails to block its own bisector"));
            }
        }
        let kept = minimize_polytope_pinning(&bodies).unwrap();
        if !(0..n).all(|i| kept.contains(&i)) {
            bad.push(format!("n={n}: minimization dropped a wedge ({kept:?})"));
        }
    }

    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed.as_secs_f64() < 120.0;
    report(
        6,
        "polytope reduction",
        ok,
        &format!("{} failures, {:.2}s", bad.len(), elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_7_oracle_agreement() {
    let start = Instant::now();
    let mut bad = Vec::new();

    let fixture_budget = SampleBudget::default();
    let mut fixtures: Vec<Vec<Constraint>> = vec![
        gen_six_k1(),
        gen_six_k2(),
        gen_six_k3(),
        gen_quadric_4block(),
        gen_tangent_4pinning(),
        gen_ortho8(),
        gen_five_block(),
    ];
    use OrthoPinningClass::*;
    for class in [L1, L2a, L2b, L3a, L3b, L3c, L4a, L4b, L4c, L4d, L5a, L5b, L6a, L6b, L7, L8] {
        fixtures.push(gen_char_ortho(class));
    }

    let suite_budget =
        SampleBudget { radii: vec![rat(1), ratio(1, 16)], grid: 1, random: 32, seed: 7 };

    let mut check = |k: String, family: &[Constraint], budget: &SampleBudget| {
        let verdict = decide_pinning(family).unwrap();
        let oracle = sample_escape(family, budget).unwrap();
        match verdict {
            PinningVerdict::Pinned(_) => {
                if !oracle.no_ray_witness() {
                    bad.push(format!("{k}: sampling refutes a pinned verdict"));
                }
            }
            PinningVerdict::NotPinned(cert) => {
                if !oracle.certifies_escape() && !verify_escape(family, &cert) {
                    bad.push(format!("{k}: escape verdict not confirmed"));
                }
            }
        }
    };

    for (i, family) in fixtures.iter().enumerate() {
        check(format!("fixture {i}"), family, &fixture_budget);
    }
    for (k, family) in random_suite().iter().enumerate() {
        check(format!("family {k}"), family, &suite_budget);
    }

    let elapsed = start.elapsed();
    let ok = bad.is_empty();
    report(
        7,
        "oracle agreement",
        ok,
        &format!("{} disagreements, {:.2}s", bad.len(), elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_8_plucker_identity() {
    let start = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(0x2026_0303);
    let mut bad = 0usize;
    for _ in 0..1000 {
        let u: LineCoords =
            std::array::from_fn(|_| ratio(rng.gen_range(-99..=99), rng.gen_range(1..=9)));
        if !plucker_form(&to_plucker(&u)).is_zero() {
            bad += 1;
        }
    }
    let elapsed = start.elapsed();
    let ok = bad == 0;
    report(
        8,
        "line-coordinate identity",
        ok,
        &format!("1000 samples, {bad} violations, {:.2}s", elapsed.as_secs_f64()),
    );
}
