//! Randomized invariants: algebraic identities of the line chart and the
//! soundness/irreducibility contracts of the reductions, checked on
//! generated inputs with exact arithmetic.

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use linepin::cone::cone_from_halfspaces;
use linepin::generators::random_family;
use linepin::linespace::{
    degenerate_pair, embed, eta_of, eval_zeta, fval, halfspace_of, is_horizontal, lift,
    line_of_coords, orthogonalize, passes_right, plucker_form, qform, to_plucker, Constraint,
    LineCoords, Sidedness,
};
use linepin::lp::surrounds_origin;
use linepin::pinning::{
    decide_pinning, minimize_pinning, steinitz_reduce, verify_escape, PinningVerdict,
};
use linepin::rat::{dot, is_positive_multiple, is_zero_vec, neg, rat, ratio, RVec, Rat};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-60i64..=60, 1i64..=8).prop_map(|(p, q)| ratio(p, q))
}

fn coords() -> impl Strategy<Value = LineCoords> {
    prop::array::uniform4(small_rat())
}

fn constraint() -> impl Strategy<Value = Constraint> {
    (
        small_rat(),
        (-4i64..=4, -4i64..=4)
            .prop_filter("direction must not be vertical", |(x, y)| *x != 0 || *y != 0),
        -4i64..=4,
    )
        .prop_map(|(l, (dx, dy), dz)| Constraint::new(l, [rat(dx), rat(dy), rat(dz)]).unwrap())
}

fn int_points(d: usize, min: usize, max: usize) -> impl Strategy<Value = Vec<RVec>> {
    prop::collection::vec(prop::collection::vec((-3i64..=3).prop_map(rat), d), min..=max)
}

proptest! {
    /// The sign of ζ_g(u) is the sidedness of the line u against g.
    #[test]
    fn sidedness_matches_zeta_sign(g in constraint(), u in coords()) {
        let z = eval_zeta(&g, &u);
        let expected = if z.is_negative() {
            Sidedness::Right
        } else if z.is_positive() {
            Sidedness::Left
        } else {
            Sidedness::MeetsOrParallel
        };
        prop_assert_eq!(passes_right(&line_of_coords(&u), &g.as_line()), expected);
    }

    /// ζ_g(tu) = t·((1 − t)·η_g·u + t·ζ_g(u)): the identity behind scalable
    /// witnesses and the sampling oracle's ray argument.
    #[test]
    fn zeta_scales_quadratically_along_rays(g in constraint(), u in coords(), t in small_rat()) {
        let tu: LineCoords = [&t * &u[0], &t * &u[1], &t * &u[2], &t * &u[3]];
        let eta = eta_of(&g);
        let one = rat(1);
        let expect = &t * ((&one - &t) * dot(&eta, &u) + &t * eval_zeta(&g, &u));
        prop_assert_eq!(eval_zeta(&g, &tu), expect);
    }

    /// The six line coordinates always satisfy the quadratic ruled-space
    /// relation.
    #[test]
    fn plucker_identity_holds(u in coords()) {
        prop_assert!(plucker_form(&to_plucker(&u)).is_zero());
    }

    /// Lifting puts a chart point on the graph of q; embedding puts it on
    /// the tangent hyperplane.
    #[test]
    fn lift_and_embed_land_where_stated(u in coords()) {
        let l = lift(&u);
        prop_assert!(fval(&l).is_zero());
        prop_assert_eq!(l[4].clone(), qform(&u));
        prop_assert!(embed(&u)[4].is_zero());
    }

    /// Directions are projective: positive rescaling is absorbed, reversal
    /// negates the halfspace row.
    #[test]
    fn direction_scaling_is_projective(g in constraint(), k in 1i64..=5) {
        let kk = rat(k);
        let scaled = Constraint::new(
            g.lambda.clone(),
            [&g.dir[0] * &kk, &g.dir[1] * &kk, &g.dir[2] * &kk],
        ).unwrap();
        prop_assert_eq!(&scaled, &g);
        let reversed = Constraint::new(
            g.lambda.clone(),
            [-&g.dir[0], -&g.dir[1], -&g.dir[2]],
        ).unwrap();
        prop_assert_eq!(halfspace_of(&reversed).to_vec(), neg(&halfspace_of(&g)));
    }

    /// Flattening a constraint keeps its first-order data (the halfspace
    /// η·u ≤ 0, a projective object) and is idempotent.
    #[test]
    fn orthogonalization_preserves_the_shadow(g in constraint()) {
        let flat = orthogonalize(&g);
        prop_assert!(is_horizontal(&flat));
        prop_assert!(is_positive_multiple(&eta_of(&flat), &eta_of(&g)));
        prop_assert_eq!(orthogonalize(&flat), flat);
    }

    /// Sharing the supporting point with a parallel or antiparallel shadow
    /// is what the degenerate-pair predicate detects, in both orders.
    #[test]
    fn degenerate_partners_are_detected(
        g in constraint(), flip in prop::bool::ANY, dz in -4i64..=4
    ) {
        let s = if flip { rat(-1) } else { rat(1) };
        let partner = Constraint::new(
            g.lambda.clone(),
            [&g.dir[0] * &s, &g.dir[1] * &s, rat(dz)],
        ).unwrap();
        prop_assert!(degenerate_pair(&g, &partner));
        prop_assert!(degenerate_pair(&partner, &g));
    }

    /// Every generator of a cone built from halfspaces satisfies all of
    /// them, and none of them is zero.
    #[test]
    fn cone_generators_satisfy_their_halfspaces(
        (d, rows) in (2usize..=4).prop_flat_map(|d| (Just(d), int_points(d, 1, 9)))
    ) {
        prop_assume!(rows.iter().all(|r| !is_zero_vec(r)));
        let cone = cone_from_halfspaces(&rows, d).unwrap();
        for g in cone.generators() {
            prop_assert!(!is_zero_vec(&g));
            for h in &rows {
                prop_assert!(!dot(h, &g).is_positive());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    /// Greedy surrounding reduction keeps a surrounding set in which every
    /// point is necessary.
    #[test]
    fn surrounding_reduction_is_sound_and_irreducible(
        (d, pts) in (2usize..=3).prop_flat_map(|d| (Just(d), int_points(d, 2 * d + 1, 2 * d + 4)))
    ) {
        prop_assume!(pts.iter().all(|p| !is_zero_vec(p)));
        prop_assume!(surrounds_origin(&pts, d));
        let kept = steinitz_reduce(&pts, d).unwrap();
        let sub: Vec<RVec> = kept.iter().map(|&i| pts[i].clone()).collect();
        prop_assert!(surrounds_origin(&sub, d));
        prop_assert!(kept.len() <= 2 * d);
        for i in 0..sub.len() {
            let mut fewer = sub.clone();
            fewer.remove(i);
            prop_assert!(!surrounds_origin(&fewer, d));
        }
    }

    /// Minimization of a pinning keeps a pinning in which every member is
    /// necessary.
    #[test]
    fn pinning_minimization_is_irreducible(
        seed in 0u64..1 << 48, size in 6usize..=9, horizontal in prop::bool::ANY
    ) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let family = random_family(&mut rng, size, horizontal);
        prop_assume!(matches!(decide_pinning(&family).unwrap(), PinningVerdict::Pinned(_)));
        let kept = minimize_pinning(&family).unwrap();
        let sub: Vec<Constraint> = kept.iter().map(|&i| family[i].clone()).collect();
        prop_assert!(matches!(decide_pinning(&sub).unwrap(), PinningVerdict::Pinned(_)));
        for i in 0..sub.len() {
            let mut fewer = sub.clone();
            fewer.remove(i);
            if fewer.is_empty() {
                continue;
            }
            prop_assert!(matches!(decide_pinning(&fewer).unwrap(), PinningVerdict::NotPinned(_)));
        }
    }

    /// Every escape certificate the decision procedure emits passes the
    /// independent verifier.
    #[test]
    fn emitted_escape_certificates_verify(
        seed in 0u64..1 << 48, size in 4usize..=8, horizontal in prop::bool::ANY
    ) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let family = random_family(&mut rng, size, horizontal);
        if let PinningVerdict::NotPinned(cert) = decide_pinning(&family).unwrap() {
            prop_assert!(verify_escape(&family, &cert));
        }
    }
}
