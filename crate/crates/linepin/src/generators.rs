//! Named example families. Each generator returns a family with a known,
//! independently verified behaviour; they back the test corpus and the CLI
//! `generate` subcommand.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::classify::OrthoPinningClass;
use crate::linalg::null_space;
use crate::linespace::{eta_of, Constraint, LineCoords};
use crate::polytopes::ConvexPolytope;
use crate::rat::{rat, ratio, RVec, Rat};
use crate::{Error, Result};

/// Output of a named generator.
#[derive(Debug, Clone)]
pub enum Generated {
    Constraints(Vec<Constraint>),
    Polytopes(Vec<ConvexPolytope>),
}

/// The names accepted by [`generate`]. The `infinite` generator additionally
/// needs a size argument.
pub const NAMES: &[&str] = &[
    "six_k1",
    "six_k2",
    "six_k3",
    "quadric_4block",
    "tangent_4pinning",
    "ortho8",
    "five_block",
    "char_ortho_1",
    "char_ortho_2a",
    "char_ortho_2b",
    "char_ortho_3a",
    "char_ortho_3b",
    "char_ortho_3c",
    "char_ortho_4a",
    "char_ortho_4b",
    "char_ortho_4c",
    "char_ortho_4d",
    "char_ortho_5a",
    "char_ortho_5b",
    "char_ortho_6a",
    "char_ortho_6b",
    "char_ortho_7",
    "char_ortho_8",
    "infinite",
];

/// Builds the named family. `n` is only consulted by `infinite`.
pub fn generate(name: &str, n: Option<usize>) -> Result<Generated> {
    if name == "infinite" {
        let n = n.ok_or_else(|| {
            Error::Parse("generator 'infinite' needs a positive size argument".into())
        })?;
        return Ok(Generated::Polytopes(gen_infinite(n)?));
    }
    let family = if let Some(label) = name.strip_prefix("char_ortho_") {
        let class = OrthoPinningClass::from_label(label)
            .ok_or_else(|| Error::UnsupportedLabel(name.to_string()))?;
        gen_char_ortho(class)
    } else {
        match name {
            "six_k1" => gen_six_k1(),
            "six_k2" => gen_six_k2(),
            "six_k3" => gen_six_k3(),
            "quadric_4block" => gen_quadric_4block(),
            "tangent_4pinning" => gen_tangent_4pinning(),
            "ortho8" => gen_ortho8(),
            "five_block" => gen_five_block(),
            _ => return Err(Error::UnsupportedLabel(name.to_string())),
        }
    };
    Ok(Generated::Constraints(family))
}

fn c(lambda: Rat, dx: i64, dy: i64, dz: i64) -> Constraint {
    Constraint::new(lambda, [rat(dx), rat(dy), rat(dz)]).unwrap()
}

fn ch(lambda: i64, dx: i64, dy: i64) -> Constraint {
    c(rat(lambda), dx, dy, 0)
}

/// Six lines pinned with a one-dimensional isolating piece on the positive
/// side of the quadric.
pub fn gen_six_k1() -> Vec<Constraint> {
    vec![
        c(rat(0), 0, -1, -1),
        c(rat(0), 0, 1, -1),
        c(rat(1), 1, 0, 1),
        c(rat(1), -1, 0, 1),
        c(rat(2), -1, 1, 0),
        c(rat(2), 1, -1, 0),
    ]
}

/// Six lines with a two-dimensional isolating piece on the negative side.
pub fn gen_six_k2() -> Vec<Constraint> {
    vec![
        c(rat(0), 0, -1, -1),
        c(rat(0), 0, 1, -1),
        c(rat(1), 1, 0, 1),
        c(rat(1), -1, 0, 1),
        c(rat(2), -1, -1, 0),
        c(rat(3), 1, 1, 0),
    ]
}

/// Six lines with a three-dimensional isolating piece on the positive side.
///
/// The first pair tilts upward (dz = +1) so the cone sits below the tangent
/// hyperplane; tilting it downward instead admits escapes through the trace.
pub fn gen_six_k3() -> Vec<Constraint> {
    vec![
        c(rat(0), 0, -1, 1),
        c(rat(0), 0, 1, 1),
        c(rat(-1), -1, 3, 0),
        c(ratio(-1, 2), 1, -2, 0),
        c(ratio(1, 4), 1, 2, 0),
        c(ratio(1, 3), -1, -3, 0),
    ]
}

/// Four horizontal lines on a common quadric: not pinned, but every nearby
/// escape stays on the quadric.
pub fn gen_quadric_4block() -> Vec<Constraint> {
    vec![ch(0, -1, 0), ch(1, 1, 1), ch(2, -1, -2), ch(3, 1, 3)]
}

/// The quadric block with its first member tilted into the quadric's
/// tangent plane: an irreducible pinning by only four lines.
pub fn gen_tangent_4pinning() -> Vec<Constraint> {
    vec![c(rat(0), -100, 0, -1), ch(1, 1, 1), ch(2, -1, -2), ch(3, 1, 3)]
}

/// Four double-sided horizontal lines: a minimal pinning of size eight that
/// leaves the axis an isolated transversal.
pub fn gen_ortho8() -> Vec<Constraint> {
    vec![
        ch(0, 1, 0),
        ch(0, -1, 0),
        ch(1, 0, 1),
        ch(1, 0, -1),
        ch(2, 1, 1),
        ch(2, -1, -1),
        ch(3, 1, -2),
        ch(3, -1, 2),
    ]
}

/// A minimal pinning by five horizontal lines in general position. Each
/// base direction is flipped to the sign its coefficient takes in the
/// unique linear relation of the five normals, which turns the relation
/// positive and the normals into a critical five-set.
pub fn gen_five_block() -> Vec<Constraint> {
    let base = [ch(0, 1, 0), ch(1, 0, 1), ch(2, 1, 1), ch(3, 1, -2), c(ratio(1, 2), 2, 1, 0)];
    let rows: Vec<RVec> =
        (0..4).map(|j| base.iter().map(|g| eta_of(g)[j].clone()).collect()).collect();
    let null = null_space(&rows, 5);
    assert_eq!(null.len(), 1, "the five normals must satisfy a unique relation");
    let mu = &null[0];
    assert!(mu.iter().all(|m| !m.is_zero()), "the relation must involve every member");
    base.iter()
        .zip(mu)
        .map(|(g, m)| {
            if m.is_negative() {
                Constraint::new(g.lambda.clone(), [-&g.dir[0], -&g.dir[1], -&g.dir[2]]).unwrap()
            } else {
                g.clone()
            }
        })
        .collect()
}

fn four_cross_block() -> Vec<Constraint> {
    vec![ch(1, 1, 0), ch(2, -1, 0), ch(0, -1, -1), ch(0, -1, 1)]
}

/// A representative minimal horizontal pinning of each classification label.
pub fn gen_char_ortho(class: OrthoPinningClass) -> Vec<Constraint> {
    use OrthoPinningClass::*;
    let with = |mut f: Vec<Constraint>, a: Constraint, b: Constraint| {
        f.push(a);
        f.push(b);
        f
    };
    match class {
        L1 => gen_five_block(),
        L2a => vec![ch(0, 1, 0), ch(1, -1, 0), ch(2, 1, 0), ch(0, 0, 1), ch(1, 0, -1), ch(2, 0, 1)],
        L2b => {
            vec![ch(0, 1, 0), ch(0, -1, 2), ch(0, -1, -2), ch(1, 0, 1), ch(1, 2, -1), ch(1, -2, -1)]
        }
        L3a => {
            vec![ch(0, 1, 0), ch(1, -1, -1), ch(2, 1, 2), ch(3, -1, -3), ch(2, 3, 4), ch(3, -2, -3)]
        }
        L3b => with(four_cross_block(), ch(3, 1, 1), ch(3, 1, -1)),
        L3c => with(four_cross_block(), ch(2, -3, 1), ch(3, 2, -1)),
        L4a => with(gen_quadric_4block(), ch(-1, 1, 0), ch(1, 1, 0)),
        L4b => with(gen_quadric_4block(), ch(0, 1, 2), ch(0, 1, -2)),
        L4c => with(four_cross_block(), ch(-1, 1, -1), ch(1, 1, -1)),
        L4d => with(four_cross_block(), ch(1, -1, 2), ch(1, -1, -2)),
        L5a => with(gen_quadric_4block(), c(ratio(1, 2), 0, 1, 0), c(ratio(1, 2), 0, -1, 0)),
        L5b => with(four_cross_block(), ch(3, 1, 1), ch(3, -1, -1)),
        L6a => vec![
            ch(0, 1, 0),
            ch(1, -1, 0),
            ch(2, 1, 0),
            ch(0, 0, 1),
            ch(0, 0, -1),
            ch(3, 1, 1),
            ch(3, -1, -1),
        ],
        L6b => vec![
            ch(0, 1, 0),
            ch(0, -1, 2),
            ch(0, -1, -2),
            ch(1, 0, 1),
            ch(1, 0, -1),
            ch(2, 1, 1),
            ch(2, -1, -1),
        ],
        L7 => vec![
            ch(0, 1, 0),
            ch(1, -1, 0),
            ch(2, 1, 0),
            ch(1, 1, 2),
            ch(1, 1, -2),
            ch(3, 0, 1),
            ch(3, 0, -1),
        ],
        L8 => gen_ortho8(),
    }
}

/// Bodies pinning the axis in arbitrarily large irreducible families: `n`
/// prism wedges whose silhouettes tile the slope sector [1/2, 2], plus six
/// tangent bodies confining escape directions to that sector. Wedges occupy
/// indices `0..n`, the tangent bodies `n..n + 6`.
pub fn gen_infinite(n: usize) -> Result<Vec<ConvexPolytope>> {
    if n == 0 {
        return Err(Error::PreconditionViolated("the wedge count must be positive"));
    }
    let nn = n as i64;
    let sigma: Vec<Rat> = (0..=nn).map(|j| ratio(1, 2) + ratio(3 * j, 2 * nn)).collect();
    let zcap = rat(100 * nn);
    let m = rat(4) * (&zcap + rat(2));
    let mut bodies = Vec::with_capacity(n + 6);
    for i in 0..n {
        bodies.push(wedge_prism(&sigma[i], &sigma[i + 1], &zcap, &m)?);
    }
    bodies.extend(sector_bodies());
    Ok(bodies)
}

/// The direction freed by removing wedge `i` (0-based) from the infinite
/// family: the line-space bisector of that wedge's silhouette.
pub fn infinite_escape(n: usize, i: usize) -> Result<LineCoords> {
    if n == 0 || i >= n {
        return Err(Error::PreconditionViolated("wedge index out of range"));
    }
    let s = |j: usize| ratio(1, 2) + ratio(3 * j as i64, 2 * n as i64);
    Ok([rat(0), rat(2), s(i) + s(i + 1), rat(0)])
}

/// Prism over the planar wedge {x + lo·y ≤ 0, x + hi·y ≤ 0} clipped to the
/// box [−m, m]², with height spanning the slab [−zcap, zcap + 1].
fn wedge_prism(lo: &Rat, hi: &Rat, zcap: &Rat, m: &Rat) -> Result<ConvexPolytope> {
    let one = Rat::one();
    let mut poly: Vec<(Rat, Rat)> = vec![(Rat::zero(), Rat::zero())];
    // Exit of the lower boundary ray, direction (lo, −1).
    if lo <= &one {
        poly.push((lo * m, -m.clone()));
    } else {
        poly.push((m.clone(), -(m / lo)));
    }
    if lo > &one {
        poly.push((m.clone(), -m.clone()));
    }
    poly.push((-m.clone(), -m.clone()));
    if hi < &one {
        poly.push((-m.clone(), m.clone()));
    }
    // Exit of the upper boundary ray, direction (−hi, 1).
    if hi <= &one {
        poly.push((-(hi * m), m.clone()));
    } else {
        poly.push((-m.clone(), m / hi));
    }
    let z_lo = -zcap.clone();
    let z_hi = zcap + Rat::one();
    let mut verts = Vec::new();
    for z in [&z_lo, &z_hi] {
        for (x, y) in &poly {
            verts.push(vec![x.clone(), y.clone(), z.clone()]);
        }
    }
    ConvexPolytope::new(verts)
}

/// Six fixed tangent bodies whose edge contacts restrict escapes to the
/// flat of axis-meeting lines with silhouette slope in [1/2, 2].
fn sector_bodies() -> Vec<ConvexPolytope> {
    let mk = |pts: &[[i64; 3]]| {
        ConvexPolytope::new(pts.iter().map(|p| vec![rat(p[0]), rat(p[1]), rat(p[2])]).collect())
            .unwrap()
    };
    vec![
        mk(&[[0, 1, 0], [0, -1, 0], [-1, 1, -1], [-1, -1, -1], [-1, 1, 1], [-1, -1, 1]]),
        mk(&[[0, 1, 0], [0, -1, 0], [1, 1, -1], [1, -1, -1], [1, 1, 1], [1, -1, 1]]),
        mk(&[[1, 0, 1], [-1, 0, 1], [1, -1, 0], [-1, -1, 0], [1, -1, 2], [-1, -1, 2]]),
        mk(&[[1, 0, 1], [-1, 0, 1], [1, 1, 0], [-1, 1, 0], [1, 1, 2], [-1, 1, 2]]),
        mk(&[[-1, 1, -1], [1, -1, -1], [0, 2, -2], [0, 2, 0], [2, 0, -2], [2, 0, 0]]),
        mk(&[[-1, 1, 2], [1, -1, 2], [0, 2, 1], [0, 2, 3], [2, 0, 1], [2, 0, 3]]),
    ]
}

/// A reproducible random family: rational heights with small denominators
/// and small integer directions.
pub fn random_family<R: Rng>(rng: &mut R, size: usize, horizontal: bool) -> Vec<Constraint> {
    (0..size)
        .map(|_| {
            let lambda = ratio(rng.gen_range(-8..=8), rng.gen_range(1..=4));
            let (dx, dy) = loop {
                let dx = rng.gen_range(-5..=5i64);
                let dy = rng.gen_range(-5..=5i64);
                if dx != 0 || dy != 0 {
                    break (dx, dy);
                }
            };
            let dz = if horizontal { 0 } else { rng.gen_range(-5..=5i64) };
            Constraint::new(lambda, [rat(dx), rat(dy), rat(dz)]).unwrap()
        })
        .collect()
}
