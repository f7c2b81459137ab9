//! Coordinates for lines, sidedness of oriented lines, and the sidedness
//! constraints induced by oriented lines meeting the z-axis.
//!
//! A non-horizontal line is written u = (u₁, u₂, u₃, u₄): it passes through
//! (u₁, u₂, 0) and (u₃, u₄, 1). The z-axis is u = 0. An oriented line g
//! through the axis point (0, 0, λ) with direction (dx, dy, dz) induces the
//! constraint "pass right of g or meet it", which on line coordinates is the
//! sign condition ζ_g(u) ≤ 0 for an explicit quadratic ζ_g.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rat::{fmt_rat, is_parallel, primitive, RVec, Rat};
use crate::{Error, Result};

pub type LineCoords = [Rat; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sidedness {
    Right,
    Left,
    MeetsOrParallel,
}

/// An oriented line through `point` with direction `dir` (nonzero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedLine {
    pub point: [Rat; 3],
    pub dir: [Rat; 3],
}

impl OrientedLine {
    pub fn new(point: [Rat; 3], dir: [Rat; 3]) -> Result<Self> {
        if dir.iter().all(|c| c.is_zero()) {
            return Err(Error::PreconditionViolated("line direction must be nonzero"));
        }
        Ok(OrientedLine { point, dir })
    }
}

/// The line ℓ(u), oriented upward (increasing z).
pub fn line_of_coords(u: &LineCoords) -> OrientedLine {
    OrientedLine {
        point: [u[0].clone(), u[1].clone(), Rat::zero()],
        dir: [&u[2] - &u[0], &u[3] - &u[1], Rat::one()],
    }
}

fn det4(cols: [[Rat; 4]; 4]) -> Rat {
    // Laplace over the first column of a 4×4 given by columns.
    let minor = |skip_row: usize, skip_col: usize| -> Rat {
        let mut m: Vec<Vec<&Rat>> = Vec::new();
        for r in 0..4 {
            if r == skip_row {
                continue;
            }
            let mut row = Vec::new();
            for (c, col) in cols.iter().enumerate() {
                if c == skip_col {
                    continue;
                }
                row.push(&col[r]);
            }
            m.push(row);
        }
        let det2 = |a: &Rat, b: &Rat, c: &Rat, d: &Rat| a * d - b * c;
        let mut acc = Rat::zero();
        for c in 0..3 {
            if m[0][c].is_zero() {
                continue;
            }
            let (c1, c2) = match c {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let sub = det2(m[1][c1], m[1][c2], m[2][c1], m[2][c2]);
            let term = m[0][c] * &sub;
            acc = if c == 1 { acc - term } else { acc + term };
        }
        acc
    };
    let mut acc = Rat::zero();
    for (r, lead) in cols[0].iter().enumerate() {
        if lead.is_zero() {
            continue;
        }
        let term = lead * &minor(r, 0);
        acc = if r % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Signed side of `l2` as seen from the oriented line `l1`: the sign of the
/// 4×4 determinant with columns (p₁,1), (p₁+d₁,1), (p₂,1), (p₂+d₂,1).
/// Negative means l1 passes right of l2, positive left, zero that the lines
/// meet or are parallel.
pub fn passes_right(l1: &OrientedLine, l2: &OrientedLine) -> Sidedness {
    let col = |p: &[Rat; 3]| -> [Rat; 4] { [p[0].clone(), p[1].clone(), p[2].clone(), Rat::one()] };
    let shifted = |l: &OrientedLine| -> [Rat; 3] {
        [&l.point[0] + &l.dir[0], &l.point[1] + &l.dir[1], &l.point[2] + &l.dir[2]]
    };
    let d = det4([col(&l1.point), col(&shifted(l1)), col(&l2.point), col(&shifted(l2))]);
    if d.is_negative() {
        Sidedness::Right
    } else if d.is_positive() {
        Sidedness::Left
    } else {
        Sidedness::MeetsOrParallel
    }
}

/// A sidedness constraint: the oriented line through (0, 0, λ) with
/// direction `dir`. Directions are kept as primitive integer vectors, so
/// structurally equal constraints are geometrically identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub lambda: Rat,
    pub dir: [Rat; 3],
}

impl Constraint {
    pub fn new(lambda: Rat, dir: [Rat; 3]) -> Result<Self> {
        if dir[0].is_zero() && dir[1].is_zero() {
            return Err(Error::DegenerateDirection);
        }
        let p = primitive(dir.as_ref());
        Ok(Constraint { lambda, dir: [p[0].clone(), p[1].clone(), p[2].clone()] })
    }

    /// The constraint of an oriented line that meets the z-axis.
    pub fn from_line(line: &OrientedLine) -> Result<Self> {
        let (px, py) = (&line.point[0], &line.point[1]);
        let (dx, dy) = (&line.dir[0], &line.dir[1]);
        if dx.is_zero() && dy.is_zero() {
            return Err(Error::DegenerateDirection);
        }
        // point + t·dir hits x = y = 0: requires (px, py) ∥ (dx, dy).
        if &(px * dy) - &(py * dx) != Rat::zero() {
            return Err(Error::PreconditionViolated("line does not meet the axis"));
        }
        let t = if !dx.is_zero() { -(px / dx) } else { -(py / dy) };
        let lambda = &line.point[2] + &t * &line.dir[2];
        Constraint::new(lambda, line.dir.clone())
    }

    pub fn as_line(&self) -> OrientedLine {
        OrientedLine {
            point: [Rat::zero(), Rat::zero(), self.lambda.clone()],
            dir: self.dir.clone(),
        }
    }
}

pub fn qform(u: &LineCoords) -> Rat {
    &u[1] * &u[2] - &u[0] * &u[3]
}

/// ζ_g(u): negative iff ℓ(u) passes strictly right of g, zero iff they meet
/// or are parallel. Equals the sidedness determinant of (ℓ(u), g) with g's
/// stored primitive direction; consumers are sign-only.
pub fn eval_zeta(g: &Constraint, u: &LineCoords) -> Rat {
    let (dx, dy, dz) = (&g.dir[0], &g.dir[1], &g.dir[2]);
    let lam = &g.lambda;
    let co = Rat::one() - lam;
    dz * qform(u) + &co * dy * &u[0] - &co * dx * &u[1] + lam * dy * &u[2] - lam * dx * &u[3]
}

pub fn satisfies(g: &Constraint, u: &LineCoords) -> bool {
    !eval_zeta(g, u).is_positive()
}

/// Coefficient vector a with ζ_g(u) = a·(u, q(u)): the halfspace a·x ≤ 0 in
/// R⁵ cut out by g on the lifted coordinates.
pub fn halfspace_of(g: &Constraint) -> [Rat; 5] {
    let (dx, dy, dz) = (&g.dir[0], &g.dir[1], &g.dir[2]);
    let lam = &g.lambda;
    let co = Rat::one() - lam;
    [&co * dy, -(&co * dx), lam * dy, -(lam * dx), dz.clone()]
}

/// The linear part η_g of ζ_g (first four halfspace coefficients).
pub fn eta_of(g: &Constraint) -> [Rat; 4] {
    let h = halfspace_of(g);
    [h[0].clone(), h[1].clone(), h[2].clone(), h[3].clone()]
}

/// Replaces g by the horizontal constraint through the same axis point with
/// the same xy-direction.
pub fn orthogonalize(g: &Constraint) -> Constraint {
    Constraint::new(g.lambda.clone(), [g.dir[0].clone(), g.dir[1].clone(), Rat::zero()])
        .expect("xy-direction survives orthogonalization")
}

pub fn orthogonalize_family(family: &[Constraint]) -> Vec<Constraint> {
    family.iter().map(orthogonalize).collect()
}

pub fn is_horizontal(g: &Constraint) -> bool {
    g.dir[2].is_zero()
}

/// Both constraints lie in one plane containing the axis (xy-directions
/// parallel).
pub fn coplanar_with_axis(g1: &Constraint, g2: &Constraint) -> bool {
    is_parallel(&[g1.dir[0].clone(), g1.dir[1].clone()], &[g2.dir[0].clone(), g2.dir[1].clone()])
}

/// Both constraints pass through the same axis point.
pub fn concurrent(g1: &Constraint, g2: &Constraint) -> bool {
    g1.lambda == g2.lambda
}

/// A degenerate pair blocks the sharper reduction bounds: coplanar with the
/// axis or concurrent on it.
pub fn degenerate_pair(g1: &Constraint, g2: &Constraint) -> bool {
    coplanar_with_axis(g1, g2) || concurrent(g1, g2)
}

/// Same unoriented line (equal or opposite orientation of one geometric line).
pub fn same_unoriented_line(g1: &Constraint, g2: &Constraint) -> bool {
    g1.lambda == g2.lambda && is_parallel(g1.dir.as_ref(), g2.dir.as_ref())
}

/// Lift onto the graph of q: ψ(u) = (u, q(u)).
pub fn lift(u: &LineCoords) -> [Rat; 5] {
    [u[0].clone(), u[1].clone(), u[2].clone(), u[3].clone(), qform(u)]
}

/// Flat embedding φ(u) = (u, 0).
pub fn embed(u: &LineCoords) -> [Rat; 5] {
    [u[0].clone(), u[1].clone(), u[2].clone(), u[3].clone(), Rat::zero()]
}

/// f(x) = x₅ − (x₂x₃ − x₁x₄): zero exactly on the lifted graph.
pub fn fval(x: &[Rat; 5]) -> Rat {
    let q = &x[1] * &x[2] - &x[0] * &x[3];
    &x[4] - &q
}

/// Plücker coordinates of ℓ(u), normalized so the z-component of the
/// direction is 1.
pub fn to_plucker(u: &LineCoords) -> [Rat; 6] {
    [
        &u[2] - &u[0],
        &u[3] - &u[1],
        Rat::one(),
        u[1].clone(),
        -u[0].clone(),
        &u[0] * &u[3] - &u[1] * &u[2],
    ]
}

/// The Plücker quadric form x₁x₄ + x₂x₅ + x₃x₆, identically zero on images
/// of to_plucker.
pub fn plucker_form(x: &[Rat; 6]) -> Rat {
    &x[0] * &x[3] + &x[1] * &x[4] + &x[2] * &x[5]
}

pub fn fmt_constraint(g: &Constraint) -> String {
    format!(
        "g(λ={}, dir=({}, {}, {}))",
        fmt_rat(&g.lambda),
        fmt_rat(&g.dir[0]),
        fmt_rat(&g.dir[1]),
        fmt_rat(&g.dir[2])
    )
}

pub fn coords_from_slice(v: &[Rat]) -> LineCoords {
    assert_eq!(v.len(), 4);
    [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
}

pub fn coords_to_vec(u: &LineCoords) -> RVec {
    u.to_vec()
}
