//! Exact two-phase simplex over Rat with Bland's rule, plus the handful of
//! feasibility shapes the rest of the crate needs: nonnegative solutions,
//! points of halfspace cones, uniform-slack (relative interior) programs,
//! and irreducible infeasible subsets.

use num_traits::{One, Signed, Zero};

use crate::rat::{dot, is_zero_vec, neg, zeros, RVec, Rat};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, x: RVec },
}

/// Maximizes c·x subject to A x = b, x ≥ 0. Exact; terminates by Bland's
/// pivoting rule.
pub fn simplex_max(c: &[Rat], a: &[RVec], b: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    for row in a {
        assert_eq!(row.len(), n, "ragged constraint matrix");
    }

    // Tableau with artificial columns n..n+m; rhs kept separately.
    let mut t: Vec<RVec> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = if b[i].is_negative() { neg(&a[i]) } else { a[i].clone() };
        row.extend(zeros(m));
        row[n + i] = Rat::one();
        t.push(row);
        rhs.push(b[i].abs());
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let pivot =
        |t: &mut Vec<RVec>, rhs: &mut Vec<Rat>, basis: &mut Vec<usize>, r: usize, c: usize| {
            let inv = t[r][c].recip();
            t[r] = t[r].iter().map(|x| x * &inv).collect();
            rhs[r] = &rhs[r] * &inv;
            for i in 0..t.len() {
                if i != r && !t[i][c].is_zero() {
                    let f = t[i][c].clone();
                    t[i] = t[i].iter().zip(&t[r]).map(|(x, y)| x - &f * y).collect();
                    rhs[i] = &rhs[i] - &f * &rhs[r];
                }
            }
            basis[r] = c;
        };

    // One simplex phase: maximize cost·x over the current tableau.
    // Returns false on unboundedness.
    let run = |t: &mut Vec<RVec>,
               rhs: &mut Vec<Rat>,
               basis: &mut Vec<usize>,
               cost: &[Rat],
               allowed: usize|
     -> bool {
        loop {
            // Reduced costs: cost_j - cost_B · column_j.
            let mut entering = None;
            for j in 0..allowed {
                if basis.contains(&j) {
                    continue;
                }
                let z: Rat = (0..t.len()).map(|i| &cost[basis[i]] * &t[i][j]).sum();
                if cost[j] > z {
                    entering = Some(j);
                    break; // Bland: smallest improving index.
                }
            }
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..t.len() {
                if t[i][j].is_positive() {
                    let ratio = &rhs[i] / &t[i][j];
                    let better = match &leave {
                        None => true,
                        Some((li, best)) => {
                            ratio < *best || (ratio == *best && basis[i] < basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((i, _)) = leave else {
                return false;
            };
            pivot(t, rhs, basis, i, j);
        }
    };

    // Phase 1: drive artificials to zero.
    let mut cost1 = zeros(n + m);
    for c in cost1.iter_mut().skip(n) {
        *c = -Rat::one();
    }
    let ok = run(&mut t, &mut rhs, &mut basis, &cost1, n + m);
    debug_assert!(ok, "phase 1 cannot be unbounded");
    let phase1: Rat = (0..m).map(|i| &cost1[basis[i]] * &rhs[i]).sum();
    if !phase1.is_zero() {
        return LpOutcome::Infeasible;
    }
    // Remove artificials still basic (at value zero): pivot them out on any
    // structural column, or drop the (redundant) row.
    let mut r = 0;
    while r < t.len() {
        if basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !t[r][j].is_zero()) {
                pivot(&mut t, &mut rhs, &mut basis, r, j);
                r += 1;
            } else {
                t.remove(r);
                rhs.remove(r);
                basis.remove(r);
            }
        } else {
            r += 1;
        }
    }

    // Phase 2 over structural columns only.
    let mut cost2 = c.to_vec();
    cost2.extend(zeros(m));
    if !run(&mut t, &mut rhs, &mut basis, &cost2, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = zeros(n);
    for (i, &bi) in basis.iter().enumerate() {
        if bi < n {
            x[bi] = rhs[i].clone();
        }
    }
    let value = dot(c, &x);
    LpOutcome::Optimal { value, x }
}

/// A nonnegative solution of A x = b, if one exists.
pub fn nonneg_solution(a: &[RVec], b: &[Rat]) -> Option<RVec> {
    let n = a.first().map_or(0, |r| r.len());
    match simplex_max(&zeros(n), a, b) {
        LpOutcome::Optimal { x, .. } => Some(x),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("zero objective"),
    }
}

/// A point of the cone {x : h·x ≤ 0 for all h} subject to extra affine
/// equations e·x = f. Free variables are split into differences of
/// nonnegative ones; each inequality gets a slack.
pub fn feasible_point(halfspaces: &[RVec], equalities: &[(RVec, Rat)], d: usize) -> Option<RVec> {
    let nh = halfspaces.len();
    let ncols = 2 * d + nh;
    let mut rows: Vec<RVec> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for (i, h) in halfspaces.iter().enumerate() {
        assert_eq!(h.len(), d);
        let mut row = zeros(ncols);
        for j in 0..d {
            row[j] = h[j].clone();
            row[d + j] = -h[j].clone();
        }
        row[2 * d + i] = Rat::one();
        rows.push(row);
        rhs.push(Rat::zero());
    }
    for (e, f) in equalities {
        assert_eq!(e.len(), d);
        let mut row = zeros(ncols);
        for j in 0..d {
            row[j] = e[j].clone();
            row[d + j] = -e[j].clone();
        }
        rows.push(row);
        rhs.push(f.clone());
    }
    let x = nonneg_solution(&rows, &rhs)?;
    Some((0..d).map(|j| &x[j] - &x[d + j]).collect())
}

/// A nonzero point of the cone {x : h·x ≤ 0}, optionally restricted to one
/// extra affine equation. Without the extra equation, the coordinate
/// sections x_i = ±1 are scanned; a nonzero cone point has some nonzero
/// coordinate and rays scale, so the scan is exhaustive.
pub fn lp_nonzero_point(halfspaces: &[RVec], extra: Option<(RVec, Rat)>, d: usize) -> Option<RVec> {
    match extra {
        Some(e) => feasible_point(halfspaces, &[e], d),
        None => {
            for i in 0..d {
                for sign in [1i64, -1] {
                    let mut e = zeros(d);
                    e[i] = Rat::from_integer(sign.into());
                    if let Some(x) = feasible_point(halfspaces, &[(e, Rat::one())], d) {
                        return Some(x);
                    }
                }
            }
            None
        }
    }
}

/// Irreducible infeasible subset of {h·x ≤ 0} ∪ {extra}, by greedy removal.
/// Requires the full system to be infeasible. For systems of homogeneous
/// halfspaces plus one affine equation, conic Carathéodory bounds the result
/// by d linearly independent halfspaces.
pub fn farkas_certificate(halfspaces: &[RVec], extra: (RVec, Rat), d: usize) -> Result<Vec<usize>> {
    let eqs = [extra];
    if feasible_point(halfspaces, &eqs, d).is_some() {
        return Err(Error::PreconditionViolated(
            "farkas_certificate requires an infeasible system",
        ));
    }
    let mut kept: Vec<usize> = (0..halfspaces.len()).collect();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.remove(i);
        let sub: Vec<RVec> = trial.iter().map(|&k| halfspaces[k].clone()).collect();
        if feasible_point(&sub, &eqs, d).is_none() {
            kept = trial;
        } else {
            i += 1;
        }
    }
    debug_assert!(kept.len() <= d, "irreducible infeasible subset exceeds dimension");
    Ok(kept)
}

/// Maximizes t subject to A λ = b, λ_i ≥ t (all i), t ≤ 1, with λ otherwise
/// free. Returns (t*, λ*), or None when A λ = b has no solution at all.
pub fn max_uniform_slack(a: &[RVec], b: &[Rat]) -> Option<(Rat, RVec)> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    if n == 0 {
        return None;
    }
    // Columns: μ_1..μ_n (λ = μ + t), t⁺, t⁻, cap slack.
    let ncols = n + 3;
    let mut rows: Vec<RVec> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for i in 0..m {
        let mut row = zeros(ncols);
        let s: Rat = a[i].iter().sum();
        row[..n].clone_from_slice(&a[i]);
        row[n] = s.clone();
        row[n + 1] = -s;
        rows.push(row);
        rhs.push(b[i].clone());
    }
    let mut cap = zeros(ncols);
    cap[n] = Rat::one();
    cap[n + 1] = -Rat::one();
    cap[n + 2] = Rat::one();
    rows.push(cap);
    rhs.push(Rat::one());
    let mut c = zeros(ncols);
    c[n] = Rat::one();
    c[n + 1] = -Rat::one();
    match simplex_max(&c, &rows, &rhs) {
        LpOutcome::Optimal { value, x } => {
            let t = value;
            let lam: RVec = (0..n).map(|i| &x[i] + &t).collect();
            Some((t, lam))
        }
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("capped objective"),
    }
}

/// True when 0 lies in the interior of conv(points) in R^d: the points span
/// R^d and 0 is a convex combination with all coefficients positive.
pub fn surrounds_origin(points: &[RVec], d: usize) -> bool {
    if points.is_empty() {
        return false;
    }
    for p in points {
        assert_eq!(p.len(), d);
    }
    if crate::linalg::rank(points) != d {
        return false;
    }
    relint_combination(points).is_some()
}

/// Positive convex coefficients λ with Σ λ_i p_i = 0, if 0 ∈ relint conv(points).
pub fn relint_combination(points: &[RVec]) -> Option<RVec> {
    let d = points.first()?.len();
    let n = points.len();
    let mut a: Vec<RVec> = Vec::with_capacity(d + 1);
    for coord in 0..d {
        a.push(points.iter().map(|p| p[coord].clone()).collect());
    }
    a.push(vec![Rat::one(); n]);
    let mut b = zeros(d);
    b.push(Rat::one());
    let (t, lam) = max_uniform_slack(&a, &b)?;
    if t.is_positive() {
        Some(lam)
    } else {
        None
    }
}

/// True when the segment [p, q] (given as vertex sets A, B of two hulls)
/// shares a point: conv(A) ∩ conv(B) ≠ ∅.
pub fn hulls_intersect(a: &[RVec], b: &[RVec]) -> bool {
    let d = a[0].len();
    let n = a.len() + b.len();
    let mut rows: Vec<RVec> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for coord in 0..d {
        let mut row = Vec::with_capacity(n);
        row.extend(a.iter().map(|p| p[coord].clone()));
        row.extend(b.iter().map(|p| -p[coord].clone()));
        rows.push(row);
        rhs.push(Rat::zero());
    }
    let mut row = vec![Rat::zero(); n];
    for x in row.iter_mut().take(a.len()) {
        *x = Rat::one();
    }
    rows.push(row);
    rhs.push(Rat::one());
    let mut row = vec![Rat::zero(); n];
    for x in row.iter_mut().skip(a.len()) {
        *x = Rat::one();
    }
    rows.push(row);
    rhs.push(Rat::one());
    nonneg_solution(&rows, &rhs).is_some()
}

/// True when point x lies in conv(vertices).
pub fn point_in_hull(x: &[Rat], vertices: &[RVec]) -> bool {
    let d = x.len();
    let mut rows: Vec<RVec> = Vec::with_capacity(d + 1);
    let mut rhs: Vec<Rat> = Vec::with_capacity(d + 1);
    for coord in 0..d {
        rows.push(vertices.iter().map(|v| v[coord].clone()).collect());
        rhs.push(x[coord].clone());
    }
    rows.push(vec![Rat::one(); vertices.len()]);
    rhs.push(Rat::one());
    nonneg_solution(&rows, &rhs).is_some()
}

/// True when some h in the list is violated, i.e. h·x > 0.
pub fn violates(halfspaces: &[RVec], x: &[Rat]) -> bool {
    halfspaces.iter().any(|h| dot(h, x).is_positive())
}

/// Sanity helper: x ≠ 0 and satisfies every halfspace.
pub fn in_cone_nonzero(halfspaces: &[RVec], x: &[Rat]) -> bool {
    !is_zero_vec(x) && !violates(halfspaces, x)
}
