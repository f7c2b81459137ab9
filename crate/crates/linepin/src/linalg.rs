//! Dense exact linear algebra over Rat, sized for dimensions ≤ 6.

use num_traits::Zero;

use crate::rat::{dot, is_zero_vec, primitive, zeros, RVec, Rat};

/// Reduced row echelon form. Returns the nonzero reduced rows and the pivot
/// column of each.
pub fn rref(rows: &[RVec]) -> (Vec<RVec>, Vec<usize>) {
    let mut m: Vec<RVec> = rows.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        m[row] = m[row].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                m[i] = m[i].iter().zip(&m[row]).map(|(x, y)| x - &f * y).collect();
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(rows: &[RVec]) -> usize {
    rref(rows).0.len()
}

/// Basis of {x ∈ R^n : r·x = 0 for every row r}, read off the RREF.
pub fn null_space(rows: &[RVec], n: usize) -> Vec<RVec> {
    let (m, pivots) = rref(rows);
    let is_pivot = |c: usize| pivots.contains(&c);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !is_pivot(*c)) {
        let mut v = zeros(n);
        v[free] = Rat::from_integer(1.into());
        for (r, &pc) in m.iter().zip(&pivots) {
            v[pc] = -r[free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn is_in_span(rows: &[RVec], v: &RVec) -> bool {
    if is_zero_vec(v) {
        return true;
    }
    let mut all: Vec<RVec> = rows.to_vec();
    let r0 = rank(&all);
    all.push(v.clone());
    rank(&all) == r0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Inconsistent,
    Unique(RVec),
    /// A particular solution together with a null-space basis.
    Underdetermined(RVec, Vec<RVec>),
}

/// Solves A x = b exactly.
pub fn solve(a: &[RVec], b: &[Rat]) -> SolveOutcome {
    assert_eq!(a.len(), b.len());
    let n = a.first().map_or(0, |r| r.len());
    let aug: Vec<RVec> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.contains(&n) {
        return SolveOutcome::Inconsistent;
    }
    let mut x = zeros(n);
    for (r, &pc) in m.iter().zip(&pivots) {
        x[pc] = r[n].clone();
    }
    if pivots.len() == n {
        SolveOutcome::Unique(x)
    } else {
        let coeff_rows: Vec<RVec> = a.to_vec();
        SolveOutcome::Underdetermined(x, null_space(&coeff_rows, n))
    }
}

/// Canonical basis of the span of `vectors`: RREF rows scaled to primitive
/// integers. Deterministic in the input span.
pub fn span_basis(vectors: &[RVec]) -> Vec<RVec> {
    rref(vectors).0.iter().map(|r| primitive(r)).collect()
}

/// Component of `v` in the canonical complement of span(basis): eliminates
/// the RREF pivot coordinates. Requires `basis` to be in RREF.
pub fn reduce_mod_span(basis_rref: &[RVec], pivots: &[usize], v: &RVec) -> RVec {
    let mut v = v.clone();
    for (row, &pc) in basis_rref.iter().zip(pivots) {
        if !v[pc].is_zero() {
            let f = &v[pc] / &row[pc];
            v = v.iter().zip(row).map(|(x, y)| x - &f * y).collect();
        }
    }
    v
}

/// Gram-style pairing matrix g[i][j] = rows[i]·rows[j].
pub fn pairing(rows: &[RVec]) -> Vec<RVec> {
    rows.iter().map(|a| rows.iter().map(|b| dot(a, b)).collect()).collect()
}
