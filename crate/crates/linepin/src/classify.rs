//! Combinatorial classification of minimal pinning configurations.
//!
//! A family of horizontal constraints pins the axis exactly when the normals
//! η_g positively span R⁴, i.e. surround the origin. Minimal surrounding
//! sets have 5 to 8 points and decompose into critical simplices (subsets
//! carrying 0 in the relative interior of their convex hull); the shapes of
//! that decomposition, refined by how the underlying lines meet in space,
//! give the sixteen classes below.

use crate::linalg::{rank, solve, SolveOutcome};
use crate::linespace::{
    concurrent, coplanar_with_axis, degenerate_pair, eta_of, is_horizontal, orthogonalize_family,
    Constraint,
};
use crate::lp::{nonneg_solution, surrounds_origin};
use crate::pinning::{decide_pinning, minimize_pinning, PinningVerdict};
use crate::rat::{zeros, RVec, Rat};
use crate::{Error, Result};
use num_traits::{One, Signed};

/// A critical block of horizontal constraints, keyed by size and by whether
/// some pair of member lines is coplanar with the axis or concurrent.
/// "Par" blocks have pairwise skew members reached by parallel translation
/// patterns; "Cross" blocks contain a coplanar or concurrent pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockType {
    B2,
    B3Par,
    B3Cross,
    B4Par,
    B4Cross,
    B5,
}

/// Shape of a minimal surrounding set in R⁴.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurroundingCase {
    /// Five points forming a single critical 4-simplex.
    Simplex4,
    /// Six points covered by two critical simplices of the given sizes
    /// (descending; they may share points).
    TwoCritical(usize, usize),
    /// Seven points covered by k triangles sharing one common point plus
    /// 3 − k disjoint segments, k ∈ {1, 2}.
    ThreeCritical(usize),
    /// Eight points forming four antipodal-direction segments.
    FourSegments,
    /// Seven points covered by three triangles through one common point.
    Star,
}

/// The sixteen classes of minimal horizontal pinnings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(missing_docs)]
pub enum OrthoPinningClass {
    L1,
    L2a,
    L2b,
    L3a,
    L3b,
    L3c,
    L4a,
    L4b,
    L4c,
    L4d,
    L5a,
    L5b,
    L6a,
    L6b,
    L7,
    L8,
}

impl OrthoPinningClass {
    pub fn label(&self) -> &'static str {
        match self {
            OrthoPinningClass::L1 => "1",
            OrthoPinningClass::L2a => "2a",
            OrthoPinningClass::L2b => "2b",
            OrthoPinningClass::L3a => "3a",
            OrthoPinningClass::L3b => "3b",
            OrthoPinningClass::L3c => "3c",
            OrthoPinningClass::L4a => "4a",
            OrthoPinningClass::L4b => "4b",
            OrthoPinningClass::L4c => "4c",
            OrthoPinningClass::L4d => "4d",
            OrthoPinningClass::L5a => "5a",
            OrthoPinningClass::L5b => "5b",
            OrthoPinningClass::L6a => "6a",
            OrthoPinningClass::L6b => "6b",
            OrthoPinningClass::L7 => "7",
            OrthoPinningClass::L8 => "8",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Some(match s {
            "1" => OrthoPinningClass::L1,
            "2a" => OrthoPinningClass::L2a,
            "2b" => OrthoPinningClass::L2b,
            "3a" => OrthoPinningClass::L3a,
            "3b" => OrthoPinningClass::L3b,
            "3c" => OrthoPinningClass::L3c,
            "4a" => OrthoPinningClass::L4a,
            "4b" => OrthoPinningClass::L4b,
            "4c" => OrthoPinningClass::L4c,
            "4d" => OrthoPinningClass::L4d,
            "5a" => OrthoPinningClass::L5a,
            "5b" => OrthoPinningClass::L5b,
            "6a" => OrthoPinningClass::L6a,
            "6b" => OrthoPinningClass::L6b,
            "7" => OrthoPinningClass::L7,
            "8" => OrthoPinningClass::L8,
            _ => return None,
        })
    }
}

/// Whether 2 to 4 constraints have linearly dependent normals η. A pair is
/// dependent exactly when it bounds the same unoriented line.
pub fn is_dependent(family: &[Constraint]) -> Result<bool> {
    let n = family.len();
    if !(2..=4).contains(&n) {
        return Err(Error::WrongArity { min: 2, max: 4, got: n });
    }
    let etas: Vec<RVec> = family.iter().map(|g| eta_of(g).to_vec()).collect();
    Ok(rank(&etas) < n)
}

/// Whether the points are affinely independent with 0 in the relative
/// interior of their convex hull: the barycentric system has a unique,
/// strictly positive solution.
pub fn is_critical_simplex(points: &[RVec]) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = points[0].len();
    let mut a: Vec<RVec> = (0..d).map(|r| points.iter().map(|p| p[r].clone()).collect()).collect();
    a.push(vec![Rat::one(); points.len()]);
    let mut b = zeros(d);
    b.push(Rat::one());
    match solve(&a, &b) {
        SolveOutcome::Unique(lam) => lam.iter().all(|l| l.is_positive()),
        _ => false,
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// First critical subset of a point set containing 0 in its convex hull,
/// by size then lexicographic order.
pub fn find_critical_simplex(points: &[RVec], d: usize) -> Result<Vec<usize>> {
    for p in points {
        if p.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: p.len() });
        }
    }
    // 0 ∈ conv(points): Σλp = 0, Σλ = 1, λ ≥ 0 solvable.
    let mut a: Vec<RVec> = (0..d).map(|r| points.iter().map(|p| p[r].clone()).collect()).collect();
    a.push(vec![Rat::one(); points.len()]);
    let mut b = zeros(d);
    b.push(Rat::one());
    if nonneg_solution(&a, &b).is_none() {
        return Err(Error::NotContainingOrigin);
    }
    for size in 1..=(d + 1).min(points.len()) {
        for subset in combinations(points.len(), size) {
            let sel: Vec<RVec> = subset.iter().map(|&i| points[i].clone()).collect();
            if is_critical_simplex(&sel) {
                return Ok(subset);
            }
        }
    }
    unreachable!("a point set whose hull contains 0 has a critical subset")
}

fn criticals_of(points: &[RVec], max_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 2..=max_size.min(points.len()) {
        for subset in combinations(points.len(), size) {
            let sel: Vec<RVec> = subset.iter().map(|&i| points[i].clone()).collect();
            if is_critical_simplex(&sel) {
                out.push(subset);
            }
        }
    }
    out
}

fn union_is_all(blocks: &[&Vec<usize>], n: usize) -> bool {
    let mut seen = vec![false; n];
    for b in blocks {
        for &i in *b {
            seen[i] = true;
        }
    }
    seen.into_iter().all(|s| s)
}

/// Smallest pair of critical simplices covering all points, ordered by
/// (total size, larger size, index sets); blocks returned size-descending.
fn best_pair_cover(points: &[RVec]) -> Option<(Vec<usize>, Vec<usize>)> {
    let crits = criticals_of(points, 5);
    let n = points.len();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for i in 0..crits.len() {
        for j in i + 1..crits.len() {
            if !union_is_all(&[&crits[i], &crits[j]], n) {
                continue;
            }
            let (big, small) = if crits[i].len() >= crits[j].len() {
                (crits[i].clone(), crits[j].clone())
            } else {
                (crits[j].clone(), crits[i].clone())
            };
            let better = match &best {
                None => true,
                Some((b1, b2)) => {
                    let key_new = (big.len() + small.len(), big.len(), big.clone(), small.clone());
                    let key_old = (b1.len() + b2.len(), b1.len(), b1.clone(), b2.clone());
                    key_new < key_old
                }
            };
            if better {
                best = Some((big, small));
            }
        }
    }
    best
}

/// Smallest triple of critical segments/triangles covering all points,
/// blocks size-descending.
fn best_triple_cover(points: &[RVec]) -> Option<Vec<Vec<usize>>> {
    let crits = criticals_of(points, 3);
    let n = points.len();
    let mut best: Option<Vec<Vec<usize>>> = None;
    for i in 0..crits.len() {
        for j in i + 1..crits.len() {
            for k in j + 1..crits.len() {
                if !union_is_all(&[&crits[i], &crits[j], &crits[k]], n) {
                    continue;
                }
                let mut blocks = vec![crits[i].clone(), crits[j].clone(), crits[k].clone()];
                blocks.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
                let better = match &best {
                    None => true,
                    Some(old) => {
                        let sum_new: usize = blocks.iter().map(|b| b.len()).sum();
                        let sum_old: usize = old.iter().map(|b| b.len()).sum();
                        (sum_new, &blocks) < (sum_old, old)
                    }
                };
                if better {
                    best = Some(blocks);
                }
            }
        }
    }
    best
}

/// Partition into antipodal-direction segments, first-found in index order.
fn four_segment_partition(points: &[RVec]) -> Option<Vec<(usize, usize)>> {
    let n = points.len();
    fn rec(points: &[RVec], covered: &mut Vec<bool>, acc: &mut Vec<(usize, usize)>) -> bool {
        let Some(first) = covered.iter().position(|c| !c) else {
            return true;
        };
        covered[first] = true;
        for j in first + 1..points.len() {
            if covered[j] {
                continue;
            }
            if is_critical_simplex(&[points[first].clone(), points[j].clone()]) {
                covered[j] = true;
                acc.push((first, j));
                if rec(points, covered, acc) {
                    return true;
                }
                acc.pop();
                covered[j] = false;
            }
        }
        covered[first] = false;
        false
    }
    let mut covered = vec![false; n];
    let mut acc = Vec::new();
    if rec(points, &mut covered, &mut acc) {
        Some(acc)
    } else {
        None
    }
}

fn is_minimally_surrounding(points: &[RVec], d: usize) -> bool {
    if !surrounds_origin(points, d) {
        return false;
    }
    (0..points.len()).all(|drop| {
        let sub: Vec<RVec> =
            points.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, p)| p.clone()).collect();
        !surrounds_origin(&sub, d)
    })
}

/// Decomposition shape of a minimally surrounding set in R⁴.
pub fn decompose_surrounding(points: &[RVec]) -> Result<SurroundingCase> {
    for p in points {
        if p.len() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, got: p.len() });
        }
    }
    if !is_minimally_surrounding(points, 4) {
        return Err(Error::NotMinimallySurrounding);
    }
    let n = points.len();
    assert!((5..=8).contains(&n), "minimal surrounding sets in R⁴ have 5 to 8 points");
    Ok(match n {
        5 => {
            assert!(is_critical_simplex(points));
            SurroundingCase::Simplex4
        }
        6 => {
            let (b1, b2) = best_pair_cover(points)
                .expect("six-point minimal surrounding sets split into two critical simplices");
            SurroundingCase::TwoCritical(b1.len(), b2.len())
        }
        7 => {
            let blocks = best_triple_cover(points)
                .expect("seven-point minimal surrounding sets split into three critical pieces");
            let k = blocks.iter().filter(|b| b.len() == 3).count();
            if k == 3 {
                SurroundingCase::Star
            } else {
                assert!(k == 1 || k == 2);
                SurroundingCase::ThreeCritical(k)
            }
        }
        _ => {
            assert!(four_segment_partition(points).is_some());
            SurroundingCase::FourSegments
        }
    })
}

/// Block type of 2 to 5 horizontal constraints: None unless the normals
/// form a critical simplex.
pub fn block_classify(family: &[Constraint]) -> Result<Option<BlockType>> {
    let n = family.len();
    if !(2..=5).contains(&n) {
        return Err(Error::WrongArity { min: 2, max: 5, got: n });
    }
    if !family.iter().all(is_horizontal) {
        return Err(Error::NotOrthogonal);
    }
    let etas: Vec<RVec> = family.iter().map(|g| eta_of(g).to_vec()).collect();
    if !is_critical_simplex(&etas) {
        return Ok(None);
    }
    Ok(Some(match n {
        2 => BlockType::B2,
        3 => {
            let par = family
                .iter()
                .enumerate()
                .all(|(i, a)| family.iter().skip(i + 1).all(|b| coplanar_with_axis(a, b)));
            let cross = family
                .iter()
                .enumerate()
                .all(|(i, a)| family.iter().skip(i + 1).all(|b| concurrent(a, b)));
            assert!(
                par ^ cross,
                "a critical triple is pairwise coplanar or pairwise concurrent, never both"
            );
            if par {
                BlockType::B3Par
            } else {
                BlockType::B3Cross
            }
        }
        4 => {
            let crossing = family.iter().enumerate().any(|(i, a)| {
                family.iter().skip(i + 1).any(|b| coplanar_with_axis(a, b) || concurrent(a, b))
            });
            if crossing {
                BlockType::B4Cross
            } else {
                BlockType::B4Par
            }
        }
        _ => BlockType::B5,
    }))
}

fn sub_family(family: &[Constraint], idx: &[usize]) -> Vec<Constraint> {
    idx.iter().map(|&i| family[i].clone()).collect()
}

/// Classifies a minimal pinning of horizontal constraints into one of the
/// sixteen classes.
pub fn classify_ortho_pinning(family: &[Constraint]) -> Result<OrthoPinningClass> {
    if family.is_empty() || !family.iter().all(is_horizontal) {
        return Err(Error::NotOrthogonal);
    }
    let pinned = matches!(decide_pinning(family)?, PinningVerdict::Pinned(_));
    let minimal = pinned
        && (0..family.len()).all(|drop| {
            let sub: Vec<Constraint> = family
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, g)| g.clone())
                .collect();
            sub.is_empty() || matches!(decide_pinning(&sub), Ok(PinningVerdict::NotPinned(_)))
        });
    if !minimal {
        return Err(Error::NotAMinimalOrthoPinning);
    }
    let etas: Vec<RVec> = family.iter().map(|g| eta_of(g).to_vec()).collect();
    debug_assert!(is_minimally_surrounding(&etas, 4));
    Ok(match family.len() {
        5 => {
            assert!(is_critical_simplex(&etas));
            OrthoPinningClass::L1
        }
        6 => {
            let (b1, b2) = best_pair_cover(&etas)
                .expect("six-member minimal pinnings split into two critical blocks");
            let t1 =
                block_classify(&sub_family(family, &b1))?.expect("covering blocks are critical");
            let t2 =
                block_classify(&sub_family(family, &b2))?.expect("covering blocks are critical");
            match (b1.len(), b2.len(), t1, t2) {
                (3, 3, BlockType::B3Par, BlockType::B3Par) => OrthoPinningClass::L2a,
                (3, 3, BlockType::B3Cross, BlockType::B3Cross) => OrthoPinningClass::L2b,
                (4, 4, BlockType::B4Par, BlockType::B4Par) => OrthoPinningClass::L3a,
                (4, 4, BlockType::B4Cross, BlockType::B4Cross) => OrthoPinningClass::L3b,
                (4, 4, _, _) => OrthoPinningClass::L3c,
                (4, 3, BlockType::B4Par, BlockType::B3Par) => OrthoPinningClass::L4a,
                (4, 3, BlockType::B4Par, BlockType::B3Cross) => OrthoPinningClass::L4b,
                (4, 3, BlockType::B4Cross, BlockType::B3Par) => OrthoPinningClass::L4c,
                (4, 3, BlockType::B4Cross, BlockType::B3Cross) => OrthoPinningClass::L4d,
                (4, 2, BlockType::B4Par, BlockType::B2) => OrthoPinningClass::L5a,
                (4, 2, BlockType::B4Cross, BlockType::B2) => OrthoPinningClass::L5b,
                other => unreachable!("six-member cover shape {other:?} cannot occur"),
            }
        }
        7 => {
            let blocks = best_triple_cover(&etas)
                .expect("seven-member minimal pinnings split into three critical blocks");
            let k = blocks.iter().filter(|b| b.len() == 3).count();
            match k {
                1 => {
                    let t = block_classify(&sub_family(family, &blocks[0]))?
                        .expect("covering blocks are critical");
                    match t {
                        BlockType::B3Par => OrthoPinningClass::L6a,
                        BlockType::B3Cross => OrthoPinningClass::L6b,
                        other => unreachable!("triangle block classified as {other:?}"),
                    }
                }
                2 => OrthoPinningClass::L7,
                _ => unreachable!(
                    "star configurations are not realizable by horizontal constraint normals"
                ),
            }
        }
        8 => {
            assert!(four_segment_partition(&etas).is_some());
            OrthoPinningClass::L8
        }
        n => unreachable!("minimal pinnings have 5 to 8 members, got {n}"),
    })
}

/// Whether the family is a minimal pinning with no degenerate pair whose
/// horizontal shadow fails to pin: the hallmark of a pinning held together
/// by a line tangent from outside. Such families have exactly four members
/// whose shadow is a skew critical quadruple.
pub fn detect_4pinning(family: &[Constraint]) -> Result<bool> {
    if !matches!(decide_pinning(family)?, PinningVerdict::Pinned(_)) {
        return Ok(false);
    }
    if minimize_pinning(family)?.len() != family.len() {
        return Ok(false);
    }
    let degenerate = family
        .iter()
        .enumerate()
        .any(|(i, a)| family.iter().skip(i + 1).any(|b| degenerate_pair(a, b)));
    if degenerate {
        return Ok(false);
    }
    let shadow = orthogonalize_family(family);
    if matches!(decide_pinning(&shadow)?, PinningVerdict::Pinned(_)) {
        return Ok(false);
    }
    assert_eq!(family.len(), 4, "tangent pinnings have exactly four members");
    assert_eq!(
        block_classify(&shadow)?,
        Some(BlockType::B4Par),
        "the shadow of a tangent pinning is a skew critical quadruple"
    );
    Ok(true)
}
