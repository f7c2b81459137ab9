//! Independent cross-checks for the pinning decision: exact sampling of
//! satisfying lines in shrinking neighbourhoods of the axis, an LP escape
//! search for horizontal families, and the classical transversal count of
//! four lines.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::linalg::null_space;
use crate::linespace::{degenerate_pair, eta_of, eval_zeta, is_horizontal, Constraint, LineCoords};
use crate::lp::lp_nonzero_point;
use crate::rat::{dot, rat, rat_to_f64, ratio, snap_to_rational, RVec, Rat};
use crate::{Error, Result};

/// Sampling effort for [`sample_escape`].
#[derive(Debug, Clone)]
pub struct SampleBudget {
    /// Shrinking max-norm radii to probe.
    pub radii: Vec<Rat>,
    /// Grid points per half-axis; the grid has (2·grid + 1)⁴ points.
    pub grid: usize,
    /// Extra random points per radius, snapped to small rationals.
    pub random: usize,
    pub seed: u64,
}

impl Default for SampleBudget {
    fn default() -> Self {
        SampleBudget {
            radii: vec![rat(1), ratio(1, 4), ratio(1, 16), ratio(1, 64)],
            grid: 4,
            random: 10_000,
            seed: 0,
        }
    }
}

/// What sampling at one radius uncovered. A ray witness is a point u ≠ 0
/// with ζ_g(u) ≤ 0 and η_g·u ≤ 0 for every member; by
/// ζ_g(tu) = t·((1−t)·η_g·u + t·ζ_g(u)) the whole segment (0, u] then
/// satisfies the family, which refutes pinning. A merely satisfying point
/// is inconclusive on its own, since pinning only concerns lines near the
/// axis.
#[derive(Debug, Clone)]
pub struct RadiusFinding {
    pub radius: Rat,
    pub ray_witness: Option<LineCoords>,
    pub satisfying: Option<LineCoords>,
    pub samples: usize,
}

/// Findings of [`sample_escape`], one entry per probed radius.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub findings: Vec<RadiusFinding>,
}

impl OracleReport {
    /// An escape ray was certified at every probed radius.
    pub fn certifies_escape(&self) -> bool {
        !self.findings.is_empty() && self.findings.iter().all(|f| f.ray_witness.is_some())
    }

    /// No escape ray was certified at any radius: consistent with (though
    /// not a proof of) pinning.
    pub fn no_ray_witness(&self) -> bool {
        self.findings.iter().all(|f| f.ray_witness.is_none())
    }
}

/// Probes shrinking neighbourhoods of the axis for lines satisfying every
/// constraint. All candidates are rational and all checks exact; float
/// randomness is snapped to denominators ≤ 10⁶ before evaluation.
pub fn sample_escape(family: &[Constraint], budget: &SampleBudget) -> Result<OracleReport> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let etas: Vec<RVec> = family.iter().map(|g| eta_of(g).to_vec()).collect();
    let probe = |finding: &mut RadiusFinding, u: LineCoords| -> bool {
        if u.iter().all(|x| x.is_zero()) {
            return false;
        }
        finding.samples += 1;
        if family.iter().any(|g| eval_zeta(g, &u).is_positive()) {
            return false;
        }
        if finding.satisfying.is_none() {
            finding.satisfying = Some(u.clone());
        }
        let uv = u.to_vec();
        if etas.iter().all(|e| !dot(e, &uv).is_positive()) {
            finding.ray_witness = Some(u);
            return true;
        }
        false
    };

    let mut rng = ChaCha20Rng::seed_from_u64(budget.seed);
    let mut findings = Vec::new();
    for radius in &budget.radii {
        let mut finding = RadiusFinding {
            radius: radius.clone(),
            ray_witness: None,
            satisfying: None,
            samples: 0,
        };
        let k = budget.grid as i64;
        if k > 0 {
            'grid: for a in -k..=k {
                for b in -k..=k {
                    for c in -k..=k {
                        for d in -k..=k {
                            let u: LineCoords = [
                                radius * ratio(a, k),
                                radius * ratio(b, k),
                                radius * ratio(c, k),
                                radius * ratio(d, k),
                            ];
                            if probe(&mut finding, u) {
                                break 'grid;
                            }
                        }
                    }
                }
            }
        }
        let rf = rat_to_f64(radius);
        for _ in 0..budget.random {
            if finding.ray_witness.is_some() {
                break;
            }
            let mut coords: Vec<Rat> = Vec::with_capacity(4);
            for _ in 0..4 {
                let x: f64 = rng.gen_range(-rf..=rf);
                match snap_to_rational(x, 1_000_000) {
                    Some(r) if r.abs() <= *radius => coords.push(r),
                    _ => coords.push(Rat::zero()),
                }
            }
            let u: LineCoords =
                [coords[0].clone(), coords[1].clone(), coords[2].clone(), coords[3].clone()];
            probe(&mut finding, u);
        }
        findings.push(finding);
    }
    Ok(OracleReport { findings })
}

/// LP search for a nonzero satisfying direction of a horizontal family.
/// Satisfying lines of such a family form a polyhedral cone, so the
/// coordinate-section scan is exhaustive: None proves the axis isolated.
/// This route shares no code with the double-description machinery behind
/// the main decision.
pub fn horizontal_escape(family: &[Constraint]) -> Result<Option<LineCoords>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if !family.iter().all(is_horizontal) {
        return Err(Error::NotOrthogonal);
    }
    let etas: Vec<RVec> = family.iter().map(|g| eta_of(g).to_vec()).collect();
    Ok(lp_nonzero_point(&etas, None, 4)
        .map(|x| [x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()]))
}

/// Transversal count of four horizontal lines among lines crossing every
/// horizontal plane, the axis included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransversalCount {
    Infinite,
    Finite(usize),
}

/// Counts common transversals of four horizontal lines in the chart of
/// lines meeting every horizontal plane. The first three members must be
/// pairwise skew; the lines meeting all three form a one-parameter ruling
/// through the axis, and the fourth member either meets the whole ruling
/// or only the axis.
pub fn common_transversals(family: &[Constraint]) -> Result<TransversalCount> {
    if family.len() != 4 {
        return Err(Error::WrongArity { min: 4, max: 4, got: family.len() });
    }
    if !family.iter().all(is_horizontal) {
        return Err(Error::NotOrthogonal);
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            if degenerate_pair(&family[i], &family[j]) {
                return Err(Error::DegenerateTriple);
            }
        }
    }
    let rows: Vec<RVec> = family[..3].iter().map(|g| eta_of(g).to_vec()).collect();
    let null = null_space(&rows, 4);
    if null.len() != 1 {
        return Err(Error::DegenerateTriple);
    }
    if dot(eta_of(&family[3]).as_ref(), &null[0]).is_zero() {
        Ok(TransversalCount::Infinite)
    } else {
        Ok(TransversalCount::Finite(1))
    }
}
