//! Exact polyhedral cones in dimension ≤ 5 by incremental double
//! description: lineality basis plus canonical extreme rays.

use num_traits::{Signed, Zero};

use crate::linalg::{null_space, rank, rref, span_basis};
use crate::rat::{dot, is_zero_vec, neg, primitive, scale, sub, RVec, Rat};
use crate::{Error, Result};

/// A cone {x ∈ R^d : a·x ≤ 0 for every a in hrep}, with its computed
/// generator form: C = span(lineality) + cone(rays). The lineality basis is
/// in primitive-integer RREF; rays are primitive, reduced modulo the
/// lineality, deduplicated and sorted, so equal cones from equal hreps print
/// identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub dim: usize,
    pub hrep: Vec<RVec>,
    pub lineality: Vec<RVec>,
    pub rays: Vec<RVec>,
}

impl Cone {
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.hrep.iter().all(|h| !dot(h, x).is_positive())
    }

    /// Rays together with both signs of each lineality basis vector: a
    /// finite generating set of the cone.
    pub fn generators(&self) -> Vec<RVec> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(neg(l));
        }
        g
    }

    pub fn is_zero(&self) -> bool {
        self.lineality.is_empty() && self.rays.is_empty()
    }

    /// Dimension of the linear hull span(lineality ∪ rays).
    pub fn hull_dim(&self) -> usize {
        let mut v = self.lineality.clone();
        v.extend(self.rays.iter().cloned());
        rank(&v)
    }
}

fn canonical_ray(lineality_rref: &[RVec], pivots: &[usize], r: &RVec) -> Option<RVec> {
    let red = crate::linalg::reduce_mod_span(lineality_rref, pivots, r);
    if is_zero_vec(&red) {
        None
    } else {
        Some(primitive(&red))
    }
}

/// Incremental double description over the halfspaces in input order.
pub fn cone_from_halfspaces(halfspaces: &[RVec], d: usize) -> Result<Cone> {
    for h in halfspaces {
        if h.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: h.len() });
        }
    }
    // Start from R^d: full lineality, no rays.
    let mut lineality: Vec<RVec> = (0..d)
        .map(|i| {
            let mut e = crate::rat::zeros(d);
            e[i] = Rat::from_integer(1.into());
            e
        })
        .collect();
    let mut rays: Vec<RVec> = Vec::new();
    let mut processed: Vec<RVec> = Vec::new();

    for a in halfspaces {
        if is_zero_vec(a) {
            continue; // trivial halfspace
        }
        let vals: Vec<Rat> = lineality.iter().map(|l| dot(a, l)).collect();
        if let Some(i0) = vals.iter().position(|v| !v.is_zero()) {
            // A lineality direction leaves the halfspace: pivot on it.
            let mut l0 = lineality[i0].clone();
            let mut v0 = vals[i0].clone();
            if v0.is_positive() {
                l0 = neg(&l0);
                v0 = -v0;
            }
            let mut new_lin = Vec::new();
            for (i, (l, v)) in lineality.iter().zip(&vals).enumerate() {
                if i == i0 {
                    continue;
                }
                new_lin.push(sub(l, &scale(&l0, &(v / &v0))));
            }
            let mut new_rays: Vec<RVec> = Vec::with_capacity(rays.len() + 1);
            new_rays.push(l0.clone());
            for r in &rays {
                let v = dot(a, r);
                new_rays.push(sub(r, &scale(&l0, &(&v / &v0))));
            }
            lineality = new_lin;
            rays = new_rays;
        } else {
            // Lineality is inside the boundary; split the rays.
            let signs: Vec<Rat> = rays.iter().map(|r| dot(a, r)).collect();
            if signs.iter().any(|s| s.is_positive()) {
                let mut next: Vec<RVec> = Vec::new();
                for (r, s) in rays.iter().zip(&signs) {
                    if !s.is_positive() {
                        next.push(r.clone());
                    }
                }
                for (p, sp) in rays.iter().zip(&signs) {
                    if !sp.is_positive() {
                        continue;
                    }
                    for (n, sn) in rays.iter().zip(&signs) {
                        if !sn.is_negative() {
                            continue;
                        }
                        // w = (a·p)·n − (a·n)·p lies on bd(a); both weights
                        // are positive, so w stays in the cone.
                        let w = sub(&scale(n, sp), &scale(p, sn));
                        if !is_zero_vec(&w) {
                            next.push(w);
                        }
                    }
                }
                rays = next;
            }
        }
        processed.push(a.clone());

        // Canonicalize and filter to extreme rays: a ray of a cone with
        // lineality L is extreme iff its active processed normals have rank
        // d − dim L − 1 (all processed normals vanish on L).
        let (lin_rref, pivots) = rref(&lineality);
        let lin_dim = lin_rref.len();
        let mut seen: Vec<RVec> = Vec::new();
        for r in &rays {
            let Some(cr) = canonical_ray(&lin_rref, &pivots, r) else {
                continue;
            };
            if seen.contains(&cr) {
                continue;
            }
            let active: Vec<RVec> =
                processed.iter().filter(|h| dot(h, &cr).is_zero()).cloned().collect();
            if rank(&active) == d - lin_dim - 1 {
                seen.push(cr);
            }
        }
        rays = seen;
        lineality = lin_rref.iter().map(|l| primitive(l)).collect();
    }

    rays.sort();
    Ok(Cone { dim: d, hrep: halfspaces.to_vec(), lineality, rays })
}

/// Canonical basis of the linear hull ⟨C⟩ together with the indices of the
/// input halfspaces active on all of it (⟨C⟩ = ⋂ of their boundaries when C
/// is not full-dimensional).
pub fn linear_hull(cone: &Cone) -> (Vec<RVec>, Vec<usize>) {
    let mut v = cone.lineality.clone();
    v.extend(cone.rays.iter().cloned());
    let basis = span_basis(&v);
    let active = cone
        .hrep
        .iter()
        .enumerate()
        .filter(|(_, h)| basis.iter().all(|b| dot(h, b).is_zero()))
        .map(|(i, _)| i)
        .collect();
    (basis, active)
}

/// The cone C ∩ {x_k = 0}, in the (d−1)-dimensional frame that drops
/// coordinate k (0-based).
pub fn face_in_hyperplane(cone: &Cone, k: usize) -> Result<Cone> {
    if k >= cone.dim {
        return Err(Error::DimensionMismatch { expected: cone.dim, got: k });
    }
    let dropped: Vec<RVec> = cone
        .hrep
        .iter()
        .map(|h| h.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, x)| x.clone()).collect())
        .collect();
    cone_from_halfspaces(&dropped, cone.dim - 1)
}

/// Projects halfspaces that all contain the subspace E along E, returning
/// their images in coordinates on the complement together with the basis W
/// of E^⊥ realizing those coordinates (y_j = w_j·x). Errors with
/// NotContaining when some halfspace does not have E in its boundary.
pub fn project_out(
    halfspaces: &[RVec],
    e_basis: &[RVec],
    d: usize,
) -> Result<(Vec<RVec>, Vec<RVec>)> {
    for h in halfspaces {
        if e_basis.iter().any(|e| !dot(h, e).is_zero()) {
            return Err(Error::NotContaining);
        }
    }
    let w = null_space(e_basis, d);
    let projected = halfspaces.iter().map(|h| w.iter().map(|wj| dot(h, wj)).collect()).collect();
    Ok((projected, w))
}

/// Like project_out, but the coordinate frame on the complement is chosen so
/// that the last coordinate of the image equals x_d of the source. Requires
/// E ⊆ {x_d = 0}.
pub fn project_out_keeping_last(
    halfspaces: &[RVec],
    e_basis: &[RVec],
    d: usize,
) -> Result<(Vec<RVec>, Vec<RVec>)> {
    if e_basis.iter().any(|e| !e[d - 1].is_zero()) {
        return Err(Error::PreconditionViolated(
            "subspace must lie in the last coordinate hyperplane",
        ));
    }
    for h in halfspaces {
        if e_basis.iter().any(|e| !dot(h, e).is_zero()) {
            return Err(Error::NotContaining);
        }
    }
    let mut e_d = crate::rat::zeros(d);
    e_d[d - 1] = Rat::from_integer(1.into());
    let ann = null_space(e_basis, d);
    // Frame: vectors of the annihilator extending e_d to a basis, e_d last.
    let mut frame: Vec<RVec> = Vec::new();
    for cand in &ann {
        let mut trial = frame.clone();
        trial.push(e_d.clone());
        let r_with_ed = rank(&trial);
        trial.push(cand.clone());
        if rank(&trial) > r_with_ed {
            frame.push(cand.clone());
        }
    }
    frame.push(e_d);
    let m = frame.len();
    debug_assert_eq!(m, d - e_basis.len());
    // Coordinates of each halfspace normal in the frame: solve Σ α_i f_i = a.
    let rows: Vec<RVec> =
        (0..d).map(|coord| frame.iter().map(|f| f[coord].clone()).collect()).collect();
    let mut projected = Vec::with_capacity(halfspaces.len());
    for h in halfspaces {
        match crate::linalg::solve(&rows, h) {
            crate::linalg::SolveOutcome::Unique(alpha) => projected.push(alpha),
            _ => unreachable!("h vanishes on E, so it lies in span(frame)"),
        }
    }
    Ok((projected, frame))
}
