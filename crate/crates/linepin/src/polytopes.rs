//! Convex polytopes touching the axis, and the pinning decision for
//! families of such bodies.
//!
//! A body meeting the axis in a single boundary point constrains nearby
//! transversals exactly like one or two oriented tangent lines through the
//! contact point, so families of tangent bodies reduce to constraint
//! families. Bodies the axis passes through the interior of constrain
//! nothing locally and are dropped with a notice. Bodies carrying the axis
//! inside a boundary facet ("wedges") block a whole interval of escape
//! directions instead of a halfspace of them; for families whose remaining
//! members confine escapes to the flat of axis-meeting lines, an exact
//! angular sweep decides pinning.

use num_traits::{One, Signed, Zero};

use crate::cone::cone_from_halfspaces;
use crate::linespace::{eta_of, is_horizontal, Constraint, LineCoords};
use crate::lp::{hulls_intersect, point_in_hull, simplex_max, LpOutcome};
use crate::pinning::{
    decide_pinning, q_sign_on_cone, verify_escape, EscapeCertificate, IsolationCase,
    PinningVerdict, QSign,
};
use crate::rat::{dot, is_zero_vec, neg, primitive, rat, sub, RVec, Rat};
use crate::{Error, Result};

/// A bounded convex body, stored as its extreme points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexPolytope {
    verts: Vec<RVec>,
}

impl ConvexPolytope {
    /// Builds the hull of the given points, keeping only extreme ones
    /// (first occurrence order).
    pub fn new(points: Vec<RVec>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::PreconditionViolated("a polytope needs at least one point"));
        }
        for p in &points {
            if p.len() != 3 {
                return Err(Error::DimensionMismatch { expected: 3, got: p.len() });
            }
        }
        let mut dedup: Vec<RVec> = Vec::new();
        for p in points {
            if !dedup.contains(&p) {
                dedup.push(p);
            }
        }
        let verts: Vec<RVec> = dedup
            .iter()
            .enumerate()
            .filter(|(i, p)| {
                let others: Vec<RVec> = dedup
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| j != i)
                    .map(|(_, q)| q.clone())
                    .collect();
                others.is_empty() || !point_in_hull(p, &others)
            })
            .map(|(_, p)| p.clone())
            .collect();
        Ok(ConvexPolytope { verts })
    }

    pub fn vertices(&self) -> &[RVec] {
        &self.verts
    }

    pub fn dim(&self) -> usize {
        let diffs: Vec<RVec> = self.verts[1..].iter().map(|v| sub(v, &self.verts[0])).collect();
        crate::linalg::rank(&diffs)
    }

    pub fn contains(&self, p: &RVec) -> bool {
        point_in_hull(p, &self.verts)
    }

    /// z-interval of the axis section {z : (0,0,z) ∈ P}, if nonempty.
    fn axis_section(&self) -> Option<(Rat, Rat)> {
        let n = self.verts.len();
        let rows: Vec<RVec> = vec![
            self.verts.iter().map(|v| v[0].clone()).collect(),
            self.verts.iter().map(|v| v[1].clone()).collect(),
            vec![Rat::one(); n],
        ];
        let rhs = vec![Rat::zero(), Rat::zero(), Rat::one()];
        let zobj: RVec = self.verts.iter().map(|v| v[2].clone()).collect();
        let hi = match simplex_max(&zobj, &rows, &rhs) {
            LpOutcome::Optimal { value, .. } => value,
            LpOutcome::Infeasible => return None,
            LpOutcome::Unbounded => unreachable!("the barycentric simplex is bounded"),
        };
        let lo = match simplex_max(&neg(&zobj), &rows, &rhs) {
            LpOutcome::Optimal { value, .. } => -value,
            _ => unreachable!("feasibility was just established"),
        };
        Some((lo, hi))
    }

    /// Outward facet halfspaces m·x ≤ c of a full-dimensional polytope.
    fn facet_planes(&self) -> Vec<(RVec, Rat)> {
        let n = self.verts.len();
        let mut out: Vec<(RVec, Rat)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = sub(&self.verts[j], &self.verts[i]);
                    let b = sub(&self.verts[k], &self.verts[i]);
                    let m = vec![
                        &a[1] * &b[2] - &a[2] * &b[1],
                        &a[2] * &b[0] - &a[0] * &b[2],
                        &a[0] * &b[1] - &a[1] * &b[0],
                    ];
                    if is_zero_vec(&m) {
                        continue;
                    }
                    let c = dot(&m, &self.verts[i]);
                    let mut above = false;
                    let mut below = false;
                    for v in &self.verts {
                        let s = dot(&m, v) - &c;
                        if s.is_positive() {
                            above = true;
                        } else if s.is_negative() {
                            below = true;
                        }
                    }
                    if above && below {
                        continue;
                    }
                    let (m, c) = if above { (neg(&m), -c) } else { (m, c) };
                    let mut scaled = m.clone();
                    scaled.push(c.clone());
                    let scaled = primitive(&scaled);
                    let plane = (scaled[..3].to_vec(), scaled[3].clone());
                    if !out.contains(&plane) {
                        out.push(plane);
                    }
                }
            }
        }
        out
    }

    /// Vertex index pairs forming edges of a full-dimensional polytope: a
    /// pair lying on two facets with independent normals spans a 1-face,
    /// and extreme points of a 1-face are its endpoints.
    fn edges(&self) -> Vec<(usize, usize)> {
        let facets = self.facet_planes();
        let mut out = Vec::new();
        for i in 0..self.verts.len() {
            for j in i + 1..self.verts.len() {
                let active: Vec<RVec> = facets
                    .iter()
                    .filter(|(m, c)| dot(m, &self.verts[i]) == *c && dot(m, &self.verts[j]) == *c)
                    .map(|(m, _)| m.clone())
                    .collect();
                if crate::linalg::rank(&active) >= 2 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Affine-hull plane (m, c) with m·x = c on P, for a planar polytope.
    fn hull_plane(&self) -> (RVec, Rat) {
        let diffs: Vec<RVec> = self.verts[1..].iter().map(|v| sub(v, &self.verts[0])).collect();
        let ns = crate::linalg::null_space(&diffs, 3);
        assert_eq!(ns.len(), 1, "a planar polytope has a unique hull plane");
        let m = primitive(&ns[0]);
        let c = dot(&m, &self.verts[0]);
        (m, c)
    }
}

/// How the axis meets a body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TangencyKind {
    /// The axis misses the body.
    Miss,
    /// The axis passes through the interior: no local constraint.
    InteriorIntersect,
    /// The axis lies inside a boundary plane of the body (or the body is
    /// too flat to separate): candidate for the wedge decision path.
    CoplanarFacet,
    /// Single contact point in the relative interior of an edge.
    EdgeInterior { z: Rat, endpoints: (usize, usize) },
    /// Single contact point at a vertex; `incident` are the neighboring
    /// vertex indices along edges at the contact.
    VertexContact { vertex: usize, incident: Vec<usize> },
}

/// Classifies the contact between the axis and the body.
pub fn tangency(p: &ConvexPolytope) -> TangencyKind {
    let Some((z_lo, z_hi)) = p.axis_section() else {
        return TangencyKind::Miss;
    };
    let dim = p.dim();
    if dim <= 1 {
        return TangencyKind::CoplanarFacet;
    }
    if dim == 2 {
        let (m, c) = p.hull_plane();
        if m[2].is_zero() && c.is_zero() {
            return TangencyKind::CoplanarFacet;
        }
        // The axis crosses the hull plane in exactly one point.
        assert!(!m[2].is_zero(), "an axis-parallel plane off the axis has no section");
        let zc = &c / &m[2];
        let pt = vec![Rat::zero(), Rat::zero(), zc.clone()];
        return locate_in_polygon(p, &pt);
    }
    for (m, c) in p.facet_planes() {
        if m[2].is_zero() && c.is_zero() {
            return TangencyKind::CoplanarFacet;
        }
    }
    if z_lo < z_hi {
        return TangencyKind::InteriorIntersect;
    }
    let pt = vec![Rat::zero(), Rat::zero(), z_lo.clone()];
    if let Some(v) = p.verts.iter().position(|v| *v == pt) {
        let incident: Vec<usize> = p
            .edges()
            .into_iter()
            .filter_map(|(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        assert!(!incident.is_empty());
        return TangencyKind::VertexContact { vertex: v, incident };
    }
    for (a, b) in p.edges() {
        if on_open_segment(&p.verts[a], &p.verts[b], &pt) {
            return TangencyKind::EdgeInterior { z: z_lo, endpoints: (a, b) };
        }
    }
    unreachable!("a single-point contact lies on an edge or vertex, never inside a facet")
}

fn on_open_segment(a: &RVec, b: &RVec, x: &RVec) -> bool {
    // x = a + t(b − a) for t ∈ (0, 1), checked coordinatewise.
    let d = sub(b, a);
    let r = sub(x, a);
    let mut t: Option<Rat> = None;
    for i in 0..3 {
        if d[i].is_zero() {
            if !r[i].is_zero() {
                return false;
            }
        } else {
            let ti = &r[i] / &d[i];
            match &t {
                None => t = Some(ti),
                Some(t0) if *t0 == ti => {}
                _ => return false,
            }
        }
    }
    matches!(t, Some(t) if t.is_positive() && t < Rat::one())
}

/// Point location inside a planar polytope whose plane the axis crosses at
/// `pt` (already known to satisfy pt ∈ P when reached with pt ∈ section).
fn locate_in_polygon(p: &ConvexPolytope, pt: &RVec) -> TangencyKind {
    if let Some(v) = p.verts.iter().position(|v| v == pt) {
        let incident = polygon_neighbors(p, v);
        return TangencyKind::VertexContact { vertex: v, incident };
    }
    for (a, b) in polygon_edges(p) {
        if on_open_segment(&p.verts[a], &p.verts[b], pt) {
            return TangencyKind::EdgeInterior { z: pt[2].clone(), endpoints: (a, b) };
        }
    }
    TangencyKind::InteriorIntersect
}

/// Edges of a planar polytope: vertex pairs with every other vertex weakly
/// on one side of their line (within the hull plane), and strictly so for
/// at least one.
fn polygon_edges(p: &ConvexPolytope) -> Vec<(usize, usize)> {
    let (m, _) = p.hull_plane();
    let n = p.verts.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = sub(&p.verts[j], &p.verts[i]);
            // In-plane normal to the edge direction: m × d.
            let nrm = vec![
                &m[1] * &d[2] - &m[2] * &d[1],
                &m[2] * &d[0] - &m[0] * &d[2],
                &m[0] * &d[1] - &m[1] * &d[0],
            ];
            let mut pos = false;
            let mut negs = false;
            for (k, v) in p.verts.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                let s = dot(&nrm, &sub(v, &p.verts[i]));
                if s.is_positive() {
                    pos = true;
                } else if s.is_negative() {
                    negs = true;
                }
            }
            if !(pos && negs) {
                out.push((i, j));
            }
        }
    }
    out
}

fn polygon_neighbors(p: &ConvexPolytope, v: usize) -> Vec<usize> {
    polygon_edges(p)
        .into_iter()
        .filter_map(|(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
        .collect()
}

fn rot90(x: &Rat, y: &Rat) -> (Rat, Rat) {
    (-y.clone(), x.clone())
}

/// Constraint for a contact along the edge through `pt` with 3D direction
/// `d3`: oriented so that probes displaced to the body side satisfy it.
fn edge_constraint(p: &ConvexPolytope, z: &Rat, d3: &RVec) -> Result<Constraint> {
    let (dx, dy) = (&d3[0], &d3[1]);
    assert!(
        !(dx.is_zero() && dy.is_zero()),
        "a tangent edge through a single axis point is never vertical"
    );
    let (n0x, n0y) = rot90(dx, dy);
    // The plane through the axis and the edge has horizontal normal n0;
    // the body lies weakly on one side of it.
    let mut side = Rat::zero();
    for v in &p.verts {
        let s = &n0x * &v[0] + &n0y * &v[1];
        if !s.is_zero() {
            side = s;
            break;
        }
    }
    assert!(!side.is_zero(), "a full-dimensional body leaves the contact plane");
    let (nx, ny) = if side.is_positive() { (n0x, n0y) } else { (-n0x, -n0y) };
    debug_assert!(
        p.verts.iter().all(|v| !(&nx * &v[0] + &ny * &v[1]).is_negative()),
        "tangent bodies lie on one side of the contact plane"
    );
    let c = dy * &nx - dx * &ny;
    assert!(!c.is_zero());
    let dir = if c.is_negative() { d3.clone() } else { neg(d3) };
    Constraint::new(z.clone(), [dir[0].clone(), dir[1].clone(), dir[2].clone()])
}

/// Constraints for a vertex contact: one per extreme ray of the projected
/// cone of incident edge directions (which is pointed and 2-dimensional
/// for bodies in general position).
fn vertex_constraints(p: &ConvexPolytope, v: usize, incident: &[usize]) -> Result<Vec<Constraint>> {
    let dirs: Vec<RVec> = incident.iter().map(|&w| sub(&p.verts[w], &p.verts[v])).collect();
    let mut rays: Vec<(Rat, Rat)> = Vec::new();
    let mut ray_edges: Vec<Vec<usize>> = Vec::new();
    for (k, d) in dirs.iter().enumerate() {
        assert!(
            !(d[0].is_zero() && d[1].is_zero()),
            "no edge at a single-point contact vertex is vertical"
        );
        let h = primitive(&[d[0].clone(), d[1].clone()]);
        let key = (h[0].clone(), h[1].clone());
        if let Some(pos) = rays.iter().position(|r| *r == key) {
            ray_edges[pos].push(k);
        } else {
            rays.push(key);
            ray_edges.push(vec![k]);
        }
    }
    let mut extremes: Vec<usize> = Vec::new();
    for (ri, r) in rays.iter().enumerate() {
        let (nx, ny) = rot90(&r.0, &r.1);
        let mut pos = false;
        let mut negs = false;
        for other in &rays {
            let s = &nx * &other.0 + &ny * &other.1;
            if s.is_positive() {
                pos = true;
            } else if s.is_negative() {
                negs = true;
            }
        }
        if !(pos && negs) {
            extremes.push(ri);
        }
    }
    if extremes.len() < 2 {
        return Err(Error::GenericityFailure(
            "the silhouette cone at the contact vertex degenerates to a single ray",
        ));
    }
    assert_eq!(extremes.len(), 2, "a pointed planar cone has two extreme rays");
    let mut out = Vec::new();
    for pos in 0..2 {
        let ri = extremes[pos];
        let rj = extremes[1 - pos];
        if ray_edges[ri].len() != 1 {
            return Err(Error::GenericityFailure(
                "two distinct edges project onto the same silhouette ray",
            ));
        }
        let d3 = &dirs[ray_edges[ri][0]];
        let (n0x, n0y) = rot90(&rays[ri].0, &rays[ri].1);
        let inward = &n0x * &rays[rj].0 + &n0y * &rays[rj].1;
        assert!(!inward.is_zero());
        let (nx, ny) = if inward.is_positive() { (n0x, n0y) } else { (-n0x, -n0y) };
        let c = &d3[1] * &nx - &d3[0] * &ny;
        assert!(!c.is_zero());
        let dir = if c.is_negative() { d3.clone() } else { neg(d3) };
        out.push(Constraint::new(
            p.verts[v][2].clone(),
            [dir[0].clone(), dir[1].clone(), dir[2].clone()],
        )?);
    }
    Ok(out)
}

/// Tangent-line constraints induced by a body touching the axis in a
/// single boundary point: one for an edge contact, two for a vertex
/// contact. Errors for bodies that do not constrain this way.
pub fn constraints_of_polytope(p: &ConvexPolytope) -> Result<Vec<Constraint>> {
    match tangency(p) {
        TangencyKind::Miss | TangencyKind::InteriorIntersect => Err(Error::NotTangent),
        TangencyKind::CoplanarFacet => Err(Error::CoplanarFacetExcluded),
        TangencyKind::EdgeInterior { z, endpoints: (a, b) } => {
            let d3 = sub(&p.verts[b], &p.verts[a]);
            Ok(vec![edge_constraint(p, &z, &d3)?])
        }
        TangencyKind::VertexContact { vertex, incident } => {
            vertex_constraints(p, vertex, &incident)
        }
    }
}

/// A qualified wedge: the body fills the region between two walls through
/// the axis over its full height, near the axis.
struct Wedge {
    walls: [(Rat, Rat); 2],
    z_lo: Rat,
    z_hi: Rat,
}

fn qualify_wedge(p: &ConvexPolytope) -> Result<Wedge> {
    if p.dim() != 3 {
        return Err(Error::UnsupportedWedgeConfiguration(
            "coplanar contact with a body that is not full-dimensional",
        ));
    }
    let facets = p.facet_planes();
    let walls: Vec<&(RVec, Rat)> =
        facets.iter().filter(|(m, c)| m[2].is_zero() && c.is_zero()).collect();
    if walls.len() != 2 {
        return Err(Error::UnsupportedWedgeConfiguration(
            "a wedge needs exactly two facet planes through the axis",
        ));
    }
    let (z_lo, z_hi) = p.axis_section().expect("coplanar bodies meet the axis");
    let vz_lo = p.verts.iter().map(|v| v[2].clone()).min().unwrap();
    let vz_hi = p.verts.iter().map(|v| v[2].clone()).max().unwrap();
    if z_lo != vz_lo || z_hi != vz_hi || z_lo == z_hi {
        return Err(Error::UnsupportedWedgeConfiguration(
            "the axis must span the body's full height",
        ));
    }
    // Near the axis the body must *equal* the wedge region: it already lies
    // inside both walls and the slab, so it suffices that it contains the
    // wedge clipped to the unit box.
    let mut hs: Vec<(RVec, Rat)> = Vec::new();
    for (m, c) in &walls {
        hs.push(((*m).clone(), c.clone()));
    }
    hs.push((vec![rat(0), rat(0), rat(-1)], -z_lo.clone()));
    hs.push((vec![rat(0), rat(0), rat(1)], z_hi.clone()));
    hs.push((vec![rat(1), rat(0), rat(0)], Rat::one()));
    hs.push((vec![rat(-1), rat(0), rat(0)], Rat::one()));
    hs.push((vec![rat(0), rat(1), rat(0)], Rat::one()));
    hs.push((vec![rat(0), rat(-1), rat(0)], Rat::one()));
    for x in region_vertices(&hs) {
        if !p.contains(&x) {
            return Err(Error::UnsupportedWedgeConfiguration(
                "the body must contain a full neighborhood of its axis wedge",
            ));
        }
    }
    Ok(Wedge {
        walls: [
            (walls[0].0[0].clone(), walls[0].0[1].clone()),
            (walls[1].0[0].clone(), walls[1].0[1].clone()),
        ],
        z_lo,
        z_hi,
    })
}

/// Vertices of a bounded 3D halfspace intersection, by basis enumeration.
fn region_vertices(hs: &[(RVec, Rat)]) -> Vec<RVec> {
    let mut out: Vec<RVec> = Vec::new();
    let n = hs.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a = vec![hs[i].0.clone(), hs[j].0.clone(), hs[k].0.clone()];
                let b = vec![hs[i].1.clone(), hs[j].1.clone(), hs[k].1.clone()];
                if let crate::linalg::SolveOutcome::Unique(x) = crate::linalg::solve(&a, &b) {
                    if hs.iter().all(|(m, c)| !(dot(m, &x) - c).is_positive()) && !out.contains(&x)
                    {
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

/// If the line with coordinates u (restricted to the axis-meeting flat
/// u₁ = u₄ = 0) crosses the wedge: some height z in the slab where the
/// line's point lies inside both walls.
fn wedge_hit(w: &Wedge, u2: &Rat, u3: &Rat) -> Option<Rat> {
    let mut lo = w.z_lo.clone();
    let mut hi = w.z_hi.clone();
    for (nx, ny) in &w.walls {
        // f(z) = z·n_x·u₃ + (1−z)·n_y·u₂ ≤ 0.
        let alpha = nx * u3 - ny * u2;
        let beta = ny * u2;
        if alpha.is_zero() {
            if beta.is_positive() {
                return None;
            }
        } else {
            let bound = -&beta / &alpha;
            if alpha.is_positive() {
                if bound < hi {
                    hi = bound;
                }
            } else if bound > lo {
                lo = bound;
            }
        }
    }
    if lo <= hi {
        Some((&lo + &hi) / rat(2))
    } else {
        None
    }
}

/// Outcome of the pinning decision for a family of bodies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopePinningReport {
    pub verdict: PinningVerdict,
    /// Members the axis passes through the interior of: they impose no
    /// local constraint and were excluded from the decision.
    pub dropped: Vec<usize>,
}

/// Exact angle-order comparator for nonzero plane vectors.
fn angle_key(v: &(Rat, Rat)) -> (u8, Rat, Rat) {
    let quadrant =
        match (v.0.is_positive(), v.0.is_negative(), v.1.is_positive(), v.1.is_negative()) {
            (true, _, false, false) => 0u8, // +x axis
            (true, _, true, _) => 1,
            (false, false, true, _) => 2, // +y axis
            (_, true, true, _) => 3,
            (_, true, false, false) => 4, // −x axis
            (_, true, _, true) => 5,
            (false, false, _, true) => 6, // −y axis
            (true, _, _, true) => 7,
            _ => unreachable!("zero vector has no angle"),
        };
    // Within a quadrant, order by slope y/x (or −x/y on axes-free spans).
    if v.0.is_zero() {
        (quadrant, Rat::zero(), Rat::zero())
    } else {
        (quadrant, &v.1 / &v.0, Rat::zero())
    }
}

/// Decides pinning for a family of bodies touching or containing the axis.
pub fn decide_polytope_pinning(bodies: &[ConvexPolytope]) -> Result<PolytopePinningReport> {
    if bodies.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut dropped = Vec::new();
    let mut constraints: Vec<Constraint> = Vec::new();
    let mut wedge_bodies: Vec<usize> = Vec::new();
    for (i, p) in bodies.iter().enumerate() {
        match tangency(p) {
            TangencyKind::Miss => return Err(Error::NotATransversal),
            TangencyKind::InteriorIntersect => dropped.push(i),
            TangencyKind::CoplanarFacet => wedge_bodies.push(i),
            TangencyKind::EdgeInterior { .. } | TangencyKind::VertexContact { .. } => {
                constraints.extend(constraints_of_polytope(p)?);
            }
        }
    }
    if wedge_bodies.is_empty() {
        if constraints.is_empty() {
            // Every body is crossed through the interior: all nearby lines
            // remain transversals.
            let u: LineCoords = [rat(0), rat(1), rat(0), rat(0)];
            return Ok(PolytopePinningReport {
                verdict: PinningVerdict::NotPinned(EscapeCertificate::DirectWitness {
                    u,
                    scalable: true,
                }),
                dropped,
            });
        }
        let verdict = decide_pinning(&constraints)?;
        return Ok(PolytopePinningReport { verdict, dropped });
    }

    let wedges: Vec<Wedge> =
        wedge_bodies.iter().map(|&i| qualify_wedge(&bodies[i])).collect::<Result<_>>()?;
    if !constraints.iter().all(is_horizontal) {
        return Err(Error::UnsupportedWedgeConfiguration(
            "slanted tangencies combined with wedges are unsupported",
        ));
    }
    let etas: Vec<RVec> = constraints.iter().map(|g| eta_of(g).to_vec()).collect();
    let k4 = cone_from_halfspaces(&etas, 4)?;
    let gens = k4.generators();
    if !gens.iter().all(|g| g[0].is_zero() && g[3].is_zero()) {
        return Err(Error::UnsupportedWedgeConfiguration(
            "tangency constraints must confine escape directions to the axis-meeting flat",
        ));
    }

    // Candidate escape directions (u₂, u₃) in the sector cut by the
    // constraints: wall/endpoint boundary zeros, sector rays, coordinate
    // seeds, plus mediants of angularly adjacent survivors. The hit
    // pattern is piecewise constant between these.
    let in_sector = |u2: &Rat, u3: &Rat| -> bool {
        etas.iter().all(|e| !(&e[1] * u2 + &e[2] * u3).is_positive())
    };
    let mut cands: Vec<(Rat, Rat)> = Vec::new();
    let push_cand = |cands: &mut Vec<(Rat, Rat)>, x: Rat, y: Rat| {
        if x.is_zero() && y.is_zero() {
            return;
        }
        let p = primitive(&[x, y]);
        let key = (p[0].clone(), p[1].clone());
        if !cands.contains(&key) {
            cands.push(key);
        }
    };
    for w in &wedges {
        for (nx, ny) in &w.walls {
            for z in [&w.z_lo, &w.z_hi] {
                // f(z) = 0 along direction (u₂, u₃) ∝ (z·n_x, −(1−z)·n_y).
                let a = z * nx;
                let b = -(Rat::one() - z) * ny;
                push_cand(&mut cands, a, b);
                push_cand(&mut cands, Rat::zero() - z * nx, (Rat::one() - z) * ny);
            }
        }
    }
    for g in &gens {
        push_cand(&mut cands, g[1].clone(), g[2].clone());
    }
    for (x, y) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
        push_cand(&mut cands, rat(x), rat(y));
    }
    cands.retain(|(x, y)| in_sector(x, y));
    cands.sort_by(|a, b| angle_key(a).partial_cmp(&angle_key(b)).unwrap());
    let base = cands.clone();
    for i in 0..base.len() {
        let a = &base[i];
        let b = &base[(i + 1) % base.len()];
        let mx = &a.0 + &b.0;
        let my = &a.1 + &b.1;
        if (mx.is_zero() && my.is_zero()) || !in_sector(&mx, &my) {
            continue;
        }
        push_cand(&mut cands, mx, my);
    }

    for (u2, u3) in &cands {
        let hits: Vec<Option<Rat>> = wedges.iter().map(|w| wedge_hit(w, u2, u3)).collect();
        if hits.iter().all(|h| h.is_some()) {
            let u: LineCoords = [rat(0), u2.clone(), u3.clone(), rat(0)];
            let cert = EscapeCertificate::DirectWitness { u: u.clone(), scalable: true };
            debug_assert!(verify_escape(&constraints, &cert));
            #[cfg(debug_assertions)]
            for (wi, h) in wedge_bodies.iter().zip(&hits) {
                let z = h.clone().unwrap();
                let scale = {
                    let m1 = (&z * u3).abs();
                    let m2 = ((Rat::one() - &z) * u2).abs();
                    let m = if m1 > m2 { m1 } else { m2 };
                    Rat::one() / (m + rat(1))
                };
                let pt = vec![&scale * &z * u3, &scale * (Rat::one() - &z) * u2, z];
                debug_assert!(bodies[*wi].contains(&pt), "escape direction must cross the wedge");
            }
            return Ok(PolytopePinningReport { verdict: PinningVerdict::NotPinned(cert), dropped });
        }
    }

    let dim_e = k4.hull_dim();
    let case = match q_sign_on_cone(&k4) {
        QSign::StrictlyNegative => IsolationCase::NegativeSide(dim_e),
        QSign::ZeroCone => IsolationCase::PositiveSide(0),
        QSign::StrictlyPositive | QSign::Indefinite => IsolationCase::PositiveSide(dim_e),
    };
    Ok(PolytopePinningReport { verdict: PinningVerdict::Pinned(case), dropped })
}

/// Greedy reduction of a pinning family of bodies to an irreducible one.
/// Without wedge members the survivors number at most 8, and at most 6
/// when additionally pairwise disjoint.
pub fn minimize_polytope_pinning(bodies: &[ConvexPolytope]) -> Result<Vec<usize>> {
    let report = decide_polytope_pinning(bodies)?;
    if !matches!(report.verdict, PinningVerdict::Pinned(_)) {
        return Err(Error::NotAPinning);
    }
    let mut kept: Vec<usize> = (0..bodies.len()).collect();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.remove(i);
        if trial.is_empty() {
            i += 1;
            continue;
        }
        let sub: Vec<ConvexPolytope> = trial.iter().map(|&k| bodies[k].clone()).collect();
        match decide_polytope_pinning(&sub) {
            Ok(r) if matches!(r.verdict, PinningVerdict::Pinned(_)) => kept = trial,
            _ => i += 1,
        }
    }
    let has_wedge =
        kept.iter().any(|&k| matches!(tangency(&bodies[k]), TangencyKind::CoplanarFacet));
    if !has_wedge {
        assert!(kept.len() <= 8, "irreducible tangent pinnings have at most 8 bodies");
        let disjoint = kept.iter().enumerate().all(|(a, &i)| {
            kept.iter()
                .skip(a + 1)
                .all(|&j| !hulls_intersect(bodies[i].vertices(), bodies[j].vertices()))
        });
        if disjoint {
            assert!(
                kept.len() <= 6,
                "irreducible pinnings by disjoint tangent bodies have at most 6 members"
            );
        }
    }
    Ok(kept)
}

/// Checks whether small positive multiples of the line `u` escape every
/// member of a body family: each tangency constraint must admit `u` under
/// scaling and `u` must cross every coplanar-contact wedge. Members crossed
/// through the interior are ignored; a missed body is an error.
pub fn verify_polytope_escape(bodies: &[ConvexPolytope], u: &LineCoords) -> Result<bool> {
    if u.iter().all(|x| x.is_zero()) {
        return Ok(false);
    }
    let mut constraints: Vec<Constraint> = Vec::new();
    let mut wedges: Vec<Wedge> = Vec::new();
    for p in bodies {
        match tangency(p) {
            TangencyKind::Miss => return Err(Error::NotATransversal),
            TangencyKind::InteriorIntersect => {}
            TangencyKind::CoplanarFacet => wedges.push(qualify_wedge(p)?),
            TangencyKind::EdgeInterior { .. } | TangencyKind::VertexContact { .. } => {
                constraints.extend(constraints_of_polytope(p)?);
            }
        }
    }
    if !constraints.is_empty() {
        let cert = EscapeCertificate::DirectWitness { u: u.clone(), scalable: true };
        if !verify_escape(&constraints, &cert) {
            return Ok(false);
        }
    }
    if !wedges.is_empty() {
        if !u[0].is_zero() || !u[3].is_zero() {
            // Off the axis-meeting flat the crossing pattern is not
            // scale-invariant, so only flat directions are certifiable.
            return Ok(false);
        }
        if wedges.iter().any(|w| wedge_hit(w, &u[1], &u[2]).is_none()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn poly(pts: &[[i64; 3]]) -> ConvexPolytope {
        ConvexPolytope::new(pts.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn tetra_edge_contact_gives_one_constraint() {
        let p = poly(&[[0, -1, 1], [0, 1, 1], [1, 0, 0], [1, 0, 2]]);
        match tangency(&p) {
            TangencyKind::EdgeInterior { z, .. } => assert_eq!(z, rat(1)),
            other => panic!("expected edge contact, got {other:?}"),
        }
        let cs = constraints_of_polytope(&p).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].lambda, rat(1));
        assert_eq!(cs[0].dir, [rat(0), rat(-1), rat(0)]);
    }

    #[test]
    fn apex_contact_gives_two_constraints() {
        let p = poly(&[[0, 0, 1], [1, -1, 0], [1, 1, 0], [3, -1, 0], [3, 1, 0]]);
        match tangency(&p) {
            TangencyKind::VertexContact { vertex, .. } => assert_eq!(vertex, 0),
            other => panic!("expected vertex contact, got {other:?}"),
        }
        let cs = constraints_of_polytope(&p).unwrap();
        assert_eq!(cs.len(), 2);
        for c in &cs {
            assert_eq!(c.lambda, rat(1));
        }
        let dirs: Vec<_> = cs.iter().map(|c| c.dir.clone()).collect();
        assert!(dirs.contains(&[rat(-1), rat(-1), rat(1)]));
        assert!(dirs.contains(&[rat(1), rat(-1), rat(-1)]));
    }

    #[test]
    fn crossing_and_missing_bodies() {
        let cube = poly(&[
            [-1, -1, -1],
            [-1, -1, 1],
            [-1, 1, -1],
            [-1, 1, 1],
            [1, -1, -1],
            [1, -1, 1],
            [1, 1, -1],
            [1, 1, 1],
        ]);
        assert_eq!(tangency(&cube), TangencyKind::InteriorIntersect);
        assert!(matches!(constraints_of_polytope(&cube), Err(Error::NotTangent)));
        let off = poly(&[
            [1, -1, -1],
            [1, -1, 1],
            [1, 1, -1],
            [1, 1, 1],
            [2, -1, -1],
            [2, -1, 1],
            [2, 1, -1],
            [2, 1, 1],
        ]);
        assert_eq!(tangency(&off), TangencyKind::Miss);
    }

    #[test]
    fn boundary_quadrant_box_is_coplanar() {
        let p = poly(&[
            [0, 0, 0],
            [0, 0, 1],
            [-1, 0, 0],
            [-1, 0, 1],
            [0, -1, 0],
            [0, -1, 1],
            [-1, -1, 0],
            [-1, -1, 1],
        ]);
        assert_eq!(tangency(&p), TangencyKind::CoplanarFacet);
        assert!(matches!(constraints_of_polytope(&p), Err(Error::CoplanarFacetExcluded)));
    }

    #[test]
    fn tangent_bodies_reproduce_the_tangent_pinning() {
        // Thin tetrahedra tangent along the lines of the four-member
        // pinning held by a slanted tangent.
        let p0 = poly(&[[100, 0, 1], [-100, 0, -1], [0, -1, 1], [0, -1, -1]]);
        let p1 = poly(&[[-1, -1, 1], [1, 1, 1], [-1, 1, 0], [-1, 1, 2]]);
        let p2 = poly(&[[1, 2, 2], [-1, -2, 2], [2, -1, 1], [2, -1, 3]]);
        let p3 = poly(&[[-1, -3, 3], [1, 3, 3], [-3, 1, 2], [-3, 1, 4]]);
        let cs0 = constraints_of_polytope(&p0).unwrap();
        assert_eq!(cs0[0].lambda, rat(0));
        assert_eq!(cs0[0].dir, [rat(-100), rat(0), rat(-1)]);
        let bodies = vec![p0, p1, p2, p3];
        let report = decide_polytope_pinning(&bodies).unwrap();
        assert_eq!(report.verdict, PinningVerdict::Pinned(IsolationCase::NegativeSide(1)));
        assert!(report.dropped.is_empty());
        assert_eq!(minimize_polytope_pinning(&bodies).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn interior_members_are_dropped_with_notice() {
        let cube = poly(&[
            [-1, -1, -1],
            [-1, -1, 1],
            [-1, 1, -1],
            [-1, 1, 1],
            [1, -1, -1],
            [1, -1, 1],
            [1, 1, -1],
            [1, 1, 1],
        ]);
        let report = decide_polytope_pinning(&[cube]).unwrap();
        assert_eq!(report.dropped, vec![0]);
        assert!(matches!(report.verdict, PinningVerdict::NotPinned(_)));
    }

    #[test]
    fn polygon_contacts() {
        // A slanted square touching the axis at an edge midpoint.
        let p = poly(&[[0, -1, 1], [0, 1, 1], [2, -1, 2], [2, 1, 2]]);
        assert_eq!(p.dim(), 2);
        match tangency(&p) {
            TangencyKind::EdgeInterior { z, .. } => assert_eq!(z, rat(1)),
            other => panic!("expected polygon edge contact, got {other:?}"),
        }
        let cs = constraints_of_polytope(&p).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].lambda, rat(1));
        // A polygon containing the axis inside its plane section.
        let q = poly(&[[-1, -1, 3], [-1, 1, 3], [1, -1, 1], [1, 1, 1]]);
        assert_eq!(tangency(&q), TangencyKind::InteriorIntersect);
    }

    #[test]
    fn wedge_qualification_shapes() {
        // Quarter-space wedge: walls x ≤ 0 and y ≤ 0 over z ∈ [0, 1].
        let w = poly(&[
            [0, 0, 0],
            [0, 0, 1],
            [-2, 0, 0],
            [-2, 0, 1],
            [0, -2, 0],
            [0, -2, 1],
            [-2, -2, 0],
            [-2, -2, 1],
        ]);
        assert!(qualify_wedge(&w).is_ok());
        // A sliver too thin to contain the unit-box wedge neighborhood.
        let thin = ConvexPolytope::new(vec![
            vec![rat(0), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(1)],
            vec![ratio(-1, 2), rat(0), rat(0)],
            vec![ratio(-1, 2), rat(0), rat(1)],
            vec![rat(0), ratio(-1, 2), rat(0)],
            vec![rat(0), ratio(-1, 2), rat(1)],
        ])
        .unwrap();
        assert_eq!(tangency(&thin), TangencyKind::CoplanarFacet);
        assert!(qualify_wedge(&thin).is_err());
    }

    #[test]
    fn hull_reduces_to_extreme_points() {
        let p = ConvexPolytope::new(vec![
            vec![rat(0), rat(0), rat(0)],
            vec![rat(2), rat(0), rat(0)],
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(2), rat(0)],
            vec![rat(0), rat(0), rat(2)],
            vec![ratio(1, 2), ratio(1, 2), ratio(1, 2)],
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
    }
}
