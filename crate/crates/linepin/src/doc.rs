//! JSON document format shared by the command line tool and the C API.
//!
//! Rationals travel as strings ("3", "-1/2") so no precision is lost and
//! documents stay hand-editable. Struct field order fixes the byte layout
//! of every serialized object.

use serde::{Deserialize, Serialize};

use crate::linespace::Constraint;
use crate::pinning::{EscapeCertificate, IsolationCase, PinningVerdict};
use crate::polytopes::{ConvexPolytope, PolytopePinningReport};
use crate::rat::{fmt_rat, parse_rat, RVec, Rat};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstraintRepr {
    pub lambda: String,
    pub dir: Vec<String>,
}

/// Top-level input/output document. Sections are independent; a tool reads
/// the ones it needs and rejects the document if they are missing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<ConstraintRepr>,
    /// Bodies as vertex lists.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polytopes: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub halfspaces: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

impl Document {
    pub fn empty() -> Self {
        Document {
            schema: SCHEMA_VERSION,
            constraints: Vec::new(),
            polytopes: Vec::new(),
            points: Vec::new(),
            halfspaces: Vec::new(),
            dim: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                doc.schema
            )));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serialization cannot fail")
    }

    pub fn constraint_family(&self) -> Result<Vec<Constraint>> {
        self.constraints
            .iter()
            .map(|c| {
                if c.dir.len() != 3 {
                    return Err(Error::DimensionMismatch { expected: 3, got: c.dir.len() });
                }
                Constraint::new(
                    parse_rat(&c.lambda)?,
                    [parse_rat(&c.dir[0])?, parse_rat(&c.dir[1])?, parse_rat(&c.dir[2])?],
                )
            })
            .collect()
    }

    pub fn polytope_family(&self) -> Result<Vec<ConvexPolytope>> {
        self.polytopes
            .iter()
            .map(|verts| {
                let pts = verts.iter().map(|v| parse_vector(v)).collect::<Result<Vec<RVec>>>()?;
                ConvexPolytope::new(pts)
            })
            .collect()
    }

    pub fn point_set(&self) -> Result<Vec<RVec>> {
        self.points.iter().map(|v| parse_vector(v)).collect()
    }

    pub fn halfspace_set(&self) -> Result<Vec<RVec>> {
        self.halfspaces.iter().map(|v| parse_vector(v)).collect()
    }

    pub fn with_constraints(family: &[Constraint]) -> Self {
        let mut doc = Document::empty();
        doc.constraints = family
            .iter()
            .map(|g| ConstraintRepr {
                lambda: fmt_rat(&g.lambda),
                dir: g.dir.iter().map(fmt_rat).collect(),
            })
            .collect();
        doc
    }

    pub fn with_polytopes(bodies: &[ConvexPolytope]) -> Self {
        let mut doc = Document::empty();
        doc.polytopes =
            bodies.iter().map(|p| p.vertices().iter().map(|v| strings_of(v)).collect()).collect();
        doc
    }
}

fn parse_vector(strings: &[String]) -> Result<RVec> {
    strings.iter().map(|s| parse_rat(s)).collect()
}

pub fn strings_of(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum WitnessRepr {
    Direct { u: Vec<String>, scalable: bool },
    Segment { p: Vec<String>, q: Vec<String> },
}

#[derive(Serialize)]
struct VerdictRepr {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<&'static str>,
    #[serde(rename = "dimE", skip_serializing_if = "Option::is_none")]
    dim_e: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dropped: Option<Vec<usize>>,
}

fn verdict_repr(verdict: &PinningVerdict) -> VerdictRepr {
    let mut repr =
        VerdictRepr { verdict: "pinned", case: None, dim_e: None, witness: None, dropped: None };
    match verdict {
        PinningVerdict::Pinned(IsolationCase::TransversalLine) => {
            repr.case = Some("transversal_line");
        }
        PinningVerdict::Pinned(IsolationCase::PositiveSide(d)) => {
            repr.case = Some("positive_side");
            repr.dim_e = Some(*d);
        }
        PinningVerdict::Pinned(IsolationCase::NegativeSide(d)) => {
            repr.case = Some("negative_side");
            repr.dim_e = Some(*d);
        }
        PinningVerdict::NotPinned(cert) => {
            repr.verdict = "not_pinned";
            repr.witness = Some(match cert {
                EscapeCertificate::DirectWitness { u, scalable } => {
                    WitnessRepr::Direct { u: strings_of(&u[..]), scalable: *scalable }
                }
                EscapeCertificate::SegmentWitness { p, q } => {
                    WitnessRepr::Segment { p: strings_of(&p[..]), q: strings_of(&q[..]) }
                }
            });
        }
    }
    repr
}

/// Deterministic one-line JSON rendering of a pinning verdict.
pub fn verdict_json(verdict: &PinningVerdict) -> String {
    serde_json::to_string(&verdict_repr(verdict)).expect("verdict serialization cannot fail")
}

/// Same as [`verdict_json`] with the indices of interior-crossed members.
pub fn polytope_report_json(report: &PolytopePinningReport) -> String {
    let mut repr = verdict_repr(&report.verdict);
    repr.dropped = Some(report.dropped.clone());
    serde_json::to_string(&repr).expect("verdict serialization cannot fail")
}
