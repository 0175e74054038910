//! Projective geometry of P³ over Q(ε): points, lines, quadrics,
//! projectivities, cross-ratios and configuration equivalence.

mod binary;
mod cross_ratio;
mod equivalence;
mod line;
mod perm;
mod point;
mod projectivity;
mod quadric;
mod transversal;

use thiserror::Error;

use crate::field::FieldElement;

pub use binary::BinaryQuadratic;
pub use cross_ratio::{
    cross_ratio, cross_ratio_params, cross_ratio_stabilizer, cross_ratio_type, CrossRatio, CrossRatioType,
};
pub use equivalence::{
    collinear_clusters, collinearity_profile, equivalent_configurations, equivalent_configurations_with,
    search_equivalence, CollinearCluster, EquivalenceSearch, SearchOptions,
};
pub use line::{LineRelation, ProjLine};
pub use perm::{Perm4, PermParseError};
pub use point::{LinePoint, PlanePoint, Point, PointParseError, ProjPoint};
pub use projectivity::{
    extend_to_space, fixed_points, in_general_position, involution_with_fixed_points, projectivity1_from_pairs,
    projectivity3_from_frames, Projectivity1, Projectivity3,
};
pub use quadric::{quadric_through_three_skew_lines, quadrics_through, ruling_partner, Quadric};
pub use transversal::{transversal_pair, transversals_to_four_lines, TransversalPair, Transversals};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjError {
    #[error("zero vector is not a projective point")]
    ZeroVector,
    #[error("points coincide")]
    CoincidentPoints,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("points are not pairwise distinct")]
    RepeatedPoint,
    #[error("lines are not pairwise skew")]
    NotSkew,
    #[error("solution space has dimension {0}, expected 1")]
    DegenerateSolutionSpace(usize),
    #[error("point lies on the line")]
    PointOnLine,
    #[error("point is not on the quadric")]
    NotOnQuadric,
    #[error("line is not contained in the quadric")]
    LineNotOnQuadric,
    #[error("quadric is singular")]
    SingularQuadric,
    #[error("the four lines lie on a common quadric")]
    OnCommonQuadric,
    #[error("projectivity is the identity")]
    IdentityProjectivity,
    #[error("matrix is singular")]
    Singular,
    #[error("the zero form has no roots")]
    ZeroForm,
    #[error("binary quadratic {form} does not split over Q(e)")]
    NotSplit { form: Box<BinaryQuadratic> },
    #[error("points are not in general position")]
    DegenerateFrame,
}

pub(crate) fn dot(u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
    let mut acc = FieldElement::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(a * b);
        }
    }
    acc
}

/// `s·u + t·v`.
pub(crate) fn combine(s: &FieldElement, u: &[FieldElement], t: &FieldElement, v: &[FieldElement]) -> Vec<FieldElement> {
    u.iter().zip(v).map(|(a, b)| &(s * a) + &(t * b)).collect()
}
