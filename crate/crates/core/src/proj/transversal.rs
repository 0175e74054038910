use crate::field::FieldElement;

use super::binary::BinaryQuadratic;
use super::line::ProjLine;
use super::quadric::{quadric_through_three_skew_lines, ruling_partner, Quadric};
use super::ProjError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transversals {
    /// Transversal lines defined over Q(ε), with multiplicity.
    Split(Vec<(ProjLine, usize)>),
    /// Two transversals conjugate over Q(ε)(√disc).
    Conjugate { discriminant: FieldElement },
}

/// The common transversals of four pairwise skew lines, together with the
/// data that determines them.
#[derive(Debug, Clone)]
pub struct TransversalPair {
    /// The quadric through the first three lines.
    pub quadric: Quadric,
    /// The quadric restricted to the fourth line; its roots are the points
    /// where the transversals meet it.
    pub meeting_form: BinaryQuadratic,
    pub transversals: Transversals,
}

fn check_skew(lines: [&ProjLine; 4]) -> Result<(), ProjError> {
    for i in 0..4 {
        for k in i + 1..4 {
            if !lines[i].is_skew_to(lines[k]) {
                return Err(ProjError::NotSkew);
            }
        }
    }
    Ok(())
}

pub fn transversal_pair(lines: [&ProjLine; 4]) -> Result<TransversalPair, ProjError> {
    check_skew(lines)?;
    let q = quadric_through_three_skew_lines(lines[0], lines[1], lines[2])?;
    let form = q.restrict(lines[3]);
    if form.is_zero() {
        return Err(ProjError::OnCommonQuadric);
    }
    let transversals = match form.roots() {
        Ok(roots) => {
            let mut out = Vec::with_capacity(roots.len());
            for (t, mult) in roots {
                let x = lines[3].point_at(&t);
                out.push((ruling_partner(&q, lines[0], &x)?, mult));
            }
            Transversals::Split(out)
        }
        Err(ProjError::NotSplit { form }) => Transversals::Conjugate { discriminant: form.discriminant() },
        Err(e) => return Err(e),
    };
    Ok(TransversalPair { quadric: q, meeting_form: form, transversals })
}

/// Lines meeting all four pairwise skew lines; fails with `NotSplit` if the
/// transversals are not defined over Q(ε).
pub fn transversals_to_four_lines(lines: [&ProjLine; 4]) -> Result<Vec<(ProjLine, usize)>, ProjError> {
    let pair = transversal_pair(lines)?;
    match pair.transversals {
        Transversals::Split(v) => Ok(v),
        Transversals::Conjugate { .. } => Err(ProjError::NotSplit { form: Box::new(pair.meeting_form) }),
    }
}
