use std::fmt;

use crate::field::FieldElement;

use super::line::ProjLine;
use super::perm::Perm4;
use super::point::{bracket, LinePoint, ProjPoint};
use super::ProjError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CrossRatio {
    Finite(FieldElement),
    Infinite,
}

/// Orbit type of a cross-ratio under the action of S₄.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossRatioType {
    Generic,
    Harmonic,
    Anharmonic,
}

impl fmt::Display for CrossRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossRatio::Finite(x) => write!(f, "{x}"),
            CrossRatio::Infinite => write!(f, "inf"),
        }
    }
}

impl fmt::Display for CrossRatioType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossRatioType::Generic => "generic",
            CrossRatioType::Harmonic => "harmonic",
            CrossRatioType::Anharmonic => "anharmonic",
        })
    }
}

/// `j = [13][24] / ([14][23])` for four parameters on P¹.
pub fn cross_ratio_params(t: &[LinePoint; 4]) -> Result<CrossRatio, ProjError> {
    for i in 0..4 {
        for k in i + 1..4 {
            if t[i] == t[k] {
                return Err(ProjError::RepeatedPoint);
            }
        }
    }
    let num = &bracket(&t[0], &t[2]) * &bracket(&t[1], &t[3]);
    let den = &bracket(&t[0], &t[3]) * &bracket(&t[1], &t[2]);
    Ok(match den.inv() {
        Ok(inv) => CrossRatio::Finite(&num * &inv),
        Err(_) => CrossRatio::Infinite,
    })
}

/// Cross-ratio of four distinct collinear points of P³.
pub fn cross_ratio(p: &[ProjPoint; 4]) -> Result<CrossRatio, ProjError> {
    for i in 0..4 {
        for k in i + 1..4 {
            if p[i] == p[k] {
                return Err(ProjError::RepeatedPoint);
            }
        }
    }
    let line = ProjLine::through(&p[0], &p[1])?;
    let params: Vec<LinePoint> = p.iter().map(|q| line.param(q)).collect::<Result<_, _>>()?;
    cross_ratio_params(&params.try_into().expect("four params"))
}

pub fn cross_ratio_type(j: &CrossRatio) -> CrossRatioType {
    let CrossRatio::Finite(j) = j else {
        return CrossRatioType::Generic;
    };
    let harmonic = [FieldElement::from_int(-1), FieldElement::from_int(2), FieldElement::from_ratios(1, 2, 0, 1)];
    if harmonic.contains(j) {
        CrossRatioType::Harmonic
    } else if (&(j * j) - j + FieldElement::one()).is_zero() {
        CrossRatioType::Anharmonic
    } else {
        CrossRatioType::Generic
    }
}

/// Permutations σ with `j(p_σ(1), …, p_σ(4)) = j(p₁, …, p₄)`, in lexicographic order.
pub fn cross_ratio_stabilizer(p: &[ProjPoint; 4]) -> Result<Vec<Perm4>, ProjError> {
    let j = cross_ratio(p)?;
    let mut out = Vec::new();
    for sigma in Perm4::all() {
        let q: [ProjPoint; 4] = std::array::from_fn(|i| p[sigma.apply(i)].clone());
        if cross_ratio(&q)? == j {
            out.push(sigma);
        }
    }
    Ok(out)
}
