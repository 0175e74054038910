use std::fmt;

use crate::field::FieldElement;
use crate::matrix::ExactMatrix;
use crate::poly::{Poly, SPACE_VARS};

use super::point::{LinePoint, ProjPoint};
use super::{combine, dot, ProjError};

/// A line of P³, stored as the reduced row echelon basis of its 2-dimensional
/// subspace so that equal lines compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    basis: [[FieldElement; 4]; 2],
    pivots: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineRelation {
    Equal,
    Meeting(ProjPoint),
    Skew,
}

impl ProjLine {
    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine, ProjError> {
        if p == q {
            return Err(ProjError::CoincidentPoints);
        }
        Ok(Self::from_span(&[p.to_vec(), q.to_vec()]).expect("distinct points span a line"))
    }

    fn from_span(rows: &[Vec<FieldElement>]) -> Option<ProjLine> {
        let (r, piv) = ExactMatrix::from_rows(rows.to_vec()).rref();
        if piv.len() != 2 {
            return None;
        }
        let row = |i: usize| -> [FieldElement; 4] { r.row(i).to_vec().try_into().expect("4 columns") };
        Some(ProjLine { basis: [row(0), row(1)], pivots: [piv[0], piv[1]] })
    }

    /// The line cut out by two independent plane equations.
    pub fn from_planes(h1: &[FieldElement; 4], h2: &[FieldElement; 4]) -> Result<ProjLine, ProjError> {
        let k = ExactMatrix::from_rows(vec![h1.to_vec(), h2.to_vec()]).kernel_basis();
        if k.len() != 2 {
            return Err(ProjError::DegenerateSolutionSpace(k.len().saturating_sub(1)));
        }
        Ok(Self::from_span(&k).expect("two kernel vectors"))
    }

    pub fn from_plane_ints(h1: [i64; 4], h2: [i64; 4]) -> Result<ProjLine, ProjError> {
        Self::from_planes(&h1.map(FieldElement::from_int), &h2.map(FieldElement::from_int))
    }

    pub fn basis(&self) -> (ProjPoint, ProjPoint) {
        let p = ProjPoint::new(self.basis[0].clone()).expect("basis row");
        let q = ProjPoint::new(self.basis[1].clone()).expect("basis row");
        (p, q)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        let c = p.coords();
        let s = &c[self.pivots[0]];
        let t = &c[self.pivots[1]];
        combine(s, &self.basis[0], t, &self.basis[1]) == c.to_vec()
    }

    /// Parameter `(s:t)` of a point on the line with respect to [`Self::basis`].
    pub fn param(&self, p: &ProjPoint) -> Result<LinePoint, ProjError> {
        if !self.contains(p) {
            return Err(ProjError::NotCollinear);
        }
        let c = p.coords();
        LinePoint::new([c[self.pivots[0]].clone(), c[self.pivots[1]].clone()])
    }

    pub fn point_at(&self, t: &LinePoint) -> ProjPoint {
        let [s, t] = t.coords();
        ProjPoint::from_slice(&combine(s, &self.basis[0], t, &self.basis[1])).expect("independent basis")
    }

    /// Two canonical plane equations, each scaled to have leading coefficient 1.
    pub fn equations(&self) -> [[FieldElement; 4]; 2] {
        let k = ExactMatrix::from_rows(self.basis.iter().map(|r| r.to_vec()).collect()).kernel_basis();
        let norm = |v: &Vec<FieldElement>| -> [FieldElement; 4] {
            let lead = v.iter().find(|c| !c.is_zero()).expect("nonzero").inv().expect("nonzero");
            std::array::from_fn(|i| &v[i] * &lead)
        };
        [norm(&k[0]), norm(&k[1])]
    }

    /// Plücker coordinates `p₀₁, p₀₂, p₀₃, p₁₂, p₁₃, p₂₃`.
    pub fn pluecker(&self) -> [FieldElement; 6] {
        let [u, v] = &self.basis;
        let m = |i: usize, j: usize| &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
        [m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3)]
    }

    /// Vanishes iff the two lines meet.
    pub fn pluecker_pairing(&self, other: &ProjLine) -> FieldElement {
        let p = self.pluecker();
        let q = other.pluecker();
        let terms = [
            &p[0] * &q[5],
            -(&p[1] * &q[4]),
            &p[2] * &q[3],
            &p[3] * &q[2],
            -(&p[4] * &q[1]),
            &p[5] * &q[0],
        ];
        terms.iter().fold(FieldElement::zero(), |acc, t| &acc + t)
    }

    pub fn relation(&self, other: &ProjLine) -> LineRelation {
        if self == other {
            return LineRelation::Equal;
        }
        if !self.pluecker_pairing(other).is_zero() {
            return LineRelation::Skew;
        }
        let cols: Vec<Vec<FieldElement>> =
            vec![self.basis[0].to_vec(), self.basis[1].to_vec(), other.basis[0].to_vec(), other.basis[1].to_vec()];
        let k = ExactMatrix::from_cols(&cols).kernel_basis();
        let v = &k[0];
        let pt = combine(&v[0], &self.basis[0], &v[1], &self.basis[1]);
        LineRelation::Meeting(ProjPoint::from_slice(&pt).expect("meeting point"))
    }

    pub fn is_skew_to(&self, other: &ProjLine) -> bool {
        self.relation(other) == LineRelation::Skew
    }

    /// Intersection with the plane `h·x = 0`, or `None` if the line lies in it.
    pub fn meet_plane(&self, h: &[FieldElement]) -> Option<ProjPoint> {
        let a = dot(h, &self.basis[0]);
        let b = dot(h, &self.basis[1]);
        if a.is_zero() && b.is_zero() {
            return None;
        }
        Some(ProjPoint::from_slice(&combine(&b, &self.basis[0], &(-a), &self.basis[1])).expect("nonzero"))
    }
}

fn linear_form_string(h: &[FieldElement; 4]) -> String {
    Poly::linear(h).to_string_with(&SPACE_VARS)
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.equations();
        write!(f, "{} = {} = 0", linear_form_string(&a), linear_form_string(&b))
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planes_and_points_agree() {
        let l = ProjLine::from_plane_ints([0, 1, 0, 0], [0, 0, 0, 1]).unwrap();
        let m = ProjLine::through(&ProjPoint::from_ints([1, 0, 0, 0]), &ProjPoint::from_ints([3, 0, 2, 0])).unwrap();
        assert_eq!(l, m);
        assert_eq!(l.to_string(), "y = w = 0");
        assert!(l.contains(&ProjPoint::from_ints([5, 0, -1, 0])));
        assert!(!l.contains(&ProjPoint::from_ints([0, 1, 0, 0])));
    }

    #[test]
    fn meeting_and_skew() {
        let a = ProjLine::from_plane_ints([0, 1, 0, 0], [0, 0, 0, 1]).unwrap();
        let b = ProjLine::from_plane_ints([1, 0, 0, 0], [0, 0, 1, 0]).unwrap();
        let c = ProjLine::from_plane_ints([0, 1, 0, 0], [0, 0, 1, 0]).unwrap();
        assert_eq!(a.relation(&b), LineRelation::Skew);
        assert_eq!(a.relation(&c), LineRelation::Meeting(ProjPoint::from_ints([1, 0, 0, 0])));
        assert_eq!(a.relation(&a), LineRelation::Equal);
    }

    #[test]
    fn params_roundtrip() {
        let l = ProjLine::from_plane_ints([1, -1, 0, 0], [0, 0, 1, -1]).unwrap();
        let p = ProjPoint::from_ints([2, 2, 3, 3]);
        let t = l.param(&p).unwrap();
        assert_eq!(l.point_at(&t), p);
    }
}
