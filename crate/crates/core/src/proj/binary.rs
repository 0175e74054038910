use std::fmt;

use crate::field::FieldElement;

use super::point::LinePoint;
use super::ProjError;

/// Binary quadratic form `c₀s² + c₁st + c₂t²` on P¹; its zero set is a pair
/// of points, possibly coincident or conjugate over a quadratic extension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryQuadratic {
    coeffs: [FieldElement; 3],
}

impl BinaryQuadratic {
    pub fn new(c0: FieldElement, c1: FieldElement, c2: FieldElement) -> Self {
        BinaryQuadratic { coeffs: [c0, c1, c2] }
    }

    /// The form vanishing exactly at `p` and `q`.
    pub fn from_roots(p: &LinePoint, q: &LinePoint) -> Self {
        // (t_p s − s_p t)(t_q s − s_q t)
        let [sp, tp] = p.coords();
        let [sq, tq] = q.coords();
        Self::new(tp * tq, -(&(tp * sq) + &(sp * tq)), sp * sq)
    }

    pub fn coeffs(&self) -> &[FieldElement; 3] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    pub fn discriminant(&self) -> FieldElement {
        let [a, b, c] = &self.coeffs;
        &(b * b) - &(&FieldElement::from_int(4) * &(a * c))
    }

    pub fn eval(&self, p: &LinePoint) -> FieldElement {
        let [s, t] = p.coords();
        let [a, b, c] = &self.coeffs;
        &(&(a * &(s * s)) + &(b * &(s * t))) + &(c * &(t * t))
    }

    /// Same zero set: the coefficient vectors are proportional.
    pub fn same_roots(&self, other: &BinaryQuadratic) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        (0..3).all(|i| (i + 1..3).all(|j| self.coeffs[i].clone() * &other.coeffs[j] == self.coeffs[j].clone() * &other.coeffs[i]))
    }

    /// Roots over Q(ε) with multiplicity, or `NotSplit` when the
    /// discriminant is not a square in Q(ε).
    pub fn roots(&self) -> Result<Vec<(LinePoint, usize)>, ProjError> {
        let [a, b, c] = &self.coeffs;
        if self.is_zero() {
            return Err(ProjError::ZeroForm);
        }
        if a.is_zero() {
            // t·(b s + c t)
            if b.is_zero() {
                return Ok(vec![(LinePoint::infinity(), 2)]);
            }
            let other = LinePoint::new([-c, b.clone()]).expect("nonzero");
            return Ok(vec![(LinePoint::infinity(), 1), (other, 1)]);
        }
        let disc = self.discriminant();
        let root = disc.sqrt().ok_or_else(|| ProjError::NotSplit { form: Box::new(self.clone()) })?;
        let two_a = a + a;
        if root.is_zero() {
            let p = LinePoint::new([-b, two_a]).expect("nonzero");
            return Ok(vec![(p, 2)]);
        }
        let p = LinePoint::new([&(-b) + &root, two_a.clone()]).expect("nonzero");
        let q = LinePoint::new([&(-b) - &root, two_a]).expect("nonzero");
        let mut v = vec![(p, 1), (q, 1)];
        v.sort_by(|x, y| x.0.cmp(&y.0));
        Ok(v)
    }
}

impl fmt::Display for BinaryQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coeffs;
        write!(f, "({a})*s^2 + ({b})*s*t + ({c})*t^2")
    }
}

impl fmt::Debug for BinaryQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
