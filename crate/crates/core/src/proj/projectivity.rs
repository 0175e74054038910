use std::fmt;

use crate::field::FieldElement;
use crate::matrix::ExactMatrix;

use super::binary::BinaryQuadratic;
use super::line::ProjLine;
use super::point::{LinePoint, Point, ProjPoint};
use super::ProjError;

/// Projectivity of P¹, a 2×2 invertible matrix up to scale.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Projectivity1 {
    mat: ExactMatrix,
}

/// Projectivity of P³, a 4×4 invertible matrix up to scale.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Projectivity3 {
    mat: ExactMatrix,
}

fn checked(mat: ExactMatrix, n: usize) -> Result<ExactMatrix, ProjError> {
    assert!(mat.rows() == n && mat.cols() == n, "{n}x{n} matrix expected");
    if mat.determinant().expect("square").is_zero() {
        return Err(ProjError::Singular);
    }
    Ok(mat.normalized())
}

fn apply_mat<const N: usize>(m: &ExactMatrix, p: &Point<N>) -> Point<N> {
    Point::from_slice(&m.mul_vec(p.coords())).expect("invertible")
}

fn is_scalar(m: &ExactMatrix) -> bool {
    let n = m.rows();
    (0..n).all(|i| (0..n).all(|j| if i == j { m.get(i, i) == m.get(0, 0) } else { m.get(i, j).is_zero() }))
}

/// Matrix whose columns map the standard frame (e₁,…,eₙ, Σeᵢ) onto `pts`.
fn frame_matrix<const N: usize>(pts: &[Point<N>]) -> Result<ExactMatrix, ProjError> {
    let cols: Vec<Vec<FieldElement>> = pts[..N].iter().map(Point::to_vec).collect();
    let a = ExactMatrix::from_cols(&cols);
    let lambda = a.solve(pts[N].coords()).map_err(|_| ProjError::DegenerateFrame)?;
    if lambda.iter().any(FieldElement::is_zero) {
        return Err(ProjError::DegenerateFrame);
    }
    let scaled: Vec<Vec<FieldElement>> =
        cols.iter().zip(&lambda).map(|(c, l)| c.iter().map(|x| x * l).collect()).collect();
    Ok(ExactMatrix::from_cols(&scaled))
}

impl Projectivity1 {
    pub fn new(mat: ExactMatrix) -> Result<Self, ProjError> {
        Ok(Projectivity1 { mat: checked(mat, 2)? })
    }

    pub fn from_ints(m: [[i64; 2]; 2]) -> Result<Self, ProjError> {
        Self::new(ExactMatrix::from_ints(&[&m[0], &m[1]]))
    }

    pub fn identity() -> Self {
        Projectivity1 { mat: ExactMatrix::identity(2) }
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.mat
    }

    pub fn apply(&self, p: &LinePoint) -> LinePoint {
        apply_mat(&self.mat, p)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Projectivity1) -> Projectivity1 {
        Projectivity1 { mat: self.mat.mul(&other.mat).expect("2x2").normalized() }
    }

    pub fn inverse(&self) -> Projectivity1 {
        Projectivity1 { mat: self.mat.inverse().expect("invertible").normalized() }
    }

    pub fn pow(&self, k: u32) -> Projectivity1 {
        (0..k).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        is_scalar(&self.mat)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.compose(self).is_identity()
    }

    /// Smallest `k ≤ max` with `selfᵏ = id`.
    pub fn order(&self, max: u32) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=max {
            if p.is_identity() {
                return Some(k);
            }
            p = p.compose(self);
        }
        None
    }

    /// The binary form `m₂₁s² + (m₂₂ − m₁₁)st − m₁₂t²` vanishing at the fixed points.
    pub fn fixed_point_form(&self) -> BinaryQuadratic {
        let m = &self.mat;
        BinaryQuadratic::new(m.get(1, 0).clone(), m.get(1, 1) - m.get(0, 0), -m.get(0, 1))
    }
}

/// Fixed points of a non-identity projectivity of P¹, with multiplicity.
pub fn fixed_points(phi: &Projectivity1) -> Result<Vec<(LinePoint, usize)>, ProjError> {
    if phi.is_identity() {
        return Err(ProjError::IdentityProjectivity);
    }
    phi.fixed_point_form().roots()
}

/// The unique projectivity of P¹ sending `src[i]` to `dst[i]`.
pub fn projectivity1_from_pairs(src: &[LinePoint; 3], dst: &[LinePoint; 3]) -> Result<Projectivity1, ProjError> {
    for set in [src, dst] {
        if set[0] == set[1] || set[0] == set[2] || set[1] == set[2] {
            return Err(ProjError::RepeatedPoint);
        }
    }
    let a = frame_matrix(src)?;
    let b = frame_matrix(dst)?;
    Projectivity1::new(b.mul(&a.inverse().map_err(|_| ProjError::Singular)?).expect("2x2"))
}

/// The involution of P¹ with fixed points `p ≠ q`.
pub fn involution_with_fixed_points(p: &LinePoint, q: &LinePoint) -> Result<Projectivity1, ProjError> {
    if p == q {
        return Err(ProjError::CoincidentPoints);
    }
    let b = ExactMatrix::from_cols(&[p.to_vec(), q.to_vec()]);
    let d = ExactMatrix::diagonal(&[FieldElement::one(), FieldElement::from_int(-1)]);
    let binv = b.inverse().expect("distinct points");
    Projectivity1::new(b.mul(&d).and_then(|m| m.mul(&binv)).expect("2x2"))
}

impl Projectivity3 {
    pub fn new(mat: ExactMatrix) -> Result<Self, ProjError> {
        Ok(Projectivity3 { mat: checked(mat, 4)? })
    }

    pub fn identity() -> Self {
        Projectivity3 { mat: ExactMatrix::identity(4) }
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.mat
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        apply_mat(&self.mat, p)
    }

    pub fn apply_line(&self, l: &ProjLine) -> ProjLine {
        let (u, v) = l.basis();
        ProjLine::through(&self.apply(&u), &self.apply(&v)).expect("invertible")
    }

    pub fn compose(&self, other: &Projectivity3) -> Projectivity3 {
        Projectivity3 { mat: self.mat.mul(&other.mat).expect("4x4").normalized() }
    }

    pub fn inverse(&self) -> Projectivity3 {
        Projectivity3 { mat: self.mat.inverse().expect("invertible").normalized() }
    }

    pub fn is_identity(&self) -> bool {
        is_scalar(&self.mat)
    }

    /// Restriction to an invariant line, in the parameters of [`ProjLine::basis`].
    pub fn restrict(&self, l: &ProjLine) -> Option<Projectivity1> {
        if self.apply_line(l) != *l {
            return None;
        }
        let (u, v) = l.basis();
        let cols: Vec<Vec<FieldElement>> =
            [u, v].iter().map(|p| l.param(&self.apply(p)).expect("invariant").to_vec()).collect();
        // Images of u, v are known only up to scale; fix the scales with u+v.
        let uv = l.point_at(&LinePoint::from_ints([1, 1]));
        let w = l.param(&self.apply(&uv)).expect("invariant");
        let a = ExactMatrix::from_cols(&cols);
        let lambda = a.solve(w.coords()).ok()?;
        let scaled: Vec<Vec<FieldElement>> =
            cols.iter().zip(&lambda).map(|(c, k)| c.iter().map(|x| x * k).collect()).collect();
        Projectivity1::new(ExactMatrix::from_cols(&scaled)).ok()
    }
}

impl fmt::Display for Projectivity1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mat)
    }
}

impl fmt::Debug for Projectivity1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Projectivity3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mat)
    }
}

impl fmt::Debug for Projectivity3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The projectivity of P³ acting as `phi` on `r` and `phi2` on `r2`, for
/// skew lines `r` and `r2`, each parametrised by its canonical basis.
pub fn extend_to_space(
    r: &ProjLine,
    phi: &Projectivity1,
    r2: &ProjLine,
    phi2: &Projectivity1,
) -> Result<Projectivity3, ProjError> {
    if !r.is_skew_to(r2) {
        return Err(ProjError::NotSkew);
    }
    let (u, v) = r.basis();
    let (u2, v2) = r2.basis();
    let b = ExactMatrix::from_cols(&[u.to_vec(), v.to_vec(), u2.to_vec(), v2.to_vec()]);
    let mut d = ExactMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            d.set(i, j, phi.mat.get(i, j).clone());
            d.set(i + 2, j + 2, phi2.mat.get(i, j).clone());
        }
    }
    let binv = b.inverse().map_err(|_| ProjError::NotSkew)?;
    Projectivity3::new(b.mul(&d).and_then(|m| m.mul(&binv)).expect("4x4"))
}

/// True iff no four of the five points are coplanar.
pub fn in_general_position(pts: &[ProjPoint; 5]) -> bool {
    (0..5).all(|skip| {
        let cols: Vec<Vec<FieldElement>> =
            (0..5).filter(|&i| i != skip).map(|i| pts[i].to_vec()).collect();
        !ExactMatrix::from_cols(&cols).determinant().expect("square").is_zero()
    })
}

/// The unique projectivity of P³ sending the frame `src` onto `dst`.
pub fn projectivity3_from_frames(src: &[ProjPoint; 5], dst: &[ProjPoint; 5]) -> Result<Projectivity3, ProjError> {
    if !in_general_position(src) || !in_general_position(dst) {
        return Err(ProjError::DegenerateFrame);
    }
    let a = frame_matrix(src)?;
    let b = frame_matrix(dst)?;
    Projectivity3::new(b.mul(&a.inverse().map_err(|_| ProjError::DegenerateFrame)?).expect("4x4"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_pairs_order_three() {
        let e = FieldElement::eps();
        // t ↦ 1/(1−t) cycles 0 → 1 → ∞ → 0
        let zero = LinePoint::affine(FieldElement::zero());
        let one = LinePoint::affine(FieldElement::one());
        let inf = LinePoint::infinity();
        let phi = projectivity1_from_pairs(&[zero.clone(), one.clone(), inf.clone()], &[one, inf, zero]).unwrap();
        assert_eq!(phi.order(10), Some(3));
        let fp = fixed_points(&phi).unwrap();
        assert_eq!(fp.len(), 2);
        assert!(fp.iter().any(|(p, _)| *p == LinePoint::affine(e.clone())));
        assert!(fp.iter().any(|(p, _)| *p == LinePoint::affine(FieldElement::one() - e.clone())));
    }

    #[test]
    fn identity_has_no_fixed_point_set() {
        assert_eq!(fixed_points(&Projectivity1::identity()), Err(ProjError::IdentityProjectivity));
    }

    #[test]
    fn involution_fixes_its_points() {
        let p = LinePoint::affine(FieldElement::from_int(2));
        let q = LinePoint::affine(FieldElement::eps());
        let s = involution_with_fixed_points(&p, &q).unwrap();
        assert!(s.is_involution());
        assert_eq!(s.apply(&p), p);
        assert_eq!(s.apply(&q), q);
    }

    #[test]
    fn frames_map() {
        let src = [
            ProjPoint::from_ints([1, 0, 0, 0]),
            ProjPoint::from_ints([0, 1, 0, 0]),
            ProjPoint::from_ints([0, 0, 1, 0]),
            ProjPoint::from_ints([0, 0, 0, 1]),
            ProjPoint::from_ints([1, 1, 1, 1]),
        ];
        let dst = [
            ProjPoint::from_ints([1, 2, 0, 0]),
            ProjPoint::from_ints([0, 1, 3, 0]),
            ProjPoint::from_ints([0, 0, 1, 5]),
            ProjPoint::from_ints([7, 0, 0, 1]),
            ProjPoint::from_ints([1, -1, 2, 1]),
        ];
        let t = projectivity3_from_frames(&src, &dst).unwrap();
        for (s, d) in src.iter().zip(&dst) {
            assert_eq!(t.apply(s), *d);
        }
    }
}
