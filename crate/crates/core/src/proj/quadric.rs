use std::fmt;

use crate::field::FieldElement;
use crate::matrix::ExactMatrix;
use crate::poly::{monomials, Form, SPACE_VARS};

use super::binary::BinaryQuadratic;
use super::line::ProjLine;
use super::point::ProjPoint;
use super::{dot, ProjError};

/// A quadric surface `xᵀGx = 0` with symmetric Gram matrix `G`, scaled so
/// the first nonzero coefficient is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quadric {
    gram: ExactMatrix,
}

impl Quadric {
    /// From the coefficients over `x², xy, xz, xw, y², yz, yw, z², zw, w²`.
    pub fn from_coefficients(c: &[FieldElement]) -> Result<Quadric, ProjError> {
        assert_eq!(c.len(), 10, "a quaternary quadric has 10 coefficients");
        let half = FieldElement::from_ratios(1, 2, 0, 1);
        let mut g = ExactMatrix::zeros(4, 4);
        for (exp, coef) in monomials(4, 2).iter().zip(c) {
            let idx: Vec<usize> = (0..4).flat_map(|i| std::iter::repeat_n(i, exp[i] as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                g.set(i, i, coef.clone());
            } else {
                let h = coef * &half;
                g.set(i, j, h.clone());
                g.set(j, i, h);
            }
        }
        Self::from_gram(g)
    }

    pub fn from_gram(g: ExactMatrix) -> Result<Quadric, ProjError> {
        assert!(g.rows() == 4 && g.cols() == 4 && g.transpose() == g, "symmetric 4x4 Gram matrix");
        if g.is_zero() {
            return Err(ProjError::ZeroVector);
        }
        let raw = Quadric { gram: g };
        let lead = raw.coefficients().into_iter().find(|c| !c.is_zero()).expect("nonzero quadric");
        Ok(Quadric { gram: raw.gram.scale(&lead.inv().expect("nonzero")) })
    }

    pub fn gram(&self) -> &ExactMatrix {
        &self.gram
    }

    pub fn coefficients(&self) -> Vec<FieldElement> {
        monomials(4, 2)
            .iter()
            .map(|exp| {
                let idx: Vec<usize> = (0..4).flat_map(|i| std::iter::repeat_n(i, exp[i] as usize)).collect();
                let g = self.gram.get(idx[0], idx[1]);
                if idx[0] == idx[1] {
                    g.clone()
                } else {
                    g + g
                }
            })
            .collect()
    }

    pub fn form(&self) -> Form {
        Form::from_coefficients(&SPACE_VARS, 2, &self.coefficients())
    }

    pub fn bilinear(&self, p: &[FieldElement], q: &[FieldElement]) -> FieldElement {
        dot(p, &self.gram.mul_vec(q))
    }

    pub fn eval(&self, p: &ProjPoint) -> FieldElement {
        self.bilinear(p.coords(), p.coords())
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }

    pub fn contains_line(&self, l: &ProjLine) -> bool {
        self.restrict(l).is_zero()
    }

    pub fn is_smooth(&self) -> bool {
        !self.gram.determinant().expect("square").is_zero()
    }

    /// Tangent plane `G·p` at a point of the quadric.
    pub fn tangent_plane(&self, p: &ProjPoint) -> Vec<FieldElement> {
        self.gram.mul_vec(p.coords())
    }

    /// The restriction to a line, as a binary form in its parameters.
    pub fn restrict(&self, l: &ProjLine) -> BinaryQuadratic {
        let (u, v) = l.basis();
        let (u, v) = (u.coords(), v.coords());
        let b = self.bilinear(u, v);
        BinaryQuadratic::new(self.bilinear(u, u), &b + &b, self.bilinear(v, v))
    }
}

impl fmt::Display for Quadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form())
    }
}

impl fmt::Debug for Quadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn quadric_conditions(points: &[Vec<FieldElement>]) -> ExactMatrix {
    let mons = monomials(4, 2);
    let rows = points
        .iter()
        .map(|p| {
            mons.iter()
                .map(|e| (0..4).fold(FieldElement::one(), |acc, i| &acc * &p[i].pow(e[i])))
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(rows)
}

/// Basis of the space of quadrics through the given points.
pub fn quadrics_through(points: &[ProjPoint]) -> Vec<Quadric> {
    if points.is_empty() {
        return (0..10)
            .map(|i| {
                let mut c = vec![FieldElement::zero(); 10];
                c[i] = FieldElement::one();
                Quadric::from_coefficients(&c).expect("nonzero")
            })
            .collect();
    }
    let m = quadric_conditions(&points.iter().map(ProjPoint::to_vec).collect::<Vec<_>>());
    m.kernel_basis().iter().map(|c| Quadric::from_coefficients(c).expect("kernel vector is nonzero")).collect()
}

/// The unique quadric containing three pairwise skew lines.
pub fn quadric_through_three_skew_lines(l1: &ProjLine, l2: &ProjLine, l3: &ProjLine) -> Result<Quadric, ProjError> {
    if !(l1.is_skew_to(l2) && l1.is_skew_to(l3) && l2.is_skew_to(l3)) {
        return Err(ProjError::NotSkew);
    }
    let mut pts = Vec::with_capacity(9);
    for l in [l1, l2, l3] {
        let (u, v) = l.basis();
        pts.push(u.to_vec());
        pts.push(v.to_vec());
        pts.push(super::combine(&FieldElement::one(), u.coords(), &FieldElement::one(), v.coords()));
    }
    let k = quadric_conditions(&pts).kernel_basis();
    if k.len() != 1 {
        return Err(ProjError::DegenerateSolutionSpace(k.len()));
    }
    Quadric::from_coefficients(&k[0])
}

/// The line of the other ruling of `q` through `p`, where `l` is a line of `q`
/// not containing `p`. It is the line joining `p` to `l ∩ T_p(q)`.
pub fn ruling_partner(q: &Quadric, l: &ProjLine, p: &ProjPoint) -> Result<ProjLine, ProjError> {
    if !q.is_smooth() {
        return Err(ProjError::SingularQuadric);
    }
    if !q.contains_point(p) {
        return Err(ProjError::NotOnQuadric);
    }
    if !q.contains_line(l) {
        return Err(ProjError::LineNotOnQuadric);
    }
    if l.contains(p) {
        return Err(ProjError::PointOnLine);
    }
    let x = l.meet_plane(&q.tangent_plane(p)).ok_or(ProjError::DegenerateSolutionSpace(2))?;
    let m = ProjLine::through(p, &x)?;
    debug_assert!(q.contains_line(&m));
    Ok(m)
}
