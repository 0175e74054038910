use crate::field::FieldElement;
use crate::matrix::ExactMatrix;
use crate::poly::{forms_coprime, monomials, Form, Poly, PLANE_VARS};

use super::projection::PlanarConfig;
use super::VerifyError;

/// Hilbert function of a planar point set.
#[derive(Debug, Clone)]
pub struct PlanarIdealProfile {
    pub hilbert: Vec<usize>,
}

impl PlanarIdealProfile {
    /// Dimension of the degree-`d` forms vanishing on the points.
    pub fn dim(&self, d: u32) -> usize {
        monomials(3, d).len() - self.hilbert[d as usize]
    }
}

/// Two coprime forms through all points with `deg F · deg G` equal to the
/// number of points. By Bézout their common zeros are exactly the points,
/// each reduced, so the points form a complete intersection.
#[derive(Debug, Clone)]
pub struct CIWitness {
    pub f: Form,
    pub g: Form,
    /// Linear factors of `f` when it was built as a union of lines.
    pub f_factors: Option<Vec<Form>>,
    pub coprime: bool,
    pub degree_check: bool,
}

impl CIWitness {
    pub fn degrees(&self) -> (u32, u32) {
        (self.f.degree(), self.g.degree())
    }
}

fn evaluation_matrix(points: &PlanarConfig, d: u32) -> ExactMatrix {
    let mons = monomials(3, d);
    let rows = points
        .points()
        .iter()
        .map(|p| {
            let c = p.integral_representative();
            mons.iter().map(|e| &(&c[0].pow(e[0]) * &c[1].pow(e[1])) * &c[2].pow(e[2])).collect()
        })
        .collect();
    ExactMatrix::from_rows(rows)
}

/// Basis of the degree-`d` forms vanishing on the points.
pub fn vanishing_forms(points: &PlanarConfig, d: u32) -> Vec<Form> {
    if points.is_empty() {
        let n = monomials(3, d).len();
        return (0..n)
            .map(|i| {
                let mut c = vec![FieldElement::zero(); n];
                c[i] = FieldElement::one();
                Form::from_coefficients(&PLANE_VARS, d, &c)
            })
            .collect();
    }
    evaluation_matrix(points, d).kernel_basis().iter().map(|c| Form::from_coefficients(&PLANE_VARS, d, c)).collect()
}

/// `h(d)` for `d ≤ d_max`. Once `h` reaches the number of points it stays
/// there, so higher degrees are filled in without elimination.
pub fn ideal_profile(points: &PlanarConfig, d_max: u32) -> PlanarIdealProfile {
    let n = points.len();
    let mut hilbert = Vec::with_capacity(d_max as usize + 1);
    for d in 0..=d_max {
        let h = match hilbert.last() {
            Some(&h) if h == n => n,
            _ if n == 0 => 0,
            _ => evaluation_matrix(points, d).rank(),
        };
        hilbert.push(h);
    }
    PlanarIdealProfile { hilbert }
}

/// The first form of `candidates` outside the span of `f·m` for all
/// monomials `m` of degree `deg(candidates) − deg f`.
fn complement_of_multiples(f: &Form, candidates: &[Form]) -> Option<Form> {
    let d = candidates.first()?.degree();
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    if d >= f.degree() {
        for e in monomials(3, d - f.degree()) {
            let m = Form::new(&PLANE_VARS, Poly::monomial(e, FieldElement::one()), d - f.degree()).expect("monomial");
            rows.push(f.mul(&m).coefficients());
        }
    }
    let base_rank = if rows.is_empty() { 0 } else { ExactMatrix::from_rows(rows.clone()).rank() };
    candidates.iter().find(|g| {
        let mut r = rows.clone();
        r.push(g.coefficients());
        ExactMatrix::from_rows(r).rank() > base_rank
    }).cloned()
}

fn certify(points: &PlanarConfig, f: Form, g: Form, f_factors: Option<Vec<Form>>) -> Result<Option<CIWitness>, VerifyError> {
    let vanish = points.points().iter().all(|p| f.eval(p.coords()).is_zero() && g.eval(p.coords()).is_zero());
    let degree_check = (f.degree() * g.degree()) as usize == points.len();
    if !vanish || !degree_check {
        return Ok(None);
    }
    let coprime = forms_coprime(&f, &g)?;
    Ok(coprime.then_some(CIWitness { f, g, f_factors, coprime, degree_check }))
}

/// Certifies the points as a complete intersection of type `(a, b)`.
pub fn ci_test(points: &PlanarConfig, a: u32, b: u32) -> Result<Option<CIWitness>, VerifyError> {
    let (a, b) = (a.min(b), a.max(b));
    if (a * b) as usize != points.len() {
        return Err(VerifyError::SizeMismatch { points: points.len(), a, b });
    }
    let fa = vanishing_forms(points, a);
    if fa.is_empty() || (a == b && fa.len() < 2) {
        return Ok(None);
    }
    let f = fa[0].clone();
    let g = if a == b { Some(fa[1].clone()) } else { complement_of_multiples(&f, &vanishing_forms(points, b)) };
    match g {
        Some(g) => certify(points, f, g, None),
        None => Ok(None),
    }
}

/// Certifies a complete intersection in which one curve is the given union
/// of lines (linear forms).
pub fn split_ci_test(points: &PlanarConfig, lines: &[Form]) -> Result<Option<CIWitness>, VerifyError> {
    let k = lines.len() as u32;
    if k == 0 || !points.len().is_multiple_of(k as usize) {
        return Ok(None);
    }
    let m = (points.len() / k as usize) as u32;
    let f = lines[1..].iter().fold(lines[0].clone(), |acc, l| acc.mul(l));
    let others = vanishing_forms(points, m);
    let g = if m >= k { complement_of_multiples(&f, &others) } else { others.first().cloned() };
    match g {
        Some(g) => certify(points, f, g, Some(lines.to_vec())),
        None => Ok(None),
    }
}
