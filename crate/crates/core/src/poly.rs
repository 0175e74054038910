//! Sparse multivariate polynomials over Q(ε), homogeneous forms, and a
//! recursive subresultant gcd used to certify coprimality.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::field::FieldElement;
use crate::matrix::ExactMatrix;

pub type Exponent = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero form")]
    ZeroForm,
    #[error("forms live in different rings ({0} vs {1} variables)")]
    VariableMismatch(usize, usize),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
}

/// Polynomial in `nvars` variables; terms keyed by exponent, lex order with
/// variable 0 most significant. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, FieldElement>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: FieldElement) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, FieldElement::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, FieldElement::one())
    }

    pub fn monomial(exp: Exponent, c: FieldElement) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, FieldElement)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    /// Linear form `Σ cᵢ·xᵢ`.
    pub fn linear(coeffs: &[FieldElement]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    fn add_term(&mut self, exp: Exponent, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &FieldElement)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Leading term in lex order.
    pub fn leading(&self) -> Option<(&Exponent, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(self.nvars), |acc, _| acc.mul(self))
    }

    fn mul_monomial(&self, exp: &[u32], c: &FieldElement) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let mut acc = FieldElement::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lt_e, lt_c) = d.leading()?;
        let lt_inv = lt_c.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((e, c)) = rem.leading() {
            if e.iter().zip(lt_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponent = e.iter().zip(lt_e).map(|(a, b)| a - b).collect();
            let qc = c * &lt_inv;
            rem = rem.sub(&d.mul_monomial(&qe, &qc));
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Coefficients in `var`: entry `k` multiplies `var^k` and is free of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var] as usize;
            e2[var] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    fn from_coeffs_in(nvars: usize, var: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += k as u32;
                out.add_term(e2, x.clone());
            }
        }
        out
    }

    /// Scales so the lex-leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Greatest common divisor, normalized to be monic.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "gcd across rings");
        gcd_rec(self, rhs).monic()
    }

    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k > 0)
                .map(|(&k, n)| if k == 1 { n.to_string() } else { format!("{n}^{k}") })
                .collect();
            let mono = mono.join("*");
            let (neg, mag) = coefficient_sign(c);
            let body = if mono.is_empty() {
                mag.clone()
            } else if mag == "1" {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (i, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

/// Splits a coefficient into a sign and a printable magnitude; mixed
/// elements are parenthesized.
fn coefficient_sign(c: &FieldElement) -> (bool, String) {
    use num_traits::{Signed, Zero};
    if c.eps_part().is_zero() {
        return (c.re().is_negative(), c.re().abs().to_string());
    }
    if c.re().is_zero() {
        let neg = c.eps_part().is_negative();
        let m = if neg { -c.clone() } else { c.clone() };
        return (neg, m.to_string());
    }
    (false, format!("({c})"))
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.to_string_with(&refs))
    }
}

fn main_var(f: &Poly, g: &Poly) -> Option<usize> {
    (0..f.nvars).rev().find(|&v| f.degree_in(v).unwrap_or(0) > 0 || g.degree_in(v).unwrap_or(0) > 0)
}

fn gcd_rec(f: &Poly, g: &Poly) -> Poly {
    let n = f.nvars;
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let Some(v) = main_var(f, g) else {
        return Poly::one(n);
    };
    let cf = content(f, v);
    let cg = content(g, v);
    let c = gcd_rec(&cf, &cg).monic();
    let pf = f.div_exact(&cf).expect("content divides");
    let pg = g.div_exact(&cg).expect("content divides");
    if pf.degree_in(v) == Some(0) || pg.degree_in(v) == Some(0) {
        return c;
    }
    let h = subresultant_gcd(&pf, &pg, v);
    let ph = h.div_exact(&content(&h, v)).expect("content divides");
    c.mul(&ph)
}

/// gcd of the coefficients of `f` viewed as a polynomial in `v`.
fn content(f: &Poly, v: usize) -> Poly {
    let mut acc = Poly::zero(f.nvars);
    for c in f.coeffs_in(v).iter().filter(|c| !c.is_zero()) {
        acc = gcd_rec(&acc, c).monic();
        if acc.is_constant() {
            break;
        }
    }
    acc
}

fn lc_in(f: &Poly, v: usize) -> Poly {
    f.coeffs_in(v).pop().expect("nonzero")
}

/// Pseudo-remainder `lc(b)^(δ+1)·a mod b` in variable `v`.
fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v).expect("nonzero");
    let da = a.degree_in(v).expect("nonzero");
    let lb = lc_in(b, v);
    let mut r = a.clone();
    let mut steps = 0u32;
    while !r.is_zero() && r.degree_in(v).unwrap_or(0) >= db {
        let dr = r.degree_in(v).unwrap();
        let lr = lc_in(&r, v);
        let mut shift = vec![0; a.nvars];
        shift[v] = dr - db;
        let t = Poly::from_coeffs_in(a.nvars, v, &[lr]).mul_monomial(&shift, &FieldElement::one());
        r = lb.mul(&r).sub(&t.mul(b));
        steps += 1;
    }
    let want = da + 1 - db;
    if steps < want {
        r = r.mul(&lb.pow(want - steps));
    }
    r
}

/// Subresultant PRS on primitive inputs with positive degree in `v`.
fn subresultant_gcd(f: &Poly, g: &Poly, v: usize) -> Poly {
    let (mut a, mut b) = if f.degree_in(v) >= g.degree_in(v) { (f.clone(), g.clone()) } else { (g.clone(), f.clone()) };
    let n = f.nvars;
    let mut gg = Poly::one(n);
    let mut h = Poly::one(n);
    loop {
        let delta = a.degree_in(v).unwrap() - b.degree_in(v).unwrap();
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(v) == Some(0) {
            return Poly::one(n);
        }
        a = b;
        let denom = gg.mul(&h.pow(delta));
        b = r.div_exact(&denom).expect("subresultant division is exact");
        gg = lc_in(&a, v);
        // h ← g^δ / h^(δ−1)
        h = if delta == 0 {
            h
        } else {
            gg.pow(delta).div_exact(&h.pow(delta - 1)).expect("exact")
        };
    }
}

/// Homogeneous polynomial with named variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    names: Vec<String>,
    poly: Poly,
    degree: u32,
}

pub const PLANE_VARS: [&str; 3] = ["x", "y", "z"];
pub const SPACE_VARS: [&str; 4] = ["x", "y", "z", "w"];

impl Form {
    /// Wraps a homogeneous polynomial; the zero polynomial needs an explicit degree.
    pub fn new(names: &[&str], poly: Poly, degree: u32) -> Result<Form, PolyError> {
        if names.len() != poly.nvars() {
            return Err(PolyError::VariableMismatch(names.len(), poly.nvars()));
        }
        if !poly.is_homogeneous() || poly.total_degree().is_some_and(|d| d != degree) {
            return Err(PolyError::NotHomogeneous);
        }
        Ok(Form { names: names.iter().map(|s| s.to_string()).collect(), poly, degree })
    }

    pub fn planar(poly: Poly) -> Result<Form, PolyError> {
        let d = poly.total_degree().ok_or(PolyError::ZeroForm)?;
        Form::new(&PLANE_VARS, poly, d)
    }

    pub fn spatial(poly: Poly) -> Result<Form, PolyError> {
        let d = poly.total_degree().ok_or(PolyError::ZeroForm)?;
        Form::new(&SPACE_VARS, poly, d)
    }

    /// Form from a coefficient vector over [`monomials`]`(n, degree)`.
    pub fn from_coefficients(names: &[&str], degree: u32, coeffs: &[FieldElement]) -> Form {
        let mons = monomials(names.len(), degree);
        assert_eq!(mons.len(), coeffs.len(), "coefficient count");
        let poly = Poly::from_terms(names.len(), mons.into_iter().zip(coeffs.iter().cloned()));
        Form { names: names.iter().map(|s| s.to_string()).collect(), poly, degree }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn names(&self) -> Vec<&str> {
        self.names.iter().map(String::as_str).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        self.poly.eval(point)
    }

    pub fn mul(&self, rhs: &Form) -> Form {
        Form { names: self.names.clone(), poly: self.poly.mul(&rhs.poly), degree: self.degree + rhs.degree }
    }

    pub fn monic(&self) -> Form {
        Form { names: self.names.clone(), poly: self.poly.monic(), degree: self.degree }
    }

    /// Coefficient vector over [`monomials`]`(n, degree)`.
    pub fn coefficients(&self) -> Vec<FieldElement> {
        monomials(self.names.len(), self.degree)
            .iter()
            .map(|m| self.poly.terms.get(m).cloned().unwrap_or_default())
            .collect()
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.to_string_with(&self.names()))
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exponent vectors of total degree `d` in `n` variables, lex-descending
/// (`x^d` first).
pub fn monomials(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if n == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n - 1, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// True iff `f` and `g` share no nonconstant factor.
pub fn forms_coprime(f: &Form, g: &Form) -> Result<bool, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroForm);
    }
    if f.poly.nvars() != g.poly.nvars() {
        return Err(PolyError::VariableMismatch(f.poly.nvars(), g.poly.nvars()));
    }
    if f.poly.nvars() == 3 && [(1, 2), (-3, 5)].iter().any(|&(s, t)| restrictions_coprime(f, g, s, t)) {
        return Ok(true);
    }
    Ok(f.poly.gcd(&g.poly).is_constant())
}

/// Coefficients of `f(x, y, s·x + t·y)` from `y^d` up to `x^d`.
fn restrict(f: &Form, s: i64, t: i64) -> Vec<FieldElement> {
    let l = Poly::linear(&[FieldElement::from_int(s), FieldElement::from_int(t), FieldElement::zero()]);
    let mut out = vec![FieldElement::zero(); f.degree() as usize + 1];
    for (e, c) in f.poly.terms() {
        let r = l.pow(e[2]).mul_monomial(&[e[0], e[1], 0], c);
        for (er, cr) in r.terms() {
            out[er[0] as usize] += cr;
        }
    }
    out
}

/// Sufficient test: a common factor of `f` and `g` restricts to a common
/// factor, or to zero, on the plane `z = s·x + t·y`, and either makes the
/// Sylvester matrix of the restrictions singular.
fn restrictions_coprime(f: &Form, g: &Form, s: i64, t: i64) -> bool {
    let (p, q) = (restrict(f, s, t), restrict(g, s, t));
    let (m, n) = (p.len() - 1, q.len() - 1);
    if m + n == 0 {
        return true;
    }
    let mut rows = Vec::with_capacity(m + n);
    for (coeffs, shifts) in [(&p, n), (&q, m)] {
        for k in 0..shifts {
            let mut row = vec![FieldElement::zero(); m + n];
            row[k..k + coeffs.len()].clone_from_slice(coeffs);
            rows.push(row);
        }
    }
    ExactMatrix::from_rows(rows).rank() == m + n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    fn form(p: Poly) -> Form {
        Form::planar(p).unwrap()
    }

    #[test]
    fn shared_variable_is_common_factor() {
        let f = form(x(0).mul(&x(1)));
        let g = form(x(0).mul(&x(2)));
        assert!(!forms_coprime(&f, &g).unwrap());
        assert_eq!(f.poly().gcd(g.poly()), x(0));
    }

    #[test]
    fn distinct_squares_are_coprime() {
        let f = form(x(0).pow(2));
        let g = form(x(1).pow(2));
        assert!(forms_coprime(&f, &g).unwrap());
    }

    #[test]
    fn zero_form_rejected() {
        let z = Form::new(&PLANE_VARS, Poly::zero(3), 2).unwrap();
        let g = form(x(1));
        assert_eq!(forms_coprime(&z, &g), Err(PolyError::ZeroForm));
    }

    #[test]
    fn gcd_recovers_planted_factor() {
        let e = FieldElement::eps();
        let h = x(0).sub(&x(1).scale(&e)).add(&x(2).scale(&FieldElement::from_int(3)));
        let a = x(0).pow(2).add(&x(1).mul(&x(2)));
        let b = x(1).pow(3).sub(&x(0).mul(&x(2)).mul(&x(2))).add(&x(2).pow(3));
        let g = h.mul(&h).mul(&a).gcd(&h.mul(&b));
        assert_eq!(g, h.monic());
        let f = form(h.mul(&a));
        let k = form(b.clone());
        assert!(forms_coprime(&f, &k).unwrap());
    }

    #[test]
    fn factor_free_of_main_variable_found_via_content() {
        // common factor y + z does not involve the last variable z only
        let c = x(1).add(&x(2));
        let f = c.mul(&x(0).pow(2).add(&x(2).pow(2)));
        let g = c.mul(&x(0).sub(&x(1)));
        assert_eq!(f.gcd(&g), c.monic());
        let c2 = x(0).add(&x(1));
        let f2 = c2.mul(&x(2).pow(3).add(&x(0).pow(3)));
        let g2 = c2.mul(&x(2).add(&x(1)));
        assert_eq!(f2.gcd(&g2), c2.monic());
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(3, 4).len(), 15);
        assert_eq!(monomials(4, 2).len(), 10);
        assert_eq!(monomials(3, 2)[0], vec![2, 0, 0]);
        assert_eq!(monomials(3, 2).last().unwrap(), &vec![0, 0, 2]);
    }

    #[test]
    fn display() {
        let p = x(0).pow(2).scale(&FieldElement::from_int(-3)).add(&x(1).mul(&x(2))).add(&x(2).pow(2).scale(&FieldElement::eps()));
        assert_eq!(form(p).to_string(), "-3*x^2 + y*z + e*z^2");
    }
}
