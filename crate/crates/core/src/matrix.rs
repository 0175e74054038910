//! Dense matrices over Q(ε) with fraction-free (Bareiss) elimination.

use std::fmt;

use thiserror::Error;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::FieldElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Row echelon form produced by Bareiss elimination.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub matrix: ExactMatrix,
    /// Pivot column of each nonzero row, in row order.
    pub pivots: Vec<usize>,
    /// Parity of the row swaps.
    pub swaps_odd: bool,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![FieldElement::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<FieldElement>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| FieldElement::from_int(x)).collect()).collect())
    }

    pub fn diagonal(entries: &[FieldElement]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = FieldElement::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += &(a * rhs.get(k, j));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = FieldElement::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Fraction-free forward elimination with row pivoting.
    ///
    /// Every update has the form `row_i ← (p·row_i − m_ic·row_r) / p_prev`, an
    /// invertible row operation, so row space and rank are preserved.
    pub fn echelon(&self) -> Echelon {
        if let Some(e) = integral_echelon(self) {
            return e;
        }
        let mut m = self.clone();
        let mut prev = FieldElement::one();
        let mut pivots = Vec::new();
        let mut swaps_odd = false;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                m.swap_rows(p, r);
                swaps_odd = !swaps_odd;
            }
            let pivot = m.get(r, c).clone();
            let prev_inv = prev.inv().expect("previous pivot is nonzero");
            for i in r + 1..m.rows {
                let lead = m.get(i, c).clone();
                for j in c + 1..m.cols {
                    let mut v = &pivot * m.get(i, j);
                    if !lead.is_zero() {
                        v -= &(&lead * m.get(r, j));
                    }
                    m.set(i, j, &v * &prev_inv);
                }
                m.set(i, c, FieldElement::zero());
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots, swaps_odd }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Each row scaled by the common denominator of its entries.
    fn cleared(&self) -> ExactMatrix {
        let mut m = self.clone();
        for i in 0..self.rows {
            let d = self.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator()));
            if !d.is_one() {
                let s = FieldElement::from_integers(d, BigInt::zero());
                for j in 0..self.cols {
                    let v = self.get(i, j) * &s;
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.cleared().echelon().pivots.len()
    }

    /// Determinant of a square matrix (last Bareiss pivot, sign-corrected).
    pub fn determinant(&self) -> Result<FieldElement, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::Dimension("determinant of non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(FieldElement::one());
        }
        let e = self.echelon();
        if e.pivots.len() < self.rows {
            return Ok(FieldElement::zero());
        }
        let d = e.matrix.get(self.rows - 1, self.cols - 1).clone();
        Ok(if e.swaps_odd { -d } else { d })
    }

    /// Basis of the right null space.
    ///
    /// One vector per non-pivot column `f`, with a 1 in slot `f` and zeros in
    /// the other free slots, so the basis depends only on the row space.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let e = self.cleared().echelon();
        let m = &e.matrix;
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &e.pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![FieldElement::zero(); self.cols];
            v[free] = FieldElement::one();
            for (k, &p) in e.pivots.iter().enumerate().rev() {
                let mut acc = FieldElement::zero();
                for j in p + 1..self.cols {
                    if !v[j].is_zero() && !m.get(k, j).is_zero() {
                        acc += &(m.get(k, j) * &v[j]);
                    }
                }
                v[p] = -(&acc / m.get(k, p));
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form with the zero rows dropped.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let e = self.echelon();
        let r = e.pivots.len();
        let mut m = ExactMatrix::zeros(r, self.cols);
        for i in 0..r {
            for j in 0..self.cols {
                m.set(i, j, e.matrix.get(i, j).clone());
            }
        }
        for k in (0..r).rev() {
            let p = e.pivots[k];
            let inv = m.get(k, p).inv().expect("pivot");
            for j in 0..self.cols {
                let v = m.get(k, j) * &inv;
                m.set(k, j, v);
            }
            for i in 0..k {
                let f = m.get(i, p).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = m.get(i, j) - &(&f * m.get(k, j));
                    m.set(i, j, v);
                }
            }
        }
        (m, e.pivots)
    }

    pub fn inverse(&self) -> Result<ExactMatrix, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, FieldElement::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(MatrixError::Singular);
        }
        let mut inv = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Solves `self · x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Vec<FieldElement>, MatrixError> {
        Ok(self.inverse()?.mul_vec(b))
    }

    /// Scales so that the first nonzero entry (row-major) is 1.
    pub fn normalized(&self) -> ExactMatrix {
        match self.data.iter().find(|x| !x.is_zero()) {
            Some(lead) => self.scale(&lead.inv().expect("nonzero")),
            None => self.clone(),
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone)]
struct Integral(BigInt, BigInt);

impl Integral {
    fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }

    fn mul(&self, o: &Integral) -> Integral {
        let bd = &self.1 * &o.1;
        Integral(&self.0 * &o.0 - &bd, &self.0 * &o.1 + &self.1 * &o.0 + bd)
    }

    /// `self / d`, exact in Z[ε].
    fn div_exact(&self, d: &Integral) -> Integral {
        let n = &d.0 * &d.0 + &d.0 * &d.1 + &d.1 * &d.1;
        let p = self.mul(&Integral(&d.0 + &d.1, -&d.1));
        Integral(p.0 / &n, p.1 / &n)
    }
}

/// Bareiss over Z[ε] for matrices with integral entries. Every intermediate
/// entry is a minor of the input, so the result equals the generic path.
fn integral_echelon(a: &ExactMatrix) -> Option<Echelon> {
    let mut m = a
        .data
        .iter()
        .map(|x| x.integer_parts().map(|(p, q)| Integral(p.clone(), q.clone())))
        .collect::<Option<Vec<_>>>()?;
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = Integral(BigInt::one(), BigInt::zero());
    let mut pivots = Vec::new();
    let mut swaps_odd = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.swap(p * cols + j, r * cols + j);
            }
            swaps_odd = !swaps_odd;
        }
        let pivot = m[r * cols + c].clone();
        let unit = prev.0.is_one() && prev.1.is_zero();
        for i in r + 1..rows {
            let lead = m[i * cols + c].clone();
            for j in c + 1..cols {
                let mut v = pivot.mul(&m[i * cols + j]);
                if !lead.is_zero() {
                    let w = lead.mul(&m[r * cols + j]);
                    v = Integral(v.0 - w.0, v.1 - w.1);
                }
                m[i * cols + j] = if unit { v } else { v.div_exact(&prev) };
            }
            m[i * cols + c] = Integral(BigInt::zero(), BigInt::zero());
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    let data = m.into_iter().map(|x| FieldElement::from_integers(x.0, x.1)).collect();
    Some(Echelon { matrix: ExactMatrix { rows, cols, data }, pivots, swaps_odd })
}

/// Free function form of [`ExactMatrix::kernel_basis`].
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<FieldElement>> {
    m.kernel_basis()
}
