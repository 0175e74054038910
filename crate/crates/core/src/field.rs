//! Exact arithmetic in Q and in the quadratic field Q(ε), ε² = ε − 1.
//!
//! ε is a primitive sixth root of unity. Elements are stored in the basis
//! {1, ε} with canonical big rationals, so equality and hashing are exact.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse field element `{0}`")]
    Parse(String),
}

/// An element `a + b·ε` of Q(ε).
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FieldElement {
    a: Rational,
    b: Rational,
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl FieldElement {
    pub fn new(a: Rational, b: Rational) -> Self {
        FieldElement { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        FieldElement { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `n/d + (m/e)·ε` from small integers; panics if a denominator is zero.
    pub fn from_ratios(n: i64, d: i64, m: i64, e: i64) -> Self {
        FieldElement { a: rational(n, d), b: rational(m, e) }
    }

    /// The generator ε.
    pub fn eps() -> Self {
        FieldElement { a: Rational::zero(), b: Rational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Rational part.
    pub fn re(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of ε.
    pub fn eps_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// `(a, b)` when both coordinates are integers.
    pub fn integer_parts(&self) -> Option<(&BigInt, &BigInt)> {
        (self.a.is_integer() && self.b.is_integer()).then(|| (self.a.numer(), self.b.numer()))
    }

    pub fn from_integers(a: BigInt, b: BigInt) -> Self {
        FieldElement { a: Rational::from_integer(a), b: Rational::from_integer(b) }
    }

    /// Least common multiple of the two denominators.
    pub fn denominator(&self) -> BigInt {
        num_integer::Integer::lcm(self.a.denom(), self.b.denom())
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate, sending ε to 1 − ε.
    pub fn conj(&self) -> Self {
        FieldElement { a: &self.a + &self.b, b: -&self.b }
    }

    /// Field norm `a² + ab + b²`; positive for nonzero elements.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a + &self.a * &self.b + &self.b * &self.b
    }

    /// Trace `2a + b`.
    pub fn trace(&self) -> Rational {
        &self.a * Rational::from_integer(BigInt::from(2)) + &self.b
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(FieldElement { a: c.a / &n, b: c.b / n })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// A square root inside Q(ε), if one exists.
    ///
    /// If `s² = x` then `N(s)² = N(x)` and `(s + s̄)² = Tr(x) + 2N(s)`, which
    /// pins `s` down once the two rational square roots exist.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = rational_sqrt(&self.norm())?;
        let two_n = &n + &n;
        let t2 = self.trace() + two_n;
        if t2.is_zero() {
            // s̄ = −s, so s = y(ε − 1/2) and x = −3y²/4.
            let y2 = -(self.a.clone() * rational(4, 3));
            let y = rational_sqrt(&y2)?;
            let s = FieldElement { a: -(&y * rational(1, 2)), b: y };
            return (&s * &s == *self).then_some(s);
        }
        let t = rational_sqrt(&t2)?;
        let s = &(self + &FieldElement::from_rational(n)) * &FieldElement::from_rational(t.recip());
        (&s * &s == *self).then_some(s)
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for FieldElement {
    fn from(a: Rational) -> Self {
        Self::from_rational(a)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        // (a + bε)(c + dε) = ac − bd + (ad + bc + bd)ε
        let bd = &self.b * &rhs.b;
        FieldElement {
            a: &self.a * &rhs.a - &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a + bd,
        }
    }
}

/// Panics on division by zero; use [`FieldElement::checked_div`] otherwise.
impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero in Q(e)")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { a: -&self.a, b: -&self.b }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { a: -self.a, b: -self.b }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for FieldElement {
    /// Canonical text form: `a`, `b*e`, `a+b*e` or `a-b*e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b_abs = self.b.abs();
        let b_str = if b_abs.is_one() { "e".to_string() } else { format!("{b_abs}*e") };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => {
                if self.b.is_negative() {
                    write!(f, "-{b_str}")
                } else {
                    write!(f, "{b_str}")
                }
            }
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                write!(f, "{}{sign}{b_str}", self.a)
            }
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let valid = |t: &str, allow_sign: bool| {
        let t = if allow_sign { t.strip_prefix(['+', '-']).unwrap_or(t) } else { t };
        !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit())
    };
    if !valid(n, true) || !valid(d, false) {
        return None;
    }
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

impl FromStr for FieldElement {
    type Err = FieldError;

    /// Accepts sums of at most one rational term and one `e` term:
    /// `1`, `-1/2`, `e`, `-e`, `e-1`, `2+3/5*e`, `3/5*e+2`.
    fn from_str(src: &str) -> Result<Self, FieldError> {
        let err = || FieldError::Parse(src.to_string());
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        // split into signed terms
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' && bytes[i - 1] != b'*' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        if terms.len() > 2 {
            return Err(err());
        }
        let mut a: Option<Rational> = None;
        let mut b: Option<Rational> = None;
        for t in terms {
            let (neg, body) = match t.as_bytes()[0] {
                b'-' => (true, &t[1..]),
                b'+' => (false, &t[1..]),
                _ => (false, t),
            };
            let (value, is_eps) = if body == "e" {
                (Rational::one(), true)
            } else if let Some(coef) = body.strip_suffix("*e") {
                (parse_rational(coef).ok_or_else(err)?, true)
            } else {
                (parse_rational(body).ok_or_else(err)?, false)
            };
            let value = if neg { -value } else { value };
            let slot = if is_eps { &mut b } else { &mut a };
            if slot.is_some() {
                return Err(err());
            }
            *slot = Some(value);
        }
        Ok(FieldElement { a: a.unwrap_or_else(Rational::zero), b: b.unwrap_or_else(Rational::zero) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Binary field operation with division-by-zero reported as an error.
pub fn field_arith(x: &FieldElement, y: &FieldElement, op: FieldOp) -> Result<FieldElement, FieldError> {
    Ok(match op {
        FieldOp::Add => x + y,
        FieldOp::Sub => x - y,
        FieldOp::Mul => x * y,
        FieldOp::Div => x.checked_div(y)?,
    })
}
