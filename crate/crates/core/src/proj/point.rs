use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::FieldElement;

use super::ProjError;

/// A point of Pⁿ⁻¹ in homogeneous coordinates, stored with its first
/// nonzero coordinate scaled to 1 so that `==` is projective equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<const N: usize> {
    coords: [FieldElement; N],
}

/// Point of P³.
pub type ProjPoint = Point<4>;
/// Point of P².
pub type PlanePoint = Point<3>;
/// Point of P¹, usually a parameter on a line.
pub type LinePoint = Point<2>;

impl<const N: usize> Point<N> {
    pub fn new(coords: [FieldElement; N]) -> Result<Self, ProjError> {
        let lead = coords.iter().find(|c| !c.is_zero()).ok_or(ProjError::ZeroVector)?;
        let inv = lead.inv().expect("nonzero");
        let coords = coords.map(|c| &c * &inv);
        Ok(Point { coords })
    }

    pub fn from_slice(coords: &[FieldElement]) -> Result<Self, ProjError> {
        let arr: [FieldElement; N] = coords.to_vec().try_into().map_err(|_| ProjError::ZeroVector)?;
        Self::new(arr)
    }

    /// Small-integer constructor for literals; panics on the zero vector.
    pub fn from_ints(coords: [i64; N]) -> Self {
        Self::new(coords.map(FieldElement::from_int)).expect("nonzero point")
    }

    pub fn coords(&self) -> &[FieldElement; N] {
        &self.coords
    }

    pub fn to_vec(&self) -> Vec<FieldElement> {
        self.coords.to_vec()
    }
}

impl LinePoint {
    /// The parameter value ∞, i.e. (1:0).
    pub fn infinity() -> Self {
        Self::from_ints([1, 0])
    }

    /// The affine parameter `t`, i.e. (t:1).
    pub fn affine(t: FieldElement) -> Self {
        Self::new([t, FieldElement::one()]).expect("nonzero")
    }
}

impl<const N: usize> Point<N> {
    /// Coprime integer coordinates with the first nonzero one positive, when
    /// all coordinates are rational.
    pub fn integral_coords(&self) -> Option<[BigInt; N]> {
        if !self.coords.iter().all(FieldElement::is_rational) {
            return None;
        }
        let l = self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.re().denom()));
        let ints: Vec<BigInt> = self.coords.iter().map(|c| (c.re() * BigRational::from(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        Some(std::array::from_fn(|i| &ints[i] / &g))
    }
}

impl<const N: usize> Point<N> {
    /// A scalar multiple with coordinates in Z[ε] whose integer coefficients
    /// are coprime.
    pub fn integral_representative(&self) -> [FieldElement; N] {
        let parts = || self.coords.iter().flat_map(|c| [c.re(), c.eps_part()]);
        let l = parts().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scale = BigRational::from(l);
        let ints: Vec<BigInt> = parts().map(|q| (q * &scale).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        std::array::from_fn(|i| {
            let q = |k: usize| BigRational::from(&ints[2 * i + k] / &g);
            FieldElement::new(q(0), q(1))
        })
    }
}

impl<const N: usize> fmt::Display for Point<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match self.integral_coords() {
            Some(ints) => ints.iter().map(ToString::to_string).collect(),
            None => self.coords.iter().map(ToString::to_string).collect(),
        };
        write!(f, "({})", parts.join(":"))
    }
}

impl<const N: usize> fmt::Debug for Point<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse point `{0}`")]
pub struct PointParseError(pub String);

impl<const N: usize> FromStr for Point<N> {
    type Err = PointParseError;

    /// `(a:b:c:d)`, parentheses optional, coordinates in field syntax.
    fn from_str(s: &str) -> Result<Self, PointParseError> {
        let err = || PointParseError(s.to_string());
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
        let coords: Vec<FieldElement> =
            t.split(':').map(|c| c.parse::<FieldElement>()).collect::<Result<_, _>>().map_err(|_| err())?;
        if coords.len() != N {
            return Err(err());
        }
        Self::from_slice(&coords).map_err(|_| err())
    }
}

/// 2×2 bracket `s₁t₂ − s₂t₁`.
pub(crate) fn bracket(p: &LinePoint, q: &LinePoint) -> FieldElement {
    let [s1, t1] = p.coords();
    let [s2, t2] = q.coords();
    &(s1 * t2) - &(s2 * t1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_is_canonical() {
        let e = FieldElement::eps();
        let p = ProjPoint::new([FieldElement::zero(), e.clone(), FieldElement::one(), &e * &e]).unwrap();
        let q = ProjPoint::new([FieldElement::zero(), FieldElement::one(), e.inv().unwrap(), e.clone()]).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.coords()[1], FieldElement::one());
        assert_eq!(ProjPoint::new(std::array::from_fn(|_| FieldElement::zero())), Err(ProjError::ZeroVector));
    }

    #[test]
    fn parse_roundtrip() {
        let p: ProjPoint = "(e:1:e-1:e)".parse().unwrap();
        assert_eq!(p.to_string().parse::<ProjPoint>().unwrap(), p);
        assert_eq!("2:4:0:-2".parse::<ProjPoint>().unwrap(), ProjPoint::from_ints([1, 2, 0, -1]));
        assert_eq!("(1:1/2:0:-1/2)".parse::<ProjPoint>().unwrap().to_string(), "(2:1:0:-1)");
        assert!("1:0:0".parse::<ProjPoint>().is_err());
        assert!("0:0:0:0".parse::<ProjPoint>().is_err());
    }
}
