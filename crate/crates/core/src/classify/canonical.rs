use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::config::Configuration;
use crate::field::FieldElement;
use crate::proj::{LinePoint, ProjPoint};

/// Built-in configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalName {
    /// The (4,4) half grid whose quadruples have j² − j + 1 = 0.
    AnharmonicDerived,
    /// First of the two harmonic (4,4) half grids.
    HarmonicVariant1,
    /// Second harmonic half grid, the normal form for the harmonic case.
    HarmonicVariant2,
    /// The 12 points of the root system D4, a non-grid (3,4)-geproci set.
    D4,
    /// An a × b grid on the quadric xw − yz.
    Grid(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown configuration `{0}`")]
pub struct UnknownName(pub String);

impl fmt::Display for CanonicalName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalName::AnharmonicDerived => write!(f, "anharmonic"),
            CanonicalName::HarmonicVariant1 => write!(f, "harmonic-v1"),
            CanonicalName::HarmonicVariant2 => write!(f, "harmonic-v2"),
            CanonicalName::D4 => write!(f, "d4"),
            CanonicalName::Grid(a, b) => write!(f, "grid:{a}x{b}"),
        }
    }
}

impl FromStr for CanonicalName {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, UnknownName> {
        let err = || UnknownName(s.to_string());
        Ok(match s {
            "anharmonic" => CanonicalName::AnharmonicDerived,
            "harmonic-v1" => CanonicalName::HarmonicVariant1,
            "harmonic-v2" => CanonicalName::HarmonicVariant2,
            "d4" => CanonicalName::D4,
            _ => {
                let dims = s.strip_prefix("grid:").ok_or_else(err)?;
                let (a, b) = dims.split_once('x').ok_or_else(err)?;
                let (a, b) = (a.parse().map_err(|_| err())?, b.parse().map_err(|_| err())?);
                if a < 2 || b < 2 {
                    return Err(err());
                }
                CanonicalName::Grid(a, b)
            }
        })
    }
}

fn pt(s: &str) -> ProjPoint {
    s.parse().expect("literal point")
}

fn pts(s: &[&str]) -> Vec<ProjPoint> {
    s.iter().map(|p| pt(p)).collect()
}

/// Points a₁..a₄, b₁..b₄, c₁..c₄ shared by both harmonic variants.
pub fn harmonic_abc() -> Vec<ProjPoint> {
    pts(&[
        "1:0:0:0", "0:0:1:0", "1:0:1:0", "1:0:-1:0",
        "0:1:0:0", "0:0:0:1", "0:1:0:1", "0:1:0:-1",
        "1:1:0:0", "0:0:1:1", "1:1:1:1", "1:1:-1:-1",
    ])
}

fn harmonic(d: [&str; 4]) -> Vec<ProjPoint> {
    let mut v = harmonic_abc();
    v.extend(pts(&d));
    v
}

/// The four lines, a through d, as consecutive groups of four.
fn four_by_four(points: Vec<ProjPoint>) -> Configuration {
    Configuration::new(points)
        .and_then(|c| c.with_family((0..4).map(|g| (4 * g..4 * g + 4).collect()).collect()))
        .expect("half grid literal")
}

fn grid_params(n: usize) -> Vec<LinePoint> {
    (0..n)
        .map(|k| match k {
            0 => LinePoint::from_ints([1, 0]),
            1 => LinePoint::from_ints([0, 1]),
            _ => LinePoint::from_ints([1, k as i64 - 1]),
        })
        .collect()
}

/// The grid on xw − yz cut by the lines with the given parameters: point
/// `(i, j)` is `(s_i u_j : s_i v_j : t_i u_j : t_i v_j)` at index `i·|B| + j`.
/// The first family holds the lines of constant `(s:t)`.
pub fn grid_configuration(a: &[LinePoint], b: &[LinePoint]) -> Result<Configuration, crate::config::ConfigError> {
    let mut points = Vec::with_capacity(a.len() * b.len());
    for p in a {
        let [s, t] = p.coords();
        for q in b {
            let [u, v] = q.coords();
            let c: [FieldElement; 4] = [s * u, s * v, t * u, t * v];
            points.push(ProjPoint::new(c).expect("nonzero"));
        }
    }
    let m = b.len();
    let fa = (0..a.len()).map(|i| (0..m).map(|j| i * m + j).collect()).collect();
    let fb = (0..m).map(|j| (0..a.len()).map(|i| i * m + j).collect()).collect();
    Configuration::new(points)?.with_family(fa)?.with_family(fb)
}

pub fn canonical_configuration(name: CanonicalName) -> Configuration {
    match name {
        CanonicalName::AnharmonicDerived => four_by_four(pts(&[
            "1:0:0:0", "0:0:1:0", "1:0:1:0", "1:0:e:0",
            "0:1:0:0", "0:0:0:1", "0:1:0:1", "0:1:0:e",
            "1:1:0:0", "0:0:1:1", "1:1:1:1", "1:1:e:e",
            "1:0:1:1", "0:1:-1:0", "1:1:0:1", "e:1:e-1:e",
        ])),
        CanonicalName::HarmonicVariant1 => four_by_four(harmonic(["2:1:0:-1", "0:1:2:1", "1:1:1:0", "-1:0:1:1"])),
        CanonicalName::HarmonicVariant2 => four_by_four(harmonic(["1:0:0:-1", "0:1:1:0", "1:1:1:-1", "-1:1:1:1"])),
        CanonicalName::D4 => Configuration::new(pts(&[
            "1:1:0:0", "1:0:1:0", "1:0:0:1", "0:1:1:0", "0:1:0:1", "0:0:1:1",
            "1:-1:0:0", "1:0:-1:0", "1:0:0:-1", "0:1:-1:0", "0:1:0:-1", "0:0:1:-1",
        ]))
        .expect("distinct"),
        CanonicalName::Grid(a, b) => grid_configuration(&grid_params(a), &grid_params(b)).expect("grid"),
    }
}
