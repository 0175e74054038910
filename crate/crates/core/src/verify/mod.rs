//! Geproci verification: project from seeded random centers, certify the
//! planar image as a complete intersection, and detect grid and half-grid
//! structure.

mod grid;
mod ideal;
mod projection;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::config::{Configuration, LineGroup};
use crate::matrix::ExactMatrix;
use crate::poly::{Form, Poly, PolyError, PLANE_VARS};
use crate::field::FieldElement;
use crate::proj::{PlanePoint, ProjPoint};

pub use grid::{grid_test, line_removal_check, GridStructure, LineRemoval, LineRemovalReport};
pub use ideal::{ci_test, ideal_profile, split_ci_test, vanishing_forms, CIWitness, PlanarIdealProfile};
pub use projection::{default_plane, project, project_point, project_to_plane, PlanarConfig, ProjectionError};

/// Default number of projection centers per test.
pub const DEFAULT_TRIALS: usize = 3;
/// Attempts per trial before giving up on finding a usable center.
pub const MAX_RETRIES: usize = 32;
/// Center coordinates are drawn from `[-CENTER_HEIGHT, CENTER_HEIGHT]`.
pub const CENTER_HEIGHT: i64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{points} points cannot be a complete intersection of type ({a},{b})")]
    SizeMismatch { points: usize, a: u32, b: u32 },
    #[error("trial {trial}: no usable projection center after {retries} attempts")]
    RetriesExhausted { trial: usize, retries: usize },
    #[error("images of lines {0} and {1} coincide")]
    ImageLinesCollide(usize, usize),
    #[error("configuration has no line grouping")]
    NoGrouping,
    #[error("trials must be at least 1")]
    NoTrials,
    #[error(transparent)]
    Projection(#[from] ProjectionError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Geproci,
    NotGeproci,
    /// Some centers certified a complete intersection and some did not.
    /// A single failure already rules out the geproci property.
    InconsistentTrials,
}

#[derive(Debug, Clone)]
pub struct Trial {
    pub index: usize,
    pub center: ProjPoint,
    /// Centers rejected before this one.
    pub rejected: usize,
    pub hilbert: Vec<usize>,
    /// `h(a+b−1) = h(a+b) = |Z|`.
    pub stabilized: bool,
    pub witness: Option<CIWitness>,
}

#[derive(Debug, Clone)]
pub struct GeprociReport {
    pub a: u32,
    pub b: u32,
    pub seed: u64,
    pub trials: Vec<Trial>,
    pub verdict: Verdict,
}

/// Uniform integer center off the plane `w = 0`.
pub fn sample_center<R: Rng>(rng: &mut R) -> ProjPoint {
    loop {
        let c: [i64; 4] = std::array::from_fn(|_| rng.random_range(-CENTER_HEIGHT..=CENTER_HEIGHT));
        if c[3] != 0 {
            return ProjPoint::from_ints(c);
        }
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Distinct planes through three non-collinear points of `z`, as normalized
/// dual coordinates.
pub fn spanned_planes(z: &Configuration) -> Vec<ProjPoint> {
    let p = z.points();
    let mut planes = std::collections::BTreeSet::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            for k in j + 1..p.len() {
                let m = ExactMatrix::from_rows(vec![p[i].coords().to_vec(), p[j].coords().to_vec(), p[k].coords().to_vec()]);
                if let [h] = m.kernel_basis().as_slice() {
                    planes.insert(ProjPoint::from_slice(h).expect("kernel vector is nonzero"));
                }
            }
        }
    }
    planes.into_iter().collect()
}

fn on_plane(c: &ProjPoint, h: &ProjPoint) -> bool {
    c.coords().iter().zip(h.coords()).fold(FieldElement::zero(), |acc, (a, b)| &acc + &(a * b)).is_zero()
}

/// Projects `z` from a seeded center, resampling on collisions and on
/// centers lying in a plane spanned by points of `z`.
pub fn project_seeded(z: &Configuration, seed: u64, trial: usize) -> Result<(ProjPoint, usize, PlanarConfig), VerifyError> {
    let planes = spanned_planes(z);
    let mut rng = trial_rng(seed, trial);
    for rejected in 0..MAX_RETRIES {
        let c = sample_center(&mut rng);
        if planes.iter().any(|h| on_plane(&c, h)) {
            continue;
        }
        match project(z, &c) {
            Ok(p) => return Ok((c, rejected, p)),
            Err(ProjectionError::CenterInZ(_) | ProjectionError::SecantCollision(..)) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(VerifyError::RetriesExhausted { trial, retries: MAX_RETRIES })
}

fn run_trial(z: &Configuration, a: u32, b: u32, seed: u64, index: usize) -> Result<Trial, VerifyError> {
    let (center, rejected, planar) = project_seeded(z, seed, index)?;
    let profile = ideal_profile(&planar, a + b);
    let n = z.len();
    let h = &profile.hilbert;
    let stabilized = h[(a + b - 1) as usize] == n && h[(a + b) as usize] == n;
    let witness = ci_test(&planar, a, b)?;
    Ok(Trial { index, center, rejected, hilbert: profile.hilbert, stabilized, witness })
}

/// Tests the (a,b)-geproci property at `trials` seeded random centers.
/// A negative trial proves the set is not geproci; positive trials at
/// random centers certify the generic projection.
pub fn geproci_test(z: &Configuration, a: u32, b: u32, trials: usize, seed: u64) -> Result<GeprociReport, VerifyError> {
    let (a, b) = (a.min(b), a.max(b));
    if (a * b) as usize != z.len() {
        return Err(VerifyError::SizeMismatch { points: z.len(), a, b });
    }
    if trials == 0 {
        return Err(VerifyError::NoTrials);
    }
    let trials: Vec<Trial> =
        (0..trials).into_par_iter().map(|t| run_trial(z, a, b, seed, t)).collect::<Result<_, _>>()?;
    let positive = trials.iter().filter(|t| t.witness.is_some()).count();
    let verdict = match positive {
        0 => Verdict::NotGeproci,
        p if p == trials.len() => Verdict::Geproci,
        _ => Verdict::InconsistentTrials,
    };
    Ok(GeprociReport { a, b, seed, trials, verdict })
}

/// Linear form of the line through two plane points.
fn join(p: &PlanePoint, q: &PlanePoint) -> Form {
    let [x1, y1, z1] = p.coords();
    let [x2, y2, z2] = q.coords();
    let c = [&(y1 * z2) - &(z1 * y2), &(z1 * x2) - &(x1 * z2), &(x1 * y2) - &(y1 * x2)];
    Form::new(&PLANE_VARS, Poly::linear(&c), 1).expect("linear").monic()
}

/// Certifies the projection from `center` as a complete intersection whose
/// first curve is the union of the images of the given lines.
pub fn split_witness(z: &Configuration, groups: &[LineGroup], center: &ProjPoint) -> Result<Option<CIWitness>, VerifyError> {
    let planar = project(z, center)?;
    let lines: Vec<Form> = groups
        .iter()
        .map(|g| join(&planar.points()[g.indices[0]], &planar.points()[g.indices[1]]))
        .collect();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if lines[i] == lines[j] {
                return Err(VerifyError::ImageLinesCollide(i, j));
            }
        }
    }
    split_ci_test(&planar, &lines)
}

/// Half-grid witness: the first curve is the union of the images of the
/// lines of the configuration's first line family.
pub fn halfgrid_witness(z: &Configuration, center: &ProjPoint) -> Result<Option<CIWitness>, VerifyError> {
    let groups = z.grouping().ok_or(VerifyError::NoGrouping)?;
    split_witness(z, groups, center)
}

/// Everything `verify` reports about a configuration.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub geproci: GeprociReport,
    pub grid: Option<GridStructure>,
    pub quadric_dim: usize,
    /// One entry per line family (from the input, or from the detected grid),
    /// evaluated at the first trial's center.
    pub split_witnesses: Vec<Option<CIWitness>>,
    pub line_removal: Option<LineRemovalReport>,
}

impl VerificationReport {
    pub fn is_half_grid(&self) -> bool {
        self.geproci.verdict == Verdict::Geproci
            && self.grid.is_none()
            && self.split_witnesses.iter().any(Option::is_some)
    }
}

pub fn verify_configuration(
    z: &Configuration,
    a: u32,
    b: u32,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, VerifyError> {
    let geproci = geproci_test(z, a, b, trials, seed)?;
    let grid = grid_test(z.points());
    let quadric_dim = crate::proj::quadrics_through(z.points()).len();
    let families: Vec<Vec<LineGroup>> = if !z.families().is_empty() {
        z.families().to_vec()
    } else if let Some(g) = &grid {
        g.families.to_vec()
    } else {
        Vec::new()
    };
    let center = &geproci.trials[0].center;
    let split_witnesses =
        families.iter().map(|f| split_witness(z, f, center)).collect::<Result<Vec<_>, _>>()?;
    let line_removal = match z.grouping() {
        Some(g) if g.len() == 4 && g.iter().all(|grp| grp.indices.len() == 4) => line_removal_check(z),
        _ => None,
    };
    Ok(VerificationReport { geproci, grid, quadric_dim, split_witnesses, line_removal })
}
