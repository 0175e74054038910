use thiserror::Error;

use crate::config::Configuration;
use crate::field::FieldElement;
use crate::matrix::ExactMatrix;
use crate::proj::{PlanePoint, ProjPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error("center coincides with point {0}")]
    CenterInZ(usize),
    #[error("center lies on the secant through points {0} and {1}")]
    SecantCollision(usize, usize),
    #[error("center lies on the target plane")]
    CenterOnPlane,
    #[error("target plane equation is zero")]
    ZeroPlane,
}

/// Points of P² obtained by projecting a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarConfig {
    points: Vec<PlanePoint>,
}

impl PlanarConfig {
    /// Pairwise distinct plane points.
    pub fn new(points: Vec<PlanePoint>) -> Option<PlanarConfig> {
        let mut sorted: Vec<&PlanePoint> = points.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1]).then_some(PlanarConfig { points })
    }

    pub fn points(&self) -> &[PlanePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The plane `w = 0`.
pub fn default_plane() -> [FieldElement; 4] {
    [FieldElement::zero(), FieldElement::zero(), FieldElement::zero(), FieldElement::one()]
}

/// Projects one point from `center` into the plane `h·x = 0`, in the plane
/// coordinates given by the free columns of `h`.
pub fn project_point(
    p: &ProjPoint,
    center: &ProjPoint,
    h: &[FieldElement; 4],
) -> Result<PlanePoint, ProjectionError> {
    let basis = ExactMatrix::from_rows(vec![h.to_vec()]).kernel_basis();
    if basis.len() != 3 {
        return Err(ProjectionError::ZeroPlane);
    }
    let hc = crate::proj::dot(h, center.coords());
    if hc.is_zero() {
        return Err(ProjectionError::CenterOnPlane);
    }
    let hp = crate::proj::dot(h, p.coords());
    let img: Vec<FieldElement> = (0..4).map(|i| &(&hc * &p.coords()[i]) - &(&hp * &center.coords()[i])).collect();
    // kernel vectors are unit vectors at the free columns
    let free: Vec<usize> = basis.iter().map(|v| v.iter().position(FieldElement::is_one).expect("unit")).collect();
    let coords: Vec<FieldElement> = free.iter().map(|&j| img[j].clone()).collect();
    PlanePoint::from_slice(&coords).map_err(|_| ProjectionError::CenterOnPlane)
}

/// Projection of `z` from `center` to the plane `h·x = 0`.
pub fn project_to_plane(
    z: &Configuration,
    center: &ProjPoint,
    h: &[FieldElement; 4],
) -> Result<PlanarConfig, ProjectionError> {
    let mut out = Vec::with_capacity(z.len());
    for (i, p) in z.points().iter().enumerate() {
        if p == center {
            return Err(ProjectionError::CenterInZ(i));
        }
        out.push(project_point(p, center, h)?);
    }
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if out[i] == out[j] {
                return Err(ProjectionError::SecantCollision(i, j));
            }
        }
    }
    Ok(PlanarConfig { points: out })
}

/// Projection of `z` from `center` to the plane `w = 0`.
pub fn project(z: &Configuration, center: &ProjPoint) -> Result<PlanarConfig, ProjectionError> {
    project_to_plane(z, center, &default_plane())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_points_are_fixed() {
        let z = Configuration::new(vec![ProjPoint::from_ints([1, 2, 3, 0]), ProjPoint::from_ints([0, 1, 0, 0])]).unwrap();
        let p = project(&z, &ProjPoint::from_ints([0, 0, 0, 1])).unwrap();
        assert_eq!(p.points()[0], PlanePoint::from_ints([1, 2, 3]));
        assert_eq!(p.points()[1], PlanePoint::from_ints([0, 1, 0]));
    }

    #[test]
    fn secant_center_collides() {
        let z = Configuration::new(vec![ProjPoint::from_ints([1, 0, 0, 0]), ProjPoint::from_ints([1, 0, 0, 2])]).unwrap();
        let c = ProjPoint::from_ints([1, 0, 0, 1]);
        assert_eq!(project(&z, &c), Err(ProjectionError::SecantCollision(0, 1)));
        assert_eq!(project(&z, &ProjPoint::from_ints([1, 0, 0, 2])), Err(ProjectionError::CenterInZ(1)));
        assert_eq!(project(&z, &ProjPoint::from_ints([0, 1, 0, 0])), Err(ProjectionError::CenterOnPlane));
    }
}
