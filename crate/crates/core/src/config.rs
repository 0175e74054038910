//! Labeled point sets in P³ with optional partitions into collinear groups.

use std::collections::HashMap;

use thiserror::Error;

use crate::proj::{ProjLine, ProjPoint, Projectivity3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("point index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("group {group} has fewer than two points")]
    GroupTooSmall { group: usize },
    #[error("point {index} is not on the line of group {group}")]
    PointOffLine { group: usize, index: usize },
    #[error("point {0} belongs to more than one group")]
    GroupsOverlap(usize),
    #[error("point {0} belongs to no group")]
    GroupsDontCover(usize),
}

/// A set of points lying on one line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGroup {
    pub line: ProjLine,
    pub indices: Vec<usize>,
}

/// Pairwise distinct points with zero or more line families, each family a
/// partition of the points into collinear groups. A grid carries two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    points: Vec<ProjPoint>,
    families: Vec<Vec<LineGroup>>,
}

impl Configuration {
    pub fn new(points: Vec<ProjPoint>) -> Result<Self, ConfigError> {
        let mut seen: HashMap<&ProjPoint, usize> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if let Some(&j) = seen.get(p) {
                return Err(ConfigError::DuplicatePoint(j, i));
            }
            seen.insert(p, i);
        }
        Ok(Configuration { points, families: Vec::new() })
    }

    /// Adds a line family given as index groups; the lines are recovered from
    /// the first two points of each group.
    pub fn with_family(mut self, groups: Vec<Vec<usize>>) -> Result<Self, ConfigError> {
        let n = self.points.len();
        let mut owner = vec![None; n];
        let mut family = Vec::with_capacity(groups.len());
        for (g, idx) in groups.into_iter().enumerate() {
            if idx.len() < 2 {
                return Err(ConfigError::GroupTooSmall { group: g });
            }
            for &i in &idx {
                if i >= n {
                    return Err(ConfigError::IndexOutOfRange(i));
                }
                if owner[i].replace(g).is_some() {
                    return Err(ConfigError::GroupsOverlap(i));
                }
            }
            let line = ProjLine::through(&self.points[idx[0]], &self.points[idx[1]]).expect("distinct points");
            if let Some(&bad) = idx.iter().find(|&&i| !line.contains(&self.points[i])) {
                return Err(ConfigError::PointOffLine { group: g, index: bad });
            }
            family.push(LineGroup { line, indices: idx });
        }
        if let Some(i) = owner.iter().position(Option::is_none) {
            return Err(ConfigError::GroupsDontCover(i));
        }
        self.families.push(family);
        Ok(self)
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn families(&self) -> &[Vec<LineGroup>] {
        &self.families
    }

    /// The first line family, if any.
    pub fn grouping(&self) -> Option<&[LineGroup]> {
        self.families.first().map(Vec::as_slice)
    }

    pub fn without_families(&self) -> Configuration {
        Configuration { points: self.points.clone(), families: Vec::new() }
    }

    /// The sub-configuration on the given indices, without line families.
    pub fn subset(&self, indices: &[usize]) -> Configuration {
        Configuration { points: indices.iter().map(|&i| self.points[i].clone()).collect(), families: Vec::new() }
    }

    /// Image under a projectivity, keeping indices and families.
    pub fn transform(&self, phi: &Projectivity3) -> Configuration {
        let points = self.points.iter().map(|p| phi.apply(p)).collect();
        let families = self
            .families
            .iter()
            .map(|f| {
                f.iter().map(|g| LineGroup { line: phi.apply_line(&g.line), indices: g.indices.clone() }).collect()
            })
            .collect();
        Configuration { points, families }
    }

    /// Replaces point `i`, dropping line families.
    pub fn with_point_replaced(&self, i: usize, p: ProjPoint) -> Result<Configuration, ConfigError> {
        let mut pts = self.points.clone();
        *pts.get_mut(i).ok_or(ConfigError::IndexOutOfRange(i))? = p;
        Configuration::new(pts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<ProjPoint> {
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]].map(ProjPoint::from_ints).to_vec()
    }

    #[test]
    fn families_are_validated() {
        let c = Configuration::new(square()).unwrap();
        assert!(c.clone().with_family(vec![vec![0, 1], vec![2, 3]]).is_ok());
        assert_eq!(c.clone().with_family(vec![vec![0, 1], vec![1, 2, 3]]), Err(ConfigError::GroupsOverlap(1)));
        assert_eq!(c.clone().with_family(vec![vec![0, 1]]), Err(ConfigError::GroupsDontCover(2)));
        assert_eq!(c.with_family(vec![vec![0, 1, 2], vec![3, 3]]).unwrap_err(), ConfigError::PointOffLine { group: 0, index: 2 });
    }

    #[test]
    fn duplicates_rejected() {
        let mut pts = square();
        pts.push(ProjPoint::from_ints([2, 0, 0, 0]));
        assert_eq!(Configuration::new(pts), Err(ConfigError::DuplicatePoint(0, 4)));
    }
}
