use std::collections::HashSet;

use rayon::prelude::*;

use super::cross_ratio::{cross_ratio, cross_ratio_type, CrossRatioType};
use super::line::ProjLine;
use super::point::ProjPoint;
use super::projectivity::{in_general_position, projectivity3_from_frames, Projectivity3};
use super::ProjError;

/// A maximal set of at least three collinear points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollinearCluster {
    pub line: ProjLine,
    pub indices: Vec<usize>,
}

pub fn collinear_clusters(points: &[ProjPoint]) -> Vec<CollinearCluster> {
    let n = points.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let Ok(line) = ProjLine::through(&points[i], &points[j]) else {
                continue;
            };
            let on: Vec<usize> = (0..n).filter(|&k| line.contains(&points[k])).collect();
            // report each line once, from its two smallest indices
            if on.len() >= 3 && on[0] == i && on[1] == j {
                out.push(CollinearCluster { line, indices: on });
            }
        }
    }
    out
}

/// Cluster sizes in decreasing order.
pub fn collinearity_profile(points: &[ProjPoint]) -> Vec<usize> {
    let mut v: Vec<usize> = collinear_clusters(points).iter().map(|c| c.indices.len()).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Restrict candidate images by collinearity signatures.
    pub prune: bool,
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { prune: true, parallel: true }
    }
}

type ClusterKey = (usize, Option<CrossRatioType>);

struct Invariants {
    signature: Vec<Vec<ClusterKey>>,
    pair: Vec<Vec<Option<ClusterKey>>>,
}

fn invariants(points: &[ProjPoint]) -> Invariants {
    let n = points.len();
    let mut signature = vec![Vec::new(); n];
    let mut pair = vec![vec![None; n]; n];
    for c in collinear_clusters(points) {
        let kind = (c.indices.len() == 4).then(|| {
            let q: [ProjPoint; 4] = std::array::from_fn(|i| points[c.indices[i]].clone());
            cross_ratio_type(&cross_ratio(&q).expect("distinct collinear points"))
        });
        let key = (c.indices.len(), kind);
        for &i in &c.indices {
            signature[i].push(key);
            for &j in &c.indices {
                if i != j {
                    pair[i][j] = Some(key);
                }
            }
        }
    }
    for s in &mut signature {
        s.sort_unstable();
    }
    Invariants { signature, pair }
}

fn first_frame(points: &[ProjPoint]) -> Option<[usize; 5]> {
    let n = points.len();
    let mut idx = [0usize, 1, 2, 3, 4];
    if n < 5 {
        return None;
    }
    loop {
        let pts: [ProjPoint; 5] = idx.map(|i| points[i].clone());
        if in_general_position(&pts) {
            return Some(idx);
        }
        // next 5-combination in lex order
        let mut k = 4;
        loop {
            if idx[k] < n - 5 + k {
                idx[k] += 1;
                for m in k + 1..5 {
                    idx[m] = idx[m - 1] + 1;
                }
                break;
            }
            if k == 0 {
                return None;
            }
            k -= 1;
        }
    }
}

/// A projectivity of P³ mapping the point set `z1` onto `z2`, if one exists.
pub fn equivalent_configurations(z1: &[ProjPoint], z2: &[ProjPoint]) -> Result<Option<Projectivity3>, ProjError> {
    equivalent_configurations_with(z1, z2, SearchOptions::default())
}

/// As [`equivalent_configurations`]. The images of a fixed frame of `z1` are
/// enumerated in lexicographic order of their indices in `z2`, and the first
/// success is returned, so the answer does not depend on the options.
pub fn equivalent_configurations_with(
    z1: &[ProjPoint],
    z2: &[ProjPoint],
    opts: SearchOptions,
) -> Result<Option<Projectivity3>, ProjError> {
    Ok(search_equivalence(z1, z2, opts)?.projectivity)
}

/// Outcome of an equivalence search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceSearch {
    pub projectivity: Option<Projectivity3>,
    /// Ordered candidate images of the frame that survive pruning.
    pub frames: usize,
    /// The sizes or the collinearity invariants already differ.
    pub rejected_by_invariants: bool,
}

impl EquivalenceSearch {
    fn rejected() -> Self {
        EquivalenceSearch { projectivity: None, frames: 0, rejected_by_invariants: true }
    }
}

pub fn search_equivalence(z1: &[ProjPoint], z2: &[ProjPoint], opts: SearchOptions) -> Result<EquivalenceSearch, ProjError> {
    if z1.len() != z2.len() {
        return Ok(EquivalenceSearch::rejected());
    }
    let frame = first_frame(z1).ok_or(ProjError::DegenerateFrame)?;
    if first_frame(z2).is_none() {
        return Ok(EquivalenceSearch::rejected());
    }
    let (inv1, inv2) = if opts.prune {
        if collinearity_profile(z1) != collinearity_profile(z2) {
            return Ok(EquivalenceSearch::rejected());
        }
        let (a, b) = (invariants(z1), invariants(z2));
        let mut s1 = a.signature.clone();
        let mut s2 = b.signature.clone();
        s1.sort();
        s2.sort();
        if s1 != s2 {
            return Ok(EquivalenceSearch::rejected());
        }
        (Some(a), Some(b))
    } else {
        (None, None)
    };
    let target: HashSet<&ProjPoint> = z2.iter().collect();
    let n = z2.len();

    let admissible = |chosen: &[usize], j: usize| -> bool {
        if chosen.contains(&j) {
            return false;
        }
        let (Some(a), Some(b)) = (&inv1, &inv2) else {
            return true;
        };
        let k = chosen.len();
        if a.signature[frame[k]] != b.signature[j] {
            return false;
        }
        chosen.iter().enumerate().all(|(m, &jm)| a.pair[frame[m]][frame[k]] == b.pair[jm][j])
    };

    let src: [ProjPoint; 5] = frame.map(|i| z1[i].clone());
    let try_tuple = |t: &[usize]| -> Option<Projectivity3> {
        let dst: [ProjPoint; 5] = std::array::from_fn(|i| z2[t[i]].clone());
        let phi = projectivity3_from_frames(&src, &dst).ok()?;
        z1.iter().all(|p| target.contains(&phi.apply(p))).then_some(phi)
    };

    fn extend(
        prefix: &mut Vec<usize>,
        n: usize,
        admissible: &dyn Fn(&[usize], usize) -> bool,
        leaf: &dyn Fn(&[usize]) -> Option<Projectivity3>,
    ) -> Option<Projectivity3> {
        if prefix.len() == 5 {
            return leaf(prefix);
        }
        for j in 0..n {
            if admissible(prefix, j) {
                prefix.push(j);
                let r = extend(prefix, n, admissible, leaf);
                prefix.pop();
                if r.is_some() {
                    return r;
                }
            }
        }
        None
    }

    let mut prefixes = Vec::new();
    for j0 in 0..n {
        if !admissible(&[], j0) {
            continue;
        }
        for j1 in 0..n {
            if admissible(&[j0], j1) {
                prefixes.push([j0, j1]);
            }
        }
    }
    let frames = if inv1.is_some() {
        fn count(prefix: &mut Vec<usize>, n: usize, admissible: &dyn Fn(&[usize], usize) -> bool) -> usize {
            if prefix.len() == 5 {
                return 1;
            }
            let mut total = 0;
            for j in 0..n {
                if admissible(prefix, j) {
                    prefix.push(j);
                    total += count(prefix, n, admissible);
                    prefix.pop();
                }
            }
            total
        }
        prefixes.iter().map(|p| count(&mut p.to_vec(), n, &admissible)).sum()
    } else {
        (0..5).map(|k| n - k).product()
    };
    let run = |p: &[usize; 2]| extend(&mut p.to_vec(), n, &admissible, &try_tuple);
    let projectivity = if opts.parallel { prefixes.par_iter().find_map_first(run) } else { prefixes.iter().find_map(run) };
    Ok(EquivalenceSearch { projectivity, frames, rejected_by_invariants: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;
    use crate::matrix::ExactMatrix;

    fn grid() -> Vec<ProjPoint> {
        let mut v = Vec::new();
        for (s, t) in [(1, 0), (0, 1), (1, 1)] {
            for (u, w) in [(1, 0), (0, 1), (1, 2)] {
                v.push(ProjPoint::from_ints([s * u, s * w, t * u, t * w]));
            }
        }
        v
    }

    #[test]
    fn profile_of_grid() {
        assert_eq!(collinearity_profile(&grid()), vec![3; 6]);
    }

    #[test]
    fn recovers_a_projectivity() {
        let z1 = grid();
        let m = ExactMatrix::from_ints(&[&[1, 2, 0, 1], &[0, 1, 3, 0], &[1, 0, 1, 0], &[0, 0, 2, 1]]);
        let phi = Projectivity3::new(m).unwrap();
        let mut z2: Vec<ProjPoint> = z1.iter().map(|p| phi.apply(p)).collect();
        z2.reverse();
        let found = equivalent_configurations(&z1, &z2).unwrap().expect("equivalent");
        for p in &z1 {
            assert!(z2.contains(&found.apply(p)));
        }
        let serial = equivalent_configurations_with(&z1, &z2, SearchOptions { prune: true, parallel: false }).unwrap();
        assert_eq!(serial, Some(found));
    }

    #[test]
    fn moved_point_breaks_equivalence() {
        let z1 = grid();
        let mut z2 = z1.clone();
        z2[8] = ProjPoint::new([1, 2, 1, 3].map(FieldElement::from_int)).unwrap();
        assert_eq!(equivalent_configurations(&z1, &z2).unwrap(), None);
    }
}
