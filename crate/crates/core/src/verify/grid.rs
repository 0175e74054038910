use crate::config::{Configuration, LineGroup};
use crate::proj::{collinear_clusters, quadrics_through, CollinearCluster, ProjPoint};

/// The two line families of a grid, smaller family first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridStructure {
    pub families: [Vec<LineGroup>; 2],
    /// Dimension of the space of quadrics through the points.
    pub quadric_dim: usize,
}

impl GridStructure {
    pub fn shape(&self) -> (usize, usize) {
        (self.families[0].len(), self.families[1].len())
    }
}

/// Exact covers of `0..n` by pairwise disjoint clusters of equal size,
/// in lexicographic order of cluster indices.
fn exact_covers(n: usize, clusters: &[CollinearCluster]) -> Vec<Vec<usize>> {
    fn rec(
        covered: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        clusters: &[CollinearCluster],
        size: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(first) = covered.iter().position(|c| !c) else {
            out.push(chosen.clone());
            return;
        };
        for (k, c) in clusters.iter().enumerate() {
            if c.indices.len() != size || !c.indices.contains(&first) || c.indices.iter().any(|&i| covered[i]) {
                continue;
            }
            for &i in &c.indices {
                covered[i] = true;
            }
            chosen.push(k);
            rec(covered, chosen, clusters, size, out);
            chosen.pop();
            for &i in &c.indices {
                covered[i] = false;
            }
        }
    }
    let mut sizes: Vec<usize> = clusters.iter().map(|c| c.indices.len()).filter(|s| n.is_multiple_of(*s)).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mut out = Vec::new();
    for size in sizes {
        rec(&mut vec![false; n], &mut Vec::new(), clusters, size, &mut out);
    }
    out
}

fn to_groups(cover: &[usize], clusters: &[CollinearCluster]) -> Vec<LineGroup> {
    cover.iter().map(|&k| LineGroup { line: clusters[k].line.clone(), indices: clusters[k].indices.clone() }).collect()
}

fn is_grid_pair(a: &[usize], b: &[usize], clusters: &[CollinearCluster]) -> bool {
    let skew = |f: &[usize]| {
        f.iter().enumerate().all(|(i, &x)| f[i + 1..].iter().all(|&y| clusters[x].line.is_skew_to(&clusters[y].line)))
    };
    let meets_once = a.iter().all(|&x| {
        b.iter().all(|&y| clusters[x].indices.iter().filter(|i| clusters[y].indices.contains(i)).count() == 1)
    });
    meets_once && skew(a) && skew(b)
}

/// Detects a grid structure: two families of pairwise skew lines, each a
/// partition of the points, with every line of one family meeting every
/// line of the other in exactly one point. Lines are found as clusters of
/// at least three collinear points, so only grids with both sides ≥ 3 are
/// recognised.
pub fn grid_test(points: &[ProjPoint]) -> Option<GridStructure> {
    let n = points.len();
    let clusters = collinear_clusters(points);
    let covers = exact_covers(n, &clusters);
    for (i, a) in covers.iter().enumerate() {
        for b in &covers[i..] {
            if a.len() * b.len() != n || !is_grid_pair(a, b, &clusters) {
                continue;
            }
            let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
            return Some(GridStructure {
                families: [to_groups(small, &clusters), to_groups(large, &clusters)],
                quadric_dim: quadrics_through(points).len(),
            });
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineRemoval {
    /// Index of the removed group in the grouping.
    pub group: usize,
    pub grid_shape: Option<(usize, usize)>,
    pub quadric_dim: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineRemovalReport {
    pub removals: Vec<LineRemoval>,
}

impl LineRemovalReport {
    pub fn all_ok(&self) -> bool {
        !self.removals.is_empty() && self.removals.iter().all(|r| r.ok)
    }
}

/// For each group of the first line family, checks that the remaining
/// points form a grid with one line fewer on a unique quadric.
pub fn line_removal_check(z: &Configuration) -> Option<LineRemovalReport> {
    let groups = z.grouping()?;
    let k = groups.len();
    let per_line = groups[0].indices.len();
    let removals = (0..k)
        .map(|g| {
            let keep: Vec<usize> =
                groups.iter().enumerate().filter(|&(h, _)| h != g).flat_map(|(_, grp)| grp.indices.clone()).collect();
            let sub = z.subset(&keep);
            let grid = grid_test(sub.points());
            let quadric_dim = quadrics_through(sub.points()).len();
            let want = {
                let (a, b) = (k - 1, per_line);
                (a.min(b), a.max(b))
            };
            let grid_shape = grid.as_ref().map(GridStructure::shape);
            LineRemoval { group: g, grid_shape, quadric_dim, ok: grid_shape == Some(want) && quadric_dim == 1 }
        })
        .collect();
    Some(LineRemovalReport { removals })
}
