use std::fmt;

use crate::config::Configuration;
use crate::proj::{equivalent_configurations, LineRelation, Perm4, ProjLine, ProjPoint, Projectivity3};
use crate::verify::{geproci_test, line_removal_check, Verdict, DEFAULT_TRIALS};

use super::canonical::harmonic_abc;
use super::{validate, ClassifyError, HalfGridInput};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IncidenceCell {
    Empty,
    /// The lines meet in `a_k` (zero-based).
    A(usize),
    Point(ProjPoint),
}

impl fmt::Display for IncidenceCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IncidenceCell::Empty => write!(f, "-"),
            IncidenceCell::A(k) => write!(f, "a{}", k + 1),
            IncidenceCell::Point(p) => write!(f, "{p}"),
        }
    }
}

/// Meeting points of candidate lines `c_i a_k` (rows) and `b_j a_l`
/// (columns). Row and column keys are zero-based `(i, k)` and `(j, l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceTable {
    pub rows: Vec<(usize, usize)>,
    pub cols: Vec<(usize, usize)>,
    pub cells: Vec<Vec<IncidenceCell>>,
}

fn harmonic_beta() -> Perm4 {
    Perm4::one_line([3, 4, 2, 1]).expect("permutation")
}

/// Assignments `i ↦ k_i` forming a permutation with `k_i ∉ excluded(i)`,
/// in lexicographic order.
fn assignments(excluded: impl Fn(usize) -> [usize; 2]) -> Vec<[usize; 4]> {
    Perm4::all().into_iter().map(|p| p.images()).filter(|k| (0..4).all(|i| !excluded(i).contains(&k[i]))).collect()
}

fn m_options(beta: &Perm4) -> Vec<[usize; 4]> {
    assignments(|i| [i, beta.apply(i)])
}

fn n_options(beta: &Perm4) -> Vec<[usize; 4]> {
    let inv = beta.inverse();
    assignments(|i| [i, inv.apply(i)])
}

struct HarmonicFrame {
    a: Vec<ProjPoint>,
    b: Vec<ProjPoint>,
    c: Vec<ProjPoint>,
    beta: Perm4,
}

fn frame() -> HarmonicFrame {
    let p = harmonic_abc();
    HarmonicFrame { a: p[0..4].to_vec(), b: p[4..8].to_vec(), c: p[8..12].to_vec(), beta: harmonic_beta() }
}

fn join(p: &ProjPoint, q: &ProjPoint) -> ProjLine {
    ProjLine::through(p, q).expect("distinct points")
}

fn cell(m: &ProjLine, n: &ProjLine, a: &[ProjPoint]) -> IncidenceCell {
    match m.relation(n) {
        LineRelation::Meeting(p) => match a.iter().position(|q| q == &p) {
            Some(k) => IncidenceCell::A(k),
            None => IncidenceCell::Point(p),
        },
        _ => IncidenceCell::Empty,
    }
}

/// The table of meeting points of the admissible lines through `c_i` and
/// `b_j` in the harmonic setting, rows and columns grouped by assignment.
pub fn reproduce_incidence_table() -> IncidenceTable {
    let f = frame();
    let rows: Vec<(usize, usize)> = m_options(&f.beta).iter().flat_map(|k| (0..4).map(move |i| (i, k[i]))).collect();
    let cols: Vec<(usize, usize)> = n_options(&f.beta).iter().flat_map(|k| (0..4).map(move |j| (j, k[j]))).collect();
    let cells = rows
        .iter()
        .map(|&(i, k)| {
            let m = join(&f.c[i], &f.a[k]);
            cols.iter().map(|&(j, l)| cell(&m, &join(&f.b[j], &f.a[l]), &f.a)).collect()
        })
        .collect();
    IncidenceTable { rows, cols, cells }
}

const GOLDEN: [[&str; 8]; 8] = [
    ["a2", "", "", "", "1:1:1:0", "", "a2", ""],
    ["", "a1", "", "", "", "-1:0:1:1", "", "a1"],
    ["", "", "a4", "", "", "a4", "0:1:2:1", ""],
    ["", "", "", "a3", "a3", "", "", "2:1:0:-1"],
    ["0:1:1:0", "", "a4", "", "1:2:1:0", "a4", "", ""],
    ["", "1:0:0:-1", "", "a3", "a3", "-1:0:1:2", "", ""],
    ["", "a1", "-1:1:1:1", "", "", "", "0:1:1:1", "a1"],
    ["a2", "", "", "1:1:1:-1", "", "", "a2", "1:1:0:-1"],
];

/// The reference cells, in the row and column order of
/// [`reproduce_incidence_table`].
pub fn golden_incidence_table() -> Vec<Vec<IncidenceCell>> {
    GOLDEN
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| match *s {
                    "" => IncidenceCell::Empty,
                    _ if s.starts_with('a') => IncidenceCell::A(s[1..].parse::<usize>().expect("label") - 1),
                    _ => IncidenceCell::Point(s.parse().expect("literal point")),
                })
                .collect()
        })
        .collect()
}

/// Zero-based `(row, column)` positions where the two tables differ.
pub fn incidence_table_mismatches(computed: &IncidenceTable, golden: &[Vec<IncidenceCell>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 0..computed.cells.len().max(golden.len()) {
        for c in 0..8 {
            if computed.cells.get(r).and_then(|x| x.get(c)) != golden.get(r).and_then(|x| x.get(c)) {
                out.push((r, c));
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct HarmonicSolution {
    /// `M_i` joins `c_i` to `a_{m_choice[i]}`.
    pub m_choice: [usize; 4],
    /// `N_j` joins `b_j` to `a_{n_choice[j]}`.
    pub n_choice: [usize; 4],
    /// `d_i` is the point on `L_i`.
    pub d: [ProjPoint; 4],
    pub r_d: ProjLine,
    pub configuration: Configuration,
    pub line_removal_ok: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct HarmonicSolutions {
    pub solutions: Vec<HarmonicSolution>,
    /// A projectivity from the first solution to the second.
    pub equivalence: Option<Projectivity3>,
}

fn assemble(f: &HarmonicFrame, m: &[usize; 4], n: &[usize; 4]) -> Option<([ProjPoint; 4], ProjLine)> {
    let m_lines: Vec<ProjLine> = (0..4).map(|i| join(&f.c[i], &f.a[m[i]])).collect();
    let n_lines: Vec<ProjLine> = (0..4).map(|j| join(&f.b[j], &f.a[n[j]])).collect();
    let l_lines: Vec<ProjLine> = (0..4).map(|i| join(&f.c[i], &f.b[f.beta.apply(i)])).collect();
    let mut new_points: Vec<ProjPoint> = Vec::new();
    for ml in &m_lines {
        for nl in &n_lines {
            if let IncidenceCell::Point(p) = cell(ml, nl, &f.a) {
                if !new_points.contains(&p) {
                    new_points.push(p);
                }
            }
        }
    }
    let mut d = Vec::with_capacity(4);
    for l in &l_lines {
        let on: Vec<&ProjPoint> = new_points.iter().filter(|p| l.contains(p)).collect();
        if on.len() != 1 {
            return None;
        }
        d.push(on[0].clone());
    }
    let d: [ProjPoint; 4] = d.try_into().ok()?;
    let r_d = ProjLine::through(&d[0], &d[1]).ok()?;
    let once = |lines: &[ProjLine]| lines.iter().all(|x| d.iter().filter(|p| x.contains(p)).count() == 1);
    (d.iter().all(|p| r_d.contains(p)) && once(&m_lines) && once(&n_lines)).then_some((d, r_d))
}

/// Solves for the fourth line of the harmonic half grid from the
/// admissible `M` and `N` assignments, and checks each solution.
pub fn derive_harmonic_solutions(seed: u64) -> Result<HarmonicSolutions, ClassifyError> {
    let f = frame();
    let mut solutions = Vec::new();
    for m in m_options(&f.beta) {
        for n in n_options(&f.beta) {
            let Some((d, r_d)) = assemble(&f, &m, &n) else { continue };
            let rows: [[ProjPoint; 4]; 4] = [
                f.a.clone().try_into().expect("4"),
                f.b.clone().try_into().expect("4"),
                f.c.clone().try_into().expect("4"),
                d.clone(),
            ];
            let input = HalfGridInput::new(rows)?;
            validate(&input)?;
            let configuration = input.to_configuration();
            let line_removal_ok = line_removal_check(&configuration).is_some_and(|r| r.all_ok());
            let verdict = geproci_test(&configuration, 4, 4, DEFAULT_TRIALS, seed)?.verdict;
            solutions.push(HarmonicSolution { m_choice: m, n_choice: n, d, r_d, configuration, line_removal_ok, verdict });
        }
    }
    let equivalence = match solutions.as_slice() {
        [s, t] => equivalent_configurations(s.configuration.points(), t.configuration.points())?,
        _ => None,
    };
    Ok(HarmonicSolutions { solutions, equivalence })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_reference_cells() {
        let t = reproduce_incidence_table();
        assert_eq!(t.rows[0], (0, 1));
        assert_eq!(t.cols[5], (1, 3));
        assert!(incidence_table_mismatches(&t, &golden_incidence_table()).is_empty());
    }

    #[test]
    fn two_harmonic_solutions() {
        let s = derive_harmonic_solutions(7).unwrap();
        assert_eq!(s.solutions.len(), 2);
        assert!(s.equivalence.is_some());
        for sol in &s.solutions {
            assert!(sol.line_removal_ok);
            assert_eq!(sol.verdict, Verdict::Geproci);
        }
    }
}
