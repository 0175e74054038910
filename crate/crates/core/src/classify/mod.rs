//! Classification of (4,4) half grids: recovering the labeling of the
//! sixteen points, the permutations β and β′, the transversals, and a
//! projectivity to the normal form of the detected case.

mod canonical;
mod table;

use std::fmt;

use thiserror::Error;

use crate::config::Configuration;
use crate::field::FieldElement;
use crate::verify::VerifyError;
use crate::proj::{
    cross_ratio, cross_ratio_type, equivalent_configurations, projectivity1_from_pairs, quadric_through_three_skew_lines,
    quadrics_through, ruling_partner, transversal_pair, BinaryQuadratic, CrossRatio, CrossRatioType, LineRelation,
    Perm4, ProjError, ProjLine, ProjPoint, Projectivity1, Projectivity3, Quadric, Transversals,
};

pub use canonical::{canonical_configuration, grid_configuration, harmonic_abc, CanonicalName, UnknownName};
pub use table::{
    derive_harmonic_solutions, golden_incidence_table, incidence_table_mismatches, reproduce_incidence_table,
    HarmonicSolution, HarmonicSolutions, IncidenceCell, IncidenceTable,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("expected four lines of four points")]
    Shape,
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("point {index} is not on line {line}")]
    PointOffLine { line: usize, index: usize },
    #[error("lines {0} and {1} are not skew")]
    NotSkew(usize, usize),
    #[error("the sixteen points lie on a quadric")]
    OnCommonQuadric,
    #[error("points on lines {0} do not form a grid")]
    TripleNotGrid(&'static str),
    #[error("cross-ratio mismatch: {0}")]
    CrossRatioMismatch(String),
    #[error("beta is the identity")]
    BetaIdentity,
    #[error("the two transversals coincide")]
    DoubleTransversal,
    #[error("beta' equals beta")]
    BetasCoincide,
    #[error("beta is an involution under both labelings")]
    BothInvolutions,
    #[error("cross-ratio {0} is neither harmonic nor anharmonic")]
    GenericCrossRatio(Box<CrossRatio>),
    #[error("no projectivity to the {0} normal form")]
    NormalizationFailed(CanonicalName),
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

impl ClassifyError {
    /// Errors meaning the input is not a (4,4) half grid, as opposed to an
    /// internal inconsistency.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            ClassifyError::Shape
                | ClassifyError::DuplicatePoint(..)
                | ClassifyError::PointOffLine { .. }
                | ClassifyError::NotSkew(..)
                | ClassifyError::OnCommonQuadric
                | ClassifyError::TripleNotGrid(_)
                | ClassifyError::GenericCrossRatio(_)
        )
    }
}

/// Four lines `R_a, R_b, R_c, R_d` with four points on each, in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfGridInput {
    lines: [ProjLine; 4],
    points: [[ProjPoint; 4]; 4],
}

impl HalfGridInput {
    pub fn new(points: [[ProjPoint; 4]; 4]) -> Result<Self, ClassifyError> {
        let flat: Vec<&ProjPoint> = points.iter().flatten().collect();
        for i in 0..16 {
            for j in i + 1..16 {
                if flat[i] == flat[j] {
                    return Err(ClassifyError::DuplicatePoint(i, j));
                }
            }
        }
        let mut lines = Vec::with_capacity(4);
        for (g, row) in points.iter().enumerate() {
            let l = ProjLine::through(&row[0], &row[1])?;
            if let Some(k) = row.iter().position(|p| !l.contains(p)) {
                return Err(ClassifyError::PointOffLine { line: g, index: 4 * g + k });
            }
            lines.push(l);
        }
        Ok(HalfGridInput { lines: lines.try_into().expect("four lines"), points })
    }

    /// Reads the first line family of `z`, which must be four groups of four.
    pub fn from_configuration(z: &Configuration) -> Result<Self, ClassifyError> {
        let groups = z.grouping().ok_or(ClassifyError::Shape)?;
        if groups.len() != 4 || groups.iter().any(|g| g.indices.len() != 4) {
            return Err(ClassifyError::Shape);
        }
        let points = std::array::from_fn(|g| std::array::from_fn(|k| z.points()[groups[g].indices[k]].clone()));
        HalfGridInput::new(points)
    }

    pub fn lines(&self) -> &[ProjLine; 4] {
        &self.lines
    }

    pub fn points(&self) -> &[[ProjPoint; 4]; 4] {
        &self.points
    }

    /// The sixteen points, line by line.
    pub fn flat_points(&self) -> Vec<ProjPoint> {
        self.points.iter().flatten().cloned().collect()
    }

    pub fn to_configuration(&self) -> Configuration {
        Configuration::new(self.flat_points())
            .and_then(|c| c.with_family((0..4).map(|g| (4 * g..4 * g + 4).collect()).collect()))
            .expect("validated input")
    }

    /// The input with line `k` taken from old line `order[k]`.
    pub fn reordered(&self, order: [usize; 4]) -> HalfGridInput {
        HalfGridInput {
            lines: order.map(|i| self.lines[i].clone()),
            points: order.map(|i| self.points[i].clone()),
        }
    }
}

pub fn validate(input: &HalfGridInput) -> Result<(), ClassifyError> {
    for i in 0..4 {
        for j in i + 1..4 {
            if !input.lines[i].is_skew_to(&input.lines[j]) {
                return Err(ClassifyError::NotSkew(i, j));
            }
        }
    }
    if !quadrics_through(&input.flat_points()).is_empty() {
        return Err(ClassifyError::OnCommonQuadric);
    }
    Ok(())
}

/// Points indexed by label: `a[i], b[i], c[i]` lie on `r[i]`, and
/// `c[i], d[i], b[β(i)]` lie on `l[i]`. The `c` labels follow input order.
#[derive(Debug, Clone)]
pub struct Labeling {
    pub a: [ProjPoint; 4],
    pub b: [ProjPoint; 4],
    pub c: [ProjPoint; 4],
    pub d: [ProjPoint; 4],
    /// Position in the input line of the point with each label.
    pub a_index: [usize; 4],
    pub b_index: [usize; 4],
    pub d_index: [usize; 4],
    pub r: [ProjLine; 4],
    pub l: [ProjLine; 4],
    pub q_abc: Quadric,
    pub q_bcd: Quadric,
    pub beta: Perm4,
    /// Cross-ratios of the labeled quadruples on `R_a, R_b, R_c, R_d`.
    pub cross_ratios: [CrossRatio; 4],
}

fn locate(row: &[ProjPoint; 4], p: &ProjPoint) -> Option<usize> {
    row.iter().position(|q| q == p)
}

fn meet(l: &ProjLine, m: &ProjLine) -> Option<ProjPoint> {
    match l.relation(m) {
        LineRelation::Meeting(p) => Some(p),
        _ => None,
    }
}

fn grid_quadric(input: &HalfGridInput, which: [usize; 3], name: &'static str) -> Result<Quadric, ClassifyError> {
    let [x, y, z] = which.map(|i| &input.lines[i]);
    let q = quadric_through_three_skew_lines(x, y, z).map_err(|_| ClassifyError::TripleNotGrid(name))?;
    if which.iter().flat_map(|&i| input.points[i].iter()).all(|p| q.contains_point(p)) {
        Ok(q)
    } else {
        Err(ClassifyError::TripleNotGrid(name))
    }
}

fn to_perm(images: [usize; 4], name: &'static str) -> Result<Perm4, ClassifyError> {
    Perm4::from_images(images).ok_or(ClassifyError::TripleNotGrid(name))
}

/// The line of `q` through `p` in the ruling opposite to line `along`, with
/// the positions in `row` of its meeting point with each target line.
fn trace_ruling(
    q: &Quadric,
    input: &HalfGridInput,
    along: usize,
    p: &ProjPoint,
    targets: [(usize, &[ProjPoint; 4]); 2],
    name: &'static str,
) -> Result<(ProjLine, [usize; 2]), ClassifyError> {
    let line = ruling_partner(q, &input.lines[along], p)?;
    let mut out = [0; 2];
    for (slot, (li, row)) in targets.iter().enumerate() {
        let x = meet(&line, &input.lines[*li]).ok_or(ClassifyError::TripleNotGrid(name))?;
        out[slot] = locate(row, &x).ok_or(ClassifyError::TripleNotGrid(name))?;
    }
    Ok((line, out))
}

fn quadruple_ratio(p: &[ProjPoint; 4]) -> Result<CrossRatio, ClassifyError> {
    Ok(cross_ratio(p)?)
}

pub fn build_labeling(input: &HalfGridInput) -> Result<Labeling, ClassifyError> {
    let q_abc = grid_quadric(input, [0, 1, 2], "a, b, c")?;
    let q_bcd = grid_quadric(input, [1, 2, 3], "b, c, d")?;
    let c = input.points[2].clone();
    let mut r = Vec::with_capacity(4);
    let mut a_index = [0; 4];
    let mut b_index = [0; 4];
    for (i, ci) in c.iter().enumerate() {
        let (line, [ka, kb]) =
            trace_ruling(&q_abc, input, 0, ci, [(0, &input.points[0]), (1, &input.points[1])], "a, b, c")?;
        r.push(line);
        a_index[i] = ka;
        b_index[i] = kb;
    }
    to_perm(a_index, "a, b, c")?;
    to_perm(b_index, "a, b, c")?;
    let mut l = Vec::with_capacity(4);
    let mut d_index = [0; 4];
    let mut lb = [0; 4];
    for (i, ci) in c.iter().enumerate() {
        let (line, [kd, kb]) =
            trace_ruling(&q_bcd, input, 3, ci, [(3, &input.points[3]), (1, &input.points[1])], "b, c, d")?;
        l.push(line);
        d_index[i] = kd;
        lb[i] = kb;
    }
    to_perm(d_index, "b, c, d")?;
    // β(i) is the label of the b point on L_i
    let beta_images = lb.map(|k| b_index.iter().position(|&m| m == k).expect("b labels are a permutation"));
    let beta = to_perm(beta_images, "b, c, d")?;
    let a = a_index.map(|k| input.points[0][k].clone());
    let b = b_index.map(|k| input.points[1][k].clone());
    let d = d_index.map(|k| input.points[3][k].clone());
    let cross_ratios = [quadruple_ratio(&a)?, quadruple_ratio(&b)?, quadruple_ratio(&c)?, quadruple_ratio(&d)?];
    if cross_ratios.iter().any(|j| j != &cross_ratios[2]) {
        let shown: Vec<String> = cross_ratios.iter().map(ToString::to_string).collect();
        return Err(ClassifyError::CrossRatioMismatch(format!("labeled quadruples give {}", shown.join(", "))));
    }
    let permuted = beta.images().map(|k| b[k].clone());
    if quadruple_ratio(&permuted)? != cross_ratios[1] {
        return Err(ClassifyError::CrossRatioMismatch("beta does not preserve the quadruple on R_b".into()));
    }
    Ok(Labeling {
        a,
        b,
        c,
        d,
        a_index,
        b_index,
        d_index,
        r: r.try_into().expect("four lines"),
        l: l.try_into().expect("four lines"),
        q_abc,
        q_bcd,
        beta,
        cross_ratios,
    })
}

/// The common transversals `S, S′` of `R_a, R_c, R_d, R_b` and the
/// projectivity of `R_b` induced by β.
#[derive(Debug, Clone)]
pub struct TransversalData {
    /// Quadric through `R_a, R_c, R_d`, restricted to `R_b`.
    pub meeting_form: BinaryQuadratic,
    pub transversals: Transversals,
    /// `b_i ↦ b_β(i)` in the parameters of `R_b`.
    pub phi_beta: Projectivity1,
    pub fixed_point_form: BinaryQuadratic,
    /// The fixed points of `phi_beta` are where `S` and `S′` meet `R_b`.
    pub fixed_points_match: bool,
    /// Labels `i` with `r_i` one of the transversals.
    pub transversal_rulings: Vec<usize>,
}

pub fn compute_transversals(input: &HalfGridInput, lab: &Labeling) -> Result<TransversalData, ClassifyError> {
    let [ra, rb, rc, rd] = &input.lines;
    let pair = transversal_pair([ra, rc, rd, rb])?;
    if pair.meeting_form.discriminant().is_zero() {
        return Err(ClassifyError::DoubleTransversal);
    }
    let params: Vec<_> = lab.b.iter().map(|p| rb.param(p)).collect::<Result<_, _>>()?;
    let img = |i: usize| params[lab.beta.apply(i)].clone();
    let src = [params[0].clone(), params[1].clone(), params[2].clone()];
    let phi_beta = projectivity1_from_pairs(&src, &[img(0), img(1), img(2)])?;
    if phi_beta.apply(&params[3]) != img(3) {
        return Err(ClassifyError::CrossRatioMismatch("beta is not induced by a projectivity of R_b".into()));
    }
    let fixed_point_form = phi_beta.fixed_point_form();
    let fixed_points_match = fixed_point_form.same_roots(&pair.meeting_form);
    let transversal_rulings = match &pair.transversals {
        Transversals::Split(v) => (0..4).filter(|&i| v.iter().any(|(s, _)| s == &lab.r[i])).collect(),
        Transversals::Conjugate { .. } => Vec::new(),
    };
    Ok(TransversalData {
        meeting_form: pair.meeting_form,
        transversals: pair.transversals,
        phi_beta,
        fixed_point_form,
        fixed_points_match,
        transversal_rulings,
    })
}

/// β′ and α: the ruling line of the quadric through `R_a, R_b, R_d` through
/// `d_i` passes through `a_α(i)` and `b_β′(i)`.
pub fn compute_beta_prime(input: &HalfGridInput, lab: &Labeling) -> Result<(Perm4, Perm4), ClassifyError> {
    let q = grid_quadric(input, [0, 1, 3], "a, b, d")?;
    let mut alpha = [0; 4];
    let mut beta_prime = [0; 4];
    for i in 0..4 {
        let (_, [ka, kb]) = trace_ruling(&q, input, 0, &lab.d[i], [(0, &lab.a), (1, &lab.b)], "a, b, d")?;
        alpha[i] = ka;
        beta_prime[i] = kb;
    }
    let beta_prime = to_perm(beta_prime, "a, b, d")?;
    if beta_prime == lab.beta {
        return Err(ClassifyError::BetasCoincide);
    }
    Ok((beta_prime, to_perm(alpha, "a, b, d")?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    Harmonic,
    Anharmonic,
}

impl Case {
    pub fn normal_form(self) -> CanonicalName {
        match self {
            Case::Harmonic => CanonicalName::HarmonicVariant2,
            Case::Anharmonic => CanonicalName::AnharmonicDerived,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Harmonic => "harmonic",
            Case::Anharmonic => "anharmonic",
        })
    }
}

/// A line through `c_i` (or `b_i`) and `a_k` that meets `R_d` in `d_m`.
/// All indices are labels, zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceLine {
    pub through: usize,
    pub a: usize,
    pub d: usize,
    pub line: ProjLine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceCheck {
    pub rule: &'static str,
    /// Zero-based label.
    pub index: usize,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub case: Case,
    pub cross_ratio: FieldElement,
    /// Whether the lines were renamed `(a, b, c, d) → (d, b, a, c)` because the
    /// first β was an involution.
    pub relabeled: bool,
    pub input: HalfGridInput,
    pub labeling: Labeling,
    pub beta: Perm4,
    pub beta_prime: Perm4,
    pub alpha: Perm4,
    pub transversals: TransversalData,
    pub m_lines: Vec<IncidenceLine>,
    pub n_lines: Vec<IncidenceLine>,
    pub checks: Vec<IncidenceCheck>,
    pub normal_form: CanonicalName,
    /// Maps the input points onto the normal form.
    pub normalizer: Projectivity3,
}

impl Classification {
    pub fn checks_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Lines joining `from[i]` to `a_k` that meet `R_d` in a configuration point.
fn incidence_lines(from: &[ProjPoint; 4], lab: &Labeling, rd: &ProjLine) -> Vec<IncidenceLine> {
    let mut out = Vec::new();
    for (i, p) in from.iter().enumerate() {
        for (k, a) in lab.a.iter().enumerate() {
            let line = ProjLine::through(p, a).expect("points on skew lines");
            if let Some(x) = meet(&line, rd) {
                if let Some(m) = lab.d.iter().position(|d| d == &x) {
                    out.push(IncidenceLine { through: i, a: k, d: m, line });
                }
            }
        }
    }
    out
}

fn has(lines: &[IncidenceLine], i: usize, k: usize) -> bool {
    lines.iter().any(|m| m.through == i && m.a == k)
}

fn incidence_checks(case: Case, beta: &Perm4, m: &[IncidenceLine], n: &[IncidenceLine]) -> Vec<IncidenceCheck> {
    let inv = beta.inverse();
    let mut out = Vec::new();
    let mut push = |rule, index, holds| out.push(IncidenceCheck { rule, index, holds });
    for i in 0..4 {
        let (b, b2, bi) = (beta.apply(i), beta.apply(beta.apply(i)), inv.apply(i));
        match case {
            // M_i and N_i are only defined away from the fixed point of β
            Case::Anharmonic if b == i => {}
            Case::Anharmonic => {
                push("M_i avoids a_beta(i)", i, !has(m, i, b));
                push("M_i avoids a_i", i, !has(m, i, i));
                push("M_i contains a_beta^2(i)", i, has(m, i, b2));
                push("N_i avoids a_beta^-1(i)", i, !has(n, i, bi));
                push("N_i avoids a_i", i, !has(n, i, i));
                push("N_i contains a_beta(i)", i, has(n, i, b));
            }
            Case::Harmonic => {
                push("M_i avoids a_beta(i)", i, !has(m, i, b));
                push("M_i avoids a_i", i, !has(m, i, i));
                push("M_i exists", i, m.iter().any(|l| l.through == i));
                push("N_i avoids a_beta^-1(i)", i, !has(n, i, bi));
                push("N_i avoids a_i", i, !has(n, i, i));
                push("N_i exists", i, n.iter().any(|l| l.through == i));
            }
        }
    }
    out
}

struct Stage {
    input: HalfGridInput,
    labeling: Labeling,
}

fn stage(input: HalfGridInput) -> Result<Stage, ClassifyError> {
    let labeling = build_labeling(&input)?;
    if labeling.beta.is_identity() {
        return Err(ClassifyError::BetaIdentity);
    }
    Ok(Stage { input, labeling })
}

pub fn classify(input: &HalfGridInput) -> Result<Classification, ClassifyError> {
    validate(input)?;
    let mut s = stage(input.clone())?;
    let relabeled = s.labeling.beta.is_involution();
    if relabeled {
        // new a, b, c, d are the old c, b, d, a
        s = stage(input.reordered([2, 1, 3, 0]))?;
        if s.labeling.beta.is_involution() {
            return Err(ClassifyError::BothInvolutions);
        }
    }
    let Stage { input, labeling } = s;
    let (beta_prime, alpha) = compute_beta_prime(&input, &labeling)?;
    let transversals = compute_transversals(&input, &labeling)?;
    let j = labeling.cross_ratios[1].clone();
    let case = match cross_ratio_type(&j) {
        CrossRatioType::Harmonic => Case::Harmonic,
        CrossRatioType::Anharmonic => Case::Anharmonic,
        CrossRatioType::Generic => return Err(ClassifyError::GenericCrossRatio(Box::new(j))),
    };
    let cross_ratio = match j {
        CrossRatio::Finite(x) => x,
        CrossRatio::Infinite => unreachable!("distinct points have a finite cross-ratio"),
    };
    let rd = &input.lines[3];
    let m_lines = incidence_lines(&labeling.c, &labeling, rd);
    let n_lines = incidence_lines(&labeling.b, &labeling, rd);
    let checks = incidence_checks(case, &labeling.beta, &m_lines, &n_lines);
    let normal_form = case.normal_form();
    let target = canonical_configuration(normal_form);
    let normalizer = equivalent_configurations(&input.flat_points(), target.points())?
        .ok_or(ClassifyError::NormalizationFailed(normal_form))?;
    Ok(Classification {
        case,
        cross_ratio,
        relabeled,
        input,
        beta: labeling.beta,
        labeling,
        beta_prime,
        alpha,
        transversals,
        m_lines,
        n_lines,
        checks,
        normal_form,
        normalizer,
    })
}
