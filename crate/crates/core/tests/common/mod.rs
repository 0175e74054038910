//! Seeded property checks shared by the proptest suites and the acceptance run.

#![allow(dead_code)]

use geproci_core::classify::{build_labeling, canonical_configuration, compute_transversals, CanonicalName, HalfGridInput};
use geproci_core::proj::{
    cross_ratio, cross_ratio_stabilizer, cross_ratio_type, extend_to_space, fixed_points, involution_with_fixed_points,
    quadrics_through, transversal_pair, CrossRatio, CrossRatioType, LinePoint, Perm4, ProjError, Projectivity1,
    Projectivity3, Transversals,
};
use geproci_core::{ExactMatrix, FieldElement, ProjLine, ProjPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fe(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

pub fn element(rng: &mut ChaCha8Rng) -> FieldElement {
    FieldElement::from_ratios(rng.random_range(-9..=9), rng.random_range(1..=3), rng.random_range(-9..=9), rng.random_range(1..=3))
}

pub fn point(rng: &mut ChaCha8Rng) -> ProjPoint {
    loop {
        if let Ok(p) = ProjPoint::new(std::array::from_fn(|_| element(rng))) {
            return p;
        }
    }
}

pub fn line_point(rng: &mut ChaCha8Rng) -> LinePoint {
    loop {
        if let Ok(p) = LinePoint::new([element(rng), element(rng)]) {
            return p;
        }
    }
}

pub fn line(rng: &mut ChaCha8Rng) -> ProjLine {
    loop {
        if let Ok(l) = ProjLine::through(&point(rng), &point(rng)) {
            return l;
        }
    }
}

pub fn skew_lines(rng: &mut ChaCha8Rng, n: usize) -> Vec<ProjLine> {
    let mut out: Vec<ProjLine> = Vec::with_capacity(n);
    while out.len() < n {
        let l = line(rng);
        if out.iter().all(|m| m.is_skew_to(&l)) {
            out.push(l);
        }
    }
    out
}

pub fn distinct_params(rng: &mut ChaCha8Rng, n: usize) -> Vec<LinePoint> {
    let mut out: Vec<LinePoint> = Vec::with_capacity(n);
    while out.len() < n {
        let t = line_point(rng);
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

pub fn integer_params(rng: &mut ChaCha8Rng, n: usize) -> Vec<LinePoint> {
    let mut out: Vec<LinePoint> = Vec::with_capacity(n);
    while out.len() < n {
        let Ok(t) = LinePoint::new([fe(rng.random_range(-9..=9)), fe(rng.random_range(-9..=9))]) else { continue };
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

pub fn projectivity1(rng: &mut ChaCha8Rng) -> Projectivity1 {
    loop {
        let m = ExactMatrix::from_rows((0..2).map(|_| (0..2).map(|_| element(rng)).collect()).collect());
        if let Ok(p) = Projectivity1::new(m) {
            return p;
        }
    }
}

/// Small integer entries keep the transformed coordinates manageable.
pub fn projectivity3(rng: &mut ChaCha8Rng) -> Projectivity3 {
    loop {
        let m = ExactMatrix::from_rows((0..4).map(|_| (0..4).map(|_| fe(rng.random_range(-3..=3))).collect()).collect());
        if let Ok(p) = Projectivity3::new(m) {
            return p;
        }
    }
}

pub fn perms(list: &[[usize; 4]]) -> Vec<Perm4> {
    let mut v: Vec<Perm4> = list.iter().map(|&p| Perm4::one_line(p).expect("permutation")).collect();
    v.sort();
    v
}

pub const KLEIN: [[usize; 4]; 4] = [[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]];

pub const HARMONIC_LIST: [[usize; 4]; 8] =
    [[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1], [1, 2, 4, 3], [2, 1, 3, 4], [3, 4, 2, 1], [4, 3, 1, 2]];

pub const ANHARMONIC_LIST: [[usize; 4]; 12] = [
    [1, 2, 3, 4],
    [2, 1, 4, 3],
    [3, 4, 1, 2],
    [4, 3, 2, 1],
    [1, 3, 4, 2],
    [2, 4, 3, 1],
    [3, 1, 2, 4],
    [4, 2, 1, 3],
    [1, 4, 2, 3],
    [2, 3, 1, 4],
    [3, 2, 4, 1],
    [4, 1, 3, 2],
];

fn permuted<T: Clone>(p: &[T; 4], sigma: &Perm4) -> [T; 4] {
    std::array::from_fn(|i| p[sigma.apply(i)].clone())
}

/// Four points on a random line with the given parameters, moved by a
/// random projectivity of the line.
fn quadruple_on_line(rng: &mut ChaCha8Rng, params: &[LinePoint; 4]) -> [ProjPoint; 4] {
    let l = line(rng);
    let phi = projectivity1(rng);
    params.clone().map(|t| l.point_at(&phi.apply(&t)))
}

pub fn klein_invariance(seed: u64) -> Check {
    let mut rng = rng(seed);
    let params: [LinePoint; 4] = distinct_params(&mut rng, 4).try_into().unwrap();
    let p = quadruple_on_line(&mut rng, &params);
    let j = cross_ratio(&p).map_err(|e| e.to_string())?;
    for sigma in perms(&KLEIN) {
        let k = cross_ratio(&permuted(&p, &sigma)).map_err(|e| e.to_string())?;
        ensure!(k == j, "j changed under {sigma}: {j} -> {k}");
    }
    Ok(())
}

/// For parameters (∞, 0, 1, t) the cross-ratio `[13][24]/([14][23])` is `t`.
pub fn stabilizer_lists(seed: u64) -> Check {
    let mut rng = rng(seed);
    let (t, expect, kind) = match seed % 3 {
        0 => (fe(-1), perms(&HARMONIC_LIST), CrossRatioType::Harmonic),
        1 => (FieldElement::eps(), perms(&ANHARMONIC_LIST), CrossRatioType::Anharmonic),
        _ => loop {
            let t = element(&mut rng);
            let special = [fe(0), fe(1), fe(-1), fe(2), FieldElement::from_ratios(1, 2, 0, 1), FieldElement::eps(), FieldElement::eps().conj()];
            if !special.contains(&t) {
                break (t, perms(&KLEIN), CrossRatioType::Generic);
            }
        },
    };
    let params = [LinePoint::infinity(), LinePoint::affine(fe(0)), LinePoint::affine(fe(1)), LinePoint::affine(t.clone())];
    let p = quadruple_on_line(&mut rng, &params);
    let j = cross_ratio(&p).map_err(|e| e.to_string())?;
    ensure!(j == CrossRatio::Finite(t.clone()), "j = {j}, expected {t}");
    ensure!(cross_ratio_type(&j) == kind, "type of {j} is {}", cross_ratio_type(&j));
    let stab = cross_ratio_stabilizer(&p).map_err(|e| e.to_string())?;
    ensure!(stab == expect, "stabilizer of j = {t}: {stab:?}");
    Ok(())
}

/// Joins `P_i P_i'` for points on two skew lines; the joins lie on a
/// quadric exactly when the two cross-ratios agree.
pub fn quadric_iff_equal_cross_ratios(seed: u64) -> Check {
    let mut rng = rng(seed);
    let rr = skew_lines(&mut rng, 2);
    let params: [LinePoint; 4] = distinct_params(&mut rng, 4).try_into().unwrap();
    let equal = seed.is_multiple_of(2);
    let params2: [LinePoint; 4] = if equal {
        let phi = projectivity1(&mut rng);
        params.clone().map(|t| phi.apply(&t))
    } else {
        distinct_params(&mut rng, 4).try_into().unwrap()
    };
    let p = params.map(|t| rr[0].point_at(&t));
    let mut q = params2.map(|t| rr[1].point_at(&t));
    let joins_on_quadric = |p: &[ProjPoint; 4], q: &[ProjPoint; 4]| -> Result<bool, String> {
        let mut pts = Vec::new();
        for i in 0..4 {
            let (u, v) = (p[i].coords(), q[i].coords());
            for (s, t) in [(1, 0), (0, 1), (1, 1), (1, 2)] {
                let c: [FieldElement; 4] = std::array::from_fn(|k| &(&fe(s) * &u[k]) + &(&fe(t) * &v[k]));
                pts.push(ProjPoint::new(c).map_err(|e| e.to_string())?);
            }
        }
        Ok(!quadrics_through(&pts).is_empty())
    };
    let same = cross_ratio(&p).map_err(|e| e.to_string())? == cross_ratio(&q).map_err(|e| e.to_string())?;
    ensure!(same || !equal, "projectivity changed the cross-ratio");
    let on = joins_on_quadric(&p, &q)?;
    ensure!(on == same, "joins on a quadric: {on}, equal cross-ratios: {same}");
    if same {
        loop {
            let t = line_point(&mut rng);
            let moved = rr[1].point_at(&t);
            if q.contains(&moved) {
                continue;
            }
            q[3] = moved;
            break;
        }
        ensure!(!joins_on_quadric(&p, &q)?, "perturbed P4' still gives a quadric");
    }
    Ok(())
}

/// Every returned transversal meets all four lines, and the count with
/// multiplicity is two. One seed in four builds a tangent fourth line.
pub fn two_transversals(seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut lines = skew_lines(&mut rng, 3);
    let tangent = seed.is_multiple_of(4);
    let expected_double = if tangent {
        let q = geproci_core::proj::quadric_through_three_skew_lines(&lines[0], &lines[1], &lines[2]).map_err(|e| e.to_string())?;
        let x0 = lines[0].point_at(&line_point(&mut rng));
        let m = geproci_core::proj::ruling_partner(&q, &lines[1], &x0).map_err(|e| e.to_string())?;
        let x = loop {
            let x = m.point_at(&line_point(&mut rng));
            if lines.iter().all(|l| !l.contains(&x)) {
                break x;
            }
        };
        let h = q.tangent_plane(&x);
        loop {
            let mut c: [FieldElement; 4] = std::array::from_fn(|_| element(&mut rng));
            let k = (0..4).rev().find(|&k| !h[k].is_zero()).expect("tangent plane");
            let rest = (0..4).filter(|&i| i != k).fold(FieldElement::zero(), |acc, i| &acc + &(&h[i] * &c[i]));
            c[k] = -(&rest / &h[k]);
            let Ok(y) = ProjPoint::new(c) else { continue };
            let Ok(l4) = ProjLine::through(&x, &y) else { continue };
            if !q.contains_line(&l4) && lines.iter().all(|l| l.is_skew_to(&l4)) {
                lines.push(l4);
                break;
            }
        }
        Some(m)
    } else {
        loop {
            let l = line(&mut rng);
            if lines.iter().all(|m| m.is_skew_to(&l)) {
                lines.push(l);
                break;
            }
        }
        None
    };
    let pair = match transversal_pair([&lines[0], &lines[1], &lines[2], &lines[3]]) {
        Err(ProjError::OnCommonQuadric) if !tangent => return Ok(()),
        r => r.map_err(|e| e.to_string())?,
    };
    match &pair.transversals {
        Transversals::Split(v) => {
            let total: usize = v.iter().map(|(_, m)| m).sum();
            ensure!(total == 2, "multiplicities sum to {total}");
            for (s, _) in v {
                for l in &lines {
                    ensure!(s.pluecker_pairing(l).is_zero() && s != l, "transversal {s} misses {l}");
                }
            }
            if let Some(m) = expected_double {
                ensure!(v.len() == 1 && v[0].0 == m, "tangent line should give {m} twice, got {v:?}");
            }
        }
        Transversals::Conjugate { discriminant } => {
            ensure!(expected_double.is_none(), "tangent case reported conjugate transversals");
            ensure!(discriminant.sqrt().is_none(), "discriminant {discriminant} is a square");
        }
    }
    Ok(())
}

fn frame(p: &LinePoint, q: &LinePoint) -> ExactMatrix {
    ExactMatrix::from_cols(&[p.to_vec(), q.to_vec()])
}

/// The involution with two given fixed points exists and any involution
/// diagonal in the same basis equals it.
pub fn involution_uniqueness(seed: u64) -> Check {
    let mut rng = rng(seed);
    let pq = distinct_params(&mut rng, 2);
    let (p, q) = (&pq[0], &pq[1]);
    let phi = involution_with_fixed_points(p, q).map_err(|e| e.to_string())?;
    ensure!(!phi.is_identity() && phi.compose(&phi).is_identity(), "not an involution: {phi:?}");
    ensure!(phi.apply(p) == *p && phi.apply(q) == *q, "fixed points moved");
    let m = frame(p, q);
    let minv = m.inverse().map_err(|e| e.to_string())?;
    let conj = |d: &[FieldElement]| Projectivity1::new(m.mul(&ExactMatrix::diagonal(d)).unwrap().mul(&minv).unwrap());
    let lambda = loop {
        let l = element(&mut rng);
        if !l.is_zero() {
            break l;
        }
    };
    let other = conj(&[lambda.clone(), -lambda.clone()]).map_err(|e| e.to_string())?;
    ensure!(other == phi, "second involution with the same fixed points differs");
    let mu = &lambda + &fe(1);
    if !mu.is_zero() && mu != -lambda.clone() {
        let non = conj(&[lambda.clone(), mu]).map_err(|e| e.to_string())?;
        ensure!(!non.is_involution(), "diag(l, m) with m != -l is an involution");
    }
    Ok(())
}

/// `extend_to_space` restricts to the given projectivities on both lines.
pub fn extension_restricts(seed: u64) -> Check {
    let mut rng = rng(seed);
    let rr = skew_lines(&mut rng, 2);
    let phis = [projectivity1(&mut rng), projectivity1(&mut rng)];
    let big = extend_to_space(&rr[0], &phis[0], &rr[1], &phis[1]).map_err(|e| e.to_string())?;
    for (r, phi) in rr.iter().zip(&phis) {
        ensure!(big.apply_line(r) == *r, "line {r} not preserved");
        for t in distinct_params(&mut rng, 3) {
            let got = big.apply(&r.point_at(&t));
            ensure!(got == r.point_at(&phi.apply(&t)), "restriction differs at {t}");
        }
        ensure!(big.restrict(r).as_ref() == Some(phi), "restrict() disagrees on {r}");
    }
    Ok(())
}

/// Point where a line meeting `r` does so.
fn meet(s: &ProjLine, r: &ProjLine) -> Option<ProjPoint> {
    r.equations().iter().find_map(|h| s.meet_plane(h).filter(|x| r.contains(x)))
}

/// The fixed points of φ_β on `R_b` are where the two transversals meet it,
/// for a canonical half grid moved by a random projectivity.
pub fn phi_beta_fixed_points(seed: u64) -> Check {
    let mut rng = rng(seed);
    let name = if seed.is_multiple_of(2) { CanonicalName::AnharmonicDerived } else { CanonicalName::HarmonicVariant2 };
    let g = if seed < 2 { Projectivity3::identity() } else { projectivity3(&mut rng) };
    let z = canonical_configuration(name).transform(&g);
    let input = HalfGridInput::from_configuration(&z).map_err(|e| e.to_string())?;
    let lab = build_labeling(&input).map_err(|e| e.to_string())?;
    let t = compute_transversals(&input, &lab).map_err(|e| e.to_string())?;
    let rb = &input.lines()[1];
    ensure!(t.fixed_points_match, "{name}: fixed point form differs from meeting form");
    match (&t.transversals, fixed_points(&t.phi_beta)) {
        (Transversals::Split(v), Ok(fixed)) => {
            let mut meets: Vec<LinePoint> = Vec::new();
            for (s, _) in v {
                let x = meet(s, rb).ok_or_else(|| format!("{s} misses R_b"))?;
                meets.push(rb.param(&x).map_err(|e| e.to_string())?);
            }
            let mut fixed: Vec<LinePoint> = fixed.into_iter().map(|(p, _)| p).collect();
            fixed.sort();
            meets.sort();
            ensure!(fixed == meets, "{name}: fixed points {fixed:?}, transversals meet R_b at {meets:?}");
            let b_fixed: Vec<LinePoint> =
                lab.beta.fixed_points().iter().map(|&i| rb.param(&lab.b[i]).unwrap()).collect();
            ensure!(b_fixed.iter().all(|p| fixed.contains(p)), "fixed b point of beta not fixed by phi_beta");
        }
        (Transversals::Conjugate { discriminant }, Err(ProjError::NotSplit { form })) => {
            ensure!(form.same_roots(&t.meeting_form), "{name}: conjugate fixed points differ");
            ensure!(discriminant.sqrt().is_none(), "discriminant is a square");
        }
        (tr, fx) => return Err(format!("{name}: transversals {tr:?} but fixed points {fx:?}")),
    }
    Ok(())
}

pub const PROPERTIES: [(&str, fn(u64) -> Check); 7] = [
    ("Klein-group invariance of the cross-ratio", klein_invariance),
    ("stabilizer lists", stabilizer_lists),
    ("quadric through joins iff equal cross-ratios", quadric_iff_equal_cross_ratios),
    ("two transversals with multiplicity", two_transversals),
    ("involution with given fixed points is unique", involution_uniqueness),
    ("extension restricts to the given projectivities", extension_restricts),
    ("fixed points of phi_beta", phi_beta_fixed_points),
];
