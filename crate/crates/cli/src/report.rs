//! JSON reports and their plain-text rendering.

use geproci_core::classify::{Classification, HarmonicSolutions, IncidenceTable};
use geproci_core::proj::{BinaryQuadratic, EquivalenceSearch, Projectivity3, Transversals};
use geproci_core::verify::{CIWitness, GeprociReport, Verdict, VerificationReport};
use geproci_core::{ExactMatrix, ProjLine, ProjPoint};
use serde_json::{json, Map, Value};

pub fn point(p: &ProjPoint) -> Value {
    json!(p.to_string())
}

pub fn line(l: &ProjLine) -> Value {
    json!(l.to_string())
}

pub fn matrix(m: &ExactMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| json!((0..m.cols()).map(|j| m.get(i, j).to_string()).collect::<Vec<_>>())).collect())
}

pub fn projectivity(p: &Projectivity3) -> Value {
    matrix(p.matrix())
}

fn form2(q: &BinaryQuadratic) -> Value {
    json!(q.to_string())
}

pub fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Geproci => "geproci",
        Verdict::NotGeproci => "not-geproci",
        Verdict::InconsistentTrials => "inconsistent-trials",
    }
}

pub fn witness(w: &Option<CIWitness>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => {
            let (df, dg) = w.degrees();
            let mut m = Map::new();
            m.insert("degrees".into(), json!([df, dg]));
            m.insert("f".into(), json!(w.f.to_string()));
            if let Some(fs) = &w.f_factors {
                m.insert("f_factors".into(), json!(fs.iter().map(ToString::to_string).collect::<Vec<_>>()));
            }
            m.insert("g".into(), json!(w.g.to_string()));
            m.insert("coprime".into(), json!(w.coprime));
            Value::Object(m)
        }
    }
}

pub fn geproci(r: &GeprociReport) -> Value {
    json!({
        "type": [r.a, r.b],
        "verdict": verdict(r.verdict),
        "trials": r.trials.iter().map(|t| json!({
            "index": t.index,
            "center": point(&t.center),
            "rejected_centers": t.rejected,
            "hilbert_function": t.hilbert,
            "stabilized": t.stabilized,
            "witness": witness(&t.witness),
        })).collect::<Vec<_>>(),
    })
}

pub fn verification(points: usize, r: &VerificationReport) -> Value {
    json!({
        "points": points,
        "geproci": geproci(&r.geproci),
        "grid": r.grid.as_ref().map(|g| json!({"shape": [g.shape().0, g.shape().1]})),
        "quadric_dim": r.quadric_dim,
        "half_grid": r.is_half_grid(),
        "split_witnesses": r.split_witnesses.iter().map(witness).collect::<Vec<_>>(),
        "line_removal": r.line_removal.as_ref().map(|l| l.removals.iter().map(|x| json!({
            "group": x.group,
            "grid_shape": x.grid_shape.map(|(a, b)| [a, b]),
            "quadric_dim": x.quadric_dim,
            "ok": x.ok,
        })).collect::<Vec<_>>()),
    })
}

pub fn transversals(t: &Transversals) -> Value {
    match t {
        Transversals::Split(v) => json!({
            "kind": "split",
            "lines": v.iter().map(|(l, m)| json!({"line": line(l), "multiplicity": m})).collect::<Vec<_>>(),
        }),
        Transversals::Conjugate { discriminant } => json!({
            "kind": "conjugate",
            "discriminant": discriminant.to_string(),
        }),
    }
}

fn labels(prefix: &str, v: &[ProjPoint; 4]) -> Value {
    let mut m = Map::new();
    for (i, p) in v.iter().enumerate() {
        m.insert(format!("{prefix}{}", i + 1), point(p));
    }
    Value::Object(m)
}

pub fn classification(c: &Classification) -> Value {
    let lab = &c.labeling;
    let inc = |v: &[geproci_core::classify::IncidenceLine], from: &str| {
        v.iter()
            .map(|m| json!({
                "through": format!("{from}{}", m.through + 1),
                "a": format!("a{}", m.a + 1),
                "d": format!("d{}", m.d + 1),
                "line": line(&m.line),
            }))
            .collect::<Vec<_>>()
    };
    let t = &c.transversals;
    json!({
        "case": c.case.to_string(),
        "cross_ratio": c.cross_ratio.to_string(),
        "relabeled": c.relabeled,
        "beta": c.beta.to_string(),
        "beta_prime": c.beta_prime.to_string(),
        "alpha": c.alpha.to_string(),
        "lines": {
            "R_a": line(&c.input.lines()[0]),
            "R_b": line(&c.input.lines()[1]),
            "R_c": line(&c.input.lines()[2]),
            "R_d": line(&c.input.lines()[3]),
        },
        "labels": {
            "a": labels("a", &lab.a),
            "b": labels("b", &lab.b),
            "c": labels("c", &lab.c),
            "d": labels("d", &lab.d),
        },
        "r": lab.r.iter().map(line).collect::<Vec<_>>(),
        "L": lab.l.iter().map(line).collect::<Vec<_>>(),
        "transversals": {
            "meeting_form_on_R_b": form2(&t.meeting_form),
            "phi_beta": matrix(t.phi_beta.matrix()),
            "fixed_point_form": form2(&t.fixed_point_form),
            "fixed_points_match": t.fixed_points_match,
            "rulings": t.transversal_rulings.iter().map(|i| format!("r{}", i + 1)).collect::<Vec<_>>(),
            "lines": transversals(&t.transversals),
        },
        "m_lines": inc(&c.m_lines, "c"),
        "n_lines": inc(&c.n_lines, "b"),
        "checks": c.checks.iter().map(|k| json!({"rule": k.rule, "i": k.index + 1, "holds": k.holds})).collect::<Vec<_>>(),
        "checks_hold": c.checks_hold(),
        "normal_form": c.normal_form.to_string(),
        "normalizer": projectivity(&c.normalizer),
    })
}

pub fn equivalence(s: &EquivalenceSearch) -> Value {
    json!({
        "equivalent": s.projectivity.is_some(),
        "matrix": s.projectivity.as_ref().map(projectivity),
        "frames": s.frames,
        "rejected_by_invariants": s.rejected_by_invariants,
    })
}

pub fn incidence_table(t: &IncidenceTable, diffs: &[(usize, usize)]) -> Value {
    json!({
        "rows": t.rows.iter().map(|(i, k)| format!("c{}a{}", i + 1, k + 1)).collect::<Vec<_>>(),
        "cols": t.cols.iter().map(|(j, l)| format!("b{}a{}", j + 1, l + 1)).collect::<Vec<_>>(),
        "cells": t.cells.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "diffs": diffs.iter().map(|(r, c)| [r + 1, c + 1]).collect::<Vec<_>>(),
    })
}

pub fn harmonic_solutions(s: &HarmonicSolutions) -> Value {
    json!({
        "solutions": s.solutions.iter().map(|x| json!({
            "m": x.m_choice.iter().enumerate().map(|(i, k)| format!("c{}a{}", i + 1, k + 1)).collect::<Vec<_>>(),
            "n": x.n_choice.iter().enumerate().map(|(j, k)| format!("b{}a{}", j + 1, k + 1)).collect::<Vec<_>>(),
            "R_d": line(&x.r_d),
            "d": x.d.iter().map(point).collect::<Vec<_>>(),
            "line_removal_ok": x.line_removal_ok,
            "verdict": verdict(x.verdict),
        })).collect::<Vec<_>>(),
        "equivalent": s.equivalence.is_some(),
        "matrix": s.equivalence.as_ref().map(projectivity),
    })
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).expect("scalar")).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

/// An object of scalars on one line.
fn flat(v: &Value) -> Option<String> {
    let m = v.as_object()?;
    let parts: Option<Vec<String>> = m.iter().map(|(k, x)| scalar(x).map(|s| format!("{k}: {s}"))).collect();
    parts.map(|p| p.join(", "))
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match (scalar(x), flat(x)) {
                    (Some(s), _) | (None, Some(s)) => out.push_str(&format!("{pad}- {s}\n")),
                    (None, None) => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).expect("scalar"))),
    }
}

/// Indented `key: value` rendering of a report.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}
