//! The `.gpc` configuration format.
//!
//! One entry per line, blank lines and `#` comments ignored:
//!
//! ```text
//! field t^2-t+1
//! point ["1","0","e","0"]
//! group {"family":0,"points":[0,1,2,3],"equations":[["0","1","0","0"],["0","0","0","1"]]}
//! ```
//!
//! Coordinates and equation coefficients use the field syntax `a+b*e`.
//! `family` defaults to 0 and `equations` are optional; when present they
//! must cut out the line through the group's points.

use std::path::Path;

use geproci_core::classify::CanonicalName;
use geproci_core::{ConfigError, Configuration, FieldElement, ProjLine, ProjPoint};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FIELD_SPEC: &str = "t^2-t+1";

#[derive(Debug, Error)]
pub enum GpcError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: ConfigError },
    #[error("{0}")]
    Empty(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupEntry {
    #[serde(default)]
    pub family: usize,
    pub points: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equations: Option<Vec<[String; 4]>>,
}

/// Serializable view of a configuration, also used for JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub field: String,
    pub points: Vec<[String; 4]>,
    pub groups: Vec<GroupEntry>,
}

fn coords(p: &ProjPoint) -> [String; 4] {
    p.coords().clone().map(|c| c.to_string())
}

impl ConfigFile {
    pub fn from_configuration(z: &Configuration) -> ConfigFile {
        let groups = z
            .families()
            .iter()
            .enumerate()
            .flat_map(|(f, fam)| {
                fam.iter().map(move |g| GroupEntry {
                    family: f,
                    points: g.indices.clone(),
                    equations: Some(g.line.equations().iter().map(|h| h.clone().map(|c| c.to_string())).collect()),
                })
            })
            .collect();
        ConfigFile { field: FIELD_SPEC.to_string(), points: z.points().iter().map(coords).collect(), groups }
    }
}

pub fn print(z: &Configuration) -> String {
    let file = ConfigFile::from_configuration(z);
    let mut out = format!("field {}\n", file.field);
    for p in &file.points {
        out.push_str(&format!("point {}\n", serde_json::to_string(p).expect("strings serialize")));
    }
    for g in &file.groups {
        out.push_str(&format!("group {}\n", serde_json::to_string(g).expect("plain data serializes")));
    }
    out
}

fn parse_field(s: &str, line: usize) -> Result<FieldElement, GpcError> {
    s.parse().map_err(|_| GpcError::Syntax { line, message: format!("bad field element `{s}`") })
}

fn check_equations(l: &ProjLine, eqs: &[[String; 4]], line: usize) -> Result<(), GpcError> {
    let bad = |message: &str| GpcError::Syntax { line, message: message.to_string() };
    if eqs.len() != 2 {
        return Err(bad("a line needs exactly two equations"));
    }
    let (p, q) = l.basis();
    let mut rows = Vec::with_capacity(2);
    for h in eqs {
        let h: Vec<FieldElement> = h.iter().map(|c| parse_field(c, line)).collect::<Result<_, _>>()?;
        let dot = |x: &ProjPoint| x.coords().iter().zip(&h).fold(FieldElement::zero(), |acc, (a, b)| &acc + &(a * b));
        if !dot(&p).is_zero() || !dot(&q).is_zero() {
            return Err(bad("equations do not vanish on the group's points"));
        }
        rows.push(h);
    }
    if geproci_core::ExactMatrix::from_rows(rows).rank() != 2 {
        return Err(bad("equations are dependent"));
    }
    Ok(())
}

pub fn parse(src: &str) -> Result<Configuration, GpcError> {
    let mut points: Vec<ProjPoint> = Vec::new();
    let mut point_lines = Vec::new();
    let mut groups: Vec<(usize, GroupEntry)> = Vec::new();
    let mut seen_field = false;
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (key, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let rest = rest.trim();
        let syntax = |message: String| GpcError::Syntax { line, message };
        match key {
            "field" => {
                let spec: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
                if spec != FIELD_SPEC {
                    return Err(syntax(format!("unsupported field `{rest}`, expected {FIELD_SPEC}")));
                }
                seen_field = true;
            }
            "point" => {
                let c: Vec<String> = serde_json::from_str(rest).map_err(|e| syntax(format!("bad point: {e}")))?;
                if c.len() != 4 {
                    return Err(syntax(format!("a point needs 4 coordinates, got {}", c.len())));
                }
                let c: Vec<FieldElement> = c.iter().map(|s| parse_field(s, line)).collect::<Result<_, _>>()?;
                let p = ProjPoint::from_slice(&c).map_err(|_| syntax("zero vector is not a point".into()))?;
                points.push(p);
                point_lines.push(line);
            }
            "group" => {
                let g: GroupEntry = serde_json::from_str(rest).map_err(|e| syntax(format!("bad group: {e}")))?;
                groups.push((line, g));
            }
            _ => return Err(syntax(format!("unknown entry `{key}`"))),
        }
    }
    if !seen_field {
        return Err(GpcError::Empty("missing `field` entry".into()));
    }
    let mut z = Configuration::new(points).map_err(|e| match e {
        ConfigError::DuplicatePoint(_, j) => GpcError::Invalid { line: point_lines[j], source: e },
        other => GpcError::Invalid { line: 0, source: other },
    })?;
    let families = groups.iter().map(|(_, g)| g.family + 1).max().unwrap_or(0);
    for f in 0..families {
        let members: Vec<&(usize, GroupEntry)> = groups.iter().filter(|(_, g)| g.family == f).collect();
        let first_line = members.first().map(|(l, _)| *l).ok_or_else(|| GpcError::Syntax {
            line: groups.last().map(|(l, _)| *l).unwrap_or(0),
            message: format!("family {f} has no groups"),
        })?;
        let at = |g: usize| members.get(g).map(|(l, _)| *l).unwrap_or(first_line);
        z = z.with_family(members.iter().map(|(_, g)| g.points.clone()).collect()).map_err(|e| {
            let line = match e {
                ConfigError::GroupTooSmall { group } | ConfigError::PointOffLine { group, .. } => at(group),
                _ => first_line,
            };
            GpcError::Invalid { line, source: e }
        })?;
        for (g, (line, entry)) in members.iter().enumerate() {
            if let Some(eqs) = &entry.equations {
                check_equations(&z.families()[f][g].line, eqs, *line)?;
            }
        }
    }
    Ok(z)
}

/// A built-in name, or else a path to a `.gpc` file.
pub fn load(arg: &str) -> Result<Configuration, GpcError> {
    if !Path::new(arg).exists() {
        if let Ok(name) = arg.parse::<CanonicalName>() {
            return Ok(geproci_core::classify::canonical_configuration(name));
        }
    }
    let src = std::fs::read_to_string(arg).map_err(|source| GpcError::Io { path: arg.to_string(), source })?;
    parse(&src)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_carry_line_numbers() {
        let src = "field t^2-t+1\npoint [\"1\",\"0\",\"0\",\"0\"]\n\npoint [\"2\",\"0\",\"0\",\"0\"]\n";
        match parse(src) {
            Err(GpcError::Invalid { line: 4, source: ConfigError::DuplicatePoint(0, 1) }) => {}
            other => panic!("{other:?}"),
        }
        match parse("field t^2-t+1\npoint [\"1\",\"x\",\"0\",\"0\"]\n") {
            Err(GpcError::Syntax { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("field t^2+1\n"), Err(GpcError::Syntax { line: 1, .. })));
    }

    #[test]
    fn wrong_equations_rejected() {
        let src = "field t^2-t+1\npoint [\"1\",\"0\",\"0\",\"0\"]\npoint [\"0\",\"1\",\"0\",\"0\"]\n\
                   group {\"points\":[0,1],\"equations\":[[\"0\",\"0\",\"1\",\"0\"],[\"1\",\"0\",\"0\",\"0\"]]}\n";
        assert!(matches!(parse(src), Err(GpcError::Syntax { line: 4, .. })));
        let ok = src.replace("[\"1\",\"0\",\"0\",\"0\"]]", "[\"0\",\"0\",\"0\",\"1\"]]");
        assert_eq!(parse(&ok).unwrap().families().len(), 1);
    }
}
