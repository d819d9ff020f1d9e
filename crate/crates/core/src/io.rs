//! Text and JSON file formats.
//!
//! Loop file: a header line with the order `n`, then `n` rows of `n`
//! whitespace-separated indices. Lines starting with `#` are comments.
//! Map and subset files: header `n`, then a single row of indices.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::morphisms::{Mapping, MorphError};
use crate::subloop::SubsetHandle;
use crate::table::{CayleyTable, TableError};
use crate::LoopError;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Morph(#[from] MorphError),
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_row(line: usize, s: &str) -> Result<Vec<usize>, FormatError> {
    s.split_whitespace()
        .map(|tok| tok.parse::<usize>().map_err(|_| FormatError::Parse { line, msg: format!("not an index: {tok:?}") }))
        .collect()
}

fn parse_header(lines: &mut dyn Iterator<Item = (usize, &str)>) -> Result<usize, FormatError> {
    let (line, s) = lines.next().ok_or(FormatError::Parse { line: 0, msg: "missing header".into() })?;
    let v = parse_row(line, s)?;
    match v.as_slice() {
        [n] if *n > 0 => Ok(*n),
        _ => Err(FormatError::Parse { line, msg: "header must be a single positive order".into() }),
    }
}

/// Parse a loop file. If element 0 is not the identity but another element
/// is, the two labels are swapped so the identity lands at 0.
pub fn parse_loop(text: &str) -> Result<CayleyTable, FormatError> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    let mut rows = Vec::with_capacity(n);
    for (line, s) in lines {
        if rows.len() == n {
            return Err(FormatError::Parse { line, msg: "more rows than the declared order".into() });
        }
        rows.push(parse_row(line, s)?);
    }
    if rows.len() != n {
        return Err(FormatError::Parse { line: 0, msg: format!("expected {n} rows, found {}", rows.len()) });
    }
    table_with_identity_at_zero(rows)
}

fn table_with_identity_at_zero(rows: Vec<Vec<usize>>) -> Result<CayleyTable, FormatError> {
    match CayleyTable::from_rows(&rows) {
        Err(TableError::NoIdentity) => {
            let n = rows.len();
            let e =
                (0..n).find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x)).ok_or(TableError::NoIdentity)?;
            let swap = |x: usize| {
                if x == e {
                    0
                } else if x == 0 {
                    e
                } else {
                    x
                }
            };
            let relabelled: Vec<Vec<usize>> =
                (0..n).map(|i| (0..n).map(|j| swap(rows[swap(i)][swap(j)])).collect()).collect();
            Ok(CayleyTable::from_rows(&relabelled)?)
        }
        other => Ok(other?),
    }
}

/// Canonical text form.
pub fn write_loop(t: &CayleyTable) -> String {
    let mut out = format!("{}\n", t.order());
    for row in t.rows() {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

fn join(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Serialize, Deserialize)]
struct LoopJson {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default)]
    name: Option<String>,
}

pub fn loop_to_json(t: &CayleyTable) -> String {
    let j = LoopJson {
        order: t.order(),
        table: t.rows().map(|r| r.iter().map(|&x| x as usize).collect()).collect(),
        name: t.name().map(str::to_string),
    };
    let mut s = serde_json::to_string(&j).expect("json");
    s.push('\n');
    s
}

pub fn loop_from_json(text: &str) -> Result<CayleyTable, FormatError> {
    let j: LoopJson = serde_json::from_str(text)?;
    if j.table.len() != j.order {
        return Err(FormatError::Parse { line: 0, msg: "order does not match table".into() });
    }
    let t = table_with_identity_at_zero(j.table)?;
    Ok(match j.name {
        Some(n) => t.with_name(n),
        None => t,
    })
}

fn parse_single_row(text: &str) -> Result<(usize, Vec<usize>), FormatError> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    let row = match lines.next() {
        Some((line, s)) => parse_row(line, s)?,
        None => Vec::new(),
    };
    if let Some((line, _)) = lines.next() {
        return Err(FormatError::Parse { line, msg: "unexpected extra line".into() });
    }
    Ok((n, row))
}

pub fn parse_map(text: &str) -> Result<Mapping, FormatError> {
    let (n, row) = parse_single_row(text)?;
    if row.len() != n {
        return Err(FormatError::Parse { line: 2, msg: format!("expected {n} images, found {}", row.len()) });
    }
    Ok(Mapping::new(row)?)
}

pub fn write_map(m: &Mapping) -> String {
    format!("{}\n{}\n", m.len(), join(m.images()))
}

/// Subset file: header is the parent order, row lists the members.
pub fn parse_subset(text: &str) -> Result<SubsetHandle, FormatError> {
    let (n, row) = parse_single_row(text)?;
    Ok(SubsetHandle::new(n, row)?)
}

pub fn write_subset(s: &SubsetHandle) -> String {
    let members: Vec<u32> = s.members().iter().map(|&x| x as u32).collect();
    format!("{}\n{}\n", s.parent_order(), join(&members))
}

/// Reference to a lazily evaluated extension: base loop, order of the
/// cyclic part and the action, each a catalog name or a file path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descriptor {
    pub kind: String,
    pub base: String,
    pub order: usize,
    pub action: String,
}

impl Descriptor {
    pub fn semidirect(base: &str, order: usize, action: &str) -> Self {
        Self { kind: "semidirect".into(), base: base.into(), order, action: action.into() }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("json");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let d: Descriptor = serde_json::from_str(text)?;
        if d.kind != "semidirect" {
            return Err(FormatError::Parse { line: 0, msg: format!("unknown descriptor kind {:?}", d.kind) });
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, symmetric};

    #[test]
    fn trivial_loop_text() {
        assert_eq!(write_loop(&cyclic(1).unwrap()), "1\n0\n");
    }

    #[test]
    fn comments_and_reindexing() {
        let text = "# z3 with identity at 2\n3\n1 2 0\n2 0 1\n0 1 2\n";
        let t = parse_loop(text).unwrap();
        assert_eq!(t.order(), 3);
        assert!(crate::props::is_group(&t, &Default::default()).unwrap().holds);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(parse_loop("2\n0 1\n").is_err());
        assert!(parse_loop("2\n0 1\n1 1\n").is_err());
        assert!(parse_loop("x\n").is_err());
        assert!(parse_loop("").is_err());
        assert!(parse_map("3\n0 1\n").is_err());
        assert!(parse_map("3\n0 1 1\n").is_err());
    }

    #[test]
    fn json_and_map_forms() {
        let s3 = symmetric(3).unwrap().with_name("sym3");
        let back = loop_from_json(&loop_to_json(&s3)).unwrap();
        assert_eq!(back, s3);
        assert_eq!(back.name(), Some("sym3"));
        let m = Mapping::new(vec![0, 2, 1]).unwrap();
        assert_eq!(parse_map(&write_map(&m)).unwrap(), m);
        let s = SubsetHandle::new(6, vec![0, 3, 4]).unwrap();
        assert_eq!(parse_subset(&write_subset(&s)).unwrap(), s);
        let d = Descriptor::semidirect("u3:11", 5, "rajah:11:3");
        assert_eq!(Descriptor::from_json(&d.to_json()).unwrap(), d);
    }
}
