//! Line-oriented arrangement files.
//!
//! ```text
//! # comment
//! label G8
//! dim 3
//! weyl S4
//! h 1 0 -1 T
//! h 2 1/2 0
//! ```
//!
//! `dim` must precede the first `h` line. Entries are integers or `a/b`
//! rationals; each row is normalized to its primitive integer covector and
//! an optional trailing `T` or `F` tags it. The directive
//! `project-zero-sum blocks=m1,m2,...` (or bare, taking the blocks from
//! `weyl`) declares that rows are written in the ambient coordinates
//! `kappa_{H,0..m-1}` of each block; they are then rewritten in the essential
//! basis and `dim` must equal `sum m_i`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arrangement::{Arrangement, Tag};
use crate::exactlin::{Covector, Rational};
use crate::generators::WeylSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no hyperplane lines")]
    EmptyBody,
}

/// A parsed file together with the number of rows dropped as duplicates.
#[derive(Clone, Debug)]
pub struct ParsedFile {
    pub arrangement: Arrangement,
    pub duplicates: usize,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

fn parse_rational(tok: &str, line: usize) -> Result<Rational, FormatError> {
    let bad = || err(line, format!("invalid number {tok:?}"));
    match tok.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(err(line, format!("zero denominator in {tok:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(tok.parse().map_err(|_| bad())?)),
    }
}

fn parse_blocks(spec: &str, line: usize) -> Result<WeylSpec, FormatError> {
    let factors = spec
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| err(line, format!("invalid block size {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    WeylSpec::new(factors).map_err(|e| err(line, e.to_string()))
}

/// Parses an arrangement file.
pub fn parse_arrangement(text: &str) -> Result<ParsedFile, FormatError> {
    let mut dim: Option<usize> = None;
    let mut weyl: Option<WeylSpec> = None;
    let mut weyl_line = 0;
    let mut label: Option<String> = None;
    let mut zero_sum: Option<(Option<WeylSpec>, usize)> = None;
    let mut rows: Vec<(Vec<Rational>, Option<Tag>, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (word, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match word {
            "dim" => {
                if dim.is_some() {
                    return Err(err(line, "repeated dim"));
                }
                dim = Some(rest.parse().map_err(|_| err(line, format!("invalid dimension {rest:?}")))?);
            }
            "weyl" => {
                if weyl.is_some() {
                    return Err(err(line, "repeated weyl"));
                }
                weyl = Some(rest.parse().map_err(|e: crate::generators::GenError| err(line, e.to_string()))?);
                weyl_line = line;
            }
            "label" => label = Some(rest.to_string()),
            "project-zero-sum" => {
                if zero_sum.is_some() {
                    return Err(err(line, "repeated project-zero-sum"));
                }
                let blocks = match rest {
                    "" => None,
                    r => match r.strip_prefix("blocks=") {
                        Some(b) => Some(parse_blocks(b, line)?),
                        None => return Err(err(line, format!("unexpected argument {r:?}"))),
                    },
                };
                zero_sum = Some((blocks, line));
            }
            "h" => {
                let d = dim.ok_or_else(|| err(line, "hyperplane before dim"))?;
                let mut toks: Vec<&str> = rest.split_whitespace().collect();
                let tag = match toks.last() {
                    Some(&"T") => Some(Tag::T),
                    Some(&"F") => Some(Tag::F),
                    _ => None,
                };
                if tag.is_some() {
                    toks.pop();
                }
                if toks.len() != d {
                    return Err(err(line, format!("expected {d} coefficients, found {}", toks.len())));
                }
                let coeffs = toks.iter().map(|t| parse_rational(t, line)).collect::<Result<Vec<_>, _>>()?;
                rows.push((coeffs, tag, line));
            }
            other => return Err(err(line, format!("unknown directive {other:?}"))),
        }
    }

    let dim = dim.ok_or(FormatError::EmptyBody)?;
    if rows.is_empty() {
        return Err(FormatError::EmptyBody);
    }

    let projection = match zero_sum {
        None => None,
        Some((blocks, line)) => {
            let spec = match (blocks, &weyl) {
                (Some(b), Some(w)) if &b != w => {
                    return Err(err(line, format!("blocks {b} disagree with weyl {w}")));
                }
                (Some(b), _) => b,
                (None, Some(w)) => w.clone(),
                (None, None) => return Err(err(line, "project-zero-sum needs blocks= or a weyl line")),
            };
            if spec.ambient_dim() != dim {
                return Err(err(line, format!("blocks {spec} need dim {}, file has dim {dim}", spec.ambient_dim())));
            }
            Some(spec)
        }
    };

    let out_dim = projection.as_ref().map_or(dim, WeylSpec::dim);
    if let Some(w) = &weyl {
        if w.dim() != out_dim {
            return Err(err(weyl_line, format!("weyl {w} has dimension {}, arrangement has {out_dim}", w.dim())));
        }
    }

    let mut items = Vec::with_capacity(rows.len());
    for (coeffs, tag, line) in rows {
        let cov = match &projection {
            None => Covector::new(&coeffs).map_err(|e| err(line, e.to_string()))?,
            Some(spec) => {
                let ints = Covector::new(&coeffs).map_err(|e| err(line, e.to_string()))?;
                spec.essentialize_form(ints.coeffs())
                    .map_err(|_| err(line, "form vanishes on the zero-sum subspace"))?
            }
        };
        items.push((cov, tag));
    }
    let (mut arrangement, duplicates) = Arrangement::from_tagged(out_dim, items).expect("row lengths checked");
    arrangement.label = label;
    arrangement.layout = weyl.or(projection);
    Ok(ParsedFile { arrangement, duplicates })
}

/// Canonical text of an arrangement (essential coordinates, integer rows).
pub fn emit_arrangement(arr: &Arrangement) -> String {
    let mut out = String::new();
    if let Some(label) = &arr.label {
        let _ = writeln!(out, "label {label}");
    }
    let _ = writeln!(out, "dim {}", arr.dim());
    if let Some(w) = &arr.layout {
        let _ = writeln!(out, "weyl {w}");
    }
    for (h, tag) in arr.hyperplanes().iter().zip(arr.tags()) {
        out.push('h');
        for c in h.coeffs() {
            let _ = write!(out, " {c}");
        }
        match tag {
            Some(Tag::T) => out.push_str(" T"),
            Some(Tag::F) => out.push_str(" F"),
            None => {}
        }
        out.push('\n');
    }
    out
}

/// The shipped data files.
pub mod data {
    pub const G8_ARR: &str = include_str!("../data/g8.arr");
    pub const G4_ARR: &str = include_str!("../data/g4.arr");
    pub const DIHEDRAL_ARR: &str = include_str!("../data/dihedral.arr");
    pub const TABLE1_JSON: &str = include_str!("../data/table1.json");
}
