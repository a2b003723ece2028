//! Plain-text couple files.
//!
//! ```text
//! exact-couple
//! A rank 0 torsion 2
//! B rank 0 torsion 4
//! alpha 1 1
//! row 2
//! beta 1 1
//! row 1
//! ```
//!
//! `alpha` and `beta` give `rows cols` followed by one `row` line per matrix
//! row, in the canonical generator ordering. Blank lines and lines starting
//! with `#` are ignored when reading. [`write_couple`] output parses back to the
//! same couple and re-renders byte for byte.

use std::fmt::Write as _;

use super::ExactCouple;
use crate::error::{Error, Result};
use crate::fga::{AbelianGroup, GroupHom, IntMatrix};
use crate::scalar::Scalar;

const HEADER: &str = "exact-couple";

pub fn write_couple<T: Scalar>(d: &ExactCouple<T>) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    write_group(&mut out, "A", d.phi1());
    write_group(&mut out, "B", d.phi2());
    write_matrix(&mut out, "alpha", d.alpha().matrix());
    write_matrix(&mut out, "beta", d.beta().matrix());
    out
}

fn write_group<T: Scalar>(out: &mut String, name: &str, g: &AbelianGroup<T>) {
    write!(out, "{name} rank {} torsion", g.rank()).unwrap();
    for d in g.torsion() {
        write!(out, " {d}").unwrap();
    }
    out.push('\n');
}

fn write_matrix<T: Scalar>(out: &mut String, name: &str, m: &IntMatrix<T>) {
    writeln!(out, "{name} {} {}", m.rows(), m.cols()).unwrap();
    for i in 0..m.rows() {
        out.push_str("row");
        for v in m.row(i) {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
}

struct Lines<'a> {
    inner: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let inner = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Self { inner, pos: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let last = self.inner.last().map_or(1, |(n, _)| *n);
        let (n, l) = self.inner.get(self.pos).copied().ok_or(Error::CoupleFile {
            line: last,
            msg: format!("unexpected end of file, expected {what}"),
        })?;
        self.pos += 1;
        Ok((n, l.split_whitespace().collect()))
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::CoupleFile { line, msg: msg.into() }
}

fn number<T: Scalar>(line: usize, tok: &str) -> Result<T> {
    tok.parse::<T>().map_err(|_| err(line, format!("`{tok}` is not an integer")))
}

fn count(line: usize, tok: &str) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| err(line, format!("`{tok}` is not a count")))
}

fn read_group<T: Scalar>(lines: &mut Lines<'_>, name: &str) -> Result<AbelianGroup<T>> {
    let (n, toks) = lines.next(name)?;
    if toks.len() < 4 || toks[0] != name || toks[1] != "rank" || toks[3] != "torsion" {
        return Err(err(n, format!("expected `{name} rank <r> torsion <d1> ...`")));
    }
    let rank = count(n, toks[2])?;
    let torsion = toks[4..].iter().map(|t| number(n, t)).collect::<Result<Vec<T>>>()?;
    AbelianGroup::new(rank, torsion).map_err(|e| err(n, e.to_string()))
}

fn read_matrix<T: Scalar>(lines: &mut Lines<'_>, name: &str) -> Result<(usize, IntMatrix<T>)> {
    let (n, toks) = lines.next(name)?;
    if toks.len() != 3 || toks[0] != name {
        return Err(err(n, format!("expected `{name} <rows> <cols>`")));
    }
    let rows = count(n, toks[1])?;
    let cols = count(n, toks[2])?;
    let mut m = IntMatrix::zeros(rows, cols);
    for i in 0..rows {
        let (rn, toks) = lines.next("row")?;
        if toks.first() != Some(&"row") {
            return Err(err(rn, "expected `row ...`"));
        }
        if toks.len() - 1 != cols {
            return Err(err(rn, format!("expected {cols} entries, found {}", toks.len() - 1)));
        }
        for (j, t) in toks[1..].iter().enumerate() {
            m[(i, j)] = number(rn, t)?;
        }
    }
    Ok((n, m))
}

/// Reads a couple file. Only the structure is checked here; exactness is
/// left to [`ExactCouple::validate`].
pub fn parse_couple<T: Scalar>(text: &str) -> Result<ExactCouple<T>> {
    let mut lines = Lines::new(text);
    let (n, toks) = lines.next("header")?;
    if toks != [HEADER] {
        return Err(err(n, format!("expected `{HEADER}` header")));
    }
    let a = read_group::<T>(&mut lines, "A")?;
    let b = read_group::<T>(&mut lines, "B")?;
    let (an, am) = read_matrix::<T>(&mut lines, "alpha")?;
    let alpha = GroupHom::new(&a, &b, am).map_err(|e| err(an, format!("alpha: {e}")))?;
    let (bn, bm) = read_matrix::<T>(&mut lines, "beta")?;
    let beta = GroupHom::new(&b, &a, bm).map_err(|e| err(bn, format!("beta: {e}")))?;
    if let Ok((n, _)) = lines.next("end") {
        return Err(err(n, "trailing content"));
    }
    ExactCouple::new(alpha, beta)
}
