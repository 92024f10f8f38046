//! Text, JSON and facet/ray file formats for inequality systems and cones.

use std::fmt::Write as _;

use num::{BigInt, Signed, Zero};

use crate::coxeter::RootSystem;
use crate::error::{Error, Result};
use crate::inequalities::{InequalitySystem, LinearInequality, Provenance};
use crate::rational::{fmt_rational, parse_rational, Q};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses one `a b | c d | ... <= 0` line into per-side integer rows.
///
/// `line_no` is only used in error positions.
pub fn parse_text_line(text: &str, line_no: usize) -> Result<Vec<Vec<i64>>> {
    let Some(lhs_end) = text.find("<=") else {
        return Err(parse_err(line_no, text.len() + 1, "missing `<= 0`"));
    };
    let rhs = text[lhs_end + 2..].trim();
    if rhs != "0" {
        return Err(parse_err(
            line_no,
            lhs_end + 3,
            format!("right-hand side must be 0, got `{rhs}`"),
        ));
    }
    let mut sides = Vec::new();
    let mut offset = 0;
    for chunk in text[..lhs_end].split('|') {
        let mut side = Vec::new();
        let mut pos = offset;
        for token in chunk.split(' ') {
            if !token.is_empty() {
                let v: i64 = token.parse().map_err(|_| {
                    parse_err(line_no, pos + 1, format!("not an integer: `{token}`"))
                })?;
                side.push(v);
            }
            pos += token.len() + 1;
        }
        if side.is_empty() {
            return Err(parse_err(line_no, offset + 1, "empty side"));
        }
        sides.push(side);
        offset += chunk.len() + 1;
    }
    let width = sides[0].len();
    if let Some(i) = sides.iter().position(|s| s.len() != width) {
        return Err(parse_err(
            line_no,
            1,
            format!(
                "side {} has {} coefficients, expected {width}",
                i + 1,
                sides[i].len()
            ),
        ));
    }
    Ok(sides)
}

/// Parses a whole text listing; blank lines and `#` comments are skipped.
pub fn parse_text(text: &str) -> Result<Vec<Vec<Vec<i64>>>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| parse_text_line(l, i + 1))
        .collect()
}

/// Canonical text form: the primitive integer representative of the parsed row.
pub fn canonical_text_line(text: &str) -> Result<String> {
    let rows = parse_text_line(text, 1)?;
    let q: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
        .collect();
    let prov = Provenance::Chamber {
        side: 0,
        functional: 0,
    };
    LinearInequality::new(&q, prov)
        .map(|i| i.to_text())
        .ok_or_else(|| parse_err(1, 1, "zero inequality"))
}

pub fn system_text(sys: &InequalitySystem) -> String {
    sys.inequalities
        .iter()
        .map(|i| i.to_text() + "\n")
        .collect()
}

/// Comma-separated rationals, as in `1,1` or `3/2,-1/2,-1`.
pub fn parse_vector(s: &str) -> Result<Vec<Q>> {
    let mut out = Vec::new();
    let mut col = 1;
    for part in s.split(',') {
        out.push(parse_rational(part).map_err(|e| match e {
            Error::Parse { message, .. } => parse_err(1, col, message),
            e => e,
        })?);
        col += part.len() + 1;
    }
    Ok(out)
}

fn term(c: &Q, var: usize) -> String {
    let mag = c.abs();
    let sign = if c.is_negative() { '-' } else { '+' };
    if mag == Q::from_integer(1.into()) {
        format!("{sign}x{var}")
    } else {
        format!("{sign}{}x{var}", fmt_rational(&mag))
    }
}

fn linear_form(coeffs: &[Q]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| term(c, i + 1))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("")
    }
}

/// Facet-file layout over the ambient coordinates `x1..x(n·d)`; A2 also
/// gets the sum-zero equation of every side.
pub fn system_ieq(rs: &RootSystem, sys: &InequalitySystem) -> String {
    let d = rs.ambient_dim;
    let dim = sys.n * d;
    let mut lines: Vec<String> = Vec::new();
    if d == 3 {
        for side in 0..sys.n {
            let mut c = vec![Q::zero(); dim];
            for k in 0..3 {
                c[side * 3 + k] = Q::from_integer(1.into());
            }
            lines.push(format!("{} == 0", linear_form(&c)));
        }
    }
    for ineq in &sys.inequalities {
        let c: Vec<Q> = ineq.rational_rows().concat();
        lines.push(format!("{} <= 0", linear_form(&c)));
    }
    let mut s = format!("DIM = {dim}\n\nINEQUALITIES_SECTION\n");
    for (i, l) in lines.iter().enumerate() {
        let _ = writeln!(s, "({:>3}) {l}", i + 1);
    }
    s.push_str("\nEND\n");
    s
}

/// Ray-file layout: one primitive integer ray per line.
pub fn rays_poi(dim: usize, rays: &[Vec<BigInt>]) -> String {
    let mut s = format!("DIM = {dim}\n\nCONE_SECTION\n");
    for (i, r) in rays.iter().enumerate() {
        let cells: Vec<String> = r.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(s, "({:>3}) {}", i + 1, cells.join(" "));
    }
    s.push_str("\nEND\n");
    s
}

/// Reads the `CONE_SECTION` of a ray file back.
pub fn parse_poi(text: &str) -> Result<(usize, Vec<Vec<BigInt>>)> {
    let mut dim = None;
    let mut rays = Vec::new();
    let mut in_section = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix("DIM") {
            let v = rest.trim_start_matches([' ', '=']).trim();
            dim = Some(
                v.parse::<usize>()
                    .map_err(|_| parse_err(i + 1, 1, "bad DIM line"))?,
            );
        } else if line == "CONE_SECTION" {
            in_section = true;
        } else if line == "END" {
            break;
        } else if in_section && !line.is_empty() {
            let body = match line.find(')') {
                Some(p) if line.starts_with('(') => &line[p + 1..],
                _ => line,
            };
            let ray = body
                .split_whitespace()
                .map(|t| {
                    t.parse::<BigInt>()
                        .map_err(|_| parse_err(i + 1, 1, format!("not an integer: `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            rays.push(ray);
        }
    }
    let dim = dim.ok_or_else(|| parse_err(1, 1, "missing DIM line"))?;
    if let Some(r) = rays.iter().find(|r| r.len() != dim) {
        return Err(parse_err(
            1,
            1,
            format!("ray of length {} in dimension {dim}", r.len()),
        ));
    }
    Ok((dim, rays))
}

/// `(a,b,c) (d,e,f) ...` per-side rendering of a ray.
pub fn sides_text(sides: &[Vec<BigInt>]) -> String {
    sides
        .iter()
        .map(|s| {
            format!(
                "({})",
                s.iter()
                    .map(BigInt::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}
