//! Text formats for Cartan data.
//!
//! A quiver file names the vertex count and the arrows, 1-based:
//!
//! ```text
//! n 4
//! arrows: 1 3; 1 4; 2 3; 2 4
//! ```
//!
//! A Cartan file gives the rows of a generalized Cartan matrix after a
//! `cartan:` line, optionally followed by `valuation: i j a_ij a_ji` lines.
//! Blank lines and `#` comments are ignored in both.

use crate::coxeter::CartanData;
use crate::error::{Error, Result};

struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn lines(src: &str) -> impl Iterator<Item = Line<'_>> {
    src.lines().enumerate().filter_map(|(k, raw)| {
        let text = raw.split('#').next().unwrap_or("").trim();
        (!text.is_empty()).then_some(Line {
            number: k + 1,
            text,
        })
    })
}

fn int<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| Error::parse(line, token, format!("expected {what}")))
}

/// Parses either format, telling them apart by the first keyword.
pub fn parse_cartan_file(src: &str) -> Result<CartanData> {
    match lines(src).next() {
        Some(l) if l.text.starts_with("cartan") => parse_matrix_file(src),
        Some(_) => parse_quiver_file(src),
        None => Err(Error::parse(1, "", "empty input")),
    }
}

pub fn parse_quiver_file(src: &str) -> Result<CartanData> {
    let mut n: Option<usize> = None;
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    let mut last_line = 1;
    for Line { number, text } in lines(src) {
        last_line = number;
        if let Some(rest) = text.strip_prefix("arrows:") {
            let Some(n) = n else {
                return Err(Error::parse(
                    number,
                    "arrows:",
                    "arrows before the `n` line",
                ));
            };
            for pair in rest.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                let ends: Vec<&str> = pair.split_whitespace().collect();
                let [s, d] = ends[..] else {
                    return Err(Error::parse(number, pair, "expected `src dst`"));
                };
                let (s, d): (usize, usize) = (
                    int(number, s, "a vertex index")?,
                    int(number, d, "a vertex index")?,
                );
                for x in [s, d] {
                    if x == 0 || x > n {
                        return Err(Error::parse(
                            number,
                            pair,
                            format!("vertex {x} out of range 1..={n}"),
                        ));
                    }
                }
                if s >= d {
                    return Err(Error::parse(
                        number,
                        pair,
                        Error::NonAdmissibleArrow { src: s, dst: d }.to_string(),
                    ));
                }
                arrows.push((s - 1, d - 1));
            }
        } else if let Some(rest) = text
            .strip_prefix('n')
            .filter(|r| r.starts_with(char::is_whitespace))
        {
            if n.is_some() {
                return Err(Error::parse(number, text, "duplicate `n` line"));
            }
            n = Some(int(number, rest.trim(), "a vertex count")?);
        } else {
            let token = text.split_whitespace().next().unwrap_or(text);
            return Err(Error::parse(
                number,
                token,
                "expected `n <count>` or `arrows:`",
            ));
        }
    }
    let Some(n) = n else {
        return Err(Error::parse(last_line, "", "missing `n <count>` line"));
    };
    CartanData::from_quiver(n, &arrows)
}

pub fn parse_matrix_file(src: &str) -> Result<CartanData> {
    let mut rows: Vec<(usize, Vec<i64>)> = Vec::new();
    let mut valuations: Vec<(usize, [u32; 4])> = Vec::new();
    let mut in_matrix = false;
    let mut header_line = 1;
    for Line { number, text } in lines(src) {
        if let Some(rest) = text.strip_prefix("cartan:") {
            if in_matrix || !rows.is_empty() {
                return Err(Error::parse(
                    number,
                    "cartan:",
                    "duplicate `cartan:` section",
                ));
            }
            in_matrix = true;
            header_line = number;
            if !rest.trim().is_empty() {
                return Err(Error::parse(
                    number,
                    rest.trim(),
                    "rows go on the following lines",
                ));
            }
        } else if let Some(rest) = text.strip_prefix("valuation:") {
            in_matrix = false;
            let toks: Vec<&str> = rest.split_whitespace().collect();
            let [i, j, a, b] = toks[..] else {
                return Err(Error::parse(
                    number,
                    rest.trim(),
                    "expected `i j a_ij a_ji`",
                ));
            };
            valuations.push((
                number,
                [
                    int(number, i, "an index")?,
                    int(number, j, "an index")?,
                    int(number, a, "a multiplicity")?,
                    int(number, b, "a multiplicity")?,
                ],
            ));
        } else if in_matrix {
            let row = text
                .split_whitespace()
                .map(|t| int(number, t, "an integer"))
                .collect::<Result<Vec<i64>>>()?;
            rows.push((number, row));
        } else {
            let token = text.split_whitespace().next().unwrap_or(text);
            return Err(Error::parse(
                number,
                token,
                "expected `cartan:` or `valuation:`",
            ));
        }
    }
    if rows.is_empty() {
        return Err(Error::parse(header_line, "cartan:", "no matrix rows"));
    }
    let n = rows.len();
    for (line, row) in &rows {
        if row.len() != n {
            return Err(Error::parse(
                *line,
                row.iter().map(i64::to_string).collect::<Vec<_>>().join(" "),
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
    }
    for (k, (line, row)) in rows.iter().enumerate() {
        for (l, &x) in row.iter().enumerate() {
            let bad = if k == l {
                x != 2
            } else {
                x > 0 || (x == 0) != (rows[l].1[k] == 0)
            };
            if bad {
                return Err(Error::parse(
                    *line,
                    x.to_string(),
                    format!("entry ({}, {}) breaks the Cartan axioms", k + 1, l + 1),
                ));
            }
        }
    }
    let mut cartan = CartanData::from_matrix(rows.into_iter().map(|(_, r)| r).collect())?;
    for (line, [i, j, a, b]) in valuations {
        let token = format!("{i} {j} {a} {b}");
        for x in [i, j] {
            if x == 0 || x as usize > n {
                return Err(Error::parse(
                    line,
                    token,
                    format!("index {x} out of range 1..={n}"),
                ));
            }
        }
        cartan = cartan
            .with_valuation(i as usize - 1, j as usize - 1, a, b)
            .map_err(|e| Error::parse(line, token, e.to_string()))?;
    }
    Ok(cartan)
}
