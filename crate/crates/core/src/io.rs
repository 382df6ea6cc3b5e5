//! Text formats: cycle notation, group files, triple files and block lists.
//!
//! A group file holds one generator per line in 1-indexed cycle notation,
//! with an optional `degree N` header and `#` comments; `;` separates
//! generators written on one line. A triple file has
//! `G:`, `A:` and `B:` sections in the same format; generators may follow
//! the colon on the same line.

use crate::error::{Error, Result};
use crate::factorisation::TripleFactorisation;
use crate::group::PermGroup;
use crate::perm::Permutation;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Cycles of a product such as `(1,2,3)(4,5)`, 0-indexed. `()` is the
/// identity. Whitespace is ignored; points may be separated by commas or
/// spaces.
pub fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(parse_err(format!("expected '(' at {rest:?}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| parse_err(format!("unclosed cycle in {s:?}")))?;
        let body = &rest[1..close];
        let mut cycle = Vec::new();
        for tok in body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let x: usize = tok
                .parse()
                .map_err(|_| parse_err(format!("bad point {tok:?} in {s:?}")))?;
            if x == 0 {
                return Err(parse_err("points are numbered from 1"));
            }
            cycle.push(x - 1);
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

fn max_point(cycles: &[Vec<usize>]) -> usize {
    cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0)
}

/// Cycles that share points are composed left to right.
pub fn parse_permutation(s: &str, degree: usize) -> Result<Permutation> {
    from_cycle_list(degree, &parse_cycles(s)?)
}

fn from_cycle_list(degree: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
    let mut p = Permutation::identity(degree);
    for c in cycles {
        p = p.compose(&Permutation::from_cycles(degree, std::slice::from_ref(c))?);
    }
    Ok(p)
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_degree_header(line: &str) -> Result<Option<usize>> {
    match line.strip_prefix("degree") {
        Some(rest) if !rest.starts_with('(') => rest
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| parse_err(format!("bad degree header {line:?}"))),
        _ => Ok(None),
    }
}

/// Parses a group file. Without a header the degree is the largest moved point.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut degree = None;
    let mut gens = Vec::new();
    for line in text.lines().map(strip_comment).filter(|l| !l.is_empty()) {
        if let Some(d) = parse_degree_header(line)? {
            degree = Some(d);
        } else {
            for part in line.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                gens.push(parse_cycles(part)?);
            }
        }
    }
    build_group(degree, &gens)
}

fn build_group(degree: Option<usize>, gens: &[Vec<Vec<usize>>]) -> Result<PermGroup> {
    let inferred = gens.iter().map(|c| max_point(c)).max().unwrap_or(0);
    let degree = match degree {
        Some(d) if d < inferred => {
            return Err(Error::DegreeMismatch {
                left: d,
                right: inferred,
            });
        }
        Some(d) => d,
        None => inferred.max(1),
    };
    let perms = gens
        .iter()
        .map(|c| from_cycle_list(degree, c))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(degree, perms)
}

/// Parses a triple file with `G:`, `A:`, `B:` sections sharing one degree.
pub fn parse_triple(text: &str) -> Result<TripleFactorisation> {
    let mut degree = None;
    let mut sections: [Vec<Vec<Vec<usize>>>; 3] = Default::default();
    let mut seen = [false; 3];
    let mut current: Option<usize> = None;
    for line in text.lines().map(strip_comment).filter(|l| !l.is_empty()) {
        if let Some(d) = parse_degree_header(line)? {
            degree = Some(d);
            continue;
        }
        let mut body = line;
        if let Some((head, tail)) = line.split_once(':') {
            let idx = match head.trim() {
                "G" | "g" => 0,
                "A" | "a" => 1,
                "B" | "b" => 2,
                other => return Err(parse_err(format!("unknown section {other:?}"))),
            };
            current = Some(idx);
            seen[idx] = true;
            body = tail.trim();
        }
        if body.is_empty() {
            continue;
        }
        let idx = current.ok_or_else(|| parse_err("generator before any G:/A:/B: section"))?;
        for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            sections[idx].push(parse_cycles(part)?);
        }
    }
    if !seen[0] {
        return Err(parse_err("missing G: section"));
    }
    let inferred = sections.iter().flatten().map(|c| max_point(c)).max().unwrap_or(1);
    let degree = match degree {
        Some(d) if d < inferred => {
            return Err(Error::DegreeMismatch {
                left: d,
                right: inferred,
            })
        }
        Some(d) => d,
        None => inferred,
    };
    let g = build_group(Some(degree), &sections[0])?;
    let a = build_group(Some(degree), &sections[1])?;
    let b = build_group(Some(degree), &sections[2])?;
    TripleFactorisation::new(g, a, b)
}

/// Blocks, one per line or separated by `|`, points 1-indexed and separated
/// by commas or spaces; braces are ignored.
pub fn parse_blocks(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut blocks = Vec::new();
    for line in text.lines().map(strip_comment) {
        for part in line.split(['|', '}']) {
            let cleaned: String = part.chars().map(|c| if c == '{' { ' ' } else { c }).collect();
            let points = cleaned
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(x) if x >= 1 => Ok(x - 1),
                    _ => Err(parse_err(format!("bad point {t:?} in block list"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if !points.is_empty() {
                blocks.push(points);
            }
        }
    }
    Ok(blocks)
}

/// A group file that [`parse_group`] reads back to the same generators.
pub fn format_group(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for x in g.generators() {
        out.push_str(&x.to_cycle_string());
        out.push('\n');
    }
    out
}

pub fn format_triple(t: &TripleFactorisation) -> String {
    let mut out = format!("degree {}\n", t.g().degree());
    for (name, h) in [("G", t.g()), ("A", t.a()), ("B", t.b())] {
        out.push_str(name);
        out.push_str(":\n");
        for x in h.generators() {
            out.push_str(&x.to_cycle_string());
            out.push('\n');
        }
    }
    out
}
