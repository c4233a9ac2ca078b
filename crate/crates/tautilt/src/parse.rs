//! Line-oriented text formats: the algebra file (quiver, relations,
//! nilpotency bound) and the Cartan data file, with position-annotated
//! errors and a canonical printer for round-tripping.
//!
//! Algebra grammar (one statement per line, `#` starts a comment):
//!
//! ```text
//! vertices <id>+
//! arrow <name> <src> <tgt>
//! relation <term> (("+"|"-") <term>)*
//! nilbound <N>
//! ```
//!
//! with `<term> := [<rational> "*"] <arrow> ("*" <arrow>)*`, an omitted
//! coefficient meaning 1 and `<rational>` written `p` or `p/q`. Arrow names
//! start with a letter. Cartan files use `row <int>+` (one line per row of
//! `C`), `symmetrizer <int>+`, and `orientation <i> <j>` per pair.

use crate::algebra::{CartanData, RelationSpec};
use crate::linalg::Rat;
use crate::quiver::{Arrow, Quiver};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraFile {
    pub quiver: Quiver,
    pub relations: Vec<RelationSpec>,
    pub nilbound: u32,
}

struct Token {
    text: String,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token> {
    let stripped: String = match line.find('#') {
        Some(i) => line[..i].to_string(),
        None => line.to_string(),
    };
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    for (i, ch) in stripped.chars().enumerate() {
        if ch.is_whitespace() {
            if !current.is_empty() {
                tokens.push(Token {
                    text: std::mem::take(&mut current),
                    col: start + 1,
                });
            }
        } else {
            if current.is_empty() {
                start = i;
            }
            current.push(ch);
        }
    }
    if !current.is_empty() {
        tokens.push(Token {
            text: current,
            col: start + 1,
        });
    }
    tokens
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_rational(s: &str) -> Option<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if num.is_empty() || den.is_empty() {
        return None;
    }
    let valid_int = |t: &str| -> bool {
        let t = t.strip_prefix('-').unwrap_or(t);
        !t.is_empty() && t.chars().all(|c| c.is_ascii_digit())
    };
    if !valid_int(num) || !valid_int(den) {
        return None;
    }
    let n = BigInt::from_str(num).ok()?;
    let d = BigInt::from_str(den).ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rat::new(n, d))
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile, ParseError> {
    let err = |line: usize, col: usize, message: String| ParseError { line, col, message };
    let mut vertices: Vec<u32> = Vec::new();
    let mut seen_vertices = false;
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut nilbound: Option<u32> = None;
    // Relations are validated after the whole file is read, with saved
    // positions for precise reporting.
    struct PendingTerm {
        coeff: Rat,
        names: Vec<String>,
        line: usize,
        col: usize,
    }
    let mut pending: Vec<Vec<PendingTerm>> = Vec::new();

    for (li, raw) in text.lines().enumerate() {
        let line_no = li + 1;
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        let head = &tokens[0];
        match head.text.as_str() {
            "vertices" => {
                if seen_vertices {
                    return Err(err(line_no, head.col, "duplicate vertices line".into()));
                }
                seen_vertices = true;
                if tokens.len() == 1 {
                    return Err(err(line_no, head.col, "vertices line needs ids".into()));
                }
                let mut seen = BTreeSet::new();
                for t in &tokens[1..] {
                    let id: u32 = t.text.parse().map_err(|_| {
                        err(line_no, t.col, format!("invalid vertex id `{}`", t.text))
                    })?;
                    if id == 0 {
                        return Err(err(line_no, t.col, "vertex ids are positive".into()));
                    }
                    if !seen.insert(id) {
                        return Err(err(line_no, t.col, format!("duplicate vertex {id}")));
                    }
                    vertices.push(id);
                }
            }
            "arrow" => {
                if tokens.len() != 4 {
                    return Err(err(
                        line_no,
                        head.col,
                        "arrow line needs: arrow <name> <src> <tgt>".into(),
                    ));
                }
                let name = tokens[1].text.clone();
                if !is_identifier(&name) {
                    return Err(err(
                        line_no,
                        tokens[1].col,
                        format!("arrow name `{name}` must start with a letter"),
                    ));
                }
                if arrows.iter().any(|a| a.name == name) {
                    return Err(err(
                        line_no,
                        tokens[1].col,
                        format!("duplicate arrow name `{name}`"),
                    ));
                }
                let src: u32 = tokens[2].text.parse().map_err(|_| {
                    err(line_no, tokens[2].col, "invalid source vertex".into())
                })?;
                let tgt: u32 = tokens[3].text.parse().map_err(|_| {
                    err(line_no, tokens[3].col, "invalid target vertex".into())
                })?;
                for (v, t) in [(src, &tokens[2]), (tgt, &tokens[3])] {
                    if !vertices.contains(&v) {
                        return Err(err(line_no, t.col, format!("undeclared vertex {v}")));
                    }
                }
                arrows.push(Arrow {
                    name,
                    source: src,
                    target: tgt,
                });
            }
            "relation" => {
                if tokens.len() == 1 {
                    return Err(err(line_no, head.col, "empty relation".into()));
                }
                let mut terms: Vec<PendingTerm> = Vec::new();
                let mut sign = Rat::one();
                let mut expect_term = true;
                for t in &tokens[1..] {
                    if !expect_term && (t.text == "+" || t.text == "-") {
                        sign = if t.text == "-" { -Rat::one() } else { Rat::one() };
                        expect_term = true;
                        continue;
                    }
                    if !expect_term {
                        return Err(err(
                            line_no,
                            t.col,
                            "expected `+` or `-` between terms".into(),
                        ));
                    }
                    let chunks: Vec<&str> = t.text.split('*').collect();
                    if chunks.iter().any(|c| c.is_empty()) {
                        return Err(err(line_no, t.col, "malformed term".into()));
                    }
                    let (coeff, names): (Rat, Vec<String>) =
                        match parse_rational(chunks[0]) {
                            Some(r) => {
                                if chunks.len() == 1 {
                                    return Err(err(
                                        line_no,
                                        t.col,
                                        "term needs at least one arrow".into(),
                                    ));
                                }
                                (r, chunks[1..].iter().map(|s| s.to_string()).collect())
                            }
                            None => (
                                Rat::one(),
                                chunks.iter().map(|s| s.to_string()).collect(),
                            ),
                        };
                    terms.push(PendingTerm {
                        coeff: coeff * sign.clone(),
                        names,
                        line: line_no,
                        col: t.col,
                    });
                    sign = Rat::one();
                    expect_term = false;
                }
                if expect_term {
                    return Err(err(line_no, head.col, "relation ends with a sign".into()));
                }
                pending.push(terms);
            }
            "nilbound" => {
                if tokens.len() != 2 {
                    return Err(err(line_no, head.col, "nilbound line needs one integer".into()));
                }
                if nilbound.is_some() {
                    return Err(err(line_no, head.col, "duplicate nilbound line".into()));
                }
                let n: u32 = tokens[1].text.parse().map_err(|_| {
                    err(line_no, tokens[1].col, "invalid nilbound".into())
                })?;
                nilbound = Some(n);
            }
            other => {
                return Err(err(
                    line_no,
                    head.col,
                    format!("unknown statement `{other}`"),
                ));
            }
        }
    }

    if !seen_vertices {
        return Err(err(1, 1, "missing vertices line".into()));
    }
    let nilbound = nilbound.ok_or_else(|| err(1, 1, "missing nilbound line".into()))?;

    // Late semantic validation of relations against the declared arrows.
    let mut relations = Vec::new();
    for terms in pending {
        let mut spec = Vec::new();
        for term in terms {
            let mut prev_target: Option<u32> = None;
            for name in &term.names {
                let arrow = arrows.iter().find(|a| &a.name == name).ok_or_else(|| {
                    err(term.line, term.col, format!("unknown arrow `{name}`"))
                })?;
                if let Some(p) = prev_target {
                    if p != arrow.source {
                        return Err(err(
                            term.line,
                            term.col,
                            "term path is not composable".into(),
                        ));
                    }
                }
                prev_target = Some(arrow.target);
            }
            spec.push((term.coeff, term.names));
        }
        // Shared endpoints across terms.
        let endpoints = |names: &[String]| -> (u32, u32) {
            let first = arrows.iter().find(|a| a.name == names[0]).unwrap();
            let last = arrows.iter().find(|a| &a.name == names.last().unwrap()).unwrap();
            (first.source, last.target)
        };
        if let Some(first) = spec.first().map(|(_, n)| n.clone()) {
            let ep = endpoints(&first);
            for (_, names) in &spec[1..] {
                if endpoints(names) != ep {
                    return Err(err(
                        1,
                        1,
                        "relation terms do not share source and target".into(),
                    ));
                }
            }
        }
        relations.push(RelationSpec { terms: spec });
    }

    let quiver = Quiver::new(vertices, arrows)
        .map_err(|e| err(1, 1, format!("invalid quiver: {e}")))?;
    Ok(AlgebraFile {
        quiver,
        relations,
        nilbound,
    })
}

/// Canonical printer; `parse(print(parse(t)))` equals `parse(t)`.
pub fn print_algebra(file: &AlgebraFile) -> String {
    let mut out = String::new();
    out.push_str("vertices");
    for v in file.quiver.vertices() {
        out.push_str(&format!(" {v}"));
    }
    out.push('\n');
    for a in file.quiver.arrows() {
        out.push_str(&format!("arrow {} {} {}\n", a.name, a.source, a.target));
    }
    for rel in &file.relations {
        out.push_str("relation ");
        for (i, (coeff, names)) in rel.terms.iter().enumerate() {
            let (sign_negative, abs) = if coeff < &Rat::from_integer(0.into()) {
                (true, -coeff.clone())
            } else {
                (false, coeff.clone())
            };
            if i == 0 {
                if sign_negative {
                    // Fold the sign into an explicit coefficient.
                    out.push_str(&format!("-{abs}*"));
                } else if !abs.is_one() {
                    out.push_str(&format!("{abs}*"));
                }
            } else {
                out.push_str(if sign_negative { " - " } else { " + " });
                if !abs.is_one() {
                    out.push_str(&format!("{abs}*"));
                }
            }
            out.push_str(&names.join("*"));
        }
        out.push('\n');
    }
    out.push_str(&format!("nilbound {}\n", file.nilbound));
    out
}

pub fn parse_cartan(text: &str) -> Result<CartanData, ParseError> {
    let err = |line: usize, col: usize, message: String| ParseError { line, col, message };
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut d: Option<Vec<i64>> = None;
    let mut omega: Vec<(u32, u32)> = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line_no = li + 1;
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        let head = &tokens[0];
        match head.text.as_str() {
            "row" => {
                let mut row = Vec::new();
                for t in &tokens[1..] {
                    row.push(t.text.parse::<i64>().map_err(|_| {
                        err(line_no, t.col, format!("invalid integer `{}`", t.text))
                    })?);
                }
                if row.is_empty() {
                    return Err(err(line_no, head.col, "empty row".into()));
                }
                rows.push(row);
            }
            "symmetrizer" => {
                if d.is_some() {
                    return Err(err(line_no, head.col, "duplicate symmetrizer".into()));
                }
                let mut diag = Vec::new();
                for t in &tokens[1..] {
                    diag.push(t.text.parse::<i64>().map_err(|_| {
                        err(line_no, t.col, format!("invalid integer `{}`", t.text))
                    })?);
                }
                d = Some(diag);
            }
            "orientation" => {
                if tokens.len() != 3 {
                    return Err(err(
                        line_no,
                        head.col,
                        "orientation line needs two vertices".into(),
                    ));
                }
                let i: u32 = tokens[1].text.parse().map_err(|_| {
                    err(line_no, tokens[1].col, "invalid vertex".into())
                })?;
                let j: u32 = tokens[2].text.parse().map_err(|_| {
                    err(line_no, tokens[2].col, "invalid vertex".into())
                })?;
                omega.push((i, j));
            }
            other => {
                return Err(err(line_no, head.col, format!("unknown statement `{other}`")));
            }
        }
    }
    if rows.is_empty() {
        return Err(err(1, 1, "missing Cartan rows".into()));
    }
    let d = d.ok_or_else(|| err(1, 1, "missing symmetrizer".into()))?;
    Ok(CartanData { c: rows, d, omega })
}
