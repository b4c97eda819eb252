//! Quiver-with-relations presentations and their text format.
//!
//! ```text
//! field Q
//! vertex 1
//! vertex 2
//! arrow a : 1 -> 2
//! relation b*a - 2 c*d
//! bound 12
//! ```

use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{scalar_to_string, Field, Scalar};

pub const DEFAULT_BOUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// One term `c * (a_k * ... * a_1)` of a relation; `path` lists arrows in the order they are applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(with = "scalar_str")]
    pub coeff: Scalar,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    pub bound: usize,
}

mod scalar_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::field::{scalar_to_string, Field, Scalar};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&scalar_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        Field::Rationals.parse_scalar(&s).ok_or_else(|| serde::de::Error::custom(format!("bad scalar {s}")))
    }
}

impl Presentation {
    pub fn new(field: Field) -> Self {
        Presentation { field, vertices: Vec::new(), arrows: Vec::new(), relations: Vec::new(), bound: DEFAULT_BOUND }
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn add_vertex(&mut self, name: &str) -> usize {
        self.vertices.push(name.to_string());
        self.vertices.len() - 1
    }

    pub fn add_arrow(&mut self, name: &str, source: usize, target: usize) -> usize {
        self.arrows.push(Arrow { name: name.to_string(), source, target });
        self.arrows.len() - 1
    }

    /// Adds a relation given in the text syntax, e.g. `b*a - c`.
    pub fn add_relation_str(&mut self, text: &str) -> Result<()> {
        let rel = parse_relation(self, text, 1, 1)?;
        self.relations.push(rel);
        Ok(())
    }

    /// Renders a path (application order) as `a_k*...*a_1`.
    pub fn path_name(&self, path: &[usize]) -> String {
        path.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }

    pub fn relation_text(&self, rel: &Relation) -> String {
        let mut out = String::new();
        for (i, t) in rel.terms.iter().enumerate() {
            let neg = t.coeff < Scalar::zero();
            let abs = if neg { -t.coeff.clone() } else { t.coeff.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                let _ = write!(out, "{} ", scalar_to_string(&abs));
            }
            out.push_str(&self.path_name(&t.path));
        }
        out
    }

    /// Canonical text form; equal presentations give identical text.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self.field {
            Field::Rationals => out.push_str("field Q\n"),
            Field::Prime(p) => {
                let _ = writeln!(out, "field Fp {p}");
            }
        }
        for v in &self.vertices {
            let _ = writeln!(out, "vertex {v}");
        }
        for a in &self.arrows {
            let _ = writeln!(out, "arrow {} : {} -> {}", a.name, self.vertices[a.source], self.vertices[a.target]);
        }
        for r in &self.relations {
            let _ = writeln!(out, "relation {}", self.relation_text(r));
        }
        let _ = writeln!(out, "bound {}", self.bound);
        out
    }

    /// Same presentation read over another field. Coefficients are renormalized.
    pub fn with_field(&self, field: Field) -> Self {
        let mut p = self.clone();
        p.field = field;
        for r in &mut p.relations {
            for t in &mut r.terms {
                t.coeff = field.normalize(t.coeff.clone());
            }
            r.terms.retain(|t| !t.coeff.is_zero());
        }
        p
    }
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

/// Parses the text format into a presentation. Structural checks (admissibility,
/// parallel terms) happen when the algebra is built.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut p = Presentation::new(Field::Rationals);
    let mut saw_statement = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let indent = content.len() - content.trim_start().len();
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        saw_statement = true;
        let (kw, rest) = match content.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (content, ""),
        };
        let rest_col = indent + 1 + content.len() - rest.len();
        match kw {
            "field" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                p.field = match parts.as_slice() {
                    ["Q"] | ["QQ"] => Field::Rationals,
                    ["Fp", n] => {
                        let v: u64 = n.parse().map_err(|_| perr(line_no, rest_col, format!("bad characteristic {n}")))?;
                        Field::prime(v).map_err(|e| perr(line_no, rest_col, e.to_string()))?
                    }
                    _ => return Err(perr(line_no, rest_col, format!("unknown field `{rest}`"))),
                };
            }
            "vertex" => {
                if !is_ident(rest) {
                    return Err(perr(line_no, rest_col, format!("bad vertex name `{rest}`")));
                }
                if p.vertex_index(rest).is_some() {
                    return Err(perr(line_no, rest_col, format!("duplicate vertex {rest}")));
                }
                p.add_vertex(rest);
            }
            "arrow" => {
                let (name, ends) =
                    rest.split_once(':').ok_or_else(|| perr(line_no, rest_col, "expected `arrow name : s -> t`"))?;
                let name = name.trim();
                if !is_ident(name) {
                    return Err(perr(line_no, rest_col, format!("bad arrow name `{name}`")));
                }
                if p.arrow_index(name).is_some() {
                    return Err(perr(line_no, rest_col, format!("duplicate arrow {name}")));
                }
                let (s, t) = ends.split_once("->").ok_or_else(|| perr(line_no, rest_col, "expected `s -> t`"))?;
                let s = s.trim();
                let t = t.trim();
                let si = p.vertex_index(s).ok_or_else(|| perr(line_no, rest_col, format!("unknown vertex {s}")))?;
                let ti = p.vertex_index(t).ok_or_else(|| perr(line_no, rest_col, format!("unknown vertex {t}")))?;
                p.add_arrow(name, si, ti);
            }
            "relation" => {
                let rel = parse_relation(&p, rest, line_no, rest_col)?;
                p.relations.push(rel);
            }
            "bound" => {
                let b: usize = rest.parse().map_err(|_| perr(line_no, rest_col, format!("bad bound `{rest}`")))?;
                if b < 2 {
                    return Err(perr(line_no, rest_col, "bound must be at least 2"));
                }
                p.bound = b;
            }
            other => return Err(perr(line_no, indent + 1, format!("unknown statement `{other}`"))),
        }
    }
    if !saw_statement {
        return Err(perr(1, 1, "empty presentation"));
    }
    if p.vertices.is_empty() {
        return Err(perr(1, 1, "presentation has no vertices"));
    }
    let field = p.field;
    Ok(p.with_field(field))
}

fn parse_relation(p: &Presentation, text: &str, line: usize, col: usize) -> Result<Relation> {
    let chars: Vec<char> = text.chars().collect();
    let mut terms = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= chars.len() {
            break;
        }
        let mut negative = false;
        if chars[i] == '+' || chars[i] == '-' {
            negative = chars[i] == '-';
            i += 1;
            skip_ws(&mut i);
        } else if !terms.is_empty() {
            return Err(perr(line, col + i, "expected `+` or `-` between terms"));
        }
        let term_start = i;
        let mut j = i;
        while j < chars.len() && chars[j] != '+' && !(chars[j] == '-' && j > term_start) {
            j += 1;
        }
        let raw: String = chars[term_start..j].iter().collect();
        let term = parse_term(p, raw.trim(), line, col + term_start, negative)?;
        terms.push(term);
        i = j;
    }
    if terms.is_empty() {
        return Err(perr(line, col, "empty relation"));
    }
    Ok(Relation { terms })
}

fn parse_term(p: &Presentation, raw: &str, line: usize, col: usize, negative: bool) -> Result<Term> {
    if raw.is_empty() {
        return Err(perr(line, col, "missing term"));
    }
    let mut coeff = Scalar::one();
    let mut body = raw;
    let first = raw.chars().next().unwrap();
    if first.is_ascii_digit() {
        let end = raw.find(|c: char| !(c.is_ascii_digit() || c == '/' || c.is_whitespace())).unwrap_or(raw.len());
        let num = raw[..end].trim();
        coeff = Field::Rationals.parse_scalar(num).ok_or_else(|| perr(line, col, format!("bad coefficient `{num}`")))?;
        body = raw[end..].trim_start_matches(|c: char| c == '*' || c.is_whitespace());
    }
    if negative {
        coeff = -coeff;
    }
    let mut path = Vec::new();
    for name in body.split('*').map(str::trim).collect::<Vec<_>>().into_iter().rev() {
        if name.is_empty() {
            return Err(perr(line, col, format!("empty arrow name in `{raw}`")));
        }
        let a = p.arrow_index(name).ok_or_else(|| perr(line, col, format!("unknown arrow {name}")))?;
        path.push(a);
    }
    Ok(Term { coeff, path })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LAMBDA9: &str = "vertex 1\nvertex 2\nvertex 3\narrow a : 1 -> 2\narrow b : 2 -> 3\narrow c : 1 -> 3\nrelation b*a\n";

    #[test]
    fn parses_example_algebra() {
        let p = parse_presentation(LAMBDA9).unwrap();
        assert_eq!(p.vertices.len(), 3);
        assert_eq!(p.arrows.len(), 3);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].terms[0].path, vec![0, 1]);
        let again = parse_presentation(&p.to_text()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn parses_coefficients() {
        let text = "vertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 1 -> 2\narrow c : 2 -> 2\nrelation c*a - 2/3 c*b\n";
        let p = parse_presentation(text).unwrap();
        let r = &p.relations[0];
        assert_eq!(r.terms.len(), 2);
        assert_eq!(r.terms[1].coeff, Field::Rationals.parse_scalar("-2/3").unwrap());
        assert_eq!(p.relation_text(r), "c*a - 2/3 c*b");
    }

    #[test]
    fn empty_file_is_an_error() {
        assert!(matches!(parse_presentation("# nothing\n\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn reports_location() {
        let err = parse_presentation("vertex 1\narrow a : 1 -> 7\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
