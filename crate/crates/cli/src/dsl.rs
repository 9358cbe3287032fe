//! The line-oriented input language.
//!
//! ```text
//! surface g=1 b=1 p=0
//! surface named=flute
//! hom mod-n 3
//! hom target=(Z/4)^2 images: a1->(1,0), b1->(0,1)
//! hom target=Sym(3) images: a1->[2,1,3], b1->[1,3,2]
//! group Z/2*Z/3
//! subgroup gens: a, b a b^-1, b^2
//! aifn default=0 radius=3 vals: (a, 1), (a^2, 1)
//! ```
//!
//! `#` starts a comment. Words are whitespace-separated tokens such as
//! `a1 b1^-1 c2`; `1` or `e` is the identity.

use std::fmt;

use covercalc::ends::GroupSpec;
use covercalc::group::{Alphabet, Word};
use covercalc::model::NamedSurface;
use covercalc::surface::FiniteSurface;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceSpec {
    Finite(FiniteSurface),
    /// A surface with a selector name.
    Named(NamedSurface),
}

impl SurfaceSpec {
    pub fn named(&self) -> NamedSurface {
        match self {
            SurfaceSpec::Finite(f) => NamedSurface::FiniteType(*f),
            SurfaceSpec::Named(n) => *n,
        }
    }

    /// The finite-type surface, with the named compact-core ones expanded.
    pub fn finite(&self) -> Option<FiniteSurface> {
        match self {
            SurfaceSpec::Finite(f) => Some(*f),
            SurfaceSpec::Named(NamedSurface::Plane) => Some(FiniteSurface::new(0, 0, 1)),
            SurfaceSpec::Named(NamedSurface::Sphere) => Some(FiniteSurface::new(0, 0, 0)),
            SurfaceSpec::Named(NamedSurface::Annulus) => Some(FiniteSurface::new(0, 0, 2)),
            SurfaceSpec::Named(NamedSurface::Torus) => Some(FiniteSurface::new(1, 0, 0)),
            SurfaceSpec::Named(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomSpec {
    ModN(u64),
    /// Target `(ℤ/modulus)^rank`; images keyed by generator name.
    Abelian { modulus: u64, rank: u32, images: Vec<(String, Vec<i64>)> },
    /// Target `Sym(degree)`; images as one-based image lists.
    Permutation { degree: u32, images: Vec<(String, Vec<u32>)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AiLiteral {
    pub default: i64,
    pub radius: Option<u32>,
    pub values: Vec<(Word, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Surface(SurfaceSpec),
    Hom(HomSpec),
    Group(GroupSpec),
    Subgroup(Vec<Word>),
    Aifn(AiLiteral),
}

fn word_text(w: &Word) -> String {
    w.display(&Alphabet::Indexed).to_string()
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Surface(SurfaceSpec::Finite(s)) => {
                write!(f, "surface g={} b={} p={}", s.genus, s.boundary, s.punctures)
            }
            Statement::Surface(SurfaceSpec::Named(n)) => {
                write!(f, "surface named={}", n.selector().unwrap_or("?"))
            }
            Statement::Hom(HomSpec::ModN(n)) => write!(f, "hom mod-n {n}"),
            Statement::Hom(HomSpec::Abelian { modulus, rank, images }) => {
                let parts: Vec<String> = images
                    .iter()
                    .map(|(g, v)| {
                        let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                        format!("{g}->({})", coords.join(","))
                    })
                    .collect();
                write!(f, "hom target=(Z/{modulus})^{rank} images: {}", parts.join(", "))
            }
            Statement::Hom(HomSpec::Permutation { degree, images }) => {
                let parts: Vec<String> = images
                    .iter()
                    .map(|(g, v)| {
                        let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                        format!("{g}->[{}]", coords.join(","))
                    })
                    .collect();
                write!(f, "hom target=Sym({degree}) images: {}", parts.join(", "))
            }
            Statement::Group(g) => write!(f, "group {g}"),
            Statement::Subgroup(ws) => {
                let parts: Vec<String> = ws.iter().map(word_text).collect();
                write!(f, "subgroup gens: {}", parts.join(", "))
            }
            Statement::Aifn(a) => {
                write!(f, "aifn default={}", a.default)?;
                if let Some(r) = a.radius {
                    write!(f, " radius={r}")?;
                }
                f.write_str(" vals:")?;
                for (k, (w, v)) in a.values.iter().enumerate() {
                    let sep = if k == 0 { " " } else { ", " };
                    write!(f, "{sep}({}, {v})", word_text(w))?;
                }
                Ok(())
            }
        }
    }
}

/// Emits statements one per line.
pub fn emit(statements: &[Statement]) -> String {
    statements.iter().map(|s| format!("{s}\n")).collect()
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn fail<T>(&self, expected: impl Into<String>) -> Result<T, ParseError> {
        let found = match self.rest().split_whitespace().next() {
            Some(tok) => format!("`{tok}`"),
            None => "end of line".to_string(),
        };
        Err(ParseError { line: self.line, column: self.column(), expected: expected.into(), found })
    }

    fn fail_at<T>(&self, pos: usize, expected: impl Into<String>, found: impl Into<String>) -> Result<T, ParseError> {
        let column = self.text[..pos].chars().count() + 1;
        Err(ParseError { line: self.line, column, expected: expected.into(), found: found.into() })
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), ParseError> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.fail(format!("`{lit}`"))
        }
    }

    /// A run of letters, digits, `_` and (with `dashes`) `-`.
    fn ident_with(&mut self, dashes: bool) -> &'a str {
        self.skip_ws();
        let rest = self.rest();
        let end = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || (dashes && c == '-')))
            .unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    fn ident(&mut self) -> &'a str {
        self.ident_with(false)
    }

    fn int<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
            .map_or(rest.len(), |(i, _)| i);
        match rest[..end].parse() {
            Ok(v) => {
                self.pos += end;
                Ok(v)
            }
            Err(_) => self.fail(what),
        }
    }

    /// Text up to (not including) the first of `stops`, trimmed.
    fn until(&mut self, stops: &[char]) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let end = rest.find(|c| stops.contains(&c)).unwrap_or(rest.len());
        self.pos += end;
        (start, rest[..end].trim_end())
    }

    fn word(&mut self, stops: &[char]) -> Result<Word, ParseError> {
        let (start, text) = self.until(stops);
        if text.is_empty() {
            return self.fail("a word");
        }
        Alphabet::Indexed
            .parse_word(text)
            .map_err(|e| ParseError {
                line: self.line,
                column: self.text[..start].chars().count() + 1,
                expected: "a word of generators such as `a b^-1`".into(),
                found: format!("`{text}` ({e})"),
            })
    }
}

fn parse_surface(c: &mut Cursor) -> Result<Statement, ParseError> {
    if c.eat("named=") {
        let start = c.pos;
        let sel = c.ident_with(true);
        return match NamedSurface::from_selector(sel) {
            Some(n) => Ok(Statement::Surface(SurfaceSpec::Named(n))),
            None => c.fail_at(
                start,
                "one of plane, sphere, annulus, torus, flute, lnm, slnm, cantor, bct",
                format!("`{sel}`"),
            ),
        };
    }
    let (mut g, mut b, mut p) = (None, None, None);
    while !c.at_end() {
        let start = c.pos;
        let key = c.ident();
        let slot = match key {
            "g" => &mut g,
            "b" => &mut b,
            "p" => &mut p,
            _ => return c.fail_at(start, "`g=`, `b=`, `p=` or `named=`", format!("`{key}`")),
        };
        if slot.is_some() {
            return c.fail_at(start, "each of g, b, p at most once", format!("a second `{key}`"));
        }
        c.expect("=")?;
        *slot = Some(c.int::<u32>("a nonnegative integer")?);
    }
    if g.is_none() && b.is_none() && p.is_none() {
        return c.fail("`g=`, `b=`, `p=` or `named=`");
    }
    Ok(Statement::Surface(SurfaceSpec::Finite(FiniteSurface::new(
        g.unwrap_or(0),
        b.unwrap_or(0),
        p.unwrap_or(0),
    ))))
}

fn parse_images<T: std::str::FromStr>(
    c: &mut Cursor,
    open: &str,
    close: &str,
) -> Result<Vec<(String, Vec<T>)>, ParseError> {
    c.expect("images:")?;
    let mut out = Vec::new();
    loop {
        let start = c.pos;
        let name = c.ident();
        if name.is_empty() {
            return c.fail("a generator name");
        }
        if out.iter().any(|(n, _): &(String, Vec<T>)| n == name) {
            return c.fail_at(start, "each generator once", format!("a second image for `{name}`"));
        }
        c.expect("->")?;
        c.expect(open)?;
        let mut coords = Vec::new();
        if !c.eat(close) {
            loop {
                coords.push(c.int("an integer")?);
                if c.eat(close) {
                    break;
                }
                c.expect(",")?;
            }
        }
        out.push((name.to_string(), coords));
        if c.at_end() {
            return Ok(out);
        }
        c.expect(",")?;
    }
}

fn parse_hom(c: &mut Cursor) -> Result<Statement, ParseError> {
    if c.eat("mod-n") {
        let n = c.int("an integer n ≥ 2")?;
        return Ok(Statement::Hom(HomSpec::ModN(n)));
    }
    c.expect("target=")?;
    if c.eat("Sym(") {
        let degree = c.int("a degree")?;
        c.expect(")")?;
        let images = parse_images(c, "[", "]")?;
        return Ok(Statement::Hom(HomSpec::Permutation { degree, images }));
    }
    let (modulus, rank) = if c.eat("(Z/") {
        let n = c.int("a modulus")?;
        c.expect(")^")?;
        (n, c.int("an exponent")?)
    } else if c.eat("Z/") {
        (c.int("a modulus")?, 1)
    } else {
        return c.fail("`(Z/n)^k`, `Z/n` or `Sym(d)`");
    };
    let images = parse_images(c, "(", ")")?;
    Ok(Statement::Hom(HomSpec::Abelian { modulus, rank, images }))
}

fn parse_words(c: &mut Cursor) -> Result<Vec<Word>, ParseError> {
    c.expect("gens:")?;
    let mut out = Vec::new();
    loop {
        out.push(c.word(&[','])?);
        if c.at_end() {
            return Ok(out);
        }
        c.expect(",")?;
    }
}

fn parse_aifn(c: &mut Cursor) -> Result<Statement, ParseError> {
    c.expect("default=")?;
    let default = c.int("an integer")?;
    let radius = if c.eat("radius=") { Some(c.int("a radius")?) } else { None };
    c.expect("vals:")?;
    let mut values = Vec::new();
    while !c.at_end() {
        c.expect("(")?;
        let w = c.word(&[','])?;
        c.expect(",")?;
        let v = c.int("an integer")?;
        c.expect(")")?;
        values.push((w, v));
        if !c.at_end() {
            c.expect(",")?;
        }
    }
    Ok(Statement::Aifn(AiLiteral { default, radius, values }))
}

fn parse_line(line: usize, text: &str) -> Result<Option<Statement>, ParseError> {
    let text = text.split('#').next().unwrap_or("");
    let mut c = Cursor { line, text, pos: 0 };
    if c.at_end() {
        return Ok(None);
    }
    let start = c.pos;
    let keyword = c.ident();
    let stmt = match keyword {
        "surface" => parse_surface(&mut c)?,
        "hom" => parse_hom(&mut c)?,
        "group" => {
            let (start, spec) = c.until(&[]);
            match spec.parse::<GroupSpec>() {
                Ok(g) => Statement::Group(g),
                Err(e) => return c.fail_at(start, "a group such as Z^2, F2, Z/2*Z/3 or Z/6", format!("`{spec}` ({e})")),
            }
        }
        "subgroup" => Statement::Subgroup(parse_words(&mut c)?),
        "aifn" => parse_aifn(&mut c)?,
        _ => {
            return c.fail_at(
                start,
                "one of surface, hom, group, subgroup, aifn",
                format!("`{}`", text[start..].split_whitespace().next().unwrap_or("")),
            )
        }
    };
    if !c.at_end() {
        return c.fail("end of line");
    }
    Ok(Some(stmt))
}

/// Parses a whole document.
pub fn parse_dsl(input: &str) -> Result<Vec<Statement>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        if let Some(s) = parse_line(i + 1, line)? {
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_surface() {
        let s = parse_dsl("surface g=1 b=1 p=0").unwrap();
        assert_eq!(s, vec![Statement::Surface(SurfaceSpec::Finite(FiniteSurface::new(1, 1, 0)))]);
    }

    #[test]
    fn named_surface() {
        let s = parse_dsl("# comment\n\nsurface named=bct\n").unwrap();
        assert_eq!(s, vec![Statement::Surface(SurfaceSpec::Named(NamedSurface::BloomingCantorTree))]);
    }

    #[test]
    fn homs() {
        assert_eq!(parse_dsl("hom mod-n 3").unwrap(), vec![Statement::Hom(HomSpec::ModN(3))]);
        let s = parse_dsl("hom target=(Z/4)^2 images: a1->(1,0), b1->(0, 1)").unwrap();
        assert_eq!(
            s,
            vec![Statement::Hom(HomSpec::Abelian {
                modulus: 4,
                rank: 2,
                images: vec![("a1".into(), vec![1, 0]), ("b1".into(), vec![0, 1])],
            })]
        );
        let p = parse_dsl("hom target=Sym(3) images: c1->[2,1,3], c2->[1,3,2]").unwrap();
        assert!(matches!(&p[0], Statement::Hom(HomSpec::Permutation { degree: 3, images }) if images.len() == 2));
    }

    #[test]
    fn groups_words_and_functions() {
        let s = parse_dsl("group Z/2*Z/3\nsubgroup gens: a, b a b^-1, b^2\naifn default=0 vals: (a, 1), (e, 2)").unwrap();
        assert_eq!(s[0], Statement::Group(GroupSpec::FreeProduct { factors: vec![2, 3] }));
        assert_eq!(s[1], Statement::Subgroup(vec![Word::new([1]), Word::new([2, 1, -2]), Word::new([2, 2])]));
        assert_eq!(
            s[2],
            Statement::Aifn(AiLiteral { default: 0, radius: None, values: vec![(Word::new([1]), 1), (Word::empty(), 2)] })
        );
    }

    #[test]
    fn errors_carry_location() {
        let e = parse_dsl("surface g=1\nsurfac g=2").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        let e = parse_dsl("surface g=x").unwrap_err();
        assert_eq!((e.line, e.column), (1, 11));
        assert!(e.expected.contains("integer"));
        let e = parse_dsl("surface named=moon").unwrap_err();
        assert_eq!(e.column, 15);
        let e = parse_dsl("group Q8").unwrap_err();
        assert_eq!(e.column, 7);
        let e = parse_dsl("subgroup gens: a, q").unwrap_err();
        assert_eq!(e.column, 19);
        let e = parse_dsl("hom mod-n 3 4").unwrap_err();
        assert_eq!(e.expected, "end of line");
    }

    #[test]
    fn emit_parses_back() {
        let text = "surface g=2 b=0 p=1\nsurface named=slnm\nhom target=Z/5 images: a->(1)\ngroup Z^2\naifn default=-1 radius=4 vals: (a b, 3)\n";
        let s = parse_dsl(text).unwrap();
        assert_eq!(parse_dsl(&emit(&s)).unwrap(), s);
    }
}
