//! Text formats read by the CLI.
//!
//! An ideal file holds one generator per line, written either as a monomial
//! (`x1^2*x3`, `x_3`) or as a bracketed exponent vector (`[2,0,1]`). Lines
//! starting with `#` are comments and an optional `vars: n` header fixes the
//! number of variables.
//!
//! A complex file holds one face per line as 1-indexed vertex numbers
//! separated by spaces or commas, optionally in braces. The complex is the
//! downward closure of the listed faces. An optional `vertices: n` header
//! fixes the vertex count.

use std::fmt;

use dgares_core::comb::{FVector, SimplicialComplex};
use dgares_core::monomial::{MonomialIdeal, Multidegree};
use thiserror::Error;

/// A malformed input, located by 1-indexed line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, column, message: message.into() })
}

/// A cursor over one line that remembers its column.
struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Self { text, pos: 0, line }
    }

    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        err(self.line, self.column(), message)
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => self.fail(format!("expected '{want}', found '{c}'")),
            None => self.fail(format!("expected '{want}', found end of line")),
        }
    }

    fn number(&mut self, what: &str) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let column = self.column();
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        let digits = &self.text[start..self.pos];
        if digits.is_empty() {
            return match self.peek() {
                Some(c) => self.fail(format!("expected {what}, found '{c}'")),
                None => self.fail(format!("expected {what}, found end of line")),
            };
        }
        digits.parse().or_else(|_| err(self.line, column, format!("{what} is too large")))
    }
}

/// Strips a trailing `#` comment.
fn content(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

/// Parses `key: n` if the line is such a header.
fn header(line: &str, key: &str, lineno: usize) -> Result<Option<usize>, ParseError> {
    let trimmed = line.trim_start();
    let Some(rest) = trimmed.strip_prefix(key) else { return Ok(None) };
    let Some(rest) = rest.trim_start().strip_prefix(':') else { return Ok(None) };
    let offset = line.len() - rest.len();
    let mut cur = Cursor::new(line, lineno);
    cur.pos = offset;
    let n = cur.number("a count")?;
    if !cur.at_end() {
        return cur.fail("unexpected text after the count");
    }
    Ok(Some(n as usize))
}

enum Generator {
    /// `(1-indexed variable, exponent, column)` factors.
    Monomial(Vec<(usize, i64, usize)>),
    Vector(Vec<i64>),
}

fn parse_generator(cur: &mut Cursor) -> Result<Generator, ParseError> {
    cur.skip_ws();
    if cur.peek() == Some('[') {
        cur.bump();
        let mut v = Vec::new();
        cur.skip_ws();
        if cur.peek() == Some(']') {
            return cur.fail("empty exponent vector");
        }
        loop {
            v.push(cur.number("an exponent")? as i64);
            cur.skip_ws();
            match cur.bump() {
                Some(',') => continue,
                Some(']') => break,
                Some(c) => return err(cur.line, cur.column() - 1, format!("expected ',' or ']', found '{c}'")),
                None => return cur.fail("unterminated exponent vector"),
            }
        }
        if !cur.at_end() {
            return cur.fail("unexpected text after the exponent vector");
        }
        return Ok(Generator::Vector(v));
    }
    let mut factors = Vec::new();
    loop {
        cur.skip_ws();
        let column = cur.column();
        match cur.peek() {
            Some('x') => {
                cur.bump();
            }
            Some(c) => return cur.fail(format!("expected a variable like x1, found '{c}'")),
            None => return cur.fail("expected a variable like x1, found end of line"),
        }
        if cur.peek() == Some('_') {
            cur.bump();
        }
        if !cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            return cur.fail("expected a variable index after 'x'");
        }
        let var = cur.number("a variable index")? as usize;
        if var == 0 {
            return err(cur.line, column, "variables are numbered from 1");
        }
        cur.skip_ws();
        let mut exp = 1;
        if cur.peek() == Some('^') {
            cur.bump();
            exp = cur.number("an exponent")? as i64;
        }
        factors.push((var, exp, column));
        if cur.at_end() {
            break;
        }
        cur.expect('*')?;
    }
    Ok(Generator::Monomial(factors))
}

/// Parses an ideal file into a validated ideal.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal, ParseError> {
    let mut vars: Option<(usize, usize)> = None;
    let mut gens: Vec<(usize, Generator)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let line = content(raw);
        if line.trim().is_empty() {
            continue;
        }
        if let Some(n) = header(line, "vars", lineno)? {
            if vars.is_some() {
                return err(lineno, 1, "duplicate 'vars' header");
            }
            if !gens.is_empty() {
                return err(lineno, 1, "the 'vars' header must precede the generators");
            }
            if n == 0 {
                return err(lineno, 1, "need at least one variable");
            }
            vars = Some((n, lineno));
            continue;
        }
        let mut cur = Cursor::new(line, lineno);
        gens.push((lineno, parse_generator(&mut cur)?));
    }
    let Some((first, _)) = gens.first() else {
        return err(text.lines().count().max(1), 1, "no generators");
    };
    let first = *first;
    let n = match vars {
        Some((n, _)) => n,
        None => {
            let vector_len = gens.iter().find_map(|(_, g)| match g {
                Generator::Vector(v) => Some(v.len()),
                Generator::Monomial(_) => None,
            });
            let max_var = gens
                .iter()
                .flat_map(|(_, g)| match g {
                    Generator::Monomial(f) => f.iter().map(|&(v, _, _)| v).collect(),
                    Generator::Vector(_) => Vec::new(),
                })
                .max()
                .unwrap_or(0);
            vector_len.unwrap_or(0).max(max_var)
        }
    };
    let mut degrees = Vec::with_capacity(gens.len());
    for (lineno, g) in &gens {
        let d = match g {
            Generator::Vector(v) => {
                if v.len() != n {
                    return err(*lineno, 1, format!("exponent vector has length {}, expected {n}", v.len()));
                }
                v.clone()
            }
            Generator::Monomial(factors) => {
                let mut v = vec![0i64; n];
                for &(var, exp, column) in factors {
                    if var > n {
                        return err(*lineno, column, format!("variable x{var} exceeds the {n} declared variables"));
                    }
                    v[var - 1] += exp;
                }
                v
            }
        };
        if d.iter().all(|&e| e == 0) {
            return err(*lineno, 1, "the constant monomial 1 generates the unit ideal");
        }
        degrees.push(Multidegree::new(d));
    }
    MonomialIdeal::new(n, degrees).or_else(|e| err(first, 1, e.to_string()))
}

/// Parses a complex file: the downward closure of the listed faces.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex, ParseError> {
    let mut declared: Option<usize> = None;
    let mut faces: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let line = content(raw);
        if line.trim().is_empty() {
            continue;
        }
        if let Some(n) = header(line, "vertices", lineno)? {
            if declared.is_some() || !faces.is_empty() {
                return err(lineno, 1, "the 'vertices' header must come first and only once");
            }
            declared = Some(n);
            continue;
        }
        let mut cur = Cursor::new(line, lineno);
        cur.skip_ws();
        let braced = cur.peek() == Some('{');
        if braced {
            cur.bump();
        }
        let mut face = Vec::new();
        loop {
            cur.skip_ws();
            match cur.peek() {
                None if braced => return cur.fail("unterminated '{'"),
                None => break,
                Some('}') if braced => {
                    cur.bump();
                    if !cur.at_end() {
                        return cur.fail("unexpected text after '}'");
                    }
                    break;
                }
                Some(',') if !face.is_empty() => {
                    cur.bump();
                }
                Some(c) if c.is_ascii_digit() => {
                    let column = cur.column();
                    let v = cur.number("a vertex")? as usize;
                    if v == 0 {
                        return err(lineno, column, "vertices are numbered from 1");
                    }
                    face.push((v, column));
                }
                Some(c) => return cur.fail(format!("expected a vertex number, found '{c}'")),
            }
        }
        faces.push((lineno, face));
    }
    if faces.is_empty() {
        return err(text.lines().count().max(1), 1, "no faces");
    }
    let max = faces.iter().flat_map(|(_, f)| f.iter().map(|&(v, _)| v)).max().unwrap_or(0);
    let n = declared.unwrap_or(max);
    let mut facets = Vec::new();
    for (lineno, face) in &faces {
        if let Some(&(v, column)) = face.iter().find(|&&(v, _)| v > n) {
            return err(*lineno, column, format!("vertex {v} exceeds the {n} declared vertices"));
        }
        facets.push(face.iter().map(|&(v, _)| v - 1).collect::<Vec<_>>());
    }
    SimplicialComplex::from_facets(n, &facets).or_else(|e| err(faces[0].0, 1, e.to_string()))
}

/// Parses `1,6,9,6,2` (spaces allowed) into an f-vector.
pub fn parse_fvector(text: &str) -> Result<FVector, ParseError> {
    let mut cur = Cursor::new(text, 1);
    let mut v = Vec::new();
    loop {
        v.push(cur.number("a face count")?);
        if cur.at_end() {
            break;
        }
        cur.expect(',')?;
    }
    Ok(FVector(v))
}

/// Parses a 1-indexed generator order such as `3,1,2` into 0-indexed positions.
pub fn parse_order(text: &str, len: usize) -> Result<Vec<usize>, ParseError> {
    let mut cur = Cursor::new(text, 1);
    let mut order = Vec::new();
    loop {
        cur.skip_ws();
        let column = cur.column();
        let i = cur.number("a generator index")? as usize;
        if i == 0 || i > len {
            return err(1, column, format!("generator index {i} is outside 1..={len}"));
        }
        if order.contains(&(i - 1)) {
            return err(1, column, format!("generator index {i} repeats"));
        }
        order.push(i - 1);
        if cur.at_end() {
            break;
        }
        cur.expect(',')?;
    }
    if order.len() != len {
        return err(1, 1, format!("the order lists {} of {len} generators", order.len()));
    }
    Ok(order)
}

/// Renders an ideal in the file format read by [`parse_ideal`].
pub fn render_ideal(ideal: &MonomialIdeal) -> String {
    let mut out = format!("vars: {}\n", ideal.num_vars());
    for g in ideal.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}


#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn rendered_ideals_parse_back(gens in prop::collection::vec(prop::collection::vec(0i64..4, 4), 1..6)) {
            let mons: Vec<Multidegree> = gens.into_iter().filter(|g| g.iter().any(|&e| e > 0)).map(Multidegree::new).collect();
            prop_assume!(!mons.is_empty());
            let ideal = MonomialIdeal::minimal_generators(&mons, 4).unwrap();
            prop_assert_eq!(parse_ideal(&render_ideal(&ideal)).unwrap(), ideal);
        }
    }
}
