//! The line-oriented ideal file format:
//!
//! ```text
//! # comment
//! field Q            | field Fp <p> | field Fps <p> <param>
//! vars x y
//! gens
//! x^2 + y^3
//! ```
//!
//! Generators follow the `gens` line, one per line, up to the end of file.

use std::fmt;
use std::path::Path;

use jetlct_core::algebra::{parse_polynomial, FieldSpec, Polynomial, Ring, VariableContext};
use jetlct_core::jets::AffineIdeal;
use thiserror::Error;

/// The name reserved for the series variable.
pub const SERIES_VARIABLE: &str = "t";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct FileError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> FileError {
    FileError { line, column, message: message.into() }
}

#[derive(Debug, Clone)]
pub struct IdealFile {
    pub ring: Ring,
    /// Generators as parsed, including ones that are zero over the field.
    pub generators: Vec<Polynomial>,
    /// Source text of each generator.
    pub sources: Vec<String>,
}

impl IdealFile {
    pub fn field(&self) -> &FieldSpec {
        self.ring.field()
    }

    /// The ideal; the zero ideal when every generator vanishes.
    pub fn ideal(&self) -> AffineIdeal {
        if self.generators.iter().all(Polynomial::is_zero) {
            AffineIdeal::whole_space(&self.ring)
        } else {
            AffineIdeal::new(&self.ring, self.generators.clone()).expect("generators share the file's ring")
        }
    }

    pub fn read(path: &Path) -> Result<Self, ReadError> {
        let text = std::fs::read_to_string(path).map_err(|e| ReadError::Io(path.display().to_string(), e.to_string()))?;
        Self::parse(&text).map_err(|e| ReadError::Syntax(path.display().to_string(), e))
    }

    pub fn parse(text: &str) -> Result<Self, FileError> {
        let mut field: Option<FieldSpec> = None;
        let mut ring: Option<Ring> = None;
        let mut in_gens = false;
        let mut generators = Vec::new();
        let mut sources = Vec::new();

        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let indent = content.len() - content.trim_start().len();
            let body = content.trim();
            if in_gens {
                let ring = ring.as_ref().expect("vars precede gens");
                let p = parse_polynomial(body, ring).map_err(|e| {
                    let column = indent + body.chars().take(e.column.saturating_sub(1)).map(char::len_utf8).sum::<usize>() + 1;
                    err(line_no, column, e.message)
                })?;
                generators.push(p);
                sources.push(body.to_string());
                continue;
            }
            let mut words = tokens(content);
            let (col, keyword) = words.next().expect("nonempty line");
            match keyword {
                "field" => {
                    if field.is_some() {
                        return Err(err(line_no, col, "duplicate field line"));
                    }
                    field = Some(parse_field(line_no, col, &mut words)?);
                }
                "vars" => {
                    let Some(f) = &field else {
                        return Err(err(line_no, col, "`vars` must follow the `field` line"));
                    };
                    if ring.is_some() {
                        return Err(err(line_no, col, "duplicate vars line"));
                    }
                    let names: Vec<(usize, &str)> = words.collect();
                    if names.is_empty() {
                        return Err(err(line_no, col, "`vars` needs at least one variable name"));
                    }
                    for (i, &(c, name)) in names.iter().enumerate() {
                        if name == SERIES_VARIABLE {
                            return Err(err(line_no, c, "`t` is reserved for the series variable"));
                        }
                        if names[..i].iter().any(|(_, other)| *other == name) {
                            return Err(err(line_no, c, format!("duplicate variable `{name}`")));
                        }
                        if !valid_name(name) {
                            return Err(err(line_no, c, format!("invalid variable name `{name}`")));
                        }
                    }
                    let r = VariableContext::new(f.clone(), names.iter().map(|(_, n)| *n))
                        .map_err(|e| err(line_no, col, e.to_string()))?;
                    ring = Some(r);
                }
                "gens" => {
                    if ring.is_none() {
                        return Err(err(line_no, col, "`gens` must follow the `vars` line"));
                    }
                    if let Some((c, _)) = words.next() {
                        return Err(err(line_no, c, "generators go on the lines after `gens`"));
                    }
                    in_gens = true;
                }
                other => {
                    return Err(err(line_no, col, format!("expected `field`, `vars` or `gens`, found `{other}`")));
                }
            }
        }
        let last = text.lines().count().max(1);
        let Some(ring) = ring else {
            return Err(err(last, 1, if field.is_none() { "missing `field` line" } else { "missing `vars` line" }));
        };
        if !in_gens {
            return Err(err(last, 1, "missing `gens` block"));
        }
        if generators.is_empty() {
            return Err(err(last, 1, "the `gens` block is empty"));
        }
        Ok(Self { ring, generators, sources })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReadError {
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("{0}: {1}")]
    Syntax(String, FileError),
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Whitespace or comma separated words with their 1-based byte columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices() {
        let sep = c.is_whitespace() || c == ',';
        match (sep, start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out.into_iter()
}

fn parse_field<'a>(
    line: usize,
    col: usize,
    words: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<FieldSpec, FileError> {
    let Some((kc, kind)) = words.next() else {
        return Err(err(line, col, "`field` needs one of Q, Fp <p>, Fps <p> <param>"));
    };
    let prime = |words: &mut dyn Iterator<Item = (usize, &'a str)>| -> Result<(usize, u64), FileError> {
        let (c, w) = words.next().ok_or_else(|| err(line, kc, format!("`{kind}` needs a prime")))?;
        let p = w.parse::<u64>().map_err(|_| err(line, c, format!("`{w}` is not a prime number")))?;
        Ok((c, p))
    };
    let spec = match kind {
        "Q" => FieldSpec::rationals(),
        "Fp" => {
            let (c, p) = prime(words)?;
            FieldSpec::prime(p).map_err(|e| err(line, c, e.to_string()))?
        }
        "Fps" => {
            let (c, p) = prime(words)?;
            let (pc, param) = words.next().ok_or_else(|| err(line, c, "`Fps` needs a parameter name"))?;
            if param == SERIES_VARIABLE || !valid_name(param) {
                return Err(err(line, pc, format!("invalid parameter name `{param}`")));
            }
            FieldSpec::rational_functions(p, param).map_err(|e| err(line, c, e.to_string()))?
        }
        other => return Err(err(line, kc, format!("unknown field `{other}`; use Q, Fp <p> or Fps <p> <param>"))),
    };
    if let Some((c, extra)) = words.next() {
        return Err(err(line, c, format!("unexpected `{extra}` after the field")));
    }
    Ok(spec)
}

/// Renders the file back in canonical form.
impl fmt::Display for IdealFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.field();
        match (field.param(), field.characteristic()) {
            (Some(s), p) => writeln!(f, "field Fps {p} {s}")?,
            (None, 0) => writeln!(f, "field Q")?,
            (None, p) => writeln!(f, "field Fp {p}")?,
        }
        writeln!(f, "vars {}", self.ring.names().join(" "))?;
        writeln!(f, "gens")?;
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_fields() {
        let f = IdealFile::parse("field Q\nvars x y\ngens\nx^2 + y^3\n").unwrap();
        assert_eq!(f.generators[0].to_string(), "y^3 + x^2");
        let f = IdealFile::parse("# cusp\nfield Fp 3\nvars x, y\ngens\nx^2+y^3 # trailing\n").unwrap();
        assert_eq!(f.field().characteristic(), 3);
        let f = IdealFile::parse("field Fps 2 s\nvars x\ngens\nx^2 - s\n").unwrap();
        assert_eq!(f.field().param(), Some("s"));
    }

    #[test]
    fn vanishing_generators_are_kept() {
        let f = IdealFile::parse("field Fp 2\nvars x y\ngens\n2*x\nx*y\n").unwrap();
        assert!(f.generators[0].is_zero());
        assert_eq!(f.ideal().nonzero_generators().count(), 1);
        let f = IdealFile::parse("field Fp 2\nvars x\ngens\n2*x\n").unwrap();
        assert!(f.ideal().is_whole_space());
    }

    #[test]
    fn errors_carry_positions() {
        let e = IdealFile::parse("field Q\nvars x y\ngens\nx + * y\n").unwrap_err();
        assert_eq!((e.line, e.column), (4, 5));
        let e = IdealFile::parse("field Q\nvars x x\ngens\nx\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 8));
        let e = IdealFile::parse("field Q\nvars x t\ngens\nx\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 8));
        let e = IdealFile::parse("field Fp 4\nvars x\ngens\nx\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 10));
        let e = IdealFile::parse("field Fps 2 s\nvars s\ngens\ns\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = IdealFile::parse("field Q\nvars x\ngens\n").unwrap_err();
        assert!(e.message.contains("empty"));
        let e = IdealFile::parse("vars x\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        let e = IdealFile::parse("field Q\nvars x\n").unwrap_err();
        assert!(e.message.contains("gens"));
        let e = IdealFile::parse("field Q\nvars x\ngens\n  x + z\n").unwrap_err();
        assert_eq!((e.line, e.column), (4, 7));
    }

    #[test]
    fn display_round_trips() {
        let src = "field Fps 3 s\nvars x y\ngens\n(s+1)/s*x^2 - y\n";
        let f = IdealFile::parse(src).unwrap();
        let again = IdealFile::parse(&f.to_string()).unwrap();
        assert_eq!(again.generators, f.generators);
    }
}
