//! Line-oriented text form of a toupie presentation.
//!
//! ```text
//! field rational            # or: field prime P
//! branches 3
//! lengths 2 2 3
//! relation mono 3 0 2       # branch 3, positions 0..2
//! relation comb 1 -1 0      # one scalar per branch
//! ```

use std::fmt::{self, Write};

use thiserror::Error;
use toupie_core::field::{format_scalar, parse_scalar, FieldSpec};
use toupie_core::toupie::{PathRef, ToupiePresentation, ToupieRelation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Whitespace-separated token with its 1-based column.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

/// Splits off a `#` comment and tokenizes what is left.
pub(crate) fn tokens(line: &str) -> Vec<Token<'_>> {
    let body = line.split_once('#').map_or(line, |(b, _)| b);
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body
        .char_indices()
        .chain(std::iter::once((body.len(), ' ')))
    {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &body[s..i],
                    column: body[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

pub(crate) struct Cursor<'a> {
    pub line: usize,
    pub toks: Vec<Token<'a>>,
    pub pos: usize,
    pub end_column: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(line_no: usize, line: &'a str) -> Self {
        let body = line.split_once('#').map_or(line, |(b, _)| b);
        Cursor {
            line: line_no,
            toks: tokens(line),
            pos: 0,
            end_column: body.trim_end().chars().count() + 1,
        }
    }

    pub fn is_blank(&self) -> bool {
        self.toks.is_empty()
    }

    pub fn error_at(&self, column: usize, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    pub fn next(&mut self, what: &str) -> Result<Token<'a>, SyntaxError> {
        let t = self
            .toks
            .get(self.pos)
            .copied()
            .ok_or_else(|| self.error_at(self.end_column, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    pub fn usize(&mut self, what: &str) -> Result<(usize, Token<'a>), SyntaxError> {
        let t = self.next(what)?;
        let n = t
            .text
            .parse()
            .map_err(|_| self.error_at(t.column, format!("expected {what}, found `{}`", t.text)))?;
        Ok((n, t))
    }

    pub fn rest(&mut self) -> Vec<Token<'a>> {
        let r = self.toks[self.pos..].to_vec();
        self.pos = self.toks.len();
        r
    }

    pub fn finish(&self) -> Result<(), SyntaxError> {
        match self.toks.get(self.pos) {
            Some(t) => Err(self.error_at(t.column, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

/// Parses the grammar. Structural checks (branch counts, positions) are
/// reported here with positions; admissibility is left to `validate`.
pub fn parse(text: &str) -> Result<ToupiePresentation, SyntaxError> {
    let mut field = None;
    let mut branches: Option<(usize, usize)> = None;
    let mut lengths: Option<Vec<usize>> = None;
    let mut relations = Vec::new();
    let mut last_line = 0;
    for (k, line) in text.lines().enumerate() {
        let mut c = Cursor::new(k + 1, line);
        last_line = k + 1;
        if c.is_blank() {
            continue;
        }
        let kw = c.next("keyword")?;
        match kw.text {
            "field" => {
                if field.is_some() {
                    return Err(c.error_at(kw.column, "duplicate `field`"));
                }
                let f = c.next("`rational` or `prime`")?;
                field = Some(match f.text {
                    "rational" => FieldSpec::Rational,
                    "prime" => FieldSpec::Prime(c.usize("prime modulus")?.0 as u64),
                    other => return Err(c.error_at(f.column, format!("unknown field `{other}`"))),
                });
            }
            "branches" => {
                if branches.is_some() {
                    return Err(c.error_at(kw.column, "duplicate `branches`"));
                }
                branches = Some((c.usize("branch count")?.0, k + 1));
            }
            "lengths" => {
                if lengths.is_some() {
                    return Err(c.error_at(kw.column, "duplicate `lengths`"));
                }
                let (t, _) =
                    branches.ok_or_else(|| c.error_at(kw.column, "`lengths` before `branches`"))?;
                let mut ls = Vec::new();
                for tok in c.rest() {
                    let l = tok.text.parse().map_err(|_| {
                        c.error_at(
                            tok.column,
                            format!("expected a length, found `{}`", tok.text),
                        )
                    })?;
                    ls.push(l);
                }
                if ls.len() != t {
                    return Err(c.error_at(
                        kw.column,
                        format!("expected {t} lengths, found {}", ls.len()),
                    ));
                }
                lengths = Some(ls);
            }
            "relation" => {
                let ls = lengths
                    .as_ref()
                    .ok_or_else(|| c.error_at(kw.column, "`relation` before `lengths`"))?;
                let kind = c.next("`mono` or `comb`")?;
                match kind.text {
                    "mono" => {
                        let (i, it) = c.usize("branch index")?;
                        if i == 0 || i > ls.len() {
                            return Err(c.error_at(
                                it.column,
                                format!("branch {i} out of range 1..{}", ls.len()),
                            ));
                        }
                        let (a, _) = c.usize("start position")?;
                        let (b, bt) = c.usize("end position")?;
                        if a >= b || b > ls[i - 1] {
                            return Err(c.error_at(
                                bt.column,
                                format!("positions must satisfy 0 <= A < B <= {}", ls[i - 1]),
                            ));
                        }
                        relations.push(ToupieRelation::Monomial(PathRef::new(i - 1, a, b)));
                    }
                    "comb" => {
                        let mut cs = Vec::new();
                        for tok in c.rest() {
                            let s = parse_scalar(tok.text)
                                .map_err(|e| c.error_at(tok.column, e.to_string()))?;
                            cs.push(s);
                        }
                        if cs.len() != ls.len() {
                            return Err(c.error_at(
                                kind.column,
                                format!("expected {} coefficients, found {}", ls.len(), cs.len()),
                            ));
                        }
                        relations.push(ToupieRelation::Combination(cs));
                    }
                    other => {
                        return Err(
                            c.error_at(kind.column, format!("unknown relation kind `{other}`"))
                        )
                    }
                }
            }
            other => return Err(c.error_at(kw.column, format!("unknown keyword `{other}`"))),
        }
        c.finish()?;
    }
    let missing = |what: &str| SyntaxError {
        line: last_line.max(1),
        column: 1,
        message: format!("missing `{what}`"),
    };
    let lengths = lengths.ok_or_else(|| {
        missing(if branches.is_none() {
            "branches"
        } else {
            "lengths"
        })
    })?;
    Ok(ToupiePresentation::new(
        field.unwrap_or(FieldSpec::Rational),
        lengths,
        relations,
    ))
}

/// Canonical text: one keyword per line, canonical scalars, input relation
/// order.
pub fn serialize(p: &ToupiePresentation) -> String {
    let mut out = String::new();
    write_presentation(&mut out, p, "").expect("writing to a String");
    out
}

/// The grammar with every line behind `prefix`.
pub fn write_presentation(
    out: &mut impl Write,
    p: &ToupiePresentation,
    prefix: &str,
) -> fmt::Result {
    writeln!(out, "{prefix}field {}", p.field)?;
    writeln!(out, "{prefix}branches {}", p.t())?;
    let ls: Vec<String> = p.lengths().iter().map(usize::to_string).collect();
    writeln!(out, "{prefix}lengths {}", ls.join(" "))?;
    for r in &p.relations {
        match r {
            ToupieRelation::Monomial(q) => writeln!(
                out,
                "{prefix}relation mono {} {} {}",
                q.branch + 1,
                q.start,
                q.end
            )?,
            ToupieRelation::Combination(c) => {
                let cs: Vec<String> = c.iter().map(format_scalar).collect();
                writeln!(out, "{prefix}relation comb {}", cs.join(" "))?
            }
        }
    }
    Ok(())
}
