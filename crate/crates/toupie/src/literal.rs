//! Text form of a representation over a fixed bound quiver.
//!
//! ```text
//! dims 2 2 2 2              # one entry per vertex, in quiver order
//! map a1.1 2x2 1 0 0 0      # target-by-source matrix, row-major
//! ```
//!
//! Arrows without a `map` line carry the zero map.

use std::fmt::Write;

use toupie_core::field::{format_scalar, parse_scalar, Rationals};
use toupie_core::matrix::QMatrix;
use toupie_core::quiver::GeneralBoundQuiver;
use toupie_core::rep::Representation;

use crate::grammar::{Cursor, SyntaxError};

pub fn parse_module(q: &GeneralBoundQuiver, text: &str) -> Result<Representation, SyntaxError> {
    let mut dims: Option<Vec<usize>> = None;
    let mut maps: Vec<Option<QMatrix>> = vec![None; q.arrows.len()];
    let mut last_line = 0;
    for (k, line) in text.lines().enumerate() {
        let mut c = Cursor::new(k + 1, line);
        last_line = k + 1;
        if c.is_blank() {
            continue;
        }
        let kw = c.next("keyword")?;
        match kw.text {
            "dims" => {
                if dims.is_some() {
                    return Err(c.error_at(kw.column, "duplicate `dims`"));
                }
                let mut ds = Vec::new();
                for tok in c.rest() {
                    let d = tok.text.parse().map_err(|_| {
                        c.error_at(
                            tok.column,
                            format!("expected a dimension, found `{}`", tok.text),
                        )
                    })?;
                    ds.push(d);
                }
                if ds.len() != q.vertex_count() {
                    return Err(c.error_at(
                        kw.column,
                        format!(
                            "expected {} dimensions, found {}",
                            q.vertex_count(),
                            ds.len()
                        ),
                    ));
                }
                dims = Some(ds);
            }
            "map" => {
                let ds = dims
                    .as_ref()
                    .ok_or_else(|| c.error_at(kw.column, "`map` before `dims`"))?;
                let a = c.next("arrow label")?;
                let idx = q
                    .arrows
                    .iter()
                    .position(|x| x.label == a.text)
                    .ok_or_else(|| c.error_at(a.column, format!("unknown arrow `{}`", a.text)))?;
                if maps[idx].is_some() {
                    return Err(c.error_at(a.column, format!("duplicate map for `{}`", a.text)));
                }
                let shape = c.next("matrix shape RxC")?;
                let want = (ds[q.arrows[idx].target], ds[q.arrows[idx].source]);
                let parsed = shape
                    .text
                    .split_once('x')
                    .and_then(|(r, s)| Some((r.parse::<usize>().ok()?, s.parse::<usize>().ok()?)))
                    .ok_or_else(|| {
                        c.error_at(
                            shape.column,
                            format!("expected RxC, found `{}`", shape.text),
                        )
                    })?;
                if parsed != want {
                    return Err(c.error_at(
                        shape.column,
                        format!("arrow `{}` needs a {}x{} matrix", a.text, want.0, want.1),
                    ));
                }
                let entries = c.rest();
                if entries.len() != want.0 * want.1 {
                    return Err(c.error_at(
                        shape.column,
                        format!(
                            "expected {} entries, found {}",
                            want.0 * want.1,
                            entries.len()
                        ),
                    ));
                }
                let mut vals = Vec::with_capacity(entries.len());
                for tok in entries {
                    vals.push(
                        parse_scalar(tok.text)
                            .map_err(|e| c.error_at(tok.column, e.to_string()))?,
                    );
                }
                maps[idx] = Some(QMatrix::from_fn(Rationals, want.0, want.1, |r, s| {
                    vals[r * want.1 + s].clone()
                }));
            }
            other => return Err(c.error_at(kw.column, format!("unknown keyword `{other}`"))),
        }
        c.finish()?;
    }
    let dims = dims.ok_or(SyntaxError {
        line: last_line.max(1),
        column: 1,
        message: "missing `dims`".into(),
    })?;
    let maps = maps
        .into_iter()
        .zip(&q.arrows)
        .map(|(m, a)| {
            m.unwrap_or_else(|| QMatrix::zeros(Rationals, dims[a.target], dims[a.source]))
        })
        .collect();
    Ok(Representation { dims, maps })
}

/// Canonical text: a comment naming the vertices, `dims`, then one `map`
/// line per arrow whose matrix is nonempty.
pub fn format_module(q: &GeneralBoundQuiver, m: &Representation) -> String {
    let mut out = String::new();
    writeln!(out, "# vertices {}", q.vertices.join(" ")).unwrap();
    let ds: Vec<String> = m.dims.iter().map(usize::to_string).collect();
    writeln!(out, "dims {}", ds.join(" ")).unwrap();
    for (a, mat) in q.arrows.iter().zip(&m.maps) {
        if mat.rows() == 0 || mat.cols() == 0 {
            continue;
        }
        let mut entries = Vec::with_capacity(mat.rows() * mat.cols());
        for r in 0..mat.rows() {
            for s in 0..mat.cols() {
                entries.push(format_scalar(mat.get(r, s)));
            }
        }
        writeln!(
            out,
            "map {} {}x{} {}",
            a.label,
            mat.rows(),
            mat.cols(),
            entries.join(" ")
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use toupie_core::field::FieldSpec;
    use toupie_core::toupie::ToupiePresentation;

    #[test]
    fn round_trip_and_errors() {
        let q = ToupiePresentation::new(FieldSpec::Rational, vec![2, 1], vec![]).to_general();
        let text = "dims 1 1 2\nmap a1.2 2x1 1/2 -1\n";
        let m = parse_module(&q, text).unwrap();
        assert_eq!(m.dims, vec![1, 1, 2]);
        assert!(m.maps[0].is_zero());
        let again = parse_module(&q, &format_module(&q, &m)).unwrap();
        assert_eq!(again, m);
        let e = parse_module(&q, "dims 1 1 2\nmap a1.2 1x1 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 10));
        let e = parse_module(&q, "dims 1 1 2\nmap b 2x1 1 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        assert!(parse_module(&q, "map a1.1 1x1 1\n").is_err());
    }
}
