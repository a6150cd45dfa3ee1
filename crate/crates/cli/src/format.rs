//! Line-oriented text formats.
//!
//! Lines starting with `#` are manifest or comment lines and are skipped by
//! every parser, as are blank lines. Element codes are decimal.
//!
//! ```text
//! field <p> <m> [c_0 … c_m]          modulus only when m > 1
//! <rows> <cols>                      matrix block header, then one row per line
//!
//! TGRS-KEY v1                        secret key
//! field …
//! <n> <k> <l>
//! alpha: …
//! v: …
//! t: …
//! h: …
//! eta: …
//!
//! TGRS-PUB v1                        public key
//! field …
//! <n> <k> <w_err>
//! <matrix block>
//! ```
//!
//! Messages and ciphertexts are a single line of codes.

use std::fmt::Write as _;

use thiserror::Error;
use tgrs_core::grs::{GrsParams, TgrsKey};
use tgrs_core::{Elem, Field, Matrix, PublicKey};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input, expected {0}")]
    Eof(&'static str),
    #[error("invalid content: {0}")]
    Invalid(String),
}

/// Cursor over the meaningful lines of a text file.
pub struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Lines<'a> {
    pub fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Lines { inner: it.peekable() }
    }

    pub fn next_line(&mut self, what: &'static str) -> Result<(usize, &'a str), FormatError> {
        self.inner.next().ok_or(FormatError::Eof(what))
    }

    pub fn expect(&mut self, literal: &'static str) -> Result<(), FormatError> {
        let (line, text) = self.next_line(literal)?;
        if text != literal {
            return Err(FormatError::Syntax { line, msg: format!("expected `{literal}`, found `{text}`") });
        }
        Ok(())
    }

    /// Numbers on the next line, after an optional `label:` prefix.
    pub fn numbers<T: std::str::FromStr>(&mut self, what: &'static str, label: Option<&str>) -> Result<Vec<T>, FormatError> {
        let (line, mut text) = self.next_line(what)?;
        if let Some(label) = label {
            text = text
                .strip_prefix(label)
                .and_then(|r| r.strip_prefix(':'))
                .ok_or_else(|| FormatError::Syntax { line, msg: format!("expected `{label}:`") })?;
        }
        parse_numbers(text).map_err(|msg| FormatError::Syntax { line, msg })
    }

    pub fn is_empty(&mut self) -> bool {
        self.inner.peek().is_none()
    }
}

fn parse_numbers<T: std::str::FromStr>(text: &str) -> Result<Vec<T>, String> {
    text.split_whitespace()
        .map(|w| w.parse::<T>().map_err(|_| format!("`{w}` is not a number")))
        .collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn check_elements(f: &Field, xs: &[Elem], what: &str) -> Result<(), FormatError> {
    match xs.iter().find(|&&x| x >= f.q()) {
        Some(x) => Err(FormatError::Invalid(format!("{what}: {x} is not an element of F_{}", f.q()))),
        None => Ok(()),
    }
}

pub fn write_field(out: &mut String, f: &Field) {
    if f.m() == 1 {
        writeln!(out, "field {} 1", f.p()).unwrap();
    } else {
        writeln!(out, "field {} {} {}", f.p(), f.m(), join(f.modulus())).unwrap();
    }
}

pub fn read_field(lines: &mut Lines) -> Result<Field, FormatError> {
    let (line, text) = lines.next_line("field header")?;
    let rest = text
        .strip_prefix("field")
        .ok_or_else(|| FormatError::Syntax { line, msg: "expected `field p m ...`".into() })?;
    let nums: Vec<u32> = parse_numbers(rest).map_err(|msg| FormatError::Syntax { line, msg })?;
    let bad = |msg: String| FormatError::Syntax { line, msg };
    match nums.as_slice() {
        [p, 1] => Field::prime(*p).map_err(|e| bad(e.to_string())),
        [p, m, modulus @ ..] if !modulus.is_empty() => Field::new(*p, *m, Some(modulus)).map_err(|e| bad(e.to_string())),
        _ => Err(bad("expected `field p m` with the modulus for m > 1".into())),
    }
}

pub fn write_matrix(out: &mut String, m: &Matrix) {
    writeln!(out, "{} {}", m.rows(), m.cols()).unwrap();
    for r in m.row_iter() {
        writeln!(out, "{}", join(r)).unwrap();
    }
}

pub fn read_matrix(lines: &mut Lines, f: &Field) -> Result<Matrix, FormatError> {
    let dims: Vec<usize> = lines.numbers("matrix dimensions", None)?;
    let [rows, cols] = dims[..] else {
        return Err(FormatError::Invalid("matrix header must be `rows cols`".into()));
    };
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (line, text) = lines.next_line("matrix row")?;
        let row: Vec<Elem> = parse_numbers(text).map_err(|msg| FormatError::Syntax { line, msg })?;
        if row.len() != cols {
            return Err(FormatError::Syntax { line, msg: format!("expected {cols} entries, found {}", row.len()) });
        }
        check_elements(f, &row, "matrix entry")?;
        data.extend(row);
    }
    Matrix::new(f, rows, cols, data).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn write_key(out: &mut String, key: &TgrsKey) {
    out.push_str("TGRS-KEY v1\n");
    write_field(out, key.field());
    writeln!(out, "{} {} {}", key.n(), key.k(), key.l()).unwrap();
    writeln!(out, "alpha: {}", join(key.grs().alpha())).unwrap();
    writeln!(out, "v: {}", join(key.grs().v())).unwrap();
    writeln!(out, "t: {}", join(key.t())).unwrap();
    writeln!(out, "h: {}", join(key.h())).unwrap();
    writeln!(out, "eta: {}", join(key.eta())).unwrap();
}

pub fn read_key(lines: &mut Lines) -> Result<TgrsKey, FormatError> {
    lines.expect("TGRS-KEY v1")?;
    let f = read_field(lines)?;
    let dims: Vec<usize> = lines.numbers("`n k l`", None)?;
    let [n, k, l] = dims[..] else {
        return Err(FormatError::Invalid("key dimensions must be `n k l`".into()));
    };
    let alpha: Vec<Elem> = lines.numbers("alpha", Some("alpha"))?;
    let v: Vec<Elem> = lines.numbers("v", Some("v"))?;
    let t: Vec<usize> = lines.numbers("t", Some("t"))?;
    let h: Vec<usize> = lines.numbers("h", Some("h"))?;
    let eta: Vec<Elem> = lines.numbers("eta", Some("eta"))?;
    for (xs, what) in [(&alpha, "alpha"), (&v, "v"), (&eta, "eta")] {
        check_elements(&f, xs, what)?;
    }
    if alpha.len() != n || t.len() != l {
        return Err(FormatError::Invalid("key vectors disagree with `n k l`".into()));
    }
    let grs = GrsParams::new(&f, alpha, v, k).map_err(|e| FormatError::Invalid(e.to_string()))?;
    TgrsKey::new(grs, t, h, eta).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn write_public(out: &mut String, pk: &PublicKey) {
    out.push_str("TGRS-PUB v1\n");
    write_field(out, pk.field());
    writeln!(out, "{} {} {}", pk.n(), pk.k(), pk.w_err()).unwrap();
    write_matrix(out, pk.g_pub());
}

pub fn read_public(lines: &mut Lines) -> Result<PublicKey, FormatError> {
    lines.expect("TGRS-PUB v1")?;
    let f = read_field(lines)?;
    let dims: Vec<usize> = lines.numbers("`n k w_err`", None)?;
    let [n, k, w] = dims[..] else {
        return Err(FormatError::Invalid("public key dimensions must be `n k w_err`".into()));
    };
    let g = read_matrix(lines, &f)?;
    if g.rows() != k || g.cols() != n {
        return Err(FormatError::Invalid(format!("matrix is {}x{}, header says {k}x{n}", g.rows(), g.cols())));
    }
    let pk = PublicKey::new(g).map_err(|e| FormatError::Invalid(e.to_string()))?;
    if pk.w_err() != w {
        return Err(FormatError::Invalid(format!("w_err {w} differs from floor((n-k)/2) = {}", pk.w_err())));
    }
    Ok(pk)
}

pub fn write_vector(out: &mut String, v: &[Elem]) {
    writeln!(out, "{}", join(v)).unwrap();
}

pub fn read_vector(lines: &mut Lines, f: &Field, len: usize) -> Result<Vec<Elem>, FormatError> {
    let v: Vec<Elem> = lines.numbers("vector", None)?;
    if v.len() != len {
        return Err(FormatError::Invalid(format!("vector has length {}, expected {len}", v.len())));
    }
    check_elements(f, &v, "vector")?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tgrs_core::mceliece::{keygen, TwistParams};

    #[test]
    fn key_round_trips() {
        let f = Field::from_order(16).unwrap();
        let (sk, pk) = keygen(&f, 15, 6, &TwistParams { t: vec![2], h: vec![3], eta: None }, 9).unwrap();
        let mut s = String::from("# comment\n");
        write_key(&mut s, &sk);
        assert_eq!(read_key(&mut Lines::new(&s)).unwrap(), sk);
        let mut s = String::new();
        write_public(&mut s, &pk);
        assert_eq!(read_public(&mut Lines::new(&s)).unwrap(), pk);
    }

    #[test]
    fn field_headers() {
        let mut s = String::new();
        write_field(&mut s, &Field::prime(31).unwrap());
        assert_eq!(s, "field 31 1\n");
        let mut s = String::new();
        write_field(&mut s, &Field::from_order(8).unwrap());
        assert_eq!(s, "field 2 3 1 1 0 1\n");
        assert_eq!(read_field(&mut Lines::new(&s)).unwrap(), Field::from_order(8).unwrap());
        assert!(read_field(&mut Lines::new("field 2 3")).is_err());
    }

    #[test]
    fn malformed_inputs() {
        let f = Field::prime(7).unwrap();
        assert!(read_vector(&mut Lines::new("1 2 9"), &f, 3).is_err());
        assert!(read_vector(&mut Lines::new("1 2"), &f, 3).is_err());
        assert!(read_matrix(&mut Lines::new("2 2\n1 2\n3"), &f).is_err());
        assert!(matches!(read_key(&mut Lines::new("")), Err(FormatError::Eof(_))));
    }
}
