//! Text forms of algebra elements: `0.3+0.2i`, `1 - 2*j`, `0.5e12`, `[1,0,0,0]`.

use std::sync::Arc;

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse { column, message: message.into() }
}

/// Parses a sum of terms `[sign] [number] [*] [label]`. Basis labels are
/// those of the algebra (`i`, `j`, `k` or `e1`, `e12`, ...). In Clifford
/// algebras a lowercase `e` always starts a label, so exponents use `E`.
pub fn parse_element(algebra: &Arc<AlgebraSpec>, text: &str) -> Result<Element> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    if trimmed.starts_with('[') {
        return parse_vector(algebra, trimmed, offset);
    }
    let clifford = algebra.labels().iter().any(|l| l.starts_with('e'));
    let bytes = trimmed.as_bytes();
    let mut coeffs = vec![0.0; algebra.dim()];
    let mut pos = 0;
    let mut first = true;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    if bytes.is_empty() {
        return Err(err(offset + 1, "empty element"));
    }
    while pos < bytes.len() {
        skip_ws(&mut pos);
        let term_start = pos;
        let mut sign = 1.0;
        if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            if bytes[pos] == b'-' {
                sign = -1.0;
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(err(offset + pos + 1, "expected '+' or '-' between terms"));
        }
        first = false;
        // Number.
        let num_start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'.') {
            pos += 1;
        }
        if pos > num_start && pos < bytes.len() {
            let c = bytes[pos];
            let is_exp = c == b'E' || (c == b'e' && !clifford);
            if is_exp {
                let mut q = pos + 1;
                if q < bytes.len() && (bytes[q] == b'+' || bytes[q] == b'-') {
                    q += 1;
                }
                if q < bytes.len() && bytes[q].is_ascii_digit() {
                    while q < bytes.len() && bytes[q].is_ascii_digit() {
                        q += 1;
                    }
                    pos = q;
                }
            }
        }
        let value = if pos > num_start {
            let s = &trimmed[num_start..pos];
            s.parse::<f64>()
                .map_err(|_| err(offset + num_start + 1, format!("bad number '{s}'")))?
        } else {
            1.0
        };
        skip_ws(&mut pos);
        let mut star = false;
        if pos < bytes.len() && bytes[pos] == b'*' {
            if num_start == pos {
                return Err(err(offset + pos + 1, "'*' needs a coefficient"));
            }
            star = true;
            pos += 1;
            skip_ws(&mut pos);
        }
        let label_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_alphanumeric() {
            pos += 1;
        }
        let label = &trimmed[label_start..pos];
        if label.is_empty() {
            if star || trimmed[num_start..label_start].trim().is_empty() {
                return Err(err(offset + label_start + 1, "expected a number or basis label"));
            }
            coeffs[0] += sign * value;
        } else {
            let idx = algebra.label_index(label).ok_or_else(|| {
                err(
                    offset + label_start + 1,
                    format!("unknown basis label '{label}' (expected one of {:?})", &algebra.labels()[1..]),
                )
            })?;
            coeffs[idx] += sign * value;
        }
        skip_ws(&mut pos);
        if pos == term_start {
            return Err(err(offset + pos + 1, "unexpected character"));
        }
    }
    Element::new(algebra, coeffs)
}

fn parse_vector(algebra: &Arc<AlgebraSpec>, text: &str, offset: usize) -> Result<Element> {
    if !text.ends_with(']') {
        return Err(err(offset + text.len(), "missing ']'"));
    }
    let inner = &text[1..text.len() - 1];
    let mut coeffs = Vec::new();
    let mut col = offset + 2;
    for piece in inner.split(|c: char| c == ',' || c.is_whitespace()) {
        if !piece.is_empty() {
            let v = piece
                .parse::<f64>()
                .map_err(|_| err(col, format!("bad coefficient '{piece}'")))?;
            coeffs.push(v);
        }
        col += piece.len() + 1;
    }
    if coeffs.len() != algebra.dim() {
        return Err(err(
            offset + 1,
            format!("expected {} coefficients, got {}", algebra.dim(), coeffs.len()),
        ));
    }
    Element::new(algebra, coeffs)
}

/// Splits on `sep` outside square brackets.
pub fn split_top_level(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

/// Formats coefficients as `[c0 c1 ...]` with 17 significant digits.
pub fn format_coeffs(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.16e}")).collect();
    format!("[{}]", parts.join(" "))
}
