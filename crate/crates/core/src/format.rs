//! Certificate serialization: compact JSON and a line-oriented text form.
//!
//! Text form:
//!
//! ```text
//! hw-certificate
//! n 8
//! k 1
//! t 2
//! r 1
//! s 2
//! factor hamilton: cycle 0 2 4 6 1 3 5 7
//! factor c4k: cycle 0 2 1 3; cycle 4 6 5 7
//! one_factor: 0 1; 2 3; 4 5; 6 7
//! ```
//!
//! `k` and `t` may be `none`, as may `one_factor`. Blank lines and lines
//! starting with `#` are ignored.

use std::fmt::Write as _;

use crate::model::{Certificate, FactorKind, TwoFactor};

const MAGIC: &str = "hw-certificate";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {message}")]
    Text { line: usize, message: String },
}

fn text_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Text {
        line,
        message: message.into(),
    }
}

pub fn to_json(cert: &Certificate) -> String {
    serde_json::to_string(cert).expect("certificate serialization cannot fail")
}

pub fn from_json(input: &str) -> Result<Certificate, FormatError> {
    Ok(serde_json::from_str(input)?)
}

pub fn to_text(cert: &Certificate) -> String {
    let opt = |v: Option<usize>| v.map_or_else(|| "none".to_string(), |x| x.to_string());
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(out, "n {}", cert.n);
    let _ = writeln!(out, "k {}", opt(cert.k));
    let _ = writeln!(out, "t {}", opt(cert.t));
    let _ = writeln!(out, "r {}", cert.r);
    let _ = writeln!(out, "s {}", cert.s);
    for factor in &cert.factors {
        let cycles: Vec<String> = factor
            .cycles
            .iter()
            .map(|c| {
                let vs: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("cycle {}", vs.join(" ")).trim_end().to_string()
            })
            .collect();
        let _ = writeln!(out, "factor {}: {}", factor.kind, cycles.join("; "));
    }
    match &cert.one_factor {
        None => {
            let _ = writeln!(out, "one_factor: none");
        }
        Some(pairs) => {
            let ps: Vec<String> = pairs.iter().map(|[a, b]| format!("{a} {b}")).collect();
            let _ = writeln!(out, "one_factor: {}", ps.join("; "));
        }
    }
    out
}

fn number(line: usize, token: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .map_err(|_| text_err(line, format!("expected a non-negative integer, found `{token}`")))
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, FormatError> {
    text.split_whitespace().map(|tok| number(line, tok)).collect()
}

/// Parses the text form. Structural problems are errors; semantic ones
/// (wrong counts, bad cycles) are left for the verifier.
pub fn from_text(input: &str) -> Result<Certificate, FormatError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    match lines.next() {
        Some((_, MAGIC)) => {}
        Some((no, other)) => return Err(text_err(no, format!("expected `{MAGIC}`, found `{other}`"))),
        None => return Err(text_err(0, "empty input")),
    }

    let mut header: [Option<Option<usize>>; 5] = [None; 5];
    const KEYS: [&str; 5] = ["n", "k", "t", "r", "s"];
    let mut factors = Vec::new();
    let mut one_factor: Option<Option<Vec<[usize; 2]>>> = None;

    for (no, line) in lines {
        if let Some(rest) = line.strip_prefix("factor ") {
            let (kind, body) = rest
                .split_once(':')
                .ok_or_else(|| text_err(no, "factor line needs `kind: cycles`"))?;
            let kind = match kind.trim() {
                "hamilton" => FactorKind::Hamilton,
                "c4k" => FactorKind::C4k,
                other => return Err(text_err(no, format!("unknown factor kind `{other}`"))),
            };
            let mut cycles = Vec::new();
            for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                let vs = part
                    .strip_prefix("cycle")
                    .ok_or_else(|| text_err(no, format!("expected `cycle ...`, found `{part}`")))?;
                cycles.push(numbers(no, vs)?);
            }
            // Kept as written so the verifier sees exactly what was supplied.
            factors.push(TwoFactor { kind, cycles });
        } else if let Some(body) = line.strip_prefix("one_factor:") {
            if one_factor.is_some() {
                return Err(text_err(no, "duplicate one_factor line"));
            }
            let body = body.trim();
            if body == "none" {
                one_factor = Some(None);
                continue;
            }
            let mut pairs = Vec::new();
            for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                match numbers(no, part)?.as_slice() {
                    &[a, b] => pairs.push([a, b]),
                    _ => return Err(text_err(no, format!("expected a vertex pair, found `{part}`"))),
                }
            }
            one_factor = Some(Some(pairs));
        } else {
            let (key, value) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| text_err(no, format!("unrecognised line `{line}`")))?;
            let idx = KEYS
                .iter()
                .position(|&k| k == key)
                .ok_or_else(|| text_err(no, format!("unknown key `{key}`")))?;
            if header[idx].is_some() {
                return Err(text_err(no, format!("duplicate key `{key}`")));
            }
            let value = value.trim();
            header[idx] = Some(if value == "none" && (key == "k" || key == "t") {
                None
            } else {
                Some(number(no, value)?)
            });
        }
    }

    let required = |idx: usize| -> Result<usize, FormatError> {
        header[idx]
            .flatten()
            .ok_or_else(|| text_err(0, format!("missing key `{}`", KEYS[idx])))
    };
    let optional = |idx: usize| -> Result<Option<usize>, FormatError> {
        header[idx].ok_or_else(|| text_err(0, format!("missing key `{}`", KEYS[idx])))
    };
    Ok(Certificate {
        n: required(0)?,
        k: optional(1)?,
        t: optional(2)?,
        r: required(3)?,
        s: required(4)?,
        factors,
        one_factor: one_factor.ok_or_else(|| text_err(0, "missing one_factor line"))?,
    })
}

/// JSON when the first non-blank character is `{`, text otherwise.
pub fn parse_auto(input: &str) -> Result<Certificate, FormatError> {
    if input.trim_start().starts_with('{') {
        from_json(input)
    } else {
        from_text(input)
    }
}
