//! Reading and writing arrangement files.
//!
//! The text format is a header line `n d` followed by `d` lines of `n + 1`
//! rationals (`3`, `-1/2`). Blank lines and everything after `#` are ignored.
//! The JSON format is `{"n": 2, "forms": [[1, 0, 0], ["1/2", 1, 0]]}`, with
//! each coefficient an integer or a string holding a rational.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Arrangement;
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::poly::{parse_rational, render_rational, LinearForm};

#[derive(Serialize, Deserialize)]
struct JsonArrangement {
    n: usize,
    forms: Vec<Vec<Value>>,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

impl Arrangement {
    /// Parses either format; input whose first non-blank character is `{` is
    /// read as JSON.
    pub fn parse(text: &str) -> Result<Arrangement> {
        if text.trim_start().starts_with('{') {
            Arrangement::from_json(text)
        } else {
            Arrangement::from_text(text)
        }
    }

    /// Parses the line-oriented text format. Errors carry 1-based line numbers.
    pub fn from_text(text: &str) -> Result<Arrangement> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (header_line, header) = lines.next().ok_or_else(|| parse_error(1, "missing header `n d`"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [n, d] = fields.as_slice() else {
            return Err(parse_error(header_line, "header must be `n d`"));
        };
        let n: usize = n
            .parse()
            .map_err(|_| parse_error(header_line, format!("bad dimension {n:?}")))?;
        let d: usize = d
            .parse()
            .map_err(|_| parse_error(header_line, format!("bad hyperplane count {d:?}")))?;

        let mut forms = Vec::with_capacity(d);
        let mut rows = Vec::with_capacity(d);
        for (line, content) in lines {
            if forms.len() == d {
                return Err(parse_error(line, format!("more than the declared {d} forms")));
            }
            let coeffs = content
                .split_whitespace()
                .map(|w| parse_rational(w).map_err(|_| parse_error(line, format!("bad coefficient {w:?}"))))
                .collect::<Result<Vec<Rational>>>()?;
            if coeffs.len() != n + 1 {
                return Err(parse_error(
                    line,
                    format!("expected {} coefficients, found {}", n + 1, coeffs.len()),
                ));
            }
            let form = LinearForm::new(coeffs).map_err(|_| parse_error(line, "linear form is identically zero"))?;
            forms.push(form);
            rows.push(line);
        }
        if forms.len() != d {
            return Err(parse_error(
                text.lines().count().max(1),
                format!("declared {d} forms, found {}", forms.len()),
            ));
        }
        Arrangement::new(n, forms).map_err(|e| match e {
            Error::ProportionalForms { first, second } => parse_error(
                rows[second],
                format!(
                    "form on line {} is proportional to the form on line {} (forms {first} and {second})",
                    rows[second], rows[first]
                ),
            ),
            other => other,
        })
    }

    /// Parses the JSON mirror format.
    pub fn from_json(text: &str) -> Result<Arrangement> {
        let raw: JsonArrangement = serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))?;
        let forms = raw
            .forms
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let coeffs = row
                    .iter()
                    .map(|v| match v {
                        Value::Number(num) => num
                            .as_i64()
                            .map(crate::linalg::rat)
                            .ok_or_else(|| parse_error(1, format!("form {i}: coefficient {num} is not an integer"))),
                        Value::String(s) => {
                            parse_rational(s).map_err(|_| parse_error(1, format!("form {i}: bad coefficient {s:?}")))
                        }
                        other => Err(parse_error(1, format!("form {i}: unexpected coefficient {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.len() != raw.n + 1 {
                    return Err(parse_error(
                        1,
                        format!("form {i}: expected {} coefficients, found {}", raw.n + 1, coeffs.len()),
                    ));
                }
                LinearForm::new(coeffs)
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(raw.n, forms)
    }

    /// Canonical text serialization: normalized forms in stored order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.d());
        for f in self.forms() {
            let words: Vec<String> = f.coeffs().iter().map(render_rational).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }

    /// JSON serialization. Integer coefficients are written as numbers, others
    /// as strings.
    pub fn to_json(&self) -> String {
        let forms = self
            .forms()
            .iter()
            .map(|f| {
                f.coeffs()
                    .iter()
                    .map(|c| {
                        if c.is_integer() {
                            if let Ok(i) = i64::try_from(c.to_integer()) {
                                return Value::from(i);
                            }
                        }
                        Value::from(render_rational(c))
                    })
                    .collect()
            })
            .collect();
        let raw = JsonArrangement { n: self.n(), forms };
        serde_json::to_string(&raw).expect("plain data serializes")
    }
}
