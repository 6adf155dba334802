//! Wire format for field elements and the flat-file/CSV/JSON formats used by
//! the command-line front end.
//!
//! An element is written as four exact fractions `a b c d` in the
//! `(1, sqrt p, sqrt q, sqrt r)` basis, e.g. `4 5/2 2 3/2`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::element::BiquadElement;
use crate::error::Error;
use crate::field::Field;
use crate::rat::parse_fraction;

/// Formats an element in the `a b c d` wire format.
pub fn format_element(e: &BiquadElement) -> String {
    let c = e.coords();
    format!("{} {} {} {}", c[0], c[1], c[2], c[3])
}

/// Parses the `a b c d` wire format.
pub fn parse_element(field: &Arc<Field>, s: &str) -> Result<BiquadElement, Error> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!(
            "expected four fractions `a b c d`, got {s:?}"
        )));
    }
    let mut coords = Vec::with_capacity(4);
    for part in parts {
        coords.push(
            parse_fraction(part)
                .ok_or_else(|| Error::Parse(format!("bad fraction {part:?} in {s:?}")))?,
        );
    }
    Ok(BiquadElement::from_coords(
        field,
        coords.try_into().expect("four coordinates"),
    ))
}

/// Parses an element-list file: one element per line, `#` comments and blank
/// lines ignored.
pub fn parse_element_file(field: &Arc<Field>, contents: &str) -> Result<Vec<BiquadElement>, Error> {
    contents
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(|line| parse_element(field, line))
        .collect()
}

/// Serializes an element as an exact rational 4-tuple of strings.
pub fn element_to_json(e: &BiquadElement) -> Value {
    Value::Array(
        e.coords()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

/// Parses the JSON produced by [`element_to_json`].
pub fn element_from_json(field: &Arc<Field>, v: &Value) -> Result<BiquadElement, Error> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| Error::Parse(format!("expected a 4-tuple, got {v}")))?;
    let mut coords = Vec::with_capacity(4);
    for item in arr {
        let s = item
            .as_str()
            .ok_or_else(|| Error::Parse(format!("expected a fraction string, got {item}")))?;
        coords.push(
            parse_fraction(s).ok_or_else(|| Error::Parse(format!("bad fraction {s:?}")))?,
        );
    }
    Ok(BiquadElement::from_coords(
        field,
        coords.try_into().expect("four coordinates"),
    ))
}

/// Renders a gamma-count table as ragged CSV: a header naming the column
/// elements, then one row per element from the second on.
pub fn render_table_csv(elements: &[BiquadElement], table: &[Vec<usize>]) -> String {
    let mut out = String::from("alpha");
    for e in &elements[..elements.len().saturating_sub(1)] {
        out.push(',');
        out.push_str(&format_element(e));
    }
    out.push('\n');
    for (i, row) in table.iter().enumerate() {
        out.push_str(&format_element(&elements[i + 1]));
        for c in row {
            out.push(',');
            out.push_str(&c.to_string());
        }
        out.push('\n');
    }
    out
}

/// The table as JSON (counts plus the element labels).
pub fn table_to_json(elements: &[BiquadElement], table: &[Vec<usize>]) -> Value {
    json!({
        "elements": elements.iter().map(element_to_json).collect::<Vec<_>>(),
        "counts": table,
    })
}
