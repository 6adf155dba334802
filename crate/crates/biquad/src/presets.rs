//! Bundled element lists and golden tables for the two worked fields,
//! Q(sqrt 2, sqrt 3) and Q(sqrt 6, sqrt 19).

use std::sync::Arc;

use crate::element::BiquadElement;
use crate::error::Error;
use crate::field::Field;
use crate::parse::parse_element_file;

/// Default exponent bound for unit generation.
pub const DEFAULT_UNIT_EXPONENT_BOUND: i64 = 3;

/// The bundled element list for the field, if there is one.
pub fn preset_elements(p: i64, q: i64) -> Option<&'static str> {
    match key(p, q) {
        (2, 3) => Some(include_str!("../data/elements-2-3.txt")),
        (6, 19) => Some(include_str!("../data/elements-6-19.txt")),
        _ => None,
    }
}

/// The bundled escalator list for the field, if there is one.
pub fn preset_escalators(p: i64, q: i64) -> Option<&'static str> {
    match key(p, q) {
        (2, 3) => Some(include_str!("../data/escalators-2-3.txt")),
        (6, 19) => Some(include_str!("../data/elements-6-19.txt")),
        _ => None,
    }
}

/// Bundled unit-group generators, if known for the field.
pub fn preset_unit_generators(p: i64, q: i64) -> Option<&'static str> {
    match key(p, q) {
        (2, 3) => Some(include_str!("../data/units-2-3.txt")),
        _ => None,
    }
}

/// The golden gamma-count table in CSV form, if bundled for the field.
pub fn preset_table_golden(p: i64, q: i64) -> Option<&'static str> {
    match key(p, q) {
        (2, 3) => Some(include_str!("../data/table-2-3.csv")),
        (6, 19) => Some(include_str!("../data/table-6-19.csv")),
        _ => None,
    }
}

/// Parses a preset list against the field.
pub fn parse_preset(field: &Arc<Field>, contents: &str) -> Result<Vec<BiquadElement>, Error> {
    parse_element_file(field, contents)
}

fn key(p: i64, q: i64) -> (i64, i64) {
    (p.min(q), p.max(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::rat::{rat, ratio};

    #[test]
    fn presets_parse() {
        let f = make_field(2, 3).unwrap();
        let elements = parse_preset(&f, preset_elements(2, 3).unwrap()).unwrap();
        assert_eq!(elements.len(), 6);
        assert_eq!(
            elements[1],
            BiquadElement::new(f.clone(), rat(4), ratio(5, 2), rat(2), ratio(3, 2))
        );
        let esc = parse_preset(&f, preset_escalators(3, 2).unwrap()).unwrap();
        assert_eq!(esc, elements[..5].to_vec());

        let g = make_field(6, 19).unwrap();
        let elements = parse_preset(&g, preset_elements(6, 19).unwrap()).unwrap();
        assert_eq!(elements.len(), 6);
        assert!(preset_table_golden(6, 19).is_some());
        assert!(preset_elements(5, 13).is_none());
    }
}
