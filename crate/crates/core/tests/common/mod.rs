#![allow(dead_code)]

use std::path::PathBuf;

use serde::Deserialize;
use ultranev::algebra::parse::{parse_elem, parse_ratmap};
use ultranev::algebra::{Field, FieldConfig, FieldElem, RatMap, Role};

#[derive(Deserialize)]
struct Raw {
    field: FieldConfig,
    #[serde(rename = "P")]
    p: String,
    #[serde(rename = "Q")]
    q: String,
}

pub struct Fixture {
    pub field: Field,
    pub p: RatMap,
    pub q: RatMap,
}

impl Fixture {
    pub fn elem(&self, s: &str) -> FieldElem {
        parse_elem(s, &self.field).unwrap()
    }
}

pub fn fixture(name: &str) -> Fixture {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}.json"));
    let raw: Raw = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let field = raw.field.build().unwrap();
    Fixture {
        p: parse_ratmap(&raw.p, &field, Role::P).unwrap(),
        q: parse_ratmap(&raw.q, &field, Role::Q).unwrap(),
        field,
    }
}

pub const PASSING: [&str; 4] = [
    "quadratic_sqrt3",
    "cubic_double_critical",
    "meromorphic_x9",
    "char3_x9_cubed_coeffs",
];
