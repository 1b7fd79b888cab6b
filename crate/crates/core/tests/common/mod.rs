#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use serde::Deserialize;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

#[derive(Debug, Deserialize)]
pub struct Golden {
    pub weights: Vec<f64>,
    pub thetas: Vec<f64>,
    pub probabilities: Vec<f64>,
    pub q: Vec<f64>,
}

pub fn golden() -> Golden {
    let text = std::fs::read_to_string(fixture("covend_golden.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}
