//! Example documents shipped with the binary, addressable as `builtin:NAME`.

use std::path::Path;

use crate::format::{parse_spec, Spec, SpecError};

pub const CORPUS: &[(&str, &str)] = &[
    ("rationals", include_str!("../corpus/rationals.json")),
    ("dual_numbers", include_str!("../corpus/dual_numbers.json")),
    ("cubic", include_str!("../corpus/cubic.json")),
    (
        "upper_triangular",
        include_str!("../corpus/upper_triangular.json"),
    ),
    ("square_dual", include_str!("../corpus/square_dual.json")),
    ("square_cubic", include_str!("../corpus/square_cubic.json")),
    (
        "square_identity",
        include_str!("../corpus/square_identity.json"),
    ),
    (
        "square_zero_rationals",
        include_str!("../corpus/square_zero_rationals.json"),
    ),
    (
        "square_zero_two",
        include_str!("../corpus/square_zero_two.json"),
    ),
    ("chain_point", include_str!("../corpus/chain_point.json")),
    (
        "chain_example",
        include_str!("../corpus/chain_example.json"),
    ),
    (
        "constant_cyclic",
        include_str!("../corpus/constant_cyclic.json"),
    ),
];

pub const SCHEMA: &str = include_str!("../schema/input.schema.json");

pub fn builtin(name: &str) -> Option<Spec> {
    CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_spec(text).expect("bundled documents are valid"))
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("no bundled document named {0:?}")]
    UnknownBuiltin(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Spec { path: String, source: SpecError },
}

/// Reads `builtin:NAME` from the corpus or a path from disk.
pub fn load(source: &str) -> Result<Spec, LoadError> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return builtin(name).ok_or_else(|| LoadError::UnknownBuiltin(name.to_string()));
    }
    let text = std::fs::read_to_string(Path::new(source)).map_err(|e| LoadError::Io {
        path: source.to_string(),
        source: e,
    })?;
    parse_spec(&text).map_err(|e| LoadError::Spec {
        path: source.to_string(),
        source: e,
    })
}
