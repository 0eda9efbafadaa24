//! Catalogs shipped with the crate as figure-set JSON files.

use crate::error::{Error, Result};
use crate::figures::io::FigureSet;
use crate::schema::Catalog;

const BUILTINS: &[(&str, &str)] = &[
    ("dominoes2d", include_str!("../data/dominoes2d.json")),
    (
        "dominoes2d_weighted",
        include_str!("../data/dominoes2d_weighted.json"),
    ),
    ("edges2d", include_str!("../data/edges2d.json")),
];

/// Names accepted by [`builtin_set`].
pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|(name, _)| *name)
}

/// The JSON text of a builtin catalog.
pub fn builtin_json(name: &str) -> Option<&'static str> {
    BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

pub fn builtin_set(name: &str) -> Result<FigureSet> {
    let text = builtin_json(name).ok_or_else(|| {
        let known: Vec<_> = builtin_names().collect();
        Error::InvalidArgument(format!(
            "unknown builtin catalog {name:?} (known: {})",
            known.join(", ")
        ))
    })?;
    FigureSet::from_json(text)
}

pub fn builtin_catalog(name: &str) -> Result<Catalog> {
    Catalog::from_figure_set(&builtin_set(name)?)
}

/// Largest weight stored in the `edges2d` data file.
pub const EDGES2D_STORED_WEIGHT: usize = 4;
