//! Bundled `.ctree` documents.

use crate::parser::{parse, CtreeDocument};

pub const URN: &str = include_str!("../corpus/urn.ctree");
pub const BAROMETER: &str = include_str!("../corpus/barometer.ctree");
pub const XYZU: &str = include_str!("../corpus/xyzu.ctree");
pub const BIFURCATIONS: &str = include_str!("../corpus/bifurcations.ctree");
pub const REALISATION_SET: &str = include_str!("../corpus/realisation_set.ctree");
pub const SINGLE: &str = include_str!("../corpus/single.ctree");

/// `(file name, contents)` for every bundled document.
pub const ALL: [(&str, &str); 6] = [
    ("urn.ctree", URN),
    ("barometer.ctree", BAROMETER),
    ("xyzu.ctree", XYZU),
    ("bifurcations.ctree", BIFURCATIONS),
    ("realisation_set.ctree", REALISATION_SET),
    ("single.ctree", SINGLE),
];

/// Parses a bundled document.
///
/// # Panics
/// If `text` is not a valid document.
pub fn load(text: &str) -> CtreeDocument {
    match parse(text) {
        Ok(doc) => doc,
        Err(e) => panic!("bundled document does not parse: {e}"),
    }
}
