//! Published arrays shipped with the crate.

use super::{load, OrthogonalArray};

const FIGURE1_TRANSPOSED: &str = include_str!("../../data/oa_16_5_4_2_transposed.txt");
const OA_32_9_4_2: &str = include_str!("../../data/oa_32_9_4_2.txt");

/// The index-one OA(16,5,4,2) used as the running example for qubit
/// decoupling. Row `j` is column `j` of the stored (transposed) table.
pub fn figure1() -> OrthogonalArray {
    load(FIGURE1_TRANSPOSED, 4, 2, true).expect("bundled OA(16,5,4,2) verifies")
}

/// An OA(32,9,4,2) with multiplicity 2, stored 0-based like the Sloane tables.
pub fn oa_32_9_4_2() -> OrthogonalArray {
    load(OA_32_9_4_2, 4, 2, false).expect("bundled OA(32,9,4,2) verifies")
}

/// Raw text of the bundled arrays, keyed by name.
pub fn bundled_text(name: &str) -> Option<(&'static str, bool)> {
    match name {
        "fig1" | "oa16" => Some((FIGURE1_TRANSPOSED, true)),
        "oa32" => Some((OA_32_9_4_2, false)),
        _ => None,
    }
}
