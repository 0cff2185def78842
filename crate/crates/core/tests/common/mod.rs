//! Shared corpus builders and bridges to the brute-force oracle crate.

#![allow(dead_code)]

use schatten_harmonics::groups::GroupSpec;
use schatten_harmonics::operators::CMatrix;
use schatten_harmonics_oracles as oracles;

/// The desk-scale group corpus used across the suites.
pub fn corpus_groups() -> Vec<GroupSpec> {
    ["Z2", "Z3", "Z6", "Z2^2", "Z2^3"]
        .iter()
        .map(|s| GroupSpec::parse(s, 64).expect("corpus specs are valid"))
        .collect()
}

pub const CORPUS_DIMS: [usize; 4] = [1, 2, 4, 8];

/// Deterministic (group, dim) assignment for a trial index.
pub fn corpus_combo(index: usize) -> (GroupSpec, usize) {
    let groups = corpus_groups();
    let g = groups[index % groups.len()].clone();
    let d = CORPUS_DIMS[(index / groups.len()) % CORPUS_DIMS.len()];
    (g, d)
}

pub fn to_oracle(m: &CMatrix) -> oracles::Mat {
    let mut out = oracles::Mat::zeros(m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.set(i, j, m[(i, j)]);
        }
    }
    out
}
