//! Fixtures shared by the benchmarks.

use brkit_core::{random_system_on_supports, IntMatrix, LatticeSupport, PolySystem};

/// Dense supports of degrees `1, 2, ..., d` in `d` variables.
pub fn graded_supports(d: usize) -> Vec<LatticeSupport> {
    (0..d).map(|j| LatticeSupport::dense(d, 1 + j as u32)).collect()
}

pub fn graded_system(d: usize, seed: u64) -> PolySystem {
    random_system_on_supports(&graded_supports(d), 10, seed).expect("valid supports")
}

/// Circulant 0/1 matrix with `k` ones per row.
pub fn circulant(n: usize, k: usize) -> IntMatrix {
    let rows = (0..n).map(|i| (0..n).map(|j| i64::from((j + n - i) % n < k)).collect()).collect();
    IntMatrix::new(rows).expect("square")
}
