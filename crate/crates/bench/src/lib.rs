//! Fixtures shared by the benchmarks.

use sicmub_core::{ComplexVector, C64};

/// A fixed, generic (non-SIC) unit vector in `C^dim`.
pub fn generic_vector(dim: usize) -> ComplexVector {
    let entries = (0..dim)
        .map(|a| {
            let a = a as f64;
            C64::from_polar(1.0 + 0.3 * a, 0.7 * a * a + 0.1)
        })
        .collect();
    ComplexVector::new(entries).normalized().expect("nonzero")
}
