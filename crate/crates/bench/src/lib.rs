//! Benchmark workloads shared by the criterion benches.

use ngap_core::{generate, DigitalObject, Shape, ShapeSpec};

/// Random object in an `extent^n` box at density 1/2.
pub fn random_object(n: usize, extent: u32, seed: u64) -> DigitalObject {
    generate(&ShapeSpec::new(
        n,
        Shape::Random {
            extents: vec![extent; n],
            density: 0.5,
            seed,
        },
    ))
    .expect("valid workload spec")
}

/// Checkerboard in an `extent^n` box; every interior `(n-2)`-cell between
/// two diagonal voxels is a hub candidate.
pub fn checkerboard(n: usize, extent: u32) -> DigitalObject {
    generate(&ShapeSpec::new(
        n,
        Shape::Checkerboard {
            extents: vec![extent; n],
        },
    ))
    .expect("valid workload spec")
}
