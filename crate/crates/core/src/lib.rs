//! Digital `n`-objects in the grid-cell model and their `(n-2)`-gaps.
//!
//! A digital object is a finite set of unit voxels of `R^n`. Its cells are
//! the faces of those voxels; a cell is *free* when some voxel around it is
//! missing. The number of `(n-2)`-gaps of an object satisfies
//!
//! ```text
//! g_{n-2} = (n-1) c*_{n-1} - c*_{n-2}
//! ```
//!
//! where `c*_i` counts free `i`-cells. This crate enumerates cells, classifies
//! them, detects gaps cell by cell and evaluates the closed forms, so that
//! every identity can be checked against direct enumeration.
//!
//! ```
//! use ngap_core::{count_gaps_formula, count_gaps_oracle, DigitalObject};
//!
//! // two voxels sharing only an edge
//! let d = DigitalObject::from_centers(3, [[0, 0, 0], [1, 1, 0]]).unwrap();
//! assert_eq!(count_gaps_oracle(&d, 1).unwrap().count, 1);
//! assert_eq!(count_gaps_formula(&d).unwrap(), 1);
//! ```

pub mod cell;
pub mod combinatorics;
pub mod error;
pub mod gaps;
pub mod generator;
pub mod object;
pub mod verify;

pub use cell::{
    adjacency, block, bounds, closure, cofaces, dual, faces, incident, meet, neighborhood,
    Adjacency, Cell, DualCell,
};
pub use combinatorics::{
    b_in_voxel, binomial, block_cell_count, block_free_facets, c_bounded, c_bounding,
    incidence_sum_check, lblock_cell_count, lblock_free_facets,
};
pub use error::{Error, Result};
pub use gaps::{
    classify_cell, count_gaps_brimkov, count_gaps_formula, count_gaps_oracle, gap_hubs,
    hub_nub_partition, is_gap, is_gap_by_adjacency, Classification, GapReport, HubClass,
};
pub use generator::{enumerate_all_objects, generate, Shape, ShapeSpec};
pub use object::{
    b_boundary, border, cells, census, is_free, CellCensus, DigitalObject, DimCounts,
};
pub use verify::{verify_object, verify_with_census, VerifyReport};
