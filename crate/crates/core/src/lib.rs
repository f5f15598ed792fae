//! Flow polytopes on grid graphs: lattice points as plane partitions,
//! vertices, faces, and exact counting through transfer matrices.

pub mod counting;
pub mod error;
pub mod faces;
pub mod graphs;
pub mod plane_partitions;
pub mod reports;
pub mod vectors;
pub mod vertex;

pub use error::{Error, Result};
