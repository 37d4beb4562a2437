//! Pinning sets, self-intersection numbers and mobidisc formulas of multiloops
//! on surfaces, with the planar vertex cover reduction.

pub mod cli;
pub mod combmap;
pub mod error;
pub mod fixtures;
pub mod freewords;
pub mod geometry;
pub mod io;
pub mod mobidisc;
pub mod pinning;
pub mod presentation;
pub mod reducer;
pub mod regionset;

pub use combmap::{CombinatorialMap, HalfEdge, Multiloop, Region};
pub use error::{Error, Result};
pub use regionset::RegionSet;
