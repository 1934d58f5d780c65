//! Triangles in simple arrangements of pseudo-lines and lines.
//!
//! - [`diagram`]: wiring diagrams and their text format.
//! - [`faces`]: triangle and segment-usage counting.
//! - [`search`]: branch-and-prune search for triangle-rich diagrams.
//! - [`bounds`]: upper-bound formulas and known values.
//! - [`geometry`]: certified straight-line arrangements and the doubling
//!   construction.
//! - [`render`] and [`cli`]: SVG output and the command-line front end.

pub mod bounds;
pub mod cli;
pub mod diagram;
pub mod faces;
pub mod geometry;
pub mod render;
pub mod search;
