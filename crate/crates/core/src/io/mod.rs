//! Interchange formats and rendering.

pub mod dimacs;
pub mod json;
pub mod render;

pub use dimacs::{export_dimacs, parse_dimacs, DimacsGraph};
pub use json::{export_coloring_json, import_coloring_json, ColoringDocument};
pub use render::{default_palette, render_grid, RenderFormat, RenderSpec};
