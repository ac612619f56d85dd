//! Writers for sweep results: CSV tables, SVG plots and run manifests.

mod csv;
mod manifest;
mod svg;

pub use csv::{format_value, sweep_csv};
pub use manifest::RunManifest;
pub use svg::sweep_svg;
