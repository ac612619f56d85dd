//! Two-spin Heisenberg quantum battery simulator.

pub mod charger;
pub mod cli;
pub mod deviation;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod model;
pub mod optimize;
pub mod output;
pub mod sweep;
pub mod thermal;
pub mod tolerances;
