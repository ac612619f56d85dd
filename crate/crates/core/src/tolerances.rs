//! Numerical tolerances and pinned conventions, all in one place.
//!
//! | constant | used for |
//! |----------|----------|
//! | [`HERMITIAN_TOL`] | input check before any eigendecomposition |
//! | [`JACOBI_OFF_DIAG_TOL`], [`JACOBI_MAX_SWEEPS`] | cyclic Jacobi stopping rule |
//! | [`DEGENERACY_TOL`] | grouping equal eigenvalues for tie ordering |
//! | [`PASSIVE_OFF_DIAG_TOL`], [`PASSIVE_ORDER_TOL`] | passivity test |
//! | [`DENSITY_TOL`] | density-matrix validity (Hermitian, trace, PSD) |
//! | [`GOLDEN_TOL`] | golden-section refinement in time |
//! | [`THRESHOLD_FRACTION`] | "drops to zero" criterion |

use crate::model::SpinConvention;

/// Max elementwise |H − H†| accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius norm at which Jacobi stops, relative to max(1, ‖H‖_F).
pub const JACOBI_OFF_DIAG_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues closer than this (relative to 1 + ‖H‖) count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Components below this magnitude are treated as zero when phase-normalizing eigenvectors.
pub const PHASE_ZERO_TOL: f64 = 1e-12;

pub const PASSIVE_OFF_DIAG_TOL: f64 = 1e-9;
pub const PASSIVE_ORDER_TOL: f64 = 1e-10;

pub const DENSITY_TOL: f64 = 1e-10;

/// Efficiency above 1 + this raises the contract-violation flag.
pub const EFFICIENCY_FLAG_TOL: f64 = 1e-9;

/// Time resolution of golden-section refinement.
pub const GOLDEN_TOL: f64 = 1e-6;
/// Dense scan size before golden-section refinement.
pub const TIME_SCAN_POINTS: usize = 512;

/// A series has "dropped to zero" once it stays below this fraction of its peak.
pub const THRESHOLD_FRACTION: f64 = 0.01;
/// Bisection resolution for threshold refinement.
pub const THRESHOLD_REFINE_TOL: f64 = 1e-4;
pub const THRESHOLD_MIN_POINTS: usize = 3;

/// Largest chain accepted by the dense builders (2^12 = 4096).
pub const MAX_CHAIN_SITES: usize = 12;

/// Closed-form comparisons beyond this land in the deviation report.
pub const CLOSED_FORM_ERGOTROPY_TOL: f64 = 1e-6;
pub const CLOSED_FORM_GIBBS_TOL: f64 = 1e-8;

/// Sign convention of σz inside the Hamiltonian builders.
///
/// Pinned by the capacity oracle: with `Flipped` the closed-form capacity
/// equals `Tr[H |11⟩⟨11|] − Tr[H ρ_th]`, so |11⟩ is the top Zeeman level.
/// Under `Standard` the same formula needs |00⟩ instead.
pub const PINNED_CONVENTION: SpinConvention = SpinConvention::Flipped;
