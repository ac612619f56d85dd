//! Disagreements between closed-form expressions and their numeric references,
//! collected as CSV rows.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{MetricsError, ThermalError};
use crate::linalg::ComplexMatrix;
use crate::metrics::{ergotropy_closed_form, ChargedBattery};
use crate::model::{build_qb_hamiltonian, ModelParams, SpinConvention};
use crate::thermal::{gibbs_closed_form, gibbs_state};
use crate::tolerances::{CLOSED_FORM_ERGOTROPY_TOL, CLOSED_FORM_GIBBS_TOL};

pub const CSV_HEADER: &str = "param_set,element,closed_re,closed_im,numeric_re,numeric_im,abs_diff";

#[derive(Debug, Clone, PartialEq)]
pub struct DeviationRow {
    pub param_set: String,
    pub element: String,
    pub closed: Complex64,
    pub numeric: Complex64,
}

impl DeviationRow {
    pub fn abs_diff(&self) -> f64 {
        (self.closed - self.numeric).norm()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DeviationReport {
    pub rows: Vec<DeviationRow>,
}

/// Labels of the structurally nonzero thermal-state elements, 0-based.
const GIBBS_ELEMENTS: [(&str, usize, usize); 6] = [
    ("rho11", 0, 0),
    ("rho22", 1, 1),
    ("rho33", 2, 2),
    ("rho44", 3, 3),
    ("rho14", 0, 3),
    ("rho23", 1, 2),
];

impl DeviationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Records every listed element whose closed and numeric values differ by more than `tol`.
    pub fn compare_elements(
        &mut self,
        param_set: &str,
        closed: &ComplexMatrix,
        numeric: &ComplexMatrix,
        elements: &[(&str, usize, usize)],
        tol: f64,
    ) -> usize {
        let before = self.rows.len();
        for &(name, i, j) in elements {
            let row = DeviationRow {
                param_set: param_set.to_string(),
                element: name.to_string(),
                closed: closed[(i, j)],
                numeric: numeric[(i, j)],
            };
            if !(row.abs_diff() <= tol) {
                self.rows.push(row);
            }
        }
        self.rows.len() - before
    }

    /// Compares the closed-form thermal state with the numeric Gibbs state of
    /// the Hamiltonian in the labeling the closed form is written in.
    pub fn check_gibbs(&mut self, param_set: &str, params: &ModelParams) -> Result<usize, ThermalError> {
        let standard = ModelParams {
            convention: SpinConvention::Standard,
            ..*params
        };
        let closed = gibbs_closed_form(&standard)?;
        let numeric = gibbs_state(&build_qb_hamiltonian(&standard), standard.temperature)?;
        Ok(self.compare_elements(
            param_set,
            closed.matrix(),
            numeric.matrix(),
            &GIBBS_ELEMENTS,
            CLOSED_FORM_GIBBS_TOL,
        ))
    }

    /// Compares closed-form ergotropy at time t with the trace formula.
    pub fn check_ergotropy(&mut self, param_set: &str, params: &ModelParams, t: f64) -> Result<usize, MetricsError> {
        let closed = ergotropy_closed_form(params, t)?;
        let numeric = ChargedBattery::new(params)?.ergotropy_at(t);
        let row = DeviationRow {
            param_set: param_set.to_string(),
            element: "ergotropy".into(),
            closed: Complex64::new(closed, 0.0),
            numeric: Complex64::new(numeric, 0.0),
        };
        if row.abs_diff() <= CLOSED_FORM_ERGOTROPY_TOL {
            return Ok(0);
        }
        self.rows.push(row);
        Ok(1)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                r.param_set,
                r.element,
                r.closed.re,
                r.closed.im,
                r.numeric.re,
                r.numeric.im,
                r.abs_diff()
            );
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_csv())
    }
}
