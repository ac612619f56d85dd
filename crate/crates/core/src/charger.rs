//! Charging fields and the cyclic unitaries they generate.

use num_complex::Complex64;

use crate::error::LinalgError;
use crate::linalg::{expm_hermitian, ComplexMatrix};
use crate::model::{pauli, ChargeAxis};
use crate::thermal::DensityMatrix;

/// Ω(σ⊗I + I⊗σ) for σ the Pauli matrix of `axis`.
pub fn charging_hamiltonian(axis: ChargeAxis, omega: f64) -> ComplexMatrix {
    let s = pauli(axis.pauli());
    let id = ComplexMatrix::identity(2);
    (&s.kron(&id) + &id.kron(&s)).scale_real(omega)
}

/// A two-spin charging unitary together with the field that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargingUnitary {
    pub matrix: ComplexMatrix,
    pub axis: ChargeAxis,
    /// Ωt, dimensionless.
    pub phase: f64,
}

impl ChargingUnitary {
    /// ‖U†U − I‖_max.
    pub fn unitarity_error(&self) -> f64 {
        let n = self.matrix.dim();
        (&self.matrix.adjoint() * &self.matrix)
            .max_abs_diff(&ComplexMatrix::identity(n))
            .unwrap_or(f64::INFINITY)
    }
}

/// exp(−i H_C t), computed spectrally.
pub fn charging_unitary_numeric(axis: ChargeAxis, omega: f64, t: f64) -> ChargingUnitary {
    let h = charging_hamiltonian(axis, omega);
    let matrix = expm_hermitian(&h, Complex64::new(0.0, -t))
        .expect("charging Hamiltonian is Hermitian and 4×4");
    ChargingUnitary {
        matrix,
        axis,
        phase: omega * t,
    }
}

/// The two closed-form 4×4 layouts of a uniform-field two-spin rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedLayout {
    /// Entries α = cos²Ωt, β = −sin²Ωt, λ = −(i/2) sin 2Ωt.
    AlphaBetaLambda,
    /// Entries α, 1−α, α−1 and ϑ± = ±(1/2) sin 2Ωt.
    AlphaTheta,
}

impl ClosedLayout {
    /// The field axis whose exponential this layout equals.
    pub fn generator(self) -> ChargeAxis {
        match self {
            Self::AlphaBetaLambda => ChargeAxis::X,
            Self::AlphaTheta => ChargeAxis::Y,
        }
    }

    pub fn for_axis(axis: ChargeAxis) -> Self {
        match axis {
            ChargeAxis::X => Self::AlphaBetaLambda,
            ChargeAxis::Y => Self::AlphaTheta,
        }
    }
}

/// Assembles a closed-form layout at phase Ωt, entry by entry.
pub fn closed_layout_matrix(layout: ClosedLayout, phase: f64) -> ComplexMatrix {
    let c = phase.cos();
    let alpha = c * c;
    let half_sin2 = 0.5 * (2.0 * phase).sin();
    let re = |x: f64| Complex64::new(x, 0.0);
    match layout {
        ClosedLayout::AlphaBetaLambda => {
            let s = phase.sin();
            let (a, b, l) = (re(alpha), re(-s * s), Complex64::new(0.0, -half_sin2));
            ComplexMatrix::from_rows(&[[a, l, l, b], [l, a, b, l], [l, b, a, l], [b, l, l, a]])
        }
        ClosedLayout::AlphaTheta => {
            let (a, p, m) = (re(alpha), re(half_sin2), re(-half_sin2));
            let (one_minus, minus_one) = (re(1.0 - alpha), re(alpha - 1.0));
            ComplexMatrix::from_rows(&[
                [a, m, m, one_minus],
                [p, a, minus_one, m],
                [p, minus_one, a, m],
                [one_minus, p, p, a],
            ])
        }
    }
}

/// Closed-form charging unitary for the given field axis at phase Ωt.
pub fn charging_unitary_closed(axis: ChargeAxis, phase: f64) -> ChargingUnitary {
    ChargingUnitary {
        matrix: closed_layout_matrix(ClosedLayout::for_axis(axis), phase),
        axis,
        phase,
    }
}

/// U ρ U†.
pub fn evolve(rho_th: &DensityMatrix, u: &ChargingUnitary) -> Result<DensityMatrix, LinalgError> {
    let m = rho_th.matrix().conjugate_by(&u.matrix)?;
    Ok(DensityMatrix::new_unchecked(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eig, ZERO};
    use crate::model::{build_qb_hamiltonian, ModelParams};
    use crate::thermal::gibbs_state;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn x_field_by_hand() {
        let h = charging_hamiltonian(ChargeAxis::X, 1.0);
        let expected = ComplexMatrix::from_real_rows(&[
            [0.0, 1.0, 1.0, 0.0],
            [1.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, 1.0],
            [0.0, 1.0, 1.0, 0.0],
        ]);
        assert_eq!(h, expected);
        let ev = hermitian_eig(&h).unwrap().eigenvalues;
        for (got, want) in ev.iter().zip([-2.0, 0.0, 0.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_in_omega() {
        let one = charging_hamiltonian(ChargeAxis::Y, 1.0);
        let two = charging_hamiltonian(ChargeAxis::Y, 2.0);
        assert!(two.max_abs_diff(&one.scale_real(2.0)).unwrap() < 1e-15);
        assert!(two.is_hermitian(1e-15));
    }

    #[test]
    fn zero_time_is_identity() {
        for axis in [ChargeAxis::X, ChargeAxis::Y] {
            let u = charging_unitary_numeric(axis, 1.3, 0.0);
            assert!(u.matrix.max_abs_diff(&ComplexMatrix::identity(4)).unwrap() < 1e-14);
            let c = charging_unitary_closed(axis, 0.0);
            assert_eq!(c.matrix, ComplexMatrix::identity(4));
        }
    }

    #[test]
    fn closed_matches_numeric_on_phase_grid() {
        for axis in [ChargeAxis::X, ChargeAxis::Y] {
            for k in 0..=31 {
                let phase = (k as f64 * 0.1).min(PI);
                let omega = 0.7;
                let numeric = charging_unitary_numeric(axis, omega, phase / omega);
                let closed = charging_unitary_closed(axis, phase);
                let diff = numeric.matrix.max_abs_diff(&closed.matrix).unwrap();
                assert!(diff < 1e-10, "{axis:?} at {phase}: {diff}");
                assert!(numeric.unitarity_error() < 1e-10);
                assert!(closed.unitarity_error() < 1e-10);
            }
        }
    }

    #[test]
    fn layouts_pair_with_generators() {
        for layout in [ClosedLayout::AlphaBetaLambda, ClosedLayout::AlphaTheta] {
            let m = closed_layout_matrix(layout, 0.3);
            let numeric = charging_unitary_numeric(layout.generator(), 1.0, 0.3);
            assert!(m.max_abs_diff(&numeric.matrix).unwrap() < 1e-10);
        }
    }

    #[test]
    fn period_pi() {
        for axis in [ChargeAxis::X, ChargeAxis::Y] {
            for phase in [0.0, 0.4, 1.1, 2.9] {
                let a = charging_unitary_closed(axis, phase).matrix;
                let b = charging_unitary_closed(axis, phase + PI).matrix;
                assert!(a.max_abs_diff(&b).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn half_period_flips() {
        let m = closed_layout_matrix(ClosedLayout::AlphaBetaLambda, FRAC_PI_2);
        let minus_one = Complex64::new(-1.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i + j == 3 { minus_one } else { ZERO };
                assert!((m[(i, j)] - want).norm() < 1e-15);
            }
        }
        let y = charging_unitary_numeric(ChargeAxis::Y, 1.0, FRAC_PI_2).matrix;
        for (i, sign) in [1.0, -1.0, -1.0, 1.0].into_iter().enumerate() {
            assert!((y[(i, 3 - i)] - Complex64::new(sign, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn quarter_period_entries() {
        let m = closed_layout_matrix(ClosedLayout::AlphaBetaLambda, FRAC_PI_4);
        assert!((m[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((m[(0, 3)].re + 0.5).abs() < 1e-15);
        assert!((m[(0, 1)] - Complex64::new(0.0, -0.5)).norm() < 1e-15);
    }

    fn xx_afm() -> ModelParams {
        ModelParams {
            j: 1.0,
            theta: 0.0,
            temperature: 0.1,
            ..ModelParams::default()
        }
    }

    #[test]
    fn evolve_preserves_trace_and_spectrum() {
        let h = build_qb_hamiltonian(&xx_afm());
        let rho = gibbs_state(&h, 0.1).unwrap();
        let u = charging_unitary_closed(ChargeAxis::Y, 0.77);
        let out = evolve(&rho, &u).unwrap();
        assert!((out.matrix().trace() - 1.0).norm() < 1e-12);
        let a = hermitian_eig(rho.matrix()).unwrap().eigenvalues;
        let b = hermitian_eig(out.matrix()).unwrap().eigenvalues;
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-9);
        }
        let id = charging_unitary_closed(ChargeAxis::Y, 0.0);
        assert_eq!(evolve(&rho, &id).unwrap(), rho);
    }

    #[test]
    fn charging_raises_energy_and_is_cyclic() {
        let h = build_qb_hamiltonian(&xx_afm());
        let rho = gibbs_state(&h, 0.1).unwrap();
        let energy = |r: &DensityMatrix| r.matrix().trace_product(&h).unwrap().re;
        let u = charging_unitary_closed(ChargeAxis::Y, FRAC_PI_2);
        let once = evolve(&rho, &u).unwrap();
        let twice = evolve(&once, &u).unwrap();
        assert!(energy(&once) > energy(&rho));
        assert!((energy(&twice) - energy(&rho)).abs() < 1e-9);
    }
}
