//! Gibbs thermal states: numeric construction, the closed-form matrix
//! elements of the two-spin battery, partition functions and passivity.

use num_complex::Complex64;

use crate::error::ThermalError;
use crate::linalg::{hermitian_eig, ComplexMatrix, Spectrum, ZERO};
use crate::model::ModelParams;
use crate::tolerances::{DENSITY_TOL, PASSIVE_OFF_DIAG_TOL, PASSIVE_ORDER_TOL};

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Wraps a matrix after checking the density-matrix invariants.
    pub fn new(m: ComplexMatrix) -> Result<Self, ThermalError> {
        let rho = Self(m);
        rho.check()?;
        Ok(rho)
    }

    /// Wraps a matrix without checking anything.
    pub fn new_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    /// I/d.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    /// |v⟩⟨v| for a normalized vector.
    pub fn pure(v: &[Complex64]) -> Self {
        Self(ComplexMatrix::projector(v))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn check(&self) -> Result<(), ThermalError> {
        let herm = self.0.hermiticity_error();
        if herm > DENSITY_TOL {
            return Err(ThermalError::InvalidDensity(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = self.0.trace();
        if (tr - 1.0).norm() > DENSITY_TOL {
            return Err(ThermalError::InvalidDensity(format!("trace {tr} ≠ 1")));
        }
        let min = hermitian_eig(&self.0)?.min();
        if min < -DENSITY_TOL {
            return Err(ThermalError::InvalidDensity(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }
}

fn check_temperature(t: f64) -> Result<(), ThermalError> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(ThermalError::NonPositiveTemperature(t))
    }
}

/// Boltzmann weights e^{−(ν−ν_min)/T}, unnormalized.
fn shifted_weights(spectrum: &Spectrum, t: f64) -> Vec<f64> {
    let min = spectrum.min();
    spectrum
        .eigenvalues
        .iter()
        .map(|&nu| (-(nu - min) / t).exp())
        .collect()
}

/// Thermal populations exp(−ν/T)/Z in the order of the spectrum.
pub fn boltzmann_populations(spectrum: &Spectrum, t: f64) -> Result<Vec<f64>, ThermalError> {
    check_temperature(t)?;
    let w = shifted_weights(spectrum, t);
    let total: f64 = w.iter().sum();
    Ok(w.into_iter().map(|x| x / total).collect())
}

/// Gibbs state built from an already computed spectrum.
pub fn gibbs_from_spectrum(spectrum: &Spectrum, t: f64) -> Result<DensityMatrix, ThermalError> {
    let p = boltzmann_populations(spectrum, t)?;
    let mut rho = ComplexMatrix::zeros(spectrum.dim());
    for (v, &w) in spectrum.eigenvectors.iter().zip(&p) {
        rho.add_scaled(&ComplexMatrix::projector(v), w);
    }
    Ok(DensityMatrix(rho))
}

/// e^{−H/T}/Z, with eigenvalues shifted by ν_min before exponentiation.
pub fn gibbs_state(h: &ComplexMatrix, t: f64) -> Result<DensityMatrix, ThermalError> {
    check_temperature(t)?;
    let spectrum = hermitian_eig(h)?;
    gibbs_from_spectrum(&spectrum, t)
}

/// Σ_μ e^{−ν_μ/T}.
pub fn partition_function(h: &ComplexMatrix, t: f64) -> Result<f64, ThermalError> {
    check_temperature(t)?;
    let spectrum = hermitian_eig(h)?;
    let sum: f64 = shifted_weights(&spectrum, t).iter().sum();
    Ok((-spectrum.min() / t).exp() * sum)
}

/// Passive iff diagonal in H's eigenbasis with populations non-increasing in energy.
pub fn is_passive(rho: &DensityMatrix, h: &ComplexMatrix) -> Result<bool, ThermalError> {
    let spectrum = hermitian_eig(h)?;
    let v = spectrum.vector_matrix();
    let in_basis = v.adjoint().matmul(rho.matrix())?.matmul(&v)?;
    let n = in_basis.dim();
    for i in 0..n {
        for j in 0..n {
            if i != j && in_basis[(i, j)].norm() > PASSIVE_OFF_DIAG_TOL {
                return Ok(false);
            }
        }
    }
    let pops: Vec<f64> = (0..n).map(|i| in_basis[(i, i)].re).collect();
    Ok(pops.windows(2).all(|w| w[1] <= w[0] + PASSIVE_ORDER_TOL))
}

/// Auxiliary quantities of the two-spin thermal state (B = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalAuxiliaries {
    /// √(4D_z² − sin 2θ + 4J² + 1): half-gap of the |01⟩,|10⟩ block.
    pub r_param: f64,
    /// √(1 + 4G_z² + 4γ²J² + sin 2θ): half-gap of the |00⟩,|11⟩ block.
    pub e_param: f64,
    /// D_z + iJ.
    pub phi: Complex64,
    /// G_z + iγJ.
    pub chi: Complex64,
    /// Partition function as printed (may overflow at very low T).
    pub z: f64,
}

/// Radicand of ℛ² for the given parameters.
pub fn r_radicand(params: &ModelParams) -> f64 {
    let j = params.effective_j();
    4.0 * params.dz * params.dz - (2.0 * params.theta).sin() + 4.0 * j * j + 1.0
}

/// Radicand of ℰ² for the given parameters.
pub fn e_radicand(params: &ModelParams) -> f64 {
    let j = params.effective_j();
    1.0 + 4.0 * params.gz * params.gz + 4.0 * j * j * params.gamma * params.gamma
        + (2.0 * params.theta).sin()
}

impl ThermalAuxiliaries {
    pub fn new(params: &ModelParams) -> Result<Self, ThermalError> {
        if params.b != 1.0 {
            return Err(ThermalError::PreconditionB(params.b));
        }
        check_temperature(params.temperature)?;
        let j = params.effective_j();
        let r = r_radicand(params).max(0.0).sqrt();
        let e = e_radicand(params).max(0.0).sqrt();
        let (t, d) = (params.temperature, params.delta);
        let z = 2.0
            * ((d / t).cosh() * ((e / t).cosh() + (r / t).cosh())
                + (d / t).sinh() * ((r / t).cosh() - (e / t).cosh()));
        Ok(Self {
            r_param: r,
            e_param: e,
            phi: Complex64::new(params.dz, j),
            chi: Complex64::new(params.gz, params.gamma * j),
            z,
        })
    }
}

/// The printed partition-function expression.
pub fn partition_function_closed_form(params: &ModelParams) -> Result<f64, ThermalError> {
    Ok(ThermalAuxiliaries::new(params)?.z)
}

/// Thermal state assembled from the printed matrix elements ϱ₁₁…ϱ₂₃.
///
/// The elements are written in the labeling where σz = diag(+1, −1), so
/// the natural numeric reference is the `Standard`-convention Hamiltonian.
/// Every term is evaluated relative to the largest Boltzmann exponent so
/// low temperatures do not overflow. Density-matrix invariants are not
/// checked: printed elements may be inconsistent.
pub fn gibbs_closed_form(params: &ModelParams) -> Result<DensityMatrix, ThermalError> {
    let aux = ThermalAuxiliaries::new(params)?;
    let (t, d, th) = (params.temperature, params.delta, params.theta);
    let (r, e) = (aux.r_param, aux.e_param);
    let shift = (d.abs() + r.max(e)) / t;
    // e^{x/T} relative to the shift
    let ex = |x: f64| (x / t - shift).exp();
    let sqrt2 = std::f64::consts::SQRT_2;
    let quarter_pi = std::f64::consts::FRAC_PI_4;
    let s = sqrt2 * (th + quarter_pi).sin();

    // e^{Δ/T} sinh(ℛ/T) and e^{Δ/T} cosh(ℛ/T), shifted
    let ed_sinh_r = 0.5 * (ex(d + r) - ex(d - r));
    let ed_cosh_r = 0.5 * (ex(d + r) + ex(d - r));
    let emd_sinh_e = 0.5 * (ex(-d + e) - ex(-d - e));

    // sinh(x)/x → 1 when the gap closes
    let over = |num: f64, x: f64, fallback: f64| if x > 0.0 { num / x } else { fallback };

    let r11 = ex(e - d) * (e - s) / (2.0 * e) + ex(-(d + e)) * (e + s) / (2.0 * e);
    let sinh_r = over(ed_sinh_r, r, ex(d) / t);
    let sinh_e = over(emd_sinh_e, e, ex(-d) / t);
    let r22 = sqrt2 * sinh_r * (th - quarter_pi).sin() + ed_cosh_r;
    let r33 = sqrt2 * sinh_r * (th - quarter_pi).cos() + ed_cosh_r;
    let r44 = ex(e - d) * (e + s) / (2.0 * e) - ex(-(d + e)) * (-e + s) / (2.0 * e);
    let r14 = Complex64::new(0.0, 2.0) * aux.chi * sinh_e;
    let r23 = Complex64::new(0.0, -2.0) * aux.phi.conj() * sinh_r;

    // Z = 2{cosh(Δ/T)[cosh(ℰ/T)+cosh(ℛ/T)] + sinh(Δ/T)[cosh(ℛ/T)−cosh(ℰ/T)]}, shifted
    let ch_ch = |a: f64, b: f64| 0.25 * (ex(a + b) + ex(a - b) + ex(-a + b) + ex(-a - b));
    let sh_ch = |a: f64, b: f64| 0.25 * (ex(a + b) + ex(a - b) - ex(-a + b) - ex(-a - b));
    let z = 2.0 * (ch_ch(d, e) + ch_ch(d, r) + sh_ch(d, r) - sh_ch(d, e));

    let c = |x: f64| Complex64::new(x / z, 0.0);
    let m = ComplexMatrix::from_rows(&[
        [c(r11), ZERO, ZERO, r14 / z],
        [ZERO, c(r22), r23 / z, ZERO],
        [ZERO, r23.conj() / z, c(r33), ZERO],
        [r14.conj() / z, ZERO, ZERO, c(r44)],
    ]);
    Ok(DensityMatrix::new_unchecked(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_qb_hamiltonian, SpinConvention};
    use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_4};

    fn xyz_afm() -> ModelParams {
        ModelParams {
            j: 1.0,
            gamma: 0.5,
            delta: 0.5,
            theta: FRAC_PI_2,
            temperature: 0.1,
            ..ModelParams::default()
        }
    }

    #[test]
    fn zero_hamiltonian_gives_maximally_mixed() {
        let rho = gibbs_state(&ComplexMatrix::zeros(4), 0.37).unwrap();
        assert!(rho
            .matrix()
            .max_abs_diff(DensityMatrix::maximally_mixed(4).matrix())
            .unwrap()
            < 1e-15);
    }

    #[test]
    fn infinite_temperature_limit() {
        let h = build_qb_hamiltonian(&xyz_afm());
        let rho = gibbs_state(&h, 1e8).unwrap();
        assert!(rho
            .matrix()
            .max_abs_diff(DensityMatrix::maximally_mixed(4).matrix())
            .unwrap()
            < 1e-7);
    }

    #[test]
    fn low_temperature_is_representable() {
        let h = build_qb_hamiltonian(&ModelParams {
            dz: 40.0,
            ..xyz_afm()
        });
        let rho = gibbs_state(&h, 1e-3).unwrap();
        rho.check().unwrap();
    }

    #[test]
    fn gibbs_populations_decrease_with_energy() {
        let h = build_qb_hamiltonian(&xyz_afm());
        let spectrum = hermitian_eig(&h).unwrap();
        let rho = gibbs_state(&h, 0.1).unwrap();
        let pops: Vec<f64> = spectrum
            .eigenvectors
            .iter()
            .map(|v| {
                let rv = rho.matrix().apply(v);
                v.iter().zip(&rv).map(|(a, b)| a.conj() * b).sum::<Complex64>().re
            })
            .collect();
        for w in pops.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        assert!(rho.matrix().commutator(&h).unwrap().max_abs() < 1e-9);
        assert!(is_passive(&rho, &h).unwrap());
    }

    #[test]
    fn partition_function_examples() {
        assert!((partition_function(&ComplexMatrix::zeros(4), 2.0).unwrap() - 4.0).abs() < 1e-15);
        let h = ComplexMatrix::real_diagonal(&[1.0, 1.0, -1.0, -1.0]);
        let z = partition_function(&h, 1.0).unwrap();
        assert!((z - (2.0 * E + 2.0 / E)).abs() < 1e-13);
    }

    #[test]
    fn partition_closed_form_matches_spectral_sum() {
        for convention in [SpinConvention::Standard, SpinConvention::Flipped] {
            let p = ModelParams {
                dz: 0.3,
                gz: 0.7,
                temperature: 0.6,
                convention,
                ..xyz_afm()
            };
            let numeric = partition_function(&build_qb_hamiltonian(&p), p.temperature).unwrap();
            let closed = partition_function_closed_form(&p).unwrap();
            assert!(((closed - numeric) / numeric).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_requires_unit_field() {
        let p = ModelParams {
            b: 2.0,
            ..xyz_afm()
        };
        assert_eq!(gibbs_closed_form(&p), Err(ThermalError::PreconditionB(2.0)));
    }

    #[test]
    fn closed_form_pure_zeeman() {
        // J = γ = Δ = D_z = G_z = 0, θ = 0, T = 1
        let p = ModelParams {
            j: 0.0,
            theta: 0.0,
            temperature: 1.0,
            convention: SpinConvention::Standard,
            ..ModelParams::default()
        };
        let numeric = gibbs_state(&build_qb_hamiltonian(&p), 1.0).unwrap();
        let closed = gibbs_closed_form(&p).unwrap();
        // all elements except ϱ₃₃ agree; see the deviation report for ϱ₃₃
        for (i, j) in [(0, 0), (1, 1), (3, 3), (0, 3), (1, 2)] {
            let diff = (closed.matrix()[(i, j)] - numeric.matrix()[(i, j)]).norm();
            assert!(diff < 1e-12, "element ({i},{j}) off by {diff}");
        }
    }

    #[test]
    fn printed_rho33_differs_from_numeric() {
        let p = ModelParams {
            theta: 0.3,
            dz: 0.4,
            temperature: 0.8,
            convention: SpinConvention::Standard,
            ..xyz_afm()
        };
        let numeric = gibbs_state(&build_qb_hamiltonian(&p), p.temperature).unwrap();
        let closed = gibbs_closed_form(&p).unwrap();
        let (n, c) = (numeric.matrix(), closed.matrix());
        assert!((n[(1, 1)] - c[(1, 1)]).norm() < 1e-12);
        assert!((n[(2, 2)] - c[(2, 2)]).norm() > 1e-3);
        // ϱ₃₃ with −sin(θ−π/4) in place of cos(θ−π/4)
        let aux = ThermalAuxiliaries::new(&p).unwrap();
        let (r, t, d) = (aux.r_param, p.temperature, p.delta);
        let fixed = (d / t).exp()
            * (-std::f64::consts::SQRT_2 * (r / t).sinh() * (p.theta - FRAC_PI_4).sin() / r
                + (r / t).cosh())
            / aux.z;
        assert!((n[(2, 2)].re - fixed).abs() < 1e-12);
    }

    #[test]
    fn density_checks() {
        assert!(DensityMatrix::new(ComplexMatrix::identity(2)).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::real_diagonal(&[1.5, -0.5])).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::real_diagonal(&[0.25, 0.75])).is_ok());
    }

    #[test]
    fn maximally_mixed_is_passive() {
        let h = build_qb_hamiltonian(&xyz_afm());
        assert!(is_passive(&DensityMatrix::maximally_mixed(4), &h).unwrap());
    }
}
