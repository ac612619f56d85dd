//! Battery figures of merit: ergotropy, work, power, efficiency, capacity
//! and l₁-coherence.


use crate::charger::{charging_unitary_closed, evolve, ChargingUnitary};
use crate::error::MetricsError;
use crate::linalg::{hermitian_eig, ComplexMatrix, Spectrum};
use crate::model::{build_qb_hamiltonian, ChargeAxis, ModelParams};
use crate::optimize::scan_then_refine;
use crate::thermal::{e_radicand, gibbs_from_spectrum, r_radicand, DensityMatrix};
use crate::tolerances::{EFFICIENCY_FLAG_TOL, GOLDEN_TOL};

/// Tr(ρH) − Σ_n r_n ν_n with r descending and ν ascending.
pub fn ergotropy_spectral(rho: &DensityMatrix, h: &ComplexMatrix) -> Result<f64, MetricsError> {
    let hs = hermitian_eig(h)?;
    // Tie groups in the spectrum are ordered by eigenvector, so sort populations by value.
    let mut r = hermitian_eig(rho.matrix())?.eigenvalues;
    r.sort_by(|a, b| b.total_cmp(a));
    let energy = rho.matrix().trace_product(h)?.re;
    let passive: f64 = r
        .iter()
        .zip(&hs.eigenvalues)
        .map(|(r, nu)| r * nu)
        .sum();
    Ok(energy - passive)
}

/// Re Tr[(ρ − ρ_th) H]. The caller guarantees ρ is unitarily connected to ρ_th.
pub fn ergotropy_trace(
    rho: &DensityMatrix,
    rho_th: &DensityMatrix,
    h: &ComplexMatrix,
) -> Result<f64, MetricsError> {
    work(rho, rho_th, h)
}

/// Re Tr[(ρ − reference) H].
pub fn work(rho: &DensityMatrix, reference: &DensityMatrix, h: &ComplexMatrix) -> Result<f64, MetricsError> {
    Ok((rho.matrix().trace_product(h)? - reference.matrix().trace_product(h)?).re)
}

/// W/t.
pub fn average_power(w: f64, t: f64) -> f64 {
    w / t
}

/// Ratio of work to ergotropy with a flag for values above one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Efficiency {
    pub value: f64,
    pub exceeds_unity: bool,
}

pub fn efficiency(w: f64, xi: f64) -> Result<Efficiency, MetricsError> {
    if xi == 0.0 {
        return Err(MetricsError::NotDefined);
    }
    let value = w / xi;
    Ok(Efficiency {
        value,
        exceeds_unity: value > 1.0 + EFFICIENCY_FLAG_TOL,
    })
}

/// Which state plays the role of the fully charged battery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CapacityMode {
    /// |11⟩⟨11|.
    #[default]
    Literal11,
    /// The top eigenvector of H.
    TopEigenstate,
}

/// Tr[H ρ_↑] − Tr[H ρ_↓].
pub fn capacity_numeric(
    h: &ComplexMatrix,
    rho_down: &DensityMatrix,
    mode: CapacityMode,
) -> Result<f64, MetricsError> {
    let low = rho_down.matrix().trace_product(h)?.re;
    let high = match mode {
        CapacityMode::Literal11 => {
            let n = h.dim();
            h[(n - 1, n - 1)].re
        }
        CapacityMode::TopEigenstate => hermitian_eig(h)?.max(),
    };
    Ok(high - low)
}

/// Σ_{i≠j} |ρ_ij| in the computational basis.
pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let n = m.dim();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                q += m[(i, j)].norm();
            }
        }
    }
    q
}

/// How the closed-form expressions are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClosedFormEval {
    /// Every term is multiplied by e^{−s} with s the largest exponent, so
    /// nothing overflows at small T.
    #[default]
    Guarded,
    /// Plain f64 evaluation of the printed auxiliaries. Overflows to NaN at
    /// low T and large D_z.
    LiteralF64,
}

/// Auxiliary quantities of the closed-form ergotropy and capacity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormAux {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub g: f64,
    pub h: f64,
    pub eps_a: f64,
    pub eps_b: f64,
    pub f_a: f64,
    pub f_b: f64,
    pub s_param: f64,
}

fn require_unit_field(params: &ModelParams) -> Result<(), MetricsError> {
    if params.b != 1.0 {
        return Err(MetricsError::Regime(format!(
            "closed forms assume B = 1, got B = {}",
            params.b
        )));
    }
    if !(params.temperature > 0.0) {
        return Err(MetricsError::InvalidInput(format!(
            "temperature must be > 0, got {}",
            params.temperature
        )));
    }
    Ok(())
}

impl ClosedFormAux {
    pub fn new(params: &ModelParams) -> Result<Self, MetricsError> {
        require_unit_field(params)?;
        let j = params.effective_j();
        let t = params.temperature;
        let a = r_radicand(params).max(0.0);
        let b = e_radicand(params).max(0.0);
        let (sa, sb) = (a.sqrt() / t, b.sqrt() / t);
        Ok(Self {
            a,
            b,
            c: -params.delta + params.gamma * j + j,
            d: sb.exp(),
            g: (2.0 * params.delta / t).exp(),
            h: (2.0 * params.delta / t + sb).exp(),
            eps_a: sa.cosh(),
            eps_b: sb.cosh(),
            f_a: sa.sinh(),
            f_b: sb.sinh(),
            s_param: params.theta.sin() + params.theta.cos(),
        })
    }
}

/// Exponentials relative to a common shift: `e(x) = exp(x − s)`.
struct Scaled {
    shift: f64,
    t: f64,
}

impl Scaled {
    fn e(&self, x: f64) -> f64 {
        (x - self.shift).exp()
    }

    /// e^{x−s}·sinh(√v/T)/√v, finite as v → 0.
    fn exp_sinh_over_root(&self, x: f64, v: f64) -> f64 {
        let root = v.sqrt();
        let y = root / self.t;
        if y < 1.0 {
            let sinhc = if y == 0.0 { 1.0 } else { y.sinh() / y };
            self.e(x) * sinhc / self.t
        } else {
            0.5 * (self.e(x + y) - self.e(x - y)) / root
        }
    }
}

/// Shared scaled pieces of the ergotropy and capacity formulas.
struct GuardedPieces {
    sc: Scaled,
    /// h ε_a
    he_a: f64,
    /// h f_a
    hf_a: f64,
    /// d²
    d2: f64,
    /// 1
    one: f64,
}

impl GuardedPieces {
    fn new(params: &ModelParams, aux: &ClosedFormAux) -> Self {
        let t = params.temperature;
        let (xa, xb, xg) = (aux.a.sqrt() / t, aux.b.sqrt() / t, 2.0 * params.delta / t);
        let shift = (xg + xb + xa).max(2.0 * xb).max(0.0);
        let sc = Scaled { shift, t };
        let he_a = 0.5 * (sc.e(xg + xb + xa) + sc.e(xg + xb - xa));
        let hf_a = 0.5 * (sc.e(xg + xb + xa) - sc.e(xg + xb - xa));
        let d2 = sc.e(2.0 * xb);
        let one = sc.e(0.0);
        Self {
            sc,
            he_a,
            hf_a,
            d2,
            one,
        }
    }

    fn denominator(&self) -> f64 {
        2.0 * self.he_a + self.d2 + self.one
    }
}

/// Closed-form ergotropy for Y-axis charging at time t (phase Ωt).
pub fn ergotropy_closed_form(params: &ModelParams, t: f64) -> Result<f64, MetricsError> {
    ergotropy_closed_form_with(params, t, ClosedFormEval::Guarded)
}

pub fn ergotropy_closed_form_with(
    params: &ModelParams,
    t: f64,
    eval: ClosedFormEval,
) -> Result<f64, MetricsError> {
    if params.axis != ChargeAxis::Y {
        return Err(MetricsError::Regime(
            "closed-form ergotropy is for Y-axis charging".into(),
        ));
    }
    let aux = ClosedFormAux::new(params)?;
    let j = params.effective_j();
    let gamma = params.gamma;
    let phase = params.omega * t;
    let sin_sq = phase.sin().powi(2);
    let cos2 = (2.0 * phase).cos();
    let ClosedFormAux { a, b, c, .. } = aux;

    match eval {
        ClosedFormEval::LiteralF64 => {
            let ClosedFormAux {
                d,
                g,
                h,
                eps_a,
                eps_b,
                f_a,
                f_b,
                ..
            } = aux;
            let (ra, rb, rab) = (a.sqrt(), b.sqrt(), (a * b).sqrt());
            let sin2th = (2.0 * params.theta).sin();
            let braces = c
                * (-2.0 * rab * h * eps_a
                    + ra * cos2
                        * (-2.0 * rb * d * g * eps_a
                            + rb * (d * d + 1.0)
                            + 2.0 * gamma * (d * d - 1.0) * j)
                    + 2.0 * rab * d * eps_b)
                + 2.0 * rb * f_a * (h * (a + 2.0 * j * (c - 2.0 * j)) + 2.0 * c * d * g * j * cos2 + sin2th * (h - d * g))
                + 2.0 * ra * d * f_b * (b + 2.0 * gamma * j * (c - 2.0 * gamma * j));
            Ok(2.0 * sin_sq / (rab * (2.0 * h * eps_a + d * d + 1.0)) * braces)
        }
        ClosedFormEval::Guarded => {
            let p = GuardedPieces::new(params, &aux);
            let t_ = params.temperature;
            let xb = b.sqrt() / t_;
            let xgb = 2.0 * params.delta / t_ + xb;
            // d ε_b and d f_b
            let de_b = 0.5 * (p.d2 + p.one);
            // (d² − 1)/√b and d f_b/√b
            let d2m_over_rb = 2.0 * p.sc.exp_sinh_over_root(xb, b);
            let df_b_over_rb = p.sc.exp_sinh_over_root(xb, b);
            // h f_a/√a
            let hf_a_over_ra = p.sc.exp_sinh_over_root(xgb, a);
            // d g = h, so the sin 2θ (h − d g) term vanishes identically
            let braces = c
                * (-2.0 * p.he_a
                    + cos2 * (-2.0 * p.he_a + (p.d2 + p.one) + 2.0 * gamma * j * d2m_over_rb)
                    + 2.0 * de_b)
                + 2.0 * hf_a_over_ra * ((a + 2.0 * j * (c - 2.0 * j)) + 2.0 * c * j * cos2)
                + 2.0 * df_b_over_rb * (b + 2.0 * gamma * j * (c - 2.0 * gamma * j));
            Ok(2.0 * sin_sq * braces / p.denominator())
        }
    }
}

/// Closed-form capacity K.
pub fn capacity_closed_form(params: &ModelParams) -> Result<f64, MetricsError> {
    capacity_closed_form_with(params, ClosedFormEval::Guarded)
}

pub fn capacity_closed_form_with(params: &ModelParams, eval: ClosedFormEval) -> Result<f64, MetricsError> {
    let aux = ClosedFormAux::new(params)?;
    let s = aux.s_param;
    let two_delta = 2.0 * params.delta;
    let (ra, rb) = (aux.a.sqrt(), aux.b.sqrt());
    match eval {
        ClosedFormEval::LiteralF64 => {
            let ClosedFormAux { d, h, eps_a, f_a, .. } = aux;
            Ok((2.0 * ra * f_a * h + rb * (d * d - 1.0) + d * d * s + 2.0 * h * eps_a * (two_delta + s) + s)
                / (d * d + 2.0 * h * eps_a + 1.0))
        }
        ClosedFormEval::Guarded => {
            let p = GuardedPieces::new(params, &aux);
            Ok((2.0 * ra * p.hf_a + rb * (p.d2 - p.one) + p.d2 * s + 2.0 * p.he_a * (two_delta + s) + p.one * s)
                / p.denominator())
        }
    }
}

/// The three ergotropy routes side by side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErgotropyBreakdown {
    pub spectral: f64,
    pub trace_formula: f64,
    /// Present only for Y-axis charging with B = 1.
    pub closed_form: Option<f64>,
    /// Largest pairwise absolute difference.
    pub agreement: f64,
}

/// Hamiltonian, spectrum and thermal state of one parameter point, ready to
/// be charged for any time.
#[derive(Debug, Clone)]
pub struct ChargedBattery {
    pub params: ModelParams,
    pub hamiltonian: ComplexMatrix,
    pub spectrum: Spectrum,
    pub rho_th: DensityMatrix,
    thermal_energy: f64,
}

impl ChargedBattery {
    pub fn new(params: &ModelParams) -> Result<Self, MetricsError> {
        params.validate()?;
        let hamiltonian = build_qb_hamiltonian(params);
        let spectrum = hermitian_eig(&hamiltonian)?;
        let rho_th = gibbs_from_spectrum(&spectrum, params.temperature)?;
        let thermal_energy = rho_th.matrix().trace_product(&hamiltonian)?.re;
        Ok(Self {
            params: *params,
            hamiltonian,
            spectrum,
            rho_th,
            thermal_energy,
        })
    }

    pub fn unitary(&self, t: f64) -> ChargingUnitary {
        charging_unitary_closed(self.params.axis, self.params.omega * t)
    }

    /// U(t) ρ_th U(t)†.
    pub fn state_at(&self, t: f64) -> DensityMatrix {
        evolve(&self.rho_th, &self.unitary(t)).expect("4×4 operands")
    }

    /// Trace-formula ergotropy at time t; equals the work against ρ_th.
    pub fn ergotropy_at(&self, t: f64) -> f64 {
        let rho = self.state_at(t);
        rho.matrix()
            .trace_product(&self.hamiltonian)
            .expect("4×4 operands")
            .re
            - self.thermal_energy
    }

    pub fn coherence_at(&self, t: f64) -> f64 {
        l1_coherence(&self.state_at(t))
    }

    pub fn capacity(&self, mode: CapacityMode) -> Result<f64, MetricsError> {
        capacity_numeric(&self.hamiltonian, &self.rho_th, mode)
    }

    pub fn breakdown(&self, t: f64) -> Result<ErgotropyBreakdown, MetricsError> {
        let rho = self.state_at(t);
        let spectral = ergotropy_spectral(&rho, &self.hamiltonian)?;
        let trace_formula = ergotropy_trace(&rho, &self.rho_th, &self.hamiltonian)?;
        let closed_form = match ergotropy_closed_form(&self.params, t) {
            Ok(v) => Some(v),
            Err(MetricsError::Regime(_)) => None,
            Err(e) => return Err(e),
        };
        let mut agreement = (spectral - trace_formula).abs();
        if let Some(c) = closed_form {
            agreement = agreement
                .max((c - spectral).abs())
                .max((c - trace_formula).abs());
        }
        Ok(ErgotropyBreakdown {
            spectral,
            trace_formula,
            closed_form,
            agreement,
        })
    }
}

/// All three ergotropy routes at time t.
pub fn ergotropy_breakdown(params: &ModelParams, t: f64) -> Result<ErgotropyBreakdown, MetricsError> {
    ChargedBattery::new(params)?.breakdown(t)
}

/// argmax over `t_grid` of W(t)/t with golden-section refinement; returns (t*, p*).
pub fn peak_average_power(params: &ModelParams, t_grid: &[f64]) -> Result<(f64, f64), MetricsError> {
    if t_grid.is_empty() {
        return Err(MetricsError::InvalidInput("empty time grid".into()));
    }
    let battery = ChargedBattery::new(params)?;
    let power = |t: f64| {
        if t > 0.0 {
            average_power(battery.ergotropy_at(t), t)
        } else {
            f64::NAN
        }
    };
    scan_then_refine(power, t_grid, GOLDEN_TOL)
        .ok_or_else(|| MetricsError::InvalidInput("time grid has no positive times".into()))
}
