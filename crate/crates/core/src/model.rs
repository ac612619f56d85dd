//! Heisenberg spin-chain Hamiltonians with DM/KSEA couplings and
//! site-dependent Zeeman fields.
//!
//! Basis order is |00⟩, |01⟩, |10⟩, |11⟩ (first site most significant).

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::linalg::{ComplexMatrix, I, ONE, ZERO};
use crate::tolerances::{MAX_CHAIN_SITES, PINNED_CONVENTION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// Pauli matrix with σz = diag(+1, −1).
pub fn pauli(k: Pauli) -> ComplexMatrix {
    match k {
        Pauli::X => ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]),
        Pauli::Y => ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]),
        Pauli::Z => ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]]),
    }
}

/// Direction of the global charging field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChargeAxis {
    X,
    #[default]
    Y,
}

impl ChargeAxis {
    pub fn pauli(self) -> Pauli {
        match self {
            ChargeAxis::X => Pauli::X,
            ChargeAxis::Y => Pauli::Y,
        }
    }
}

/// Normalization of the xy exchange term.
///
/// `Unit` builds `J[(1+γ)σxσx + (1−γ)σyσy]`, the normalization the thermal
/// and ergotropy closed forms are written for. `Quarter` builds the same
/// term with a `J/4` prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExchangeScale {
    #[default]
    Unit,
    Quarter,
}

impl ExchangeScale {
    pub fn factor(self) -> f64 {
        match self {
            ExchangeScale::Unit => 1.0,
            ExchangeScale::Quarter => 0.25,
        }
    }
}

/// Sign of σz used by the Hamiltonian builders.
///
/// `Standard`: σz = diag(+1, −1), so |0⟩ is the upper Zeeman level.
/// `Flipped`: σz = diag(−1, +1), so |1⟩ is the upper Zeeman level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinConvention {
    Standard,
    Flipped,
}

impl Default for SpinConvention {
    fn default() -> Self {
        PINNED_CONVENTION
    }
}

impl SpinConvention {
    pub fn sigma_z(self) -> ComplexMatrix {
        match self {
            SpinConvention::Standard => pauli(Pauli::Z),
            SpinConvention::Flipped => pauli(Pauli::Z).scale_real(-1.0),
        }
    }
}

macro_rules! impl_from_str {
    ($ty:ty, $($text:literal => $val:expr),+) => {
        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, String> {
                match s.to_ascii_lowercase().as_str() {
                    $($text => Ok($val),)+
                    other => Err(format!("unrecognized value `{other}`")),
                }
            }
        }
    };
}

impl_from_str!(ChargeAxis, "x" => ChargeAxis::X, "y" => ChargeAxis::Y);
impl_from_str!(ExchangeScale, "unit" => ExchangeScale::Unit, "quarter" => ExchangeScale::Quarter);
impl_from_str!(SpinConvention, "standard" => SpinConvention::Standard, "flipped" => SpinConvention::Flipped);

/// Every physical knob of the two-spin battery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelParams {
    /// xy-plane exchange coupling.
    pub j: f64,
    /// xy anisotropy γ.
    pub gamma: f64,
    /// z-axis coupling Δ.
    pub delta: f64,
    /// z component of the DM vector.
    pub dz: f64,
    /// z component of the KSEA tensor.
    pub gz: f64,
    /// Zeeman field magnitude.
    pub b: f64,
    /// Field inhomogeneity angle in [0, π/2]; site 1 sees B cosθ, site 2 B sinθ.
    pub theta: f64,
    /// Temperature with k_B = 1.
    pub temperature: f64,
    /// Charging field strength Ω.
    pub omega: f64,
    pub axis: ChargeAxis,
    pub exchange: ExchangeScale,
    pub convention: SpinConvention,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            j: 1.0,
            gamma: 0.0,
            delta: 0.0,
            dz: 0.0,
            gz: 0.0,
            b: 1.0,
            theta: 0.0,
            temperature: 0.1,
            omega: 1.0,
            axis: ChargeAxis::Y,
            exchange: ExchangeScale::Unit,
            convention: PINNED_CONVENTION,
        }
    }
}

/// Names accepted by [`ModelParams::set`] and [`ModelParams::get`].
pub const PARAM_NAMES: [&str; 9] = [
    "j",
    "gamma",
    "delta",
    "dz",
    "gz",
    "b",
    "theta",
    "temperature",
    "omega",
];

const THETA_SLACK: f64 = 1e-12;

impl ModelParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        let fields = [
            ("j", self.j),
            ("gamma", self.gamma),
            ("delta", self.delta),
            ("dz", self.dz),
            ("gz", self.gz),
            ("b", self.b),
            ("theta", self.theta),
            ("temperature", self.temperature),
            ("omega", self.omega),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(ModelError::InvalidParameter {
                    name,
                    reason: format!("must be finite, got {value}"),
                });
            }
        }
        if self.temperature <= 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "temperature",
                reason: "temperature must be > 0".into(),
            });
        }
        if self.omega <= 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "omega",
                reason: "omega must be > 0".into(),
            });
        }
        if self.theta < -THETA_SLACK || self.theta > FRAC_PI_2 + THETA_SLACK {
            return Err(ModelError::InvalidParameter {
                name: "theta",
                reason: format!("theta must lie in [0, π/2], got {}", self.theta),
            });
        }
        Ok(())
    }

    /// Exchange coupling after the normalization prefactor, i.e. the `J`
    /// that appears in the closed-form expressions.
    pub fn effective_j(&self) -> f64 {
        self.j * self.exchange.factor()
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "j" => self.j,
            "gamma" => self.gamma,
            "delta" => self.delta,
            "dz" => self.dz,
            "gz" => self.gz,
            "b" => self.b,
            "theta" => self.theta,
            "temperature" => self.temperature,
            "omega" => self.omega,
            _ => return None,
        })
    }

    /// Sets a numeric field by name; returns false for unknown names.
    pub fn set(&mut self, name: &str, value: f64) -> bool {
        let slot = match name {
            "j" => &mut self.j,
            "gamma" => &mut self.gamma,
            "delta" => &mut self.delta,
            "dz" => &mut self.dz,
            "gz" => &mut self.gz,
            "b" => &mut self.b,
            "theta" => &mut self.theta,
            "temperature" => &mut self.temperature,
            "omega" => &mut self.omega,
            _ => return false,
        };
        *slot = value;
        true
    }

    /// `(name, value)` pairs of every field, in a fixed order.
    pub fn snapshot(&self) -> Vec<(&'static str, String)> {
        let mut out: Vec<(&'static str, String)> = PARAM_NAMES
            .iter()
            .map(|&n| (n, format!("{:.16e}", self.get(n).unwrap_or(f64::NAN))))
            .collect();
        out.push(("axis", format!("{:?}", self.axis).to_lowercase()));
        out.push(("exchange", format!("{:?}", self.exchange).to_lowercase()));
        out.push(("convention", format!("{:?}", self.convention).to_lowercase()));
        out
    }
}

/// Heisenberg subfamilies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelClass {
    Ising,
    XX,
    XXZ,
    XXX,
    XY,
    XYZ,
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

const CLASS_TOL: f64 = 1e-12;

/// Classifies (γ, Δ, J) into a Heisenberg subfamily.
pub fn classify_model(params: &ModelParams) -> Result<ModelClass, ModelError> {
    let (g, d, j) = (params.gamma, params.delta, params.j);
    let eq = |a: f64, b: f64| (a - b).abs() <= CLASS_TOL;
    let class = if eq(g.abs(), 1.0) && eq(d, 0.0) {
        Some(ModelClass::Ising)
    } else if eq(g, 0.0) {
        if eq(d, 0.0) {
            Some(ModelClass::XX)
        } else if eq(d, j) {
            Some(ModelClass::XXX)
        } else {
            Some(ModelClass::XXZ)
        }
    } else if g > 0.0 && g < 1.0 {
        if eq(d, 0.0) {
            Some(ModelClass::XY)
        } else {
            Some(ModelClass::XYZ)
        }
    } else {
        None
    };
    class.ok_or(ModelError::Unclassified {
        gamma: g,
        delta: d,
        j,
    })
}

/// Per-term prefactors of the nearest-neighbour bond.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BondPrefactors {
    pub exchange: f64,
    pub z_coupling: f64,
    pub dm: f64,
    pub ksea: f64,
}

impl BondPrefactors {
    /// Global 1/4 on every bond term.
    pub const CHAIN: Self = Self {
        exchange: 0.25,
        z_coupling: 0.25,
        dm: 0.25,
        ksea: 0.25,
    };

    /// Prefactors of the two-spin battery Hamiltonian for a given exchange scale.
    pub fn two_spin(scale: ExchangeScale) -> Self {
        Self {
            exchange: scale.factor(),
            z_coupling: 1.0,
            dm: 1.0,
            ksea: 1.0,
        }
    }
}

/// Operator on `n` sites with single-site operators placed at the given positions.
fn embed(n: usize, ops: &[(usize, &ComplexMatrix)]) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    let mut out = ComplexMatrix::identity(1);
    for site in 0..n {
        let op = ops
            .iter()
            .find(|(s, _)| *s == site)
            .map(|(_, m)| *m)
            .unwrap_or(&id);
        out = out.kron(op);
    }
    out
}

fn accumulate(acc: &mut ComplexMatrix, term: &ComplexMatrix, coeff: f64) {
    if coeff != 0.0 {
        acc.add_scaled(term, coeff);
    }
}

/// Bond operator between sites `i` and `i+1` of an `n`-site chain.
fn bond(params: &ModelParams, pre: BondPrefactors, n: usize, i: usize) -> ComplexMatrix {
    let (sx, sy) = (pauli(Pauli::X), pauli(Pauli::Y));
    let sz = params.convention.sigma_z();
    let dim = 1 << n;
    let mut h = ComplexMatrix::zeros(dim);
    let pair = |a: &ComplexMatrix, b: &ComplexMatrix| embed(n, &[(i, a), (i + 1, b)]);
    let (xx, yy, zz) = (pair(&sx, &sx), pair(&sy, &sy), pair(&sz, &sz));
    let (xy, yx) = (pair(&sx, &sy), pair(&sy, &sx));

    let jx = pre.exchange * params.j * (1.0 + params.gamma);
    let jy = pre.exchange * params.j * (1.0 - params.gamma);
    accumulate(&mut h, &xx, jx);
    accumulate(&mut h, &yy, jy);
    accumulate(&mut h, &zz, pre.z_coupling * params.delta);
    // D·(σ_i × σ_{i+1}) with D = (0, 0, D_z)
    accumulate(&mut h, &xy, pre.dm * params.dz);
    accumulate(&mut h, &yx, -pre.dm * params.dz);
    // σ_i·Γ·σ_{i+1} with only Γ_xy = Γ_yx = G_z
    accumulate(&mut h, &xy, pre.ksea * params.gz);
    accumulate(&mut h, &yx, pre.ksea * params.gz);
    h
}

/// Default per-site z fields of an `n`-site chain: B cosθ on odd sites
/// (1-based), B sinθ on even sites.
pub fn alternating_fields(params: &ModelParams, n: usize) -> Vec<f64> {
    (0..n)
        .map(|s| {
            if s % 2 == 0 {
                params.b * params.theta.cos()
            } else {
                params.b * params.theta.sin()
            }
        })
        .collect()
}

/// Nearest-neighbour chain Hamiltonian on `n` sites with the global 1/4
/// bond prefactor and alternating Zeeman fields.
pub fn build_chain_hamiltonian(params: &ModelParams, n: usize) -> Result<ComplexMatrix, ModelError> {
    let fields = alternating_fields(params, n);
    build_chain_hamiltonian_with(params, &fields, BondPrefactors::CHAIN)
}

/// Chain Hamiltonian with explicit per-site z fields and bond prefactors.
///
/// The Zeeman part sums `B_j σ_j + B_{j+1} σ_{j+1}` over every bond, so
/// interior sites receive their field twice.
pub fn build_chain_hamiltonian_with(
    params: &ModelParams,
    fields: &[f64],
    pre: BondPrefactors,
) -> Result<ComplexMatrix, ModelError> {
    let n = fields.len();
    if n < 2 {
        return Err(ModelError::TooFewSites { n });
    }
    if n > MAX_CHAIN_SITES {
        return Err(ModelError::DimensionGuard {
            n,
            max: MAX_CHAIN_SITES,
        });
    }
    let sz = params.convention.sigma_z();
    let mut h = ComplexMatrix::zeros(1 << n);
    for i in 0..n - 1 {
        h = &h + &bond(params, pre, n, i);
        accumulate(&mut h, &embed(n, &[(i, &sz)]), fields[i]);
        accumulate(&mut h, &embed(n, &[(i + 1, &sz)]), fields[i + 1]);
    }
    Ok(h)
}

/// The 4×4 two-spin battery Hamiltonian.
pub fn build_qb_hamiltonian(params: &ModelParams) -> ComplexMatrix {
    let fields = [
        params.b * params.theta.cos(),
        params.b * params.theta.sin(),
    ];
    build_chain_hamiltonian_with(params, &fields, BondPrefactors::two_spin(params.exchange))
        .expect("two sites is always within the guard")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_PI_4;

    fn zeroed() -> ModelParams {
        ModelParams {
            j: 0.0,
            b: 0.0,
            ..ModelParams::default()
        }
    }

    #[test]
    fn pauli_matrices() {
        assert_eq!(
            pauli(Pauli::X),
            ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
        );
        assert_eq!(pauli(Pauli::Y), ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]));
        assert_eq!(pauli(Pauli::Z), ComplexMatrix::real_diagonal(&[1.0, -1.0]));
    }

    #[test]
    fn zero_couplings_give_zero_chain() {
        let h = build_chain_hamiltonian(&zeroed(), 2).unwrap();
        assert_eq!(h, ComplexMatrix::zeros(4));
    }

    #[test]
    fn chain_exchange_only_has_half_on_inner_block() {
        let p = ModelParams { j: 1.0, ..zeroed() };
        let h = build_chain_hamiltonian(&p, 2).unwrap();
        // (σxσx + σyσy)/4 couples |01⟩ and |10⟩ with 1/2
        let mut expected = ComplexMatrix::zeros(4);
        expected[(1, 2)] = Complex64::new(0.5, 0.0);
        expected[(2, 1)] = Complex64::new(0.5, 0.0);
        assert_eq!(h, expected);
    }

    #[test]
    fn chain_of_three_is_sum_of_embedded_pairs() {
        let p = ModelParams {
            j: 1.0,
            gamma: 0.3,
            delta: 0.7,
            dz: 0.4,
            gz: -0.2,
            b: 1.0,
            theta: 0.6,
            ..ModelParams::default()
        };
        let fields = [0.9, -0.4, 1.3];
        let h3 = build_chain_hamiltonian_with(&p, &fields, BondPrefactors::CHAIN).unwrap();
        let h12 = build_chain_hamiltonian_with(&p, &fields[..2], BondPrefactors::CHAIN).unwrap();
        let h23 = build_chain_hamiltonian_with(&p, &fields[1..], BondPrefactors::CHAIN).unwrap();
        let id = ComplexMatrix::identity(2);
        let expected = &h12.kron(&id) + &id.kron(&h23);
        assert!(h3.max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn chain_guards() {
        let p = ModelParams::default();
        assert!(matches!(
            build_chain_hamiltonian(&p, 13),
            Err(ModelError::DimensionGuard { n: 13, .. })
        ));
        assert!(matches!(
            build_chain_hamiltonian(&p, 1),
            Err(ModelError::TooFewSites { n: 1 })
        ));
    }

    #[test]
    fn pure_zeeman_single_spin() {
        let p = ModelParams {
            convention: SpinConvention::Standard,
            ..zeroed()
        };
        let p = ModelParams { b: 1.0, theta: 0.0, ..p };
        assert_eq!(
            build_qb_hamiltonian(&p),
            ComplexMatrix::real_diagonal(&[1.0, 1.0, -1.0, -1.0])
        );
        let flipped = ModelParams {
            convention: SpinConvention::Flipped,
            ..p
        };
        assert_eq!(
            build_qb_hamiltonian(&flipped),
            ComplexMatrix::real_diagonal(&[-1.0, -1.0, 1.0, 1.0])
        );
    }

    #[test]
    fn quarter_scale_exchange_block() {
        let p = ModelParams {
            j: 1.0,
            exchange: ExchangeScale::Quarter,
            ..zeroed()
        };
        let h = build_qb_hamiltonian(&p);
        let mut expected = ComplexMatrix::zeros(4);
        expected[(1, 2)] = Complex64::new(0.5, 0.0);
        expected[(2, 1)] = Complex64::new(0.5, 0.0);
        assert_eq!(h, expected);
    }

    #[test]
    fn chain_with_two_spin_prefactors_matches_qb_hamiltonian() {
        // The chain builder's global 1/4 differs from the two-spin battery
        // Hamiltonian; swapping in the two-spin prefactors recovers it.
        for exchange in [ExchangeScale::Unit, ExchangeScale::Quarter] {
            let p = ModelParams {
                j: 0.8,
                gamma: 0.4,
                delta: -0.3,
                dz: 1.2,
                gz: 0.7,
                theta: 0.3,
                exchange,
                ..ModelParams::default()
            };
            let fields = [p.b * p.theta.cos(), p.b * p.theta.sin()];
            let chain =
                build_chain_hamiltonian_with(&p, &fields, BondPrefactors::two_spin(exchange)).unwrap();
            assert_eq!(chain, build_qb_hamiltonian(&p));
            let literal = build_chain_hamiltonian(&p, 2).unwrap();
            assert!(literal.max_abs_diff(&build_qb_hamiltonian(&p)).unwrap() > 0.1);
        }
    }

    #[test]
    fn classification_table() {
        let with = |gamma, delta, j| ModelParams {
            gamma,
            delta,
            j,
            ..ModelParams::default()
        };
        assert_eq!(classify_model(&with(0.0, 0.0, 1.0)), Ok(ModelClass::XX));
        assert_eq!(classify_model(&with(0.5, 0.0, 1.0)), Ok(ModelClass::XY));
        assert_eq!(classify_model(&with(0.0, 1.0, 1.0)), Ok(ModelClass::XXX));
        assert_eq!(classify_model(&with(0.0, 0.5, 1.0)), Ok(ModelClass::XXZ));
        assert_eq!(classify_model(&with(0.5, 0.5, 1.0)), Ok(ModelClass::XYZ));
        assert_eq!(classify_model(&with(1.0, 0.0, 1.0)), Ok(ModelClass::Ising));
        assert_eq!(classify_model(&with(-1.0, 0.0, 1.0)), Ok(ModelClass::Ising));
        assert!(classify_model(&with(-0.5, 0.0, 1.0)).is_err());
        assert!(classify_model(&with(1.5, 0.0, 1.0)).is_err());
    }

    #[test]
    fn validation_messages() {
        let p = ModelParams {
            temperature: 0.0,
            ..ModelParams::default()
        };
        let err = p.validate().unwrap_err().to_string();
        assert!(err.contains("temperature must be > 0"), "{err}");
        let p = ModelParams {
            theta: 2.0,
            ..ModelParams::default()
        };
        assert!(p.validate().is_err());
        let p = ModelParams {
            theta: FRAC_PI_4,
            ..ModelParams::default()
        };
        assert!(p.validate().is_ok());
    }
}
