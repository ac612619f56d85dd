//! The closed forms evaluated term by term in f64 overflow at low temperature
//! and large D_z; the guarded evaluation and the numeric pipeline do not.

use qbsim::metrics::{
    capacity_closed_form_with, ergotropy_closed_form_with, CapacityMode, ChargedBattery, ClosedFormEval,
};
use qbsim::model::ModelParams;
use qbsim::optimize::linspace;
use qbsim::sweep::{detect_threshold, refine_threshold};

fn base(dz: f64) -> ModelParams {
    ModelParams {
        gamma: 0.5,
        delta: 0.5,
        dz,
        theta: std::f64::consts::FRAC_PI_2,
        temperature: 0.01,
        ..ModelParams::default()
    }
}

fn literal_capacity(dz: f64) -> f64 {
    capacity_closed_form_with(&base(dz), ClosedFormEval::LiteralF64).unwrap_or(f64::NAN)
}

#[test]
fn literal_forms_turn_nan_past_the_overflow() {
    for dz in [1.0, 1.9] {
        let p = base(dz);
        assert!(literal_capacity(dz).is_finite(), "{dz}");
        assert!(ergotropy_closed_form_with(&p, 1.0, ClosedFormEval::LiteralF64).unwrap().is_finite());
    }
    for dz in [2.2, 3.0, 5.0] {
        let p = base(dz);
        assert!(literal_capacity(dz).is_nan(), "{dz}");
        assert!(ergotropy_closed_form_with(&p, 1.0, ClosedFormEval::LiteralF64)
            .map_or(true, f64::is_nan));
        // The guarded form still agrees with the numeric capacity.
        let exact = ChargedBattery::new(&p).unwrap().capacity(CapacityMode::Literal11).unwrap();
        let guarded = capacity_closed_form_with(&p, ClosedFormEval::Guarded).unwrap();
        assert!((exact - guarded).abs() < 1e-9 * exact.max(1.0), "{exact} vs {guarded}");
    }
}

#[test]
fn literal_capacity_curve_has_an_artificial_threshold() {
    let xs = linspace(0.0, 5.0, 101);
    let ys: Vec<f64> = xs.iter().map(|&x| literal_capacity(x)).collect();
    let coarse = detect_threshold(&xs, &ys).unwrap();
    let fine = refine_threshold(&coarse, literal_capacity, 1e-4);
    assert!((1.95..2.15).contains(&fine.threshold_x), "{fine:?}");

    let exact: Vec<f64> = xs
        .iter()
        .map(|&x| ChargedBattery::new(&base(x)).unwrap().capacity(CapacityMode::Literal11).unwrap())
        .collect();
    assert!(detect_threshold(&xs, &exact).is_err());
    assert!(exact.windows(2).all(|w| w[1] >= w[0]));
}
