use serde::{Deserialize, Serialize};

use crate::error::SweepError;
use crate::tolerances::{THRESHOLD_FRACTION, THRESHOLD_MIN_POINTS};

/// Location of a collapse of a 1-D series to (nearly) zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub threshold_x: f64,
    /// Largest value of the series.
    pub pre_peak: f64,
    /// Mean of the values after the collapse.
    pub post_mean: f64,
    /// The last sample above the cut and the first one after it.
    pub window: [f64; 2],
}

impl ThresholdReport {
    /// Values at or below this count as collapsed.
    pub fn cut(&self) -> f64 {
        THRESHOLD_FRACTION * self.pre_peak
    }
}

/// Finds the largest x whose y exceeds 1% of the series peak while every
/// later y stays at or below it. NaN and ±inf count as collapsed.
///
/// The coarse threshold is the midpoint of the bracketing sample pair.
pub fn detect_threshold(xs: &[f64], ys: &[f64]) -> Result<ThresholdReport, SweepError> {
    if xs.len() != ys.len() || xs.len() < THRESHOLD_MIN_POINTS {
        return Err(SweepError::SeriesShape {
            min: THRESHOLD_MIN_POINTS,
            xs: xs.len(),
            ys: ys.len(),
        });
    }
    let no_threshold = SweepError::NoThreshold {
        fraction: THRESHOLD_FRACTION,
    };
    let peak = ys.iter().copied().filter(|y| y.is_finite()).fold(f64::NEG_INFINITY, f64::max);
    if !(peak > 0.0) {
        return Err(no_threshold);
    }
    let cut = THRESHOLD_FRACTION * peak;
    let last_above = ys.iter().rposition(|&y| y.is_finite() && y > cut).ok_or_else(|| no_threshold.clone())?;
    if last_above + 1 == ys.len() {
        return Err(no_threshold);
    }
    let tail: Vec<f64> = ys[last_above + 1..].iter().copied().filter(|y| y.is_finite()).collect();
    let post_mean = if tail.is_empty() {
        0.0
    } else {
        tail.iter().sum::<f64>() / tail.len() as f64
    };
    let (lo, hi) = (xs[last_above], xs[last_above + 1]);
    Ok(ThresholdReport {
        threshold_x: 0.5 * (lo + hi),
        pre_peak: peak,
        post_mean,
        window: [lo, hi],
    })
}

/// Bisects the coarse window on `f` until it is narrower than `tol`.
pub fn refine_threshold<F: FnMut(f64) -> f64>(report: &ThresholdReport, mut f: F, tol: f64) -> ThresholdReport {
    let cut = report.cut();
    let [mut lo, mut hi] = report.window;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let y = f(mid);
        if y.is_finite() && y > cut {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ThresholdReport {
        threshold_x: 0.5 * (lo + hi),
        ..*report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_series() {
        let xs = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let ys = [5.0, 5.0, 5.0, 0.0, 0.0, 0.0];
        let r = detect_threshold(&xs, &ys).unwrap();
        assert!(r.threshold_x > 3.0 && r.threshold_x <= 4.0);
        assert_eq!(r.window, [3.0, 4.0]);
        assert_eq!(r.pre_peak, 5.0);
        assert_eq!(r.post_mean, 0.0);
    }

    #[test]
    fn oscillation_before_collapse() {
        let xs: Vec<f64> = (0..10).map(f64::from).collect();
        let ys = [1.0, 2.0, 3.0, 0.0, 3.5, 0.001, 0.0, 0.0, 0.0, 0.0];
        let r = detect_threshold(&xs, &ys).unwrap();
        assert_eq!(r.window, [4.0, 5.0]);
        assert!(r.post_mean <= r.cut());
    }

    #[test]
    fn no_collapse() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        assert!(matches!(
            detect_threshold(&xs, &[1.0, 2.0, 3.0, 4.0]),
            Err(SweepError::NoThreshold { .. })
        ));
        assert!(matches!(
            detect_threshold(&xs, &[0.0; 4]),
            Err(SweepError::NoThreshold { .. })
        ));
    }

    #[test]
    fn overflow_counts_as_collapse() {
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0];
        let r = detect_threshold(&xs, &[1.0, 2.0, f64::INFINITY, f64::NAN, f64::NAN]).unwrap();
        assert_eq!(r.window, [1.0, 2.0]);
        assert_eq!(r.pre_peak, 2.0);
    }

    #[test]
    fn nan_tail_counts_as_collapsed() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let r = detect_threshold(&xs, &[1.0, 2.0, f64::NAN, f64::NAN]).unwrap();
        assert_eq!(r.window, [1.0, 2.0]);
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            detect_threshold(&[0.0, 1.0], &[1.0, 0.0]),
            Err(SweepError::SeriesShape { .. })
        ));
        assert!(detect_threshold(&[0.0, 1.0, 2.0], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn bisection_finds_step() {
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0];
        let f = |x: f64| if x < 2.3456 { 1.0 } else { 0.0 };
        let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        let coarse = detect_threshold(&xs, &ys).unwrap();
        let fine = refine_threshold(&coarse, f, 1e-4);
        assert!((fine.threshold_x - 2.3456).abs() < 1e-4);
        assert!(fine.window[0] < fine.threshold_x && fine.threshold_x <= fine.window[1]);
    }
}
