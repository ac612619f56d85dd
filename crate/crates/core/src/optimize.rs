//! One-dimensional maximization: grid scan followed by golden-section refinement.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of `f` on [lo, hi].
///
/// Returns the best point seen (including the end points) and its value.
pub fn golden_section_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut best = (a, f(a));
    let fb = f(b);
    if fb > best.1 {
        best = (b, fb);
    }
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    for (x, fx) in [(x1, f1), (x2, f2)] {
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Evaluates `f` on `grid`, then refines around the best grid point with a
/// golden-section search on the bracket formed by its neighbours.
///
/// NaN values are never selected. Returns `None` when every value is NaN or
/// the grid is empty.
pub fn scan_then_refine<F: FnMut(f64) -> f64>(mut f: F, grid: &[f64], tol: f64) -> Option<(f64, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &x) in grid.iter().enumerate() {
        let v = f(x);
        if !v.is_nan() && best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    let (i, v) = best?;
    let lo = grid[i.saturating_sub(1)];
    let hi = grid[(i + 1).min(grid.len() - 1)];
    if lo == hi {
        return Some((grid[i], v));
    }
    let (x, fx) = golden_section_max(
        |x| {
            let y = f(x);
            if y.is_nan() {
                f64::NEG_INFINITY
            } else {
                y
            }
        },
        lo,
        hi,
        tol,
    );
    Some(if fx > v { (x, fx) } else { (grid[i], v) })
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}
