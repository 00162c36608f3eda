//! One-dimensional bracketed searches shared by the extremum finders.

use crate::error::Result;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of `f` on `[a, b]`, stopping when the
/// bracket is narrower than `tol`. Returns `(x, f(x))`.
///
/// Assumes `f` is unimodal on the bracket; otherwise a local maximum is found.
pub fn golden_max<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > tol {
        // ties move toward the smaller abscissa
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    // the bracket ends are candidates too when the maximum sits on them
    for x in [lo, hi] {
        let fx = f(x)?;
        if fx > best.1 {
            best = (x, fx);
        }
    }
    Ok(best)
}

/// Golden-section search for a minimum; see [`golden_max`].
pub fn golden_min<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (x, v) = golden_max(|x| f(x).map(|v| -v), a, b, tol)?;
    Ok((x, -v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn parabola_peak() {
        let (x, v) = golden_max(|x| Ok(1.0 - (x - 0.3).powi(2)), 0.0, 1.0, 1e-9).unwrap();
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-8);
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn edge_maximum() {
        let (x, _) = golden_max(Ok, 0.0, 2.0, 1e-10).unwrap();
        assert_eq!(x, 2.0);
        let (x, _) = golden_min(Ok, 0.0, 2.0, 1e-10).unwrap();
        assert_eq!(x, 0.0);
    }
}
