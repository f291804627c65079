//! One-dimensional maximization helpers.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Index of the largest of `f` at `n` uniform interior samples of `(lo, hi)`,
/// returned with the bracket formed by its two neighbours.
pub fn scan_bracket(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> (f64, f64) {
    let step = (hi - lo) / (n + 1) as f64;
    let mut best = (1, f64::NEG_INFINITY);
    for k in 1..=n {
        let v = f(lo + step * k as f64);
        if v > best.1 {
            best = (k, v);
        }
    }
    let k = best.0 as f64;
    (lo + step * (k - 1.0), lo + step * (k + 1.0))
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `width`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> f64 {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > width {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
        if x1 >= x2 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Bisection for a sign change of `g` from positive at `lo` to negative at
/// `hi`. Returns `None` when the endpoints do not bracket such a change.
pub fn bisect_descending(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    if !(g(lo) > 0.0 && g(hi) < 0.0) {
        return None;
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Some(mid);
        }
        let v = g(mid);
        if v > 0.0 {
            lo = mid;
        } else if v < 0.0 {
            hi = mid;
        } else {
            return Some(mid);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn finds_parabola_peak() {
        let f = |x: f64| -(x - 0.3).powi(2);
        let (lo, hi) = scan_bracket(f, 0.0, 1.0, 100);
        assert!(lo < 0.3 && 0.3 < hi);
        assert_relative_eq!(golden_section_max(f, lo, hi, 1e-12), 0.3, epsilon = 1e-7);
        let root = bisect_descending(|x| -2.0 * (x - 0.3), lo, hi).unwrap();
        assert_relative_eq!(root, 0.3, epsilon = 1e-15);
    }

    #[test]
    fn bisection_needs_a_bracket() {
        assert_eq!(bisect_descending(|x| x, 0.1, 1.0), None);
    }
}
