//! One-dimensional search routines shared by the Chernoff, `L(ε)` and root
//! solvers.

/// Location and value of a minimum found by [`golden_section_min`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (sqrt(5) - 1) / 2

/// Golden-section search for the minimum of a unimodal `f` on `[lo, hi]`.
///
/// Iterates until the bracket is narrower than `tol`. Both endpoints are
/// evaluated as well, so a minimum sitting on the boundary is returned exactly.
pub fn golden_section_min<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Minimum
where
    F: FnMut(f64) -> f64,
{
    debug_assert!(lo <= hi);
    let mut best = Minimum {
        x: lo,
        value: f(lo),
    };
    let f_hi = f(hi);
    if f_hi < best.value {
        best = Minimum { x: hi, value: f_hi };
    }
    if hi - lo <= tol {
        return best;
    }

    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    for (x, value) in [(c, fc), (d, fd)] {
        if value < best.value {
            best = Minimum { x, value };
        }
    }
    best
}

/// Bisection for `f(x) = target` where `f` is nondecreasing on `[lo, hi]`.
///
/// `f(hi)` may be `+inf`; only the sign of `f(mid) - target` is used. Stops when
/// the bracket is narrower than `tol` and returns its midpoint.
pub fn bisect_increasing<F>(mut f: F, target: f64, lo: f64, hi: f64, tol: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if f(mid) < target {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
