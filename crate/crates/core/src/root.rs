//! Bisection for monotone scalar functions.

/// Iteration cap. Each step halves the bracket, so float precision is
/// exhausted long before this.
pub(crate) const MAX_ITER: usize = 200;

/// Find `x` in `[lo, hi]` with `f(x) = target`, where `f` is monotone on the
/// bracket (direction inferred from the endpoints).
///
/// Runs until the bracket can no longer be split in floating point, then
/// returns whichever endpoint has the smaller residual.
pub(crate) fn bisect_monotone<F>(f: F, target: f64, mut lo: f64, mut hi: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == target {
        return lo;
    }
    if f_hi == target {
        return hi;
    }
    let increasing = f_hi >= f_lo;
    let (mut r_lo, mut r_hi) = (f_lo - target, f_hi - target);

    for _ in 0..MAX_ITER {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let r = f(mid) - target;
        if r == 0.0 {
            return mid;
        }
        // below target on the increasing branch means the root is to the right
        if (r < 0.0) == increasing {
            lo = mid;
            r_lo = r;
        } else {
            hi = mid;
            r_hi = r;
        }
    }
    if r_lo.abs() <= r_hi.abs() {
        lo
    } else {
        hi
    }
}
