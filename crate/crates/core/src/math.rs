use num_complex::Complex64;

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub(crate) fn cabs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

/// `z / |z|`, or 1 for `z == 0`.
#[inline]
pub(crate) fn phase(z: Complex64) -> Complex64 {
    let r = cabs(z);
    if r == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        z / r
    }
}

/// Sums `term(0) + ... + term(n - 1)` by balanced pairwise reduction over
/// ascending index ranges, so the result does not depend on how the work is
/// later scheduled. Returns `None` for `n == 0`.
pub fn pairwise_sum<T>(
    n: usize,
    term: &impl Fn(usize) -> T,
    add: &impl Fn(T, T) -> T,
) -> Option<T> {
    fn go<T>(lo: usize, hi: usize, term: &impl Fn(usize) -> T, add: &impl Fn(T, T) -> T) -> T {
        if hi - lo == 1 {
            return term(lo);
        }
        let mid = lo + (hi - lo) / 2;
        let left = go(lo, mid, term, add);
        let right = go(mid, hi, term, add);
        add(left, right)
    }
    if n == 0 {
        None
    } else {
        Some(go(0, n, term, add))
    }
}
