//! Float comparison used by the conformance tests and the verify harness.
//!
//! A pair of values passes when the absolute difference is below a floor
//! (guards results near zero, where relative error is meaningless) or the
//! relative difference is below the per-precision bound.

/// Relative bound for `f64` results.
pub const F64_REL: f64 = 1e-12;
/// Absolute floor for `f64` results.
pub const F64_ABS: f64 = 1e-14;
/// Relative bound for `f32` results.
pub const F32_REL: f64 = 1e-5;
/// Absolute floor for `f32` results.
pub const F32_ABS: f64 = 1e-6;

/// True when `a` and `b` agree within `rel` relative or `abs` absolute error.
#[inline]
pub fn within(a: f64, b: f64, rel: f64, abs: f64) -> bool {
    let d = (a - b).abs();
    d <= abs || d <= rel * a.abs().max(b.abs())
}

#[inline]
pub fn close_f64(a: f64, b: f64) -> bool {
    within(a, b, F64_REL, F64_ABS)
}

#[inline]
pub fn close_f32(a: f32, b: f32) -> bool {
    within(a as f64, b as f64, F32_REL, F32_ABS)
}

/// Index of the first pair that disagrees, if any.
pub fn first_mismatch_f64(a: &[f64], b: &[f64]) -> Option<usize> {
    debug_assert_eq!(a.len(), b.len());
    (0..a.len().min(b.len())).find(|&i| !close_f64(a[i], b[i]))
}

/// See [`first_mismatch_f64`].
pub fn first_mismatch_f32(a: &[f32], b: &[f32]) -> Option<usize> {
    debug_assert_eq!(a.len(), b.len());
    (0..a.len().min(b.len())).find(|&i| !close_f32(a[i], b[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_covers_cancellation_near_zero() {
        assert!(close_f64(0.0, 5e-15));
        assert!(!close_f64(0.0, 5e-13));
        assert!(close_f32(0.0, 5e-7));
    }

    #[test]
    fn relative_bound_scales_with_magnitude() {
        assert!(close_f64(1e9, 1e9 * (1.0 + 5e-13)));
        assert!(!close_f64(1e9, 1e9 * (1.0 + 5e-11)));
    }
}
