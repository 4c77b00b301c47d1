//! Log-domain comparisons for thresholds of the form `a * |G|^(-x*phi)`.
//!
//! Every real-valued comparison against a power of the host size is done in
//! base-2 log space with a fixed tolerance of 2^-40: values whose logs differ
//! by at most the tolerance are treated as equal. Counts of zero map to
//! negative infinity.

/// Fixed equality tolerance in the log domain.
pub const LOG_TOL: f64 = 9.094947017729282e-13; // 2^-40

/// log2 of a nonnegative count; 0 maps to -inf.
#[inline]
pub fn log2_count(c: usize) -> f64 {
    if c == 0 {
        f64::NEG_INFINITY
    } else {
        (c as f64).log2()
    }
}

/// log2 of a positive real; nonpositive maps to -inf.
#[inline]
pub fn log2_pos(x: f64) -> f64 {
    if x > 0.0 {
        x.log2()
    } else {
        f64::NEG_INFINITY
    }
}

/// `a <= b` up to tolerance (logs).
#[inline]
pub fn le(a: f64, b: f64) -> bool {
    a <= b + LOG_TOL
}

/// `a < b` by more than the tolerance (logs).
#[inline]
pub fn lt(a: f64, b: f64) -> bool {
    a < b - LOG_TOL
}

#[inline]
pub fn ge(a: f64, b: f64) -> bool {
    le(b, a)
}

#[inline]
pub fn gt(a: f64, b: f64) -> bool {
    lt(b, a)
}

/// Rounds a fractional threshold up to a count, snapping values that sit
/// within 1e-9 (relative) of an integer. `ceil(0.4 * 10)` must be 4, not 5,
/// even though `0.4 * 10` is slightly above 4 in binary floating point.
pub fn ceil_count(x: f64) -> usize {
    debug_assert!(x >= 0.0 && x.is_finite());
    let r = x.round();
    let snapped = if (x - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r
    } else {
        x.ceil()
    };
    snapped.max(0.0) as usize
}

/// Floor with the same integer snapping as [`ceil_count`].
pub fn floor_count(x: f64) -> usize {
    debug_assert!(x >= 0.0 && x.is_finite());
    let r = x.round();
    let snapped = if (x - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r
    } else {
        x.floor()
    };
    snapped.max(0.0) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_treats_near_equal_as_equal() {
        assert!(le(1.0, 1.0));
        assert!(!lt(1.0, 1.0));
        assert!(le(1.0 + LOG_TOL / 2.0, 1.0));
        assert!(lt(0.0, 1.0));
    }

    #[test]
    fn neg_infinity_is_smallest() {
        let ninf = f64::NEG_INFINITY;
        assert!(le(ninf, ninf));
        assert!(!lt(ninf, ninf));
        assert!(lt(ninf, -1000.0));
        assert_eq!(log2_count(0), ninf);
        assert_eq!(log2_count(8), 3.0);
    }

    #[test]
    fn ceil_count_snaps_float_fuzz() {
        assert_eq!(ceil_count(0.4 * 10.0), 4);
        assert_eq!(ceil_count(2.236), 3);
        assert_eq!(ceil_count(0.0), 0);
        assert_eq!(floor_count(0.4 * 10.0), 4);
        assert_eq!(floor_count(2.9999999999), 3);
        assert_eq!(floor_count(2.9), 2);
    }
}
