//! Phase lifts of complex numbers.
//!
//! A nonzero `z` lies in the half-plane of shift `k` when `(-1)^k z` is in
//! `ℍ = {Im > 0} ∪ ℝ<0`. Its phase is then the unique lift of `arg z / π` in
//! `(k, k+1]`.

use num_complex::Complex64;

#[inline]
pub(crate) fn parity_sign(k: i32) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `Im(conj(a) · b)`. Positive iff `arg b > arg a` for `a, b` in a common
/// closed half-plane.
#[inline]
pub fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Exact membership test for the half-plane of shift `k`.
pub fn in_half_plane(z: Complex64, k: i32) -> bool {
    let s = parity_sign(k);
    let (re, im) = (s * z.re, s * z.im);
    im > 0.0 || (im == 0.0 && re < 0.0)
}

/// Lift of `arg z / π` into `(k, k+1]`, or `None` when `z` is outside the
/// half-plane of shift `k` (including `z = 0`).
pub fn lift_phase(z: Complex64, k: i32) -> Option<f64> {
    if !in_half_plane(z, k) {
        return None;
    }
    let s = parity_sign(k);
    // +0.0 normalises a negative zero imaginary part so atan2 returns +π.
    let im = s * z.im + 0.0;
    let re = s * z.re;
    Some(k as f64 + libm::atan2(im, re) / core::f64::consts::PI)
}

/// Limit of the phases of `z` in `[k, k+1]` for a path approaching `z` from
/// inside the half-plane of shift `k`. Positive-real limits (after rotation)
/// map to `k`, negative-real ones to `k + 1`. `z` must be nonzero.
pub fn closure_phase(z: Complex64, k: i32) -> f64 {
    let s = parity_sign(k);
    let im = s * z.im + 0.0;
    let re = s * z.re;
    if im < 0.0 {
        // Only reachable through rounding when the path is tangent to the
        // positive real axis; clamp to the boundary it approaches.
        return k as f64;
    }
    k as f64 + libm::atan2(im, re) / core::f64::consts::PI
}

/// Principal phase `arg z / π` in `(-1, 1]`.
pub fn principal_phase(z: Complex64) -> f64 {
    libm::atan2(z.im + 0.0, z.re) / core::f64::consts::PI
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lifts_land_in_their_window() {
        assert_eq!(lift_phase(c(0.0, 1.0), 0), Some(0.5));
        assert_eq!(lift_phase(c(-1.0, 0.0), 0), Some(1.0));
        assert_eq!(lift_phase(c(-1.0, -0.0), 0), Some(1.0));
        assert_eq!(lift_phase(c(1.0, 0.0), 0), None);
        assert_eq!(lift_phase(c(0.0, -1.0), 0), None);
        assert_eq!(lift_phase(c(0.0, 0.0), 0), None);
        assert_eq!(lift_phase(c(0.0, -1.0), 1), Some(1.5));
        assert_eq!(lift_phase(c(1.0, 0.0), 1), Some(2.0));
        assert_eq!(lift_phase(c(-1.0, 0.0), 2), Some(3.0));
        assert_eq!(lift_phase(c(0.0, 1.0), -2), Some(-1.5));
    }

    #[test]
    fn closure_phase_hits_both_boundaries() {
        assert_eq!(closure_phase(c(2.0, 0.0), 0), 0.0);
        assert_eq!(closure_phase(c(-2.0, 0.0), 0), 1.0);
        assert_eq!(closure_phase(c(-2.0, 0.0), 1), 1.0);
    }

    #[test]
    fn cross_orders_by_argument() {
        assert!(cross(c(0.0, 1.0), c(-1.0, 0.0)) > 0.0);
        assert!(cross(c(-1.0, 0.0), c(0.0, 1.0)) < 0.0);
        assert_eq!(cross(c(-1.0, 0.0), c(-2.0, 0.0)), 0.0);
    }
}
