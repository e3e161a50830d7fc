//! Integration contours and variable-change maps.
//!
//! Each contour is a map u -> t(u) from the real line into the complex
//! plane, returned together with dt/du so integrands can be composed as
//! f(t(u)) t'(u) and fed straight to the summation engine.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::quadrature::Complex;

/// A contour point t(u) together with the derivative dt/du.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourPoint {
    pub t: Complex,
    pub dt: Complex,
}

/// tanh u and its derivative sech^2 u.
///
/// The derivative is computed as 1/cosh^2 so it underflows cleanly to zero
/// for large |u| instead of overflowing.
pub fn map_tanh(u: f64) -> (f64, f64) {
    let sech = 1.0 / u.cosh();
    (u.tanh(), sech * sech)
}

/// sinh map for tail acceleration: u = sinh v compresses slowly decaying
/// tails double-exponentially.
pub fn accel_sinh(v: f64) -> (f64, f64) {
    (v.sinh(), v.cosh())
}

/// Cubic map for tail acceleration: u = v^3. Mild compression, flat at the
/// origin (the derivative vanishes there).
pub fn accel_cubic(v: f64) -> (f64, f64) {
    (v * v * v, 3.0 * v * v)
}

/// Path for the rotated modified Bessel integral: t = sinh u + i(pi/2)tanh u.
///
/// Runs along the real axis near the origin and bends onto the horizontal
/// lines Im t = +-pi/2, where exp(ix cosh t) decays instead of oscillating.
pub fn contour_rotated_k(u: f64) -> ContourPoint {
    let (th, dth) = map_tanh(u);
    ContourPoint {
        t: Complex::new(u.sinh(), FRAC_PI_2 * th),
        dt: Complex::new(u.cosh(), FRAC_PI_2 * dth),
    }
}

/// Saddle path for the modified Bessel contour integral:
/// t = cosh u + c + i pi tanh u, with `c` placed by [`stationary_phase_c`].
pub fn contour_saddle_i(u: f64, c: f64) -> ContourPoint {
    let (th, dth) = map_tanh(u);
    ContourPoint {
        t: Complex::new(u.cosh() + c, PI * th),
        dt: Complex::new(u.sinh(), PI * dth),
    }
}

/// Offset that puts the saddle of exp(x cosh t - nu t) at u = 0:
/// c = asinh(nu/x) - 1.
pub fn stationary_phase_c(nu: f64, x: f64) -> f64 {
    (nu / x).asinh() - 1.0
}

/// Hankel-style loop for the reciprocal gamma function:
/// t = 2 - cosh u + i sinh u.
///
/// Starts at Re t = -infinity below the real axis, loops around the origin
/// through t = 1, and returns above it; Re t never exceeds 1.
pub fn contour_hankel_gamma(u: f64) -> ContourPoint {
    ContourPoint {
        t: Complex::new(2.0 - u.cosh(), u.sinh()),
        dt: Complex::new(-u.sinh(), u.cosh()),
    }
}

#[cfg(test)]
mod tests {
    // 2.718 below is a literal fractional test order, not a rounded e.
    #![allow(clippy::approx_constant)]

    use super::*;
    use crate::quadrature::{self, Domain, EngineConfig};

    #[test]
    fn rotated_contour_at_the_origin() {
        let p = contour_rotated_k(0.0);
        assert_eq!(p.t, Complex::new(0.0, 0.0));
        assert_eq!(p.dt, Complex::new(1.0, FRAC_PI_2));
    }

    #[test]
    fn rotated_contour_at_one() {
        let p = contour_rotated_k(1.0);
        assert!((p.t.re - 1.1752011936438014).abs() <= 1e-15);
        assert!((p.t.im / FRAC_PI_2 - 0.7615941559557649).abs() <= 1e-15);
    }

    #[test]
    fn saddle_contour_at_the_origin() {
        let c = stationary_phase_c(2.0, 1.0);
        assert!((c - 0.4436354751788103).abs() <= 1e-15);
        let p = contour_saddle_i(0.0, c);
        assert_eq!(p.t, Complex::new(1.0 + c, 0.0));
        assert_eq!(p.dt, Complex::new(0.0, PI));
    }

    #[test]
    fn hankel_contour_tops_out_at_one() {
        let p = contour_hankel_gamma(0.0);
        assert_eq!(p.t, Complex::new(1.0, 0.0));
        assert_eq!(p.dt, Complex::new(0.0, 1.0));
        for u in [-6.0, -2.0, -0.5, 0.25, 1.0, 4.0] {
            assert!(contour_hankel_gamma(u).t.re < 1.0);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let step = 1e-5;
        let grid = [-3.0, -1.0, -0.1, 0.0, 0.1, 1.0, 3.0];
        let check = |name: &str, f: &dyn Fn(f64) -> ContourPoint| {
            for &u in &grid {
                let p = f(u);
                let fd = (f(u + step).t - f(u - step).t) / (2.0 * step);
                let denom = p.dt.norm().max(1.0);
                assert!(
                    (fd - p.dt).norm() / denom <= 1e-8,
                    "{name} at u = {u}: fd {fd}, dt {}",
                    p.dt
                );
            }
        };
        check("rotated_k", &contour_rotated_k);
        check("saddle_i", &|u| contour_saddle_i(u, 0.25));
        check("hankel_gamma", &contour_hankel_gamma);
        let scalar = |name: &str, f: &dyn Fn(f64) -> (f64, f64)| {
            for &u in &grid {
                let (_, d) = f(u);
                let fd = (f(u + step).0 - f(u - step).0) / (2.0 * step);
                assert!(
                    (fd - d).abs() / d.abs().max(1.0) <= 1e-8,
                    "{name} at u = {u}"
                );
            }
        };
        scalar("map_tanh", &map_tanh);
        scalar("accel_sinh", &accel_sinh);
        scalar("accel_cubic", &accel_cubic);
    }

    #[test]
    fn rotated_contour_asymptotes_to_the_horizontal_lines() {
        for k in 2..=20 {
            let u = k as f64;
            // floor: beyond u ~ 18 the gap pi/2 (1 - tanh u) falls under
            // the spacing of f64 around 1 and tanh rounds either way
            let bound = (3.2 * (-2.0 * u).exp()).max(4.0 * f64::EPSILON);
            assert!((contour_rotated_k(u).t.im - FRAC_PI_2).abs() <= bound, "u = {u}");
            assert!((contour_rotated_k(-u).t.im + FRAC_PI_2).abs() <= bound);
        }
    }

    #[test]
    fn saddle_kills_the_phase_derivative() {
        // d/du [x cosh t(u) - nu t(u)] must vanish at u = 0 when c is
        // placed by stationary_phase_c
        for (nu, x) in [(2.0, 1.0), (0.5, 3.0), (2.718, 100.0)] {
            let c = stationary_phase_c(nu, x);
            let phase = |u: f64| {
                let p = contour_saddle_i(u, c);
                x * p.t.cosh() - nu * p.t
            };
            let s = 1e-6;
            let fd = (phase(s) - phase(-s)) / (2.0 * s);
            assert!(
                fd.norm() <= 1e-10 * x.max(nu),
                "nu {nu} x {x}: dphi {fd}"
            );
        }
    }

    #[test]
    fn sech_cubed_integrates_to_half_pi() {
        let f = |u: f64| {
            let s = 1.0 / u.cosh();
            Complex::new(s * s * s, 0.0)
        };
        let (res, _) = quadrature::refine(f, Domain::FullLine, &EngineConfig::default()).unwrap();
        assert!(res.converged);
        assert!((res.value.re - FRAC_PI_2).abs() <= 1e-13 * FRAC_PI_2);
    }

    #[test]
    fn acceleration_maps_are_odd_and_monotone() {
        for v in [0.0, 0.3, 1.0, 2.5] {
            let (s, _) = accel_sinh(v);
            let (sm, _) = accel_sinh(-v);
            assert_eq!(s, -sm);
            let (cu, _) = accel_cubic(v);
            let (cum, _) = accel_cubic(-v);
            assert_eq!(cu, -cum);
        }
        let mut prev = f64::NEG_INFINITY;
        for k in -20..=20 {
            let (s, ds) = accel_sinh(k as f64 * 0.25);
            assert!(s > prev);
            assert!(ds > 0.0);
            prev = s;
        }
    }
}
