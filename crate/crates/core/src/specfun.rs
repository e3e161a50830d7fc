//! Special function evaluators.
//!
//! Every function here is an integral representation fed through the
//! summation engine in [`crate::quadrature`]: a contour from
//! [`crate::contours`], an integrand composed on top of it, and a constant
//! prefactor applied afterwards. The convergence history is returned next to
//! the value so callers can see exactly how fast each evaluation settled.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::fmt;

use thiserror::Error;

use crate::contours;
use crate::quadrature::{
    self, Complex, ConvergenceTable, Domain, EngineConfig, QuadratureError, QuadratureResult,
    TableRow,
};

/// Which integral representation produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    KReal,
    HankelRotated,
    IReal,
    IContour,
    GammaHankel,
    Zeta,
    J0Periodic,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Route::KReal => "k-real",
            Route::HankelRotated => "hankel-rotated",
            Route::IReal => "i-real",
            Route::IContour => "i-contour",
            Route::GammaHankel => "gamma-hankel",
            Route::Zeta => "zeta",
            Route::J0Periodic => "j0-periodic",
        };
        f.write_str(name)
    }
}

/// Tail acceleration applied to the contour parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Accel {
    None,
    Sinh,
    Cubic,
}

/// Evaluation settings: engine knobs plus an optional acceleration override.
#[derive(Clone, Copy, Debug, Default)]
pub struct EvalConfig {
    pub engine: EngineConfig,
    /// `None` picks the per-route default (sinh for zeta, no map elsewhere).
    pub accel: Option<Accel>,
}

/// Order and argument of an evaluation request.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FunctionParams {
    pub nu: f64,
    pub z: Complex,
}

impl FunctionParams {
    pub fn new(nu: f64, z: Complex) -> Self {
        FunctionParams { nu, z }
    }

    /// Validates the parameters against the domain of the given route.
    pub fn check(&self, route: Route) -> Result<(), SpecFunError> {
        if !(self.nu.is_finite() && self.z.re.is_finite() && self.z.im.is_finite()) {
            return Err(SpecFunError::Domain(
                "order and argument must be finite".into(),
            ));
        }
        match route {
            Route::KReal | Route::HankelRotated | Route::IContour => {
                if self.z.im != 0.0 || !(self.z.re > 0.0) {
                    return Err(SpecFunError::Domain(format!(
                        "{route} requires a real argument > 0, got {}",
                        self.z
                    )));
                }
            }
            Route::IReal => {
                if self.z.im != 0.0 || !(self.z.re > 0.0) {
                    return Err(SpecFunError::Domain(format!(
                        "{route} requires a real argument > 0, got {}",
                        self.z
                    )));
                }
                if !(self.nu > -0.5) {
                    return Err(SpecFunError::Domain(format!(
                        "{route} requires nu > -1/2, got {}",
                        self.nu
                    )));
                }
            }
            Route::GammaHankel => {}
            Route::Zeta => {
                if !(self.z.re > 1.0) {
                    return Err(SpecFunError::Domain(format!(
                        "zeta requires Re(s) > 1, got {}",
                        self.z
                    )));
                }
            }
            Route::J0Periodic => {
                if self.z.im != 0.0 {
                    return Err(SpecFunError::Domain(
                        "j0 takes a real argument".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum SpecFunError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("gamma pole at z = {z} (1/gamma magnitude {mag:.2e})")]
    GammaPole { z: Complex, mag: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Value plus the full convergence record of the evaluation.
///
/// `value` and the table rows are in function units (the contour prefactor
/// is folded into every row, so the last row always equals `value` exactly).
/// `result` keeps the raw engine diagnostics: its `est_error` is the
/// last level-to-level difference of the untransformed integral.
#[derive(Clone, Debug)]
pub struct EvalReport {
    pub value: Complex,
    pub result: QuadratureResult,
    pub table: ConvergenceTable,
    pub route: Route,
}

fn with_accel<F>(accel: Accel, f: F) -> impl Fn(f64) -> Complex
where
    F: Fn(f64) -> Complex,
{
    move |v| match accel {
        Accel::None => f(v),
        Accel::Sinh => {
            let (u, du) = contours::accel_sinh(v);
            f(u) * du
        }
        Accel::Cubic => {
            let (u, du) = contours::accel_cubic(v);
            f(u) * du
        }
    }
}

/// Applies the same final transform to the engine value and every table row,
/// keeping the last-row-equals-value invariant bitwise.
fn finish(
    result: QuadratureResult,
    table: ConvergenceTable,
    route: Route,
    map: impl Fn(Complex) -> Complex,
) -> EvalReport {
    let rows = table
        .rows
        .into_iter()
        .map(|r| TableRow {
            estimate: map(r.estimate),
            ..r
        })
        .collect();
    EvalReport {
        value: map(result.value),
        result,
        table: ConvergenceTable { rows },
        route,
    }
}

/// Applies a further transform to an already-finished report (value and
/// rows together, so the last-row invariant survives).
fn retransform(rep: EvalReport, map: impl Fn(Complex) -> Complex) -> EvalReport {
    let rows = rep
        .table
        .rows
        .into_iter()
        .map(|r| TableRow {
            estimate: map(r.estimate),
            ..r
        })
        .collect();
    EvalReport {
        value: map(rep.value),
        result: rep.result,
        table: ConvergenceTable { rows },
        route: rep.route,
    }
}

/// Modified Bessel function K_nu(z) for real z > 0, via the real integral
/// of cosh(nu t) exp(-z cosh t) over t >= 0.
///
/// The integrand is even, so the half-line sum with half weight at t = 0 is
/// used directly; the imaginary part of the result is exactly zero.
pub fn bessel_k(nu: f64, z: f64, cfg: &EvalConfig) -> Result<EvalReport, SpecFunError> {
    FunctionParams::new(nu, Complex::new(z, 0.0)).check(Route::KReal)?;
    let accel = cfg.accel.unwrap_or(Accel::None);
    let f = with_accel(accel, move |t: f64| {
        Complex::new((nu * t).cosh() * (-z * t.cosh()).exp(), 0.0)
    });
    let (result, table) = quadrature::refine(f, Domain::HalfLineHalfWeight, &cfg.engine)?;
    Ok(finish(result, table, Route::KReal, |c| c))
}

/// Hankel function H1_nu(x) for real x > 0, via K_nu evaluated at -ix on
/// the rotated contour: H1_nu(x) = (2/(i pi)) e^(-i nu pi/2) K_nu(-ix).
///
/// On the rotated path the kernel exp(ix cosh t) decays like a modified
/// Bessel integrand, and the path integral from t(0) keeps the half-line
/// structure of the K representation.
pub fn hankel1(nu: f64, x: f64, cfg: &EvalConfig) -> Result<EvalReport, SpecFunError> {
    FunctionParams::new(nu, Complex::new(x, 0.0)).check(Route::HankelRotated)?;
    let accel = cfg.accel.unwrap_or(Accel::None);
    let f = with_accel(accel, move |u: f64| {
        let p = contours::contour_rotated_k(u);
        let w = Complex::new(0.0, x) * p.t.cosh();
        if !(w.re > -745.0) {
            // true sample magnitude is below the f64 floor; evaluating exp
            // here would hit cosh overflow and poison the sum with NaN
            return Complex::new(0.0, 0.0);
        }
        (nu * p.t).cosh() * w.exp() * p.dt
    });
    let (result, table) = quadrature::refine(f, Domain::HalfLineHalfWeight, &cfg.engine)?;
    let pref = Complex::new(0.0, -2.0 / PI) * Complex::from_polar(1.0, -nu * FRAC_PI_2);
    Ok(finish(result, table, Route::HankelRotated, move |c| {
        pref * c
    }))
}

/// Bessel function of the first kind J_nu(x) = Re H1_nu(x) for real x > 0.
pub fn bessel_j(nu: f64, x: f64, cfg: &EvalConfig) -> Result<EvalReport, SpecFunError> {
    let rep = hankel1(nu, x, cfg)?;
    Ok(retransform(rep, |c| Complex::new(c.re, 0.0)))
}

/// Bessel function of the second kind N_nu(x) = Im H1_nu(x) for real x > 0.
pub fn bessel_n(nu: f64, x: f64, cfg: &EvalConfig) -> Result<EvalReport, SpecFunError> {
    let rep = hankel1(nu, x, cfg)?;
    Ok(retransform(rep, |c| Complex::new(c.im, 0.0)))
}

/// ln cosh y without overflow for large |y|.
fn ln_cosh(y: f64) -> f64 {
    let a = y.abs();
    if a > 350.0 {
        a - LN_2 + (-2.0 * a).exp().ln_1p()
    } else {
        a.cosh().ln()
    }
}

/// Modified Bessel function I_nu(x) for real x > 0 and nu > -1/2, via the
/// real representation
/// I_nu(x) = (x/2)^nu / (Gamma(nu+1/2) sqrt(pi)) * integral over the line of
/// sech^(2 nu + 1)(u) cosh(x tanh u) du.
///
/// The integrand is even, so half the line is summed and doubled. For
/// x > 500 the sum runs in log space (samples shifted by e^-x) so the
/// x = 100-style twin peaks near tanh u = +-1 stay representable. Beyond
/// x = 100 the bare tail e^(-(2nu+1)u) stretches over thousands of samples
/// and its rounding noise sits right at the convergence tolerance, so the
/// sinh map is on by default there.
pub fn bessel_i(nu: f64, x: f64, cfg: &EvalConfig) -> Result<EvalReport, SpecFunError> {
    FunctionParams::new(nu, Complex::new(x, 0.0)).check(Route::IReal)?;
    let default_accel = if x > 100.0 { Accel::Sinh } else { Accel::None };
    let accel = cfg.accel.unwrap_or(default_accel);
    let rg = recip_gamma(Complex::new(nu + 0.5, 0.0), &EvalConfig::default())?
        .value
        .re;
    if x <= 500.0 {
        let f = with_accel(accel, move |u: f64| {
            let (th, dth) = contours::map_tanh(u);
            // dth = sech^2 u, so sech^(2nu+1) = dth^(nu + 1/2)
            Complex::new(dth.powf(nu + 0.5) * (x * th).cosh(), 0.0)
        });
        let (result, table) = quadrature::refine(f, Domain::HalfLineHalfWeight, &cfg.engine)?;
        let pref = 2.0 * (x / 2.0).powf(nu) * rg / PI.sqrt();
        Ok(finish(result, table, Route::IReal, move |c| pref * c))
    } else {
        let f = with_accel(accel, move |u: f64| {
            let (th, dth) = contours::map_tanh(u);
            let g = ln_cosh(x * th) + (nu + 0.5) * dth.ln() - x;
            Complex::new(g.exp(), 0.0)
        });
        let (result, table) = quadrature::refine(f, Domain::HalfLineHalfWeight, &cfg.engine)?;
        let ln_pref = LN_2 + nu * (x / 2.0).ln() + rg.ln() - 0.5 * PI.ln() + x;
        Ok(finish(result, table, Route::IReal, move |c| {
            Complex::new((ln_pref + c.re.ln()).exp(), 0.0)
        }))
    }
}

/// Modified Bessel function I_nu(x) via the complex contour integral
/// (1/(2 pi i)) * integral of exp(x cosh t - nu t) dt on the saddle path.
///
/// Independent of [`bessel_i`]: different contour, kernel and prefactor.
pub fn bessel_i_contour(nu: f64, x: f64, cfg: &EvalConfig) -> Result<EvalReport, SpecFunError> {
    FunctionParams::new(nu, Complex::new(x, 0.0)).check(Route::IContour)?;
    let accel = cfg.accel.unwrap_or(Accel::None);
    let c = contours::stationary_phase_c(nu, x);
    let f = with_accel(accel, move |u: f64| {
        let p = contours::contour_saddle_i(u, c);
        let w = x * p.t.cosh() - nu * p.t;
        if !(w.re > -745.0) {
            return Complex::new(0.0, 0.0);
        }
        w.exp() * p.dt
    });
    let (result, table) = quadrature::refine(f, Domain::FullLine, &cfg.engine)?;
    let pref = Complex::new(0.0, -1.0 / (2.0 * PI));
    Ok(finish(result, table, Route::IContour, move |c| pref * c))
}

/// Reciprocal gamma function 1/Gamma(z), entire in z, via the Hankel loop
/// 1/Gamma(z) = (1/(2 pi i)) * integral of e^t t^(-z) dt.
///
/// `t^(-z)` uses the principal branch; the loop never meets the cut along
/// the negative real axis (Im t = 0 only at t = 1).
pub fn recip_gamma(z: Complex, cfg: &EvalConfig) -> Result<EvalReport, SpecFunError> {
    FunctionParams::new(0.0, z).check(Route::GammaHankel)?;
    let accel = cfg.accel.unwrap_or(Accel::None);
    let f = with_accel(accel, move |u: f64| {
        let p = contours::contour_hankel_gamma(u);
        p.t.exp() * p.t.powc(-z) * p.dt
    });
    let (result, table) = quadrature::refine(f, Domain::FullLine, &cfg.engine)?;
    let pref = Complex::new(0.0, -1.0 / (2.0 * PI));
    Ok(finish(result, table, Route::GammaHankel, move |c| pref * c))
}

/// Gamma function, as the inverse of [`recip_gamma`]. Rejects arguments at
/// (or numerically indistinguishable from) the poles 0, -1, -2, ...
pub fn gamma(z: Complex, cfg: &EvalConfig) -> Result<EvalReport, SpecFunError> {
    let rep = recip_gamma(z, cfg)?;
    let mag = rep.value.norm();
    if mag < 1e-14 {
        return Err(SpecFunError::GammaPole { z, mag });
    }
    Ok(retransform(rep, |c| c.inv()))
}

/// Exponent decay y + ln sinh y with y = e^u / 2, stable on the whole line:
/// the y -> 0 branch uses ln y = u - ln 2 analytically (y itself may
/// underflow), the large branch avoids evaluating sinh past overflow.
fn zeta_decay(u: f64) -> f64 {
    let y = u.exp() * 0.5;
    if y <= 1e-8 {
        y + (u - LN_2) + y * y / 6.0
    } else if y <= 350.0 {
        y + y.sinh().ln()
    } else {
        2.0 * y - LN_2 + (-(-2.0 * y).exp()).ln_1p()
    }
}

/// Riemann zeta function for Re(s) > 1, via
/// zeta(s) = (1/Gamma(s)) * integral over t > 0 of t^(s-1)/(e^t - 1) dt
/// with t = e^u, summed over the whole line in u.
///
/// The u -> -infinity tail decays only like e^((Re s - 1) u), so the sinh
/// acceleration map is on by default for this route.
pub fn zeta(s: Complex, cfg: &EvalConfig) -> Result<EvalReport, SpecFunError> {
    FunctionParams::new(0.0, s).check(Route::Zeta)?;
    let accel = cfg.accel.unwrap_or(Accel::Sinh);
    let f = with_accel(accel, move |u: f64| (s * u - zeta_decay(u)).exp());
    let (result, table) = quadrature::refine(f, Domain::FullLine, &cfg.engine)?;
    let pref = recip_gamma(s, &EvalConfig::default())?.value * 0.5;
    Ok(finish(result, table, Route::Zeta, move |c| pref * c))
}

/// J_0(x) by the closed trapezoidal rule with m panels on the quarter-wave
/// representation (2/pi) * integral of cos(x cos theta) over [0, pi/2].
///
/// The 2/pi prefactor cancels the panel width algebraically, leaving
/// sum / m; this keeps bessel_j0_periodic(0, m) == 1 with no rounding.
pub fn bessel_j0_periodic(x: f64, m: usize) -> Result<f64, SpecFunError> {
    FunctionParams::new(0.0, Complex::new(x, 0.0)).check(Route::J0Periodic)?;
    if m == 0 {
        return Err(SpecFunError::Domain("panel count m must be at least 1".into()));
    }
    let step = FRAC_PI_2 / m as f64;
    let mut acc = 0.5 * (x.cos() + (x * FRAC_PI_2.cos()).cos());
    for k in 1..m {
        acc += (x * (k as f64 * step).cos()).cos();
    }
    Ok(acc / m as f64)
}
