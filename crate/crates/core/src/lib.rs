//! Special function evaluation by trapezoidal summation of integral
//! representations on suitably chosen contours.
//!
//! The trapezoidal rule converges geometrically (and better) for integrands
//! that are analytic in a strip around the integration path and decay fast
//! along it. Every evaluator here is built from that one engine:
//!
//! * [`quadrature`] - the summation engine: adaptive truncation of infinite
//!   sums, mesh halving with a built-in convergence test, and a closed rule
//!   for periodic integrands.
//! * [`contours`] - parametrized paths in the complex plane and the
//!   variable-change maps (acceleration) applied on top of them.
//! * [`specfun`] - the evaluators: modified and ordinary Bessel functions,
//!   Hankel functions, the gamma function and its reciprocal, and the
//!   Riemann zeta function.
//! * [`oracles`] - independent cross-checks (power series, asymptotics,
//!   ODE residuals, direct summation) that share no code with the
//!   contour evaluators.

// Comparisons spelled `!(x > y)` are deliberate throughout: they stay true
// when x is NaN, so range guards fail closed instead of propagating NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod contours;
pub mod oracles;
pub mod quadrature;
pub mod specfun;

pub use quadrature::{
    Complex, ConvergenceTable, Domain, EngineConfig, QuadratureError, QuadratureResult, TableRow,
};
pub use specfun::{Accel, EvalConfig, EvalReport, FunctionParams, Route, SpecFunError};
