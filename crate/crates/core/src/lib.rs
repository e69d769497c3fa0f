//! Generalized Katugampola fractional integrals and numerical verification of
//! Grüss-type inequalities with functional bounds.
//!
//! The left-sided operator
//!
//! ```text
//! J[f](x) = ρ^(1-β) x^k / Γ(α) ∫_0^x τ^(ρ(η+1)-1) (x^ρ - τ^ρ)^(α-1) f(τ) dτ
//! ```
//!
//! is evaluated by Gauss–Jacobi quadrature after the substitution
//! `t = (τ/x)^ρ`, which turns the kernel into the exact Jacobi weight
//! `(1-t)^(α-1) t^η`. On top of the operator sit checkers for every identity and
//! inequality of the Grüss family (single- and two-parameter forms), a seeded
//! case generator and a suite runner.
//!
//! ```
//! use fracgruss::{left_integral, lambda_value, FunctionSpec, OperatorParams};
//!
//! let p = OperatorParams::new(2.0, 0.7, 0.3, 0.5, 1.0).unwrap();
//! let one = FunctionSpec::constant(1.0);
//! let j = left_integral(&one, &p, 1.5, 64).unwrap();
//! let lam = lambda_value(&p, 1.5).unwrap();
//! assert!((j.value - lam).abs() <= 1e-12 * lam);
//! ```

pub mod bounds;
pub mod cli;
pub mod error;
pub mod expr;
pub mod harness;
pub mod inequalities;
pub mod params;
pub mod quadrature;
pub mod reductions;
pub mod special;

pub use bounds::{BoundedFunction, ConstantBounds, DEFAULT_GRID};
pub use error::{Error, Result};
pub use expr::FunctionSpec;
pub use params::{lambda_value, OperatorParams};
pub use quadrature::{
    check_composition, jacobi_rule, left_integral, power_closed_form, right_integral,
    FractionalOperator, OperatorResult, QuadratureRule, DEFAULT_NODES,
};
pub use special::log_gamma;
