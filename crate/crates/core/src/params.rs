//! Operator parameters and the closed-form normalizer Λ.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::lgamma_pos;

/// One parameter pack `(ρ, α, β, η, k)` of the generalized fractional integral.
///
/// The two-parameter theorems use a second pack whose `alpha`/`beta` fields
/// carry the `(δ, λ)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    pub rho: f64,
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
    pub k: f64,
}

impl OperatorParams {
    pub fn new(rho: f64, alpha: f64, beta: f64, eta: f64, k: f64) -> Result<Self> {
        let p = OperatorParams {
            rho,
            alpha,
            beta,
            eta,
            k,
        };
        p.validate()?;
        Ok(p)
    }

    /// Checks `ρ > 0`, `α > 0`, `η > -1` and finiteness of every field.
    ///
    /// `η > -1` is what makes `τ^(ρ(η+1)-1)` integrable at the origin.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("rho", self.rho),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("eta", self.eta),
            ("k", self.k),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::domain(format!("{name} must be finite, got {v}")));
            }
        }
        if self.rho <= 0.0 {
            return Err(Error::domain(format!("rho must be > 0, got {}", self.rho)));
        }
        if self.alpha <= 0.0 {
            return Err(Error::domain(format!(
                "alpha must be > 0, got {}",
                self.alpha
            )));
        }
        if self.eta <= -1.0 {
            return Err(Error::domain(format!(
                "eta must be > -1 for the kernel to be integrable at 0, got {}",
                self.eta
            )));
        }
        Ok(())
    }

    /// Same `ρ, η, k` with a different `(order, β)` pair.
    pub fn with_order(&self, alpha: f64, beta: f64) -> Result<Self> {
        OperatorParams::new(self.rho, alpha, beta, self.eta, self.k)
    }
}

pub(crate) fn check_point(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!(
            "evaluation point must be finite and > 0, got {x}"
        )));
    }
    Ok(())
}

/// `Λ = Γ(η+1)/Γ(η+α+1) · ρ^(-β) · x^(k+ρ(η+α))`, the operator applied to the
/// constant one function.
pub fn lambda_value(p: &OperatorParams, x: f64) -> Result<f64> {
    p.validate()?;
    check_point(x)?;
    let log_ratio = lgamma_pos(p.eta + 1.0) - lgamma_pos(p.eta + p.alpha + 1.0);
    let value = log_ratio.exp() * p.rho.powf(-p.beta) * x.powf(p.k + p.rho * (p.eta + p.alpha));
    if !value.is_finite() {
        return Err(Error::domain(format!("lambda overflows at x={x}")));
    }
    Ok(value)
}
