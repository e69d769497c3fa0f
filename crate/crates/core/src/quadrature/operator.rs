//! Left- and right-sided generalized fractional integrals.

use serde::{Deserialize, Serialize};

use super::rule::cached_rule;
use crate::error::{Error, Result};
use crate::expr::FunctionSpec;
use crate::params::{check_point, lambda_value, OperatorParams};
use crate::special::lgamma_pos;

/// Node count used when a caller does not choose one.
pub const DEFAULT_NODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// The operator at a fixed point `x`, discretized as `Σ Wᵢ f(τᵢ)`.
///
/// For the left side `τᵢ = x tᵢ^(1/ρ)` with `tᵢ` from the rule for
/// `(1-t)^(α-1) t^η`, and `Wᵢ = ρ^(-β) x^(k+ρ(η+α)) wᵢ / Γ(α)`.
/// All weights are positive, so the discrete operator is itself a positive
/// linear functional.
#[derive(Debug, Clone)]
pub struct FractionalOperator {
    params: OperatorParams,
    side: Side,
    x: f64,
    upper: Option<f64>,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl FractionalOperator {
    pub fn left(params: &OperatorParams, x: f64, n: usize) -> Result<Self> {
        params.validate()?;
        check_point(x)?;
        let p = params;
        let rule = cached_rule(n, p.alpha - 1.0, p.eta)?;
        let prefactor = (-lgamma_pos(p.alpha)).exp()
            * p.rho.powf(-p.beta)
            * x.powf(p.k + p.rho * (p.eta + p.alpha));
        if !prefactor.is_finite() || prefactor == 0.0 {
            return Err(Error::domain(format!(
                "operator prefactor is not representable at x={x}"
            )));
        }
        let inv_rho = 1.0 / p.rho;
        let nodes = rule
            .nodes
            .iter()
            .map(|&t| if p.rho == 1.0 { x * t } else { x * t.powf(inv_rho) })
            .collect();
        let weights = rule.weights.iter().map(|&w| prefactor * w).collect();
        Ok(FractionalOperator {
            params: *p,
            side: Side::Left,
            x,
            upper: None,
            nodes,
            weights,
        })
    }

    /// Right-sided operator on `[x, b]`.
    ///
    /// With `u = (τ^ρ - x^ρ)/(b^ρ - x^ρ)` the kernel becomes `u^(α-1)` and the
    /// remaining factor is `ρ^(-β) x^(ρη) (b^ρ-x^ρ)^α τ^k / Γ(α)`.
    pub fn right(params: &OperatorParams, x: f64, b: f64, n: usize) -> Result<Self> {
        params.validate()?;
        check_point(x)?;
        if !b.is_finite() || b <= x {
            return Err(Error::domain(format!(
                "right-sided operator needs x < b < inf, got x={x}, b={b}"
            )));
        }
        let p = params;
        let rule = cached_rule(n, 0.0, p.alpha - 1.0)?;
        let xr = x.powf(p.rho);
        let span = b.powf(p.rho) - xr;
        let prefactor = (-lgamma_pos(p.alpha)).exp()
            * p.rho.powf(-p.beta)
            * x.powf(p.rho * p.eta)
            * span.powf(p.alpha);
        if !prefactor.is_finite() || prefactor == 0.0 {
            return Err(Error::domain(format!(
                "operator prefactor is not representable at x={x}, b={b}"
            )));
        }
        let inv_rho = 1.0 / p.rho;
        let nodes: Vec<f64> = rule
            .nodes
            .iter()
            .map(|&u| (xr + u * span).powf(inv_rho))
            .collect();
        let weights = rule
            .weights
            .iter()
            .zip(&nodes)
            .map(|(&w, &tau)| prefactor * w * tau.powf(p.k))
            .collect();
        Ok(FractionalOperator {
            params: *p,
            side: Side::Right,
            x,
            upper: Some(b),
            nodes,
            weights,
        })
    }

    pub fn params(&self) -> &OperatorParams {
        &self.params
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn rule_size(&self) -> usize {
        self.nodes.len()
    }

    /// Upper limit `b` of a right-sided operator.
    pub fn upper(&self) -> Option<f64> {
        self.upper
    }

    /// Points `τᵢ` at which integrands are sampled.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn sample(&self, f: &FunctionSpec) -> Result<Vec<f64>> {
        self.nodes.iter().map(|&tau| f.eval(tau)).collect()
    }

    /// `Σ Wᵢ vᵢ` for integrand values sampled at [`nodes`](Self::nodes).
    pub fn integrate(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.weights.len());
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }

    /// `Σ Wᵢ aᵢ bᵢ`, the operator applied to a pointwise product.
    pub fn integrate_product(&self, a: &[f64], b: &[f64]) -> f64 {
        self.weights
            .iter()
            .zip(a.iter().zip(b))
            .map(|(w, (x, y))| w * (x * y))
            .sum()
    }

    pub fn apply(&self, f: &FunctionSpec) -> Result<f64> {
        let value = self.integrate(&self.sample(f)?);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Evaluation {
                expr: f.to_string(),
                tau: self.x,
            })
        }
    }

    /// Closed-form `Λ` for the left side.
    pub fn lambda(&self) -> Result<f64> {
        match self.side {
            Side::Left => lambda_value(&self.params, self.x),
            Side::Right => Err(Error::domain("lambda is defined for the left-sided operator")),
        }
    }
}

/// One evaluation of the operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorResult {
    pub value: f64,
    pub rule_size: usize,
    pub params: OperatorParams,
    pub x: f64,
    pub side: Side,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<f64>,
}

/// Left-sided integral `ρJ^{α,β}_{η,k} f(x)` with lower limit 0.
pub fn left_integral(
    f: &FunctionSpec,
    p: &OperatorParams,
    x: f64,
    n: usize,
) -> Result<OperatorResult> {
    let op = FractionalOperator::left(p, x, n)?;
    Ok(OperatorResult {
        value: op.apply(f)?,
        rule_size: n,
        params: *p,
        x,
        side: Side::Left,
        b: None,
    })
}

/// Right-sided integral `ρJ^{α,β}_{b-;η,k} f(x)`.
pub fn right_integral(
    f: &FunctionSpec,
    p: &OperatorParams,
    x: f64,
    b: f64,
    n: usize,
) -> Result<OperatorResult> {
    let op = FractionalOperator::right(p, x, b, n)?;
    Ok(OperatorResult {
        value: op.apply(f)?,
        rule_size: n,
        params: *p,
        x,
        side: Side::Right,
        b: Some(b),
    })
}

/// Exact left-sided value on `f(τ) = τ^(ρs)`:
/// `ρ^(-β) x^(k+ρ(η+α+s)) Γ(η+s+1)/Γ(η+s+α+1)`.
pub fn power_closed_form(s: f64, p: &OperatorParams, x: f64) -> Result<f64> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::domain(format!("power s must be >= 0, got {s}")));
    }
    scaled_power_closed_form(s, p, x)
}

/// As [`power_closed_form`] for any real `s` with `η + s + 1 > 0`.
pub(crate) fn scaled_power_closed_form(s: f64, p: &OperatorParams, x: f64) -> Result<f64> {
    p.validate()?;
    check_point(x)?;
    let shifted = p.eta + s + 1.0;
    if !shifted.is_finite() || shifted <= 0.0 {
        return Err(Error::domain(format!(
            "closed form needs eta + s + 1 > 0, got {shifted}"
        )));
    }
    let ratio = (lgamma_pos(shifted) - lgamma_pos(shifted + p.alpha)).exp();
    let value = ratio * p.rho.powf(-p.beta) * x.powf(p.k + p.rho * (p.eta + p.alpha + s));
    if !value.is_finite() {
        return Err(Error::domain("closed form overflows"));
    }
    Ok(value)
}
