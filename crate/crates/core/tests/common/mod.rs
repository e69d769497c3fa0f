//! Reference values computed without the crate's quadrature.
#![allow(dead_code)]

use fracgruss::{FunctionSpec, OperatorParams};

/// `(ln t, ln(1-t))` at `t = 1/(1+e^(-u))`, accurate at both ends.
fn log_pair(u: f64) -> (f64, f64) {
    let softplus = |z: f64| {
        if z > 0.0 {
            z + (-z).exp().ln_1p()
        } else {
            z.exp().ln_1p()
        }
    };
    (-softplus(-u), -softplus(u))
}

/// Tanh-sinh rule on (0,1): `∫ g(t, ln t, ln(1-t)) dt` where `g` receives
/// the log-Jacobian to add before exponentiating.
fn tanh_sinh<F>(h: f64, s_max: f64, mut g: F) -> f64
where
    F: FnMut(f64, f64, f64, f64) -> f64,
{
    let k_max = (s_max / h).ceil() as i64;
    let mut sum = 0.0;
    for k in -k_max..=k_max {
        let s = k as f64 * h;
        let u = std::f64::consts::PI * s.sinh();
        let (ln_t, ln_1mt) = log_pair(u);
        let ln_jac = ln_t + ln_1mt + (std::f64::consts::PI * s.cosh()).ln();
        sum += g(ln_t.exp(), ln_t, ln_1mt, ln_jac);
    }
    h * sum
}

/// Left-sided operator by tanh-sinh in `t = τ/x` on the untransformed kernel
/// `τ^(ρ(η+1)-1) (x^ρ - τ^ρ)^(α-1)`.
pub fn oracle_left<F: Fn(f64) -> f64>(f: F, p: &OperatorParams, x: f64) -> f64 {
    let a = p.rho * (p.eta + 1.0) - 1.0;
    let integral = tanh_sinh(1.0 / 128.0, 6.5, |t, ln_t, _ln_1mt, ln_jac| {
        // 1 - t^ρ without cancellation near t = 1
        let one_minus = -(p.rho * ln_t).exp_m1();
        if one_minus <= 0.0 {
            return 0.0;
        }
        let ln_w = a * ln_t + (p.alpha - 1.0) * one_minus.ln() + ln_jac;
        let w = ln_w.exp();
        if w == 0.0 {
            0.0
        } else {
            w * f(x * t)
        }
    });
    p.rho.powf(1.0 - p.beta) * x.powf(p.k + p.rho * (p.eta + p.alpha)) / libm::tgamma(p.alpha)
        * integral
}

pub fn oracle_spec(f: &FunctionSpec, p: &OperatorParams, x: f64) -> f64 {
    oracle_left(|tau| f.eval(tau).unwrap(), p, x)
}

/// `ρ^(-β) x^(k+ρ(η+α+s)) Γ(η+s+1)/Γ(η+s+α+1)` via `tgamma`.
pub fn monomial_value(s: f64, p: &OperatorParams, x: f64) -> f64 {
    let g = libm::tgamma(p.eta + s + 1.0) / libm::tgamma(p.eta + s + p.alpha + 1.0);
    g * p.rho.powf(-p.beta) * x.powf(p.k + p.rho * (p.eta + p.alpha + s))
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}

pub fn params(rho: f64, alpha: f64, beta: f64, eta: f64, k: f64) -> OperatorParams {
    OperatorParams::new(rho, alpha, beta, eta, k).unwrap()
}

pub fn f(text: &str) -> FunctionSpec {
    FunctionSpec::parse(text).unwrap()
}
