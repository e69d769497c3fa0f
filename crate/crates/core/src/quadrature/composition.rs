use serde_json::json;

use super::operator::{scaled_power_closed_form, FractionalOperator};
use crate::error::{Error, Result};
use crate::expr::FunctionSpec;
use crate::inequalities::{CheckReport, TheoremId};
use crate::params::{check_point, OperatorParams};

const CONSTRAINT_EPS: f64 = 1e-12;
const INTEGER_EPS: f64 = 1e-9;

/// Compares `J₁ ∘ J₂ f` with the fused operator of order `α₁+α₂` on a monomial
/// `f = c·τ^(ρs)`, where `J₂` carries `k₂ = -ρη₁`.
///
/// Both sides use closed forms. The nested and fused quadrature values are
/// attached as extras.
pub fn check_composition(
    f: &FunctionSpec,
    p1: &OperatorParams,
    p2: &OperatorParams,
    x: f64,
    n: usize,
) -> Result<CheckReport> {
    p1.validate()?;
    p2.validate()?;
    check_point(x)?;
    if p1.rho != p2.rho {
        return Err(Error::precondition(format!(
            "both operators need the same rho, got {} and {}",
            p1.rho, p2.rho
        )));
    }
    let rho = p1.rho;
    let required_k = -rho * p1.eta;
    if (p2.k - required_k).abs() > CONSTRAINT_EPS * required_k.abs().max(1.0) {
        return Err(Error::precondition(format!(
            "inner k must equal -rho*eta1 = {required_k}, got {}",
            p2.k
        )));
    }
    let (c, q) = f.as_monomial().ok_or_else(|| {
        Error::precondition(format!("composition check needs a monomial, got {f}"))
    })?;
    let s = q / rho;
    if s < -INTEGER_EPS || (s - s.round()).abs() > INTEGER_EPS {
        return Err(Error::precondition(format!(
            "monomial power {q} is not rho times a nonnegative integer"
        )));
    }
    let s = s.round();

    // Inner image is again a monomial in x with exponent k₂ + ρ(η₂+α₂+s).
    let inner_coeff = scaled_power_closed_form(s, p2, 1.0)?;
    let inner_power = (p2.k + rho * (p2.eta + p2.alpha + s)) / rho;
    let lhs = c * inner_coeff * scaled_power_closed_form(inner_power, p1, x)?;

    let fused = OperatorParams::new(
        rho,
        p1.alpha + p2.alpha,
        p1.beta + p2.beta,
        p2.eta,
        p1.k,
    )?;
    let rhs = c * scaled_power_closed_form(s, &fused, x)?;

    let outer = FractionalOperator::left(p1, x, n)?;
    let inner_values = outer
        .nodes()
        .iter()
        .map(|&tau| FractionalOperator::left(p2, tau, n)?.apply(f))
        .collect::<Result<Vec<_>>>()?;
    let nested = outer.integrate(&inner_values);
    let fused_quadrature = FractionalOperator::left(&fused, x, n)?.apply(f)?;

    let inputs = json!({
        "f": f,
        "first": p1,
        "second": p2,
        "x": x,
        "n": n,
    });
    let scale = lhs.abs().max(rhs.abs());
    Ok(CheckReport::identity(TheoremId::Composition, lhs, rhs, scale, inputs)
        .with_extra("nested_quadrature", nested)
        .with_extra("fused_quadrature", fused_quadrature))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(rho: f64, alpha: f64, beta: f64, eta: f64, k: f64) -> OperatorParams {
        OperatorParams::new(rho, alpha, beta, eta, k).unwrap()
    }

    #[test]
    fn iterated_unit_integral() {
        let p = params(1.0, 1.0, 0.0, 0.0, 0.0);
        let r = check_composition(&FunctionSpec::constant(1.0), &p, &p, 1.0, 16).unwrap();
        assert!((r.lhs - 0.5).abs() < 1e-15);
        assert!((r.rhs - 0.5).abs() < 1e-15);
        assert!(r.slack < 1e-15);
        assert!(r.holds);
    }

    #[test]
    fn monomials_with_general_params() {
        let p1 = params(1.7, 0.6, 0.4, 0.3, -0.2);
        let p2 = params(1.7, 1.3, -0.9, 1.1, -1.7 * 0.3);
        for s in 0..5 {
            let f = FunctionSpec::scale(2.5, FunctionSpec::pow(1.7 * s as f64));
            let r = check_composition(&f, &p1, &p2, 1.3, 64).unwrap();
            assert!(r.slack / r.scale <= 1e-12, "s={s}: {r:?}");
            let fused = r.extra["fused_quadrature"];
            assert!((fused - r.rhs).abs() <= 1e-10 * r.rhs.abs(), "s={s}");
            let nested = r.extra["nested_quadrature"];
            assert!((nested - r.lhs).abs() <= 1e-8 * r.lhs.abs(), "s={s}: {nested} vs {}", r.lhs);
        }
    }

    #[test]
    fn constraint_violations() {
        let p1 = params(1.0, 1.0, 0.0, 0.5, 0.0);
        let p2 = params(1.0, 1.0, 0.0, 0.0, 0.0);
        let f = FunctionSpec::constant(1.0);
        assert!(matches!(
            check_composition(&f, &p1, &p2, 1.0, 8),
            Err(Error::Precondition(_))
        ));
        let p3 = params(2.0, 1.0, 0.0, 0.0, 0.0);
        assert!(check_composition(&f, &p2, &p3, 1.0, 8).is_err());
        let trig = FunctionSpec::sin(FunctionSpec::var());
        assert!(check_composition(&trig, &p2, &p2, 1.0, 8).is_err());
        let half = FunctionSpec::pow(0.5);
        assert!(check_composition(&half, &p2, &p2, 1.0, 8).is_err());
    }
}
