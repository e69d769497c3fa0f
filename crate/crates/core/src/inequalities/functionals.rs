use super::report::Scale;
use super::TwoParamCase;
use crate::error::Result;
use crate::expr::FunctionSpec;
use crate::params::OperatorParams;
use crate::quadrature::FractionalOperator;

/// A left operator at `x` together with its closed-form `Λ`.
pub(crate) struct Discrete {
    op: FractionalOperator,
    pub lambda: f64,
}

impl Discrete {
    pub fn new(p: &OperatorParams, x: f64, n: usize) -> Result<Self> {
        let op = FractionalOperator::left(p, x, n)?;
        let lambda = op.lambda()?;
        Ok(Discrete { op, lambda })
    }

    pub fn sample(&self, f: &FunctionSpec) -> Result<Vec<f64>> {
        self.op.sample(f)
    }

    pub fn j(&self, v: &[f64]) -> f64 {
        self.op.integrate(v)
    }

    pub fn jp(&self, a: &[f64], b: &[f64]) -> f64 {
        self.op.integrate_product(a, b)
    }
}

/// `φ, ψ, ω` sampled on one operator's nodes.
pub(crate) struct Triple<'a> {
    pub phi: &'a [f64],
    pub psi: &'a [f64],
    pub omega: &'a [f64],
}

pub(crate) fn t_value(d: &Discrete, f: &Triple) -> (f64, Scale) {
    let l = d.lambda;
    let (jphi, jpsi, jomega) = (d.j(f.phi), d.j(f.psi), d.j(f.omega));
    let terms = [
        (jomega - jphi) * (jphi - jpsi),
        l * d.jp(f.phi, f.psi),
        -jphi * jpsi,
        l * d.jp(f.phi, f.omega),
        -jphi * jomega,
        -l * d.jp(f.psi, f.omega),
        jpsi * jomega,
    ];
    (terms.iter().sum(), Scale::of(&terms))
}

pub(crate) fn k_value(a: &Discrete, d: &Discrete, fa: &Triple, fd: &Triple) -> (f64, Scale) {
    let (la, ld) = (a.lambda, d.lambda);
    let (aphi, apsi, aomega) = (a.j(fa.phi), a.j(fa.psi), a.j(fa.omega));
    let (dphi, dpsi, domega) = (d.j(fd.phi), d.j(fd.psi), d.j(fd.omega));
    let terms = [
        (domega - dphi) * (aphi - apsi),
        (dphi - dpsi) * (aomega - aphi),
        -domega * aphi,
        -dphi * aomega,
        -dphi * apsi,
        -dpsi * aphi,
        domega * apsi,
        dpsi * aomega,
        ld * a.jp(fa.psi, fa.phi),
        ld * a.jp(fa.omega, fa.phi),
        -ld * a.jp(fa.psi, fa.omega),
        la * d.jp(fd.psi, fd.phi),
        la * d.jp(fd.omega, fd.phi),
        -la * d.jp(fd.psi, fd.omega),
    ];
    (terms.iter().sum(), Scale::of(&terms))
}

/// `T(φ,ψ,ω) = (Jω−Jφ)(Jφ−Jψ) + ΛJ(φψ) − JφJψ + ΛJ(φω) − JφJω − ΛJ(ψω) + JψJω`.
pub fn functional_t(
    phi: &FunctionSpec,
    psi: &FunctionSpec,
    omega: &FunctionSpec,
    p: &OperatorParams,
    x: f64,
    n: usize,
) -> Result<f64> {
    let d = Discrete::new(p, x, n)?;
    let (s_phi, s_psi, s_omega) = (d.sample(phi)?, d.sample(psi)?, d.sample(omega)?);
    let triple = Triple {
        phi: &s_phi,
        psi: &s_psi,
        omega: &s_omega,
    };
    Ok(t_value(&d, &triple).0)
}

/// The two-operator analogue of `T`, with `J^{α,β}` from `case.first` and
/// `J^{δ,λ}` from `case.second`.
pub fn functional_k(
    phi: &FunctionSpec,
    psi: &FunctionSpec,
    omega: &FunctionSpec,
    case: &TwoParamCase,
) -> Result<f64> {
    case.validate()?;
    let a = Discrete::new(&case.first, case.x, case.n)?;
    let d = Discrete::new(&case.second, case.x, case.n)?;
    let sa = [a.sample(phi)?, a.sample(psi)?, a.sample(omega)?];
    let sd = [d.sample(phi)?, d.sample(psi)?, d.sample(omega)?];
    let ta = Triple {
        phi: &sa[0],
        psi: &sa[1],
        omega: &sa[2],
    };
    let td = Triple {
        phi: &sd[0],
        psi: &sd[1],
        omega: &sd[2],
    };
    Ok(k_value(&a, &d, &ta, &td).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rl(alpha: f64) -> OperatorParams {
        OperatorParams::new(1.0, alpha, 0.0, 0.0, 0.0).unwrap()
    }

    fn f(s: &str) -> FunctionSpec {
        FunctionSpec::parse(s).unwrap()
    }

    #[test]
    fn t_examples() {
        let c = f("(const 1.75)");
        let t = functional_t(&c, &c, &c, &rl(0.7), 1.3, 16).unwrap();
        assert!(t.abs() < 1e-14);
        let t = functional_t(&f("(var t)"), &f("(const 0)"), &f("(const 1)"), &rl(1.0), 1.0, 16)
            .unwrap();
        assert!((t - 0.25).abs() < 1e-14);
    }

    #[test]
    fn k_examples() {
        let case = TwoParamCase::single(rl(1.0), 1.0, 16).unwrap();
        let k = functional_k(&f("(var t)"), &f("(const 0)"), &f("(const 1)"), &case).unwrap();
        assert!((k - 0.5).abs() < 1e-14);
        let p = OperatorParams::new(1.4, 0.6, 0.3, 0.2, -0.4).unwrap();
        let q = p.with_order(2.1, -1.0).unwrap();
        let case = TwoParamCase::new(p, q, 1.7, 32).unwrap();
        let c = f("(const -0.4)");
        let k = functional_k(&c, &c, &c, &case).unwrap();
        assert!(k.abs() < 1e-13);
    }

    #[test]
    fn t_equals_k_for_identical_operators() {
        let p = OperatorParams::new(0.8, 1.6, 0.2, 0.5, 0.3).unwrap();
        let (v, lo, hi) = (f("(sin (var t))"), f("(const -1)"), f("(const 1)"));
        let t = functional_t(&v, &lo, &hi, &p, 1.5, 32).unwrap();
        let k = functional_k(&v, &lo, &hi, &TwoParamCase::single(p, 1.5, 32).unwrap()).unwrap();
        assert!((k - 2.0 * t).abs() < 1e-12 * k.abs().max(1.0), "{k} vs {t}");
    }
}
