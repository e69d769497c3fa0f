mod common;

use common::{f, oracle_spec, rel_err};
use fracgruss::inequalities::{check_gruss, check_thm1, TwoParamCase};
use fracgruss::reductions::{classical_rl, preset_params, Preset};
use fracgruss::{lambda_value, left_integral, BoundedFunction, ConstantBounds, Error, FunctionSpec};

const FAMILY: [&str; 4] = [
    "(sin (var t))",
    "(exp (scale -2 (var t)))",
    "(add (const 1) (scale -3 (pow t 2)) (pow t 5))",
    "(mul (cos (var t)) (exp (scale 0.5 (var t))))",
];

#[test]
fn presets_fix_the_right_parameters() {
    let rl = preset_params("riemann_liouville", 0.7, 3.0, 5.0).unwrap();
    assert_eq!((rl.rho, rl.alpha, rl.beta, rl.eta, rl.k), (1.0, 0.7, 0.0, 0.0, 0.0));
    let kat = preset_params("katugampola", 0.7, 2.0, 5.0).unwrap();
    assert_eq!((kat.rho, kat.alpha, kat.beta, kat.eta, kat.k), (2.0, 0.7, 0.7, 0.0, 0.0));
    let ek = preset_params("erdelyi_kober", 0.7, 2.0, 0.5).unwrap();
    assert_eq!((ek.rho, ek.beta, ek.eta), (2.0, 0.0, 0.5));
    assert!((ek.k + 2.0 * 1.2).abs() < 1e-15);
    for p in Preset::ALL {
        assert_eq!(p.name().parse::<Preset>().unwrap(), p);
    }
}

#[test]
fn unknown_presets_are_unsupported() {
    for name in ["hadamard", "weyl", "liouville", "riemann"] {
        assert!(matches!(preset_params(name, 1.0, 1.0, 0.0), Err(Error::UnsupportedReduction(_))));
    }
}

#[test]
fn riemann_liouville_matches_classical_form() {
    for alpha in [0.25, 0.5, 1.0, 1.7, 3.2] {
        let p = Preset::RiemannLiouville.params(alpha, 1.0, 0.0).unwrap();
        for x in [0.3, 1.0, 2.2] {
            for text in FAMILY {
                let g = f(text);
                let ours = left_integral(&g, &p, x, 64).unwrap().value;
                let classical = classical_rl(&g, alpha, x, 64).unwrap();
                assert!(rel_err(ours, classical) <= 1e-10, "{text} alpha={alpha} x={x}");
                assert!(rel_err(ours, oracle_spec(&g, &p, x)) <= 1e-10);
            }
        }
    }
}

#[test]
fn classical_rl_hand_values() {
    // I^α[1](x) = x^α / Γ(α+1)
    let one = FunctionSpec::constant(1.0);
    let got = classical_rl(&one, 0.5, 2.0, 8).unwrap();
    assert!(rel_err(got, 2f64.sqrt() / libm::tgamma(1.5)) <= 1e-14);
    assert!(classical_rl(&one, 0.0, 1.0, 8).is_err());
    assert!(classical_rl(&one, 1.0, 0.0, 8).is_err());
}

#[test]
fn katugampola_on_powers() {
    // ρ^{-α} x^{ρ(α+s)} Γ(s+1)/Γ(s+α+1) on τ^{ρs}
    for (alpha, rho) in [(0.5, 2.0), (1.5, 0.5), (2.0, 3.0)] {
        let p = Preset::Katugampola.params(alpha, rho, 0.0).unwrap();
        for s in 0..4 {
            let s = s as f64;
            let want = rho.powf(-alpha) * 1.5f64.powf(rho * (alpha + s)) * libm::tgamma(s + 1.0)
                / libm::tgamma(s + alpha + 1.0);
            let got = left_integral(&FunctionSpec::pow(rho * s), &p, 1.5, 16).unwrap().value;
            assert!(rel_err(got, want) <= 1e-12);
        }
    }
}

#[test]
fn checks_under_riemann_liouville() {
    // α = 1: Λ = x and the functional-bound check takes its classical form
    let p = Preset::RiemannLiouville.params(1.0, 1.0, 0.0).unwrap();
    assert_eq!(lambda_value(&p, 1.0).unwrap(), 1.0);
    let v = BoundedFunction::new(f("(var t)"), FunctionSpec::constant(0.0), FunctionSpec::constant(1.0));
    let r = check_thm1(&v, &TwoParamCase::single(p, 1.0, 8).unwrap()).unwrap();
    assert!((r.slack - 0.25).abs() < 1e-14);

    let (sv, cu) = (f("(sin (scale 6 (var t)))"), f("(cos (scale 6 (var t)))"));
    let b = ConstantBounds::new(-1.0, 1.0).unwrap();
    let g = check_gruss(&sv, &cu, &b, &b, &p, 1.0, 64).unwrap();
    assert!(g.holds);
    assert_eq!(g.rhs, 1.0);
}
