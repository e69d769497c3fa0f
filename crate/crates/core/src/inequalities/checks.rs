use serde_json::json;

use super::report::{CheckReport, Part, Scale, TheoremId, DEFAULT_TOL};
use super::TwoParamCase;
use crate::bounds::{BoundedFunction, ConstantBounds, DEFAULT_GRID};
use crate::error::Result;
use crate::expr::FunctionSpec;
use crate::params::{check_point, OperatorParams};

/// `lhs ≤ rhs` where both sides are sums of the given terms.
fn sums(id: TheoremId, lesser: &[f64], greater: &[f64], inputs: serde_json::Value) -> CheckReport {
    let mut scale = Scale::of(lesser);
    scale.add(greater);
    CheckReport::inequality(
        id,
        lesser.iter().sum(),
        greater.iter().sum(),
        scale.get(),
        inputs,
    )
}

fn single_case(p: &OperatorParams, x: f64, n: usize) -> Result<TwoParamCase> {
    p.validate()?;
    check_point(x)?;
    TwoParamCase::single(*p, x, n)
}

/// Functional bounds `J^{α,β}z₂·J^{δ,λ}v + J^{α,β}v·J^{δ,λ}z₁ ≥ J^{α,β}v·J^{δ,λ}v + J^{α,β}z₂·J^{δ,λ}z₁`.
pub fn check_thm1(v: &BoundedFunction, case: &TwoParamCase) -> Result<CheckReport> {
    case.validate()?;
    v.certify(case.x, DEFAULT_GRID)?;
    unchecked::thm1(v, case)
}

/// Constant bounds `m ≤ v ≤ M`:
/// `MΛ^{α,β}J^{δ,λ}v + mΛ^{δ,λ}J^{α,β}v ≥ J^{α,β}v·J^{δ,λ}v + mMΛ^{α,β}Λ^{δ,λ}`.
pub fn check_cor1(v: &FunctionSpec, b: &ConstantBounds, case: &TwoParamCase) -> Result<CheckReport> {
    case.validate()?;
    b.certify(v, case.x, DEFAULT_GRID)?;
    unchecked::cor1(v, b, case)
}

/// `ΛJv² − (Jv)²` against its expansion through the envelopes.
pub fn residual_lemma1(
    v: &BoundedFunction,
    p: &OperatorParams,
    x: f64,
    n: usize,
) -> Result<CheckReport> {
    let case = single_case(p, x, n)?;
    v.certify(x, DEFAULT_GRID)?;
    unchecked::lemma1(v, &case)
}

/// `(ΛJ(vu) − JvJu)² ≤ T(v,z₁,z₂)·T(u,γ₁,γ₂)`.
pub fn check_thm2(
    v: &BoundedFunction,
    u: &BoundedFunction,
    p: &OperatorParams,
    x: f64,
    n: usize,
) -> Result<CheckReport> {
    let case = single_case(p, x, n)?;
    v.certify(x, DEFAULT_GRID)?;
    u.certify(x, DEFAULT_GRID)?;
    unchecked::thm2(v, u, &case)
}

/// `(ΛJ(uv) − JuJv)² ≤ (ΛJu² − (Ju)²)(ΛJv² − (Jv)²)`.
pub fn check_cs_one_param(
    v: &FunctionSpec,
    u: &FunctionSpec,
    p: &OperatorParams,
    x: f64,
    n: usize,
) -> Result<CheckReport> {
    let case = single_case(p, x, n)?;
    unchecked::cs_one_param(v, u, &case)
}

/// The two-operator identity for
/// `Λ^{δ,λ}J^{α,β}v² + Λ^{α,β}J^{δ,λ}v² − 2J^{δ,λ}v·J^{α,β}v`.
///
/// The extra `unweighted_variant_lhs` holds the same expression without the
/// `Λ^{α,β}` factor on the second term.
pub fn residual_lemma2(v: &BoundedFunction, case: &TwoParamCase) -> Result<CheckReport> {
    case.validate()?;
    v.certify(case.x, DEFAULT_GRID)?;
    unchecked::lemma2(v, case)
}

/// `|Λ^{δ,λ}J^{α,β}(uv) + Λ^{α,β}J^{δ,λ}(uv) − J^{δ,λ}u·J^{α,β}v − J^{δ,λ}v·J^{α,β}u| ≤ √(K(v,z₁,z₂)·K(u,γ₁,γ₂))`.
///
/// Returns [`Error::Inconsistency`](crate::Error::Inconsistency) if either `K`
/// is negative beyond tolerance.
pub fn check_thm3(
    v: &BoundedFunction,
    u: &BoundedFunction,
    case: &TwoParamCase,
) -> Result<CheckReport> {
    case.validate()?;
    v.certify(case.x, DEFAULT_GRID)?;
    u.certify(case.x, DEFAULT_GRID)?;
    unchecked::thm3(v, u, case)
}

/// The four mixed-envelope inequalities, `v` bounded by `z₁, z₂` and `u` by `γ₁, γ₂`.
pub fn check_thm4(
    part: Part,
    v: &BoundedFunction,
    u: &BoundedFunction,
    case: &TwoParamCase,
) -> Result<CheckReport> {
    case.validate()?;
    v.certify(case.x, DEFAULT_GRID)?;
    u.certify(case.x, DEFAULT_GRID)?;
    unchecked::thm4(part, v, u, case)
}

/// Constant-bound versions of [`check_thm4`] with `m ≤ v ≤ M`, `n ≤ u ≤ N`.
pub fn check_cor2(
    part: Part,
    v: &FunctionSpec,
    u: &FunctionSpec,
    mb: &ConstantBounds,
    nb: &ConstantBounds,
    case: &TwoParamCase,
) -> Result<CheckReport> {
    case.validate()?;
    mb.certify(v, case.x, DEFAULT_GRID)?;
    nb.certify(u, case.x, DEFAULT_GRID)?;
    unchecked::cor2(part, v, u, mb, nb, case)
}

/// `|ΛJ(vu) − JvJu| ≤ Λ²(M−m)(P−p)`.
pub fn check_dahmani_remark(
    v: &FunctionSpec,
    u: &FunctionSpec,
    mb: &ConstantBounds,
    pb: &ConstantBounds,
    p: &OperatorParams,
    x: f64,
    n: usize,
) -> Result<CheckReport> {
    let case = single_case(p, x, n)?;
    mb.certify(v, x, DEFAULT_GRID)?;
    pb.certify(u, x, DEFAULT_GRID)?;
    unchecked::constant_gap(TheoremId::Dahmani, 1.0, v, u, mb, pb, &case)
}

/// `|ΛJ(vu) − JvJu| ≤ ¼Λ²(M−m)(P−p)`, the sharp-constant form.
pub fn check_gruss(
    v: &FunctionSpec,
    u: &FunctionSpec,
    mb: &ConstantBounds,
    pb: &ConstantBounds,
    p: &OperatorParams,
    x: f64,
    n: usize,
) -> Result<CheckReport> {
    let case = single_case(p, x, n)?;
    mb.certify(v, x, DEFAULT_GRID)?;
    pb.certify(u, x, DEFAULT_GRID)?;
    unchecked::constant_gap(TheoremId::Gruss, 0.25, v, u, mb, pb, &case)
}

/// Checkers without bound certification, for callers that have already
/// certified (the harness certifies each case once).
pub(crate) mod unchecked {
    use super::*;
    use crate::error::Error;
    use crate::inequalities::functionals::{k_value, t_value, Discrete, Triple};

    struct Sampled {
        v: Vec<f64>,
        lo: Vec<f64>,
        hi: Vec<f64>,
    }

    impl Sampled {
        fn new(d: &Discrete, b: &BoundedFunction) -> Result<Self> {
            Ok(Sampled {
                v: d.sample(&b.v)?,
                lo: d.sample(&b.lower)?,
                hi: d.sample(&b.upper)?,
            })
        }

        fn triple(&self) -> Triple<'_> {
            Triple {
                phi: &self.v,
                psi: &self.lo,
                omega: &self.hi,
            }
        }

        /// `(J v, J lower, J upper)`.
        fn images(&self, d: &Discrete) -> (f64, f64, f64) {
            (d.j(&self.v), d.j(&self.lo), d.j(&self.hi))
        }
    }

    fn pair(case: &TwoParamCase) -> Result<(Discrete, Discrete)> {
        Ok((
            Discrete::new(&case.first, case.x, case.n)?,
            Discrete::new(&case.second, case.x, case.n)?,
        ))
    }

    /// `ΛJ(ab) − JaJb` and its term scale.
    fn covariance(d: &Discrete, a: &[f64], b: &[f64]) -> (f64, f64) {
        let cross = d.lambda * d.jp(a, b);
        let prod = d.j(a) * d.j(b);
        (cross - prod, Scale::of(&[cross, prod]).get())
    }

    pub fn thm1(v: &BoundedFunction, case: &TwoParamCase) -> Result<CheckReport> {
        let (a, d) = pair(case)?;
        let (av, _, az2) = Sampled::new(&a, v)?.images(&a);
        let (dv, dz1, _) = Sampled::new(&d, v)?.images(&d);
        Ok(sums(
            TheoremId::Thm1,
            &[av * dv, az2 * dz1],
            &[az2 * dv, av * dz1],
            json!({ "v": v, "case": case }),
        ))
    }

    pub fn cor1(v: &FunctionSpec, b: &ConstantBounds, case: &TwoParamCase) -> Result<CheckReport> {
        let (a, d) = pair(case)?;
        let av = a.j(&a.sample(v)?);
        let dv = d.j(&d.sample(v)?);
        let (m, big_m) = (b.lower, b.upper);
        let (la, ld) = (a.lambda, d.lambda);
        Ok(sums(
            TheoremId::Cor1,
            &[av * dv, m * big_m * la * ld],
            &[big_m * la * dv, m * ld * av],
            json!({ "v": v, "bounds": b, "case": case }),
        ))
    }

    pub fn lemma1(v: &BoundedFunction, case: &TwoParamCase) -> Result<CheckReport> {
        let d = Discrete::new(&case.first, case.x, case.n)?;
        let s = Sampled::new(&d, v)?;
        let l = d.lambda;
        let (jv, jz1, jz2) = s.images(&d);
        let left = [l * d.jp(&s.v, &s.v), -jv * jv];
        let gap_hi: Vec<f64> = s.hi.iter().zip(&s.v).map(|(h, v)| h - v).collect();
        let gap_lo: Vec<f64> = s.v.iter().zip(&s.lo).map(|(v, l)| v - l).collect();
        let right = [
            (jz2 - jv) * (jv - jz1),
            l * d.jp(&s.v, &s.lo),
            -jv * jz1,
            l * d.jp(&s.v, &s.hi),
            -jv * jz2,
            -l * d.jp(&s.lo, &s.hi),
            jz1 * jz2,
            -l * d.jp(&gap_hi, &gap_lo),
        ];
        let mut scale = Scale::of(&left);
        scale.add(&right);
        Ok(CheckReport::identity(
            TheoremId::Lemma1,
            left.iter().sum(),
            right.iter().sum(),
            scale.get(),
            json!({ "v": v, "params": case.first, "x": case.x, "n": case.n }),
        ))
    }

    pub fn thm2(
        v: &BoundedFunction,
        u: &BoundedFunction,
        case: &TwoParamCase,
    ) -> Result<CheckReport> {
        let d = Discrete::new(&case.first, case.x, case.n)?;
        let (sv, su) = (Sampled::new(&d, v)?, Sampled::new(&d, u)?);
        let (cov, cov_scale) = covariance(&d, &sv.v, &su.v);
        let (tv, tv_scale) = t_value(&d, &sv.triple());
        let (tu, tu_scale) = t_value(&d, &su.triple());
        let scale = (cov_scale * cov_scale).max(tv_scale.get() * tu_scale.get());
        Ok(CheckReport::inequality(
            TheoremId::Thm2,
            cov * cov,
            tv * tu,
            scale,
            json!({ "v": v, "u": u, "params": case.first, "x": case.x, "n": case.n }),
        )
        .with_extra("t_v", tv)
        .with_extra("t_u", tu))
    }

    pub fn cs_one_param(
        v: &FunctionSpec,
        u: &FunctionSpec,
        case: &TwoParamCase,
    ) -> Result<CheckReport> {
        let d = Discrete::new(&case.first, case.x, case.n)?;
        let (sv, su) = (d.sample(v)?, d.sample(u)?);
        let (cov, cov_scale) = covariance(&d, &sv, &su);
        let (var_u, u_scale) = covariance(&d, &su, &su);
        let (var_v, v_scale) = covariance(&d, &sv, &sv);
        let scale = (cov_scale * cov_scale).max(u_scale * v_scale);
        Ok(CheckReport::inequality(
            TheoremId::CsOneParam,
            cov * cov,
            var_u * var_v,
            scale,
            json!({ "v": v, "u": u, "params": case.first, "x": case.x, "n": case.n }),
        ))
    }

    pub fn lemma2(v: &BoundedFunction, case: &TwoParamCase) -> Result<CheckReport> {
        let (a, d) = pair(case)?;
        let (sa, sd) = (Sampled::new(&a, v)?, Sampled::new(&d, v)?);
        let (la, ld) = (a.lambda, d.lambda);
        let (av, az1, az2) = sa.images(&a);
        let (dv, dz1, dz2) = sd.images(&d);
        let gap = |s: &Sampled| -> (Vec<f64>, Vec<f64>) {
            (
                s.hi.iter().zip(&s.v).map(|(h, v)| h - v).collect(),
                s.v.iter().zip(&s.lo).map(|(v, l)| v - l).collect(),
            )
        };
        let (ga_hi, ga_lo) = gap(&sa);
        let (gd_hi, gd_lo) = gap(&sd);
        let av2 = a.jp(&sa.v, &sa.v);
        let dv2 = d.jp(&sd.v, &sd.v);
        let left = [ld * av2, la * dv2, -2.0 * dv * av];
        let right = [
            (dz2 - dv) * (av - az1),
            (dv - dz1) * (az2 - av),
            -a.jp(&ga_hi, &ga_lo) * ld,
            -d.jp(&gd_hi, &gd_lo) * la,
            -dz2 * av,
            -dv * az2,
            -dv * az1,
            -dz1 * av,
            dz2 * az1,
            dz1 * az2,
            ld * a.jp(&sa.lo, &sa.v),
            ld * a.jp(&sa.hi, &sa.v),
            -ld * a.jp(&sa.lo, &sa.hi),
            la * d.jp(&sd.lo, &sd.v),
            la * d.jp(&sd.hi, &sd.v),
            -la * d.jp(&sd.lo, &sd.hi),
        ];
        let mut scale = Scale::of(&left);
        scale.add(&right);
        Ok(CheckReport::identity(
            TheoremId::Lemma2,
            left.iter().sum(),
            right.iter().sum(),
            scale.get(),
            json!({ "v": v, "case": case }),
        )
        .with_extra("unweighted_variant_lhs", ld * av2 + dv2 - 2.0 * dv * av))
    }

    fn nonnegative(value: f64, scale: f64, what: &str) -> Result<f64> {
        if value >= 0.0 {
            Ok(value)
        } else if value >= -DEFAULT_TOL * scale {
            Ok(0.0)
        } else {
            Err(Error::Inconsistency(format!(
                "{what} = {value} is negative beyond tolerance (scale {scale})"
            )))
        }
    }

    pub fn thm3(
        v: &BoundedFunction,
        u: &BoundedFunction,
        case: &TwoParamCase,
    ) -> Result<CheckReport> {
        let (a, d) = pair(case)?;
        let (av_s, dv_s) = (Sampled::new(&a, v)?, Sampled::new(&d, v)?);
        let (au_s, du_s) = (Sampled::new(&a, u)?, Sampled::new(&d, u)?);
        let (la, ld) = (a.lambda, d.lambda);
        let terms = [
            ld * a.jp(&au_s.v, &av_s.v),
            la * d.jp(&dv_s.v, &du_s.v),
            -d.j(&du_s.v) * a.j(&av_s.v),
            -d.j(&dv_s.v) * a.j(&au_s.v),
        ];
        let lhs = terms.iter().sum::<f64>().abs();
        let (kv, kv_scale) = k_value(&a, &d, &av_s.triple(), &dv_s.triple());
        let (ku, ku_scale) = k_value(&a, &d, &au_s.triple(), &du_s.triple());
        let kv_c = nonnegative(kv, kv_scale.get(), "K(v, z1, z2)")?;
        let ku_c = nonnegative(ku, ku_scale.get(), "K(u, g1, g2)")?;
        let scale = Scale::of(&terms)
            .get()
            .max((kv_scale.get() * ku_scale.get()).sqrt());
        Ok(CheckReport::inequality(
            TheoremId::Thm3,
            lhs,
            (kv_c * ku_c).sqrt(),
            scale,
            json!({ "v": v, "u": u, "case": case }),
        )
        .with_extra("k_v", kv)
        .with_extra("k_u", ku))
    }

    pub fn thm4(
        part: Part,
        v: &BoundedFunction,
        u: &BoundedFunction,
        case: &TwoParamCase,
    ) -> Result<CheckReport> {
        let (a, d) = pair(case)?;
        let (av, az1, az2) = Sampled::new(&a, v)?.images(&a);
        let (au, _, ag2) = Sampled::new(&a, u)?.images(&a);
        let (dv, dz1, _) = Sampled::new(&d, v)?.images(&d);
        let (du, dg1, dg2) = Sampled::new(&d, u)?.images(&d);
        let (lesser, greater) = match part {
            Part::A => ([dg1 * az2, du * av], [du * az2, dg1 * av]),
            Part::B => ([dz1 * ag2, dv * au], [dz1 * au, ag2 * dv]),
            Part::C => ([az2 * du, dg2 * av], [az2 * dg2, av * du]),
            Part::D => ([az1 * du, dg1 * av], [az1 * dg1, av * du]),
        };
        Ok(sums(
            TheoremId::Thm4(part),
            &lesser,
            &greater,
            json!({ "v": v, "u": u, "case": case }),
        ))
    }

    pub fn cor2(
        part: Part,
        v: &FunctionSpec,
        u: &FunctionSpec,
        mb: &ConstantBounds,
        nb: &ConstantBounds,
        case: &TwoParamCase,
    ) -> Result<CheckReport> {
        let (a, d) = pair(case)?;
        let (av, au) = (a.j(&a.sample(v)?), a.j(&a.sample(u)?));
        let (dv, du) = (d.j(&d.sample(v)?), d.j(&d.sample(u)?));
        let (la, ld) = (a.lambda, d.lambda);
        let (m, big_m, n, big_n) = (mb.lower, mb.upper, nb.lower, nb.upper);
        let (lesser, greater) = match part {
            Part::A => (
                [n * big_m * ld * la, du * av],
                [big_m * la * du, n * ld * av],
            ),
            Part::B => (
                [m * big_n * ld * la, dv * au],
                [m * ld * au, big_n * la * dv],
            ),
            Part::C => (
                [big_m * la * du, big_n * ld * av],
                [big_m * big_n * la * ld, av * du],
            ),
            Part::D => (
                [m * la * du, n * ld * av],
                [m * n * la * ld, av * du],
            ),
        };
        Ok(sums(
            TheoremId::Cor2(part),
            &lesser,
            &greater,
            json!({ "v": v, "u": u, "v_bounds": mb, "u_bounds": nb, "case": case }),
        ))
    }

    pub fn constant_gap(
        id: TheoremId,
        factor: f64,
        v: &FunctionSpec,
        u: &FunctionSpec,
        mb: &ConstantBounds,
        pb: &ConstantBounds,
        case: &TwoParamCase,
    ) -> Result<CheckReport> {
        let d = Discrete::new(&case.first, case.x, case.n)?;
        let (sv, su) = (d.sample(v)?, d.sample(u)?);
        let (cov, cov_scale) = covariance(&d, &sv, &su);
        let rhs = factor * d.lambda * d.lambda * mb.width() * pb.width();
        Ok(CheckReport::inequality(
            id,
            cov.abs(),
            rhs,
            cov_scale.max(rhs.abs()),
            json!({
                "v": v,
                "u": u,
                "v_bounds": mb,
                "u_bounds": pb,
                "params": case.first,
                "x": case.x,
                "n": case.n,
            }),
        ))
    }
}
