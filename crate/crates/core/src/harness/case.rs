use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundedFunction, ConstantBounds, DEFAULT_GRID};
use crate::error::{Error, Result};
use crate::expr::FunctionSpec;
use crate::inequalities::{unchecked, CheckReport, TheoremId, TwoParamCase};
use crate::params::OperatorParams;
use crate::quadrature::{check_composition, FractionalOperator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Constant,
    Monomial,
    Polynomial,
    TrigPoly,
    ExpMix,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::Constant,
        FamilyKind::Monomial,
        FamilyKind::Polynomial,
        FamilyKind::TrigPoly,
        FamilyKind::ExpMix,
    ];

    fn default_degree(self) -> usize {
        match self {
            FamilyKind::Constant | FamilyKind::Monomial => 0,
            FamilyKind::Polynomial | FamilyKind::TrigPoly => 3,
            FamilyKind::ExpMix => 2,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyKind::Constant => "constant",
            FamilyKind::Monomial => "monomial",
            FamilyKind::Polynomial => "polynomial",
            FamilyKind::TrigPoly => "trig_poly",
            FamilyKind::ExpMix => "exp_mix",
        };
        f.write_str(s)
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| Error::Config(format!("unknown case family `{s}`")))
    }
}

/// A generator of random test functions.
///
/// `degree` is the polynomial degree, the highest harmonic, or the number of
/// exponential terms; it is ignored by `constant` and `monomial`. In config
/// files a bare family name stands for the default degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "FamilyRepr")]
pub struct CaseFamily {
    pub kind: FamilyKind,
    pub degree: usize,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FamilyRepr {
    Name(FamilyKind),
    Full {
        kind: FamilyKind,
        degree: Option<usize>,
    },
}

impl From<FamilyRepr> for CaseFamily {
    fn from(r: FamilyRepr) -> Self {
        match r {
            FamilyRepr::Name(kind) => CaseFamily::new(kind),
            FamilyRepr::Full { kind, degree } => CaseFamily {
                kind,
                degree: degree.unwrap_or(kind.default_degree()),
            },
        }
    }
}

impl CaseFamily {
    pub fn new(kind: FamilyKind) -> Self {
        CaseFamily {
            kind,
            degree: kind.default_degree(),
        }
    }

    pub fn with_degree(kind: FamilyKind, degree: usize) -> Self {
        CaseFamily { kind, degree }
    }

    pub fn all() -> Vec<CaseFamily> {
        FamilyKind::ALL.into_iter().map(CaseFamily::new).collect()
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> FunctionSpec {
        match self.kind {
            FamilyKind::Constant => FunctionSpec::constant(rng.gen_range(-2.0..2.0)),
            FamilyKind::Monomial => {
                let c = rng.gen_range(-2.0..2.0);
                FunctionSpec::scale(c, FunctionSpec::pow(rng.gen_range(0.0..3.0)))
            }
            FamilyKind::Polynomial => {
                let terms = (0..=self.degree).map(|i| {
                    let c = rng.gen_range(-1.0..1.0);
                    match i {
                        0 => FunctionSpec::constant(c),
                        1 => FunctionSpec::scale(c, FunctionSpec::var()),
                        _ => FunctionSpec::scale(c, FunctionSpec::pow(i as f64)),
                    }
                });
                FunctionSpec::sum(terms.collect::<Vec<_>>())
            }
            FamilyKind::TrigPoly => {
                let mut terms = vec![FunctionSpec::constant(rng.gen_range(-1.0..1.0))];
                for j in 1..=self.degree.max(1) {
                    let arg = FunctionSpec::scale(j as f64, FunctionSpec::var());
                    let a = rng.gen_range(-1.0..1.0);
                    let b = rng.gen_range(-1.0..1.0);
                    terms.push(FunctionSpec::scale(a, FunctionSpec::sin(arg.clone())));
                    terms.push(FunctionSpec::scale(b, FunctionSpec::cos(arg)));
                }
                FunctionSpec::sum(terms)
            }
            FamilyKind::ExpMix => {
                let terms = (0..self.degree.max(1)).map(|_| {
                    let c = rng.gen_range(-1.0..1.0);
                    let rate = rng.gen_range(-2.0..1.0);
                    FunctionSpec::scale(
                        c,
                        FunctionSpec::exp(FunctionSpec::scale(rate, FunctionSpec::var())),
                    )
                });
                FunctionSpec::sum(terms.collect::<Vec<_>>())
            }
        }
    }

    /// `v` with envelopes `v − c₁(1+τ²) ≤ v ≤ v + c₂(1+τ²)`; constants get
    /// themselves as both envelopes.
    fn draw_bounded(&self, rng: &mut ChaCha8Rng) -> BoundedFunction {
        let v = self.draw(rng);
        if self.kind == FamilyKind::Constant {
            return BoundedFunction::tight(v);
        }
        let bump = || FunctionSpec::add(FunctionSpec::constant(1.0), FunctionSpec::pow(2.0));
        let c1 = rng.gen_range(0.05..1.0);
        let c2 = rng.gen_range(0.05..1.0);
        BoundedFunction::new(
            v.clone(),
            v.clone().minus(FunctionSpec::scale(c1, bump())),
            FunctionSpec::add(v, FunctionSpec::scale(c2, bump())),
        )
    }
}

impl fmt::Display for CaseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)
    }
}

/// One generated or hand-written test case: two bounded functions and two
/// operators. Constant bounds, when absent, are taken from the extrema of
/// `v` and `u` over the certification grid and the quadrature nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub v: BoundedFunction,
    pub u: BoundedFunction,
    #[serde(flatten)]
    pub case: TwoParamCase,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_bounds: Option<ConstantBounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_bounds: Option<ConstantBounds>,
}

fn draw_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..=hi)
}

/// Deterministic case for `seed`, with parameters drawn from
/// `α, δ ∈ [0.2, 3]`, `ρ ∈ [0.4, 2.5]`, `η ∈ (−0.9, 2]`,
/// `β, λ, k ∈ [−1.5, 1.5]` and `x ∈ [0.3, x_max]`.
pub fn generate_case(seed: u64, family: &CaseFamily, x_max: f64, n: usize) -> Result<CaseSpec> {
    if !x_max.is_finite() || x_max < 0.3 {
        return Err(Error::Config(format!("x_max must be at least 0.3, got {x_max}")));
    }
    if n == 0 {
        return Err(Error::Config("node count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho = draw_in(&mut rng, 0.4, 2.5);
    let eta = 2.0 - 2.9 * rng.gen::<f64>();
    let k = draw_in(&mut rng, -1.5, 1.5);
    let alpha = draw_in(&mut rng, 0.2, 3.0);
    let beta = draw_in(&mut rng, -1.5, 1.5);
    let delta = draw_in(&mut rng, 0.2, 3.0);
    let lambda = draw_in(&mut rng, -1.5, 1.5);
    let x = draw_in(&mut rng, 0.3, x_max);
    let first = OperatorParams::new(rho, alpha, beta, eta, k)?;
    let second = first.with_order(delta, lambda)?;
    let v = family.draw_bounded(&mut rng);
    let u = family.draw_bounded(&mut rng);
    let spec = CaseSpec {
        v,
        u,
        case: TwoParamCase::new(first, second, x, n)?,
        v_bounds: None,
        u_bounds: None,
    };
    spec.v.certify(x, DEFAULT_GRID)?;
    spec.u.certify(x, DEFAULT_GRID)?;
    Ok(spec)
}

/// A case with bounds resolved and certified, ready to run any checker.
pub struct PreparedCase {
    spec: CaseSpec,
    inputs: serde_json::Value,
}

impl PreparedCase {
    pub fn new(spec: &CaseSpec) -> Result<Self> {
        let mut spec = spec.clone();
        let case = &spec.case;
        case.validate()?;
        spec.v.certify(case.x, DEFAULT_GRID)?;
        spec.u.certify(case.x, DEFAULT_GRID)?;
        let v_bounds = match spec.v_bounds {
            Some(b) => b,
            None => sampled_extrema(&spec.v.v, case)?,
        };
        let u_bounds = match spec.u_bounds {
            Some(b) => b,
            None => sampled_extrema(&spec.u.v, case)?,
        };
        v_bounds.certify(&spec.v.v, case.x, DEFAULT_GRID)?;
        u_bounds.certify(&spec.u.v, case.x, DEFAULT_GRID)?;
        spec.v_bounds = Some(v_bounds);
        spec.u_bounds = Some(u_bounds);
        let inputs = serde_json::to_value(&spec)
            .map_err(|e| Error::Config(format!("cannot serialize case: {e}")))?;
        Ok(PreparedCase { spec, inputs })
    }

    pub fn spec(&self) -> &CaseSpec {
        &self.spec
    }

    pub fn run(&self, theorem: TheoremId) -> Result<CheckReport> {
        let s = &self.spec;
        let case = &s.case;
        let single = TwoParamCase::single(case.first, case.x, case.n)?;
        let (vb, ub) = (s.v_bounds.unwrap(), s.u_bounds.unwrap());
        let mut report = match theorem {
            TheoremId::Composition => {
                return Err(Error::Config(
                    "composition is checked with check_composition, not on a case".into(),
                ))
            }
            TheoremId::Thm1 => unchecked::thm1(&s.v, case)?,
            TheoremId::Cor1 => unchecked::cor1(&s.v.v, &vb, case)?,
            TheoremId::Lemma1 => unchecked::lemma1(&s.v, &single)?,
            TheoremId::Thm2 => unchecked::thm2(&s.v, &s.u, &single)?,
            TheoremId::CsOneParam => unchecked::cs_one_param(&s.v.v, &s.u.v, &single)?,
            TheoremId::Lemma2 => unchecked::lemma2(&s.v, case)?,
            TheoremId::Thm3 => unchecked::thm3(&s.v, &s.u, case)?,
            TheoremId::Thm4(part) => unchecked::thm4(part, &s.v, &s.u, case)?,
            TheoremId::Cor2(part) => unchecked::cor2(part, &s.v.v, &s.u.v, &vb, &ub, case)?,
            TheoremId::Dahmani => {
                unchecked::constant_gap(theorem, 1.0, &s.v.v, &s.u.v, &vb, &ub, &single)?
            }
            TheoremId::Gruss => {
                unchecked::constant_gap(theorem, 0.25, &s.v.v, &s.u.v, &vb, &ub, &single)?
            }
        };
        report.inputs = self.inputs.clone();
        Ok(report)
    }
}

/// Extrema over the certification grid and every quadrature node of both
/// operators, so the discrete operators never see a value outside the bounds.
fn sampled_extrema(f: &FunctionSpec, case: &TwoParamCase) -> Result<ConstantBounds> {
    let (mut lo, mut hi) = f.grid_extrema(case.x, DEFAULT_GRID)?;
    for p in [&case.first, &case.second] {
        let op = FractionalOperator::left(p, case.x, case.n)?;
        for &tau in op.nodes() {
            let y = f.eval(tau)?;
            lo = lo.min(y);
            hi = hi.max(y);
        }
    }
    ConstantBounds::new(lo, hi)
}

/// Runs one checker on a case. `composition` reads `v.v` as the monomial and
/// `first`/`second` as the outer and inner operators.
pub fn evaluate(theorem: TheoremId, spec: &CaseSpec) -> Result<CheckReport> {
    if theorem == TheoremId::Composition {
        let c = &spec.case;
        return check_composition(&spec.v.v, &c.first, &c.second, c.x, c.n);
    }
    PreparedCase::new(spec)?.run(theorem)
}
