//! Both sides of every identity and inequality, evaluated with the discrete
//! left-sided operator and reported as slack or residual.

mod checks;
mod functionals;
mod report;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{check_point, OperatorParams};

pub use checks::{
    check_cor1, check_cor2, check_cs_one_param, check_dahmani_remark, check_gruss, check_thm1,
    check_thm2, check_thm3, check_thm4, residual_lemma1, residual_lemma2,
};
pub(crate) use checks::unchecked;
pub use functionals::{functional_k, functional_t};
pub use report::{CheckKind, CheckReport, Part, TheoremId, DEFAULT_TOL};

/// Two operators that differ only in order and `β`: `(α, β)` in `first`,
/// `(δ, λ)` in `second`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoParamCase {
    pub first: OperatorParams,
    pub second: OperatorParams,
    pub x: f64,
    pub n: usize,
}

impl TwoParamCase {
    pub fn new(first: OperatorParams, second: OperatorParams, x: f64, n: usize) -> Result<Self> {
        let case = TwoParamCase {
            first,
            second,
            x,
            n,
        };
        case.validate()?;
        Ok(case)
    }

    /// Both operators equal to `p`.
    pub fn single(p: OperatorParams, x: f64, n: usize) -> Result<Self> {
        TwoParamCase::new(p, p, x, n)
    }

    pub fn validate(&self) -> Result<()> {
        self.first.validate()?;
        self.second.validate()?;
        check_point(self.x)?;
        if self.n == 0 {
            return Err(Error::domain("node count must be at least 1"));
        }
        let (a, b) = (&self.first, &self.second);
        if a.rho != b.rho || a.eta != b.eta || a.k != b.k {
            return Err(Error::precondition(
                "both operators must share rho, eta and k",
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_requires_shared_parameters() {
        let p = OperatorParams::new(1.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        let q = OperatorParams::new(1.0, 2.0, 0.5, 0.0, 0.0).unwrap();
        assert!(TwoParamCase::new(p, q, 1.0, 8).is_ok());
        let r = OperatorParams::new(1.0, 2.0, 0.5, 0.1, 0.0).unwrap();
        assert!(matches!(
            TwoParamCase::new(p, r, 1.0, 8),
            Err(Error::Precondition(_))
        ));
        assert!(TwoParamCase::new(p, q, 0.0, 8).is_err());
        assert!(TwoParamCase::new(p, q, 1.0, 0).is_err());
    }
}
