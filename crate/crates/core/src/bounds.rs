//! Functional and constant bounds on integrands, certified by dense sampling.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{grid_points, FunctionSpec};

/// Number of uniform points on `(0, x]` used to certify bounds.
pub const DEFAULT_GRID: usize = 1024;

// Relative slack for rounding in the pointwise comparison.
const CERT_EPS: f64 = 1e-12;

fn le(a: f64, b: f64) -> bool {
    a <= b + CERT_EPS * a.abs().max(b.abs()).max(1.0)
}

/// A function `v` together with envelopes `lower ≤ v ≤ upper`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundedFunction {
    pub v: FunctionSpec,
    pub lower: FunctionSpec,
    pub upper: FunctionSpec,
}

impl BoundedFunction {
    pub fn new(v: FunctionSpec, lower: FunctionSpec, upper: FunctionSpec) -> Self {
        BoundedFunction { v, lower, upper }
    }

    /// `v` bounded by itself on both sides.
    pub fn tight(v: FunctionSpec) -> Self {
        BoundedFunction {
            lower: v.clone(),
            upper: v.clone(),
            v,
        }
    }

    /// Verifies `lower(τ) ≤ v(τ) ≤ upper(τ)` on `grid` uniform points of `(0, x]`.
    pub fn certify(&self, x: f64, grid: usize) -> Result<()> {
        for tau in grid_points(x, grid) {
            let lo = self.lower.eval(tau)?;
            let v = self.v.eval(tau)?;
            let hi = self.upper.eval(tau)?;
            if !le(lo, v) || !le(v, hi) {
                return Err(Error::precondition(format!(
                    "bounds violated at t={tau}: lower={lo}, v={v}, upper={hi} for v={}",
                    self.v
                )));
            }
        }
        Ok(())
    }

    /// Every component multiplied by `c`; for `c > 0` the ordering is preserved.
    pub fn scaled(&self, c: f64) -> Self {
        BoundedFunction {
            v: FunctionSpec::scale(c, self.v.clone()),
            lower: FunctionSpec::scale(c, self.lower.clone()),
            upper: FunctionSpec::scale(c, self.upper.clone()),
        }
    }
}

/// Constant bounds `lower ≤ f ≤ upper` (the `m, M` or `n, N` pairs).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantBounds {
    pub lower: f64,
    pub upper: f64,
}

impl ConstantBounds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(Error::precondition("constant bounds must be finite"));
        }
        if lower > upper {
            return Err(Error::precondition(format!(
                "constant bounds out of order: {lower} > {upper}"
            )));
        }
        Ok(ConstantBounds { lower, upper })
    }

    /// Grid extrema of `f` on `(0, x]`.
    pub fn from_grid(f: &FunctionSpec, x: f64, grid: usize) -> Result<Self> {
        let (lo, hi) = f.grid_extrema(x, grid)?;
        ConstantBounds::new(lo, hi)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn certify(&self, f: &FunctionSpec, x: f64, grid: usize) -> Result<()> {
        if self.lower > self.upper {
            return Err(Error::precondition(format!(
                "constant bounds out of order: {} > {}",
                self.lower, self.upper
            )));
        }
        for tau in grid_points(x, grid) {
            let v = f.eval(tau)?;
            if !le(self.lower, v) || !le(v, self.upper) {
                return Err(Error::precondition(format!(
                    "{f} = {v} at t={tau} lies outside [{}, {}]",
                    self.lower, self.upper
                )));
            }
        }
        Ok(())
    }

    /// Turns the constants into functional envelopes around `v`.
    pub fn as_envelope(&self, v: &FunctionSpec) -> BoundedFunction {
        BoundedFunction::new(
            v.clone(),
            FunctionSpec::constant(self.lower),
            FunctionSpec::constant(self.upper),
        )
    }

    pub fn scaled(&self, c: f64) -> Self {
        if c >= 0.0 {
            ConstantBounds {
                lower: c * self.lower,
                upper: c * self.upper,
            }
        } else {
            ConstantBounds {
                lower: c * self.upper,
                upper: c * self.lower,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> FunctionSpec {
        FunctionSpec::parse(s).unwrap()
    }

    #[test]
    fn certification() {
        let ok = BoundedFunction::new(f("(var t)"), f("(const 0)"), f("(const 1)"));
        assert!(ok.certify(1.0, DEFAULT_GRID).is_ok());
        // t exceeds 1 beyond x = 1
        assert!(matches!(
            ok.certify(1.5, DEFAULT_GRID),
            Err(Error::Precondition(_))
        ));
        let tight = BoundedFunction::tight(f("(sin (var t))"));
        assert!(tight.certify(3.0, DEFAULT_GRID).is_ok());
    }

    #[test]
    fn constant_bounds() {
        assert!(ConstantBounds::new(2.0, 1.0).is_err());
        let b = ConstantBounds::from_grid(&f("(sin (var t))"), 1.0, DEFAULT_GRID).unwrap();
        assert!((b.upper - 1f64.sin()).abs() < 1e-15);
        assert!(b.lower > 0.0 && b.lower < 1e-3);
        assert!(b.certify(&f("(sin (var t))"), 1.0, DEFAULT_GRID).is_ok());
        assert!(ConstantBounds::new(0.0, 0.5)
            .unwrap()
            .certify(&f("(var t)"), 1.0, 64)
            .is_err());
    }
}
