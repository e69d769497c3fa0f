//! Expression trees for the real functions fed to the operator.
//!
//! The canonical text form is prefix notation:
//!
//! ```text
//! (const c)        constant
//! (var t)          the integration variable
//! (pow t p)        t^p
//! (add e1 e2 ...)  sum of two or more terms
//! (mul e1 e2 ...)  product of two or more factors
//! (scale c e)      c * e
//! (sin e) (cos e) (exp e)
//! ```
//!
//! Numbers are printed with the shortest representation that parses back to
//! the same `f64`, so `parse(to_string(f)) == f` bit for bit.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub enum FunctionSpec {
    Const(f64),
    Var,
    Pow(f64),
    Add(Vec<FunctionSpec>),
    Mul(Vec<FunctionSpec>),
    Scale(f64, Box<FunctionSpec>),
    Sin(Box<FunctionSpec>),
    Cos(Box<FunctionSpec>),
    Exp(Box<FunctionSpec>),
}

// -0.0 is folded into 0.0 so that bitwise equality and hashing agree with `==`.
fn norm(c: f64) -> f64 {
    if c == 0.0 {
        0.0
    } else {
        c
    }
}

impl FunctionSpec {
    pub fn constant(c: f64) -> Self {
        FunctionSpec::Const(norm(c))
    }

    pub fn var() -> Self {
        FunctionSpec::Var
    }

    pub fn pow(p: f64) -> Self {
        FunctionSpec::Pow(norm(p))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: FunctionSpec, b: FunctionSpec) -> Self {
        FunctionSpec::Add(vec![a, b])
    }

    /// Sum of the given terms; a single term is returned unchanged.
    ///
    /// # Panics
    /// Panics on an empty iterator.
    pub fn sum(terms: impl IntoIterator<Item = FunctionSpec>) -> Self {
        let mut terms: Vec<_> = terms.into_iter().collect();
        assert!(!terms.is_empty(), "sum of no terms");
        if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            FunctionSpec::Add(terms)
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: FunctionSpec, b: FunctionSpec) -> Self {
        FunctionSpec::Mul(vec![a, b])
    }

    pub fn scale(c: f64, e: FunctionSpec) -> Self {
        FunctionSpec::Scale(norm(c), Box::new(e))
    }

    pub fn sin(e: FunctionSpec) -> Self {
        FunctionSpec::Sin(Box::new(e))
    }

    pub fn cos(e: FunctionSpec) -> Self {
        FunctionSpec::Cos(Box::new(e))
    }

    pub fn exp(e: FunctionSpec) -> Self {
        FunctionSpec::Exp(Box::new(e))
    }

    /// `self - other`, built as `(add self (scale -1 other))`.
    pub fn minus(self, other: FunctionSpec) -> Self {
        FunctionSpec::add(self, FunctionSpec::scale(-1.0, other))
    }

    /// Evaluates the tree at `tau`, failing on the first non-finite node.
    pub fn eval(&self, tau: f64) -> Result<f64> {
        let v = match self {
            FunctionSpec::Const(c) => *c,
            FunctionSpec::Var => tau,
            FunctionSpec::Pow(p) => power(tau, *p),
            FunctionSpec::Add(terms) => {
                let mut acc = 0.0;
                for t in terms {
                    acc += t.eval(tau)?;
                }
                acc
            }
            FunctionSpec::Mul(factors) => {
                let mut acc = 1.0;
                for f in factors {
                    acc *= f.eval(tau)?;
                }
                acc
            }
            FunctionSpec::Scale(c, e) => c * e.eval(tau)?,
            FunctionSpec::Sin(e) => e.eval(tau)?.sin(),
            FunctionSpec::Cos(e) => e.eval(tau)?.cos(),
            FunctionSpec::Exp(e) => e.eval(tau)?.exp(),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation {
                expr: self.to_string(),
                tau,
            })
        }
    }

    /// Parses the canonical prefix form. Whitespace between tokens is free.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser { src: text, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// If the tree is `c·t^p` (including constants and `(var t)`), returns `(c, p)`.
    pub fn as_monomial(&self) -> Option<(f64, f64)> {
        match self {
            FunctionSpec::Const(c) => Some((*c, 0.0)),
            FunctionSpec::Var => Some((1.0, 1.0)),
            FunctionSpec::Pow(p) => Some((1.0, *p)),
            FunctionSpec::Scale(c, e) => e.as_monomial().map(|(c2, p)| (c * c2, p)),
            _ => None,
        }
    }

    /// Minimum and maximum over `grid` uniform points `x·i/grid`, `i = 1..=grid`.
    pub fn grid_extrema(&self, x: f64, grid: usize) -> Result<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for tau in grid_points(x, grid) {
            let v = self.eval(tau)?;
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Ok((lo, hi))
    }
}

/// Uniform sample points on `(0, x]`.
pub(crate) fn grid_points(x: f64, grid: usize) -> impl Iterator<Item = f64> {
    let g = grid.max(1);
    (1..=g).map(move |i| x * (i as f64) / (g as f64))
}

fn power(tau: f64, p: f64) -> f64 {
    if p == p.trunc() && p.abs() <= 64.0 {
        tau.powi(p as i32)
    } else {
        tau.powf(p)
    }
}

impl PartialEq for FunctionSpec {
    fn eq(&self, other: &Self) -> bool {
        use FunctionSpec::*;
        match (self, other) {
            (Const(a), Const(b)) | (Pow(a), Pow(b)) => a.to_bits() == b.to_bits(),
            (Var, Var) => true,
            (Add(a), Add(b)) | (Mul(a), Mul(b)) => a == b,
            (Scale(c, a), Scale(d, b)) => c.to_bits() == d.to_bits() && a == b,
            (Sin(a), Sin(b)) | (Cos(a), Cos(b)) | (Exp(a), Exp(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for FunctionSpec {}

impl Hash for FunctionSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        use FunctionSpec::*;
        std::mem::discriminant(self).hash(state);
        match self {
            Const(c) | Pow(c) => c.to_bits().hash(state),
            Var => {}
            Add(v) | Mul(v) => v.hash(state),
            Scale(c, e) => {
                c.to_bits().hash(state);
                e.hash(state);
            }
            Sin(e) | Cos(e) | Exp(e) => e.hash(state),
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Const(c) => write!(f, "(const {c})"),
            FunctionSpec::Var => write!(f, "(var t)"),
            FunctionSpec::Pow(p) => write!(f, "(pow t {p})"),
            FunctionSpec::Add(terms) => write_list(f, "add", terms),
            FunctionSpec::Mul(terms) => write_list(f, "mul", terms),
            FunctionSpec::Scale(c, e) => write!(f, "(scale {c} {e})"),
            FunctionSpec::Sin(e) => write!(f, "(sin {e})"),
            FunctionSpec::Cos(e) => write!(f, "(cos {e})"),
            FunctionSpec::Exp(e) => write!(f, "(exp {e})"),
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, head: &str, items: &[FunctionSpec]) -> fmt::Result {
    write!(f, "({head}")?;
    for it in items {
        write!(f, " {it}")?;
    }
    write!(f, ")")
}

impl std::str::FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FunctionSpec::parse(s)
    }
}

impl Serialize for FunctionSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FunctionSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        FunctionSpec::parse(&text).map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(got) => Err(self.err(format!("expected `{c}`, found `{got}`"))),
            None => Err(self.err(format!("expected `{c}`, found end of input"))),
        }
    }

    fn atom(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a token"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        let tok = self.atom()?;
        match tok.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(Error::Parse {
                pos: start,
                msg: format!("expected a finite number, found `{tok}`"),
            }),
        }
    }

    fn variable(&mut self) -> Result<()> {
        let start = self.pos;
        match self.atom()? {
            "t" => Ok(()),
            other => Err(Error::Parse {
                pos: start,
                msg: format!("expected variable `t`, found `{other}`"),
            }),
        }
    }

    fn expr(&mut self) -> Result<FunctionSpec> {
        self.expect('(')?;
        let head_pos = self.pos;
        let head = self.atom()?;
        let e = match head {
            "const" => FunctionSpec::constant(self.number()?),
            "var" => {
                self.variable()?;
                FunctionSpec::Var
            }
            "pow" => {
                self.variable()?;
                FunctionSpec::pow(self.number()?)
            }
            "add" | "mul" => {
                let mut items = vec![self.expr()?];
                while self.peek() == Some('(') {
                    items.push(self.expr()?);
                }
                if items.len() < 2 {
                    return Err(self.err(format!("`{head}` needs at least two operands")));
                }
                if head == "add" {
                    FunctionSpec::Add(items)
                } else {
                    FunctionSpec::Mul(items)
                }
            }
            "scale" => {
                let c = self.number()?;
                FunctionSpec::scale(c, self.expr()?)
            }
            "sin" => FunctionSpec::sin(self.expr()?),
            "cos" => FunctionSpec::cos(self.expr()?),
            "exp" => FunctionSpec::exp(self.expr()?),
            other => {
                return Err(Error::Parse {
                    pos: head_pos,
                    msg: format!("unknown operator `{other}`"),
                })
            }
        };
        self.expect(')')?;
        Ok(e)
    }
}
