//! Gauss–Jacobi rules on `(0, 1)` by the Golub–Welsch construction.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::special::log_beta;

/// Gauss rule for the weight `(1-t)^a t^b` on `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub n: usize,
    /// Exponent of `(1 - t)`.
    pub a: f64,
    /// Exponent of `t`.
    pub b: f64,
    /// Strictly increasing, inside `(0, 1)`.
    pub nodes: Vec<f64>,
    /// Positive, summing to `B(b+1, a+1)`.
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// `Σ wᵢ f(tᵢ)`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }

    /// Zeroth moment `∫₀¹ (1-t)^a t^b dt` of the weight.
    pub fn zeroth_moment(&self) -> f64 {
        log_beta(self.b + 1.0, self.a + 1.0).exp()
    }
}

/// Builds the `n`-point Gauss rule for `(1-t)^a t^b` on `(0, 1)`.
///
/// The symmetric tridiagonal Jacobi matrix of the monic recurrence is
/// diagonalized with implicit QL; nodes are its eigenvalues and weights are
/// `μ₀ · (first eigenvector component)²`.
pub fn jacobi_rule(n: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::domain("quadrature rule needs at least one node"));
    }
    if !(a.is_finite() && b.is_finite()) || a <= -1.0 || b <= -1.0 {
        return Err(Error::domain(format!(
            "Jacobi exponents must be finite and > -1, got a={a}, b={b}"
        )));
    }

    let (mut diag, mut off) = recurrence(n, a, b);
    let mut first = vec![0.0; n];
    first[0] = 1.0;
    implicit_ql(&mut diag, &mut off, &mut first).ok_or(Error::NoConvergence(n))?;

    let mu0 = log_beta(b + 1.0, a + 1.0).exp();
    let mut pairs: Vec<(f64, f64)> = diag
        .into_iter()
        .zip(first)
        .map(|(t, z)| (t, mu0 * z * z))
        .collect();
    pairs.sort_by(|l, r| l.0.total_cmp(&r.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule {
        n,
        a,
        b,
        nodes,
        weights,
    })
}

/// Jacobi matrix of the monic polynomials orthogonal on `(0, 1)` for
/// `(1-t)^a t^b`: the `[-1, 1]` recurrence under `t = (1+s)/2`.
fn recurrence(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = a + b;
    let mut diag = Vec::with_capacity(n);
    let mut off = vec![0.0; n];

    diag.push((b + 1.0) / (ab + 2.0));
    for k in 1..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        // (1 + (b²-a²)/(s(s+2))) / 2 with the numerator combined
        diag.push((s * (s + 2.0) + (b - a) * ab) / (2.0 * s * (s + 2.0)));
    }
    for k in 1..n {
        let kf = k as f64;
        let beta = if k == 1 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            let s = 2.0 * kf + ab;
            4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
        off[k - 1] = beta.sqrt() / 2.0;
    }
    (diag, off)
}

/// Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal matrix,
/// tracking only the first row `z` of the eigenvector matrix.
///
/// On return `d` holds the eigenvalues (unsorted). `e[i]` couples rows `i` and
/// `i+1`; its contents are destroyed.
fn implicit_ql(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Option<()> {
    let n = d.len();
    if n == 1 {
        return Some(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == 60 {
                return None;
            }
            iter += 1;

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let bb = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bb;

                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Some(())
}

type RuleKey = (usize, u64, u64);

const CACHE_LIMIT: usize = 8192;

fn cache() -> &'static RwLock<HashMap<RuleKey, Arc<QuadratureRule>>> {
    static CACHE: OnceLock<RwLock<HashMap<RuleKey, Arc<QuadratureRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared, memoized [`jacobi_rule`]. The rule for a key is a pure function of
/// the key, so concurrent builders racing on a miss produce identical rules.
pub fn cached_rule(n: usize, a: f64, b: f64) -> Result<Arc<QuadratureRule>> {
    let key = (n, a.to_bits(), b.to_bits());
    if let Some(rule) = cache().read().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(jacobi_rule(n, a, b)?);
    let mut map = cache().write().unwrap_or_else(|e| e.into_inner());
    if map.len() >= CACHE_LIMIT {
        map.clear();
    }
    Ok(Arc::clone(map.entry(key).or_insert(rule)))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Moments of (1-t)^a t^b by the ratio recursion μⱼ₊₁/μⱼ = (b+1+j)/(a+b+2+j),
    /// anchored at a log-gamma-free μ₀ when a, b are small integers/halves is not
    /// needed: all checks below compare ratios μⱼ/μ₀.
    fn moment_ratio(a: f64, b: f64, j: usize) -> f64 {
        (0..j).fold(1.0, |acc, i| {
            acc * (b + 1.0 + i as f64) / (a + b + 2.0 + i as f64)
        })
    }

    #[test]
    fn midpoint_rule() {
        let r = jacobi_rule(1, 0.0, 0.0).unwrap();
        assert!((r.nodes[0] - 0.5).abs() < 1e-16);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn one_node_is_the_weight_mean() {
        for (alpha, eta) in [(0.3, -0.5), (1.0, 0.0), (2.5, 1.2), (0.7, 0.5)] {
            let r = jacobi_rule(1, alpha - 1.0, eta).unwrap();
            let node = moment_ratio(alpha - 1.0, eta, 1);
            assert!((r.nodes[0] - node).abs() < 1e-15);
            assert!((r.nodes[0] - (eta + 1.0) / (eta + alpha + 1.0)).abs() < 1e-15);
            let beta = r.zeroth_moment();
            assert!((r.weights[0] - beta).abs() <= 1e-14 * beta);
        }
    }

    #[test]
    fn two_point_legendre() {
        let r = jacobi_rule(2, 0.0, 0.0).unwrap();
        let s3 = 3f64.sqrt();
        assert!((r.nodes[0] - (3.0 - s3) / 6.0).abs() < 1e-15);
        assert!((r.nodes[1] - (3.0 + s3) / 6.0).abs() < 1e-15);
        assert!((r.weights[0] - 0.5).abs() < 1e-15);
        assert!((r.weights[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        for &(a, b) in &[(0.0, 0.0), (-0.7, -0.5), (1.5, 0.0), (-0.5, 1.2), (-0.9, -0.9), (3.0, 2.0)] {
            for n in [1usize, 2, 3, 5, 8, 16, 64] {
                let r = jacobi_rule(n, a, b).unwrap();
                let mu0 = r.zeroth_moment();
                for j in 0..(2 * n).min(14) {
                    let got = r.integrate(|t| t.powi(j as i32)) / mu0;
                    let want = moment_ratio(a, b, j);
                    assert!(
                        (got - want).abs() <= 1e-13 * want,
                        "a={a} b={b} n={n} j={j}: {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn rule_invariants() {
        for &(a, b) in &[(-0.8, 2.0), (0.0, -0.95), (2.0, 2.0), (-0.5, -0.5)] {
            for n in [1usize, 7, 32, 64, 100] {
                let r = jacobi_rule(n, a, b).unwrap();
                assert_eq!(r.nodes.len(), n);
                assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
                assert!(r.nodes.iter().all(|&t| t > 0.0 && t < 1.0));
                assert!(r.weights.iter().all(|&w| w > 0.0));
                let total: f64 = r.weights.iter().sum();
                let mu0 = r.zeroth_moment();
                assert!((total - mu0).abs() <= 1e-12 * mu0, "a={a} b={b} n={n}");
            }
        }
    }

    #[test]
    fn chebyshev_nodes_match_closed_form() {
        // a = b = -1/2 maps to Chebyshev–Gauss: t = (1 + cos((2i-1)π/2n)) / 2
        let n = 12;
        let r = jacobi_rule(n, -0.5, -0.5).unwrap();
        let mut want: Vec<f64> = (1..=n)
            .map(|i| {
                let th = (2 * i - 1) as f64 * std::f64::consts::PI / (2 * n) as f64;
                (1.0 + th.cos()) / 2.0
            })
            .collect();
        want.sort_by(f64::total_cmp);
        for (g, w) in r.nodes.iter().zip(&want) {
            assert!((g - w).abs() < 1e-14);
        }
        for w in &r.weights {
            assert!((w - std::f64::consts::PI / n as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(jacobi_rule(0, 0.0, 0.0).is_err());
        assert!(jacobi_rule(4, -1.0, 0.0).is_err());
        assert!(jacobi_rule(4, 0.0, -1.5).is_err());
        assert!(jacobi_rule(4, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn cache_returns_identical_rules() {
        let a = cached_rule(16, -0.3, 0.25).unwrap();
        let b = cached_rule(16, -0.3, 0.25).unwrap();
        assert_eq!(*a, *b);
        assert_eq!(*a, jacobi_rule(16, -0.3, 0.25).unwrap());
    }
}
