//! Gaussian quadrature rules via Golub–Welsch on the Jacobi matrix.
//!
//! Nodes are eigenvalues of the symmetric tridiagonal Jacobi matrix of the
//! orthogonal-polynomial recurrence; the weight attached to a node is the
//! squared first eigenvector component scaled by the zeroth moment of the
//! weight function. The tridiagonal eigenproblem is solved by QL iteration
//! with implicit shifts, tracking only the first eigenvector row.

use crate::error::{Error, Result};
use crate::laguerre::ln_gamma;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

const QL_MAX_ITER: usize = 60;

/// Eigenvalues of a symmetric tridiagonal matrix together with the first
/// component of each (normalized) eigenvector.
///
/// `diag` holds the n diagonal entries, `off` the n−1 sub-diagonal entries.
fn tridiag_eigen_first_row(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    assert!(off.len() + 1 == n || (n == 1 && off.is_empty()));
    let mut d = diag.to_vec();
    // Shifted copy: e[i] couples rows i and i+1, with a zero sentinel at the end.
    let mut e: Vec<f64> = off.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(Error::NoConvergence(format!(
                    "tridiagonal QL failed to isolate eigenvalue {l} after {QL_MAX_ITER} sweeps"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if r == 0.0 && m > l + 1 {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, z))
}

/// Gauss–Laguerre rule for the weight x^α e^{−x} on [0, ∞).
#[derive(Debug, Clone)]
pub struct GaussLaguerreRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    alpha: f64,
}

impl GaussLaguerreRule {
    pub fn new(node_count: usize, alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::Domain(format!(
                "Gauss–Laguerre weight needs alpha > −1, got {alpha}"
            )));
        }
        if node_count == 0 {
            return Err(Error::Domain("node count must be ≥ 1".into()));
        }
        let n = node_count;
        let diag: Vec<f64> = (0..n).map(|i| 2.0 * i as f64 + alpha + 1.0).collect();
        let off: Vec<f64> = (1..n)
            .map(|i| (i as f64 * (i as f64 + alpha)).sqrt())
            .collect();
        let (evals, first) = tridiag_eigen_first_row(&diag, &off)?;

        // Zeroth moment ∫ x^α e^{−x} dx = Γ(α+1).
        let mu0 = ln_gamma(alpha + 1.0).exp();
        let mut pairs: Vec<(f64, f64)> = evals
            .into_iter()
            .zip(first.into_iter().map(|z| mu0 * z * z))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        Ok(Self { nodes, weights, alpha })
    }

    /// Σ wᵢ f(xᵢ), approximating ∫₀^∞ x^α e^{−x} f(x) dx.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Gauss–Legendre rule on [0, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendreRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendreRule {
    pub fn new(node_count: usize) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::Domain("node count must be ≥ 1".into()));
        }
        let n = node_count;
        let diag = vec![0.0; n];
        let off: Vec<f64> = (1..n)
            .map(|i| {
                let k = i as f64;
                k / (4.0 * k * k - 1.0).sqrt()
            })
            .collect();
        let (evals, first) = tridiag_eigen_first_row(&diag, &off)?;
        // Zeroth moment on [−1, 1] is 2; map to [0, 1].
        let mut pairs: Vec<(f64, f64)> = evals
            .into_iter()
            .zip(first)
            .map(|(x, z)| ((x + 1.0) * 0.5, z * z))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        Ok(Self { nodes, weights })
    }

    /// Σ wᵢ f(xᵢ), approximating ∫₀¹ f(x) dx.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

type LaguerreCache = Mutex<HashMap<(u64, usize), Arc<GaussLaguerreRule>>>;
type LegendreCache = Mutex<HashMap<usize, Arc<GaussLegendreRule>>>;

static LAGUERRE_CACHE: OnceLock<LaguerreCache> = OnceLock::new();
static LEGENDRE_CACHE: OnceLock<LegendreCache> = OnceLock::new();

/// Cached Gauss–Laguerre rule, keyed by (alpha bit pattern, node count).
pub fn gauss_laguerre_rule(node_count: usize, alpha: f64) -> Result<Arc<GaussLaguerreRule>> {
    let cache = LAGUERRE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (alpha.to_bits(), node_count);
    if let Some(rule) = cache.lock().unwrap().get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(GaussLaguerreRule::new(node_count, alpha)?);
    cache
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&rule));
    Ok(rule)
}

/// Cached Gauss–Legendre rule on [0, 1].
pub fn gauss_legendre_rule(node_count: usize) -> Result<Arc<GaussLegendreRule>> {
    let cache = LEGENDRE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&node_count) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(GaussLegendreRule::new(node_count)?);
    cache
        .lock()
        .unwrap()
        .entry(node_count)
        .or_insert_with(|| Arc::clone(&rule));
    Ok(rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn laguerre_weight_normalization() {
        for n in [1, 4, 20, 200] {
            let rule = GaussLaguerreRule::new(n, 0.0).unwrap();
            assert_abs_diff_eq!(rule.integrate(|_| 1.0), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn laguerre_first_moment() {
        let rule = GaussLaguerreRule::new(6, 0.0).unwrap();
        // ∫ x e^{−x} = Γ(2) = 1
        assert_abs_diff_eq!(rule.integrate(|x| x), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn laguerre_polynomial_exactness() {
        // Degree ≤ 2n − 1 is integrated exactly: moments are Γ(k + α + 1).
        let rule = GaussLaguerreRule::new(5, 2.0).unwrap();
        for k in 0..=9u32 {
            let exact = ln_gamma(k as f64 + 3.0).exp();
            let got = rule.integrate(|x| x.powi(k as i32));
            assert!(
                ((got - exact) / exact).abs() < 1e-10,
                "moment {k}: got {got}, exact {exact}"
            );
        }
    }

    #[test]
    fn laguerre_known_three_node_rule() {
        // Frozen reference nodes/weights for n = 3, α = 0.
        let rule = GaussLaguerreRule::new(3, 0.0).unwrap();
        let x_ref = [0.4157745567834791, 2.294280360279042, 6.2899450829374794];
        let w_ref = [0.711093009929173, 0.27851773356924087, 0.010389256501586135];
        for i in 0..3 {
            assert_abs_diff_eq!(rule.nodes()[i], x_ref[i], epsilon = 1e-13);
            assert_abs_diff_eq!(rule.weights()[i], w_ref[i], epsilon = 1e-13);
        }
    }

    #[test]
    fn laguerre_rejects_bad_alpha() {
        assert!(GaussLaguerreRule::new(4, -1.0).is_err());
        assert!(GaussLaguerreRule::new(4, -1.5).is_err());
    }

    #[test]
    fn legendre_unit_interval_moments() {
        let rule = GaussLegendreRule::new(8).unwrap();
        for k in 0..=15u32 {
            let exact = 1.0 / (k as f64 + 1.0);
            assert_abs_diff_eq!(rule.integrate(|x| x.powi(k as i32)), exact, epsilon = 1e-13);
        }
    }

    #[test]
    fn legendre_two_nodes_cubic_exact() {
        let rule = GaussLegendreRule::new(2).unwrap();
        assert_abs_diff_eq!(rule.integrate(|x| x * x * x), 0.25, epsilon = 1e-14);
    }

    #[test]
    fn cache_returns_same_table() {
        let a = gauss_laguerre_rule(32, 1.5).unwrap();
        let b = gauss_laguerre_rule(32, 1.5).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let c = gauss_legendre_rule(16).unwrap();
        let d = gauss_legendre_rule(16).unwrap();
        assert!(Arc::ptr_eq(&c, &d));
    }
}
