//! Generalized Laguerre polynomials L_k^{(α)} and the closed-form weighted
//! integrals built from them.
//!
//! The polynomials are evaluated by the stable three-term recurrence
//! (k+1)·L_{k+1} = (2k+α+1−x)·L_k − (k+α)·L_{k−1}; the Rodrigues form
//! x^{−α} e^x / k! · dᵏ/dxᵏ (e^{−x} x^{k+α}) is equivalent and kept only as
//! documentation. Gamma factors go through log-gamma so ratios like
//! Γ(k+α+1)/k! stay representable for k + α up to ~10⁴.

use crate::entropy::digamma;
use crate::error::{Error, Result};
use crate::quadrature::gauss_laguerre_rule;

/// Degree and weight parameter of a generalized Laguerre polynomial.
///
/// `alpha > −1` keeps the weight x^α e^{−x} integrable; in the average-entropy
/// computation α is always the integer n − m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreParams {
    pub k: usize,
    pub alpha: f64,
}

impl LaguerreParams {
    pub fn new(k: usize, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self { k, alpha })
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "Laguerre parameter needs alpha > −1, got {alpha}"
        )));
    }
    Ok(())
}

/// L_k^{(α)}(x) by the ascending three-term recurrence.
pub fn laguerre_eval(params: LaguerreParams, x: f64) -> Result<f64> {
    check_alpha(params.alpha)?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!(
            "laguerre_eval expects x ≥ 0, got {x}"
        )));
    }
    let alpha = params.alpha;
    if params.k == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..params.k {
        let kf = k as f64;
        let next = ((2.0 * kf + alpha + 1.0 - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Diagonal of the orthogonality relation: ∫ x^α e^{−x} [L_k^{(α)}]² = Γ(k+α+1)/k!.
pub fn laguerre_norm(k: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok((ln_gamma(k as f64 + alpha + 1.0) - ln_gamma(k as f64 + 1.0)).exp())
}

/// J_k(α) = ∫₀^∞ x^{α+1} [L_k^{(α)}]² e^{−x} dx = (2k+α+1)·Γ(k+α+1)/k!.
pub fn laguerre_j(k: usize, alpha: f64) -> Result<f64> {
    let norm = laguerre_norm(k, alpha)?;
    Ok((2.0 * k as f64 + alpha + 1.0) * norm)
}

/// I_k(α) = ∫₀^∞ x^{α+1} ln x [L_k^{(α)}]² e^{−x} dx
///        = Γ(k+α+1)/k! · [1 + 2k + (2k+α+1)·ψ(k+α+1)].
pub fn laguerre_i(k: usize, alpha: f64) -> Result<f64> {
    let norm = laguerre_norm(k, alpha)?;
    let kf = k as f64;
    let psi = digamma(kf + alpha + 1.0)?;
    Ok(norm * (1.0 + 2.0 * kf + (2.0 * kf + alpha + 1.0) * psi))
}

/// Quadrature of ∫₀^∞ x^α e^{−x} f(x) dx with a cached Gauss–Laguerre rule.
///
/// Exact for polynomial f of degree ≤ 2·nodes − 1; node computation failures
/// surface as [`Error::NoConvergence`].
pub fn gauss_laguerre_quadrature<F: FnMut(f64) -> f64>(
    f: F,
    alpha: f64,
    nodes: usize,
) -> Result<f64> {
    let rule = gauss_laguerre_rule(nodes, alpha)?;
    Ok(rule.integrate(f))
}

/// Natural log of Γ(x), Lanczos approximation (g = 7, 9 coefficients).
pub fn ln_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // Reflection keeps the series argument away from the poles.
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEF[0];
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}
