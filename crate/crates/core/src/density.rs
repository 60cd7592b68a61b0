//! The joint eigenvalue density Δ(p)² Π pⱼ^{n−m} on the simplex, and
//! deterministic quadrature of its normalized expectations — the oracle that
//! is independent of Monte Carlo.
//!
//! The radial/scale integrals that relate the sphere average to the simplex
//! ratio cancel between numerator and denominator, so quadrature runs on the
//! compact probability simplex F_m only. F_m is reached from the unit cube by
//! a Duffy-type map with tensorized Gauss–Legendre nodes; m is capped at 3 —
//! larger m is served by Monte Carlo.

use crate::entropy::shannon_entropy_unchecked;
use crate::error::{Error, Result};
use crate::mc::{mc_expectation, McEstimate};
use crate::page::PageParams;
use crate::quadrature::gauss_legendre_rule;
use serde::Serialize;

/// A point of the closed simplex T_m (Σ pⱼ ≤ 1) or of its probability face
/// F_m (Σ pⱼ = 1).
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    p: Vec<f64>,
}

impl SimplexPoint {
    /// A point with pⱼ ≥ 0 and Σ pⱼ ≤ 1.
    pub fn in_t_m(p: Vec<f64>) -> Result<Self> {
        Self::validate(&p, false)?;
        Ok(Self { p })
    }

    /// A point of the probability face: pⱼ ≥ 0 and Σ pⱼ = 1 within 1e-12.
    pub fn on_f_m(p: Vec<f64>) -> Result<Self> {
        Self::validate(&p, true)?;
        Ok(Self { p })
    }

    fn validate(p: &[f64], face: bool) -> Result<()> {
        if p.is_empty() {
            return Err(Error::Domain("simplex point needs at least one coordinate".into()));
        }
        let mut sum = 0.0;
        for &x in p {
            if !(x >= 0.0) {
                return Err(Error::Domain(format!(
                    "simplex point has a negative coordinate: {x}"
                )));
            }
            sum += x;
        }
        if face {
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::Domain(format!(
                    "point is off the probability face: Σ = {sum}"
                )));
            }
        } else if sum > 1.0 + 1e-12 {
            return Err(Error::Domain(format!(
                "point lies outside T_m: Σ = {sum} > 1"
            )));
        }
        Ok(())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }
}

/// Squared Vandermonde determinant Π_{j<k} (p_k − p_j)².
///
/// Symmetric under permutation; zero exactly when two coordinates coincide.
#[must_use]
pub fn vandermonde_sq(p: &[f64]) -> f64 {
    let mut acc = 1.0;
    for j in 0..p.len() {
        for k in (j + 1)..p.len() {
            let d = p[k] - p[j];
            acc *= d * d;
        }
    }
    acc
}

/// Unnormalized joint eigenvalue density Δ(p)² Π pⱼ^{n−m}, with 0⁰ = 1 when
/// n = m.
pub fn eigen_density_unnormalized(point: &SimplexPoint, params: PageParams) -> Result<f64> {
    let p = point.as_slice();
    if p.len() != params.m() as usize {
        return Err(Error::Domain(format!(
            "point has {} coordinates, params expect m = {}",
            p.len(),
            params.m()
        )));
    }
    let expo = params.n() - params.m();
    let mut weight = 1.0;
    if expo > 0 {
        let expo = i32::try_from(expo)
            .map_err(|_| Error::Domain(format!("exponent n − m = {expo} is too large")))?;
        for &x in p {
            weight *= x.powi(expo);
        }
    }
    Ok(vandermonde_sq(p) * weight)
}

/// Named functionals of a Schmidt probability vector, shared by the
/// quadrature and Monte-Carlo surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumFunctional {
    Entropy,
    Purity,
    MaxP,
}

impl SpectrumFunctional {
    pub fn eval(&self, p: &[f64]) -> f64 {
        match self {
            Self::Entropy => shannon_entropy_unchecked(p),
            Self::Purity => p.iter().map(|x| x * x).sum(),
            Self::MaxP => p.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Entropy => "entropy",
            Self::Purity => "purity",
            Self::MaxP => "maxp",
        }
    }
}

impl std::str::FromStr for SpectrumFunctional {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "entropy" => Ok(Self::Entropy),
            "purity" => Ok(Self::Purity),
            "maxp" => Ok(Self::MaxP),
            other => Err(Error::Config(format!(
                "unknown functional '{other}', expected entropy|purity|maxp"
            ))),
        }
    }
}

/// Result of a simplex quadrature with a resolution-doubling convergence
/// estimate.
#[derive(Debug, Clone, Serialize)]
pub struct SimplexExpectation {
    /// Value at the doubled resolution.
    pub value: f64,
    /// Value at the requested resolution.
    pub coarse_value: f64,
    /// |coarse − refined|.
    pub convergence_estimate: f64,
    /// False when the doubling still moves the result by more than 1e-4.
    pub converged: bool,
    pub resolution: usize,
}

const CONVERGENCE_TOL: f64 = 1e-4;
const MIN_RESOLUTION: usize = 8;

fn ratio_on_simplex<F>(f: &F, params: PageParams, nodes_per_axis: usize) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let m = params.m();
    let expo = (params.n() - m) as i32;
    let rule = gauss_legendre_rule(nodes_per_axis)?;
    let xs = rule.nodes();
    let ws = rule.weights();
    let mut num = 0.0;
    let mut den = 0.0;
    match m {
        2 => {
            for (&q, &w) in xs.iter().zip(ws) {
                let p = [q, 1.0 - q];
                let mut dens = (1.0 - 2.0 * q) * (1.0 - 2.0 * q);
                if expo > 0 {
                    dens *= (p[0] * p[1]).powi(expo);
                }
                num += w * f(&p) * dens;
                den += w * dens;
            }
        }
        3 => {
            // Duffy map of the unit square onto the triangle q₁ + q₂ ≤ 1:
            // q₁ = u, q₂ = v(1−u), Jacobian (1−u); q₃ closes the face.
            for (&u, &wu) in xs.iter().zip(ws) {
                for (&v, &wv) in xs.iter().zip(ws) {
                    let q1 = u;
                    let q2 = v * (1.0 - u);
                    let q3 = (1.0 - u) * (1.0 - v);
                    let p = [q1, q2, q3];
                    let mut dens = vandermonde_sq(&p);
                    if expo > 0 {
                        dens *= (q1 * q2 * q3).powi(expo);
                    }
                    let w = wu * wv * (1.0 - u);
                    num += w * f(&p) * dens;
                    den += w * dens;
                }
            }
        }
        _ => {
            return Err(Error::Domain(format!(
                "deterministic simplex quadrature supports m ∈ {{2, 3}}, got m = {m}"
            )))
        }
    }
    Ok(num / den)
}

/// Normalized expectation ∫ f·Δ²·Πq^{n−m} / ∫ Δ²·Πq^{n−m} over the
/// probability face F_m, by tensorized Gauss–Legendre at `resolution` nodes
/// per axis, refined once at double resolution.
///
/// `f` must be a symmetric function of the probability vector. Requires
/// m ∈ {2, 3} and resolution ≥ 8; failure to converge is flagged in the
/// output, not an error.
pub fn simplex_expectation<F>(
    f: F,
    params: PageParams,
    resolution: usize,
) -> Result<SimplexExpectation>
where
    F: Fn(&[f64]) -> f64,
{
    if resolution < MIN_RESOLUTION {
        return Err(Error::Domain(format!(
            "resolution {resolution} is below the minimum of {MIN_RESOLUTION} nodes per axis"
        )));
    }
    let coarse = ratio_on_simplex(&f, params, resolution)?;
    let refined = ratio_on_simplex(&f, params, resolution * 2)?;
    let convergence_estimate = (coarse - refined).abs();
    Ok(SimplexExpectation {
        value: refined,
        coarse_value: coarse,
        convergence_estimate,
        converged: convergence_estimate <= CONVERGENCE_TOL,
        resolution,
    })
}

/// Side-by-side report of the quadrature and sphere-Monte-Carlo values of the
/// same functional.
#[derive(Debug, Clone, Serialize)]
pub struct DensityCheckReport {
    pub m: u64,
    pub n: u64,
    pub functional: String,
    pub quadrature: f64,
    pub quadrature_convergence: f64,
    pub quadrature_converged: bool,
    pub mc_mean: f64,
    pub mc_std_error: f64,
    pub mc_samples: u64,
    pub seed: u64,
    /// |quadrature − MC| / SE.
    pub z_score: f64,
    /// True when the two sides agree within 4 standard errors.
    pub pass: bool,
}

/// Compares the simplex quadrature of a functional against sphere Monte
/// Carlo at 4·SE.
pub fn density_vs_sphere_check(
    params: PageParams,
    functional: SpectrumFunctional,
    samples: u64,
    seed: u64,
    resolution: usize,
) -> Result<DensityCheckReport> {
    let quad = simplex_expectation(|p| functional.eval(p), params, resolution)?;
    let mc: McEstimate = mc_expectation(params, |p| functional.eval(p), samples, seed)?;
    let z = if mc.std_error > 0.0 {
        (quad.value - mc.mean).abs() / mc.std_error
    } else {
        // Degenerate spread: exact agreement or hard failure.
        if (quad.value - mc.mean).abs() < 1e-12 {
            0.0
        } else {
            f64::INFINITY
        }
    };
    Ok(DensityCheckReport {
        m: params.m(),
        n: params.n(),
        functional: functional.name().to_string(),
        quadrature: quad.value,
        quadrature_convergence: quad.convergence_estimate,
        quadrature_converged: quad.converged,
        mc_mean: mc.mean,
        mc_std_error: mc.std_error,
        mc_samples: mc.samples,
        seed,
        z_score: z,
        pass: z <= 4.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pp(m: u64, n: u64) -> PageParams {
        PageParams::new(m, n).unwrap()
    }

    #[test]
    fn vandermonde_repeated_root_is_zero() {
        assert_eq!(vandermonde_sq(&[0.4, 0.4]), 0.0);
        assert_eq!(vandermonde_sq(&[0.1, 0.5, 0.1]), 0.0);
    }

    #[test]
    fn vandermonde_simple_values() {
        assert_eq!(vandermonde_sq(&[0.0, 1.0]), 1.0);
        // (2−1)·(4−1)·(4−2) = 6, squared = 36.
        assert_abs_diff_eq!(vandermonde_sq(&[1.0, 2.0, 4.0]), 36.0, epsilon = 1e-12);
    }

    #[test]
    fn vandermonde_permutation_symmetric() {
        let a = vandermonde_sq(&[0.2, 0.5, 0.9]);
        let b = vandermonde_sq(&[0.9, 0.2, 0.5]);
        assert_abs_diff_eq!(a, b, epsilon = 1e-15);
    }

    #[test]
    fn density_equal_dims_reduces_to_vandermonde() {
        let pt = SimplexPoint::in_t_m(vec![0.1, 0.3]).unwrap();
        let d = eigen_density_unnormalized(&pt, pp(2, 2)).unwrap();
        assert_abs_diff_eq!(d, vandermonde_sq(&[0.1, 0.3]), epsilon = 1e-15);
    }

    #[test]
    fn density_two_three_example() {
        // (0.5)²·(0.25·0.75) = 0.046875
        let pt = SimplexPoint::in_t_m(vec![0.25, 0.75]).unwrap();
        let d = eigen_density_unnormalized(&pt, pp(2, 3)).unwrap();
        assert_abs_diff_eq!(d, 0.046875, epsilon = 1e-15);
    }

    #[test]
    fn density_vanishes_on_repeated_coordinates() {
        let pt = SimplexPoint::in_t_m(vec![0.3, 0.3]).unwrap();
        assert_eq!(eigen_density_unnormalized(&pt, pp(2, 5)).unwrap(), 0.0);
    }

    #[test]
    fn density_rejects_mismatched_dims() {
        let pt = SimplexPoint::in_t_m(vec![0.3, 0.2, 0.1]).unwrap();
        assert!(eigen_density_unnormalized(&pt, pp(2, 4)).is_err());
    }

    #[test]
    fn simplex_point_validation() {
        assert!(SimplexPoint::in_t_m(vec![0.5, 0.6]).is_err());
        assert!(SimplexPoint::in_t_m(vec![-0.1, 0.5]).is_err());
        assert!(SimplexPoint::on_f_m(vec![0.5, 0.4]).is_err());
        assert!(SimplexPoint::on_f_m(vec![0.5, 0.5]).is_ok());
    }

    #[test]
    fn expectation_of_one_is_one() {
        for (m, n) in [(2u64, 2u64), (2, 5), (3, 3), (3, 4)] {
            let e = simplex_expectation(|_| 1.0, pp(m, n), 16).unwrap();
            assert_abs_diff_eq!(e.value, 1.0, epsilon = 1e-12);
            assert!(e.converged);
        }
    }

    /// Adaptive Simpson on [0, 1]; independent of the Gauss–Legendre engine.
    fn adaptive_simpson<F: Fn(f64) -> f64 + Copy>(f: F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let simpson = |lo: f64, hi: f64| {
            let mid = 0.5 * (lo + hi);
            (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi))
        };
        let mid = 0.5 * (a + b);
        let whole = simpson(a, b);
        let halves = simpson(a, mid) + simpson(mid, b);
        if depth == 0 || (whole - halves).abs() < 15.0 * tol {
            halves + (halves - whole) / 15.0
        } else {
            adaptive_simpson(f, a, mid, tol / 2.0, depth - 1)
                + adaptive_simpson(f, mid, b, tol / 2.0, depth - 1)
        }
    }

    #[test]
    fn entropy_2x2_matches_independent_adaptive_quadrature() {
        // Oracle: ∫₀¹ H(q, 1−q)(1−2q)² dq / ∫₀¹ (1−2q)² dq by adaptive Simpson.
        let h = |q: f64| {
            let mut acc = 0.0;
            for p in [q, 1.0 - q] {
                if p > 0.0 {
                    acc -= p * p.ln();
                }
            }
            acc
        };
        let num = adaptive_simpson(|q| h(q) * (1.0 - 2.0 * q).powi(2), 0.0, 1.0, 1e-12, 40);
        let den = 1.0 / 3.0;
        let oracle = num / den;

        let e = simplex_expectation(|p| shannon_entropy_unchecked(p), pp(2, 2), 64).unwrap();
        assert!(
            (e.value - oracle).abs() < 1e-6,
            "quadrature {} vs oracle {oracle}",
            e.value
        );
        // Ties the density theorem to the closed form: the oracle itself is 1/3.
        assert_abs_diff_eq!(oracle, 1.0 / 3.0, epsilon = 1e-9);
    }

    #[test]
    fn max_eigenvalue_2x2_piecewise_closed_form() {
        // ∫₀¹ max(q,1−q)(1−2q)² dq = 7/24 by piecewise integration, so the
        // normalized expectation is (7/24)/(1/3) = 7/8.
        let e = simplex_expectation(
            |p| p.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            pp(2, 2),
            64,
        )
        .unwrap();
        assert!(
            (e.value - 0.875).abs() < 1e-6,
            "max-eigenvalue expectation: {}",
            e.value
        );
    }

    #[test]
    fn purity_2x2_is_four_fifths() {
        let e = simplex_expectation(
            |p| p.iter().map(|x| x * x).sum::<f64>(),
            pp(2, 2),
            32,
        )
        .unwrap();
        assert_abs_diff_eq!(e.value, 0.8, epsilon = 1e-10);
    }

    #[test]
    fn coordinate_relabeling_invariance() {
        // The density is exchangeable, so E[qᵢ] must agree for every label
        // (each equals 1/3 at m = 3).
        for i in 0..3usize {
            let e = simplex_expectation(|p| p[i], pp(3, 4), 24).unwrap();
            assert!(
                (e.value - 1.0 / 3.0).abs() < 1e-8,
                "E[q_{i}] = {}",
                e.value
            );
        }
    }

    #[test]
    fn rejects_small_resolution_and_large_m() {
        assert!(simplex_expectation(|_| 1.0, pp(2, 2), 7).is_err());
        assert!(simplex_expectation(|_| 1.0, pp(4, 4), 16).is_err());
    }

    #[test]
    fn sphere_check_constant_functional() {
        let r = density_vs_sphere_check(pp(2, 2), SpectrumFunctional::Purity, 5_000, 9, 16)
            .unwrap();
        assert!(r.pass, "z = {}", r.z_score);
        let trivial = density_vs_sphere_check(pp(2, 3), SpectrumFunctional::Entropy, 5_000, 9, 16)
            .unwrap();
        assert!(trivial.pass, "z = {}", trivial.z_score);
    }
}
