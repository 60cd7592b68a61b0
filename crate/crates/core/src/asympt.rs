//! Euler–Maclaurin expansion of the harmonic Page sum, and the large-N
//! entropy asymptote for factor dimensions that grow like section spaces of
//! powers of positive line bundles.
//!
//! The expansion applies Euler–Maclaurin to f(x) = 1/x:
//!
//! Σ_{k=n+1}^{mn} 1/k = ln m + (f(mn) − f(n))/2
//!                      + Σ_{k=1}^{p/2} B₂ₖ/(2k)·(n^{−2k} − (mn)^{−2k}) + R_p,
//!
//! with |R_p| ≤ 2ζ(p)/(2π)^p ∫_n^{mn} |f^{(p)}| dx evaluated in closed form.
//! Geometry enters only through dimension sequences N ↦ dim(N); no metric
//! data is ever consumed.

use crate::entropy::BERNOULLI_EVEN_F64;
use crate::error::{Error, Result};
use crate::page::{page_average_entropy, PageParams};
use serde::Serialize;

/// ζ(p) for even p ∈ {2, 4, 6, 8}, pinned to the closed forms π²/6, π⁴/90,
/// π⁶/945, π⁸/9450.
pub fn zeta_even(p: u32) -> Result<f64> {
    let pi = std::f64::consts::PI;
    match p {
        2 => Ok(pi.powi(2) / 6.0),
        4 => Ok(pi.powi(4) / 90.0),
        6 => Ok(pi.powi(6) / 945.0),
        8 => Ok(pi.powi(8) / 9450.0),
        _ => Err(Error::Domain(format!(
            "zeta is pinned for even p ∈ {{2, 4, 6, 8}}, got {p}"
        ))),
    }
}

/// A truncated Euler–Maclaurin value with its rigorous remainder bound.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EmExpansion {
    pub value: f64,
    pub order: u32,
    /// |value − exact sum| is guaranteed ≤ this bound.
    pub remainder_bound: f64,
}

fn check_order(p: u32) -> Result<()> {
    if p % 2 != 0 || !(2..=8).contains(&p) {
        return Err(Error::Domain(format!(
            "Euler–Maclaurin order must be even and in {{2, 4, 6, 8}}, got {p}"
        )));
    }
    Ok(())
}

/// Euler–Maclaurin approximation of Σ_{k=n+1}^{mn} 1/k at even order p.
pub fn euler_maclaurin_page_sum(params: PageParams, order: u32) -> Result<EmExpansion> {
    check_order(order)?;
    if params.m() < 2 {
        return Err(Error::Domain(
            "the Page sum is empty for m < 2; the expansion needs m ≥ 2".into(),
        ));
    }
    let m = params.m() as f64;
    let n = params.n() as f64;
    let mn = params.mn() as f64;

    let mut value = m.ln() + 0.5 * (1.0 / mn - 1.0 / n);
    for k in 1..=(order / 2) as usize {
        let b2k = BERNOULLI_EVEN_F64[k - 1];
        let e = 2 * k as i32;
        value += b2k / (2.0 * k as f64) * (n.powi(-e) - mn.powi(-e));
    }

    // ∫_n^{mn} |f^(p)| dx = (p−1)!·(n^{−p} − (mn)^{−p}) for f(x) = 1/x.
    let p = order as i32;
    let mut fact = 1.0;
    for i in 2..order {
        fact *= i as f64;
    }
    let integral = fact * (n.powi(-p) - mn.powi(-p));
    let remainder_bound =
        2.0 * zeta_even(order)? / (2.0 * std::f64::consts::PI).powi(p) * integral;
    Ok(EmExpansion {
        value,
        order,
        remainder_bound,
    })
}

/// Euler–Maclaurin approximation of ⟨E(m,n)⟩: the page-sum expansion plus the
/// exact terms 1/(2mn) − m/(2n), carrying the same remainder bound.
pub fn avg_entropy_expansion(params: PageParams, order: u32) -> Result<EmExpansion> {
    let em = euler_maclaurin_page_sum(params, order)?;
    let m = params.m() as f64;
    let n = params.n() as f64;
    let mn = params.mn() as f64;
    Ok(EmExpansion {
        value: em.value + 0.5 / mn - m / (2.0 * n),
        order: em.order,
        remainder_bound: em.remainder_bound,
    })
}

/// How a dimension sequence N ↦ dim(N) is generated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum DimensionRule {
    /// dim(N) = C(N + d, d), the section count of degree-N forms on
    /// projective d-space.
    Projective,
    /// dim(N) = round(V·N^d + Σ cᵢ·Nⁱ) with user-supplied lower coefficients
    /// c_{d−1}, …, c₀.
    Polynomial { lower: Vec<f64> },
}

/// A factor geometry reduced to what the asymptotics consume: complex
/// dimension d, leading Chern volume V, and the dimension sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometrySpec {
    d: u32,
    volume: f64,
    rule: DimensionRule,
}

impl GeometrySpec {
    /// Projective d-space with the Fubini–Study normalization V = 1/d!.
    pub fn projective(d: u32) -> Result<Self> {
        if d < 1 {
            return Err(Error::Config("geometry dimension must be ≥ 1".into()));
        }
        let mut fact = 1.0;
        for i in 2..=d {
            fact *= i as f64;
        }
        Ok(Self {
            d,
            volume: 1.0 / fact,
            rule: DimensionRule::Projective,
        })
    }

    /// Polynomial dimension sequence with leading coefficient `volume`.
    pub fn polynomial(d: u32, volume: f64, lower: Vec<f64>) -> Result<Self> {
        if d < 1 {
            return Err(Error::Config("geometry dimension must be ≥ 1".into()));
        }
        if !(volume > 0.0) || !volume.is_finite() {
            return Err(Error::Config(format!(
                "geometry volume must be a positive real, got {volume}"
            )));
        }
        if lower.len() > d as usize {
            return Err(Error::Config(format!(
                "polynomial geometry of dimension {d} takes at most {d} lower coefficients, got {}",
                lower.len()
            )));
        }
        Ok(Self {
            d,
            volume,
            rule: DimensionRule::Polynomial { lower },
        })
    }

    /// Parses `proj:d` or `poly:d:V[,c_{d−1},…,c₀]`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut parts = spec.splitn(3, ':');
        let kind = parts.next().unwrap_or_default();
        match kind {
            "proj" => {
                let d_str = parts
                    .next()
                    .ok_or_else(|| Error::Config(format!("'{spec}': missing dimension after 'proj:'")))?;
                let d: u32 = d_str.parse().map_err(|_| {
                    Error::Config(format!("'{spec}': dimension token '{d_str}' is not an integer"))
                })?;
                Self::projective(d)
            }
            "poly" => {
                let d_str = parts
                    .next()
                    .ok_or_else(|| Error::Config(format!("'{spec}': missing dimension after 'poly:'")))?;
                let d: u32 = d_str.parse().map_err(|_| {
                    Error::Config(format!("'{spec}': dimension token '{d_str}' is not an integer"))
                })?;
                let coeffs = parts
                    .next()
                    .ok_or_else(|| Error::Config(format!("'{spec}': missing coefficients after 'poly:{d}:'")))?;
                let mut values = coeffs.split(',');
                let v_str = values.next().unwrap_or_default();
                let volume: f64 = v_str.parse().map_err(|_| {
                    Error::Config(format!("'{spec}': volume token '{v_str}' is not a number"))
                })?;
                let lower: Vec<f64> = values
                    .map(|t| {
                        t.parse().map_err(|_| {
                            Error::Config(format!("'{spec}': coefficient token '{t}' is not a number"))
                        })
                    })
                    .collect::<Result<_>>()?;
                Self::polynomial(d, volume, lower)
            }
            other => Err(Error::Config(format!(
                "'{spec}': unknown geometry kind '{other}', expected proj or poly"
            ))),
        }
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Relative deviation of dim(N)/N^d from the declared volume.
    pub fn volume_residual(&self, n: u64) -> Result<f64> {
        let dim = section_dimension(self, n)? as f64;
        let scaled = dim / (n as f64).powi(self.d as i32);
        Ok((scaled - self.volume).abs() / self.volume)
    }
}

impl std::fmt::Display for GeometrySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.rule {
            DimensionRule::Projective => write!(f, "proj:{}", self.d),
            DimensionRule::Polynomial { lower } => {
                write!(f, "poly:{}:{}", self.d, self.volume)?;
                for c in lower {
                    write!(f, ",{c}")?;
                }
                Ok(())
            }
        }
    }
}

/// dim(N) for the geometry's preset; exact binomials for projective space,
/// rounded polynomial evaluation otherwise.
pub fn section_dimension(geom: &GeometrySpec, n: u64) -> Result<u64> {
    if n < 1 {
        return Err(Error::Domain("section dimension needs N ≥ 1".into()));
    }
    match &geom.rule {
        DimensionRule::Projective => {
            let d = geom.d as u64;
            let mut acc: u128 = 1;
            for i in 0..d {
                acc = acc
                    .checked_mul((n + d - i) as u128)
                    .ok_or_else(|| Error::Config(format!("C(N+d, d) overflows at N = {n}")))?;
                acc /= (i + 1) as u128;
            }
            u64::try_from(acc)
                .map_err(|_| Error::Config(format!("C(N+d, d) exceeds u64 at N = {n}")))
        }
        DimensionRule::Polynomial { lower } => {
            let nf = n as f64;
            let mut value = geom.volume * nf.powi(geom.d as i32);
            for (offset, c) in lower.iter().enumerate() {
                let power = geom.d as i32 - 1 - offset as i32;
                value += c * nf.powi(power);
            }
            let rounded = value.round();
            if !(rounded >= 1.0) {
                return Err(Error::Config(format!(
                    "dimension function evaluates to {rounded} < 1 at N = {n}"
                )));
            }
            if rounded > u64::MAX as f64 {
                return Err(Error::Config(format!(
                    "dimension function exceeds u64 at N = {n}"
                )));
            }
            Ok(rounded as u64)
        }
    }
}

/// The constants of the large-N asymptote: A₁ = ln V₁ always, A₂ = −V₁/(2V₂)
/// exactly when the two dimensions agree.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AsymptoteConstants {
    pub a1: f64,
    pub a2: Option<f64>,
}

/// Prediction d₁·ln N + A₁ (+ A₂ when d₁ = d₂).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AsymptotePrediction {
    pub value: f64,
    pub constants: AsymptoteConstants,
    /// True when the geometries arrived in descending dimension order and
    /// were swapped to restore d₁ ≤ d₂.
    pub swapped: bool,
}

/// Large-N average-entropy asymptote for the pair of geometries at parameter N.
pub fn predicted_entropy_asymptote(
    geom1: &GeometrySpec,
    geom2: &GeometrySpec,
    n: u64,
) -> Result<AsymptotePrediction> {
    if n < 1 {
        return Err(Error::Domain("asymptote needs N ≥ 1".into()));
    }
    let (g1, g2, swapped) = if geom1.d <= geom2.d {
        (geom1, geom2, false)
    } else {
        (geom2, geom1, true)
    };
    let a1 = g1.volume.ln();
    let a2 = (g1.d == g2.d).then(|| -g1.volume / (2.0 * g2.volume));
    let value = g1.d as f64 * (n as f64).ln() + a1 + a2.unwrap_or(0.0);
    Ok(AsymptotePrediction {
        value,
        constants: AsymptoteConstants { a1, a2 },
        swapped,
    })
}

/// One row of the exact-vs-asymptote comparison.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    /// Bundle power N.
    pub n_param: u64,
    /// Smaller factor dimension used in the exact formula.
    pub m: u64,
    /// Larger factor dimension.
    pub n_dim: u64,
    pub exact: f64,
    pub asymptote: f64,
    pub diff: f64,
    pub n_times_diff: f64,
    /// True when dim₁(N) > dim₂(N) forced a per-row swap.
    pub row_swapped: bool,
}

/// Exact-vs-asymptote table over a list of N values; row failures are
/// reported in place without aborting the table.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceTable {
    pub rows: Vec<std::result::Result<ConvergenceRow, String>>,
    /// Whether dim(N)/N^d matched the declared volume within 10% at the
    /// largest N, per geometry.
    pub volume_check: [bool; 2],
}

pub fn convergence_table(
    geom1: &GeometrySpec,
    geom2: &GeometrySpec,
    n_list: &[u64],
) -> Result<ConvergenceTable> {
    if n_list.is_empty() {
        return Err(Error::Config("the N list is empty".into()));
    }
    let n_max = *n_list.iter().max().unwrap();
    let volume_check = [
        geom1.volume_residual(n_max).map(|r| r <= 0.10).unwrap_or(false),
        geom2.volume_residual(n_max).map(|r| r <= 0.10).unwrap_or(false),
    ];
    let rows = n_list
        .iter()
        .map(|&n| -> std::result::Result<ConvergenceRow, String> {
            let build = || -> Result<ConvergenceRow> {
                let dim1 = section_dimension(geom1, n)?;
                let dim2 = section_dimension(geom2, n)?;
                let (m, n_dim, row_swapped) = if dim1 <= dim2 {
                    (dim1, dim2, false)
                } else {
                    (dim2, dim1, true)
                };
                let exact = page_average_entropy(PageParams::new(m, n_dim)?)?;
                let asymptote = predicted_entropy_asymptote(geom1, geom2, n)?.value;
                let diff = exact - asymptote;
                Ok(ConvergenceRow {
                    n_param: n,
                    m,
                    n_dim,
                    exact,
                    asymptote,
                    diff,
                    n_times_diff: n as f64 * diff,
                    row_swapped,
                })
            };
            build().map_err(|e| e.to_string())
        })
        .collect();
    Ok(ConvergenceTable { rows, volume_check })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{digamma, harmonic_range};
    use approx::assert_abs_diff_eq;

    fn pp(m: u64, n: u64) -> PageParams {
        PageParams::new(m, n).unwrap()
    }

    #[test]
    fn zeta_pinned_values() {
        assert_abs_diff_eq!(zeta_even(2).unwrap(), 1.6449340668482264, epsilon = 1e-15);
        assert_abs_diff_eq!(zeta_even(4).unwrap(), 1.0823232337111382, epsilon = 1e-15);
        assert_abs_diff_eq!(zeta_even(6).unwrap(), 1.0173430619844491, epsilon = 1e-15);
        assert_abs_diff_eq!(zeta_even(8).unwrap(), 1.0040773561979443, epsilon = 1e-15);
        assert!(zeta_even(3).is_err());
    }

    #[test]
    fn zeta_matches_direct_series_with_em_tail() {
        // Direct series oracle: Σ_{k<K} k^{−p} + tail by Euler–Maclaurin,
        // tail ≈ K^{1−p}/(p−1) + K^{−p}/2 + p·K^{−p−1}/12.
        for p in [2u32, 4, 6, 8] {
            let k_cut = 2000u64;
            let mut s = 0.0;
            for k in 1..k_cut {
                s += (k as f64).powi(-(p as i32));
            }
            let kf = k_cut as f64;
            let tail = kf.powi(1 - p as i32) / (p as f64 - 1.0)
                + 0.5 * kf.powi(-(p as i32))
                + p as f64 / 12.0 * kf.powi(-(p as i32) - 1);
            assert!(
                (zeta_even(p).unwrap() - (s + tail)).abs() < 1e-12,
                "p = {p}"
            );
        }
    }

    #[test]
    fn em_sum_ten_by_ten_order_two() {
        let em = euler_maclaurin_page_sum(pp(10, 10), 2).unwrap();
        // Explicit arithmetic of the stated terms.
        let by_hand = 10.0_f64.ln()
            + 0.5 * (1.0 / 100.0 - 1.0 / 10.0)
            + (1.0 / 12.0) * (1.0 / 100.0 - 1.0 / 10_000.0);
        assert_abs_diff_eq!(em.value, by_hand, epsilon = 1e-15);
        // Against the direct-summation oracle, within the carried bound.
        let exact = harmonic_range(11, 100).unwrap();
        assert!(
            (em.value - exact).abs() <= em.remainder_bound,
            "value {}, exact {exact}, bound {}",
            em.value,
            em.remainder_bound
        );
    }

    #[test]
    fn em_remainder_bound_shrinks_with_order() {
        let p2 = euler_maclaurin_page_sum(pp(50, 50), 2).unwrap();
        let p4 = euler_maclaurin_page_sum(pp(50, 50), 4).unwrap();
        let p6 = euler_maclaurin_page_sum(pp(50, 50), 6).unwrap();
        assert!(p4.remainder_bound < p2.remainder_bound);
        assert!(p6.remainder_bound < p4.remainder_bound);
    }

    #[test]
    fn em_sum_huge_n_matches_digamma_route() {
        let em = euler_maclaurin_page_sum(pp(2, 1_000_000), 4).unwrap();
        let exact = digamma(2_000_001.0).unwrap() - digamma(1_000_001.0).unwrap();
        assert!((em.value - exact).abs() <= em.remainder_bound);
    }

    #[test]
    fn em_rejects_odd_order_and_tiny_m() {
        assert!(euler_maclaurin_page_sum(pp(4, 4), 3).is_err());
        assert!(euler_maclaurin_page_sum(pp(4, 4), 10).is_err());
        assert!(euler_maclaurin_page_sum(pp(1, 4), 2).is_err());
    }

    #[test]
    fn entropy_expansion_examples() {
        let e22 = avg_entropy_expansion(pp(2, 2), 2).unwrap();
        assert!((e22.value - 1.0 / 3.0).abs() <= e22.remainder_bound);

        let e88 = avg_entropy_expansion(pp(8, 8), 4).unwrap();
        let exact = page_average_entropy(pp(8, 8)).unwrap();
        assert!((e88.value - exact).abs() <= e88.remainder_bound);

        let e100 = avg_entropy_expansion(pp(100, 100), 2).unwrap();
        // Dominant terms: ln 100 − 1/2, corrections O(1e-4).
        assert!((e100.value - (100.0_f64.ln() - 0.5)).abs() < 1e-3);
    }

    #[test]
    fn expansion_bound_holds_on_grid() {
        for p in [2u32, 4] {
            for m in 2..=128u64 {
                for n in (m..=128).step_by(7) {
                    let em = avg_entropy_expansion(pp(m, n), p).unwrap();
                    let exact = page_average_entropy(pp(m, n)).unwrap();
                    assert!(
                        (em.value - exact).abs() <= em.remainder_bound,
                        "({m},{n}) p={p}: |{} − {exact}| > {}",
                        em.value,
                        em.remainder_bound
                    );
                }
            }
        }
    }

    #[test]
    fn section_dimension_projective() {
        let p1 = GeometrySpec::projective(1).unwrap();
        assert_eq!(section_dimension(&p1, 5).unwrap(), 6);
        let p2 = GeometrySpec::projective(2).unwrap();
        assert_eq!(section_dimension(&p2, 3).unwrap(), 10);
        let p3 = GeometrySpec::projective(3).unwrap();
        // C(7, 3) = 35
        assert_eq!(section_dimension(&p3, 4).unwrap(), 35);
    }

    #[test]
    fn section_dimension_polynomial() {
        let g = GeometrySpec::polynomial(1, 2.0, vec![0.0]).unwrap();
        assert_eq!(section_dimension(&g, 7).unwrap(), 14);
        let degenerate = GeometrySpec::polynomial(1, 0.001, vec![]).unwrap();
        let err = section_dimension(&degenerate, 3).unwrap_err();
        assert!(err.to_string().contains("N = 3"), "{err}");
    }

    #[test]
    fn projective_volume_matches_dimension_growth() {
        for d in 1..=3u32 {
            let g = GeometrySpec::projective(d).unwrap();
            let res = g.volume_residual(100).unwrap();
            assert!(res < 0.10, "d = {d}: residual {res}");
        }
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(GeometrySpec::parse("proj:2").unwrap(), GeometrySpec::projective(2).unwrap());
        let g = GeometrySpec::parse("poly:1:2,0").unwrap();
        assert_eq!(g, GeometrySpec::polynomial(1, 2.0, vec![0.0]).unwrap());
        for bad in ["proj", "proj:x", "poly:1", "poly:1:abc", "weird:1", "poly:0:1"] {
            assert!(GeometrySpec::parse(bad).is_err(), "{bad} should fail");
        }
    }

    #[test]
    fn asymptote_p1_self() {
        let p1 = GeometrySpec::projective(1).unwrap();
        let pred = predicted_entropy_asymptote(&p1, &p1, 40).unwrap();
        assert_abs_diff_eq!(pred.constants.a1, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(pred.constants.a2.unwrap(), -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(pred.value, (40.0_f64).ln() - 0.5, epsilon = 1e-14);
    }

    #[test]
    fn asymptote_dim_gap_drops_a2() {
        let g1 = GeometrySpec::polynomial(1, 2.0, vec![]).unwrap();
        let g2 = GeometrySpec::polynomial(2, 1.0, vec![]).unwrap();
        let pred = predicted_entropy_asymptote(&g1, &g2, 10).unwrap();
        assert!(pred.constants.a2.is_none());
        assert_abs_diff_eq!(pred.value, (10.0_f64).ln() + 2.0_f64.ln(), epsilon = 1e-14);
        assert!(!pred.swapped);

        // Same pair in reverse order gets swapped with a flag.
        let rev = predicted_entropy_asymptote(&g2, &g1, 10).unwrap();
        assert!(rev.swapped);
        assert_abs_diff_eq!(rev.value, pred.value, epsilon = 1e-15);
    }

    #[test]
    fn asymptote_half_volume_pair() {
        let g = GeometrySpec::polynomial(2, 0.5, vec![]).unwrap();
        let pred = predicted_entropy_asymptote(&g, &g, 25).unwrap();
        assert_abs_diff_eq!(
            pred.value,
            2.0 * (25.0_f64).ln() + 0.5_f64.ln() - 0.5,
            epsilon = 1e-14
        );
    }

    #[test]
    fn a2_is_negative_and_asymptote_increases() {
        let g = GeometrySpec::projective(2).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for n in [5u64, 10, 20, 40] {
            let pred = predicted_entropy_asymptote(&g, &g, n).unwrap();
            assert!(pred.constants.a2.unwrap() < 0.0);
            assert!(pred.value > prev);
            prev = pred.value;
        }
    }

    #[test]
    fn convergence_table_p1_bracket() {
        let p1 = GeometrySpec::projective(1).unwrap();
        let ns: Vec<u64> = vec![10, 20, 40, 80, 160, 320];
        let table = convergence_table(&p1, &p1, &ns).unwrap();
        assert_eq!(table.volume_check, [true, true]);
        for row in &table.rows {
            let row = row.as_ref().unwrap();
            assert_eq!(row.m, row.n_param + 1);
            assert!(
                row.n_times_diff.abs() <= 2.0,
                "N = {}: N·diff = {}",
                row.n_param,
                row.n_times_diff
            );
        }
    }

    #[test]
    fn convergence_table_mixed_dims_diff_decreases() {
        let p1 = GeometrySpec::projective(1).unwrap();
        let p2 = GeometrySpec::projective(2).unwrap();
        let ns: Vec<u64> = vec![10, 20, 40, 80, 160];
        let table = convergence_table(&p1, &p2, &ns).unwrap();
        let mut prev = f64::INFINITY;
        for row in &table.rows {
            let row = row.as_ref().unwrap();
            let d = row.diff.abs();
            assert!(d < prev, "N = {}: |diff| {d} ≥ {prev}", row.n_param);
            prev = d;
        }
    }

    #[test]
    fn convergence_table_reports_row_failures_in_place() {
        // Dimension function dips below 1 at small N: those rows fail, the
        // rest of the table still comes out.
        let bad = GeometrySpec::polynomial(1, 0.1, vec![]).unwrap();
        let good = GeometrySpec::projective(1).unwrap();
        let table = convergence_table(&bad, &good, &[1, 2, 100]).unwrap();
        assert!(table.rows[0].is_err());
        assert!(table.rows[1].is_err());
        assert!(table.rows[2].is_ok());
    }

    #[test]
    fn degenerate_m_one_row_has_zero_exact() {
        // A constant dimension-1 factor never entangles.
        let tiny = GeometrySpec::polynomial(1, 0.09, vec![]).unwrap();
        let big = GeometrySpec::projective(1).unwrap();
        let table = convergence_table(&tiny, &big, &[11]).unwrap();
        let row = table.rows[0].as_ref().unwrap();
        assert_eq!(row.m, 1);
        assert_eq!(row.exact, 0.0);
    }
}
