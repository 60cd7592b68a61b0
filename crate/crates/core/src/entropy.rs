//! Scalar entropy and the special-function kernel: Shannon entropy,
//! harmonic sums, digamma, Bernoulli numbers.

use crate::error::{Error, Result};
use num_rational::Ratio;

/// Euler–Mascheroni constant, 30 significant digits.
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;

/// Arguments at or above this point use the asymptotic digamma series directly;
/// smaller arguments are lifted by the recurrence ψ(x) = ψ(x+1) − 1/x.
const DIGAMMA_SERIES_THRESHOLD: f64 = 10.0;

/// Beyond this many terms, [`harmonic_range`] switches from direct compensated
/// summation to the digamma identity.
const HARMONIC_DIRECT_LIMIT: u64 = 100_000_000;

/// A validated probability vector (entries ≥ 0, sum = 1).
///
/// Construction tolerates a 1e-9 deviation of the sum from 1 and renormalizes,
/// so quadrature- or sampling-produced vectors do not spuriously fail.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    p: Vec<f64>,
}

impl ProbabilityVector {
    /// Tolerated deviation of the raw sum from 1 before rejection.
    pub const SUM_TOLERANCE: f64 = 1e-9;

    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::Invalid("probability vector is empty".into()));
        }
        let mut p = p;
        for x in &mut p {
            if !x.is_finite() {
                return Err(Error::Invalid("probability vector has a non-finite entry".into()));
            }
            if *x < 0.0 {
                // Tolerate only rounding-level negatives.
                if *x < -1e-12 {
                    return Err(Error::Invalid(format!(
                        "probability vector has a negative entry: {x}"
                    )));
                }
                *x = 0.0;
            }
        }
        let sum: f64 = kahan_sum(p.iter().copied());
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::Invalid(format!(
                "probability vector sums to {sum}, expected 1 within {}",
                Self::SUM_TOLERANCE
            )));
        }
        for x in &mut p {
            *x /= sum;
        }
        Ok(Self { p })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }
}

/// Shannon entropy −Σ pⱼ ln pⱼ in nats, with the convention 0·ln 0 = 0.
#[must_use]
pub fn shannon_entropy(p: &ProbabilityVector) -> f64 {
    shannon_entropy_unchecked(p.as_slice())
}

/// Entropy of a raw slice assumed to be a probability vector.
///
/// Hot path for Monte-Carlo sampling where the spectrum is normalized by
/// construction; use [`shannon_entropy`] for externally supplied vectors.
#[must_use]
pub fn shannon_entropy_unchecked(p: &[f64]) -> f64 {
    let mut h = 0.0;
    for &x in p {
        if x > 0.0 {
            h -= x * x.ln();
        }
    }
    h
}

/// Σ_{k=a}^{b} 1/k, with `b = a − 1` denoting the empty sum.
///
/// Direct compensated summation up to 10⁸ terms; beyond that the digamma
/// identity Σ = ψ(b+1) − ψ(a) is used, so the cost stays O(1).
pub fn harmonic_range(a: u64, b: u64) -> Result<f64> {
    if a < 1 {
        return Err(Error::Domain("harmonic_range requires a ≥ 1".into()));
    }
    if b + 1 < a {
        return Err(Error::Domain(format!(
            "harmonic_range requires b ≥ a − 1, got a = {a}, b = {b}"
        )));
    }
    if b + 1 == a {
        return Ok(0.0);
    }
    let terms = b - a + 1;
    if terms <= HARMONIC_DIRECT_LIMIT {
        // Smallest terms first.
        let mut sum = 0.0;
        let mut c = 0.0;
        let mut k = b;
        loop {
            let term = 1.0 / k as f64;
            let y = term - c;
            let t = sum + y;
            c = (t - sum) - y;
            sum = t;
            if k == a {
                break;
            }
            k -= 1;
        }
        Ok(sum)
    } else {
        Ok(digamma((b + 1) as f64)? - digamma(a as f64)?)
    }
}

/// Digamma function ψ(x) for x > 0.
///
/// Upward recurrence to x ≥ 10, then the asymptotic series
/// ln x − 1/(2x) − Σ B₂ₖ/(2k x^{2k}) with the Bernoulli table through B₂₀,
/// which keeps the truncation error below 1e-12 on the lifted argument.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "digamma requires finite x > 0, got {x}"
        )));
    }
    let mut acc = 0.0;
    let mut z = x;
    while z < DIGAMMA_SERIES_THRESHOLD {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut series = 0.0;
    let mut pow = inv2;
    for (k, &b2k) in BERNOULLI_EVEN_F64.iter().enumerate() {
        series += b2k / (2.0 * (k + 1) as f64) * pow;
        pow *= inv2;
    }
    Ok(acc + z.ln() - 0.5 / z - series)
}

/// B₂ₖ for k = 1..=10 in binary64, in step with [`BernoulliTable`].
pub const BERNOULLI_EVEN_F64: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Exact even-index Bernoulli numbers B₂ₖ, k = 1..=10, as rationals.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<Ratio<i128>>,
}

impl BernoulliTable {
    pub const DEPTH: usize = 10;

    #[must_use]
    pub fn new() -> Self {
        let values = vec![
            Ratio::new(1, 6),
            Ratio::new(-1, 30),
            Ratio::new(1, 42),
            Ratio::new(-1, 30),
            Ratio::new(5, 66),
            Ratio::new(-691, 2730),
            Ratio::new(7, 6),
            Ratio::new(-3617, 510),
            Ratio::new(43867, 798),
            Ratio::new(-174611, 330),
        ];
        Self { values }
    }

    /// B₂ₖ as an exact rational, k = 1..=10.
    pub fn b2k(&self, k: usize) -> Result<Ratio<i128>> {
        self.values
            .get(k.wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::Domain(format!("Bernoulli table holds k = 1..={}, got {k}", Self::DEPTH)))
    }

    /// B₂ₖ in binary64.
    pub fn b2k_f64(&self, k: usize) -> Result<f64> {
        let r = self.b2k(k)?;
        Ok(*r.numer() as f64 / *r.denom() as f64)
    }

    /// Verifies the whole table against Σ_{j=0}^{n} C(n+1, j) B_j = 0 in exact
    /// rational arithmetic (B₀ = 1, B₁ = −1/2, odd B vanish beyond that).
    pub fn self_check(&self) -> Result<()> {
        let b = |j: usize| -> Ratio<i128> {
            match j {
                0 => Ratio::new(1, 1),
                1 => Ratio::new(-1, 2),
                _ if j % 2 == 1 => Ratio::new(0, 1),
                _ => self.values[j / 2 - 1],
            }
        };
        for n in 1..=(2 * Self::DEPTH) {
            let mut acc = Ratio::new(0, 1);
            for j in 0..=n {
                acc += Ratio::from_integer(binomial_i128(n as u64 + 1, j as u64)) * b(j);
            }
            if acc != Ratio::new(0, 1) {
                return Err(Error::Invalid(format!(
                    "Bernoulli table fails the defining recurrence at n = {n}: residual {acc}"
                )));
            }
        }
        Ok(())
    }
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new()
    }
}

fn binomial_i128(n: u64, k: u64) -> i128 {
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// Compensated (Kahan) sum.
pub(crate) fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}
