//! Canonical ("modified") singular value decomposition of state matrices and
//! Schmidt spectra.
//!
//! A bipartite state in fixed orthonormal bases is an n×m complex matrix with
//! m ≤ n. Its SVD A = U·diag(σ)·V* is unique — for generic A — once the
//! singular values are ascending and the diagonal of V is real non-negative;
//! that canonical triple is what [`canonical_svd`] returns. The singular
//! values are the Schmidt coefficients; their normalized squares form the
//! spectrum of the reduced density matrix.
//!
//! Two independent numerical routes are kept deliberately separate:
//! [`canonical_svd`] runs one-sided Jacobi on the columns of A, while
//! [`schmidt_spectrum`] diagonalizes the m×m Gram matrix A*A with Hermitian
//! Jacobi rotations, so either can serve as an oracle for the other.

use crate::error::{Error, Result};
use num_complex::Complex64;

const JACOBI_MAX_SWEEPS: usize = 60;
/// Relative off-diagonal threshold for Jacobi convergence.
const JACOBI_TOL: f64 = 1e-15;

/// Dense complex matrix, column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            m[(j, j)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_column_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Invalid(format!(
                "matrix data length {} does not match {rows}×{cols}",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// A* B for conformable matrices (self is the left factor, conjugated).
    pub fn conj_transpose_mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Self::zeros(self.cols, rhs.cols);
        for j in 0..rhs.cols {
            for i in 0..self.cols {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..self.rows {
                    acc += self[(r, i)].conj() * rhs[(r, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// self · diag(s) · other* — the SVD reconstruction product.
    pub fn mul_diag_conj_transpose(&self, s: &[f64], other: &Self) -> Self {
        assert_eq!(self.cols, s.len());
        assert_eq!(other.cols, s.len());
        let mut out = Self::zeros(self.rows, other.rows);
        for j in 0..other.rows {
            for i in 0..self.rows {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..s.len() {
                    acc += self[(i, k)] * s[k] * other[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// max |(self* self − I)_{jk}| — column-orthonormality residual.
    pub fn unitarity_residual(&self) -> f64 {
        let g = self.conj_transpose_mul(self);
        let mut worst = 0.0f64;
        for j in 0..g.cols {
            for i in 0..g.rows {
                let target = if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                worst = worst.max((g[(i, j)] - target).norm());
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[j * self.rows + i]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[j * self.rows + i]
    }
}

/// Coefficient matrix of a vector in H₁ ⊗ H₂: n rows, m columns, m ≤ n.
#[derive(Debug, Clone, PartialEq)]
pub struct StateMatrix {
    mat: CMatrix,
}

impl StateMatrix {
    /// Builds an n×m state matrix from column-major entries.
    ///
    /// Rejects m > n (callers must transpose) and non-finite entries.
    pub fn new(n: usize, m: usize, entries: Vec<Complex64>) -> Result<Self> {
        if m < 1 {
            return Err(Error::Invalid("state matrix needs m ≥ 1".into()));
        }
        if m > n {
            return Err(Error::Invalid(format!(
                "state matrix needs m ≤ n, got m = {m}, n = {n}; transpose the input"
            )));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Invalid("state matrix has a non-finite entry".into()));
        }
        let mat = CMatrix::from_column_major(n, m, entries)?;
        Ok(Self { mat })
    }

    pub fn from_fn(n: usize, m: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let mut data = Vec::with_capacity(n * m);
        for j in 0..m {
            for i in 0..n {
                data.push(f(i, j));
            }
        }
        Self::new(n, m, data)
    }

    /// Factor dimension m (number of columns).
    pub fn m(&self) -> usize {
        self.mat.cols()
    }

    /// Factor dimension n (number of rows).
    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.frobenius_norm()
    }

    /// Whether this is a unit state (Frobenius norm 1 within 1e-12).
    pub fn is_unit(&self) -> bool {
        (self.frobenius_norm() - 1.0).abs() <= 1e-12
    }
}

/// The canonical SVD triple: U (n×m, orthonormal columns), ascending σ,
/// V (m×m unitary with real non-negative diagonal).
#[derive(Debug, Clone)]
pub struct ModifiedSvd {
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

impl ModifiedSvd {
    /// U · diag(σ) · V*.
    pub fn reconstruct(&self) -> CMatrix {
        self.u.mul_diag_conj_transpose(&self.sigma, &self.v)
    }

    /// Largest imaginary residue on the diagonal of V (canonically 0).
    pub fn v_diag_imag_residual(&self) -> f64 {
        (0..self.v.cols())
            .map(|j| self.v[(j, j)].im.abs())
            .fold(0.0, f64::max)
    }

    /// Entrywise reconstruction error against a state matrix.
    pub fn reconstruction_residual(&self, a: &StateMatrix) -> f64 {
        let r = self.reconstruct();
        let mut worst = 0.0f64;
        for j in 0..a.m() {
            for i in 0..a.n() {
                worst = worst.max((r[(i, j)] - a.matrix()[(i, j)]).norm());
            }
        }
        worst
    }
}

/// Ascending Schmidt coefficients σ and the probability vector pⱼ = σⱼ²/Σσₖ².
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    pub sigma: Vec<f64>,
    pub p: Vec<f64>,
}

/// One complex Jacobi rotation: the unitary that diagonalizes the 2×2
/// Hermitian block [[app, apq], [conj(apq), aqq]].
///
/// Returns (c, s, phase) for J = [[c, s·phase], [−s·conj(phase)... ]] applied
/// in the column convention used below; `None` when the block is already
/// diagonal at working precision.
fn jacobi_rotation(app: f64, aqq: f64, apq: Complex64) -> Option<(f64, f64, Complex64)> {
    let g = apq.norm();
    if g <= JACOBI_TOL * (app * aqq).sqrt() || g == 0.0 {
        return None;
    }
    // Phase e^{iφ} of the coupling; factoring it out leaves a real block.
    let phase = apq / g;
    let tau = (aqq - app) / (2.0 * g);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = c * t;
    Some((c, s, phase))
}

/// Plain SVD by one-sided Jacobi: returns (U, σ, V) with A = U·diag(σ)·V*,
/// σ in no particular order and phases unconstrained.
fn one_sided_jacobi(a: &StateMatrix) -> Result<(CMatrix, Vec<f64>, CMatrix)> {
    let n = a.n();
    let m = a.m();
    let mut w = a.matrix().clone();
    let mut v = CMatrix::identity(m);

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..m {
            for q in (p + 1)..m {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    let wp = w[(i, p)];
                    let wq = w[(i, q)];
                    app += wp.norm_sqr();
                    aqq += wq.norm_sqr();
                    apq += wp.conj() * wq;
                }
                let Some((c, s, phase)) = jacobi_rotation(app, aqq, apq) else {
                    continue;
                };
                rotated = true;
                // Columns (p, q) ← (p, q) · J with
                // J = [[c, s], [−s·conj(phase), c·conj(phase)]].
                let pc = phase.conj();
                for i in 0..n {
                    let wp = w[(i, p)];
                    let wq = w[(i, q)];
                    w[(i, p)] = c * wp - s * pc * wq;
                    w[(i, q)] = s * wp + c * pc * wq;
                }
                for i in 0..m {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = c * vp - s * pc * vq;
                    v[(i, q)] = s * vp + c * pc * vq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!(
            "one-sided Jacobi SVD did not converge in {JACOBI_MAX_SWEEPS} sweeps"
        )));
    }

    let mut sigma = vec![0.0; m];
    let mut u = CMatrix::zeros(n, m);
    let scale = w.frobenius_norm();
    for j in 0..m {
        let norm = w.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        sigma[j] = norm;
        if norm > scale * 1e-14 + f64::MIN_POSITIVE {
            for i in 0..n {
                u[(i, j)] = w[(i, j)] / norm;
            }
        } else {
            sigma[j] = 0.0;
        }
    }
    fill_null_columns(&mut u, &sigma);
    Ok((u, sigma, v))
}

/// Columns of U belonging to zero singular values are arbitrary; fix them by
/// Gram–Schmidt of the standard basis against the columns already present.
fn fill_null_columns(u: &mut CMatrix, sigma: &[f64]) {
    let n = u.rows();
    let m = u.cols();
    for j in 0..m {
        if sigma[j] > 0.0 {
            continue;
        }
        let mut candidate = 0usize;
        loop {
            assert!(candidate < n, "Gram–Schmidt exhausted the standard basis");
            let mut col = vec![Complex64::new(0.0, 0.0); n];
            col[candidate] = Complex64::new(1.0, 0.0);
            for k in 0..m {
                if k == j || (sigma[k] == 0.0 && k > j) {
                    continue;
                }
                let proj: Complex64 = (0..n).map(|i| u[(i, k)].conj() * col[i]).sum();
                for i in 0..n {
                    let corr = proj * u[(i, k)];
                    col[i] -= corr;
                }
            }
            let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 0.5 {
                for (i, z) in col.iter().enumerate() {
                    u[(i, j)] = z / norm;
                }
                break;
            }
            candidate += 1;
        }
    }
}

/// Brings an arbitrary SVD triple to the canonical form: σ ascending
/// (ties broken by descending lexicographic order of the real parts of V's
/// columns, so e.g. the identity is a fixed point) and every diagonal entry
/// of V real non-negative. Columns with V_jj = 0 keep phase 1.
pub fn canonicalize(u: &CMatrix, sigma: &[f64], v: &CMatrix) -> Result<ModifiedSvd> {
    let m = sigma.len();
    if u.cols() != m || v.cols() != m || v.rows() != m {
        return Err(Error::Invalid("SVD triple has mismatched shapes".into()));
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        sigma[a].total_cmp(&sigma[b]).then_with(|| {
            for i in 0..m {
                let cmp = v[(i, b)].re.total_cmp(&v[(i, a)].re);
                if cmp != std::cmp::Ordering::Equal {
                    return cmp;
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    let n = u.rows();
    let mut cu = CMatrix::zeros(n, m);
    let mut cv = CMatrix::zeros(m, m);
    let mut cs = vec![0.0; m];
    for (newj, &oldj) in order.iter().enumerate() {
        cs[newj] = sigma[oldj];
        // Phase that makes the (newj, newj) diagonal entry of V real ≥ 0.
        let d = v[(newj, oldj)];
        let phase = if d.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            (d / d.norm()).conj()
        };
        for i in 0..n {
            cu[(i, newj)] = u[(i, oldj)] * phase;
        }
        for i in 0..m {
            cv[(i, newj)] = v[(i, oldj)] * phase;
        }
    }
    Ok(ModifiedSvd {
        u: cu,
        sigma: cs,
        v: cv,
    })
}

/// The unique modified SVD of a state matrix: ascending singular values,
/// orthonormal U columns, unitary V with real non-negative diagonal.
pub fn canonical_svd(a: &StateMatrix) -> Result<ModifiedSvd> {
    let (u, sigma, v) = one_sided_jacobi(a)?;
    canonicalize(&u, &sigma, &v)
}

/// Ascending eigenvalues of a Hermitian matrix by cyclic complex Jacobi.
///
/// The matrix is consumed as a working copy; eigenvalues of a PSD input are
/// clamped at 0.
fn hermitian_eigenvalues(mut h: CMatrix) -> Result<Vec<f64>> {
    let m = h.rows();
    assert_eq!(m, h.cols());
    if m == 1 {
        return Ok(vec![h[(0, 0)].re]);
    }
    let scale = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..m {
            for q in (p + 1)..m {
                off = off.max(h[(p, q)].norm());
            }
        }
        if off <= scale * 1e-15 {
            converged = true;
            break;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                let app = h[(p, p)].re;
                let aqq = h[(q, q)].re;
                let Some((c, s, phase)) = jacobi_rotation(app, aqq, h[(p, q)]) else {
                    continue;
                };
                let pc = phase.conj();
                // H ← J* H J on the (p, q) plane.
                for i in 0..m {
                    let hip = h[(i, p)];
                    let hiq = h[(i, q)];
                    h[(i, p)] = c * hip - s * pc * hiq;
                    h[(i, q)] = s * hip + c * pc * hiq;
                }
                for i in 0..m {
                    let hpi = h[(p, i)];
                    let hqi = h[(q, i)];
                    h[(p, i)] = c * hpi - s * phase * hqi;
                    h[(q, i)] = s * hpi + c * phase * hqi;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!(
            "Hermitian Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps"
        )));
    }
    let mut evals: Vec<f64> = (0..m).map(|j| h[(j, j)].re.max(0.0)).collect();
    evals.sort_by(f64::total_cmp);
    Ok(evals)
}

/// Schmidt spectrum of a state matrix via the Gram matrix A*A.
///
/// This route never touches the one-sided Jacobi SVD, so the two can be
/// cross-checked against each other.
pub fn schmidt_spectrum(a: &StateMatrix) -> Result<SchmidtSpectrum> {
    let norm = a.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::Invalid("zero state has no Schmidt spectrum".into()));
    }
    let gram = a.matrix().conj_transpose_mul(a.matrix());
    let evals = hermitian_eigenvalues(gram)?;
    let total: f64 = evals.iter().sum();
    let p: Vec<f64> = evals.iter().map(|&l| l / total).collect();
    let sigma: Vec<f64> = evals.iter().map(|&l| l.sqrt()).collect();
    Ok(SchmidtSpectrum { sigma, p })
}

/// Schmidt probabilities only; hot path used by the Monte-Carlo sampler.
pub(crate) fn schmidt_probabilities(a: &StateMatrix) -> Result<Vec<f64>> {
    Ok(schmidt_spectrum(a)?.p)
}
