//! Finite sections of Bergman-space Toeplitz operators and self-commutators
//! in the orthonormal basis `psi_n = sqrt((n+1)/pi) z^n`, plus the Bergman
//! projection and Hankel operator on polynomial data.

use num_complex::Complex64;
use num_traits::Zero;

use crate::diskalg::BiPoly;
use crate::error::{Error, Result};
use crate::scalar::{crat_from_ratio, crat_to_c64, CRat};
use crate::symbol::TaylorSymbol;

const MAX_POWER_ITERATIONS: usize = 2_000_000;

/// Hard cap on adaptive section growth; exceeding it means the finite
/// sections failed to stabilize and is reported as an error.
pub const MAX_SECTION_DIM: usize = 4096;

/// Dense complex matrix cut from an operator in the Bergman basis.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<Complex64>,
    hermitian: bool,
}

impl OperatorMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>, hermitian: bool) -> Self {
        assert_eq!(entries.len(), dim * dim);
        OperatorMatrix { dim, entries, hermitian }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_hermitian_flagged(&self) -> bool {
        self.hermitian
    }

    pub fn get(&self, n: usize, m: usize) -> Complex64 {
        self.entries[n * self.dim + m]
    }

    pub fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        for n in 0..self.dim {
            let mut acc = Complex64::zero();
            let row = &self.entries[n * self.dim..(n + 1) * self.dim];
            for (m, e) in row.iter().enumerate() {
                acc += e * v[m];
            }
            out[n] = acc;
        }
    }

    /// Quadratic form `<M v, v>`.
    pub fn quadratic_form(&self, v: &[Complex64]) -> Complex64 {
        let mut w = vec![Complex64::zero(); self.dim];
        self.apply(v, &mut w);
        w.iter().zip(v).map(|(wi, vi)| wi * vi.conj()).sum()
    }

    /// Debug dump: row-major `[[re, im], ...]` entries.
    pub fn to_json_string(&self) -> String {
        let mut s = format!("{{\"dim\":{},\"hermitian\":{},\"entries\":[", self.dim, self.hermitian);
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format!("[{:.16e},{:.16e}]", e.re, e.im));
        }
        s.push_str("]}");
        s
    }
}

/// Toeplitz matrix of the symbol in the Bergman basis:
/// `T[n][m] = c_{n-m} sqrt((m+1)/(n+1))` on the band `0 <= n - m <= K`.
pub fn toeplitz_matrix(s: &TaylorSymbol, n_dim: usize) -> OperatorMatrix {
    assert!(n_dim >= 1);
    let k = s.degree();
    let mut entries = vec![Complex64::zero(); n_dim * n_dim];
    for n in 0..n_dim {
        for m in n.saturating_sub(k)..=n {
            let c = s.coeff(n - m);
            if c != Complex64::zero() {
                entries[n * n_dim + m] = c * ((m + 1) as f64 / (n + 1) as f64).sqrt();
            }
        }
    }
    OperatorMatrix::new(n_dim, entries, false)
}

/// Exact Bergman projection of a `(z, zbar)` polynomial, termwise:
/// `P(z^p zbar^q) = ((p - q + 1)/(p + 1)) z^{p-q}` for `p >= q`, else 0.
pub(crate) fn project_exact(f: &BiPoly) -> Vec<CRat> {
    let mut out = vec![CRat::zero(); f.p_degree() + 1];
    for p in 0..=f.p_degree() {
        for q in 0..=f.q_degree().min(p) {
            let c = f.coeff_at(p, q);
            if c.is_zero() {
                continue;
            }
            let w = crat_from_ratio((p - q) as i64 + 1, p as i64 + 1);
            out[p - q] = out[p - q].clone() + c * w;
        }
    }
    out
}

/// Orthogonal Bergman projection onto analytic polynomials.
pub fn bergman_project(f: &BiPoly) -> TaylorSymbol {
    TaylorSymbol::new(project_exact(f).iter().map(crat_to_c64).collect())
}

/// Hankel image `(I - P)(conj(phi) f)` as an exact `(z, zbar)` polynomial.
/// Its Bergman projection is identically zero.
pub fn hankel_apply(s: &TaylorSymbol, f: &TaylorSymbol) -> Result<BiPoly> {
    let phi_bar_terms: Vec<_> = s
        .exact_coeffs()
        .into_iter()
        .enumerate()
        .map(|(l, c)| (0usize, l, crate::scalar::crat_conj(&c)))
        .collect();
    let phi_bar = BiPoly::from_terms(&phi_bar_terms)?;
    let f_poly = BiPoly::from_analytic(&f.exact_coeffs())?;
    let product = phi_bar.multiply(&f_poly)?;
    let projected = BiPoly::from_analytic(&project_exact(&product))?;
    Ok(product.sub(&projected))
}

/// Entry `(n, m)` of the full (infinite) self-commutator `[T*, T]`;
/// the banded sums are finite for polynomial symbols, so no truncation
/// bias enters. Zero off the band `|n - m| <= K`.
fn commutator_entry(c: &[Complex64], n: usize, m: usize) -> Complex64 {
    let k = c.len() - 1;
    if n.abs_diff(m) > k {
        return Complex64::zero();
    }
    let root = (((n + 1) * (m + 1)) as f64).sqrt();
    // (T*T)[n][m] = sum_j conj(T[j][n]) T[j][m]
    let mut tstar_t = Complex64::zero();
    for j in n.max(m)..=(n.min(m) + k) {
        let a = c[j - n].conj() * c[j - m];
        if a != Complex64::zero() {
            tstar_t += a * (root / (j + 1) as f64);
        }
    }
    // (T T*)[n][m] = sum_j T[n][j] conj(T[m][j])
    let mut t_tstar = Complex64::zero();
    for j in n.max(m).saturating_sub(k)..=n.min(m) {
        let a = c[n - j] * c[m - j].conj();
        if a != Complex64::zero() {
            t_tstar += a * ((j + 1) as f64 / root);
        }
    }
    tstar_t - t_tstar
}

/// Top-left `N x N` block of the exact infinite commutator; Hermitian and
/// positive semidefinite.
pub fn commutator_matrix(s: &TaylorSymbol, n_dim: usize) -> OperatorMatrix {
    assert!(n_dim >= 1);
    let c = s.coeffs();
    let mut entries = vec![Complex64::zero(); n_dim * n_dim];
    for n in 0..n_dim {
        for m in n..n_dim {
            let e = commutator_entry(c, n, m);
            entries[n * n_dim + m] = e;
            entries[m * n_dim + n] = e.conj();
        }
    }
    OperatorMatrix::new(n_dim, entries, true)
}

/// Banded storage of a commutator section, for the adaptive norm iteration.
struct BandedCommutator {
    dim: usize,
    band: usize,
    // row n holds offsets d in [-band, band]: data[n * (2 band + 1) + (d + band)]
    data: Vec<Complex64>,
}

impl BandedCommutator {
    fn build(s: &TaylorSymbol, dim: usize) -> Self {
        let band = s.degree();
        let width = 2 * band + 1;
        let c = s.coeffs();
        let mut data = vec![Complex64::zero(); dim * width];
        for n in 0..dim {
            for m in n.saturating_sub(band)..=(n + band).min(dim - 1) {
                data[n * width + (m + band - n)] = commutator_entry(c, n, m);
            }
        }
        BandedCommutator { dim, band, data }
    }

    fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        let width = 2 * self.band + 1;
        for n in 0..self.dim {
            let mut acc = Complex64::zero();
            let lo = n.saturating_sub(self.band);
            let hi = (n + self.band).min(self.dim - 1);
            for m in lo..=hi {
                acc += self.data[n * width + (m + self.band - n)] * v[m];
            }
            out[n] = acc;
        }
    }
}

/// Power iteration with the deterministic all-ones start vector and a
/// residual stopping rule: for Hermitian input, `||Mv - lambda v|| <= tol`
/// places an eigenvalue within `tol` of the returned Rayleigh quotient.
fn power_iteration<F>(apply: F, dim: usize, tol: f64) -> Result<f64>
where
    F: Fn(&[Complex64], &mut [Complex64]),
{
    let mut v = vec![Complex64::new(1.0 / (dim as f64).sqrt(), 0.0); dim];
    let mut w = vec![Complex64::zero(); dim];
    for _ in 0..MAX_POWER_ITERATIONS {
        apply(&v, &mut w);
        let lambda: f64 = w.iter().zip(&v).map(|(wi, vi)| (wi * vi.conj()).re).sum();
        let mut residual_sq = 0.0;
        for (wi, vi) in w.iter().zip(&v) {
            residual_sq += (wi - vi * lambda).norm_sqr();
        }
        if residual_sq.sqrt() <= tol {
            return Ok(lambda);
        }
        let norm: f64 = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Ok(0.0);
        }
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
    }
    Err(Error::NoConvergence { iterations: MAX_POWER_ITERATIONS, tol })
}

/// Largest eigenvalue of a Hermitian positive semidefinite matrix within
/// absolute tolerance `tol`.
pub fn dominant_eigenvalue(m: &OperatorMatrix, tol: f64) -> Result<f64> {
    if !m.is_hermitian_flagged() {
        return Err(Error::NotHermitian);
    }
    if tol <= 0.0 {
        return Err(Error::NonPositiveTolerance(tol));
    }
    power_iteration(|v, out| m.apply(v, out), m.dim(), tol)
}

/// Converged self-commutator norm together with the section size used.
#[derive(Clone, Copy, Debug)]
pub struct CommutatorNorm {
    pub value: f64,
    pub truncation: usize,
}

/// Operator norm of `[T*_phi, T_phi]` by adaptive finite sections: the
/// section size doubles from `4 (K+1)` until the dominant eigenvalue moves
/// by less than `tol / 2`. The result is sanity-capped by the a priori
/// bound `dirichlet_energy / 2`.
pub fn commutator_norm(s: &TaylorSymbol, tol: f64) -> Result<CommutatorNorm> {
    if tol <= 0.0 {
        return Err(Error::NonPositiveTolerance(tol));
    }
    let eig_tol = (tol / 4.0).min(1e-12);
    let mut n_dim = 4 * (s.degree() + 1);
    let banded = BandedCommutator::build(s, n_dim);
    let mut prev = power_iteration(|v, out| banded.apply(v, out), n_dim, eig_tol)?;
    loop {
        let next_dim = 2 * n_dim;
        if next_dim > MAX_SECTION_DIM {
            return Err(Error::SectionCap { cap: MAX_SECTION_DIM });
        }
        let banded = BandedCommutator::build(s, next_dim);
        let cur = power_iteration(|v, out| banded.apply(v, out), next_dim, eig_tol)?;
        n_dim = next_dim;
        if (cur - prev).abs() < tol / 2.0 {
            let bound = s.dirichlet_energy() / 2.0 + tol;
            if cur > bound {
                return Err(Error::BoundViolation {
                    what: "commutator norm",
                    value: cur,
                    bound,
                });
            }
            return Ok(CommutatorNorm { value: cur, truncation: n_dim });
        }
        prev = cur;
    }
}
