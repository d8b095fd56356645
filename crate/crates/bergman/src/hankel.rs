//! Coefficient-space Hankel machinery: the squared Hankel norm as a pair of
//! index sums, the half-energy upper bound it never exceeds, and the linear
//! equality system whose nullspace detects the disk-extremal symbols.
//!
//! Sequence norms in this module use the normalized measure `dA / pi`; the
//! single conversion factor `pi` to the unnormalized disk integrals is
//! asserted in tests rather than mixed in silently.

use std::collections::HashSet;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{crat_to_c64, CRat};
use crate::symbol::TaylorSymbol;

/// Taylor coefficients `a_0..a_N` of a test function `f = sum a_n z^n`,
/// with the reindexed sequence `b_{n+1} = a_n / (n+1)` available on demand.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffSeq {
    a: Vec<Complex64>,
}

impl CoeffSeq {
    pub fn new(a: Vec<Complex64>) -> Self {
        let a = if a.is_empty() { vec![Complex64::zero()] } else { a };
        CoeffSeq { a }
    }

    pub fn from_pairs(pairs: &[[f64; 2]]) -> Result<Self> {
        for (k, p) in pairs.iter().enumerate() {
            if !p[0].is_finite() || !p[1].is_finite() {
                return Err(Error::NonFinite(k));
            }
        }
        Ok(Self::new(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect()))
    }

    /// Builds the sequence from `b_1..b_N` via `a_n = b_{n+1} (n+1)`.
    pub fn from_b(b: &[Complex64]) -> Self {
        Self::new(
            b.iter()
                .enumerate()
                .map(|(i, bi)| bi * (i + 1) as f64)
                .collect(),
        )
    }

    pub fn a(&self, n: usize) -> Complex64 {
        self.a.get(n).copied().unwrap_or(Complex64::zero())
    }

    pub fn a_coeffs(&self) -> &[Complex64] {
        &self.a
    }

    /// `b_n = a_{n-1} / n` for `n >= 1`; zero outside the stored range.
    pub fn b(&self, n: usize) -> Complex64 {
        if n == 0 {
            return Complex64::zero();
        }
        self.a(n - 1) / n as f64
    }

    /// Largest index with a stored `b` coefficient.
    pub fn b_len(&self) -> usize {
        self.a.len()
    }

    /// Squared norm `sum |a_n|^2 / (n+1)` in the normalized measure.
    pub fn seq_norm_sq(&self) -> f64 {
        self.a
            .iter()
            .enumerate()
            .map(|(n, a)| a.norm_sqr() / (n + 1) as f64)
            .sum()
    }

    pub fn normalized(&self) -> CoeffSeq {
        let norm = self.seq_norm_sq().sqrt();
        if norm == 0.0 {
            return self.clone();
        }
        Self::new(self.a.iter().map(|a| a / norm).collect())
    }

    pub fn as_symbol(&self) -> TaylorSymbol {
        TaylorSymbol::new(self.a.clone())
    }
}

/// `sum_{m>=1} m |c_m|^2`, the squared derivative norm in `dA / pi`.
pub fn seq_dirichlet(s: &TaylorSymbol) -> f64 {
    s.coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(m, c)| m as f64 * c.norm_sqr())
        .sum()
}

/// Negative-frequency part of the squared Hankel norm:
/// `sum_{n,m>=1, k>=0} b_n conj(b_m) c_{k+m} conj(c_{k+n}) n m / (n+m+k)`.
/// The sum is Hermitian in `(n, m)`; the real part is returned.
pub fn sum_i(f: &CoeffSeq, s: &TaylorSymbol) -> f64 {
    let big_k = s.degree();
    let nb = f.b_len();
    let mut acc = Complex64::zero();
    for n in 1..=nb {
        let bn = f.b(n);
        if bn == Complex64::zero() {
            continue;
        }
        for m in 1..=nb {
            let bm = f.b(m);
            if bm == Complex64::zero() {
                continue;
            }
            let kmax = big_k.saturating_sub(n.max(m));
            if big_k < n.max(m) {
                continue;
            }
            for k in 0..=kmax {
                let term = bn * bm.conj() * s.coeff(k + m) * s.coeff(k + n).conj();
                if term != Complex64::zero() {
                    acc += term * ((n * m) as f64 / (n + m + k) as f64);
                }
            }
        }
    }
    acc.re
}

/// Non-negative-frequency part of the squared Hankel norm:
/// `sum_{n,m,k>=1} b_{n+k} conj(b_{m+k}) c_m conj(c_n) m n / (n+m+k)`.
pub fn sum_ii(f: &CoeffSeq, s: &TaylorSymbol) -> f64 {
    let big_k = s.degree();
    let nb = f.b_len();
    let mut acc = Complex64::zero();
    for k in 1..nb {
        for n in 1..=big_k.min(nb - k) {
            let cn = s.coeff(n);
            let bnk = f.b(n + k);
            if cn == Complex64::zero() || bnk == Complex64::zero() {
                continue;
            }
            for m in 1..=big_k.min(nb - k) {
                let term = bnk * f.b(m + k).conj() * s.coeff(m) * cn.conj();
                if term != Complex64::zero() {
                    acc += term * ((m * n) as f64 / (n + m + k) as f64);
                }
            }
        }
    }
    acc.re
}

/// Closed form of the termwise upper bound for `sum_i + sum_ii`:
/// `(sum_n n |b_n|^2)(sum_m m |c_m|^2) / 2 = seq_norm_sq(f) * seq_dirichlet(s) / 2`.
pub fn sum_star(f: &CoeffSeq, s: &TaylorSymbol) -> f64 {
    let b_part: f64 = (1..=f.b_len()).map(|n| n as f64 * f.b(n).norm_sqr()).sum();
    b_part * seq_dirichlet(s) / 2.0
}

/// Squared Hankel norm `||(I - P)(conj(phi) f)||^2` in the normalized
/// measure, assembled from the two coefficient sums. Equals
/// `(1/pi) ||hankel_apply(s, f)||^2_{L^2(dA)}`.
pub fn hankel_norm_sq_on(f: &CoeffSeq, s: &TaylorSymbol) -> f64 {
    sum_i(f, s) + sum_ii(f, s)
}

/// Upper bound `(1/2) ||f||^2 ||phi'||^2` for the squared Hankel norm;
/// always at least `hankel_norm_sq_on(f, s)`.
pub fn half_energy_bound(f: &CoeffSeq, s: &TaylorSymbol) -> f64 {
    f.seq_norm_sq() * seq_dirichlet(s) / 2.0
}

/// Linear constraints on the unknowns `b_1..b_N` expressing the pairwise
/// proportionality of coefficient products required for the half-energy
/// bound to be attained.
#[derive(Clone, Debug)]
pub struct ConstraintMatrix {
    unknowns: usize,
    rows: Vec<Vec<CRat>>,
}

impl ConstraintMatrix {
    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn rows(&self) -> &[Vec<CRat>] {
        &self.rows
    }

    /// Exact residual check: true iff every row annihilates `b`.
    pub fn annihilates(&self, b: &[CRat]) -> bool {
        assert_eq!(b.len(), self.unknowns);
        self.rows.iter().all(|row| {
            let mut acc = CRat::zero();
            for (coeff, bi) in row.iter().zip(b) {
                if !coeff.is_zero() {
                    acc += coeff.clone() * bi.clone();
                }
            }
            acc.is_zero()
        })
    }

    /// Largest row residual magnitude for a floating-point `b` vector.
    pub fn max_residual(&self, b: &[Complex64]) -> f64 {
        assert_eq!(b.len(), self.unknowns);
        self.rows
            .iter()
            .map(|row| {
                let mut acc = Complex64::zero();
                for (coeff, bi) in row.iter().zip(b) {
                    acc += crat_to_c64(coeff) * bi;
                }
                acc.norm()
            })
            .fold(0.0, f64::max)
    }
}

// Sparse row as (unknown index 1-based, coefficient) pairs; normalized so the
// first nonzero coefficient is one, which makes duplicates syntactic.
fn normalize_row(mut entries: Vec<(usize, CRat)>) -> Option<Vec<(usize, CRat)>> {
    entries.retain(|(_, c)| !c.is_zero());
    if entries.is_empty() {
        return None;
    }
    entries.sort_by_key(|&(i, _)| i);
    let lead = entries[0].1.clone();
    for (_, c) in entries.iter_mut() {
        *c = c.clone() / lead.clone();
    }
    Some(entries)
}

fn row_key(entries: &[(usize, CRat)]) -> String {
    let mut key = String::new();
    for (i, c) in entries {
        key.push_str(&format!("{}:{}/{};", i, c.re, c.im));
    }
    key
}

/// Builds the equality system for the symbol, truncated to unknowns
/// `b_1..b_N`. Rows coupling `b_i c_{j+k}` with `b_j c_{i+k}` are generated
/// for every index pair at shift `k = 0` and, for `k >= 1` (in both the
/// direct and the reindexed family), only where the referenced symbol
/// coefficients are inside the nonzero support. Duplicate and identically
/// zero rows are dropped.
pub fn equality_system(s: &TaylorSymbol, n: usize) -> Result<ConstraintMatrix> {
    if n < 1 {
        return Err(Error::TruncationTooSmall { n, min: 1, degree: s.degree() });
    }
    let c = s.exact_coeffs();
    let big_k = s.degree();
    let c_at = |i: usize| -> CRat {
        if i >= 1 && i <= big_k {
            c[i].clone()
        } else {
            CRat::zero()
        }
    };
    let support: Vec<usize> = (1..=big_k).filter(|&i| !c[i].is_zero()).collect();

    let mut seen = HashSet::new();
    let mut sparse_rows = Vec::new();
    let mut push = |entries: Vec<(usize, CRat)>| {
        if let Some(row) = normalize_row(entries) {
            if seen.insert(row_key(&row)) {
                sparse_rows.push(row);
            }
        }
    };

    // Unshifted family: b_i c_j = b_j c_i for all unknown pairs.
    for i in 1..=n {
        for j in (i + 1)..=n {
            push(vec![(i, c_at(j)), (j, -c_at(i))]);
        }
    }
    // Shifted direct family: b_i c_{j+k} = b_j c_{i+k}, both shifted
    // coefficients in the support.
    for k in 1..big_k {
        for i in 1..=(big_k - k).min(n) {
            if c_at(i + k).is_zero() {
                continue;
            }
            for j in (i + 1)..=(big_k - k).min(n) {
                if c_at(j + k).is_zero() {
                    continue;
                }
                push(vec![(i, c_at(j + k)), (j, -c_at(i + k))]);
            }
        }
    }
    // Shifted reindexed family: b_{i+k} c_j = b_{j+k} c_i over support pairs.
    for (si, &i) in support.iter().enumerate() {
        for &j in &support[si + 1..] {
            for k in 1..=n.saturating_sub(j) {
                push(vec![(i + k, c_at(j)), (j + k, -c_at(i))]);
            }
        }
    }

    let rows = sparse_rows
        .into_iter()
        .map(|sparse| {
            let mut dense = vec![CRat::zero(); n];
            for (idx, coeff) in sparse {
                dense[idx - 1] = coeff;
            }
            dense
        })
        .collect();
    Ok(ConstraintMatrix { unknowns: n, rows })
}

/// Exact nullspace basis of the row system by Gauss-Jordan elimination.
/// Deterministic: pivots are chosen as the first row with a nonzero entry
/// in the leftmost open column.
fn nullspace(matrix: &[Vec<CRat>], cols: usize) -> Vec<Vec<CRat>> {
    let mut m: Vec<Vec<CRat>> = matrix.to_vec();
    let rows = m.len();
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, found);
        let inv = m[pivot_row][col].clone();
        for x in m[pivot_row][col..].iter_mut() {
            *x = x.clone() / inv.clone();
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for cc in col..cols {
                    let delta = factor.clone() * m[pivot_row][cc].clone();
                    m[r][cc] = m[r][cc].clone() - delta;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }

    let pivot_set: HashSet<usize> = pivot_cols.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![CRat::zero(); cols];
        v[free] = CRat::new(num_traits::One::one(), num_traits::Zero::zero());
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// How a symbol sits relative to the disk-extremal families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Exactly one nonzero Taylor coefficient of positive index.
    Monomial,
    /// Full geometric tail `c_k = r^k`; only realizable with infinite
    /// support, so finite symbols are never classified here.
    GeometricTail,
    Other,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Monomial => "Monomial",
            Classification::GeometricTail => "GeometricTail",
            Classification::Other => "Other",
        }
    }
}

/// Nullspace of the truncated equality system plus the symbol's class.
#[derive(Clone, Debug)]
pub struct ExtremalityResult {
    pub classification: Classification,
    pub nullspace_dim: usize,
    pub nullspace_basis: Vec<CoeffSeq>,
    pub truncation: usize,
}

/// Solves the equality system exactly and classifies the symbol.
/// Requires `N >= K + 2` so the truncation sees past the symbol support.
pub fn extremal_nullspace(s: &TaylorSymbol, n: usize) -> Result<ExtremalityResult> {
    let min = s.degree() + 2;
    if n < min {
        return Err(Error::TruncationTooSmall { n, min, degree: s.degree() });
    }
    let system = equality_system(s, n)?;
    let basis_exact = nullspace(system.rows(), n);
    for v in &basis_exact {
        debug_assert!(system.annihilates(v));
    }
    let support_count = (1..=s.degree()).filter(|&k| s.coeff(k) != Complex64::zero()).count();
    let classification = if support_count == 1 {
        Classification::Monomial
    } else {
        Classification::Other
    };
    let basis = basis_exact
        .iter()
        .map(|v| {
            let b: Vec<Complex64> = v.iter().map(crat_to_c64).collect();
            CoeffSeq::from_b(&b)
        })
        .collect::<Vec<_>>();
    Ok(ExtremalityResult {
        classification,
        nullspace_dim: basis.len(),
        nullspace_basis: basis,
        truncation: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::hankel_apply;
    use crate::scalar::crat_from_c64;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn symbol(pairs: &[[f64; 2]]) -> TaylorSymbol {
        TaylorSymbol::from_pairs(pairs).unwrap()
    }

    // Brute-force references for the two sums, written as literal triple
    // loops over a generous index box.
    fn sum_i_brute(f: &CoeffSeq, s: &TaylorSymbol) -> f64 {
        let cap = f.b_len() + s.degree() + 4;
        let mut acc = Complex64::zero();
        for n in 1..=cap {
            for m in 1..=cap {
                for k in 0..=cap {
                    let t = f.b(n) * f.b(m).conj() * s.coeff(k + m) * s.coeff(k + n).conj();
                    acc += t * ((n * m) as f64 / (n + m + k) as f64);
                }
            }
        }
        acc.re
    }

    fn sum_ii_brute(f: &CoeffSeq, s: &TaylorSymbol) -> f64 {
        let cap = f.b_len() + s.degree() + 4;
        let mut acc = Complex64::zero();
        for n in 1..=cap {
            for m in 1..=cap {
                for k in 1..=cap {
                    let t = f.b(n + k) * f.b(m + k).conj() * s.coeff(m) * s.coeff(n).conj();
                    acc += t * ((m * n) as f64 / (n + m + k) as f64);
                }
            }
        }
        acc.re
    }

    fn rng(mut seed: u64) -> impl FnMut() -> f64 {
        move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        }
    }

    #[test]
    fn sum_i_hand_cases() {
        let one = CoeffSeq::new(vec![re(1.0)]);
        let z = symbol(&[[0.0, 0.0], [1.0, 0.0]]);
        assert_relative_eq!(sum_i(&one, &z), 0.5, epsilon = 1e-15);
        let zero = TaylorSymbol::new(vec![]);
        assert_eq!(sum_i(&one, &zero), 0.0);
    }

    #[test]
    fn sum_ii_hand_cases() {
        let one = CoeffSeq::new(vec![re(1.0)]);
        let z = symbol(&[[0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(sum_ii(&one, &z), 0.0);
        let f_z = CoeffSeq::new(vec![re(0.0), re(1.0)]);
        assert_relative_eq!(sum_ii(&f_z, &z), 1.0 / 12.0, epsilon = 1e-15);
    }

    #[test]
    fn sums_match_brute_force_on_random_inputs() {
        let mut next = rng(0x8a5cd789635d2dffu64);
        for _ in 0..25 {
            let f = CoeffSeq::new((0..=5).map(|_| Complex64::new(next(), next())).collect());
            let s = TaylorSymbol::new((0..=5).map(|_| Complex64::new(next(), next())).collect());
            assert_relative_eq!(sum_i(&f, &s), sum_i_brute(&f, &s), max_relative = 1e-12, epsilon = 1e-13);
            assert_relative_eq!(sum_ii(&f, &s), sum_ii_brute(&f, &s), max_relative = 1e-12, epsilon = 1e-13);
        }
    }

    #[test]
    fn sum_star_hand_and_two_route() {
        let one = CoeffSeq::new(vec![re(1.0)]);
        let z = symbol(&[[0.0, 0.0], [1.0, 0.0]]);
        assert_relative_eq!(sum_star(&one, &z), 0.5, epsilon = 1e-15);
        assert_eq!(sum_star(&one, &TaylorSymbol::new(vec![])), 0.0);

        // Two-route agreement: the closed form equals the explicit pair of
        // termwise-bounded triple sums.
        let mut next = rng(0xc0ffee1234567u64);
        for _ in 0..20 {
            let f = CoeffSeq::new((0..=4).map(|_| Complex64::new(next(), next())).collect());
            let s = TaylorSymbol::new((0..=4).map(|_| Complex64::new(next(), next())).collect());
            let cap = f.b_len() + s.degree() + 4;
            let mut star_i = 0.0;
            let mut star_ii = 0.0;
            for n in 1..=cap {
                for m in 1..=cap {
                    for k in 0..=cap {
                        let w = (n * m) as f64 / (n + m + k) as f64;
                        star_i += (f.b(n) * s.coeff(k + m)).norm_sqr() * w;
                        if k >= 1 {
                            star_ii += (f.b(n + k) * s.coeff(m)).norm_sqr() * w;
                        }
                    }
                }
            }
            assert_relative_eq!(sum_star(&f, &s), star_i + star_ii, max_relative = 1e-12, epsilon = 1e-13);
        }
    }

    #[test]
    fn hankel_norm_matches_direct_route_for_disk_symbol() {
        let one = CoeffSeq::new(vec![re(1.0)]);
        let z = symbol(&[[0.0, 0.0], [1.0, 0.0]]);
        let coeff_route = hankel_norm_sq_on(&one, &z);
        assert_relative_eq!(coeff_route, 0.5, epsilon = 1e-15);
        let h = hankel_apply(&z, &one.as_symbol()).unwrap();
        let direct = h.multiply(&h.conj()).unwrap().disk_integral().re / PI;
        assert_relative_eq!(coeff_route, direct, epsilon = 1e-15);
    }

    #[test]
    fn hankel_norm_vanishes_for_constant_symbol() {
        let f = CoeffSeq::new(vec![re(1.0), re(2.0), re(-0.5)]);
        let s = TaylorSymbol::new(vec![re(3.0)]);
        assert_eq!(hankel_norm_sq_on(&f, &s), 0.0);
    }

    #[test]
    fn coefficient_route_agrees_with_disk_integrals() {
        let mut next = rng(0x1234_5678_9abc_def1u64);
        for _ in 0..30 {
            let f = CoeffSeq::new((0..=5).map(|_| Complex64::new(next(), next())).collect());
            let s = TaylorSymbol::new((0..=5).map(|_| Complex64::new(next(), next())).collect());
            let coeff_route = hankel_norm_sq_on(&f, &s) * PI;
            let h = hankel_apply(&s, &f.as_symbol()).unwrap();
            let direct = h.multiply(&h.conj()).unwrap().disk_integral().re;
            assert_relative_eq!(coeff_route, direct, max_relative = 1e-10, epsilon = 1e-12);
        }
    }

    #[test]
    fn bound_dominates_norm() {
        let one = CoeffSeq::new(vec![re(1.0)]);
        let z = symbol(&[[0.0, 0.0], [1.0, 0.0]]);
        assert_relative_eq!(half_energy_bound(&one, &z), 0.5, epsilon = 1e-15);
        assert_relative_eq!(hankel_norm_sq_on(&one, &z), 0.5, epsilon = 1e-15);

        let cardioid = symbol(&[[0.0, 0.0], [1.0, 0.0], [0.25, 0.0]]);
        assert!(half_energy_bound(&one, &cardioid) > hankel_norm_sq_on(&one, &cardioid) + 1e-3);

        let zero = TaylorSymbol::new(vec![]);
        assert_eq!(half_energy_bound(&one, &zero), 0.0);

        let mut next = rng(0xfeed_f00d_0123u64);
        for _ in 0..60 {
            let f = CoeffSeq::new((0..=6).map(|_| Complex64::new(next(), next())).collect());
            let s = TaylorSymbol::new((0..=6).map(|_| Complex64::new(next(), next())).collect());
            assert!(hankel_norm_sq_on(&f, &s) <= half_energy_bound(&f, &s) + 1e-12);
        }
    }

    #[test]
    fn norm_attained_at_monomial_extremal_sequence() {
        // unit-norm coefficient sequence of psi_{k-1}: a_{k-1} = sqrt(k)
        for k in 1..=5usize {
            let mut a = vec![Complex64::zero(); k];
            a[k - 1] = re((k as f64).sqrt());
            let f = CoeffSeq::new(a);
            assert_relative_eq!(f.seq_norm_sq(), 1.0, epsilon = 1e-14);
            let s = TaylorSymbol::monomial(k, re(1.0));
            assert_relative_eq!(hankel_norm_sq_on(&f, &s), 0.5, epsilon = 1e-13);
        }
    }

    #[test]
    fn random_test_functions_stay_below_operator_norm() {
        // quadratic form at unit vectors never exceeds the operator norm
        let mut next = rng(0x00c0_ffee_d00du64);
        let symbols = [
            symbol(&[[0.0, 0.0], [1.0, 0.0], [0.25, 0.0]]),
            symbol(&[[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.2, -0.1]]),
        ];
        for s in &symbols {
            let norm = crate::operator::commutator_norm(s, 1e-10).unwrap().value;
            for _ in 0..40 {
                let f = CoeffSeq::new((0..=5).map(|_| Complex64::new(next(), next())).collect())
                    .normalized();
                assert!(hankel_norm_sq_on(&f, s) <= norm + 1e-9);
            }
        }
    }

    #[test]
    fn equality_system_square_symbol() {
        let s = TaylorSymbol::monomial(2, re(1.0));
        let res = extremal_nullspace(&s, 6).unwrap();
        assert_eq!(res.nullspace_dim, 1);
        assert_eq!(res.classification, Classification::Monomial);
        let basis = &res.nullspace_basis[0];
        for n in 1..=6 {
            let expect = if n == 2 { 1.0 } else { 0.0 };
            assert_eq!(basis.b(n), re(expect));
        }
    }

    #[test]
    fn equality_system_two_coefficients_with_gap() {
        let s = symbol(&[[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [1.0, 0.0]]);
        let res = extremal_nullspace(&s, 8).unwrap();
        assert_eq!(res.nullspace_dim, 0);
    }

    #[test]
    fn equality_system_cardioid_and_flat_run() {
        let cardioid = symbol(&[[0.0, 0.0], [1.0, 0.0], [0.25, 0.0]]);
        assert_eq!(extremal_nullspace(&cardioid, 12).unwrap().nullspace_dim, 0);
        let flat = symbol(&[[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [1.0, 0.0]]);
        let res = extremal_nullspace(&flat, 8).unwrap();
        assert_eq!(res.nullspace_dim, 0);
        assert_eq!(res.classification, Classification::Other);
    }

    #[test]
    fn monomial_dim_independent_of_scale_and_truncation() {
        for &(scale_re, scale_im) in &[(1.0, 0.0), (3.0, 0.0), (-2.0, 0.0), (0.0, 1.5)] {
            for k in 1..=5usize {
                for n in [k + 2, 2 * (k + 2), 4 * (k + 1)] {
                    let s = TaylorSymbol::monomial(k, Complex64::new(scale_re, scale_im));
                    let res = extremal_nullspace(&s, n).unwrap();
                    assert_eq!(res.nullspace_dim, 1, "k={k} n={n}");
                    assert_eq!(res.nullspace_basis[0].b(k), re(1.0));
                }
            }
        }
    }

    #[test]
    fn geometric_vector_annihilated_by_sampled_constraints() {
        // c_k = r^k sampled through index 12; b_n = r^n has exactly zero
        // residual on every generated row. r = 1/2 is dyadic so the whole
        // check is exact.
        let r = 0.5f64;
        let pairs: Vec<[f64; 2]> = (0..=12).map(|k| [if k == 0 { 0.0 } else { r.powi(k) }, 0.0]).collect();
        let s = symbol(&pairs);
        let system = equality_system(&s, 12).unwrap();
        assert!(!system.rows().is_empty());
        let b: Vec<CRat> = (1..=12)
            .map(|n| crat_from_c64(re(r.powi(n))).unwrap())
            .collect();
        assert!(system.annihilates(&b));
        let b_f64: Vec<Complex64> = (1..=12).map(|n| re(r.powi(n))).collect();
        assert_eq!(system.max_residual(&b_f64), 0.0);
    }

    #[test]
    fn truncation_precondition_enforced() {
        let s = TaylorSymbol::monomial(3, re(1.0));
        assert!(matches!(
            extremal_nullspace(&s, 4),
            Err(Error::TruncationTooSmall { min: 5, .. })
        ));
    }

    #[test]
    fn reindexing_identity() {
        let f = CoeffSeq::new(vec![re(3.0), re(4.0), re(10.0)]);
        for n in 1..=3usize {
            assert_eq!(f.b(n) * n as f64, f.a(n - 1));
        }
        assert_eq!(f.b(0), Complex64::zero());
        assert_eq!(f.b(9), Complex64::zero());
    }
}
