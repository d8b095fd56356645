//! Exact algebra of polynomials in `(z, conj z)` on the unit disk.
//!
//! Coefficients are exact complex rationals (every finite f64 input converts
//! losslessly), so disk integrals, boundary traces, and the Poisson solver
//! below are identities rather than approximations. The Laplacian convention
//! throughout is `lap = 4 d/dz d/dzbar`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{crat_abs_f64, crat_conj, crat_to_c64, rat_ratio, CRat};

/// Per-variable degree cap; higher degrees are rejected to bound memory.
pub const MAX_DEGREE: usize = 64;

/// Polynomial `sum coeff[p][q] z^p zbar^q` with exact coefficients.
///
/// `is_real` records Hermitian symmetry `coeff[p][q] == conj(coeff[q][p])`,
/// which holds exactly iff the polynomial is real-valued on the disk.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly {
    p_deg: usize,
    q_deg: usize,
    // row-major: index = p * (q_deg + 1) + q
    coeff: Vec<CRat>,
    real: bool,
}

impl BiPoly {
    fn from_grid(p_deg: usize, q_deg: usize, coeff: Vec<CRat>) -> Self {
        debug_assert_eq!(coeff.len(), (p_deg + 1) * (q_deg + 1));
        let mut poly = BiPoly { p_deg, q_deg, coeff, real: false };
        poly.trim();
        poly.real = poly.check_real();
        poly
    }

    fn trim(&mut self) {
        let width = self.q_deg + 1;
        let mut pmax = 0;
        let mut qmax = 0;
        for p in 0..=self.p_deg {
            for q in 0..=self.q_deg {
                if !self.coeff[p * width + q].is_zero() {
                    pmax = pmax.max(p);
                    qmax = qmax.max(q);
                }
            }
        }
        if pmax == self.p_deg && qmax == self.q_deg {
            return;
        }
        let mut out = Vec::with_capacity((pmax + 1) * (qmax + 1));
        for p in 0..=pmax {
            for q in 0..=qmax {
                out.push(self.coeff[p * width + q].clone());
            }
        }
        self.p_deg = pmax;
        self.q_deg = qmax;
        self.coeff = out;
    }

    fn check_real(&self) -> bool {
        let n = self.p_deg.max(self.q_deg);
        for p in 0..=n {
            for q in p..=n {
                if self.coeff_at(p, q) != crat_conj(&self.coeff_at(q, p)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn zero() -> Self {
        BiPoly { p_deg: 0, q_deg: 0, coeff: vec![CRat::zero()], real: true }
    }

    pub fn constant(c: CRat) -> Self {
        Self::from_grid(0, 0, vec![c])
    }

    pub fn monomial(p: usize, q: usize, c: CRat) -> Result<Self> {
        Self::from_terms(&[(p, q, c)])
    }

    pub fn from_terms(terms: &[(usize, usize, CRat)]) -> Result<Self> {
        let mut p_deg = 0;
        let mut q_deg = 0;
        for &(p, q, _) in terms {
            let d = p.max(q);
            if d > MAX_DEGREE {
                return Err(Error::DegreeCap { got: d, cap: MAX_DEGREE });
            }
            p_deg = p_deg.max(p);
            q_deg = q_deg.max(q);
        }
        let width = q_deg + 1;
        let mut coeff = vec![CRat::zero(); (p_deg + 1) * width];
        for (p, q, c) in terms {
            coeff[p * width + q] = coeff[p * width + q].clone() + c.clone();
        }
        Ok(Self::from_grid(p_deg, q_deg, coeff))
    }

    /// Analytic polynomial `sum a_p z^p` embedded with `q = 0`.
    pub fn from_analytic(coeffs: &[CRat]) -> Result<Self> {
        let terms: Vec<_> = coeffs
            .iter()
            .enumerate()
            .map(|(p, c)| (p, 0usize, c.clone()))
            .collect();
        Self::from_terms(&terms)
    }

    pub fn p_degree(&self) -> usize {
        self.p_deg
    }

    pub fn q_degree(&self) -> usize {
        self.q_deg
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.iter().all(|c| c.is_zero())
    }

    /// Coefficient of `z^p zbar^q`, zero outside the stored grid.
    pub fn coeff_at(&self, p: usize, q: usize) -> CRat {
        if p <= self.p_deg && q <= self.q_deg {
            self.coeff[p * (self.q_deg + 1) + q].clone()
        } else {
            CRat::zero()
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let p_deg = self.p_deg.max(other.p_deg);
        let q_deg = self.q_deg.max(other.q_deg);
        let width = q_deg + 1;
        let mut coeff = vec![CRat::zero(); (p_deg + 1) * width];
        for p in 0..=p_deg {
            for q in 0..=q_deg {
                coeff[p * width + q] = self.coeff_at(p, q) + other.coeff_at(p, q);
            }
        }
        Self::from_grid(p_deg, q_deg, coeff)
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.scale(&crate::scalar::crat_from_int(-1)))
    }

    pub fn scale(&self, factor: &CRat) -> BiPoly {
        let coeff = self.coeff.iter().map(|c| c.clone() * factor.clone()).collect();
        Self::from_grid(self.p_deg, self.q_deg, coeff)
    }

    /// Coefficient-wise convolution in `(p, q)`.
    pub fn multiply(&self, other: &BiPoly) -> Result<BiPoly> {
        let p_deg = self.p_deg + other.p_deg;
        let q_deg = self.q_deg + other.q_deg;
        if p_deg.max(q_deg) > MAX_DEGREE {
            return Err(Error::DegreeCap { got: p_deg.max(q_deg), cap: MAX_DEGREE });
        }
        let width = q_deg + 1;
        let mut coeff = vec![CRat::zero(); (p_deg + 1) * width];
        for p1 in 0..=self.p_deg {
            for q1 in 0..=self.q_deg {
                let a = self.coeff_at(p1, q1);
                if a.is_zero() {
                    continue;
                }
                for p2 in 0..=other.p_deg {
                    for q2 in 0..=other.q_deg {
                        let b = other.coeff_at(p2, q2);
                        if b.is_zero() {
                            continue;
                        }
                        let idx = (p1 + p2) * width + (q1 + q2);
                        coeff[idx] = coeff[idx].clone() + a.clone() * b;
                    }
                }
            }
        }
        Ok(Self::from_grid(p_deg, q_deg, coeff))
    }

    /// Complex conjugate of the polynomial as a function:
    /// swaps the roles of `z` and `zbar` and conjugates coefficients.
    pub fn conj(&self) -> BiPoly {
        let width = self.p_deg + 1;
        let mut coeff = vec![CRat::zero(); (self.q_deg + 1) * width];
        for p in 0..=self.p_deg {
            for q in 0..=self.q_deg {
                coeff[q * width + p] = crat_conj(&self.coeff_at(p, q));
            }
        }
        Self::from_grid(self.q_deg, self.p_deg, coeff)
    }

    /// `lap = 4 d/dz d/dzbar`: term `c z^p zbar^q` maps to
    /// `4 p q c z^{p-1} zbar^{q-1}`.
    pub fn laplacian(&self) -> BiPoly {
        if self.p_deg == 0 || self.q_deg == 0 {
            return BiPoly::zero();
        }
        let p_deg = self.p_deg - 1;
        let q_deg = self.q_deg - 1;
        let width = q_deg + 1;
        let mut coeff = vec![CRat::zero(); (p_deg + 1) * width];
        for p in 1..=self.p_deg {
            for q in 1..=self.q_deg {
                let c = self.coeff_at(p, q);
                if c.is_zero() {
                    continue;
                }
                let factor = crate::scalar::crat_from_int(4 * (p as i64) * (q as i64));
                coeff[(p - 1) * width + (q - 1)] = c * factor;
            }
        }
        Self::from_grid(p_deg, q_deg, coeff)
    }

    /// Exact disk integral divided by pi: `int z^p zbar^q dA` vanishes unless
    /// `p == q`, where it equals `pi / (p + 1)`.
    pub fn disk_integral_over_pi(&self) -> CRat {
        let mut acc = CRat::zero();
        for p in 0..=self.p_deg.min(self.q_deg) {
            let c = self.coeff_at(p, p);
            if !c.is_zero() {
                acc += c * CRat::new(rat_ratio(1, p as i64 + 1), BigRational::zero());
            }
        }
        acc
    }

    pub fn disk_integral(&self) -> Complex64 {
        crat_to_c64(&self.disk_integral_over_pi()) * std::f64::consts::PI
    }

    /// Restriction to the unit circle where `zbar = 1/z`:
    /// mode `m` collects all coefficients with `p - q = m`.
    pub fn boundary_trace(&self) -> TrigPoly {
        let max_mode = self.p_deg.max(self.q_deg);
        let mut coeff = vec![CRat::zero(); 2 * max_mode + 1];
        for p in 0..=self.p_deg {
            for q in 0..=self.q_deg {
                let c = self.coeff_at(p, q);
                if c.is_zero() {
                    continue;
                }
                let idx = (p as i64 - q as i64 + max_mode as i64) as usize;
                coeff[idx] = coeff[idx].clone() + c;
            }
        }
        TrigPoly::from_grid(max_mode, coeff)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut zp = Complex64::new(1.0, 0.0);
        for p in 0..=self.p_deg {
            let mut zq = Complex64::new(1.0, 0.0);
            for q in 0..=self.q_deg {
                let c = self.coeff_at(p, q);
                if !c.is_zero() {
                    acc += crat_to_c64(&c) * zp * zq;
                }
                zq *= zb;
            }
            zp *= z;
        }
        acc
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.coeff
            .iter()
            .map(crat_abs_f64)
            .fold(0.0, f64::max)
    }

    /// Debug dump: `{"P": .., "Q": .., "coeff": [[re, im], ...]}` row-major.
    pub fn to_json_string(&self) -> String {
        let mut s = format!("{{\"P\":{},\"Q\":{},\"coeff\":[", self.p_deg, self.q_deg);
        for (i, c) in self.coeff.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let z = crat_to_c64(c);
            s.push_str(&format!("[{:.16e},{:.16e}]", z.re, z.im));
        }
        s.push_str("]}");
        s
    }
}

/// Trigonometric polynomial `sum_{|m| <= M} fourier[m] e^{i m t}` on the circle.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly {
    max_mode: usize,
    // index = m + max_mode
    coeff: Vec<CRat>,
}

impl TrigPoly {
    fn from_grid(max_mode: usize, coeff: Vec<CRat>) -> Self {
        debug_assert_eq!(coeff.len(), 2 * max_mode + 1);
        let mut t = TrigPoly { max_mode, coeff };
        t.trim();
        t
    }

    fn trim(&mut self) {
        let mut m = self.max_mode;
        while m > 0 {
            let hi = &self.coeff[(m as i64 + self.max_mode as i64) as usize];
            let lo = &self.coeff[(self.max_mode as i64 - m as i64) as usize];
            if hi.is_zero() && lo.is_zero() {
                m -= 1;
            } else {
                break;
            }
        }
        if m == self.max_mode {
            return;
        }
        let old_center = self.max_mode as i64;
        let mut coeff = Vec::with_capacity(2 * m + 1);
        for i in -(m as i64)..=(m as i64) {
            coeff.push(self.coeff[(i + old_center) as usize].clone());
        }
        self.max_mode = m;
        self.coeff = coeff;
    }

    pub fn zero() -> Self {
        TrigPoly { max_mode: 0, coeff: vec![CRat::zero()] }
    }

    pub fn from_modes(modes: &[(i64, CRat)]) -> Self {
        let max_mode = modes.iter().map(|&(m, _)| m.unsigned_abs() as usize).max().unwrap_or(0);
        let mut coeff = vec![CRat::zero(); 2 * max_mode + 1];
        for (m, c) in modes {
            let idx = (m + max_mode as i64) as usize;
            coeff[idx] = coeff[idx].clone() + c.clone();
        }
        Self::from_grid(max_mode, coeff)
    }

    pub fn max_mode(&self) -> usize {
        self.max_mode
    }

    /// Fourier coefficient of `e^{i m t}`, zero outside the stored band.
    pub fn coeff(&self, m: i64) -> CRat {
        if m.unsigned_abs() as usize <= self.max_mode {
            self.coeff[(m + self.max_mode as i64) as usize].clone()
        } else {
            CRat::zero()
        }
    }

    /// Real-valued iff `fourier[-m] == conj(fourier[m])` for all m.
    pub fn is_real(&self) -> bool {
        (0..=self.max_mode as i64).all(|m| self.coeff(-m) == crat_conj(&self.coeff(m)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.iter().all(|c| c.is_zero())
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.coeff.iter().map(crat_abs_f64).fold(0.0, f64::max)
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for m in -(self.max_mode as i64)..=(self.max_mode as i64) {
            let c = self.coeff(m);
            if !c.is_zero() {
                let phase = Complex64::new(0.0, m as f64 * theta).exp();
                acc += crat_to_c64(&c) * phase;
            }
        }
        acc
    }
}

/// Harmonic extension of real boundary data:
/// `h = g_0 + sum_{m>=1} (g_m z^m + conj(g_m) zbar^m)` satisfies
/// `lap h = 0` and `boundary_trace(h) == g`.
pub fn harmonic_extension(g: &TrigPoly) -> Result<BiPoly> {
    if !g.is_real() {
        return Err(Error::NotReal("boundary data"));
    }
    let mut terms = vec![(0usize, 0usize, g.coeff(0))];
    for m in 1..=g.max_mode() {
        let c = g.coeff(m as i64);
        if !c.is_zero() {
            terms.push((m, 0, c.clone()));
            terms.push((0, m, crat_conj(&c)));
        }
    }
    BiPoly::from_terms(&terms)
}

/// Exact solve of `lap u = rhs` on the disk with `u = 0` on the boundary.
///
/// Each monomial `c z^p zbar^q` has the particular antiderivative
/// `c z^{p+1} zbar^{q+1} / (4 (p+1)(q+1))`; subtracting the harmonic
/// extension of its boundary trace enforces the zero trace identically.
pub fn poisson_solve(rhs: &BiPoly) -> Result<BiPoly> {
    if !rhs.is_real() {
        return Err(Error::NotReal("right-hand side"));
    }
    let mut terms = Vec::new();
    for p in 0..=rhs.p_degree() {
        for q in 0..=rhs.q_degree() {
            let c = rhs.coeff_at(p, q);
            if c.is_zero() {
                continue;
            }
            let den = 4 * (p as i64 + 1) * (q as i64 + 1);
            terms.push((p + 1, q + 1, c * crate::scalar::crat_from_ratio(1, den)));
        }
    }
    let particular = BiPoly::from_terms(&terms)?;
    let correction = harmonic_extension(&particular.boundary_trace())?;
    Ok(particular.sub(&correction))
}
