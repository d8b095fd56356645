//! Polynomial analytic symbols on the unit disk and their geometric functionals.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{crat_from_c64, CRat};

/// Finite Taylor series `c_0 + c_1 z + ... + c_K z^K` of an analytic map on
/// the unit disk.
///
/// Trailing zero coefficients are trimmed on construction, so `degree` is the
/// index of the last stored coefficient. The zero polynomial is stored as a
/// single zero coefficient. The constant term is retained even though every
/// commutator-type quantity downstream is invariant to it.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorSymbol {
    coeffs: Vec<Complex64>,
}

impl TaylorSymbol {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        assert!(
            coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()),
            "symbol coefficients must be finite; use from_pairs for fallible input"
        );
        while coeffs.len() > 1 {
            let last = *coeffs.last().unwrap();
            if last.re == 0.0 && last.im == 0.0 {
                coeffs.pop();
            } else {
                break;
            }
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        TaylorSymbol { coeffs }
    }

    /// Builds a symbol from `[re, im]` pairs indexed by Taylor degree,
    /// rejecting NaN and infinite entries.
    pub fn from_pairs(pairs: &[[f64; 2]]) -> Result<Self> {
        for (k, p) in pairs.iter().enumerate() {
            if !p[0].is_finite() || !p[1].is_finite() {
                return Err(Error::NonFinite(k));
            }
        }
        Ok(Self::new(
            pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
        ))
    }

    /// The monomial `c z^k`.
    pub fn monomial(k: usize, c: Complex64) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient `c_k`, zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        self.coeffs.iter().map(|c| [c.re, c.im]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex64::new(0.0, 0.0)
    }

    /// Coefficients as exact complex rationals. Infallible because
    /// construction rejects non-finite entries.
    pub fn exact_coeffs(&self) -> Vec<CRat> {
        self.coeffs
            .iter()
            .map(|&c| crat_from_c64(c).expect("finite by construction"))
            .collect()
    }

    /// Termwise derivative: coefficient `k*c_k` lands at index `k-1`.
    pub fn derivative(&self) -> TaylorSymbol {
        if self.coeffs.len() == 1 {
            return TaylorSymbol::new(vec![Complex64::new(0.0, 0.0)]);
        }
        let d = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        TaylorSymbol::new(d)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Squared Bergman norm of the derivative in unnormalized area measure:
    /// `pi * sum_{m>=1} m |c_m|^2`. The constant term does not contribute.
    pub fn dirichlet_energy(&self) -> f64 {
        let sum: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, c)| m as f64 * c.norm_sqr())
            .sum();
        PI * sum
    }

    /// Area of the image counted with multiplicity; equals the Dirichlet
    /// energy, and equals the geometric area exactly when the symbol is
    /// univalent.
    pub fn image_area(&self) -> f64 {
        self.dirichlet_energy()
    }

    /// Boundary length `int_0^{2pi} |phi'(e^{i t})| dt` by the trapezoid rule
    /// on the periodic grid. The floor `samples >= 4*(K+1)` guards against
    /// aliasing of `|phi'|`.
    pub fn perimeter(&self, samples: usize) -> Result<f64> {
        let min = 4 * (self.degree() + 1);
        if samples < min {
            return Err(Error::TooFewSamples {
                got: samples,
                min,
                degree: self.degree(),
            });
        }
        let d = self.derivative();
        let step = 2.0 * PI / samples as f64;
        let mut acc = 0.0;
        for j in 0..samples {
            let t = step * j as f64;
            acc += d.eval(Complex64::new(t.cos(), t.sin())).norm();
        }
        Ok(acc * step)
    }

    /// Classical sufficient coefficient condition for univalence:
    /// `sum_{k>=2} k |c_k| < |c_1|`. A `false` is inconclusive.
    pub fn univalence_certificate(&self) -> bool {
        let tail: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .skip(2)
            .map(|(k, c)| k as f64 * c.norm())
            .sum();
        tail < self.coeff(1).norm()
    }

    /// Symbol scaled by a complex constant.
    pub fn scaled(&self, factor: Complex64) -> TaylorSymbol {
        TaylorSymbol::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Symbol with the constant term replaced.
    pub fn with_constant(&self, c0: Complex64) -> TaylorSymbol {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = c0;
        TaylorSymbol::new(coeffs)
    }
}
