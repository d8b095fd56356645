//! Torsional rigidity of the conformal image of the unit disk.
//!
//! The exact path pulls the Dirichlet problem `lap v = -2, v = 0 on the
//! boundary` back to the disk: solve `lap u = -2 |phi'|^2` with zero trace
//! and integrate `rho = 2 int u |phi'|^2 dA`. Both steps are exact rational
//! identities. A second-order polar-grid finite-difference solver for the
//! same pulled-back equation serves as an independent oracle.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rustfft::FftPlanner;

use crate::diskalg::{poisson_solve, BiPoly};
use crate::error::{Error, Result};
use crate::scalar::{crat_from_int, rat_ratio, rat_to_f64, CRat};
use crate::symbol::TaylorSymbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionMethod {
    Exact,
    FiniteDifference,
}

impl TorsionMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            TorsionMethod::Exact => "exact",
            TorsionMethod::FiniteDifference => "fd",
        }
    }
}

/// Torsional rigidity with solver diagnostics. `rho_over_pi` carries the
/// exact rational value `rho / pi` on the exact path.
#[derive(Clone, Debug)]
pub struct TorsionResult {
    pub rho: f64,
    pub rho_over_pi: Option<BigRational>,
    pub method: TorsionMethod,
    pub max_boundary_residual: f64,
    pub max_laplacian_residual: f64,
}

/// `|phi'|^2` as an exact polynomial in `(z, zbar)`.
pub(crate) fn derivative_modulus_sq(s: &TaylorSymbol) -> Result<BiPoly> {
    let d = s.derivative().exact_coeffs();
    let analytic = BiPoly::from_analytic(&d)?;
    analytic.multiply(&analytic.conj())
}

fn exact_impl(s: &TaylorSymbol) -> Result<TorsionResult> {
    let weight = derivative_modulus_sq(s)?;
    let rhs = weight.scale(&crat_from_int(-2));
    let u = poisson_solve(&rhs)?;
    let lap_defect = u.laplacian().sub(&rhs).max_coeff_abs();
    let boundary = u.boundary_trace().max_coeff_abs();
    let integrand = u.multiply(&weight)?;
    let integral: CRat = integrand.disk_integral_over_pi();
    debug_assert!(integral.im.is_zero());
    let rho_over_pi = integral.re * rat_ratio(2, 1);
    let rho = rat_to_f64(rho_over_pi.clone()) * std::f64::consts::PI;
    Ok(TorsionResult {
        rho,
        rho_over_pi: Some(rho_over_pi),
        method: TorsionMethod::Exact,
        max_boundary_residual: boundary,
        max_laplacian_residual: lap_defect,
    })
}

/// Exact torsional rigidity of `phi(D)`. Refuses symbols whose univalence
/// is not certified, since the computed quantity is then a
/// multiplicity-weighted analogue rather than the geometric rigidity.
pub fn torsional_rigidity_exact(s: &TaylorSymbol) -> Result<TorsionResult> {
    if !s.univalence_certificate() {
        return Err(Error::UnivalenceUncertified);
    }
    exact_impl(s)
}

/// Exact path without the univalence gate, for callers that explicitly
/// asked for the multiplicity-weighted value.
pub fn torsional_rigidity_exact_forced(s: &TaylorSymbol) -> Result<TorsionResult> {
    exact_impl(s)
}

/// The pulled-back Poisson solution itself, for debug dumps.
pub fn pullback_solution(s: &TaylorSymbol) -> Result<BiPoly> {
    let weight = derivative_modulus_sq(s)?;
    poisson_solve(&weight.scale(&crat_from_int(-2)))
}

fn fd_impl(s: &TaylorSymbol, radial: usize, angular: usize) -> Result<TorsionResult> {
    if radial < 32 || angular < 64 {
        return Err(Error::GridTooCoarse { radial, angular });
    }
    let d = s.derivative();
    let h = 1.0 / radial as f64;
    let ht = 2.0 * std::f64::consts::PI / angular as f64;

    // |phi'|^2 and the right-hand side on the grid; ring 0 is the origin.
    let weight_at = |r: f64, t: f64| -> f64 {
        d.eval(Complex64::new(r * t.cos(), r * t.sin())).norm_sqr()
    };
    let w0 = weight_at(0.0, 0.0);
    let f0 = -2.0 * w0;
    let mut weight = vec![0.0; radial * angular]; // rings 1..radial-1 used
    let mut rhs = vec![Complex64::zero(); radial * angular];
    for i in 1..radial {
        let r = i as f64 * h;
        for j in 0..angular {
            let w = weight_at(r, j as f64 * ht);
            weight[i * angular + j] = w;
            rhs[i * angular + j] = Complex64::new(-2.0 * w, 0.0);
        }
    }

    // Angular transform decouples the 5-point polar stencil into one
    // tridiagonal system per Fourier mode; solving those exactly solves the
    // full discrete system.
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(angular);
    let inverse = planner.plan_fft_inverse(angular);
    for i in 1..radial {
        forward.process(&mut rhs[i * angular..(i + 1) * angular]);
    }
    // rustfft leaves the forward transform unnormalized; divide once here so
    // mode coefficients are true Fourier coefficients.
    for x in rhs.iter_mut() {
        *x /= angular as f64;
    }

    let mut modes = vec![Complex64::zero(); radial * angular]; // u-hat, ring-major
    let mut origin = Complex64::zero();
    let inv_h2 = 1.0 / (h * h);
    for m in 0..angular {
        let lam = (2.0 * (ht * m as f64).cos() - 2.0) / (ht * ht);
        // Unknowns: ring 1..radial-1, plus the origin slot for mode 0.
        let with_origin = m == 0;
        let n_unknown = (radial - 1) + usize::from(with_origin);
        let mut sub = vec![0.0; n_unknown];
        let mut diag = vec![0.0; n_unknown];
        let mut sup = vec![0.0; n_unknown];
        let mut b = vec![Complex64::zero(); n_unknown];
        let mut idx = 0;
        if with_origin {
            // average-of-neighbors closure at r = 0
            diag[0] = -4.0 * inv_h2;
            sup[0] = 4.0 * inv_h2;
            b[0] = Complex64::new(f0, 0.0);
            idx = 1;
        }
        for i in 1..radial {
            let r = i as f64 * h;
            let alpha = inv_h2 - 1.0 / (2.0 * r * h);
            let beta = -2.0 * inv_h2 + lam / (r * r);
            let gamma = inv_h2 + 1.0 / (2.0 * r * h);
            let row = idx + i - 1;
            diag[row] = beta;
            if i > 1 {
                sub[row] = alpha;
            } else if with_origin {
                sub[row] = alpha; // couples to the origin unknown
            }
            if i < radial - 1 {
                sup[row] = gamma;
            }
            b[row] = rhs[i * angular + m];
        }
        thomas_solve(&sub, &mut diag, &sup, &mut b)?;
        if with_origin {
            origin = b[0];
        }
        for i in 1..radial {
            modes[i * angular + m] = b[idx + i - 1];
        }
    }

    let mut u = vec![0.0; radial * angular];
    for i in 1..radial {
        let row = &mut modes[i * angular..(i + 1) * angular];
        inverse.process(row);
        for j in 0..angular {
            u[i * angular + j] = row[j].re;
        }
    }
    let u0 = origin.re;

    // rho = int 2 u |phi'|^2 dA by the tensor trapezoid rule; the r = 0 and
    // r = 1 rings contribute nothing (zero radius, zero boundary data).
    let mut rho = 0.0;
    for i in 1..radial {
        let r = i as f64 * h;
        let mut ring = 0.0;
        for j in 0..angular {
            ring += 2.0 * u[i * angular + j] * weight[i * angular + j];
        }
        rho += r * ring;
    }
    rho *= h * ht;

    // Discrete residual of the assembled solution over all equations.
    let mut max_res = {
        let mean_ring1: f64 = u[angular..2 * angular].iter().sum::<f64>() / angular as f64;
        (4.0 * inv_h2 * (mean_ring1 - u0) - f0).abs()
    };
    for i in 1..radial {
        let r = i as f64 * h;
        for j in 0..angular {
            let up = if i + 1 < radial { u[(i + 1) * angular + j] } else { 0.0 };
            let down = if i > 1 { u[(i - 1) * angular + j] } else { u0 };
            let left = u[i * angular + (j + angular - 1) % angular];
            let right = u[i * angular + (j + 1) % angular];
            let here = u[i * angular + j];
            let res = (up - 2.0 * here + down) * inv_h2
                + (up - down) / (2.0 * r * h)
                + (right - 2.0 * here + left) / (r * r * ht * ht)
                + 2.0 * weight[i * angular + j];
            max_res = max_res.max(res.abs());
        }
    }

    Ok(TorsionResult {
        rho,
        rho_over_pi: None,
        method: TorsionMethod::FiniteDifference,
        max_boundary_residual: 0.0,
        max_laplacian_residual: max_res,
    })
}

/// Second-order polar-grid finite-difference torsional rigidity on a
/// `radial x angular` grid (minimum 32 x 64).
pub fn torsional_rigidity_fd(s: &TaylorSymbol, radial: usize, angular: usize) -> Result<TorsionResult> {
    if !s.univalence_certificate() {
        return Err(Error::UnivalenceUncertified);
    }
    fd_impl(s, radial, angular)
}

pub fn torsional_rigidity_fd_forced(s: &TaylorSymbol, radial: usize, angular: usize) -> Result<TorsionResult> {
    fd_impl(s, radial, angular)
}

fn thomas_solve(sub: &[f64], diag: &mut [f64], sup: &[f64], b: &mut [Complex64]) -> Result<()> {
    let n = diag.len();
    for i in 1..n {
        if diag[i - 1].abs() < 1e-300 {
            return Err(Error::LinearSolve(format!("zero pivot at row {}", i - 1)));
        }
        let w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        let prev = b[i - 1] * w;
        b[i] -= prev;
    }
    if diag[n - 1].abs() < 1e-300 {
        return Err(Error::LinearSolve(format!("zero pivot at row {}", n - 1)));
    }
    b[n - 1] /= diag[n - 1];
    for i in (0..n - 1).rev() {
        b[i] = (b[i] - b[i + 1] * sup[i]) / diag[i];
    }
    Ok(())
}

/// St. Venant comparison `rho <= Area^2 / (2 pi)`, with the gap also
/// reported as an exact rational multiple of pi.
#[derive(Clone, Debug)]
pub struct StVenantCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub gap_over_pi: BigRational,
}

pub fn st_venant_check(s: &TaylorSymbol) -> Result<StVenantCheck> {
    if !s.univalence_certificate() {
        return Err(Error::UnivalenceUncertified);
    }
    let torsion = exact_impl(s)?;
    let rho_over_pi = torsion.rho_over_pi.clone().expect("exact path");
    // Area / pi = sum m |c_m|^2, exactly.
    let mut area_over_pi = BigRational::zero();
    for (m, c) in s.exact_coeffs().into_iter().enumerate().skip(1) {
        let norm_sq = c.re.clone() * c.re + c.im.clone() * c.im;
        area_over_pi += norm_sq * rat_ratio(m as i64, 1);
    }
    let rhs_over_pi = area_over_pi.clone() * area_over_pi / rat_ratio(2, 1);
    let gap_over_pi = rhs_over_pi.clone() - rho_over_pi;
    Ok(StVenantCheck {
        lhs: torsion.rho,
        rhs: rat_to_f64(rhs_over_pi) * std::f64::consts::PI,
        gap: rat_to_f64(gap_over_pi.clone()) * std::f64::consts::PI,
        gap_over_pi,
    })
}
