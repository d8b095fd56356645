//! Sandwich report assembly: every numeric field is produced by the owning
//! module, and paper-guaranteed inequalities are checked as consistency
//! alarms rather than clamped.

use crate::error::Result;
use crate::operator::commutator_norm;
use crate::symbol::TaylorSymbol;
use crate::torsion::torsional_rigidity_exact_forced;

use std::f64::consts::PI;

/// Quadrature resolution for the perimeter field; large enough for
/// spectral accuracy on any symbol this toolkit accepts.
pub const PERIMETER_SAMPLES: usize = 4096;

const ISO_DEFECT_FLOOR: f64 = -1e-8;

/// Two-sided verification record for one symbol:
/// `rho / Area <= ||[T*, T]|| <= Area / (2 pi)`, with Putnam's weaker bound
/// and the isoperimetric defect alongside.
#[derive(Clone, Debug)]
pub struct SandwichReport {
    pub symbol: TaylorSymbol,
    pub area: f64,
    pub perimeter: f64,
    pub rho: f64,
    pub comm_norm: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub putnam_bound: f64,
    pub iso_defect: f64,
    pub upper_gap: f64,
    pub lower_gap: f64,
    pub univalence_certified: bool,
    pub truncation_used: usize,
    pub tolerance: f64,
    pub alarms: Vec<String>,
}

/// Runs the full sandwich verification. For uncertified symbols the
/// geometric fields are multiplicity-weighted and the inequality alarms are
/// skipped, since the bounds are only guaranteed for univalent maps.
pub fn sandwich(s: &TaylorSymbol, tol: f64) -> Result<SandwichReport> {
    if tol <= 0.0 {
        return Err(crate::error::Error::NonPositiveTolerance(tol));
    }
    let certified = s.univalence_certificate();
    let area = s.image_area();
    let samples = PERIMETER_SAMPLES.max(4 * (s.degree() + 1));
    let perimeter = s.perimeter(samples)?;
    let torsion = torsional_rigidity_exact_forced(s)?;
    let norm = commutator_norm(s, tol)?;

    let lower_bound = if area == 0.0 { 0.0 } else { torsion.rho / area };
    let upper_bound = area / (2.0 * PI);
    let putnam_bound = area / PI;
    let iso_defect = perimeter * perimeter - 4.0 * PI * area;
    let upper_gap = upper_bound - norm.value;
    let lower_gap = norm.value - lower_bound;

    let mut alarms = Vec::new();
    if certified {
        if lower_bound > norm.value + tol {
            alarms.push(format!(
                "lower bound violated: rho/area = {} exceeds commutator norm {}",
                lower_bound, norm.value
            ));
        }
        if norm.value > upper_bound + tol {
            alarms.push(format!(
                "upper bound violated: commutator norm {} exceeds area/(2 pi) = {}",
                norm.value, upper_bound
            ));
        }
        if norm.value > putnam_bound + tol {
            alarms.push(format!(
                "Putnam bound violated: commutator norm {} exceeds area/pi = {}",
                norm.value, putnam_bound
            ));
        }
        if iso_defect < ISO_DEFECT_FLOOR {
            alarms.push(format!("isoperimetric defect {} below {}", iso_defect, ISO_DEFECT_FLOOR));
        }
    }

    Ok(SandwichReport {
        symbol: s.clone(),
        area,
        perimeter,
        rho: torsion.rho,
        comm_norm: norm.value,
        lower_bound,
        upper_bound,
        putnam_bound,
        iso_defect,
        upper_gap,
        lower_gap,
        univalence_certified: certified,
        truncation_used: norm.truncation,
        tolerance: tol,
        alarms,
    })
}

/// 17-significant-digit float rendering; fixed so report output is
/// byte-identical across runs.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

pub fn fmt_symbol(s: &TaylorSymbol) -> String {
    let mut out = String::from("[");
    for (i, c) in s.coeffs().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("[{},{}]", fmt_f64(c.re), fmt_f64(c.im)));
    }
    out.push(']');
    out
}

impl SandwichReport {
    pub fn to_json_string(&self) -> String {
        let mut s = String::from("{");
        s.push_str(&format!("\"symbol\":{},", fmt_symbol(&self.symbol)));
        s.push_str(&format!("\"area\":{},", fmt_f64(self.area)));
        s.push_str(&format!("\"perimeter\":{},", fmt_f64(self.perimeter)));
        s.push_str(&format!("\"rho\":{},", fmt_f64(self.rho)));
        s.push_str(&format!("\"commNorm\":{},", fmt_f64(self.comm_norm)));
        s.push_str(&format!("\"lowerBound\":{},", fmt_f64(self.lower_bound)));
        s.push_str(&format!("\"upperBound\":{},", fmt_f64(self.upper_bound)));
        s.push_str(&format!("\"putnamBound\":{},", fmt_f64(self.putnam_bound)));
        s.push_str(&format!("\"isoDefect\":{},", fmt_f64(self.iso_defect)));
        s.push_str(&format!("\"upperGap\":{},", fmt_f64(self.upper_gap)));
        s.push_str(&format!("\"lowerGap\":{},", fmt_f64(self.lower_gap)));
        s.push_str(&format!("\"univalenceCertified\":{},", self.univalence_certified));
        s.push_str(&format!("\"truncationUsed\":{},", self.truncation_used));
        s.push_str(&format!("\"tolerance\":{},", fmt_f64(self.tolerance)));
        s.push_str("\"alarms\":[");
        for (i, a) in self.alarms.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format!("{:?}", a));
        }
        s.push_str("]}");
        s
    }

    pub fn csv_header() -> &'static str {
        "symbol,area,perimeter,rho,commNorm,lowerBound,upperBound,putnamBound,isoDefect,upperGap,lowerGap,univalenceCertified,truncationUsed,tolerance,alarms"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "\"{}\",{},{},{},{},{},{},{},{},{},{},{},{},{},\"{}\"",
            fmt_symbol(&self.symbol),
            fmt_f64(self.area),
            fmt_f64(self.perimeter),
            fmt_f64(self.rho),
            fmt_f64(self.comm_norm),
            fmt_f64(self.lower_bound),
            fmt_f64(self.upper_bound),
            fmt_f64(self.putnam_bound),
            fmt_f64(self.iso_defect),
            fmt_f64(self.upper_gap),
            fmt_f64(self.lower_gap),
            self.univalence_certified,
            self.truncation_used,
            fmt_f64(self.tolerance),
            self.alarms.join("; "),
        )
    }
}
