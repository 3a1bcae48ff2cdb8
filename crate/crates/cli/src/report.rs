//! Text, JSON and CSV renderings of results.

use std::fmt::Write as _;

use orthoglide::explorer::{ContourRow, VolumeEstimate};
use orthoglide::qaxis::Landmark;
use orthoglide::{DesignResultF64, JointFactorRange, LengthUnit};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SingularMarker {
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JointRangeReport {
    Bounded([f64; 2]),
    Singular(SingularMarker),
}

/// Machine-readable record of one design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignReport {
    pub strategy: u8,
    pub link_length: f64,
    pub rho_min: f64,
    pub rho_max: f64,
    pub delta_rho: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub cube_edge: f64,
    pub unit: String,
    pub mu_cube: [f64; 2],
    pub mu_joint: JointRangeReport,
    pub software_constraint: Option<f64>,
    pub rho_to_cube_ratio: f64,
    pub notes: Vec<String>,
}

impl From<&DesignResultF64> for DesignReport {
    fn from(d: &DesignResultF64) -> Self {
        Self {
            strategy: d.strategy.id(),
            link_length: d.link_length,
            rho_min: d.rho_min,
            rho_max: d.rho_max,
            delta_rho: d.delta_rho,
            p_min: d.p_min,
            p_max: d.p_max,
            cube_edge: d.cube_edge,
            unit: d.unit.name().to_string(),
            mu_cube: [d.mu_cube.min, d.mu_cube.max],
            mu_joint: match d.mu_joint {
                JointFactorRange::Bounded(r) => JointRangeReport::Bounded([r.min, r.max]),
                JointFactorRange::Singular => JointRangeReport::Singular(SingularMarker::Singular),
            },
            software_constraint: d.software_constraint,
            rho_to_cube_ratio: d.rho_to_cube_ratio,
            notes: d.notes.clone(),
        }
    }
}

pub fn designs_json(designs: &[DesignResultF64]) -> serde_json::Result<String> {
    let reports: Vec<DesignReport> = designs.iter().map(DesignReport::from).collect();
    let mut s = serde_json::to_string_pretty(&reports)?;
    s.push('\n');
    Ok(s)
}

fn with_unit(v: f64, unit: LengthUnit) -> String {
    match unit {
        LengthUnit::Normalized => format!("{v:.4}"),
        u => format!("{v:.4} {}", u.suffix()),
    }
}

fn range(lo: f64, hi: f64) -> String {
    format!("{lo:.4} .. {hi:.4}")
}

/// Per-strategy table with link length, joint limits, stroke ratio and factor ranges.
pub fn designs_text(designs: &[DesignResultF64]) -> String {
    let mut out = String::new();
    let unit = designs.first().map_or(LengthUnit::Normalized, |d| d.unit);
    let suffix = match unit {
        LengthUnit::Normalized => String::new(),
        u => format!(" [{}]", u.suffix()),
    };
    let _ = writeln!(
        out,
        "{:<8} {:>12} {:>12} {:>12} {:>12} {:>8} {:>18} {:>18}",
        "strategy",
        format!("L{suffix}"),
        "rho_min",
        "rho_max",
        "delta_rho",
        "c/drho",
        "mu(cube)",
        "mu(joints)"
    );
    for d in designs {
        let joint = match d.mu_joint {
            JointFactorRange::Bounded(r) => range(r.min, r.max),
            JointFactorRange::Singular => "singular".to_string(),
        };
        let _ = writeln!(
            out,
            "#{:<7} {:>12.4} {:>12.4} {:>12.4} {:>12.4} {:>8.4} {:>18} {:>18}",
            d.strategy.id(),
            d.link_length,
            d.rho_min,
            d.rho_max,
            d.delta_rho,
            d.rho_to_cube_ratio,
            range(d.mu_cube.min, d.mu_cube.max),
            joint
        );
    }
    for d in designs {
        let _ = writeln!(
            out,
            "#{}: cube p in [{}, {}]",
            d.strategy.id(),
            with_unit(d.p_min, d.unit),
            with_unit(d.p_max, d.unit)
        );
        if let Some(c) = d.software_constraint.filter(|_| d.is_singular()) {
            let _ = writeln!(out, "#{}: software constraint rho_x + rho_y + rho_z <= {}", d.strategy.id(), with_unit(c, d.unit));
        }
        for n in &d.notes {
            let _ = writeln!(out, "#{}: note: {n}", d.strategy.id());
        }
    }
    out
}

pub fn designs_csv(designs: &[DesignResultF64]) -> String {
    let mut out = String::from(
        "strategy,link_length,rho_min,rho_max,delta_rho,p_min,p_max,cube_edge,unit,mu_cube_min,mu_cube_max,mu_joint_min,mu_joint_max,software_constraint,rho_to_cube_ratio\n",
    );
    for d in designs {
        let (jl, jh) = match d.mu_joint {
            JointFactorRange::Bounded(r) => (r.min.to_string(), r.max.to_string()),
            JointFactorRange::Singular => ("singular".into(), "singular".into()),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            d.strategy.id(),
            d.link_length,
            d.rho_min,
            d.rho_max,
            d.delta_rho,
            d.p_min,
            d.p_max,
            d.cube_edge,
            d.unit.name(),
            d.mu_cube.min,
            d.mu_cube.max,
            jl,
            jh,
            d.software_constraint.map(|v| v.to_string()).unwrap_or_default(),
            d.rho_to_cube_ratio
        );
    }
    out
}

pub fn landmarks_text(rows: &[Landmark<f64>]) -> String {
    let mut out = format!("{:<6} {:>10} {:>10} {:>10} {:>10}\n", "point", "p", "rho", "chi", "det(J)");
    for r in rows {
        let (chi, det) = (format!("{:.4}", r.chi), format!("{:.4}", r.jacobian_det));
        let _ = writeln!(out, "{:<6} {:>10.4} {:>10.4} {chi:>10} {det:>10}", r.name, r.p, r.rho);
    }
    out
}

#[derive(Debug, Serialize)]
pub struct LandmarkReport {
    pub name: &'static str,
    pub p: f64,
    pub rho: f64,
    /// A number, or `"inf"` / `"-inf"` at a singular landmark.
    pub chi: serde_json::Value,
    pub jacobian_det: serde_json::Value,
}

fn extended_json(v: orthoglide::qaxis::Extended<f64>) -> serde_json::Value {
    match v.finite() {
        Some(x) => serde_json::json!(x),
        None => serde_json::json!(v.to_string()),
    }
}

impl From<&Landmark<f64>> for LandmarkReport {
    fn from(l: &Landmark<f64>) -> Self {
        Self { name: l.name, p: l.p, rho: l.rho, chi: extended_json(l.chi), jacobian_det: extended_json(l.jacobian_det) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VolumeReport {
    pub label: String,
    pub fraction: f64,
    pub reference: &'static str,
    pub samples: usize,
    pub bisection_tol: Option<f64>,
    pub star_violations: usize,
    pub clipping: Option<&'static str>,
}

impl VolumeReport {
    pub fn rays(label: &str, v: &VolumeEstimate<f64>) -> Self {
        Self {
            label: label.to_string(),
            fraction: v.fraction,
            reference: "V0",
            samples: v.ray_count,
            bisection_tol: Some(v.bisection_tol),
            star_violations: v.star_violations,
            clipping: Some(v.clipping.name()),
        }
    }

    pub fn monte_carlo(v: &VolumeEstimate<f64>) -> Self {
        Self {
            label: "singularity-free".into(),
            fraction: v.fraction,
            reference: "sphere",
            samples: v.ray_count,
            bisection_tol: None,
            star_violations: 0,
            clipping: None,
        }
    }
}

pub fn volumes_text(rows: &[VolumeReport]) -> String {
    let mut out = String::new();
    for r in rows {
        let _ = write!(out, "{:<20} {:.4} {:<6}  samples {}", r.label, r.fraction, r.reference, r.samples);
        if let (Some(tol), Some(clip)) = (r.bisection_tol, r.clipping) {
            let _ = write!(out, "  tol {tol:e}  clipping {clip}  star violations {}", r.star_violations);
        }
        out.push('\n');
    }
    out
}

pub fn volumes_csv(rows: &[VolumeReport]) -> String {
    let mut out = String::from("label,fraction,reference,samples,bisection_tol,star_violations,clipping\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.label,
            r.fraction,
            r.reference,
            r.samples,
            r.bisection_tol.map(|v| v.to_string()).unwrap_or_default(),
            r.star_violations,
            r.clipping.unwrap_or("")
        );
    }
    out
}

pub const CONTOUR_HEADER: &str = "rho_min,rho_max,mu_min,mu_max,kind_min,kind_max";

pub fn contour_csv(rows: &[ContourRow<f64>]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CONTOUR_HEADER);
    out.push('\n');
    for r in rows {
        let (a, b) = r.kind_labels();
        let _ = writeln!(out, "{},{},{},{},{a},{b}", r.rho_min, r.rho_max, r.mu_min, r.mu_max);
    }
    out
}
