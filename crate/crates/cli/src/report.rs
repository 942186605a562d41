//! Report assembly and rendering.
//!
//! Every number shown is a library value passed through [`format::sig`] (text
//! and CSV) or [`format::round`] (JSON). Nothing is recomputed here.

use std::fmt::Write as _;

use causal_interface::{
    compare_all, geometry, measures, on_curve, sample_curve, CanonicalizationRecord, CountTable, CurveGeometry,
    EffectMeasures, FrequencyTable, GeometryKind, InterfacePoint, InterfaceSolution, SolutionStatus,
};
use serde::Serialize;

use crate::format::{round, sig};
use crate::input::LoadedTable;
use crate::CliError;

const ZERO: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub input: String,
    pub counts: Option<CountTable>,
    /// The table as read.
    pub table: FrequencyTable,
    /// `None` under `--no-canonicalize`.
    pub canonicalization: Option<CanonicalizationRecord>,
    /// The table the numbers below were computed from.
    pub analyzed: FrequencyTable,
    /// `None` when a column of the table is empty.
    pub measures: Option<EffectMeasures>,
    pub geometry: Option<CurveGeometry>,
    pub solutions: Vec<InterfaceSolution>,
    /// Why curve and epistemology results are missing, if they are.
    pub refused: Option<String>,
    pub precision: usize,
}

impl AnalysisReport {
    pub fn build(input: &str, loaded: &LoadedTable, canonicalize: bool, precision: usize) -> Result<Self, CliError> {
        let (analyzed, canonicalization) = if canonicalize {
            let (t, rec) = loaded.table.canonicalize()?;
            (t, Some(rec))
        } else {
            (loaded.table, None)
        };
        let m = match measures(&analyzed) {
            Ok(m) => Some(m),
            Err(causal_interface::Error::ZeroColumn { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let mut report = AnalysisReport {
            input: input.to_string(),
            counts: loaded.counts,
            table: loaded.table,
            canonicalization,
            analyzed,
            measures: m,
            geometry: None,
            solutions: Vec::new(),
            refused: None,
            precision,
        };
        if analyzed.determinant() < -ZERO {
            report.refused = Some("negative determinant; curve and epistemologies need a canonical table".into());
            return Ok(report);
        }
        let r = analyzed.row_normalize()?;
        report.geometry = Some(geometry(&r)?);
        report.solutions = compare_all(&analyzed)?;
        debug_assert!(report
            .solutions
            .iter()
            .all(|s| !s.status.is_feasible() || on_curve(&r, &s.point)));
        Ok(report)
    }

    pub fn infeasible_labels(&self) -> Vec<&'static str> {
        self.solutions
            .iter()
            .filter(|s| !s.status.is_feasible())
            .map(|s| s.kind.label())
            .collect()
    }

    pub fn text(&self) -> String {
        let p = self.precision;
        let mut out = String::new();
        let _ = writeln!(out, "input       {}", self.input);
        if let Some(c) = &self.counts {
            let _ = writeln!(out, "counts      {}", count_text(c));
        }
        let _ = writeln!(out, "table       {}", table_text(&self.table, p));
        match &self.canonicalization {
            Some(rec) => {
                let _ = writeln!(
                    out,
                    "canonical   columns swapped: {}, determinant {}",
                    if rec.columns_swapped { "yes" } else { "no" },
                    sig(rec.original_determinant, p)
                );
            }
            None => {
                let _ = writeln!(out, "canonical   skipped");
            }
        }
        let _ = writeln!(out, "analyzed    {}", table_text(&self.analyzed, p));
        out.push('\n');
        out.push_str(&measures_text(self.measures.as_ref(), p));
        out.push('\n');
        if let Some(reason) = &self.refused {
            let _ = writeln!(out, "curve       refused: {reason}");
            return out;
        }
        if let Some(g) = &self.geometry {
            let _ = writeln!(
                out,
                "geometry    {}, x_intercept {}, y_intercept {}",
                g.kind.as_str(),
                sig(g.x_intercept, p),
                sig(g.y_intercept, p)
            );
        }
        out.push('\n');
        let rows: Vec<Vec<String>> = self.solutions.iter().map(|s| solution_cells(s, p, "undefined")).collect();
        out.push_str(&aligned(&SOLUTION_HEADER, &rows));
        out
    }

    pub fn json(&self) -> JsonReport {
        let p = self.precision;
        JsonReport {
            input: self.input.clone(),
            counts: self.counts.map(|c| c.cells()),
            table: table_json(&self.table, p),
            canonicalization: self.canonicalization.map(|rec| JsonCanonical {
                columns_swapped: rec.columns_swapped,
                original_determinant: num(rec.original_determinant, p),
            }),
            analyzed: table_json(&self.analyzed, p),
            measures: self.measures.as_ref().map(|m| measures_json(m, p)),
            geometry: self.geometry.map(|g| JsonGeometry {
                kind: g.kind.as_str(),
                x_intercept: num(g.x_intercept, p),
                y_intercept: num(g.y_intercept, p),
            }),
            solutions: self.solutions.iter().map(|s| solution_json(s, p)).collect(),
            refused: self.refused.clone(),
            precision: p,
        }
    }

    /// One CSV row per solution, without the header.
    pub fn csv_rows(&self) -> Vec<String> {
        self.solutions
            .iter()
            .map(|s| {
                let mut cells = vec![csv_field(&self.input)];
                cells.extend(solution_cells(s, self.precision, ""));
                cells.join(",")
            })
            .collect()
    }
}

pub const SOLUTION_HEADER: [&str; 9] = [
    "label",
    "name",
    "eps0",
    "eps1",
    "sigma0",
    "sigma1",
    "explanatory_sum",
    "status",
    "limit_convention",
];

pub fn csv_header() -> String {
    format!("input,{}", SOLUTION_HEADER.join(","))
}

pub fn solution_cells(s: &InterfaceSolution, p: usize, undefined: &str) -> Vec<String> {
    let sigma = |f: fn(&causal_interface::ConfusionDistribution) -> f64| {
        s.sigma.as_ref().map_or_else(|| undefined.to_string(), |d| sig(f(d), p))
    };
    vec![
        s.kind.label().to_string(),
        s.kind.name().to_string(),
        sig(s.point.eps0, p),
        sig(s.point.eps1, p),
        sigma(|d| d.sigma0),
        sigma(|d| d.sigma1),
        sig(s.explanatory_sum, p),
        s.status.as_str().to_string(),
        s.limit_convention.to_string(),
    ]
}

/// Left-aligned columns separated by two spaces, trailing space trimmed.
pub fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut s = String::new();
        for (cell, w) in cells.zip(&widths) {
            let _ = write!(s, "{cell:<w$}  ");
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn table_text(t: &FrequencyTable, p: usize) -> String {
    let c = t.cells();
    format!(
        "[[{}, {}], [{}, {}]]",
        sig(c[0][0], p),
        sig(c[0][1], p),
        sig(c[1][0], p),
        sig(c[1][1], p)
    )
}

fn count_text(c: &CountTable) -> String {
    let c = c.cells();
    format!("[[{}, {}], [{}, {}]]", c[0][0], c[0][1], c[1][0], c[1][1])
}

pub fn measure_pairs(m: &EffectMeasures) -> [(&'static str, f64); 10] {
    [
        ("epsilon_hat", m.epsilon_hat),
        ("covariance", m.covariance),
        ("variance_a", m.variance_a),
        ("variance_b", m.variance_b),
        ("correlation", m.correlation),
        ("auc", m.auc),
        ("regression_slope_b_on_a", m.regression_slope_b_on_a),
        ("trace_r", m.trace_r),
        ("eigenvalue_r_1", m.eigenvalues_r.0),
        ("eigenvalue_r_2", m.eigenvalues_r.1),
    ]
}

pub fn measures_text(m: Option<&EffectMeasures>, p: usize) -> String {
    let Some(m) = m else {
        return "measures    undefined (a column of the table is empty)\n".into();
    };
    let mut out = String::from("measures\n");
    for (name, value) in measure_pairs(m) {
        let _ = writeln!(out, "  {name:<25}{}", sig(value, p));
    }
    out
}

fn num(x: f64, p: usize) -> Option<f64> {
    x.is_finite().then(|| round(x, p))
}

fn table_json(t: &FrequencyTable, p: usize) -> [[Option<f64>; 2]; 2] {
    t.cells().map(|row| row.map(|x| num(x, p)))
}

#[derive(Debug, Serialize)]
pub struct JsonReport {
    pub input: String,
    pub counts: Option<[[u64; 2]; 2]>,
    pub table: [[Option<f64>; 2]; 2],
    pub canonicalization: Option<JsonCanonical>,
    pub analyzed: [[Option<f64>; 2]; 2],
    pub measures: Option<JsonMeasures>,
    pub geometry: Option<JsonGeometry>,
    pub solutions: Vec<JsonSolution>,
    pub refused: Option<String>,
    pub precision: usize,
}

#[derive(Debug, Serialize)]
pub struct JsonCanonical {
    pub columns_swapped: bool,
    pub original_determinant: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct JsonGeometry {
    pub kind: &'static str,
    pub x_intercept: Option<f64>,
    pub y_intercept: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct JsonMeasures {
    pub epsilon_hat: Option<f64>,
    pub covariance: Option<f64>,
    pub variance_a: Option<f64>,
    pub variance_b: Option<f64>,
    pub correlation: Option<f64>,
    pub auc: Option<f64>,
    pub regression_slope_b_on_a: Option<f64>,
    pub trace_r: Option<f64>,
    pub eigenvalues_r: [Option<f64>; 2],
}

pub fn measures_json(m: &EffectMeasures, p: usize) -> JsonMeasures {
    JsonMeasures {
        epsilon_hat: num(m.epsilon_hat, p),
        covariance: num(m.covariance, p),
        variance_a: num(m.variance_a, p),
        variance_b: num(m.variance_b, p),
        correlation: num(m.correlation, p),
        auc: num(m.auc, p),
        regression_slope_b_on_a: num(m.regression_slope_b_on_a, p),
        trace_r: num(m.trace_r, p),
        eigenvalues_r: [num(m.eigenvalues_r.0, p), num(m.eigenvalues_r.1, p)],
    }
}

#[derive(Debug, Serialize)]
pub struct JsonSolution {
    pub label: &'static str,
    pub name: &'static str,
    pub eps0: Option<f64>,
    pub eps1: Option<f64>,
    pub sigma0: Option<f64>,
    pub sigma1: Option<f64>,
    pub explanatory_sum: Option<f64>,
    pub status: &'static str,
    /// The rule's own point when it was clamped or rejected.
    pub raw: Option<[Option<f64>; 2]>,
    pub limit_convention: bool,
}

fn solution_json(s: &InterfaceSolution, p: usize) -> JsonSolution {
    let raw = match s.status {
        SolutionStatus::Feasible => None,
        SolutionStatus::Clamped { raw } | SolutionStatus::Infeasible { raw } => Some([num(raw.eps0, p), num(raw.eps1, p)]),
    };
    JsonSolution {
        label: s.kind.label(),
        name: s.kind.name(),
        eps0: num(s.point.eps0, p),
        eps1: num(s.point.eps1, p),
        sigma0: s.sigma.and_then(|d| num(d.sigma0, p)),
        sigma1: s.sigma.and_then(|d| num(d.sigma1, p)),
        explanatory_sum: num(s.explanatory_sum, p),
        status: s.status.as_str(),
        raw,
        limit_convention: s.limit_convention,
    }
}

/// Sampled admissible set plus the feasible epistemology points.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveFile {
    pub source: String,
    pub table: FrequencyTable,
    pub columns_swapped: bool,
    pub geometry: CurveGeometry,
    /// Ascending in `eps0`.
    pub rows: Vec<InterfacePoint>,
    pub markers: Vec<(&'static str, InterfacePoint)>,
    pub precision: usize,
}

impl CurveFile {
    pub fn build(
        source: &str,
        loaded: &LoadedTable,
        canonicalize: bool,
        points: usize,
        precision: usize,
    ) -> Result<Self, CliError> {
        if points < 2 {
            return Err(CliError::Usage(format!("--points must be at least 2, got {points}")));
        }
        let (table, columns_swapped) = if canonicalize {
            let (t, rec) = loaded.table.canonicalize()?;
            (t, rec.columns_swapped)
        } else {
            (loaded.table, false)
        };
        let solutions = compare_all(&table)?;
        let r = table.row_normalize()?;
        let g = geometry(&r)?;
        let rows = match g.kind {
            GeometryKind::SinglePoint => vec![g.corner()],
            _ => sample_curve(&r, points)?,
        };
        let markers = solutions
            .iter()
            .filter(|s| s.status.is_feasible())
            .map(|s| (s.kind.label(), s.point))
            .collect();
        Ok(CurveFile {
            source: source.to_string(),
            table,
            columns_swapped,
            geometry: g,
            rows,
            markers,
            precision,
        })
    }

    pub fn csv(&self) -> String {
        let p = self.precision;
        let g = &self.geometry;
        let mut out = String::new();
        let _ = writeln!(out, "# source: {}", self.source);
        let _ = writeln!(out, "# table: {}", table_text(&self.table, p));
        let _ = writeln!(out, "# columns_swapped: {}", self.columns_swapped);
        let _ = writeln!(out, "# geometry: {}", g.kind.as_str());
        let _ = writeln!(out, "# x_intercept: {}", sig(g.x_intercept, p));
        let _ = writeln!(out, "# y_intercept: {}", sig(g.y_intercept, p));
        out.push_str("eps0,eps1,label\n");
        for q in &self.rows {
            let _ = writeln!(out, "{},{},", sig(q.eps0, p), sig(q.eps1, p));
        }
        for (label, q) in &self.markers {
            let _ = writeln!(out, "{},{},{label}", sig(q.eps0, p), sig(q.eps1, p));
        }
        out
    }
}
