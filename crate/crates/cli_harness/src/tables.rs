//! Recomputes the sphere table and the SL(2,R) quotient table and compares
//! every cell with golden verdicts.

use std::fmt::Write as _;

use lie_core::Scalar;
use serde::{Deserialize, Serialize};

use crate::catalog::{sl2_entries, sphere_entries, CatalogEntry, Sl2Structure};
use crate::report::{check_entry, Report};
use crate::HarnessError;

/// Golden verdicts for one cell, in the same vocabulary as [`Report`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRecord {
    pub name: String,
    pub subgroup_type: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_h0_zero: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_volume: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_status: Option<String>,
}

impl GoldenRecord {
    pub fn from_entry(e: &CatalogEntry) -> Self {
        GoldenRecord {
            name: e.name.clone(),
            subgroup_type: e.golden.subgroup_type.as_str().into(),
            chi_h0_zero: e.golden.chi_h0_zero,
            invariant_volume: e.golden.invariant_volume,
            mu_status: e.golden.mu_status.map(|m| m.as_str().into()),
        }
    }

    /// One line per field where the report disagrees.
    pub fn diff(&self, r: &Report) -> Vec<String> {
        let mut out = Vec::new();
        let mut cmp = |field: &str, want: String, got: String| {
            if want != got {
                out.push(format!("{}: {field} expected {want}, got {got}", self.name));
            }
        };
        let show = |b: Option<bool>| b.map(|v| v.to_string()).unwrap_or_else(|| "n/a".into());
        cmp("subgroup_type", self.subgroup_type.clone(), r.subgroup_type.clone());
        if self.chi_h0_zero.is_some() {
            cmp("chi_h0_zero", show(self.chi_h0_zero), show(r.chi_h0_zero));
        }
        if let Some(v) = self.invariant_volume {
            cmp("invariant_volume", v.to_string(), r.invariant_volume.to_string());
        }
        if let Some(m) = &self.mu_status {
            cmp("mu_status", m.clone(), r.mu_status.clone().unwrap_or_else(|| "n/a".into()));
        }
        out
    }
}

pub fn table_entries(eta: &Scalar) -> Vec<CatalogEntry> {
    let mut v = sphere_entries(eta);
    v.extend(sl2_entries(eta));
    v
}

pub fn builtin_golden(eta: &Scalar) -> Vec<GoldenRecord> {
    table_entries(eta).iter().map(GoldenRecord::from_entry).collect()
}

pub fn parse_golden(text: &str) -> Result<Vec<GoldenRecord>, HarnessError> {
    serde_json::from_str(text).map_err(|e| HarnessError::Golden(e.to_string()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TablesOutcome {
    pub cells: Vec<Report>,
    pub diffs: Vec<String>,
}

impl TablesOutcome {
    pub fn ok(&self) -> bool {
        self.diffs.is_empty()
    }
}

/// Recomputes all eleven cells. Without an explicit golden set the built-in
/// one is used.
pub fn reproduce_tables(eta: &Scalar, golden: Option<&[GoldenRecord]>) -> Result<TablesOutcome, HarnessError> {
    let entries = table_entries(eta);
    let builtin;
    let golden = match golden {
        Some(g) => g,
        None => {
            builtin = builtin_golden(eta);
            &builtin
        }
    };
    let mut cells = Vec::new();
    let mut diffs = Vec::new();
    for e in &entries {
        let (report, _) = check_entry(e)?;
        match golden.iter().find(|g| g.name == e.name) {
            Some(g) => diffs.extend(g.diff(&report)),
            None => diffs.push(format!("{}: no golden record", e.name)),
        }
        cells.push(report);
    }
    for g in golden {
        if !entries.iter().any(|e| e.name == g.name) {
            diffs.push(format!("{}: golden record without a table cell", g.name));
        }
    }
    Ok(TablesOutcome { cells, diffs })
}

fn cell_text(r: &Report) -> String {
    let kind = match r.subgroup_type.as_str() {
        "poisson_lie_subgroup" => "PL subgroup",
        "coisotropic_only" => "coisotropic",
        _ => "not coisotropic",
    };
    let chi = match r.chi_h0_zero {
        Some(true) => "chi=0",
        Some(false) => "chi!=0",
        None => "chi n/a",
    };
    let mu = match r.mu_status.as_deref() {
        Some("fails_condition_i") => "fails i",
        Some("fails_condition_ii") => "fails ii",
        Some("multiplicative_unimodular") => "MU",
        _ => "n/a",
    };
    format!("{kind}, {chi}, {mu}")
}

pub fn render_tables(out: &TablesOutcome) -> String {
    let mut s = String::from("SU(2) quotients\n");
    for r in out.cells.iter().take(2) {
        let _ = writeln!(s, "  {:<22}{}", r.name, cell_text(r));
    }
    s.push_str("\nSL(2,R) quotients (rows: structure, columns: isotropy)\n");
    let quotients: Vec<&str> = out.cells[2..5].iter().map(|r| r.name.split('/').nth(1).unwrap_or("")).collect();
    let _ = write!(s, "  {:<12}", "");
    for q in &quotients {
        let _ = write!(s, "{q:<34}");
    }
    s.push('\n');
    for (si, st) in Sl2Structure::ALL.iter().enumerate() {
        let _ = write!(s, "  {:<12}", st.as_str());
        for r in &out.cells[2 + 3 * si..5 + 3 * si] {
            let _ = write!(s, "{:<34}", cell_text(r));
        }
        s.push('\n');
    }
    if out.ok() {
        let _ = writeln!(s, "\nall {} cells match", out.cells.len());
    } else {
        let _ = writeln!(s, "\n{} mismatches", out.diffs.len());
        for d in &out.diffs {
            let _ = writeln!(s, "  {d}");
        }
    }
    s
}
