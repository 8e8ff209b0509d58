//! Machine-readable classification reports and the comparison with golden data.

use homspace_analysis::{classify, coisotropy_check, ClassificationRow, HomogeneousSpaceSpec, HomspaceError};
use lie_core::Covector;
use serde::{Deserialize, Serialize};

use crate::catalog::{CatalogEntry, Golden};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub coisotropic: bool,
    pub subgroup_type: String,
    pub chi_h0_zero: Option<bool>,
    pub invariant_volume: bool,
    pub semi_invariant: bool,
    pub mu_status: Option<String>,
    /// Coefficients of the witness one-form in the dual basis, as `p/q` strings.
    pub witness_theta0: Option<Vec<String>>,
    pub anchors: Vec<String>,
}

fn covector_strings(c: &Covector) -> Vec<String> {
    c.0.iter().map(|x| x.to_string()).collect()
}

impl Report {
    pub fn from_row(row: &ClassificationRow, coisotropic: bool, anchors: Vec<String>) -> Self {
        Report {
            name: row.name.clone(),
            coisotropic,
            subgroup_type: row.subgroup_type.as_str().to_string(),
            chi_h0_zero: row.chi_h0_zero,
            invariant_volume: row.invariant_volume,
            semi_invariant: row.semi_invariant,
            mu_status: row.mu_status.map(|m| m.as_str().to_string()),
            witness_theta0: row.mu_witness.as_ref().map(covector_strings),
            anchors,
        }
    }

    pub fn render_text(&self) -> String {
        let opt = |b: Option<bool>| b.map(|v| v.to_string()).unwrap_or_else(|| "n/a".into());
        let mut s = format!("{}\n", self.name);
        s += &format!("  coisotropic        {}\n", self.coisotropic);
        s += &format!("  subgroup type      {}\n", self.subgroup_type);
        s += &format!("  chi_h0 zero        {}\n", opt(self.chi_h0_zero));
        s += &format!("  invariant volume   {}\n", self.invariant_volume);
        s += &format!("  semi-invariant     {}\n", self.semi_invariant);
        s += &format!("  mu status          {}\n", self.mu_status.as_deref().unwrap_or("n/a"));
        if let Some(w) = &self.witness_theta0 {
            s += &format!("  witness theta0     ({})\n", w.join(", "));
        }
        for a in &self.anchors {
            s += &format!("  anchor             {a}\n");
        }
        s
    }
}

pub fn analyze(spec: &HomogeneousSpaceSpec, anchors: Vec<String>) -> Result<Report, HomspaceError> {
    let row = classify(spec)?;
    Ok(Report::from_row(&row, coisotropy_check(spec), anchors))
}

/// Differences between a computed row and the golden verdicts, one line each.
pub fn golden_diff(row: &ClassificationRow, golden: &Golden) -> Vec<String> {
    let mut out = Vec::new();
    let mut cmp = |field: &str, want: String, got: String| {
        if want != got {
            out.push(format!("{}: {field} expected {want}, got {got}", row.name));
        }
    };
    cmp("subgroup_type", golden.subgroup_type.as_str().into(), row.subgroup_type.as_str().into());
    if let Some(w) = golden.chi_h0_zero {
        cmp("chi_h0_zero", w.to_string(), row.chi_h0_zero.map(|b| b.to_string()).unwrap_or_else(|| "n/a".into()));
    }
    if let Some(w) = golden.invariant_volume {
        cmp("invariant_volume", w.to_string(), row.invariant_volume.to_string());
    }
    if let Some(w) = golden.semi_invariant {
        cmp("semi_invariant", w.to_string(), row.semi_invariant.to_string());
    }
    if let Some(w) = golden.mu_status {
        cmp("mu_status", w.as_str().into(), row.mu_status.map(|m| m.as_str()).unwrap_or("n/a").into());
    }
    if let Some(w) = &golden.witness {
        let got = row.mu_witness.as_ref().map(|c| covector_strings(c).join(" ")).unwrap_or("none".into());
        cmp("witness_theta0", covector_strings(w).join(" "), got);
    }
    out
}

/// Classifies an entry and compares it with its golden data.
pub fn check_entry(entry: &CatalogEntry) -> Result<(Report, Vec<String>), HomspaceError> {
    let row = classify(&entry.spec)?;
    let diff = golden_diff(&row, &entry.golden);
    Ok((Report::from_row(&row, coisotropy_check(&entry.spec), entry.anchors.clone()), diff))
}
