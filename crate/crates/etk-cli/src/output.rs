//! CSV and JSON emission for sweep tables.

use anyhow::{bail, Result};
use etk::experiments::{SweepSummary, SweepTable};

/// Floats are printed with 12 significant digits so the tables round-trip
/// through text.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.11e}")
    }
}

pub const CSV_HEADER: &str =
    "param,E_oracle,oracle_converged,E_et,E_improved,phi,rho0_et,character,rel_err_et,rel_err_improved";

/// Render a sweep table as CSV (LF line endings, UTF-8). An empty table is
/// an error so no file gets created for it.
pub fn render_csv(table: &SweepTable) -> Result<String> {
    if table.rows.is_empty() {
        bail!("sweep table is empty, nothing to write");
    }
    let mut out = String::with_capacity(64 * (table.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &table.rows {
        out.push_str(&fmt_sig(row.param));
        out.push(',');
        out.push_str(&fmt_sig(row.e_oracle));
        out.push(',');
        out.push_str(if row.oracle_converged { "true" } else { "false" });
        out.push(',');
        out.push_str(&fmt_sig(row.e_et));
        out.push(',');
        out.push_str(&fmt_sig(row.e_improved));
        out.push(',');
        out.push_str(&fmt_sig(row.phi));
        out.push(',');
        out.push_str(&fmt_sig(row.rho0_et));
        out.push(',');
        out.push_str(&row.character.to_string());
        out.push(',');
        out.push_str(&fmt_sig(row.rel_err_et));
        out.push(',');
        out.push_str(&fmt_sig(row.rel_err_improved));
        out.push('\n');
    }
    Ok(out)
}

/// Full table plus summary as pretty JSON.
pub fn render_json(table: &SweepTable, summary: &SweepSummary) -> Result<String> {
    #[derive(serde::Serialize)]
    struct Payload<'a> {
        rows: &'a [etk::experiments::SweepRow],
        summary: &'a SweepSummary,
    }
    Ok(serde_json::to_string_pretty(&Payload {
        rows: &table.rows,
        summary,
    })? + "\n")
}
