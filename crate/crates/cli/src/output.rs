//! Output writers: every payload carries (command, spec, seed, version).

use std::path::Path;

use mixstable::{DistributionSpec, Error, SampleBatch};
use num_complex::Complex64;
use serde_json::json;

/// Run metadata echoed into every output payload.
pub struct Meta {
    pub command: &'static str,
    pub spec_label: String,
    pub spec: serde_json::Value,
    pub seed: u64,
}

impl Meta {
    pub fn new(command: &'static str, spec: &DistributionSpec, seed: u64) -> Meta {
        Meta {
            command,
            spec_label: spec.label(),
            spec: serde_json::to_value(spec).unwrap_or(serde_json::Value::Null),
            seed,
        }
    }

    fn json(&self) -> serde_json::Value {
        json!({
            "command": self.command,
            "spec": self.spec,
            "spec_label": self.spec_label,
            "seed": self.seed,
            "version": mixstable::VERSION,
        })
    }

    fn csv_comment(&self) -> String {
        format!(
            "# command: {}\n# spec: {}\n# seed: {}\n# version: {}\n",
            self.command,
            self.spec_label,
            self.seed,
            mixstable::VERSION
        )
    }
}

pub fn write_text(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidConfig(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

pub fn batch_csv(batch: &SampleBatch, meta: &Meta) -> String {
    let mut out = meta.csv_comment();
    let header: Vec<String> = (1..=batch.dim()).map(|i| format!("x{i}")).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in batch.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.17e}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn batch_json(batch: &SampleBatch, meta: &Meta) -> String {
    let rows: Vec<Vec<f64>> = batch.rows().map(|r| r.to_vec()).collect();
    serde_json::to_string_pretty(&json!({
        "meta": meta.json(),
        "dim": batch.dim(),
        "n": batch.len(),
        "rejected_rows": batch.meta.rejected,
        "draws": rows,
    }))
    .expect("sample payload serializes")
}

/// Render to exactly 12 significant digits.
fn sig12(v: f64) -> String {
    format!("{v:.11e}")
}

pub fn cf_json(meta: &Meta, t: &[f64], value: Complex64) -> String {
    serde_json::to_string_pretty(&json!({
        "meta": meta.json(),
        "t": t,
        "value": { "re": value.re, "im": value.im },
        "value_12sig": { "re": sig12(value.re), "im": sig12(value.im) },
    }))
    .expect("cf payload serializes")
}

pub fn scalar_json(meta: &Meta, arg_name: &str, arg: f64, value: f64) -> String {
    serde_json::to_string_pretty(&json!({
        "meta": meta.json(),
        arg_name: arg,
        "value": value,
        "value_12sig": sig12(value),
    }))
    .expect("scalar payload serializes")
}

pub fn moment_json(meta: &Meta, order: f64, value: f64, printed_form: Option<f64>) -> String {
    let mut body = json!({
        "meta": meta.json(),
        "order": order,
        "value": value,
        "value_12sig": sig12(value),
    });
    if let Some(p) = printed_form {
        body["printed_form_value"] = json!(p);
        body["printed_form_12sig"] = json!(sig12(p));
    }
    serde_json::to_string_pretty(&body).expect("moment payload serializes")
}

/// Read a sample batch back from the CSV this tool writes (comment lines,
/// header, then rows).
pub fn read_batch_csv(path: &Path) -> Result<SampleBatch, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
    let mut dim = 0usize;
    let mut values = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('x') {
            continue;
        }
        let row: Result<Vec<f64>, _> = line.split(',').map(|c| c.trim().parse::<f64>()).collect();
        let row = row.map_err(|e| {
            Error::InvalidConfig(format!("{}: bad sample row: {e}", path.display()))
        })?;
        if dim == 0 {
            dim = row.len();
        } else if row.len() != dim {
            return Err(Error::InvalidConfig(format!(
                "{}: ragged sample rows",
                path.display()
            )));
        }
        values.extend(row);
    }
    if dim == 0 {
        return Err(Error::InvalidConfig(format!(
            "{}: no sample rows found",
            path.display()
        )));
    }
    SampleBatch::new(dim, values, Default::default())
}
