use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde_json::Value;
use traceforge_verify::{CheckReport, ReportDocument};

use crate::args::Format;

/// A rendered report plus, for CSV, the witness sidecar it refers to.
pub struct Rendered {
    pub body: String,
    pub sidecar: Option<(PathBuf, String)>,
}

pub fn render(doc: &ReportDocument, format: Format, out: Option<&Path>) -> Result<Rendered, String> {
    match format {
        Format::Json => Ok(Rendered { body: json(doc)? + "\n", sidecar: None }),
        Format::Human => Ok(Rendered { body: human(doc)?, sidecar: None }),
        Format::Csv => {
            let out = out.ok_or("csv output stores witnesses in a sidecar file and needs --out")?;
            let sidecar = sidecar_path(out);
            let name = sidecar.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let body = csv(doc, &name)?;
            let witnesses: serde_json::Map<String, Value> = doc
                .reports
                .iter()
                .filter_map(|r| r.witness.as_ref().map(|w| (r.id.clone(), serde_json::to_value(w))))
                .map(|(id, v)| v.map(|v| (id, v)))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let side = serde_json::to_string_pretty(&Value::Object(witnesses)).map_err(|e| e.to_string())? + "\n";
            Ok(Rendered { body, sidecar: Some((sidecar, side)) })
        }
    }
}

pub fn json(doc: &ReportDocument) -> Result<String, String> {
    doc.to_json().map_err(|e| e.to_string())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".witnesses.json");
    out.with_file_name(name)
}

const CSV_HEADER: [&str; 14] = [
    "id",
    "status",
    "expected",
    "worst_slack",
    "tol",
    "trials_run",
    "discarded",
    "resampled",
    "seed",
    "units",
    "configs",
    "details",
    "wall_time",
    "witness",
];

fn csv(doc: &ReportDocument, sidecar: &str) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(|e| e.to_string())?;
    for r in &doc.reports {
        let v = serde_json::to_value(r).map_err(|e| e.to_string())?;
        let cell = |k: &str| match &v[k] {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        };
        let witness = if r.witness.is_some() { format!("{sidecar}#{}", r.id) } else { String::new() };
        let record: Vec<String> = CSV_HEADER[..13].iter().map(|k| cell(k)).chain([witness]).collect();
        w.write_record(&record).map_err(|e| e.to_string())?;
    }
    String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

/// Indented rendering of the JSON document; every JSON field appears, matrices
/// stay on one line in their interchange form.
fn human(doc: &ReportDocument) -> Result<String, String> {
    let mut s = format!("schema: {}\nreports:\n", doc.schema);
    for r in &doc.reports {
        let v = serde_json::to_value(r).map_err(|e| e.to_string())?;
        let mark = if r.meets_expectation() { "as expected" } else { "UNEXPECTED" };
        let _ = writeln!(s, "\n  {} ({mark})", r.id);
        if let Value::Object(map) = v {
            for (k, v) in &map {
                write_value(&mut s, k, v, 2);
            }
        }
    }
    let unexpected: Vec<&str> = doc.reports.iter().filter(|r| !r.meets_expectation()).map(|r| r.id.as_str()).collect();
    let _ = writeln!(
        s,
        "\n{} checks, {} as expected{}",
        doc.reports.len(),
        doc.reports.len() - unexpected.len(),
        if unexpected.is_empty() { String::new() } else { format!("; unexpected: {}", unexpected.join(", ")) }
    );
    Ok(s)
}

fn is_matrix(v: &Value) -> bool {
    matches!(v, Value::Object(m) if m.contains_key("dim") && m.contains_key("re"))
}

fn write_value(s: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) if !is_matrix(v) && !m.is_empty() => {
            let _ = writeln!(s, "{pad}{key}:");
            for (k, v) in m {
                write_value(s, k, v, depth + 1);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object()) => {
            let _ = writeln!(s, "{pad}{key}:");
            for (i, item) in items.iter().enumerate() {
                write_value(s, &format!("[{i}]"), item, depth + 1);
            }
        }
        Value::Array(items) if items.iter().all(Value::is_string) && !items.is_empty() => {
            let _ = writeln!(s, "{pad}{key}:");
            for item in items {
                let _ = writeln!(s, "{pad}  - {}", item.as_str().unwrap_or_default());
            }
        }
        Value::String(t) => {
            let _ = writeln!(s, "{pad}{key}: {t}");
        }
        other => {
            let _ = writeln!(s, "{pad}{key}: {other}");
        }
    }
}

/// Writes through a temporary file in the target directory and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Emits a rendered report to `out` (atomically) or stdout.
pub fn emit(rendered: &Rendered, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => {
            if let Some((side, text)) = &rendered.sidecar {
                write_atomic(side, text)?;
            }
            write_atomic(path, &rendered.body)
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.body.as_bytes())?;
            stdout.flush()
        }
    }
}

/// One-line summary for stderr.
pub fn summary(r: &CheckReport) -> String {
    let slack = r.worst_slack.map_or("n/a".to_string(), |s| format!("{s:.3e}"));
    format!("{:<30} {:<12} expected {:<12} worst_slack {slack}", r.id, r.status.as_str(), r.expected.as_str())
}
