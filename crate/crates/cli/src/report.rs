//! Report envelope shared by every subcommand: inputs echoed, result,
//! status label, library version. The JSON layout is documented by
//! docs/report.schema.json; CSV rows use a stable two-column layout
//! (`field,value`) headed by the envelope.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct Report {
    pub library_version: String,
    pub command: String,
    pub inputs: Value,
    pub status: String,
    pub result: Value,
    #[serde(skip)]
    csv_rows: Vec<(String, String)>,
}

impl Report {
    pub fn new(
        command: &str,
        inputs: Value,
        status: String,
        result: Value,
        csv_rows: Vec<(String, String)>,
    ) -> Self {
        Report {
            library_version: quivercount::VERSION.to_string(),
            command: command.to_string(),
            inputs,
            status,
            result,
            csv_rows,
        }
    }

    /// Stable column order: the envelope first, then per-command rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("field,value\n");
        out.push_str(&format!("library_version,{}\n", self.library_version));
        out.push_str(&format!("command,{}\n", self.command));
        out.push_str(&format!("status,{}\n", self.status));
        for (k, v) in &self.csv_rows {
            out.push_str(&format!("{k},\"{v}\"\n"));
        }
        out
    }
}
