//! Rendering of mining results into text, CSV, and JSON.

use serde_json::json;

use crate::miner::MiningResult;

/// Formats a number for human-readable output: fixed at nine decimals, then
/// stripped of trailing zeros, so `2.4000000000000004` prints as `2.4` and
/// `3.0` prints as `3`.
pub fn fmt_num(value: f64) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    let fixed = format!("{value:.9}");
    let trimmed = fixed.trim_end_matches('0').trim_end_matches('.');
    match trimmed {
        "" | "-0" => "0".to_string(),
        other => other.to_string(),
    }
}

impl MiningResult {
    /// One line per itemset: `{term,term,...} support kind`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for fri in &self.fris {
            let terms: Vec<String> = fri.terms.iter().map(ToString::to_string).collect();
            out.push_str(&format!(
                "{{{}}} {} {}\n",
                terms.join(","),
                fmt_num(fri.support),
                fri.kind
            ));
        }
        out
    }

    /// CSV with a `terms,support,kind` header; terms are space-separated
    /// within their field.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["terms", "support", "kind"])
            .expect("writing to a Vec cannot fail");
        for fri in &self.fris {
            let terms: Vec<String> = fri.terms.iter().map(ToString::to_string).collect();
            writer
                .write_record([
                    terms.join(" "),
                    fmt_num(fri.support),
                    fri.kind.to_string(),
                ])
                .expect("writing to a Vec cannot fail");
        }
        let bytes = writer.into_inner().expect("flushing a Vec cannot fail");
        String::from_utf8(bytes).expect("CSV output is UTF-8")
    }

    /// JSON object with the itemset array plus run statistics.
    pub fn to_json_value(&self) -> serde_json::Value {
        let itemsets: Vec<serde_json::Value> = self
            .fris
            .iter()
            .map(|fri| {
                json!({
                    "terms": fri.terms,
                    "support": fri.support,
                    "kind": fri.kind,
                })
            })
            .collect();
        json!({
            "itemsets": itemsets,
            "stats": {
                "patterns": self.fris.len(),
                "candidates": self.stats.candidates,
                "lists_constructed": self.stats.lists_constructed,
                "joins_pruned": self.stats.joins_pruned,
                "elapsed_ms": self.stats.elapsed.as_secs_f64() * 1e3,
                "peak_mem_estimate_bytes": self.stats.peak_mem_estimate_bytes,
            },
        })
    }

    /// Pretty-printed JSON, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_json_value())
            .expect("mining results serialize cleanly");
        out.push('\n');
        out
    }
}
