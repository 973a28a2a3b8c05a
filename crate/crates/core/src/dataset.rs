//! Quantitative transaction databases and membership function configurations.
//!
//! A database is a list of transactions, each holding items with purchase
//! quantities. The on-disk format is one transaction per line of
//! whitespace-separated `item:quantity` tokens; blank lines and lines starting
//! with `#` are skipped, and transaction ids are assigned from line order
//! starting at 1.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::io::BufRead;

use serde::Serialize;

use crate::error::{ConfigErrorKind, Error, ParseErrorKind, Result};

/// One transaction: an id plus the purchased items with their quantities.
///
/// Item order within the transaction is preserved from the input; it carries
/// no meaning for mining but keeps serialization round-trips faithful.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantitativeTransaction {
    tid: u32,
    entries: Vec<(String, f64)>,
}

impl QuantitativeTransaction {
    /// The 1-based transaction id.
    pub fn tid(&self) -> u32 {
        self.tid
    }

    /// The `(item, quantity)` pairs in input order.
    pub fn entries(&self) -> &[(String, f64)] {
        &self.entries
    }

    /// Number of distinct items in this transaction.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True when the transaction holds no items (never produced by parsing).
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Quantity of `item` in this transaction, if present.
    pub fn quantity(&self, item: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|(name, _)| name == item)
            .map(|&(_, q)| q)
    }
}

/// An immutable quantitative transaction database.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantitativeDatabase {
    transactions: Vec<QuantitativeTransaction>,
    item_universe: BTreeSet<String>,
}

/// Summary statistics for a database.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DatabaseStats {
    /// Number of transactions.
    pub transactions: usize,
    /// Number of distinct items across all transactions.
    pub distinct_items: usize,
    /// Mean number of items per transaction.
    pub avg_transaction_len: f64,
    /// Largest quantity anywhere in the database.
    pub max_quantity: f64,
}

impl QuantitativeDatabase {
    /// Parses a database from text in the transaction file format.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut transactions = Vec::new();
        let mut item_universe = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tid = transactions.len() as u32 + 1;
            let mut entries: Vec<(String, f64)> = Vec::new();
            let mut seen: HashSet<&str> = HashSet::new();
            for token in line.split_whitespace() {
                let (item, raw_qty) = token.split_once(':').ok_or_else(|| Error::Parse {
                    line: line_no,
                    kind: ParseErrorKind::MalformedToken(token.to_string()),
                })?;
                if item.is_empty() || raw_qty.is_empty() {
                    return Err(Error::Parse {
                        line: line_no,
                        kind: ParseErrorKind::MalformedToken(token.to_string()),
                    });
                }
                let quantity: f64 = raw_qty.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    kind: ParseErrorKind::BadQuantity {
                        item: item.to_string(),
                        raw: raw_qty.to_string(),
                    },
                })?;
                if !quantity.is_finite() || quantity <= 0.0 {
                    return Err(Error::Parse {
                        line: line_no,
                        kind: ParseErrorKind::InvalidQuantity {
                            item: item.to_string(),
                            value: quantity,
                        },
                    });
                }
                if !seen.insert(item) {
                    return Err(Error::Parse {
                        line: line_no,
                        kind: ParseErrorKind::DuplicateItem(item.to_string()),
                    });
                }
                entries.push((item.to_string(), quantity));
            }
            for (item, _) in &entries {
                item_universe.insert(item.clone());
            }
            transactions.push(QuantitativeTransaction { tid, entries });
        }
        if transactions.is_empty() {
            return Err(Error::EmptyDatabase);
        }
        Ok(QuantitativeDatabase {
            transactions,
            item_universe,
        })
    }

    /// Parses a database from any buffered reader.
    pub fn from_reader(mut reader: impl BufRead) -> Result<Self> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        Self::parse_str(&text)
    }

    /// The transactions in input order (tids are 1..=len).
    pub fn transactions(&self) -> &[QuantitativeTransaction] {
        &self.transactions
    }

    /// All distinct item names, sorted.
    pub fn item_universe(&self) -> &BTreeSet<String> {
        &self.item_universe
    }

    /// Number of transactions.
    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    /// Always false: parsing rejects empty databases.
    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    /// Renders the database back into the transaction file format.
    ///
    /// Parsing the result yields a database equal to `self`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for txn in &self.transactions {
            let line: Vec<String> = txn
                .entries
                .iter()
                .map(|(item, qty)| format!("{item}:{qty}"))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Computes summary statistics.
    pub fn stats(&self) -> DatabaseStats {
        let total_entries: usize = self.transactions.iter().map(|t| t.len()).sum();
        let max_quantity = self
            .transactions
            .iter()
            .flat_map(|t| t.entries.iter().map(|&(_, q)| q))
            .fold(0.0_f64, f64::max);
        DatabaseStats {
            transactions: self.len(),
            distinct_items: self.item_universe.len(),
            avg_transaction_len: total_entries as f64 / self.len() as f64,
            max_quantity,
        }
    }
}

impl fmt::Display for QuantitativeDatabase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A single linguistic term of a membership configuration: a label plus the
/// quantity at which the term's membership degree peaks at 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TermDef {
    pub label: String,
    pub peak: f64,
}

/// Piecewise-linear membership functions over quantities, shared by every
/// item variable.
///
/// Terms are triangular with peaks at strictly increasing quantities; each
/// term's degree falls linearly to 0 at the neighboring peaks, and the first
/// and last terms stay at 1 below resp. above their peaks. Degrees of the
/// (at most two) active terms always sum to exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipFunctionConfig {
    terms: Vec<TermDef>,
}

impl MembershipFunctionConfig {
    /// Builds a configuration from `(label, peak)` pairs, validating that at
    /// least two terms exist, labels are unique, and peaks strictly increase.
    pub fn new(terms: Vec<(String, f64)>) -> Result<Self> {
        if terms.len() < 2 {
            return Err(Error::Config(ConfigErrorKind::TooFewTerms(terms.len())));
        }
        let mut seen: HashSet<&str> = HashSet::new();
        for (label, _) in &terms {
            if !seen.insert(label) {
                return Err(Error::Config(ConfigErrorKind::DuplicateLabel(label.clone())));
            }
        }
        for pair in terms.windows(2) {
            let (ref prev_label, prev) = pair[0];
            let (ref label, peak) = pair[1];
            if peak.partial_cmp(&prev) != Some(std::cmp::Ordering::Greater) {
                return Err(Error::Config(ConfigErrorKind::NonIncreasingPeaks {
                    prev_label: prev_label.clone(),
                    prev,
                    label: label.clone(),
                    peak,
                }));
            }
        }
        Ok(MembershipFunctionConfig {
            terms: terms
                .into_iter()
                .map(|(label, peak)| TermDef { label, peak })
                .collect(),
        })
    }

    /// Parses a configuration from text: one `term <label> <peak>` directive
    /// per line, with `#` comments and blank lines ignored.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = || {
                Error::Config(ConfigErrorKind::MalformedLine {
                    line: line_no,
                    raw: line.to_string(),
                })
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let [keyword, label, peak] = tokens[..] else {
                return Err(malformed());
            };
            if keyword != "term" {
                return Err(malformed());
            }
            let peak: f64 = peak.parse().map_err(|_| malformed())?;
            if !peak.is_finite() {
                return Err(malformed());
            }
            terms.push((label.to_string(), peak));
        }
        Self::new(terms)
    }

    /// Parses a configuration from any buffered reader.
    pub fn from_reader(mut reader: impl BufRead) -> Result<Self> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        Self::parse_str(&text)
    }

    /// The terms in declaration order (peaks ascending).
    pub fn terms(&self) -> &[TermDef] {
        &self.terms
    }

    /// Number of terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Label of the term at `index`.
    pub fn label(&self, index: usize) -> &str {
        &self.terms[index].label
    }

    /// Declaration index of the term labeled `label`, if any.
    pub fn term_index(&self, label: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.label == label)
    }
}

impl Default for MembershipFunctionConfig {
    /// The built-in three-term configuration: `L` peaking at 1, `M` at 6,
    /// `H` at 11.
    fn default() -> Self {
        MembershipFunctionConfig::new(vec![
            ("L".to_string(), 1.0),
            ("M".to_string(), 6.0),
            ("H".to_string(), 11.0),
        ])
        .expect("built-in membership config is valid")
    }
}

/// The built-in example database used by the CLI `--demo` flag and the test
/// suite: eight grocery-style transactions over six items.
pub const DEMO_DATABASE_TEXT: &str = "\
A:3 B:5 D:10 E:9
B:8 D:3
A:3 B:8 D:9 F:5
B:5 C:4 D:11 E:2
B:7 C:3 D:5 F:3
A:2 B:5 C:3 D:7
A:2 B:4 D:9 F:2
B:5 C:2 D:10 E:3
";

/// Parses [`DEMO_DATABASE_TEXT`] into a database.
pub fn demo_database() -> QuantitativeDatabase {
    QuantitativeDatabase::parse_str(DEMO_DATABASE_TEXT).expect("embedded demo database is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tokens_comments_and_blank_lines() {
        let text = "# header comment\nA:3 B:5\n\n  \nB:2.5 C:1\n# trailing comment\n";
        let db = QuantitativeDatabase::parse_str(text).unwrap();
        assert_eq!(db.len(), 2);
        assert_eq!(db.transactions()[0].tid(), 1);
        assert_eq!(db.transactions()[1].tid(), 2);
        assert_eq!(db.transactions()[0].entries(), &[("A".into(), 3.0), ("B".into(), 5.0)]);
        assert_eq!(db.transactions()[1].quantity("B"), Some(2.5));
        let items: Vec<&str> = db.item_universe().iter().map(String::as_str).collect();
        assert_eq!(items, ["A", "B", "C"]);
    }

    #[test]
    fn accepts_utf8_items_and_crlf_lines() {
        let db = QuantitativeDatabase::parse_str("奶粉:3 tea:2\r\nتفاح:1\r\n").unwrap();
        assert_eq!(db.len(), 2);
        assert_eq!(db.transactions()[0].quantity("奶粉"), Some(3.0));
        assert_eq!(db.transactions()[1].quantity("تفاح"), Some(1.0));
    }

    #[test]
    fn rejects_malformed_token() {
        let err = QuantitativeDatabase::parse_str("A:1\nB=2\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse { line: 2, kind: ParseErrorKind::MalformedToken(_) }
        ));
    }

    #[test]
    fn rejects_bad_and_non_positive_quantities() {
        let err = QuantitativeDatabase::parse_str("A:x\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse { line: 1, kind: ParseErrorKind::BadQuantity { .. } }
        ));
        for bad in ["A:0", "A:-2", "A:inf", "A:NaN"] {
            let err = QuantitativeDatabase::parse_str(bad).unwrap_err();
            assert!(
                matches!(
                    err,
                    Error::Parse { line: 1, kind: ParseErrorKind::InvalidQuantity { .. } }
                ),
                "`{bad}` should be rejected as an invalid quantity, got {err:?}"
            );
        }
    }

    #[test]
    fn rejects_duplicate_item_in_transaction() {
        let err = QuantitativeDatabase::parse_str("A:1 B:2 A:3\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse { line: 1, kind: ParseErrorKind::DuplicateItem(item) } if item == "A"
        ));
    }

    #[test]
    fn rejects_empty_database() {
        assert!(matches!(
            QuantitativeDatabase::parse_str("# only comments\n\n").unwrap_err(),
            Error::EmptyDatabase
        ));
        assert!(matches!(
            QuantitativeDatabase::parse_str("").unwrap_err(),
            Error::EmptyDatabase
        ));
    }

    #[test]
    fn text_round_trip_preserves_database() {
        let db = demo_database();
        let again = QuantitativeDatabase::parse_str(&db.to_text()).unwrap();
        assert_eq!(db, again);
    }

    #[test]
    fn demo_database_shape() {
        let db = demo_database();
        assert_eq!(db.len(), 8);
        assert_eq!(db.item_universe().len(), 6);
        let occurrences: usize = db.transactions().iter().map(|t| t.len()).sum();
        assert_eq!(occurrences, 30);
        assert_eq!(db.transactions()[0].quantity("D"), Some(10.0));
        assert_eq!(db.transactions()[7].quantity("C"), Some(2.0));
    }

    #[test]
    fn demo_stats() {
        let stats = demo_database().stats();
        assert_eq!(stats.transactions, 8);
        assert_eq!(stats.distinct_items, 6);
        assert_eq!(stats.avg_transaction_len, 30.0 / 8.0);
        assert_eq!(stats.max_quantity, 11.0);
    }

    #[test]
    fn membership_config_defaults_and_lookup() {
        let cfg = MembershipFunctionConfig::default();
        assert_eq!(cfg.term_count(), 3);
        assert_eq!(cfg.label(0), "L");
        assert_eq!(cfg.label(2), "H");
        assert_eq!(cfg.terms()[1].peak, 6.0);
        assert_eq!(cfg.term_index("M"), Some(1));
        assert_eq!(cfg.term_index("X"), None);
    }

    #[test]
    fn membership_config_parses_directives() {
        let cfg = MembershipFunctionConfig::parse_str(
            "# peaks for a retail dataset\nterm low 100\nterm mid 600\n\nterm high 1100\n",
        )
        .unwrap();
        assert_eq!(cfg.term_count(), 3);
        assert_eq!(cfg.label(1), "mid");
        assert_eq!(cfg.terms()[2].peak, 1100.0);
    }

    #[test]
    fn membership_config_rejects_malformed_input() {
        let err = MembershipFunctionConfig::parse_str("term L 1\npeak M 6\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Config(ConfigErrorKind::MalformedLine { line: 2, .. })
        ));
        let err = MembershipFunctionConfig::parse_str("term L one\nterm M 6\n").unwrap_err();
        assert!(matches!(err, Error::Config(ConfigErrorKind::MalformedLine { line: 1, .. })));
        let err = MembershipFunctionConfig::parse_str("term L 1 extra\n").unwrap_err();
        assert!(matches!(err, Error::Config(ConfigErrorKind::MalformedLine { .. })));
    }

    #[test]
    fn membership_config_rejects_bad_term_sets() {
        let err = MembershipFunctionConfig::parse_str("term L 1\n").unwrap_err();
        assert!(matches!(err, Error::Config(ConfigErrorKind::TooFewTerms(1))));
        let err = MembershipFunctionConfig::parse_str("term L 1\nterm L 6\n").unwrap_err();
        assert!(matches!(err, Error::Config(ConfigErrorKind::DuplicateLabel(l)) if l == "L"));
        let err = MembershipFunctionConfig::parse_str("term L 6\nterm M 6\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Config(ConfigErrorKind::NonIncreasingPeaks { .. })
        ));
        let err = MembershipFunctionConfig::parse_str("term L 6\nterm M 1\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Config(ConfigErrorKind::NonIncreasingPeaks { .. })
        ));
    }
}
