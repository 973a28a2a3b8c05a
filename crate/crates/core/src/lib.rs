//! Fuzzy rare itemset mining over quantitative transaction databases.
//!
//! Classic frequent-itemset mining hunts for combinations that occur a lot;
//! this crate hunts for the opposite: combinations whose fuzzy support lands
//! in a low band `[min_rare, max_freq)` — unusual, but not noise. Quantities
//! are first softened into linguistic terms (`low`/`middle`/`high`-style
//! memberships), one term per item is kept, and a vertical fuzzy-list search
//! enumerates itemsets without rescanning the database.
//!
//! # Quick start
//!
//! ```
//! use fri_core::dataset::{MembershipFunctionConfig, QuantitativeDatabase};
//! use fri_core::miner::{mine, MiningParams};
//!
//! let db = QuantitativeDatabase::parse_str("A:3 B:5\nA:2 B:4\nB:9\nB:8 C:2\n")?;
//! let config = MembershipFunctionConfig::default();
//! let result = mine(&db, &config, &MiningParams::relative(0.25, 0.75))?;
//! for itemset in &result.fris {
//!     println!("{} ({})", result_terms(&itemset.terms), itemset.kind);
//! }
//!
//! fn result_terms(terms: &[fri_core::fuzzifier::FuzzyTerm]) -> String {
//!     terms.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
//! }
//! # Ok::<(), fri_core::Error>(())
//! ```
//!
//! The pipeline pieces (fuzzification, term selection, database revision,
//! fuzzy lists) are public, so each stage can be driven — and checked —
//! independently; [`oracle`] holds a brute-force reference miner for exactly
//! that purpose.

pub mod dataset;
pub mod error;
pub mod fuzzifier;
pub mod fuzzy_list;
pub mod miner;
pub mod oracle;
pub mod report;
pub mod synth;

pub use error::{Error, Result};

/// Slack used in threshold comparisons so accumulated floating-point error
/// never flips a boundary decision.
pub const SUPPORT_EPSILON: f64 = 1e-9;
