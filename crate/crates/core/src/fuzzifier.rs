//! Fuzzification of quantities and construction of the revised database.
//!
//! Mining proceeds in three preparation steps implemented here:
//!
//! 1. every quantity is mapped to membership degrees of the configured
//!    linguistic terms ([`fuzzify_value`], [`transform_database`]);
//! 2. per variable, the single term with the highest total degree across the
//!    database is kept ([`term_supports`], [`select_max_cardinality`]);
//! 3. transactions are rewritten over the retained terms, sorted ascending by
//!    term support, dropping terms whose support falls below the rare
//!    threshold ([`build_revised_database`]).
//!
//! The resulting [`RevisedDatabase`] is the input to the list-based miner and
//! to the brute-force oracle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::dataset::{MembershipFunctionConfig, QuantitativeDatabase};
use crate::error::{Error, Result};
use crate::SUPPORT_EPSILON;

/// A fuzzy item: an item variable paired with a linguistic term label,
/// rendered as `variable.label` (for example `A.L`).
///
/// Ordering is lexicographic by `(variable, label)`, which is the tie-break
/// order used wherever equal supports must be ranked deterministically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuzzyTerm {
    pub variable: String,
    pub label: String,
}

impl FuzzyTerm {
    pub fn new(variable: impl Into<String>, label: impl Into<String>) -> Self {
        FuzzyTerm {
            variable: variable.into(),
            label: label.into(),
        }
    }
}

impl fmt::Display for FuzzyTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.variable, self.label)
    }
}

impl Serialize for FuzzyTerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A transaction after fuzzification: fuzzy terms with nonzero degrees.
///
/// Memberships are ordered by the original item order and, within one item,
/// by term declaration order.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyTransaction {
    tid: u32,
    memberships: Vec<(FuzzyTerm, f64)>,
}

impl FuzzyTransaction {
    pub fn tid(&self) -> u32 {
        self.tid
    }

    /// The `(term, degree)` pairs; every degree is strictly positive.
    pub fn memberships(&self) -> &[(FuzzyTerm, f64)] {
        &self.memberships
    }
}

/// Maps one quantity to membership degrees, returned as
/// `(term index, degree)` pairs in term declaration order.
///
/// Zero degrees are dropped, so the result holds one pair when the quantity
/// sits on a peak (or beyond the first/last peak) and two adjacent pairs when
/// it falls between peaks. The returned degrees always sum to exactly 1.
pub fn fuzzify_value(
    quantity: f64,
    config: &MembershipFunctionConfig,
) -> Result<Vec<(usize, f64)>> {
    if !quantity.is_finite() || quantity <= 0.0 {
        return Err(Error::InvalidQuantity(quantity));
    }
    let terms = config.terms();
    let last = terms.len() - 1;
    if quantity <= terms[0].peak {
        return Ok(vec![(0, 1.0)]);
    }
    if quantity >= terms[last].peak {
        return Ok(vec![(last, 1.0)]);
    }
    for i in 0..last {
        let (lo, hi) = (terms[i].peak, terms[i + 1].peak);
        if quantity < hi {
            let rising = (quantity - lo) / (hi - lo);
            let falling = 1.0 - rising;
            let mut degrees = Vec::with_capacity(2);
            if falling > 0.0 {
                degrees.push((i, falling));
            }
            if rising > 0.0 {
                degrees.push((i + 1, rising));
            }
            return Ok(degrees);
        }
    }
    unreachable!("quantity below the last peak always falls in some peak interval")
}

/// Fuzzifies every transaction of a database.
pub fn transform_database(
    db: &QuantitativeDatabase,
    config: &MembershipFunctionConfig,
) -> Result<Vec<FuzzyTransaction>> {
    db.transactions()
        .iter()
        .map(|txn| {
            let mut memberships = Vec::with_capacity(txn.len() * 2);
            for (item, quantity) in txn.entries() {
                for (term_idx, degree) in fuzzify_value(*quantity, config)? {
                    let term = FuzzyTerm::new(item.clone(), config.label(term_idx));
                    memberships.push((term, degree));
                }
            }
            Ok(FuzzyTransaction {
                tid: txn.tid(),
                memberships,
            })
        })
        .collect()
}

/// Sums each term's degrees over all transactions (its scalar cardinality).
pub fn term_supports(transactions: &[FuzzyTransaction]) -> BTreeMap<FuzzyTerm, f64> {
    let mut supports: BTreeMap<FuzzyTerm, f64> = BTreeMap::new();
    for txn in transactions {
        for (term, degree) in txn.memberships() {
            *supports.entry(term.clone()).or_insert(0.0) += degree;
        }
    }
    supports
}

/// Picks, per variable, the term with the maximum support.
///
/// Exact support ties go to the term declared earliest in the membership
/// configuration. Every term in `supports` must use a label from `config`.
pub fn select_max_cardinality(
    supports: &BTreeMap<FuzzyTerm, f64>,
    config: &MembershipFunctionConfig,
) -> BTreeMap<String, (FuzzyTerm, f64)> {
    let mut best: HashMap<&str, (usize, &FuzzyTerm, f64)> = HashMap::new();
    for (term, &support) in supports {
        let term_idx = config
            .term_index(&term.label)
            .expect("term label missing from the membership config it was built with");
        match best.get_mut(term.variable.as_str()) {
            None => {
                best.insert(&term.variable, (term_idx, term, support));
            }
            Some(entry) => {
                let (best_idx, _, best_support) = *entry;
                if support > best_support || (support == best_support && term_idx < best_idx) {
                    *entry = (term_idx, term, support);
                }
            }
        }
    }
    best.into_values()
        .map(|(_, term, support)| (term.variable.clone(), (term.clone(), support)))
        .collect()
}

/// One retained term of a revised database together with its support.
#[derive(Debug, Clone, PartialEq)]
pub struct RetainedTerm {
    pub term: FuzzyTerm,
    pub support: f64,
}

/// A transaction rewritten over retained terms.
///
/// Entries are `(rank, degree)` pairs sorted by rank, where rank is the
/// term's position in the revised database's global order. Transactions that
/// lose all their terms stay in the database as empty rows.
#[derive(Debug, Clone, PartialEq)]
pub struct RevisedTransaction {
    tid: u32,
    entries: Vec<(usize, f64)>,
}

impl RevisedTransaction {
    pub fn tid(&self) -> u32 {
        self.tid
    }

    /// The `(rank, degree)` pairs, ranks strictly ascending.
    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }
}

/// The revised database: retained terms in support-ascending global order
/// plus every transaction rewritten over them.
#[derive(Debug, Clone, PartialEq)]
pub struct RevisedDatabase {
    terms: Vec<RetainedTerm>,
    rank: HashMap<FuzzyTerm, usize>,
    transactions: Vec<RevisedTransaction>,
}

impl RevisedDatabase {
    /// The retained terms, ascending by support (ties broken by term order).
    pub fn terms(&self) -> &[RetainedTerm] {
        &self.terms
    }

    /// Number of retained terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Global-order rank of `term`, if retained.
    pub fn rank_of(&self, term: &FuzzyTerm) -> Option<usize> {
        self.rank.get(term).copied()
    }

    /// The rewritten transactions, in original tid order.
    pub fn transactions(&self) -> &[RevisedTransaction] {
        &self.transactions
    }

    /// True when no term survived the rare threshold.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Resolves ranks back to their terms.
    pub fn resolve(&self, ranks: &[usize]) -> Vec<FuzzyTerm> {
        ranks.iter().map(|&r| self.terms[r].term.clone()).collect()
    }
}

/// Rewrites fuzzified transactions over the terms chosen by
/// [`select_max_cardinality`], keeping only terms whose support is at least
/// `min_rare_abs` (up to [`SUPPORT_EPSILON`]).
pub fn build_revised_database(
    transactions: &[FuzzyTransaction],
    chosen: &BTreeMap<String, (FuzzyTerm, f64)>,
    min_rare_abs: f64,
) -> RevisedDatabase {
    let mut terms: Vec<RetainedTerm> = chosen
        .values()
        .filter(|(_, support)| *support >= min_rare_abs - SUPPORT_EPSILON)
        .map(|(term, support)| RetainedTerm {
            term: term.clone(),
            support: *support,
        })
        .collect();
    terms.sort_by(|a, b| {
        a.support
            .total_cmp(&b.support)
            .then_with(|| a.term.cmp(&b.term))
    });
    let rank: HashMap<FuzzyTerm, usize> = terms
        .iter()
        .enumerate()
        .map(|(idx, retained)| (retained.term.clone(), idx))
        .collect();
    let transactions = transactions
        .iter()
        .map(|txn| {
            let mut entries: Vec<(usize, f64)> = txn
                .memberships()
                .iter()
                .filter_map(|(term, degree)| rank.get(term).map(|&r| (r, *degree)))
                .collect();
            entries.sort_unstable_by_key(|&(r, _)| r);
            RevisedTransaction {
                tid: txn.tid(),
                entries,
            }
        })
        .collect();
    RevisedDatabase {
        terms,
        rank,
        transactions,
    }
}

/// Runs the full preparation pipeline: fuzzify, pick one term per variable,
/// rewrite over terms with support at least `min_rare_abs`.
pub fn revise_database(
    db: &QuantitativeDatabase,
    config: &MembershipFunctionConfig,
    min_rare_abs: f64,
) -> Result<RevisedDatabase> {
    let transactions = transform_database(db, config)?;
    let supports = term_supports(&transactions);
    let chosen = select_max_cardinality(&supports, config);
    Ok(build_revised_database(&transactions, &chosen, min_rare_abs))
}
