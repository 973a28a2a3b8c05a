//! A brute-force reference miner used to cross-check the fuzzy-list miner.
//!
//! The oracle recomputes every support straight from the revised database —
//! for each subset of retained terms, the sum over transactions of the
//! minimum member degree — and keeps whatever lands in the mining band. That
//! costs an exponential enumeration, so it is capped, but it shares no code
//! with the list-based search: supports come from the definition, not from
//! joins, which is exactly what makes the comparison meaningful.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fuzzifier::{FuzzyTerm, RevisedDatabase};
use crate::miner::support_in_band;

/// Default ceiling on the number of retained terms the oracle will
/// enumerate (2^20 subsets).
pub const DEFAULT_ORACLE_CAP: usize = 20;

/// Everything the brute-force enumeration produces.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Support of every itemset with positive support, keyed by ascending
    /// global-order ranks.
    pub supports: BTreeMap<Vec<usize>, f64>,
    /// The itemsets whose support falls in the band, in canonical order
    /// (shorter first, then rank-lexicographic), paired with their supports.
    pub fris: Vec<(Vec<usize>, f64)>,
}

impl OracleResult {
    /// The band itemsets with ranks resolved back to terms.
    pub fn resolved_fris(&self, rdb: &RevisedDatabase) -> Vec<(Vec<FuzzyTerm>, f64)> {
        self.fris
            .iter()
            .map(|(ranks, support)| (rdb.resolve(ranks), *support))
            .collect()
    }
}

fn support_of_ranks(ranks: &[usize], rdb: &RevisedDatabase) -> f64 {
    let mut total = 0.0;
    for txn in rdb.transactions() {
        let mut matched = 0;
        let mut min_degree = f64::INFINITY;
        for &(rank, degree) in txn.entries() {
            if ranks.contains(&rank) {
                matched += 1;
                min_degree = min_degree.min(degree);
            }
        }
        if matched == ranks.len() {
            total += min_degree;
        }
    }
    total
}

/// Computes one itemset's support directly from the revised database:
/// the sum, over transactions containing every term, of the minimum degree.
///
/// Terms may be given in any order; each must be retained in `rdb`.
pub fn brute_force_support(terms: &[FuzzyTerm], rdb: &RevisedDatabase) -> Result<f64> {
    let mut ranks = Vec::with_capacity(terms.len());
    for term in terms {
        let rank = rdb
            .rank_of(term)
            .ok_or_else(|| Error::UnknownTerm(term.to_string()))?;
        ranks.push(rank);
    }
    ranks.sort_unstable();
    ranks.dedup();
    Ok(support_of_ranks(&ranks, rdb))
}

/// Enumerates every non-empty subset of retained terms and returns all
/// positive supports plus the itemsets falling in
/// `[min_rare_abs, max_freq_abs)`.
///
/// Refuses databases with more than `cap` retained terms (and never more
/// than 63, the enumeration width).
pub fn brute_force_mine(
    rdb: &RevisedDatabase,
    min_rare_abs: f64,
    max_freq_abs: f64,
    cap: usize,
) -> Result<OracleResult> {
    let k = rdb.term_count();
    let cap = cap.min(63);
    if k > cap {
        return Err(Error::OracleCapExceeded { terms: k, cap });
    }
    let mut supports = BTreeMap::new();
    let mut fris: Vec<(Vec<usize>, f64)> = Vec::new();
    if k > 0 {
        for mask in 1_u64..(1_u64 << k) {
            let ranks: Vec<usize> = (0..k).filter(|&r| mask & (1 << r) != 0).collect();
            let support = support_of_ranks(&ranks, rdb);
            if support > 0.0 {
                supports.insert(ranks.clone(), support);
            }
            if support_in_band(support, min_rare_abs, max_freq_abs) {
                fris.push((ranks, support));
            }
        }
    }
    fris.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(OracleResult { supports, fris })
}
