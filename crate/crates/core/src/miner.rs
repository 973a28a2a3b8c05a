//! The fuzzy rare itemset miner.
//!
//! An itemset is reported when its support lands in the half-open band
//! `[min_rare, max_freq)` — rare enough to be below the frequent threshold,
//! yet supported enough to clear the noise floor. The miner walks the
//! set-enumeration tree over the revised database's retained terms using
//! fuzzy lists: each node's list is joined with its later siblings' lists to
//! form the children, and a branch is cut when no extension can reach the
//! rare threshold anymore.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::dataset::{MembershipFunctionConfig, QuantitativeDatabase};
use crate::error::{Error, Result};
use crate::fuzzifier::{revise_database, FuzzyTerm, RevisedDatabase};
use crate::fuzzy_list::{build_initial_lists, construct, FuzzyList, FuzzyListElement};
use crate::SUPPORT_EPSILON;

/// How the `min_rare` / `max_freq` thresholds are to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdMode {
    /// Fractions of the transaction count (the default).
    Relative,
    /// Absolute support values.
    Absolute,
}

/// Mining thresholds plus their interpretation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiningParams {
    /// Lower band edge (inclusive).
    pub min_rare: f64,
    /// Upper band edge (exclusive).
    pub max_freq: f64,
    pub mode: ThresholdMode,
}

impl MiningParams {
    /// Thresholds as fractions of the transaction count.
    pub fn relative(min_rare: f64, max_freq: f64) -> Self {
        MiningParams {
            min_rare,
            max_freq,
            mode: ThresholdMode::Relative,
        }
    }

    /// Thresholds as absolute supports.
    pub fn absolute(min_rare: f64, max_freq: f64) -> Self {
        MiningParams {
            min_rare,
            max_freq,
            mode: ThresholdMode::Absolute,
        }
    }
}

/// Converts params into absolute `(min_rare, max_freq)` supports for a
/// database of `transactions` transactions, rejecting NaN or negative
/// thresholds and inverted bands.
pub fn resolve_thresholds(params: &MiningParams, transactions: usize) -> Result<(f64, f64)> {
    if params.min_rare.is_nan() || params.min_rare < 0.0 {
        return Err(Error::InvalidThreshold(format!(
            "min-rare must be a non-negative number, got {}",
            params.min_rare
        )));
    }
    if params.max_freq.is_nan() || params.max_freq < 0.0 {
        return Err(Error::InvalidThreshold(format!(
            "max-freq must be a non-negative number, got {}",
            params.max_freq
        )));
    }
    let (min_rare, max_freq) = match params.mode {
        ThresholdMode::Relative => {
            let n = transactions as f64;
            (params.min_rare * n, params.max_freq * n)
        }
        ThresholdMode::Absolute => (params.min_rare, params.max_freq),
    };
    if min_rare > max_freq {
        return Err(Error::ThresholdInversion { min_rare, max_freq });
    }
    Ok((min_rare, max_freq))
}

/// True when `support` falls in the mining band: strictly positive, at least
/// `min_rare_abs`, and strictly below `max_freq_abs` (both compared with
/// [`SUPPORT_EPSILON`] slack).
///
/// The positivity requirement keeps itemsets that appear in no transaction
/// out of the results even when `min_rare_abs` is 0.
pub fn support_in_band(support: f64, min_rare_abs: f64, max_freq_abs: f64) -> bool {
    support > 0.0 && support >= min_rare_abs - SUPPORT_EPSILON && support < max_freq_abs - SUPPORT_EPSILON
}

/// Which side of the frequent threshold a single term's support falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermBand {
    /// Support below `max_freq`.
    Rare,
    /// Support at or above `max_freq`.
    Frequent,
}

/// Classification of a reported itemset by its constituent terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ItemsetKind {
    /// Every term is itself rare.
    RareOnly,
    /// Rare and frequent terms mixed.
    Mixed,
    /// Every term is individually frequent, yet their combination is rare.
    FrequentOnly,
}

impl std::fmt::Display for ItemsetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ItemsetKind::RareOnly => "rare-only",
            ItemsetKind::Mixed => "mixed",
            ItemsetKind::FrequentOnly => "frequent-only",
        })
    }
}

/// Buckets each retained term by its own support versus `max_freq_abs`.
pub fn term_bands(rdb: &RevisedDatabase, max_freq_abs: f64) -> BTreeMap<FuzzyTerm, TermBand> {
    rdb.terms()
        .iter()
        .map(|retained| {
            let band = if retained.support >= max_freq_abs - SUPPORT_EPSILON {
                TermBand::Frequent
            } else {
                TermBand::Rare
            };
            (retained.term.clone(), band)
        })
        .collect()
}

/// Classifies an itemset from its terms' individual bands.
pub fn classify_itemset(
    terms: &[FuzzyTerm],
    bands: &BTreeMap<FuzzyTerm, TermBand>,
) -> Result<ItemsetKind> {
    let mut any_rare = false;
    let mut any_frequent = false;
    for term in terms {
        match bands.get(term) {
            None => return Err(Error::UnknownTerm(term.to_string())),
            Some(TermBand::Rare) => any_rare = true,
            Some(TermBand::Frequent) => any_frequent = true,
        }
    }
    Ok(if any_rare && any_frequent {
        ItemsetKind::Mixed
    } else if any_frequent {
        ItemsetKind::FrequentOnly
    } else {
        ItemsetKind::RareOnly
    })
}

/// How the miner decides whether a node's descendants are worth visiting.
///
/// A node with an empty list never extends under any variant: all of its
/// joins would come out empty too.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExtensionCheck {
    /// Extend only when `min(sum_if, sum_rf)` still reaches the rare
    /// threshold. Sound because an extension's support can exceed neither
    /// sum, and the tightest of the three variants.
    #[default]
    MinIfRf,
    /// Extend only when `sum_rf` reaches the rare threshold.
    RfOnly,
    /// Never prune beyond the empty-list rule; explore every node with a
    /// non-empty list. Useful as a reference in equivalence tests.
    Exhaustive,
}

/// One reported itemset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzyRareItemset {
    /// The terms, ordered by the revised database's global order.
    pub terms: Vec<FuzzyTerm>,
    /// The itemset's support.
    pub support: f64,
    pub kind: ItemsetKind,
}

/// Counters and measurements gathered during one mining run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiningStats {
    /// Enumeration-tree nodes visited (lists examined, including the initial
    /// per-term lists).
    pub candidates: u64,
    /// Fuzzy lists built by joining (excludes the initial per-term lists).
    pub lists_constructed: u64,
    /// Joins skipped because an extension check failed.
    pub joins_pruned: u64,
    /// Wall-clock time of the run.
    pub elapsed: Duration,
    /// High-water estimate of live fuzzy-list memory: the peak number of
    /// simultaneously held elements times the element size.
    pub peak_mem_estimate_bytes: u64,
}

/// Everything a mining run produces: the itemsets in canonical order plus
/// run statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct MiningResult {
    pub fris: Vec<FuzzyRareItemset>,
    pub stats: MiningStats,
}

struct SearchState {
    min_rare_abs: f64,
    max_freq_abs: f64,
    check: ExtensionCheck,
    found: Vec<(Vec<usize>, f64)>,
    candidates: u64,
    lists_constructed: u64,
    joins_pruned: u64,
    live_elements: u64,
    peak_elements: u64,
}

impl SearchState {
    fn allocate(&mut self, elements: usize) {
        self.live_elements += elements as u64;
        self.peak_elements = self.peak_elements.max(self.live_elements);
    }

    fn release(&mut self, elements: u64) {
        self.live_elements -= elements;
    }

    fn may_extend(&mut self, list: &FuzzyList) -> bool {
        if list.elements().is_empty() {
            return false;
        }
        let bound = match self.check {
            ExtensionCheck::MinIfRf => list.sum_if().min(list.sum_rf()),
            ExtensionCheck::RfOnly => list.sum_rf(),
            ExtensionCheck::Exhaustive => return true,
        };
        bound >= self.min_rare_abs - SUPPORT_EPSILON
    }

    fn explore(&mut self, lists: &[FuzzyList]) {
        for (idx, list) in lists.iter().enumerate() {
            self.candidates += 1;
            if support_in_band(list.sum_if(), self.min_rare_abs, self.max_freq_abs) {
                self.found.push((list.itemset().to_vec(), list.sum_if()));
            }
            let siblings = &lists[idx + 1..];
            if siblings.is_empty() {
                continue;
            }
            if !self.may_extend(list) {
                self.joins_pruned += siblings.len() as u64;
                continue;
            }
            let mut children = Vec::with_capacity(siblings.len());
            for sibling in siblings {
                let child = construct(list, sibling)
                    .expect("sibling lists share a prefix by construction");
                self.lists_constructed += 1;
                self.allocate(child.elements().len());
                children.push(child);
            }
            self.explore(&children);
            let freed: u64 = children.iter().map(|c| c.elements().len() as u64).sum();
            self.release(freed);
        }
    }
}

/// Mines a revised database with absolute thresholds.
///
/// Assumes `min_rare_abs <= max_freq_abs`; an empty revised database yields
/// an empty result. Itemsets come back in canonical order: shorter first,
/// then lexicographic by global-order ranks.
pub fn mine_revised(
    rdb: &RevisedDatabase,
    min_rare_abs: f64,
    max_freq_abs: f64,
    check: ExtensionCheck,
) -> MiningResult {
    let started = Instant::now();
    let initial = build_initial_lists(rdb);
    let initial_elements: u64 = initial.iter().map(|l| l.elements().len() as u64).sum();
    let mut state = SearchState {
        min_rare_abs,
        max_freq_abs,
        check,
        found: Vec::new(),
        candidates: 0,
        lists_constructed: 0,
        joins_pruned: 0,
        live_elements: initial_elements,
        peak_elements: initial_elements,
    };
    state.explore(&initial);

    state
        .found
        .sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let bands: Vec<TermBand> = rdb
        .terms()
        .iter()
        .map(|retained| {
            if retained.support >= max_freq_abs - SUPPORT_EPSILON {
                TermBand::Frequent
            } else {
                TermBand::Rare
            }
        })
        .collect();
    let fris = state
        .found
        .iter()
        .map(|(ranks, support)| {
            let mut any_rare = false;
            let mut any_frequent = false;
            for &rank in ranks {
                match bands[rank] {
                    TermBand::Rare => any_rare = true,
                    TermBand::Frequent => any_frequent = true,
                }
            }
            let kind = if any_rare && any_frequent {
                ItemsetKind::Mixed
            } else if any_frequent {
                ItemsetKind::FrequentOnly
            } else {
                ItemsetKind::RareOnly
            };
            FuzzyRareItemset {
                terms: rdb.resolve(ranks),
                support: *support,
                kind,
            }
        })
        .collect();
    MiningResult {
        fris,
        stats: MiningStats {
            candidates: state.candidates,
            lists_constructed: state.lists_constructed,
            joins_pruned: state.joins_pruned,
            elapsed: started.elapsed(),
            peak_mem_estimate_bytes: state.peak_elements
                * std::mem::size_of::<FuzzyListElement>() as u64,
        },
    }
}

/// Runs the full pipeline on a quantitative database: resolve thresholds,
/// revise, mine.
///
/// The reported elapsed time covers the whole pipeline (fuzzification
/// included), but not the parsing of `db` itself.
pub fn mine(
    db: &QuantitativeDatabase,
    config: &MembershipFunctionConfig,
    params: &MiningParams,
) -> Result<MiningResult> {
    let started = Instant::now();
    let (min_rare_abs, max_freq_abs) = resolve_thresholds(params, db.len())?;
    let rdb = revise_database(db, config, min_rare_abs)?;
    let mut result = mine_revised(&rdb, min_rare_abs, max_freq_abs, ExtensionCheck::MinIfRf);
    result.stats.elapsed = started.elapsed();
    Ok(result)
}
