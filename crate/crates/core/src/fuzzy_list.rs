//! The vertical fuzzy-list structure driving the miner.
//!
//! A fuzzy list stores, for one itemset, an element per transaction that
//! contains the whole itemset: the transaction id, the itemset's degree in
//! that transaction (`if`, the minimum over its terms), and the best degree
//! any later term of the global order reaches there (`rf`). The running sums
//! of both fields decide output (`sum_if` is the itemset's support) and
//! extension (`rf` bounds what any extension can still achieve), so an
//! itemset can be emitted or pruned without touching the database again.

use crate::error::{Error, Result};
use crate::fuzzifier::RevisedDatabase;
use crate::report::fmt_num;

/// One fuzzy-list entry for a transaction containing the itemset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzyListElement {
    /// Transaction id.
    pub tid: u32,
    /// Membership degree of the itemset in this transaction.
    pub if_value: f64,
    /// Maximum degree among terms ranked after the itemset's last term.
    pub rf_value: f64,
}

/// The fuzzy list of one itemset over a revised database.
///
/// The itemset is stored as strictly ascending global-order ranks; elements
/// are sorted by tid, and both sums are maintained incrementally as elements
/// are appended.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyList {
    itemset: Vec<usize>,
    elements: Vec<FuzzyListElement>,
    sum_if: f64,
    sum_rf: f64,
}

impl FuzzyList {
    fn new(itemset: Vec<usize>, capacity: usize) -> Self {
        FuzzyList {
            itemset,
            elements: Vec::with_capacity(capacity),
            sum_if: 0.0,
            sum_rf: 0.0,
        }
    }

    fn push(&mut self, element: FuzzyListElement) {
        self.sum_if += element.if_value;
        self.sum_rf += element.rf_value;
        self.elements.push(element);
    }

    /// The itemset as ascending global-order ranks.
    pub fn itemset(&self) -> &[usize] {
        &self.itemset
    }

    /// The elements, ascending by tid.
    pub fn elements(&self) -> &[FuzzyListElement] {
        &self.elements
    }

    /// Sum of `if` over all elements: the itemset's support.
    pub fn sum_if(&self) -> f64 {
        self.sum_if
    }

    /// Sum of `rf` over all elements: an upper bound on any extension's
    /// support.
    pub fn sum_rf(&self) -> f64 {
        self.sum_rf
    }

    /// Renders the list for debug dumps as
    /// `[terms] -> (tid,if,rf) ... | sum_if sum_rf`.
    pub fn dump_line(&self, rdb: &RevisedDatabase) -> String {
        let terms: Vec<String> = self
            .itemset
            .iter()
            .map(|&rank| rdb.terms()[rank].term.to_string())
            .collect();
        let elements: Vec<String> = self
            .elements
            .iter()
            .map(|e| format!("({},{},{})", e.tid, fmt_num(e.if_value), fmt_num(e.rf_value)))
            .collect();
        format!(
            "[{}] -> {} | {} {}",
            terms.join(","),
            elements.join(" "),
            fmt_num(self.sum_if),
            fmt_num(self.sum_rf)
        )
    }
}

/// Builds the 1-itemset fuzzy lists of a revised database, indexed by rank.
///
/// For every transaction entry, `if` is the term's degree and `rf` is the
/// maximum degree among the entries after it (0 for the last entry), so each
/// list's `sum_if` equals the retained term's support.
pub fn build_initial_lists(rdb: &RevisedDatabase) -> Vec<FuzzyList> {
    let n = rdb.transactions().len();
    let mut lists: Vec<FuzzyList> = (0..rdb.term_count())
        .map(|rank| FuzzyList::new(vec![rank], n.min(16)))
        .collect();
    let mut suffix_max: Vec<f64> = Vec::new();
    for txn in rdb.transactions() {
        let entries = txn.entries();
        suffix_max.clear();
        suffix_max.resize(entries.len(), 0.0);
        let mut best = 0.0_f64;
        for (idx, &(_, degree)) in entries.iter().enumerate().rev() {
            suffix_max[idx] = best;
            best = best.max(degree);
        }
        for (idx, &(rank, degree)) in entries.iter().enumerate() {
            lists[rank].push(FuzzyListElement {
                tid: txn.tid(),
                if_value: degree,
                rf_value: suffix_max[idx],
            });
        }
    }
    lists
}

/// Joins two fuzzy lists whose itemsets share all but the last term, with
/// `y`'s last term ranked after `x`'s, into the list of the combined itemset.
///
/// Elements are intersected by tid; each joined element takes
/// `min(x.if, y.if)` as its degree and `y`'s `rf` (the later term decides
/// what can still follow). The join can legitimately come out empty.
pub fn construct(x: &FuzzyList, y: &FuzzyList) -> Result<FuzzyList> {
    let (xs, ys) = (x.itemset(), y.itemset());
    if xs.is_empty() || xs.len() != ys.len() {
        return Err(Error::JoinMismatch(format!(
            "itemsets must be non-empty and equally long, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    let last = xs.len() - 1;
    if xs[..last] != ys[..last] {
        return Err(Error::JoinMismatch(
            "itemsets do not share a common prefix".to_string(),
        ));
    }
    if xs[last] >= ys[last] {
        return Err(Error::JoinMismatch(format!(
            "right itemset must end in a later-ranked term, got {} then {}",
            xs[last], ys[last]
        )));
    }
    let mut itemset = xs.to_vec();
    itemset.push(ys[last]);
    let mut joined = FuzzyList::new(itemset, x.elements.len().min(y.elements.len()));
    let (mut i, mut j) = (0, 0);
    while i < x.elements.len() && j < y.elements.len() {
        let (ex, ey) = (x.elements[i], y.elements[j]);
        match ex.tid.cmp(&ey.tid) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                joined.push(FuzzyListElement {
                    tid: ex.tid,
                    if_value: ex.if_value.min(ey.if_value),
                    rf_value: ey.rf_value,
                });
                i += 1;
                j += 1;
            }
        }
    }
    Ok(joined)
}
