//! Seeded synthetic database generators.
//!
//! Two flavors: small random databases for randomized cross-checks against
//! the brute-force oracle, and a retail-like generator (many transactions,
//! power-law item popularity) for benchmarking at a realistic scale. Both
//! are fully determined by their seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::QuantitativeDatabase;

/// Shape of the small random databases used by randomized cross-checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomDbParams {
    /// Upper bound on the number of transactions (at least 1 is generated).
    pub max_transactions: usize,
    /// Size of the item pool; every transaction draws a distinct subset.
    pub max_items: usize,
    /// Quantities are drawn uniformly from `1..=max_quantity`.
    pub max_quantity: u32,
}

impl Default for RandomDbParams {
    fn default() -> Self {
        RandomDbParams {
            max_transactions: 8,
            max_items: 5,
            max_quantity: 12,
        }
    }
}

/// A deterministic generator seeded from a single integer.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn item_name(index: usize) -> String {
    let letter = (b'A' + (index % 26) as u8) as char;
    if index < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", index / 26)
    }
}

/// Generates a small random database.
///
/// The text form is built first and parsed, so everything the generator
/// emits also exercises the parser.
pub fn random_database(rng: &mut impl Rng, params: &RandomDbParams) -> QuantitativeDatabase {
    let transactions = rng.random_range(1..=params.max_transactions);
    let mut pool: Vec<usize> = (0..params.max_items).collect();
    let mut text = String::new();
    for _ in 0..transactions {
        let len = rng.random_range(1..=params.max_items);
        pool.shuffle(rng);
        let tokens: Vec<String> = pool[..len]
            .iter()
            .map(|&idx| format!("{}:{}", item_name(idx), rng.random_range(1..=params.max_quantity)))
            .collect();
        text.push_str(&tokens.join(" "));
        text.push('\n');
    }
    QuantitativeDatabase::parse_str(&text).expect("generated text is a valid database")
}

/// Picks a random mining band (absolute thresholds) suited to a database of
/// `transactions` transactions.
///
/// Occasionally returns a zero lower edge or an empty band so those paths
/// stay covered.
pub fn random_band(rng: &mut impl Rng, transactions: usize) -> (f64, f64) {
    let span = (transactions as f64 * 0.75).max(0.5);
    let min_rare = if rng.random_bool(0.1) {
        0.0
    } else {
        rng.random_range(0.0..span)
    };
    let max_freq = if rng.random_bool(0.05) {
        min_rare
    } else {
        min_rare + rng.random_range(0.0..span)
    };
    (min_rare, max_freq)
}

/// Shape of the retail-like benchmark generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetailLikeParams {
    /// Number of transactions to generate.
    pub transactions: usize,
    /// Size of the item catalog; popularity decays as a power law over it.
    pub items: usize,
    /// Mean transaction length (item count per transaction).
    pub mean_length: f64,
    /// Quantities skew low and never exceed this.
    pub max_quantity: u32,
}

impl Default for RetailLikeParams {
    /// Roughly the shape of a public retail basket dataset: ~88k
    /// transactions over a few thousand items.
    fn default() -> Self {
        RetailLikeParams {
            transactions: 88_000,
            items: 2_000,
            mean_length: 9.0,
            max_quantity: 31,
        }
    }
}

/// Generates a retail-like database: item popularity follows a power law,
/// transaction lengths cluster around `mean_length`, and quantities skew
/// toward small values.
pub fn retail_like_database(seed: u64, params: &RetailLikeParams) -> QuantitativeDatabase {
    let mut rng = rng_from_seed(seed);
    // Cumulative power-law popularity weights over the catalog.
    let mut cumulative = Vec::with_capacity(params.items);
    let mut total = 0.0_f64;
    for index in 0..params.items {
        total += 1.0 / ((index + 1) as f64).powf(0.9);
        cumulative.push(total);
    }
    let mut text = String::new();
    let mut picked: Vec<usize> = Vec::new();
    for _ in 0..params.transactions {
        // Poisson-distributed length (Knuth's product method), at least 1.
        let threshold = (-(params.mean_length - 1.0)).exp();
        let mut len = 0usize;
        let mut product = 1.0_f64;
        loop {
            product *= rng.random_range(0.0..1.0_f64);
            if product <= threshold {
                break;
            }
            len += 1;
        }
        let len = (len + 1).min(params.items);
        picked.clear();
        let mut attempts = 0;
        while picked.len() < len && attempts < len * 8 {
            attempts += 1;
            let draw = rng.random_range(0.0..total);
            let index = cumulative.partition_point(|&c| c <= draw);
            if !picked.contains(&index) {
                picked.push(index);
            }
        }
        let tokens: Vec<String> = picked
            .iter()
            .map(|&index| {
                let skew = rng.random_range(0.0..1.0_f64);
                let quantity = 1 + (skew * skew * skew * (params.max_quantity - 1) as f64) as u32;
                format!("i{index}:{quantity}")
            })
            .collect();
        text.push_str(&tokens.join(" "));
        text.push('\n');
    }
    QuantitativeDatabase::parse_str(&text).expect("generated text is a valid database")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_database_is_seed_deterministic() {
        let params = RandomDbParams::default();
        let a = random_database(&mut rng_from_seed(42), &params);
        let b = random_database(&mut rng_from_seed(42), &params);
        assert_eq!(a, b);
        let c = random_database(&mut rng_from_seed(43), &params);
        assert_ne!(a.to_text(), c.to_text());
    }

    #[test]
    fn random_database_respects_bounds() {
        let params = RandomDbParams {
            max_transactions: 6,
            max_items: 4,
            max_quantity: 9,
        };
        let mut rng = rng_from_seed(7);
        for _ in 0..50 {
            let db = random_database(&mut rng, &params);
            assert!((1..=6).contains(&db.len()));
            assert!(db.item_universe().len() <= 4);
            for txn in db.transactions() {
                assert!((1..=4).contains(&txn.len()));
                for &(_, quantity) in txn.entries() {
                    assert!((1.0..=9.0).contains(&quantity));
                    assert_eq!(quantity.fract(), 0.0);
                }
            }
        }
    }

    #[test]
    fn random_band_is_ordered_and_sometimes_degenerate() {
        let mut rng = rng_from_seed(99);
        let mut saw_zero_lower = false;
        let mut saw_empty_band = false;
        for _ in 0..500 {
            let (min_rare, max_freq) = random_band(&mut rng, 8);
            assert!(min_rare >= 0.0);
            assert!(max_freq >= min_rare);
            saw_zero_lower |= min_rare == 0.0;
            saw_empty_band |= max_freq == min_rare;
        }
        assert!(saw_zero_lower);
        assert!(saw_empty_band);
    }

    #[test]
    fn retail_like_has_the_requested_shape() {
        let params = RetailLikeParams {
            transactions: 2_000,
            items: 300,
            mean_length: 9.0,
            max_quantity: 31,
        };
        let db = retail_like_database(11, &params);
        assert_eq!(db.len(), 2_000);
        let stats = db.stats();
        assert!(stats.avg_transaction_len > 6.0 && stats.avg_transaction_len < 12.0);
        assert!(stats.max_quantity <= 31.0);
        // Popularity is skewed: the most popular item shows up far more
        // often than the median one.
        let mut counts = vec![0usize; params.items];
        for txn in db.transactions() {
            for (item, _) in txn.entries() {
                let index: usize = item[1..].parse().unwrap();
                counts[index] += 1;
            }
        }
        let max = *counts.iter().max().unwrap();
        let mut sorted = counts.clone();
        sorted.sort_unstable();
        let median = sorted[params.items / 2];
        assert!(max > median * 3, "max {max} vs median {median}");
    }

    #[test]
    fn retail_like_is_seed_deterministic() {
        let params = RetailLikeParams {
            transactions: 200,
            items: 50,
            mean_length: 5.0,
            max_quantity: 12,
        };
        let a = retail_like_database(3, &params);
        let b = retail_like_database(3, &params);
        assert_eq!(a, b);
    }
}
