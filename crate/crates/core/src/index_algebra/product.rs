//! The stuffle product, the index shuffle, and the linear maps built from
//! them.
//!
//! Index-level products are memoized in process-wide concurrent tables:
//! expanding `sigma_2(I_0({1,3}^n))` for n = 3-4 revisits the same
//! subproducts heavily.  All values are immutable once stored.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use num::One;
use once_cell::sync::Lazy;

use super::combination::IndexCombination;
use super::index::Index;
use crate::rational::{alt_sign, binomial, Rat};

/// Term budget for each memo table.  Pairs of low combined weight are
/// always kept (they dominate reuse); past the budget, larger transients
/// are recomputed instead of stored.
const MEMO_TERM_BUDGET: usize = 4_000_000;
const ALWAYS_KEEP_WEIGHT: u64 = 10;

struct MemoTable {
    map: DashMap<(Index, Index), Arc<IndexCombination>>,
    stored_terms: AtomicUsize,
}

impl MemoTable {
    fn new() -> Self {
        MemoTable { map: DashMap::new(), stored_terms: AtomicUsize::new(0) }
    }

    fn get(&self, key: &(Index, Index)) -> Option<Arc<IndexCombination>> {
        self.map.get(key).map(|v| v.clone())
    }

    fn insert(&self, key: (Index, Index), value: &Arc<IndexCombination>) {
        let weight = key.0.weight() + key.1.weight();
        let terms = value.num_terms();
        if weight > ALWAYS_KEEP_WEIGHT
            && self.stored_terms.load(Ordering::Relaxed) + terms > MEMO_TERM_BUDGET
        {
            return;
        }
        self.stored_terms.fetch_add(terms, Ordering::Relaxed);
        self.map.insert(key, value.clone());
    }

    fn clear(&self) {
        self.map.clear();
        self.stored_terms.store(0, Ordering::Relaxed);
    }
}

static STUFFLE_MEMO: Lazy<MemoTable> = Lazy::new(MemoTable::new);
static SHUFFLE_MEMO: Lazy<MemoTable> = Lazy::new(MemoTable::new);
static SIGMA_MEMO: Lazy<DashMap<(u32, Index), Arc<IndexCombination>>> = Lazy::new(DashMap::new);
static SIGMA_TERMS: AtomicUsize = AtomicUsize::new(0);

/// Drops the memo tables.  Only useful to bound memory in long-running
/// processes; results are unaffected.
pub fn clear_memo_tables() {
    STUFFLE_MEMO.clear();
    SHUFFLE_MEMO.clear();
    SIGMA_MEMO.clear();
    SIGMA_TERMS.store(0, Ordering::Relaxed);
}

/// Stuffle product of two single indices.
///
/// Defined inductively by `empty * k = k * empty = k` and
/// `(k,a) * (l,b) = ((k) * (l,b), a) + ((k,a) * (l), b) + (k * l, a+b)`.
pub fn stuffle_indices(k: &Index, l: &Index) -> Arc<IndexCombination> {
    if k.is_empty() {
        return Arc::new(IndexCombination::from_index(l.clone()));
    }
    if l.is_empty() {
        return Arc::new(IndexCombination::from_index(k.clone()));
    }
    // The product is commutative; normalize the key order.
    let key = if k <= l {
        (k.clone(), l.clone())
    } else {
        (l.clone(), k.clone())
    };
    if let Some(hit) = STUFFLE_MEMO.get(&key) {
        return hit;
    }
    let (k0, ka) = key.0.split_last();
    let (l0, lb) = key.1.split_last();
    let mut out = IndexCombination::zero();
    for (idx, c) in stuffle_indices(&k0, &key.1).iter() {
        out.add_term(idx.with_appended(ka), c.clone());
    }
    for (idx, c) in stuffle_indices(&key.0, &l0).iter() {
        out.add_term(idx.with_appended(lb), c.clone());
    }
    for (idx, c) in stuffle_indices(&k0, &l0).iter() {
        out.add_term(idx.with_appended(ka + lb), c.clone());
    }
    let out = Arc::new(out);
    STUFFLE_MEMO.insert(key, &out);
    out
}

/// Bilinear extension of the stuffle product to combinations.
pub fn stuffle(x: &IndexCombination, y: &IndexCombination) -> IndexCombination {
    let mut out = IndexCombination::zero();
    for (k, ck) in x.iter() {
        for (l, cl) in y.iter() {
            out.add_scaled(&stuffle_indices(k, l), &(ck * cl));
        }
    }
    out
}

/// Shuffle of two single indices: all interleavings of the entries as
/// atoms, preserving the order within each operand.
pub fn index_shuffle_indices(k: &Index, l: &Index) -> Arc<IndexCombination> {
    if k.is_empty() {
        return Arc::new(IndexCombination::from_index(l.clone()));
    }
    if l.is_empty() {
        return Arc::new(IndexCombination::from_index(k.clone()));
    }
    let key = if k <= l {
        (k.clone(), l.clone())
    } else {
        (l.clone(), k.clone())
    };
    if let Some(hit) = SHUFFLE_MEMO.get(&key) {
        return hit;
    }
    let ka = key.0.entries()[0];
    let lb = key.1.entries()[0];
    let k_rest = Index::new(key.0.entries()[1..].to_vec()).expect("entries stay positive");
    let l_rest = Index::new(key.1.entries()[1..].to_vec()).expect("entries stay positive");
    let mut out = IndexCombination::zero();
    for (idx, c) in index_shuffle_indices(&k_rest, &key.1).iter() {
        out.add_term(idx.with_prepended(ka), c.clone());
    }
    for (idx, c) in index_shuffle_indices(&key.0, &l_rest).iter() {
        out.add_term(idx.with_prepended(lb), c.clone());
    }
    let out = Arc::new(out);
    SHUFFLE_MEMO.insert(key, &out);
    out
}

/// Bilinear extension of the index shuffle.
pub fn index_shuffle(x: &IndexCombination, y: &IndexCombination) -> IndexCombination {
    let mut out = IndexCombination::zero();
    for (k, ck) in x.iter() {
        for (l, cl) in y.iter() {
            out.add_scaled(&index_shuffle_indices(k, l), &(ck * cl));
        }
    }
    out
}

/// `sigma_n` on a single index: distributes `n` extra weight over the
/// entries with binomial multiplicities,
/// `sigma_n(k_1,...,k_r) = sum_{l_1+...+l_r=n} (k_1+l_1,...,k_r+l_r)
/// prod C(k_i+l_i-1, l_i)`; `sigma_n(empty) = delta_{n,0}`.
pub fn sigma_index(n: u32, k: &Index) -> Arc<IndexCombination> {
    if k.is_empty() {
        return Arc::new(if n == 0 {
            IndexCombination::unit()
        } else {
            IndexCombination::zero()
        });
    }
    let key = (n, k.clone());
    if let Some(hit) = SIGMA_MEMO.get(&key) {
        return hit.clone();
    }
    let mut out = IndexCombination::zero();
    let entries = k.entries();
    let mut shifted = entries.to_vec();
    distribute(entries, &mut shifted, 0, n, Rat::one(), &mut out);
    let out = Arc::new(out);
    if k.weight() <= 12 || SIGMA_TERMS.load(Ordering::Relaxed) + out.num_terms() <= MEMO_TERM_BUDGET {
        SIGMA_TERMS.fetch_add(out.num_terms(), Ordering::Relaxed);
        SIGMA_MEMO.insert(key, out.clone());
    }
    out
}

fn distribute(
    entries: &[u32],
    shifted: &mut Vec<u32>,
    pos: usize,
    remaining: u32,
    coeff: Rat,
    out: &mut IndexCombination,
) {
    if pos == entries.len() - 1 {
        let e = entries[pos];
        let l = remaining;
        shifted[pos] = e + l;
        let c = coeff * Rat::from_integer(binomial(u64::from(e + l) - 1, u64::from(l)));
        out.add_term(Index::new(shifted.clone()).expect("entries stay positive"), c);
        shifted[pos] = e;
        return;
    }
    let e = entries[pos];
    for l in 0..=remaining {
        shifted[pos] = e + l;
        let c = &coeff * Rat::from_integer(binomial(u64::from(e + l) - 1, u64::from(l)));
        distribute(entries, shifted, pos + 1, remaining - l, c, out);
    }
    shifted[pos] = e;
}

/// Linear extension of `sigma_n` to combinations.
pub fn sigma(n: u32, x: &IndexCombination) -> IndexCombination {
    let mut out = IndexCombination::zero();
    for (k, c) in x.iter() {
        out.add_scaled(&sigma_index(n, k), c);
    }
    out
}

/// The signed convolution
/// `mIn(k) = sum_{i=0}^r (-1)^{k_r+...+k_{i+1}}
/// sigma_m(k_1,...,k_i) * sigma_n(k_r,...,k_{i+1})`.
///
/// `I_n` in the series expansions means `m_i_n(0, n, k)`.
pub fn m_i_n(m: u32, n: u32, k: &Index) -> IndexCombination {
    let mut out = IndexCombination::zero();
    for i in 0..=k.depth() {
        let sign = alt_sign(k.suffix_weight(i));
        let front = sigma_index(m, &k.prefix(i));
        let back = sigma_index(n, &k.suffix_reversed(i));
        if front.is_zero() || back.is_zero() {
            continue;
        }
        out.add_scaled(&stuffle(&front, &back), &sign);
    }
    out
}
