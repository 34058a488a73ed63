//! Geometrically convergent MZV evaluation via the Hölder convolution.
//!
//! An admissible index `(k_1,...,k_r)` (increasing summation convention)
//! corresponds to the iterated integral over `0 < t_1 < ... < t_N < 1` of
//! the word `[1, 0^{k_1 - 1}, 1, 0^{k_2 - 1}, ..., 1, 0^{k_r - 1}]`, where
//! letter 1 stands for `dt/(1-t)` and letter 0 for `dt/t`.  Splitting the
//! simplex at 1/2 and reflecting the upper half (`t -> 1-t` reverses the
//! word and swaps the letters) gives
//!
//! `zeta(k) = sum_{j=0}^{N} L(w[..j]) * L(dual(w[j..]))`
//!
//! where `L(v)` is the multiple polylogarithm at 1/2 attached to the block
//! exponents of `v`.  Every `L` series gains one bit per term, so the term
//! count is linear in the requested digits.
//!
//! Direct nested summation is kept only as a low-precision oracle with an
//! explicit tail bound.

use dashmap::DashMap;
use num::{BigInt, BigUint, Integer, One, Zero};
use once_cell::sync::Lazy;

use super::bigreal::BigReal;
use crate::index_algebra::Index;

/// Letters of the iterated-integral word; `true` is the `dt/(1-t)` form.
fn word_of(k: &Index) -> Vec<bool> {
    let mut w = Vec::with_capacity(k.weight() as usize);
    for &e in k.entries() {
        w.push(true);
        w.extend(std::iter::repeat(false).take(e as usize - 1));
    }
    w
}

/// Block exponents of a word that starts with the letter 1: each 1 opens a
/// block, each 0 deepens it.  `[1,0,0,1] -> [3,1]`.
fn block_exponents(word: impl Iterator<Item = bool>) -> Vec<u32> {
    let mut e: Vec<u32> = Vec::new();
    for is_one in word {
        if is_one {
            e.push(1);
        } else {
            *e.last_mut().expect("word must start with letter 1") += 1;
        }
    }
    e
}

static LI_CACHE: Lazy<DashMap<(Vec<u32>, u32), BigReal>> = Lazy::new(DashMap::new);

/// `L(e) = sum_{0<n_1<...<n_s} 2^{-n_s} prod n_i^{-e_i}` by dynamic
/// programming over the truncation range.
///
/// The DP uses raw fixed-point integers; running sums are exact, and each
/// level performs one flooring multiply per term.  A rounding of at most
/// `1 + |run|` ulps at any site propagates to the result with a factor
/// bounded by 1 (the remaining chain is itself a partial polylog at 1/2
/// with positive weights below 1), so the accumulated `err` below is a
/// sound bound.  The geometric tail after `M = bits + 64` terms is under
/// one ulp for every depth that can arise here.
fn li_half(e: &[u32], bits: u32) -> BigReal {
    if e.is_empty() {
        return BigReal::one(bits);
    }
    let key = (e.to_vec(), bits);
    if let Some(hit) = LI_CACHE.get(&key) {
        return hit.clone();
    }
    let m = bits as usize + 64;
    let mut err = BigUint::zero();
    let mut prev: Vec<BigInt> = Vec::new();
    for (level, &exp) in e.iter().enumerate() {
        let mut cur = Vec::with_capacity(m + 1);
        cur.push(BigInt::zero()); // n = 0 placeholder
        let mut run = BigInt::zero();
        for n in 1..=m {
            let inv_pow = (BigInt::one() << bits).div_floor(&BigInt::from(n).pow(exp));
            err += 1u32;
            let value = if level == 0 {
                inv_pow
            } else {
                run += &prev[n - 1];
                if run.is_zero() {
                    cur.push(BigInt::zero());
                    continue;
                }
                err += (run.magnitude() >> bits) + BigUint::from(2u32);
                (&run * inv_pow) >> bits
            };
            cur.push(value);
        }
        prev = cur;
    }
    // weight by 2^{-n}; shifts floor once per term
    let mut total = BigInt::zero();
    for (n, v) in prev.iter().enumerate().skip(1) {
        total += v >> (n as u32);
        err += 1u32;
    }
    err += 4u32; // geometric tail allowance
    let out = BigReal::from_parts(total, BigInt::from(err), bits);
    LI_CACHE.insert(key, out.clone());
    out
}

/// Evaluates an admissible MZV at the given working precision.  Callers
/// guarantee admissibility.
pub(super) fn eval_holder(k: &Index, bits: u32) -> BigReal {
    if k.is_empty() {
        return BigReal::one(bits);
    }
    debug_assert!(k.is_admissible());
    let w = word_of(k);
    let n = w.len();
    let mut total = BigReal::zero(bits);
    for j in 0..=n {
        let lower = block_exponents(w[..j].iter().copied());
        let upper = block_exponents(w[j..].iter().rev().map(|b| !b));
        total = total.add(&li_half(&lower, bits).mul(&li_half(&upper, bits)));
    }
    total
}

/// Direct nested summation over `n_r <= cutoff`, as a low-precision oracle.
/// Returns the partial sum and a tail bound `H_cutoff^{r-1}
/// cutoff^{1-k_r} / (k_r - 1)`.
pub fn eval_direct(k: &Index, cutoff: u64) -> (f64, f64) {
    if k.is_empty() {
        return (1.0, 0.0);
    }
    assert!(k.is_admissible());
    let n = cutoff as usize;
    let mut prev: Vec<f64> = Vec::new();
    for (level, &exp) in k.entries().iter().enumerate() {
        let mut cur = vec![0.0f64; n + 1];
        let mut run = 0.0f64;
        for i in 1..=n {
            let p = (i as f64).powi(-(exp as i32));
            if level == 0 {
                cur[i] = p;
            } else {
                run += prev[i - 1];
                cur[i] = run * p;
            }
        }
        prev = cur;
    }
    let value: f64 = prev.iter().sum();
    let harmonic = (cutoff as f64).ln() + 2.0;
    let k_last = *k.entries().last().expect("nonempty") as f64;
    let tail = 2.0 * harmonic.powi(k.depth() as i32 - 1) * (cutoff as f64).powf(1.0 - k_last)
        / (k_last - 1.0);
    (value, tail)
}

/// Drops the polylogarithm cache; results are unaffected.
pub fn clear_li_cache() {
    LI_CACHE.clear();
}
