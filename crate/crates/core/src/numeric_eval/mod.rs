//! Arbitrary-precision evaluation of admissible MZVs and symbolic
//! combinations, with an in-memory memo and an optional persistent cache.

mod bigreal;
mod cache;
mod constants;
mod holder;

use std::path::PathBuf;

use dashmap::DashMap;
use num::{BigInt, One};
use thiserror::Error;

pub use bigreal::{BigReal, ParseRealError};
pub use cache::ValueCache;
pub use constants::{bernoulli, zeta_even_rational};
pub use holder::{clear_li_cache, eval_direct};

use crate::index_algebra::{Index, IndexCombination};
use crate::rational::Rat;
use crate::regularization::{zeta_star_m_symbolic, zeta_star_symbolic};

/// Environment variable naming a directory whose `cache.jsonl` overrides
/// the configured cache path.
pub const CACHE_DIR_ENV: &str = "MZV_CACHE_DIR";

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("index {0} is not admissible: evaluate via regularization (zeta_star) instead")]
    NotAdmissible(Index),
    #[error("cache i/o: {0}")]
    Cache(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    /// Guaranteed decimal digits of every evaluated constant.
    pub precision_digits: u32,
    /// Extra digits carried internally.
    pub guard_digits: u32,
    /// JSON-lines cache file; `MZV_CACHE_DIR` (a directory) overrides it.
    pub cache_path: Option<PathBuf>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { precision_digits: 60, guard_digits: 10, cache_path: None }
    }
}

impl EvalConfig {
    pub fn with_digits(precision_digits: u32) -> Self {
        EvalConfig { precision_digits, ..Default::default() }
    }

    /// Fixed-point scale: `ceil((P + G) * log2(10))` plus headroom for the
    /// evaluator's rounding budget.
    pub fn working_bits(&self) -> u32 {
        let d = self.precision_digits + self.guard_digits;
        (d * 3322).div_ceil(1000) + 64
    }

    fn effective_cache_path(&self) -> Option<PathBuf> {
        if let Ok(dir) = std::env::var(CACHE_DIR_ENV) {
            if !dir.is_empty() {
                return Some(PathBuf::from(dir).join("cache.jsonl"));
            }
        }
        self.cache_path.clone()
    }
}

/// Evaluation context: configuration, an in-memory memo at working
/// precision, and the optional disk cache.  Evaluations of distinct
/// indices may run concurrently; disk writes are serialized.
pub struct Evaluator {
    cfg: EvalConfig,
    bits: u32,
    memo: DashMap<Index, BigReal>,
    cache: Option<ValueCache>,
}

impl Evaluator {
    pub fn new(cfg: EvalConfig) -> Result<Self, EvalError> {
        let cache = match cfg.effective_cache_path() {
            Some(path) => {
                if let Some(parent) = path.parent() {
                    std::fs::create_dir_all(parent)?;
                }
                Some(ValueCache::open(path)?)
            }
            None => None,
        };
        let bits = cfg.working_bits();
        Ok(Evaluator { cfg, bits, memo: DashMap::new(), cache })
    }

    pub fn with_digits(digits: u32) -> Self {
        Self::new(EvalConfig::with_digits(digits)).expect("no cache configured")
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn precision_digits(&self) -> u32 {
        self.cfg.precision_digits
    }

    /// Renders a value at the configured precision.
    pub fn decimal(&self, x: &BigReal) -> String {
        x.to_decimal(self.cfg.precision_digits)
    }

    /// `zeta(k)` for an admissible index, with absolute error at most
    /// `10^-precision_digits`.
    pub fn eval_admissible(&self, k: &Index) -> Result<BigReal, EvalError> {
        if !k.is_admissible() {
            return Err(EvalError::NotAdmissible(k.clone()));
        }
        if let Some(hit) = self.memo.get(k) {
            return Ok(hit.clone());
        }
        let digits = self.cfg.precision_digits;
        if let Some(cache) = &self.cache {
            if let Some(s) = cache.get(k, digits) {
                let parsed = BigReal::parse_decimal(&s, self.bits, Some(digits))
                    .expect("cache records hold plain decimals");
                self.memo.insert(k.clone(), parsed.clone());
                return Ok(parsed);
            }
        }
        let value = holder::eval_holder(k, self.bits);
        debug_assert!(value.err_le_pow10(i64::from(digits) + 5));
        if let Some(cache) = &self.cache {
            cache.put(k, digits, &self.decimal(&value))?;
        }
        self.memo.insert(k.clone(), value.clone());
        Ok(value)
    }

    /// `sum coefficient * zeta(index)` over an admissible-support
    /// combination.
    pub fn eval_combination(&self, x: &IndexCombination) -> Result<BigReal, EvalError> {
        let mut total = BigReal::zero(self.bits);
        for (k, c) in x.iter() {
            total = total.add(&self.eval_admissible(k)?.mul_rat(c));
        }
        Ok(total)
    }

    /// Numeric `zeta_star`: evaluate the constant term of the
    /// regularization.  Total for every index.
    pub fn zeta_star_numeric(&self, k: &Index) -> BigReal {
        self.eval_combination(&zeta_star_symbolic(k))
            .expect("zeta_star support is admissible")
    }

    /// Numeric `zeta_star_m`.
    pub fn zeta_star_m_numeric(&self, m: u32, k: &Index) -> BigReal {
        self.eval_combination(&zeta_star_m_symbolic(m, k))
            .expect("zeta_star support is admissible")
    }

    /// Numeric `zeta_star` of a whole combination (indices need not be
    /// admissible).
    pub fn zeta_star_combination(&self, x: &IndexCombination) -> BigReal {
        self.eval_combination(&crate::regularization::zeta_star_symbolic_combination(x))
            .expect("zeta_star support is admissible")
    }

    pub fn pi(&self) -> BigReal {
        constants::pi(self.bits)
    }

    /// `pi^e` at working precision.
    pub fn pi_pow(&self, e: u32) -> BigReal {
        if e == 0 {
            return BigReal::one(self.bits);
        }
        self.pi().pow(e)
    }

    /// Numeric `zeta(2n)` from the exact rational multiple of `pi^{2n}`.
    pub fn zeta_even_value(&self, two_n: u32) -> BigReal {
        self.pi_pow(two_n).mul_rat(&zeta_even_rational(two_n))
    }

    /// Numeric `zeta_star` of a single entry: 0 at 1, `zeta(n)` otherwise.
    pub fn zeta_star_single(&self, n: u32) -> BigReal {
        if n == 1 {
            BigReal::zero(self.bits)
        } else {
            self.eval_admissible(&Index::single(n)).expect("single entry > 1 is admissible")
        }
    }

    pub fn from_rat(&self, q: &Rat) -> BigReal {
        BigReal::from_rat(q, self.bits)
    }

    pub fn from_int(&self, v: i64) -> BigReal {
        BigReal::from_int(v, self.bits)
    }

    pub fn zero(&self) -> BigReal {
        BigReal::zero(self.bits)
    }

    pub fn one(&self) -> BigReal {
        BigReal::one(self.bits)
    }

    pub fn cache(&self) -> Option<&ValueCache> {
        self.cache.as_ref()
    }
}

/// `pi` at the configuration's working precision.
pub fn pi_value(cfg: &EvalConfig) -> BigReal {
    constants::pi(cfg.working_bits())
}

/// `zeta(2n)` as an exact rational multiple of `pi^{2n}`.
pub fn zeta_even(two_n: u32) -> Rat {
    zeta_even_rational(two_n)
}

/// `1/n!` as an exact rational, used by the closed-form right-hand sides.
pub(crate) fn inv_factorial(n: u64) -> Rat {
    Rat::new(BigInt::one(), crate::rational::factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn idx(entries: &[u32]) -> Index {
        Index::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn empty_index_is_one() {
        let ev = Evaluator::with_digits(50);
        let one = ev.eval_admissible(&Index::empty()).unwrap();
        assert_eq!(one.to_decimal(10), "1.0000000000");
    }

    #[test]
    fn euler_zeta_one_two() {
        let ev = Evaluator::with_digits(60);
        let z12 = ev.eval_admissible(&idx(&[1, 2])).unwrap();
        let z3 = ev.eval_admissible(&idx(&[3])).unwrap();
        assert!(z12.sub(&z3).abs_le_pow10(60));
        assert!(ev.decimal(&z3).starts_with("1.2020569031595942853997381615114499907649862923404988817922"));
    }

    #[test]
    fn four_four_closed_form() {
        // zeta({4}^2) = 2^5 pi^8 / 10!
        let ev = Evaluator::with_digits(60);
        let z44 = ev.eval_admissible(&idx(&[4, 4])).unwrap();
        let rhs = ev.pi_pow(8).mul_rat(&(rat_int(32) * inv_factorial(10)));
        assert!(z44.sub(&rhs).abs_le_pow10(55));
        assert!(ev.decimal(&z44).starts_with("0.08367311301649536161489043654238"));
    }

    #[test]
    fn zeta_star_of_two_one() {
        let ev = Evaluator::with_digits(60);
        let v = ev.zeta_star_numeric(&idx(&[2, 1]));
        let z3 = ev.eval_admissible(&idx(&[3])).unwrap();
        assert!(v.add(&z3.mul_int(&BigInt::from(2))).abs_le_pow10(55));
        assert!(ev.zeta_star_numeric(&idx(&[1])).abs_le_pow10(60));
    }

    #[test]
    fn non_admissible_is_rejected_with_guidance() {
        let ev = Evaluator::with_digits(40);
        let err = ev.eval_admissible(&idx(&[2, 1])).unwrap_err();
        assert!(err.to_string().contains("regularization"));
    }

    #[test]
    fn eval_combination_examples() {
        let ev = Evaluator::with_digits(50);
        assert!(ev.eval_combination(&IndexCombination::unit()).unwrap()
            .sub(&ev.one()).abs_le_pow10(49));
        assert!(ev.eval_combination(&IndexCombination::zero()).unwrap().is_zero_exact());
        // -(1,2) - (3) = -2 zeta(3)
        let x = IndexCombination::from_terms([
            (idx(&[1, 2]), rat_int(-1)),
            (idx(&[3]), rat_int(-1)),
        ]);
        let v = ev.eval_combination(&x).unwrap();
        let rhs = ev.eval_admissible(&idx(&[3])).unwrap().mul_int(&BigInt::from(-2));
        assert!(v.sub(&rhs).abs_le_pow10(45));
    }

    #[test]
    fn zeta_even_values() {
        assert_eq!(zeta_even(2), rat(1, 6));
        assert_eq!(zeta_even(4), rat(1, 90));
        let ev = Evaluator::with_digits(60);
        let direct = ev.eval_admissible(&idx(&[6])).unwrap();
        assert!(direct.sub(&ev.zeta_even_value(6)).abs_le_pow10(58));
    }

    #[test]
    fn precision_contract_reevaluation() {
        // weights up to 16, including awkward depth
        for entries in [&[16][..], &[1, 15], &[4, 4, 4, 4], &[1, 3, 1, 3, 1, 3, 1, 3],
                        &[1, 1, 1, 1, 1, 1, 2], &[2, 3, 5]] {
            let k = idx(entries);
            let lo = Evaluator::with_digits(60).eval_admissible(&k).unwrap();
            let hi = Evaluator::with_digits(80).eval_admissible(&k).unwrap();
            let hi_at_lo = hi.with_bits(lo.bits());
            assert!(lo.sub(&hi_at_lo).abs_le_pow10(60), "{k}");
        }
    }

    #[test]
    fn deterministic_decimals() {
        let a = Evaluator::with_digits(60);
        let b = Evaluator::with_digits(60);
        let k = idx(&[2, 3]);
        assert_eq!(
            a.decimal(&a.eval_admissible(&k).unwrap()),
            b.decimal(&b.eval_admissible(&k).unwrap())
        );
    }

    #[test]
    fn disk_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = EvalConfig {
            precision_digits: 50,
            guard_digits: 10,
            cache_path: Some(dir.path().join("cache.jsonl")),
        };
        let k = idx(&[2, 3]);
        let fresh = {
            let ev = Evaluator::new(cfg.clone()).unwrap();
            let v = ev.eval_admissible(&k).unwrap();
            assert_eq!(ev.cache().unwrap().len(), 1);
            ev.decimal(&v)
        };
        let ev = Evaluator::new(cfg).unwrap();
        let reloaded = ev.eval_admissible(&k).unwrap();
        assert_eq!(ev.decimal(&reloaded), fresh);
        // cached value agrees with a fresh evaluation to stated precision
        let independent = Evaluator::with_digits(50).eval_admissible(&k).unwrap();
        assert!(reloaded.sub(&independent).abs_le_pow10(49));
    }

    #[test]
    fn stuffle_soundness_numeric() {
        use crate::index_algebra::{stuffle, IndexCombination};
        let ev = Evaluator::with_digits(45);
        let admissible: Vec<Index> = [&[2][..], &[3], &[1, 2], &[2, 2], &[4], &[1, 3], &[2, 3], &[1, 5]]
            .iter()
            .map(|e| idx(e))
            .collect();
        for k in &admissible {
            for l in &admissible {
                let prod = stuffle(
                    &IndexCombination::from_index(k.clone()),
                    &IndexCombination::from_index(l.clone()),
                );
                let lhs = ev.eval_combination(&prod).unwrap();
                let rhs = ev.eval_admissible(k).unwrap().mul(&ev.eval_admissible(l).unwrap());
                assert!(lhs.sub(&rhs).abs_le_pow10(40), "{k} {l}");
            }
        }
    }
}
