//! Reference constants: pi by Machin's formula, Bernoulli numbers, and the
//! closed form for even zeta values.

use dashmap::DashMap;
use num::{BigInt, Integer, One, Zero};
use once_cell::sync::Lazy;
use std::sync::Mutex;

use super::bigreal::BigReal;
use crate::rational::{factorial, two_pow, Rat};

static PI_CACHE: Lazy<DashMap<u32, BigReal>> = Lazy::new(DashMap::new);

/// `pi` at the given working precision, via
/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(bits: u32) -> BigReal {
    if let Some(hit) = PI_CACHE.get(&bits) {
        return hit.clone();
    }
    let a = atan_inv(5, bits);
    let b = atan_inv(239, bits);
    let out = a.mul_int(&BigInt::from(16)).sub(&b.mul_int(&BigInt::from(4)));
    PI_CACHE.insert(bits, out.clone());
    out
}

/// `atan(1/x)` for integer `x >= 2`, by the alternating series; each term
/// floors once, so the ulp error is bounded by the term count.
fn atan_inv(x: u64, bits: u32) -> BigReal {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << bits).div_floor(&x);
    let mut sum = power.clone();
    let mut ops: u64 = 1;
    let mut k: u64 = 1;
    loop {
        power = power.div_floor(&x2);
        if power.is_zero() {
            break;
        }
        let term = power.div_floor(&BigInt::from(2 * k + 1));
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        ops += 2;
        k += 1;
    }
    // truncation tail is below the last dropped term, i.e. under 1 ulp
    BigReal::from_parts(sum, BigInt::from(ops + 2), bits)
}

static BERNOULLI_CACHE: Lazy<Mutex<Vec<Rat>>> = Lazy::new(|| Mutex::new(vec![Rat::one()]));

/// Bernoulli number `B_n` (convention `B_1 = -1/2`), by the defining
/// recurrence `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli(n: u32) -> Rat {
    let mut cache = BERNOULLI_CACHE.lock().expect("bernoulli cache poisoned");
    while cache.len() <= n as usize {
        let m = cache.len() as u64;
        let mut acc = Rat::zero();
        for (j, b) in cache.iter().enumerate() {
            acc += Rat::from_integer(crate::rational::binomial(m + 1, j as u64)) * b;
        }
        let value = -acc / Rat::from_integer(BigInt::from(m + 1));
        cache.push(value);
    }
    cache[n as usize].clone()
}

/// `zeta(2n)` as an exact rational multiple of `pi^{2n}`:
/// `zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!)`.
pub fn zeta_even_rational(two_n: u32) -> Rat {
    assert!(two_n >= 2 && two_n % 2 == 0, "argument must be a positive even integer");
    let n = two_n / 2;
    let sign = if n % 2 == 1 { Rat::one() } else { -Rat::one() };
    sign * bernoulli(two_n)
        * two_pow(i64::from(two_n) - 1)
        / Rat::from_integer(factorial(u64::from(two_n)))
}
