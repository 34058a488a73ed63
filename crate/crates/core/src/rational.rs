//! Exact rational scalars and the small combinatorial helpers used all over
//! the index calculus.

use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, One, Signed, Zero};

/// Exact rational coefficient type; binomial products and `(-4)^-n` factors
/// overflow fixed-width integers quickly, so everything is arbitrary
/// precision.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    BigInt::from_biguint(Sign::Plus, num / den)
}

pub fn factorial(n: u64) -> BigInt {
    let mut out = BigUint::one();
    for i in 2..=n {
        out *= BigUint::from(i);
    }
    BigInt::from_biguint(Sign::Plus, out)
}

/// `(-4)^e` for any integer exponent, as an exact rational.
pub fn neg4_pow(e: i64) -> Rat {
    int_pow(-4, e)
}

/// `2^e` for any integer exponent, as an exact rational.
pub fn two_pow(e: i64) -> Rat {
    int_pow(2, e)
}

fn int_pow(base: i64, e: i64) -> Rat {
    let p = BigInt::from(base).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

/// Sign `(-1)^n` as a rational.
pub fn alt_sign(n: u64) -> Rat {
    if n % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Renders a rational as `num/den` (or just `num` when integral).
pub fn display_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Least common multiple of two positive integers.
pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let g = num::Integer::gcd(a, b);
    (a / &g * b).abs()
}
