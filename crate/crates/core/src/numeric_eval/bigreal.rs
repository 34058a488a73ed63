//! Fixed-point arbitrary-precision reals carrying a guaranteed absolute
//! error bound.
//!
//! A value is `mant * 2^-bits` with an error of at most `err` ulps
//! (`err * 2^-bits` in absolute terms).  Addition and subtraction are exact
//! at a common scale; multiplication and division round toward the floor
//! and account for it conservatively.  All operations are deterministic,
//! so identical configurations produce bit-identical decimal output.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::Sign;
use num::{BigInt, BigUint, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRealError {
    #[error("malformed decimal number {0:?}")]
    Malformed(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct BigReal {
    mant: BigInt,
    /// Absolute error in ulps of `2^-bits`.
    err: BigInt,
    bits: u32,
}

impl BigReal {
    pub fn zero(bits: u32) -> Self {
        BigReal { mant: BigInt::zero(), err: BigInt::zero(), bits }
    }

    pub fn one(bits: u32) -> Self {
        Self::from_int(1, bits)
    }

    pub fn from_int(v: i64, bits: u32) -> Self {
        BigReal { mant: BigInt::from(v) << bits, err: BigInt::zero(), bits }
    }

    pub fn from_bigint(v: &BigInt, bits: u32) -> Self {
        BigReal { mant: v.clone() << bits, err: BigInt::zero(), bits }
    }

    pub fn from_rat(q: &Rat, bits: u32) -> Self {
        let mant = (q.numer().clone() << bits).div_floor(q.denom());
        let err = if q.denom().is_one() { BigInt::zero() } else { BigInt::one() };
        BigReal { mant, err, bits }
    }

    /// Raw constructor for internally computed quantities with a known
    /// ulp bound.
    pub(crate) fn from_parts(mant: BigInt, err: BigInt, bits: u32) -> Self {
        BigReal { mant, err, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero_exact(&self) -> bool {
        self.mant.is_zero() && self.err.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    fn check_bits(&self, other: &Self) {
        assert_eq!(self.bits, other.bits, "mixed working precisions");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_bits(other);
        BigReal {
            mant: &self.mant + &other.mant,
            err: &self.err + &other.err,
            bits: self.bits,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_bits(other);
        BigReal {
            mant: &self.mant - &other.mant,
            err: &self.err + &other.err,
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Self {
        BigReal { mant: -&self.mant, err: self.err.clone(), bits: self.bits }
    }

    pub fn abs(&self) -> Self {
        BigReal { mant: self.mant.abs(), err: self.err.clone(), bits: self.bits }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_bits(other);
        let mant = (&self.mant * &other.mant) >> self.bits;
        // |x e_y| + |y e_x| + e_x e_y, all scaled back, plus the floor.
        let err = ((self.mant.magnitude() * other.err.magnitude()
            + other.mant.magnitude() * self.err.magnitude()
            + self.err.magnitude() * other.err.magnitude())
            >> self.bits)
            + 2u32;
        BigReal { mant, err: BigInt::from_biguint(Sign::Plus, err), bits: self.bits }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        BigReal {
            mant: &self.mant * k,
            err: &self.err * k.abs() + 1,
            bits: self.bits,
        }
    }

    pub fn mul_rat(&self, q: &Rat) -> Self {
        let mant = (&self.mant * q.numer()).div_floor(q.denom());
        let err = (&self.err * q.numer().abs()).div_ceil(q.denom()) + 1;
        BigReal { mant, err, bits: self.bits }
    }

    /// Division by a nonzero exact integer.
    pub fn div_int(&self, d: &BigInt) -> Self {
        assert!(!d.is_zero());
        BigReal {
            mant: self.mant.div_floor(d),
            err: self.err.div_ceil(&d.abs()) + 1,
            bits: self.bits,
        }
    }

    /// Multiplication by an exact power of two (exact for `k >= 0`).
    pub fn mul_pow2(&self, k: i32) -> Self {
        if k >= 0 {
            BigReal { mant: &self.mant << k as u32, err: self.err.clone(), bits: self.bits }
        } else {
            BigReal {
                mant: &self.mant >> (-k) as u32,
                err: (&self.err >> (-k) as u32) + 1,
                bits: self.bits,
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.bits);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Compares the magnitudes of the central values.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.mant.magnitude().cmp(other.mant.magnitude())
    }

    /// True when `|value| <= 10^-p` is guaranteed (error bound included).
    pub fn abs_le_pow10(&self, p: i64) -> bool {
        let bound = self.mant.magnitude() + self.err.magnitude();
        let unit = BigUint::one() << self.bits;
        if p >= 0 {
            bound * BigUint::from(10u32).pow(p as u32) <= unit
        } else {
            bound <= unit * BigUint::from(10u32).pow((-p) as u32)
        }
    }

    /// True when the error bound itself is at most `10^-p`.
    pub fn err_le_pow10(&self, p: i64) -> bool {
        let unit = BigUint::one() << self.bits;
        if p >= 0 {
            self.err.magnitude() * BigUint::from(10u32).pow(p as u32) <= unit
        } else {
            *self.err.magnitude() <= unit * BigUint::from(10u32).pow((-p) as u32)
        }
    }

    /// Largest `p >= 0` with `|value| + err <= 10^-p`, capped by the working
    /// precision; `None` when the bound exceeds 1.
    pub fn magnitude_bound_exponent(&self) -> Option<u32> {
        if !self.abs_le_pow10(0) {
            return None;
        }
        let cap = (f64::from(self.bits) * 0.30103) as u32;
        let mut lo = 0u32; // invariant: abs_le_pow10(lo)
        let mut hi = cap + 2;
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if self.abs_le_pow10(i64::from(mid)) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        Some(lo)
    }

    /// Decimal rendering with exactly `digits` fractional digits, rounded
    /// half away from zero.  Together with the nearest-rounding parse this
    /// makes decimal round trips byte-stable.
    pub fn to_decimal(&self, digits: u32) -> String {
        let half = BigUint::one() << (self.bits - 1);
        let scaled: BigInt =
            ((self.mant.magnitude() * BigUint::from(10u32).pow(digits) + half) >> self.bits)
                .into();
        let q = scaled.to_string();
        let digits = digits as usize;
        let (int_part, frac_part) = if q.len() > digits {
            let (i, f) = q.split_at(q.len() - digits);
            (i.to_string(), f.to_string())
        } else {
            ("0".to_string(), format!("{q:0>digits$}"))
        };
        let sign = if self.mant.is_negative() && !(int_part == "0" && frac_part.chars().all(|c| c == '0')) {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// Upper bound on `|value|` as a short base-ten string, e.g. `1e-62`.
    pub fn residual_bound(&self) -> String {
        match self.magnitude_bound_exponent() {
            Some(p) => format!("1e-{p}"),
            None => {
                // bound above 1; report the integer magnitude roughly
                let bound: BigInt = (self.mant.magnitude() + self.err.magnitude()).into();
                let int = (bound >> self.bits) + 1;
                format!("{int}e0")
            }
        }
    }

    /// Parses `[sign]digits[.digits]`, trusting the string to `10^-(frac
    /// digits)`; the stated `err_pow10` (absolute error `10^-err_pow10`) is
    /// added on top.
    pub fn parse_decimal(s: &str, bits: u32, err_pow10: Option<u32>) -> Result<Self, ParseRealError> {
        let t = s.trim();
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(ParseRealError::Malformed(s.into()));
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(ParseRealError::Malformed(s.into()));
        }
        let digits: BigUint = format!("{int_part}{frac_part}")
            .parse()
            .map_err(|_| ParseRealError::Malformed(s.into()))?;
        let den = BigUint::from(10u32).pow(frac_part.len() as u32);
        let mant = BigInt::from(sign) * BigInt::from(((digits << bits) + (&den >> 1)) / &den);
        let mut err = BigInt::one() + ((BigInt::one() << bits) / BigInt::from(den));
        if let Some(p) = err_pow10 {
            err += (BigInt::one() << bits) / BigInt::from(10u32).pow(p) + 1;
        }
        Ok(BigReal { mant, err, bits })
    }

    /// Round-half-away value of `scale * value` as an exact integer.
    pub fn scaled_round(&self, scale: &BigInt) -> BigInt {
        let prod = &self.mant * scale;
        let half = BigUint::one() << (self.bits - 1);
        let mag: BigInt = ((prod.magnitude() + half) >> self.bits).into();
        if prod.is_negative() {
            -mag
        } else {
            mag
        }
    }

    /// Converts to a different working precision.
    pub fn with_bits(&self, bits: u32) -> Self {
        if bits == self.bits {
            return self.clone();
        }
        if bits > self.bits {
            let k = bits - self.bits;
            BigReal { mant: &self.mant << k, err: (&self.err << k) + 1, bits }
        } else {
            let k = self.bits - bits;
            BigReal { mant: &self.mant >> k, err: (&self.err >> k) + 2, bits }
        }
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({}, err<=2^-{}*{})", self.to_decimal(30), self.bits, self.err)
    }
}
