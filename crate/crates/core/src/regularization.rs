//! Stuffle regularization.
//!
//! Every index is rewritten as a polynomial in a formal variable `T` whose
//! coefficients are combinations of admissible indices, with the
//! normalization `reg((1)) = T`.  The constant term defines `zeta_star`.
//!
//! The reduction is triangular in the number of trailing 1s: for a
//! non-admissible `k = (w, 1)` with `m` trailing ones, the stuffle product
//! `w * (1)` contains `k` with multiplicity exactly `m` (the inserted 1 can
//! land anywhere in the trailing block) and otherwise only indices with at
//! most `m - 1` trailing ones, so
//! `reg(k) = (reg(w) * T - reg(w * (1) - m k)) / m`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::index_algebra::{sigma_index, stuffle_indices, Index, IndexCombination};
use crate::rational::{rat, Rat};

/// Polynomial in `T` with admissible-support coefficients: the
/// `*`-regularized value of a combination.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct RegPolynomial {
    coeffs: BTreeMap<u32, IndexCombination>,
}

impl RegPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(x: IndexCombination) -> Self {
        let mut coeffs = BTreeMap::new();
        if !x.is_zero() {
            coeffs.insert(0, x);
        }
        RegPolynomial { coeffs }
    }

    /// Highest degree with a nonzero coefficient; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `T^d` (zero combination when absent).
    pub fn coefficient(&self, d: u32) -> IndexCombination {
        self.coeffs.get(&d).cloned().unwrap_or_default()
    }

    /// The degree-0 coefficient, i.e. the `zeta_star` image.
    pub fn constant_term(&self) -> IndexCombination {
        self.coefficient(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &IndexCombination)> {
        self.coeffs.iter()
    }

    fn add_coeff(&mut self, d: u32, x: &IndexCombination, scale: &Rat) {
        if x.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(d).or_default();
        entry.add_scaled(x, scale);
        if entry.is_zero() {
            self.coeffs.remove(&d);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &Rat) {
        for (&d, x) in &other.coeffs {
            self.add_coeff(d, x, scale);
        }
    }

    /// Shifts by one power of `T`.
    fn mul_t(&self) -> Self {
        RegPolynomial {
            coeffs: self.coeffs.iter().map(|(&d, x)| (d + 1, x.clone())).collect(),
        }
    }

    /// Product of two regularized polynomials; coefficients multiply via
    /// the stuffle product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = RegPolynomial::zero();
        for (&da, xa) in &self.coeffs {
            for (&db, xb) in &other.coeffs {
                let prod = crate::index_algebra::stuffle(xa, xb);
                out.add_coeff(da + db, &prod, &rat(1, 1));
            }
        }
        out
    }
}

impl fmt::Display for RegPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, x)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match d {
                0 => write!(f, "{x}")?,
                1 => write!(f, "({x})*T")?,
                _ => write!(f, "({x})*T^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RegPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

static REG_MEMO: Lazy<DashMap<Index, Arc<RegPolynomial>>> = Lazy::new(DashMap::new);

/// Regularization of a single index.
pub fn regularize_index(k: &Index) -> Arc<RegPolynomial> {
    if k.is_admissible() {
        return Arc::new(RegPolynomial::constant(IndexCombination::from_index(k.clone())));
    }
    if let Some(hit) = REG_MEMO.get(k) {
        return hit.clone();
    }
    let (w, _one) = k.split_last();
    let m = k.trailing_ones() as i64;
    // w * (1) = m*k + rest, where rest has at most m-1 trailing ones
    let product = stuffle_indices(&w, &Index::single(1));
    let mut rest = (*product).clone();
    rest.add_term(k.clone(), rat(-m, 1));

    let mut out = regularize_index(&w).mul_t();
    for (idx, c) in rest.iter() {
        out.add_scaled(&regularize_index(idx), &-c.clone());
    }
    let inv_m = rat(1, m);
    let out = RegPolynomial {
        coeffs: out
            .coeffs
            .into_iter()
            .map(|(d, x)| (d, x.scaled(&inv_m)))
            .collect(),
    };
    debug_assert!(out.coeffs.values().all(IndexCombination::all_admissible));
    debug_assert!(out.degree() as usize <= k.trailing_ones());
    let out = Arc::new(out);
    REG_MEMO.insert(k.clone(), out.clone());
    out
}

/// Linear extension of regularization to combinations.
pub fn regularize(x: &IndexCombination) -> RegPolynomial {
    let mut out = RegPolynomial::zero();
    for (k, c) in x.iter() {
        out.add_scaled(&regularize_index(k), c);
    }
    out
}

/// `zeta_star` of a single index as an admissible combination: the constant
/// term of its regularization.
pub fn zeta_star_symbolic(k: &Index) -> IndexCombination {
    regularize_index(k).constant_term()
}

/// Linear extension of `zeta_star` to combinations.
pub fn zeta_star_symbolic_combination(x: &IndexCombination) -> IndexCombination {
    let mut out = IndexCombination::zero();
    for (k, c) in x.iter() {
        out.add_scaled(&zeta_star_symbolic(k), c);
    }
    out
}

/// `zeta_star_m`: `zeta_star` applied to `sigma_m(k)`; `delta_{m,0}` on the
/// empty index.
pub fn zeta_star_m_symbolic(m: u32, k: &Index) -> IndexCombination {
    zeta_star_symbolic_combination(&sigma_index(m, k))
}

/// Wire format: `{"T^0": <combination>, "T^1": ...}`.
impl Serialize for RegPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (d, x) in &self.coeffs {
            map.serialize_entry(&format!("T^{d}"), x)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for RegPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, IndexCombination>::deserialize(deserializer)?;
        let mut coeffs = BTreeMap::new();
        for (key, x) in raw {
            let d: u32 = key
                .strip_prefix("T^")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| D::Error::custom(format!("bad degree key {key:?}")))?;
            if !x.is_zero() {
                coeffs.insert(d, x);
            }
        }
        Ok(RegPolynomial { coeffs })
    }
}
