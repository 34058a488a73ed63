//! Finitely supported maps `Index -> Q`: elements of the vector space
//! spanned by indices.
//!
//! Stored terms never carry a zero coefficient, and iteration follows the
//! canonical index order, so display and serialization are deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{BigInt, One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::index::Index;
use crate::rational::{display_rat, Rat};

#[derive(Clone, Default, PartialEq, Eq)]
pub struct IndexCombination {
    terms: BTreeMap<Index, Rat>,
}

impl IndexCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit of the stuffle algebra: `1 * (empty index)`.
    pub fn unit() -> Self {
        Self::from_index(Index::empty())
    }

    pub fn from_index(k: Index) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(k, Rat::one());
        IndexCombination { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Index, Rat)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Index, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, k: &Index) -> Rat {
        self.terms.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Adds `c * k`, pruning the entry if the sum cancels.
    pub fn add_term(&mut self, k: Index, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &Rat) {
        if scale.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: &Rat) -> Self {
        if scale.is_zero() {
            return Self::zero();
        }
        IndexCombination {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * scale)).collect(),
        }
    }

    /// True when every index in the support is admissible.
    pub fn all_admissible(&self) -> bool {
        self.terms.keys().all(Index::is_admissible)
    }

    /// Largest weight over the support (0 for the zero combination).
    pub fn max_weight(&self) -> u64 {
        self.terms.keys().map(Index::weight).max().unwrap_or(0)
    }

    /// Sum of all coefficients.
    pub fn total_coefficient(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |acc, c| acc + c)
    }
}

impl Add<&IndexCombination> for IndexCombination {
    type Output = IndexCombination;
    fn add(mut self, rhs: &IndexCombination) -> IndexCombination {
        self.add_assign(rhs);
        self
    }
}

impl Sub<&IndexCombination> for IndexCombination {
    type Output = IndexCombination;
    fn sub(mut self, rhs: &IndexCombination) -> IndexCombination {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c.clone());
        }
        self
    }
}

impl Neg for IndexCombination {
    type Output = IndexCombination;
    fn neg(self) -> IndexCombination {
        IndexCombination {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl fmt::Display for IndexCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{}*{k}", display_rat(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IndexCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    index: Index,
    num: String,
    den: String,
}

/// Wire format: `{"terms":[{"index":[1,3],"num":"-1","den":"2"},...]}` in
/// canonical term order, with numerator and denominator as decimal strings.
impl Serialize for IndexCombination {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wrapper<'a> {
            terms: TermSeq<'a>,
        }
        struct TermSeq<'a>(&'a BTreeMap<Index, Rat>);
        impl Serialize for TermSeq<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for (k, c) in self.0 {
                    seq.serialize_element(&TermRecord {
                        index: k.clone(),
                        num: c.numer().to_string(),
                        den: c.denom().to_string(),
                    })?;
                }
                seq.end()
            }
        }
        Wrapper { terms: TermSeq(&self.terms) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IndexCombination {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wrapper {
            terms: Vec<TermRecord>,
        }
        let w = Wrapper::deserialize(deserializer)?;
        let mut out = IndexCombination::zero();
        for t in w.terms {
            let num: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            out.add_term(t.index, Rat::new(num, den));
        }
        Ok(out)
    }
}
