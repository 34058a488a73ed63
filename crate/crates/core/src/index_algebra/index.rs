//! Indices: finite (possibly empty) sequences of positive integers.
//!
//! Entries are stored in written order (`k_1` first).  The summation
//! convention is increasing, `0 < n_1 < ... < n_r`, so admissibility is a
//! condition on the *last* entry; reversal is always explicit.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("entry must be positive")]
    NonPositiveEntry,
    #[error("malformed index string {0:?}")]
    Malformed(String),
}

/// A finite sequence of positive integers, e.g. `(1,3,1,3)`; the empty
/// index is allowed.
///
/// The derived ordering (lexicographic on entries, with a proper prefix
/// sorting first) is the canonical term order used for serialization and
/// display.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Index(Vec<u32>);

impl<'de> Deserialize<'de> for Index {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let entries = Vec::<u32>::deserialize(deserializer)?;
        Index::new(entries).map_err(D::Error::custom)
    }
}

impl Index {
    /// Builds an index, rejecting any entry below 1.
    pub fn new(entries: impl Into<Vec<u32>>) -> Result<Self, IndexError> {
        let entries = entries.into();
        if entries.iter().any(|&e| e == 0) {
            return Err(IndexError::NonPositiveEntry);
        }
        Ok(Index(entries))
    }

    pub const fn empty() -> Self {
        Index(Vec::new())
    }

    pub fn single(entry: u32) -> Self {
        debug_assert!(entry >= 1);
        Index(vec![entry])
    }

    /// `({a,b}^n, suffix)`: the pattern `a,b` repeated `n` times, followed
    /// by `suffix`.
    pub fn repeat_pattern(a: u32, b: u32, n: usize, suffix: &Index) -> Result<Self, IndexError> {
        if a == 0 || b == 0 {
            return Err(IndexError::NonPositiveEntry);
        }
        let mut entries = Vec::with_capacity(2 * n + suffix.depth());
        for _ in 0..n {
            entries.push(a);
            entries.push(b);
        }
        entries.extend_from_slice(suffix.entries());
        Ok(Index(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the entries.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// Number of entries.
    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// True iff the index is empty or its last entry exceeds 1.
    pub fn is_admissible(&self) -> bool {
        self.0.last().map_or(true, |&e| e > 1)
    }

    pub fn reverse(&self) -> Self {
        let mut v = self.0.clone();
        v.reverse();
        Index(v)
    }

    /// Number of trailing entries equal to 1.
    pub fn trailing_ones(&self) -> usize {
        self.0.iter().rev().take_while(|&&e| e == 1).count()
    }

    /// The first `i` entries, as an index.
    pub fn prefix(&self, i: usize) -> Self {
        Index(self.0[..i].to_vec())
    }

    /// The entries from position `i` on, reversed: `(k_r, ..., k_{i+1})`.
    pub fn suffix_reversed(&self, i: usize) -> Self {
        let mut v = self.0[i..].to_vec();
        v.reverse();
        Index(v)
    }

    /// Weight of the entries from position `i` on.
    pub fn suffix_weight(&self, i: usize) -> u64 {
        self.0[i..].iter().map(|&e| u64::from(e)).sum()
    }

    /// All entries but the last, plus the last entry.  Callers check
    /// non-emptiness.
    pub(crate) fn split_last(&self) -> (Index, u32) {
        let (&last, head) = self.0.split_last().expect("split_last on empty index");
        (Index(head.to_vec()), last)
    }

    pub(crate) fn with_appended(&self, entry: u32) -> Index {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(entry);
        Index(v)
    }

    pub(crate) fn with_prepended(&self, entry: u32) -> Index {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(entry);
        v.extend_from_slice(&self.0);
        Index(v)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepted forms: `1,3,1,3`, the pattern shorthand `{1,3}^2` (optionally
/// with a comma-separated suffix, `{3,1}^2,3`), and `-` for the empty
/// index.
impl FromStr for Index {
    type Err = IndexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Index::empty());
        }
        if let Some(rest) = s.strip_prefix('{') {
            let (pattern, tail) = rest
                .split_once('}')
                .ok_or_else(|| IndexError::Malformed(s.into()))?;
            let (a, b) = pattern
                .split_once(',')
                .ok_or_else(|| IndexError::Malformed(s.into()))?;
            let a: u32 = a.trim().parse().map_err(|_| IndexError::Malformed(s.into()))?;
            let b: u32 = b.trim().parse().map_err(|_| IndexError::Malformed(s.into()))?;
            let tail = tail
                .strip_prefix('^')
                .ok_or_else(|| IndexError::Malformed(s.into()))?;
            let (n, suffix) = match tail.split_once(',') {
                Some((n, suffix)) => (n, suffix.parse::<Index>()?),
                None => (tail, Index::empty()),
            };
            let n: usize = n.trim().parse().map_err(|_| IndexError::Malformed(s.into()))?;
            return Index::repeat_pattern(a, b, n, &suffix);
        }
        let entries: Result<Vec<u32>, _> = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| IndexError::Malformed(s.into())))
            .collect();
        Index::new(entries?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_index_rejects_zero_entries() {
        assert_eq!(Index::new(vec![0, 2]), Err(IndexError::NonPositiveEntry));
        assert!(Index::new(vec![1, 3]).is_ok());
        assert_eq!(Index::new(Vec::new()).unwrap(), Index::empty());
    }

    #[test]
    fn repeat_pattern_expands() {
        let e = Index::empty();
        assert_eq!(
            Index::repeat_pattern(1, 3, 2, &e).unwrap().entries(),
            &[1, 3, 1, 3]
        );
        assert_eq!(
            Index::repeat_pattern(3, 1, 1, &Index::single(3)).unwrap().entries(),
            &[3, 1, 3]
        );
        assert_eq!(Index::repeat_pattern(1, 3, 0, &e).unwrap(), Index::empty());
    }

    #[test]
    fn weight_depth_admissible() {
        let k = Index::new(vec![1, 3, 1, 3]).unwrap();
        assert_eq!(k.weight(), 8);
        assert_eq!(k.depth(), 4);
        assert!(k.is_admissible());
        assert!(Index::empty().is_admissible());
        assert_eq!(Index::empty().weight(), 0);
        assert_eq!(Index::empty().depth(), 0);
        assert!(!Index::new(vec![2, 1]).unwrap().is_admissible());
    }

    #[test]
    fn reverse_and_trailing_ones() {
        let k = Index::new(vec![1, 3]).unwrap();
        assert_eq!(k.reverse().entries(), &[3, 1]);
        assert_eq!(Index::new(vec![2, 1, 1]).unwrap().trailing_ones(), 2);
        assert_eq!(Index::new(vec![2]).unwrap().trailing_ones(), 0);
    }

    #[test]
    fn parse_forms() {
        assert_eq!("1,3,1,3".parse::<Index>().unwrap().entries(), &[1, 3, 1, 3]);
        assert_eq!("{1,3}^2".parse::<Index>().unwrap().entries(), &[1, 3, 1, 3]);
        assert_eq!("{3,1}^2,3".parse::<Index>().unwrap().entries(), &[3, 1, 3, 1, 3]);
        assert_eq!("-".parse::<Index>().unwrap(), Index::empty());
        assert!("1,0".parse::<Index>().is_err());
        assert!("{1,3}2".parse::<Index>().is_err());
        assert!("x".parse::<Index>().is_err());
    }

    #[test]
    fn canonical_order_is_lexicographic_shorter_prefix_first() {
        let mut v = vec![
            "2".parse::<Index>().unwrap(),
            "1,3".parse::<Index>().unwrap(),
            "1".parse::<Index>().unwrap(),
            Index::empty(),
            "1,2".parse::<Index>().unwrap(),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|k| k.to_string()).collect();
        assert_eq!(shown, vec!["()", "(1)", "(1,2)", "(1,3)", "(2)"]);
    }

    #[test]
    fn serde_is_a_plain_array() {
        let k = Index::new(vec![1, 3]).unwrap();
        assert_eq!(serde_json::to_string(&k).unwrap(), "[1,3]");
        let back: Index = serde_json::from_str("[1,3]").unwrap();
        assert_eq!(back, k);
        assert!(serde_json::from_str::<Index>("[0,2]").is_err());
    }
}
