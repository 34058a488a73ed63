//! The graded basis used for congruence certificates: monomials carrying
//! at least one factor of `pi^2`, spanning the relevant weight piece of
//! the `pi^2`-ideal.
//!
//! A monomial is `zeta(2a) * prod_g zeta(g)` with `a >= 1` and each `g`
//! drawn from the odd single zetas and a configurable list of depth >= 2
//! generators.  The even part is normalized as the Riemann zeta value
//! rather than a bare power of pi; both span the same line, but the zeta
//! normalization keeps the certificate coefficients small, matching the
//! rational coefficients these congruences actually carry.

use serde::{Deserialize, Serialize};

use crate::index_algebra::Index;
use crate::numeric_eval::{BigReal, Evaluator};

/// Depth >= 2 generators included by default: the irreducible double and
/// triple zeta values needed through weight 13.
pub fn default_extra_generators() -> Vec<Index> {
    vec![
        Index::new(vec![3, 5]).expect("static index"),
        Index::new(vec![3, 7]).expect("static index"),
        Index::new(vec![3, 3, 5]).expect("static index"),
    ]
}

/// The default generators merged with user-supplied ones, deduplicated.
pub fn merged_generators(user: &[Index]) -> Vec<Index> {
    let mut out = default_extra_generators();
    for g in user {
        if !out.contains(g) {
            out.push(g.clone());
        }
    }
    out
}

/// A product `zeta(2a) * prod zeta(g_i)`; `g_i` are indices (single odd
/// entries or configured deeper generators), kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantMonomial {
    /// The even zeta argument `2a`, `a >= 1`.
    pub even_part: u32,
    /// Odd-zeta and configured generators, sorted canonically.
    pub factors: Vec<Index>,
}

impl ConstantMonomial {
    pub fn weight(&self) -> u64 {
        u64::from(self.even_part) + self.factors.iter().map(Index::weight).sum::<u64>()
    }

    /// Deterministic label, e.g. `zeta(4)*zeta(3)^2` or
    /// `zeta(2)*zeta(3,5)`.
    pub fn label(&self) -> String {
        let mut parts = vec![format!("zeta({})", self.even_part)];
        let mut i = 0;
        while i < self.factors.len() {
            let mut j = i;
            while j < self.factors.len() && self.factors[j] == self.factors[i] {
                j += 1;
            }
            let entries: Vec<String> =
                self.factors[i].entries().iter().map(|e| e.to_string()).collect();
            let base = format!("zeta({})", entries.join(","));
            if j - i > 1 {
                parts.push(format!("{base}^{}", j - i));
            } else {
                parts.push(base);
            }
            i = j;
        }
        parts.join("*")
    }

    pub fn value(&self, ev: &Evaluator) -> BigReal {
        let mut out = ev.zeta_even_value(self.even_part);
        for g in &self.factors {
            out = out.mul(&ev.eval_admissible(g).expect("generators are admissible"));
        }
        out
    }
}

/// All monomials of the given total weight with `a >= 1`, in a fixed
/// deterministic order.  `extras` supplements the odd single zetas;
/// `weight < 2` yields an empty basis.
pub fn pi2_basis(weight: u32, extras: &[Index]) -> Vec<ConstantMonomial> {
    let mut generators: Vec<Index> = Vec::new();
    let mut g = 3;
    while g <= weight {
        generators.push(Index::single(g));
        g += 2;
    }
    for e in extras {
        debug_assert!(e.is_admissible());
        if e.weight() <= u64::from(weight) && !generators.contains(e) {
            generators.push(e.clone());
        }
    }
    let mut out = Vec::new();
    let mut even = 2;
    while even <= weight {
        let remaining = weight - even;
        let mut chosen = Vec::new();
        collect_products(&generators, 0, u64::from(remaining), &mut chosen, &mut |factors| {
            out.push(ConstantMonomial { even_part: even, factors })
        });
        even += 2;
    }
    out.sort_by(|a, b| (a.even_part, &a.factors).cmp(&(b.even_part, &b.factors)));
    out
}

fn collect_products(
    generators: &[Index],
    from: usize,
    remaining: u64,
    chosen: &mut Vec<Index>,
    emit: &mut impl FnMut(Vec<Index>),
) {
    if remaining == 0 {
        let mut factors = chosen.clone();
        factors.sort();
        emit(factors);
        return;
    }
    for (i, g) in generators.iter().enumerate().skip(from) {
        if g.weight() <= remaining {
            chosen.push(g.clone());
            collect_products(generators, i, remaining - g.weight(), chosen, emit);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(weight: u32) -> Vec<String> {
        pi2_basis(weight, &default_extra_generators())
            .iter()
            .map(ConstantMonomial::label)
            .collect()
    }

    #[test]
    fn small_weights() {
        assert!(labels(0).is_empty());
        assert!(labels(1).is_empty());
        assert_eq!(labels(2), vec!["zeta(2)"]);
        assert!(labels(3).is_empty());
        assert_eq!(labels(4), vec!["zeta(4)"]);
        assert_eq!(labels(5), vec!["zeta(2)*zeta(3)"]);
        assert_eq!(labels(6), vec!["zeta(6)"]);
    }

    #[test]
    fn weight_nine_enumeration() {
        assert_eq!(
            labels(9),
            vec!["zeta(2)*zeta(7)", "zeta(4)*zeta(5)", "zeta(6)*zeta(3)"]
        );
    }

    #[test]
    fn weight_ten_includes_extra_generator() {
        assert_eq!(
            labels(10),
            vec![
                "zeta(2)*zeta(3)*zeta(5)",
                "zeta(2)*zeta(3,5)",
                "zeta(4)*zeta(3)^2",
                "zeta(10)"
            ]
        );
    }

    #[test]
    fn weight_eleven_and_thirteen() {
        assert_eq!(
            labels(11),
            vec![
                "zeta(2)*zeta(3)^3",
                "zeta(2)*zeta(9)",
                "zeta(4)*zeta(7)",
                "zeta(6)*zeta(5)",
                "zeta(8)*zeta(3)"
            ]
        );
        // the paper-level weight-13 certificates need all nine of these
        assert_eq!(
            labels(13),
            vec![
                "zeta(2)*zeta(3)^2*zeta(5)",
                "zeta(2)*zeta(3)*zeta(3,5)",
                "zeta(2)*zeta(3,3,5)",
                "zeta(2)*zeta(11)",
                "zeta(4)*zeta(3)^3",
                "zeta(4)*zeta(9)",
                "zeta(6)*zeta(7)",
                "zeta(8)*zeta(5)",
                "zeta(10)*zeta(3)"
            ]
        );
    }

    #[test]
    fn monomial_weights_match() {
        for w in 2..=13 {
            for m in pi2_basis(w, &default_extra_generators()) {
                assert_eq!(m.weight(), u64::from(w), "{}", m.label());
            }
        }
    }

    #[test]
    fn values_are_positive_and_graded() {
        let ev = Evaluator::with_digits(30);
        for m in pi2_basis(10, &default_extra_generators()) {
            assert!(!m.value(&ev).is_negative(), "{}", m.label());
        }
    }
}
