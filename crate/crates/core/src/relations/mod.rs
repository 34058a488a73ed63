//! Integer-relation detection and mod-`pi^2` congruence certificates.
//!
//! Certificates are numerical evidence at the stated precision, not
//! proofs: a found relation is re-verified against the exact error bounds
//! of its inputs, and a missing relation is reported as "not certified"
//! rather than "false" (the basis is configuration, not theorem).

mod basis;
mod lll;
mod suites;

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use basis::{default_extra_generators, merged_generators, pi2_basis, ConstantMonomial};
pub use lll::lll_reduce;
pub use suites::{run_suite, suite_names, CaseResult, CaseStatus, SuiteReport};

use crate::numeric_eval::{BigReal, Evaluator};

/// Default ceiling on certificate coefficients.
pub const DEFAULT_COEFF_BOUND: u64 = 1_000_000;
/// Default scan limit when matching a printed rational-coefficient
/// relation: the least common denominator must divide some scale up to
/// this bound.
pub const DEFAULT_DENOM_SCAN: u64 = 120;

#[derive(Debug, Error)]
pub enum RelationError {
    #[error("insufficient precision: {digits} digits (need at least {needed})")]
    InsufficientPrecision { digits: u32, needed: u32 },
    #[error("relation search needs at least two values")]
    TooFewValues,
}

/// Options for [`integer_relation`].
#[derive(Clone, Debug)]
pub struct RelationOptions {
    /// Guaranteed decimal accuracy of each input value.
    pub digits: u32,
    /// Reject relations with any coefficient above this.
    pub coeff_bound: u64,
}

impl RelationOptions {
    pub fn new(digits: u32) -> Self {
        RelationOptions { digits, coeff_bound: DEFAULT_COEFF_BOUND }
    }
}

/// Searches for a nonzero integer vector `v` with `|sum v_i x_i|` below
/// `10^-(digits-10)` and `max |v_i|` within the bound.
///
/// Returns `Ok(None)` when no such relation is visible at this precision
/// and bound; ambiguous near-relations (small but above threshold) are
/// reported as insufficient precision instead.
pub fn integer_relation(
    values: &[BigReal],
    opts: &RelationOptions,
) -> Result<Option<Vec<BigInt>>, RelationError> {
    if values.len() < 2 {
        return Err(RelationError::TooFewValues);
    }
    if opts.digits < 40 {
        return Err(RelationError::InsufficientPrecision { digits: opts.digits, needed: 40 });
    }
    let n = values.len();
    let scale = BigInt::from(10u32).pow(opts.digits - 10);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for (i, v) in values.iter().enumerate() {
        let mut row = vec![BigInt::zero(); n + 1];
        row[i] = BigInt::one();
        row[n] = v.scaled_round(&scale);
        rows.push(row);
    }
    lll_reduce(&mut rows);

    let threshold = i64::from(opts.digits) - 10;
    let bound = BigInt::from(opts.coeff_bound);
    let mut best: Option<(BigInt, Vec<BigInt>)> = None;
    let mut near_miss = false;
    for row in &rows {
        let coeffs = &row[..n];
        if coeffs.iter().all(BigInt::is_zero) {
            continue;
        }
        if coeffs.iter().any(|c| c.abs() > bound) {
            continue;
        }
        let mut combo = BigReal::zero(values[0].bits());
        for (c, v) in coeffs.iter().zip(values) {
            combo = combo.add(&v.mul_int(c));
        }
        if combo.abs_le_pow10(threshold) {
            let norm: BigInt = coeffs.iter().map(|c| c * c).sum();
            if best.as_ref().map_or(true, |(b, _)| norm < *b) {
                best = Some((norm, coeffs.to_vec()));
            }
        } else if combo.abs_le_pow10(threshold / 2) {
            near_miss = true;
        }
    }
    match best {
        Some((_, mut v)) => {
            let flip = v.iter().find(|c| !c.is_zero()).is_some_and(BigInt::is_negative);
            if flip {
                for c in &mut v {
                    *c = -c.clone();
                }
            }
            Ok(Some(v))
        }
        None if near_miss => {
            Err(RelationError::InsufficientPrecision { digits: opts.digits, needed: opts.digits + 20 })
        }
        None => Ok(None),
    }
}

/// A labeled constant as it appears in certificates.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LabeledConstant {
    pub label: String,
    pub value: String,
}

/// Evidence that a target value lies in the span of the listed constants:
/// `relation[0] * target + sum relation[i+1] * basis[i] ~ 0` within
/// `residual`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelationCertificate {
    pub target_id: String,
    pub weight: u32,
    /// Decimal strings; first entry is the (nonzero) target coefficient.
    pub relation: Vec<String>,
    pub basis: Vec<LabeledConstant>,
    pub residual: String,
}

impl RelationCertificate {
    pub fn relation_ints(&self) -> Vec<BigInt> {
        self.relation.iter().map(|s| s.parse().expect("certificate holds integers")).collect()
    }
}

/// Outcome of a congruence check mod `pi^2`.
#[derive(Clone, Debug)]
pub enum CongruenceOutcome {
    /// The difference is already below threshold.
    TrivialZero(RelationCertificate),
    /// A relation with nonzero target coefficient was found and verified.
    Certified(RelationCertificate),
    /// No relation at this precision and coefficient bound.
    NotCertified { residual: String },
    /// The search was inconclusive at this precision.
    InsufficientPrecision { residual: String },
}

impl CongruenceOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, CongruenceOutcome::TrivialZero(_) | CongruenceOutcome::Certified(_))
    }

    pub fn certificate(&self) -> Option<&RelationCertificate> {
        match self {
            CongruenceOutcome::TrivialZero(c) | CongruenceOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }
}

/// Certifies `lhs = rhs (mod pi^2)` at the given weight: searches for an
/// integer relation between `lhs - rhs` and the graded `pi^2`-basis.
pub fn verify_congruence_mod_pi2(
    target_id: &str,
    lhs: &BigReal,
    rhs: &BigReal,
    weight: u32,
    ev: &Evaluator,
    extras: &[crate::index_algebra::Index],
) -> CongruenceOutcome {
    let diff = lhs.sub(rhs);
    let digits = ev.precision_digits();
    let threshold = i64::from(digits) - 10;
    if diff.abs_le_pow10(threshold) {
        return CongruenceOutcome::TrivialZero(RelationCertificate {
            target_id: target_id.to_string(),
            weight,
            relation: vec!["1".to_string()],
            basis: Vec::new(),
            residual: diff.residual_bound(),
        });
    }
    let basis = pi2_basis(weight, &basis::merged_generators(extras));
    if basis.is_empty() {
        return CongruenceOutcome::NotCertified { residual: diff.residual_bound() };
    }
    let mut values = vec![diff.clone()];
    values.extend(basis.iter().map(|m| m.value(ev)));
    match integer_relation(&values, &RelationOptions::new(digits)) {
        Ok(Some(relation)) if !relation[0].is_zero() => {
            let mut combo = BigReal::zero(diff.bits());
            for (c, v) in relation.iter().zip(&values) {
                combo = combo.add(&v.mul_int(c));
            }
            CongruenceOutcome::Certified(RelationCertificate {
                target_id: target_id.to_string(),
                weight,
                relation: relation.iter().map(BigInt::to_string).collect(),
                basis: basis
                    .iter()
                    .map(|m| LabeledConstant {
                        label: m.label(),
                        value: ev.decimal(&m.value(ev)),
                    })
                    .collect(),
                residual: combo.residual_bound(),
            })
        }
        Ok(_) => CongruenceOutcome::NotCertified { residual: diff.residual_bound() },
        Err(RelationError::InsufficientPrecision { .. }) => {
            CongruenceOutcome::InsufficientPrecision { residual: diff.residual_bound() }
        }
        Err(e) => unreachable!("basis is nonempty: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index_algebra::Index;

    fn idx(entries: &[u32]) -> Index {
        Index::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn euler_relation_found() {
        let ev = Evaluator::with_digits(60);
        let z12 = ev.eval_admissible(&idx(&[1, 2])).unwrap();
        let z3 = ev.eval_admissible(&idx(&[3])).unwrap();
        let rel = integer_relation(&[z12, z3], &RelationOptions::new(60)).unwrap().unwrap();
        assert_eq!(rel, vec![BigInt::from(1), BigInt::from(-1)]);
    }

    #[test]
    fn zeta2_pi2_relation() {
        let ev = Evaluator::with_digits(60);
        let z2 = ev.eval_admissible(&idx(&[2])).unwrap();
        let pi2 = ev.pi_pow(2);
        let rel = integer_relation(&[z2, pi2], &RelationOptions::new(60)).unwrap().unwrap();
        assert_eq!(rel, vec![BigInt::from(6), BigInt::from(-1)]);
    }

    #[test]
    fn no_relation_for_unrelated_values() {
        let ev = Evaluator::with_digits(60);
        let z3 = ev.eval_admissible(&idx(&[3])).unwrap();
        let z5 = ev.eval_admissible(&idx(&[5])).unwrap();
        let out = integer_relation(&[z3, z5], &RelationOptions::new(60)).unwrap();
        assert!(out.is_none());
    }

    #[test]
    fn single_value_and_low_precision_are_errors() {
        let ev = Evaluator::with_digits(60);
        let z3 = ev.eval_admissible(&idx(&[3])).unwrap();
        assert!(matches!(
            integer_relation(&[z3.clone()], &RelationOptions::new(60)),
            Err(RelationError::TooFewValues)
        ));
        assert!(matches!(
            integer_relation(&[z3.clone(), z3], &RelationOptions::new(30)),
            Err(RelationError::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn congruence_zeta_star_11_mod_pi2() {
        // zeta*((1,1)) = -zeta(2)/2, a pure pi^2 element at weight 2
        let ev = Evaluator::with_digits(50);
        let lhs = ev.zeta_star_numeric(&idx(&[1, 1]));
        let out = verify_congruence_mod_pi2("zeta*(1,1)", &lhs, &ev.zero(), 2, &ev, &[]);
        let cert = out.certificate().expect("certified");
        let rel = cert.relation_ints();
        assert_eq!(rel, vec![BigInt::from(2), BigInt::from(1)]);
        assert_eq!(cert.basis[0].label, "zeta(2)");
    }

    #[test]
    fn trivial_zero_congruence() {
        let ev = Evaluator::with_digits(50);
        let z3 = ev.eval_admissible(&idx(&[3])).unwrap();
        let out = verify_congruence_mod_pi2("same", &z3, &z3, 3, &ev, &[]);
        assert!(matches!(out, CongruenceOutcome::TrivialZero(_)));
    }

    #[test]
    fn not_certified_when_outside_span() {
        // zeta(3) is not a rational multiple of zeta(2) at weight... use
        // weight 2 basis on purpose
        let ev = Evaluator::with_digits(50);
        let z3 = ev.eval_admissible(&idx(&[3])).unwrap();
        let out = verify_congruence_mod_pi2("z3-vs-pi2", &z3, &ev.zero(), 2, &ev, &[]);
        assert!(matches!(out, CongruenceOutcome::NotCertified { .. }));
    }

    #[test]
    fn certificate_residual_recomputes_at_higher_precision() {
        let ev = Evaluator::with_digits(50);
        let lhs = ev.zeta_star_numeric(&idx(&[1, 1]));
        let cert = verify_congruence_mod_pi2("zeta*(1,1)", &lhs, &ev.zero(), 2, &ev, &[])
            .certificate()
            .cloned()
            .unwrap();
        // re-evaluate the combination at +20 digits
        let hi = Evaluator::with_digits(70);
        let rel = cert.relation_ints();
        let mut combo = hi.zeta_star_numeric(&idx(&[1, 1])).mul_int(&rel[0]);
        combo = combo.add(&hi.zeta_even_value(2).mul_int(&rel[1]));
        assert!(combo.abs_le_pow10(40));
    }
}
