//! Symbolic and numeric calculus for multiple zeta values.
//!
//! The crate is organized around five subsystems:
//!
//! * [`index_algebra`] — exact calculus on the Q-vector space spanned by
//!   indices: the stuffle product, the index shuffle, the weight-raising
//!   maps `sigma_n`, and the signed convolutions `m_i_n`.
//! * [`regularization`] — stuffle regularization: every index becomes a
//!   polynomial in a formal variable `T` with admissible coefficients, and
//!   `zeta_star` is the constant term.
//! * [`numeric_eval`] — arbitrary-precision evaluation of admissible MZVs
//!   via the Hölder convolution at 1/2, with a persistent value cache.
//! * [`smzv`] — t-adic symmetric MZVs as truncated series, plus the
//!   closed-form right-hand sides they are compared against.
//! * [`relations`] — LLL-based integer-relation detection, the graded
//!   `pi^2`-basis, congruence certificates, and the named verification
//!   suites.

pub mod index_algebra;
pub mod numeric_eval;
pub mod rational;
pub mod regularization;
pub mod relations;
pub mod smzv;

pub use index_algebra::{
    index_shuffle, m_i_n, sigma, stuffle, Index, IndexCombination, IndexError,
};
pub use numeric_eval::{pi_value, zeta_even, BigReal, EvalConfig, EvalError, Evaluator};
pub use regularization::{
    regularize, zeta_star_m_symbolic, zeta_star_symbolic, RegPolynomial,
};
pub use relations::{
    default_extra_generators, integer_relation, merged_generators, pi2_basis, run_suite, suite_names,
    verify_congruence_mod_pi2, CaseResult, CaseStatus, CongruenceOutcome, ConstantMonomial,
    LabeledConstant, RelationCertificate, RelationError, RelationOptions, SuiteReport,
};
pub use smzv::{
    main_rhs, smzv_coefficient_symbolic, stadic_coefficient, t_adic_smzv,
    t_adic_smzv_definitional, t_adic_smzv_symbolic, thm11_rhs, thm13_rhs, thm13_rhs_mod_pi2,
    TSeries,
};
