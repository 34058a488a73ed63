//! t-adic symmetric MZVs as truncated series, and the closed-form
//! right-hand sides they are verified against.
//!
//! The series coefficients come from the signed convolutions: the
//! coefficient of `t^j` is `zeta_star(I_j(k))` with `I_j = 0_I_j`.  A
//! second, definitional route computes the same coefficient as
//! `sum_i (-1)^{w(suffix)} zeta_star(prefix) * zeta_star_j(reversed
//! suffix)` with plain real multiplication; the two must agree, which is
//! exercised by the tests.

use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::index_algebra::{m_i_n, Index, IndexCombination};
use crate::numeric_eval::{inv_factorial, BigReal, EvalConfig, Evaluator};
use crate::rational::{alt_sign, neg4_pow, rat_int, two_pow};
use crate::regularization::{zeta_star_m_symbolic, zeta_star_symbolic_combination};

/// Truncated power series in `t`; symbolic and numeric coefficients never
/// mix within one series.
#[derive(Clone, PartialEq)]
pub enum TSeries {
    Numeric { coeffs: Vec<BigReal>, digits: u32 },
    Symbolic { coeffs: Vec<IndexCombination> },
}

impl TSeries {
    pub fn order(&self) -> usize {
        match self {
            TSeries::Numeric { coeffs, .. } => coeffs.len(),
            TSeries::Symbolic { coeffs } => coeffs.len(),
        }
    }

    pub fn numeric_coefficient(&self, j: usize) -> Option<&BigReal> {
        match self {
            TSeries::Numeric { coeffs, .. } => coeffs.get(j),
            TSeries::Symbolic { .. } => None,
        }
    }

    pub fn symbolic_coefficient(&self, j: usize) -> Option<&IndexCombination> {
        match self {
            TSeries::Symbolic { coeffs } => coeffs.get(j),
            TSeries::Numeric { .. } => None,
        }
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |f: &mut fmt::Formatter<'_>, j: usize, body: String| -> fmt::Result {
            if j > 0 {
                write!(f, " + ")?;
            }
            match j {
                0 => write!(f, "({body})"),
                1 => write!(f, "({body})*t"),
                _ => write!(f, "({body})*t^{j}"),
            }
        };
        match self {
            TSeries::Numeric { coeffs, digits } => {
                for (j, c) in coeffs.iter().enumerate() {
                    render(f, j, c.to_decimal(*digits))?;
                }
            }
            TSeries::Symbolic { coeffs } => {
                for (j, c) in coeffs.iter().enumerate() {
                    render(f, j, c.to_string())?;
                }
            }
        }
        Ok(())
    }
}

/// Wire format: `{"order":3,"coeffs":[...]}` with decimal strings in
/// numeric mode and combination objects in symbolic mode.
impl Serialize for TSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("TSeries", 2)?;
        st.serialize_field("order", &self.order())?;
        match self {
            TSeries::Numeric { coeffs, digits } => {
                let rendered: Vec<String> = coeffs.iter().map(|c| c.to_decimal(*digits)).collect();
                st.serialize_field("coeffs", &rendered)?;
            }
            TSeries::Symbolic { coeffs } => {
                st.serialize_field("coeffs", coeffs)?;
            }
        }
        st.end()
    }
}

impl<'de> Deserialize<'de> for TSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            coeffs: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.order {
            return Err(D::Error::custom("order does not match coefficient count"));
        }
        if raw.coeffs.iter().all(|v| v.is_string()) {
            let mut digits = 0;
            let mut coeffs = Vec::with_capacity(raw.order);
            let strings: Vec<String> = raw
                .coeffs
                .iter()
                .map(|v| v.as_str().expect("checked string").to_string())
                .collect();
            for s in &strings {
                digits = digits.max(s.split('.').nth(1).map_or(0, |f| f.len() as u32));
            }
            let bits = EvalConfig::with_digits(digits.max(20)).working_bits();
            for s in &strings {
                coeffs.push(
                    BigReal::parse_decimal(s, bits, Some(digits.max(1)))
                        .map_err(D::Error::custom)?,
                );
            }
            Ok(TSeries::Numeric { coeffs, digits })
        } else {
            let coeffs: Vec<IndexCombination> = raw
                .coeffs
                .into_iter()
                .map(serde_json::from_value)
                .collect::<Result<_, _>>()
                .map_err(D::Error::custom)?;
            Ok(TSeries::Symbolic { coeffs })
        }
    }
}

/// Symbolic coefficient of `t^j` in the t-adic symmetric MZV:
/// `zeta_star(I_j(k))` as an admissible combination.
pub fn smzv_coefficient_symbolic(k: &Index, j: u32) -> IndexCombination {
    zeta_star_symbolic_combination(&m_i_n(0, j, k))
}

/// Symbolic truncated series with admissible-support coefficients.
pub fn t_adic_smzv_symbolic(k: &Index, order: usize) -> TSeries {
    TSeries::Symbolic {
        coeffs: (0..order as u32).map(|j| smzv_coefficient_symbolic(k, j)).collect(),
    }
}

/// Numeric t-adic symmetric MZV truncated at `t^order`.
pub fn t_adic_smzv(k: &Index, order: usize, ev: &Evaluator) -> TSeries {
    let coeffs = (0..order as u32)
        .map(|j| {
            ev.eval_combination(&smzv_coefficient_symbolic(k, j))
                .expect("zeta_star support is admissible")
        })
        .collect();
    TSeries::Numeric { coeffs, digits: ev.precision_digits() }
}

/// The same series computed straight from the definition: for each split
/// of `k`, the product of the real numbers `zeta_star(prefix)` and
/// `zeta_star_j(reversed suffix)`, with the sign `(-1)^{w(suffix)}`.
pub fn t_adic_smzv_definitional(k: &Index, order: usize, ev: &Evaluator) -> TSeries {
    let mut coeffs = Vec::with_capacity(order);
    for j in 0..order as u32 {
        let mut total = ev.zero();
        for i in 0..=k.depth() {
            let sign = alt_sign(k.suffix_weight(i));
            let prefix = ev.zeta_star_combination(&IndexCombination::from_index(k.prefix(i)));
            let suffix = ev
                .eval_combination(&zeta_star_m_symbolic(j, &k.suffix_reversed(i)))
                .expect("zeta_star support is admissible");
            total = total.add(&prefix.mul(&suffix).mul_rat(&sign));
        }
        coeffs.push(total);
    }
    TSeries::Numeric { coeffs, digits: ev.precision_digits() }
}

/// Regularized `mIn(k)`: the coefficient machinery of the (s,t)-adic
/// series; `(m,n) = (1,1)` is the coefficient of `-s t`.
pub fn stadic_coefficient(m: u32, n: u32, k: &Index) -> IndexCombination {
    zeta_star_symbolic_combination(&m_i_n(m, n, k))
}

fn zs(ev: &Evaluator, n: u32) -> BigReal {
    ev.zeta_star_single(n)
}

/// `2 (-4)^n / (4n+2)! * pi^{4n}`: the constant coefficient shared by both
/// alternating-index closed forms.
fn leading_coefficient(n: u32, ev: &Evaluator) -> BigReal {
    let c = rat_int(2) * neg4_pow(i64::from(n)) * inv_factorial(u64::from(4 * n + 2));
    ev.pi_pow(4 * n).mul_rat(&c)
}

/// Closed form for the order-2 series at `{1,3}^n`.
pub fn thm11_rhs(n: u32, ev: &Evaluator) -> TSeries {
    let t0 = leading_coefficient(n, ev);
    let mut t1 = ev.zero();
    for n0 in 0..=n {
        let n1 = n - n0;
        let c = neg4_pow(i64::from(n0) + 1)
            * (rat_int(2) - neg4_pow(-i64::from(n1)))
            * inv_factorial(u64::from(4 * n0 + 2));
        t1 = t1.add(&ev.pi_pow(4 * n0).mul_rat(&c).mul(&zs(ev, 4 * n1 + 1)));
    }
    let mut odd_sum = ev.zero();
    for n0 in (1..2 * n).step_by(2) {
        let n1 = 2 * n - n0;
        let c = two_pow(i64::from(n0) - i64::from(n1) + 2) * inv_factorial(u64::from(2 * n0 + 2));
        odd_sum = odd_sum.add(&ev.pi_pow(2 * n0).mul_rat(&c).mul(&zs(ev, 2 * n1 + 1)));
    }
    t1 = t1.sub(&odd_sum.mul_rat(&alt_sign(u64::from(n))));
    TSeries::Numeric { coeffs: vec![t0, t1], digits: ev.precision_digits() }
}

/// Closed form for the order-3 series at `{3,1}^n`.
pub fn thm13_rhs(n: u32, ev: &Evaluator) -> TSeries {
    let t0 = leading_coefficient(n, ev);
    let mut t1 = ev.zero();
    for n0 in 0..=2 * n {
        let n1 = 2 * n - n0;
        let c = alt_sign(u64::from(n) + 1)
            * alt_sign(u64::from(n0))
            * two_pow(i64::from(n0) - i64::from(n1) + 2)
            * inv_factorial(u64::from(2 * n0 + 2));
        t1 = t1.add(&ev.pi_pow(2 * n0).mul_rat(&c).mul(&zs(ev, 2 * n1 + 1)));
    }
    let mut t2 = ev.zero();
    for n0 in 0..=2 * n {
        for n1 in 0..=2 * n - n0 {
            let n2 = 2 * n - n0 - n1;
            let c = alt_sign(u64::from(n))
                * alt_sign(u64::from(n0))
                * two_pow(i64::from(n0) - i64::from(n1) - i64::from(n2) + 2)
                * inv_factorial(u64::from(2 * n0 + 2));
            t2 = t2.add(
                &ev.pi_pow(2 * n0)
                    .mul_rat(&c)
                    .mul(&zs(ev, 2 * n1 + 1))
                    .mul(&zs(ev, 2 * n2 + 1)),
            );
        }
    }
    TSeries::Numeric { coeffs: vec![t0, t1, t2], digits: ev.precision_digits() }
}

/// The `pi^2`-reduced form of the `{3,1}^n` series, as symbolic
/// combinations: `delta_{n,0} - 2(-4)^{-n} zs(4n+1) t
/// + 2(-4)^{-n} sum_{n1+n2=2n} zs(2n1+1) zs(2n2+1) t^2`.
pub fn thm13_rhs_mod_pi2(n: u32) -> TSeries {
    let t0 = if n == 0 { IndexCombination::unit() } else { IndexCombination::zero() };
    let t1 = single_zeta_star(4 * n + 1).scaled(&(rat_int(-2) * neg4_pow(-i64::from(n))));
    let mut t2 = IndexCombination::zero();
    for n1 in 0..=2 * n {
        let n2 = 2 * n - n1;
        t2.add_assign(&zeta_star_product(2 * n1 + 1, 2 * n2 + 1));
    }
    let t2 = t2.scaled(&(rat_int(2) * neg4_pow(-i64::from(n))));
    TSeries::Symbolic { coeffs: vec![t0, t1, t2] }
}

/// Right-hand side of the order-3 congruence for `{1,3}^n`, numerically:
/// `delta_{n,0} + 2((-4)^{-n} - 2) zs(4n+1) t + (-2(-4)^{-n}
/// sum_{n1+n2=n-1} zeta(4n1+3) zeta(4n2+3) + 2 sum_{n1+n2=n}
/// ((-4)^{-n1}-2)((-4)^{-n2}-2) zs(4n1+1) zs(4n2+1)) t^2`.
pub fn main_rhs(n: u32, ev: &Evaluator) -> TSeries {
    let t0 = if n == 0 { ev.one() } else { ev.zero() };
    let c1 = rat_int(2) * (neg4_pow(-i64::from(n)) - rat_int(2));
    let t1 = zs(ev, 4 * n + 1).mul_rat(&c1);
    let mut t2 = ev.zero();
    if n >= 1 {
        let mut odd_products = ev.zero();
        for n1 in 0..=n - 1 {
            let n2 = n - 1 - n1;
            odd_products = odd_products.add(&zs(ev, 4 * n1 + 3).mul(&zs(ev, 4 * n2 + 3)));
        }
        t2 = t2.add(&odd_products.mul_rat(&(rat_int(-2) * neg4_pow(-i64::from(n)))));
    }
    let mut star_products = ev.zero();
    for n1 in 0..=n {
        let n2 = n - n1;
        let c = (neg4_pow(-i64::from(n1)) - rat_int(2)) * (neg4_pow(-i64::from(n2)) - rat_int(2));
        star_products = star_products.add(&zs(ev, 4 * n1 + 1).mul(&zs(ev, 4 * n2 + 1)).mul_rat(&c));
    }
    t2 = t2.add(&star_products.mul_rat(&rat_int(2)));
    TSeries::Numeric { coeffs: vec![t0, t1, t2], digits: ev.precision_digits() }
}

/// `zeta_star` image of a single entry as a combination.
fn single_zeta_star(n: u32) -> IndexCombination {
    if n == 1 {
        IndexCombination::zero()
    } else {
        IndexCombination::from_index(Index::single(n))
    }
}

/// Symbolic representative of `zeta_star(a) zeta_star(b)`: the
/// `zeta_star` image of the stuffle product `(a)*(b)`.
fn zeta_star_product(a: u32, b: u32) -> IndexCombination {
    if a == 1 || b == 1 {
        return IndexCombination::zero();
    }
    let prod = crate::index_algebra::stuffle_indices(&Index::single(a), &Index::single(b));
    (*prod).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn idx(entries: &[u32]) -> Index {
        Index::new(entries.to_vec()).unwrap()
    }

    fn assert_close(a: &BigReal, b: &BigReal, p: i64) {
        assert!(a.sub(b).abs_le_pow10(p), "{} vs {}", a.to_decimal(40), b.to_decimal(40));
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(smzv_coefficient_symbolic(&Index::empty(), 0), IndexCombination::unit());
        assert_eq!(
            smzv_coefficient_symbolic(&idx(&[1, 3]), 0),
            IndexCombination::from_terms([(idx(&[4]), rat(-1, 1))])
        );
        assert!(smzv_coefficient_symbolic(&idx(&[1]), 0).is_zero());
    }

    #[test]
    fn empty_index_series_is_one() {
        let ev = Evaluator::with_digits(40);
        let s = t_adic_smzv(&Index::empty(), 3, &ev);
        assert_close(s.numeric_coefficient(0).unwrap(), &ev.one(), 39);
        assert!(s.numeric_coefficient(1).unwrap().abs_le_pow10(39));
        assert!(s.numeric_coefficient(2).unwrap().abs_le_pow10(39));
    }

    #[test]
    fn t0_of_one_three_is_minus_zeta4() {
        let ev = Evaluator::with_digits(50);
        let s = t_adic_smzv(&idx(&[1, 3]), 1, &ev);
        let z4 = ev.eval_admissible(&idx(&[4])).unwrap();
        assert_close(s.numeric_coefficient(0).unwrap(), &z4.neg(), 45);
    }

    #[test]
    fn definitional_route_agrees() {
        let ev = Evaluator::with_digits(45);
        for k in [idx(&[1, 3]), idx(&[3, 1]), idx(&[2, 1]), idx(&[1, 3, 1, 3]), Index::empty()] {
            let a = t_adic_smzv(&k, 3, &ev);
            let b = t_adic_smzv_definitional(&k, 3, &ev);
            for j in 0..3 {
                assert_close(
                    a.numeric_coefficient(j).unwrap(),
                    b.numeric_coefficient(j).unwrap(),
                    38,
                );
            }
        }
    }

    #[test]
    fn thm11_matches_series_n1() {
        let ev = Evaluator::with_digits(50);
        let lhs = t_adic_smzv(&idx(&[1, 3]), 2, &ev);
        let rhs = thm11_rhs(1, &ev);
        for j in 0..2 {
            assert_close(
                lhs.numeric_coefficient(j).unwrap(),
                rhs.numeric_coefficient(j).unwrap(),
                42,
            );
        }
    }

    #[test]
    fn thm13_matches_series_n1() {
        let ev = Evaluator::with_digits(50);
        let lhs = t_adic_smzv(&idx(&[3, 1]), 3, &ev);
        let rhs = thm13_rhs(1, &ev);
        for j in 0..3 {
            assert_close(
                lhs.numeric_coefficient(j).unwrap(),
                rhs.numeric_coefficient(j).unwrap(),
                42,
            );
        }
    }

    #[test]
    fn order_zero_series() {
        let ev = Evaluator::with_digits(40);
        let s11 = thm11_rhs(0, &ev);
        assert_close(s11.numeric_coefficient(0).unwrap(), &ev.one(), 38);
        assert!(s11.numeric_coefficient(1).unwrap().abs_le_pow10(38));
        let s13 = thm13_rhs(0, &ev);
        assert_close(s13.numeric_coefficient(0).unwrap(), &ev.one(), 38);
        assert!(s13.numeric_coefficient(1).unwrap().abs_le_pow10(38));
        assert!(s13.numeric_coefficient(2).unwrap().abs_le_pow10(38));
        let m = main_rhs(0, &ev);
        assert_close(m.numeric_coefficient(0).unwrap(), &ev.one(), 38);
        assert!(m.numeric_coefficient(1).unwrap().abs_le_pow10(38));
        assert!(m.numeric_coefficient(2).unwrap().abs_le_pow10(38));
    }

    #[test]
    fn main_rhs_t2_n1_is_half_zeta3_squared() {
        let ev = Evaluator::with_digits(50);
        let m = main_rhs(1, &ev);
        let z3 = ev.eval_admissible(&idx(&[3])).unwrap();
        let expected = z3.mul(&z3).mul_rat(&rat(1, 2));
        assert_close(m.numeric_coefficient(2).unwrap(), &expected, 45);
    }

    #[test]
    fn thm13_mod_pi2_n1_t1_is_half_zeta5() {
        let ev = Evaluator::with_digits(50);
        let s = thm13_rhs_mod_pi2(1);
        let t1 = ev.eval_combination(s.symbolic_coefficient(1).unwrap()).unwrap();
        let expected = ev.eval_admissible(&idx(&[5])).unwrap().mul_rat(&rat(1, 2));
        assert_close(&t1, &expected, 45);
        // n=0 collapses to the constant series 1
        let s0 = thm13_rhs_mod_pi2(0);
        assert_eq!(s0.symbolic_coefficient(0).unwrap(), &IndexCombination::unit());
        assert!(s0.symbolic_coefficient(1).unwrap().is_zero());
        assert!(s0.symbolic_coefficient(2).unwrap().is_zero());
    }

    #[test]
    fn stadic_examples() {
        assert_eq!(stadic_coefficient(0, 0, &Index::empty()), IndexCombination::unit());
        assert!(stadic_coefficient(1, 1, &idx(&[1])).is_zero());
        // 1I1((1,3)) = -3(2,4) - 3(4,2) - 3(6), already admissible
        let x = stadic_coefficient(1, 1, &idx(&[1, 3]));
        assert_eq!(
            x,
            IndexCombination::from_terms([
                (idx(&[2, 4]), rat(-3, 1)),
                (idx(&[4, 2]), rat(-3, 1)),
                (idx(&[6]), rat(-3, 1)),
            ])
        );
    }

    #[test]
    fn serde_numeric_and_symbolic() {
        let ev = Evaluator::with_digits(30);
        let s = t_adic_smzv(&idx(&[1, 3]), 2, &ev);
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.starts_with(r#"{"order":2,"coeffs":["#), "{json}");
        let back: TSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), json);

        let sym = t_adic_smzv_symbolic(&idx(&[1, 3]), 2);
        let json = serde_json::to_string(&sym).unwrap();
        let back: TSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sym);
    }
}
