//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line.  Run with `cargo test -p mzv-core --test acceptance --
//! --nocapture` to see the lines.

use once_cell::sync::Lazy;
use num::{BigInt, Signed, Zero};

use mzv_core::index_algebra::{index_shuffle_indices, stuffle, stuffle_indices, Index, IndexCombination};
use mzv_core::numeric_eval::{EvalConfig, Evaluator, ValueCache};
use mzv_core::rational::{binomial, Rat};
use mzv_core::regularization::{regularize, regularize_index};
use mzv_core::relations::{run_suite, SuiteReport};

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn report(name: &str) -> SuiteReport {
    run_suite(name, &cfg(), &[]).expect("known suite")
}

fn announce(criterion: &str, ok: bool) -> bool {
    println!("{}: criterion {criterion}", if ok { "PASS" } else { "FAIL" });
    ok
}

/// `residual` strings look like `1e-63`; true when the bound is at most
/// `10^-p`.
fn residual_le(residual: &str, p: u32) -> bool {
    residual
        .strip_prefix("1e-")
        .and_then(|e| e.parse::<u32>().ok())
        .is_some_and(|e| e >= p)
}

static EXCEPTIONAL: Lazy<SuiteReport> = Lazy::new(|| report("exceptional-coefficients"));

#[test]
fn criterion_1_symbolic_lemma_suites() {
    let mut ok = true;
    for suite in ["lemma2.1", "lemma2.2", "lemma2.3", "lemma2.4", "lemma2.5", "lemma2.7"] {
        let r = report(suite);
        let passed = r.passed();
        if !passed {
            eprintln!("  {suite} failures: {:?}", r.cases.iter().filter(|c| !c.status.is_pass()).collect::<Vec<_>>());
        }
        ok &= passed;
    }
    assert!(announce("1: symbolic lemma suites, exact and exhaustive", ok));
}

#[test]
fn criterion_2_closed_form_numerics() {
    let r = report("closed-forms");
    let ok = r.passed()
        && r.digits >= 60
        && r.cases.iter().all(|c| c.residual.as_deref().is_some_and(|s| residual_le(s, 50)));
    assert!(announce("2: closed-form numerics at 60 digits within 1e-50", ok), "{r:?}");
}

#[test]
fn criterion_3_theorem_1_1() {
    let r = report("thm1.1");
    let ok = r.passed()
        && r.cases.len() == 6
        && r.cases.iter().all(|c| c.residual.as_deref().is_some_and(|s| residual_le(s, 50)));
    assert!(announce("3: order-2 series at {1,3}^n matches closed form within 1e-50", ok), "{r:?}");
}

#[test]
fn criterion_4_theorem_1_3() {
    let r = report("thm1.3");
    let ok = r.passed()
        && r.cases.len() == 9
        && r.cases.iter().all(|c| c.residual.as_deref().is_some_and(|s| residual_le(s, 50)));
    assert!(announce("4: order-3 series at {3,1}^n matches closed form within 1e-50", ok), "{r:?}");
}

#[test]
fn criterion_5_exceptional_exact_t2() {
    let case = EXCEPTIONAL
        .cases
        .iter()
        .find(|c| c.case.starts_with("t^2"))
        .expect("exceptional suite has the exact t^2 case");
    let ok = case.status.is_pass()
        && case.residual.as_deref().is_some_and(|s| residual_le(s, 30))
        && EXCEPTIONAL.digits >= 50;
    assert!(announce("5: exact t^2 coefficient at (1,3,1,3) within 1e-30", ok), "{case:?}");
}

#[test]
fn criterion_6_mod_pi2_certificates() {
    let mut ok = true;
    for suite in ["main", "lemma2.8", "lemma2.10", "prop2.11"] {
        let r = report(suite);
        for case in &r.cases {
            let mut case_ok = case.status.is_pass();
            if let Some(cert) = &case.certificate {
                case_ok &= residual_le(&cert.residual, 50);
                case_ok &= cert
                    .relation_ints()
                    .iter()
                    .all(|c| c.abs() <= BigInt::from(1_000_000));
            } else {
                case_ok = false;
            }
            if !case_ok {
                eprintln!("  {suite} / {}: {:?}", case.case, case.status);
                ok = false;
            }
        }
    }
    assert!(announce(
        "6: congruence certificates (residual <= 1e-50, coefficients <= 1e6)",
        ok
    ));
}

#[test]
fn criterion_7_weight_eleven_reproduction() {
    let cases: Vec<_> =
        EXCEPTIONAL.cases.iter().filter(|c| c.case.starts_with("t^3")).collect();
    let mut ok = cases.len() == 2 && EXCEPTIONAL.digits >= 80;
    for case in &cases {
        ok &= case.status.is_pass();
        let cert = match &case.certificate {
            Some(c) => c,
            None => {
                ok = false;
                continue;
            }
        };
        ok &= residual_le(&cert.residual, 50);
        let rel = cert.relation_ints();
        // scaling <= 120, coefficients <= 1e6
        ok &= !rel[0].is_zero() && rel[0].abs() <= BigInt::from(120);
        ok &= rel.iter().all(|c| c.abs() <= BigInt::from(1_000_000));
    }
    assert!(announce("7: weight-11 printed combinations recovered mod pi^2", ok));
}

#[test]
fn criterion_8_property_suites() {
    let mut all_ok = true;
    let mut component = |name: &str, ok: bool| {
        println!("  {}: {name}", if ok { "ok" } else { "FAILED" });
        all_ok &= ok;
    };

    let indices = {
        let mut out = vec![Index::empty()];
        fn exact(prefix: &mut Vec<u32>, left: u32, out: &mut Vec<Index>) {
            if left == 0 {
                out.push(Index::new(prefix.clone()).unwrap());
                return;
            }
            for e in 1..=left {
                prefix.push(e);
                exact(prefix, left - e, out);
                prefix.pop();
            }
        }
        for w in 1..=4 {
            exact(&mut Vec::new(), w, &mut out);
        }
        out
    };

    // stuffle commutativity and associativity
    let mut ok = true;
    for k in &indices {
        for l in &indices {
            ok &= *stuffle_indices(k, l) == *stuffle_indices(l, k);
        }
    }
    let small: Vec<_> = indices.iter().filter(|k| k.weight() <= 3).cloned().collect();
    for k in &small {
        for l in &small {
            for m in &small {
                let lhs = stuffle(&stuffle_indices(k, l), &IndexCombination::from_index(m.clone()));
                let rhs = stuffle(&IndexCombination::from_index(k.clone()), &stuffle_indices(l, m));
                ok &= lhs == rhs;
            }
        }
    }
    component("stuffle commutativity/associativity", ok);

    // weight grading and shuffle multiplicity
    let mut ok = true;
    for k in &indices {
        for l in &indices {
            let w = k.weight() + l.weight();
            ok &= stuffle_indices(k, l).iter().all(|(t, _)| t.weight() == w);
            let sh = index_shuffle_indices(k, l);
            ok &= sh.iter().all(|(t, _)| t.weight() == w);
            ok &= sh.total_coefficient()
                == Rat::from_integer(binomial((k.depth() + l.depth()) as u64, k.depth() as u64));
        }
    }
    component("weight grading and shuffle multiplicity", ok);

    // regularization homomorphism
    let mut ok = true;
    for k in &indices {
        for l in &indices {
            let prod = stuffle(
                &IndexCombination::from_index(k.clone()),
                &IndexCombination::from_index(l.clone()),
            );
            ok &= regularize(&prod) == regularize_index(k).mul(&regularize_index(l));
        }
    }
    component("regularization homomorphism", ok);

    // precision re-evaluation stability at +20 digits
    let mut ok = true;
    let lo = Evaluator::with_digits(60);
    let hi = Evaluator::with_digits(80);
    for entries in [&[16][..], &[4, 4, 4, 4], &[1, 3, 1, 3, 1, 3, 1, 3], &[2, 1, 1, 2, 5, 5]] {
        let k = Index::new(entries.to_vec()).unwrap();
        let a = lo.eval_admissible(&k).unwrap();
        let b = hi.eval_admissible(&k).unwrap().with_bits(a.bits());
        ok &= a.sub(&b).abs_le_pow10(60);
    }
    component("precision re-evaluation stability (+20 digits)", ok);

    // cache round-trip
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let k = Index::new(vec![2, 3]).unwrap();
    let written = {
        let cache = ValueCache::open(&path).unwrap();
        cache.put(&k, 60, "0.2288").unwrap();
        cache.put(&k, 60, "0.22881039760335375976").unwrap();
        cache.get(&k, 60).unwrap()
    };
    let reopened = ValueCache::open(&path).unwrap();
    let ok = written == "0.22881039760335375976" && reopened.get(&k, 60).as_deref() == Some(written.as_str());
    component("cache round-trip (append-only, last record wins)", ok);

    assert!(announce("8: property suites from the module invariants", all_ok));
}
