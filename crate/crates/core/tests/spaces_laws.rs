mod common;

use coda::builtins::builtin_names;
use coda::eval::run;
use coda::language::head;
use coda::spaces::*;
use coda::{standard, Data, LogicValue, SearchError};
use common::units;

fn cfg(count: usize) -> SampleConfig {
    SampleConfig { count, ..SampleConfig::default() }
}

fn recheck(ctx: &coda::Context, report: &LawReport) {
    let cx = report.counterexample.as_ref().expect("failed law carries a witness");
    let l = run(ctx, cx.lhs.clone(), 30);
    let r = run(ctx, cx.rhs.clone(), 30);
    assert_eq!(l.last(), &cx.lhs_result);
    assert_eq!(r.last(), &cx.rhs_result);
    assert_ne!(l.last(), r.last());
}

#[test]
fn spaces_pass() {
    let ctx = standard();
    for s in ["sum n", "prod n", "type n", "null", "pass", "sort n", "bool*(aps not)"] {
        let report = check_space(&ctx, &subject(s), &cfg(100));
        assert!(report.passed, "{}", report.to_text());
        assert!(report.counterexample.is_none());
        assert!(report.conclusive >= 100);
    }
}

#[test]
fn aps_not_is_not_quite_a_space() {
    let ctx = standard();
    let report = check_space(&ctx, &subject("aps not"), &cfg(200));
    assert!(!report.passed);
    recheck(&ctx, &report);
}

#[test]
fn morphisms() {
    let ctx = standard();
    let sum = subject("sum n");
    let double = check_morphism(&ctx, &subject("double"), &sum, &sum, &cfg(100));
    assert!(double.passed, "{}", double.to_text());
    let square = check_morphism(&ctx, &subject("square"), &sum, &sum, &cfg(100));
    assert!(!square.passed);
    recheck(&ctx, &square);
}

#[test]
fn typed_sandwich_is_a_morphism() {
    let ctx = standard();
    let ty = subject("type n");
    let fs: Vec<Data> = vec![
        Data::words("rev"),
        Data::words("first"),
        Data::words("dup"),
        Data::words("double"),
        Data::words("null"),
        Data::words("sort n"),
        Data::unit(),
    ];
    for f in fs {
        let mut sandwich = head(b"type n * A * type n : B");
        sandwich.extend(f.iter().cloned());
        let report = check_morphism(&ctx, &sandwich, &ty, &ty, &cfg(40));
        assert!(report.passed, "{}", report.to_text());
    }
}

#[test]
fn antispaces() {
    let ctx = standard();
    let signed = check_antispace(&ctx, &subject("zsum"), &subject("zneg"), &cfg(100));
    assert!(signed.passed, "{}", signed.to_text());
    let null = check_antispace(&ctx, &subject("null"), &subject("null"), &cfg(50));
    assert!(null.passed);
    let bad = check_antispace(&ctx, &subject("sum n"), &subject("null"), &cfg(50));
    assert!(!bad.passed);
    recheck(&ctx, &bad);
}

#[test]
fn unary_laws() {
    let ctx = standard();
    let idem = check_unary_law(&ctx, &subject("type n"), UnaryLaw::Idempotent, &cfg(100));
    assert!(idem.passed);
    let abelian = check_unary_law(&ctx, &subject("sum n"), UnaryLaw::Abelian, &cfg(100));
    assert!(abelian.passed);
    let order = check_unary_law(&ctx, &subject("pass"), UnaryLaw::Abelian, &cfg(100));
    assert!(!order.passed);
    recheck(&ctx, &order);
}

#[test]
fn distributive_implies_idempotent() {
    let ctx = standard();
    for s in ["type n", "pass", "null", "double", "square", "rev", "sum n", "coda", "posint"] {
        let dist = check_unary_law(&ctx, &subject(s), UnaryLaw::Distributive, &cfg(50));
        if dist.passed {
            let idem = check_unary_law(&ctx, &subject(s), UnaryLaw::Idempotent, &cfg(50));
            // double distributes without being idempotent; only spaces qualify
            let space = check_space(&ctx, &subject(s), &cfg(50));
            if space.passed {
                assert!(idem.passed, "{s}");
            }
        }
    }
}

#[test]
fn signed_sum_is_a_group() {
    let ctx = standard();
    for report in check_group(&ctx, &subject("zsum"), &subject("zneg"), &cfg(60)) {
        assert!(report.passed, "{}", report.to_text());
    }
}

fn parity_samples() -> (Vec<Data>, Vec<Data>) {
    let pos = (0..10).map(|i| units(2 * i)).collect();
    let neg = (0..10).map(|i| units(2 * i + 1)).collect();
    (pos, neg)
}

fn vocabulary() -> Vec<String> {
    builtin_names().iter().map(|s| s.to_string()).collect()
}

#[test]
fn parity_search_finds_aps_not() {
    let ctx = standard();
    let (pos, neg) = parity_samples();
    let report = search_classifier(&ctx, &pos, &neg, &vocabulary(), 2, &SampleConfig { budget: 10, ..cfg(1) }).unwrap();
    let n = vocabulary().len();
    assert_eq!(report.tried, n + n * n);
    let hit = report.accepted.iter().find(|c| c.source == "aps not").expect("aps not accepted");
    assert_eq!(hit.polarity, LogicValue::True);
    assert_eq!(hit.data, Data::words("aps not"));
    let again = search_classifier(&ctx, &pos, &neg, &vocabulary(), 2, &SampleConfig { budget: 10, ..cfg(1) }).unwrap();
    assert_eq!(report.accepted, again.accepted);
}

#[test]
fn search_rejections() {
    let ctx = standard();
    let (pos, neg) = parity_samples();
    let same = search_classifier(&ctx, &pos, &pos, &vocabulary(), 1, &cfg(1)).unwrap();
    assert!(same.accepted.is_empty());
    let pass_only = search_classifier(&ctx, &pos[1..], &neg, &["pass".to_string()], 1, &cfg(1)).unwrap();
    assert!(pass_only.accepted.is_empty());
    assert_eq!(
        search_classifier(&ctx, &pos, &neg, &[], 2, &cfg(1)).unwrap_err(),
        SearchError::EmptyVocabulary
    );
    assert_eq!(
        search_classifier(&ctx, &[], &neg, &vocabulary(), 2, &cfg(1)).unwrap_err(),
        SearchError::EmptySamples
    );
}

#[test]
fn random_search_is_reproducible() {
    let ctx = standard();
    let (pos, neg) = parity_samples();
    let c = SampleConfig { seed: 3, max_width: 2, budget: 10, ..cfg(1) };
    let a = search_random(&ctx, &pos, &neg, &vocabulary(), 500, &c).unwrap();
    let b = search_random(&ctx, &pos, &neg, &vocabulary(), 500, &c).unwrap();
    assert_eq!(a.tried, 500);
    assert_eq!(a.accepted, b.accepted);
    for cand in &a.accepted {
        assert!(accepts(&ctx, &cand.data, &pos, &neg, 10).is_some());
    }
}
