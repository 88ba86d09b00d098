mod common;

use std::collections::BTreeSet;

use coda::builtins::next_sequence;
use coda::demos::*;
use coda::{classify, compile, evaluate, render_string, standard, LogicValue};
use common::lit;

#[test]
fn consistency_never_decides() {
    let report = consistency_demo(10, b"abc", false);
    let ctx = &report.trace.context;
    assert_eq!(report.trace.steps.len(), 11);
    for data in &report.trace.steps {
        assert!(data.iter().all(|c| !ctx.is_atom(c)), "{}", render_string(data));
        assert!(!data.is_empty());
        assert_eq!(classify(data, ctx), LogicValue::Undecided);
    }
    let last = report.trace.last();
    assert!(render_string(&last[last.len() - 1..].into()).contains("allByteSequences"));
    let counts: Vec<usize> = report.trace.steps.iter().map(|d| resolved_count(d, b"abc")).collect();
    assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{counts:?}");
    assert!(*counts.last().unwrap() > 0);
    assert_ne!(report.verdict, Verdict::TrueData);
    assert_ne!(report.verdict, Verdict::FalseData);
}

#[test]
fn consistency_single_step_and_self_inclusion() {
    let one = consistency_demo(1, b"a", false);
    assert_eq!(one.trace.steps.len(), 2);
    assert_eq!(one.trace.logic, LogicValue::Undecided);

    let selfish = consistency_demo(12, b"a", true);
    assert_eq!(selfish.self_inclusion, Some(SelfInclusion::Injected));
    assert!(selfish.trace.steps.iter().any(self_inclusion_observed));
    assert_eq!(selfish.trace.logic, LogicValue::Undecided);
}

#[test]
fn godel_nests_one_not_per_step() {
    let report = godel_demo(9);
    assert_eq!(not_nesting(report.trace.last()), 9);
    assert_eq!(report.verdict, Verdict::UndecidableHint);
    for (i, data) in report.trace.steps.iter().enumerate() {
        assert_eq!(classify(data, &report.trace.context), LogicValue::Undecided);
        assert_eq!(not_nesting(data), i.saturating_sub(1));
    }
    let shallow = godel_demo(1);
    assert_eq!(not_nesting(shallow.trace.last()), 1);
    assert!(render_string(shallow.trace.last()).starts_with("(not:(?:"));
}

#[test]
fn curry_waits_forever() {
    let report = curry_demo(10);
    assert_eq!(report.trace.logic, LogicValue::Undecided);
    assert_eq!(report.verdict, Verdict::UndecidableHint);
    let table = |s: &str| render_string(evaluate(&standard(), lit(s), 5).last());
    assert_eq!(table("(imply:)"), "()");
    assert_eq!(table("(imply:a)"), "(:)");
}

#[test]
fn yablo_stays_undecided_through_twenty() {
    let report = yablo_demo(20);
    assert_eq!(report.trace.steps.len(), 21);
    for data in &report.trace.steps {
        assert_eq!(classify(data, &report.trace.context), LogicValue::Undecided);
    }
    assert!(report.trace.steps.iter().any(|d| render_string(d).contains("Yablo")));
    assert_eq!(report.verdict, Verdict::UndecidableHint);
}

/// Smallest positive integer not named by a source of at most `max_len`
/// bytes, by evaluating every such source on its own.
fn berry_oracle(max_len: usize, alphabet: &[u8]) -> u64 {
    let ctx = standard();
    let mut named = BTreeSet::new();
    let mut s: Vec<u8> = Vec::new();
    while s.len() <= max_len {
        let trace = evaluate(&ctx, compile(&s), 20);
        for c in trace.last().iter() {
            let text = c.as_str().map(String::from).or_else(|| {
                let r = render_string(&c.clone().into());
                r.strip_prefix("(n:").and_then(|x| x.strip_suffix(')')).map(String::from)
            });
            if let Some(k) = text.filter(|t| !t.starts_with('0')).and_then(|t| t.parse::<u64>().ok()) {
                named.insert(k);
            }
        }
        s = next_sequence(&s, alphabet).unwrap();
    }
    (1..).find(|k| !named.contains(k)).unwrap()
}

#[test]
fn berry_control_matches_enumeration() {
    for (max_len, alphabet, budget) in [(1, &b"123"[..], 20), (2, &b"12"[..], 30), (1, &b"1a"[..], 20)] {
        let report = berry_demo(&BerryOptions { max_len, alphabet: alphabet.to_vec(), self_include: false, budget });
        assert_eq!(report.self_inclusion, Some(SelfInclusion::NotSelfIncluding));
        let expected = berry_oracle(max_len, alphabet).to_string();
        assert_eq!(render_string(report.trace.last()), expected);
    }
    assert_eq!(berry_oracle(1, b"123"), 4);
}

#[test]
fn berry_with_itself_never_answers() {
    let report = berry_demo(&BerryOptions { max_len: 1, alphabet: b"123".to_vec(), self_include: true, budget: 20 });
    assert_eq!(report.self_inclusion, Some(SelfInclusion::Injected));
    for data in &report.trace.steps {
        assert_ne!(classify(data, &report.trace.context), LogicValue::False);
    }
    assert_eq!(report.verdict, Verdict::UndecidableHint);
}

#[test]
fn demos_are_deterministic() {
    for name in DEMO_NAMES {
        let a = run_demo(name, 8, None).unwrap().to_text();
        let b = run_demo(name, 8, None).unwrap().to_text();
        assert_eq!(a, b);
    }
    assert!(run_demo("nope", 8, None).is_none());
}
