mod common;

use coda::context::{lookup, Rule};
use coda::{
    classify, render_string, standard, Coda, Context, ContextError, Data, Definition, DomainKey,
    LogicValue,
};
use common::lit;
use proptest::prelude::*;

fn stub(_: &coda::context::Call<'_>) -> Option<coda::context::Rewrite> {
    Some(coda::context::Rewrite::to(Data::bytes("stub")))
}

#[test]
fn empty_context_examples() {
    let empty = Context::empty();
    assert!(lookup(&empty, &Coda::unit()).is_none());
    assert_eq!(classify(&Data::empty(), &empty), LogicValue::True);
    let ctx = empty.extend(Definition::identity("unit", DomainKey::Empty)).unwrap();
    assert!(ctx.is_atom(&Coda::unit()));
}

#[test]
fn extend_examples() {
    let base = Context::bootstrap();
    let once = base.extend(Definition::native("foo", stub)).unwrap();
    let err = once.extend(Definition::native("foo", stub)).unwrap_err();
    assert!(matches!(err, ContextError::AxiomViolation { .. }));
    assert!(base.extend(Definition::native("myop", stub)).is_ok());

    let foobar = lit("(foo:bar)")[0].clone();
    let err = base.extend(Definition::new("bad", DomainKey::Coda(foobar), Rule::Identity)).unwrap_err();
    assert!(matches!(err, ContextError::InvalidDomain { .. }));
    let err = base.extend(Definition::new("e", DomainKey::Empty, Rule::Native(stub))).unwrap_err();
    assert!(matches!(err, ContextError::AxiomViolation { .. } | ContextError::InvalidDomain { .. }));
}

#[test]
fn lookup_examples() {
    let std = standard();
    let image = lookup(&std, &lit("(pass a:b)")[0]).unwrap();
    assert_eq!(render_string(&image), "b");
    assert!(lookup(&std, &lit("(foo:bar)")[0]).is_none());
    let one = Coda::bit1();
    assert_eq!(lookup(&std, &one).unwrap(), Data::single(one));
}

#[test]
fn atom_examples() {
    let boot = Context::bootstrap();
    assert!(boot.is_atom(&Coda::unit()));
    assert!(boot.is_atom(&lit("((:):(:))")[0]));
    assert!(!boot.is_atom(&lit("(foo:bar)")[0]));
    let std = standard();
    assert!(!std.is_atom(&lit("(pass a:b)")[0]));
    assert!(std.is_atom(&Coda::bytes("a")));
}

#[test]
fn extension_leaves_the_original_alone() {
    let base = standard();
    let call = lit("(fresh:x)")[0].clone();
    let before = base.lookup(&call).is_some();
    let grown = base.extend(Definition::native("fresh", stub)).unwrap();
    assert!(grown.lookup(&call).is_some());
    assert_eq!(base.lookup(&call).is_some(), before);
    assert!(!before);
}

#[test]
fn serialization_replays_user_records() {
    let mut ctx = standard();
    for src in ["def twice : {B} {B}", "let pair : a b", "def wrap : {(B)}"] {
        ctx = common::eval_src(&ctx, src, 10).context;
    }
    let text = ctx.serialize();
    assert_eq!(text.lines().count(), 3);
    let rebuilt = standard().replay(&text).unwrap();
    assert_eq!(rebuilt.serialize(), text);
    assert_eq!(render_string(common::eval_src(&rebuilt, "twice : x", 10).last()), "x x");
    assert_eq!(rebuilt.binding(b"pair"), ctx.binding(b"pair"));
    let err = ctx.replay(&text).unwrap_err();
    assert!(err.to_string().contains("axiom violation"));
}

fn fresh_names() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec("[a-z]{1,6}", 1..100)
}

proptest! {
    #[test]
    fn dispatch_stays_unique(names in fresh_names()) {
        let mut ctx = Context::bootstrap();
        let mut accepted = std::collections::HashSet::new();
        for name in &names {
            match ctx.extend(Definition::native(name, stub)) {
                Ok(next) => {
                    prop_assert!(accepted.insert(name.clone()));
                    ctx = next;
                }
                Err(ContextError::AxiomViolation { .. }) => prop_assert!(accepted.contains(name)),
                Err(other) => prop_assert!(false, "unexpected {other}"),
            }
        }
        let keys: Vec<DomainKey> = ctx.definitions().map(|d| d.domain.clone()).collect();
        let unique: std::collections::HashSet<_> = keys.iter().collect();
        prop_assert_eq!(keys.len(), unique.len());
        for name in &accepted {
            let key = DomainKey::Coda(Coda::bytes(name));
            prop_assert_eq!(ctx.definitions().filter(|d| d.domain == key).count(), 1);
        }
    }

    #[test]
    fn atoms_stay_atoms(names in fresh_names()) {
        let base = standard();
        let atoms = [Coda::unit(), Coda::bit0(), Coda::bytes("a"), lit("(n:3)")[0].clone(), lit("(:x y)")[0].clone()];
        let mut ctx = base.clone();
        for name in names.iter().take(100) {
            if let Ok(next) = ctx.extend(Definition::native(&format!("x{name}"), stub)) {
                ctx = next;
            }
            for a in &atoms {
                prop_assert!(ctx.is_atom(a));
            }
        }
    }
}
