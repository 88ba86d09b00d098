//! The standard definition library.
//!
//! Every rule here is a pure function of the coda and its context. Rules
//! that consume sequences wait (do not fire) until the items they need are
//! atoms, because only atoms are guaranteed never to change.

use crate::context::{Call, Context, Definition, NativeFn, Rewrite};
use crate::data::{Coda, Data, DomainKey};
use crate::error::ContextError;
use crate::eval::{classify, LogicValue};
use crate::language::language_rule;

mod apply;
mod defs;
mod enumerate;
mod logic;
pub mod numeric;
mod sequence;

pub use enumerate::next_sequence;
pub use numeric::{natural, natural_coda};

/// Domains that only carry an identity rule, making their codas atoms:
/// naturals `(n:k)`, integers `(z:k)` and error reports `(error:msg)`.
const ATOM_FAMILIES: &[&str] = &["n", "z", "error"];

const NATIVE: &[(&str, NativeFn)] = &[
    ("pass", sequence::pass),
    ("null", sequence::null),
    ("rev", sequence::rev),
    ("first", sequence::first),
    ("last", sequence::last),
    ("skip", sequence::skip),
    ("if", sequence::if_rule),
    ("count", sequence::count),
    ("dup", sequence::dup),
    ("ap", apply::ap),
    ("app", apply::app),
    ("ap2", apply::ap2),
    ("aps", apply::aps),
    ("apif", apply::apif),
    ("not", logic::not),
    ("and", logic::and),
    ("or", logic::or),
    ("xor", logic::xor),
    ("imply", logic::imply),
    ("bool", logic::bool_rule),
    ("=", logic::equal),
    ("def", defs::def),
    ("let", defs::let_rule),
    ("?", defs::lookup_binding),
    ("nat", numeric::nat),
    ("sum", numeric::sum),
    ("prod", numeric::prod),
    ("sort", numeric::sort),
    ("type", numeric::type_rule),
    ("double", numeric::double),
    ("square", numeric::square),
    ("zsum", numeric::zsum),
    ("zneg", numeric::zneg),
    ("coda", enumerate::coda),
    ("allByteSequences", enumerate::all_byte_sequences),
    ("bytes", enumerate::bytes),
    ("posint", enumerate::posint),
    ("berry", enumerate::berry),
];

/// Names of every native rule, in installation order.
pub fn builtin_names() -> Vec<&'static str> {
    NATIVE.iter().map(|(name, _)| *name).collect()
}

/// Extends `ctx` with the language and every builtin.
pub fn install_builtins(ctx: &Context) -> Result<Context, ContextError> {
    let mut ctx = ctx.extend(Definition::new(
        "{}",
        DomainKey::Coda(Coda::lang_marker()),
        crate::context::Rule::Native(language_rule),
    ))?;
    for name in ATOM_FAMILIES {
        ctx = ctx.extend(Definition::identity(*name, DomainKey::Coda(Coda::bytes(name))))?;
    }
    for (name, rule) in NATIVE {
        ctx = ctx.extend(Definition::native(name, *rule))?;
    }
    Ok(ctx)
}

/// Bootstrap plus builtins.
pub fn standard() -> Context {
    install_builtins(&Context::bootstrap()).expect("builtin names are distinct")
}

pub(crate) fn truth(value: bool) -> Data {
    if value {
        Data::empty()
    } else {
        Data::unit()
    }
}

pub(crate) fn logic_of(call: &Call<'_>, data: &Data) -> LogicValue {
    classify(data, call.ctx)
}

pub(crate) fn all_atoms(call: &Call<'_>, items: &[Coda]) -> bool {
    items.iter().all(|c| call.is_atom(c))
}

/// `(name arg : input)` as a single coda.
pub(crate) fn call_coda(name: &str, arg: &[Coda], input: Data) -> Coda {
    let mut left = Vec::with_capacity(arg.len() + 1);
    left.push(Coda::bytes(name));
    left.extend_from_slice(arg);
    Coda::new(Data::from(left), input)
}

/// Maps each item of the input independently: atoms through `f`, pending
/// items wrapped back into `(name arg : item)`. Does not fire on a single
/// pending item.
pub(crate) fn distribute(
    call: &Call<'_>,
    name: &str,
    mut f: impl FnMut(&Coda) -> Data,
) -> Option<Rewrite> {
    let items = call.input();
    if let [only] = &items[..] {
        if !call.is_atom(only) {
            return None;
        }
    }
    let mut out = Data::empty();
    for item in items.iter() {
        if call.is_atom(item) {
            out.extend(f(item));
        } else {
            out.push(call_coda(name, call.arg(), Data::single(item.clone())));
        }
    }
    Some(Rewrite::to(out))
}

/// Count taken from the first argument item, `default` when absent.
pub(crate) fn count_arg(arg: &[Coda], default: usize) -> Option<usize> {
    match arg.first() {
        None => Some(default),
        Some(c) => natural(c).and_then(|n| usize::try_from(n).ok()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn installs_enough_definitions() {
        let base = Context::bootstrap();
        let std = install_builtins(&base).unwrap();
        assert!(std.len() - base.len() >= 40, "only {} builtins", std.len() - base.len());
    }

    #[test]
    fn second_install_violates_the_axiom() {
        let err = install_builtins(&standard()).unwrap_err();
        assert!(matches!(err, ContextError::AxiomViolation { .. }));
    }

    #[test]
    fn families_are_atoms() {
        let ctx = standard();
        assert!(ctx.is_atom(&natural_coda(&8u32.into())));
        assert!(ctx.is_atom(&crate::context::error_datum("x")[0]));
    }
}
