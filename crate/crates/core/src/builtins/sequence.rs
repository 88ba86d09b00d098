//! Sequence manipulation.

use super::{all_atoms, call_coda, count_arg, logic_of, natural_coda};
use crate::data::Coda;
use crate::context::{Call, Rewrite};
use crate::data::Data;
use crate::eval::LogicValue;

/// `(pass : B) ↦ B`
pub fn pass(call: &Call<'_>) -> Option<Rewrite> {
    Some(Rewrite::to(call.input().clone()))
}

/// `(null : B) ↦ ()`
pub fn null(_: &Call<'_>) -> Option<Rewrite> {
    Some(Rewrite::to(Data::empty()))
}

/// Reverses the input. Pending items move into place wrapped in `rev`.
pub fn rev(call: &Call<'_>) -> Option<Rewrite> {
    let items = call.input();
    if items.len() == 1 && !call.is_atom(&items[0]) {
        return None;
    }
    let out = items
        .iter()
        .rev()
        .map(|c| {
            if call.is_atom(c) {
                c.clone()
            } else {
                call_coda("rev", &[], Data::single(c.clone()))
            }
        })
        .collect();
    Some(Rewrite::to(out))
}

/// Leading `n` atoms (default 1). Emits what it can and defers the rest.
pub fn first(call: &Call<'_>) -> Option<Rewrite> {
    let n = count_arg(call.arg(), 1)?;
    let items = call.input();
    let taken = items.iter().take(n).take_while(|c| call.is_atom(c)).count();
    if taken == n || taken == items.len() {
        return Some(Rewrite::to(items[..taken].into()));
    }
    if taken == 0 {
        return None;
    }
    let mut out: Data = items[..taken].into();
    let rest: Data = items[taken..].into();
    out.push(call_coda("first", &[Coda::bytes((n - taken).to_string())], rest));
    Some(Rewrite::to(out))
}

/// Trailing `n` atoms (default 1), once they are all atoms.
pub fn last(call: &Call<'_>) -> Option<Rewrite> {
    let n = count_arg(call.arg(), 1)?;
    let items = call.input();
    let tail = &items[items.len().saturating_sub(n)..];
    all_atoms(call, tail).then(|| Rewrite::to(tail.into()))
}

/// Drops `n` leading atoms (default 1).
pub fn skip(call: &Call<'_>) -> Option<Rewrite> {
    let n = count_arg(call.arg(), 1)?;
    let items = call.input();
    let dropped = items.iter().take(n).take_while(|c| call.is_atom(c)).count();
    if dropped == n || dropped == items.len() {
        return Some(Rewrite::to(items[dropped..].into()));
    }
    if dropped == 0 {
        return None;
    }
    let rest: Data = items[dropped..].into();
    let pending = call_coda("skip", &[Coda::bytes((n - dropped).to_string())], rest);
    Some(Rewrite::to(Data::single(pending)))
}

/// `(if A : B)` is `A` when `B` is true and `()` when `B` is false.
pub fn if_rule(call: &Call<'_>) -> Option<Rewrite> {
    match logic_of(call, call.input()) {
        LogicValue::True => Some(Rewrite::to(call.arg().into())),
        LogicValue::False => Some(Rewrite::to(Data::empty())),
        LogicValue::Undecided => None,
    }
}

/// Number of items, once all are atoms.
pub fn count(call: &Call<'_>) -> Option<Rewrite> {
    let items = call.input();
    all_atoms(call, items).then(|| Rewrite::to(Data::single(natural_coda(&items.len().into()))))
}

/// `(dup : B) ↦ B B`
pub fn dup(call: &Call<'_>) -> Option<Rewrite> {
    let b = call.input();
    Some(Rewrite::to(b.concat(b)))
}
