//! Logic over the three-valued reading of data.

use super::{all_atoms, logic_of, truth};
use crate::context::{Call, Rewrite};
use crate::data::Data;
use crate::eval::LogicValue;

fn decided(call: &Call<'_>, data: &Data) -> Option<bool> {
    match logic_of(call, data) {
        LogicValue::True => Some(true),
        LogicValue::False => Some(false),
        LogicValue::Undecided => None,
    }
}

fn binary(call: &Call<'_>, op: fn(bool, bool) -> bool) -> Option<Rewrite> {
    let a = decided(call, &call.arg().into())?;
    let b = decided(call, call.input())?;
    Some(Rewrite::to(truth(op(a, b))))
}

pub fn not(call: &Call<'_>) -> Option<Rewrite> {
    decided(call, call.input()).map(|b| Rewrite::to(truth(!b)))
}

pub fn and(call: &Call<'_>) -> Option<Rewrite> {
    binary(call, |a, b| a && b)
}

pub fn or(call: &Call<'_>) -> Option<Rewrite> {
    binary(call, |a, b| a || b)
}

pub fn xor(call: &Call<'_>) -> Option<Rewrite> {
    binary(call, |a, b| a != b)
}

pub fn imply(call: &Call<'_>) -> Option<Rewrite> {
    binary(call, |a, b| !a || b)
}

/// Normalizes a decided input to `()` or `(:)`.
pub fn bool_rule(call: &Call<'_>) -> Option<Rewrite> {
    decided(call, call.input()).map(|b| Rewrite::to(truth(b)))
}

/// `(= X : Y)`: `()` when identical, `(:)` once they provably differ.
pub fn equal(call: &Call<'_>) -> Option<Rewrite> {
    let x: Data = call.arg().into();
    let y = call.input();
    if x == *y {
        return Some(Rewrite::to(Data::empty()));
    }
    let settled = all_atoms(call, &x) && all_atoms(call, y);
    let one_empty = (x.is_empty() && logic_of(call, y) == LogicValue::False)
        || (y.is_empty() && logic_of(call, &x) == LogicValue::False);
    (settled || one_empty).then(|| Rewrite::to(truth(false)))
}
