//! Application of an argument over the input.

use super::{all_atoms, call_coda, distribute};
use crate::context::{Call, Rewrite};
use crate::data::{Coda, Data};

/// `(ap A : b1 b2 ...) ↦ (A:b1) (A:b2) ...`
pub fn ap(call: &Call<'_>) -> Option<Rewrite> {
    let arg: Data = call.arg().into();
    distribute(call, "ap", |b| Data::single(Coda::new(arg.clone(), Data::single(b.clone()))))
}

/// `(app a1 a2 ... : B) ↦ (a1:B) (a2:B) ...`
pub fn app(call: &Call<'_>) -> Option<Rewrite> {
    let out = call
        .arg()
        .iter()
        .map(|a| Coda::new(Data::single(a.clone()), call.input().clone()))
        .collect();
    Some(Rewrite::to(out))
}

/// `(ap2 f a1 ... : b1 ...) ↦ (f a1:b1) ...` up to the shorter side.
pub fn ap2(call: &Call<'_>) -> Option<Rewrite> {
    let (f, params) = call.arg().split_first()?;
    let items = call.input();
    if !all_atoms(call, items) {
        return None;
    }
    let out = params
        .iter()
        .zip(items.iter())
        .map(|(a, b)| {
            Coda::new(
                Data::from(vec![f.clone(), a.clone()]),
                Data::single(b.clone()),
            )
        })
        .collect();
    Some(Rewrite::to(out))
}

/// Right fold `(A b1:(A b2:... (A bn-1:bn)))` over an atomic input.
pub fn aps(call: &Call<'_>) -> Option<Rewrite> {
    let items = call.input();
    if !all_atoms(call, items) {
        return None;
    }
    let Some((last, init)) = items.split_last() else {
        return Some(Rewrite::to(Data::empty()));
    };
    let mut acc = Data::single(last.clone());
    for b in init.iter().rev() {
        let mut left: Data = call.arg().into();
        left.push(b.clone());
        acc = Data::single(Coda::new(left, acc));
    }
    Some(Rewrite::to(acc))
}

/// `(apif A : b ...) ↦ (if b : (A:b)) ...`, keeping the items `A` accepts.
pub fn apif(call: &Call<'_>) -> Option<Rewrite> {
    let arg: Data = call.arg().into();
    distribute(call, "apif", |b| {
        let applied = Coda::new(arg.clone(), Data::single(b.clone()));
        Data::single(call_coda("if", std::slice::from_ref(b), Data::single(applied)))
    })
}
