//! Natural numbers `(n:k)`, integers `(z:k)` and the numeric demo rules.
//!
//! A natural is either a byte-string atom of decimal digits or the atom
//! `(n:digits)`. Aggregates take the type name `n` as their argument.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{all_atoms, distribute};
use crate::context::{Call, Rewrite};
use crate::data::{Coda, Data};

fn digits(bytes: &[u8]) -> Option<BigUint> {
    if bytes.is_empty() || !bytes.iter().all(u8::is_ascii_digit) {
        return None;
    }
    BigUint::parse_bytes(bytes, 10)
}

fn tagged<'a>(c: &'a Coda, tag: &str) -> Option<&'a [u8]> {
    match (&c.left()[..], &c.right()[..]) {
        ([t], [v]) if t.is_bytes(tag) => v.as_bytes(),
        _ => None,
    }
}

/// The natural number carried by `c`, in either form.
pub fn natural(c: &Coda) -> Option<BigUint> {
    match c.as_bytes() {
        Some(b) => digits(b),
        None => digits(tagged(c, "n")?),
    }
}

/// `(n:k)`
pub fn natural_coda(k: &BigUint) -> Coda {
    Coda::new(Data::bytes("n"), Data::bytes(k.to_string()))
}

/// A natural, or `(z:k)` with an optional leading minus.
pub fn integer(c: &Coda) -> Option<BigInt> {
    if let Some(k) = natural(c) {
        return Some(k.into());
    }
    let raw = tagged(c, "z")?;
    let (negative, body) = match raw.split_first() {
        Some((b'-', rest)) => (true, rest),
        _ => (false, raw),
    };
    let k = BigInt::from(digits(body)?);
    Some(if negative { -k } else { k })
}

/// `(z:k)`
pub fn integer_coda(k: &BigInt) -> Coda {
    Coda::new(Data::bytes("z"), Data::bytes(k.to_string()))
}

fn typed_n(call: &Call<'_>) -> bool {
    matches!(call.arg(), [t] if t.is_bytes("n"))
}

/// Naturals in an atomic input; `None` while the rule should wait.
fn atomic_naturals(call: &Call<'_>) -> Option<Vec<BigUint>> {
    if !typed_n(call) || !all_atoms(call, call.input()) {
        return None;
    }
    Some(call.input().iter().filter_map(natural).collect())
}

/// `(nat : k) ↦ k (nat : k+1)`, in the form `k` was given.
pub fn nat(call: &Call<'_>) -> Option<Rewrite> {
    let [c] = &call.input()[..] else { return None };
    let k = natural(c)?;
    let next = k + 1u32;
    let next = if c.as_bytes().is_some() {
        Coda::bytes(next.to_string())
    } else {
        natural_coda(&next)
    };
    let counter = Coda::new(Data::bytes("nat"), Data::single(next));
    Some(Rewrite::to(Data::from(vec![c.clone(), counter])))
}

pub fn sum(call: &Call<'_>) -> Option<Rewrite> {
    let total = atomic_naturals(call)?.into_iter().fold(BigUint::zero(), |a, b| a + b);
    Some(Rewrite::to(Data::single(natural_coda(&total))))
}

pub fn prod(call: &Call<'_>) -> Option<Rewrite> {
    let total = atomic_naturals(call)?.into_iter().fold(BigUint::one(), |a, b| a * b);
    Some(Rewrite::to(Data::single(natural_coda(&total))))
}

pub fn sort(call: &Call<'_>) -> Option<Rewrite> {
    let mut ks = atomic_naturals(call)?;
    ks.sort();
    Some(Rewrite::to(ks.iter().map(natural_coda).collect()))
}

/// Keeps naturals as `(n:k)` and drops every other atom.
pub fn type_rule(call: &Call<'_>) -> Option<Rewrite> {
    if !typed_n(call) {
        return None;
    }
    distribute(call, "type", |c| {
        natural(c).map(|k| Data::single(natural_coda(&k))).unwrap_or_default()
    })
}

fn on_naturals(call: &Call<'_>, name: &str, f: fn(BigUint) -> BigUint) -> Option<Rewrite> {
    distribute(call, name, |c| match natural(c) {
        Some(k) => Data::single(natural_coda(&f(k))),
        None => Data::single(c.clone()),
    })
}

pub fn double(call: &Call<'_>) -> Option<Rewrite> {
    on_naturals(call, "double", |k| k * 2u32)
}

pub fn square(call: &Call<'_>) -> Option<Rewrite> {
    on_naturals(call, "square", |k| &k * &k)
}

/// Integer sum of an atomic input; other atoms are ignored.
pub fn zsum(call: &Call<'_>) -> Option<Rewrite> {
    if !all_atoms(call, call.input()) {
        return None;
    }
    let total = call.input().iter().filter_map(integer).fold(BigInt::zero(), |a, b| a + b);
    Some(Rewrite::to(Data::single(integer_coda(&total))))
}

/// Negates each integer and drops other atoms.
pub fn zneg(call: &Call<'_>) -> Option<Rewrite> {
    distribute(call, "zneg", |c| {
        integer(c).map(|k| Data::single(integer_coda(&-k))).unwrap_or_default()
    })
}
