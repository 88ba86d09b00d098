//! Enumeration of byte sequences and the rules built on it.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;

use super::{all_atoms, call_coda, distribute, natural};
use crate::context::{Call, Rewrite};
use crate::data::{Coda, Data};
use crate::language::compile;

/// Successor of `s` in length-lexicographic order over `alphabet`.
/// `None` if the alphabet is empty or `s` uses a symbol outside it.
pub fn next_sequence(s: &[u8], alphabet: &[u8]) -> Option<Vec<u8>> {
    let (&lowest, &highest) = (alphabet.first()?, alphabet.last()?);
    let mut ranks: Vec<usize> = s
        .iter()
        .map(|b| alphabet.iter().position(|a| a == b))
        .collect::<Option<_>>()?;
    let mut i = ranks.len();
    loop {
        if i == 0 {
            return Some(vec![lowest; s.len() + 1]);
        }
        i -= 1;
        if alphabet[ranks[i]] != highest {
            ranks[i] += 1;
            for r in &mut ranks[i + 1..] {
                *r = 0;
            }
            return Some(ranks.iter().map(|&r| alphabet[r]).collect());
        }
    }
}

fn alphabet<'a>(call: &'a Call<'_>) -> &'a [u8] {
    match call.arg() {
        [a] => a.as_bytes().unwrap_or(&call.ctx.config().alphabet),
        _ => &call.ctx.config().alphabet,
    }
}

/// Compiles each byte-string atom; other atoms are dropped.
pub fn coda(call: &Call<'_>) -> Option<Rewrite> {
    distribute(call, "coda", |c| c.as_bytes().map(compile).unwrap_or_default())
}

/// Every byte sequence over the alphabet, one per step, shortest first.
pub fn all_byte_sequences(call: &Call<'_>) -> Option<Rewrite> {
    let next = match &call.input()[..] {
        [] => Vec::new(),
        [s] => next_sequence(s.as_bytes()?, alphabet(call))?,
        _ => return None,
    };
    let counter = call_coda("allByteSequences", call.arg(), Data::bytes(&next));
    Some(Rewrite::to(Data::from(vec![Coda::bytes(&next), counter])))
}

/// `(bytes : N)` lists the seed sequences, then every sequence of length at
/// most `N`, shortest first.
pub fn bytes(call: &Call<'_>) -> Option<Rewrite> {
    let [c] = &call.input()[..] else { return None };
    match call.arg() {
        [] => {
            let bound = natural(c)?;
            let mut out: Data = call.ctx.config().seeds.iter().map(Coda::bytes).collect();
            out.push(Coda::bytes(""));
            out.push(call_coda("bytes", &[Coda::bytes(bound.to_string())], Data::bytes("")));
            Some(Rewrite::to(out))
        }
        [n] => {
            let bound = natural(n)?;
            let next = next_sequence(c.as_bytes()?, &call.ctx.config().alphabet);
            match next {
                Some(next) if BigUint::from(next.len()) <= bound => {
                    let counter = call_coda("bytes", call.arg(), Data::bytes(&next));
                    Some(Rewrite::to(Data::from(vec![Coda::bytes(&next), counter])))
                }
                _ => Some(Rewrite::to(Data::empty())),
            }
        }
        _ => None,
    }
}

fn positive(c: &Coda) -> Option<BigUint> {
    if let Some(b) = c.as_bytes() {
        if b.first() == Some(&b'0') {
            return None;
        }
    }
    natural(c).filter(|k| *k >= BigUint::one())
}

/// Keeps positive integers in canonical form, dropping other atoms.
pub fn posint(call: &Call<'_>) -> Option<Rewrite> {
    let items = call.input();
    let done = items.iter().take_while(|c| call.is_atom(c)).count();
    if done == 0 && !items.is_empty() {
        return None;
    }
    let mut out: Data = items[..done].iter().filter(|c| positive(c).is_some()).cloned().collect();
    if done < items.len() {
        out.push(call_coda("posint", &[], items[done..].into()));
    }
    Some(Rewrite::to(out))
}

/// Smallest positive integer missing from an atomic input.
pub fn berry(call: &Call<'_>) -> Option<Rewrite> {
    if !all_atoms(call, call.input()) {
        return None;
    }
    let present: BTreeSet<BigUint> = call.input().iter().filter_map(positive).collect();
    let mut k = BigUint::one();
    while present.contains(&k) {
        k += 1u32;
    }
    Some(Rewrite::to(Data::bytes(k.to_string())))
}
