#![allow(dead_code)]

use coda::language::{compile, read_literal};
use coda::{evaluate, render_string, standard, Coda, Context, Data, EvalTrace};
use proptest::prelude::*;

pub fn lit(s: &str) -> Data {
    read_literal(s.as_bytes()).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn eval_src(ctx: &Context, src: &str, budget: usize) -> EvalTrace {
    evaluate(ctx, compile(src), budget)
}

/// Final rendering of `src` under the standard context.
pub fn result(src: &str) -> String {
    render_string(eval_src(&standard(), src, 20).last())
}

pub fn units(k: usize) -> Data {
    (0..k).map(|_| Coda::unit()).collect()
}

/// Arbitrary data trees: up to `depth` levels, `width` items per sequence.
pub fn arb_data(depth: u32, width: usize) -> impl Strategy<Value = Data> {
    let leaf = prop_oneof![
        Just(Data::empty()),
        Just(Data::unit()),
        "[a-c]{1,3}".prop_map(Data::bytes),
    ];
    leaf.prop_recursive(depth, 64, width as u32, move |inner| {
        prop::collection::vec((inner.clone(), inner), 0..=width).prop_map(|pairs| {
            pairs
                .into_iter()
                .map(|(l, r)| Coda::new(l, r))
                .collect::<Data>()
        })
    })
}
