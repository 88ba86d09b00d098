//! Sampled checks of the algebraic laws of spaces, morphisms and
//! anti-spaces, and the enumerative classifier search.
//!
//! A subject `S` is data used as the left side of a coda, so `S:X` is the
//! coda `(S:X)`. Plain builtin calls are word sequences such as `sum n`;
//! anything needing the language (composition, quoting) is a head, see
//! [`subject`].

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::Context;
use crate::data::{Coda, Data};
use crate::error::SearchError;
use crate::eval::{classify, run, EvalStatus, LogicValue};
use crate::language::head;
use crate::render::render_string;

/// Sampling knobs for law checks and searches.
#[derive(Clone, Debug)]
pub struct SampleConfig {
    /// Conclusive samples required before a law passes.
    pub count: usize,
    pub max_depth: usize,
    pub max_width: usize,
    pub seed: u64,
    /// Steps per evaluation.
    pub budget: usize,
    /// Symbols for generated byte-string atoms.
    pub alphabet: Vec<u8>,
    /// Leaf weights: `(:)`, byte atom, `(n:digit)`, pending non-atom.
    pub mix: [u32; 4],
    /// Give up after this many samples per conclusive sample asked for.
    pub attempts_per_sample: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            count: 200,
            max_depth: 2,
            max_width: 4,
            seed: 0,
            budget: 30,
            alphabet: b"ab".to_vec(),
            mix: [1, 2, 3, 0],
            attempts_per_sample: 20,
        }
    }
}

/// Random data per [`SampleConfig`], reproducible from its seed.
pub struct Generator {
    rng: ChaCha8Rng,
    leaves: WeightedIndex<u32>,
    cfg: SampleConfig,
}

impl Generator {
    pub fn new(cfg: &SampleConfig) -> Generator {
        let mix = if cfg.mix.iter().all(|&w| w == 0) { [1, 0, 0, 0] } else { cfg.mix };
        Generator {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            leaves: WeightedIndex::new(mix).expect("some weight is positive"),
            cfg: cfg.clone(),
        }
    }

    pub fn data(&mut self) -> Data {
        self.data_at(self.cfg.max_depth)
    }

    fn data_at(&mut self, depth: usize) -> Data {
        let width = self.rng.gen_range(0..=self.cfg.max_width);
        (0..width).map(|_| self.item(depth)).collect()
    }

    fn item(&mut self, depth: usize) -> Coda {
        if depth > 0 && self.rng.gen_bool(0.2) {
            let right = self.data_at(depth - 1);
            return if self.rng.gen_bool(0.5) {
                Coda::new(Data::empty(), right)
            } else {
                let mut left = Data::unit();
                left.extend(self.data_at(depth - 1));
                Coda::new(left, right)
            };
        }
        match self.leaves.sample(&mut self.rng) {
            0 => Coda::unit(),
            1 => {
                let len = self.rng.gen_range(1..=2);
                let word: Vec<u8> = (0..len)
                    .map(|_| *self.cfg.alphabet.choose(&mut self.rng).unwrap_or(&b'a'))
                    .collect();
                Coda::bytes(word)
            }
            2 => crate::builtins::natural_coda(&self.rng.gen_range(0u32..10).into()),
            _ => Coda::new(Data::bytes("pending"), Data::bytes("x")),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// A subject from source text: a word sequence when the source is plain
/// words, otherwise the head `{src : B}`.
pub fn subject(src: &str) -> Data {
    let plain = src
        .bytes()
        .all(|b| b.is_ascii_whitespace() || !b"():{}<>=*?".contains(&b) && b.is_ascii_graphic());
    if plain && !src.split_whitespace().any(|w| w == "A" || w == "B") {
        Data::words(src)
    } else {
        head(format!("{src} : B").as_bytes())
    }
}

/// `(S:X)`
pub fn apply(s: &Data, x: Data) -> Data {
    Data::pair(s.clone(), x)
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub inputs: Vec<Data>,
    pub lhs: Data,
    pub rhs: Data,
    /// Final data of each side.
    pub lhs_result: Data,
    pub rhs_result: Data,
}

#[derive(Clone, Debug)]
pub struct LawReport {
    pub law: String,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub samples_run: usize,
    pub conclusive: usize,
    pub inconclusive: usize,
}

impl LawReport {
    /// Human-readable summary, one fact per line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {}\nsamples: {} conclusive: {} inconclusive: {}\n",
            self.law,
            if self.passed { "passed" } else { "failed" },
            self.samples_run,
            self.conclusive,
            self.inconclusive
        );
        if let Some(cx) = &self.counterexample {
            for (i, x) in cx.inputs.iter().enumerate() {
                out.push_str(&format!("input {i}: {}\n", render_string(x)));
            }
            out.push_str(&format!("lhs: {} = {}\n", render_string(&cx.lhs), render_string(&cx.lhs_result)));
            out.push_str(&format!("rhs: {} = {}\n", render_string(&cx.rhs), render_string(&cx.rhs_result)));
        }
        out
    }
}

enum Verdict {
    Agree,
    Differ(Data, Data),
    Inconclusive,
}

/// Evaluates both sides. Different results count only when both sides are
/// fixed and every top-level item is an atom; stuck data is inconclusive.
fn compare(ctx: &Context, lhs: &Data, rhs: &Data, budget: usize) -> Verdict {
    let l = run(ctx, lhs.clone(), budget);
    let r = run(ctx, rhs.clone(), budget);
    if l.status != EvalStatus::Fixed || r.status != EvalStatus::Fixed {
        return Verdict::Inconclusive;
    }
    if l.last() == r.last() {
        return Verdict::Agree;
    }
    let settled = |d: &Data| d.iter().all(|c| ctx.is_atom(c));
    if settled(l.last()) && settled(r.last()) {
        Verdict::Differ(l.last().clone(), r.last().clone())
    } else {
        Verdict::Inconclusive
    }
}

/// Runs `sides` on fresh samples until `cfg.count` conclusive agreements,
/// a counterexample, or the attempt limit.
fn check_law(
    ctx: &Context,
    law: String,
    arity: usize,
    cfg: &SampleConfig,
    sides: impl Fn(&[Data]) -> (Data, Data),
) -> LawReport {
    let mut gen = Generator::new(cfg);
    let mut report = LawReport {
        law,
        passed: false,
        counterexample: None,
        samples_run: 0,
        conclusive: 0,
        inconclusive: 0,
    };
    let limit = cfg.count.max(1) * cfg.attempts_per_sample.max(1);
    while report.conclusive < cfg.count.max(1) && report.samples_run < limit {
        let inputs: Vec<Data> = (0..arity).map(|_| gen.data()).collect();
        let (lhs, rhs) = sides(&inputs);
        report.samples_run += 1;
        match compare(ctx, &lhs, &rhs, cfg.budget) {
            Verdict::Agree => report.conclusive += 1,
            Verdict::Inconclusive => report.inconclusive += 1,
            Verdict::Differ(lhs_result, rhs_result) => {
                report.conclusive += 1;
                report.counterexample = Some(Counterexample {
                    inputs,
                    lhs,
                    rhs,
                    lhs_result,
                    rhs_result,
                });
                return report;
            }
        }
    }
    report.passed = report.conclusive >= cfg.count.max(1);
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnaryLaw {
    /// `S:S:X = S:X`
    Idempotent,
    /// `S:X Y = (S:X) (S:Y)`
    Distributive,
    /// `S:X Y = S:Y X`
    Abelian,
}

impl UnaryLaw {
    pub fn name(self) -> &'static str {
        match self {
            UnaryLaw::Idempotent => "idempotent",
            UnaryLaw::Distributive => "distributive",
            UnaryLaw::Abelian => "abelian",
        }
    }

    pub fn parse(s: &str) -> Option<UnaryLaw> {
        [UnaryLaw::Idempotent, UnaryLaw::Distributive, UnaryLaw::Abelian]
            .into_iter()
            .find(|l| l.name() == s)
    }
}

fn name_of(s: &Data) -> String {
    render_string(s)
}

pub fn check_unary_law(ctx: &Context, s: &Data, law: UnaryLaw, cfg: &SampleConfig) -> LawReport {
    let title = format!("{} {}", law.name(), name_of(s));
    match law {
        UnaryLaw::Idempotent => check_law(ctx, title, 1, cfg, |x| {
            (apply(s, apply(s, x[0].clone())), apply(s, x[0].clone()))
        }),
        UnaryLaw::Distributive => check_law(ctx, title, 2, cfg, |x| {
            let whole = apply(s, x[0].concat(&x[1]));
            (whole, apply(s, x[0].clone()).concat(&apply(s, x[1].clone())))
        }),
        UnaryLaw::Abelian => check_law(ctx, title, 2, cfg, |x| {
            (apply(s, x[0].concat(&x[1])), apply(s, x[1].concat(&x[0])))
        }),
    }
}

/// `S:(S:X)(S:Y) = S:X Y`
pub fn check_space(ctx: &Context, s: &Data, cfg: &SampleConfig) -> LawReport {
    check_law(ctx, format!("space {}", name_of(s)), 2, cfg, |x| {
        let parts = apply(s, x[0].clone()).concat(&apply(s, x[1].clone()));
        (apply(s, parts), apply(s, x[0].concat(&x[1])))
    })
}

/// `F:(S:X) = T:(F:X)`
pub fn check_morphism(ctx: &Context, f: &Data, src: &Data, dst: &Data, cfg: &SampleConfig) -> LawReport {
    let title = format!("morphism {} from {} to {}", name_of(f), name_of(src), name_of(dst));
    check_law(ctx, title, 1, cfg, |x| {
        (apply(f, apply(src, x[0].clone())), apply(dst, apply(f, x[0].clone())))
    })
}

/// `S:(S:X)(N:X) = S:(N:X)(S:X) = (S:)`, checked as two sides per order.
pub fn check_antispace(ctx: &Context, s: &Data, neg: &Data, cfg: &SampleConfig) -> LawReport {
    let title = format!("antispace {} for {}", name_of(neg), name_of(s));
    let order = std::cell::Cell::new(false);
    check_law(ctx, title, 1, cfg, |x| {
        let a = apply(s, x[0].clone());
        let b = apply(neg, x[0].clone());
        let swapped = order.get();
        order.set(!swapped);
        let mixed = if swapped { b.concat(&a) } else { a.concat(&b) };
        (apply(s, mixed), apply(s, Data::empty()))
    })
}

/// Group laws for a space `G` with anti-space `N`: `(G:)` is an identity
/// for `x·y = G:x y`, the product is associative, and `N` inverts.
pub fn check_group(ctx: &Context, g: &Data, neg: &Data, cfg: &SampleConfig) -> Vec<LawReport> {
    let identity = check_law(ctx, format!("identity {}", name_of(g)), 1, cfg, |x| {
        (apply(g, apply(g, Data::empty()).concat(&apply(g, x[0].clone()))), apply(g, x[0].clone()))
    });
    let assoc = check_law(ctx, format!("associative {}", name_of(g)), 3, cfg, |x| {
        let (p, q, r) = (apply(g, x[0].clone()), apply(g, x[1].clone()), apply(g, x[2].clone()));
        let left = apply(g, apply(g, p.concat(&q)).concat(&r));
        let right = apply(g, p.concat(&apply(g, q.concat(&r))));
        (left, right)
    });
    vec![identity, assoc, check_antispace(ctx, g, neg, cfg)]
}

/// An accepted classifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    /// Juxtaposed vocabulary names, as source.
    pub source: String,
    pub data: Data,
    /// What the candidate yields on every positive; negatives get the other
    /// decided value.
    pub polarity: LogicValue,
}

#[derive(Clone, Debug, Default)]
pub struct SearchReport {
    pub accepted: Vec<Candidate>,
    pub tried: usize,
}

impl SearchReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("tried: {} accepted: {}\n", self.tried, self.accepted.len());
        for c in &self.accepted {
            out.push_str(&format!("{}\t{}\n", c.source, c.polarity));
        }
        out
    }
}

fn flip(v: LogicValue) -> LogicValue {
    match v {
        LogicValue::True => LogicValue::False,
        LogicValue::False => LogicValue::True,
        LogicValue::Undecided => LogicValue::Undecided,
    }
}

/// Tests one candidate; rejects at the first sample that disagrees.
pub fn accepts(
    ctx: &Context,
    candidate: &Data,
    positives: &[Data],
    negatives: &[Data],
    budget: usize,
) -> Option<LogicValue> {
    let value = |x: &Data| {
        let trace = run(ctx, apply(candidate, x.clone()), budget);
        classify(trace.last(), &trace.context)
    };
    let polarity = value(positives.first()?);
    if !polarity.is_decided() {
        return None;
    }
    let consistent = positives[1..].iter().all(|x| value(x) == polarity)
        && negatives.iter().all(|x| value(x) == flip(polarity));
    consistent.then_some(polarity)
}

fn validate(positives: &[Data], negatives: &[Data], vocabulary: &[String]) -> Result<(), SearchError> {
    if vocabulary.is_empty() {
        return Err(SearchError::EmptyVocabulary);
    }
    if positives.is_empty() || negatives.is_empty() {
        return Err(SearchError::EmptySamples);
    }
    Ok(())
}

/// Next index tuple in lexicographic order; false after the last.
fn advance(indices: &mut [usize], base: usize) -> bool {
    for i in (0..indices.len()).rev() {
        indices[i] += 1;
        if indices[i] < base {
            return true;
        }
        indices[i] = 0;
    }
    false
}

/// Every juxtaposition of up to `max_terms` vocabulary names, by term count
/// and then vocabulary order.
pub fn search_classifier(
    ctx: &Context,
    positives: &[Data],
    negatives: &[Data],
    vocabulary: &[String],
    max_terms: usize,
    cfg: &SampleConfig,
) -> Result<SearchReport, SearchError> {
    validate(positives, negatives, vocabulary)?;
    let mut report = SearchReport::default();
    let mut indices: Vec<usize> = Vec::new();
    for terms in 1..=max_terms {
        indices.clear();
        indices.resize(terms, 0);
        loop {
            let words: Vec<&str> = indices.iter().map(|&i| vocabulary[i].as_str()).collect();
            let data: Data = words.iter().map(Coda::bytes).collect();
            report.tried += 1;
            if let Some(polarity) = accepts(ctx, &data, positives, negatives, cfg.budget) {
                report.accepted.push(Candidate {
                    source: words.join(" "),
                    data,
                    polarity,
                });
            }
            if !advance(&mut indices, vocabulary.len()) {
                break;
            }
        }
    }
    Ok(report)
}

/// Random candidates: sequences of vocabulary names mixed with generated
/// atoms, `tries` of them, reproducible from `cfg.seed`.
pub fn search_random(
    ctx: &Context,
    positives: &[Data],
    negatives: &[Data],
    vocabulary: &[String],
    tries: usize,
    cfg: &SampleConfig,
) -> Result<SearchReport, SearchError> {
    validate(positives, negatives, vocabulary)?;
    let mut gen = Generator::new(cfg);
    let mut report = SearchReport::default();
    for _ in 0..tries {
        let len = gen.rng().gen_range(1..=cfg.max_width.max(1));
        let mut data = Data::empty();
        for _ in 0..len {
            if gen.rng().gen_bool(0.8) {
                let word = vocabulary.choose(gen.rng()).expect("non-empty");
                data.push(Coda::bytes(word));
            } else {
                data.extend(gen.data().into_vec().into_iter().take(1));
            }
        }
        report.tried += 1;
        if let Some(polarity) = accepts(ctx, &data, positives, negatives, cfg.budget) {
            report.accepted.push(Candidate {
                source: render_string(&data),
                data,
                polarity,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::standard;

    #[test]
    fn generator_is_reproducible() {
        let cfg = SampleConfig::default();
        let a: Vec<Data> = {
            let mut g = Generator::new(&cfg);
            (0..20).map(|_| g.data()).collect()
        };
        let b: Vec<Data> = {
            let mut g = Generator::new(&cfg);
            (0..20).map(|_| g.data()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn generated_leaves_are_atoms_by_default() {
        let ctx = standard();
        let mut g = Generator::new(&SampleConfig::default());
        for _ in 0..200 {
            assert!(g.data().iter().all(|c| ctx.is_atom(c)));
        }
    }

    #[test]
    fn subject_forms() {
        assert_eq!(render_string(&subject("sum n")), "sum n");
        assert_eq!(render_string(&subject("bool*(aps not)")), "{bool*(aps not) : B}");
    }
}
