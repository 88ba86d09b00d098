//! Scripted runs of the consistency expression and the four paradoxes.

use crate::builtins::standard;
use crate::context::{Context, EnumConfig};
use crate::data::{Coda, Data};
use crate::eval::{evaluate, EvalTrace, LogicValue};
use crate::language::compile;
use crate::render::render_string;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    TrueData,
    FalseData,
    Undecided,
    /// Undecided and the depth-bounded probe found no way out.
    UndecidableHint,
}

impl Verdict {
    pub fn of(trace: &EvalTrace) -> Verdict {
        match trace.logic {
            LogicValue::True => Verdict::TrueData,
            LogicValue::False => Verdict::FalseData,
            LogicValue::Undecided if trace.undecidable_hint => Verdict::UndecidableHint,
            LogicValue::Undecided => Verdict::Undecided,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::TrueData => "true",
            Verdict::FalseData => "false",
            Verdict::Undecided => "undecided",
            Verdict::UndecidableHint => "undecidable-hint",
        }
    }
}

/// Whether an enumerating demo meets its own source.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelfInclusion {
    /// The enumeration reaches the source by itself.
    Enumerated,
    /// The source was added to the enumeration.
    Injected,
    NotSelfIncluding,
}

#[derive(Clone, Debug)]
pub struct DemoReport {
    pub name: String,
    pub source: String,
    pub trace: EvalTrace,
    pub verdict: Verdict,
    /// Rendered steps worth showing.
    pub narrative: Vec<String>,
    pub self_inclusion: Option<SelfInclusion>,
}

impl DemoReport {
    fn new(name: &str, source: &str, trace: EvalTrace) -> DemoReport {
        DemoReport {
            name: name.to_string(),
            source: source.to_string(),
            verdict: Verdict::of(&trace),
            narrative: trace.lines(),
            trace,
            self_inclusion: None,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("demo: {}\nsource: {}\n", self.name, self.source);
        for line in &self.narrative {
            out.push_str(line);
            out.push('\n');
        }
        if let Some(s) = self.self_inclusion {
            out.push_str(&format!("self-inclusion: {s:?}\n"));
        }
        out.push_str(&format!(
            "status: {}\nlogic: {}\nverdict: {}\n",
            self.trace.status,
            self.trace.logic,
            self.verdict.as_str()
        ));
        out
    }
}

/// Runs `setup` lines (each evaluated to a fixed point) and returns the
/// resulting context.
fn prepare(ctx: &Context, setup: &[&str]) -> Context {
    setup.iter().fold(ctx.clone(), |ctx, line| evaluate(&ctx, compile(line), 10).context)
}

pub const CONSISTENCY_SOURCE: &str = "ap {xor (coda:B) : (not:coda:B)} : allByteSequences :";

/// Consistency of the coda language: every byte sequence `s` is checked
/// with `xor (coda:s) : (not:coda:s)`. Decided items vanish as `()`, so
/// the data is never an atom and never empty.
pub fn consistency_demo(budget: usize, alphabet: &[u8], self_include: bool) -> DemoReport {
    let ctx = standard().with_config(EnumConfig {
        alphabet: alphabet.to_vec(),
        seeds: Vec::new(),
    });
    let source = if self_include {
        format!("ap {{xor (coda:B) : (not:coda:B)}} : <{CONSISTENCY_SOURCE}> (allByteSequences :)")
    } else {
        CONSISTENCY_SOURCE.to_string()
    };
    let trace = evaluate(&ctx, compile(&source), budget.max(1));
    let mut report = DemoReport::new("consistency", &source, trace);
    report.self_inclusion = Some(if self_include {
        SelfInclusion::Injected
    } else if CONSISTENCY_SOURCE.bytes().all(|b| alphabet.contains(&b)) {
        SelfInclusion::Enumerated
    } else {
        SelfInclusion::NotSelfIncluding
    });
    report
}

fn rank(s: &[u8], alphabet: &[u8]) -> Option<usize> {
    let base = alphabet.len();
    let mut r = (0..s.len()).map(|l| base.pow(l as u32)).sum::<usize>();
    let mut place = 0;
    for &b in s {
        place = place * base + alphabet.iter().position(|&a| a == b)?;
    }
    r += place;
    Some(r)
}

fn find_counter<'a>(data: &'a Data, name: &str) -> Option<&'a Coda> {
    data.iter().find_map(|c| {
        if c.left().first().is_some_and(|d| d.is_bytes(name)) && c.left().len() <= 2 {
            if let [s] = &c.right()[..] {
                if s.as_bytes().is_some() {
                    return Some(c);
                }
            }
        }
        find_counter(c.left(), name).or_else(|| find_counter(c.right(), name))
    })
}

/// Sequences emitted so far minus the items still pending at top level.
pub fn resolved_count(data: &Data, alphabet: &[u8]) -> usize {
    let emitted = find_counter(data, "allByteSequences")
        .and_then(|c| c.right()[0].as_bytes())
        .and_then(|s| rank(s, alphabet))
        .map_or(0, |r| r + 1);
    emitted.saturating_sub(data.len().saturating_sub(1))
}

/// True if some pending item other than the last holds a copy of the
/// enumerator.
pub fn self_inclusion_observed(data: &Data) -> bool {
    let Some((_, rest)) = data.split_last() else {
        return false;
    };
    rest.iter()
        .any(|c| render_string(&Data::single(c.clone())).contains("allByteSequences"))
}

/// Number of `(not : ...)` codas wrapped around each other from the top.
pub fn not_nesting(data: &Data) -> usize {
    let mut depth = 0;
    let mut cur = data;
    while let [c] = &cur[..] {
        match &c.left()[..] {
            [d] if d.is_bytes("not") => {
                depth += 1;
                cur = c.right();
            }
            _ => break,
        }
    }
    depth
}

pub const GODEL_SETUP: &str = "let G : not : G?";

/// The Gödel sentence `G = not G`, unfolded until `depth` nested `not`s.
pub fn godel_demo(depth: usize) -> DemoReport {
    let ctx = prepare(&standard(), &[GODEL_SETUP]);
    let trace = evaluate(&ctx, compile("G?"), depth.max(1) + 1);
    let mut report = DemoReport::new("godel", "G?", trace);
    report.narrative.insert(0, GODEL_SETUP.to_string());
    report
}

pub const CURRY_SETUP: &str = "let Curry's_sentence : imply Curry's_sentence? : Germany_borders_China?";

/// "If this sentence is true then Germany borders China."
pub fn curry_demo(depth: usize) -> DemoReport {
    let ctx = prepare(&standard(), &[CURRY_SETUP]);
    let trace = evaluate(&ctx, compile("Curry's_sentence?"), depth.max(1));
    let mut report = DemoReport::new("curry", "Curry's_sentence?", trace);
    report.narrative.insert(0, CURRY_SETUP.to_string());
    report
}

pub const YABLO_SETUP: &str = "def Yablo : {ap not : Yablo : skip 1 : nat : B}";

/// Sentence `k` says every later sentence is false.
pub fn yablo_demo(depth: usize) -> DemoReport {
    let ctx = prepare(&standard(), &[YABLO_SETUP]);
    let trace = evaluate(&ctx, compile("Yablo : 1"), depth.max(1));
    let mut report = DemoReport::new("yablo", "Yablo : 1", trace);
    report.narrative.insert(0, YABLO_SETUP.to_string());
    report
}

/// `berry:posint:coda:bytes:N`
pub fn berry_source(max_len: usize) -> String {
    format!("berry:posint:coda:bytes:{max_len}")
}

#[derive(Clone, Debug)]
pub struct BerryOptions {
    pub max_len: usize,
    pub alphabet: Vec<u8>,
    /// Add the expression's own source to the enumeration when the bound
    /// would not reach it.
    pub self_include: bool,
    pub budget: usize,
}

/// The smallest positive integer not named by any byte sequence of at most
/// `max_len` bytes. Once the expression can name itself it never settles.
pub fn berry_demo(opts: &BerryOptions) -> DemoReport {
    let source = berry_source(opts.max_len);
    let enumerated = source.len() <= opts.max_len && source.bytes().all(|b| opts.alphabet.contains(&b));
    let inject = opts.self_include && !enumerated;
    let ctx = standard().with_config(EnumConfig {
        alphabet: opts.alphabet.clone(),
        seeds: if inject { vec![source.clone().into_bytes()] } else { Vec::new() },
    });
    let trace = evaluate(&ctx, compile(&source), opts.budget.max(1));
    let mut report = DemoReport::new("berry", &source, trace);
    report.self_inclusion = Some(if enumerated {
        SelfInclusion::Enumerated
    } else if inject {
        SelfInclusion::Injected
    } else {
        SelfInclusion::NotSelfIncluding
    });
    report
}

pub const DEMO_NAMES: &[&str] = &["consistency", "godel", "berry", "curry", "yablo"];

/// Runs a demo by name with the CLI's conventions for `budget`.
pub fn run_demo(name: &str, budget: usize, alphabet: Option<&[u8]>) -> Option<DemoReport> {
    Some(match name {
        "consistency" => consistency_demo(budget, alphabet.unwrap_or(b"abc"), false),
        "godel" => godel_demo(budget),
        "curry" => curry_demo(budget),
        "yablo" => yablo_demo(budget),
        "berry" => berry_demo(&BerryOptions {
            max_len: 1,
            alphabet: alphabet.unwrap_or(b"123").to_vec(),
            self_include: true,
            budget,
        }),
        _ => return None,
    })
}
