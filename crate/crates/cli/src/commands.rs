//! Subcommand bodies. Each returns its text instead of printing so the
//! binary, the REPL and the tests share one code path.

use std::fs;
use std::path::Path;

use coda::demos::{run_demo, DEMO_NAMES};
use coda::language::diagnostics;
use coda::spaces::{self, LawReport, SampleConfig, UnaryLaw};
use coda::{compile, evaluate, read_literal, render_string, standard, Context, Data, EnumConfig, EvalTrace};

/// What a command wants written, and the process exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Output {
        Output { stdout, ..Output::default() }
    }

    fn fail(stderr: String) -> Output {
        Output { stderr, code: 1, ..Output::default() }
    }
}

/// Messages of the `(error:msg)` items at the top level of `data`.
pub fn error_messages(data: &Data) -> Vec<String> {
    data.iter()
        .filter(|c| matches!(&c.left()[..], [d] if d.is_bytes("error")))
        .map(|c| match &c.right()[..] {
            [m] if m.as_str().is_some() => m.as_str().unwrap().to_owned(),
            _ => render_string(c.right()),
        })
        .collect()
}

/// Builds the starting context: builtins, the alphabet, then any replayed
/// definition file.
pub fn load_context(alphabet: Option<&[u8]>, file: Option<&Path>) -> Result<Context, String> {
    let mut ctx = standard();
    if let Some(alphabet) = alphabet {
        ctx = ctx.with_config(EnumConfig {
            alphabet: alphabet.to_vec(),
            seeds: Vec::new(),
        });
    }
    if let Some(path) = file {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        ctx = ctx.replay(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(ctx)
}

pub fn run_source(ctx: &Context, source: &[u8], budget: usize) -> EvalTrace {
    evaluate(ctx, compile(source), budget)
}

fn notes(source: &[u8], trace: &EvalTrace) -> (String, bool) {
    let mut err = String::new();
    for note in diagnostics(source) {
        err.push_str(&note);
        err.push('\n');
    }
    let errors = error_messages(trace.last());
    for msg in &errors {
        err.push_str(&format!("error: {msg}\n"));
    }
    (err, !errors.is_empty())
}

/// Final data, one line. With `explain`, status and logic follow.
pub fn eval(ctx: &Context, source: &[u8], budget: usize, explain: bool) -> Output {
    let trace = run_source(ctx, source, budget);
    let mut stdout = render_string(trace.last());
    stdout.push('\n');
    if explain {
        stdout.push_str(&format!(
            "status: {}\nlogic: {}\nundecidable_hint: {}\n",
            trace.status, trace.logic, trace.undecidable_hint
        ));
    }
    let (stderr, failed) = notes(source, &trace);
    Output { stdout, stderr, code: i32::from(failed) }
}

/// Every step, `index: data` per line.
pub fn step(ctx: &Context, source: &[u8], budget: usize) -> Output {
    let trace = run_source(ctx, source, budget);
    let (stderr, failed) = notes(source, &trace);
    Output {
        stdout: trace.to_text(),
        stderr,
        code: i32::from(failed),
    }
}

pub enum Check {
    Space(String),
    Morphism(String, String, String),
    Antispace(String, String),
    Group(String, String),
    Law(String, String),
}

fn report_output(reports: &[LawReport]) -> Output {
    let mut out = Output::default();
    for r in reports {
        out.stdout.push_str(&r.to_text());
        if !r.passed {
            out.code = 1;
        }
    }
    out
}

pub fn check(ctx: &Context, what: &Check, cfg: &SampleConfig) -> Output {
    use spaces::subject as s;
    let reports = match what {
        Check::Space(a) => vec![spaces::check_space(ctx, &s(a), cfg)],
        Check::Morphism(f, a, b) => vec![spaces::check_morphism(ctx, &s(f), &s(a), &s(b), cfg)],
        Check::Antispace(a, b) => vec![spaces::check_antispace(ctx, &s(a), &s(b), cfg)],
        Check::Group(g, neg) => spaces::check_group(ctx, &s(g), &s(neg), cfg),
        Check::Law(law, a) => match UnaryLaw::parse(law) {
            Some(law) => vec![spaces::check_unary_law(ctx, &s(a), law, cfg)],
            None => {
                return Output {
                    stderr: format!("unknown law {law:?}; expected idempotent, distributive or abelian\n"),
                    code: 2,
                    ..Output::default()
                }
            }
        },
    };
    report_output(&reports)
}

/// One rendered datum per non-blank line; `#` starts a comment line.
pub fn parse_samples(text: &str, origin: &str) -> Result<Vec<Data>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| read_literal(l.trim().as_bytes()).map_err(|e| format!("{origin}:{}: {e}", i + 1)))
        .collect()
}

pub struct SearchArgs {
    pub positives: Vec<Data>,
    pub negatives: Vec<Data>,
    pub vocabulary: Vec<String>,
    pub max_terms: usize,
    /// Random candidates instead of the exhaustive enumeration.
    pub random: Option<usize>,
}

pub fn default_vocabulary() -> Vec<String> {
    coda::builtins::builtin_names().into_iter().map(str::to_owned).collect()
}

pub fn search(ctx: &Context, args: &SearchArgs, cfg: &SampleConfig) -> Output {
    let result = match args.random {
        Some(tries) => spaces::search_random(ctx, &args.positives, &args.negatives, &args.vocabulary, tries, cfg),
        None => spaces::search_classifier(
            ctx,
            &args.positives,
            &args.negatives,
            &args.vocabulary,
            args.max_terms,
            cfg,
        ),
    };
    match result {
        Ok(report) => Output::ok(report.to_text()),
        Err(e) => Output::fail(format!("search: {e}\n")),
    }
}

pub fn search_files(ctx: &Context, pos: &Path, neg: &Path, args: SearchArgs, cfg: &SampleConfig) -> Output {
    let read = |p: &Path| {
        fs::read_to_string(p)
            .map_err(|e| format!("{}: {e}", p.display()))
            .and_then(|t| parse_samples(&t, &p.display().to_string()))
    };
    match (read(pos), read(neg)) {
        (Ok(positives), Ok(negatives)) => search(ctx, &SearchArgs { positives, negatives, ..args }, cfg),
        (Err(e), _) | (_, Err(e)) => Output::fail(format!("{e}\n")),
    }
}

pub fn demo(name: &str, budget: usize, alphabet: Option<&[u8]>) -> Output {
    match run_demo(name, budget, alphabet) {
        Some(report) => Output::ok(report.to_text()),
        None => Output {
            stderr: format!("unknown demo {name:?}; one of {}\n", DEMO_NAMES.join(", ")),
            code: 2,
            ..Output::default()
        },
    }
}
