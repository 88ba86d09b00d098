//! Evaluation: repeated simultaneous rewrite passes with fixed-point and
//! cycle detection, plus the three-valued classification of data.

use std::collections::HashMap;
use std::fmt;

use crate::context::{error_datum, Context};
use crate::data::{Coda, Data};
use crate::render::render_string;

/// Default number of rewrite passes.
pub const DEFAULT_BUDGET: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogicValue {
    True,
    False,
    Undecided,
}

impl LogicValue {
    pub fn as_str(self) -> &'static str {
        match self {
            LogicValue::True => "true",
            LogicValue::False => "false",
            LogicValue::Undecided => "undecided",
        }
    }

    pub fn is_decided(self) -> bool {
        self != LogicValue::Undecided
    }
}

impl fmt::Display for LogicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// True if empty, false if some item is an atom, undecided otherwise.
pub fn classify(data: &Data, ctx: &Context) -> LogicValue {
    if data.is_empty() {
        LogicValue::True
    } else if data.iter().any(|c| ctx.is_atom(c)) {
        LogicValue::False
    } else {
        LogicValue::Undecided
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalStatus {
    /// The last step mapped the data to itself.
    Fixed,
    /// The last step reproduced an earlier data.
    Cyclic,
    /// The step budget ran out.
    Budget,
}

impl EvalStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalStatus::Fixed => "fixed",
            EvalStatus::Cyclic => "cyclic",
            EvalStatus::Budget => "budget",
        }
    }
}

impl fmt::Display for EvalStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct EvalTrace {
    /// `A0, A1, ..., An`, each one rewrite pass after the previous.
    pub steps: Vec<Data>,
    pub status: EvalStatus,
    pub logic: LogicValue,
    pub undecidable_hint: bool,
    /// The context after every definition made during evaluation.
    pub context: Context,
}

impl EvalTrace {
    pub fn last(&self) -> &Data {
        self.steps.last().expect("a trace holds at least its input")
    }

    /// One line per step: `index: rendering`.
    pub fn lines(&self) -> Vec<String> {
        self.steps
            .iter()
            .enumerate()
            .map(|(i, d)| format!("{i}: {}", render_string(d)))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = self.lines().join("\n");
        out.push('\n');
        out
    }
}

/// Progress through one side of a coda: index of the next item and the
/// rewritten prefix, allocated only once something changes.
#[derive(Default)]
struct Side {
    next: usize,
    out: Option<Vec<Coda>>,
}

impl Side {
    fn deliver(&mut self, items: &[Coda], image: Option<Data>) {
        let i = self.next;
        match image {
            None => {
                if let Some(out) = self.out.as_mut() {
                    out.push(items[i].clone());
                }
            }
            Some(image) => self.out.get_or_insert_with(|| items[..i].to_vec()).extend(image),
        }
        self.next += 1;
    }
}

struct Frame {
    coda: Coda,
    left: Side,
    right: Side,
}

/// Rewrites a coda whose children are done. `None` means unchanged.
fn finish(ctx: &mut Context, frame: Frame) -> Option<Data> {
    let Frame { coda: c, left, right } = frame;
    let changed = left.out.is_some() || right.out.is_some();
    let current = if changed {
        Coda::new(
            left.out.map_or_else(|| c.left().clone(), Data::from),
            right.out.map_or_else(|| c.right().clone(), Data::from),
        )
    } else {
        c
    };
    match ctx.lookup(&current) {
        Some(rewrite) => {
            let mut image = rewrite.data;
            if let Some(effect) = rewrite.effect {
                match ctx.apply_effect(effect) {
                    Ok(next) => *ctx = next,
                    Err(err) => image = error_datum(&err.to_string()),
                }
            }
            if !changed && image.len() == 1 && image[0] == current {
                None
            } else {
                Some(image)
            }
        }
        None => changed.then(|| Data::single(current)),
    }
}

fn skip(ctx: &Context, c: &Coda) -> bool {
    c.is_bootstrap_atom() && ctx.is_atom(c)
}

/// One bottom-up pass: children are rewritten before their parent, the
/// parent is then looked up with its new children, and every image is left
/// alone until the next pass. Definitions made by the pass are written back
/// into `ctx`. Uses an explicit stack, so nesting depth is not limited by
/// the thread's stack.
pub fn step(ctx: &mut Context, data: &Data) -> Data {
    let root = Coda::new(Data::empty(), data.clone());
    let mut stack = vec![Frame { coda: root, left: Side::default(), right: Side::default() }];
    loop {
        let top = stack.last_mut().expect("root stays until the end");
        let coda = top.coda.clone();
        let (items, state) = if top.left.next < coda.left().len() {
            (coda.left(), &mut top.left)
        } else if top.right.next < coda.right().len() {
            (coda.right(), &mut top.right)
        } else {
            let frame = stack.pop().expect("non-empty");
            let Some(parent) = stack.last_mut() else {
                return frame.right.out.map_or_else(|| data.clone(), Data::from);
            };
            let image = finish(ctx, frame);
            let owner = parent.coda.clone();
            if parent.left.next < owner.left().len() {
                parent.left.deliver(owner.left(), image);
            } else {
                parent.right.deliver(owner.right(), image);
            }
            continue;
        };
        let child = items[state.next].clone();
        if skip(ctx, &child) {
            state.deliver(items, None);
        } else {
            stack.push(Frame { coda: child, left: Side::default(), right: Side::default() });
        }
    }
}

/// Like [`step`] but leaves `ctx` untouched.
pub fn step_pure(ctx: &Context, data: &Data) -> Data {
    let mut scratch = ctx.clone();
    step(&mut scratch, data)
}

/// Iterates [`step`] up to `budget` times. The undecidable hint is only
/// filled in for traces that stop on their own; see [`evaluate`].
pub fn run(ctx: &Context, data: Data, budget: usize) -> EvalTrace {
    let mut ctx = ctx.clone();
    let mut seen: HashMap<u64, Vec<usize>> = HashMap::new();
    seen.entry(data.structural_hash()).or_default().push(0);
    let mut steps = vec![data];
    let mut status = EvalStatus::Budget;
    for _ in 0..budget {
        let current = steps.last().expect("non-empty");
        let next = step(&mut ctx, current);
        if next == *current {
            status = EvalStatus::Fixed;
            break;
        }
        let bucket = seen.entry(next.structural_hash()).or_default();
        if bucket.iter().any(|&i| steps[i] == next) {
            steps.push(next);
            status = EvalStatus::Cyclic;
            break;
        }
        bucket.push(steps.len());
        steps.push(next);
    }
    let logic = classify(steps.last().expect("non-empty"), &ctx);
    let undecidable_hint = status != EvalStatus::Budget && logic == LogicValue::Undecided;
    EvalTrace {
        steps,
        status,
        logic,
        undecidable_hint,
        context: ctx,
    }
}

/// [`run`] followed by the undecidability heuristic with a probe twice as
/// deep as the budget.
pub fn evaluate(ctx: &Context, data: Data, budget: usize) -> EvalTrace {
    let mut trace = run(ctx, data, budget);
    trace.undecidable_hint = undecidable_hint(&trace, budget.max(1) * 2);
    trace
}

/// Heuristic evidence that the data stays undecided forever: the trace
/// settled (fixed point or cycle) while undecided, or it ran out of budget
/// undecided and `probe_depth` further steps are still undecided. This is
/// not a proof.
pub fn undecidable_hint(trace: &EvalTrace, probe_depth: usize) -> bool {
    if trace.logic != LogicValue::Undecided {
        return false;
    }
    match trace.status {
        EvalStatus::Fixed | EvalStatus::Cyclic => true,
        EvalStatus::Budget => {
            let probe = run(&trace.context, trace.last().clone(), probe_depth);
            probe.logic == LogicValue::Undecided
        }
    }
}
