//! Contexts: partial functions from codas to data assembled from
//! definitions with pairwise disjoint domains.
//!
//! A [`Context`] is a persistent value. [`Context::extend`] returns a new
//! context and leaves the receiver untouched; clones share their tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::data::{Coda, Data, DomainKey};
use crate::error::{ContextError, ReplayError};
use crate::render::{render_coda_string, render_string};

/// A native rewrite rule. Returning `None` means the rule does not fire.
pub type NativeFn = fn(&Call<'_>) -> Option<Rewrite>;

#[derive(Clone)]
pub enum Rule {
    /// `c ↦ c`; makes every coda on the domain an atom.
    Identity,
    Native(NativeFn),
    /// A user definition `(name A':B') ↦ (body A':B')`.
    Defined(Data),
}

impl Rule {
    pub fn kind(&self) -> &'static str {
        match self {
            Rule::Identity => "identity",
            Rule::Native(_) => "native",
            Rule::Defined(_) => "def",
        }
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Defined(body) => write!(f, "Defined({body})"),
            other => f.write_str(other.kind()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Definition {
    pub name: String,
    pub domain: DomainKey,
    pub rule: Rule,
}

impl Definition {
    pub fn new(name: impl Into<String>, domain: DomainKey, rule: Rule) -> Definition {
        Definition {
            name: name.into(),
            domain,
            rule,
        }
    }

    pub fn identity(name: impl Into<String>, domain: DomainKey) -> Definition {
        Definition::new(name, domain, Rule::Identity)
    }

    /// A native rule on the byte-string atom `name`.
    pub fn native(name: &str, f: NativeFn) -> Definition {
        Definition::new(name, DomainKey::Coda(Coda::bytes(name)), Rule::Native(f))
    }

    /// A user definition on the byte-string atom `name`.
    pub fn defined(name: &[u8], body: Data) -> Definition {
        Definition::new(
            String::from_utf8_lossy(name),
            DomainKey::Coda(Coda::bytes(name)),
            Rule::Defined(body),
        )
    }
}

/// Side effect a rewrite asks the evaluator to perform on its context.
#[derive(Clone, Debug)]
pub enum Effect {
    Define(Definition),
    Bind(Vec<u8>, Data),
}

/// The image of one coda under a context.
#[derive(Clone, Debug)]
pub struct Rewrite {
    pub data: Data,
    pub effect: Option<Effect>,
}

impl Rewrite {
    pub fn to(data: Data) -> Rewrite {
        Rewrite { data, effect: None }
    }
}

impl From<Data> for Rewrite {
    fn from(data: Data) -> Rewrite {
        Rewrite::to(data)
    }
}

/// What a native rule sees: the coda under rewrite and its context.
pub struct Call<'a> {
    pub ctx: &'a Context,
    pub coda: &'a Coda,
}

impl<'a> Call<'a> {
    /// Items after the domain on the left side.
    pub fn arg(&self) -> &'a [Coda] {
        self.coda.argument()
    }

    /// The right side.
    pub fn input(&self) -> &'a Data {
        self.coda.right()
    }

    pub fn is_atom(&self, c: &Coda) -> bool {
        self.ctx.is_atom(c)
    }
}

/// Knobs read by the enumeration builtins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    /// Symbols for `allByteSequences` and `bytes`, in enumeration order.
    pub alphabet: Vec<u8>,
    /// Sequences `bytes` emits before its own enumeration.
    pub seeds: Vec<Vec<u8>>,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            alphabet: (0x20u8..=0x7e).collect(),
            seeds: Vec::new(),
        }
    }
}

/// A user definition or binding, in the order it was made.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: RecordKind,
    pub name: Vec<u8>,
    pub body: Data,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordKind {
    Def,
    Let,
}

#[derive(Clone, Default)]
pub struct Context {
    table: Arc<HashMap<DomainKey, Definition>>,
    bindings: Arc<HashMap<Vec<u8>, Data>>,
    records: Arc<Vec<Record>>,
    config: Arc<EnumConfig>,
}

impl Context {
    /// The empty context. Every coda is left alone.
    pub fn empty() -> Context {
        Context::default()
    }

    /// Identity definitions for the empty domain, `(:)`, the 0-bit and the
    /// 1-bit. Afterwards `(:)`, both bits, bit sequences and byte strings are
    /// atoms.
    pub fn bootstrap() -> Context {
        let steps = [
            Definition::identity("()", DomainKey::Empty),
            Definition::identity("(:)", DomainKey::Coda(Coda::unit())),
            Definition::identity("0-bit", DomainKey::Coda(Coda::bit0())),
            Definition::identity("1-bit", DomainKey::Coda(Coda::bit1())),
        ];
        steps
            .into_iter()
            .try_fold(Context::empty(), |ctx, d| ctx.extend(d))
            .expect("bootstrap domains are disjoint and invariant")
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn definition(&self, key: &DomainKey) -> Option<&Definition> {
        self.table.get(key)
    }

    pub fn definitions(&self) -> impl Iterator<Item = &Definition> {
        self.table.values()
    }

    /// Names of definitions on byte-string domains, sorted.
    pub fn names(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .table
            .keys()
            .filter_map(|k| match k {
                DomainKey::Coda(c) => c.as_str().map(str::to_owned),
                DomainKey::Empty => None,
            })
            .collect();
        names.sort();
        names
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn binding(&self, name: &[u8]) -> Option<&Data> {
        self.bindings.get(name)
    }

    pub fn config(&self) -> &EnumConfig {
        &self.config
    }

    pub fn with_config(&self, config: EnumConfig) -> Context {
        let mut next = self.clone();
        next.config = Arc::new(config);
        next
    }

    /// True iff `c`'s domain carries an identity definition.
    pub fn is_atom(&self, c: &Coda) -> bool {
        matches!(
            self.table.get(&c.domain_key()),
            Some(Definition {
                rule: Rule::Identity,
                ..
            })
        )
    }

    /// Adds a definition whose domain is disjoint from every existing one.
    pub fn extend(&self, def: Definition) -> Result<Context, ContextError> {
        let shown = key_string(&def.domain);
        if self.table.contains_key(&def.domain) {
            return Err(ContextError::AxiomViolation { domain: shown });
        }
        let valid = match &def.domain {
            DomainKey::Empty => matches!(def.rule, Rule::Identity),
            DomainKey::Coda(c) => self.is_atom(c),
        };
        if !valid {
            return Err(ContextError::InvalidDomain { domain: shown });
        }
        let mut next = self.clone();
        if let (Rule::Defined(body), DomainKey::Coda(c)) = (&def.rule, &def.domain) {
            if let Some(name) = c.as_bytes() {
                Arc::make_mut(&mut next.records).push(Record {
                    kind: RecordKind::Def,
                    name: name.to_vec(),
                    body: body.clone(),
                });
            }
        }
        Arc::make_mut(&mut next.table).insert(def.domain.clone(), def);
        Ok(next)
    }

    /// Stores `value` under `name` for `(? : name)`.
    pub fn bind(&self, name: &[u8], value: Data) -> Result<Context, ContextError> {
        if self.bindings.contains_key(name) {
            return Err(ContextError::AxiomViolation {
                domain: format!("(?:{})", render_string(&Data::bytes(name))),
            });
        }
        let mut next = self.clone();
        Arc::make_mut(&mut next.records).push(Record {
            kind: RecordKind::Let,
            name: name.to_vec(),
            body: value.clone(),
        });
        Arc::make_mut(&mut next.bindings).insert(name.to_vec(), value);
        Ok(next)
    }

    pub fn apply_effect(&self, effect: Effect) -> Result<Context, ContextError> {
        match effect {
            Effect::Define(def) => self.extend(def),
            Effect::Bind(name, value) => self.bind(&name, value),
        }
    }

    /// One application of the context to a single coda.
    pub fn lookup(&self, c: &Coda) -> Option<Rewrite> {
        let def = self.table.get(&c.domain_key())?;
        match &def.rule {
            Rule::Identity => Some(Rewrite::to(Data::single(c.clone()))),
            Rule::Native(f) => f(&Call { ctx: self, coda: c }),
            Rule::Defined(body) => Some(Rewrite::to(apply_defined(body, c))),
        }
    }

    /// One line per user definition or binding:
    /// `name<TAB>domain<TAB>kind<TAB>body`, every field rendered data.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for rec in self.records.iter() {
            let name = render_string(&Data::bytes(&rec.name));
            let (domain, kind) = match rec.kind {
                RecordKind::Def => (name.clone(), "def"),
                RecordKind::Let => ("?".to_owned(), "let"),
            };
            out.push_str(&format!("{name}\t{domain}\t{kind}\t{}\n", render_string(&rec.body)));
        }
        out
    }

    /// Rebuilds user definitions from [`Context::serialize`] output on top
    /// of `self`.
    pub fn replay(&self, text: &str) -> Result<Context, ReplayError> {
        let mut ctx = self.clone();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [name, _domain, kind, body] = fields.as_slice() else {
                return Err(ReplayError::Format {
                    line: line_no,
                    message: format!("expected 4 tab-separated fields, found {}", fields.len()),
                });
            };
            let literal = |s: &str| {
                crate::language::read_literal(s.as_bytes())
                    .map_err(|source| ReplayError::Literal { line: line_no, source })
            };
            let name = literal(name)?;
            let Some(name) = name.as_bytes().map(<[u8]>::to_vec) else {
                return Err(ReplayError::Format {
                    line: line_no,
                    message: "name must be a byte-string atom".into(),
                });
            };
            let body = literal(body)?;
            let next = match *kind {
                "def" => ctx.extend(Definition::defined(&name, body)),
                "let" => ctx.bind(&name, body),
                other => {
                    return Err(ReplayError::Format {
                        line: line_no,
                        message: format!("unknown record kind {other:?}"),
                    })
                }
            };
            ctx = next.map_err(|source| ReplayError::Context { line: line_no, source })?;
        }
        Ok(ctx)
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Context")
            .field("definitions", &self.table.len())
            .field("bindings", &self.bindings.len())
            .finish()
    }
}

fn key_string(key: &DomainKey) -> String {
    match key {
        DomainKey::Empty => "()".to_owned(),
        DomainKey::Coda(c) => render_coda_string(c),
    }
}

/// `(name A':B')` under a user definition with body `body`.
///
/// A body made of language heads `{s1} {s2} ...` expands to
/// `({s1} A':B') ({s2} A':B') ...`; any other body becomes `(body A':B')`.
fn apply_defined(body: &Data, c: &Coda) -> Data {
    let arg = c.argument();
    let input = c.right();
    let heads: Option<Vec<&Coda>> = if !body.is_empty() && body.len().is_multiple_of(2) {
        body.chunks(2)
            .map(|pair| (pair[0].is_lang_marker() && pair[1].as_bytes().is_some()).then_some(&pair[1]))
            .collect()
    } else {
        None
    };
    match heads {
        Some(sources) => sources
            .into_iter()
            .map(|src| {
                let mut left = vec![Coda::lang_marker(), src.clone()];
                left.extend_from_slice(arg);
                Coda::new(Data::from(left), input.clone())
            })
            .collect(),
        None => {
            let mut left = body.clone();
            left.extend(arg.iter().cloned());
            Data::pair(left, input.clone())
        }
    }
}

/// `(error : message)`, atomic once `error` carries its identity rule.
pub fn error_datum(message: &str) -> Data {
    Data::pair(Data::bytes("error"), Data::bytes(message))
}

/// The empty context.
pub fn empty_context() -> Context {
    Context::empty()
}

pub fn bootstrap() -> Context {
    Context::bootstrap()
}

pub fn extend(ctx: &Context, d: Definition) -> Result<Context, ContextError> {
    ctx.extend(d)
}

/// `δ(c)`, or `None` when no rule applies.
pub fn lookup(ctx: &Context, c: &Coda) -> Option<Data> {
    ctx.lookup(c).map(|r| r.data)
}

pub fn is_atom(ctx: &Context, c: &Coda) -> bool {
    ctx.is_atom(c)
}
