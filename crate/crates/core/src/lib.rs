//! A pure-data rewriting kernel.
//!
//! Data is a finite sequence of codas and a coda is a pair of data. A
//! [`Context`] rewrites codas by their domain; evaluation repeats
//! simultaneous rewrite passes until a fixed point, a cycle or the budget.

pub mod builtins;
pub mod context;
pub mod data;
pub mod demos;
pub mod error;
pub mod eval;
pub mod language;
pub mod render;
pub mod spaces;

pub use builtins::{install_builtins, standard};
pub use context::{error_datum, Context, Definition, EnumConfig, Rule};
pub use data::{Coda, Data, DomainKey};
pub use error::{ContextError, ParseError, ReplayError, SearchError};
pub use eval::{classify, evaluate, run, step, EvalStatus, EvalTrace, LogicValue};
pub use language::{compile, read_literal};
pub use render::render_string;
