//! Definitions and bindings made from inside data.

use super::all_atoms;
use crate::context::{error_datum, Call, Definition, Effect, Rewrite};
use crate::data::{Coda, DomainKey};
use crate::error::ContextError;

/// The name in `(def name : ...)`, once the argument has settled.
fn name_of(call: &Call<'_>) -> Option<Result<Vec<u8>, ContextError>> {
    let arg = call.arg();
    if !all_atoms(call, arg) {
        return None;
    }
    Some(match arg {
        [c] if c.as_bytes().is_some() => Ok(c.as_bytes().unwrap().to_vec()),
        _ => Err(ContextError::InvalidDomain {
            domain: crate::render::render_string(&arg.into()),
        }),
    })
}

/// `(def name : body)` adds `(name A:B) ↦ (body A:B)` and becomes `()`.
pub fn def(call: &Call<'_>) -> Option<Rewrite> {
    let body = call.input();
    if !all_atoms(call, body) {
        return None;
    }
    let name = match name_of(call)? {
        Ok(name) => name,
        Err(err) => return Some(Rewrite::to(error_datum(&err.to_string()))),
    };
    let key = DomainKey::Coda(Coda::bytes(&name));
    if call.ctx.definition(&key).is_some() {
        let err = ContextError::AxiomViolation {
            domain: String::from_utf8_lossy(&name).into_owned(),
        };
        return Some(Rewrite::to(error_datum(&err.to_string())));
    }
    Some(Rewrite {
        data: crate::data::Data::empty(),
        effect: Some(Effect::Define(Definition::defined(&name, body.clone()))),
    })
}

/// `(let name : data)` binds `name` to the input as it stands.
pub fn let_rule(call: &Call<'_>) -> Option<Rewrite> {
    let name = match name_of(call)? {
        Ok(name) => name,
        Err(err) => return Some(Rewrite::to(error_datum(&err.to_string()))),
    };
    Some(Rewrite {
        data: crate::data::Data::empty(),
        effect: Some(Effect::Bind(name, call.input().clone())),
    })
}

/// `(? : name)` is the data bound to `name`.
pub fn lookup_binding(call: &Call<'_>) -> Option<Rewrite> {
    match &call.input()[..] {
        [c] => call.ctx.binding(c.as_bytes()?).cloned().map(Rewrite::to),
        _ => None,
    }
}
