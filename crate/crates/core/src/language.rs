//! The total-syntax language.
//!
//! Any byte sequence `s` compiles to the single coda `({s}:)`, where `{s}`
//! is the language marker followed by the byte-string atom of `s`. The
//! language itself is an ordinary definition on the marker domain: each
//! application peels exactly one syntactic layer off the source and leaves
//! the pieces as fresh `({x} A:B)` codas for later steps, so compilation is
//! interleaved with every other rewrite.
//!
//! One application of `({s} A:B)`, lowest precedence first:
//!
//! | source            | image                                     |
//! |-------------------|-------------------------------------------|
//! | empty             | `()`                                      |
//! | `x : y`           | `({x} A:B):({y} A:B)` (first top-level `:`) |
//! | `p*q*r : y`       | `({p} A:B):(({q} A:B):(({r} A:B):({y} A:B)))` |
//! | `x y z`           | `({x} A:B) ({y} A:B) ({z} A:B)`           |
//! | `x=y`             | `(= ({x} A:B):({y} A:B))`                 |
//! | `p*q`             | `({p} A:B):(({q} A:B):)`                  |
//! | `x?`              | `(? : ({x} A:B))`                         |
//! | `(x)`             | `({x} A:B)`                               |
//! | `{x}`             | the language head `{x}` itself (a quotation) |
//! | `<x>`             | byte-string atom `x`, verbatim            |
//! | `A` / `B`         | the argument / the input                  |
//! | any other word    | its byte-string atom                      |
//!
//! Whitespace around `=` and `*` is ignored, so `a = b` is one token.
//! Unbalanced `(`, `{` and `<` run to the end of the source.

use crate::context::{Call, Rewrite};
use crate::data::{Coda, Data};
use crate::error::ParseError;

fn is_ws(b: u8) -> bool {
    matches!(b, b' ' | b'\t' | b'\n' | b'\r' | 0x0b | 0x0c)
}

fn trim(mut s: &[u8]) -> &[u8] {
    while let [first, rest @ ..] = s {
        if is_ws(*first) {
            s = rest;
        } else {
            break;
        }
    }
    while let [rest @ .., last] = s {
        if is_ws(*last) {
            s = rest;
        } else {
            break;
        }
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Ws,
    Colon,
    Eq,
    Star,
    Prim,
}

#[derive(Clone, Copy, Debug)]
struct Lexeme {
    kind: Kind,
    start: usize,
    end: usize,
}

/// Index just past the closer matching the opener at `i`, or `src.len()`.
fn close_of(src: &[u8], i: usize) -> usize {
    let closer = |b: u8| match b {
        b'(' => b')',
        b'{' => b'}',
        _ => b'>',
    };
    let mut stack = vec![closer(src[i])];
    let mut j = i + 1;
    while j < src.len() {
        let b = src[j];
        let top = *stack.last().expect("stack is non-empty inside the loop");
        if top == b'>' {
            if b == b'>' {
                stack.pop();
            }
        } else {
            match b {
                b'(' | b'{' | b'<' => stack.push(closer(b)),
                _ if b == top => {
                    stack.pop();
                }
                _ => {}
            }
        }
        j += 1;
        if stack.is_empty() {
            return j;
        }
    }
    src.len()
}

fn lex(src: &[u8]) -> Vec<Lexeme> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < src.len() {
        let start = i;
        let kind = match src[i] {
            b if is_ws(b) => {
                while i < src.len() && is_ws(src[i]) {
                    i += 1;
                }
                Kind::Ws
            }
            b':' => {
                i += 1;
                Kind::Colon
            }
            b'=' => {
                i += 1;
                Kind::Eq
            }
            b'*' => {
                i += 1;
                Kind::Star
            }
            b'(' | b'{' | b'<' => {
                i = close_of(src, i);
                while i < src.len() && src[i] == b'?' {
                    i += 1;
                }
                Kind::Prim
            }
            _ => {
                while i < src.len() && !is_ws(src[i]) && !b":=*({<".contains(&src[i]) {
                    i += 1;
                }
                Kind::Prim
            }
        };
        out.push(Lexeme { kind, start, end: i });
    }
    out
}

/// Splits colon-free source into juxtaposed tokens. `=` and `*` glue their
/// neighbours (whitespace around them is ignored); adjacent primaries without
/// an operator between them are separate tokens.
fn tokens(lexemes: &[Lexeme]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    let mut joinable = false;
    for lx in lexemes {
        match lx.kind {
            Kind::Ws => {}
            Kind::Eq | Kind::Star => {
                match out.last_mut() {
                    Some(tok) => tok.1 = lx.end,
                    None => out.push((lx.start, lx.end)),
                }
                joinable = true;
            }
            Kind::Prim => {
                match out.last_mut() {
                    Some(tok) if joinable => tok.1 = lx.end,
                    _ => out.push((lx.start, lx.end)),
                }
                joinable = false;
            }
            Kind::Colon => unreachable!("tokens() is only called on colon-free source"),
        }
    }
    out
}

fn split_on(src: &[u8], lexemes: &[Lexeme], kind: Kind) -> Vec<Vec<u8>> {
    let mut parts = Vec::new();
    let mut start = 0;
    for lx in lexemes.iter().filter(|lx| lx.kind == kind) {
        parts.push(trim(&src[start..lx.start]).to_vec());
        start = lx.end;
    }
    parts.push(trim(&src[start..]).to_vec());
    parts
}

/// The language head `{s}`: marker followed by the source atom.
pub fn head(src: &[u8]) -> Data {
    Data::from(vec![Coda::lang_marker(), Coda::bytes(src)])
}

/// `({s} A:B)`
pub fn apply(src: &[u8], arg: &[Coda], input: &Data) -> Coda {
    let mut left = Vec::with_capacity(arg.len() + 2);
    left.push(Coda::lang_marker());
    left.push(Coda::bytes(src));
    left.extend_from_slice(arg);
    Coda::new(Data::from(left), input.clone())
}

/// `s ↦ ({s}:)`. Never fails.
pub fn compile(src: impl AsRef<[u8]>) -> Data {
    Data::single(apply(src.as_ref(), &[], &Data::empty()))
}

/// `({s} A:B)` for already-compiled argument and input data.
pub fn compile_with(src: impl AsRef<[u8]>, arg: &Data, input: &Data) -> Data {
    Data::single(apply(src.as_ref(), arg, input))
}

fn nest(parts: &[Vec<u8>], arg: &[Coda], input: &Data, tail: Data) -> Data {
    parts.iter().rev().fold(tail, |inner, part| {
        Data::pair(Data::single(apply(part, arg, input)), inner)
    })
}

/// One application of the language to source `src` with argument `arg` and
/// input `input`.
pub fn expand(src: &[u8], arg: &[Coda], input: &Data) -> Data {
    let s = trim(src);
    if s.is_empty() {
        return Data::empty();
    }
    let lexemes = lex(s);
    let sub = |x: &[u8]| apply(trim(x), arg, input);

    if let Some(colon) = lexemes.iter().find(|lx| lx.kind == Kind::Colon) {
        let left = trim(&s[..colon.start]);
        let right = Data::single(sub(&s[colon.end..]));
        let left_lex = lex(left);
        if left_lex.iter().any(|lx| lx.kind == Kind::Star) {
            return nest(&split_on(left, &left_lex, Kind::Star), arg, input, right);
        }
        return Data::pair(Data::single(sub(left)), right);
    }

    let toks = tokens(&lexemes);
    if toks.len() > 1 {
        return toks.iter().map(|&(a, b)| sub(&s[a..b])).collect();
    }

    if let Some(eq) = lexemes.iter().find(|lx| lx.kind == Kind::Eq) {
        let mut left = vec![Coda::bytes("=")];
        left.push(sub(&s[..eq.start]));
        return Data::pair(Data::from(left), Data::single(sub(&s[eq.end..])));
    }
    if lexemes.iter().any(|lx| lx.kind == Kind::Star) {
        return nest(&split_on(s, &lexemes, Kind::Star), arg, input, Data::empty());
    }
    if let Some(inner) = s.strip_suffix(b"?") {
        return Data::pair(Data::bytes("?"), Data::single(sub(inner)));
    }

    let end = s.len();
    let enclosed = |open: u8, close: u8| -> &[u8] {
        debug_assert_eq!(s[0], open);
        if close_of(s, 0) == end && end >= 2 && s[end - 1] == close {
            &s[1..end - 1]
        } else {
            &s[1..]
        }
    };
    match s[0] {
        b'(' => Data::single(sub(enclosed(b'(', b')'))),
        b'{' => head(enclosed(b'{', b'}')),
        b'<' => Data::bytes(enclosed(b'<', b'>')),
        _ if s == b"A" => Data::from(arg),
        _ if s == b"B" => input.clone(),
        _ => Data::bytes(s),
    }
}

/// The native rule installed on the marker domain.
pub fn language_rule(call: &Call<'_>) -> Option<Rewrite> {
    let (src, rest) = call.arg().split_first()?;
    let src = src.as_bytes()?;
    Some(Rewrite::to(expand(src, rest, call.input())))
}

/// Notes about constructs that compile but carry no meaning yet.
pub fn diagnostics(src: &[u8]) -> Vec<String> {
    let mut notes = Vec::new();
    let mut i = 0;
    while i < src.len() {
        match src[i] {
            b'<' => i = close_of(src, i),
            b'/' => {
                notes.push(format!(
                    "note: '/' at byte {i} is reserved and currently read as an ordinary character"
                ));
                i += 1;
            }
            _ => i += 1,
        }
    }
    notes
}

struct Reader<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_spaces(&mut self) {
        while self.pos < self.src.len() && is_ws(self.src[self.pos]) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        self.skip_spaces();
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", b as char)))
        }
    }

    fn seq(&mut self) -> Result<Vec<Coda>, ParseError> {
        let mut items = Vec::new();
        loop {
            self.skip_spaces();
            match self.peek() {
                None | Some(b':') | Some(b')') => return Ok(items),
                Some(b'(') => {
                    if self.src.get(self.pos + 1) == Some(&b')') {
                        self.pos += 2;
                        continue;
                    }
                    self.pos += 1;
                    let left = self.seq()?;
                    self.expect(b':')?;
                    let right = self.seq()?;
                    self.expect(b')')?;
                    items.push(Coda::new(Data::from(left), Data::from(right)));
                }
                Some(b'{') => {
                    let start = self.pos + 1;
                    let mut depth = 0usize;
                    loop {
                        match self.peek() {
                            None => return Err(self.error("unterminated '{'")),
                            Some(b'{') => depth += 1,
                            Some(b'}') => {
                                depth -= 1;
                                if depth == 0 {
                                    break;
                                }
                            }
                            _ => {}
                        }
                        self.pos += 1;
                    }
                    items.push(Coda::lang_marker());
                    items.push(Coda::bytes(&self.src[start..self.pos]));
                    self.pos += 1;
                }
                Some(b'<') => {
                    let start = self.pos + 1;
                    let Some(len) = self.src[start..].iter().position(|&b| b == b'>') else {
                        return Err(self.error("unterminated '<'"));
                    };
                    items.push(Coda::bytes(&self.src[start..start + len]));
                    self.pos = start + len + 1;
                }
                Some(b'}') | Some(b'>') => return Err(self.error("unexpected closing bracket")),
                Some(_) => {
                    let start = self.pos;
                    while let Some(b) = self.peek() {
                        if is_ws(b) || b"():{}<>".contains(&b) {
                            break;
                        }
                        self.pos += 1;
                    }
                    items.push(Coda::bytes(&self.src[start..self.pos]));
                }
            }
        }
    }
}

/// Strict reader for the output of [`crate::render::render`].
pub fn read_literal(src: &[u8]) -> Result<Data, ParseError> {
    let mut reader = Reader { src, pos: 0 };
    let items = reader.seq()?;
    reader.skip_spaces();
    if reader.pos != src.len() {
        return Err(reader.error("trailing input"));
    }
    Ok(Data::from(items))
}
