//! Deterministic textual form of data.
//!
//! `()` is empty data, `(L:R)` a coda, items are separated by one space.
//! Byte-string atoms print as bare words when every byte is printable and
//! none is structural, as `<text>` when printable, and structurally
//! otherwise. A language marker followed by a byte-string atom prints as
//! `{text}`. The output is always 7-bit ASCII without control characters.

use crate::data::{Coda, Data};

fn bare_byte(b: u8) -> bool {
    (0x21..=0x7e).contains(&b) && !b"():{}<>".contains(&b)
}

fn printable(b: u8) -> bool {
    (0x20..=0x7e).contains(&b)
}

pub(crate) fn braces_balanced(text: &[u8]) -> bool {
    let mut depth = 0i64;
    for &b in text {
        match b {
            b'{' => depth += 1,
            b'}' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

fn write_atom_text(text: &[u8], out: &mut Vec<u8>) -> bool {
    if !text.is_empty() && text.iter().all(|&b| bare_byte(b)) {
        out.extend_from_slice(text);
        true
    } else if text.iter().all(|&b| printable(b) && b != b'>') {
        out.push(b'<');
        out.extend_from_slice(text);
        out.push(b'>');
        true
    } else {
        false
    }
}

enum Task<'a> {
    /// Items from this index on, space separated.
    Seq(&'a [Coda], usize),
    Text(&'static [u8]),
}

/// Iterative so arbitrarily deep data renders without recursion.
fn write_seq(items: &[Coda], out: &mut Vec<u8>) {
    let mut stack = vec![Task::Seq(items, 0)];
    while let Some(task) = stack.pop() {
        let (items, i) = match task {
            Task::Text(text) => {
                out.extend_from_slice(text);
                continue;
            }
            Task::Seq(items, i) if i < items.len() => (items, i),
            Task::Seq(..) => continue,
        };
        if i > 0 {
            out.push(b' ');
        }
        if items[i].is_lang_marker() {
            if let Some(text) = items.get(i + 1).and_then(Coda::as_bytes) {
                if text.iter().all(|&b| printable(b)) && braces_balanced(text) {
                    out.push(b'{');
                    out.extend_from_slice(text);
                    out.push(b'}');
                    stack.push(Task::Seq(items, i + 2));
                    continue;
                }
            }
        }
        let c = &items[i];
        stack.push(Task::Seq(items, i + 1));
        if let Some(text) = c.as_bytes() {
            if write_atom_text(text, out) {
                continue;
            }
        }
        out.push(b'(');
        stack.push(Task::Text(b")"));
        stack.push(Task::Seq(c.right(), 0));
        stack.push(Task::Text(b":"));
        stack.push(Task::Seq(c.left(), 0));
    }
}

fn write_coda(c: &Coda, out: &mut Vec<u8>) {
    write_seq(std::slice::from_ref(c), out);
}

/// Renders data to bytes.
pub fn render(data: &Data) -> Vec<u8> {
    if data.is_empty() {
        return b"()".to_vec();
    }
    let mut out = Vec::new();
    write_seq(data, &mut out);
    out
}

pub fn render_string(data: &Data) -> String {
    // render only emits ASCII
    String::from_utf8(render(data)).expect("render output is ASCII")
}

pub fn render_coda_string(c: &Coda) -> String {
    let mut out = Vec::new();
    write_coda(c, &mut out);
    String::from_utf8(out).expect("render output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::pair;

    fn r(d: &Data) -> String {
        render_string(d)
    }

    #[test]
    fn basic_shapes() {
        assert_eq!(r(&Data::empty()), "()");
        assert_eq!(r(&Data::unit()), "(:)");
        assert_eq!(r(&Data::single(Coda::bit0())), "((:):)");
        assert_eq!(r(&Data::single(Coda::bit1())), "((:):(:))");
        assert_eq!(r(&Data::bytes("abc")), "abc");
        assert_eq!(r(&Data::words("a b c")), "a b c");
    }

    #[test]
    fn atoms_needing_quotes() {
        assert_eq!(r(&Data::bytes("")), "<>");
        assert_eq!(r(&Data::bytes("a b")), "<a b>");
        assert_eq!(r(&Data::bytes("x:y")), "<x:y>");
        // '>' and control bytes fall back to the structural form
        assert!(r(&Data::bytes(">")).starts_with("(((:):(:))"));
        assert!(r(&Data::bytes([0u8])).starts_with("(((:):(:))"));
    }

    #[test]
    fn nested_codas() {
        let n8 = Data::pair(Data::bytes("n"), Data::bytes("8"));
        assert_eq!(r(&n8), "(n:8)");
        let c = pair(Data::words("pass a"), Data::words("b c"));
        assert_eq!(r(&Data::single(c)), "(pass a:b c)");
    }

    #[test]
    fn language_heads() {
        let head = Data::from(vec![Coda::lang_marker(), Coda::bytes("first 2 : a b")]);
        assert_eq!(r(&Data::pair(head.clone(), Data::empty())), "({first 2 : a b}:)");
        let lone = Data::single(Coda::lang_marker());
        assert_eq!(r(&lone), "(((:):) ((:):(:)):)");
    }
}
