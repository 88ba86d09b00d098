//! The algebra of pure data.
//!
//! A [`Data`] is a finite sequence of [`Coda`]s and a coda is an ordered pair
//! of data. Everything else in the crate (bits, byte strings, numbers,
//! language expressions, logic values) is built from these two shapes.
//!
//! Codas are immutable and reference counted. Every node caches a structural
//! hash at construction, so inequality is usually decided in O(1) and equal
//! subtrees built from the same constants short-circuit on pointer identity.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Deref;
use std::sync::{Arc, LazyLock};

const SEQ_SEED: u64 = 0x243f_6a88_85a3_08d3;
const PAIR_SEED: u64 = 0x1319_8a2e_0370_7344;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn seq_hash(items: &[Coda]) -> u64 {
    items
        .iter()
        .fold(SEQ_SEED ^ items.len() as u64, |h, c| mix(h ^ c.hash()).rotate_left(7))
}

struct Node {
    left: Data,
    right: Data,
    hash: u64,
    /// Decoded payload when this coda is a byte-string atom.
    bytes: Option<Box<[u8]>>,
}

/// An ordered pair of data.
#[derive(Clone)]
pub struct Coda(Arc<Node>);

static UNIT: LazyLock<Coda> = LazyLock::new(|| Coda::new(Data::empty(), Data::empty()));
static BIT0: LazyLock<Coda> = LazyLock::new(|| Coda::new(Data::unit(), Data::empty()));
static BIT1: LazyLock<Coda> = LazyLock::new(|| Coda::new(Data::unit(), Data::unit()));
static LANG_MARKER: LazyLock<Coda> = LazyLock::new(|| Coda::bit_sequence(&[true]));

impl Coda {
    /// Pairs `left` and `right` into a single coda.
    pub fn new(left: Data, right: Data) -> Coda {
        let hash = mix(mix(seq_hash(&left) ^ PAIR_SEED) ^ seq_hash(&right).rotate_left(17));
        let bytes = decode_byte_atom(&left, &right);
        Coda(Arc::new(Node {
            left,
            right,
            hash,
            bytes,
        }))
    }

    /// `(:)`, the pairing of two empty sequences.
    pub fn unit() -> Coda {
        UNIT.clone()
    }

    /// The 0-bit `((:):)`.
    pub fn bit0() -> Coda {
        BIT0.clone()
    }

    /// The 1-bit `((:):(:))`.
    pub fn bit1() -> Coda {
        BIT1.clone()
    }

    pub fn bit(b: bool) -> Coda {
        if b {
            Coda::bit1()
        } else {
            Coda::bit0()
        }
    }

    /// A bit-sequence atom: a 0-bit followed by the bits, paired with nothing.
    pub fn bit_sequence(bits: &[bool]) -> Coda {
        let mut left = Vec::with_capacity(bits.len() + 1);
        left.push(Coda::bit0());
        left.extend(bits.iter().map(|&b| Coda::bit(b)));
        Coda::new(Data::from(left), Data::empty())
    }

    /// The canonical byte-string atom: a 1-bit followed by eight bits per
    /// byte, most significant bit first, paired with nothing.
    pub fn bytes(s: impl AsRef<[u8]>) -> Coda {
        let s = s.as_ref();
        let mut left = Vec::with_capacity(8 * s.len() + 1);
        left.push(Coda::bit1());
        for &byte in s {
            for shift in (0..8).rev() {
                left.push(Coda::bit(byte >> shift & 1 == 1));
            }
        }
        Coda::new(Data::from(left), Data::empty())
    }

    /// The marker heading every language expression `{s}`.
    pub fn lang_marker() -> Coda {
        LANG_MARKER.clone()
    }

    pub fn left(&self) -> &Data {
        &self.0.left
    }

    pub fn right(&self) -> &Data {
        &self.0.right
    }

    /// Cached structural hash.
    pub fn hash(&self) -> u64 {
        self.0.hash
    }

    pub fn ptr_eq(&self, other: &Coda) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// The domain: the first coda of the left side, or empty.
    pub fn domain(&self) -> Data {
        match self.left().first() {
            Some(c) => Data::from(vec![c.clone()]),
            None => Data::empty(),
        }
    }

    pub fn domain_key(&self) -> DomainKey {
        match self.left().first() {
            Some(c) => DomainKey::Coda(c.clone()),
            None => DomainKey::Empty,
        }
    }

    /// Left side without its domain coda: the "argument" of the coda.
    pub fn argument(&self) -> &[Coda] {
        self.left().get(1..).unwrap_or(&[])
    }

    /// The payload if this coda is a byte-string atom.
    pub fn as_bytes(&self) -> Option<&[u8]> {
        self.0.bytes.as_deref()
    }

    pub fn as_str(&self) -> Option<&str> {
        self.as_bytes().and_then(|b| std::str::from_utf8(b).ok())
    }

    pub fn is_bytes(&self, s: &str) -> bool {
        self.as_bytes() == Some(s.as_bytes())
    }

    /// `Some(bit)` when this coda is exactly a 0-bit or a 1-bit.
    pub fn as_bit(&self) -> Option<bool> {
        if self.ptr_eq(&BIT0) || *self == *BIT0 {
            Some(false)
        } else if self.ptr_eq(&BIT1) || *self == *BIT1 {
            Some(true)
        } else {
            None
        }
    }

    /// True for codas whose whole subtree is made of bootstrap atoms only
    /// (bits, bit sequences, byte strings). No valid context can rewrite
    /// anything inside them.
    pub fn is_bootstrap_atom(&self) -> bool {
        if self.0.bytes.is_some() || self.as_bit().is_some() || self.ptr_eq(&UNIT) {
            return true;
        }
        match self.left().first().and_then(Coda::as_bit) {
            Some(false) => self.right().is_empty() && self.argument().iter().all(|c| c.as_bit().is_some()),
            _ => false,
        }
    }

    pub fn is_lang_marker(&self) -> bool {
        self.ptr_eq(&LANG_MARKER) || *self == *LANG_MARKER
    }
}

fn decode_byte_atom(left: &Data, right: &Data) -> Option<Box<[u8]>> {
    if !right.is_empty() || left.is_empty() || !(left.len() - 1).is_multiple_of(8) {
        return None;
    }
    // BIT1 itself is built through this path, so compare structurally
    // without touching the lazy static.
    let is_one = |c: &Coda| c.left().len() == 1 && c.right().len() == 1 && is_unit(&c.left()[0]) && is_unit(&c.right()[0]);
    let is_zero = |c: &Coda| c.left().len() == 1 && c.right().is_empty() && is_unit(&c.left()[0]);
    if !is_one(&left[0]) {
        return None;
    }
    let mut out = Vec::with_capacity((left.len() - 1) / 8);
    for chunk in left[1..].chunks(8) {
        let mut byte = 0u8;
        for c in chunk {
            let bit = if is_one(c) {
                1
            } else if is_zero(c) {
                0
            } else {
                return None;
            };
            byte = byte << 1 | bit;
        }
        out.push(byte);
    }
    Some(out.into_boxed_slice())
}

fn is_unit(c: &Coda) -> bool {
    c.left().is_empty() && c.right().is_empty()
}

impl PartialEq for Coda {
    fn eq(&self, other: &Coda) -> bool {
        let mut pending = vec![(self, other)];
        while let Some((a, b)) = pending.pop() {
            if a.ptr_eq(b) {
                continue;
            }
            let (x, y) = (&a.0, &b.0);
            if x.hash != y.hash || x.left.len() != y.left.len() || x.right.len() != y.right.len() {
                return false;
            }
            pending.extend(x.left.iter().zip(y.left.iter()));
            pending.extend(x.right.iter().zip(y.right.iter()));
        }
        true
    }
}

impl Drop for Node {
    // Unlinks children iteratively so long chains do not exhaust the stack.
    fn drop(&mut self) {
        let mut orphans: Vec<Coda> = std::mem::take(&mut self.left.0);
        orphans.append(&mut self.right.0);
        while let Some(c) = orphans.pop() {
            if let Ok(mut node) = Arc::try_unwrap(c.0) {
                orphans.append(&mut node.left.0);
                orphans.append(&mut node.right.0);
            }
        }
    }
}

impl Eq for Coda {}

impl Hash for Coda {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Coda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::render_coda_string(self))
    }
}

/// A finite sequence of codas.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Data(Vec<Coda>);

impl Data {
    pub fn empty() -> Data {
        Data(Vec::new())
    }

    /// The one-item data `(:)`.
    pub fn unit() -> Data {
        Data(vec![Coda::unit()])
    }

    pub fn single(c: Coda) -> Data {
        Data(vec![c])
    }

    /// Single-coda data holding the byte-string atom for `s`.
    pub fn bytes(s: impl AsRef<[u8]>) -> Data {
        Data::single(Coda::bytes(s))
    }

    /// A sequence of byte-string atoms, one per whitespace-separated word.
    pub fn words(s: &str) -> Data {
        s.split_whitespace().map(Coda::bytes).collect()
    }

    pub fn pair(left: Data, right: Data) -> Data {
        Data::single(Coda::new(left, right))
    }

    pub fn concat(&self, other: &Data) -> Data {
        let mut items = Vec::with_capacity(self.len() + other.len());
        items.extend_from_slice(&self.0);
        items.extend_from_slice(&other.0);
        Data(items)
    }

    pub fn push(&mut self, c: Coda) {
        self.0.push(c);
    }

    pub fn extend(&mut self, other: impl IntoIterator<Item = Coda>) {
        self.0.extend(other);
    }

    pub fn into_vec(self) -> Vec<Coda> {
        self.0
    }

    /// Structural hash of the whole sequence.
    pub fn structural_hash(&self) -> u64 {
        seq_hash(&self.0)
    }

    /// Payload when this data is exactly one byte-string atom.
    pub fn as_bytes(&self) -> Option<&[u8]> {
        match self.0.as_slice() {
            [c] => c.as_bytes(),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        self.as_bytes().and_then(|b| std::str::from_utf8(b).ok())
    }

    /// Number of codas in the whole tree (each coda counts once).
    pub fn node_count(&self) -> usize {
        let mut count = 0;
        let mut pending: Vec<&Coda> = self.0.iter().collect();
        while let Some(c) = pending.pop() {
            count += 1;
            pending.extend(c.left().iter());
            pending.extend(c.right().iter());
        }
        count
    }
}

impl Deref for Data {
    type Target = [Coda];

    fn deref(&self) -> &[Coda] {
        &self.0
    }
}

impl From<Vec<Coda>> for Data {
    fn from(items: Vec<Coda>) -> Data {
        Data(items)
    }
}

impl From<&[Coda]> for Data {
    fn from(items: &[Coda]) -> Data {
        Data(items.to_vec())
    }
}

impl From<Coda> for Data {
    fn from(c: Coda) -> Data {
        Data(vec![c])
    }
}

impl FromIterator<Coda> for Data {
    fn from_iter<I: IntoIterator<Item = Coda>>(iter: I) -> Data {
        Data(iter.into_iter().collect())
    }
}

impl IntoIterator for Data {
    type Item = Coda;
    type IntoIter = std::vec::IntoIter<Coda>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a Data {
    type Item = &'a Coda;
    type IntoIter = std::slice::Iter<'a, Coda>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl Hash for Data {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.structural_hash());
    }
}

impl fmt::Debug for Data {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::render_string(self))
    }
}

impl fmt::Display for Data {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::render_string(self))
    }
}

/// The dispatch key of a definition: empty, or a single coda.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum DomainKey {
    Empty,
    Coda(Coda),
}

impl DomainKey {
    pub fn of(data: &Data) -> Option<DomainKey> {
        match data.as_ref() {
            [] => Some(DomainKey::Empty),
            [c] => Some(DomainKey::Coda(c.clone())),
            _ => None,
        }
    }

    pub fn to_data(&self) -> Data {
        match self {
            DomainKey::Empty => Data::empty(),
            DomainKey::Coda(c) => Data::single(c.clone()),
        }
    }
}

/// Concatenation `A B`.
pub fn concat(a: &Data, b: &Data) -> Data {
    a.concat(b)
}

/// Pairing `A:B`.
pub fn pair(a: Data, b: Data) -> Coda {
    Coda::new(a, b)
}

/// The first coda of the left side, or empty.
pub fn domain_of(c: &Coda) -> Data {
    c.domain()
}

pub fn structural_equal(a: &Data, b: &Data) -> bool {
    a == b
}

pub fn encode_bytes(s: impl AsRef<[u8]>) -> Data {
    Data::bytes(s)
}

/// Inverse of [`encode_bytes`].
pub fn decode_bytes(d: &Data) -> Option<Vec<u8>> {
    d.as_bytes().map(<[u8]>::to_vec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn concat_examples() {
        let e = Data::empty();
        assert_eq!(concat(&e, &e), e);
        let u = Data::unit();
        assert_eq!(concat(&u, &u).len(), 2);
        let uu = concat(&u, &u);
        assert_eq!(concat(&uu, &u), concat(&u, &uu));
        assert_eq!(concat(&uu, &u).len(), 3);
    }

    #[test]
    fn pairs_and_bits() {
        assert_eq!(pair(Data::empty(), Data::empty()), Coda::unit());
        assert_eq!(pair(Data::unit(), Data::empty()), Coda::bit0());
        assert_eq!(pair(Data::unit(), Data::unit()), Coda::bit1());
        assert_eq!(Coda::bit0().as_bit(), Some(false));
        assert_eq!(Coda::bit1().as_bit(), Some(true));
        assert_eq!(Coda::unit().as_bit(), None);
    }

    #[test]
    fn domains() {
        assert_eq!(domain_of(&Coda::unit()), Data::empty());
        assert_eq!(domain_of(&Coda::bit0()), Data::unit());
        let c = Coda::new(Data::words("pass a"), Data::words("b"));
        assert_eq!(domain_of(&c), Data::bytes("pass"));
        assert_eq!(c.argument(), Data::words("a").as_ref());
    }

    #[test]
    fn structural_equality() {
        assert!(structural_equal(&Data::empty(), &Data::empty()));
        assert!(!structural_equal(&Data::unit(), &Data::empty()));
        let a = concat(&Data::unit(), &Data::unit());
        let b = Data::from(vec![Coda::new(Data::empty(), Data::empty()), Coda::unit()]);
        assert!(structural_equal(&a, &b));
    }

    #[test]
    fn byte_encoding_layout() {
        let empty = encode_bytes("");
        assert_eq!(empty, Data::pair(Data::from(vec![Coda::bit1()]), Data::empty()));
        let a = encode_bytes("a");
        let left = a[0].left();
        assert_eq!(left.len(), 9);
        assert_eq!(left[0], Coda::bit1());
        let bits: Vec<bool> = left[1..].iter().map(|c| c.as_bit().unwrap()).collect();
        assert_eq!(bits, [false, true, true, false, false, false, false, true]);
        assert_eq!(decode_bytes(&encode_bytes("pass")).as_deref(), Some(&b"pass"[..]));
    }

    #[test]
    fn hand_built_atom_decodes() {
        let mut left = vec![Coda::new(Data::unit(), Data::unit())];
        for bit in [false, true, true, false, false, false, true, false] {
            left.push(if bit {
                Coda::new(Data::unit(), Data::unit())
            } else {
                Coda::new(Data::unit(), Data::empty())
            });
        }
        let c = Coda::new(Data::from(left), Data::empty());
        assert_eq!(c.as_bytes(), Some(&b"b"[..]));
        assert!(c.is_bootstrap_atom());
    }

    #[test]
    fn bit_sequences_are_not_byte_strings() {
        let m = Coda::lang_marker();
        assert!(m.as_bytes().is_none());
        assert!(m.is_bootstrap_atom());
        assert!(m.is_lang_marker());
        assert!(!Coda::bytes("x").is_lang_marker());
    }
}
