//! Finite binary words, forest leaves and eventually periodic Cantor points.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite word over `{0,1}`, ordered lexicographically with `0 < 1`
/// and every word below its proper extensions.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord(Vec<bool>);

impl BitWord {
    pub fn new() -> Self {
        BitWord(Vec::new())
    }

    pub fn with_capacity(n: usize) -> Self {
        BitWord(Vec::with_capacity(n))
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitWord(bits)
    }

    /// `x` repeated `n` times.
    pub fn repeat(x: bool, n: usize) -> Self {
        BitWord(vec![x; n])
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.0.get(i).copied()
    }

    pub fn last(&self) -> Option<bool> {
        self.0.last().copied()
    }

    pub fn push(&mut self, x: bool) {
        self.0.push(x);
    }

    pub fn pop(&mut self) -> Option<bool> {
        self.0.pop()
    }

    pub fn child(&self, x: bool) -> Self {
        let mut w = Vec::with_capacity(self.0.len() + 1);
        w.extend_from_slice(&self.0);
        w.push(x);
        BitWord(w)
    }

    pub fn parent(&self) -> Option<Self> {
        let (_, rest) = self.0.split_last()?;
        Some(BitWord(rest.to_vec()))
    }

    pub fn concat(&self, other: &BitWord) -> Self {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        BitWord(w)
    }

    pub fn prefix(&self, n: usize) -> Self {
        BitWord(self.0[..n.min(self.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &BitWord) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Prefix-comparable words have intersecting cones.
    pub fn is_comparable(&self, other: &BitWord) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn strip_prefix(&self, p: &BitWord) -> Option<BitWord> {
        self.0.strip_prefix(p.0.as_slice()).map(|s| BitWord(s.to_vec()))
    }

    /// All words of length `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = BitWord> {
        assert!(n < 64, "word length too large to enumerate");
        (0u64..1 << n).map(move |k| BitWord((0..n).map(|i| (k >> (n - 1 - i)) & 1 == 1).collect()))
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}

impl FromStr for BitWord {
    type Err = Error;

    /// Accepts `""`, `"eps"` and `"ε"` for the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "eps" || s == "ε" {
            return Ok(BitWord::new());
        }
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse(i, format!("unexpected `{c}` in binary word"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitWord)
    }
}

impl From<&[bool]> for BitWord {
    fn from(bits: &[bool]) -> Self {
        BitWord(bits.to_vec())
    }
}

/// A vertex of a finite binary forest: a root index and a word below it.
/// Orders by root first, then by word.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Leaf {
    pub root: u32,
    pub word: BitWord,
}

impl Leaf {
    pub fn new(root: u32, word: BitWord) -> Self {
        Leaf { root, word }
    }

    pub fn root(root: u32) -> Self {
        Leaf { root, word: BitWord::new() }
    }

    pub fn tree(word: BitWord) -> Self {
        Leaf { root: 0, word }
    }

    pub fn child(&self, x: bool) -> Self {
        Leaf { root: self.root, word: self.word.child(x) }
    }

    pub fn parent(&self) -> Option<Self> {
        Some(Leaf { root: self.root, word: self.word.parent()? })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_prefix_of(&self, other: &Leaf) -> bool {
        self.root == other.root && self.word.is_prefix_of(&other.word)
    }

    /// Parses `"r:word"`, or a bare word on root 0.
    pub fn parse(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((r, w)) => {
                let root = r.trim().parse().map_err(|_| Error::parse(0, format!("bad root index `{r}`")))?;
                Ok(Leaf { root, word: w.parse()? })
            }
            None => Ok(Leaf::tree(s.parse()?)),
        }
    }

    /// `"r:word"` in forests, the bare word on a single tree.
    pub fn render(&self, forest: bool) -> String {
        if forest {
            format!("{}:{}", self.root, self.word)
        } else {
            self.word.to_string()
        }
    }
}

impl fmt::Debug for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:?}", self.root, self.word)
    }
}

/// A point `prefix · period^ω` of the Cantor set, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventuallyPeriodicWord {
    prefix: BitWord,
    period: BitWord,
}

/// Length of the shortest `p` with `w` a power of `w[..p]`.
fn primitive_root_len(w: &[bool]) -> usize {
    let n = w.len();
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = fail[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if n % p == 0 {
        p
    } else {
        n
    }
}

impl EventuallyPeriodicWord {
    pub fn new(prefix: BitWord, period: BitWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidDiagram("period of a Cantor point must be nonempty".into()));
        }
        let p = primitive_root_len(period.bits());
        let mut period = period.bits()[..p].to_vec();
        let mut prefix = prefix.0;
        while let (Some(&a), Some(&b)) = (prefix.last(), period.last()) {
            if a != b {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Ok(EventuallyPeriodicWord { prefix: BitWord(prefix), period: BitWord(period) })
    }

    /// The point `x^ω`.
    pub fn constant(x: bool) -> Self {
        EventuallyPeriodicWord { prefix: BitWord::new(), period: BitWord(vec![x]) }
    }

    /// `ω₀ = 000⋯`.
    pub fn zero() -> Self {
        Self::constant(false)
    }

    pub fn prefix(&self) -> &BitWord {
        &self.prefix
    }

    pub fn period(&self) -> &BitWord {
        &self.period
    }

    pub fn letter(&self, i: usize) -> bool {
        match self.prefix.get(i) {
            Some(x) => x,
            None => self.period.0[(i - self.prefix.len()) % self.period.len()],
        }
    }

    pub fn take(&self, n: usize) -> BitWord {
        BitWord((0..n).map(|i| self.letter(i)).collect())
    }

    pub fn starts_with(&self, u: &BitWord) -> bool {
        u.iter().enumerate().all(|(i, x)| self.letter(i) == x)
    }

    /// The tail after removing `u`, if `u` is a prefix.
    pub fn strip_prefix(&self, u: &BitWord) -> Option<Self> {
        if !self.starts_with(u) {
            return None;
        }
        if u.len() <= self.prefix.len() {
            let prefix = BitWord(self.prefix.0[u.len()..].to_vec());
            return Some(EventuallyPeriodicWord { prefix, period: self.period.clone() });
        }
        let k = (u.len() - self.prefix.len()) % self.period.len();
        let mut period = self.period.0.clone();
        period.rotate_left(k);
        Some(EventuallyPeriodicWord { prefix: BitWord::new(), period: BitWord(period) })
    }

    /// `u · self`.
    pub fn prepend(&self, u: &BitWord) -> Self {
        Self::new(u.concat(&self.prefix), self.period.clone()).expect("period nonempty")
    }
}

impl fmt::Display for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.prefix, self.period)
    }
}

impl fmt::Debug for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for EventuallyPeriodicWord {
    type Err = Error;

    /// `prefix(period)`, for example `(0)` or `01(10)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| Error::parse(0, "expected `prefix(period)`"))?;
        let body = s[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(s.len(), "missing closing parenthesis"))?;
        let prefix = s[..open].parse()?;
        let period: BitWord = body.parse().map_err(|e| match e {
            Error::Parse { pos, msg } => Error::parse(pos + open + 1, msg),
            other => other,
        })?;
        Self::new(prefix, period)
    }
}
