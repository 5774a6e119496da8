//! Exact group backends with decidable equality.
//!
//! Every element is stored in a canonical encoding for its backend, so group
//! equality is structural equality of [`GroupElement`] values.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// Cayley table of a finite group. Index `0` is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteTable {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteTable {
    /// Validates a multiplication table: a Latin square with identity at index 0
    /// and an associative law.
    pub fn new(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty Cayley table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidGroup(format!("row {i} is not a permutation")));
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if std::mem::replace(&mut seen[row[j]], true) {
                    return Err(Error::InvalidGroup(format!("column {j} is not a permutation")));
                }
            }
        }
        for x in 0..n {
            if table[0][x] != x || table[x][0] != x {
                return Err(Error::InvalidGroup("index 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(Error::InvalidGroup("names list does not match table size".into()));
            }
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("latin square"))
            .collect();
        Ok(FiniteTable { table, inverses, names })
    }

    /// The cyclic group of order `n` as a table, `k` at index `k`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteTable::new(table, None).expect("cyclic table is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }
}

/// Which group an element lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupBackend {
    Finite(FiniteTable),
    /// `Some(n)` is ℤ/n, `None` is ℤ.
    Cyclic(Option<u64>),
    /// Symmetric group on `m` points acting on the right.
    Symmetric(usize),
    /// Free group of the given rank on generators `a, b, c, ...`.
    Free(usize),
    Product(Vec<GroupBackend>),
}

/// A canonical group element. The variant must match the owning backend.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Index(usize),
    Int(i64),
    /// Zero-based image list: point `i` goes to `p[i]`.
    Perm(Vec<u8>),
    /// Freely reduced word; letter `k > 0` is generator `k-1`, `-k` its inverse.
    Word(Vec<i32>),
    Tuple(Vec<GroupElement>),
}

fn mismatch(backend: &GroupBackend, e: &GroupElement) -> Error {
    Error::BackendMismatch(format!("{e:?} is not an element of {backend}"))
}

fn free_letter_name(letter: i32) -> char {
    let idx = (letter.unsigned_abs() - 1) as u8;
    let c = (b'a' + idx) as char;
    if letter > 0 {
        c
    } else {
        c.to_ascii_uppercase()
    }
}

/// Appends a letter to a freely reduced word, cancelling if needed.
fn push_reduced(word: &mut Vec<i32>, letter: i32) {
    if word.last() == Some(&-letter) {
        word.pop();
    } else {
        word.push(letter);
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '<' => depth += 1,
            '>' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl GroupBackend {
    pub fn trivial() -> Self {
        GroupBackend::Cyclic(Some(1))
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupBackend::Finite(_) => GroupElement::Index(0),
            GroupBackend::Cyclic(_) => GroupElement::Int(0),
            GroupBackend::Symmetric(m) => GroupElement::Perm((0..*m as u8).collect()),
            GroupBackend::Free(_) => GroupElement::Word(Vec::new()),
            GroupBackend::Product(fs) => GroupElement::Tuple(fs.iter().map(|f| f.identity()).collect()),
        }
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        match (self, e) {
            (GroupBackend::Finite(t), GroupElement::Index(i)) => *i < t.order(),
            (GroupBackend::Cyclic(Some(n)), GroupElement::Int(k)) => *k >= 0 && (*k as u64) < *n,
            (GroupBackend::Cyclic(None), GroupElement::Int(_)) => true,
            (GroupBackend::Symmetric(m), GroupElement::Perm(p)) => {
                if p.len() != *m {
                    return false;
                }
                let mut seen = vec![false; *m];
                p.iter().all(|&x| (x as usize) < *m && !std::mem::replace(&mut seen[x as usize], true))
            }
            (GroupBackend::Free(r), GroupElement::Word(w)) => {
                w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *r)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            (GroupBackend::Product(fs), GroupElement::Tuple(xs)) => {
                fs.len() == xs.len() && fs.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            _ => false,
        }
    }

    pub fn check(&self, e: &GroupElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(mismatch(self, e))
        }
    }

    pub fn is_identity(&self, e: &GroupElement) -> bool {
        *e == self.identity()
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        match (self, a, b) {
            (GroupBackend::Finite(t), GroupElement::Index(x), GroupElement::Index(y))
                if *x < t.order() && *y < t.order() =>
            {
                Ok(GroupElement::Index(t.mul(*x, *y)))
            }
            (GroupBackend::Cyclic(Some(n)), GroupElement::Int(x), GroupElement::Int(y)) => {
                self.check(a)?;
                self.check(b)?;
                Ok(GroupElement::Int(((*x as u64 + *y as u64) % n) as i64))
            }
            (GroupBackend::Cyclic(None), GroupElement::Int(x), GroupElement::Int(y)) => {
                x.checked_add(*y).map(GroupElement::Int).ok_or(Error::Overflow)
            }
            (GroupBackend::Symmetric(m), GroupElement::Perm(p), GroupElement::Perm(q))
                if p.len() == *m && q.len() == *m =>
            {
                // right action: (x)(pq) = ((x)p)q
                Ok(GroupElement::Perm(p.iter().map(|&x| q[x as usize]).collect()))
            }
            (GroupBackend::Free(_), GroupElement::Word(u), GroupElement::Word(v)) => {
                self.check(a)?;
                self.check(b)?;
                let mut w = u.clone();
                for &l in v {
                    push_reduced(&mut w, l);
                }
                Ok(GroupElement::Word(w))
            }
            (GroupBackend::Product(fs), GroupElement::Tuple(xs), GroupElement::Tuple(ys))
                if xs.len() == fs.len() && ys.len() == fs.len() =>
            {
                fs.iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(f, (x, y))| f.mul(x, y))
                    .collect::<Result<Vec<_>>>()
                    .map(GroupElement::Tuple)
            }
            _ => Err(if self.contains(a) { mismatch(self, b) } else { mismatch(self, a) }),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(match (self, a) {
            (GroupBackend::Finite(t), GroupElement::Index(x)) => GroupElement::Index(t.inv(*x)),
            (GroupBackend::Cyclic(Some(n)), GroupElement::Int(x)) => {
                GroupElement::Int(((*n - *x as u64) % n) as i64)
            }
            (GroupBackend::Cyclic(None), GroupElement::Int(x)) => {
                GroupElement::Int(x.checked_neg().ok_or(Error::Overflow)?)
            }
            (GroupBackend::Symmetric(_), GroupElement::Perm(p)) => {
                let mut q = vec![0u8; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    q[x as usize] = i as u8;
                }
                GroupElement::Perm(q)
            }
            (GroupBackend::Free(_), GroupElement::Word(w)) => {
                GroupElement::Word(w.iter().rev().map(|l| -l).collect())
            }
            (GroupBackend::Product(fs), GroupElement::Tuple(xs)) => GroupElement::Tuple(
                fs.iter().zip(xs).map(|(f, x)| f.inv(x)).collect::<Result<_>>()?,
            ),
            _ => unreachable!("checked above"),
        })
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: &GroupElement, k: i64) -> Result<GroupElement> {
        let base = if k < 0 { self.inv(a)? } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq)?;
            }
        }
        Ok(acc)
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        match self {
            GroupBackend::Finite(t) => Some(t.order() as u128),
            GroupBackend::Cyclic(n) => n.map(|n| n as u128),
            GroupBackend::Symmetric(m) => (1..=*m as u128).try_fold(1u128, |acc, k| acc.checked_mul(k)),
            GroupBackend::Free(0) => Some(1),
            GroupBackend::Free(_) => None,
            GroupBackend::Product(fs) => fs
                .iter()
                .try_fold(1u128, |acc, f| f.order().and_then(|o| acc.checked_mul(o))),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == Some(1)
    }

    /// All elements, identity first. `None` for infinite groups.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        self.order()?;
        Some(match self {
            GroupBackend::Finite(t) => (0..t.order()).map(GroupElement::Index).collect(),
            GroupBackend::Cyclic(Some(n)) => (0..*n as i64).map(GroupElement::Int).collect(),
            GroupBackend::Cyclic(None) => unreachable!(),
            GroupBackend::Symmetric(m) => {
                let mut out = Vec::new();
                let mut p: Vec<u8> = (0..*m as u8).collect();
                loop {
                    out.push(GroupElement::Perm(p.clone()));
                    // next lexicographic permutation
                    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { break };
                    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
                    p.swap(i - 1, j);
                    p[i..].reverse();
                }
                out
            }
            GroupBackend::Free(_) => vec![GroupElement::Word(Vec::new())],
            GroupBackend::Product(fs) => {
                let mut out = vec![Vec::new()];
                for f in fs {
                    let es = f.elements()?;
                    out = out
                        .into_iter()
                        .flat_map(|prefix: Vec<GroupElement>| {
                            es.iter().map(move |e| {
                                let mut t = prefix.clone();
                                t.push(e.clone());
                                t
                            })
                        })
                        .collect();
                }
                out.into_iter().map(GroupElement::Tuple).collect()
            }
        })
    }

    /// A small generating set.
    pub fn generators(&self) -> Vec<GroupElement> {
        match self {
            GroupBackend::Finite(t) => (1..t.order()).map(GroupElement::Index).collect(),
            GroupBackend::Cyclic(Some(1)) => Vec::new(),
            GroupBackend::Cyclic(_) => vec![GroupElement::Int(1)],
            GroupBackend::Symmetric(m) if *m < 2 => Vec::new(),
            GroupBackend::Symmetric(m) => {
                let mut swap: Vec<u8> = (0..*m as u8).collect();
                swap.swap(0, 1);
                let cycle: Vec<u8> = (0..*m as u8).map(|i| (i + 1) % *m as u8).collect();
                if *m == 2 {
                    vec![GroupElement::Perm(swap)]
                } else {
                    vec![GroupElement::Perm(swap), GroupElement::Perm(cycle)]
                }
            }
            GroupBackend::Free(r) => (1..=*r as i32).map(|l| GroupElement::Word(vec![l])).collect(),
            GroupBackend::Product(fs) => {
                let id: Vec<GroupElement> = fs.iter().map(|f| f.identity()).collect();
                let mut gens = Vec::new();
                for (i, f) in fs.iter().enumerate() {
                    for g in f.generators() {
                        let mut t = id.clone();
                        t[i] = g;
                        gens.push(GroupElement::Tuple(t));
                    }
                }
                gens
            }
        }
    }

    /// A random element; infinite backends draw short words.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        match self {
            GroupBackend::Finite(t) => GroupElement::Index(rng.gen_range(0..t.order())),
            GroupBackend::Cyclic(Some(n)) => GroupElement::Int(rng.gen_range(0..*n) as i64),
            GroupBackend::Cyclic(None) => GroupElement::Int(rng.gen_range(-3..=3)),
            GroupBackend::Symmetric(m) => {
                let mut p: Vec<u8> = (0..*m as u8).collect();
                p.shuffle(rng);
                GroupElement::Perm(p)
            }
            GroupBackend::Free(0) => GroupElement::Word(Vec::new()),
            GroupBackend::Free(r) => {
                let len = rng.gen_range(0..=3);
                let mut w = Vec::new();
                while w.len() < len {
                    let g = rng.gen_range(1..=*r as i32);
                    let l = if rng.gen_bool(0.5) { g } else { -g };
                    push_reduced(&mut w, l);
                }
                GroupElement::Word(w)
            }
            GroupBackend::Product(fs) => GroupElement::Tuple(fs.iter().map(|f| f.random(rng)).collect()),
        }
    }

    /// Parses a label token.
    ///
    /// Finite tables take an index or a name, cyclic groups an integer or a
    /// word in `t`/`T`, symmetric groups one-line notation `p213` or `p2.1.3`,
    /// free groups a word such as `aB`, products `<x,y>`. `1` and `e` are
    /// the identity everywhere.
    pub fn parse_label(&self, token: &str) -> Result<GroupElement> {
        let s = token.trim();
        let bad = || Error::BackendMismatch(format!("cannot read label `{s}` in {self}"));
        if s == "e" || (s == "1" && !matches!(self, GroupBackend::Cyclic(_) | GroupBackend::Finite(_))) {
            return Ok(self.identity());
        }
        match self {
            GroupBackend::Finite(t) => {
                if let Some(names) = t.names() {
                    if let Some(i) = names.iter().position(|n| n == s) {
                        return Ok(GroupElement::Index(i));
                    }
                }
                let i: usize = s.parse().map_err(|_| bad())?;
                let e = GroupElement::Index(i);
                self.check(&e)?;
                Ok(e)
            }
            GroupBackend::Cyclic(n) => {
                let k: i64 = if let Ok(k) = s.parse() {
                    k
                } else if !s.is_empty() && s.chars().all(|c| c == 't' || c == 'T') {
                    s.chars().map(|c| if c == 't' { 1 } else { -1 }).sum()
                } else {
                    return Err(bad());
                };
                Ok(GroupElement::Int(match n {
                    Some(n) => k.rem_euclid(*n as i64),
                    None => k,
                }))
            }
            GroupBackend::Symmetric(m) => {
                let body = s.strip_prefix('p').ok_or_else(bad)?;
                let images: Vec<usize> = if body.contains('.') {
                    body.split('.').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_>>()?
                } else {
                    body.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
                };
                if images.len() != *m || images.iter().any(|&x| x == 0) {
                    return Err(bad());
                }
                let e = GroupElement::Perm(images.iter().map(|&x| (x - 1) as u8).collect());
                self.check(&e)?;
                Ok(e)
            }
            GroupBackend::Free(r) => {
                let mut w = Vec::new();
                for c in s.chars() {
                    if !c.is_ascii_alphabetic() {
                        return Err(bad());
                    }
                    let idx = (c.to_ascii_lowercase() as u8 - b'a') as i32 + 1;
                    if idx as usize > *r {
                        return Err(bad());
                    }
                    push_reduced(&mut w, if c.is_ascii_lowercase() { idx } else { -idx });
                }
                Ok(GroupElement::Word(w))
            }
            GroupBackend::Product(fs) => {
                let inner = s.strip_prefix('<').and_then(|x| x.strip_suffix('>')).ok_or_else(bad)?;
                let parts = split_top_level(inner);
                if parts.len() != fs.len() {
                    return Err(bad());
                }
                fs.iter()
                    .zip(parts)
                    .map(|(f, p)| f.parse_label(p))
                    .collect::<Result<Vec<_>>>()
                    .map(GroupElement::Tuple)
            }
        }
    }

    /// Inverse of [`GroupBackend::parse_label`].
    pub fn format_label(&self, e: &GroupElement) -> String {
        match (self, e) {
            (GroupBackend::Finite(t), GroupElement::Index(i)) => match t.names() {
                Some(names) => names[*i].clone(),
                None => i.to_string(),
            },
            (GroupBackend::Cyclic(_), GroupElement::Int(k)) => k.to_string(),
            (GroupBackend::Symmetric(m), GroupElement::Perm(p)) => {
                if *m <= 9 {
                    format!("p{}", p.iter().map(|x| (x + 1).to_string()).collect::<String>())
                } else {
                    format!("p{}", p.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join("."))
                }
            }
            (GroupBackend::Free(_), GroupElement::Word(w)) => {
                if w.is_empty() {
                    "e".into()
                } else {
                    w.iter().map(|&l| free_letter_name(l)).collect()
                }
            }
            (GroupBackend::Product(fs), GroupElement::Tuple(xs)) => format!(
                "<{}>",
                fs.iter().zip(xs).map(|(f, x)| f.format_label(x)).collect::<Vec<_>>().join(",")
            ),
            _ => format!("{e:?}"),
        }
    }

    /// Enumerates a finite backend into an indexed table, identity first.
    pub fn enumerate(&self) -> Result<Enumerated> {
        let elements = self
            .elements()
            .ok_or_else(|| Error::Unsupported("enumeration needs a finite backend".into()))?;
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(Enumerated { elements, index })
    }
}

impl fmt::Display for GroupBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupBackend::Finite(t) => write!(f, "finite group of order {}", t.order()),
            GroupBackend::Cyclic(Some(n)) => write!(f, "Z/{n}"),
            GroupBackend::Cyclic(None) => write!(f, "Z"),
            GroupBackend::Symmetric(m) => write!(f, "S{m}"),
            GroupBackend::Free(r) => write!(f, "F{r}"),
            GroupBackend::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

/// A finite group listed element by element, identity at index 0.
#[derive(Clone, Debug)]
pub struct Enumerated {
    pub elements: Vec<GroupElement>,
    pub index: HashMap<GroupElement, usize>,
}

impl Enumerated {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &GroupElement) -> usize {
        self.index[e]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn s3_table() -> FiniteTable {
        let s3 = GroupBackend::Symmetric(3);
        let en = s3.enumerate().unwrap();
        let table = en
            .elements
            .iter()
            .map(|a| en.elements.iter().map(|b| en.index_of(&s3.mul(a, b).unwrap())).collect())
            .collect();
        FiniteTable::new(table, None).unwrap()
    }

    #[test]
    fn cyclic_addition() {
        let g = GroupBackend::Cyclic(Some(5));
        assert_eq!(g.mul(&GroupElement::Int(3), &GroupElement::Int(4)).unwrap(), GroupElement::Int(2));
    }

    #[test]
    fn free_reduction() {
        let f = GroupBackend::Free(2);
        let a = f.parse_label("aB").unwrap();
        let b = f.parse_label("ba").unwrap();
        assert_eq!(f.mul(&a, &b).unwrap(), f.parse_label("aa").unwrap());
        assert_eq!(f.format_label(&f.mul(&a, &f.inv(&a).unwrap()).unwrap()), "e");
    }

    #[test]
    fn transposition_in_table_is_involution() {
        let t = s3_table();
        let g = GroupBackend::Finite(t);
        for x in g.elements().unwrap() {
            let xx = g.mul(&x, &x).unwrap();
            let is_transposition = x != g.identity() && xx == g.identity();
            if is_transposition {
                assert!(g.is_identity(&xx));
            }
        }
        let involutions = g
            .elements()
            .unwrap()
            .into_iter()
            .filter(|x| !g.is_identity(x) && g.is_identity(&g.mul(x, x).unwrap()))
            .count();
        assert_eq!(involutions, 3);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteTable::new(vec![vec![0, 1], vec![1, 1]], None).is_err());
        assert!(FiniteTable::new(vec![vec![1, 0], vec![0, 1]], None).is_err());
        // Latin square, identity at 0, not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteTable::new(loop5, None).is_err());
    }

    #[test]
    fn mismatched_backend_errors() {
        let g = GroupBackend::Cyclic(Some(3));
        assert!(matches!(
            g.mul(&GroupElement::Int(1), &GroupElement::Word(vec![])),
            Err(Error::BackendMismatch(_))
        ));
        assert!(g.mul(&GroupElement::Int(1), &GroupElement::Int(7)).is_err());
    }

    #[test]
    fn group_laws_exhaustive_on_small_backends() {
        let backends = [
            GroupBackend::Finite(s3_table()),
            GroupBackend::Cyclic(Some(6)),
            GroupBackend::Symmetric(4),
            GroupBackend::Product(vec![GroupBackend::Cyclic(Some(2)), GroupBackend::Symmetric(3)]),
        ];
        for g in &backends {
            let es = g.elements().unwrap();
            assert!(es.len() <= 24);
            assert_eq!(es[0], g.identity());
            for a in &es {
                assert_eq!(g.mul(a, &g.identity()).unwrap(), *a);
                assert_eq!(g.mul(&g.identity(), a).unwrap(), *a);
                assert!(g.is_identity(&g.mul(a, &g.inv(a).unwrap()).unwrap()));
                for b in &es {
                    let ab = g.mul(a, b).unwrap();
                    for c in &es {
                        assert_eq!(g.mul(&ab, c).unwrap(), g.mul(a, &g.mul(b, c).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn group_laws_sampled_on_infinite_backends() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for g in [GroupBackend::Cyclic(None), GroupBackend::Free(3)] {
            for _ in 0..500 {
                let (a, b, c) = (g.random(&mut rng), g.random(&mut rng), g.random(&mut rng));
                assert!(g.contains(&a));
                let lhs = g.mul(&g.mul(&a, &b).unwrap(), &c).unwrap();
                let rhs = g.mul(&a, &g.mul(&b, &c).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert!(g.contains(&lhs));
                assert!(g.is_identity(&g.mul(&g.inv(&a).unwrap(), &a).unwrap()));
            }
        }
    }

    #[test]
    fn labels_round_trip() {
        let backends = [
            GroupBackend::Cyclic(None),
            GroupBackend::Symmetric(3),
            GroupBackend::Free(2),
            GroupBackend::Product(vec![GroupBackend::Cyclic(Some(4)), GroupBackend::Free(1)]),
        ];
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        for g in &backends {
            for _ in 0..50 {
                let e = g.random(&mut rng);
                assert_eq!(g.parse_label(&g.format_label(&e)).unwrap(), e);
            }
        }
        assert_eq!(GroupBackend::Cyclic(None).parse_label("ttT").unwrap(), GroupElement::Int(1));
        assert_eq!(GroupBackend::Symmetric(3).parse_label("p213").unwrap(), GroupElement::Perm(vec![1, 0, 2]));
    }

    #[test]
    fn power_matches_repeated_product() {
        let g = GroupBackend::Symmetric(4);
        let x = g.parse_label("p2341").unwrap();
        assert!(g.is_identity(&g.pow(&x, 4).unwrap()));
        assert_eq!(g.pow(&x, -1).unwrap(), g.inv(&x).unwrap());
        assert_eq!(GroupBackend::Cyclic(None).pow(&GroupElement::Int(3), 5).unwrap(), GroupElement::Int(15));
    }
}
