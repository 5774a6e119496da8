//! Descending links `E_n(G, φ)` in the labeled Stein–Farley complex.
//!
//! A `(j−1)`-simplex is a class of groupoid elements `[1_n, (g⃗, σ), F_J]`
//! with `|J| = j` carets on `n − j` roots, modulo the right action of
//! `G ≀ S_{n−j}` on the range. Every such element has domain `1_n` and
//! range leaves of depth at most one, so it is encoded per domain root by
//! a label index and a target `3·root + c` with `c = 0` for a bare root and
//! `c = 1, 2` for the left and right leaf of a caret.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;

use super::homology::{homology, HomologyResult};
use super::matching::{disjoint_families, matching_complex};
use super::SimplicialComplex;
use crate::diagrams::{BitWord, Column, LabeledDiagram, Leaf};
use crate::error::{Error, Result};
use crate::groups::{Enumerated, Injectivity};
use crate::vphi::{Context, GroupoidElement};

/// Default bound on `|G|^n · n!` for the exhaustive enumeration.
pub const DEFAULT_ENUM_CAP: u128 = 2_000_000;

/// Canonical representative of a class `[1_n, (g⃗, σ), F_J]`: the
/// lexicographically least encoding over its orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DlinkVertexKey {
    code: Vec<u32>,
}

impl DlinkVertexKey {
    /// Number of domain roots.
    pub fn n(&self) -> usize {
        self.code.len() / 2
    }

    /// Label index of domain root `i`, in the enumeration of the working group.
    pub fn label(&self, i: usize) -> usize {
        self.code[2 * i] as usize
    }

    /// Range root and caret side (`None` for a bare root) of domain root `i`.
    pub fn target(&self, i: usize) -> (u32, Option<bool>) {
        let t = self.code[2 * i + 1];
        (t / 3, match t % 3 {
            0 => None,
            c => Some(c == 2),
        })
    }

    pub fn carets(&self) -> usize {
        (0..self.n()).filter(|&i| self.target(i).1 == Some(false)).count()
    }
}

impl fmt::Display for DlinkVertexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let (r, side) = self.target(i);
            let side = match side {
                None => "",
                Some(false) => "0",
                Some(true) => "1",
            };
            write!(f, "{}>{}:{}", self.label(i), r, side)?;
        }
        Ok(())
    }
}

/// The pair `{i, j}` (one-based) of domain roots sent into the unique caret.
pub fn forgetful_pi(v: &DlinkVertexKey) -> Result<(usize, usize)> {
    let under: Vec<usize> = (0..v.n()).filter(|&i| v.target(i).1.is_some()).collect();
    match under[..] {
        [i, j] => Ok((i + 1, j + 1)),
        _ => Err(Error::Precondition("not a single-caret class".into())),
    }
}

/// Multiplication and wreath tables of an injective recursion on a finite group.
struct Tables {
    order: usize,
    mul: Vec<u32>,
    sections: Vec<[u32; 2]>,
    swap: Vec<bool>,
    group: Enumerated,
}

impl Tables {
    fn new(ctx: &Context) -> Result<Self> {
        let phi = ctx.recursion();
        if phi.is_injective() != Injectivity::Injective {
            return Err(Error::Precondition("descending links need an injective recursion".into()));
        }
        let g = ctx.backend();
        let group = g.enumerate()?;
        let order = group.len();
        let mut mul = Vec::with_capacity(order * order);
        for a in &group.elements {
            for b in &group.elements {
                mul.push(group.index_of(&g.mul(a, b)?) as u32);
            }
        }
        let mut sections = Vec::with_capacity(order);
        let mut swap = Vec::with_capacity(order);
        for a in &group.elements {
            let w = phi.apply(a)?;
            sections.push([group.index_of(&w.left) as u32, group.index_of(&w.right) as u32]);
            swap.push(w.swap);
        }
        Ok(Tables { order, mul, sections, swap, group })
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    /// Right action of `((h_r), τ) ∈ G ≀ S_m` on the range of an encoded class.
    fn act(&self, code: &[u32], h: &[u32], tau: &[u32]) -> Vec<u32> {
        let mut out = Vec::with_capacity(code.len());
        for pair in code.chunks_exact(2) {
            let (label, t) = (pair[0], pair[1]);
            let (r, c) = ((t / 3) as usize, t % 3);
            let hr = h[r];
            if c == 0 {
                out.push(self.mul(label, hr));
                out.push(tau[r] * 3);
            } else {
                let x = (c - 1) as usize;
                out.push(self.mul(label, self.sections[hr as usize][x]));
                out.push(tau[r] * 3 + 1 + (x as u32 ^ u32::from(self.swap[hr as usize])));
            }
        }
        out
    }
}

fn permutations(m: usize) -> Vec<Vec<u32>> {
    fn rec(m: usize, cur: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for v in 0..m {
            if !used[v] {
                used[v] = true;
                cur.push(v as u32);
                rec(m, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(m, &mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// All of `0..base` to the power `m`, in odometer order.
fn tuples(base: usize, m: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            if i == m {
                return out;
            }
            cur[i] += 1;
            if (cur[i] as usize) < base {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// The classes with `j` carets.
struct Level {
    keys: Vec<DlinkVertexKey>,
    /// A representative with carets on roots `0..j`.
    reps: Vec<Vec<u32>>,
    /// Every orbit element, mapped to its class.
    members: HashMap<Vec<u32>, usize>,
}

fn enumerate_level(t: &Tables, n: usize, j: usize) -> Result<Level> {
    let m = n - j;
    let mut leaves = Vec::with_capacity(n);
    for r in 0..m as u32 {
        if (r as usize) < j {
            leaves.extend([3 * r + 1, 3 * r + 2]);
        } else {
            leaves.push(3 * r);
        }
    }
    let perms_n = permutations(n);
    let labels_n = tuples(t.order, n);
    let perms_m = permutations(m);
    let labels_m = tuples(t.order, m);
    let orbit_size = labels_m.len() * perms_m.len();
    let mut level = Level { keys: Vec::new(), reps: Vec::new(), members: HashMap::new() };
    for sigma in &perms_n {
        for g in &labels_n {
            let code: Vec<u32> = (0..n).flat_map(|i| [g[i], leaves[sigma[i] as usize]]).collect();
            if level.members.contains_key(&code) {
                continue;
            }
            let class = level.keys.len();
            let mut orbit = HashSet::with_capacity(orbit_size);
            for tau in &perms_m {
                for h in &labels_m {
                    orbit.insert(t.act(&code, h, tau));
                }
            }
            if orbit.len() != orbit_size {
                return Err(Error::Precondition(format!(
                    "right action is not free: orbit of size {} instead of {orbit_size}",
                    orbit.len()
                )));
            }
            let key = orbit.iter().min().expect("nonempty orbit").clone();
            for x in orbit {
                level.members.insert(x, class);
            }
            level.keys.push(DlinkVertexKey { code: key });
            level.reps.push(code);
        }
    }
    let expected = factorial(n) * (t.order as u128).pow(j as u32) / (factorial(j) * factorial(n - 2 * j));
    if level.keys.len() as u128 != expected {
        return Err(Error::Precondition(format!(
            "found {} classes with {j} carets, expected {expected}",
            level.keys.len()
        )));
    }
    Ok(level)
}

fn to_groupoid(ctx: &Context, t: &Tables, code: &[u32], m: usize) -> GroupoidElement {
    let columns = code
        .chunks_exact(2)
        .enumerate()
        .map(|(i, p)| {
            let (r, c) = (p[1] / 3, p[1] % 3);
            let word = if c == 0 { BitWord::new() } else { BitWord::from_bits(vec![c == 2]) };
            Column::new(Leaf::root(i as u32), t.group.elements[p[0] as usize].clone(), Leaf::new(r, word))
        })
        .collect();
    let n = code.len() / 2;
    GroupoidElement::from_reduced(ctx, LabeledDiagram::from_sorted_unchecked((n as u32, m as u32), columns))
}

fn to_code(t: &Tables, x: &GroupoidElement) -> Result<Vec<u32>> {
    let mut code = Vec::with_capacity(2 * x.diagram().len());
    for (i, c) in x.diagram().columns().iter().enumerate() {
        if c.dom != Leaf::root(i as u32) || c.ran.len() > 1 {
            return Err(Error::Precondition("product left the expected diagram shape".into()));
        }
        let side = c.ran.word.get(0).map_or(0, |b| 1 + u32::from(b));
        code.push(t.group.index_of(&c.label) as u32);
        code.push(3 * c.ran.root + side);
    }
    Ok(code)
}

/// `[F_S^{(m)}, (1⃗, id), 1_{m+|S|}]`: splits the carets of `S`.
fn splitter(ctx: &Context, m: usize, carets: &[usize]) -> GroupoidElement {
    let one = ctx.backend().identity();
    let mut columns = Vec::new();
    for r in 0..m as u32 {
        let root = Leaf::root(r);
        let doms = if carets.contains(&(r as usize)) { vec![root.child(false), root.child(true)] } else { vec![root] };
        for d in doms {
            let k = columns.len() as u32;
            columns.push(Column::new(d, one.clone(), Leaf::root(k)));
        }
    }
    let k = columns.len() as u32;
    GroupoidElement::from_reduced(ctx, LabeledDiagram::from_sorted_unchecked((m as u32, k), columns))
}

/// `E_n(G, φ)` with its vertex keys and the forgetful map to `M_n`.
#[derive(Clone, Debug)]
pub struct DlinkComplex {
    n: usize,
    keys: Vec<DlinkVertexKey>,
    pi: Vec<(usize, usize)>,
    complex: SimplicialComplex,
}

impl DlinkComplex {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn keys(&self) -> &[DlinkVertexKey] {
        &self.keys
    }

    /// The image of vertex `v` in `M_n`.
    pub fn pi(&self, v: usize) -> (usize, usize) {
        self.pi[v]
    }

    /// Same vertices; a set spans a simplex iff its images are pairwise disjoint.
    pub fn fiber_join(&self) -> SimplicialComplex {
        let pi = &self.pi;
        let meets = |a: (usize, usize), b: (usize, usize)| a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
        let simplices = disjoint_families(pi.len(), |u, v| !meets(pi[u], pi[v]));
        SimplicialComplex::from_simplices(self.complex.vertex_labels().to_vec(), simplices)
            .expect("indices come from the vertex list")
    }
}

/// Builds `E_n(G, φ)` by exhaustive orbit enumeration. Vertices of a
/// simplex are obtained by splitting all but one caret through groupoid
/// products, and every codimension-one face is checked to have the
/// expected vertex set.
pub fn dlink_complex(n: usize, ctx: &Context, cap: u128) -> Result<DlinkComplex> {
    if n < 2 {
        return Err(Error::Precondition("descending links need n >= 2".into()));
    }
    let t = Tables::new(ctx)?;
    let needed = (t.order as u128).checked_pow(n as u32).and_then(|x| x.checked_mul(factorial(n))).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }

    let vertices = enumerate_level(&t, n, 1)?;
    let mut order: Vec<usize> = (0..vertices.keys.len()).collect();
    order.sort_by(|&a, &b| vertices.keys[a].cmp(&vertices.keys[b]));
    let mut rank = vec![0u32; order.len()];
    for (pos, &v) in order.iter().enumerate() {
        rank[v] = pos as u32;
    }
    let keys: Vec<DlinkVertexKey> = order.iter().map(|&v| vertices.keys[v].clone()).collect();
    let pi = keys.iter().map(forgetful_pi).collect::<Result<Vec<_>>>()?;
    let labels = order
        .iter()
        .map(|&v| to_groupoid(ctx, &t, &vertices.reps[v], n - 1).render())
        .collect();

    let mut simplices: Vec<Vec<u32>> = (0..keys.len() as u32).map(|v| vec![v]).collect();
    let vertex_members = vertices.members;
    let mut prev_sets: Vec<Vec<u32>> = rank.iter().map(|&r| vec![r]).collect();
    let mut prev_members = vertex_members.clone();
    for j in 2..=n / 2 {
        let m = n - j;
        let level = enumerate_level(&t, n, j)?;
        let mut sets = Vec::with_capacity(level.reps.len());
        let mut seen = HashSet::new();
        for rep in &level.reps {
            let y = to_groupoid(ctx, &t, rep, m);
            let mut verts = Vec::with_capacity(j);
            for r in 0..j {
                let others: Vec<usize> = (0..j).filter(|&s| s != r).collect();
                let v = to_code(&t, &y.mul(&splitter(ctx, m, &others))?)?;
                let class = vertex_members
                    .get(&v)
                    .ok_or_else(|| Error::Precondition("vertex outside the enumeration".into()))?;
                verts.push(rank[*class]);
            }
            let mut sorted = verts.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != j {
                return Err(Error::Precondition("simplex with repeated vertices".into()));
            }
            for r in 0..j {
                let z = to_code(&t, &y.mul(&splitter(ctx, m, &[r]))?)?;
                let face = prev_members
                    .get(&z)
                    .ok_or_else(|| Error::Precondition("face outside the enumeration".into()))?;
                let mut expected: Vec<u32> = verts.iter().enumerate().filter(|&(s, _)| s != r).map(|(_, &v)| v).collect();
                expected.sort_unstable();
                if prev_sets[*face] != expected {
                    return Err(Error::Precondition("face and vertex bookkeeping disagree".into()));
                }
            }
            if !seen.insert(sorted.clone()) {
                return Err(Error::Precondition("two classes span the same vertex set".into()));
            }
            simplices.push(sorted.clone());
            sets.push(sorted);
        }
        prev_sets = sets;
        prev_members = level.members;
    }
    let complex = SimplicialComplex::from_simplices(labels, simplices)?;
    Ok(DlinkComplex { n, keys, pi, complex })
}

/// The three conditions making `π: E_n → M_n` a complete join.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompleteJoinReport {
    /// Every simplex maps onto a simplex of `M_n` and every simplex of `M_n` is hit.
    pub simplicial_surjective: bool,
    /// No simplex has two vertices with the same image.
    pub injective_on_simplices: bool,
    /// The complex equals the join of the vertex fibers over each simplex.
    pub fiber_join: bool,
}

impl CompleteJoinReport {
    pub fn holds(&self) -> bool {
        self.simplicial_surjective && self.injective_on_simplices && self.fiber_join
    }
}

pub fn complete_join_report(d: &DlinkComplex) -> Result<CompleteJoinReport> {
    let m = matching_complex(d.n)?;
    let index: HashMap<(usize, usize), u32> =
        super::matching::pairs(d.n).into_iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let mut simplicial = true;
    let mut injective = true;
    let mut hit: HashSet<Vec<u32>> = HashSet::new();
    let c = d.complex();
    for k in 0..=c.dimension().max(-1) as usize {
        for s in c.simplices(k) {
            let mut image: Vec<u32> = s.iter().map(|&v| index[&d.pi[v as usize]]).collect();
            image.sort_unstable();
            image.dedup();
            if image.len() != s.len() {
                injective = false;
            }
            if !m.contains(&image) {
                simplicial = false;
            }
            hit.insert(image);
        }
    }
    let all_hit = m.f_vector().iter().sum::<usize>() == hit.len();
    Ok(CompleteJoinReport {
        simplicial_surjective: simplicial && all_hit,
        injective_on_simplices: injective,
        fiber_join: d.fiber_join().same_simplices(c),
    })
}

pub fn check_complete_join(n: usize, ctx: &Context, cap: u128) -> Result<bool> {
    Ok(complete_join_report(&dlink_complex(n, ctx, cap)?)?.holds())
}

/// `⌊(n+1)/3⌋ − 2`.
pub fn connectivity_bound(n: usize) -> isize {
    ((n + 1) / 3) as isize - 2
}

/// Reduced homology through the connectivity bound.
#[derive(Clone, Debug)]
pub struct ConnectivityReport {
    pub n: usize,
    pub bound: isize,
    pub f_vector: Vec<usize>,
    /// Absent when the bound is negative.
    pub homology: Option<HomologyResult<BigInt>>,
    pub holds: bool,
}

impl fmt::Display for ConnectivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            write!(f, "n={}: homology-consistent with {}-connected", self.n, self.bound)
        } else {
            write!(f, "n={}: nonvanishing homology at or below degree {}", self.n, self.bound)
        }
    }
}

/// Checks `H̃_i = 0` for `i ≤ ⌊(n+1)/3⌋ − 2`; a negative bound only asks
/// for a nonempty complex.
pub fn connectivity_of(c: &SimplicialComplex, n: usize) -> ConnectivityReport {
    let bound = connectivity_bound(n);
    let f_vector = c.f_vector();
    if bound < 0 {
        let holds = bound < -1 || c.vertex_count() > 0;
        return ConnectivityReport { n, bound, f_vector, homology: None, holds };
    }
    let h = homology(c, bound as usize);
    let holds = h.is_acyclic_through(bound);
    ConnectivityReport { n, bound, f_vector, homology: Some(h), holds }
}

pub fn connectivity_check(n: usize, ctx: &Context, cap: u128) -> Result<ConnectivityReport> {
    Ok(connectivity_of(dlink_complex(n, ctx, cap)?.complex(), n))
}
