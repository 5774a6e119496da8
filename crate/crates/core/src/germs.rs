//! Labels on dyadic intervals, labeled supports, germs at `ω₀ = 000⋯` and
//! the transverse relation between them.

use std::collections::HashSet;

use crate::diagrams::{BitWord, Column, EventuallyPeriodicWord, LabeledDiagram, Leaf};
use crate::error::{Error, Result};
use crate::groups::GroupElement;
use crate::vphi::{Context, VPhiElement};

/// `a` restricted to the cone at `u`: the label and the image cone.
/// `None` when `u` is coarser than the reduced domain.
pub fn restrict(a: &VPhiElement, u: &BitWord) -> Result<Option<(GroupElement, BitWord)>> {
    let Some(c) = a.columns().iter().find(|c| c.dom.word.is_prefix_of(u)) else {
        return Ok(None);
    };
    let tail = u.strip_prefix(&c.dom.word).expect("prefix");
    let (img, section) = a.recursion().follow(&c.label, &tail)?;
    Ok(Some((section, c.ran.word.concat(&img))))
}

/// The label of `a` at the cone `u`.
///
/// Every representative of `a` expands its reduced form, so an interval
/// strictly coarser than the reduced domain carries no label.
pub fn label_at(a: &VPhiElement, u: &BitWord) -> Result<GroupElement> {
    restrict(a, u)?.map(|(g, _)| g).ok_or(Error::LabelUndefined)
}

/// Depth-`d` cones not certified outside the labeled support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportApprox {
    pub depth: usize,
    pub included: Vec<BitWord>,
}

impl SupportApprox {
    pub fn contains(&self, u: &BitWord) -> bool {
        self.included.binary_search(u).is_ok()
    }

    /// Total measure of the included cones.
    pub fn measure(&self) -> f64 {
        self.included.len() as f64 / 2f64.powi(self.depth as i32)
    }

    pub fn is_disjoint(&self, other: &SupportApprox) -> bool {
        let (fine, coarse) = if self.depth >= other.depth { (self, other) } else { (other, self) };
        fine.included.iter().all(|u| !coarse.contains(&u.prefix(coarse.depth)))
    }
}

/// A cone `u` is excluded when `a` fixes it pointwise with trivial label.
pub fn lsupp_approx(a: &VPhiElement, depth: usize) -> Result<SupportApprox> {
    if depth < a.depth() {
        return Err(Error::DepthTooShallow { needed: a.depth() });
    }
    let g = a.context().backend();
    let mut included = Vec::new();
    for u in BitWord::all_of_length(depth) {
        let (label, ran) = restrict(a, &u)?.expect("deep enough");
        if !(g.is_identity(&label) && ran == u) {
            included.push(u);
        }
    }
    Ok(SupportApprox { depth, included })
}

/// Commutator test for elements with certified disjoint supports.
pub fn disjoint_supports_commute(a: &VPhiElement, b: &VPhiElement, depth: usize) -> Result<bool> {
    let depth = depth.max(a.depth()).max(b.depth());
    let (sa, sb) = (lsupp_approx(a, depth)?, lsupp_approx(b, depth)?);
    if !sa.is_disjoint(&sb) {
        return Err(Error::NotCertified("labeled supports overlap at this depth".into()));
    }
    Ok(a.commutator(b)?.is_identity())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GermComparison {
    /// Same map and label on the cone `0^d`.
    Equivalent(usize),
    /// Certified different on every neighbourhood; `d` is the depth where
    /// this became certain.
    Distinct(usize),
    Unknown,
}

/// Depth at which the first columns of both elements are reached.
fn spine_start(a: &VPhiElement) -> usize {
    a.columns()[0].dom.len()
}

/// Compares the labeled germs of `a` and `b` at `ω₀`, walking down the
/// `0`-spine for at most `budget` levels.
pub fn germ_compare(a: &VPhiElement, b: &VPhiElement, budget: usize) -> Result<GermComparison> {
    a.context().check_same(b.context())?;
    if a == b {
        return Ok(GermComparison::Equivalent(0));
    }
    let phi = a.recursion();
    let start = spine_start(a).max(spine_start(b));
    let u = BitWord::repeat(false, start);
    let (mut ga, mut va) = restrict(a, &u)?.expect("deep enough");
    let (mut gb, mut vb) = restrict(b, &u)?.expect("deep enough");
    let mut seen = HashSet::new();
    for depth in start..=start + budget {
        if va != vb {
            return Ok(GermComparison::Distinct(depth));
        }
        if ga == gb {
            return Ok(GermComparison::Equivalent(depth));
        }
        if !seen.insert((ga.clone(), gb.clone())) {
            return Ok(GermComparison::Distinct(depth));
        }
        let (ia, ib) = (phi.apply(&ga)?, phi.apply(&gb)?);
        va.push(ia.swap);
        vb.push(ib.swap);
        ga = ia.left;
        gb = ib.left;
    }
    Ok(GermComparison::Unknown)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perp {
    /// Images of `ω₀` first differ at this (1-based) letter.
    Transverse(usize),
    NotTransverse,
    Unknown,
}

/// Whether the images of `ω₀` differ.
pub fn perp(a: &VPhiElement, b: &VPhiElement, budget: usize) -> Result<Perp> {
    let w = EventuallyPeriodicWord::zero();
    let (Some(x), Some(y)) = (a.image_point(&w, budget)?, b.image_point(&w, budget)?) else {
        return Ok(Perp::Unknown);
    };
    if x == y {
        return Ok(Perp::NotTransverse);
    }
    let bound = x.prefix().len().max(y.prefix().len()) + x.period().len() * y.period().len();
    let i = (0..=bound).find(|&i| x.letter(i) != y.letter(i)).expect("distinct canonical points differ early");
    Ok(Perp::Transverse(i + 1))
}

/// Leaves of the smallest tree containing the prefix-free set `words`.
fn complete(words: &[BitWord]) -> Vec<BitWord> {
    fn rec(p: BitWord, words: &[&BitWord], out: &mut Vec<BitWord>) {
        if words.is_empty() || (words.len() == 1 && *words[0] == p) {
            out.push(p);
            return;
        }
        let d = p.len();
        let (zero, one): (Vec<&BitWord>, Vec<&BitWord>) = words.iter().partition(|w| !w.bits()[d]);
        rec(p.child(false), &zero, out);
        rec(p.child(true), &one, out);
    }
    let refs: Vec<&BitWord> = words.iter().collect();
    let mut out = Vec::new();
    rec(BitWord::new(), &refs, &mut out);
    out
}

fn pairwise_incomparable(words: &[BitWord]) -> bool {
    words.iter().enumerate().all(|(i, u)| words[i + 1..].iter().all(|v| !u.is_comparable(v)))
}

/// Splits fillers (leaves not in `fixed`) until there are `target` leaves.
fn pad(mut leaves: Vec<BitWord>, fixed: &HashSet<BitWord>, target: usize) -> Vec<BitWord> {
    while leaves.len() < target {
        let i = leaves.iter().position(|l| !fixed.contains(l)).expect("a filler leaf exists");
        let l = leaves.remove(i);
        leaves.push(l.child(false));
        leaves.push(l.child(true));
    }
    leaves.sort();
    leaves
}

/// `γ` with `B_i · γ` germ-equivalent to `A_i` at `ω₀` for every `i`.
pub fn transitivity_witness(a: &[VPhiElement], b: &[VPhiElement], budget: usize) -> Result<VPhiElement> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Precondition("tuples must be nonempty and of equal length".into()));
    }
    let ctx: &Context = a[0].context();
    for x in a.iter().chain(b) {
        ctx.check_same(x.context())?;
    }
    for tuple in [a, b] {
        for i in 0..tuple.len() {
            for j in i + 1..tuple.len() {
                if !matches!(perp(&tuple[i], &tuple[j], budget)?, Perp::Transverse(_)) {
                    return Err(Error::NotCertified(format!("entries {i} and {j} are not transverse")));
                }
            }
        }
    }
    let g = ctx.backend();
    let start = a.iter().chain(b).map(spine_start).max().expect("nonempty");
    for k in start..=start + budget {
        let u = BitWord::repeat(false, k);
        let ra: Vec<(GroupElement, BitWord)> =
            a.iter().map(|x| Ok(restrict(x, &u)?.expect("deep enough"))).collect::<Result<_>>()?;
        let rb: Vec<(GroupElement, BitWord)> =
            b.iter().map(|x| Ok(restrict(x, &u)?.expect("deep enough"))).collect::<Result<_>>()?;
        let wa: Vec<BitWord> = ra.iter().map(|r| r.1.clone()).collect();
        let wb: Vec<BitWord> = rb.iter().map(|r| r.1.clone()).collect();
        if !pairwise_incomparable(&wa) || !pairwise_incomparable(&wb) {
            continue;
        }
        let (ca, cb) = (complete(&wa), complete(&wb));
        let n = a.len();
        if (ca.len() == n) != (cb.len() == n) {
            continue;
        }
        let target = ca.len().max(cb.len());
        let fixed_a: HashSet<BitWord> = wa.iter().cloned().collect();
        let fixed_b: HashSet<BitWord> = wb.iter().cloned().collect();
        let ca = pad(ca, &fixed_a, target);
        let cb = pad(cb, &fixed_b, target);
        let mut columns = Vec::with_capacity(target);
        for i in 0..n {
            let h = g.mul(&g.inv(&rb[i].0)?, &ra[i].0)?;
            columns.push(Column::new(Leaf::tree(wb[i].clone()), h, Leaf::tree(wa[i].clone())));
        }
        let fillers_b = cb.iter().filter(|l| !fixed_b.contains(*l));
        let fillers_a = ca.iter().filter(|l| !fixed_a.contains(*l));
        for (d, r) in fillers_b.zip(fillers_a) {
            columns.push(Column::new(Leaf::tree(d.clone()), g.identity(), Leaf::tree(r.clone())));
        }
        let gamma = VPhiElement::from_stored(ctx, LabeledDiagram::tree(columns)?)?;
        for (x, y) in a.iter().zip(b) {
            if !matches!(germ_compare(&y.mul(&gamma)?, x, budget)?, GermComparison::Equivalent(_)) {
                return Err(Error::NotCertified("witness failed germ verification".into()));
            }
        }
        return Ok(gamma);
    }
    Err(Error::NotCertified("no separating neighbourhood within budget".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{GroupBackend, WreathRecursion};
    use crate::vphi::lambda_u;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn completion() {
        let c = complete(&[w("01"), w("1")]);
        assert_eq!(c, vec![w("00"), w("01"), w("1")]);
        assert_eq!(complete(&[]), vec![w("")]);
    }

    #[test]
    fn right_rule_support_is_a_point_path() {
        let ctx = Context::new(WreathRecursion::right(GroupBackend::Cyclic(Some(2)))).unwrap();
        let x = lambda_u(&ctx, &w("0"), &GroupElement::Int(1)).unwrap();
        assert_eq!(lsupp_approx(&x, 3).unwrap().included, vec![w("011")]);
        assert_eq!(label_at(&x, &w("00")).unwrap(), GroupElement::Int(0));
        assert_eq!(label_at(&x, &w("")), Err(Error::LabelUndefined));
        assert_eq!(lsupp_approx(&x, 0).unwrap_err(), Error::DepthTooShallow { needed: 1 });
    }
}
