//! Explicit commutator factorizations in `V(G)` for the diagonal recursion.
//!
//! Every element splits as `r · f · v` where `r` has trivial first label,
//! `f` carries only the first label and `v` is label-free. Elements of the
//! first kind are single commutators with explicitly constructed factors,
//! and `f` becomes one after conjugating by a leaf swap.

use crate::diagrams::{BitWord, LabeledDiagram, PartitionSet};
use crate::error::{Error, Result};
use crate::groups::GroupElement;
use crate::vphi::{Context, VPhiElement};

/// `target = ∏ [p_i, q_i] · tail` with a label-free tail.
#[derive(Clone, Debug)]
pub struct CommutatorCertificate {
    pub factors: Vec<(VPhiElement, VPhiElement)>,
    pub tail: VPhiElement,
    pub target: VPhiElement,
}

impl CommutatorCertificate {
    /// Recomputes the product exactly.
    pub fn verify(&self) -> Result<bool> {
        let ctx = self.target.context();
        let mut acc = VPhiElement::identity(ctx);
        for (p, q) in &self.factors {
            acc = acc.mul(&p.commutator(q)?)?;
        }
        acc = acc.mul(&self.tail)?;
        Ok(acc == self.target && self.tail.diagram().has_trivial_labels(ctx.backend()))
    }
}

/// A representative with at least two columns, sorted by domain.
fn spread(a: &VPhiElement) -> Result<LabeledDiagram> {
    let d = a.diagram().clone();
    if d.len() >= 2 {
        Ok(d)
    } else {
        d.simple_expand(a.recursion(), 0)
    }
}

/// `a = r · f · v` as described in the module docs.
pub fn split3(a: &VPhiElement) -> Result<(VPhiElement, VPhiElement, VPhiElement)> {
    let ctx = a.context();
    ctx.require_diagonal("the three-factor split")?;
    if a.is_identity() {
        let id = VPhiElement::identity(ctx);
        return Ok((id.clone(), id.clone(), id));
    }
    let d = spread(a)?;
    let t = d.domain();
    let one = ctx.backend().identity();
    let labels: Vec<GroupElement> = d.labels().cloned().collect();
    let mut rest = labels.clone();
    rest[0] = one.clone();
    let mut first = vec![one.clone(); labels.len()];
    first[0] = labels[0].clone();
    let r = VPhiElement::from_labels(ctx, &t, &rest)?;
    let f = VPhiElement::from_labels(ctx, &t, &first)?;
    let v = VPhiElement::from_stored(ctx, d.map_labels(|_| Ok(one.clone()))?)?;
    Ok((r, f, v))
}

/// `[T, ((1,…,1), (1 2)), T]`: swaps the first two leaves of `T`.
pub fn swap12_conjugator(ctx: &Context, t: &PartitionSet) -> Result<VPhiElement> {
    if t.len() < 2 {
        return Err(Error::Precondition("swap conjugator needs at least two leaves".into()));
    }
    let mut perm: Vec<usize> = (0..t.len()).collect();
    perm.swap(0, 1);
    VPhiElement::from_permutation(ctx, t, &perm, t)
}

/// Checks `v = [T, ((1,g₂,…,gₙ), id), T]` and returns `T` with the labels.
fn trivial_first_label_form(v: &VPhiElement) -> Result<(PartitionSet, Vec<GroupElement>)> {
    let g = v.context().backend();
    let d = v.diagram();
    let ok = d.columns().iter().all(|c| c.dom == c.ran) && g.is_identity(&d.columns()[0].label);
    if !ok {
        return Err(Error::Precondition(
            "expected identity leaf permutation, equal partitions and trivial first label".into(),
        ));
    }
    Ok((d.domain(), d.labels().cloned().collect()))
}

/// `(p, q)` with `v = p·q·p⁻¹·q⁻¹` for `v = [T, ((1,g₂,…,gₙ), id), T]`.
pub fn commutator_witness(v: &VPhiElement) -> Result<(VPhiElement, VPhiElement)> {
    let ctx = v.context();
    ctx.require_diagonal("commutator witnesses")?;
    let (t, labels) = trivial_first_label_form(v)?;
    let id = VPhiElement::identity(ctx);
    if v.is_identity() {
        return Ok((id.clone(), id));
    }
    let n = t.len();
    let leaves = t.leaves();
    let u1 = &leaves[0].word;

    // T': n-1 carets along the leftmost leaf
    let mut t1: Vec<BitWord> = vec![u1.concat(&BitWord::repeat(false, n - 1))];
    for m in (0..n - 1).rev() {
        t1.push(u1.concat(&BitWord::repeat(false, m)).child(true));
    }
    t1.extend(leaves[1..].iter().map(|l| l.word.clone()));
    let t1 = PartitionSet::from_words(t1)?;
    // T'': one caret on every other leaf
    let mut t2: Vec<BitWord> = vec![u1.clone()];
    for l in &leaves[1..] {
        t2.push(l.word.child(false));
        t2.push(l.word.child(true));
    }
    let t2 = PartitionSet::from_words(t2)?;
    debug_assert_eq!(t1.len(), 2 * n - 1);
    debug_assert_eq!(t2.len(), 2 * n - 1);

    // zero-based: leaf i of T'' goes to leaf alpha[i] of T'
    let mut alpha = vec![0; 2 * n - 1];
    for i in 0..n {
        alpha[2 * i] = i;
    }
    for j in 1..n {
        alpha[2 * j - 1] = n + j - 1;
    }
    // leaf i of T' goes to leaf beta[i] of T''
    let mut beta = vec![0; 2 * n - 1];
    for i in 1..n {
        beta[i] = 2 * i - 1;
    }
    for j in 1..n {
        beta[n + j - 1] = 2 * j;
    }
    let a = VPhiElement::from_permutation(ctx, &t2, &alpha, &t1)?;
    let b = VPhiElement::from_permutation(ctx, &t1, &beta, &t2)?;

    let w = v.commutator(&a)?;
    let one = ctx.backend().identity();
    let mut expected = vec![one.clone()];
    for g in &labels[1..] {
        expected.push(one.clone());
        expected.push(g.clone());
    }
    let expected = VPhiElement::from_labels(ctx, &t2, &expected)?;
    debug_assert_eq!(w, expected, "v a v^-1 a^-1 has the interleaved labels");
    if w != expected {
        return Err(Error::Precondition("interleaving identity failed".into()));
    }

    let b_inv = b.inv()?;
    let p = b.mul(v)?.mul(&b_inv)?;
    let q = b.mul(&a)?.mul(&b_inv)?;
    Ok((p, q))
}

/// `a = [p₁,q₁]·[p₂,q₂]·tail` with a label-free tail.
pub fn decompose(a: &VPhiElement) -> Result<CommutatorCertificate> {
    let ctx = a.context();
    ctx.require_diagonal("commutator decomposition")?;
    if a.diagram().has_trivial_labels(ctx.backend()) {
        return Ok(CommutatorCertificate { factors: Vec::new(), tail: a.clone(), target: a.clone() });
    }
    let (r, f, v) = split3(a)?;
    let first = commutator_witness(&r)?;
    let t = spread(a)?.domain();
    let s = swap12_conjugator(ctx, &t)?;
    let moved = s.mul(&f)?.mul(&s)?;
    let (p, q) = commutator_witness(&moved)?;
    let second = (s.mul(&p)?.mul(&s)?, s.mul(&q)?.mul(&s)?);
    let cert = CommutatorCertificate { factors: vec![first, second], tail: v, target: a.clone() };
    if !cert.verify()? {
        return Err(Error::Precondition("certificate failed to verify".into()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupBackend;
    use crate::vphi::iota;

    #[test]
    fn swap_moves_first_label() {
        let g = GroupBackend::Cyclic(Some(2));
        let ctx = Context::diagonal(g.clone());
        let t = PartitionSet::parse("0 1").unwrap();
        let s = swap12_conjugator(&ctx, &t).unwrap();
        let x = iota(&ctx, &GroupElement::Int(1)).unwrap();
        let moved = s.mul(&x).unwrap().mul(&s).unwrap();
        assert_eq!(moved.columns()[1].label, GroupElement::Int(1));
        assert!(s.mul(&s).unwrap().is_identity());
    }

    #[test]
    fn witness_on_two_leaves() {
        let g = GroupBackend::Cyclic(Some(2));
        let ctx = Context::diagonal(g);
        let t = PartitionSet::parse("0 1").unwrap();
        let v = VPhiElement::from_labels(&ctx, &t, &[GroupElement::Int(0), GroupElement::Int(1)]).unwrap();
        let (p, q) = commutator_witness(&v).unwrap();
        assert_eq!(p.commutator(&q).unwrap(), v);
    }

    #[test]
    fn identity_cases() {
        let ctx = Context::diagonal(GroupBackend::Symmetric(3));
        let id = VPhiElement::identity(&ctx);
        let (r, f, v) = split3(&id).unwrap();
        assert!(r.is_identity() && f.is_identity() && v.is_identity());
        let (p, q) = commutator_witness(&id).unwrap();
        assert!(p.is_identity() && q.is_identity());
        let cert = decompose(&id).unwrap();
        assert!(cert.factors.is_empty());
        assert!(cert.verify().unwrap());
    }
}
