//! Distinguished elements and maps: `ι`, `ρ`, `Λ_u`, the label-forgetting
//! projection, the functor `V(−)` and the generation rewriting.

use std::collections::BTreeMap;

use crate::diagrams::{BitWord, Column, LabeledDiagram, Leaf, PartitionSet};
use crate::error::{Error, Result};
use crate::groups::{GroupBackend, GroupElement};
use crate::vphi::{Context, VPhiElement};

/// `ι(g) = [(0|g|0), (1|1|1)]`.
pub fn iota(ctx: &Context, g: &GroupElement) -> Result<VPhiElement> {
    let g = ctx.project(g)?;
    let one = ctx.backend().identity();
    let columns = vec![
        Column::new(Leaf::tree(BitWord::from_bits(vec![false])), g, Leaf::tree(BitWord::from_bits(vec![false]))),
        Column::new(Leaf::tree(BitWord::from_bits(vec![true])), one, Leaf::tree(BitWord::from_bits(vec![true]))),
    ];
    VPhiElement::from_stored(ctx, LabeledDiagram::tree(columns)?)
}

/// First label of the reduced diagram. Diagonal contexts only.
pub fn rho(a: &VPhiElement) -> Result<GroupElement> {
    a.context().require_diagonal("rho")?;
    Ok(a.columns()[0].label.clone())
}

/// The leaves hanging off the path to `u`, together with `u`, sorted.
pub fn path_completion(u: &BitWord) -> PartitionSet {
    let mut words: Vec<BitWord> = (0..u.len())
        .map(|i| u.prefix(i).child(!u.bits()[i]))
        .collect();
    words.push(u.clone());
    PartitionSet::from_words(words).expect("path completion is a partition")
}

/// `Λ_u(g)`: label `g` on the cone at `u`, identity elsewhere.
pub fn lambda_u(ctx: &Context, u: &BitWord, g: &GroupElement) -> Result<VPhiElement> {
    let g = ctx.project(g)?;
    let one = ctx.backend().identity();
    let t = path_completion(u);
    let labels: Vec<GroupElement> =
        t.leaves().iter().map(|l| if l.word == *u { g.clone() } else { one.clone() }).collect();
    VPhiElement::from_labels(ctx, &t, &labels)
}

/// Whether `σ` is the identity on leaf ranks.
pub fn in_f(a: &VPhiElement) -> bool {
    a.diagram().permutation().iter().enumerate().all(|(i, &j)| i == j)
}

/// Whether `σ` is a power of the cycle `(1 2 ⋯ n)` on leaf ranks.
pub fn in_t(a: &VPhiElement) -> bool {
    let sigma = a.diagram().permutation();
    let n = sigma.len();
    let c = sigma[0];
    sigma.iter().enumerate().all(|(i, &j)| j == (i + c) % n)
}

/// Replaces every label by `1`. Diagonal contexts only.
pub fn v_strip(a: &VPhiElement) -> Result<VPhiElement> {
    let ctx = a.context();
    ctx.require_diagonal("stripping labels")?;
    let one = ctx.backend().identity();
    VPhiElement::from_stored(ctx, a.diagram().map_labels(|_| Ok(one.clone()))?)
}

/// Membership in the kernel `lim_T G` of the stripping map.
pub fn in_label_kernel(a: &VPhiElement) -> Result<bool> {
    Ok(v_strip(a)?.is_identity())
}

/// A homomorphism between finite groups, stored as a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: GroupBackend,
    target: GroupBackend,
    map: BTreeMap<GroupElement, GroupElement>,
}

impl GroupHom {
    /// Tabulates `f` and checks the homomorphism law exhaustively.
    pub fn new<F>(source: GroupBackend, target: GroupBackend, f: F) -> Result<Self>
    where
        F: Fn(&GroupElement) -> GroupElement,
    {
        let elements = source
            .elements()
            .ok_or_else(|| Error::Unsupported("homomorphisms need a finite source".into()))?;
        if !target.is_finite() {
            return Err(Error::Unsupported("homomorphisms need a finite target".into()));
        }
        let map: BTreeMap<GroupElement, GroupElement> = elements.iter().map(|g| (g.clone(), f(g))).collect();
        for h in map.values() {
            target.check(h)?;
        }
        for a in &elements {
            for b in &elements {
                let lhs = &map[&source.mul(a, b)?];
                let rhs = target.mul(&map[a], &map[b])?;
                if *lhs != rhs {
                    return Err(Error::NotHomomorphism(format!(
                        "f({}*{}) != f({})*f({})",
                        source.format_label(a),
                        source.format_label(b),
                        source.format_label(a),
                        source.format_label(b)
                    )));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        self.map.get(g).cloned().ok_or_else(|| Error::BackendMismatch("outside the source group".into()))
    }

    pub fn is_injective(&self) -> bool {
        let mut images: Vec<&GroupElement> = self.map.values().collect();
        images.sort();
        images.dedup();
        images.len() == self.map.len()
    }

    pub fn source(&self) -> &GroupBackend {
        &self.source
    }

    pub fn target(&self) -> &GroupBackend {
        &self.target
    }
}

/// `V(f)(a)`: apply `f` to every label. Both contexts diagonal.
pub fn v_functor(f: &GroupHom, a: &VPhiElement, target: &Context) -> Result<VPhiElement> {
    a.context().require_diagonal("the functor V(-)")?;
    target.require_diagonal("the functor V(-)")?;
    if a.context().backend() != f.source() || target.backend() != f.target() {
        return Err(Error::ContextMismatch);
    }
    VPhiElement::from_stored(target, a.diagram().map_labels(|g| f.apply(g))?)
}

/// A factor of a word in label-free elements and `ι`-images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorFactor {
    Trivial(VPhiElement),
    Iota(GroupElement),
}

/// A label-free element carrying the cone at `u` onto the cone at `0`.
fn cone_to_zero(ctx: &Context, u: &BitWord) -> Result<VPhiElement> {
    let dom = path_completion(u);
    let n = u.len();
    let mut ran: Vec<BitWord> = (1..n).map(|i| BitWord::repeat(true, i).child(false)).collect();
    ran.push(BitWord::repeat(true, n));
    ran.insert(0, BitWord::from_bits(vec![false]));
    let ran = PartitionSet::from_words(ran)?;
    let target_of_u = 0;
    let pos_u = dom.rank(&Leaf::tree(u.clone())).expect("u in completion");
    let mut perm = Vec::with_capacity(dom.len());
    let mut next = 1;
    for i in 0..dom.len() {
        if i == pos_u {
            perm.push(target_of_u);
        } else {
            perm.push(next);
            next += 1;
        }
    }
    VPhiElement::from_permutation(ctx, &dom, &perm, &ran)
}

/// Rewrites `a` as a product of label-free elements and `ι`-images.
/// Diagonal contexts only.
pub fn generation_word(a: &VPhiElement) -> Result<Vec<GeneratorFactor>> {
    let ctx = a.context();
    ctx.require_diagonal("generation by V and iota(G)")?;
    let g = ctx.backend();
    let mut word = Vec::new();
    for c in a.columns() {
        if g.is_identity(&c.label) {
            continue;
        }
        let u = &c.dom.word;
        if u.is_empty() {
            // (ε|g|ε) = ι(g) · Λ_1(g)
            word.push(GeneratorFactor::Iota(c.label.clone()));
            let k = cone_to_zero(ctx, &BitWord::from_bits(vec![true]))?;
            word.push(GeneratorFactor::Trivial(k.clone()));
            word.push(GeneratorFactor::Iota(c.label.clone()));
            word.push(GeneratorFactor::Trivial(k.inv()?));
        } else {
            let k = cone_to_zero(ctx, u)?;
            word.push(GeneratorFactor::Trivial(k.clone()));
            word.push(GeneratorFactor::Iota(c.label.clone()));
            word.push(GeneratorFactor::Trivial(k.inv()?));
        }
    }
    let one = g.identity();
    let columns = a.columns().iter().map(|c| Column::new(c.dom.clone(), one.clone(), c.ran.clone())).collect();
    word.push(GeneratorFactor::Trivial(VPhiElement::from_stored(ctx, LabeledDiagram::tree(columns)?)?));
    Ok(word)
}

pub fn evaluate_generation_word(ctx: &Context, word: &[GeneratorFactor]) -> Result<VPhiElement> {
    let mut acc = VPhiElement::identity(ctx);
    for f in word {
        let x = match f {
            GeneratorFactor::Trivial(v) => v.clone(),
            GeneratorFactor::Iota(g) => iota(ctx, g)?,
        };
        acc = acc.mul(&x)?;
    }
    Ok(acc)
}
