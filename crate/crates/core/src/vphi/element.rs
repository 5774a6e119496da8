use std::collections::HashMap;
use std::fmt;

use crate::diagrams::{BitWord, Column, EventuallyPeriodicWord, LabeledDiagram, Leaf, PartitionSet};
use crate::error::{Error, Result};
use crate::groups::{GroupElement, WreathRecursion};
use crate::vphi::Context;

/// Default number of transducer steps when computing exact images.
pub const DEFAULT_IMAGE_BUDGET: usize = 1 << 16;

/// An element of the labeled Thompson groupoid: a reduced diagram from `m`
/// roots to `n` roots.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupoidElement {
    ctx: Context,
    diagram: LabeledDiagram,
}

impl GroupoidElement {
    /// Builds an element from a diagram labeled in the source group.
    pub fn new(ctx: &Context, diagram: LabeledDiagram) -> Result<Self> {
        let d = diagram.map_labels(|g| ctx.project(g))?;
        Self::from_stored(ctx, d)
    }

    /// Builds an element from a diagram whose labels already live in the
    /// stored backend.
    pub fn from_stored(ctx: &Context, diagram: LabeledDiagram) -> Result<Self> {
        for g in diagram.labels() {
            ctx.backend().check(g)?;
        }
        let diagram = diagram.reduce(ctx.recursion())?;
        Ok(GroupoidElement { ctx: ctx.clone(), diagram })
    }

    pub(crate) fn from_reduced(ctx: &Context, diagram: LabeledDiagram) -> Self {
        GroupoidElement { ctx: ctx.clone(), diagram }
    }

    pub fn identity(ctx: &Context, n: u32) -> Self {
        GroupoidElement { ctx: ctx.clone(), diagram: LabeledDiagram::identity(n, ctx.backend()) }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn diagram(&self) -> &LabeledDiagram {
        &self.diagram
    }

    pub fn roots(&self) -> (u32, u32) {
        self.diagram.roots()
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &GroupoidElement) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let phi = self.ctx.recursion();
        let d = self.diagram.compose(&other.diagram, phi)?.reduce(phi)?;
        Ok(Self::from_reduced(&self.ctx, d))
    }

    pub fn inv(&self) -> Result<Self> {
        let phi = self.ctx.recursion();
        let d = self.diagram.inverse(phi.backend())?.reduce(phi)?;
        Ok(Self::from_reduced(&self.ctx, d))
    }

    pub fn is_identity(&self) -> bool {
        let (m, n) = self.roots();
        m == n
            && self.diagram.columns().iter().enumerate().all(|(i, c)| {
                c.dom == Leaf::root(i as u32) && c.ran == c.dom && self.ctx.backend().is_identity(&c.label)
            })
    }

    pub fn render(&self) -> String {
        self.diagram.render(self.ctx.backend())
    }
}

impl fmt::Debug for GroupoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.diagram)
    }
}

/// An element of `V_φ(G)`: a reduced single-tree diagram.
#[derive(Clone, PartialEq, Eq)]
pub struct VPhiElement(GroupoidElement);

impl VPhiElement {
    pub fn new(ctx: &Context, diagram: LabeledDiagram) -> Result<Self> {
        Self::from_groupoid(GroupoidElement::new(ctx, diagram)?)
    }

    pub fn from_stored(ctx: &Context, diagram: LabeledDiagram) -> Result<Self> {
        Self::from_groupoid(GroupoidElement::from_stored(ctx, diagram)?)
    }

    pub fn from_groupoid(g: GroupoidElement) -> Result<Self> {
        if g.roots() != (1, 1) {
            return Err(Error::ArityMismatch { left: g.roots().0 as usize, right: g.roots().1 as usize });
        }
        Ok(VPhiElement(g))
    }

    /// Builds an element from `(dom, label, ran)` triples with labels in the
    /// source group.
    pub fn from_triples(ctx: &Context, triples: &[(&str, GroupElement, &str)]) -> Result<Self> {
        let columns = triples
            .iter()
            .map(|(d, g, r)| Ok(Column::new(Leaf::tree(d.parse()?), g.clone(), Leaf::tree(r.parse()?))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, LabeledDiagram::tree(columns)?)
    }

    /// A label-free element from matching domain and range partitions:
    /// leaf `i` of `dom` goes to leaf `perm[i]` of `ran`.
    pub fn from_permutation(ctx: &Context, dom: &PartitionSet, perm: &[usize], ran: &PartitionSet) -> Result<Self> {
        if dom.len() != perm.len() || ran.len() != perm.len() {
            return Err(Error::InvalidDiagram("partition sizes differ from permutation".into()));
        }
        let one = ctx.backend().identity();
        let columns = dom
            .leaves()
            .iter()
            .zip(perm)
            .map(|(u, &j)| Column::new(u.clone(), one.clone(), ran.leaves()[j].clone()))
            .collect();
        Self::from_stored(ctx, LabeledDiagram::tree(columns)?)
    }

    /// Same partition on both sides with the given stored labels.
    pub fn from_labels(ctx: &Context, t: &PartitionSet, labels: &[GroupElement]) -> Result<Self> {
        let columns = t
            .leaves()
            .iter()
            .zip(labels)
            .map(|(u, g)| Column::new(u.clone(), g.clone(), u.clone()))
            .collect();
        Self::from_stored(ctx, LabeledDiagram::tree(columns)?)
    }

    pub fn identity(ctx: &Context) -> Self {
        VPhiElement(GroupoidElement::identity(ctx, 1))
    }

    pub fn context(&self) -> &Context {
        self.0.context()
    }

    pub fn diagram(&self) -> &LabeledDiagram {
        self.0.diagram()
    }

    pub fn columns(&self) -> &[Column] {
        self.0.diagram().columns()
    }

    pub fn as_groupoid(&self) -> &GroupoidElement {
        &self.0
    }

    pub fn recursion(&self) -> &WreathRecursion {
        self.0.context().recursion()
    }

    pub fn mul(&self, other: &VPhiElement) -> Result<Self> {
        Ok(VPhiElement(self.0.mul(&other.0)?))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(VPhiElement(self.0.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::identity(self.context());
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// `[self, other] = self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &VPhiElement) -> Result<Self> {
        self.mul(other)?.mul(&self.inv()?)?.mul(&other.inv()?)
    }

    /// `other⁻¹ · self · other`.
    pub fn conjugate_by(&self, other: &VPhiElement) -> Result<Self> {
        other.inv()?.mul(self)?.mul(other)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Longest domain word of the reduced diagram.
    pub fn depth(&self) -> usize {
        self.diagram().depth()
    }

    /// The column whose domain word is a prefix of `w`.
    pub fn column_for(&self, w: &EventuallyPeriodicWord) -> &Column {
        self.columns()
            .iter()
            .find(|c| w.starts_with(&c.dom.word))
            .expect("domain words partition the Cantor set")
    }

    /// First `depth` letters of the image of `w`.
    pub fn act_point(&self, w: &EventuallyPeriodicWord, depth: usize) -> Result<BitWord> {
        let c = self.column_for(w);
        let tail = w.strip_prefix(&c.dom.word).expect("column matches");
        let mut out = c.ran.word.prefix(depth);
        let rest = depth - out.len();
        let (img, _) = self.recursion().follow(&c.label, &tail.take(rest))?;
        for x in img.iter() {
            out.push(x);
        }
        Ok(out)
    }

    /// Exact image of `w`, or `None` if the transducer has not cycled within
    /// `budget` steps.
    pub fn image_point(&self, w: &EventuallyPeriodicWord, budget: usize) -> Result<Option<EventuallyPeriodicWord>> {
        let c = self.column_for(w);
        let tail = w.strip_prefix(&c.dom.word).expect("column matches");
        Ok(label_image(self.recursion(), &c.label, &tail, budget)?.map(|img| img.prepend(&c.ran.word)))
    }

    /// Image of a finite word long enough to pass the domain leaves.
    pub fn act_word(&self, w: &BitWord) -> Result<Option<BitWord>> {
        let Some(c) = self.columns().iter().find(|c| c.dom.word.is_prefix_of(w)) else {
            return Ok(None);
        };
        let tail = w.strip_prefix(&c.dom.word).expect("prefix");
        Ok(Some(c.ran.word.concat(&self.recursion().tree_action(&c.label, &tail)?)))
    }

    pub fn render(&self) -> String {
        self.0.render()
    }
}

impl fmt::Debug for VPhiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Exact image of a Cantor point under the tree action of `g`.
pub fn label_image(
    phi: &WreathRecursion,
    g: &GroupElement,
    w: &EventuallyPeriodicWord,
    budget: usize,
) -> Result<Option<EventuallyPeriodicWord>> {
    let (head, mut state) = phi.follow(g, w.prefix())?;
    let period = w.period();
    let mut out: Vec<bool> = head.bits().to_vec();
    let mut seen: HashMap<(GroupElement, usize), usize> = HashMap::new();
    for step in 0.. {
        let i = step % period.len();
        if let Some(&start) = seen.get(&(state.clone(), i)) {
            let prefix = BitWord::from_bits(out[..start].to_vec());
            let cycle = BitWord::from_bits(out[start..].to_vec());
            return EventuallyPeriodicWord::new(prefix, cycle).map(Some);
        }
        if step >= budget {
            return Ok(None);
        }
        seen.insert((state.clone(), i), out.len());
        let x = period.bits()[i];
        let img = phi.apply(&state)?;
        out.push(x ^ img.swap);
        state = img.section(x).clone();
    }
    unreachable!()
}
