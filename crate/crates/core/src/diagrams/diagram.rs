//! Labeled paired forest diagrams in column form and the expansion calculus.

use std::fmt;

use crate::diagrams::{Leaf, PartitionSet};
use crate::error::{Error, Result};
use crate::groups::{GroupBackend, GroupElement, Injectivity, WreathImage, WreathRecursion};

/// One column `(u | g | v)`: the cone at `dom` is carried onto the cone at
/// `ran`, acting on tails by `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Column {
    pub dom: Leaf,
    pub label: GroupElement,
    pub ran: Leaf,
}

impl Column {
    pub fn new(dom: Leaf, label: GroupElement, ran: Leaf) -> Self {
        Column { dom, label, ran }
    }
}

/// A G-matrix from an `m`-root forest to an `n`-root forest, columns sorted
/// by domain leaf. The leaf permutation is derived from the range leaves.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledDiagram {
    roots: (u32, u32),
    columns: Vec<Column>,
}

fn siblings(a: &Leaf, b: &Leaf) -> bool {
    a.root == b.root
        && !a.word.is_empty()
        && a.word.len() == b.word.len()
        && a.word.last() == Some(false)
        && b.word.last() == Some(true)
        && a.word.bits()[..a.len() - 1] == b.word.bits()[..b.len() - 1]
}

impl LabeledDiagram {
    pub fn new(roots: (u32, u32), mut columns: Vec<Column>) -> Result<Self> {
        columns.sort();
        let doms: Vec<Leaf> = columns.iter().map(|c| c.dom.clone()).collect();
        let mut rans: Vec<Leaf> = columns.iter().map(|c| c.ran.clone()).collect();
        rans.sort();
        if !super::partition::is_forest_partition(roots.0, &doms) {
            return Err(Error::InvalidDiagram("domain leaves do not form a partition set".into()));
        }
        if !super::partition::is_forest_partition(roots.1, &rans) {
            return Err(Error::InvalidDiagram("range leaves do not form a partition set".into()));
        }
        Ok(LabeledDiagram { roots, columns })
    }

    /// A single-tree diagram.
    pub fn tree(columns: Vec<Column>) -> Result<Self> {
        Self::new((1, 1), columns)
    }

    pub(crate) fn from_sorted_unchecked(roots: (u32, u32), columns: Vec<Column>) -> Self {
        debug_assert!(columns.windows(2).all(|p| p[0].dom < p[1].dom));
        LabeledDiagram { roots, columns }
    }

    /// The identity on `n` roots.
    pub fn identity(n: u32, g: &GroupBackend) -> Self {
        let columns = (0..n).map(|r| Column::new(Leaf::root(r), g.identity(), Leaf::root(r))).collect();
        LabeledDiagram { roots: (n, n), columns }
    }

    pub fn roots(&self) -> (u32, u32) {
        self.roots
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Column> {
        self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn domain(&self) -> PartitionSet {
        PartitionSet::from_sorted_unchecked(self.roots.0, self.columns.iter().map(|c| c.dom.clone()).collect())
    }

    pub fn range(&self) -> PartitionSet {
        let mut rans: Vec<Leaf> = self.columns.iter().map(|c| c.ran.clone()).collect();
        rans.sort();
        PartitionSet::from_sorted_unchecked(self.roots.1, rans)
    }

    /// Longest domain word.
    pub fn depth(&self) -> usize {
        self.columns.iter().map(|c| c.dom.len()).max().unwrap_or(0)
    }

    /// Longest range word.
    pub fn range_depth(&self) -> usize {
        self.columns.iter().map(|c| c.ran.len()).max().unwrap_or(0)
    }

    /// `σ`: column `i` (in domain order) goes to the lexicographic rank of its range leaf.
    pub fn permutation(&self) -> Vec<usize> {
        let range = self.range();
        self.columns.iter().map(|c| range.rank(&c.ran).expect("range leaf")).collect()
    }

    pub fn labels(&self) -> impl Iterator<Item = &GroupElement> {
        self.columns.iter().map(|c| &c.label)
    }

    pub fn has_trivial_labels(&self, g: &GroupBackend) -> bool {
        self.labels().all(|l| g.is_identity(l))
    }

    /// Applies `f` to every label, keeping leaves.
    pub fn map_labels<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&GroupElement) -> Result<GroupElement>,
    {
        let columns = self
            .columns
            .iter()
            .map(|c| Ok(Column::new(c.dom.clone(), f(&c.label)?, c.ran.clone())))
            .collect::<Result<_>>()?;
        Ok(LabeledDiagram { roots: self.roots, columns })
    }

    /// The two columns replacing `c` under one expansion.
    pub fn split(phi: &WreathRecursion, c: &Column) -> Result<[Column; 2]> {
        let img = phi.apply(&c.label)?;
        Ok([
            Column::new(c.dom.child(false), img.left, c.ran.child(img.swap)),
            Column::new(c.dom.child(true), img.right, c.ran.child(!img.swap)),
        ])
    }

    /// Inverse of [`LabeledDiagram::split`]: merges two columns with sibling
    /// domains and sibling ranges when `φ` has a matching preimage.
    pub fn merge(phi: &WreathRecursion, c0: &Column, c1: &Column) -> Result<Option<Column>> {
        if !siblings(&c0.dom, &c1.dom) {
            return Ok(None);
        }
        let (r0, r1) = (&c0.ran, &c1.ran);
        let same_parent = r0.root == r1.root
            && !r0.word.is_empty()
            && r0.word.len() == r1.word.len()
            && r0.word.last() != r1.word.last()
            && r0.word.bits()[..r0.len() - 1] == r1.word.bits()[..r1.len() - 1];
        if !same_parent {
            return Ok(None);
        }
        let swap = r0.word.last() == Some(true);
        let img = WreathImage::new(c0.label.clone(), c1.label.clone(), swap);
        Ok(phi.preimage(&img)?.map(|g| {
            Column::new(c0.dom.parent().expect("nonempty"), g, r0.parent().expect("nonempty"))
        }))
    }

    /// Expands the column at index `k`.
    pub fn simple_expand(&self, phi: &WreathRecursion, k: usize) -> Result<Self> {
        let c = self
            .columns
            .get(k)
            .ok_or_else(|| Error::InvalidDiagram(format!("no column {k}")))?;
        let pair = Self::split(phi, c)?;
        let mut columns = Vec::with_capacity(self.columns.len() + 1);
        columns.extend_from_slice(&self.columns[..k]);
        columns.extend(pair);
        columns.extend_from_slice(&self.columns[k + 1..]);
        Ok(LabeledDiagram { roots: self.roots, columns })
    }

    /// Merges columns `k` and `k+1` if their domains are siblings and the
    /// merge is possible.
    pub fn simple_reduce(&self, phi: &WreathRecursion, k: usize) -> Result<Option<Self>> {
        if phi.is_injective() != Injectivity::Injective {
            return Err(Error::ReductionRequiresInjective);
        }
        let (Some(c0), Some(c1)) = (self.columns.get(k), self.columns.get(k + 1)) else {
            return Ok(None);
        };
        Ok(Self::merge(phi, c0, c1)?.map(|m| {
            let mut columns = self.columns.clone();
            columns.splice(k..k + 2, [m]);
            LabeledDiagram { roots: self.roots, columns }
        }))
    }

    /// Indices `k` whose column and the next one have sibling domains.
    pub fn sibling_pairs(&self) -> Vec<usize> {
        (0..self.columns.len().saturating_sub(1))
            .filter(|&k| siblings(&self.columns[k].dom, &self.columns[k + 1].dom))
            .collect()
    }

    /// The unique reduced representative.
    ///
    /// Children are merged before their parents: a column is only compared
    /// with its left neighbour on the stack, which in sorted order is its
    /// sibling whenever that sibling is a leaf.
    pub fn reduce(&self, phi: &WreathRecursion) -> Result<Self> {
        if phi.is_injective() != Injectivity::Injective {
            return Err(Error::ReductionRequiresInjective);
        }
        let mut stack: Vec<Column> = Vec::with_capacity(self.columns.len());
        for c in &self.columns {
            let mut top = c.clone();
            while let Some(prev) = stack.last() {
                match Self::merge(phi, prev, &top)? {
                    Some(m) => {
                        stack.pop();
                        top = m;
                    }
                    None => break,
                }
            }
            stack.push(top);
        }
        Ok(LabeledDiagram { roots: self.roots, columns: stack })
    }

    pub fn is_reduced(&self, phi: &WreathRecursion) -> Result<bool> {
        for k in self.sibling_pairs() {
            if self.simple_reduce(phi, k)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Expands until the domain partition equals `target`.
    pub fn expand_to(&self, phi: &WreathRecursion, target: &PartitionSet) -> Result<Self> {
        if target.roots() != self.roots.0 {
            return Err(Error::NotARefinement);
        }
        let mut out = Vec::with_capacity(target.len());
        for c in &self.columns {
            expand_into(phi, c.clone(), target, |c| &c.dom, &mut out)?;
        }
        Ok(LabeledDiagram { roots: self.roots, columns: out })
    }

    /// Expands until the range partition equals `target`.
    pub fn expand_range_to(&self, phi: &WreathRecursion, target: &PartitionSet) -> Result<Self> {
        if target.roots() != self.roots.1 {
            return Err(Error::NotARefinement);
        }
        let mut out = Vec::with_capacity(target.len());
        for c in &self.columns {
            expand_into(phi, c.clone(), target, |c| &c.ran, &mut out)?;
        }
        out.sort();
        Ok(LabeledDiagram { roots: self.roots, columns: out })
    }

    /// Swaps domain and range and inverts labels. Not reduced.
    pub fn inverse(&self, g: &GroupBackend) -> Result<Self> {
        let mut columns = self
            .columns
            .iter()
            .map(|c| Ok(Column::new(c.ran.clone(), g.inv(&c.label)?, c.dom.clone())))
            .collect::<Result<Vec<_>>>()?;
        columns.sort();
        Ok(LabeledDiagram { roots: (self.roots.1, self.roots.0), columns })
    }

    /// `self` followed by `other` (right action), over the common
    /// refinement. Not reduced.
    pub fn compose(&self, other: &LabeledDiagram, phi: &WreathRecursion) -> Result<Self> {
        if self.roots.1 != other.roots.0 {
            return Err(Error::ArityMismatch { left: self.roots.1 as usize, right: other.roots.0 as usize });
        }
        let target = self.range().common_refinement(&other.domain())?;
        let a = self.expand_range_to(phi, &target)?;
        let b = other.expand_to(phi, &target)?;
        let g = phi.backend();
        let columns = a
            .columns
            .into_iter()
            .map(|c| {
                let k = target.rank(&c.ran).expect("range expanded to target");
                let d = &b.columns[k];
                Ok(Column::new(c.dom, g.mul(&c.label, &d.label)?, d.ran.clone()))
            })
            .collect::<Result<_>>()?;
        Ok(LabeledDiagram { roots: (self.roots.0, other.roots.1), columns })
    }

    /// Whether the diagram is a forest diagram rather than a single tree.
    pub fn is_forest(&self) -> bool {
        self.roots != (1, 1)
    }

    /// Compact human form `(u|g|v) (u|g|v) ...`.
    pub fn render(&self, g: &GroupBackend) -> String {
        let forest = self.is_forest();
        let leaf = |l: &Leaf| if l.is_empty() && !forest { "eps".to_string() } else { l.render(forest) };
        self.columns
            .iter()
            .map(|c| format!("({}|{}|{})", leaf(&c.dom), g.format_label(&c.label), leaf(&c.ran)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn expand_into(
    phi: &WreathRecursion,
    c: Column,
    target: &PartitionSet,
    key: fn(&Column) -> &Leaf,
    out: &mut Vec<Column>,
) -> Result<()> {
    if target.contains(key(&c)) {
        out.push(c);
        return Ok(());
    }
    if !target.has_strict_descendant(key(&c)) {
        return Err(Error::NotARefinement);
    }
    let [c0, c1] = LabeledDiagram::split(phi, &c)?;
    expand_into(phi, c0, target, key, out)?;
    expand_into(phi, c1, target, key, out)
}

impl fmt::Debug for LabeledDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[", self.roots)?;
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{:?}|{:?}|{:?}", c.dom, c.label, c.ran)?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::BitWord;

    fn leaf(s: &str) -> Leaf {
        Leaf::tree(s.parse().unwrap())
    }

    fn col(d: &str, g: GroupElement, r: &str) -> Column {
        Column::new(leaf(d), g, leaf(r))
    }

    fn int(k: i64) -> GroupElement {
        GroupElement::Int(k)
    }

    #[test]
    fn diagonal_expansion() {
        let phi = WreathRecursion::diagonal(GroupBackend::Cyclic(Some(3)));
        let d = LabeledDiagram::tree(vec![col("", int(2), "")]).unwrap();
        let e = d.simple_expand(&phi, 0).unwrap();
        assert_eq!(e.columns(), &[col("0", int(2), "0"), col("1", int(2), "1")]);
        assert_eq!(e.reduce(&phi).unwrap(), d);
        let t = d.expand_to(&phi, &PartitionSet::parse("00 01 1").unwrap()).unwrap();
        assert_eq!(t.columns(), &[col("00", int(2), "00"), col("01", int(2), "01"), col("1", int(2), "1")]);
    }

    #[test]
    fn adding_machine_expansion() {
        let phi = WreathRecursion::adding_machine();
        let d = LabeledDiagram::tree(vec![col("", int(1), "")]).unwrap();
        let e = d.simple_expand(&phi, 0).unwrap();
        assert_eq!(e.columns(), &[col("0", int(0), "1"), col("1", int(1), "0")]);
        assert_eq!(e.simple_reduce(&phi, 0).unwrap(), Some(d.clone()));
        let t = d.expand_to(&phi, &PartitionSet::parse("00 01 1").unwrap()).unwrap();
        assert_eq!(t.columns(), &[col("00", int(0), "10"), col("01", int(0), "11"), col("1", int(1), "0")]);
    }

    #[test]
    fn failed_reductions() {
        let phi = WreathRecursion::diagonal(GroupBackend::Cyclic(Some(3)));
        let d = LabeledDiagram::tree(vec![col("0", int(1), "0"), col("1", int(2), "1")]).unwrap();
        assert_eq!(d.simple_reduce(&phi, 0).unwrap(), None);
        assert_eq!(d.reduce(&phi).unwrap(), d);
        let v = WreathRecursion::vanishing(GroupBackend::Cyclic(Some(3)));
        assert_eq!(d.reduce(&v).unwrap_err(), Error::ReductionRequiresInjective);
    }

    #[test]
    fn identity_collapses() {
        let g = GroupBackend::Cyclic(Some(2));
        let phi = WreathRecursion::diagonal(g.clone());
        let d = LabeledDiagram::tree(vec![col("0", int(0), "0"), col("10", int(0), "10"), col("11", int(0), "11")])
            .unwrap();
        assert_eq!(d.reduce(&phi).unwrap(), LabeledDiagram::identity(1, &g));
    }

    #[test]
    fn bad_diagrams_rejected() {
        assert!(LabeledDiagram::tree(vec![col("0", int(0), "0"), col("01", int(0), "1")]).is_err());
        assert!(LabeledDiagram::tree(vec![col("0", int(0), "0"), col("1", int(0), "0")]).is_err());
    }

    #[test]
    fn permutation_is_derived_from_ranges() {
        let d = LabeledDiagram::tree(vec![col("0", int(0), "11"), col("10", int(0), "0"), col("11", int(0), "10")])
            .unwrap();
        assert_eq!(d.permutation(), vec![2, 0, 1]);
        assert_eq!(d.domain().words(), vec![BitWord::from_bits(vec![false]), "10".parse().unwrap(), "11".parse().unwrap()]);
    }

    #[test]
    fn expand_to_rejects_non_refinement() {
        let g = GroupBackend::trivial();
        let phi = WreathRecursion::diagonal(g.clone());
        let d = LabeledDiagram::tree(vec![col("0", g.identity(), "0"), col("1", g.identity(), "1")]).unwrap();
        assert_eq!(d.expand_to(&phi, &PartitionSet::roots_only(1)).unwrap_err(), Error::NotARefinement);
    }
}
