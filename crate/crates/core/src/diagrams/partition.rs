//! Partition sets: leaf sets of finite full binary forests.

use std::fmt;

use crate::diagrams::{BitWord, Leaf};
use crate::error::{Error, Result};

/// True iff `words` is the leaf set of a finite full binary tree.
///
/// Checked recursively: `{ε}` is a partition set, and any other set is one
/// exactly when it avoids `ε` and both halves `S0`, `S1` are partition sets.
pub fn is_partition_set(words: &[BitWord]) -> bool {
    let mut refs: Vec<&[bool]> = words.iter().map(|w| w.bits()).collect();
    refs.sort();
    let before = refs.len();
    refs.dedup();
    before == refs.len() && check_sorted(&refs, 0)
}

fn check_sorted(words: &[&[bool]], depth: usize) -> bool {
    match words {
        [] => false,
        [w] if w.len() == depth => true,
        _ => {
            if words.iter().any(|w| w.len() <= depth) {
                return false;
            }
            let split = words.partition_point(|w| !w[depth]);
            check_sorted(&words[..split], depth + 1) && check_sorted(&words[split..], depth + 1)
        }
    }
}

/// A sorted leaf set of a forest on `roots` trees.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionSet {
    roots: u32,
    leaves: Vec<Leaf>,
}

impl PartitionSet {
    pub fn new(roots: u32, mut leaves: Vec<Leaf>) -> Result<Self> {
        leaves.sort();
        if !is_forest_partition(roots, &leaves) {
            return Err(Error::InvalidDiagram(format!("{leaves:?} is not a partition of {roots} roots")));
        }
        Ok(PartitionSet { roots, leaves })
    }

    /// A partition of a single tree.
    pub fn from_words(words: Vec<BitWord>) -> Result<Self> {
        Self::new(1, words.into_iter().map(Leaf::tree).collect())
    }

    /// Parses whitespace- or comma-separated words, `eps` for the root.
    pub fn parse(s: &str) -> Result<Self> {
        let words = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse())
            .collect::<Result<Vec<BitWord>>>()?;
        Self::from_words(words)
    }

    /// The trivial partition: every root is a leaf.
    pub fn roots_only(roots: u32) -> Self {
        PartitionSet { roots, leaves: (0..roots).map(Leaf::root).collect() }
    }

    /// All words of length `depth` below a single root.
    pub fn uniform(depth: usize) -> Self {
        PartitionSet { roots: 1, leaves: BitWord::all_of_length(depth).map(Leaf::tree).collect() }
    }

    pub(crate) fn from_sorted_unchecked(roots: u32, leaves: Vec<Leaf>) -> Self {
        debug_assert!(is_forest_partition(roots, &leaves));
        PartitionSet { roots, leaves }
    }

    pub fn roots(&self) -> u32 {
        self.roots
    }

    pub fn leaves(&self) -> &[Leaf] {
        &self.leaves
    }

    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    pub fn contains(&self, leaf: &Leaf) -> bool {
        self.leaves.binary_search(leaf).is_ok()
    }

    /// Rank of a leaf in lexicographic order.
    pub fn rank(&self, leaf: &Leaf) -> Option<usize> {
        self.leaves.binary_search(leaf).ok()
    }

    /// Whether some leaf lies strictly below `v`.
    pub fn has_strict_descendant(&self, v: &Leaf) -> bool {
        let i = self.leaves.partition_point(|l| l <= v);
        self.leaves.get(i).is_some_and(|l| v.is_prefix_of(l))
    }

    /// The leaf that is a prefix of `v`, if any.
    pub fn leaf_above(&self, v: &Leaf) -> Option<&Leaf> {
        let i = self.leaves.partition_point(|l| l <= v);
        i.checked_sub(1).map(|i| &self.leaves[i]).filter(|l| l.is_prefix_of(v))
    }

    pub fn depth(&self) -> usize {
        self.leaves.iter().map(Leaf::len).max().unwrap_or(0)
    }

    /// True iff every leaf of `other` lies under a leaf of `self`.
    pub fn is_refined_by(&self, other: &PartitionSet) -> bool {
        self.roots == other.roots && other.leaves.iter().all(|l| self.leaf_above(l).is_some())
    }

    /// Coarsest partition refining both: the maximal words of the union.
    pub fn common_refinement(&self, other: &PartitionSet) -> Result<PartitionSet> {
        if self.roots != other.roots {
            return Err(Error::ArityMismatch { left: self.roots as usize, right: other.roots as usize });
        }
        let mut all: Vec<Leaf> = self.leaves.iter().chain(&other.leaves).cloned().collect();
        all.sort();
        all.dedup();
        // in sorted order a word's extensions follow it immediately
        let leaves = all
            .iter()
            .enumerate()
            .filter(|(i, l)| all.get(i + 1).is_none_or(|next| !l.is_prefix_of(next)))
            .map(|(_, l)| l.clone())
            .collect();
        Ok(PartitionSet::from_sorted_unchecked(self.roots, leaves))
    }

    /// Words below root 0 (the tree case).
    pub fn words(&self) -> Vec<BitWord> {
        self.leaves.iter().map(|l| l.word.clone()).collect()
    }
}

/// Partition check for a sorted leaf list on `roots` trees.
pub fn is_forest_partition(roots: u32, sorted: &[Leaf]) -> bool {
    if sorted.windows(2).any(|p| p[0] >= p[1]) {
        return false;
    }
    let mut start = 0;
    for r in 0..roots {
        let end = start + sorted[start..].partition_point(|l| l.root == r);
        let words: Vec<&[bool]> = sorted[start..end].iter().map(|l| l.word.bits()).collect();
        if !check_sorted(&words, 0) {
            return false;
        }
        start = end;
    }
    start == sorted.len()
}

impl fmt::Debug for PartitionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.leaves).finish()
    }
}

impl fmt::Display for PartitionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let forest = self.roots != 1;
        let parts: Vec<String> = self
            .leaves
            .iter()
            .map(|l| if l.is_empty() && !forest { "eps".to_string() } else { l.render(forest) })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ws(s: &[&str]) -> Vec<BitWord> {
        s.iter().map(|w| w.parse().unwrap()).collect()
    }

    /// Every word of length `d` has exactly one member as prefix, and no
    /// member is longer than `d`.
    fn brute_force(words: &[BitWord]) -> bool {
        let d = words.iter().map(BitWord::len).max().unwrap_or(0);
        !words.is_empty()
            && BitWord::all_of_length(d).all(|x| words.iter().filter(|w| w.is_prefix_of(&x)).count() == 1)
    }

    #[test]
    fn examples() {
        assert!(is_partition_set(&ws(&[""])));
        assert!(is_partition_set(&ws(&["0", "10", "11"])));
        assert!(!is_partition_set(&ws(&["0", "01"])));
        assert!(!is_partition_set(&ws(&["0"])));
        assert!(!is_partition_set(&[]));
        assert!(!is_partition_set(&ws(&["0", "1", "1"])));
    }

    #[test]
    fn refinements() {
        let p = |s: &[&str]| PartitionSet::from_words(ws(s)).unwrap();
        assert_eq!(p(&[""]).common_refinement(&p(&["0", "10", "11"])).unwrap(), p(&["0", "10", "11"]));
        assert_eq!(p(&["0", "1"]).common_refinement(&p(&["00", "01", "1"])).unwrap(), p(&["00", "01", "1"]));
        assert_eq!(
            p(&["0", "10", "11"]).common_refinement(&p(&["00", "01", "1"])).unwrap(),
            p(&["00", "01", "10", "11"])
        );
        assert!(p(&["0", "1"]).is_refined_by(&p(&["00", "01", "1"])));
        assert!(!p(&["00", "01", "1"]).is_refined_by(&p(&["0", "1"])));
    }

    #[test]
    fn forests() {
        let leaves = vec![Leaf::root(0), Leaf::new(1, "0".parse().unwrap()), Leaf::new(1, "1".parse().unwrap())];
        assert!(PartitionSet::new(2, leaves.clone()).is_ok());
        assert!(PartitionSet::new(3, leaves).is_err());
    }

    proptest! {
        #[test]
        fn recursive_check_matches_prefix_condition(raw in prop::collection::btree_set(prop::collection::vec(any::<bool>(), 0..4), 1..8)) {
            let words: Vec<BitWord> = raw.into_iter().map(BitWord::from_bits).collect();
            prop_assert_eq!(is_partition_set(&words), brute_force(&words));
        }
    }
}
