//! Wreath recursions `φ: G → G ≀ S₂` and the induced action on the binary tree.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::diagrams::BitWord;
use crate::error::{Error, Result};
use crate::groups::{GroupBackend, GroupElement};

/// `((left, right), σ)` with `swap = true` for the nontrivial σ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathImage {
    pub left: GroupElement,
    pub right: GroupElement,
    pub swap: bool,
}

impl WreathImage {
    pub fn new(left: GroupElement, right: GroupElement, swap: bool) -> Self {
        WreathImage { left, right, swap }
    }

    /// The section at letter `x`.
    pub fn section(&self, x: bool) -> &GroupElement {
        if x {
            &self.right
        } else {
            &self.left
        }
    }

    /// Identity of `G ≀ S₂`.
    pub fn identity(g: &GroupBackend) -> Self {
        WreathImage::new(g.identity(), g.identity(), false)
    }

    pub fn is_identity(&self, g: &GroupBackend) -> bool {
        !self.swap && g.is_identity(&self.left) && g.is_identity(&self.right)
    }

    /// Product in `G ≀ S₂` for right actions: the section of `a·b` at `x`
    /// is `a_x · b_{xσ_a}`.
    pub fn mul(&self, other: &WreathImage, g: &GroupBackend) -> Result<Self> {
        Ok(WreathImage {
            left: g.mul(&self.left, other.section(self.swap))?,
            right: g.mul(&self.right, other.section(!self.swap))?,
            swap: self.swap ^ other.swap,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Injectivity {
    Injective,
    NonInjective,
    Unknown,
}

impl Injectivity {
    /// `Some(bool)` when decided.
    pub fn decided(self) -> Option<bool> {
        match self {
            Injectivity::Injective => Some(true),
            Injectivity::NonInjective => Some(false),
            Injectivity::Unknown => None,
        }
    }
}

/// The splitting rule of a recursion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `g ↦ ((g,g), id)`
    Diagonal,
    /// `g ↦ ((1,1), id)`
    Vanishing,
    /// `g ↦ ((1,g), id)`
    Right,
    /// `g ↦ ((g,1), id)`
    Left,
    /// `g ↦ ((g,g), κ(g))` for a homomorphism `κ: G → S₂`.
    Kappa(Arc<BTreeMap<GroupElement, bool>>),
    /// The adding machine on ℤ: `t ↦ ((1,t), σ)`.
    Adding,
    /// An explicit table over a finite group.
    Custom(Arc<BTreeMap<GroupElement, WreathImage>>),
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Diagonal => "diagonal",
            Rule::Vanishing => "vanishing",
            Rule::Right => "right",
            Rule::Left => "left",
            Rule::Kappa(_) => "kappa",
            Rule::Adding => "adding",
            Rule::Custom(_) => "custom",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathRecursion {
    backend: GroupBackend,
    rule: Rule,
    injectivity: Injectivity,
    preimages: Option<Arc<BTreeMap<WreathImage, GroupElement>>>,
}

impl WreathRecursion {
    /// Builds a recursion, validating that the rule is a homomorphism
    /// wherever that can be checked exhaustively.
    pub fn new(backend: GroupBackend, rule: Rule) -> Result<Self> {
        let mut preimages = None;
        match &rule {
            Rule::Adding => {
                if backend != GroupBackend::Cyclic(None) {
                    return Err(Error::InvalidRecursion(
                        "the adding machine lives on the infinite cyclic group".into(),
                    ));
                }
            }
            Rule::Kappa(kappa) => {
                let elements = finite_elements(&backend, "kappa")?;
                for g in &elements {
                    if !kappa.contains_key(g) {
                        return Err(Error::InvalidRecursion(format!(
                            "kappa missing element {}",
                            backend.format_label(g)
                        )));
                    }
                }
                for a in &elements {
                    for b in &elements {
                        if kappa[&backend.mul(a, b)?] != kappa[a] ^ kappa[b] {
                            return Err(Error::NotHomomorphism("kappa is not a homomorphism to S2".into()));
                        }
                    }
                }
            }
            Rule::Custom(table) => {
                let elements = finite_elements(&backend, "custom")?;
                for g in &elements {
                    let img = table.get(g).ok_or_else(|| {
                        Error::InvalidRecursion(format!("table missing element {}", backend.format_label(g)))
                    })?;
                    backend.check(&img.left)?;
                    backend.check(&img.right)?;
                }
                if table.len() != elements.len() {
                    return Err(Error::InvalidRecursion("table has entries outside the group".into()));
                }
                for a in &elements {
                    for b in &elements {
                        let lhs = &table[&backend.mul(a, b)?];
                        let rhs = table[a].mul(&table[b], &backend)?;
                        if *lhs != rhs {
                            return Err(Error::NotHomomorphism(format!(
                                "phi({}*{}) differs from phi({})*phi({})",
                                backend.format_label(a),
                                backend.format_label(b),
                                backend.format_label(a),
                                backend.format_label(b)
                            )));
                        }
                    }
                }
                let mut inv = BTreeMap::new();
                for (g, img) in table.iter() {
                    inv.entry(img.clone()).or_insert_with(|| g.clone());
                }
                preimages = Some(Arc::new(inv));
            }
            _ => {}
        }
        let injectivity = match &rule {
            Rule::Diagonal | Rule::Right | Rule::Left | Rule::Kappa(_) | Rule::Adding => Injectivity::Injective,
            Rule::Vanishing => match backend.order() {
                Some(1) => Injectivity::Injective,
                _ => Injectivity::NonInjective,
            },
            Rule::Custom(table) => {
                let id = WreathImage::identity(&backend);
                let kernel = table.values().filter(|img| **img == id).count();
                if kernel == 1 {
                    Injectivity::Injective
                } else {
                    Injectivity::NonInjective
                }
            }
        };
        Ok(WreathRecursion { backend, rule, injectivity, preimages })
    }

    pub fn diagonal(backend: GroupBackend) -> Self {
        Self::new(backend, Rule::Diagonal).expect("diagonal is always valid")
    }

    pub fn right(backend: GroupBackend) -> Self {
        Self::new(backend, Rule::Right).expect("right rule is always valid")
    }

    pub fn left(backend: GroupBackend) -> Self {
        Self::new(backend, Rule::Left).expect("left rule is always valid")
    }

    pub fn vanishing(backend: GroupBackend) -> Self {
        Self::new(backend, Rule::Vanishing).expect("vanishing is always valid")
    }

    pub fn adding_machine() -> Self {
        Self::new(GroupBackend::Cyclic(None), Rule::Adding).expect("adding machine is valid")
    }

    /// A custom rule given as a function, tabulated over the finite group.
    pub fn custom<F>(backend: GroupBackend, f: F) -> Result<Self>
    where
        F: Fn(&GroupElement) -> WreathImage,
    {
        let elements = finite_elements(&backend, "custom")?;
        let table = elements.into_iter().map(|g| {
            let img = f(&g);
            (g, img)
        });
        Self::new(backend, Rule::Custom(Arc::new(table.collect())))
    }

    pub fn kappa<F>(backend: GroupBackend, kappa: F) -> Result<Self>
    where
        F: Fn(&GroupElement) -> bool,
    {
        let elements = finite_elements(&backend, "kappa")?;
        let map = elements.into_iter().map(|g| {
            let s = kappa(&g);
            (g, s)
        });
        Self::new(backend, Rule::Kappa(Arc::new(map.collect())))
    }

    pub fn backend(&self) -> &GroupBackend {
        &self.backend
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn is_diagonal(&self) -> bool {
        self.rule == Rule::Diagonal
    }

    /// `φ(g)`.
    pub fn apply(&self, g: &GroupElement) -> Result<WreathImage> {
        let b = &self.backend;
        b.check(g)?;
        let one = || b.identity();
        Ok(match &self.rule {
            Rule::Diagonal => WreathImage::new(g.clone(), g.clone(), false),
            Rule::Vanishing => WreathImage::new(one(), one(), false),
            Rule::Right => WreathImage::new(one(), g.clone(), false),
            Rule::Left => WreathImage::new(g.clone(), one(), false),
            Rule::Kappa(k) => WreathImage::new(g.clone(), g.clone(), k[g]),
            Rule::Adding => {
                let GroupElement::Int(n) = g else { unreachable!("checked") };
                let h = n.div_euclid(2);
                if n.rem_euclid(2) == 0 {
                    WreathImage::new(GroupElement::Int(h), GroupElement::Int(h), false)
                } else {
                    WreathImage::new(GroupElement::Int(h), GroupElement::Int(h + 1), true)
                }
            }
            Rule::Custom(t) => t[g].clone(),
        })
    }

    /// The unique `g` with `φ(g) = w`, if any.
    pub fn preimage(&self, w: &WreathImage) -> Result<Option<GroupElement>> {
        if self.injectivity != Injectivity::Injective {
            return Err(Error::PreimageUndefined);
        }
        let b = &self.backend;
        if !b.contains(&w.left) || !b.contains(&w.right) {
            return Err(Error::BackendMismatch("wreath image outside the source group".into()));
        }
        let one = b.identity();
        Ok(match &self.rule {
            Rule::Diagonal => (w.left == w.right && !w.swap).then(|| w.left.clone()),
            Rule::Vanishing => (w.is_identity(b)).then(|| one.clone()),
            Rule::Right => (w.left == one && !w.swap).then(|| w.right.clone()),
            Rule::Left => (w.right == one && !w.swap).then(|| w.left.clone()),
            Rule::Kappa(k) => (w.left == w.right && k[&w.left] == w.swap).then(|| w.left.clone()),
            Rule::Adding => {
                let (GroupElement::Int(l), GroupElement::Int(r)) = (&w.left, &w.right) else {
                    unreachable!("checked")
                };
                match (w.swap, r.checked_sub(*l)) {
                    (false, Some(0)) => Some(GroupElement::Int(l.checked_mul(2).ok_or(Error::Overflow)?)),
                    (true, Some(1)) => Some(GroupElement::Int(
                        l.checked_mul(2).and_then(|x| x.checked_add(1)).ok_or(Error::Overflow)?,
                    )),
                    _ => None,
                }
            }
            Rule::Custom(_) => self.preimages.as_ref().and_then(|p| p.get(w).cloned()),
        })
    }

    pub fn is_injective(&self) -> Injectivity {
        self.injectivity
    }

    /// Image of a finite word: `v·g = (x·σ_g)(u·g_x)`.
    pub fn tree_action(&self, g: &GroupElement, w: &BitWord) -> Result<BitWord> {
        Ok(self.follow(g, w)?.0)
    }

    /// Image of `w` together with the section of `g` at `w`.
    pub fn follow(&self, g: &GroupElement, w: &BitWord) -> Result<(BitWord, GroupElement)> {
        let mut state = g.clone();
        let mut out = BitWord::with_capacity(w.len());
        for x in w.iter() {
            let img = self.apply(&state)?;
            out.push(x ^ img.swap);
            state = img.section(x).clone();
        }
        Ok((out, state))
    }
}

impl fmt::Display for WreathRecursion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} recursion on {}", self.rule.name(), self.backend)
    }
}

fn finite_elements(backend: &GroupBackend, what: &str) -> Result<Vec<GroupElement>> {
    backend
        .elements()
        .ok_or_else(|| Error::InvalidRecursion(format!("{what} rule needs a finite group")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    fn s3_sign() -> WreathRecursion {
        WreathRecursion::kappa(GroupBackend::Symmetric(3), |g| {
            let GroupElement::Perm(p) = g else { unreachable!() };
            let mut inversions = 0;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        inversions += 1;
                    }
                }
            }
            inversions % 2 == 1
        })
        .unwrap()
    }

    #[test]
    fn canonical_images() {
        let g = GroupBackend::Cyclic(Some(5));
        let x = GroupElement::Int(3);
        let d = WreathRecursion::diagonal(g.clone());
        assert_eq!(d.apply(&x).unwrap(), WreathImage::new(x.clone(), x.clone(), false));
        let r = WreathRecursion::right(g.clone());
        assert_eq!(r.apply(&x).unwrap(), WreathImage::new(GroupElement::Int(0), x.clone(), false));
        let t = WreathRecursion::adding_machine();
        assert_eq!(
            t.apply(&GroupElement::Int(1)).unwrap(),
            WreathImage::new(GroupElement::Int(0), GroupElement::Int(1), true)
        );
        assert_eq!(
            t.apply(&GroupElement::Int(-1)).unwrap(),
            WreathImage::new(GroupElement::Int(-1), GroupElement::Int(0), true)
        );
    }

    #[test]
    fn preimages() {
        let g = GroupBackend::Cyclic(Some(5));
        let (a, b) = (GroupElement::Int(2), GroupElement::Int(4));
        let d = WreathRecursion::diagonal(g.clone());
        assert_eq!(d.preimage(&WreathImage::new(a.clone(), a.clone(), false)).unwrap(), Some(a.clone()));
        assert_eq!(d.preimage(&WreathImage::new(a.clone(), b.clone(), false)).unwrap(), None);
        let r = WreathRecursion::right(g.clone());
        assert_eq!(r.preimage(&WreathImage::new(g.identity(), b.clone(), false)).unwrap(), Some(b.clone()));
        assert_eq!(r.preimage(&WreathImage::new(a.clone(), b.clone(), false)).unwrap(), None);
        let v = WreathRecursion::vanishing(g);
        assert_eq!(v.preimage(&WreathImage::new(a.clone(), a, false)), Err(Error::PreimageUndefined));
    }

    #[test]
    fn adding_machine_preimage_matches_bounded_search() {
        let t = WreathRecursion::adding_machine();
        for n in -40i64..=40 {
            let img = t.apply(&GroupElement::Int(n)).unwrap();
            assert_eq!(t.preimage(&img).unwrap(), Some(GroupElement::Int(n)));
        }
        // images outside the range of φ on [-40, 40] must have no preimage
        for l in -10i64..=10 {
            for r in -10i64..=10 {
                for swap in [false, true] {
                    let img = WreathImage::new(GroupElement::Int(l), GroupElement::Int(r), swap);
                    let searched = (-40i64..=40).find(|&n| t.apply(&GroupElement::Int(n)).unwrap() == img);
                    assert_eq!(t.preimage(&img).unwrap(), searched.map(GroupElement::Int));
                }
            }
        }
    }

    #[test]
    fn odometer() {
        let t = WreathRecursion::adding_machine();
        let one = GroupElement::Int(1);
        assert_eq!(t.tree_action(&one, &w("000")).unwrap(), w("100"));
        assert_eq!(t.tree_action(&one, &w("100")).unwrap(), w("010"));
        assert_eq!(t.tree_action(&one, &w("111")).unwrap(), w("000"));
        for k in 0..64i64 {
            let img = t.tree_action(&GroupElement::Int(k), &w("000000")).unwrap();
            let expect: String = (0..6).map(|i| if (k >> i) & 1 == 1 { '1' } else { '0' }).collect();
            assert_eq!(img.to_string(), expect);
        }
    }

    #[test]
    fn diagonal_acts_trivially() {
        let d = WreathRecursion::diagonal(GroupBackend::Symmetric(3));
        for g in GroupBackend::Symmetric(3).elements().unwrap() {
            assert_eq!(d.tree_action(&g, &w("0110")).unwrap(), w("0110"));
        }
    }

    #[test]
    fn homomorphism_and_right_action_exhaustive() {
        let recursions = [
            WreathRecursion::diagonal(GroupBackend::Symmetric(3)),
            WreathRecursion::right(GroupBackend::Cyclic(Some(4))),
            WreathRecursion::left(GroupBackend::Symmetric(3)),
            s3_sign(),
        ];
        let words: Vec<BitWord> = ["", "0", "1", "01", "110", "0101"].iter().map(|s| w(s)).collect();
        for phi in &recursions {
            let g = phi.backend();
            let es = g.elements().unwrap();
            for a in &es {
                assert_eq!(phi.preimage(&phi.apply(a).unwrap()).unwrap().as_ref(), Some(a));
                for b in &es {
                    let ab = g.mul(a, b).unwrap();
                    let lhs = phi.apply(&ab).unwrap();
                    let rhs = phi.apply(a).unwrap().mul(&phi.apply(b).unwrap(), g).unwrap();
                    assert_eq!(lhs, rhs);
                    for x in &words {
                        let direct = phi.tree_action(&ab, x).unwrap();
                        let twice = phi.tree_action(b, &phi.tree_action(a, x).unwrap()).unwrap();
                        assert_eq!(direct, twice);
                        assert_eq!(direct.len(), x.len());
                    }
                }
            }
        }
    }

    #[test]
    fn adding_machine_homomorphism_sampled() {
        let t = WreathRecursion::adding_machine();
        let g = t.backend().clone();
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                let (x, y) = (GroupElement::Int(a), GroupElement::Int(b));
                let lhs = t.apply(&GroupElement::Int(a + b)).unwrap();
                let rhs = t.apply(&x).unwrap().mul(&t.apply(&y).unwrap(), &g).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn injectivity_flags() {
        let z2 = GroupBackend::Cyclic(Some(2));
        assert_eq!(WreathRecursion::vanishing(z2.clone()).is_injective(), Injectivity::NonInjective);
        assert_eq!(WreathRecursion::vanishing(GroupBackend::trivial()).is_injective(), Injectivity::Injective);
        assert_eq!(WreathRecursion::diagonal(GroupBackend::Free(2)).is_injective(), Injectivity::Injective);
        let collapse = WreathRecursion::custom(z2.clone(), |_| WreathImage::identity(&z2)).unwrap();
        assert_eq!(collapse.is_injective(), Injectivity::NonInjective);
    }

    #[test]
    fn rejects_non_homomorphic_tables() {
        let z3 = GroupBackend::Cyclic(Some(3));
        let bad = WreathRecursion::custom(z3.clone(), |g| WreathImage::new(g.clone(), z3.identity(), true));
        assert!(matches!(bad, Err(Error::NotHomomorphism(_))));
        assert!(WreathRecursion::kappa(z3, |g| *g != GroupElement::Int(0)).is_err());
        assert!(WreathRecursion::new(GroupBackend::Cyclic(Some(4)), Rule::Adding).is_err());
    }
}
