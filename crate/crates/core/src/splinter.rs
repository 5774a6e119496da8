//! The permutation model of `V(G)` on `X × {0,1}^ω` for a faithful finite
//! `G`-set `X`, used as an oracle independent of the reduction engine.
//!
//! Points carry a finite word standing for the cone below it; elements act
//! column by column without ever expanding the diagram.

use rand::Rng;

use crate::diagrams::{BitWord, Column, LabeledDiagram, Leaf, PartitionSet};
use crate::error::{Error, Result};
use crate::groups::{Enumerated, GroupElement};
use crate::vphi::{Context, VPhiElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplinterPoint {
    pub x: usize,
    pub w: BitWord,
}

impl SplinterPoint {
    pub fn new(x: usize, w: BitWord) -> Self {
        SplinterPoint { x, w }
    }
}

/// A diagonal context together with a faithful action of `G` on `0..size`.
#[derive(Clone, Debug)]
pub struct Splinter {
    ctx: Context,
    group: Enumerated,
    /// `action[x][g]` is `(x)g`, indexed by enumeration order.
    action: Vec<Vec<usize>>,
}

impl Splinter {
    /// `X = G` acting on itself by right multiplication.
    pub fn regular(ctx: &Context) -> Result<Self> {
        let g = ctx.backend();
        let group = g.enumerate()?;
        let elements = group.elements.clone();
        Self::with_action(ctx, elements.len(), |x, h| group.index_of(&g.mul(&elements[x], h).expect("same group")))
    }

    /// A right action `(x, g) ↦ (x)g` of `G` on `0..size`, validated to be
    /// an action and faithful.
    pub fn with_action<F>(ctx: &Context, size: usize, act: F) -> Result<Self>
    where
        F: Fn(usize, &GroupElement) -> usize,
    {
        ctx.require_diagonal("the Splinter model")?;
        let g = ctx.backend();
        let group = g.enumerate()?;
        let action: Vec<Vec<usize>> = (0..size).map(|x| group.elements.iter().map(|h| act(x, h)).collect()).collect();
        for (x, row) in action.iter().enumerate() {
            if row.iter().any(|&y| y >= size) {
                return Err(Error::InvalidGroup(format!("point {x} is sent outside the G-set")));
            }
            if row[0] != x {
                return Err(Error::InvalidGroup("identity does not act trivially".into()));
            }
        }
        for (i, a) in group.elements.iter().enumerate() {
            for (j, b) in group.elements.iter().enumerate() {
                let ab = group.index_of(&g.mul(a, b)?);
                if (0..size).any(|x| action[action[x][i]][j] != action[x][ab]) {
                    return Err(Error::InvalidGroup("not a right action".into()));
                }
            }
        }
        for i in 1..group.len() {
            if (0..size).all(|x| action[x][i] == x) {
                return Err(Error::InvalidGroup("action is not faithful".into()));
            }
        }
        Ok(Splinter { ctx: ctx.clone(), group, action })
    }

    pub fn size(&self) -> usize {
        self.action.len()
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// `(x, u_i w) ↦ ((x)g_i, v_i w)`.
    pub fn act(&self, a: &VPhiElement, p: &SplinterPoint) -> Result<SplinterPoint> {
        self.act_columns(a.columns(), p)
    }

    /// Acts by an arbitrary list of columns, reduced or not.
    pub fn act_columns(&self, columns: &[Column], p: &SplinterPoint) -> Result<SplinterPoint> {
        let c = columns
            .iter()
            .find(|c| c.dom.word.is_prefix_of(&p.w))
            .ok_or(Error::InsufficientDepth)?;
        let tail = p.w.strip_prefix(&c.dom.word).expect("prefix");
        let g = self.group.index_of(&c.label);
        Ok(SplinterPoint { x: self.action[p.x][g], w: c.ran.word.concat(&tail) })
    }

    /// Compares `F_{ab}` with `F_a` followed by `F_b` on random points.
    pub fn check_hom<R: Rng + ?Sized>(
        &self,
        a: &VPhiElement,
        b: &VPhiElement,
        samples: usize,
        depth: usize,
        rng: &mut R,
    ) -> Result<bool> {
        let ab = a.mul(b)?;
        self.check_composition(a.columns(), b.columns(), ab.columns(), samples, depth, rng)
    }

    /// Compares a claimed product, given by its columns, with the
    /// composite of two actions.
    pub fn check_composition<R: Rng + ?Sized>(
        &self,
        a: &[Column],
        b: &[Column],
        ab: &[Column],
        samples: usize,
        depth: usize,
        rng: &mut R,
    ) -> Result<bool> {
        for _ in 0..samples {
            let p = SplinterPoint {
                x: rng.gen_range(0..self.size()),
                w: BitWord::from_bits((0..depth).map(|_| rng.gen()).collect()),
            };
            let direct = self.act_columns(ab, &p)?;
            let twice = self.act_columns(b, &self.act_columns(a, &p)?)?;
            if direct != twice {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff `a` fixes every `(x, w)` with `|w| = depth`.
    pub fn check_faithful(&self, a: &VPhiElement, depth: usize) -> Result<bool> {
        for w in BitWord::all_of_length(depth) {
            for x in 0..self.size() {
                let p = SplinterPoint { x, w: w.clone() };
                if self.act(a, &p)? != p {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `a_g = [{00,01,1}, ((1,g,1), id), {00,01,1}]`.
pub fn a_g(ctx: &Context, g: &GroupElement) -> Result<VPhiElement> {
    ctx.require_diagonal("a_g")?;
    let t = PartitionSet::parse("00 01 1")?;
    let g = ctx.project(g)?;
    let one = ctx.backend().identity();
    let columns = t
        .leaves()
        .iter()
        .zip([one.clone(), g, one])
        .map(|(u, l): (&Leaf, GroupElement)| Column::new(u.clone(), l, u.clone()))
        .collect();
    VPhiElement::from_stored(ctx, LabeledDiagram::tree(columns)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupBackend;
    use crate::vphi::iota;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn a_g_acts_on_the_01_cone() {
        let g = GroupBackend::Symmetric(3);
        let ctx = Context::diagonal(g.clone());
        let sp = Splinter::with_action(&ctx, 3, |x, h| {
            let GroupElement::Perm(p) = h else { unreachable!() };
            p[x] as usize
        })
        .unwrap();
        let h = g.parse_label("p231").unwrap();
        let a = a_g(&ctx, &h).unwrap();
        assert_eq!(sp.act(&a, &SplinterPoint::new(0, w("0110"))).unwrap(), SplinterPoint::new(1, w("0110")));
        assert_eq!(sp.act(&a, &SplinterPoint::new(0, w("0010"))).unwrap(), SplinterPoint::new(0, w("0010")));
        assert_eq!(sp.act(&a, &SplinterPoint::new(0, w("0"))), Err(Error::InsufficientDepth));
    }

    #[test]
    fn faithfulness_detects_labels() {
        let ctx = Context::diagonal(GroupBackend::Cyclic(Some(3)));
        let sp = Splinter::regular(&ctx).unwrap();
        let x = iota(&ctx, &GroupElement::Int(1)).unwrap();
        assert!(!sp.check_faithful(&x, 2).unwrap());
        assert!(sp.check_faithful(&VPhiElement::identity(&ctx), 3).unwrap());
    }

    #[test]
    fn rejects_unfaithful_sets() {
        let ctx = Context::diagonal(GroupBackend::Cyclic(Some(2)));
        assert!(Splinter::with_action(&ctx, 2, |x, _| x).is_err());
    }
}
