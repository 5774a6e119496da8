//! Replacing a non-injective recursion on a finite group by an injective one
//! on a quotient, via the tower `G_{i+1} = G_i / Ker φ_i`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{Enumerated, FiniteTable, GroupBackend, GroupElement, Rule, WreathImage, WreathRecursion};

/// The stabilized quotient `Ĝ`, the projection `π̂: G → Ĝ` and the induced `φ̂`.
#[derive(Clone, Debug)]
pub struct Injectivized {
    source: GroupBackend,
    source_elements: Enumerated,
    /// Coset index of each source element.
    projection: Vec<usize>,
    quotient: GroupBackend,
    recursion: WreathRecursion,
    /// Orders `|G_0| > |G_1| > ... = |Ĝ|`.
    tower: Vec<usize>,
}

impl Injectivized {
    pub fn steps(&self) -> usize {
        self.tower.len() - 1
    }

    pub fn tower_orders(&self) -> &[usize] {
        &self.tower
    }

    pub fn source(&self) -> &GroupBackend {
        &self.source
    }

    pub fn quotient(&self) -> &GroupBackend {
        &self.quotient
    }

    pub fn recursion(&self) -> &WreathRecursion {
        &self.recursion
    }

    /// `π̂(g)`.
    pub fn project(&self, g: &GroupElement) -> Result<GroupElement> {
        self.source.check(g)?;
        if self.steps() == 0 {
            return Ok(g.clone());
        }
        Ok(GroupElement::Index(self.projection[self.source_elements.index_of(g)]))
    }

    /// `π̂^w` applied slotwise.
    pub fn project_image(&self, w: &WreathImage) -> Result<WreathImage> {
        Ok(WreathImage::new(self.project(&w.left)?, self.project(&w.right)?, w.swap))
    }

    /// Some element of `G` over the given element of `Ĝ`.
    pub fn lift(&self, q: &GroupElement) -> Result<GroupElement> {
        self.quotient.check(q)?;
        if self.steps() == 0 {
            return Ok(q.clone());
        }
        let GroupElement::Index(c) = q else { unreachable!("quotient is a table") };
        let i = self.projection.iter().position(|p| p == c).expect("projection is onto");
        Ok(self.source_elements.elements[i].clone())
    }
}

/// Runs the kernel tower to stability.
pub fn injectivize(phi: &WreathRecursion) -> Result<Injectivized> {
    let source = phi.backend().clone();
    if !source.is_finite() {
        return Err(Error::TowerMayNotStabilize);
    }
    let en = source.enumerate()?;
    let n = en.len();
    let images: Vec<(usize, usize, bool)> = en
        .elements
        .iter()
        .map(|g| {
            let img = phi.apply(g)?;
            Ok((en.index_of(&img.left), en.index_of(&img.right), img.swap))
        })
        .collect::<Result<_>>()?;

    // preimage in G of the kernel at each level
    let mut normal = vec![false; n];
    normal[0] = true;
    let mut tower = vec![n];
    loop {
        let next: Vec<bool> = images.iter().map(|&(l, r, s)| !s && normal[l] && normal[r]).collect();
        if next == normal {
            break;
        }
        normal = next;
        let order = n / normal.iter().filter(|&&x| x).count();
        tower.push(order);
    }
    if tower.len() == 1 {
        return Ok(Injectivized {
            source: source.clone(),
            source_elements: en,
            projection: (0..n).collect(),
            quotient: source,
            recursion: phi.clone(),
            tower,
        });
    }

    let mul = |a: usize, b: usize| en.index_of(&source.mul(&en.elements[a], &en.elements[b]).expect("same group"));
    let inv = |a: usize| en.index_of(&source.inv(&en.elements[a]).expect("same group"));
    // cosets N·g, numbered by smallest representative, identity coset first
    let mut projection = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if projection[g] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(g);
        for (k, &member) in normal.iter().enumerate() {
            if member {
                projection[mul(k, g)] = c;
            }
        }
    }
    let m = reps.len();
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| projection[mul(a, b)]).collect())
        .collect();
    debug_assert!(reps.iter().all(|&a| projection[inv(a)] < m));
    let quotient = GroupBackend::Finite(FiniteTable::new(table, None)?);
    let phi_hat: BTreeMap<GroupElement, WreathImage> = reps
        .iter()
        .enumerate()
        .map(|(c, &g)| {
            let (l, r, s) = images[g];
            (
                GroupElement::Index(c),
                WreathImage::new(GroupElement::Index(projection[l]), GroupElement::Index(projection[r]), s),
            )
        })
        .collect();
    let recursion = WreathRecursion::new(quotient.clone(), Rule::Custom(Arc::new(phi_hat)))?;
    debug_assert_eq!(recursion.is_injective().decided(), Some(true));
    Ok(Injectivized { source, source_elements: en, projection, quotient, recursion, tower })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Injectivity;

    fn check_square(inj: &Injectivized, phi: &WreathRecursion) {
        for g in phi.backend().elements().unwrap() {
            let lhs = inj.project_image(&phi.apply(&g).unwrap()).unwrap();
            let rhs = inj.recursion().apply(&inj.project(&g).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert_eq!(inj.recursion().is_injective(), Injectivity::Injective);
        // π̂ is a surjective homomorphism
        let g = phi.backend();
        let es = g.elements().unwrap();
        for a in &es {
            for b in &es {
                let lhs = inj.project(&g.mul(a, b).unwrap()).unwrap();
                let rhs = inj.quotient().mul(&inj.project(a).unwrap(), &inj.project(b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        for q in inj.quotient().elements().unwrap() {
            assert_eq!(inj.project(&inj.lift(&q).unwrap()).unwrap(), q);
        }
    }

    #[test]
    fn vanishing_collapses_in_one_step() {
        let phi = WreathRecursion::vanishing(GroupBackend::Cyclic(Some(2)));
        let inj = injectivize(&phi).unwrap();
        assert_eq!(inj.steps(), 1);
        assert!(inj.quotient().is_trivial());
        check_square(&inj, &phi);
    }

    #[test]
    fn doubling_on_z4_takes_two_steps() {
        let z4 = GroupBackend::Cyclic(Some(4));
        let phi = WreathRecursion::custom(z4, |g| {
            let GroupElement::Int(k) = g else { unreachable!() };
            let d = GroupElement::Int((2 * k) % 4);
            WreathImage::new(d.clone(), d, false)
        })
        .unwrap();
        let inj = injectivize(&phi).unwrap();
        assert_eq!(inj.tower_orders(), &[4, 2, 1]);
        check_square(&inj, &phi);
    }

    #[test]
    fn injective_input_is_untouched() {
        let phi = WreathRecursion::diagonal(GroupBackend::Symmetric(3));
        let inj = injectivize(&phi).unwrap();
        assert_eq!(inj.steps(), 0);
        assert_eq!(inj.quotient(), &GroupBackend::Symmetric(3));
        check_square(&inj, &phi);
    }

    #[test]
    fn partial_kernel() {
        // Z/2 x Z/2 with φ(a,b) = ((b,b), id): kernel {(a,0)}, quotient Z/2
        let g = GroupBackend::Product(vec![GroupBackend::Cyclic(Some(2)), GroupBackend::Cyclic(Some(2))]);
        let phi = WreathRecursion::custom(g.clone(), |x| {
            let GroupElement::Tuple(t) = x else { unreachable!() };
            let y = GroupElement::Tuple(vec![t[1].clone(), t[1].clone()]);
            WreathImage::new(y.clone(), y, false)
        })
        .unwrap();
        let inj = injectivize(&phi).unwrap();
        assert_eq!(inj.tower_orders(), &[4, 2]);
        check_square(&inj, &phi);
    }

    #[test]
    fn infinite_backend_refused() {
        let phi = WreathRecursion::vanishing(GroupBackend::Cyclic(None));
        assert_eq!(injectivize(&phi).unwrap_err(), Error::TowerMayNotStabilize);
    }
}
