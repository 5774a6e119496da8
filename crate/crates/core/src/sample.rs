//! Seeded random partitions, diagrams and elements for tests and demos.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagrams::{Column, LabeledDiagram, Leaf, PartitionSet};
use crate::error::Result;
use crate::groups::GroupBackend;
use crate::vphi::{Context, GroupoidElement, VPhiElement};

/// A forest partition on `roots` trees with `leaves` leaves, grown by
/// splitting uniformly chosen leaves of depth below `max_depth`.
/// Stops early if no leaf can be split.
pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, roots: u32, leaves: usize, max_depth: usize) -> PartitionSet {
    let mut current: Vec<Leaf> = (0..roots).map(Leaf::root).collect();
    while current.len() < leaves {
        let open: Vec<usize> = (0..current.len()).filter(|&i| current[i].len() < max_depth).collect();
        let Some(&i) = open.choose(rng) else { break };
        let l = current.swap_remove(i);
        current.push(l.child(false));
        current.push(l.child(true));
    }
    PartitionSet::new(roots, current).expect("grown by splitting")
}

/// A diagram with random partitions of equal size, a random bijection and
/// labels drawn from `backend`.
pub fn random_diagram<R: Rng + ?Sized>(
    rng: &mut R,
    backend: &GroupBackend,
    roots: (u32, u32),
    columns: usize,
    max_depth: usize,
) -> LabeledDiagram {
    let columns = columns.max(roots.0 as usize).max(roots.1 as usize);
    loop {
        let dom = random_partition(rng, roots.0, columns, max_depth);
        let ran = random_partition(rng, roots.1, dom.len(), max_depth);
        if dom.len() != ran.len() {
            continue;
        }
        let mut targets: Vec<Leaf> = ran.leaves().to_vec();
        targets.shuffle(rng);
        let cols = dom
            .leaves()
            .iter()
            .zip(targets)
            .map(|(u, v)| Column::new(u.clone(), backend.random(rng), v))
            .collect();
        return LabeledDiagram::new(roots, cols).expect("valid by construction");
    }
}

/// A random element of `V_φ(G)` with at most `max_columns` columns before
/// reduction, labels drawn in the source group.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, ctx: &Context, max_columns: usize, max_depth: usize) -> Result<VPhiElement> {
    let k = rng.gen_range(1..=max_columns.max(1));
    let d = random_diagram(rng, ctx.source_backend(), (1, 1), k, max_depth);
    VPhiElement::new(ctx, d)
}

/// A random label-free element.
pub fn random_trivial_element<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: &Context,
    max_columns: usize,
    max_depth: usize,
) -> Result<VPhiElement> {
    let k = rng.gen_range(1..=max_columns.max(1));
    let d = random_diagram(rng, &GroupBackend::trivial(), (1, 1), k, max_depth);
    let one = ctx.backend().identity();
    VPhiElement::from_stored(ctx, d.map_labels(|_| Ok(one.clone()))?)
}

/// A random groupoid element from `m` to `n` roots.
pub fn random_groupoid<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: &Context,
    roots: (u32, u32),
    max_columns: usize,
    max_depth: usize,
) -> Result<GroupoidElement> {
    let lo = roots.0.max(roots.1) as usize;
    let k = rng.gen_range(lo..=max_columns.max(lo));
    let d = random_diagram(rng, ctx.source_backend(), roots, k, max_depth);
    GroupoidElement::new(ctx, d)
}
