use super::SimplicialComplex;
use crate::error::{Error, Result};

/// The 2-subsets of `[n]` in lexicographic order, one-based.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// Every nonempty set of pairwise compatible indices in `0..count`, sorted.
pub(crate) fn disjoint_families<F>(count: usize, disjoint: F) -> Vec<Vec<u32>>
where
    F: Fn(usize, usize) -> bool,
{
    fn rec<F: Fn(usize, usize) -> bool>(
        count: usize,
        disjoint: &F,
        start: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        for v in start..count {
            if current.iter().all(|&u| disjoint(u as usize, v)) {
                current.push(v as u32);
                out.push(current.clone());
                rec(count, disjoint, v + 1, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(count, &disjoint, 0, &mut Vec::new(), &mut out);
    out
}

/// Vertices are the 2-subsets of `[n]`; simplices are sets of pairwise
/// disjoint 2-subsets.
pub fn matching_complex(n: usize) -> Result<SimplicialComplex> {
    if n < 2 {
        return Err(Error::Precondition("matching complexes need n >= 2".into()));
    }
    let ps = pairs(n);
    let labels = ps.iter().map(|(i, j)| format!("{{{i},{j}}}")).collect();
    let meets = |a: (usize, usize), b: (usize, usize)| a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
    let simplices = disjoint_families(ps.len(), |u, v| !meets(ps[u], ps[v]));
    SimplicialComplex::from_simplices(labels, simplices)
}
