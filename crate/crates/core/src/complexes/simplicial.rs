use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};

/// A finite abstract simplicial complex, closed under faces.
///
/// Simplices are sorted vertex-index lists, stored per dimension in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    /// Closes `generators` under taking faces. Every vertex index must be
    /// below `vertices.len()`; isolated vertices are added as 0-simplices.
    pub fn from_simplices<I>(vertices: Vec<String>, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let n = vertices.len() as u32;
        let mut by_dim: Vec<BTreeSet<Vec<u32>>> = vec![(0..n).map(|v| vec![v]).collect()];
        for mut s in generators {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            if let Some(&v) = s.iter().find(|&&v| v >= n) {
                return Err(Error::Format(format!("simplex uses unknown vertex {v}")));
            }
            let k = s.len();
            if by_dim.len() < k {
                by_dim.resize_with(k, BTreeSet::new);
            }
            if by_dim[k - 1].contains(&s) {
                continue;
            }
            // all nonempty subsets
            for mask in 1u64..(1u64 << k) {
                let face: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        while by_dim.last().is_some_and(|s| s.is_empty()) && by_dim.len() > 1 {
            by_dim.pop();
        }
        if n == 0 {
            by_dim.clear();
        }
        Ok(SimplicialComplex { vertices, simplices: by_dim.into_iter().map(|s| s.into_iter().collect()).collect() })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    /// `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    /// Simplices of dimension `k`.
    pub fn simplices(&self, k: usize) -> &[Vec<u32>] {
        self.simplices.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        !s.is_empty() && self.simplices(s.len() - 1).binary_search_by(|t| t.as_slice().cmp(s)).is_ok()
    }

    /// Simplices not properly contained in another simplex.
    pub fn maximal(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for k in 0..self.simplices.len() {
            let covered: HashSet<Vec<u32>> = self
                .simplices(k + 1)
                .iter()
                .flat_map(|s| (0..s.len()).map(move |i| [&s[..i], &s[i + 1..]].concat()))
                .collect();
            out.extend(self.simplices[k].iter().filter(|s| !covered.contains(*s)).cloned());
        }
        out
    }

    /// Number of connected components of the 1-skeleton.
    pub fn components(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut count = n;
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e[0] as usize), find(&mut parent, e[1] as usize));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    /// Index of every simplex of dimension `k` in [`SimplicialComplex::simplices`].
    pub(crate) fn index(&self, k: usize) -> HashMap<&[u32], usize> {
        self.simplices(k).iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()
    }

    /// Whether two complexes on the same vertex labels have the same simplices.
    pub fn same_simplices(&self, other: &SimplicialComplex) -> bool {
        self.vertices == other.vertices && self.simplices == other.simplices
    }
}
