use std::thread;

use num_bigint::BigInt;

use super::smith::{smith_normal_form, SmithScalar};
use super::SimplicialComplex;
use crate::error::{Error, Result};

/// Reduced integer homology in degrees `0..=up_to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult<T> {
    pub up_to: usize,
    /// Number of simplices per dimension, for the whole complex.
    pub face_counts: Vec<usize>,
    /// Rank of `∂_k` for `k = 0..=up_to+1`; `∂_0` is the augmentation.
    pub boundary_ranks: Vec<usize>,
    pub betti: Vec<usize>,
    /// Invariant factors other than one, per degree.
    pub torsion: Vec<Vec<T>>,
}

impl<T> HomologyResult<T> {
    pub fn is_acyclic_through(&self, k: isize) -> bool {
        (0..=k).all(|i| {
            let i = i as usize;
            self.betti.get(i) == Some(&0) && self.torsion.get(i).is_some_and(Vec::is_empty)
        })
    }

    /// Compares the reduced Euler characteristic from face counts with the
    /// one from Betti numbers. `None` unless every degree was computed.
    pub fn euler_consistent(&self) -> Option<bool> {
        if self.face_counts.len() > self.up_to + 1 {
            return None;
        }
        let sign = |k: usize| if k % 2 == 0 { 1i128 } else { -1 };
        let faces: i128 = -1 + self.face_counts.iter().enumerate().map(|(k, &c)| sign(k) * c as i128).sum::<i128>();
        let betti: i128 = self.betti.iter().enumerate().map(|(k, &b)| sign(k) * b as i128).sum();
        Some(faces == betti)
    }
}

fn boundary_matrix<T: SmithScalar>(c: &SimplicialComplex, k: usize) -> Vec<Vec<T>> {
    let faces = c.index(k - 1);
    let mut m = vec![vec![T::zero(); c.simplices(k).len()]; c.simplices(k - 1).len()];
    for (j, s) in c.simplices(k).iter().enumerate() {
        for i in 0..s.len() {
            let face = [&s[..i], &s[i + 1..]].concat();
            let row = faces[face.as_slice()];
            m[row][j] = if i % 2 == 0 { T::one() } else { -T::one() };
        }
    }
    m
}

/// Rank and torsion of `∂_k`, computed in `T`.
fn boundary_data<T: SmithScalar>(c: &SimplicialComplex, k: usize) -> Result<(usize, Vec<T>)> {
    if k == 0 {
        return Ok((usize::from(c.vertex_count() > 0), Vec::new()));
    }
    if c.simplices(k).is_empty() {
        return Ok((0, Vec::new()));
    }
    let s = smith_normal_form(boundary_matrix::<T>(c, k))?;
    Ok((s.rank, s.torsion()))
}

fn assemble<T>(c: &SimplicialComplex, up_to: usize, data: Vec<(usize, Vec<T>)>) -> HomologyResult<T> {
    let f = c.f_vector();
    let ranks: Vec<usize> = data.iter().map(|d| d.0).collect();
    let mut torsion: Vec<Vec<T>> = data.into_iter().skip(1).map(|d| d.1).collect();
    torsion.truncate(up_to + 1);
    let betti = (0..=up_to).map(|k| f.get(k).copied().unwrap_or(0) - ranks[k] - ranks[k + 1]).collect();
    HomologyResult { up_to, face_counts: f, boundary_ranks: ranks, betti, torsion }
}

/// Homology computed entirely in `T`; fails with [`Error::Overflow`] when
/// `T` is too narrow. Boundary matrices of different degrees are reduced
/// on separate threads.
pub fn homology_in<T: SmithScalar>(c: &SimplicialComplex, up_to: usize) -> Result<HomologyResult<T>> {
    let data: Vec<Result<(usize, Vec<T>)>> = thread::scope(|s| {
        let handles: Vec<_> = (0..=up_to + 1).map(|k| s.spawn(move || boundary_data::<T>(c, k))).collect();
        handles.into_iter().map(|h| h.join().expect("homology worker panicked")).collect()
    });
    Ok(assemble(c, up_to, data.into_iter().collect::<Result<_>>()?))
}

/// Homology with exact integers: each boundary matrix is reduced in `i64`
/// and redone with big integers if that overflows.
pub fn homology(c: &SimplicialComplex, up_to: usize) -> HomologyResult<BigInt> {
    let data: Vec<(usize, Vec<BigInt>)> = thread::scope(|s| {
        let handles: Vec<_> = (0..=up_to + 1)
            .map(|k| {
                s.spawn(move || match boundary_data::<i64>(c, k) {
                    Ok((r, t)) => (r, t.into_iter().map(BigInt::from).collect()),
                    Err(Error::Overflow) => boundary_data::<BigInt>(c, k).expect("big integers do not overflow"),
                    Err(e) => panic!("unexpected homology failure: {e}"),
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("homology worker panicked")).collect()
    });
    assemble(c, up_to, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::matching_complex;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn simplex_is_acyclic() {
        for d in 0..5u32 {
            let c = SimplicialComplex::from_simplices(labels(d as usize + 1), vec![(0..=d).collect()]).unwrap();
            let h = homology(&c, d as usize);
            assert!(h.betti.iter().all(|&b| b == 0));
            assert_eq!(h.euler_consistent(), Some(true));
        }
    }

    #[test]
    fn circle_and_points() {
        let c = SimplicialComplex::from_simplices(labels(3), vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let h = homology(&c, 1);
        assert_eq!(h.betti, vec![0, 1]);
        let pts = SimplicialComplex::from_simplices(labels(3), Vec::new()).unwrap();
        assert_eq!(homology(&pts, 0).betti, vec![2]);
    }

    #[test]
    fn projective_plane_has_torsion() {
        // six-vertex triangulation of RP²
        let faces = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5],
        ];
        let c = SimplicialComplex::from_simplices(labels(6), faces.iter().map(|f| f.to_vec())).unwrap();
        let h = homology(&c, 2);
        assert_eq!(h.betti, vec![0, 0, 0]);
        assert_eq!(h.torsion[1], vec![BigInt::from(2)]);
        let narrow = homology_in::<i64>(&c, 2).unwrap();
        assert_eq!(narrow.torsion[1], vec![2]);
        assert_eq!(h.euler_consistent(), Some(true));
    }

    #[test]
    fn m4_has_three_components() {
        let h = homology(&matching_complex(4).unwrap(), 1);
        assert_eq!(h.betti[0], 2);
        assert!(h.torsion[0].is_empty());
    }
}
