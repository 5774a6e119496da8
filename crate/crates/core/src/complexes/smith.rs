//! Smith normal form over an exact integer type.

use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

use crate::error::{Error, Result};

/// Integer scalars usable in the elimination. Checked arithmetic reports
/// overflow so callers can retry with a wider type.
pub trait SmithScalar: Clone + Integer + Signed + CheckedMul + CheckedSub + Send + Sync {}

impl<T> SmithScalar for T where T: Clone + Integer + Signed + CheckedMul + CheckedSub + Send + Sync {}

/// Rank and invariant factors `d₁ | d₂ | ⋯` of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub rank: usize,
    /// Nonzero invariant factors, positive and in divisibility order.
    pub invariant_factors: Vec<T>,
}

impl<T: SmithScalar> SmithForm<T> {
    /// Invariant factors other than one.
    pub fn torsion(&self) -> Vec<T> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

fn sub_mul<T: SmithScalar>(a: &T, q: &T, b: &T) -> Result<T> {
    a.checked_sub(&q.checked_mul(b).ok_or(Error::Overflow)?).ok_or(Error::Overflow)
}

/// Diagonalizes a dense row-major matrix by unimodular row and column
/// operations, choosing pivots of minimal absolute value.
pub fn smith_normal_form<T: SmithScalar>(mut m: Vec<Vec<T>>) -> Result<SmithForm<T>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag: Vec<T> = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // global minimal pivot in the remaining block
        let mut best: Option<(usize, usize)> = None;
        'search: for (i, row) in m.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        if pj != t {
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
        }
        loop {
            let mut clean = true;
            let support: Vec<usize> = (t..cols).filter(|&j| !m[t][j].is_zero()).collect();
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for &j in &support {
                    let v = sub_mul(&m[i][j], &q, &m[t][j])?;
                    m[i][j] = v;
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for i in t..rows {
                    if !m[i][t].is_zero() {
                        let v = sub_mul(&m[i][j], &q, &m[i][t])?;
                        m[i][j] = v;
                    }
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // move the smallest remaining entry of row t or column t to the pivot
            let mut bi = t;
            let mut bj = t;
            for i in t + 1..rows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[bi][bj].abs() {
                    (bi, bj) = (i, t);
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[bi][bj].abs() {
                    (bi, bj) = (t, j);
                }
            }
            m.swap(t, bi);
            if bj != t {
                for row in m.iter_mut() {
                    row.swap(t, bj);
                }
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    // rewrite the diagonal into a divisibility chain
    let r = diag.len();
    for i in 0..r {
        for j in i + 1..r {
            let g = diag[i].gcd(&diag[j]);
            if g == diag[i] {
                continue;
            }
            let l = (diag[i].clone() / g.clone()).checked_mul(&diag[j]).ok_or(Error::Overflow)?;
            diag[i] = g;
            diag[j] = l;
        }
    }
    Ok(SmithForm { rank: r, invariant_factors: diag })
}
