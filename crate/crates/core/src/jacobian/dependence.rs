use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::polyring::{format_rational, Monomial, Polynomial, Rational};

use super::matrix::PolyMatrix;

/// Rank of a family of polynomial vectors over ℚ together with a basis of the
/// linear relations `Σ λ_i v_i = 0`; each basis vector has first nonzero entry 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependenceReport {
    pub rank: usize,
    pub kernel: Vec<Vec<Rational>>,
}

impl DependenceReport {
    pub fn is_independent(&self) -> bool {
        self.kernel.is_empty()
    }

    pub fn to_json(&self) -> DependenceJson {
        DependenceJson {
            rank: self.rank,
            kernel: self.kernel.iter().map(|v| v.iter().map(format_rational).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DependenceJson {
    pub rank: usize,
    pub kernel: Vec<Vec<String>>,
}

pub fn linear_dependence_rank(polys: &[Polynomial]) -> DependenceReport {
    let rows: Vec<Vec<Polynomial>> = polys.iter().map(|p| vec![p.clone()]).collect();
    vector_dependence_rank(&rows)
}

/// Dependence among the rows of a polynomial matrix, each row flattened to
/// its (column, monomial) coefficient vector.
pub fn row_dependence_rank(m: &PolyMatrix) -> DependenceReport {
    vector_dependence_rank(&m.rows())
}

pub fn vector_dependence_rank(vectors: &[Vec<Polynomial>]) -> DependenceReport {
    let count = vectors.len();
    let mut columns: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for v in vectors {
        for (j, p) in v.iter().enumerate() {
            for (m, _) in p.terms() {
                columns.entry((j, m.clone())).or_insert(0);
            }
        }
    }
    for (slot, index) in columns.values_mut().zip(0..) {
        *slot = index;
    }
    // transposed coefficient matrix: one row per (column, monomial), one column per vector
    let mut a = vec![vec![Rational::zero(); count]; columns.len()];
    for (i, v) in vectors.iter().enumerate() {
        for (j, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                a[columns[&(j, m.clone())]][i] = c.clone();
            }
        }
    }
    let pivots = reduce_to_rref(&mut a, count);
    let mut kernel = Vec::new();
    for free in (0..count).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); count];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("free entry is one");
        kernel.push(v.into_iter().map(|x| x / &lead).collect());
    }
    DependenceReport { rank: pivots.len(), kernel }
}

/// Gauss-Jordan elimination in place; returns pivot columns in row order.
fn reduce_to_rref(a: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(found) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, found);
        let inv = Rational::one() / &a[row][col];
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[row].clone();
        for (r, other) in a.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    pivots
}
