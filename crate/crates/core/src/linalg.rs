//! Exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Dense row-major rational matrix.
pub type QMatrix = Vec<Vec<Rational>>;

/// Reduced row echelon form. Returns the reduced matrix and its pivot columns.
pub fn rref(mut m: QMatrix) -> (QMatrix, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m.clone()).1.len()
}

pub fn identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

/// Inverse by Gauss-Jordan elimination on `[M | I]`.
pub fn invert(m: &QMatrix) -> Result<QMatrix> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidParameter("matrix is not square".into()));
    }
    let aug: QMatrix = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::DivisionByZero);
    }
    Ok(red.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solution set of `A x = b`: either empty, or `x0 + span(directions)`.
#[derive(Clone, Debug, PartialEq)]
pub enum AffineSolution {
    Inconsistent,
    Solutions {
        particular: Vec<Rational>,
        directions: Vec<Vec<Rational>>,
    },
}

/// Solve the affine system `A x = b` exactly.
pub fn solve_affine(a: &QMatrix, b: &[Rational], unknowns: usize) -> AffineSolution {
    let aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.contains(&unknowns) {
        return AffineSolution::Inconsistent;
    }
    let mut particular = vec![Rational::zero(); unknowns];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = red[r][unknowns].clone();
    }
    let free: Vec<usize> = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    let directions = free
        .iter()
        .map(|&f| {
            let mut d = vec![Rational::zero(); unknowns];
            d[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                d[p] = -red[r][f].clone();
            }
            d
        })
        .collect();
    AffineSolution::Solutions {
        particular,
        directions,
    }
}
