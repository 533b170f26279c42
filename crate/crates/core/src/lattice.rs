//! Subgroups of `Z^d` in canonical column-echelon form.
//!
//! The canonical basis is lower-triangular by columns: column `j` is zero
//! above its pivot row, pivot rows strictly increase from left to right,
//! every pivot is positive, and the entries of earlier columns that sit in a
//! later pivot's row are reduced into `[0, pivot)`. Two generator sets span
//! the same subgroup exactly when their canonical bases are equal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    dim: usize,
    basis: IntMatrix,
    pivot_rows: Vec<usize>,
}

impl LatticeBasis {
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    /// Index in `Z^d` (product of the pivots); `None` below full rank.
    pub fn index(&self) -> Option<BigInt> {
        if !self.is_full_rank() {
            return None;
        }
        Some((0..self.dim).map(|i| self.basis[(i, i)].clone()).product())
    }

    /// True when the lattice is all of `Z^d`.
    pub fn is_everything(&self) -> bool {
        self.is_full_rank() && self.basis == IntMatrix::identity(self.dim)
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        member(v, self)
    }

    /// Canonical basis of the sum of two lattices in the same ambient space.
    pub fn sum(&self, other: &LatticeBasis) -> Result<LatticeBasis> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut cols = self.basis.columns();
        cols.extend(other.basis.columns());
        Ok(canonical_from_columns(self.dim, cols))
    }
}

/// Canonical basis of the integer column span of `generators`.
pub fn canonical_basis(generators: &IntMatrix) -> LatticeBasis {
    canonical_from_columns(generators.rows(), generators.columns())
}

pub(crate) fn canonical_from_columns(dim: usize, columns: Vec<Vec<BigInt>>) -> LatticeBasis {
    let mut pending: Vec<Vec<BigInt>> = columns
        .into_iter()
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots: Vec<Vec<BigInt>> = Vec::new();
    let mut pivot_rows = Vec::new();

    for row in 0..dim {
        if pending.is_empty() {
            break;
        }
        // Euclid across the pending columns until one nonzero entry remains.
        loop {
            let mut nonzero: Vec<usize> = (0..pending.len())
                .filter(|&j| !pending[j][row].is_zero())
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by(|&x, &y| pending[x][row].abs().cmp(&pending[y][row].abs()));
            let small = nonzero[0];
            let divisor = pending[small][row].clone();
            let reducer = pending[small].clone();
            for &j in &nonzero[1..] {
                let q = pending[j][row].div_floor(&divisor);
                axpy(&mut pending[j], &q, &reducer);
            }
        }
        let Some(pos) = pending.iter().position(|c| !c[row].is_zero()) else {
            continue;
        };
        let mut pivot = pending.swap_remove(pos);
        if pivot[row].is_negative() {
            pivot.iter_mut().for_each(|x| *x = -&*x);
        }
        for earlier in pivots.iter_mut() {
            let q = earlier[row].div_floor(&pivot[row]);
            if !q.is_zero() {
                axpy(earlier, &q, &pivot);
            }
        }
        pivots.push(pivot);
        pivot_rows.push(row);
        pending.retain(|c| c.iter().any(|x| !x.is_zero()));
    }
    debug_assert!(pending.is_empty());

    let basis = IntMatrix::from_columns(dim, &pivots).expect("columns have ambient length");
    LatticeBasis {
        dim,
        basis,
        pivot_rows,
    }
}

/// `target -= q * source`
fn axpy(target: &mut [BigInt], q: &BigInt, source: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// True iff `v` is an integer combination of the basis columns.
pub fn member(v: &[BigInt], basis: &LatticeBasis) -> Result<bool> {
    if v.len() != basis.dim {
        return Err(Error::DimensionMismatch {
            expected: basis.dim,
            found: v.len(),
        });
    }
    let mut residual = v.to_vec();
    let mut next = 0;
    for row in 0..basis.dim {
        if next < basis.pivot_rows.len() && basis.pivot_rows[next] == row {
            let pivot = &basis.basis[(row, next)];
            let (q, r) = residual[row].div_rem(pivot);
            if !r.is_zero() {
                return Ok(false);
            }
            if !q.is_zero() {
                let col = basis.basis.column(next);
                axpy(&mut residual, &q, &col);
            }
            next += 1;
        } else if !residual[row].is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Unit vector helper used by the closure oracles.
pub fn unit_vector(dim: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dim];
    v[i] = BigInt::one();
    v
}
