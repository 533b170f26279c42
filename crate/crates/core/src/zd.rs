//! Ideal tests for subgroups of `Z^d`.
//!
//! An ideal of `Z^d` is a product `d_1 Z x ... x d_d Z`. A subgroup of rank
//! `k` can only be an ideal when exactly `k` coordinates are ever nonzero;
//! after dropping the others the question becomes whether a full-rank
//! `k x k` basis `A` admits a unimodular `U` with `A U` diagonal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{gcd, gcd_all};
use crate::error::{Error, Result};
use crate::lattice::{canonical_basis, member, LatticeBasis};
use crate::matrix::IntMatrix;

/// Constructive certificate that a lattice is an ideal.
///
/// For the basis matrix `A` restricted to the `support` rows, `unimodular`
/// has determinant `+-1` and `A * unimodular = Diagonal(diagonal)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealWitness {
    pub diagonal: Vec<BigInt>,
    pub unimodular: IntMatrix,
    pub support: Vec<usize>,
}

impl IdealWitness {
    /// Recomputes `det(U)` and `A U` exactly. `a` is the full `d x k` basis.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let k = self.diagonal.len();
        if self.support.len() != k || a.cols() != k || self.unimodular.rows() != k {
            return false;
        }
        if k == 0 {
            return true;
        }
        let restricted = a.select_rows(&self.support);
        let Ok(det) = self.unimodular.det() else {
            return false;
        };
        if det.abs() != BigInt::one() {
            return false;
        }
        let product = &restricted * &self.unimodular;
        let rest_is_zero = (0..a.rows())
            .filter(|i| !self.support.contains(i))
            .all(|i| a.row(i).iter().all(Zero::is_zero));
        rest_is_zero && product == IntMatrix::diagonal(&self.diagonal)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotIdealReason {
    /// More coordinates are in use than the rank allows.
    SupportExceedsRank { support: usize, rank: usize },
    /// `|det A|` differs from the product of the coordinate gcds, so the
    /// lattice is a proper sublattice of the only candidate ideal.
    IndexMismatch {
        det: BigInt,
        projection_product: BigInt,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZdDecision {
    Ideal {
        basis: LatticeBasis,
        witness: IdealWitness,
    },
    NotIdeal {
        basis: LatticeBasis,
        reason: NotIdealReason,
    },
}

impl ZdDecision {
    pub fn is_ideal(&self) -> bool {
        matches!(self, ZdDecision::Ideal { .. })
    }

    pub fn basis(&self) -> &LatticeBasis {
        match self {
            ZdDecision::Ideal { basis, .. } | ZdDecision::NotIdeal { basis, .. } => basis,
        }
    }

    pub fn witness(&self) -> Option<&IdealWitness> {
        match self {
            ZdDecision::Ideal { witness, .. } => Some(witness),
            ZdDecision::NotIdeal { .. } => None,
        }
    }
}

/// A cyclic subgroup `Z * gen` is an ideal iff `gen` has a single nonzero
/// coordinate.
pub fn rank1_is_ideal(gen: &[BigInt]) -> Result<bool> {
    let support = gen.iter().filter(|x| !x.is_zero()).count();
    if support == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(support == 1)
}

/// The lattice spanned by `(a, b)` and `(c, d)` is an ideal iff
/// `ad - bc` divides `gcd(a, c) * gcd(b, d)`.
pub fn is_ideal_2x2(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Result<bool> {
    let det = a * d - b * c;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    Ok((gcd(a, c) * gcd(b, d)).is_multiple_of(&det))
}

/// Solves `A X = Diagonal(u, v)` with `det X = 1` for `A = [[a, c], [b, d]]`.
///
/// The first column of `X` is forced into the kernel of `(b, d)` and the
/// second into the kernel of `(a, c)`; the scalings `beta` and `alpha = -1`
/// then make `det X = 1`. The diagonal is returned as computed, signs
/// included.
pub fn witness_2x2(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Result<IdealWitness> {
    if !is_ideal_2x2(a, b, c, d)? {
        let det = a * d - b * c;
        return Err(Error::NotDivisible {
            divisor: det.to_string(),
            dividend: (gcd(a, c) * gcd(b, d)).to_string(),
        });
    }
    let det = a * d - b * c;
    let g_ac = gcd(a, c);
    let g_bd = gcd(b, d);
    let alpha = -BigInt::one();
    let beta = (&g_ac * &g_bd) / &det;

    let x12 = -(c / &g_ac) * &alpha;
    let x22 = (a / &g_ac) * &alpha;
    let x11 = -(d / &g_bd) * &beta;
    let x21 = (b / &g_bd) * &beta;
    let x = IntMatrix::from_row_major(2, 2, vec![x11, x12, x21, x22])?;

    let a_mat = IntMatrix::from_row_major(2, 2, vec![a.clone(), c.clone(), b.clone(), d.clone()])?;
    let ax = &a_mat * &x;
    if !ax.is_diagonal() || x.det()? != BigInt::one() {
        return Err(Error::Inconsistent(format!(
            "2x2 witness {x} fails for {a_mat}"
        )));
    }
    Ok(IdealWitness {
        diagonal: ax.diagonal_entries(),
        unimodular: x,
        support: vec![0, 1],
    })
}

/// Full-rank square case. Returns a witness iff the column span of `a` is an
/// ideal of `Z^k`.
///
/// The span always sits inside `prod g_i Z` where `g_i` is the gcd of row
/// `i`, and both lattices have finite index, so they coincide exactly when
/// `|det a| = prod g_i`. The witness is then `U = adj(a) * Diagonal(g) / det a`.
pub fn fullrank_is_ideal(a: &IntMatrix) -> Result<Option<IdealWitness>> {
    let det = a.det()?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let k = a.rows();
    let row_gcds: Vec<BigInt> = (0..k).map(|i| gcd_all(a.row(i))).collect();
    let product: BigInt = row_gcds.iter().product();
    if det.abs() != product {
        return Ok(None);
    }

    let adj = a.adjugate()?;
    let mut u = &adj * &IntMatrix::diagonal(&row_gcds);
    for i in 0..k {
        for j in 0..k {
            let (q, r) = u[(i, j)].div_rem(&det);
            if !r.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "adjugate entry ({i}, {j}) not divisible by {det}"
                )));
            }
            u[(i, j)] = q;
        }
    }

    // The two divisibility conditions on the chosen diagonal.
    let signed_product_ok = det.abs() == product;
    let columns_ok = (0..k).all(|i| {
        let col_gcd = gcd_all(&adj.column(i));
        col_gcd.is_multiple_of(&(&det / &row_gcds[i]))
    });
    let witness = IdealWitness {
        diagonal: row_gcds,
        unimodular: u,
        support: (0..k).collect(),
    };
    if !signed_product_ok || !columns_ok || !witness.verify(a) {
        return Err(Error::Inconsistent(format!(
            "witness for {a} failed verification"
        )));
    }
    Ok(Some(witness))
}

/// Decides whether the subgroup of `Z^d` spanned by the columns of
/// `generators` is an ideal. The witness refers to the canonical basis.
pub fn is_ideal_zd(generators: &IntMatrix) -> Result<ZdDecision> {
    let basis = canonical_basis(generators);
    let rank = basis.rank();
    let support: Vec<usize> = (0..generators.rows())
        .filter(|&i| generators.row(i).iter().any(|x| !x.is_zero()))
        .collect();

    if rank == 0 {
        return Ok(ZdDecision::Ideal {
            basis,
            witness: IdealWitness {
                diagonal: vec![],
                unimodular: IntMatrix::zeros(0, 0),
                support: vec![],
            },
        });
    }
    if support.len() > rank {
        return Ok(ZdDecision::NotIdeal {
            basis,
            reason: NotIdealReason::SupportExceedsRank {
                support: support.len(),
                rank,
            },
        });
    }
    if rank == 1 {
        debug_assert!(rank1_is_ideal(&basis.basis().column(0))?);
    }

    let restricted = basis.basis().select_rows(&support);
    match fullrank_is_ideal(&restricted)? {
        Some(mut witness) => {
            witness.support = support;
            Ok(ZdDecision::Ideal { basis, witness })
        }
        None => {
            let det = restricted.det()?.abs();
            let projection_product = (0..rank).map(|i| gcd_all(restricted.row(i))).product();
            Ok(ZdDecision::NotIdeal {
                basis,
                reason: NotIdealReason::IndexMismatch {
                    det,
                    projection_product,
                },
            })
        }
    }
}

/// Closure oracle: a subgroup is an ideal iff multiplying each generator by
/// each coordinate idempotent stays inside it. Uses only membership tests.
pub fn is_ideal_by_idempotents(generators: &IntMatrix) -> bool {
    let basis = canonical_basis(generators);
    let dim = generators.rows();
    generators.columns().iter().all(|g| {
        (0..dim).all(|i| {
            let mut projected = vec![BigInt::zero(); dim];
            projected[i] = g[i].clone();
            member(&projected, &basis).expect("dimension matches")
        })
    })
}
