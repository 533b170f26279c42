//! Goursat correspondence for `Z_{p^r} x Z_{p^s}` and the subgroup counts
//! that follow from it.
//!
//! Subgroups of a cyclic `p`-group form a chain, so each of `A_1, B_1, A_2,
//! B_2` is pinned down by its order exponent. The isomorphism
//! `A_1/B_1 -> A_2/B_2` between cyclic groups of order `p^t` is stored as
//! the unit `u` it multiplies by: the coset of `p^{r-a1}` goes to the coset
//! of `u * p^{s-a2}`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::ring::{FiniteSubgroup, ProductRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoursatTuple {
    pub p: u64,
    pub r: u32,
    pub s: u32,
    /// `|A_1| = p^a1`
    pub a1: u32,
    /// `|B_1| = p^b1`
    pub b1: u32,
    pub a2: u32,
    pub b2: u32,
    /// Unit modulo `p^(a1 - b1)`; 1 when the quotients are trivial.
    pub unit: u64,
}

impl GoursatTuple {
    /// Exponent `t` with `|A_i / B_i| = p^t`.
    pub fn quotient_exponent(&self) -> u32 {
        self.a1 - self.b1
    }

    pub fn validate(&self) -> Result<()> {
        require_prime(self.p)?;
        let bad = |msg: &str| Err(Error::InvalidTuple(format!("{msg}: {self:?}")));
        if self.a1 > self.r || self.b1 > self.a1 || self.a2 > self.s || self.b2 > self.a2 {
            return bad("subgroup chain out of range");
        }
        if self.a1 - self.b1 != self.a2 - self.b2 {
            return bad("quotients have different orders");
        }
        let t = self.quotient_exponent();
        if t == 0 {
            if self.unit != 1 {
                return bad("trivial quotient needs unit 1");
            }
        } else {
            let pt = self
                .p
                .checked_pow(t)
                .ok_or(Error::InvalidTuple("overflow".into()))?;
            if self.unit == 0 || self.unit >= pt || self.unit.is_multiple_of(self.p) {
                return bad("unit out of range");
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Result<ProductRing> {
        ProductRing::pair(pow(self.p, self.r)?, pow(self.p, self.s)?)
    }
}

fn pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).ok_or_else(|| Error::CapExceeded {
        order: format!("{p}^{e}"),
        cap: u64::MAX,
    })
}

/// All Goursat tuples of `Z_{p^r} x Z_{p^s}`.
pub fn enumerate_goursat_tuples(p: u64, r: u32, s: u32) -> Result<Vec<GoursatTuple>> {
    require_prime(p)?;
    let mut out = Vec::new();
    for t in 0..=r.min(s) {
        let units: Vec<u64> = if t == 0 {
            vec![1]
        } else {
            let pt = pow(p, t)?;
            (1..pt).filter(|u| u % p != 0).collect()
        };
        for a1 in t..=r {
            for a2 in t..=s {
                for &unit in &units {
                    out.push(GoursatTuple {
                        p,
                        r,
                        s,
                        a1,
                        b1: a1 - t,
                        a2,
                        b2: a2 - t,
                        unit,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// `U = {(x, y) in A_1 x A_2 : phi(x + B_1) = y + B_2}`, materialized.
pub fn tuple_to_subgroup(t: &GoursatTuple) -> Result<FiniteSubgroup> {
    t.validate()?;
    let ring = t.ring()?;
    let (pr, ps) = (ring.moduli()[0], ring.moduli()[1]);
    let g1 = pow(t.p, t.r - t.a1)?;
    let g2 = pow(t.p, t.s - t.a2)?;
    let h2 = pow(t.p, t.s - t.b2)?;
    let size_a1 = pow(t.p, t.a1)?;
    let size_b2 = pow(t.p, t.b2)?;

    let mut codes = BTreeSet::new();
    for i in 0..size_a1 {
        let x = (i as u128 * g1 as u128 % pr as u128) as u64;
        let y0 = (i as u128 * t.unit as u128 % ps as u128 * g2 as u128 % ps as u128) as u64;
        for j in 0..size_b2 {
            let y = ((y0 as u128 + j as u128 * h2 as u128) % ps as u128) as u64;
            codes.insert(x * ps + y);
        }
    }
    let generators = vec![
        ring.element(&[
            g1 as i64,
            ((t.unit as u128 * g2 as u128) % ps as u128) as i64,
        ])?,
        ring.element(&[0, h2 as i64])?,
    ];
    Ok(FiniteSubgroup::with_elements(
        ring,
        generators,
        codes.into_iter().collect(),
    ))
}

fn exponent_of(p: u64, mut size: u64) -> Result<u32> {
    let mut e = 0;
    while size > 1 {
        if !size.is_multiple_of(p) {
            return Err(Error::Inconsistent(format!("{size} is not a power of {p}")));
        }
        size /= p;
        e += 1;
    }
    Ok(e)
}

/// Recovers `(A_1, B_1, A_2, B_2, phi)` from a materialized subgroup of
/// `Z_{p^r} x Z_{p^s}`.
pub fn subgroup_to_tuple(h: &FiniteSubgroup, p: u64) -> Result<GoursatTuple> {
    require_prime(p)?;
    let ring = h.ring();
    let (pr, ps) = match ring.moduli() {
        &[a, b] => (a, b),
        other => {
            return Err(Error::Arity {
                expected: 2,
                found: other.len(),
            })
        }
    };
    let (r, s) = (exponent_of(p, pr)?, exponent_of(p, ps)?);
    let elements = h.elements()?;
    let proj1: BTreeSet<u64> = elements.iter().map(|e| e.residues()[0]).collect();
    let proj2: BTreeSet<u64> = elements.iter().map(|e| e.residues()[1]).collect();
    let kern1 = elements.iter().filter(|e| e.residues()[1] == 0).count() as u64;
    let kern2 = elements.iter().filter(|e| e.residues()[0] == 0).count() as u64;
    let a1 = exponent_of(p, proj1.len() as u64)?;
    let b1 = exponent_of(p, kern1)?;
    let a2 = exponent_of(p, proj2.len() as u64)?;
    let b2 = exponent_of(p, kern2)?;
    let t = a1 - b1;
    let unit = if t == 0 {
        1
    } else {
        let g1 = pow(p, r - a1)?;
        let g2 = pow(p, s - a2)?;
        let image = elements
            .iter()
            .find(|e| e.residues()[0] == g1)
            .ok_or_else(|| Error::Inconsistent("generator of A_1 has no partner".into()))?
            .residues()[1];
        (image / g2) % pow(p, t)?
    };
    let tuple = GoursatTuple {
        p,
        r,
        s,
        a1,
        b1,
        a2,
        b2,
        unit,
    };
    tuple.validate()?;
    Ok(tuple)
}

fn ordered(r: u32, s: u32) -> (u32, u32) {
    (r.min(s), r.max(s))
}

/// Closed-form subgroup count of `Z_{p^r} x Z_{p^s}`:
/// `(p^{r+1}[(s-r+1)(p-1)+2] - [(s+r+3)(p-1)+2]) / (p-1)^2` with `r <= s`.
pub fn count_subgroups_closed(p: u64, r: u32, s: u32) -> Result<BigInt> {
    require_prime(p)?;
    let (r, s) = ordered(r, s);
    let pb = BigInt::from(p);
    let pm1 = &pb - 1;
    let lead: BigInt = Pow::pow(&pb, r + 1) * (BigInt::from(s - r + 1) * &pm1 + 2);
    let tail = BigInt::from(s + r + 3) * &pm1 + 2;
    let num: BigInt = lead - tail;
    let den = &pm1 * &pm1;
    let (q, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::Inconsistent(format!("{num} not divisible by {den}")));
    }
    Ok(q)
}

/// Tuple count: `(r+1)(s+1) + sum_{k=1}^{r} (r-k+1)(s-k+1)(p^k - p^{k-1})`.
pub fn count_subgroups_sum(p: u64, r: u32, s: u32) -> Result<BigInt> {
    require_prime(p)?;
    let (r, s) = ordered(r, s);
    let pb = BigInt::from(p);
    let mut total = BigInt::from((r + 1) as u64 * (s + 1) as u64);
    let mut pk_prev = BigInt::one();
    for k in 1..=r {
        let pk = &pk_prev * &pb;
        total += BigInt::from((r - k + 1) as u64 * (s - k + 1) as u64) * (&pk - &pk_prev);
        pk_prev = pk;
    }
    Ok(total)
}

/// Ideals of `Z_{p^r} x Z_{p^s}`: `(r+1)(s+1)`.
pub fn count_ideals_pp(r: u32, s: u32) -> BigInt {
    BigInt::from(r + 1) * BigInt::from(s + 1)
}
