//! Exact probability that a uniformly chosen subgroup is an ideal.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::arith::{factorize, gaussian_binomial, require_prime};
use crate::error::{Error, Result};
use crate::goursat::{count_ideals_pp, count_subgroups_closed};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityReport {
    pub ring: String,
    pub ideal_count: BigInt,
    pub subgroup_count: BigInt,
    pub probability: BigRational,
}

impl ProbabilityReport {
    fn new(
        ring: String,
        ideal_count: BigInt,
        subgroup_count: BigInt,
        probability: BigRational,
    ) -> Result<Self> {
        let ratio = BigRational::new(ideal_count.clone(), subgroup_count.clone());
        if ratio != probability {
            return Err(Error::Inconsistent(format!(
                "{ring}: {probability} != {ideal_count}/{subgroup_count}"
            )));
        }
        Ok(ProbabilityReport {
            ring,
            ideal_count,
            subgroup_count,
            probability,
        })
    }
}

impl fmt::Display for ProbabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ideals / {} subgroups = {}",
            self.ring, self.ideal_count, self.subgroup_count, self.probability
        )
    }
}

/// Closed form for `Z_{p^r} x Z_{p^s}`, exponents ordered so `r <= s`:
/// `(r+1)(s+1)(p-1)^2 / (p^{r+1}[(s-r+1)(p-1)+2] - [(s+r+3)(p-1)+2])`.
pub fn prob_pp(p: u64, r: u32, s: u32) -> Result<ProbabilityReport> {
    require_prime(p)?;
    let (r, s) = (r.min(s), r.max(s));
    let pb = BigInt::from(p);
    let pm1 = &pb - 1;
    let num = BigInt::from(r + 1) * BigInt::from(s + 1) * &pm1 * &pm1;
    let den =
        pb.pow(r + 1) * (BigInt::from(s - r + 1) * &pm1 + 2) - (BigInt::from(s + r + 3) * &pm1 + 2);
    ProbabilityReport::new(
        format!("Z_{p}^{r} x Z_{p}^{s}"),
        count_ideals_pp(r, s),
        count_subgroups_closed(p, r, s)?,
        BigRational::new(num, den),
    )
}

/// `Z_n x Z_m` via the prime-by-prime product.
pub fn prob_nm(n: u64, m: u64) -> Result<ProbabilityReport> {
    let fn_ = factorize(n)?;
    let fm = factorize(m)?;
    let mut primes: Vec<u64> = fn_.primes().chain(fm.primes()).collect();
    primes.sort_unstable();
    primes.dedup();

    let mut probability = BigRational::one();
    let mut subgroups = BigInt::one();
    for p in primes {
        let part = prob_pp(p, fn_.exponent(p), fm.exponent(p))?;
        probability *= part.probability;
        subgroups *= part.subgroup_count;
    }
    let ideals = BigInt::from(fn_.divisor_count()) * BigInt::from(fm.divisor_count());
    ProbabilityReport::new(format!("Z_{n} x Z_{m}"), ideals, subgroups, probability)
}

/// Number of subspaces of `F_p^r`, all dimensions `0..=r`.
pub fn count_subspaces(p: u64, r: u32) -> Result<BigInt> {
    (0..=r).map(|i| gaussian_binomial(r, i, p)).sum()
}

/// `(Z_p)^r`: `2^r` ideals over all subspaces.
pub fn prob_vector_space(p: u64, r: u32) -> Result<ProbabilityReport> {
    require_prime(p)?;
    if r == 0 {
        return Err(Error::NonPositive("0".into()));
    }
    let ideals = BigInt::from(2u8).pow(r);
    let subspaces = count_subspaces(p, r)?;
    ProbabilityReport::new(
        format!("(Z_{p})^{r}"),
        ideals.clone(),
        subspaces.clone(),
        BigRational::new(ideals, subspaces),
    )
}
