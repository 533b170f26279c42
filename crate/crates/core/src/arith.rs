//! Exact integer primitives shared by the lattice and finite-ring code:
//! gcd helpers, trial-division factorization, additive orders, the
//! divisor splitting used to build 2x2 witnesses, and Gaussian binomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Nonnegative gcd with `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// gcd of every value in `values`; the empty gcd is 0.
pub fn gcd_all<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigInt>,
{
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Prime factorization as `(prime, exponent)` pairs with primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p`, zero when `p` does not divide the number.
    pub fn exponent(&self, p: u64) -> u32 {
        self.0.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    pub fn value(&self) -> BigInt {
        self.0
            .iter()
            .map(|&(p, e)| BigInt::from(p).pow(e))
            .product()
    }

    /// Number of positive divisors.
    pub fn divisor_count(&self) -> u64 {
        self.0.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }
}

/// Factorizes `n >= 1` by trial division; `factorize(1)` is empty.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::NonPositive(n.to_string()));
    }
    let mut rest = n;
    let mut pairs = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    push(2, &mut rest);
    let mut d = 3u64;
    while d.saturating_mul(d) <= rest {
        push(d, &mut rest);
        d += 2;
    }
    if rest > 1 {
        pairs.push((rest, 1));
    }
    Ok(Factorization(pairs))
}

/// Order of `c` in `(Z_s, +)`, i.e. `s / gcd(c mod s, s)`.
pub fn additive_order<T: Integer + Clone>(c: &T, s: &T) -> Result<T> {
    if *s <= T::zero() {
        return Err(Error::NonPositive("modulus".into()));
    }
    let reduced = c.mod_floor(s);
    Ok(s.clone() / reduced.gcd(s))
}

/// Writes `|d|` as `d1 * d2` with `d1 | g1` and `d2 | g2`.
///
/// `d1` takes the full power of each prime that `g1` can absorb, which is
/// exactly `gcd(|d|, g1)`; the remainder lands in `d2`.
pub fn split_divisor(d: &BigInt, g1: &BigInt, g2: &BigInt) -> Result<(BigInt, BigInt)> {
    if d.is_zero() {
        return Err(Error::NonPositive("0".into()));
    }
    if !g1.is_positive() || !g2.is_positive() {
        return Err(Error::NonPositive(format!("{g1}, {g2}")));
    }
    let d = d.abs();
    let product = g1 * g2;
    if !product.is_multiple_of(&d) {
        return Err(Error::NotDivisible {
            divisor: d.to_string(),
            dividend: product.to_string(),
        });
    }
    let d1 = d.gcd(g1);
    let d2 = &d / &d1;
    debug_assert!(g2.is_multiple_of(&d2));
    Ok((d1, d2))
}

/// Number of `i`-dimensional subspaces of `F_p^r`:
/// `prod_{j<i} (p^r - p^j) / (p^i - p^j)`.
pub fn gaussian_binomial(r: u32, i: u32, p: u64) -> Result<BigInt> {
    require_prime(p)?;
    if i > r {
        return Err(Error::IndexOutOfRange {
            index: i64::from(i),
            bound: i64::from(r),
        });
    }
    let p = BigInt::from(p);
    let pr = p.clone().pow(r);
    let pi = p.clone().pow(i);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut pj = BigInt::one();
    for _ in 0..i {
        num *= &pr - &pj;
        den *= &pi - &pj;
        pj *= &p;
    }
    debug_assert!(num.is_multiple_of(&den));
    Ok(num / den)
}
