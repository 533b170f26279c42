//! Ideal tests for subgroups of `Z_{n_1} x ... x Z_{n_k}`.
//!
//! Every ideal of the product ring is `<g_1> x ... x <g_k>`, and a subgroup
//! can only equal the ideal generated by its coordinate gcds. The subgroup
//! always sits inside that ideal, so the question reduces to comparing
//! orders. The cyclic and two-generator routes below compute `|H|` by
//! formula; [`general_is_ideal`] is the reference procedure they must agree
//! with.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{additive_order, extended_gcd, gcd, gcd_all};
use crate::error::{Error, Result};
use crate::lattice::{canonical_from_columns, LatticeBasis};
use crate::ring::{closure_codes, FiniteSubgroup, ProductRing, RingElement};

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn require_pair(ring: &ProductRing) -> Result<(u64, u64)> {
    match ring.moduli() {
        &[n, m] => Ok((n, m)),
        other => Err(Error::Arity {
            expected: 2,
            found: other.len(),
        }),
    }
}

/// `<gen>` is an ideal iff the coordinate orders are pairwise coprime.
/// A zero coordinate has order 1 and never obstructs.
pub fn cyclic_is_ideal(gen: &RingElement, ring: &ProductRing) -> Result<bool> {
    if gen.residues().len() != ring.arity() {
        return Err(Error::DimensionMismatch {
            expected: ring.arity(),
            found: gen.residues().len(),
        });
    }
    let orders = gen
        .residues()
        .iter()
        .zip(ring.moduli())
        .map(|(&a, &n)| additive_order(&a, &n))
        .collect::<Result<Vec<u64>>>()?;
    for (i, &oi) in orders.iter().enumerate() {
        for &oj in &orders[i + 1..] {
            if oi.gcd(&oj) != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Kernel of `(x, y) -> alpha x + beta y (mod n)` as a sublattice of `Z^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelLattice {
    alpha: BigInt,
    beta: BigInt,
    modulus: BigInt,
    basis: LatticeBasis,
}

impl KernelLattice {
    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn coefficients(&self) -> (&BigInt, &BigInt) {
        (&self.alpha, &self.beta)
    }

    /// `alpha x + beta y mod n`, reduced into `[0, n)`.
    pub fn apply(&self, v: &[BigInt]) -> BigInt {
        (&self.alpha * &v[0] + &self.beta * &v[1]).mod_floor(&self.modulus)
    }

    /// Index in `Z^2`, always `n / gcd(alpha, beta, n)`.
    pub fn index(&self) -> BigInt {
        self.basis.index().expect("kernel contains nZ^2")
    }
}

pub fn kernel_lattice(alpha: &BigInt, beta: &BigInt, n: u64) -> Result<KernelLattice> {
    if n == 0 {
        return Err(Error::NonPositive("0".into()));
    }
    let modulus = big(n);
    let zero = BigInt::zero();
    let mut cols = vec![
        vec![modulus.clone(), zero.clone()],
        vec![zero.clone(), modulus.clone()],
    ];
    let (e, s, t) = extended_gcd(alpha, beta);
    if e.is_zero() {
        cols.push(vec![BigInt::one(), zero.clone()]);
        cols.push(vec![zero, BigInt::one()]);
    } else {
        // alpha x + beta y = e k is solvable, and lands in nZ iff
        // n / gcd(e, n) divides k.
        let k0 = &modulus / gcd(&e, &modulus);
        cols.push(vec![beta / &e, -(alpha / &e)]);
        cols.push(vec![&s * &k0, &t * &k0]);
    }
    let kernel = KernelLattice {
        alpha: alpha.clone(),
        beta: beta.clone(),
        modulus: modulus.clone(),
        basis: canonical_from_columns(2, cols),
    };

    let expected_index = &modulus / gcd_all(&[alpha.clone(), beta.clone(), modulus.clone()]);
    let columns = kernel.basis.basis().columns();
    if kernel.basis.index() != Some(expected_index)
        || columns.iter().any(|c| !kernel.apply(c).is_zero())
    {
        return Err(Error::Inconsistent(format!(
            "kernel of ({alpha}, {beta}) mod {n} has wrong basis"
        )));
    }
    Ok(kernel)
}

fn pair_coordinates(g1: &RingElement, g2: &RingElement) -> Result<[BigInt; 4]> {
    match (g1.residues(), g2.residues()) {
        (&[a, b], &[c, d]) => Ok([big(a), big(b), big(c), big(d)]),
        (x, y) => Err(Error::Arity {
            expected: 2,
            found: x.len().max(y.len()),
        }),
    }
}

/// `<(a, b), (c, d)>` in `Z_n x Z_m` is an ideal iff
/// `ker phi_{a,c} + ker phi_{b,d} = Z^2`, decided on canonical bases.
pub fn twogen_is_ideal(ring: &ProductRing, g1: &RingElement, g2: &RingElement) -> Result<bool> {
    let (n, m) = require_pair(ring)?;
    let [a, b, c, d] = pair_coordinates(g1, g2)?;
    let k1 = kernel_lattice(&a, &c, n)?;
    let k2 = kernel_lattice(&b, &d, m)?;
    Ok(k1.basis().sum(k2.basis())?.is_everything())
}

/// Size of `ker psi_{a,c} + ker psi_{b,d}` inside `Z_l x Z_l`,
/// `l = lcm(n, m)`, found by enumerating both kernels.
pub fn kernel_product_size_finite(
    ring: &ProductRing,
    g1: &RingElement,
    g2: &RingElement,
    cap: u64,
) -> Result<u64> {
    let (n, m) = require_pair(ring)?;
    let l = n.lcm(&m);
    let square = ProductRing::pair(l, l)?;
    square.check_cap(cap)?;
    let (a, b) = (g1.residues()[0], g1.residues()[1]);
    let (c, d) = (g2.residues()[0], g2.residues()[1]);
    let in_kernel = |alpha: u64, beta: u64, modulus: u64, x: u64, y: u64| {
        (alpha as u128 * x as u128 + beta as u128 * y as u128).is_multiple_of(modulus as u128)
    };
    let mut k1 = Vec::new();
    let mut k2 = Vec::new();
    for x in 0..l {
        for y in 0..l {
            let code = x * l + y;
            if in_kernel(a, c, n, x, y) {
                k1.push(code);
            }
            if in_kernel(b, d, m, x, y) {
                k2.push(code);
            }
        }
    }
    // K1 + K2 is a union of K1-cosets.
    let mut covered = vec![false; (l * l) as usize];
    let mut size = 0u64;
    for &y in &k2 {
        if covered[y as usize] {
            continue;
        }
        for &x in &k1 {
            let s = square.add_codes(x, y) as usize;
            if !covered[s] {
                covered[s] = true;
                size += 1;
            }
        }
    }
    Ok(size)
}

/// Finite form of the kernel criterion: ideal iff the kernels fill all of
/// `Z_l x Z_l`.
pub fn twogen_is_ideal_finite(
    ring: &ProductRing,
    g1: &RingElement,
    g2: &RingElement,
    cap: u64,
) -> Result<bool> {
    let (n, m) = require_pair(ring)?;
    let l = n.lcm(&m);
    Ok(kernel_product_size_finite(ring, g1, g2, cap)? == l * l)
}

/// `|<(a, b), (c, d)>| = |A_1| |B_2|`: the first projection `<a, c>` of
/// order `n / gcd(a, c, n)`, times the image of `ker phi_{a,c}` under
/// `phi_{b,d}`.
pub fn subgroup_order_two_gen(
    ring: &ProductRing,
    g1: &RingElement,
    g2: &RingElement,
) -> Result<BigInt> {
    let (n, m) = require_pair(ring)?;
    let [a, b, c, d] = pair_coordinates(g1, g2)?;
    let (n_big, m_big) = (big(n), big(m));
    let a1 = &n_big / gcd_all(&[a.clone(), c.clone(), n_big.clone()]);
    let k1 = kernel_lattice(&a, &c, n)?;
    let images: Vec<BigInt> = k1
        .basis()
        .basis()
        .columns()
        .iter()
        .map(|v| (&b * &v[0] + &d * &v[1]).mod_floor(&m_big))
        .collect();
    let b2 = &m_big / images.iter().fold(m_big.clone(), |acc, x| gcd(&acc, x));
    Ok(a1 * b2)
}

/// Order of the candidate ideal `prod <g_i>` with `g_i` the gcd of the
/// `i`-th generator coordinates and `n_i`.
pub fn projection_ideal_order(h: &FiniteSubgroup) -> BigInt {
    let ring = h.ring();
    (0..ring.arity())
        .map(|i| {
            let n = ring.moduli()[i];
            let g = h
                .generators()
                .iter()
                .fold(n, |acc, e| acc.gcd(&e.residues()[i]));
            big(additive_order(&g, &n).expect("modulus is positive"))
        })
        .product()
}

/// Reference decision: `H` is an ideal iff `|H|` equals the order of the
/// product of its coordinate projections.
///
/// `|H|` comes from the materialized element set when present, otherwise
/// from the cyclic formula (one generator) or the kernel formula (two
/// generators in two factors); other shapes are materialized under `cap`.
pub fn general_is_ideal(h: &FiniteSubgroup, cap: u64) -> Result<bool> {
    let target = projection_ideal_order(h);
    Ok(subgroup_order(h, cap)? == target)
}

/// `|H|` by the cheapest exact route available.
pub fn subgroup_order(h: &FiniteSubgroup, cap: u64) -> Result<BigInt> {
    if let Ok(codes) = h.element_codes() {
        return Ok(BigInt::from(codes.len()));
    }
    let ring = h.ring();
    match h.generators() {
        [] => Ok(BigInt::one()),
        [g] => Ok(g
            .residues()
            .iter()
            .zip(ring.moduli())
            .map(|(&a, &n)| additive_order(&a, &n).expect("modulus is positive"))
            .fold(1u64, |acc, o| acc.lcm(&o))
            .into()),
        [g1, g2] if ring.arity() == 2 => subgroup_order_two_gen(ring, g1, g2),
        _ => Ok(BigInt::from(h.materialize(cap)?.len())),
    }
}

/// Closure of the generators, materialized regardless of any cached set.
pub fn closure_of(ring: &ProductRing, generators: &[RingElement], cap: u64) -> Result<Vec<u64>> {
    ring.check_cap(cap)?;
    Ok(closure_codes(
        ring,
        generators.iter().map(|g| ring.encode(g)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::DEFAULT_MATERIALIZE_CAP;

    fn el(ring: &ProductRing, v: &[i64]) -> RingElement {
        ring.element(v).unwrap()
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn cyclic_examples() {
        let r = ProductRing::pair(4, 9).unwrap();
        assert!(cyclic_is_ideal(&el(&r, &[2, 3]), &r).unwrap());
        let r = ProductRing::pair(2, 2).unwrap();
        assert!(!cyclic_is_ideal(&el(&r, &[1, 1]), &r).unwrap());
        let r = ProductRing::pair(5, 7).unwrap();
        for a in 0..5 {
            for c in 0..7 {
                assert!(cyclic_is_ideal(&el(&r, &[a, c]), &r).unwrap());
            }
        }
        assert!(cyclic_is_ideal(&el(&r, &[0, 0]), &r).unwrap());
    }

    #[test]
    fn cyclic_closure_sizes() {
        // <(2,3)> in Z4 x Z9 has 6 elements, as does <2> x <3>.
        let r = ProductRing::pair(4, 9).unwrap();
        let h = FiniteSubgroup::from_i64(r.clone(), &[vec![2, 3]]).unwrap();
        assert_eq!(h.materialize(DEFAULT_MATERIALIZE_CAP).unwrap().len(), 6);
        let r = ProductRing::pair(2, 2).unwrap();
        let h = FiniteSubgroup::from_i64(r, &[vec![1, 1]]).unwrap();
        assert_eq!(h.materialize(DEFAULT_MATERIALIZE_CAP).unwrap().len(), 2);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_lattice(&b(1), &b(0), 7).unwrap();
        assert_eq!(
            k.basis().basis(),
            &crate::matrix::IntMatrix::from_i64_rows(&[&[7, 0], &[0, 1]])
        );
        let k = kernel_lattice(&b(0), &b(0), 5).unwrap();
        assert!(k.basis().is_everything());
        let k = kernel_lattice(&b(1), &b(1), 2).unwrap();
        assert_eq!(k.index(), b(2));
        assert!(k.basis().contains(&[b(1), b(1)]).unwrap());
        assert!(k.basis().contains(&[b(2), b(0)]).unwrap());
        assert!(!k.basis().contains(&[b(1), b(0)]).unwrap());
        assert!(kernel_lattice(&b(1), &b(1), 0).is_err());
    }

    #[test]
    fn kernel_matches_enumeration() {
        for n in 1..=12u64 {
            for alpha in -3..(n as i64) {
                for beta in 0..(n as i64) {
                    let k = kernel_lattice(&b(alpha), &b(beta), n).unwrap();
                    let ni = n as i64;
                    for x in -ni..=ni {
                        for y in -ni..=ni {
                            let inside = (alpha * x + beta * y).rem_euclid(ni) == 0;
                            assert_eq!(k.basis().contains(&[b(x), b(y)]).unwrap(), inside);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn twogen_examples() {
        let r = ProductRing::pair(4, 2).unwrap();
        assert!(!twogen_is_ideal(&r, &el(&r, &[2, 0]), &el(&r, &[3, 1])).unwrap());
        assert!(twogen_is_ideal(&r, &el(&r, &[2, 0]), &el(&r, &[2, 1])).unwrap());

        let r = ProductRing::pair(2, 3).unwrap();
        for x in r.elements() {
            for y in r.elements() {
                assert!(twogen_is_ideal(&r, &x, &y).unwrap());
            }
        }
        let r = ProductRing::pair(2, 2).unwrap();
        assert!(twogen_is_ideal(&r, &el(&r, &[1, 0]), &el(&r, &[0, 1])).unwrap());

        let r3 = ProductRing::new(vec![2, 2, 2]).unwrap();
        let z = r3.zero();
        assert!(matches!(
            twogen_is_ideal(&r3, &z, &z),
            Err(Error::Arity {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn order_examples() {
        let r = ProductRing::pair(4, 2).unwrap();
        assert_eq!(
            subgroup_order_two_gen(&r, &el(&r, &[2, 0]), &el(&r, &[3, 1])).unwrap(),
            b(4)
        );
        let r = ProductRing::pair(2, 2).unwrap();
        assert_eq!(
            subgroup_order_two_gen(&r, &el(&r, &[1, 0]), &el(&r, &[0, 1])).unwrap(),
            b(4)
        );
        let r = ProductRing::pair(6, 1).unwrap();
        for a in 0..6 {
            for c in 0..6 {
                let expected = 6 / (a as u64).gcd(&(c as u64)).gcd(&6);
                assert_eq!(
                    subgroup_order_two_gen(&r, &el(&r, &[a, 0]), &el(&r, &[c, 0])).unwrap(),
                    BigInt::from(expected)
                );
            }
        }
    }

    #[test]
    fn general_examples() {
        let r = ProductRing::pair(4, 2).unwrap();
        let h = FiniteSubgroup::from_i64(r.clone(), &[vec![2, 0], vec![2, 1]]).unwrap();
        assert!(general_is_ideal(&h, DEFAULT_MATERIALIZE_CAP).unwrap());
        let r = ProductRing::pair(2, 2).unwrap();
        let h = FiniteSubgroup::from_i64(r.clone(), &[vec![1, 1]]).unwrap();
        assert!(!general_is_ideal(&h, DEFAULT_MATERIALIZE_CAP).unwrap());
        let h = FiniteSubgroup::new(r.clone(), vec![]).unwrap();
        assert!(general_is_ideal(&h, DEFAULT_MATERIALIZE_CAP).unwrap());
        let h = FiniteSubgroup::from_i64(r, &[vec![0, 0], vec![0, 0]]).unwrap();
        assert!(general_is_ideal(&h, DEFAULT_MATERIALIZE_CAP).unwrap());
    }

    #[test]
    fn general_refuses_large_rings_without_formula() {
        let r = ProductRing::new(vec![1000, 1000, 1000]).unwrap();
        let h = FiniteSubgroup::from_i64(r.clone(), &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert!(matches!(
            general_is_ideal(&h, DEFAULT_MATERIALIZE_CAP),
            Err(Error::CapExceeded { .. })
        ));
        // One generator always has a formula.
        let h = FiniteSubgroup::from_i64(r, &[vec![1, 2, 3]]).unwrap();
        assert!(!general_is_ideal(&h, DEFAULT_MATERIALIZE_CAP).unwrap());
        let r = ProductRing::pair(1_000_003, 999_983).unwrap();
        let h = FiniteSubgroup::from_i64(r, &[vec![1, 0], vec![5, 1]]).unwrap();
        assert!(general_is_ideal(&h, DEFAULT_MATERIALIZE_CAP).unwrap());
    }

    #[test]
    fn finite_kernel_product_fills_square_exactly_for_ideals() {
        for n in 1..=6u64 {
            for m in 1..=6u64 {
                let r = ProductRing::pair(n, m).unwrap();
                let elems: Vec<RingElement> = r.elements().collect();
                for g1 in &elems {
                    for g2 in &elems {
                        let lattice = twogen_is_ideal(&r, g1, g2).unwrap();
                        let finite =
                            twogen_is_ideal_finite(&r, g1, g2, DEFAULT_MATERIALIZE_CAP).unwrap();
                        assert_eq!(lattice, finite, "{r} {g1} {g2}");
                    }
                }
            }
        }
    }

    #[test]
    fn finite_kernel_product_is_not_nm_when_moduli_differ() {
        // Whole ring Z4 x Z2 is an ideal, yet the kernels fill 16 = lcm^2
        // points of Z4 x Z4, not nm = 8.
        let r = ProductRing::pair(4, 2).unwrap();
        let (g1, g2) = (el(&r, &[1, 0]), el(&r, &[0, 1]));
        assert!(twogen_is_ideal(&r, &g1, &g2).unwrap());
        assert_eq!(kernel_product_size_finite(&r, &g1, &g2, 1000).unwrap(), 16);
        // The non-ideal <(2,0),(3,1)> reaches exactly nm = 8.
        let (g1, g2) = (el(&r, &[2, 0]), el(&r, &[3, 1]));
        assert!(!twogen_is_ideal(&r, &g1, &g2).unwrap());
        assert_eq!(kernel_product_size_finite(&r, &g1, &g2, 1000).unwrap(), 8);
    }
}
