//! Finite product rings `Z_{n_1} x ... x Z_{n_k}` and their additive
//! subgroups.
//!
//! Elements are packed into a single `u64` code in mixed radix with the
//! first coordinate most significant, so sorted codes list elements in
//! lexicographic order.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest ring order the closure routines will materialize by default.
pub const DEFAULT_MATERIALIZE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductRing {
    moduli: Vec<u64>,
}

impl ProductRing {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = moduli.iter().find(|&&n| n == 0) {
            return Err(Error::NonPositive(bad.to_string()));
        }
        Ok(ProductRing { moduli })
    }

    pub fn pair(n: u64, m: u64) -> Result<Self> {
        Self::new(vec![n, m])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn arity(&self) -> usize {
        self.moduli.len()
    }

    /// Ring order, `None` when it does not fit in a `u64`.
    pub fn order(&self) -> Option<u64> {
        self.moduli
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
    }

    pub fn order_big(&self) -> BigInt {
        self.moduli.iter().map(|&n| BigInt::from(n)).product()
    }

    pub(crate) fn check_cap(&self, cap: u64) -> Result<u64> {
        match self.order() {
            Some(order) if order <= cap => Ok(order),
            _ => Err(Error::CapExceeded {
                order: self.order_big().to_string(),
                cap,
            }),
        }
    }

    pub fn element(&self, values: &[i64]) -> Result<RingElement> {
        RingElement::new(self, values)
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            residues: vec![0; self.arity()],
        }
    }

    /// Coordinate idempotent `e_i`.
    pub fn idempotent(&self, i: usize) -> RingElement {
        let mut residues = vec![0; self.arity()];
        residues[i] = 1 % self.moduli[i];
        RingElement { residues }
    }

    pub fn encode(&self, e: &RingElement) -> u64 {
        e.residues
            .iter()
            .zip(&self.moduli)
            .fold(0u64, |acc, (&r, &n)| acc * n + r)
    }

    pub fn decode(&self, mut code: u64) -> RingElement {
        let mut residues = vec![0; self.arity()];
        for (slot, &n) in residues.iter_mut().zip(&self.moduli).rev() {
            *slot = code % n;
            code /= n;
        }
        RingElement { residues }
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let residues = x
            .residues
            .iter()
            .zip(&y.residues)
            .zip(&self.moduli)
            .map(|((&a, &b), &n)| ((a as u128 + b as u128) % n as u128) as u64)
            .collect();
        RingElement { residues }
    }

    /// Sum of two encoded elements.
    pub fn add_codes(&self, mut x: u64, mut y: u64) -> u64 {
        let mut out = 0u64;
        let mut place = 1u64;
        for &n in self.moduli.iter().rev() {
            let s = (x % n + y % n) % n;
            out += s * place;
            place = place.wrapping_mul(n);
            x /= n;
            y /= n;
        }
        out
    }

    /// Coordinatewise product.
    pub fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let residues = x
            .residues
            .iter()
            .zip(&y.residues)
            .zip(&self.moduli)
            .map(|((&a, &b), &n)| ((a as u128 * b as u128) % n as u128) as u64)
            .collect();
        RingElement { residues }
    }

    pub fn scale(&self, k: u64, x: &RingElement) -> RingElement {
        let residues = x
            .residues
            .iter()
            .zip(&self.moduli)
            .map(|(&a, &n)| ((k as u128 * a as u128) % n as u128) as u64)
            .collect();
        RingElement { residues }
    }

    /// Every element of the ring, in code order.
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        let order = self.order().expect("ring order fits in u64");
        (0..order).map(move |c| self.decode(c))
    }
}

impl fmt::Display for ProductRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|n| format!("Z_{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    residues: Vec<u64>,
}

impl RingElement {
    /// Reduces `values` into `[0, n_i)` coordinatewise.
    pub fn new(ring: &ProductRing, values: &[i64]) -> Result<Self> {
        if values.len() != ring.arity() {
            return Err(Error::DimensionMismatch {
                expected: ring.arity(),
                found: values.len(),
            });
        }
        let residues = values
            .iter()
            .zip(ring.moduli())
            .map(|(&v, &n)| i128::from(v).mod_floor(&i128::from(n)) as u64)
            .collect();
        Ok(RingElement { residues })
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Additive subgroup of a [`ProductRing`] given by generators. The element
/// set is computed at most once.
#[derive(Debug, Clone)]
pub struct FiniteSubgroup {
    ring: ProductRing,
    generators: Vec<RingElement>,
    elements: OnceLock<Vec<u64>>,
}

impl FiniteSubgroup {
    pub fn new(ring: ProductRing, generators: Vec<RingElement>) -> Result<Self> {
        for g in &generators {
            if g.residues.len() != ring.arity() {
                return Err(Error::DimensionMismatch {
                    expected: ring.arity(),
                    found: g.residues.len(),
                });
            }
            if g.residues.iter().zip(ring.moduli()).any(|(&r, &n)| r >= n) {
                return Err(Error::Inconsistent(format!("{g} is not reduced in {ring}")));
            }
        }
        Ok(FiniteSubgroup {
            ring,
            generators,
            elements: OnceLock::new(),
        })
    }

    /// Builds from integer generator vectors, reducing them into the ring.
    pub fn from_i64(ring: ProductRing, generators: &[Vec<i64>]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|g| RingElement::new(&ring, g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    /// Wraps an already-known element set (sorted codes).
    pub(crate) fn with_elements(
        ring: ProductRing,
        generators: Vec<RingElement>,
        sorted_codes: Vec<u64>,
    ) -> Self {
        debug_assert!(sorted_codes.windows(2).all(|w| w[0] < w[1]));
        let elements = OnceLock::new();
        let _ = elements.set(sorted_codes);
        FiniteSubgroup {
            ring,
            generators,
            elements,
        }
    }

    pub fn ring(&self) -> &ProductRing {
        &self.ring
    }

    pub fn generators(&self) -> &[RingElement] {
        &self.generators
    }

    pub fn is_materialized(&self) -> bool {
        self.elements.get().is_some()
    }

    /// Sorted element codes, computing the closure of the generators if
    /// needed. Refuses rings larger than `cap`.
    pub fn materialize(&self, cap: u64) -> Result<&[u64]> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        self.ring.check_cap(cap)?;
        let codes = closure_codes(
            &self.ring,
            self.generators.iter().map(|g| self.ring.encode(g)),
        );
        Ok(self.elements.get_or_init(|| codes))
    }

    /// Sorted element codes if already materialized.
    pub fn element_codes(&self) -> Result<&[u64]> {
        self.elements
            .get()
            .map(Vec::as_slice)
            .ok_or(Error::NotMaterialized)
    }

    pub fn elements(&self) -> Result<Vec<RingElement>> {
        Ok(self
            .element_codes()?
            .iter()
            .map(|&c| self.ring.decode(c))
            .collect())
    }

    pub fn contains(&self, e: &RingElement) -> Result<bool> {
        let code = self.ring.encode(e);
        Ok(self.element_codes()?.binary_search(&code).is_ok())
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.element_codes()?.len())
    }
}

impl PartialEq for FiniteSubgroup {
    /// Subgroups are equal when they live in the same ring and have the same
    /// element set; both must be materialized.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.elements.get() == other.elements.get()
    }
}

/// Breadth-first closure of `generators` under addition, as sorted codes.
pub(crate) fn closure_codes(ring: &ProductRing, generators: impl Iterator<Item = u64>) -> Vec<u64> {
    let gens: Vec<u64> = generators.filter(|&g| g != 0).collect();
    let mut seen: HashSet<u64> = HashSet::from([0]);
    let mut queue = vec![0u64];
    while let Some(x) = queue.pop() {
        for &g in &gens {
            let y = ring.add_codes(x, g);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    out
}
