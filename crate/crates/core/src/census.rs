//! Brute-force subgroup census of small product rings, and the
//! multiplication-closure ideal oracle used to check every criterion.
//!
//! A subgroup of `Z_{n_1} x ... x Z_{n_k}` needs at most `k` generators, and
//! `<x_1, ..., x_j> = <x_1> + ... + <x_j>`. The census therefore closes
//! every single element, deduplicates the cyclic subgroups, and then adds
//! one cyclic subgroup at a time, `k - 1` times. Each candidate sum is
//! built independently (in parallel); deduplication is a single-threaded
//! merge.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::ring::{FiniteSubgroup, ProductRing, RingElement};

/// Default census cap on the ring order. For pairs this is the scale at
/// which naively closing every generator pair would need `10^8` closures.
pub const DEFAULT_CENSUS_CAP: u64 = 10_000;

/// Every subgroup of a ring, deduplicated by element set and sorted by
/// (order, elements).
#[derive(Debug, Clone)]
pub struct SubgroupSet {
    ring: ProductRing,
    members: Vec<FiniteSubgroup>,
}

impl SubgroupSet {
    pub fn ring(&self) -> &ProductRing {
        &self.ring
    }

    pub fn members(&self) -> &[FiniteSubgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Element sets of every member, for set-of-sets comparisons.
    pub fn element_sets(&self) -> HashSet<Vec<u64>> {
        self.members
            .iter()
            .map(|h| {
                h.element_codes()
                    .expect("census members are materialized")
                    .to_vec()
            })
            .collect()
    }

    /// Number of members that pass [`is_ideal_bruteforce`].
    pub fn ideal_count(&self) -> usize {
        self.members
            .par_iter()
            .filter(|h| is_ideal_bruteforce(h).expect("census members are materialized"))
            .count()
    }
}

struct Candidate {
    generators: Vec<u64>,
    codes: Vec<u64>,
}

/// Each cyclic subgroup once: after walking the multiples of `x`, every
/// other generator `k x` with `gcd(k, ord x) = 1` is marked as covered.
fn cyclic_subgroups(ring: &ProductRing, order: u64) -> Vec<Candidate> {
    let mut covered = vec![false; order as usize];
    let mut out = Vec::new();
    for x in 0..order {
        if covered[x as usize] {
            continue;
        }
        let mut multiples = vec![0u64];
        let mut y = x;
        while y != 0 {
            multiples.push(y);
            y = ring.add_codes(y, x);
        }
        let n = multiples.len() as u64;
        for (k, &y) in multiples.iter().enumerate() {
            if num_integer::gcd(k as u64, n) == 1 {
                covered[y as usize] = true;
            }
        }
        covered[x as usize] = true;
        multiples.sort_unstable();
        out.push(Candidate {
            generators: if x == 0 { vec![] } else { vec![x] },
            codes: multiples,
        });
    }
    out
}

/// `H + <c>` as the union of the cosets `H + j c`, `j < k`, where `k` is the
/// least positive integer with `k c` in `H`. `h` must be sorted.
fn add_cyclic(ring: &ProductRing, h: &[u64], c: u64) -> Vec<u64> {
    let mut out = h.to_vec();
    let mut shift = c;
    while h.binary_search(&shift).is_err() {
        out.extend(h.iter().map(|&x| ring.add_codes(x, shift)));
        shift = ring.add_codes(shift, c);
    }
    out.sort_unstable();
    out
}

/// Complete list of additive subgroups of `ring`.
pub fn enumerate_subgroups_bruteforce(ring: &ProductRing, cap: u64) -> Result<SubgroupSet> {
    let order = ring.check_cap(cap)?;
    let cyclic = cyclic_subgroups(ring, order);

    let mut all: Vec<Candidate> = Vec::new();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for c in &cyclic {
        seen.insert(c.codes.clone());
        all.push(Candidate {
            generators: c.generators.clone(),
            codes: c.codes.clone(),
        });
    }

    let mut frontier: Vec<usize> = (0..all.len()).collect();
    for round in 1..ring.arity().max(1) {
        let produced: Vec<Vec<Candidate>> = frontier
            .par_iter()
            .map(|&i| {
                let base = &all[i];
                // In the first round the base is itself cyclic, so
                // <a> + <b> only needs one of the two orders.
                let skip = if round == 1 { i + 1 } else { 0 };
                let mut local: HashSet<Vec<u64>> = HashSet::new();
                let mut found = Vec::new();
                for c in cyclic.iter().skip(skip) {
                    let Some(&g) = c.generators.first() else {
                        continue;
                    };
                    if base.codes.binary_search(&g).is_ok() {
                        continue;
                    }
                    // H inside <c> gives <c> back, which is already known.
                    if base
                        .generators
                        .iter()
                        .all(|x| c.codes.binary_search(x).is_ok())
                    {
                        continue;
                    }
                    let codes = add_cyclic(ring, &base.codes, g);
                    if seen.contains(&codes) || local.contains(&codes) {
                        continue;
                    }
                    local.insert(codes.clone());
                    let mut generators = base.generators.clone();
                    generators.push(g);
                    found.push(Candidate { generators, codes });
                }
                found
            })
            .collect();
        let mut next = Vec::new();
        for cand in produced.into_iter().flatten() {
            if !seen.contains(&cand.codes) {
                seen.insert(cand.codes.clone());
                next.push(all.len());
                all.push(cand);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    all.sort_by(|x, y| (x.codes.len(), &x.codes).cmp(&(y.codes.len(), &y.codes)));
    let members = all
        .into_iter()
        .map(|c| {
            let gens: Vec<RingElement> = c.generators.iter().map(|&g| ring.decode(g)).collect();
            FiniteSubgroup::with_elements(ring.clone(), gens, c.codes)
        })
        .collect();
    Ok(SubgroupSet {
        ring: ring.clone(),
        members,
    })
}

/// `H` is an ideal iff `e_i * g` lies in `H` for every generator `g` and
/// coordinate idempotent `e_i`. Multiplication by any `r = sum r_i e_i`
/// is then an integer combination of those products.
pub fn is_ideal_bruteforce(h: &FiniteSubgroup) -> Result<bool> {
    let ring = h.ring();
    h.element_codes()?;
    for g in h.generators() {
        for i in 0..ring.arity() {
            if !h.contains(&ring.mul(&ring.idempotent(i), g))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks `r * x` in `H` for every ring element `r` and every `x` in `H`.
pub fn is_ideal_exhaustive(h: &FiniteSubgroup) -> Result<bool> {
    let ring = h.ring();
    let elements = h.elements()?;
    for r in ring.elements() {
        for x in &elements {
            if !h.contains(&ring.mul(&r, x))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True when `H` equals the product of its coordinate projections.
pub fn is_product_of_projections(h: &FiniteSubgroup) -> Result<bool> {
    let ring = h.ring();
    let elements = h.elements()?;
    let mut projections: Vec<HashSet<u64>> = vec![HashSet::new(); ring.arity()];
    for e in &elements {
        for (i, &r) in e.residues().iter().enumerate() {
            projections[i].insert(r);
        }
    }
    let product: usize = projections.iter().map(HashSet::len).product();
    Ok(product == elements.len())
}

/// The census restricted to a ring given as `Z_{p^r} x Z_{p^s}`.
pub fn census_pp(p: u64, r: u32, s: u32, cap: u64) -> Result<SubgroupSet> {
    require_prime(p)?;
    let pow = |e: u32| {
        p.checked_pow(e).ok_or(Error::CapExceeded {
            order: format!("{p}^{e}"),
            cap,
        })
    };
    enumerate_subgroups_bruteforce(&ProductRing::pair(pow(r)?, pow(s)?)?, cap)
}
