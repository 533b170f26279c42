//! Acceptance suite. Every comparison is exact; each criterion prints one
//! PASS/FAIL line and the process exits nonzero if any fails.

use std::collections::{BTreeMap, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use idealgate::census::{
    census_pp, enumerate_subgroups_bruteforce, is_ideal_bruteforce, SubgroupSet, DEFAULT_CENSUS_CAP,
};
use idealgate::finite::{
    closure_of, cyclic_is_ideal, general_is_ideal, subgroup_order, subgroup_order_two_gen,
    twogen_is_ideal,
};
use idealgate::goursat::{
    count_ideals_pp, count_subgroups_closed, count_subgroups_sum, enumerate_goursat_tuples,
    subgroup_to_tuple, tuple_to_subgroup,
};
use idealgate::probability::{prob_nm, prob_pp, prob_vector_space};
use idealgate::ring::DEFAULT_MATERIALIZE_CAP;
use idealgate::zd::{is_ideal_2x2, is_ideal_by_idempotents, is_ideal_zd, witness_2x2};
use idealgate::{BigInt, BigRational, FiniteSubgroup, IntMatrix, ProductRing, RingElement};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const CAP: u64 = DEFAULT_MATERIALIZE_CAP;

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(int(num), int(den))
}

/// Prime-power exponent pairs `r <= s` with `p^(r+s) <= bound`.
fn pp_range(p: u64, bound: u64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for s in 0u32.. {
        if p.pow(s) > bound {
            break;
        }
        for r in 0..=s {
            if p.pow(r + s) <= bound {
                out.push((r, s));
            }
        }
    }
    out
}

/// Census of every `Z_{p^r} x Z_{p^s}` with `p in {2,3}` and `p^(r+s) <= 10^4`,
/// built once and shared by the criteria that need it.
type Census = BTreeMap<(u64, u32, u32), (SubgroupSet, usize)>;

fn pp_census() -> &'static Census {
    static CENSUS: OnceLock<Census> = OnceLock::new();
    CENSUS.get_or_init(|| {
        let mut out = BTreeMap::new();
        for p in [2u64, 3] {
            for (r, s) in pp_range(p, 10_000) {
                let set = census_pp(p, r, s, DEFAULT_CENSUS_CAP).unwrap();
                let ideals = set.ideal_count();
                out.insert((p, r, s), (set, ideals));
            }
        }
        out
    })
}

fn within(start: Instant, budget: Duration, what: &str) {
    let spent = start.elapsed();
    assert!(spent < budget, "{what} took {spent:?}, budget {budget:?}");
}

fn worked_example() -> String {
    let not_ideal = IntMatrix::from_i64_rows(&[&[2, 3], &[0, 1]]);
    let ideal = IntMatrix::from_i64_rows(&[&[2, 2], &[0, 1]]);

    let d = is_ideal_zd(&not_ideal).unwrap();
    assert!(!d.is_ideal());
    assert!(!is_ideal_by_idempotents(&not_ideal));

    let d = is_ideal_zd(&ideal).unwrap();
    assert!(d.is_ideal());
    let w = d.witness().unwrap();
    assert!(w.verify(d.basis().basis()));
    let abs: Vec<BigInt> = w
        .diagonal
        .iter()
        .map(|x| x.magnitude().clone().into())
        .collect();
    assert_eq!(abs, vec![int(2), int(1)]);

    let raw = witness_2x2(&int(2), &int(0), &int(2), &int(1)).unwrap();
    assert!(raw.verify(&ideal));
    assert_eq!(raw.diagonal, vec![int(-2), int(-1)]);

    // Warm, then take the best of a few runs of the full decision.
    let mut best = Duration::MAX;
    for _ in 0..20 {
        let t = Instant::now();
        let a = is_ideal_zd(&not_ideal).unwrap().is_ideal();
        let b = is_ideal_zd(&ideal).unwrap().is_ideal();
        best = best.min(t.elapsed());
        assert!(!a && b);
    }
    assert!(best < Duration::from_millis(1), "decision took {best:?}");
    format!("witness diagonal (-2,-1), decision in {best:?}")
}

fn exhaustive_2x2() -> String {
    let start = Instant::now();
    let (mut checked, mut ideals) = (0u64, 0u64);
    for a in -8i64..=8 {
        for b in -8i64..=8 {
            for c in -8i64..=8 {
                for d in -8i64..=8 {
                    if a * d == b * c {
                        continue;
                    }
                    let m = IntMatrix::from_i64_rows(&[&[a, c], &[b, d]]);
                    let fast = is_ideal_2x2(&int(a), &int(b), &int(c), &int(d)).unwrap();
                    assert_eq!(fast, is_ideal_by_idempotents(&m), "({a},{b}),({c},{d})");
                    if fast {
                        let w = witness_2x2(&int(a), &int(b), &int(c), &int(d)).unwrap();
                        assert!(w.verify(&m), "witness for ({a},{b}),({c},{d})");
                        ideals += 1;
                    }
                    checked += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(30), "2x2 sweep");
    format!("{checked} nonsingular matrices, {ideals} ideals")
}

fn random_unimodular(rng: &mut StdRng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..(3 * n) {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let k = int(rng.gen_range(-3i64..=3));
        for row in 0..n {
            let add = &m[(row, j)] * &k;
            m[(row, i)] += add;
        }
        if rng.gen_bool(0.2) {
            for row in 0..n {
                m[(row, i)] = -&m[(row, i)];
            }
        }
    }
    m
}

fn unimodular_is_everything() -> String {
    let mut rng = StdRng::seed_from_u64(0x1dea1);
    for trial in 0..1000 {
        let n = 2 + trial % 4;
        let u = random_unimodular(&mut rng, n);
        assert_eq!(u.det().unwrap().magnitude().clone(), 1u32.into());
        let d = is_ideal_zd(&u).unwrap();
        assert!(d.is_ideal(), "trial {trial}: {u}");
        assert!(d.basis().is_everything());
        assert!(d.witness().unwrap().verify(d.basis().basis()));
    }
    "1000 matrices of size 2..5".into()
}

fn cyclic_vs_bruteforce() -> String {
    let start = Instant::now();
    let mut checked = 0u64;
    for n in 1..=12u64 {
        for m in 1..=12u64 {
            let ring = ProductRing::pair(n, m).unwrap();
            for g in ring.elements() {
                let h = FiniteSubgroup::new(ring.clone(), vec![g.clone()]).unwrap();
                h.materialize(CAP).unwrap();
                assert_eq!(
                    cyclic_is_ideal(&g, &ring).unwrap(),
                    is_ideal_bruteforce(&h).unwrap(),
                    "{ring} {g}"
                );
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(60), "cyclic sweep");
    format!("{checked} generators")
}

fn twogen_vs_bruteforce() -> String {
    let start = Instant::now();
    let mut checked = 0u64;
    for n in 1..=10u64 {
        for m in 1..=10u64 {
            let ring = ProductRing::pair(n, m).unwrap();
            let elems: Vec<RingElement> = ring.elements().collect();
            for g1 in &elems {
                for g2 in &elems {
                    let h =
                        FiniteSubgroup::new(ring.clone(), vec![g1.clone(), g2.clone()]).unwrap();
                    h.materialize(CAP).unwrap();
                    assert_eq!(
                        twogen_is_ideal(&ring, g1, g2).unwrap(),
                        is_ideal_bruteforce(&h).unwrap(),
                        "{ring} {g1} {g2}"
                    );
                    assert_eq!(
                        subgroup_order_two_gen(&ring, g1, g2).unwrap(),
                        BigInt::from(h.order().unwrap()),
                        "{ring} {g1} {g2}"
                    );
                    checked += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(300), "two-generator sweep");
    format!("{checked} generator pairs")
}

fn subgroup_counts() -> String {
    let census = pp_census();
    for (&(p, r, s), (set, _)) in census {
        let closed = count_subgroups_closed(p, r, s).unwrap();
        assert_eq!(
            closed,
            count_subgroups_sum(p, r, s).unwrap(),
            "p={p} r={r} s={s}"
        );
        assert_eq!(closed, BigInt::from(set.len()), "p={p} r={r} s={s}");
    }
    let rings = census.len();
    assert_eq!(count_subgroups_closed(2, 1, 1).unwrap(), int(5));
    assert_eq!(count_subgroups_closed(3, 1, 1).unwrap(), int(6));
    assert_eq!(count_subgroups_closed(2, 1, 2).unwrap(), int(8));
    assert_eq!(count_subgroups_closed(2, 2, 2).unwrap(), int(15));
    format!("{rings} rings, closed form = sum = census")
}

fn ideal_counts() -> String {
    let census = pp_census();
    for (&(p, r, s), &(_, ideals)) in census {
        let expected = BigInt::from((r + 1) * (s + 1));
        assert_eq!(count_ideals_pp(r, s), expected);
        assert_eq!(BigInt::from(ideals), expected, "p={p} r={r} s={s}");
    }
    let rings = census.len();
    format!("{rings} rings have (r+1)(s+1) ideals")
}

fn four_over_p_plus_three() -> String {
    for p in [2u64, 3, 5, 7, 11] {
        let report = prob_pp(p, 1, 1).unwrap();
        assert_eq!(report.probability, ratio(4, p as i64 + 3), "p={p}");
        if p <= 5 {
            let census = census_pp(p, 1, 1, DEFAULT_CENSUS_CAP).unwrap();
            assert_eq!(
                ratio(census.ideal_count() as i64, census.len() as i64),
                report.probability,
                "census p={p}"
            );
        }
    }
    "p in {2,3,5,7,11}; census for p <= 5".into()
}

fn z6_splitting() -> String {
    let report = prob_nm(6, 6).unwrap();
    assert_eq!(report.probability, ratio(8, 15));
    let census =
        enumerate_subgroups_bruteforce(&ProductRing::pair(6, 6).unwrap(), DEFAULT_CENSUS_CAP)
            .unwrap();
    assert_eq!(
        ratio(census.ideal_count() as i64, census.len() as i64),
        ratio(8, 15)
    );
    assert_eq!(report.subgroup_count, BigInt::from(census.len()));

    let two = prob_nm(2, 2).unwrap();
    let three = prob_nm(3, 3).unwrap();
    assert_eq!(&two.probability * &three.probability, report.probability);
    assert_eq!(
        &two.subgroup_count * &three.subgroup_count,
        report.subgroup_count
    );
    assert_eq!(&two.ideal_count * &three.ideal_count, report.ideal_count);
    format!(
        "{} ideals of {} subgroups = 4/5 * 2/3",
        report.ideal_count, report.subgroup_count
    )
}

fn vector_spaces() -> String {
    let v = prob_vector_space(2, 3).unwrap();
    assert_eq!(v.probability, ratio(1, 2));
    let census = enumerate_subgroups_bruteforce(
        &ProductRing::new(vec![2, 2, 2]).unwrap(),
        DEFAULT_CENSUS_CAP,
    )
    .unwrap();
    assert_eq!((census.len(), census.ideal_count()), (16, 8));
    assert_eq!(v.subgroup_count, int(16));
    assert_eq!(v.ideal_count, int(8));
    for p in [2u64, 3, 5] {
        assert_eq!(
            prob_vector_space(p, 2).unwrap().probability,
            prob_pp(p, 1, 1).unwrap().probability
        );
    }
    "Z_2^3: 8 of 16; rank 2 matches Z_p x Z_p".into()
}

fn goursat_bijection() -> String {
    let mut total = 0;
    for (&(p, r, s), (set, _)) in pp_census() {
        let tuples = enumerate_goursat_tuples(p, r, s).unwrap();
        let mut sets = HashSet::new();
        for t in &tuples {
            let h = tuple_to_subgroup(t).unwrap();
            assert_eq!(subgroup_to_tuple(&h, p).unwrap(), *t);
            sets.insert(h.element_codes().unwrap().to_vec());
        }
        assert_eq!(
            sets.len(),
            tuples.len(),
            "tuples collide for p={p} r={r} s={s}"
        );
        assert_eq!(sets, set.element_sets(), "p={p} r={r} s={s}");
        total += tuples.len();
    }
    format!("{total} tuples, injective and onto")
}

fn three_generators() -> String {
    let cases: [(&[&[i64]], bool); 7] = [
        (&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]], true),
        (&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]], true),
        (&[&[2, 1, 0], &[0, 2, 1], &[0, 0, 2]], false),
        (&[&[4, 2, 0], &[0, 6, 0], &[0, 0, 0]], false),
        (&[&[2, 2, 0], &[0, 3, 0], &[0, 0, 0]], true),
        (&[&[2, 0, 0], &[0, 2, 0], &[1, 1, 2]], false),
        (&[&[2, 0, 0], &[0, 2, 0], &[2, 2, 2]], true),
    ];
    for (rows, expected) in cases {
        let m = IntMatrix::from_i64_rows(rows);
        let d = is_ideal_zd(&m).unwrap();
        assert_eq!(d.is_ideal(), expected, "{m}");
        assert_eq!(is_ideal_by_idempotents(&m), expected, "{m}");
        if let Some(w) = d.witness() {
            assert!(w.verify(d.basis().basis()), "{m}");
        }
    }

    let mut rng = StdRng::seed_from_u64(3);
    let mut ideals = 0;
    for _ in 0..300 {
        let data: Vec<i64> = (0..9).map(|_| rng.gen_range(-4..=4)).collect();
        let m = IntMatrix::from_i64_rows(&[&data[0..3], &data[3..6], &data[6..9]]);
        let d = is_ideal_zd(&m).unwrap();
        assert_eq!(d.is_ideal(), is_ideal_by_idempotents(&m), "{m}");
        if let Some(w) = d.witness() {
            assert!(w.verify(d.basis().basis()), "{m}");
            ideals += 1;
        }
    }

    for moduli in [[2u64, 4, 2], [3, 3, 3], [2, 3, 4]] {
        let ring = ProductRing::new(moduli.to_vec()).unwrap();
        let mut rng = StdRng::seed_from_u64(moduli.iter().product());
        for _ in 0..200 {
            let gens: Vec<RingElement> = (0..3)
                .map(|_| {
                    let v: Vec<i64> = moduli.iter().map(|&n| rng.gen_range(0..n as i64)).collect();
                    ring.element(&v).unwrap()
                })
                .collect();
            let h = FiniteSubgroup::new(ring.clone(), gens.clone()).unwrap();
            let order = subgroup_order(&h, CAP).unwrap();
            let verdict = general_is_ideal(&h, CAP).unwrap();
            let closure = closure_of(&ring, &gens, CAP).unwrap();
            assert_eq!(order, BigInt::from(closure.len()));
            h.materialize(CAP).unwrap();
            assert_eq!(verdict, is_ideal_bruteforce(&h).unwrap(), "{ring} {gens:?}");
        }
    }
    format!("7 fixed + 300 random in Z^3 ({ideals} ideals), 600 in finite triples")
}

type Criterion = (&'static str, fn() -> String);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("01 worked example in Z^2", worked_example),
        ("02 exhaustive 2x2 over [-8,8]", exhaustive_2x2),
        ("03 unimodular bases are ideals", unimodular_is_everything),
        ("04 cyclic test vs brute force", cyclic_vs_bruteforce),
        ("05 two-generator test and order", twogen_vs_bruteforce),
        ("06 subgroup counts", subgroup_counts),
        ("07 ideal counts", ideal_counts),
        ("08 P(Z_p x Z_p) = 4/(p+3)", four_over_p_plus_three),
        ("09 Z_6 x Z_6 splits over primes", z6_splitting),
        ("10 vector spaces", vector_spaces),
        ("11 Goursat bijection", goursat_bijection),
        ("12 three generators", three_generators),
    ];

    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name:<36} {secs:>8.3}s  {detail}"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL  {name:<36} {secs:>8.3}s  {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
