use std::collections::HashSet;

use genproj_core::crt_proj::{crt_lift, crt_reduce, CoMaximalSystem};
use genproj_core::projspace::{canonicalize, enumerate, eq, ExponentVector, ProjPoint};
use genproj_core::ring::Ideal;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

/// Pairwise coprime generators, one to three of them, with product at most 10^4.
fn system() -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(1u64..=60, 1..=3).prop_filter("pairwise coprime, product <= 10^4", |g| {
        g.iter().product::<u64>() <= 10_000 && g.iter().enumerate().all(|(i, a)| g[i + 1..].iter().all(|b| a.gcd(b) == 1))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn lift_then_reduce_returns_the_targets(
        gens in system(),
        m in proptest::collection::vec(1u32..=4, 1..=4),
        raw in proptest::collection::vec(proptest::collection::vec(0u64..10_000, 4), 3),
    ) {
        let width = m.len();
        let exps = ExponentVector::new(m).unwrap();
        let mut targets = Vec::new();
        for (g, r) in gens.iter().zip(&raw) {
            let ideal = Ideal::new(*g).unwrap();
            if ideal.is_unit() {
                targets.push(ProjPoint::singleton(exps.clone()));
                continue;
            }
            let v: Vec<BigInt> = r[..width].iter().map(|&x| BigInt::from(x % g)).collect();
            match ProjPoint::from_residues(&v, ideal, exps.clone()) {
                Ok(p) => targets.push(p),
                Err(_) => return Ok(()),
            }
        }
        let sys = CoMaximalSystem::new(gens.iter().map(|&g| Ideal::new(g).unwrap()).collect()).unwrap();
        let lift = crt_lift(&targets, &sys, &exps).unwrap();
        prop_assert!(lift.point.is_canonical());
        for (back, t) in crt_reduce(&lift.point, &sys).unwrap().iter().zip(&targets) {
            prop_assert!(eq(back, t).unwrap(), "{} vs {}", back, t);
        }
        for (t, ideal) in targets.iter().zip(sys.ideals()) {
            if ideal.is_proper() {
                let n = ideal.generator_big();
                let exact = lift.representative.iter().zip(t.rep()).all(|(x, &r)| (x - r).mod_floor(&n) == BigInt::from(0));
                prop_assert!(exact);
            }
        }
        if width >= 2 {
            prop_assert_eq!(genproj_core::ring::gcd_all(&lift.representative), BigInt::from(1));
        }
    }
}

#[test]
fn distinct_classes_reduce_to_distinct_tuples() {
    for n in 2..=200u64 {
        let f: Vec<u64> = genproj_core::ring::factor(&BigInt::from(n)).unwrap().factors().iter().map(|&(p, e)| p.pow(e)).collect();
        if f.len() < 2 {
            continue;
        }
        let sys = CoMaximalSystem::new(f.iter().map(|&g| Ideal::new(g).unwrap()).collect()).unwrap();
        for m in [[1u32, 1], [1, 2], [3, 2]] {
            let exps = ExponentVector::new(m.to_vec()).unwrap();
            let classes = enumerate(Ideal::new(n).unwrap(), 1, &exps).unwrap();
            let mut seen = HashSet::new();
            for p in &classes {
                let image: Vec<Vec<u64>> = crt_reduce(p, &sys).unwrap().iter().map(|q| canonicalize(q).rep().to_vec()).collect();
                assert!(seen.insert(image), "n = {n}, m = {m:?}: {p} collides");
            }
            let product: usize = sys.ideals().iter().map(|&i| enumerate(i, 1, &exps).unwrap().len()).product();
            assert_eq!(classes.len(), product, "n = {n}, m = {m:?}");
        }
    }
}
