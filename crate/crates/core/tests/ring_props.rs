use genproj_core::ring::{bezout, crt_solve, egcd, factor, gcd_all, is_unit_mod, Ideal};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Smallest prime factor of every n below `limit`.
fn sieve(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit];
    for i in 2..limit {
        if spf[i] == 0 {
            for j in (i..limit).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }
    spf
}

#[test]
fn factor_reconstructs_everything_up_to_a_million() {
    const LIMIT: usize = 1_000_001;
    let spf = sieve(LIMIT);
    for n in 2..LIMIT {
        let f = factor(&BigInt::from(n)).unwrap();
        assert_eq!(f.product(), BigInt::from(n));
        let (p, _) = f.factors()[0];
        assert_eq!(p, spf[n] as u64, "n = {n}");
        assert!(f.factors().iter().all(|&(p, _)| spf[p as usize] as u64 == p), "n = {n}");
        assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
    }
}

#[test]
fn crt_matches_scan_for_small_products() {
    let moduli = [2u64, 3, 5, 7, 9, 11, 16, 25];
    for (i, &a) in moduli.iter().enumerate() {
        for &b in &moduli[i + 1..] {
            if a.gcd(&b) != 1 {
                continue;
            }
            for c in [1u64, 13, 17] {
                if a * b * c > 10_000 || c.gcd(&(a * b)) != 1 {
                    continue;
                }
                for (ra, rb, rc) in [(0, 0, 0), (1, a / 2 % b, 0), (a - 1, b - 1, c - 1)] {
                    let congruences = [(ra, a), (rb, b), (rc, c)].map(|(r, n)| (BigInt::from(r), BigInt::from(n)));
                    let got = crt_solve(&congruences).unwrap();
                    let scan = (0..a * b * c).find(|x| x % a == ra % a && x % b == rb % b && x % c == rc % c).unwrap();
                    assert_eq!(got.value(), &BigInt::from(scan));
                }
            }
        }
    }
}

#[test]
fn is_unit_mod_matches_scan() {
    for n in 1..=200u64 {
        let ideal = Ideal::new(n).unwrap();
        for a in -30i64..=250 {
            let scan = (0..n).any(|z| (a * z as i64 - 1).rem_euclid(n as i64) == 0);
            assert_eq!(is_unit_mod(&BigInt::from(a), &ideal), scan, "a = {a}, n = {n}");
        }
    }
}

proptest! {
    #[test]
    fn egcd_is_exact(a in any::<i64>(), b in any::<i64>()) {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let (g, x, y) = egcd(&a, &b);
        prop_assert_eq!(&a * x + &b * y, g.clone());
        if !g.is_zero() {
            prop_assert!(a.is_multiple_of(&g) && b.is_multiple_of(&g));
        }
    }

    #[test]
    fn bezout_combines_to_the_gcd(v in proptest::collection::vec(-10_000i64..10_000, 1..6)) {
        let v: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
        let (g, c) = bezout(&v);
        prop_assert_eq!(g.clone(), gcd_all(&v));
        let sum: BigInt = c.iter().zip(&v).map(|(c, v)| c * v).sum();
        prop_assert_eq!(sum, g);
    }

    #[test]
    fn ideal_products_are_comaximal_sums(a in 1u64..5000, b in 1u64..5000) {
        let (i, j) = (Ideal::new(a).unwrap(), Ideal::new(b).unwrap());
        prop_assert_eq!(i.is_comaximal_with(&j), a.gcd(&b) == 1);
        prop_assert!(i.product(&j).unwrap().contains(&BigInt::from(a * b)));
        prop_assert_eq!(i.contains(&BigInt::one()), a == 1);
    }
}
