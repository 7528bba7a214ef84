use genproj_core::matrix::IntMatrix;
use genproj_core::projspace::{eq, ExponentVector, ProjPoint};
use genproj_core::ring::{gcd_all, inverse_mod, is_unit_mod, Ideal};
use genproj_core::sl_lift::{normalize_rows, sl2_lift, sl_lift_general_detailed, sl_lift_sigma, sl_mod_lift, RowTargetSystem};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

fn big_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::new(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()).unwrap()
}

/// Replace any generator sharing a factor with an earlier one by 1.
fn make_coprime(gens: Vec<u64>) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(gens.len());
    for g in gens {
        out.push(if out.iter().all(|h| h.gcd(&g) == 1) { g } else { 1 });
    }
    out
}

/// Integer rows with gcd 1, pairwise coprime generators and an exponent matrix.
fn instance() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<u64>, Vec<Vec<u32>>)> {
    (2usize..=4).prop_flat_map(|size| {
        (
            proptest::collection::vec(proptest::collection::vec(-60i64..60, size), size)
                .prop_filter("rows must be unital", |rows| rows.iter().all(|r| r.iter().fold(0i64, |g, v| g.gcd(v)) == 1)),
            proptest::collection::vec(1u64..=50, size).prop_map(make_coprime),
            proptest::collection::vec(proptest::collection::vec(1u32..=6, size), size),
        )
    })
}

fn system(rows: &[Vec<i64>], gens: &[u64], m: &[Vec<u32>]) -> RowTargetSystem {
    let targets = rows
        .iter()
        .zip(gens)
        .zip(m)
        .map(|((r, &g), e)| {
            let exps = ExponentVector::new(e.clone()).unwrap();
            if g == 1 {
                return ProjPoint::singleton(exps);
            }
            let v: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
            ProjPoint::from_residues(&v, Ideal::new(g).unwrap(), exps).unwrap()
        })
        .collect();
    RowTargetSystem::new(targets).unwrap()
}

/// A random element of `SL_3(Z/n)`: random entries with the first row rescaled.
fn sl3_mod() -> impl Strategy<Value = (u64, Vec<Vec<i64>>)> {
    (2u64..=30).prop_flat_map(|n| (Just(n), proptest::collection::vec(proptest::collection::vec(0..n as i64, 3), 3))).prop_filter_map(
        "determinant must be a unit",
        |(n, mut rows)| {
            let det = big_matrix(&rows).det();
            let inv = inverse_mod(&det, &BigInt::from(n)).ok()?;
            let inv: i64 = inv.value().try_into().ok()?;
            for v in rows[0].iter_mut() {
                *v = (*v * inv).rem_euclid(n as i64);
            }
            Some((n, rows))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn sl3_residue_matrices_lift((n, rows) in sl3_mod()) {
        let m = big_matrix(&rows);
        let x = sl_mod_lift(&m, &BigInt::from(n)).unwrap();
        prop_assert!(x.is_special_linear());
        prop_assert!(x.congruent_mod(&m, &BigInt::from(n)));
    }

    #[test]
    fn general_lift_is_congruent_to_the_representatives((rows, gens, m) in instance()) {
        let sys = system(&rows, &gens, &m);
        let lift = sl_lift_general_detailed(&sys).unwrap();
        sys.verify(&lift.matrix).unwrap();
        for (i, g) in gens.iter().enumerate() {
            let n = BigInt::from(*g);
            for (x, r) in lift.matrix.row(i).iter().zip(lift.representatives.row(i)) {
                prop_assert!((x - r).mod_floor(&n).is_zero());
            }
        }
    }

    #[test]
    fn shortcut_and_general_lifts_agree(
        (rows, gens, mut m) in instance(),
        shuffle in proptest::collection::vec(any::<u32>(), 4),
    ) {
        let size = rows.len();
        let mut sigma: Vec<usize> = (0..size).collect();
        sigma.sort_by_key(|&i| shuffle[i]);
        for (i, &s) in sigma.iter().enumerate() {
            m[i][s] = 1;
        }
        let sys = system(&rows, &gens, &m);
        let x = sl_lift_sigma(&sys, &sigma).unwrap();
        let y = sl_lift_general_detailed(&sys).unwrap().matrix;
        sys.verify(&x).unwrap();
        for (i, t) in sys.targets().iter().enumerate() {
            let a = ProjPoint::from_residues(x.row(i), *t.ideal(), t.exponents().clone()).unwrap();
            let b = ProjPoint::from_residues(y.row(i), *t.ideal(), t.exponents().clone()).unwrap();
            prop_assert!(eq(&a, &b).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn normalize_rows_postconditions((rows, gens, m) in instance()) {
        let sys = system(&rows, &gens, &m);
        let a = big_matrix(&rows);
        let (b, trace) = normalize_rows(&a, &sys).unwrap();
        prop_assert_eq!(a.mul(trace.transform()).unwrap(), b.clone());
        prop_assert_eq!(trace.replay(), trace.transform().clone());
        prop_assert!(trace.transform().is_special_linear());
        for (i, &g) in gens.iter().enumerate() {
            prop_assert!(gcd_all(b.row(i)) == BigInt::from(1));
            if g == 1 {
                continue;
            }
            let ideal = Ideal::new(g).unwrap();
            prop_assert!(is_unit_mod(b.get(i, i), &ideal));
            for j in (0..rows.len()).filter(|&j| j != i) {
                prop_assert!(ideal.contains(b.get(i, j)));
            }
        }
    }

    #[test]
    fn unital_rows_are_preserved_by_sl_multiplication(
        rows in proptest::collection::vec(proptest::collection::vec(-30i64..30, 3), 3),
        ops in proptest::collection::vec((0usize..3, 0usize..3, -5i64..5), 0..12),
    ) {
        let a = big_matrix(&rows);
        let mut c = IntMatrix::identity(3);
        for (s, t, f) in ops {
            if s != t {
                c.add_column_multiple(s, t, &BigInt::from(f));
            }
        }
        prop_assert!(c.is_special_linear());
        let ac = a.mul(&c).unwrap();
        for i in 0..3 {
            prop_assert_eq!(gcd_all(a.row(i)) == BigInt::from(1), gcd_all(ac.row(i)) == BigInt::from(1));
        }
    }

    #[test]
    fn sl2_lift_handles_arbitrary_exponents(
        v in proptest::collection::vec(-200i64..200, 4),
        gens in proptest::collection::vec(1u64..=60, 2).prop_map(make_coprime),
        e in proptest::collection::vec(1u32..=6, 4),
    ) {
        let mk = |r: &[i64], g: u64, m: &[u32]| {
            let exps = ExponentVector::new(m.to_vec()).unwrap();
            if g == 1 {
                return Some(ProjPoint::singleton(exps));
            }
            let r: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
            ProjPoint::from_residues(&r, Ideal::new(g).unwrap(), exps).ok()
        };
        let (Some(p1), Some(p2)) = (mk(&v[..2], gens[0], &e[..2]), mk(&v[2..], gens[1], &e[2..])) else {
            return Ok(());
        };
        let x = sl2_lift(&p1, &p2).unwrap();
        RowTargetSystem::new(vec![p1, p2]).unwrap().verify(&x).unwrap();
    }
}
