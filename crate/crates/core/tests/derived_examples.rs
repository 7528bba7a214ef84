//! Documented example values, each recomputed here by a direct scan.

use genproj_core::crt_proj::{crt_bijectivity_check, crt_lift, crt_reduce, CoMaximalSystem};
use genproj_core::matrix::IntMatrix;
use genproj_core::oracle::{brute_orbits, brute_sl_group};
use genproj_core::projspace::{canonicalize, cross_relation_eq, enumerate, eq, eq_witness, ExponentVector, ProjPoint, DEFAULT_MAX_TUPLES};
use genproj_core::ring::{crt_solve, egcd, factor, inverse_mod, Ideal};
use genproj_core::sl_lift::{normalize_rows, sl2_lift, sl2_prescribed, sl_lift_general, sl_lift_sigma, sl_mod_lift, target, RowTargetSystem};
use genproj_core::toolbox::{avoid_maximals, bring_unit, cmh_solve, fund_lemma, ideal_avoid, unitalize, usc_shift};
use num_bigint::BigInt;
use num_integer::Integer;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn bigs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| big(x)).collect()
}

fn ideal(n: u64) -> Ideal {
    Ideal::new(n).unwrap()
}

fn exps(m: &[u32]) -> ExponentVector {
    ExponentVector::new(m.to_vec()).unwrap()
}

fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Smallest `t >= 0` with `pred(t)`.
fn first(pred: impl Fn(i64) -> bool) -> i64 {
    (0..).find(|&t| pred(t)).unwrap()
}

#[test]
fn ring_examples() {
    let (g, x, y) = egcd(&big(3), &big(5));
    assert_eq!((g.clone(), x.clone(), y.clone()), (big(1), big(2), big(-1)));
    assert_eq!(big(3) * x + big(5) * y, g);

    let trial_prime = (2..1801u64).take_while(|d| d * d <= 1801).all(|d| 1801 % d != 0);
    assert!(trial_prime);
    assert_eq!(factor(&big(1801)).unwrap().factors(), &[(1801, 1)]);

    let scan = (0..6).find(|x| x % 2 == 1 && x % 3 == 0).unwrap();
    assert_eq!(crt_solve(&[(big(1), big(2)), (big(0), big(3))]).unwrap().value(), &big(scan));

    let scan = (0..5).find(|z| 2 * z % 5 == 1).unwrap();
    assert_eq!(inverse_mod(&big(2), &big(5)).unwrap().value(), &big(scan));
}

#[test]
fn toolbox_examples() {
    assert_eq!(fund_lemma(&big(5), &big(3), &big(10)).unwrap(), big(first(|n| gcd(5 + 3 * n, 10) == 1)));

    let avoid = |f: i64, g: i64, ps: &[i64]| first(|a| ps.iter().all(|p| (f + a * g) % p != 0));
    assert_eq!(avoid_maximals(&big(6), &big(5), &[2, 3]).unwrap(), big(avoid(6, 5, &[2, 3])));
    assert_eq!(avoid_maximals(&big(2), &big(3), &[2]).unwrap(), big(avoid(2, 3, &[2])));

    // the tail generates (2) and (1) respectively
    let s = usc_shift(&bigs(&[7, 2]), &ideal(7)).unwrap();
    assert_eq!(s.shift, big(2 * first(|n| gcd(7 + 2 * n, 7) == 1)));
    let s = usc_shift(&bigs(&[5, 10, 3]), &ideal(5)).unwrap();
    assert_eq!(s.shift, big(first(|n| gcd(5 + n, 5) == 1)));

    let s = first(|s| gcd(2 + 5 * s, 4) == 1);
    assert_eq!(unitalize(&bigs(&[2, 4]), &ideal(5)).unwrap(), bigs(&[5 * s, 0]));
    let s = first(|s| gcd(6 + 7 * s, 10) == 1);
    assert_eq!(unitalize(&bigs(&[6, 10]), &ideal(7)).unwrap(), bigs(&[7 * s, 0]));

    let cert = cmh_solve(&bigs(&[2, 4]), &ideal(5)).unwrap();
    let c = &cert.coefficients;
    assert_eq!((&c[0] * big(2) + &c[1] * big(4)).mod_floor(&big(5)), big(1));
    assert_eq!(c[0].gcd(&c[1]), big(1));
    assert!(cert.verify(&bigs(&[2, 4]), &ideal(5)));

    let x = bring_unit(&bigs(&[5, 2]), 0, &ideal(5), &ideal(3)).unwrap();
    assert_eq!(x, bigs(&[0, 3 * first(|t| gcd(5 + 3 * t * 2, 5) == 1)]));
    let x = bring_unit(&bigs(&[6, 10, 15]), 1, &ideal(7), &ideal(11)).unwrap();
    assert!(x[0].is_multiple_of(&big(11)) && x[2].is_multiple_of(&big(11)) && x[1] == big(0));
    let combined: BigInt = big(10) + &x[0] * big(6) + &x[2] * big(15);
    assert_eq!(combined.gcd(&big(7)), big(1));
    // the scan agrees that some multiples of 11 work
    assert!((0..7).any(|u| (0..7).any(|v| gcd(10 + 11 * u * 6 + 11 * v * 15, 7) == 1)));

    assert_eq!(ideal_avoid(&ideal(6), &[5, 7]).unwrap(), big(6));
    assert_eq!(gcd(6, 35), 1);
}

#[test]
fn projspace_examples() {
    let p = ProjPoint::from_residues(&bigs(&[1, 2]), ideal(5), exps(&[1, 1])).unwrap();
    let q = ProjPoint::from_residues(&bigs(&[2, 4]), ideal(5), exps(&[1, 1])).unwrap();
    assert!((1..5u64).any(|l| l % 5 == 2 && (2 * l) % 5 == 4));
    assert!(eq(&p, &q).unwrap());
    let w = eq_witness(&q, &p).unwrap().unwrap();
    assert_eq!((w % 5, w * 2 % 5), (2, 4));

    assert!(cross_relation_eq(&bigs(&[1, 2]), &bigs(&[2, 4]), &ideal(5)).unwrap());

    let orbit_min = (1..5u64).map(|l| [2 * l % 5, 4 * l % 5]).min().unwrap();
    assert_eq!(canonicalize(&q).rep(), &orbit_min);

    for (m, count) in [([1, 1], 6), ([2, 2], 12), ([1, 2], 7)] {
        assert_eq!(brute_orbits(5, 1, &m).unwrap().orbit_count(), count);
        assert_eq!(enumerate(ideal(5), 1, &exps(&m)).unwrap().len(), count);
    }
}

#[test]
fn crt_examples() {
    let scan = |residues: &[(u64, u64)]| (0..).find(|x: &u64| residues.iter().all(|&(r, n)| x % n == r)).unwrap() as i64;
    let sys = CoMaximalSystem::new(vec![ideal(3), ideal(5)]).unwrap();
    let m = exps(&[1, 2]);
    let t1 = ProjPoint::from_residues(&bigs(&[1, 2]), ideal(3), m.clone()).unwrap();
    let t2 = ProjPoint::from_residues(&bigs(&[2, 1]), ideal(5), m.clone()).unwrap();
    let lift = crt_lift(&[t1.clone(), t2.clone()], &sys, &m).unwrap();
    assert_eq!(lift.representative, bigs(&[scan(&[(1, 3), (2, 5)]), scan(&[(2, 3), (1, 5)])]));
    assert_eq!(lift.representative, bigs(&[7, 11]));
    let back = crt_reduce(&lift.point, &sys).unwrap();
    assert!(eq(&back[0], &t1).unwrap() && eq(&back[1], &t2).unwrap());

    let sys = CoMaximalSystem::new(vec![ideal(2), ideal(3)]).unwrap();
    let m = exps(&[1, 1]);
    let t1 = ProjPoint::from_residues(&bigs(&[1, 0]), ideal(2), m.clone()).unwrap();
    let t2 = ProjPoint::from_residues(&bigs(&[0, 1]), ideal(3), m.clone()).unwrap();
    let lift = crt_lift(&[t1, t2], &sys, &m).unwrap();
    assert_eq!(lift.representative, bigs(&[scan(&[(1, 2), (0, 3)]), scan(&[(0, 2), (1, 3)])]));

    for (a, b, m) in [(3, 5, [1, 2]), (2, 3, [1, 1])] {
        let sys = CoMaximalSystem::new(vec![ideal(a), ideal(b)]).unwrap();
        let report = crt_bijectivity_check(&sys, 1, &exps(&m), DEFAULT_MAX_TUPLES).unwrap();
        let counts = [a, b].map(|n| brute_orbits(n, 1, &m).unwrap().orbit_count());
        assert!(report.bijective);
        assert_eq!(report.factor_counts, counts.to_vec());
        assert_eq!(report.product_count, brute_orbits(a * b, 1, &m).unwrap().orbit_count());
        assert_eq!(report.product_count, counts[0] * counts[1]);
    }
    assert_eq!(brute_orbits(6, 1, &[1, 1]).unwrap().orbit_count(), 12);
}

#[test]
fn sl_examples() {
    assert_eq!(brute_sl_group(2, 2).unwrap().len(), 6);
    assert_eq!(brute_sl_group(3, 2).unwrap().len(), 24);

    let m = IntMatrix::from_i64(&[&[0, 4], &[1, 0]]).unwrap();
    let x = sl_mod_lift(&m, &big(5)).unwrap();
    assert_eq!(x, IntMatrix::from_i64(&[&[0, -1], &[1, 0]]).unwrap());
    assert!(x.is_special_linear() && x.congruent_mod(&m, &big(5)));

    let diag = IntMatrix::from_i64(&[&[2, 0, 0], &[0, 4, 0], &[0, 0, 2]]).unwrap();
    let x = sl_mod_lift(&diag, &big(15)).unwrap();
    assert!(x.is_special_linear() && x.congruent_mod(&diag, &big(15)));

    let sys = RowTargetSystem::new(vec![target(&[1, 1], 3, &[1, 1]).unwrap(), target(&[1, 1], 5, &[1, 1]).unwrap()]).unwrap();
    let (a, _) = normalize_rows(&IntMatrix::from_i64(&[&[1, 1], &[1, 1]]).unwrap(), &sys).unwrap();
    assert_eq!(a.get(0, 0).gcd(&big(3)), big(1));
    assert!(a.get(0, 1).is_multiple_of(&big(3)));
    assert!(a.get(1, 0).is_multiple_of(&big(5)));
    assert_eq!(a.get(1, 1).gcd(&big(5)), big(1));

    // odd permutation on two coordinates: -e_j is eq to e_j when m_j = 1
    let sys = RowTargetSystem::new(vec![target(&[0, 1], 7, &[2, 1]).unwrap(), target(&[1, 0], 11, &[1, 3]).unwrap()]).unwrap();
    let x = sl_lift_sigma(&sys, &[1, 0]).unwrap();
    sys.verify(&x).unwrap();
    let minus = ProjPoint::from_residues(&bigs(&[0, -1]), ideal(7), exps(&[2, 1])).unwrap();
    assert!(eq(&minus, &sys.targets()[0]).unwrap());

    let m3 = [[1, 2, 2], [2, 1, 2], [2, 2, 1]];
    let targets = [(8, [1, 3, 5]), (9, [2, 1, 4]), (25, [3, 7, 1])]
        .iter()
        .zip(m3)
        .map(|(&(n, v), row)| target(&v, n, &row).unwrap())
        .collect();
    let sys = RowTargetSystem::new(targets).unwrap();
    sys.verify(&sl_lift_sigma(&sys, &[0, 1, 2]).unwrap()).unwrap();
    sys.verify(&sl_lift_general(&sys).unwrap()).unwrap();

    let x = sl2_prescribed(&big(3), &big(2), &ideal(4), &big(2), &big(3), &ideal(9)).unwrap();
    assert!(x.is_special_linear());
    let reference = IntMatrix::from_i64(&[&[3, 22], &[20, 147]]).unwrap();
    assert!(reference.is_special_linear());
    assert_eq!(3 * 147 - 22 * 20, 1);

    let x = sl2_prescribed(&big(1), &big(5), &ideal(6), &big(1), &big(7), &ideal(25)).unwrap();
    assert!(x.is_special_linear());
    assert!((x.get(0, 1) - big(5)).is_multiple_of(&big(6)) && (x.get(1, 1) - big(7)).is_multiple_of(&big(25)));

    let x = sl2_lift(&target(&[3, 2], 4, &[1, 1]).unwrap(), &target(&[2, 3], 9, &[1, 1]).unwrap()).unwrap();
    assert!(x.is_special_linear());
    let top = target(&[2, 2], 5, &[2, 2]).unwrap();
    let x = sl2_lift(&top, &ProjPoint::singleton(exps(&[1, 1]))).unwrap();
    let row = ProjPoint::from_residues(x.row(0), ideal(5), exps(&[2, 2])).unwrap();
    assert!(x.is_special_linear() && eq(&row, &top).unwrap());
}
