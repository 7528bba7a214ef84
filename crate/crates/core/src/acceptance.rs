//! End-to-end acceptance sweeps.
//!
//! Each criterion runs a fixed, seeded workload against the library, checks
//! every result against an independent postcondition or the brute-force
//! oracle, and reports one line. Time limits are part of the criterion.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crt_proj::{crt_bijectivity_check, CoMaximalSystem};
use crate::error::Error;
use crate::matrix::IntMatrix;
use crate::oracle::{brute_orbits, brute_sl_group, OrbitTable};
use crate::projspace::{cross_relation_eq, eq, ClassTable, ExponentVector, ProjPoint, DEFAULT_MAX_TUPLES};
use crate::ring::{factor, gcd_all, gcd_u64, is_unit_mod, Ideal};
use crate::sl_lift::{sl2_prescribed, sl_lift_general_detailed, sl_lift_sigma, sl_mod_lift, RowTargetSystem};
use crate::toolbox::{avoid_maximals, balance_diagonal, bring_unit, cmh_solve, fund_lemma, unitalize, usc_shift};

/// Seed shared by every randomized criterion.
pub const SEED: u64 = 0x9e37_79b9_7f4a_7c15;

/// Failure messages kept per criterion.
const SAMPLE_LIMIT: usize = 5;

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub cases: u64,
    pub failure_count: u64,
    /// The first few failures, in the order they were met.
    pub failures: Vec<String>,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionReport {
    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.cases > 0 && self.within_limit()
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} [{}] {}: {} cases, {} failures, {:.2}s (limit {}s)",
            self.id,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.cases,
            self.failure_count,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )?;
        if !self.within_limit() {
            write!(f, " [time limit exceeded]")?;
        }
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

struct Tally {
    cases: u64,
    failure_count: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failure_count: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < SAMPLE_LIMIT {
                self.failures.push(msg());
            }
        }
    }

    fn finish(self, id: u8, title: &'static str, limit_secs: u64, start: Instant) -> CriterionReport {
        CriterionReport {
            id,
            title,
            cases: self.cases,
            failure_count: self.failure_count,
            failures: self.failures,
            elapsed: start.elapsed(),
            limit: Duration::from_secs(limit_secs),
        }
    }
}

fn ideal(n: u64) -> Ideal {
    Ideal::new(n).expect("generators used here are positive")
}

fn exps(m: &[u32]) -> ExponentVector {
    ExponentVector::new(m.to_vec()).expect("exponents used here are positive")
}

fn big_row(values: &[u64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

/// Whether the class labels of `table` induce exactly the partition of `oracle`.
pub fn partitions_agree(table: &ClassTable, oracle: &OrbitTable) -> bool {
    let n = oracle.modulus();
    let width = oracle.dimension() + 1;
    if table.class_count() != oracle.orbit_count() {
        return false;
    }
    let mut forward: HashMap<usize, u64> = HashMap::new();
    let mut backward: HashMap<u64, usize> = HashMap::new();
    let mut tuple = vec![0u64; width];
    loop {
        match (table.label_of(&tuple), oracle.orbit_of(&tuple)) {
            (None, None) => {}
            (Some(label), Some(id)) => {
                if *forward.entry(label).or_insert(id) != id || *backward.entry(id).or_insert(label) != label {
                    return false;
                }
            }
            _ => return false,
        }
        let mut slot = width;
        loop {
            if slot == 0 {
                return true;
            }
            slot -= 1;
            tuple[slot] += 1;
            if tuple[slot] < n {
                break;
            }
            tuple[slot] = 0;
        }
    }
}

fn odd_primes_up_to(bound: u64) -> Vec<u64> {
    (3..=bound).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// Weighted `(1, 2)` lines over odd primes: `p + 2` classes.
pub fn criterion_1() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    for p in odd_primes_up_to(31) {
        let table = match ClassTable::build(ideal(p), 1, &exps(&[1, 2]), DEFAULT_MAX_TUPLES) {
            Ok(table) => table,
            Err(e) => {
                t.check(false, || format!("p = {p}: {e}"));
                continue;
            }
        };
        t.check(table.class_count() as u64 == p + 2, || format!("p = {p}: {} classes", table.class_count()));
        let non_residue = (2..p).find(|&q| (1..p).all(|x| x * x % p != q)).expect("odd primes have non-residues");
        let mut expected: Vec<(Vec<u64>, u64)> = vec![(vec![0, 1], (p - 1) / 2), (vec![0, non_residue], (p - 1) / 2)];
        expected.extend((0..p).map(|b| (vec![1, b], p - 1)));
        let got: Vec<(Vec<u64>, u64)> = table.representatives().iter().cloned().zip(table.sizes().iter().copied()).collect();
        t.check(got == expected, || format!("p = {p}: classes {got:?}"));
    }
    t.finish(1, "weighted (1,2) lines have p+2 classes", 5, start)
}

/// Square rays `m = (2, .., 2)`: `2 (p^{k+1} - 1) / (p - 1)` classes.
pub fn criterion_2() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    for p in [3u64, 5, 7] {
        for k in [1usize, 2] {
            let m = vec![2; k + 1];
            let expected = 2 * (p.pow(k as u32 + 1) - 1) / (p - 1);
            let outcome = ClassTable::build(ideal(p), k, &exps(&m), DEFAULT_MAX_TUPLES)
                .and_then(|table| Ok((brute_orbits(p, k, &m)?, table)));
            match outcome {
                Ok((oracle, table)) => {
                    t.check(table.class_count() as u64 == expected, || {
                        format!("p = {p}, k = {k}: {} classes, expected {expected}", table.class_count())
                    });
                    t.check(oracle.orbit_count() as u64 == expected, || format!("p = {p}, k = {k}: oracle found {}", oracle.orbit_count()));
                    t.check(partitions_agree(&table, &oracle), || format!("p = {p}, k = {k}: partition differs from the oracle"));
                }
                Err(e) => t.check(false, || format!("p = {p}, k = {k}: {e}")),
            }
        }
    }
    t.finish(2, "square-ray class counts match the formula and the oracle", 5, start)
}

/// With unit exponents, class equality is the cross-product relation.
pub fn criterion_3() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let ones = exps(&[1, 1]);
    for n in 2..=60u64 {
        let i = ideal(n);
        let table = match ClassTable::build(i, 1, &ones, DEFAULT_MAX_TUPLES) {
            Ok(table) => table,
            Err(e) => {
                t.check(false, || format!("n = {n}: {e}"));
                continue;
            }
        };
        let tuples: Vec<[u64; 2]> = (0..n).flat_map(|a| (0..n).map(move |b| [a, b])).filter(|v| gcd_u64(gcd_u64(v[0], v[1]), n) == 1).collect();
        let labels: Vec<usize> = tuples.iter().map(|v| table.label_of(v).expect("admissible")).collect();
        let bigs: Vec<Vec<BigInt>> = tuples.iter().map(|v| big_row(v)).collect();
        let (mut agree, mut total) = (0u64, 0u64);
        let mut first_bad = None;
        for (x, u) in bigs.iter().enumerate() {
            for (y, v) in bigs.iter().enumerate() {
                total += 1;
                let same_class = labels[x] == labels[y];
                match cross_relation_eq(u, v, &i) {
                    Ok(cross) if cross == same_class => agree += 1,
                    other => {
                        first_bad.get_or_insert_with(|| format!("n = {n}: {:?} vs {:?}: class {same_class}, cross {other:?}", tuples[x], tuples[y]));
                    }
                }
            }
        }
        t.check(agree == total, || first_bad.unwrap_or_default());
        // the labels themselves are checked against the unit scan on smaller moduli
        if n <= 15 {
            let points: Vec<ProjPoint> =
                tuples.iter().map(|v| ProjPoint::from_residues(&big_row(v), i, ones.clone()).expect("admissible")).collect();
            let consistent = (0..points.len())
                .all(|x| (0..points.len()).all(|y| eq(&points[x], &points[y]).ok() == Some(labels[x] == labels[y])));
            t.check(consistent, || format!("n = {n}: eq disagrees with the class table"));
        }
    }
    t.finish(3, "eq agrees with the cross-product relation for unit exponents", 60, start)
}

/// Every way to split `n` into at least two pairwise coprime factors, by
/// grouping its prime-power components. A prime power splits as `(n)(1)`.
pub fn comaximal_splittings(n: u64) -> Vec<Vec<u64>> {
    let components: Vec<u64> = match factor(&BigInt::from(n)) {
        Ok(f) => f.factors().iter().map(|&(p, e)| p.pow(e)).collect(),
        Err(_) => return Vec::new(),
    };
    if components.len() <= 1 {
        return vec![vec![n, 1]];
    }
    // restricted growth strings enumerate set partitions
    let r = components.len();
    let mut out = Vec::new();
    let mut blocks = vec![0usize; r];
    loop {
        let count = blocks.iter().max().expect("nonempty") + 1;
        if count >= 2 {
            let mut parts = vec![1u64; count];
            for (c, &b) in components.iter().zip(&blocks) {
                parts[b] *= c;
            }
            out.push(parts);
        }
        let mut i = r - 1;
        loop {
            let limit = blocks[..i].iter().max().map_or(0, |m| m + 1);
            if i > 0 && blocks[i] < limit {
                blocks[i] += 1;
                for b in &mut blocks[i + 1..] {
                    *b = 0;
                }
                break;
            }
            if i <= 1 {
                return out;
            }
            i -= 1;
        }
    }
}

/// Reduction to co-maximal factors is a bijection with an explicit inverse.
pub fn criterion_4() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut exponent_pairs = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            exponent_pairs.push(exps(&[a, b]));
        }
    }
    for n in 2..=200u64 {
        for split in comaximal_splittings(n) {
            let sys = match CoMaximalSystem::new(split.iter().map(|&g| ideal(g)).collect()) {
                Ok(sys) => sys,
                Err(e) => {
                    t.check(false, || format!("{split:?}: {e}"));
                    continue;
                }
            };
            for m in &exponent_pairs {
                match crt_bijectivity_check(&sys, 1, m, DEFAULT_MAX_TUPLES) {
                    Ok(r) => {
                        let product: usize = r.factor_counts.iter().product();
                        t.check(r.bijective && r.lift_inverts && r.product_count == product, || {
                            format!("{split:?} with m = {m}: {r:?}")
                        })
                    }
                    Err(e) => t.check(false, || format!("{split:?} with m = {m}: {e}")),
                }
            }
        }
    }
    t.finish(4, "co-maximal reduction is bijective and the lift inverts it", 120, start)
}

/// `|SL_size(Z/N)|` from the prime factorization.
fn sl_order(n: u64, size: u32) -> u64 {
    let mut order = n.pow(size * size - 1);
    for (p, _) in factor(&BigInt::from(n)).expect("small").factors() {
        for j in 2..=size {
            order = order / p.pow(j) * (p.pow(j) - 1);
        }
    }
    order
}

/// Every element of `SL_2(Z/N)` lifts to an integer determinant-one matrix.
pub fn criterion_5() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let runs: Vec<(u64, usize)> = (2..=12).map(|n| (n, 2)).chain([(2, 3), (3, 3)]).collect();
    for (n, size) in runs {
        let group = match brute_sl_group(n, size) {
            Ok(group) => group,
            Err(e) => {
                t.check(false, || format!("N = {n}: {e}"));
                continue;
            }
        };
        let expected = sl_order(n, size as u32);
        t.check(group.len() as u64 == expected, || format!("SL_{size}(Z/{n}) has {} elements, expected {expected}", group.len()));
        let modulus = BigInt::from(n);
        for g in group {
            let m = IntMatrix::new(g.iter().map(|r| big_row(r)).collect()).expect("square");
            match sl_mod_lift(&m, &modulus) {
                Ok(x) => t.check(x.is_special_linear() && x.congruent_mod(&m, &modulus), || format!("{m} mod {n} lifted to {x}")),
                Err(e) => t.check(false, || format!("{m} mod {n}: {e}")),
            }
        }
    }
    t.finish(5, "SL_2(Z/N) for N <= 12 lifts to SL_2(Z)", 30, start)
}

/// Pairwise coprime generators in `1..=max`, about one in six being the unit ideal.
fn random_generators(rng: &mut ChaCha8Rng, count: usize, max: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(count);
    for _ in 0..count {
        let mut g = 1;
        if !rng.gen_ratio(1, 6) {
            for _ in 0..32 {
                let candidate = rng.gen_range(2..=max);
                if out.iter().all(|&h| gcd_u64(h, candidate) == 1) {
                    g = candidate;
                    break;
                }
            }
        }
        out.push(g);
    }
    out
}

fn random_residues(rng: &mut ChaCha8Rng, n: u64, width: usize) -> Vec<u64> {
    loop {
        let v: Vec<u64> = (0..width).map(|_| rng.gen_range(0..n)).collect();
        if v.iter().fold(n, |g, &a| gcd_u64(g, a)) == 1 {
            return v;
        }
    }
}

fn random_target(rng: &mut ChaCha8Rng, n: u64, row: &[u32]) -> ProjPoint {
    if n == 1 {
        return ProjPoint::singleton(exps(row));
    }
    let v = random_residues(rng, n, row.len());
    ProjPoint::from_residues(&big_row(&v), ideal(n), exps(row)).expect("admissible by construction")
}

fn check_lift(t: &mut Tally, label: &str, sys: &RowTargetSystem) {
    match sl_lift_general_detailed(sys) {
        Ok(lift) => t.check(sys.verify(&lift.matrix).is_ok(), || format!("{label}: {} fails verification", lift.matrix)),
        Err(e) => t.check(false, || format!("{label}: {e}")),
    }
}

/// The regression matrix of exponents used with all-ones targets.
pub const REGRESSION_EXPONENTS: [[u32; 5]; 5] =
    [[2, 5, 3, 10, 6], [8, 20, 30, 24, 12], [1, 50, 48, 40, 60], [11, 55, 44, 22, 15], [18, 4, 72, 90, 27]];

/// All-ones targets with [`REGRESSION_EXPONENTS`] over the given moduli.
pub fn regression_system(moduli: [u64; 5]) -> RowTargetSystem {
    let targets = moduli
        .iter()
        .zip(REGRESSION_EXPONENTS)
        .map(|(&n, row)| ProjPoint::from_residues(&[BigInt::one(), BigInt::one(), BigInt::one(), BigInt::one(), BigInt::one()], ideal(n), exps(&row)))
        .collect::<Result<Vec<_>, Error>>()
        .expect("all-ones rows are unital");
    RowTargetSystem::new(targets).expect("distinct primes are co-maximal")
}

/// Random row-target systems lift to verified determinant-one matrices.
pub fn criterion_6() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    for trial in 0..500 {
        let size = rng.gen_range(2..=4);
        let gens = random_generators(&mut rng, size, 50);
        let targets: Vec<ProjPoint> = gens
            .iter()
            .map(|&n| {
                let row: Vec<u32> = (0..size).map(|_| rng.gen_range(1..=6)).collect();
                random_target(&mut rng, n, &row)
            })
            .collect();
        match RowTargetSystem::new(targets) {
            Ok(sys) => check_lift(&mut t, &format!("trial {trial} over {gens:?}"), &sys),
            Err(e) => t.check(false, || format!("trial {trial}: {e}")),
        }
    }
    for moduli in [[7, 11, 13, 17, 19], [241, 601, 1201, 1321, 1801]] {
        check_lift(&mut t, &format!("regression over {moduli:?}"), &regression_system(moduli));
    }
    t.finish(6, "general row-target lifting", 120, start)
}

fn permutation_is_odd(sigma: &[usize]) -> bool {
    let inversions = (0..sigma.len()).flat_map(|i| (i + 1..sigma.len()).map(move |j| (i, j))).filter(|&(i, j)| sigma[i] > sigma[j]).count();
    inversions % 2 == 1
}

/// Systems with a unit exponent on a permutation pattern lift through the
/// shortcut and agree with the general construction.
pub fn criterion_7() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut parities = [0u32; 2];
    for trial in 0..200 {
        let size = rng.gen_range(2..=4);
        let mut sigma: Vec<usize> = (0..size).collect();
        sigma.shuffle(&mut rng);
        // alternate parities so both signs are exercised
        if permutation_is_odd(&sigma) != (trial % 2 == 1) {
            sigma.swap(0, 1);
        }
        parities[trial % 2] += 1;
        let gens = random_generators(&mut rng, size, 50);
        let targets: Vec<ProjPoint> = gens
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                let mut row: Vec<u32> = (0..size).map(|_| rng.gen_range(1..=6)).collect();
                row[sigma[i]] = 1;
                random_target(&mut rng, n, &row)
            })
            .collect();
        let sys = match RowTargetSystem::new(targets) {
            Ok(sys) => sys,
            Err(e) => {
                t.check(false, || format!("trial {trial}: {e}"));
                continue;
            }
        };
        let label = format!("trial {trial} over {gens:?} with sigma {sigma:?}");
        let (shortcut, general) = (sl_lift_sigma(&sys, &sigma), sl_lift_general_detailed(&sys));
        match (shortcut, general) {
            (Ok(x), Ok(g)) => {
                let rows_agree = sys.targets().iter().enumerate().all(|(i, target)| {
                    let row = |m: &IntMatrix| ProjPoint::from_residues(m.row(i), *target.ideal(), target.exponents().clone());
                    matches!((row(&x), row(&g.matrix)), (Ok(a), Ok(b)) if eq(&a, &b).unwrap_or(false))
                });
                t.check(sys.verify(&x).is_ok() && rows_agree, || format!("{label}: {x} disagrees with {}", g.matrix));
            }
            (Err(e), _) | (_, Err(e)) => t.check(false, || format!("{label}: {e}")),
        }
    }
    t.check(parities[0] > 0 && parities[1] > 0, || format!("parities exercised: {parities:?}"));
    t.finish(7, "permutation shortcut agrees with the general lift", 60, start)
}

/// Every admissible 2x2 prescription over small coprime moduli.
pub fn criterion_8() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    for n1 in 2..=12u64 {
        for n2 in (2..=12u64).filter(|&n2| gcd_u64(n1, n2) == 1) {
            let (i1, i2) = (ideal(n1), ideal(n2));
            let units1: Vec<bool> = (0..n1).map(|v| gcd_u64(v, n1) == 1).collect();
            let units2: Vec<bool> = (0..n2).map(|v| gcd_u64(v, n2) == 1).collect();
            let (bn1, bn2) = (BigInt::from(n1), BigInt::from(n2));
            for a in 0..n1 {
                for b in (0..n1).filter(|&b| units1[a as usize] || units1[b as usize]) {
                    for c in 0..n2 {
                        for d in (0..n2).filter(|&d| units2[c as usize] || units2[d as usize]) {
                            let (ba, bb, bc, bd) = (BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d));
                            match sl2_prescribed(&ba, &bb, &i1, &bc, &bd, &i2) {
                                Ok(m) => {
                                    let ok = m.is_special_linear()
                                        && (m.get(0, 0) - &ba).mod_floor(&bn1).is_zero()
                                        && (m.get(0, 1) - &bb).mod_floor(&bn1).is_zero()
                                        && (m.get(1, 0) - &bc).mod_floor(&bn2).is_zero()
                                        && (m.get(1, 1) - &bd).mod_floor(&bn2).is_zero();
                                    t.check(ok, || format!("({a}, {b}) mod {n1}, ({c}, {d}) mod {n2}: {m}"));
                                }
                                Err(e) => t.check(false, || format!("({a}, {b}) mod {n1}, ({c}, {d}) mod {n2}: {e}")),
                            }
                        }
                    }
                }
            }
        }
    }
    t.finish(8, "exhaustive 2x2 prescribed-entry lifting", 300, start)
}

const TOOLBOX_INSTANCES: usize = 10_000;

fn random_unital(rng: &mut ChaCha8Rng, len: usize, bound: i64, modulus: Option<&BigInt>) -> Vec<BigInt> {
    loop {
        let v: Vec<BigInt> = (0..len)
            .map(|_| if rng.gen_ratio(1, 4) { BigInt::zero() } else { BigInt::from(rng.gen_range(-bound..=bound)) })
            .collect();
        if gcd_all(v.iter().chain(modulus)).is_one() {
            return v;
        }
    }
}

fn random_ideal(rng: &mut ChaCha8Rng, max: u64) -> Ideal {
    ideal(rng.gen_range(1..=max))
}

/// Postconditions of the toolbox constructions on random inputs.
pub fn criterion_9() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);

    for _ in 0..TOOLBOX_INSTANCES {
        let (a, b) = loop {
            let a = BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000));
            let b = BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000));
            if a.gcd(&b).is_one() {
                break (a, b);
            }
        };
        let m = BigInt::from(rng.gen_range(1i64..=100_000) * if rng.gen() { 1 } else { -1 });
        match fund_lemma(&a, &b, &m) {
            Ok(n0) => t.check(!n0.is_negative() && (&a + &n0 * &b).gcd(&m).is_one(), || format!("fund_lemma({a}, {b}, {m}) = {n0}")),
            Err(e) => t.check(false, || format!("fund_lemma({a}, {b}, {m}): {e}")),
        }
    }

    for _ in 0..TOOLBOX_INSTANCES {
        let i = random_ideal(&mut rng, 10_000);
        let len = rng.gen_range(2..=5);
        let a = random_unital(&mut rng, len, 10_000, None);
        match usc_shift(&a, &i) {
            Ok(s) => {
                let combo: BigInt = s.witnesses.iter().zip(&a[1..]).map(|(w, x)| w * x).sum();
                t.check(combo == s.shift && is_unit_mod(&(&a[0] + &s.shift), &i), || format!("usc_shift({a:?}, {i}) = {s:?}"));
            }
            Err(e) => t.check(false, || format!("usc_shift({a:?}, {i}): {e}")),
        }
    }

    for _ in 0..TOOLBOX_INSTANCES {
        let i = random_ideal(&mut rng, 10_000);
        let n = i.generator_big();
        let len = rng.gen_range(2..=5);
        let x = random_unital(&mut rng, len, 10_000, Some(&n));
        match unitalize(&x, &i) {
            Ok(shift) => {
                let moved: Vec<BigInt> = x.iter().zip(&shift).map(|(x, s)| x + s).collect();
                let ok = shift.len() == x.len() && shift.iter().all(|s| i.contains(s)) && gcd_all(&moved).is_one();
                t.check(ok, || format!("unitalize({x:?}, {i}) = {shift:?}"));
            }
            Err(e) => t.check(false, || format!("unitalize({x:?}, {i}): {e}")),
        }
    }

    for _ in 0..TOOLBOX_INSTANCES {
        let i = random_ideal(&mut rng, 10_000);
        let len = rng.gen_range(2..=5);
        let x = random_unital(&mut rng, len, 10_000, Some(&i.generator_big()));
        match cmh_solve(&x, &i) {
            Ok(cert) => t.check(cert.verify(&x, &i), || format!("cmh_solve({x:?}, {i}) = {cert:?}")),
            Err(e) => t.check(false, || format!("cmh_solve({x:?}, {i}): {e}")),
        }
    }

    for _ in 0..TOOLBOX_INSTANCES {
        let k = rng.gen_range(2..=4);
        let gens = random_generators(&mut rng, k, 50);
        let ideals: Vec<Ideal> = gens.iter().map(|&g| ideal(g)).collect();
        let a: Vec<BigInt> = gens
            .iter()
            .map(|&g| loop {
                let v = rng.gen_range(-500i64..=500);
                if gcd_u64(v.unsigned_abs(), g) == 1 {
                    break BigInt::from(v);
                }
            })
            .collect();
        let modulus = BigInt::from(gens.iter().product::<u64>());
        match balance_diagonal(&a, &ideals) {
            Ok(d) => {
                let congruent = d.iter().zip(&a).zip(&gens).all(|((d, a), &g)| (d - a).mod_floor(&BigInt::from(g)).is_zero());
                let product: BigInt = d.iter().product();
                t.check(d.len() == k && congruent && (product - 1u32).mod_floor(&modulus).is_zero(), || {
                    format!("balance_diagonal({a:?}, {gens:?}) = {d:?}")
                });
            }
            Err(e) => t.check(false, || format!("balance_diagonal({a:?}, {gens:?}): {e}")),
        }
    }

    for _ in 0..TOOLBOX_INSTANCES {
        let gens = random_generators(&mut rng, 2, 1000);
        let (i, j) = (ideal(gens[0]), ideal(gens[1]));
        let len = rng.gen_range(2..=5);
        let a = random_unital(&mut rng, len, 10_000, None);
        let slot = rng.gen_range(0..len);
        match bring_unit(&a, slot, &i, &j) {
            Ok(x) => {
                let value: BigInt = &a[slot] + x.iter().zip(&a).map(|(x, a)| x * a).sum::<BigInt>();
                let ok = x.len() == len && x[slot].is_zero() && x.iter().all(|v| j.contains(v)) && is_unit_mod(&value, &i);
                t.check(ok, || format!("bring_unit({a:?}, {slot}, {i}, {j}) = {x:?}"));
            }
            Err(e) => t.check(false, || format!("bring_unit({a:?}, {slot}, {i}, {j}): {e}")),
        }
    }

    let small_primes: Vec<u64> = std::iter::once(2).chain(odd_primes_up_to(100)).collect();
    for _ in 0..TOOLBOX_INSTANCES {
        let (f, g) = loop {
            let f = BigInt::from(rng.gen_range(-100_000i64..=100_000));
            let g = BigInt::from(rng.gen_range(-100_000i64..=100_000));
            if f.gcd(&g).is_one() {
                break (f, g);
            }
        };
        let count = rng.gen_range(1..=5);
        let primes: Vec<u64> = small_primes.choose_multiple(&mut rng, count).copied().collect();
        match avoid_maximals(&f, &g, &primes) {
            Ok(a) => {
                let v = &f + &a * &g;
                t.check(primes.iter().all(|&p| !(&v % p).is_zero()), || format!("avoid_maximals({f}, {g}, {primes:?}) = {a}"));
            }
            Err(e) => t.check(false, || format!("avoid_maximals({f}, {g}, {primes:?}): {e}")),
        }
    }
    t.finish(9, "toolbox postconditions on random inputs", 60, start)
}

/// Enumeration against the brute-force orbit sweep, for `n <= 30` and `k <= 2`.
pub fn oracle_agreement() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    for k in 1..=2usize {
        let mut vectors: Vec<Vec<u32>> = vec![vec![]];
        for _ in 0..=k {
            vectors = vectors.into_iter().flat_map(|v| (1..=3).map(move |e| [v.clone(), vec![e]].concat())).collect();
        }
        for n in 2..=30u64 {
            for m in &vectors {
                let outcome = ClassTable::build(ideal(n), k, &exps(m), DEFAULT_MAX_TUPLES).and_then(|table| Ok((table, brute_orbits(n, k, m)?)));
                match outcome {
                    Ok((table, oracle)) => t.check(partitions_agree(&table, &oracle), || format!("n = {n}, m = {m:?}: partitions differ")),
                    Err(e) => t.check(false, || format!("n = {n}, m = {m:?}: {e}")),
                }
            }
        }
    }
    t.finish(0, "enumeration agrees with brute-force orbits", 60, start)
}

/// Criteria by number, in order.
pub const CRITERIA: [fn() -> CriterionReport; 9] =
    [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9];

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().map(|c| c()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splittings() {
        assert_eq!(comaximal_splittings(8), vec![vec![8, 1]]);
        assert_eq!(comaximal_splittings(12), vec![vec![4, 3]]);
        let mut s = comaximal_splittings(60);
        s.iter_mut().for_each(|p| p.sort_unstable());
        s.sort();
        assert_eq!(s, vec![vec![3, 4, 5], vec![3, 20], vec![4, 15], vec![5, 12]]);
    }

    #[test]
    fn sl_orders() {
        assert_eq!(sl_order(2, 2), 6);
        assert_eq!(sl_order(12, 2), 1152);
        assert_eq!(sl_order(2, 3), 168);
        assert_eq!(sl_order(3, 3), 5616);
    }
}
