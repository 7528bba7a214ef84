//! Brute-force ground truth for small instances.
//!
//! Everything here applies the definitions directly and depends only on the
//! gcd and residue primitives, never on the enumeration or lifting code it is
//! used to check. Scan orders are lexicographic and nonnegative-first, so
//! reported witnesses are stable.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::gcd_u64;

/// Search-space ceiling shared by the sweeps below.
pub const ORACLE_BOUND: u64 = 1_000_000;

fn power(base: u64, exp: u32, n: u64) -> u64 {
    let mut acc = 1 % n;
    for _ in 0..exp {
        acc = ((acc as u128 * base as u128) % n as u128) as u64;
    }
    acc
}

fn checked_pow(n: u64, e: usize, bound: u64) -> Result<u64> {
    (0..e)
        .try_fold(1u64, |acc, _| acc.checked_mul(n))
        .filter(|&t| t <= bound)
        .ok_or_else(|| Error::TooLarge(format!("{n}^{e} exceeds the oracle bound {bound}")))
}

/// Orbit label of every residue tuple under `v ↦ (λ^{m_i} v_i)`.
#[derive(Clone, Debug)]
pub struct OrbitTable {
    n: u64,
    exponents: Vec<u32>,
    /// Smallest encoded tuple of the orbit, `None` for inadmissible tuples.
    ids: Vec<Option<u64>>,
    orbit_count: usize,
}

impl OrbitTable {
    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.exponents.len() - 1
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_count
    }

    pub fn orbit_of(&self, tuple: &[u64]) -> Option<u64> {
        if tuple.len() != self.exponents.len() || tuple.iter().any(|&v| v >= self.n) {
            return None;
        }
        self.ids[encode(tuple, self.n) as usize]
    }

    /// Orbit id mapped to its members, each member listed in increasing order.
    pub fn orbits(&self) -> BTreeMap<u64, Vec<Vec<u64>>> {
        let mut out: BTreeMap<u64, Vec<Vec<u64>>> = BTreeMap::new();
        for (code, id) in self.ids.iter().enumerate() {
            if let Some(id) = id {
                out.entry(*id).or_default().push(decode(code as u64, self.n, self.exponents.len()));
            }
        }
        out
    }

    /// Orbit sizes in increasing order.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.orbits().values().map(|o| o.len()).collect();
        sizes.sort_unstable();
        sizes
    }
}

fn encode(tuple: &[u64], n: u64) -> u64 {
    tuple.iter().fold(0, |acc, &v| acc * n + v)
}

fn decode(mut code: u64, n: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    out
}

/// Sweep every unit `λ` against every admissible tuple of `[0, n)^{k+1}`.
pub fn brute_orbits(n: u64, k: usize, exponents: &[u32]) -> Result<OrbitTable> {
    if n == 0 || exponents.len() != k + 1 {
        return Err(Error::InvalidInput(format!("need n >= 1 and {} exponents", k + 1)));
    }
    let total = checked_pow(n, k + 1, ORACLE_BOUND)?;
    let units: Vec<u64> = (0..n).filter(|&l| gcd_u64(l, n) == 1).collect();
    let mut ids = vec![None; total as usize];
    for code in 0..total {
        let tuple = decode(code, n, k + 1);
        if tuple.iter().fold(n, |g, &v| gcd_u64(g, v)) != 1 {
            continue;
        }
        let id = units
            .iter()
            .map(|&l| {
                let image: Vec<u64> =
                    tuple.iter().zip(exponents).map(|(&v, &m)| ((v as u128 * power(l, m, n) as u128) % n as u128) as u64).collect();
                encode(&image, n)
            })
            .min();
        ids[code as usize] = id;
    }
    let mut distinct: Vec<u64> = ids.iter().flatten().copied().collect();
    distinct.sort_unstable();
    distinct.dedup();
    Ok(OrbitTable { n, exponents: exponents.to_vec(), ids, orbit_count: distinct.len() })
}

fn det_mod(m: &[Vec<u64>], n: u64) -> u64 {
    if m.len() == 1 {
        return m[0][0] % n;
    }
    let mut acc: i128 = 0;
    for j in 0..m.len() {
        let minor: Vec<Vec<u64>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
        let term = m[0][j] as i128 * det_mod(&minor, n) as i128;
        acc += if j % 2 == 0 { term } else { -term };
        acc = acc.rem_euclid(n as i128);
    }
    acc as u64
}

/// Every `size x size` matrix over `Z/n` with determinant 1, in lexicographic order.
pub fn brute_sl_group(n: u64, size: usize) -> Result<Vec<Vec<Vec<u64>>>> {
    if n == 0 || size == 0 {
        return Err(Error::InvalidInput("need n >= 1 and size >= 1".into()));
    }
    let total = checked_pow(n, size * size, 10 * ORACLE_BOUND)?;
    let mut out = Vec::new();
    for code in 0..total {
        let flat = decode(code, n, size * size);
        let m: Vec<Vec<u64>> = flat.chunks(size).map(|r| r.to_vec()).collect();
        if det_mod(&m, n) == 1 % n {
            out.push(m);
        }
    }
    Ok(out)
}

/// A finite search problem with a checkable postcondition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftQuery {
    /// `d_i ≡ a_i (mod n_i)` with `prod d_i ≡ 1` modulo `prod n_i`, each `d_i`
    /// scanned over `[0, prod n_i)`.
    BalancedDiagonal { targets: Vec<(i64, u64)> },
    /// `(a, b; c, d)` of determinant 1 with `a ≡ A`, `b ≡ B (mod n1)` and
    /// `c ≡ C`, `d ≡ D (mod n2)`, entries in `[0, bound]`.
    Sl2Congruence { entries: [i64; 4], n1: u64, n2: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<BigInt>),
    NotFound,
}

/// First witness in scan order, or `NotFound` once `bound` is exhausted.
pub fn brute_lift_search(query: &LiftQuery, bound: u64) -> SearchOutcome {
    match query {
        LiftQuery::BalancedDiagonal { targets } => {
            let modulus: u64 = targets.iter().map(|&(_, n)| n).product();
            let limit = modulus.min(bound.saturating_add(1));
            let mut d = vec![0u64; targets.len()];
            loop {
                let congruent = d.iter().zip(targets).all(|(&di, &(a, n))| (di as i64 - a).rem_euclid(n as i64) == 0);
                let product = d.iter().fold(1u128, |acc, &v| acc * v as u128 % modulus as u128);
                if congruent && product == 1 % modulus as u128 {
                    return SearchOutcome::Found(d.iter().map(|&v| BigInt::from(v)).collect());
                }
                // odometer, last slot fastest
                let mut slot = d.len();
                loop {
                    if slot == 0 {
                        return SearchOutcome::NotFound;
                    }
                    slot -= 1;
                    d[slot] += 1;
                    if d[slot] < limit {
                        break;
                    }
                    d[slot] = 0;
                }
            }
        }
        LiftQuery::Sl2Congruence { entries: [ea, eb, ec, ed], n1, n2 } => {
            let (n1, n2) = (*n1 as i64, *n2 as i64);
            let fits = |v: i64, e: i64, n: i64| (v - e).rem_euclid(n) == 0;
            let bound = bound as i64;
            for a in (0..=bound).filter(|&a| fits(a, *ea, n1)) {
                for b in (0..=bound).filter(|&b| fits(b, *eb, n1)) {
                    for c in (0..=bound).filter(|&c| fits(c, *ec, n2)) {
                        // a d - b c = 1
                        let numerator = BigInt::one() + BigInt::from(b) * c;
                        if a == 0 {
                            continue;
                        }
                        let (d, r) = numerator.div_rem(&BigInt::from(a));
                        if !r.is_zero() || d > BigInt::from(bound) || d < BigInt::zero() {
                            continue;
                        }
                        if (&d - ed).mod_floor(&BigInt::from(n2)).is_zero() {
                            return SearchOutcome::Found(vec![a.into(), b.into(), c.into(), d]);
                        }
                    }
                }
            }
            SearchOutcome::NotFound
        }
    }
}
