//! Constructive lemmas used by the lifting algorithms: arithmetic-progression
//! avoidance, unit shifts, unitalization, choice multipliers, co-maximal
//! witnesses, diagonal balancing and the bring-unit combination.
//!
//! Every "pick a residue that avoids a forbidden class" step scans candidates
//! deterministically, smallest nonnegative first. When the scan budget runs
//! out the per-prime Chinese-remainder construction takes over.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{bezout, crt_solve, factor, gcd_all, inverse_mod, is_unit_mod, Ideal};

/// Candidates tried by the linear scans before falling back to the CRT route.
const SCAN_LIMIT: u64 = 4096;

/// Find `n0 >= 0` with `gcd(a + n0*b, m) = 1`, given `gcd(a, b) = 1` and `m != 0`.
pub fn fund_lemma(a: &BigInt, b: &BigInt, m: &BigInt) -> Result<BigInt> {
    if m.is_zero() {
        return Err(Error::InvalidInput("modulus m must be nonzero".into()));
    }
    if b.is_zero() {
        // the progression is constant
        if a.gcd(m).is_one() {
            return Ok(BigInt::zero());
        }
        return Err(Error::PreconditionFailed(format!("b = 0 and gcd({a}, {m}) != 1")));
    }
    if !a.gcd(b).is_one() {
        return Err(Error::PreconditionFailed(format!("gcd({a}, {b}) != 1")));
    }
    coprime_offset(a, b, m)
}

/// Same search under the weaker hypothesis `gcd(a, b, m) = 1`, which is all
/// the argument actually needs: a prime of `m` dividing `b` cannot divide `a`.
pub(crate) fn coprime_offset(a: &BigInt, b: &BigInt, m: &BigInt) -> Result<BigInt> {
    let m = m.abs();
    if m.is_zero() {
        return Err(Error::InvalidInput("modulus m must be nonzero".into()));
    }
    if !gcd_all([a, b, &m]).is_one() {
        return Err(Error::PreconditionFailed(format!("gcd({a}, {b}, {m}) != 1")));
    }
    let mut candidate = a.clone();
    for n0 in 0..SCAN_LIMIT {
        if candidate.gcd(&m).is_one() {
            return Ok(BigInt::from(n0));
        }
        candidate += b;
    }
    match fund_lemma_crt(a, b, &m) {
        Ok(n0) => Ok(n0),
        Err(Error::TooLarge(_)) => Ok(coprime_part(&m, a)),
        Err(e) => Err(e),
    }
}

/// The per-prime construction: for every prime `q | m` with `q ∤ b` the
/// progression hits `q` exactly on `n ≡ t_q (mod q)`; solve `n ≡ t_q + 1`.
pub fn fund_lemma_crt(a: &BigInt, b: &BigInt, m: &BigInt) -> Result<BigInt> {
    let m = m.abs();
    if m.is_zero() {
        return Err(Error::InvalidInput("modulus m must be nonzero".into()));
    }
    if !gcd_all([a, b, &m]).is_one() {
        return Err(Error::PreconditionFailed(format!("gcd({a}, {b}, {m}) != 1")));
    }
    let mut congruences = Vec::new();
    for q in factor(&m)?.primes() {
        let q = BigInt::from(q);
        if (b % &q).is_zero() {
            continue;
        }
        let b_inv = inverse_mod(b, &q)?;
        let t_q = (-a * b_inv.value()).mod_floor(&q);
        congruences.push(((t_q + 1u32).mod_floor(&q), q));
    }
    Ok(crt_solve(&congruences)?.value().clone())
}

/// Largest divisor of `m` coprime to `a`.
fn coprime_part(m: &BigInt, a: &BigInt) -> BigInt {
    let mut c = m.abs();
    loop {
        let g = c.gcd(a);
        if g.is_one() {
            return c;
        }
        c /= g;
    }
}

fn check_prime(p: u64) -> Result<()> {
    let composite = p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d));
    if composite {
        return Err(Error::InvalidInput(format!("{p} is not a prime")));
    }
    Ok(())
}

/// Find `a` with `f + a*g` outside every maximal ideal `(p)`, `p` in `primes`.
pub fn avoid_maximals(f: &BigInt, g: &BigInt, primes: &[u64]) -> Result<BigInt> {
    if !f.gcd(g).is_one() {
        return Err(Error::PreconditionFailed(format!("gcd({f}, {g}) != 1")));
    }
    for &p in primes {
        check_prime(p)?;
    }
    let primes: Vec<BigInt> = primes.iter().map(|&p| BigInt::from(p)).collect();
    let avoids = |v: &BigInt| primes.iter().all(|p| !(v % p).is_zero());
    let mut candidate = f.clone();
    for a in 0..SCAN_LIMIT {
        if avoids(&candidate) {
            return Ok(BigInt::from(a));
        }
        candidate += g;
    }
    let mut congruences = Vec::new();
    for p in &primes {
        if (g % p).is_zero() {
            continue;
        }
        let t_p = (-f * inverse_mod(g, p)?.value()).mod_floor(p);
        congruences.push(((t_p + 1u32).mod_floor(p), p.clone()));
    }
    congruences.sort_by(|x, y| x.1.cmp(&y.1));
    congruences.dedup_by(|x, y| x.1 == y.1);
    Ok(crt_solve(&congruences)?.value().clone())
}

/// A shift `b = sum witnesses[j] * a[j+1]` in the ideal of the tail of `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UscShift {
    pub shift: BigInt,
    /// One multiplier per tail element `a[1..]`.
    pub witnesses: Vec<BigInt>,
}

/// Shift `a[0]` by an element of the ideal `(a[1], ..., a[k-1])` so that it
/// becomes a unit modulo `ideal`.
pub fn usc_shift(a: &[BigInt], ideal: &Ideal) -> Result<UscShift> {
    if a.len() < 2 {
        return Err(Error::InvalidInput("usc_shift needs at least two elements".into()));
    }
    if !gcd_all(a).is_one() {
        return Err(Error::PreconditionFailed("the set is not unital".into()));
    }
    let zero = UscShift { shift: BigInt::zero(), witnesses: vec![BigInt::zero(); a.len() - 1] };
    if ideal.is_unit() {
        return Ok(zero);
    }
    let (d, coeffs) = bezout(&a[1..]);
    let n0 = fund_lemma(&a[0], &d, &ideal.generator_big())?;
    Ok(UscShift { shift: &n0 * &d, witnesses: coeffs.into_iter().map(|c| c * &n0).collect() })
}

/// Multiples `t_i` of the generator making `x + t` unital.
pub fn unitalize(x: &[BigInt], ideal: &Ideal) -> Result<Vec<BigInt>> {
    unitalize_mod(x, &ideal.generator_big())
}

pub(crate) fn unitalize_mod(x: &[BigInt], n: &BigInt) -> Result<Vec<BigInt>> {
    if x.len() < 2 {
        return Err(Error::InvalidInput("unitalize needs at least two coordinates".into()));
    }
    if !gcd_all(x.iter().chain(std::iter::once(n))).is_one() {
        return Err(Error::PreconditionFailed(format!("gcd of the tuple and {n} is not 1")));
    }
    let mut t = vec![BigInt::zero(); x.len()];
    let tail = gcd_all(&x[1..]);
    if tail.is_zero() {
        // the tail is all zero, so gcd(x_0, n) = 1; moving a zero to n finishes
        if !x[0].abs().is_one() {
            t[1] = n.clone();
        }
        return Ok(t);
    }
    let s = coprime_offset(&x[0], n, &tail)?;
    t[0] = s * n;
    Ok(t)
}

/// Coefficients `a_i` with `gcd(a) = 1` and `sum a_i x_i = 1 - slack`,
/// `slack` in the ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmhCertificate {
    pub coefficients: Vec<BigInt>,
    pub slack: BigInt,
}

impl CmhCertificate {
    /// Check the certificate against the tuple it claims to certify.
    pub fn verify(&self, x: &[BigInt], ideal: &Ideal) -> bool {
        if self.coefficients.len() != x.len() || !gcd_all(&self.coefficients).is_one() {
            return false;
        }
        let sum: BigInt = self.coefficients.iter().zip(x).map(|(a, x)| a * x).sum();
        sum + &self.slack == BigInt::one() && ideal.contains(&self.slack)
    }
}

pub fn cmh_solve(x: &[BigInt], ideal: &Ideal) -> Result<CmhCertificate> {
    if x.len() < 2 {
        return Err(Error::InvalidInput("cmh_solve needs at least two coordinates".into()));
    }
    let n = ideal.generator_big();
    if !gcd_all(x.iter().chain(std::iter::once(&n))).is_one() {
        return Err(Error::PreconditionFailed(format!("gcd of the tuple and {n} is not 1")));
    }
    let mut coefficients = vec![BigInt::zero(); x.len()];
    if let Some(i) = x.iter().position(|v| is_unit_mod(v, ideal)) {
        // a*x_i + t = 1 with t in I; pair (a, t) on (x_i, x_j)
        let a = inverse_mod(&x[i], &n)?.value().clone();
        let t = BigInt::one() - &a * &x[i];
        coefficients[i] = a;
        coefficients[(i + 1) % x.len()] = t;
    } else {
        let shifts = unitalize_mod(x, &n)?;
        let y: Vec<BigInt> = x.iter().zip(&shifts).map(|(x, t)| x + t).collect();
        let (g, c) = bezout(&y);
        debug_assert!(g.is_one());
        coefficients = c;
    }
    let sum: BigInt = coefficients.iter().zip(x).map(|(a, x)| a * x).sum();
    Ok(CmhCertificate { coefficients, slack: BigInt::one() - sum })
}

fn check_pairwise_comaximal(ideals: &[Ideal]) -> Result<()> {
    for (i, a) in ideals.iter().enumerate() {
        for b in &ideals[i + 1..] {
            if !a.is_comaximal_with(b) {
                return Err(Error::NotCoprime(format!("{a} and {b} are not co-maximal")));
            }
        }
    }
    Ok(())
}

/// Elements `q_i` of `I_i` that are pairwise co-maximal. Over the integers the
/// generators themselves qualify.
pub fn comaximal_witnesses(ideals: &[Ideal]) -> Result<Vec<BigInt>> {
    check_pairwise_comaximal(ideals)?;
    Ok(ideals.iter().map(|i| i.generator_big()).collect())
}

/// Adjust each `a_i` within its class mod `I_i` so the product of all of them
/// is `1` modulo the product ideal.
///
/// `d_i ≡ a_i (mod n_i)`, `d_{i+1} ≡ a_i^{-1} (mod n_i)` cyclically, and
/// `d_j ≡ 1 (mod n_i)` for every other `j`.
pub fn balance_diagonal(a: &[BigInt], ideals: &[Ideal]) -> Result<Vec<BigInt>> {
    let k = a.len();
    if k < 2 || ideals.len() != k {
        return Err(Error::InvalidInput(format!(
            "balance_diagonal needs k >= 2 entries and one ideal per entry (got {} and {})",
            k,
            ideals.len()
        )));
    }
    check_pairwise_comaximal(ideals)?;
    let mut inverses = Vec::with_capacity(k);
    for (ai, ideal) in a.iter().zip(ideals) {
        let n = ideal.generator_big();
        let inv = inverse_mod(ai, &n)
            .map_err(|_| Error::PreconditionFailed(format!("{ai} is not a unit modulo {ideal}")))?;
        inverses.push(inv.value().clone());
    }
    let mut d = Vec::with_capacity(k);
    for (i, ai) in a.iter().enumerate() {
        let prev = (i + k - 1) % k;
        let congruences: Vec<(BigInt, BigInt)> = (0..k)
            .map(|j| {
                let n = ideals[j].generator_big();
                let r = if j == i {
                    ai.clone()
                } else if j == prev {
                    inverses[prev].clone()
                } else {
                    BigInt::one()
                };
                (r.mod_floor(&n), n)
            })
            .collect();
        d.push(crt_solve(&congruences)?.value().clone());
    }
    Ok(d)
}

/// Multipliers `x_j` (with `x_i = 0`) such that `a_i + sum x_j a_j` is a unit
/// modulo `ideal`, and every `x_j` is a multiple of the generator of `shift_ideal`.
///
/// Only the multipliers with `j < i` are required to lie in `shift_ideal`;
/// this construction puts all of them there.
pub fn bring_unit(a: &[BigInt], i: usize, ideal: &Ideal, shift_ideal: &Ideal) -> Result<Vec<BigInt>> {
    if i >= a.len() {
        return Err(Error::InvalidInput(format!("index {i} out of range for length {}", a.len())));
    }
    if !gcd_all(a).is_one() {
        return Err(Error::PreconditionFailed("the vector is not unital".into()));
    }
    if !ideal.is_comaximal_with(shift_ideal) {
        return Err(Error::PreconditionFailed(format!("{ideal} and {shift_ideal} are not co-maximal")));
    }
    let mut x = vec![BigInt::zero(); a.len()];
    if ideal.is_unit() {
        return Ok(x);
    }
    let others: Vec<BigInt> = a.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
    let (d, coeffs) = bezout(&others);
    let step = shift_ideal.generator_big() * &d;
    let t = coprime_offset(&a[i], &step, &ideal.generator_big())?;
    let scale = t * shift_ideal.generator_big();
    let slots = (0..a.len()).filter(|&j| j != i);
    for (j, c) in slots.zip(coeffs) {
        x[j] = c * &scale;
    }
    Ok(x)
}

/// A multiple of the generator lying outside every `(p)`, `p` in `primes`.
pub fn ideal_avoid(ideal: &Ideal, primes: &[u64]) -> Result<BigInt> {
    for &p in primes {
        check_prime(p)?;
        if ideal.generator().is_multiple_of(p) {
            return Err(Error::PreconditionFailed(format!("{p} divides the generator of {ideal}")));
        }
    }
    // no listed prime divides the generator, so the generator itself avoids them
    Ok(ideal.generator_big())
}
