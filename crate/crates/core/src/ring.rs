//! Effective arithmetic over the integers and their principal ideals.
//!
//! Big integers are used wherever values can grow (vector entries, matrix
//! entries, Bézout coefficients). Ideal generators and residues of the finite
//! quotients that get enumerated are machine words.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default ceiling on integers handed to [`factor`].
pub const DEFAULT_FACTOR_BOUND: u64 = 10_000_000;

/// A nonzero principal ideal `(n)` of the integers, `n >= 1`.
///
/// The unit ideal is `(1)`. The zero ideal is not representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ideal(u64);

impl Ideal {
    pub fn new(generator: u64) -> Result<Self> {
        if generator == 0 {
            return Err(Error::InvalidInput("the zero ideal is not supported".into()));
        }
        Ok(Ideal(generator))
    }

    pub fn unit() -> Self {
        Ideal(1)
    }

    pub fn generator(&self) -> u64 {
        self.0
    }

    pub fn generator_big(&self) -> BigInt {
        BigInt::from(self.0)
    }

    pub fn is_unit(&self) -> bool {
        self.0 == 1
    }

    pub fn is_proper(&self) -> bool {
        self.0 > 1
    }

    pub fn is_comaximal_with(&self, other: &Ideal) -> bool {
        gcd_u64(self.0, other.0) == 1
    }

    /// `true` when `a` lies in the ideal.
    pub fn contains(&self, a: &BigInt) -> bool {
        (a % self.generator_big()).is_zero()
    }

    /// Product ideal; fails if the generator overflows a machine word.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.0
            .checked_mul(other.0)
            .map(Ideal)
            .ok_or_else(|| Error::TooLarge(format!("product of ({}) and ({}) overflows", self.0, other.0)))
    }

    pub fn product_of<'a>(ideals: impl IntoIterator<Item = &'a Ideal>) -> Result<Ideal> {
        ideals.into_iter().try_fold(Ideal::unit(), |acc, i| acc.product(i))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

/// Prime factorization of a positive integer, primes strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The distinct primes, i.e. the maximal ideals containing the integer.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn product(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, &(p, e)| acc * num_traits::pow(BigInt::from(p), e as usize))
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// An element of `Z/nZ`, stored as its least nonnegative representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Residue {
    value: BigInt,
    modulus: BigInt,
}

impl Residue {
    pub fn new(value: &BigInt, modulus: &BigInt) -> Result<Self> {
        if !modulus.is_positive() {
            return Err(Error::InvalidInput(format!("modulus {modulus} must be positive")));
        }
        Ok(Residue { value: value.mod_floor(modulus), modulus: modulus.clone() })
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Extended Euclid: `(g, x, y)` with `g = gcd(a, b) >= 0` and `a*x + b*y = g`.
pub fn egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if a.is_zero() && b.is_zero() {
        return (BigInt::zero(), BigInt::zero(), BigInt::zero());
    }
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// gcd of a whole sequence; `0` for the empty sequence.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Bézout coefficients for a sequence: `(g, c)` with `sum c_i a_i = g = gcd(a)`.
pub fn bezout(values: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(values.len());
    for v in values {
        let (next, x, y) = egcd(&g, v);
        for c in coeffs.iter_mut() {
            *c *= &x;
        }
        coeffs.push(y);
        g = next;
    }
    (g, coeffs)
}

/// Factor `n >= 1` by trial division, refusing inputs above [`DEFAULT_FACTOR_BOUND`].
pub fn factor(n: &BigInt) -> Result<Factorization> {
    factor_bounded(n, DEFAULT_FACTOR_BOUND)
}

pub fn factor_bounded(n: &BigInt, bound: u64) -> Result<Factorization> {
    if !n.is_positive() {
        return Err(Error::InvalidInput(format!("cannot factor {n}; expected n >= 1")));
    }
    let mut m = match n.to_u64() {
        Some(m) if m <= bound => m,
        _ => return Err(Error::TooLarge(format!("{n} exceeds the factorization bound {bound}"))),
    };
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { factors })
}

/// Solve a system of congruences with pairwise coprime moduli.
pub fn crt_solve(congruences: &[(BigInt, BigInt)]) -> Result<Residue> {
    let mut value = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in congruences {
        if !m.is_positive() {
            return Err(Error::InvalidInput(format!("modulus {m} must be positive")));
        }
        let (g, x, _) = egcd(&modulus, m);
        if !g.is_one() {
            return Err(Error::NotCoprime(format!("moduli {modulus} and {m} share the factor {g}")));
        }
        // value + modulus * ((r - value) * x mod m)
        let step = ((r - &value) * x).mod_floor(m);
        value += &modulus * step;
        modulus *= m;
        value = value.mod_floor(&modulus);
    }
    Residue::new(&value, &modulus)
}

pub fn inverse_mod(a: &BigInt, n: &BigInt) -> Result<Residue> {
    if !n.is_positive() {
        return Err(Error::InvalidInput(format!("modulus {n} must be positive")));
    }
    let (g, x, _) = egcd(&a.mod_floor(n), n);
    if !g.is_one() {
        return Err(Error::NotAUnit(format!("{a} is not invertible modulo {n} (gcd {g})")));
    }
    Residue::new(&x, n)
}

pub fn is_unit_mod(a: &BigInt, ideal: &Ideal) -> bool {
    ideal.is_unit() || a.gcd(&ideal.generator_big()).is_one()
}

/// Membership in the Jacobson radical of the integers, which is `(0)`.
pub fn is_jacobson_element(a: &BigInt) -> bool {
    a.is_zero()
}

pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Reduce a big integer into `[0, n)`.
pub(crate) fn residue_u64(a: &BigInt, n: u64) -> u64 {
    a.mod_floor(&BigInt::from(n)).to_u64().expect("residue fits in u64")
}

/// The units of `Z/nZ` in increasing order (`[0]` for `n = 1`).
pub(crate) fn units_mod(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&x| gcd_u64(x, n) == 1).collect()
}
