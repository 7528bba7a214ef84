//! Points of the generalized projective space `PF^{k,(m_0..m_k)}_I`.
//!
//! Two unital tuples are equivalent when `a_i ≡ λ^{m_i} b_i (mod n)` for a
//! single unit `λ`. Points are stored as residue tuples in `[0, n)^{k+1}`
//! whose entries together with `n` have gcd 1; over the unit ideal there is
//! exactly one point and its residue tuple is empty.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{gcd_all, gcd_u64, mul_mod, pow_mod, residue_u64, units_mod, Ideal};
use crate::toolbox::unitalize;

/// Default ceiling on `n^{k+1}` for exhaustive enumeration.
pub const DEFAULT_MAX_TUPLES: u64 = 10_000_000;

/// Weights `(m_0, ..., m_k)`, each at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(m: Vec<u32>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::InvalidInput("exponent vector must be nonempty".into()));
        }
        if m.contains(&0) {
            return Err(Error::InvalidInput(format!("exponents must be positive, got {m:?}")));
        }
        Ok(ExponentVector(m))
    }

    /// `(1, ..., 1)` of length `len`.
    pub fn ones(len: usize) -> Self {
        ExponentVector(vec![1; len])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Integer tuple with gcd 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitalVector(Vec<BigInt>);

impl UnitalVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("unital vector must be nonempty".into()));
        }
        if !gcd_all(&entries).is_one() {
            return Err(Error::PreconditionFailed("entries do not have gcd 1".into()));
        }
        Ok(UnitalVector(entries))
    }

    pub fn from_i64(entries: &[i64]) -> Result<Self> {
        UnitalVector::new(entries.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }
}

/// An equivalence class, held by one residue tuple of the class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjPoint {
    ideal: Ideal,
    exponents: ExponentVector,
    rep: Vec<u64>,
    canonical: bool,
}

impl ProjPoint {
    /// The class of `values` reduced modulo the ideal, without canonicalizing.
    pub fn from_residues(values: &[BigInt], ideal: Ideal, exponents: ExponentVector) -> Result<Self> {
        if values.len() != exponents.len() {
            return Err(Error::InvalidInput(format!(
                "{} coordinates but {} exponents",
                values.len(),
                exponents.len()
            )));
        }
        if ideal.is_unit() {
            return Ok(ProjPoint::singleton(exponents));
        }
        let n = ideal.generator();
        let rep: Vec<u64> = values.iter().map(|v| residue_u64(v, n)).collect();
        if rep.iter().fold(n, |g, &a| gcd_u64(g, a)) != 1 {
            return Err(Error::PreconditionFailed(format!(
                "coordinates {} are not unital modulo {n}",
                format_tuple(&rep)
            )));
        }
        Ok(ProjPoint { ideal, exponents, rep, canonical: false })
    }

    /// The single point over the unit ideal.
    pub fn singleton(exponents: ExponentVector) -> Self {
        ProjPoint { ideal: Ideal::unit(), exponents, rep: Vec::new(), canonical: true }
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn exponents(&self) -> &ExponentVector {
        &self.exponents
    }

    /// Residue tuple; empty over the unit ideal.
    pub fn rep(&self) -> &[u64] {
        &self.rep
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn dim(&self) -> usize {
        self.exponents.len() - 1
    }

    pub fn is_singleton(&self) -> bool {
        self.ideal.is_unit()
    }

    /// An integer tuple with gcd 1 in this class.
    ///
    /// In dimension 0 the only unital integers are `±1`, so a class that
    /// contains neither has no such representative.
    pub fn unital_representative(&self) -> Result<UnitalVector> {
        if self.is_singleton() {
            let mut e = vec![BigInt::zero(); self.exponents.len()];
            e[0] = BigInt::one();
            return Ok(UnitalVector(e));
        }
        let x: Vec<BigInt> = self.rep.iter().map(|&v| BigInt::from(v)).collect();
        if x.len() == 1 {
            for candidate in [BigInt::one(), -BigInt::one()] {
                let q = ProjPoint::from_residues(std::slice::from_ref(&candidate), self.ideal, self.exponents.clone())?;
                if eq(self, &q)? {
                    return Ok(UnitalVector(vec![candidate]));
                }
            }
            return Err(Error::PreconditionFailed(format!("{self} contains neither 1 nor -1")));
        }
        let t = unitalize(&x, &self.ideal)?;
        Ok(UnitalVector(x.iter().zip(t).map(|(a, t)| a + t).collect()))
    }
}

fn format_tuple(rep: &[u64]) -> String {
    let parts: Vec<String> = rep.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(":"))
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_singleton() {
            write!(f, "[*] mod 1 ^ {}", self.exponents)
        } else {
            write!(f, "{} mod {} ^ {}", format_tuple(&self.rep), self.ideal.generator(), self.exponents)
        }
    }
}

/// The class of `v` modulo `ideal`, in canonical form.
pub fn proj_point(v: &UnitalVector, ideal: Ideal, exponents: ExponentVector) -> Result<ProjPoint> {
    Ok(canonicalize(&ProjPoint::from_residues(v.entries(), ideal, exponents)?))
}

/// `λ^{m_i} mod n` for each exponent.
fn weights(lambda: u64, exponents: &[u32], n: u64) -> Vec<u64> {
    exponents.iter().map(|&m| pow_mod(lambda, m as u64, n)).collect()
}

fn scale(rep: &[u64], w: &[u64], n: u64) -> Vec<u64> {
    rep.iter().zip(w).map(|(&a, &w)| mul_mod(a, w, n)).collect()
}

fn check_compatible(p: &ProjPoint, q: &ProjPoint) -> Result<()> {
    if p.ideal != q.ideal || p.exponents != q.exponents {
        return Err(Error::InvalidInput(format!("points live in different spaces: {p} and {q}")));
    }
    Ok(())
}

/// A unit `λ` with `p_i ≡ λ^{m_i} q_i`, if the two points are equal.
pub fn eq_witness(p: &ProjPoint, q: &ProjPoint) -> Result<Option<u64>> {
    check_compatible(p, q)?;
    if p.is_singleton() {
        return Ok(Some(0));
    }
    let n = p.ideal.generator();
    let m = p.exponents.as_slice();
    Ok(units_mod(n).into_iter().find(|&lambda| scale(&q.rep, &weights(lambda, m, n), n) == p.rep))
}

pub fn eq(p: &ProjPoint, q: &ProjPoint) -> Result<bool> {
    Ok(eq_witness(p, q)?.is_some())
}

/// Whether every `u_i v_j - u_j v_i` lies in the ideal.
pub fn cross_relation_eq(u: &[BigInt], v: &[BigInt], ideal: &Ideal) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::InvalidInput(format!("lengths {} and {} differ", u.len(), v.len())));
    }
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if !ideal.contains(&(&u[i] * &v[j] - &u[j] * &v[i])) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn orbit(rep: &[u64], exponents: &[u32], n: u64) -> Vec<Vec<u64>> {
    units_mod(n).into_iter().map(|lambda| scale(rep, &weights(lambda, exponents, n), n)).collect()
}

/// Replace the residue tuple by the lexicographically smallest one in its orbit.
pub fn canonicalize(p: &ProjPoint) -> ProjPoint {
    if p.is_singleton() || p.canonical {
        return p.clone();
    }
    let rep = orbit(&p.rep, p.exponents.as_slice(), p.ideal.generator())
        .into_iter()
        .min()
        .expect("the unit group is nonempty");
    ProjPoint { rep, canonical: true, ..p.clone() }
}

/// Number of residue tuples in the class.
pub fn class_size(p: &ProjPoint) -> u64 {
    if p.is_singleton() {
        return 1;
    }
    let mut orbit = orbit(&p.rep, p.exponents.as_slice(), p.ideal.generator());
    orbit.sort_unstable();
    orbit.dedup();
    orbit.len() as u64
}

/// Image of `p` in the space over `target`, whose generator must divide that of `p`.
pub fn reduce_point(p: &ProjPoint, target: &Ideal) -> Result<ProjPoint> {
    if !p.ideal.generator().is_multiple_of(target.generator()) {
        return Err(Error::InvalidInput(format!("{target} does not contain {}", p.ideal)));
    }
    if target.is_unit() {
        return Ok(ProjPoint::singleton(p.exponents.clone()));
    }
    let d = target.generator();
    let rep = p.rep.iter().map(|&v| v % d).collect();
    Ok(ProjPoint { ideal: *target, exponents: p.exponents.clone(), rep, canonical: false })
}

/// Number of residue tuples `v` in `[0, n)^{k+1}` with `gcd(v, n) = 1`.
pub fn admissible_count(n: u64, k: usize) -> u64 {
    // n^{k+1} * prod over p | n of (1 - p^{-(k+1)})
    let e = (k + 1) as u32;
    let mut count = n.pow(e);
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            count = count / p.pow(e) * (p.pow(e) - 1);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        count = count / m.pow(e) * (m.pow(e) - 1);
    }
    count
}

/// All classes of `PF^{k,m}_{(n)}` with a label for every residue tuple.
///
/// Tuples are visited in lexicographic order, so the first member of each
/// class met is its canonical representative and classes come out sorted.
#[derive(Clone, Debug)]
pub struct ClassTable {
    ideal: Ideal,
    exponents: ExponentVector,
    labels: Vec<u32>,
    reps: Vec<Vec<u64>>,
    sizes: Vec<u64>,
}

const UNLABELED: u32 = u32::MAX;

impl ClassTable {
    pub fn build(ideal: Ideal, k: usize, exponents: &ExponentVector, max_tuples: u64) -> Result<Self> {
        if exponents.len() != k + 1 {
            return Err(Error::InvalidInput(format!("dimension {k} needs {} exponents, got {}", k + 1, exponents.len())));
        }
        if ideal.is_unit() {
            return Ok(ClassTable { ideal, exponents: exponents.clone(), labels: vec![0], reps: vec![Vec::new()], sizes: vec![1] });
        }
        let n = ideal.generator();
        let total = (0..=k).try_fold(1u64, |acc, _| acc.checked_mul(n)).filter(|&t| t <= max_tuples);
        let total = total.ok_or_else(|| {
            Error::TooLarge(format!("{n}^{} tuples exceed the enumeration bound {max_tuples}", k + 1))
        })?;
        let mut labels = vec![UNLABELED; total as usize];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let multipliers: Vec<Vec<u64>> =
            units_mod(n).into_iter().map(|lambda| weights(lambda, exponents.as_slice(), n)).collect();
        let mut tuple = vec![0u64; k + 1];
        for code in 0..total {
            if labels[code as usize] == UNLABELED && tuple.iter().fold(n, |g, &a| gcd_u64(g, a)) == 1 {
                let id = reps.len() as u32;
                let mut size = 0;
                for w in &multipliers {
                    let image = encode(&scale(&tuple, w, n), n);
                    if labels[image as usize] == UNLABELED {
                        labels[image as usize] = id;
                        size += 1;
                    }
                }
                reps.push(tuple.clone());
                sizes.push(size);
            }
            // advance the odometer, last coordinate fastest
            for slot in tuple.iter_mut().rev() {
                *slot += 1;
                if *slot < n {
                    break;
                }
                *slot = 0;
            }
        }
        Ok(ClassTable { ideal, exponents: exponents.clone(), labels, reps, sizes })
    }

    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    /// Canonical residue tuples in increasing lexicographic order.
    pub fn representatives(&self) -> &[Vec<u64>] {
        &self.reps
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Index of the class containing the residue tuple, `None` if not admissible.
    pub fn label_of(&self, tuple: &[u64]) -> Option<usize> {
        if self.ideal.is_unit() {
            return Some(0);
        }
        let n = self.ideal.generator();
        if tuple.len() != self.exponents.len() || tuple.iter().any(|&v| v >= n) {
            return None;
        }
        match self.labels[encode(tuple, n) as usize] {
            UNLABELED => None,
            id => Some(id as usize),
        }
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        if self.ideal.is_unit() {
            return vec![ProjPoint::singleton(self.exponents.clone())];
        }
        self.reps
            .iter()
            .map(|rep| ProjPoint { ideal: self.ideal, exponents: self.exponents.clone(), rep: rep.clone(), canonical: true })
            .collect()
    }
}

fn encode(tuple: &[u64], n: u64) -> u64 {
    tuple.iter().fold(0, |acc, &v| acc * n + v)
}

/// Canonical representatives of every class, sorted.
pub fn enumerate(ideal: Ideal, k: usize, exponents: &ExponentVector) -> Result<Vec<ProjPoint>> {
    enumerate_bounded(ideal, k, exponents, DEFAULT_MAX_TUPLES)
}

pub fn enumerate_bounded(ideal: Ideal, k: usize, exponents: &ExponentVector, max_tuples: u64) -> Result<Vec<ProjPoint>> {
    Ok(ClassTable::build(ideal, k, exponents, max_tuples)?.points())
}
