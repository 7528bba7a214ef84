//! The Chinese-remainder reduction map between projective spaces and its inverse.
//!
//! For pairwise co-maximal `I_1, ..., I_k` with product `I`, reduction sends a
//! class over `I` to its images over every `I_i`. Lifting solves each
//! coordinate by CRT and then repairs unitality with multiples of the product
//! generator, which leaves every reduction unchanged.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projspace::{canonicalize, reduce_point, ClassTable, ExponentVector, ProjPoint};
use crate::ring::{crt_solve, Ideal};
use crate::toolbox::unitalize;

/// Pairwise co-maximal ideals together with their product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoMaximalSystem {
    ideals: Vec<Ideal>,
    product: Ideal,
}

impl CoMaximalSystem {
    pub fn new(ideals: Vec<Ideal>) -> Result<Self> {
        if ideals.is_empty() {
            return Err(Error::InvalidInput("a system needs at least one ideal".into()));
        }
        for (i, a) in ideals.iter().enumerate() {
            for b in &ideals[i + 1..] {
                if !a.is_comaximal_with(b) {
                    return Err(Error::NotCoprime(format!("{a} and {b} are not co-maximal")));
                }
            }
        }
        let product = Ideal::product_of(&ideals)?;
        Ok(CoMaximalSystem { ideals, product })
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn product(&self) -> &Ideal {
        &self.product
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }
}

/// Component `i` of the result is the image of `p` over `I_i`.
pub fn crt_reduce(p: &ProjPoint, sys: &CoMaximalSystem) -> Result<Vec<ProjPoint>> {
    if p.ideal() != sys.product() {
        return Err(Error::InvalidInput(format!("{p} is not over the product ideal {}", sys.product())));
    }
    sys.ideals.iter().map(|i| reduce_point(p, i)).collect()
}

/// Result of [`crt_lift`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtLift {
    /// Integer tuple built from the targets' residue tuples; it reduces to each
    /// of them exactly, and has gcd 1 whenever the dimension is positive.
    pub representative: Vec<BigInt>,
    /// Canonical form of the lifted class.
    pub point: ProjPoint,
}

/// A class over the product ideal whose reductions are the given targets.
///
/// The residue tuples stored in the targets are used as given, so a
/// canonicalized target yields a representative built from its canonical tuple.
pub fn crt_lift(targets: &[ProjPoint], sys: &CoMaximalSystem, exponents: &ExponentVector) -> Result<CrtLift> {
    if targets.len() != sys.len() {
        return Err(Error::InvalidInput(format!("{} targets for {} ideals", targets.len(), sys.len())));
    }
    for (t, i) in targets.iter().zip(&sys.ideals) {
        if t.ideal() != i {
            return Err(Error::InvalidInput(format!("target {t} is not over {i}")));
        }
        if t.exponents() != exponents {
            return Err(Error::InvalidInput(format!("target {t} does not have exponents {exponents}")));
        }
    }
    let width = exponents.len();
    if sys.product().is_unit() {
        let mut e = vec![BigInt::zero(); width];
        e[0] = BigInt::one();
        return Ok(CrtLift { representative: e, point: ProjPoint::singleton(exponents.clone()) });
    }
    // unit-ideal factors carry no information and are skipped
    let proper: Vec<&ProjPoint> = targets.iter().filter(|t| !t.is_singleton()).collect();
    let mut w = Vec::with_capacity(width);
    for j in 0..width {
        let congruences: Vec<(BigInt, BigInt)> =
            proper.iter().map(|t| (BigInt::from(t.rep()[j]), t.ideal().generator_big())).collect();
        w.push(crt_solve(&congruences)?.value().clone());
    }
    if width >= 2 {
        let t = unitalize(&w, sys.product())?;
        for (w, t) in w.iter_mut().zip(t) {
            *w += t;
        }
    }
    let point = canonicalize(&ProjPoint::from_residues(&w, *sys.product(), exponents.clone())?);
    Ok(CrtLift { representative: w, point })
}

/// Outcome of an exhaustive check that reduction is a bijection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtReport {
    pub factor_counts: Vec<usize>,
    pub product_count: usize,
    pub injective: bool,
    pub surjective: bool,
    pub bijective: bool,
    /// Every tuple of factor classes lifts to a class reducing back to it.
    pub lift_inverts: bool,
}

pub fn crt_bijectivity_check(sys: &CoMaximalSystem, k: usize, exponents: &ExponentVector, max_tuples: u64) -> Result<CrtReport> {
    let product = ClassTable::build(*sys.product(), k, exponents, max_tuples)?;
    let factors = sys
        .ideals
        .iter()
        .map(|&i| ClassTable::build(i, k, exponents, max_tuples))
        .collect::<Result<Vec<_>>>()?;
    let factor_counts: Vec<usize> = factors.iter().map(|t| t.class_count()).collect();
    let combos = factor_counts.iter().try_fold(1usize, |acc, &c| acc.checked_mul(c));
    let combos = combos.filter(|&c| c as u64 <= max_tuples).ok_or_else(|| {
        Error::TooLarge(format!("{factor_counts:?} factor classes exceed the bound {max_tuples}"))
    })?;

    let index_of = |p: &ProjPoint| -> Result<usize> {
        let mut index = 0;
        for ((table, ideal), count) in factors.iter().zip(&sys.ideals).zip(&factor_counts) {
            let image = reduce_point(p, ideal)?;
            let label = table
                .label_of(image.rep())
                .ok_or_else(|| Error::VerificationFailed(format!("{image} has no class")))?;
            index = index * count + label;
        }
        Ok(index)
    };

    let mut hit = vec![false; combos];
    let mut injective = true;
    for p in product.points() {
        let index = index_of(&p)?;
        if hit[index] {
            injective = false;
        }
        hit[index] = true;
    }
    let surjective = hit.iter().all(|&h| h);

    let factor_points: Vec<Vec<ProjPoint>> = factors.iter().map(|t| t.points()).collect();
    let mut lift_inverts = true;
    for index in 0..combos {
        let mut rest = index;
        let mut targets = vec![None; factors.len()];
        for slot in (0..factors.len()).rev() {
            targets[slot] = Some(factor_points[slot][rest % factor_counts[slot]].clone());
            rest /= factor_counts[slot];
        }
        let targets: Vec<ProjPoint> = targets.into_iter().map(|t| t.expect("every slot is filled")).collect();
        let lift = crt_lift(&targets, sys, exponents)?;
        if index_of(&lift.point)? != index {
            lift_inverts = false;
            break;
        }
    }

    Ok(CrtReport {
        factor_counts,
        product_count: product.class_count(),
        injective,
        surjective,
        bijective: injective && surjective,
        lift_inverts,
    })
}
