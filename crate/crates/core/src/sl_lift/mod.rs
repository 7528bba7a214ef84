//! Determinant-one integer matrices whose rows realize prescribed classes.
//!
//! Row `i` of the output must lie in a given class of the projective space
//! over `I_i`, for pairwise co-maximal `I_0, ..., I_k`. The general route
//! normalizes a matrix of representatives by column operations, balances its
//! diagonal, lifts a diagonal matrix from `SL(Z/N)` and undoes the column
//! operations. Every result is re-verified before it is returned.

mod sl2;

pub use sl2::{sl2_lift, sl2_prescribed};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{ColumnOpTrace, IntMatrix};
use crate::projspace::{eq, ExponentVector, ProjPoint};
use crate::ring::{gcd_all, inverse_mod, Ideal};
use crate::toolbox::{balance_diagonal, bring_unit, unitalize_mod, usc_shift};

/// One target class per row, over pairwise co-maximal ideals.
///
/// Row `i` of the exponent matrix is the exponent vector of target `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowTargetSystem {
    targets: Vec<ProjPoint>,
    ideals: Vec<Ideal>,
}

impl RowTargetSystem {
    pub fn new(targets: Vec<ProjPoint>) -> Result<Self> {
        let size = targets.len();
        if size == 0 {
            return Err(Error::InvalidInput("a system needs at least one target".into()));
        }
        if let Some(t) = targets.iter().find(|t| t.exponents().len() != size) {
            return Err(Error::InvalidInput(format!("{size} targets need {size} coordinates each, {t} does not match")));
        }
        let ideals: Vec<Ideal> = targets.iter().map(|t| *t.ideal()).collect();
        for (i, a) in ideals.iter().enumerate() {
            for b in &ideals[i + 1..] {
                if !a.is_comaximal_with(b) {
                    return Err(Error::NotCoprime(format!("{a} and {b} are not co-maximal")));
                }
            }
        }
        Ok(RowTargetSystem { targets, ideals })
    }

    pub fn size(&self) -> usize {
        self.targets.len()
    }

    pub fn targets(&self) -> &[ProjPoint] {
        &self.targets
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn exponent_matrix(&self) -> Vec<Vec<u32>> {
        self.targets.iter().map(|t| t.exponents().as_slice().to_vec()).collect()
    }

    pub fn product(&self) -> Result<Ideal> {
        Ideal::product_of(&self.ideals)
    }

    /// A matrix whose row `i` is an integer tuple with gcd 1 in class `i`
    /// (the unit vector `e_i` for a unit ideal).
    pub fn representatives(&self) -> Result<IntMatrix> {
        let size = self.size();
        let mut rows = Vec::with_capacity(size);
        for (i, t) in self.targets.iter().enumerate() {
            if t.is_singleton() {
                let mut e = vec![BigInt::zero(); size];
                e[i] = BigInt::one();
                rows.push(e);
            } else {
                rows.push(t.unital_representative()?.into_entries());
            }
        }
        IntMatrix::new(rows)
    }

    /// Check that `x` has determinant 1 and every row lies in its target class.
    pub fn verify(&self, x: &IntMatrix) -> Result<()> {
        if x.size() != self.size() {
            return Err(Error::VerificationFailed(format!("expected a {0}x{0} matrix", self.size())));
        }
        let det = x.det();
        if !det.is_one() {
            return Err(Error::VerificationFailed(format!("determinant is {det}, not 1")));
        }
        for (i, t) in self.targets.iter().enumerate() {
            let row = ProjPoint::from_residues(x.row(i), *t.ideal(), t.exponents().clone())
                .map_err(|e| Error::VerificationFailed(format!("row {i}: {e}")))?;
            if !eq(&row, t)? {
                return Err(Error::VerificationFailed(format!("row {i} is {row}, not in the class {t}")));
            }
        }
        Ok(())
    }
}

fn centered(v: &BigInt, n: &BigInt) -> BigInt {
    let r = v.mod_floor(n);
    if &r * 2 > *n {
        r - n
    } else {
        r
    }
}

/// An integer matrix of determinant exactly 1 congruent to `m` modulo `n`.
pub fn sl_mod_lift(m: &IntMatrix, n: &BigInt) -> Result<IntMatrix> {
    if !n.is_positive() {
        return Err(Error::InvalidInput(format!("modulus {n} must be positive")));
    }
    let size = m.size();
    let reduced = m.reduce_mod(n);
    let det = reduced.det();
    if !(&det - 1u32).mod_floor(n).is_zero() {
        return Err(Error::NotSpecialLinear(format!("determinant {det} is not 1 modulo {n}")));
    }
    if n.is_one() {
        return Ok(IntMatrix::identity(size));
    }
    let small = IntMatrix::new(reduced.rows().iter().map(|r| r.iter().map(|v| centered(v, n)).collect()).collect())?;
    if small.is_special_linear() {
        return Ok(small);
    }

    // Reduce C = reduced + n*E to the identity by column operations V, adding
    // multiples of n to entries along the way. Then reduced + n*E' = V^{-1}.
    let mut c = reduced.clone();
    let mut trace = ColumnOpTrace::new(size);
    for p in 0..size {
        for j in p..size {
            let v = c.get(p, j).mod_floor(n);
            c.set(p, j, v);
        }
        if p + 1 == size {
            // the trailing 1x1 minor is congruent to the determinant
            c.set(p, p, BigInt::one());
        } else {
            let tail: Vec<BigInt> = c.row(p)[p..].to_vec();
            let shifts = unitalize_mod(&tail, n)?;
            for (j, t) in (p..size).zip(shifts) {
                let v = c.get(p, j) + t;
                c.set(p, j, v);
            }
            reduce_row_to_pivot(&mut c, &mut trace, p);
        }
        for j in 0..p {
            let f = -c.get(p, j);
            trace.apply(&mut c, p, j, &f);
        }
    }
    debug_assert_eq!(c, IntMatrix::identity(size));
    let lift = trace.inverse().clone();
    if !lift.is_special_linear() || !lift.congruent_mod(&reduced, n) {
        return Err(Error::VerificationFailed("lift does not reduce to the input".into()));
    }
    Ok(lift)
}

/// Column-reduce row `p`, whose entries in columns `p..` have gcd 1, to `e_p`.
fn reduce_row_to_pivot(c: &mut IntMatrix, trace: &mut ColumnOpTrace, p: usize) {
    let size = c.size();
    let q = loop {
        let nonzero: Vec<usize> = (p..size).filter(|&j| !c.get(p, j).is_zero()).collect();
        let q = *nonzero.iter().min_by_key(|&&j| c.get(p, j).abs()).expect("row is unimodular");
        if nonzero.len() == 1 {
            break q;
        }
        for &j in nonzero.iter().filter(|&&j| j != q) {
            let f = -c.get(p, j).div_floor(c.get(p, q));
            trace.apply(c, q, j, &f);
        }
    };
    if q != p {
        trace.apply(c, q, p, &BigInt::one());
        trace.apply(c, p, q, &-BigInt::one());
    }
    if c.get(p, p) == &-BigInt::one() {
        let r = p + 1;
        trace.apply(c, p, r, &-BigInt::one());
        trace.apply(c, r, p, &BigInt::from(2));
        trace.apply(c, p, r, &-BigInt::one());
    }
}

/// Column operations making each diagonal entry `(i, i)` a unit modulo `I_i`
/// and each off-diagonal entry of row `i` a member of `I_i`.
///
/// Returns the transformed matrix `A U` and the trace of `U`. Rows over the
/// unit ideal carry no condition and are left alone.
pub fn normalize_rows(a: &IntMatrix, sys: &RowTargetSystem) -> Result<(IntMatrix, ColumnOpTrace)> {
    let size = a.size();
    if size != sys.size() {
        return Err(Error::InvalidInput(format!("{0}x{0} matrix for {1} targets", size, sys.size())));
    }
    if let Some(i) = (0..size).find(|&i| !gcd_all(a.row(i)).is_one()) {
        return Err(Error::PreconditionFailed(format!("row {i} is not unital")));
    }
    let mut m = a.clone();
    let mut trace = ColumnOpTrace::new(size);
    if size == 1 {
        return Ok((m, trace));
    }
    let mut earlier = Ideal::unit();
    for i in 0..size {
        let ideal = sys.ideals[i];
        if ideal.is_proper() {
            let shifts = if i == 0 {
                let row = m.row(0).to_vec();
                let shift = usc_shift(&row, &ideal)?;
                std::iter::once(BigInt::zero()).chain(shift.witnesses).collect()
            } else {
                bring_unit(m.row(i), i, &ideal, &earlier)?
            };
            for (j, x) in shifts.iter().enumerate() {
                if j != i {
                    trace.apply(&mut m, j, i, x);
                }
            }
            let n = ideal.generator_big();
            let z = inverse_mod(m.get(i, i), &n)?.value().clone();
            for j in (0..size).filter(|&j| j != i) {
                let f = centered(&(-&z * m.get(i, j)), &n);
                trace.apply(&mut m, i, j, &f);
            }
        }
        earlier = earlier.product(&ideal)?;
    }
    Ok((m, trace))
}

/// Every stage of a [`sl_lift_general`] run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralLift {
    pub matrix: IntMatrix,
    /// Integer representatives of the targets, one per row.
    pub representatives: IntMatrix,
    /// Representatives after [`normalize_rows`].
    pub normalized: IntMatrix,
    /// Balanced diagonal fed to [`sl_mod_lift`].
    pub diagonal: Vec<BigInt>,
}

/// A determinant-one matrix whose row `i` lies in target class `i`.
pub fn sl_lift_general(sys: &RowTargetSystem) -> Result<IntMatrix> {
    Ok(sl_lift_general_detailed(sys)?.matrix)
}

/// As [`sl_lift_general`], also returning the intermediate matrices. Row `i`
/// of the output is congruent to row `i` of `representatives` modulo `I_i`.
pub fn sl_lift_general_detailed(sys: &RowTargetSystem) -> Result<GeneralLift> {
    let size = sys.size();
    if size == 1 {
        return single_row(sys).map(|m| GeneralLift {
            representatives: m.clone(),
            normalized: m.clone(),
            diagonal: vec![BigInt::one()],
            matrix: m,
        });
    }
    let representatives = sys.representatives()?;
    let (normalized, trace) = normalize_rows(&representatives, sys)?;
    let diagonal_in: Vec<BigInt> = (0..size).map(|i| normalized.get(i, i).clone()).collect();
    let diagonal = balance_diagonal(&diagonal_in, &sys.ideals)?;
    let b = sl_mod_lift(&IntMatrix::diagonal(&diagonal), &sys.product()?.generator_big())?;
    let matrix = b.mul(trace.inverse())?;
    for (i, ideal) in sys.ideals.iter().enumerate() {
        let n = ideal.generator_big();
        let congruent = matrix.row(i).iter().zip(representatives.row(i)).all(|(x, r)| (x - r).mod_floor(&n).is_zero());
        if !congruent {
            return Err(Error::VerificationFailed(format!("row {i} is not congruent to its representative modulo {ideal}")));
        }
    }
    sys.verify(&matrix)?;
    Ok(GeneralLift { matrix, representatives, normalized, diagonal })
}

/// The 1x1 case: only `(1)` has determinant 1.
fn single_row(sys: &RowTargetSystem) -> Result<IntMatrix> {
    let one = IntMatrix::identity(1);
    let t = &sys.targets[0];
    let p = ProjPoint::from_residues(one.row(0), *t.ideal(), t.exponents().clone())?;
    if !eq(&p, t)? {
        return Err(Error::PreconditionFailed(format!("{t} does not contain 1, so no 1x1 lift exists")));
    }
    Ok(one)
}

fn permutation_sign(sigma: &[usize]) -> i32 {
    let inversions = (0..sigma.len()).flat_map(|i| (i + 1..sigma.len()).map(move |j| (i, j))).filter(|&(i, j)| sigma[i] > sigma[j]).count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Lift for systems with `m^i_{σ(i)} = 1` for every row `i`.
///
/// Columns are permuted so that `σ(i)` lands on the diagonal, rows are
/// normalized, and the candidate `S U^{-1} P^{-1}` is taken, with `S` the
/// signed identity that fixes the determinant. When a row of the candidate
/// misses its class by a scalar, a balanced diagonal correction is applied.
pub fn sl_lift_sigma(sys: &RowTargetSystem, sigma: &[usize]) -> Result<IntMatrix> {
    let size = sys.size();
    let mut seen = vec![false; size];
    if sigma.len() != size || sigma.iter().any(|&s| s >= size || std::mem::replace(&mut seen[s], true)) {
        return Err(Error::InvalidInput(format!("{sigma:?} is not a permutation of 0..{size}")));
    }
    for (i, t) in sys.targets.iter().enumerate() {
        if t.exponents().as_slice()[sigma[i]] != 1 {
            return Err(Error::PreconditionFailed(format!("exponent ({i}, {}) of {t} is not 1", sigma[i])));
        }
    }
    if size == 1 {
        return single_row(sys);
    }
    let representatives = sys.representatives()?;
    let mut permutation = IntMatrix::diagonal(&vec![BigInt::zero(); size]);
    for (i, &s) in sigma.iter().enumerate() {
        permutation.set(s, i, BigInt::one());
    }
    let permuted = representatives.mul(&permutation)?;
    let (normalized, trace) = normalize_rows(&permuted, sys)?;
    let mut signs = vec![BigInt::one(); size];
    signs[0] = BigInt::from(permutation_sign(sigma));
    let mut unpermute = IntMatrix::diagonal(&vec![BigInt::zero(); size]);
    for (i, &s) in sigma.iter().enumerate() {
        unpermute.set(i, s, BigInt::one());
    }
    let candidate = IntMatrix::diagonal(&signs).mul(trace.inverse())?.mul(&unpermute)?;
    if sys.verify(&candidate).is_ok() {
        return Ok(candidate);
    }
    // row i of the representatives is (signs_i * normalized_ii) times row i of the candidate
    let scalars: Vec<BigInt> = (0..size).map(|i| &signs[i] * normalized.get(i, i)).collect();
    let diagonal = balance_diagonal(&scalars, &sys.ideals)?;
    let b = sl_mod_lift(&IntMatrix::diagonal(&diagonal), &sys.product()?.generator_big())?;
    let matrix = b.mul(&candidate)?;
    sys.verify(&matrix)?;
    Ok(matrix)
}

/// Build a target from integer coordinates, mainly for tests and examples.
pub fn target(values: &[i64], n: u64, exponents: &[u32]) -> Result<ProjPoint> {
    let v: Vec<BigInt> = values.iter().map(|&x| BigInt::from(x)).collect();
    ProjPoint::from_residues(&v, Ideal::new(n)?, ExponentVector::new(exponents.to_vec())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn sl_mod_lift_examples() {
        let five = BigInt::from(5);
        assert_eq!(sl_mod_lift(&IntMatrix::identity(3), &five).unwrap(), IntMatrix::identity(3));
        assert_eq!(sl_mod_lift(&m(&[&[0, 4], &[1, 0]]), &five).unwrap(), m(&[&[0, -1], &[1, 0]]));
        let d = IntMatrix::diagonal(&[BigInt::from(2), BigInt::from(3), BigInt::from(1)]);
        let lift = sl_mod_lift(&d, &five).unwrap();
        assert!(lift.is_special_linear() && lift.congruent_mod(&d, &five));
        assert!(matches!(sl_mod_lift(&m(&[&[2, 0], &[0, 1]]), &five), Err(Error::NotSpecialLinear(_))));
    }

    #[test]
    fn sl_mod_lift_needs_the_general_route() {
        // diag(2, 8) mod 15: centered entries give det 16, so the reduction runs
        let n = BigInt::from(15);
        let d = IntMatrix::diagonal(&[BigInt::from(2), BigInt::from(8)]);
        let lift = sl_mod_lift(&d, &n).unwrap();
        assert!(lift.is_special_linear() && lift.congruent_mod(&d, &n));
        let d = IntMatrix::diagonal(&[BigInt::from(2), BigInt::from(2), BigInt::from(4)]);
        let lift = sl_mod_lift(&d, &n).unwrap();
        assert!(lift.is_special_linear() && lift.congruent_mod(&d, &n));
    }

    #[test]
    fn normalize_rows_examples() {
        let sys = RowTargetSystem::new(vec![target(&[1, 1], 3, &[1, 1]).unwrap(), target(&[1, 1], 5, &[1, 1]).unwrap()]).unwrap();
        let ones = m(&[&[1, 1], &[1, 1]]);
        // the all-ones matrix is not unimodular, but each row is unital
        let (a, trace) = normalize_rows(&ones, &sys).unwrap();
        assert_eq!(ones.mul(trace.transform()).unwrap(), a);
        assert!(a.get(0, 0).gcd(&BigInt::from(3)).is_one());
        assert!((a.get(0, 1) % 3i32).is_zero());
        assert!((a.get(1, 0) % 5i32).is_zero());
        assert!(a.get(1, 1).gcd(&BigInt::from(5)).is_one());

        let (a, trace) = normalize_rows(&IntMatrix::identity(2), &sys).unwrap();
        assert_eq!(a, IntMatrix::identity(2));
        assert!(trace.ops().is_empty());
        assert!(matches!(normalize_rows(&m(&[&[2, 4], &[1, 1]]), &sys), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn general_examples() {
        let sys = RowTargetSystem::new(vec![target(&[1, 0], 2, &[1, 1]).unwrap(), target(&[0, 1], 3, &[1, 1]).unwrap()]).unwrap();
        sys.verify(&sl_lift_general(&sys).unwrap()).unwrap();
        sys.verify(&IntMatrix::identity(2)).unwrap();

        let sys = RowTargetSystem::new(vec![target(&[3], 7, &[2]).unwrap()]).unwrap();
        assert!(matches!(sl_lift_general(&sys), Err(Error::PreconditionFailed(_))));
        let sys = RowTargetSystem::new(vec![target(&[2], 7, &[2]).unwrap()]).unwrap();
        assert_eq!(sl_lift_general(&sys).unwrap(), IntMatrix::identity(1));

        assert!(matches!(
            RowTargetSystem::new(vec![target(&[1, 0], 4, &[1, 1]).unwrap(), target(&[0, 1], 6, &[1, 1]).unwrap()]),
            Err(Error::NotCoprime(_))
        ));
    }

    #[test]
    fn general_with_unit_slots() {
        let sys = RowTargetSystem::new(vec![
            target(&[0, 0, 0], 1, &[1, 2, 3]).unwrap(),
            target(&[4, 6, 9], 35, &[2, 1, 3]).unwrap(),
            target(&[0, 0, 0], 1, &[1, 1, 1]).unwrap(),
        ])
        .unwrap();
        let lift = sl_lift_general_detailed(&sys).unwrap();
        sys.verify(&lift.matrix).unwrap();
        let all_unit = RowTargetSystem::new(vec![target(&[0, 0], 1, &[1, 1]).unwrap(), target(&[0, 0], 1, &[2, 1]).unwrap()]).unwrap();
        assert_eq!(sl_lift_general(&all_unit).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn sigma_examples() {
        let sys = RowTargetSystem::new(vec![target(&[1, 0], 4, &[1, 2]).unwrap(), target(&[0, 1], 9, &[3, 1]).unwrap()]).unwrap();
        sys.verify(&sl_lift_sigma(&sys, &[0, 1]).unwrap()).unwrap();

        // odd permutation: exponent 1 sits off the diagonal
        let sys = RowTargetSystem::new(vec![target(&[0, 1], 5, &[2, 1]).unwrap(), target(&[1, 0], 7, &[1, 2]).unwrap()]).unwrap();
        let x = sl_lift_sigma(&sys, &[1, 0]).unwrap();
        sys.verify(&x).unwrap();
        // [-e_j] and [e_j] agree when the weight at j is 1
        let neg = target(&[0, -1], 5, &[2, 1]).unwrap();
        assert!(eq(&neg, &sys.targets()[0]).unwrap());

        let exps = [[1u32, 2, 2], [2, 1, 2], [2, 2, 1]];
        let gens = [8u64, 9, 25];
        let reps = [[3i64, 1, 5], [2, 7, 4], [6, 10, 1]];
        let targets = (0..3).map(|i| target(&reps[i], gens[i], &exps[i]).unwrap()).collect();
        let sys = RowTargetSystem::new(targets).unwrap();
        sys.verify(&sl_lift_sigma(&sys, &[0, 1, 2]).unwrap()).unwrap();

        assert!(matches!(sl_lift_sigma(&sys, &[1, 0, 2]), Err(Error::PreconditionFailed(_))));
        assert!(matches!(sl_lift_sigma(&sys, &[0, 0, 2]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(permutation_sign(&[3, 2, 1, 0]), 1);
    }
}
