//! The two-dimensional constructions, valid for arbitrary exponents.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{ColumnOpTrace, IntMatrix};
use crate::projspace::ProjPoint;
use crate::ring::{crt_solve, egcd, inverse_mod, is_unit_mod, Ideal};
use crate::toolbox::{bring_unit, usc_shift};

use super::RowTargetSystem;

fn mat2(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> IntMatrix {
    IntMatrix::new(vec![vec![a, b], vec![c, d]]).expect("2x2 is square")
}

/// `(s, t)` with `s*x + t*y = rhs`, given `gcd(x, y) = 1`.
fn solve_linear(x: &BigInt, y: &BigInt, rhs: &BigInt) -> Result<(BigInt, BigInt)> {
    let (g, s, t) = egcd(x, y);
    if !g.is_one() {
        return Err(Error::VerificationFailed(format!("expected gcd({x}, {y}) = 1, found {g}")));
    }
    Ok((s * rhs, t * rhs))
}

/// `(A, C)` units modulo `(n1, n2)`.
fn case_one(a: &BigInt, b: &BigInt, n1: &BigInt, c: &BigInt, d: &BigInt, n2: &BigInt) -> Result<IntMatrix> {
    let (x, y) = solve_linear(n1, n2, &BigInt::one())?;
    let (p1, p2) = (n1 * x, n2 * y);
    // Ã + C̃ = 1, so (C̃)I_1 + (Ã)I_2 = Z
    let slack = BigInt::one() - a - c;
    let a_t = a + &p1 * &slack;
    let c_t = c + &p2 * &slack;
    let rhs = BigInt::one() - &a_t * d + b * &c_t;
    let (v, u) = solve_linear(&(&a_t * n2), &(-(&c_t * n1)), &rhs)?;
    Ok(mat2(a_t.clone(), b + n1 * u, c_t, d + n2 * v))
}

/// `(A, D)` units modulo `(n1, n2)`.
fn case_three(a_in: &BigInt, b: &BigInt, n1: &BigInt, c: &BigInt, d: &BigInt, n2: &BigInt) -> Result<IntMatrix> {
    // (I) p1 + p2 = 1 with p1 in I_1 and p2 in (A)I_2, p1 nonzero
    let (mut x, mut y) = solve_linear(n1, &(a_in * n2), &BigInt::one())?;
    if x.is_zero() {
        x += a_in * n2;
        y -= n1;
    }
    let p1 = n1 * &x;
    let p2 = a_in * n2 * &y;
    let p1_sq = &p1 * &p1;
    let (r, s) = solve_linear(&p1_sq, &p2, &(BigInt::one() - d))?;
    let d1 = d + &p2 * &s;
    debug_assert_eq!(&d1 + &p1_sq * &r, BigInt::one());

    // (II) A E ≡ 1 mod p1^2 and E ≡ 1 mod D1
    let e = if d1.is_zero() {
        BigInt::one()
    } else {
        let a_inv = inverse_mod(a_in, &p1_sq)?.value().clone();
        crt_solve(&[(a_inv, p1_sq.clone()), (BigInt::one(), d1.abs())])?.value().clone()
    };

    // (III) p1 B̃ + D̃ = E
    let (y3, x3) = solve_linear(&p1_sq, &(&p2 * &e), &(&e - &p1 * b - &d1))?;
    let b_t = b + &p1 * y3;
    let d_t = &d1 + &p2 * &e * x3;

    // (IV) w D̃ p1 + p2'' = 1 with p2'' in I_2
    let (w, t) = solve_linear(&d_t, n2, &BigInt::one())?;
    let p2_prime = n2 * t;
    let p2_pp = &w * &d_t * &p2 + &p2_prime * &p1 + &p2_prime * &p2;

    // (V) D̃ a - B̃ p2'' v = 1 + B̃ C
    let (a, v_neg) = solve_linear(&d_t, &(&b_t * &p2_pp), &(BigInt::one() + &b_t * c))?;
    let v = -v_neg;

    // (VI), (VII) A ≡ a + B̃ p2'' z0 mod p1
    let diff = a_in - &a;
    let (g, _, e2) = egcd(&p1, &b_t);
    if !(&diff % &g).is_zero() {
        return Err(Error::VerificationFailed("A and a disagree modulo (p1) + (B̃)".into()));
    }
    let r2 = e2 * (&diff / &g);
    let modulus = p1.abs();
    let z0 = (r2 * inverse_mod(&p2_pp, &modulus)?.value()).mod_floor(&modulus);

    // (VIII)
    let top_left = &a + &b_t * &p2_pp * &z0;
    let bottom_left = c + &p2_pp * (v + &d_t * &z0);
    Ok(mat2(top_left, b_t, bottom_left, d_t))
}

/// Apply a construction to `(B, -A, D, -C)` and swap the columns back.
fn swapped(
    f: fn(&BigInt, &BigInt, &BigInt, &BigInt, &BigInt, &BigInt) -> Result<IntMatrix>,
    a: &BigInt,
    b: &BigInt,
    n1: &BigInt,
    c: &BigInt,
    d: &BigInt,
    n2: &BigInt,
) -> Result<IntMatrix> {
    let m = f(b, &-a, n1, d, &-c, n2)?;
    let [r0, r1] = [m.row(0), m.row(1)];
    Ok(mat2(-&r0[1], r0[0].clone(), -&r1[1], r1[0].clone()))
}

/// A determinant-one matrix `(a, b; c, d)` with `a ≡ A`, `b ≡ B` modulo `I_1`
/// and `c ≡ C`, `d ≡ D` modulo `I_2`.
///
/// Requires one of `A, B` to be a unit modulo `I_1` and one of `C, D` a unit
/// modulo `I_2`. The four cases are tried in order: `(A, C)`, `(B, D)`,
/// `(A, D)`, `(B, C)`.
pub fn sl2_prescribed(a: &BigInt, b: &BigInt, i1: &Ideal, c: &BigInt, d: &BigInt, i2: &Ideal) -> Result<IntMatrix> {
    if !i1.is_comaximal_with(i2) {
        return Err(Error::PreconditionFailed(format!("{i1} and {i2} are not co-maximal")));
    }
    let (ua, ub) = (is_unit_mod(a, i1), is_unit_mod(b, i1));
    let (uc, ud) = (is_unit_mod(c, i2), is_unit_mod(d, i2));
    if !(ua || ub) || !(uc || ud) {
        return Err(Error::PreconditionFailed(format!(
            "need a unit among ({a}, {b}) modulo {i1} and among ({c}, {d}) modulo {i2}"
        )));
    }
    let (n1, n2) = (i1.generator_big(), i2.generator_big());
    let m = if ua && uc {
        case_one(a, b, &n1, c, d, &n2)?
    } else if ub && ud {
        swapped(case_one, a, b, &n1, c, d, &n2)?
    } else if ua && ud {
        case_three(a, b, &n1, c, d, &n2)?
    } else {
        swapped(case_three, a, b, &n1, c, d, &n2)?
    };
    let expected = mat2(a.clone(), b.clone(), c.clone(), d.clone());
    let rows_ok = (0..2).all(|j| {
        (m.get(0, j) - expected.get(0, j)).mod_floor(&n1).is_zero() && (m.get(1, j) - expected.get(1, j)).mod_floor(&n2).is_zero()
    });
    if !m.is_special_linear() || !rows_ok {
        return Err(Error::VerificationFailed(format!("constructed {m} does not meet the congruences")));
    }
    Ok(m)
}

/// A determinant-one matrix whose top row lies in `p1` and bottom row in `p2`,
/// for one-dimensional classes with arbitrary exponents.
pub fn sl2_lift(p1: &ProjPoint, p2: &ProjPoint) -> Result<IntMatrix> {
    if p1.dim() != 1 || p2.dim() != 1 {
        return Err(Error::InvalidInput("both classes must be one-dimensional".into()));
    }
    let sys = RowTargetSystem::new(vec![p1.clone(), p2.clone()])?;
    let (i1, i2) = (*p1.ideal(), *p2.ideal());
    let mut m = sys.representatives()?;
    let mut trace = ColumnOpTrace::new(2);

    if i1.is_proper() {
        // a becomes a unit modulo I_1, then e = b + f a lands in I_1
        let shift = usc_shift(m.row(0), &i1)?;
        trace.apply(&mut m, 1, 0, &shift.witnesses[0]);
        let n1 = i1.generator_big();
        let f = -(inverse_mod(m.get(0, 0), &n1)?.value() * m.get(0, 1)).mod_floor(&n1);
        trace.apply(&mut m, 0, 1, &f);
    }
    if i2.is_proper() {
        // c becomes a unit modulo I_2 through multiples of e in I_1
        let x = bring_unit(m.row(1), 0, &i2, &i1)?;
        trace.apply(&mut m, 1, 0, &x[1]);
    }

    let y = sl2_prescribed(m.get(0, 0), m.get(0, 1), &i1, m.get(1, 0), m.get(1, 1), &i2)?;
    let x = y.mul(trace.inverse())?;
    sys.verify(&x)?;
    Ok(x)
}
