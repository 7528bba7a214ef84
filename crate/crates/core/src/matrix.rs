//! Square integer matrices and tracked elementary column operations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A square matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInput("matrix must have at least one row".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!("expected a square matrix, found a row of length {} in a {n}-row matrix", bad.len())));
        }
        Ok(IntMatrix { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        IntMatrix::new(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix::diagonal(&vec![BigInt::one(); n])
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { BigInt::zero() }).collect())
            .collect();
        IntMatrix { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.rows[i][j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        let n = self.size();
        if other.size() != n {
            return Err(Error::InvalidInput(format!("cannot multiply {n}x{n} by {0}x{0}", other.size())));
        }
        let rows = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|l| &self.rows[i][l] * &other.rows[l][j]).sum()).collect())
            .collect();
        Ok(IntMatrix { rows })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.size();
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_special_linear(&self) -> bool {
        self.det().is_one()
    }

    /// Entrywise reduction into `[0, n)`.
    pub fn reduce_mod(&self, n: &BigInt) -> IntMatrix {
        let rows = self.rows.iter().map(|r| r.iter().map(|v| v.mod_floor(n)).collect()).collect();
        IntMatrix { rows }
    }

    pub fn congruent_mod(&self, other: &IntMatrix, n: &BigInt) -> bool {
        self.size() == other.size()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a.iter().zip(b).all(|(x, y)| (x - y).mod_floor(n).is_zero()))
    }

    /// Column `target` += `factor` * column `source`.
    pub fn add_column_multiple(&mut self, source: usize, target: usize, factor: &BigInt) {
        for row in self.rows.iter_mut() {
            let delta = &row[source] * factor;
            row[target] += delta;
        }
    }

    /// Row `target` += `factor` * row `source`.
    pub fn add_row_multiple(&mut self, source: usize, target: usize, factor: &BigInt) {
        let delta: Vec<BigInt> = self.rows[source].iter().map(|v| v * factor).collect();
        for (v, d) in self.rows[target].iter_mut().zip(delta) {
            *v += d;
        }
    }

    /// Entries as decimal strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, ")")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let cells = Vec::<Vec<String>>::deserialize(deserializer)?;
        let rows = cells
            .into_iter()
            .map(|r| r.into_iter().map(|s| s.parse::<BigInt>().map_err(D::Error::custom)).collect())
            .collect::<std::result::Result<Vec<Vec<BigInt>>, _>>()?;
        IntMatrix::new(rows).map_err(D::Error::custom)
    }
}

/// Add `factor` times column `source` to column `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnOp {
    pub source: usize,
    pub target: usize,
    pub factor: BigInt,
}

/// A product `U` of elementary column operations, kept together with `U^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnOpTrace {
    ops: Vec<ColumnOp>,
    transform: IntMatrix,
    inverse: IntMatrix,
}

impl ColumnOpTrace {
    pub fn new(size: usize) -> Self {
        ColumnOpTrace { ops: Vec::new(), transform: IntMatrix::identity(size), inverse: IntMatrix::identity(size) }
    }

    pub fn ops(&self) -> &[ColumnOp] {
        &self.ops
    }

    pub fn transform(&self) -> &IntMatrix {
        &self.transform
    }

    pub fn inverse(&self) -> &IntMatrix {
        &self.inverse
    }

    /// Apply the operation to `a` and record it. Zero factors are skipped.
    pub fn apply(&mut self, a: &mut IntMatrix, source: usize, target: usize, factor: &BigInt) {
        assert_ne!(source, target, "column operation needs distinct columns");
        if factor.is_zero() {
            return;
        }
        a.add_column_multiple(source, target, factor);
        // U <- U E and U^{-1} <- E^{-1} U^{-1}, with E = I + factor * e_source e_target^T
        self.transform.add_column_multiple(source, target, factor);
        self.inverse.add_row_multiple(target, source, &-factor);
        self.ops.push(ColumnOp { source, target, factor: factor.clone() });
    }

    /// Rebuild `U` by replaying the recorded operations on the identity.
    pub fn replay(&self) -> IntMatrix {
        let mut u = IntMatrix::identity(self.transform.size());
        for op in &self.ops {
            u.add_column_multiple(op.source, op.target, &op.factor);
        }
        u
    }
}
