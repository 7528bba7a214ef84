//! Argument syntax: points `[a0:a1:...:ak]@n`, exponent lists `1,2` and
//! exponent matrices `1,2;2,1`.

use std::str::FromStr;

use genproj_core::projspace::{ExponentVector, ProjPoint};
use genproj_core::{Error, Ideal, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

/// A point as typed: coordinates (absent for `[*]`) and the ideal generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointArg {
    pub coords: Option<Vec<BigInt>>,
    pub modulus: BigInt,
}

impl FromStr for PointArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let (body, modulus) = s.rsplit_once('@').ok_or_else(|| format!("expected [a0:...:ak]@n, got {s:?}"))?;
        let modulus = modulus.trim().parse::<BigInt>().map_err(|e| format!("bad modulus in {s:?}: {e}"))?;
        let inner = body
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| format!("coordinates must be bracketed, got {body:?}"))?;
        if inner.trim() == "*" {
            return Ok(PointArg { coords: None, modulus });
        }
        let coords = inner
            .split(':')
            .map(|c| c.trim().parse::<BigInt>().map_err(|e| format!("bad coordinate {c:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(PointArg { coords: Some(coords), modulus })
    }
}

impl PointArg {
    pub fn ideal(&self) -> Result<Ideal> {
        ideal_from(&self.modulus)
    }

    pub fn to_point(&self, exponents: &ExponentVector) -> Result<ProjPoint> {
        let ideal = self.ideal()?;
        if let Some(c) = &self.coords {
            if c.len() != exponents.len() {
                return Err(Error::InvalidInput(format!("{} coordinates but {} exponents", c.len(), exponents.len())));
            }
        }
        match (&self.coords, ideal.is_unit()) {
            (_, true) => Ok(ProjPoint::singleton(exponents.clone())),
            (None, false) => Err(Error::InvalidInput(format!("[*] is only allowed over @1, not {ideal}"))),
            (Some(c), false) => ProjPoint::from_residues(c, ideal, exponents.clone()),
        }
    }

    pub fn width(&self) -> Option<usize> {
        self.coords.as_ref().map(Vec::len)
    }
}

/// The ideal generated by `n`; the sign is dropped.
pub fn ideal_from(n: &BigInt) -> Result<Ideal> {
    let g = n.abs().to_u64().ok_or_else(|| Error::TooLarge(format!("generator {n} does not fit in 64 bits")))?;
    Ideal::new(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpList(pub Vec<u32>);

impl FromStr for ExpList {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let v = s
            .split(',')
            .map(|e| e.trim().parse::<u32>().map_err(|err| format!("bad exponent {e:?}: {err}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if v.contains(&0) {
            return Err("exponents must be positive".into());
        }
        Ok(ExpList(v))
    }
}

impl ExpList {
    pub fn vector(&self) -> Result<ExponentVector> {
        ExponentVector::new(self.0.clone())
    }
}

/// Rows separated by `;`, entries by `,`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpMatrix(pub Vec<ExpList>);

impl FromStr for ExpMatrix {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.split(';').map(ExpList::from_str).collect::<std::result::Result<Vec<_>, _>>().map(ExpMatrix)
    }
}

/// Comma-separated list of anything parseable, e.g. `3,5` or `1,0,2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct List<T>(pub Vec<T>);

impl<T: FromStr> FromStr for List<T>
where
    T::Err: std::fmt::Display,
{
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.split(',')
            .map(|e| e.trim().parse::<T>().map_err(|err| format!("bad entry {e:?}: {err}")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(List)
    }
}
