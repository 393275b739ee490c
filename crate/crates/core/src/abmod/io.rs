//! JSON representations: rings as `"Z"`, `"Q"` or `{"Fp": p}`, groups as
//! `{"ring", "rank", "torsion"}`, matrices as row-major arrays.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::group::FgAbGroup;
use super::matrix::Matrix;
use super::ring::{big, Ring, Scalar};
use super::AbError;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RingRepr {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        p: u64,
    },
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Ring::Integers => RingRepr::Name("Z".into()),
            Ring::Rationals => RingRepr::Name("Q".into()),
            Ring::PrimeField(p) => RingRepr::Prime { p: *p },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RingRepr::deserialize(d)? {
            RingRepr::Name(n) if n == "Z" => Ok(Ring::Integers),
            RingRepr::Name(n) if n == "Q" => Ok(Ring::Rationals),
            RingRepr::Name(n) => parse_ring(&n).map_err(D::Error::custom),
            RingRepr::Prime { p } => Ring::prime_field(p).map_err(D::Error::custom),
        }
    }
}

/// Accepts `Z`, `Q`, `F5`, `Fp5` and `GF5`.
pub fn parse_ring(s: &str) -> Result<Ring, AbError> {
    match s {
        "Z" => return Ok(Ring::Integers),
        "Q" => return Ok(Ring::Rationals),
        _ => {}
    }
    let digits = s
        .trim_start_matches("GF")
        .trim_start_matches("Fp")
        .trim_start_matches('F');
    let p: u64 = digits
        .parse()
        .map_err(|_| AbError::Malformed(format!("unknown ring {s:?}")))?;
    Ring::prime_field(p)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct GroupRepr {
    ring: Ring,
    rank: usize,
    #[serde(default, with = "bigint_list")]
    torsion: Vec<BigInt>,
}

impl TryFrom<GroupRepr> for FgAbGroup {
    type Error = AbError;

    fn try_from(r: GroupRepr) -> Result<Self, AbError> {
        FgAbGroup::new(r.ring, r.rank, r.torsion)
    }
}

impl From<FgAbGroup> for GroupRepr {
    fn from(g: FgAbGroup) -> Self {
        GroupRepr {
            ring: g.ring(),
            rank: g.free_rank(),
            torsion: g.torsion().to_vec(),
        }
    }
}

pub(crate) mod bigint_list {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};
    use serde_json::Value;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| match i64::try_from(x) {
            Ok(i) => Value::from(i),
            Err(_) => Value::String(x.to_string()),
        }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Value>::deserialize(d)?
            .into_iter()
            .map(|v| match v {
                Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom("expected an integer")),
                Value::String(s) => s.parse().map_err(D::Error::custom),
                _ => Err(D::Error::custom("expected an integer")),
            })
            .collect()
    }
}

/// Integers as JSON numbers, other rationals as `"p/q"` strings.
pub fn scalar_to_json(x: &Scalar) -> Value {
    if x.denom().is_one() {
        let n = x.numer();
        match i64::try_from(n) {
            Ok(v) => Value::from(v),
            Err(_) => Value::String(n.to_string()),
        }
    } else {
        Value::String(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar, AbError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| big(BigInt::from(i)))
            .ok_or_else(|| AbError::Malformed(format!("non-integer number {n}"))),
        Value::String(s) => parse_scalar(s),
        other => Err(AbError::Malformed(format!(
            "expected a number, found {other}"
        ))),
    }
}

fn parse_scalar(s: &str) -> Result<Scalar, AbError> {
    let bad = || AbError::Malformed(format!("bad scalar {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(n, d))
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        m.to_dense()
            .iter()
            .map(|row| Value::Array(row.iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

/// Parses a row-major matrix; `ncols` is needed when there are no rows.
pub fn matrix_from_json(v: &Value, nrows: usize, ncols: usize) -> Result<Matrix, AbError> {
    let rows = v
        .as_array()
        .ok_or_else(|| AbError::Malformed("matrix must be an array of rows".into()))?;
    let mut dense = Vec::with_capacity(rows.len());
    for r in rows {
        let r = r
            .as_array()
            .ok_or_else(|| AbError::Malformed("matrix row must be an array".into()))?;
        dense.push(
            r.iter()
                .map(scalar_from_json)
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if dense.len() != nrows || dense.iter().any(|r| r.len() != ncols) {
        let found = (dense.len(), dense.first().map_or(0, Vec::len));
        return Err(AbError::Shape {
            expected: (nrows, ncols),
            found,
        });
    }
    Ok(Matrix::from_dense(dense, ncols))
}
