//! JSON file format for hypermatrices:
//! `{"dims":[n1,...,nd],"field":"rational"|"f64","data":[...]}` with data in
//! lexicographic order. Rationals are reduced `"p/q"` strings (`"p"` when the
//! denominator is 1); floats are JSON numbers.

use std::str::FromStr;

use num::{BigInt, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{HymError, Result};
use crate::field::{Rational, Scalar};
use crate::hypermatrix::Hypermatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Rational,
    F64,
}

impl FromStr for FieldKind {
    type Err = HymError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(FieldKind::Rational),
            "f64" => Ok(FieldKind::F64),
            other => Err(HymError::Parse(format!("unknown field `{other}`"))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct HypermatrixFile {
    dims: Vec<usize>,
    field: FieldKind,
    data: Vec<Value>,
}

/// Scalars that can appear in the file format.
pub trait FileScalar: Scalar {
    const FIELD: FieldKind;
    fn to_value(&self) -> Value;
    fn from_value(v: &Value) -> Result<Self>;
    fn lift_rational(q: &Rational) -> Result<Self>;
    fn lift_f64(x: f64) -> Result<Self>;
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || HymError::Parse(format!("`{s}` is not a rational"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(HymError::Parse(format!("`{s}` has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

impl FileScalar for Rational {
    const FIELD: FieldKind = FieldKind::Rational;

    fn to_value(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_value(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s.trim()),
            Value::Number(n) if n.is_i64() => Ok(<Rational as Scalar>::from_i64(n.as_i64().expect("checked"))),
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| HymError::Parse(format!("{n} is not representable")))
                .and_then(<Rational as FileScalar>::lift_f64),
            other => Err(HymError::Parse(format!("{other} is not a rational"))),
        }
    }

    fn lift_rational(q: &Rational) -> Result<Self> {
        Ok(q.clone())
    }

    fn lift_f64(x: f64) -> Result<Self> {
        Rational::from_float(x).ok_or_else(|| HymError::Parse(format!("{x} is not finite")))
    }
}

impl FileScalar for f64 {
    const FIELD: FieldKind = FieldKind::F64;

    fn to_value(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_value(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| HymError::Parse(format!("{n} is not an f64"))),
            Value::String(s) => parse_rational(s.trim()).and_then(|q| f64::lift_rational(&q)),
            other => Err(HymError::Parse(format!("{other} is not a number"))),
        }
    }

    fn lift_rational(q: &Rational) -> Result<Self> {
        q.to_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| HymError::Parse(format!("{q} does not convert to f64")))
    }

    fn lift_f64(x: f64) -> Result<Self> {
        Ok(x)
    }
}

/// A hypermatrix in whichever field its file declared.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyHypermatrix {
    Rational(Hypermatrix<Rational>),
    F64(Hypermatrix<f64>),
}

impl AnyHypermatrix {
    pub fn field(&self) -> FieldKind {
        match self {
            AnyHypermatrix::Rational(_) => FieldKind::Rational,
            AnyHypermatrix::F64(_) => FieldKind::F64,
        }
    }

    pub fn dims(&self) -> &[usize] {
        match self {
            AnyHypermatrix::Rational(h) => h.dims(),
            AnyHypermatrix::F64(h) => h.dims(),
        }
    }

    /// Converts into the requested field; rationals convert to the nearest
    /// float and floats convert exactly to rationals.
    pub fn into_field<T: FileScalar>(self) -> Result<Hypermatrix<T>> {
        match self {
            AnyHypermatrix::Rational(h) => convert(h, T::lift_rational),
            AnyHypermatrix::F64(h) => convert(h, |x| T::lift_f64(*x)),
        }
    }
}

fn convert<S: Scalar, T: Scalar>(h: Hypermatrix<S>, f: impl Fn(&S) -> Result<T>) -> Result<Hypermatrix<T>> {
    let data = h.data().iter().map(f).collect::<Result<Vec<_>>>()?;
    Hypermatrix::from_dims(h.dims(), data)
}

fn decode<T: FileScalar>(file: &HypermatrixFile) -> Result<Hypermatrix<T>> {
    let data = file.data.iter().map(T::from_value).collect::<Result<Vec<_>>>()?;
    Hypermatrix::from_dims(&file.dims, data)
}

pub fn parse_hypermatrix(json: &str) -> Result<AnyHypermatrix> {
    let file: HypermatrixFile =
        serde_json::from_str(json).map_err(|e| HymError::Parse(e.to_string()))?;
    match file.field {
        FieldKind::Rational => decode(&file).map(AnyHypermatrix::Rational),
        FieldKind::F64 => decode(&file).map(AnyHypermatrix::F64),
    }
}

pub fn to_value<T: FileScalar>(h: &Hypermatrix<T>) -> Value {
    serde_json::to_value(HypermatrixFile {
        dims: h.dims().to_vec(),
        field: T::FIELD,
        data: h.data().iter().map(FileScalar::to_value).collect(),
    })
    .expect("plain data serializes")
}

pub fn to_json<T: FileScalar>(h: &Hypermatrix<T>) -> String {
    to_value(h).to_string()
}

pub fn any_to_json(h: &AnyHypermatrix) -> String {
    match h {
        AnyHypermatrix::Rational(h) => to_json(h),
        AnyHypermatrix::F64(h) => to_json(h),
    }
}
