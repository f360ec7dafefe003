//! JSON interchange for matrices and multipartite states.
//!
//! A square matrix is `{"dim": n, "re": [[..]], "im": [[..]]}`; rectangular
//! matrices carry `"rows"` and `"cols"` instead of `"dim"`. Entries are written
//! with 17 significant digits so that a round trip is bit-exact.

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use super::{CMatrix, Complex, FactorDims};
use crate::{Error, Result};

/// Float serialized with 17 significant digits.
struct Digits17(f64);

impl Serialize for Digits17 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(serde::ser::Error::custom("non-finite matrix entry"));
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

struct Rows<'a>(&'a CMatrix, fn(&Complex) -> f64);

impl Serialize for Rows<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = self.0;
        let mut seq = s.serialize_seq(Some(m.nrows()))?;
        for i in 0..m.nrows() {
            let row: Vec<Digits17> = (0..m.ncols()).map(|j| Digits17((self.1)(&m[(i, j)]))).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Serde adapter for a complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixJson(pub CMatrix);

impl Serialize for MatrixJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = &self.0;
        let mut st = s.serialize_struct("Matrix", if m.is_square() { 3 } else { 4 })?;
        if m.is_square() {
            st.serialize_field("dim", &m.nrows())?;
        } else {
            st.serialize_field("rows", &m.nrows())?;
            st.serialize_field("cols", &m.ncols())?;
        }
        st.serialize_field("re", &Rows(m, |z| z.re))?;
        st.serialize_field("im", &Rows(m, |z| z.im))?;
        st.end()
    }
}

#[derive(Deserialize)]
struct RawMatrix {
    dim: Option<usize>,
    rows: Option<usize>,
    cols: Option<usize>,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

fn build(raw: RawMatrix) -> Result<CMatrix> {
    let (rows, cols) = match (raw.dim, raw.rows, raw.cols) {
        (Some(n), None, None) => (n, n),
        (None, Some(r), Some(c)) => (r, c),
        _ => return Err(Error::Format("give either \"dim\" or both \"rows\" and \"cols\"".into())),
    };
    let shape_ok = |v: &Vec<Vec<f64>>| v.len() == rows && v.iter().all(|r| r.len() == cols);
    if !shape_ok(&raw.re) || !shape_ok(&raw.im) {
        return Err(Error::Format(format!("entries do not match shape {rows}x{cols}")));
    }
    let m = CMatrix::from_fn(rows, cols, |i, j| Complex::new(raw.re[i][j], raw.im[i][j]));
    if !super::is_finite(&m) {
        return Err(Error::Format("non-finite entry".into()));
    }
    Ok(m)
}

impl<'de> Deserialize<'de> for MatrixJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMatrix::deserialize(d)?;
        build(raw).map(MatrixJson).map_err(serde::de::Error::custom)
    }
}

/// A matrix annotated with tensor factor dimensions: matrix fields plus `"dims"`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateJson {
    pub dims: FactorDims,
    pub matrix: CMatrix,
}

impl Serialize for StateJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("State", 4)?;
        st.serialize_field("dims", self.dims.as_slice())?;
        st.serialize_field("dim", &self.matrix.nrows())?;
        st.serialize_field("re", &Rows(&self.matrix, |z| z.re))?;
        st.serialize_field("im", &Rows(&self.matrix, |z| z.im))?;
        st.end()
    }
}

#[derive(Deserialize)]
struct RawState {
    dims: Vec<usize>,
    dim: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl<'de> Deserialize<'de> for StateJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawState::deserialize(d)?;
        let parse = || -> Result<StateJson> {
            let dims = FactorDims::new(raw.dims)?;
            dims.check(raw.dim)?;
            let matrix = build(RawMatrix { dim: Some(raw.dim), rows: None, cols: None, re: raw.re, im: raw.im })?;
            Ok(StateJson { dims, matrix })
        };
        parse().map_err(serde::de::Error::custom)
    }
}

pub fn matrix_to_json(m: &CMatrix) -> Result<String> {
    Ok(serde_json::to_string(&MatrixJson(m.clone()))?)
}

pub fn matrix_from_json(s: &str) -> Result<CMatrix> {
    Ok(serde_json::from_str::<MatrixJson>(s)?.0)
}
