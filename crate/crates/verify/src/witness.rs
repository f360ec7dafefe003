use std::f64::consts::LN_2;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use traceforge_core::linalg::interchange::MatrixJson;
use traceforge_core::CMatrix;

#[derive(Clone, Debug, PartialEq)]
pub enum WitnessValue {
    Matrix(CMatrix),
    Scalar(f64),
    /// An entropy-valued scalar; rescaled when reports are converted to bits.
    Entropy(f64),
    Dims(Vec<usize>),
    Text(String),
}

/// Named matrices and scalars that reproduce a trial, in insertion order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Witness(Vec<(String, WitnessValue)>);

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn matrix(mut self, name: &str, m: &CMatrix) -> Self {
        self.0.push((name.into(), WitnessValue::Matrix(m.clone())));
        self
    }

    pub fn scalar(mut self, name: &str, v: f64) -> Self {
        self.0.push((name.into(), WitnessValue::Scalar(v)));
        self
    }

    pub fn entropy(mut self, name: &str, v: f64) -> Self {
        self.0.push((name.into(), WitnessValue::Entropy(v)));
        self
    }

    pub fn dims(mut self, name: &str, d: &[usize]) -> Self {
        self.0.push((name.into(), WitnessValue::Dims(d.to_vec())));
        self
    }

    pub fn text(mut self, name: &str, s: impl Into<String>) -> Self {
        self.0.push((name.into(), WitnessValue::Text(s.into())));
        self
    }

    pub fn extend(mut self, other: Witness) -> Self {
        self.0.extend(other.0);
        self
    }

    pub fn entries(&self) -> &[(String, WitnessValue)] {
        &self.0
    }

    pub fn get(&self, name: &str) -> Option<&WitnessValue> {
        self.0.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn get_matrix(&self, name: &str) -> Option<&CMatrix> {
        match self.get(name) {
            Some(WitnessValue::Matrix(m)) => Some(m),
            _ => None,
        }
    }

    pub fn get_scalar(&self, name: &str) -> Option<f64> {
        match self.get(name) {
            Some(WitnessValue::Scalar(v)) | Some(WitnessValue::Entropy(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn to_bits(&mut self) {
        for (_, v) in &mut self.0 {
            if let WitnessValue::Entropy(x) = v {
                *x /= LN_2;
            }
        }
    }
}

/// Non-finite scalars become strings so the document stays valid JSON.
fn scalar_value(x: f64) -> serde_json::Value {
    if x.is_finite() {
        serde_json::Value::from(x)
    } else {
        serde_json::Value::from(x.to_string())
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            match v {
                WitnessValue::Matrix(m) => map.serialize_entry(k, &MatrixJson(m.clone()))?,
                WitnessValue::Scalar(x) | WitnessValue::Entropy(x) => map.serialize_entry(k, &scalar_value(*x))?,
                WitnessValue::Dims(d) => map.serialize_entry(k, d)?,
                WitnessValue::Text(t) => map.serialize_entry(k, t)?,
            }
        }
        map.end()
    }
}
