//! JSON input formats and the canonical encoding of field data.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::ff::{Elem, Field, Matrix, Subspace};
use crate::liealg::LieAlgebra;
use crate::rep::Representation;

/// Integer coefficients of a polynomial in the field generator, lowest degree first.
pub type Coeffs = Vec<i64>;

/// `[i, j, k, c]`: the coefficient of `b_k` in `[b_i, b_j]` is `c`.
pub type BracketEntry = (usize, usize, usize, Coeffs);

/// A Lie algebra given by sparse structure constants over `GF(p^degree)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub characteristic: u32,
    #[serde(default = "one")]
    pub degree: u32,
    pub dim: usize,
    #[serde(default)]
    pub bracket: Vec<BracketEntry>,
    /// `b_i^[p]` for each basis vector.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmap: Option<Vec<Vec<Coeffs>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

fn one() -> u32 {
    1
}

/// An algebra with its optional p-map, as decoded from an [`AlgebraFile`].
#[derive(Clone, Debug)]
pub struct Input {
    pub algebra: LieAlgebra,
    pub pmap: Option<Vec<Vec<Elem>>>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<AlgebraFile> {
        Ok(serde_json::from_str(text)?)
    }

    /// Builds and validates the algebra. Entries with `i > j` are read as `[b_j, b_i] = -c`.
    pub fn decode(&self, caps: &Caps) -> Result<Input> {
        let f = Field::with_cap(self.characteristic, self.degree, caps.field_size)?;
        let n = self.dim;
        let mut constants = vec![Elem::ZERO; n * n * n];
        let mut set = vec![false; n * n * n];
        for (i, j, k, c) in &self.bracket {
            let (i, j, k) = (*i, *j, *k);
            if i >= n || j >= n || k >= n {
                return Err(Error::InvalidInput(format!("bracket index out of range in [{i}, {j}, {k}]")));
            }
            let c = f.from_coeffs(c);
            if i == j {
                if !c.is_zero() {
                    return Err(Error::InvalidInput(format!("[b_{i}, b_{i}] must vanish")));
                }
                continue;
            }
            for (a, b, v) in [(i, j, c), (j, i, f.neg(c))] {
                let idx = (a * n + b) * n + k;
                if set[idx] && constants[idx] != v {
                    return Err(Error::InvalidInput(format!("conflicting entries for [b_{i}, b_{j}] at b_{k}")));
                }
                set[idx] = true;
                constants[idx] = v;
            }
        }
        let mut algebra = LieAlgebra::new(&f, n, constants)?;
        if let Err(v) = algebra.validate() {
            return Err(Error::InvalidInput(format!("structure constants fail {v:?}")));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != n {
                return Err(Error::InvalidInput(format!("expected {n} labels, got {}", labels.len())));
            }
            algebra.set_labels(Some(labels.clone()));
        }
        let pmap = match &self.pmap {
            None => None,
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidInput(format!("pmap must list {n} vectors of length {n}")));
                }
                Some(rows.iter().map(|r| r.iter().map(|c| f.from_coeffs(c)).collect()).collect())
            }
        };
        Ok(Input { algebra, pmap })
    }

    /// Canonical file for an algebra: entries with `i < j` and nonzero coefficient, sorted.
    pub fn encode(algebra: &LieAlgebra, pmap: Option<&[Vec<Elem>]>) -> AlgebraFile {
        let f = algebra.field();
        let n = algebra.dim();
        let mut bracket = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = algebra.constant(i, j, k);
                    if !c.is_zero() {
                        bracket.push((i, j, k, int_coeffs(f, c)));
                    }
                }
            }
        }
        AlgebraFile {
            characteristic: f.p(),
            degree: f.degree(),
            dim: n,
            bracket,
            pmap: pmap.map(|rows| rows.iter().map(|r| r.iter().map(|&e| int_coeffs(f, e)).collect()).collect()),
            labels: algebra.labels().map(|l| l.to_vec()),
        }
    }

    /// Canonical form: decoded and re-encoded.
    pub fn canonical(&self, caps: &Caps) -> Result<AlgebraFile> {
        let input = self.decode(caps)?;
        Ok(AlgebraFile::encode(&input.algebra, input.pmap.as_deref()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&serde_json::to_value(self).expect("serializable")).expect("serializable")
    }
}

/// A module given by the matrices of the basis of `L` over `GF(p^degree)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub characteristic: u32,
    pub degree: u32,
    /// Informational; the canonical modulus is always recomputed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub dim: usize,
    /// One matrix per basis vector, row-major, entries as coefficient lists.
    pub matrices: Vec<Vec<Vec<Coeffs>>>,
}

impl ModuleFile {
    /// Reads either a bare module file or a report whose `results.module` holds one.
    pub fn parse(text: &str) -> Result<ModuleFile> {
        let value: Value = serde_json::from_str(text)?;
        let inner = value.pointer("/results/module").cloned().unwrap_or(value);
        Ok(serde_json::from_value(inner)?)
    }

    pub fn decode(&self, caps: &Caps) -> Result<Representation> {
        let f = Field::with_cap(self.characteristic, self.degree, caps.field_size)?;
        if let Some(m) = &self.modulus {
            if m.as_slice() != f.modulus() {
                return Err(Error::InvalidInput(format!("modulus {m:?} is not the canonical {:?}", f.modulus())));
            }
        }
        let d = self.dim;
        let mut mats = Vec::with_capacity(self.matrices.len());
        for (g, rows) in self.matrices.iter().enumerate() {
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(Error::InvalidInput(format!("matrix {g} is not {d} x {d}")));
            }
            mats.push(Matrix::from_fn(&f, d, d, |i, j| f.from_coeffs(&rows[i][j])));
        }
        Ok(Representation::new(&f, d, mats))
    }

    pub fn encode(v: &Representation) -> ModuleFile {
        let f = v.field();
        ModuleFile {
            characteristic: f.p(),
            degree: f.degree(),
            modulus: Some(f.modulus().to_vec()),
            dim: v.dim(),
            matrices: v
                .matrices()
                .iter()
                .map(|m| (0..m.rows()).map(|i| m.row(i).iter().map(|&e| int_coeffs(f, e)).collect()).collect())
                .collect(),
        }
    }
}

fn int_coeffs(f: &Field, e: Elem) -> Coeffs {
    f.coeffs(e).into_iter().map(i64::from).collect()
}

/// `{p, degree, modulus}` with the modulus low degree first and its leading 1 included.
pub fn field_json(f: &Field) -> Value {
    json!({ "p": f.p(), "degree": f.degree(), "modulus": f.modulus() })
}

/// Coefficient vector of length `degree`.
pub fn elem_json(f: &Field, e: Elem) -> Value {
    json!(f.coeffs(e))
}

pub fn vector_json(f: &Field, v: &[Elem]) -> Value {
    Value::Array(v.iter().map(|&e| elem_json(f, e)).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_json(m.field(), m.row(i))).collect())
}

/// RREF basis rows.
pub fn subspace_json(s: &Subspace) -> Value {
    Value::Array(s.vectors().iter().map(|v| vector_json(s.field(), v)).collect())
}
