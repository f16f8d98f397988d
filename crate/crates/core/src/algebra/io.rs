//! JSON documents for structure constants and subspaces.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::algebra::lie::LieAlgebra;
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A scalar as a plain number (real) or a `[re, im]` pair (complex).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonScalar {
    Real(f64),
    Complex([f64; 2]),
}

impl JsonScalar {
    pub fn from_scalar<S: Scalar>(x: S) -> Self {
        let (re, im) = x.parts();
        match S::FIELD {
            Field::Real => JsonScalar::Real(re),
            Field::Complex => JsonScalar::Complex([re, im]),
        }
    }

    pub fn to_scalar<S: Scalar>(self) -> Result<S> {
        let (re, im) = match self {
            JsonScalar::Real(x) => (x, 0.0),
            JsonScalar::Complex([re, im]) => (re, im),
        };
        S::from_parts(re, im)
            .ok_or_else(|| Error::Json(format!("complex value [{re}, {im}] in a real document")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub dim: usize,
    pub field: Field,
    pub labels: Vec<String>,
    #[serde(default)]
    pub exact: bool,
    /// Nonzero constants as `[i, j, k, value]`.
    pub triples: Vec<(usize, usize, usize, JsonScalar)>,
}

impl AlgebraDocument {
    pub fn from_algebra<S: Scalar>(a: &LieAlgebra<S>) -> Self {
        Self {
            dim: a.dim(),
            field: S::FIELD,
            labels: a.labels().to_vec(),
            exact: a.is_exact(),
            triples: a
                .triples()
                .into_iter()
                .map(|(i, j, k, v)| (i, j, k, JsonScalar::from_scalar(v)))
                .collect(),
        }
    }

    pub fn to_algebra<S: Scalar>(&self) -> Result<LieAlgebra<S>> {
        if self.field != S::FIELD {
            return Err(Error::Json(format!("document field {:?} does not match", self.field)));
        }
        let triples = self
            .triples
            .iter()
            .map(|&(i, j, k, v)| Ok((i, j, k, v.to_scalar::<S>()?)))
            .collect::<Result<Vec<_>>>()?;
        LieAlgebra::from_triples(self.dim, self.labels.clone(), self.exact, &triples)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubspaceDocument {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<JsonScalar>>,
}

impl SubspaceDocument {
    pub fn from_subspace<S: Scalar>(s: &Subspace<S>) -> Self {
        Self {
            ambient_dim: s.ambient_dim(),
            basis: s
                .basis_vectors()
                .iter()
                .map(|v| v.iter().map(|x| JsonScalar::from_scalar(*x)).collect())
                .collect(),
        }
    }

    pub fn to_subspace<S: Scalar>(&self) -> Result<Subspace<S>> {
        let vectors = self
            .basis
            .iter()
            .map(|v| {
                let xs = v.iter().map(|x| x.to_scalar::<S>()).collect::<Result<Vec<S>>>()?;
                Ok(DVector::from_vec(xs))
            })
            .collect::<Result<Vec<_>>>()?;
        Subspace::new(self.ambient_dim, &vectors)
    }
}
