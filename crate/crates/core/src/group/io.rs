//! JSON model definitions.

use serde::{Deserialize, Serialize};

use crate::algebra::io::AlgebraDocument;
use crate::algebra::{double_from_bialgebra, LieBialgebra, Subspace};
use crate::error::{Error, Result};
use crate::group::factor::FactorizationOracle;
use crate::group::model::{Mat, MatrixGroupModel, ModelParts, PairingKind};
use crate::group::predicate::Predicate;
use crate::scalar::{real_from_f64, real_to_f64, Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleName {
    None,
    IwasawaSl2c,
    Triangular,
}

impl From<Option<FactorizationOracle>> for OracleName {
    fn from(o: Option<FactorizationOracle>) -> Self {
        match o {
            None => OracleName::None,
            Some(FactorizationOracle::IwasawaSlnc) => OracleName::IwasawaSl2c,
            Some(FactorizationOracle::BlockTriangular) => OracleName::Triangular,
        }
    }
}

impl From<OracleName> for Option<FactorizationOracle> {
    fn from(o: OracleName) -> Self {
        match o {
            OracleName::None => None,
            OracleName::IwasawaSl2c => Some(FactorizationOracle::IwasawaSlnc),
            OracleName::Triangular => Some(FactorizationOracle::BlockTriangular),
        }
    }
}

/// Subalgebra given by coordinate axes of 𝔡, plus the group predicate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubgroupDocument {
    pub indices: Vec<usize>,
    pub predicate: Predicate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub name: String,
    pub size: usize,
    pub field: Field,
    pub pairing: PairingKind,
    /// Row-major entries as `[re, im]`.
    pub basis: Vec<Vec<[f64; 2]>>,
    pub g_algebra: AlgebraDocument,
    pub gstar_algebra: AlgebraDocument,
    pub d_predicate: Predicate,
    pub g: SubgroupDocument,
    pub gstar: SubgroupDocument,
    pub l: SubgroupDocument,
    #[serde(default)]
    pub h: Option<SubgroupDocument>,
    pub oracle: OracleName,
}

/// Axis indices of a subspace spanned by standard basis vectors.
fn axes<S: Scalar>(s: &Subspace<S>) -> Result<Vec<usize>> {
    s.basis_vectors()
        .iter()
        .map(|v| {
            let nonzero: Vec<usize> = (0..v.len()).filter(|&i| v[i] != S::zero()).collect();
            match nonzero.as_slice() {
                [i] if v[*i] == S::one() => Ok(*i),
                _ => Err(Error::Unsupported("serializing a non-coordinate subalgebra")),
            }
        })
        .collect()
}

impl ModelDocument {
    pub fn from_model<S: Scalar>(m: &MatrixGroupModel<S>) -> Result<Self> {
        let sub = |s: &crate::group::Subgroup<S>| -> Result<SubgroupDocument> {
            Ok(SubgroupDocument { indices: axes(&s.algebra)?, predicate: s.predicate })
        };
        let g = m.subgroup(crate::group::Tag::G).expect("G");
        let gstar = m.subgroup(crate::group::Tag::GStar).expect("G*");
        Ok(Self {
            name: m.name().to_string(),
            size: m.size(),
            field: S::FIELD,
            pairing: m.pairing_kind(),
            basis: m
                .basis()
                .iter()
                .map(|b| {
                    b.transpose()
                        .iter()
                        .map(|z| [real_to_f64(z.re), real_to_f64(z.im)])
                        .collect()
                })
                .collect(),
            g_algebra: AlgebraDocument::from_algebra(m.double().g()),
            gstar_algebra: AlgebraDocument::from_algebra(m.double().gstar()),
            d_predicate: m.d_predicate(),
            g: sub(g)?,
            gstar: sub(gstar)?,
            l: sub(m.l())?,
            h: m.h().map(sub).transpose()?,
            oracle: m.oracle().into(),
        })
    }

    pub fn to_model<S: Scalar>(&self) -> Result<MatrixGroupModel<S>> {
        if self.field != S::FIELD {
            return Err(Error::Json(format!("document field {:?} does not match", self.field)));
        }
        let g = self.g_algebra.to_algebra::<S>()?;
        let dual = self.gstar_algebra.to_algebra::<S>()?;
        let double = double_from_bialgebra(&LieBialgebra::from_dual_bracket(g, &dual)?)?;
        let n = self.size;
        let basis = self
            .basis
            .iter()
            .map(|entries| {
                if entries.len() != n * n {
                    return Err(Error::DimensionMismatch { expected: n * n, got: entries.len() });
                }
                Ok(Mat::<S>::from_row_iterator(
                    n,
                    n,
                    entries.iter().map(|[re, im]| {
                        num_complex::Complex::new(real_from_f64(*re), real_from_f64(*im))
                    }),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let dim = double.dim();
        let model = MatrixGroupModel::new(ModelParts {
            name: self.name.clone(),
            double,
            basis,
            pairing: self.pairing,
            d_predicate: self.d_predicate,
            g_predicate: self.g.predicate,
            gstar_predicate: self.gstar.predicate,
            oracle: self.oracle.into(),
        })?;
        let expected_g: Vec<usize> = (0..dim / 2).collect();
        let expected_gstar: Vec<usize> = (dim / 2..dim).collect();
        if self.g.indices != expected_g || self.gstar.indices != expected_gstar {
            return Err(Error::Json("G and G* must be the two coordinate blocks".into()));
        }
        let h = match &self.h {
            Some(h) => Some((Subspace::coordinate(dim, &h.indices)?, h.predicate)),
            None => None,
        };
        model.with_lagrangian(Subspace::coordinate(dim, &self.l.indices)?, self.l.predicate, h)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::models;

    #[test]
    fn cp1_round_trip() {
        let m = models::cp1_bruhat::<f64>().unwrap();
        let doc = ModelDocument::from_model(&m).unwrap();
        let json = doc.to_json();
        assert!(json.contains("\"oracle\": \"iwasawa_sl2c\""));
        let back = ModelDocument::from_json(&json).unwrap().to_model::<f64>().unwrap();
        assert_eq!(back.basis(), m.basis());
        assert_eq!(back.double(), m.double());
        assert_eq!(back.l(), m.l());
        assert_eq!(back.h(), m.h());
    }

    #[test]
    fn trivial_round_trip_keeps_the_oracle() {
        let m = models::trivial_sl2_split::<f64>().unwrap();
        let back = ModelDocument::from_json(&ModelDocument::from_model(&m).unwrap().to_json())
            .unwrap()
            .to_model::<f64>()
            .unwrap();
        assert_eq!(back.oracle(), Some(FactorizationOracle::BlockTriangular));
        assert!(back.homomorphism_residual() < 1e-14);
    }

    #[test]
    fn field_mismatch_is_rejected() {
        let m = models::su2_iwasawa::<f64>().unwrap();
        let doc = ModelDocument::from_model(&m).unwrap();
        assert!(doc.to_model::<num_complex::Complex64>().is_err());
    }
}
