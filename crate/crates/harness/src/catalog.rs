//! Named example models and the lagrangian subalgebras studied on each.

use affine_dirac::algebra::{drinfeld_subalgebra, is_lagrangian_subalgebra, Subspace};
use affine_dirac::group::models;
use affine_dirac::{tol, Error, Model, Result};
use nalgebra::DMatrix;

/// `(H, Λ)` data of a Poisson homogeneous space `G/H`.
#[derive(Clone, Debug)]
pub struct Homogeneous {
    /// 𝔥 in 𝔤 coordinates.
    pub h: Subspace<f64>,
    /// `Λ` on `Ann(𝔥)` in the quotient frame.
    pub lambda: DMatrix<f64>,
}

/// One choice of `𝔩` on an entry.
#[derive(Clone, Copy)]
pub struct Variant {
    pub label: &'static str,
    /// `dim(𝔩 ∩ 𝔤)`.
    pub expected_meet: usize,
    pub build: fn() -> Result<Model>,
}

pub struct Entry {
    pub name: &'static str,
    pub description: &'static str,
    pub variants: Vec<Variant>,
}

/// An entry whose models have been built and checked.
pub struct LoadedEntry {
    pub name: &'static str,
    pub variants: Vec<(Variant, Model)>,
}

impl LoadedEntry {
    pub fn first(&self) -> &Model {
        &self.variants[0].1
    }

    /// `(H, Λ)` for a variant, read back from the model.
    pub fn homogeneous(model: &Model) -> Option<Homogeneous> {
        let h = model.h()?;
        let n = model.n();
        let vectors: Vec<_> = h.algebra.basis_vectors().iter().map(|x| x.rows(0, n).into_owned()).collect();
        let h = Subspace::span(n, &vectors);
        let m = n - h.dim();
        Some(Homogeneous { h, lambda: DMatrix::zeros(m, m) })
    }
}

fn su2_gstar() -> Result<Model> {
    models::su2_iwasawa()
}

fn su2_tn() -> Result<Model> {
    models::su2_torus_nilpotent()
}

fn cp1() -> Result<Model> {
    models::cp1_bruhat()
}

fn trivial() -> Result<Model> {
    models::trivial_sl2()
}

fn trivial_split() -> Result<Model> {
    models::trivial_sl2_split()
}

pub fn catalog() -> Vec<Entry> {
    vec![
        Entry {
            name: "su2_iwasawa",
            description: "SL(2,C) = AN·SU(2), Gram-Schmidt factorization",
            variants: vec![
                Variant { label: "gstar", expected_meet: 0, build: su2_gstar },
                Variant { label: "tn", expected_meet: 1, build: su2_tn },
            ],
        },
        Entry {
            name: "cp1_bruhat",
            description: "Bruhat-Poisson sphere SU(2)/T, l = t + n, Lambda = 0",
            variants: vec![Variant { label: "tn", expected_meet: 1, build: cp1 }],
        },
        Entry {
            name: "trivial_bialgebra",
            description: "sl(2,R) with zero cobracket, D = G x sl(2,R)* as 4x4 block matrices",
            variants: vec![
                Variant { label: "gstar", expected_meet: 0, build: trivial },
                Variant { label: "split", expected_meet: 1, build: trivial_split },
            ],
        },
        Entry {
            name: "affine_poisson",
            description: "su2_iwasawa with l = g*, where omega is symplectic",
            variants: vec![Variant { label: "gstar", expected_meet: 0, build: su2_gstar }],
        },
    ]
}

pub fn find(name: &str) -> Result<Entry> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Invalid(format!("unknown entry `{name}`")))
}

impl Entry {
    /// Builds every variant and checks the algebra and group invariants.
    pub fn load(&self) -> Result<LoadedEntry> {
        let mut variants = Vec::new();
        for v in &self.variants {
            let m = (v.build)()?;
            let d = m.double();
            let worst = d
                .algebra()
                .jacobi_residual()
                .max(d.pairing_invariance_residual())
                .max(d.rr_residual())
                .max(d.reassembly_residual());
            if worst > tol::EXACT {
                return Err(Error::Invalid(format!("{}[{}]: double is off by {worst:.2e}", self.name, v.label)));
            }
            let l = is_lagrangian_subalgebra(d, &m.l().algebra, tol::SUBSPACE)?;
            if !l.pass() {
                return Err(Error::Invalid(format!("{}[{}]: l is not lagrangian", self.name, v.label)));
            }
            let meet = m.l().algebra.intersection(&d.g_part()).dim();
            if meet != v.expected_meet {
                return Err(Error::Invalid(format!(
                    "{}[{}]: dim(l ∩ g) = {meet}, expected {}",
                    self.name, v.label, v.expected_meet
                )));
            }
            if let Some(hom) = LoadedEntry::homogeneous(&m) {
                let l = drinfeld_subalgebra(d, &hom.h, &hom.lambda)?;
                if !l.same_span(&m.l().algebra, tol::SUBSPACE) {
                    return Err(Error::Invalid(format!("{}[{}]: l does not come from (H, Λ)", self.name, v.label)));
                }
            }
            variants.push((*v, m));
        }
        Ok(LoadedEntry { name: self.name, variants })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads() {
        let all = catalog();
        assert!(all.len() >= 4);
        for e in &all {
            let loaded = e.load().unwrap();
            assert_eq!(loaded.variants.len(), e.variants.len());
        }
        assert!(find("nope").is_err());
    }

    #[test]
    fn cp1_meets_g_in_the_torus() {
        let e = find("cp1_bruhat").unwrap().load().unwrap();
        let m = e.first();
        let meet = m.l().algebra.intersection(&m.double().g_part());
        assert!(meet.same_span(&Subspace::coordinate(6, &[0]).unwrap(), 1e-12));
    }
}
