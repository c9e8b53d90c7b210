//! Characteristic data on simple polytopes and their singularity orders.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{saturation_index, IntMatrix, IntVector};
use crate::polytope::{compare_faces, Face, FaceOrdering, Invariant, SimplePolytope, ValidationReport};

/// A simple polytope of dimension `n` with a vector of `Z^n` on each facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RCharPair {
    #[serde(flatten)]
    polytope: SimplePolytope,
    vectors: Vec<IntVector>,
}

/// A simple polytope of dimension `n` with a vector of `Z^{n+1}` on each
/// facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperCharPair {
    #[serde(flatten)]
    polytope: SimplePolytope,
    vectors: Vec<IntVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusEntry {
    pub face: Face,
    #[serde(with = "crate::io::json_int")]
    pub order: BigInt,
    pub maximal: bool,
}

/// Faces of codimension at least 2 with nontrivial order, sorted by
/// codimension (descending) and then by facet set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularLocus {
    pub entries: Vec<LocusEntry>,
}

impl SingularLocus {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn maximal(&self) -> impl Iterator<Item = &LocusEntry> {
        self.entries.iter().filter(|e| e.maximal)
    }

    pub fn order_of(&self, face: &Face) -> Option<&BigInt> {
        self.entries.iter().find(|e| &e.face == face).map(|e| &e.order)
    }
}

fn check_shape(polytope: &SimplePolytope, vectors: &[IntVector], len: usize) -> Result<()> {
    if vectors.len() != polytope.num_facets() {
        return Err(Error::DimensionMismatch(format!(
            "{} vectors for {} facets",
            vectors.len(),
            polytope.num_facets()
        )));
    }
    if let Some((i, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != len) {
        return Err(Error::DimensionMismatch(format!(
            "vector of facet {i} has length {}, expected {len}",
            v.len()
        )));
    }
    Ok(())
}

fn face_columns(vectors: &[IntVector], face: &Face) -> IntMatrix {
    let cols: Vec<IntVector> = face.facets().iter().map(|&i| vectors[i].clone()).collect();
    IntMatrix::from_columns(&cols).expect("vectors share a length")
}

impl RCharPair {
    /// Checks shapes only; see [`RCharPair::validate_r_characteristic`].
    pub fn new(polytope: SimplePolytope, vectors: Vec<IntVector>) -> Result<Self> {
        check_shape(&polytope, &vectors, polytope.dim())?;
        Ok(RCharPair { polytope, vectors })
    }

    /// Builds and requires a passing [`RCharPair::validate_r_characteristic`].
    pub fn new_validated(polytope: SimplePolytope, vectors: Vec<IntVector>) -> Result<Self> {
        let pair = Self::new(polytope, vectors)?;
        pair.ensure_valid()?;
        Ok(pair)
    }

    pub fn polytope(&self) -> &SimplePolytope {
        &self.polytope
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    pub fn vector(&self, facet: usize) -> &IntVector {
        &self.vectors[facet]
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    /// `n × k` matrix of the vectors on the facets of `face`, by facet index.
    pub fn face_matrix(&self, face: &Face) -> IntMatrix {
        face_columns(&self.vectors, face)
    }

    pub fn validate_r_characteristic(&self) -> ValidationReport {
        let mut report = self.polytope.validate();
        if !report.is_valid() {
            return report;
        }
        for (i, v) in self.vectors.iter().enumerate() {
            if !v.is_primitive() {
                report.push(
                    Invariant::NonPrimitiveVector,
                    format!(
                        "vector {v} on facet {i} ({}) is not primitive",
                        self.polytope.facet_name(i)
                    ),
                );
            }
        }
        for b in 0..self.polytope.num_vertices() {
            let face = self.polytope.vertex_face(b);
            if self.face_matrix(&face).determinant().is_zero() {
                report.push(
                    Invariant::SingularVertex,
                    format!("vectors at vertex {b} {face} are linearly dependent"),
                );
            }
        }
        report
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate_r_characteristic();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidPair(report))
        }
    }

    /// Every vertex matrix is unimodular.
    pub fn is_characteristic(&self) -> Result<bool> {
        self.ensure_valid()?;
        Ok(self.vertex_orders()?.iter().all(One::is_one))
    }

    /// Order of the finite group attached to `face`.
    pub fn face_order(&self, face: &Face) -> Result<BigInt> {
        if face.codim() == 0 || !self.polytope.is_face(face) {
            return Err(Error::InvalidFace(face.indices()));
        }
        saturation_index(&self.face_matrix(face))
    }

    /// Orders of all vertices, in vertex order. Equal to `|det|` of each
    /// vertex matrix.
    pub fn vertex_orders(&self) -> Result<Vec<BigInt>> {
        Ok((0..self.polytope.num_vertices())
            .map(|b| self.face_matrix(&self.polytope.vertex_face(b)).determinant().abs())
            .collect())
    }

    pub fn singular_locus(&self) -> Result<SingularLocus> {
        self.ensure_valid()?;
        // A face's order divides the order of each of its vertices, so only
        // faces through a singular vertex can be singular.
        let mut candidates: BTreeSet<Face> = BTreeSet::new();
        for (b, order) in self.vertex_orders()?.into_iter().enumerate() {
            if order.is_one() {
                continue;
            }
            let facets: Vec<usize> = self.polytope.vertex(b).iter().copied().collect();
            for mask in 1u64..(1 << facets.len()) {
                if mask.count_ones() >= 2 {
                    let sub = (0..facets.len()).filter(|i| mask >> i & 1 == 1).map(|i| facets[i]);
                    candidates.insert(Face::new(sub));
                }
            }
        }
        let mut entries = Vec::new();
        for k in (2..=self.dim()).rev() {
            for face in candidates.iter().filter(|f| f.codim() == k) {
                let order = saturation_index(&self.face_matrix(face))?;
                if !order.is_one() {
                    entries.push(LocusEntry {
                        face: face.clone(),
                        order,
                        maximal: false,
                    });
                }
            }
        }
        let flags: Vec<bool> = entries
            .iter()
            .map(|e| {
                !entries
                    .iter()
                    .any(|o| compare_faces(&e.face, &o.face) == FaceOrdering::Less)
            })
            .collect();
        for (e, m) in entries.iter_mut().zip(flags) {
            e.maximal = m;
        }
        Ok(SingularLocus { entries })
    }
}

impl HyperCharPair {
    pub fn new(polytope: SimplePolytope, vectors: Vec<IntVector>) -> Result<Self> {
        check_shape(&polytope, &vectors, polytope.dim() + 1)?;
        Ok(HyperCharPair { polytope, vectors })
    }

    pub fn new_validated(polytope: SimplePolytope, vectors: Vec<IntVector>) -> Result<Self> {
        let pair = Self::new(polytope, vectors)?;
        pair.ensure_valid()?;
        Ok(pair)
    }

    pub fn polytope(&self) -> &SimplePolytope {
        &self.polytope
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    pub fn vector(&self, facet: usize) -> &IntVector {
        &self.vectors[facet]
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    /// `(n+1) × n` matrix of the vectors at vertex `b`.
    pub fn vertex_matrix(&self, b: usize) -> IntMatrix {
        face_columns(&self.vectors, &self.polytope.vertex_face(b))
    }

    pub fn validate_hyper_characteristic(&self) -> ValidationReport {
        let mut report = self.polytope.validate();
        if !report.is_valid() {
            return report;
        }
        for b in 0..self.polytope.num_vertices() {
            let face = self.polytope.vertex_face(b);
            match saturation_index(&self.vertex_matrix(b)) {
                Ok(idx) if idx.is_one() => {}
                Ok(idx) => report.push(
                    Invariant::NotUnimodular,
                    format!("vectors at vertex {b} {face} span a sublattice of index {idx}"),
                ),
                Err(_) => report.push(
                    Invariant::SingularVertex,
                    format!("vectors at vertex {b} {face} are linearly dependent"),
                ),
            }
        }
        report
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate_hyper_characteristic();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidPair(report))
        }
    }
}
