//! Simple polytopes as vertex–facet incidence data.
//!
//! A vertex is the set of the `n` facets meeting there; a face of
//! codimension `k` is the set of the `k` facets containing it. No
//! coordinates are involved.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type FacetSet = BTreeSet<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    VertexNotSimple,
    FacetIndexOutOfRange,
    DuplicateVertex,
    EmptyFacet,
    RidgeCondition,
    Disconnected,
    NonPrimitiveVector,
    SingularVertex,
    NotUnimodular,
    Coordinates,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub invariant: Invariant,
    pub message: String,
}

/// Outcome of a validation pass; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, invariant: Invariant, message: impl Into<String>) {
        self.violations.push(Violation {
            invariant,
            message: message.into(),
        });
    }

    pub fn has(&self, invariant: Invariant) -> bool {
        self.violations.iter().any(|v| v.invariant == invariant)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", v.message)?;
        }
        Ok(())
    }
}

/// A face, named by the facets containing it. The empty set is the whole
/// polytope.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(FacetSet);

impl Face {
    pub fn new(facets: impl IntoIterator<Item = usize>) -> Self {
        Face(facets.into_iter().collect())
    }

    pub fn whole() -> Self {
        Face(FacetSet::new())
    }

    pub fn facets(&self) -> &FacetSet {
        &self.0
    }

    /// Facet indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }

    pub fn codim(&self) -> usize {
        self.0.len()
    }

    pub fn contains_facet(&self, i: usize) -> bool {
        self.0.contains(&i)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Relation between two faces under inclusion of faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceOrdering {
    Less,
    Greater,
    Equal,
    Incomparable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplePolytope {
    dim: usize,
    #[serde(rename = "facets")]
    facet_names: Vec<String>,
    vertices: Vec<FacetSet>,
}

/// Where a vertex of a blowup came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum VertexOrigin {
    /// Vertex off the blown-up face, carried over.
    Kept { source: usize },
    /// One of the `k` vertices replacing `source`; it lies on every facet
    /// of `source` except `dropped`, and on the new facet.
    Cut { source: usize, dropped: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blowup {
    pub polytope: SimplePolytope,
    pub new_facet: usize,
    /// One entry per vertex of the blown-up polytope.
    pub provenance: Vec<VertexOrigin>,
}

impl SimplePolytope {
    /// Builds and validates.
    pub fn new(dim: usize, facet_names: Vec<String>, vertices: Vec<FacetSet>) -> Result<Self> {
        let p = SimplePolytope {
            dim,
            facet_names,
            vertices,
        };
        let report = p.validate();
        if report.is_valid() {
            Ok(p)
        } else {
            Err(Error::InvalidPolytope(report))
        }
    }

    /// Builds without validation; call [`SimplePolytope::validate`] before
    /// relying on it.
    pub fn new_unchecked(dim: usize, facet_names: Vec<String>, vertices: Vec<FacetSet>) -> Self {
        SimplePolytope {
            dim,
            facet_names,
            vertices,
        }
    }

    /// Convenience constructor with facets named `F0, F1, ...`.
    pub fn from_vertex_lists(dim: usize, vertices: &[&[usize]]) -> Result<Self> {
        let vertices: Vec<FacetSet> = vertices
            .iter()
            .map(|v| v.iter().copied().collect())
            .collect();
        let facets = vertices
            .iter()
            .flat_map(|v| v.iter().copied())
            .max()
            .map_or(0, |m| m + 1);
        Self::new(dim, default_names(facets), vertices)
    }

    /// The `n`-simplex: `n + 1` facets, every `n`-subset a vertex.
    pub fn simplex(n: usize) -> Self {
        let vertices = (0..=n)
            .rev()
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        SimplePolytope::new(n, default_names(n + 1), vertices).expect("simplex is simple")
    }

    /// The `m`-gon with edges `0..m` in cyclic order; vertex `i` joins
    /// edges `i` and `i + 1`.
    pub fn polygon(m: usize) -> Self {
        assert!(m >= 3, "a polygon needs at least 3 edges");
        let vertices = (0..m).map(|i| [i, (i + 1) % m].into()).collect();
        SimplePolytope::new(2, default_names(m), vertices).expect("polygon is simple")
    }

    /// Cartesian product; facets of `self` first, then those of `other`.
    pub fn product(&self, other: &SimplePolytope) -> SimplePolytope {
        let offset = self.num_facets();
        let mut names = self.facet_names.clone();
        names.extend(other.facet_names.iter().cloned());
        let mut vertices = Vec::with_capacity(self.num_vertices() * other.num_vertices());
        for a in &self.vertices {
            for b in &other.vertices {
                let mut v = a.clone();
                v.extend(b.iter().map(|i| i + offset));
                vertices.push(v);
            }
        }
        let mut p = SimplePolytope::new_unchecked(self.dim + other.dim, names, vertices);
        p.uniquify_names();
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_facets(&self) -> usize {
        self.facet_names.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facet_names(&self) -> &[String] {
        &self.facet_names
    }

    pub fn facet_name(&self, i: usize) -> &str {
        &self.facet_names[i]
    }

    pub fn facet_index(&self, name: &str) -> Option<usize> {
        self.facet_names.iter().position(|n| n == name)
    }

    pub fn vertices(&self) -> &[FacetSet] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &FacetSet {
        &self.vertices[i]
    }

    pub fn vertex_face(&self, i: usize) -> Face {
        Face(self.vertices[i].clone())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.dim;
        let r = self.num_facets();

        if self.vertices.is_empty() {
            report.push(Invariant::Disconnected, "polytope has no vertices");
            return report;
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.len() != n {
                report.push(
                    Invariant::VertexNotSimple,
                    format!("vertex not simple: vertex {i} lies on {} facets, expected {n}", v.len()),
                );
            }
            if let Some(bad) = v.iter().find(|&&f| f >= r) {
                report.push(
                    Invariant::FacetIndexOutOfRange,
                    format!("vertex {i} references facet {bad}, but there are only {r} facets"),
                );
            }
        }
        let mut seen = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if let Some(j) = seen.insert(v, i) {
                report.push(
                    Invariant::DuplicateVertex,
                    format!("vertices {j} and {i} have the same facet set"),
                );
            }
        }
        for f in 0..r {
            if !self.vertices.iter().any(|v| v.contains(&f)) {
                report.push(
                    Invariant::EmptyFacet,
                    format!("facet {f} ({}) contains no vertex", self.facet_names[f]),
                );
            }
        }
        if !report.is_valid() {
            return report;
        }

        // each edge is a set of n - 1 facets lying on exactly two vertices
        let mut edges: BTreeMap<FacetSet, Vec<usize>> = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            for skip in v {
                let mut edge = v.clone();
                edge.remove(skip);
                edges.entry(edge).or_default().push(i);
            }
        }
        for (edge, ends) in &edges {
            if ends.len() != 2 {
                report.push(
                    Invariant::RidgeCondition,
                    format!(
                        "edge {} lies on {} vertices, expected 2",
                        Face(edge.clone()),
                        ends.len()
                    ),
                );
            }
        }

        if !connected(self.vertices.len(), edges.values()) {
            report.push(Invariant::Disconnected, "vertex-edge graph is disconnected");
        }
        report
    }

    /// Vertices `a` and `b` span an edge.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b
            && self.vertices[a].intersection(&self.vertices[b]).count() + 1 == self.dim
    }

    pub fn is_face(&self, face: &Face) -> bool {
        face.codim() <= self.dim
            && self.vertices.iter().any(|v| face.0.is_subset(v))
    }

    fn check_face(&self, face: &Face) -> Result<()> {
        if self.is_face(face) {
            Ok(())
        } else {
            Err(Error::InvalidFace(face.indices()))
        }
    }

    /// All faces of codimension `k`, lexicographic by facet set.
    pub fn faces_of_codim(&self, k: usize) -> Result<Vec<Face>> {
        if k > self.dim {
            return Err(Error::CodimOutOfRange {
                codim: k,
                dim: self.dim,
            });
        }
        let mut faces = BTreeSet::new();
        for v in &self.vertices {
            let v: Vec<usize> = v.iter().copied().collect();
            for subset in k_subsets(&v, k) {
                faces.insert(Face::new(subset));
            }
        }
        Ok(faces.into_iter().collect())
    }

    /// Faces of every codimension `1..=n`, by increasing codimension.
    pub fn proper_faces(&self) -> Vec<Face> {
        (1..=self.dim)
            .flat_map(|k| self.faces_of_codim(k).expect("k in range"))
            .collect()
    }

    pub fn vertices_of_face(&self, face: &Face) -> Result<Vec<usize>> {
        self.check_face(face)?;
        Ok(self
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| face.0.is_subset(v))
            .map(|(i, _)| i)
            .collect())
    }

    /// Compares faces by inclusion. A face is smaller when it is cut out by
    /// more facets.
    pub fn face_partial_order(&self, a: &Face, b: &Face) -> Result<FaceOrdering> {
        self.check_face(a)?;
        self.check_face(b)?;
        Ok(compare_faces(a, b))
    }

    /// `self × [0, 1]`: side facets in the original order, then `bottom`
    /// (`Q × {0}`), then `top` (`Q × {1}`).
    pub fn product_with_interval(&self) -> Result<SimplePolytope> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::InvalidPolytope(report));
        }
        let segment = SimplePolytope::new_unchecked(
            1,
            vec!["bottom".into(), "top".into()],
            vec![[0].into(), [1].into()],
        );
        let prism = self.product(&segment);
        let report = prism.validate();
        if !report.is_valid() {
            return Err(Error::Internal(format!("prism failed validation: {report}")));
        }
        Ok(prism)
    }

    /// Cuts off `face`. Inherited facets keep their indices; the new facet
    /// is appended. Each vertex on the face is replaced, in place, by `k`
    /// vertices, one per facet of the face that it no longer lies on.
    pub fn blowup(&self, face: &Face) -> Result<Blowup> {
        self.check_face(face)?;
        let k = face.codim();
        if k == 1 {
            return Err(Error::BlowupAlongFacet);
        }
        if k == 0 {
            return Err(Error::InvalidFace(face.indices()));
        }
        let new_facet = self.num_facets();
        let mut vertices = Vec::new();
        let mut provenance = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if face.0.is_subset(v) {
                for &dropped in &face.0 {
                    let mut w = v.clone();
                    w.remove(&dropped);
                    w.insert(new_facet);
                    vertices.push(w);
                    provenance.push(VertexOrigin::Cut { source: i, dropped });
                }
            } else {
                vertices.push(v.clone());
                provenance.push(VertexOrigin::Kept { source: i });
            }
        }
        let mut names = self.facet_names.clone();
        let label: Vec<&str> = face.0.iter().map(|&i| self.facet_names[i].as_str()).collect();
        names.push(format!("blowup({})", label.join("+")));
        let mut polytope = SimplePolytope::new_unchecked(self.dim, names, vertices);
        polytope.uniquify_names();
        let report = polytope.validate();
        if !report.is_valid() {
            return Err(Error::Internal(format!("blowup failed validation: {report}")));
        }
        Ok(Blowup {
            polytope,
            new_facet,
            provenance,
        })
    }

    fn uniquify_names(&mut self) {
        let mut seen = BTreeSet::new();
        for name in &mut self.facet_names {
            while !seen.insert(name.clone()) {
                name.push('\'');
            }
        }
    }
}

fn connected<'a>(m: usize, edges: impl Iterator<Item = &'a Vec<usize>>) -> bool {
    let mut adj = vec![Vec::new(); m];
    for ends in edges {
        for &a in ends {
            adj[a].extend(ends.iter().copied().filter(|&b| b != a));
        }
    }
    let mut seen = vec![false; m];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(a) = stack.pop() {
        for &b in &adj[a] {
            if !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub(crate) fn default_names(r: usize) -> Vec<String> {
    (0..r).map(|i| format!("F{i}")).collect()
}

/// Inclusion of faces, reversed from inclusion of facet sets.
pub fn compare_faces(a: &Face, b: &Face) -> FaceOrdering {
    match (a.0.is_subset(&b.0), b.0.is_subset(&a.0)) {
        (true, true) => FaceOrdering::Equal,
        (true, false) => FaceOrdering::Greater,
        (false, true) => FaceOrdering::Less,
        (false, false) => FaceOrdering::Incomparable,
    }
}

fn k_subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in k_subsets(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
