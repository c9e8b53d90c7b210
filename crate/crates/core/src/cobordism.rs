//! Null-cobordism certificates for hyper characteristic pairs.
//!
//! Given `(Q, ξ)`, pick a lattice vector `a` outside every vertex span,
//! put `ξ` on the side facets of `Q × I` and `a` on both caps, and resolve.
//! Side faces are smooth, so every blowup happens near a cap and a middle
//! slice carrying `(Q, ξ)` survives in the resolved pair.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::charpair::{HyperCharPair, RCharPair};
use crate::error::{Error, Result};
use crate::lattice::{integer_kernel_normal, IntMatrix, IntVector, RationalVector};
use crate::polytope::{Face, SimplePolytope, ValidationReport};
use crate::resolution::{resolve, ResolutionConfig, ResolutionTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cap {
    Bottom,
    Top,
}

impl std::fmt::Display for Cap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Cap::Bottom => "bottom",
            Cap::Top => "top",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepLocality {
    pub step: usize,
    pub face: Face,
    /// Cap the blown-up face sits on, directly or through earlier cuts.
    pub cap: Cap,
    /// The face's facet set contains the bottom or top facet itself.
    pub on_cap_facet: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobordismCertificate {
    pub boundary: HyperCharPair,
    pub transverse_vector: IntVector,
    /// Whether `transverse_vector` came from the canonical search.
    pub searched: bool,
    pub prism: RCharPair,
    pub trace: ResolutionTrace,
    pub locality: Vec<StepLocality>,
}

fn vertex_normals(pair: &HyperCharPair) -> Result<Vec<IntVector>> {
    (0..pair.polytope().num_vertices())
        .map(|b| integer_kernel_normal(&pair.vertex_matrix(b)))
        .collect()
}

fn check_len(pair: &HyperCharPair, a: &IntVector) -> Result<()> {
    if a.len() != pair.dim() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "transverse vector has length {}, expected {}",
            a.len(),
            pair.dim() + 1
        )));
    }
    Ok(())
}

/// First vertex whose vectors span a hyperplane containing `a`.
pub fn transverse_violation(pair: &HyperCharPair, a: &IntVector) -> Result<Option<usize>> {
    check_len(pair, a)?;
    let normals = vertex_normals(pair)?;
    Ok(normals.iter().position(|n| n.dot(a).is_zero()))
}

/// `a` together with the vectors at any vertex is linearly independent.
pub fn verify_transverse(pair: &HyperCharPair, a: &IntVector) -> Result<bool> {
    Ok(transverse_violation(pair, a)?.is_none())
}

/// Candidate order within a sup-norm shell: entries compared by absolute
/// value, positive before negative.
fn shell(dim: usize, r: i64) -> Vec<IntVector> {
    let digits: Vec<i64> = std::iter::once(0)
        .chain((1..=r).flat_map(|x| [x, -x]))
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        let v: Vec<i64> = idx.iter().map(|&i| digits[i]).collect();
        if v.iter().any(|x| x.abs() == r) {
            out.push(IntVector::from_i64s(&v));
        }
        let mut pos = dim;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < digits.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Smallest primitive transverse vector by sup-norm, then by the shell
/// order of [`shell`].
pub fn find_transverse_vector(pair: &HyperCharPair) -> Result<IntVector> {
    pair.ensure_valid()?;
    let normals = vertex_normals(pair)?;
    // Fewer than 2r+1 hyperplanes cannot cover the box of radius r.
    let guard = pair.polytope().num_vertices() as i64 + 1;
    for r in 1..=guard {
        for a in shell(pair.dim() + 1, r) {
            if a.is_primitive() && normals.iter().all(|n| !n.dot(&a).is_zero()) {
                return Ok(a);
            }
        }
    }
    Err(Error::SearchExhausted(guard as u64))
}

/// `Q × I` with `ξ` on the side facets and `a` on both caps.
pub fn build_prism_pair(pair: &HyperCharPair, a: &IntVector) -> Result<RCharPair> {
    check_len(pair, a)?;
    if !a.is_primitive() {
        return Err(Error::InvalidPoint(format!("transverse vector {a} is not primitive")));
    }
    if let Some(vertex) = transverse_violation(pair, a)? {
        return Err(Error::NotTransverse {
            vertex,
            vector: a.to_string(),
        });
    }
    let polytope = pair.polytope().product_with_interval()?;
    let mut vectors = pair.vectors().to_vec();
    vectors.push(a.clone());
    vectors.push(a.clone());
    RCharPair::new_validated(polytope, vectors)
}

/// Runs the full pipeline with the searched transverse vector.
pub fn cobound(pair: &HyperCharPair, config: &ResolutionConfig) -> Result<CobordismCertificate> {
    cobound_with(pair, None, config)
}

/// Runs the pipeline, with `transverse` overriding the search.
pub fn cobound_with(
    pair: &HyperCharPair,
    transverse: Option<&IntVector>,
    config: &ResolutionConfig,
) -> Result<CobordismCertificate> {
    pair.ensure_valid()?;
    let (a, searched) = match transverse {
        Some(a) => (a.clone(), false),
        None => (find_transverse_vector(pair)?, true),
    };
    let prism = build_prism_pair(pair, &a)?;
    let sides = pair.polytope().num_facets();
    let (bottom, top) = (sides, sides + 1);

    for face in prism.polytope().proper_faces() {
        if face.facets().iter().all(|&f| f < sides) {
            let order = prism.face_order(&face)?;
            if !order.is_one() {
                return Err(Error::Certificate(format!(
                    "side face {face} has order {order}"
                )));
            }
        }
    }

    let trace = resolve(&prism, config)?;

    let mut cap_of: Vec<Option<Cap>> = vec![None; sides];
    cap_of.push(Some(Cap::Bottom));
    cap_of.push(Some(Cap::Top));
    let mut locality = Vec::with_capacity(trace.steps.len());
    for (i, step) in trace.steps.iter().enumerate() {
        let face = &step.choice.face;
        let caps: Vec<Cap> = face.facets().iter().filter_map(|&f| cap_of[f]).collect();
        let cap = match caps.first() {
            Some(&c) if caps.iter().all(|&x| x == c) => c,
            Some(_) => {
                return Err(Error::Certificate(format!(
                    "step {i}: face {face} touches both caps"
                )))
            }
            None => {
                return Err(Error::Certificate(format!(
                    "step {i}: face {face} meets the middle of the prism"
                )))
            }
        };
        cap_of.push(Some(cap));
        locality.push(StepLocality {
            step: i,
            face: face.clone(),
            cap,
            on_cap_facet: face.contains_facet(bottom) || face.contains_facet(top),
        });
    }

    if trace.final_pair.vectors()[..sides] != pair.vectors()[..] {
        return Err(Error::Certificate(
            "side facets of the resolved pair do not carry the boundary vectors".into(),
        ));
    }

    Ok(CobordismCertificate {
        boundary: pair.clone(),
        transverse_vector: a,
        searched,
        prism,
        trace,
        locality,
    })
}

impl CobordismCertificate {
    /// Rebuilds the certificate from its boundary data and checks that
    /// everything matches.
    pub fn replay(&self) -> Result<()> {
        let given = (!self.searched).then_some(&self.transverse_vector);
        let fresh = cobound_with(&self.boundary, given, &self.trace.config)?;
        self.trace.replay()?;
        if &fresh != self {
            return Err(Error::ReplayMismatch("certificate differs on rebuild".into()));
        }
        Ok(())
    }
}

/// A simple polytope placed in `R^{n+1} \ {0}`, one point per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedPolytope {
    #[serde(flatten)]
    pub polytope: SimplePolytope,
    pub coordinates: Vec<RationalVector>,
}

impl EmbeddedPolytope {
    pub fn new(polytope: SimplePolytope, coordinates: Vec<RationalVector>) -> Result<Self> {
        let ep = EmbeddedPolytope {
            polytope,
            coordinates,
        };
        let report = ep.validate();
        if report.is_valid() {
            Ok(ep)
        } else {
            Err(Error::InvalidPolytope(report))
        }
    }

    pub fn validate(&self) -> ValidationReport {
        use crate::polytope::Invariant;
        let mut report = self.polytope.validate();
        let n = self.polytope.dim();
        if self.coordinates.len() != self.polytope.num_vertices() {
            report.push(
                Invariant::Coordinates,
                format!(
                    "{} coordinate rows for {} vertices",
                    self.coordinates.len(),
                    self.polytope.num_vertices()
                ),
            );
            return report;
        }
        for (i, c) in self.coordinates.iter().enumerate() {
            if c.len() != n + 1 {
                report.push(
                    Invariant::Coordinates,
                    format!("vertex {i} has {} coordinates, expected {}", c.len(), n + 1),
                );
            } else if c.is_zero() {
                report.push(Invariant::Coordinates, format!("vertex {i} is at the origin"));
            }
        }
        report
    }
}

/// Outward normals of the cone over an embedded polytope, with the
/// hyper characteristic check of the result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeNormals {
    pub pair: HyperCharPair,
    pub report: ValidationReport,
}

fn integral_direction(point: &RationalVector) -> IntVector {
    let lcm = point
        .entries()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    IntVector::new(
        point
            .entries()
            .iter()
            .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
            .collect(),
    )
}

/// `ξ(E)` is the primitive normal to the cone over facet `E`, pointing away
/// from the centroid of the vertices.
pub fn cone_hyper_characteristic(ep: &EmbeddedPolytope) -> Result<ConeNormals> {
    let report = ep.validate();
    if !report.is_valid() {
        return Err(Error::InvalidPolytope(report));
    }
    let p = &ep.polytope;
    let n = p.dim();
    let centroid: Vec<BigRational> = (0..=n)
        .map(|i| ep.coordinates.iter().map(|c| c[i].clone()).sum())
        .collect();

    let mut facet_points = Vec::with_capacity(p.num_facets());
    for f in 0..p.num_facets() {
        let points: Vec<IntVector> = p
            .vertices_of_face(&Face::new([f]))?
            .into_iter()
            .map(|v| integral_direction(&ep.coordinates[v]))
            .collect();
        let rank = IntMatrix::from_columns(&points)?.rank();
        if rank != n {
            return Err(Error::DegenerateFacet {
                facet: f,
                reason: format!("cone over the facet spans dimension {rank}, expected {n}"),
            });
        }
        facet_points.push(points);
    }

    let mut normals = Vec::with_capacity(p.num_facets());
    for (f, points) in facet_points.iter().enumerate() {
        let mut basis: Vec<IntVector> = Vec::with_capacity(n);
        for pt in points {
            let mut trial = basis.clone();
            trial.push(pt.clone());
            if IntMatrix::from_columns(&trial)?.rank() == trial.len() {
                basis = trial;
            }
            if basis.len() == n {
                break;
            }
        }
        let mut normal = integer_kernel_normal(&IntMatrix::from_columns(&basis)?)?;
        let side: BigRational = normal
            .iter()
            .zip(&centroid)
            .map(|(a, c)| BigRational::from_integer(a.clone()) * c)
            .sum();
        if side.is_zero() {
            return Err(Error::DegenerateFacet {
                facet: f,
                reason: "centroid lies on the facet hyperplane".into(),
            });
        }
        if side.is_positive() {
            normal = normal.scaled(&-BigInt::one());
        }
        normals.push(normal);
    }
    let pair = HyperCharPair::new(p.clone(), normals)?;
    let report = pair.validate_hyper_characteristic();
    Ok(ConeNormals { pair, report })
}
