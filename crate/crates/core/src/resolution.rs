//! Blowups of characteristic pairs and the resolution driver.
//!
//! A singular face `F` with facet vectors `λ_1..λ_k` is cut off and the new
//! facet receives `prim(Σ c_j λ_j)` for a lattice point of the fundamental
//! parallelepiped of `F`. Every vertex `b` on `F` is replaced by `k`
//! vertices whose orders are `(c_s / d) · |G_b|`, so the multiset of vertex
//! orders strictly decreases and the loop terminates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::charpair::{RCharPair, SingularLocus};
use crate::error::{Error, Result};
use crate::lattice::{
    coset_representatives, interior_representatives, primitive_decompose, IntVector,
    RationalVector,
};
use crate::polytope::{Face, VertexOrigin};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaceRule {
    /// Largest order among maximal singular faces, then smallest facet set.
    #[default]
    MaxOrderThenLex,
    /// Smallest facet set among maximal singular faces.
    LexOnly,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointRule {
    /// Smallest coefficient sum, then lexicographically smallest.
    #[default]
    MinSumThenLex,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionConfig {
    /// `None` means ten times the sum of the initial vertex orders.
    pub max_steps: Option<usize>,
    pub face_rule: FaceRule,
    pub point_rule: PointRule,
}

impl ResolutionConfig {
    fn resolved(&self, pair: &RCharPair) -> Result<ResolutionConfig> {
        let max_steps = match self.max_steps {
            Some(m) => m,
            None => {
                let sum: BigInt = pair.vertex_orders()?.iter().sum();
                sum.to_usize().unwrap_or(usize::MAX / 10).saturating_mul(10)
            }
        };
        Ok(ResolutionConfig {
            max_steps: Some(max_steps),
            ..self.clone()
        })
    }
}

/// The lattice point used for the new facet of a blowup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupChoice {
    pub face: Face,
    /// Coefficients with respect to the face's vectors in facet order.
    pub coefficients: RationalVector,
    pub lattice_point: IntVector,
    #[serde(with = "crate::io::json_int")]
    pub d: BigInt,
    pub new_vector: IntVector,
    /// Set when no representative with all coordinates positive existed.
    pub fallback: bool,
}

impl BlowupChoice {
    fn assemble(
        pair: &RCharPair,
        face: &Face,
        coefficients: RationalVector,
        fallback: bool,
    ) -> Result<BlowupChoice> {
        let m = pair.face_matrix(face);
        let image = m.apply_rational(&coefficients);
        if let Some(x) = image.iter().find(|x| !x.is_integer()) {
            return Err(Error::InvalidPoint(format!(
                "lattice point is not integral (coordinate {x})"
            )));
        }
        let lattice_point = IntVector::new(image.into_iter().map(|x| x.to_integer()).collect());
        let (d, new_vector) =
            primitive_decompose(&lattice_point).map_err(|_| Error::InvalidPoint("lattice point is zero".into()))?;
        Ok(BlowupChoice {
            face: face.clone(),
            coefficients,
            lattice_point,
            d,
            new_vector,
            fallback,
        })
    }
}

/// Picks the lattice point for blowing up `face`.
///
/// Uses representatives with every coefficient in `(0, 1)` when there are
/// any (always the case for a maximal singular face); otherwise any nonzero
/// representative, flagged as a fallback.
pub fn choose_lattice_point(pair: &RCharPair, face: &Face, rule: PointRule) -> Result<BlowupChoice> {
    match face.codim() {
        0 => return Err(Error::InvalidFace(face.indices())),
        1 => return Err(Error::BlowupAlongFacet),
        _ => {}
    }
    if !pair.face_order(face)?.is_one() {
        let m = pair.face_matrix(face);
        let interior = interior_representatives(&m)?;
        let (candidates, fallback) = if interior.is_empty() {
            let nonzero: Vec<_> = coset_representatives(&m)?
                .into_iter()
                .filter(|c| !c.is_zero())
                .collect();
            (nonzero, true)
        } else {
            (interior, false)
        };
        let best = match rule {
            PointRule::MinSumThenLex => candidates
                .into_iter()
                .min_by(|a, b| a.sum().cmp(&b.sum()).then_with(|| a.cmp(b))),
        }
        .ok_or_else(|| Error::Internal("nontrivial group without nonzero coset".into()))?;
        return BlowupChoice::assemble(pair, face, best, fallback);
    }
    Err(Error::NothingToBlowUp(face.indices()))
}

/// Validates explicitly given coefficients: each nonzero with absolute value
/// below 1, and `Σ c_j λ_j` a nonzero lattice point.
pub fn choice_from_coefficients(
    pair: &RCharPair,
    face: &Face,
    coefficients: RationalVector,
) -> Result<BlowupChoice> {
    match face.codim() {
        0 => return Err(Error::InvalidFace(face.indices())),
        1 => return Err(Error::BlowupAlongFacet),
        _ => {}
    }
    if !pair.polytope().is_face(face) {
        return Err(Error::InvalidFace(face.indices()));
    }
    if coefficients.len() != face.codim() {
        return Err(Error::InvalidPoint(format!(
            "expected {} coefficients, got {}",
            face.codim(),
            coefficients.len()
        )));
    }
    for c in coefficients.entries() {
        if c.is_zero() {
            return Err(Error::InvalidPoint("zero coefficient".into()));
        }
        if c.abs() >= BigRational::one() {
            return Err(Error::InvalidPoint(format!("coefficient {c} out of range (-1, 1)")));
        }
    }
    BlowupChoice::assemble(pair, face, coefficients, false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlownUpPair {
    pub pair: RCharPair,
    pub new_facet: usize,
    pub provenance: Vec<VertexOrigin>,
}

/// Blows up the polytope along `choice.face`; inherited facets keep their
/// vectors and the new facet gets `choice.new_vector`.
pub fn blowup_pair(pair: &RCharPair, choice: &BlowupChoice) -> Result<BlownUpPair> {
    let blowup = pair.polytope().blowup(&choice.face)?;
    let mut vectors = pair.vectors().to_vec();
    vectors.push(choice.new_vector.clone());
    let blown = RCharPair::new(blowup.polytope, vectors)?;
    blown.ensure_valid()?;
    Ok(BlownUpPair {
        pair: blown,
        new_facet: blowup.new_facet,
        provenance: blowup.provenance,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPrediction {
    /// Index in the blown-up polytope.
    pub vertex: usize,
    /// Index of the replaced vertex in the original polytope.
    pub source: usize,
    pub dropped_facet: usize,
    #[serde(with = "crate::io::json_int")]
    pub source_order: BigInt,
    #[serde(with = "crate::io::json_int")]
    pub predicted: BigInt,
}

/// Orders of the new vertices from `(|c_s| / d) · |G_b|`, without touching
/// the blown-up pair.
pub fn predict_new_vertex_orders(
    pair: &RCharPair,
    choice: &BlowupChoice,
    provenance: &[VertexOrigin],
) -> Result<Vec<VertexPrediction>> {
    let positions: BTreeMap<usize, usize> = choice
        .face
        .indices()
        .into_iter()
        .enumerate()
        .map(|(s, f)| (f, s))
        .collect();
    let d = BigRational::from_integer(choice.d.clone());
    let mut out = Vec::new();
    for (vertex, origin) in provenance.iter().enumerate() {
        let VertexOrigin::Cut { source, dropped } = *origin else {
            continue;
        };
        let s = *positions
            .get(&dropped)
            .ok_or_else(|| Error::Internal(format!("dropped facet {dropped} not on the face")))?;
        let source_order = pair.face_order(&pair.polytope().vertex_face(source))?;
        let q = choice.coefficients[s].abs() / &d * BigRational::from_integer(source_order.clone());
        if !q.is_integer() {
            return Err(Error::Internal(format!(
                "non-integral predicted order {q} at new vertex {vertex}"
            )));
        }
        let predicted = q.to_integer();
        if predicted >= source_order {
            return Err(Error::Internal(format!(
                "predicted order {predicted} at new vertex {vertex} does not drop below {source_order}"
            )));
        }
        out.push(VertexPrediction {
            vertex,
            source,
            dropped_facet: dropped,
            source_order,
            predicted,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSummary {
    pub facets: usize,
    pub vertices: usize,
    #[serde(with = "crate::io::json_int_vec")]
    pub vertex_orders: Vec<BigInt>,
    pub singular_faces: usize,
}

impl PairSummary {
    pub fn of(pair: &RCharPair) -> Result<PairSummary> {
        Ok(PairSummary {
            facets: pair.polytope().num_facets(),
            vertices: pair.polytope().num_vertices(),
            vertex_orders: pair.vertex_orders()?,
            singular_faces: pair.singular_locus()?.len(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewVertexOrder {
    #[serde(flatten)]
    pub prediction: VertexPrediction,
    #[serde(with = "crate::io::json_int")]
    pub recomputed: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    #[serde(with = "crate::io::json_int")]
    pub face_order: BigInt,
    pub before: PairSummary,
    pub choice: BlowupChoice,
    pub new_vertices: Vec<NewVertexOrder>,
    pub after: PairSummary,
}

/// Replayable record of a resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionTrace {
    pub config: ResolutionConfig,
    pub initial: RCharPair,
    pub steps: Vec<TraceStep>,
    #[serde(rename = "final")]
    pub final_pair: RCharPair,
}

/// Blows up with `choice` and records predicted against recomputed orders.
pub fn record_step(pair: &RCharPair, choice: &BlowupChoice) -> Result<(TraceStep, RCharPair)> {
    let before = PairSummary::of(pair)?;
    let face_order = pair.face_order(&choice.face)?;
    let blown = blowup_pair(pair, choice)?;
    let predictions = predict_new_vertex_orders(pair, choice, &blown.provenance)?;
    let after = PairSummary::of(&blown.pair)?;
    let new_vertices = predictions
        .into_iter()
        .map(|p| {
            let recomputed = after.vertex_orders[p.vertex].clone();
            NewVertexOrder {
                prediction: p,
                recomputed,
            }
        })
        .collect();
    Ok((
        TraceStep {
            face_order,
            before,
            choice: choice.clone(),
            new_vertices,
            after,
        },
        blown.pair,
    ))
}

/// Face to blow up next, among the maximal entries of the locus.
pub fn select_face(locus: &SingularLocus, rule: FaceRule) -> Option<Face> {
    let maximal = locus.maximal();
    let picked = match rule {
        FaceRule::MaxOrderThenLex => {
            maximal.min_by(|a, b| b.order.cmp(&a.order).then_with(|| a.face.cmp(&b.face)))
        }
        FaceRule::LexOnly => maximal.min_by(|a, b| a.face.cmp(&b.face)),
    };
    picked.map(|e| e.face.clone())
}

/// Blows up maximal singular faces until the pair is characteristic.
pub fn resolve(pair: &RCharPair, config: &ResolutionConfig) -> Result<ResolutionTrace> {
    pair.ensure_valid()?;
    let config = config.resolved(pair)?;
    let max_steps = config.max_steps.expect("resolved");
    let mut current = pair.clone();
    let mut steps = Vec::new();
    loop {
        let locus = current.singular_locus()?;
        let Some(face) = select_face(&locus, config.face_rule) else {
            break;
        };
        if steps.len() >= max_steps {
            return Err(Error::GuardExceeded {
                max_steps,
                partial: Box::new(ResolutionTrace {
                    config,
                    initial: pair.clone(),
                    steps,
                    final_pair: current,
                }),
            });
        }
        let choice = choose_lattice_point(&current, &face, config.point_rule)?;
        let (step, next) = record_step(&current, &choice)?;
        steps.push(step);
        current = next;
    }
    Ok(ResolutionTrace {
        config,
        initial: pair.clone(),
        steps,
        final_pair: current,
    })
}

impl ResolutionTrace {
    /// Re-applies every recorded choice to the recorded pre-state and checks
    /// that the recorded step and final pair come out identical, that each
    /// blown-up face was maximal, that predictions matched, and that the
    /// final pair is characteristic.
    pub fn replay(&self) -> Result<()> {
        let mut current = self.initial.clone();
        current.ensure_valid()?;
        for (i, step) in self.steps.iter().enumerate() {
            let locus = current.singular_locus()?;
            let face = &step.choice.face;
            if !locus.maximal().any(|e| &e.face == face) {
                return Err(Error::ReplayMismatch(format!(
                    "step {i}: face {face} is not a maximal singular face"
                )));
            }
            let fresh = choice_from_coefficients(&current, face, step.choice.coefficients.clone())
                .or_else(|_| choose_lattice_point(&current, face, self.config.point_rule))?;
            if fresh.lattice_point != step.choice.lattice_point
                || fresh.new_vector != step.choice.new_vector
                || fresh.d != step.choice.d
            {
                return Err(Error::ReplayMismatch(format!(
                    "step {i}: recorded lattice point does not match its coefficients"
                )));
            }
            let (recomputed, next) = record_step(&current, &step.choice)?;
            if &recomputed != step {
                return Err(Error::ReplayMismatch(format!("step {i} differs on replay")));
            }
            if let Some(v) = step
                .new_vertices
                .iter()
                .find(|v| v.prediction.predicted != v.recomputed)
            {
                return Err(Error::ReplayMismatch(format!(
                    "step {i}: vertex {} predicted {} but has order {}",
                    v.prediction.vertex, v.prediction.predicted, v.recomputed
                )));
            }
            current = next;
        }
        if current != self.final_pair {
            return Err(Error::ReplayMismatch("final pair differs".into()));
        }
        if !current.is_characteristic()? {
            return Err(Error::ReplayMismatch("final pair is not characteristic".into()));
        }
        Ok(())
    }

    /// Vertex-order multisets, initial first.
    pub fn order_history(&self) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = self
            .steps
            .iter()
            .map(|s| s.before.vertex_orders.clone())
            .collect();
        match self.steps.last() {
            Some(last) => out.push(last.after.vertex_orders.clone()),
            None => {
                if let Ok(orders) = self.initial.vertex_orders() {
                    out.push(orders);
                }
            }
        }
        out
    }
}

/// Strict decrease in the multiset ordering: `after ≠ before`, and every
/// value with more copies in `after` is dominated by a larger value with
/// fewer copies in `after`.
pub fn multiset_descends(before: &[BigInt], after: &[BigInt]) -> bool {
    let mut diff: BTreeMap<&BigInt, i64> = BTreeMap::new();
    for x in before {
        *diff.entry(x).or_default() += 1;
    }
    for x in after {
        *diff.entry(x).or_default() -= 1;
    }
    diff.retain(|_, c| *c != 0);
    if diff.is_empty() {
        return false;
    }
    diff.iter()
        .filter(|(_, &c)| c < 0)
        .all(|(x, _)| diff.iter().any(|(y, &c)| c > 0 && y > x))
}
