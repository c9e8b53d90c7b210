//! JSON documents read and written by the command-line tool.
//!
//! Integers whose magnitude exceeds `2^53 - 1` are written as decimal
//! strings; both forms are accepted on input. Output is canonical: object
//! keys are sorted and lists keep the library's deterministic orderings.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::charpair::{HyperCharPair, RCharPair};
use crate::cobordism::EmbeddedPolytope;
use crate::error::{Error, Result};
use crate::lattice::{IntVector, RationalVector};
use crate::polytope::{default_names, FacetSet, SimplePolytope};

const MAX_SAFE: i64 = (1 << 53) - 1;

/// Serializes a big integer as a JSON number when it is exactly
/// representable as a double, otherwise as a decimal string.
pub struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.abs() <= BigInt::from(MAX_SAFE) {
            s.serialize_i64(i64::try_from(self.0).expect("within safe range"))
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

/// Accepts a JSON integer or a decimal string.
pub struct JsonIntOwned(pub BigInt);

impl<'de> Deserialize<'de> for JsonIntOwned {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonIntOwned;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonIntOwned, E> {
                Ok(JsonIntOwned(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonIntOwned, E> {
                Ok(JsonIntOwned(v.into()))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<JsonIntOwned, E> {
                Err(E::custom(format!(
                    "{v} is not an exact integer; write large values as strings"
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonIntOwned, E> {
                BigInt::from_str(v.trim())
                    .map(JsonIntOwned)
                    .map_err(|_| E::custom(format!("{v:?} is not an integer")))
            }
        }
        d.deserialize_any(V)
    }
}

/// `#[serde(with)]` adapter for a single big integer.
pub mod json_int {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonInt(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        JsonIntOwned::deserialize(d).map(|x| x.0)
    }
}

/// `#[serde(with)]` adapter for a list of big integers.
pub mod json_int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(JsonInt))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<BigInt>, D::Error> {
        let raw: Vec<JsonIntOwned> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(|x| x.0).collect())
    }
}

/// Parses `"p"` or `"p/q"` with `q != 0`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Schema(format!("{s:?} is not a rational number"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Schema(format!("{s:?} has zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputKind {
    Polytope,
    Rcharpair,
    Hypercharpair,
    EmbeddedPolytope,
}

impl std::fmt::Display for InputKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InputKind::Polytope => "polytope",
            InputKind::Rcharpair => "rcharpair",
            InputKind::Hypercharpair => "hypercharpair",
            InputKind::EmbeddedPolytope => "embedded_polytope",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub kind: InputKind,
    pub dim: usize,
    /// Facet names; `F0, F1, ...` when omitted.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facets: Vec<String>,
    pub vertices: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors: Option<Vec<IntVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<RationalVector>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, Value>,
}

/// A parsed input, not yet validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Polytope(SimplePolytope),
    RCharPair(RCharPair),
    HyperCharPair(HyperCharPair),
    Embedded(EmbeddedPolytope),
}

impl Input {
    pub fn kind(&self) -> InputKind {
        match self {
            Input::Polytope(_) => InputKind::Polytope,
            Input::RCharPair(_) => InputKind::Rcharpair,
            Input::HyperCharPair(_) => InputKind::Hypercharpair,
            Input::Embedded(_) => InputKind::EmbeddedPolytope,
        }
    }
}

fn schema<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::DimensionMismatch(m) => Error::Schema(m),
        other => other,
    })
}

impl InputDocument {
    fn base(kind: InputKind, polytope: &SimplePolytope) -> InputDocument {
        InputDocument {
            kind,
            dim: polytope.dim(),
            facets: polytope.facet_names().to_vec(),
            vertices: polytope
                .vertices()
                .iter()
                .map(|v| v.iter().copied().collect())
                .collect(),
            vectors: None,
            coordinates: None,
            metadata: BTreeMap::new(),
        }
    }

    pub fn from_polytope(polytope: &SimplePolytope) -> InputDocument {
        InputDocument::base(InputKind::Polytope, polytope)
    }

    pub fn from_rcharpair(pair: &RCharPair) -> InputDocument {
        InputDocument {
            vectors: Some(pair.vectors().to_vec()),
            ..InputDocument::base(InputKind::Rcharpair, pair.polytope())
        }
    }

    pub fn from_hypercharpair(pair: &HyperCharPair) -> InputDocument {
        InputDocument {
            vectors: Some(pair.vectors().to_vec()),
            ..InputDocument::base(InputKind::Hypercharpair, pair.polytope())
        }
    }

    pub fn from_embedded(ep: &EmbeddedPolytope) -> InputDocument {
        InputDocument {
            coordinates: Some(ep.coordinates.clone()),
            ..InputDocument::base(InputKind::EmbeddedPolytope, &ep.polytope)
        }
    }

    fn polytope(&self) -> SimplePolytope {
        let vertices: Vec<FacetSet> = self
            .vertices
            .iter()
            .map(|v| v.iter().copied().collect())
            .collect();
        let names = if self.facets.is_empty() {
            let r = vertices
                .iter()
                .flat_map(|v| v.iter().copied())
                .max()
                .map_or(0, |m| m + 1);
            default_names(r)
        } else {
            self.facets.clone()
        };
        SimplePolytope::new_unchecked(self.dim, names, vertices)
    }

    /// Builds the object named by `kind`. Only the shape is checked here;
    /// domain validity is left to the caller.
    pub fn to_input(&self) -> Result<Input> {
        let polytope = self.polytope();
        let need_vectors = || {
            self.vectors
                .clone()
                .ok_or_else(|| Error::Schema(format!("kind {} requires \"vectors\"", self.kind)))
        };
        Ok(match self.kind {
            InputKind::Polytope => Input::Polytope(polytope),
            InputKind::Rcharpair => {
                Input::RCharPair(schema(RCharPair::new(polytope, need_vectors()?))?)
            }
            InputKind::Hypercharpair => {
                Input::HyperCharPair(schema(HyperCharPair::new(polytope, need_vectors()?))?)
            }
            InputKind::EmbeddedPolytope => {
                let coordinates = self.coordinates.clone().ok_or_else(|| {
                    Error::Schema("kind embedded_polytope requires \"coordinates\"".into())
                })?;
                Input::Embedded(EmbeddedPolytope {
                    polytope,
                    coordinates,
                })
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Report,
    Orders,
    Locus,
    BlowupResult,
    Trace,
    Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub kind: OutputKind,
    pub tool_version: String,
    pub config: Value,
    pub payload: Value,
}

impl OutputDocument {
    pub fn new(kind: OutputKind, config: Value, payload: impl Serialize) -> Result<Self> {
        Ok(OutputDocument {
            kind,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            payload: serde_json::to_value(payload)?,
        })
    }
}

/// Any document the tool can read.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Input(InputDocument),
    Output(OutputDocument),
}

fn is_output_kind(kind: &str) -> bool {
    serde_json::from_value::<OutputKind>(Value::String(kind.to_string())).is_ok()
}

pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Schema("missing string field \"kind\"".into()))?;
    if is_output_kind(kind) {
        serde_json::from_value(value)
            .map(Document::Output)
            .map_err(|e| Error::Schema(e.to_string()))
    } else {
        serde_json::from_value(value)
            .map(Document::Input)
            .map_err(|e| Error::Schema(e.to_string()))
    }
}

/// Reads an input document. A `blowup_result` output is accepted and
/// yields its blown-up pair.
pub fn parse_input(text: &str) -> Result<Input> {
    match parse_document(text)? {
        Document::Input(doc) => doc.to_input(),
        Document::Output(out) if out.kind == OutputKind::BlowupResult => {
            let pair = out
                .payload
                .get("pair")
                .cloned()
                .ok_or_else(|| Error::Schema("blowup_result has no payload.pair".into()))?;
            let doc: InputDocument =
                serde_json::from_value(pair).map_err(|e| Error::Schema(e.to_string()))?;
            doc.to_input()
        }
        Document::Output(out) => Err(Error::Schema(format!(
            "{} documents cannot be used as input",
            serde_json::to_value(out.kind)?.as_str().unwrap_or("output")
        ))),
    }
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn to_canonical_json(value: &impl Serialize) -> Result<String> {
    // `Value` objects are BTreeMaps, so the round trip sorts every key.
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn big_integers_switch_to_strings() {
        let v = IntVector::new(vec![
            BigInt::from(MAX_SAFE),
            BigInt::from(MAX_SAFE) + 1,
            -BigInt::from(MAX_SAFE) - 1,
        ]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[9007199254740991,"9007199254740992","-9007199254740992"]"#);
        let back: IntVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<IntVector>("[1.5]").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(
            parse_rational(" -2/4 ").unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_integer(3.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn input_round_trip() {
        let pair = fixtures::prism_pair();
        let doc = InputDocument::from_rcharpair(&pair);
        let text = to_canonical_json(&doc).unwrap();
        assert_eq!(parse_input(&text).unwrap(), Input::RCharPair(pair));
    }

    #[test]
    fn canonical_output_sorts_keys() {
        let text = to_canonical_json(&InputDocument::from_hypercharpair(&fixtures::pentagon_pair()))
            .unwrap();
        let keys: Vec<usize> = ["\"dim\"", "\"facets\"", "\"kind\"", "\"vectors\"", "\"vertices\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(text.ends_with("}\n"));
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse_input("{\"kind\": "), Err(Error::Schema(_))));
        assert!(matches!(
            parse_input(r#"{"kind":"rcharpair","dim":1,"vertices":[[0],[1]]}"#),
            Err(Error::Schema(_))
        ));
        assert!(matches!(
            parse_input(r#"{"kind":"rcharpair","dim":1,"vertices":[[0],[1]],"vectors":[[1]]}"#),
            Err(Error::Schema(_))
        ));
        assert!(matches!(
            parse_input(r#"{"kind":"trace","tool_version":"0","config":null,"payload":{}}"#),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn default_facet_names() {
        let input =
            parse_input(r#"{"kind":"polytope","dim":1,"vertices":[[0],[1]]}"#).unwrap();
        let Input::Polytope(p) = input else { panic!() };
        assert_eq!(p.facet_names(), &["F0", "F1"]);
    }
}
