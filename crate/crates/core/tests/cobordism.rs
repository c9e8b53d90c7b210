mod common;

use common::{cofactor_det, random_hyper_pair, rng, to_i64s};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use toric_resolve::cobordism::{
    build_prism_pair, cone_hyper_characteristic, find_transverse_vector, verify_transverse, Cap,
};
use toric_resolve::polytope::Invariant;
use toric_resolve::{
    cobound, cobound_with, fixtures, EmbeddedPolytope, Error, HyperCharPair, IntVector,
    RationalVector, ResolutionConfig, SimplePolytope,
};

/// `a` is transverse iff `det[ξ(E_1) .. ξ(E_n) | a] != 0` at every vertex.
fn oracle_transverse(pair: &HyperCharPair, a: &[i64]) -> bool {
    let p = pair.polytope();
    (0..p.num_vertices()).all(|b| {
        let mut cols: Vec<Vec<i64>> = p.vertex(b).iter().map(|&f| to_i64s(pair.vector(f))).collect();
        cols.push(a.to_vec());
        let m: Vec<Vec<i128>> = (0..cols.len())
            .map(|r| cols.iter().map(|c| c[r] as i128).collect())
            .collect();
        cofactor_det(&m) != 0
    })
}

fn all_vectors(len: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-r..=r).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn check_certificate(pair: &HyperCharPair) -> Result<(), TestCaseError> {
    let a = find_transverse_vector(pair).unwrap();
    let ai = to_i64s(&a);
    prop_assert!(oracle_transverse(pair, &ai));
    prop_assert!(a.is_primitive());
    // nothing strictly shorter in sup norm is transverse
    let r = ai.iter().map(|x| x.abs()).max().unwrap();
    for v in all_vectors(ai.len(), r - 1) {
        if v.iter().any(|&x| x != 0) {
            prop_assert!(!oracle_transverse(pair, &v), "{:?} is shorter", v);
        }
    }

    let cert = cobound(pair, &ResolutionConfig::default()).unwrap();
    let sides = pair.polytope().num_facets();
    let prism = &cert.prism;
    // every face E × I is smooth
    for face in prism.polytope().proper_faces() {
        if face.facets().iter().all(|&f| f < sides) {
            prop_assert!(prism.face_order(&face).unwrap().is_one());
        }
    }
    // each blowup sits over one cap
    let mut cap_of: Vec<Option<Cap>> = vec![None; sides];
    cap_of.extend([Some(Cap::Bottom), Some(Cap::Top)]);
    for (step, l) in cert.trace.steps.iter().zip(&cert.locality) {
        let caps: Vec<Cap> = step.choice.face.facets().iter().filter_map(|&f| cap_of[f]).collect();
        prop_assert!(!caps.is_empty());
        prop_assert!(caps.iter().all(|&c| c == l.cap));
        cap_of.push(Some(l.cap));
    }
    prop_assert_eq!(&cert.trace.final_pair.vectors()[..sides], pair.vectors());
    prop_assert!(cert.trace.final_pair.is_characteristic().unwrap());
    cert.replay().unwrap();
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn random_hyper_pairs_bound(seed in any::<u64>()) {
        let pair = random_hyper_pair(&mut rng(seed));
        prop_assert!(pair.validate_hyper_characteristic().is_valid());
        check_certificate(&pair)?;
    }
}

#[test]
fn fixtures_bound() {
    check_certificate(&fixtures::pentagon_pair()).unwrap();
    for n in 1..=3 {
        check_certificate(&fixtures::sphere_pair(n)).unwrap();
    }
}

#[test]
fn pentagon_with_the_given_cap_vector() {
    let pentagon = fixtures::pentagon_pair();
    let a = fixtures::pentagon_cap_vector();
    assert!(verify_transverse(&pentagon, &a).unwrap());
    assert!(oracle_transverse(&pentagon, &[1, 2, 0]));
    let cert = cobound_with(&pentagon, Some(&a), &ResolutionConfig::default()).unwrap();
    assert!(!cert.searched);
    assert_eq!(cert.prism, fixtures::pentagonal_prism_pair());
    assert!(cert.locality.iter().all(|l| l.on_cap_facet));
    cert.replay().unwrap();
}

#[test]
fn rejected_cap_vectors() {
    let pentagon = fixtures::pentagon_pair();
    let bad = IntVector::from_i64s(&[1, 1, 0]);
    assert!(!verify_transverse(&pentagon, &bad).unwrap());
    assert!(!oracle_transverse(&pentagon, &[1, 1, 0]));
    assert!(matches!(
        cobound_with(&pentagon, Some(&bad), &ResolutionConfig::default()),
        Err(Error::NotTransverse { vertex: 1, .. })
    ));
    assert!(matches!(
        build_prism_pair(&pentagon, &IntVector::from_i64s(&[1, 2])),
        Err(Error::DimensionMismatch(_))
    ));
}

#[test]
fn certificate_survives_json() {
    let cert = cobound(&fixtures::pentagon_pair(), &ResolutionConfig::default()).unwrap();
    let text = serde_json::to_string(&cert).unwrap();
    let back: toric_resolve::CobordismCertificate = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cert);
    back.replay().unwrap();

    let mut forged = back;
    forged.transverse_vector = IntVector::from_i64s(&[1, 2, 0]);
    assert!(forged.replay().is_err());
}

fn ints(rows: &[&[i64]]) -> Vec<RationalVector> {
    rows.iter()
        .map(|r| RationalVector::new(r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()))
        .collect()
}

#[test]
fn standard_simplex_cones() {
    // vertex i of the simplex sits at e_i; facet j misses vertex n - j
    for n in 1..=3 {
        let p = SimplePolytope::simplex(n);
        let coords: Vec<Vec<i64>> = (0..=n)
            .map(|v| {
                let mut e = vec![0; n + 1];
                let missing = (0..=n).find(|f| !p.vertex(v).contains(f)).unwrap();
                e[missing] = 1;
                e
            })
            .collect();
        let rows: Vec<&[i64]> = coords.iter().map(|c| c.as_slice()).collect();
        let ep = EmbeddedPolytope::new(p, ints(&rows)).unwrap();
        let cone = cone_hyper_characteristic(&ep).unwrap();
        // facet j is the cone over every e_i with i != j; its outward normal is -e_j
        for (j, v) in cone.pair.vectors().iter().enumerate() {
            let mut expect = vec![0; n + 1];
            expect[j] = -1;
            assert_eq!(v, &IntVector::from_i64s(&expect));
        }
        assert!(cone.report.is_valid());
    }
}

#[test]
fn scaled_rational_coordinates_give_the_same_normals() {
    let square = SimplePolytope::polygon(4);
    let coords = |s: i64, d: i64| {
        [[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1]]
            .iter()
            .map(|row| {
                RationalVector::new(
                    row.iter()
                        .map(|&x| BigRational::new(BigInt::from(x * s), BigInt::from(d)))
                        .collect(),
                )
            })
            .collect::<Vec<_>>()
    };
    let a = cone_hyper_characteristic(&EmbeddedPolytope::new(square.clone(), coords(1, 1)).unwrap()).unwrap();
    let b = cone_hyper_characteristic(&EmbeddedPolytope::new(square, coords(3, 7)).unwrap()).unwrap();
    assert_eq!(a.pair, b.pair);
    assert!(a.report.has(Invariant::NotUnimodular));
}

#[test]
fn embedded_polytope_checks() {
    let p = SimplePolytope::simplex(1);
    assert!(EmbeddedPolytope::new(p.clone(), ints(&[&[0, 0], &[0, 1]])).is_err());
    assert!(EmbeddedPolytope::new(p.clone(), ints(&[&[1, 0, 0], &[0, 1, 0]])).is_err());
    assert!(EmbeddedPolytope::new(p, ints(&[&[1, 0]])).is_err());
}
