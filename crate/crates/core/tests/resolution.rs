mod common;

use common::{fixture_pairs, oracle_order, random_singular_pair, rng};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use toric_resolve::lattice::interior_representatives;
use toric_resolve::resolution::{multiset_descends, FaceRule};
use toric_resolve::{fixtures, resolve, Error, RCharPair, ResolutionConfig, ResolutionTrace};

fn check_trace(pair: &RCharPair, trace: &ResolutionTrace) -> Result<(), TestCaseError> {
    prop_assert_eq!(&trace.initial, pair);
    prop_assert!(trace.final_pair.is_characteristic().unwrap());
    prop_assert!(trace.steps.len() <= trace.config.max_steps.unwrap());
    let mut current = pair.clone();
    for step in &trace.steps {
        // the blown-up face is maximal singular and its order is what the
        // oracle says
        prop_assert_eq!(&step.face_order, &oracle_order(&current, &step.choice.face));
        prop_assert!(step.face_order > BigInt::one());
        let locus = current.singular_locus().unwrap();
        prop_assert!(locus.maximal().any(|e| e.face == step.choice.face));
        for v in &step.new_vertices {
            prop_assert_eq!(&v.prediction.predicted, &v.recomputed);
            prop_assert!(v.recomputed < v.prediction.source_order);
        }
        prop_assert!(multiset_descends(
            &step.before.vertex_orders,
            &step.after.vertex_orders
        ));
        current = toric_resolve::resolution::blowup_pair(&current, &step.choice)
            .unwrap()
            .pair;
        prop_assert_eq!(&current.vertex_orders().unwrap(), &step.after.vertex_orders);
    }
    prop_assert_eq!(&current, &trace.final_pair);
    trace.replay().unwrap();
    Ok(())
}

/// Every singular face whose larger faces are all smooth has an interior
/// lattice point with all coefficients strictly between 0 and 1.
fn check_maximal_faces(pair: &RCharPair) -> Result<(), TestCaseError> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    for e in pair.singular_locus().unwrap().maximal() {
        let m = pair.face_matrix(&e.face);
        let reps = interior_representatives(&m).unwrap();
        prop_assert!(!reps.is_empty(), "face {}", e.face);
        for c in reps {
            prop_assert!(c.entries().iter().all(|x| *x > zero && *x < one));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_singular_pairs_resolve(seed in any::<u64>()) {
        let pair = random_singular_pair(&mut rng(seed));
        check_maximal_faces(&pair)?;
        let trace = resolve(&pair, &ResolutionConfig::default()).unwrap();
        prop_assert!(!trace.steps.is_empty());
        check_trace(&pair, &trace)?;
        let lex = resolve(&pair, &ResolutionConfig { face_rule: FaceRule::LexOnly, ..Default::default() }).unwrap();
        check_trace(&pair, &lex)?;
    }
}

#[test]
fn fixtures_resolve() {
    for (name, pair) in fixture_pairs() {
        let trace = resolve(&pair, &ResolutionConfig::default()).unwrap();
        check_trace(&pair, &trace).unwrap_or_else(|e| panic!("{name}: {e}"));
        check_maximal_faces(&pair).unwrap();
    }
}

#[test]
fn fixtures_resolve_within_excess_bound() {
    for (name, pair) in fixture_pairs() {
        let excess: BigInt = pair
            .vertex_orders()
            .unwrap()
            .iter()
            .map(|o| o - BigInt::one())
            .sum();
        let bound = excess * BigInt::from(pair.dim());
        let steps = resolve(&pair, &ResolutionConfig::default()).unwrap().steps.len();
        assert!(BigInt::from(steps) <= bound, "{name}: {steps} steps, bound {bound}");
    }
}

#[test]
fn prism_resolves_to_cube() {
    let trace = resolve(&fixtures::prism_pair(), &ResolutionConfig::default()).unwrap();
    assert_eq!(trace.steps.len(), 1);
    assert_eq!(trace.final_pair, fixtures::cube_pair());
}

#[test]
fn smooth_pair_needs_no_steps() {
    let trace = resolve(&fixtures::cube_pair(), &ResolutionConfig::default()).unwrap();
    assert!(trace.steps.is_empty());
    assert_eq!(trace.config.max_steps, Some(80));
}

#[test]
fn trace_survives_json() {
    let trace = resolve(&fixtures::pentagonal_prism_pair(), &ResolutionConfig::default()).unwrap();
    let text = serde_json::to_string(&trace).unwrap();
    let back: ResolutionTrace = serde_json::from_str(&text).unwrap();
    assert_eq!(back, trace);
    back.replay().unwrap();
}

#[test]
fn edited_traces_fail_replay() {
    let trace = resolve(&fixtures::prism_pair(), &ResolutionConfig::default()).unwrap();

    let mut t = trace.clone();
    t.steps[0].new_vertices[0].recomputed = BigInt::from(2);
    assert!(matches!(t.replay(), Err(Error::ReplayMismatch(_))));

    let mut t = trace.clone();
    t.steps[0].choice.new_vector = toric_resolve::IntVector::from_i64s(&[1, 1, 1]);
    assert!(t.replay().is_err());

    let mut t = trace;
    t.steps.clear();
    assert!(matches!(t.replay(), Err(Error::ReplayMismatch(_))));
}

#[test]
fn guard_is_reported_with_partial_trace() {
    let pair = fixtures::pentagonal_prism_pair();
    let err = resolve(&pair, &ResolutionConfig { max_steps: Some(2), ..Default::default() }).unwrap_err();
    let Error::GuardExceeded { max_steps, partial } = err else {
        panic!("expected guard error");
    };
    assert_eq!(max_steps, 2);
    assert_eq!(partial.steps.len(), 2);
    assert!(!partial.final_pair.singular_locus().unwrap().is_empty());
}
