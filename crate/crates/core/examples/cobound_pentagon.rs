//! A null-cobordism certificate for the pentagon pair, with the cap
//! vector `(1,2,0)` and with the searched one.

use toric_resolve::cobordism::verify_transverse;
use toric_resolve::{cobound, cobound_with, fixtures, ResolutionConfig};

fn main() {
    let pentagon = fixtures::pentagon_pair();
    let a = fixtures::pentagon_cap_vector();
    println!("(1,2,0) transverse: {}", verify_transverse(&pentagon, &a).unwrap());

    let config = ResolutionConfig::default();
    let cert = cobound_with(&pentagon, Some(&a), &config).unwrap();
    for l in &cert.locality {
        println!("step {}: {} near the {:?} cap", l.step, l.face, l.cap);
    }
    println!(
        "bounding pair: {} facets",
        cert.trace.final_pair.polytope().num_facets()
    );

    let auto = cobound(&pentagon, &config).unwrap();
    println!(
        "searched cap vector {} needs {} blowups",
        auto.transverse_vector,
        auto.trace.steps.len()
    );
    auto.replay().unwrap();
}
