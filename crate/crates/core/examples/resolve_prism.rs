//! Resolving the triangular prism: one blowup gives the smooth cube.

use toric_resolve::{fixtures, resolve, ResolutionConfig};

fn main() {
    let pair = fixtures::prism_pair();
    let trace = resolve(&pair, &ResolutionConfig::default()).unwrap();
    for step in &trace.steps {
        println!(
            "blow up {} (order {}): c = {}, new vector {}",
            step.choice.face, step.face_order, step.choice.coefficients, step.choice.new_vector
        );
        for v in &step.new_vertices {
            println!(
                "  new vertex {}: order {} -> {}",
                v.prediction.vertex, v.prediction.source_order, v.recomputed
            );
        }
    }
    assert_eq!(trace.final_pair, fixtures::cube_pair());
    trace.replay().unwrap();
    println!("final pair is the cube; trace replays");
}
