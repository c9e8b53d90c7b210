//! Orders of the faces of the pentagonal prism.

use toric_resolve::fixtures;

fn main() {
    let pair = fixtures::pentagonal_prism_pair();
    let p = pair.polytope();
    for (v, order) in pair.vertex_orders().unwrap().iter().enumerate() {
        println!("vertex {v} {}: order {order}", p.vertex_face(v));
    }
    println!("singular locus:");
    for e in pair.singular_locus().unwrap().entries {
        let mark = if e.maximal { " (maximal)" } else { "" };
        println!("  {} order {}{mark}", e.face, e.order);
    }
}
