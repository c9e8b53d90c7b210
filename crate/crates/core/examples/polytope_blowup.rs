//! Cutting a vertex off a triangle and an edge off a prism.

use toric_resolve::polytope::VertexOrigin;
use toric_resolve::{Face, SimplePolytope};

fn main() {
    let triangle = SimplePolytope::simplex(2);
    let cut = triangle.blowup(&Face::new([0, 1])).unwrap();
    println!(
        "triangle minus a corner: {} facets, {} vertices",
        cut.polytope.num_facets(),
        cut.polytope.num_vertices()
    );

    let prism = triangle.product_with_interval().unwrap();
    let edge = Face::new([0, 1]);
    let cut = prism.blowup(&edge).unwrap();
    println!("prism facets: {:?}", cut.polytope.facet_names());
    for (v, origin) in cut.provenance.iter().enumerate() {
        let facets = cut.polytope.vertex(v);
        match origin {
            VertexOrigin::Kept { source } => println!("vertex {v} {facets:?} kept from {source}"),
            VertexOrigin::Cut { source, dropped } => {
                println!("vertex {v} {facets:?} replaces {source}, leaving facet {dropped}")
            }
        }
    }
}
