//! Facet normals of the cone over a square at height one.

use num_rational::BigRational;
use toric_resolve::cobordism::cone_hyper_characteristic;
use toric_resolve::{EmbeddedPolytope, RationalVector, SimplePolytope};

fn point(xs: [i64; 3]) -> RationalVector {
    RationalVector::new(xs.iter().map(|&x| BigRational::from_integer(x.into())).collect())
}

fn main() {
    let square = EmbeddedPolytope::new(
        SimplePolytope::polygon(4),
        vec![point([1, 0, 1]), point([0, 1, 1]), point([-1, 0, 1]), point([0, -1, 1])],
    )
    .unwrap();
    let cone = cone_hyper_characteristic(&square).unwrap();
    for (i, v) in cone.pair.vectors().iter().enumerate() {
        println!("edge {i}: {v}");
    }
    println!("hyper characteristic: {}", cone.report);
}
