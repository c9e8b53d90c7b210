//! Index of a face lattice in its saturation, three ways.

use toric_resolve::lattice::{coset_representatives, saturation_index, smith_normal_form};
use toric_resolve::IntMatrix;

fn main() {
    // columns (1,0,0) and (1,2,0): the singular edge of the prism
    let m = IntMatrix::from_rows(&[vec![1, 1], vec![0, 2], vec![0, 0]]);
    let snf = smith_normal_form(&m);
    println!("invariant factors: {:?}", snf.invariant_factors());
    println!("saturation index:  {}", saturation_index(&m).unwrap());
    for c in coset_representatives(&m).unwrap() {
        println!("coset representative {c}");
    }
}
