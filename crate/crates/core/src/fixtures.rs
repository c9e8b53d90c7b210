//! Worked examples: the triangular prism whose edge blowup is a smooth
//! cube, and the pentagon hyper characteristic pair with its capped prism.

use crate::charpair::{HyperCharPair, RCharPair};
use crate::lattice::IntVector;
use crate::polytope::{FacetSet, SimplePolytope};

fn vectors(rows: &[[i64; 3]]) -> Vec<IntVector> {
    rows.iter().map(|r| IntVector::from_i64s(r)).collect()
}

fn vertex_sets(sets: &[[usize; 3]]) -> Vec<FacetSet> {
    sets.iter().map(|s| s.iter().copied().collect()).collect()
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Triangular prism: facets `bottom`, `top` (both `(0,0,1)`) and the
/// rectangles `A = (1,0,0)`, `B = (1,2,0)`, `C = (0,1,0)`. The edge
/// `A ∩ B` has order 2.
pub fn prism_pair() -> RCharPair {
    let polytope = SimplePolytope::new(
        3,
        names(&["bottom", "top", "A", "B", "C"]),
        vertex_sets(&[
            [0, 2, 3],
            [0, 3, 4],
            [0, 2, 4],
            [1, 2, 3],
            [1, 3, 4],
            [1, 2, 4],
        ]),
    )
    .expect("prism is simple");
    RCharPair::new(
        polytope,
        vectors(&[[0, 0, 1], [0, 0, 1], [1, 0, 0], [1, 2, 0], [0, 1, 0]]),
    )
    .expect("shapes match")
}

/// The prism with the edge `A ∩ B` cut off; the new facet carries
/// `(1,1,0)` and every vertex is smooth.
pub fn cube_pair() -> RCharPair {
    let polytope = SimplePolytope::new(
        3,
        names(&["bottom", "top", "A", "B", "C", "blowup(A+B)"]),
        vertex_sets(&[
            [0, 3, 5],
            [0, 2, 5],
            [0, 3, 4],
            [0, 2, 4],
            [1, 3, 5],
            [1, 2, 5],
            [1, 3, 4],
            [1, 2, 4],
        ]),
    )
    .expect("cube is simple");
    RCharPair::new(
        polytope,
        vectors(&[[0, 0, 1], [0, 0, 1], [1, 0, 0], [1, 2, 0], [0, 1, 0], [1, 1, 0]]),
    )
    .expect("shapes match")
}

/// Pentagon with edges in cyclic order carrying `(1,0,0)`, `(0,0,1)`,
/// `(1,1,0)`, `(1,1,1)`, `(0,1,1)`.
pub fn pentagon_pair() -> HyperCharPair {
    let polygon = SimplePolytope::polygon(5);
    let polytope = SimplePolytope::new_unchecked(
        2,
        names(&["E0", "E1", "E2", "E3", "E4"]),
        polygon.vertices().to_vec(),
    );
    HyperCharPair::new(
        polytope,
        vectors(&[[1, 0, 0], [0, 0, 1], [1, 1, 0], [1, 1, 1], [0, 1, 1]]),
    )
    .expect("shapes match")
}

/// The transverse vector used to cap the pentagonal prism.
pub fn pentagon_cap_vector() -> IntVector {
    IntVector::from_i64s(&[1, 2, 0])
}

/// Pentagon × interval with side facets carrying the pentagon's vectors
/// and both caps carrying `(1,2,0)`.
pub fn pentagonal_prism_pair() -> RCharPair {
    let pentagon = pentagon_pair();
    let polytope = pentagon
        .polytope()
        .product_with_interval()
        .expect("pentagon is simple");
    let mut vs = pentagon.vectors().to_vec();
    vs.push(pentagon_cap_vector());
    vs.push(pentagon_cap_vector());
    RCharPair::new(polytope, vs).expect("shapes match")
}

/// `Δ^n` with `e_1, ..., e_n` and `-(1, ..., 1)`: the smooth model of
/// complex projective space.
pub fn projective_space_pair(n: usize) -> RCharPair {
    let mut vs: Vec<IntVector> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            IntVector::from_i64s(&e)
        })
        .collect();
    vs.push(IntVector::from_i64s(&vec![-1; n]));
    RCharPair::new(SimplePolytope::simplex(n), vs).expect("shapes match")
}

/// `Δ^n` with the standard basis of `Z^{n+1}` on its facets.
pub fn sphere_pair(n: usize) -> HyperCharPair {
    let vs = (0..=n)
        .map(|i| {
            let mut e = vec![0; n + 1];
            e[i] = 1;
            IntVector::from_i64s(&e)
        })
        .collect();
    HyperCharPair::new(SimplePolytope::simplex(n), vs).expect("shapes match")
}
