#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_resolve::fixtures;
use toric_resolve::{Face, HyperCharPair, IntVector, RCharPair, SimplePolytope};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---- oracles, deliberately naive ----

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|j| {
                if m[0][j] == 0 {
                    return 0;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * cofactor_det(&minor)
            })
            .sum(),
    }
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Columns as given; returns the `k × k` minor on `rows`.
fn minor(cols: &[Vec<i64>], rows: &[usize]) -> Vec<Vec<i128>> {
    rows.iter()
        .map(|&r| cols.iter().map(|c| c[r] as i128).collect())
        .collect()
}

/// gcd of all maximal minors of the matrix with the given columns; 0 when
/// the columns are dependent.
pub fn minors_gcd(cols: &[Vec<i64>]) -> i128 {
    let n = cols[0].len();
    subsets(n, cols.len())
        .iter()
        .fold(0i128, |g, rows| g.gcd(&cofactor_det(&minor(cols, rows))))
}

/// Lattice points `x` of the half-open parallelepiped spanned by `cols`,
/// by walking the box over a nonsingular set of coordinates.
pub fn parallelepiped_count(cols: &[Vec<i64>]) -> u64 {
    let n = cols[0].len();
    let k = cols.len();
    let rows = subsets(n, k)
        .into_iter()
        .find(|r| cofactor_det(&minor(cols, r)) != 0)
        .expect("full column rank");
    let ms = minor(cols, &rows);
    let d = cofactor_det(&ms);
    // adjugate: adj[i][j] = (-1)^{i+j} det(minor without row j, col i)
    let adj: Vec<Vec<i128>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let sub: Vec<Vec<i128>> = (0..k)
                        .filter(|&r| r != j)
                        .map(|r| (0..k).filter(|&c| c != i).map(|c| ms[r][c]).collect())
                        .collect();
                    let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                    s * cofactor_det(&sub)
                })
                .collect()
        })
        .collect();
    let rest: Vec<usize> = (0..n).filter(|r| !rows.contains(r)).collect();
    // integrality of the remaining coordinates: M_rest · adj · x ≡ 0 mod d
    let rest_form: Vec<Vec<i128>> = rest
        .iter()
        .map(|&r| {
            (0..k)
                .map(|j| (0..k).map(|i| cols[i][r] as i128 * adj[i][j]).sum())
                .collect()
        })
        .collect();
    let lo: Vec<i128> = rows
        .iter()
        .map(|&r| cols.iter().map(|c| (c[r] as i128).min(0)).sum())
        .collect();
    let hi: Vec<i128> = rows
        .iter()
        .map(|&r| cols.iter().map(|c| (c[r] as i128).max(0)).sum())
        .collect();
    let sd = d.signum();
    let ad = d.abs();
    let mut count = 0u64;
    let mut x = lo.clone();
    // y = sd · adj · x must satisfy 0 <= y < |d| (that is c in [0,1)^k)
    #[allow(clippy::too_many_arguments)]
    fn walk(
        pos: usize,
        x: &mut Vec<i128>,
        lo: &[i128],
        hi: &[i128],
        adj: &[Vec<i128>],
        sd: i128,
        ad: i128,
        rest_form: &[Vec<i128>],
        count: &mut u64,
    ) {
        let k = x.len();
        if pos == k {
            for row in adj {
                let y: i128 = sd * row.iter().zip(x.iter()).map(|(a, b)| a * b).sum::<i128>();
                if y < 0 || y >= ad {
                    return;
                }
            }
            for row in rest_form {
                let z: i128 = row.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
                if z % ad != 0 {
                    return;
                }
            }
            *count += 1;
            return;
        }
        for v in lo[pos]..=hi[pos] {
            x[pos] = v;
            // prune: can the remaining coordinates still bring y into range?
            let feasible = adj.iter().all(|row| {
                let mut ymin = 0i128;
                let mut ymax = 0i128;
                for j in 0..k {
                    let a = sd * row[j];
                    if j <= pos {
                        ymin += a * x[j];
                        ymax += a * x[j];
                    } else {
                        let (p, q) = (a * lo[j], a * hi[j]);
                        ymin += p.min(q);
                        ymax += p.max(q);
                    }
                }
                ymax >= 0 && ymin < ad
            });
            if feasible {
                walk(pos + 1, x, lo, hi, adj, sd, ad, rest_form, count);
            }
        }
    }
    walk(0, &mut x, &lo, &hi, &adj, sd, ad, &rest_form, &mut count);
    count
}

pub fn to_i64s(v: &IntVector) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).expect("small entries")).collect()
}

pub fn face_columns(pair: &RCharPair, face: &Face) -> Vec<Vec<i64>> {
    face.indices().iter().map(|&i| to_i64s(pair.vector(i))).collect()
}

/// Order of a face of an R-characteristic pair, from the minors oracle.
pub fn oracle_order(pair: &RCharPair, face: &Face) -> BigInt {
    BigInt::from(minors_gcd(&face_columns(pair, face)).abs())
}

/// Columns are dependent iff every maximal minor vanishes.
pub fn oracle_independent(cols: &[Vec<i64>]) -> bool {
    minors_gcd(cols) != 0
}

// ---- generators ----

pub fn random_matrix_columns(rng: &mut impl Rng, n: usize, k: usize, bound: i64) -> Vec<Vec<i64>> {
    loop {
        let cols: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
            .collect();
        if oracle_independent(&cols) {
            return cols;
        }
    }
}

/// Simple polytopes of dimension 2 to 4 with at most 7 facets.
pub fn polytope_zoo() -> Vec<SimplePolytope> {
    let interval = SimplePolytope::simplex(1);
    let square = interval.product(&interval);
    let mut zoo = vec![
        SimplePolytope::simplex(2),
        SimplePolytope::simplex(3),
        SimplePolytope::simplex(4),
        SimplePolytope::polygon(4),
        SimplePolytope::polygon(5),
        SimplePolytope::polygon(6),
        SimplePolytope::polygon(7),
        SimplePolytope::simplex(2).product_with_interval().unwrap(),
        square.product_with_interval().unwrap(),
        SimplePolytope::polygon(5).product_with_interval().unwrap(),
        SimplePolytope::simplex(3).product_with_interval().unwrap(),
        SimplePolytope::simplex(2).product(&SimplePolytope::simplex(2)),
        SimplePolytope::simplex(2).product(&square),
    ];
    let s3 = SimplePolytope::simplex(3);
    zoo.push(s3.blowup(&s3.vertex_face(0)).unwrap().polytope);
    zoo.push(s3.blowup(&Face::new([0, 1])).unwrap().polytope);
    let s4 = SimplePolytope::simplex(4);
    zoo.push(s4.blowup(&Face::new([0, 1])).unwrap().polytope);
    zoo.push(s4.blowup(&s4.vertex_face(0)).unwrap().polytope);
    zoo.retain(|p| p.num_facets() <= 7 && p.dim() <= 4);
    zoo
}

fn random_vector(rng: &mut impl Rng, len: usize, bound: i64) -> IntVector {
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
        let iv = IntVector::from_i64s(&v);
        if iv.is_primitive() {
            return iv;
        }
    }
}

/// A valid R-characteristic pair on a polytope from the zoo, entries in
/// `[-2, 2]`.
pub fn random_rcharpair(rng: &mut impl Rng) -> RCharPair {
    let zoo = polytope_zoo();
    loop {
        let p = zoo.choose(rng).unwrap().clone();
        if let Some(pair) = random_pair_on(rng, &p, 200) {
            return pair;
        }
    }
}

pub fn random_pair_on(rng: &mut impl Rng, p: &SimplePolytope, tries: usize) -> Option<RCharPair> {
    for _ in 0..tries {
        let vs = (0..p.num_facets())
            .map(|_| random_vector(rng, p.dim(), 2))
            .collect();
        let pair = RCharPair::new(p.clone(), vs).unwrap();
        if pair.ensure_valid().is_ok() {
            return Some(pair);
        }
    }
    None
}

pub fn random_singular_pair(rng: &mut impl Rng) -> RCharPair {
    loop {
        let pair = random_rcharpair(rng);
        if !pair.singular_locus().unwrap().is_empty() {
            return pair;
        }
    }
}

/// A valid hyper characteristic pair on a polygon (3 to 6 edges) or on
/// `Δ^3`, entries in `[-2, 2]`.
pub fn random_hyper_pair(rng: &mut impl Rng) -> HyperCharPair {
    loop {
        let p = if rng.gen_bool(0.25) {
            SimplePolytope::simplex(3)
        } else {
            SimplePolytope::polygon(rng.gen_range(3..=6))
        };
        for _ in 0..500 {
            let vs = (0..p.num_facets())
                .map(|_| random_vector(rng, p.dim() + 1, 2))
                .collect();
            let pair = HyperCharPair::new(p.clone(), vs).unwrap();
            if pair.ensure_valid().is_ok() {
                return pair;
            }
        }
    }
}

pub fn fixture_pairs() -> Vec<(&'static str, RCharPair)> {
    vec![
        ("prism", fixtures::prism_pair()),
        ("cube", fixtures::cube_pair()),
        ("pentagonal prism", fixtures::pentagonal_prism_pair()),
        ("projective plane", fixtures::projective_space_pair(2)),
        ("projective 3-space", fixtures::projective_space_pair(3)),
    ]
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}
