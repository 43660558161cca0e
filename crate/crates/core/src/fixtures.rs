//! Built-in example complexes and a generator of random small triangulations.

use crate::complex::{ComplexKind, PolytopalComplex};
use crate::linalg::{qr, qr_frac};
use num::{BigRational, Zero};
use rand::Rng;

fn pts(raw: &[(i64, i64)]) -> Vec<Vec<BigRational>> {
    raw.iter().map(|&(x, y)| vec![qr(x), qr(y)]).collect()
}

/// The 5-facet polytopal complex with an inner square (+-1, +-1) inside an
/// outer square (+-2, +-2). Facets in label order: A = top trapezoid,
/// B = left, C = bottom, D = right, E = inner square.
pub fn q() -> PolytopalComplex {
    PolytopalComplex::new(
        2,
        ComplexKind::Polytopal2d,
        pts(&[
            (-1, -1),
            (1, -1),
            (1, 1),
            (-1, 1),
            (-2, -2),
            (2, -2),
            (2, 2),
            (-2, 2),
        ]),
        vec![
            vec![3, 2, 6, 7], // A
            vec![7, 4, 0, 3], // B
            vec![4, 5, 1, 0], // C
            vec![5, 6, 2, 1], // D
            vec![0, 1, 2, 3], // E
        ],
    )
    .expect("Q fixture is valid")
}

/// The perturbed variant of [`q`]: same inner square, outer corners moved to
/// (3,2), (-2,2), (-2,-2), (2,-3), so the affine spans of the four diagonal
/// edges are pairwise non-parallel and no three of them meet at a point.
pub fn q_prime() -> PolytopalComplex {
    PolytopalComplex::new(
        2,
        ComplexKind::Polytopal2d,
        pts(&[
            (-1, -1),
            (1, -1),
            (1, 1),
            (-1, 1),
            (-2, -2),
            (2, -3),
            (3, 2),
            (-2, 2),
        ]),
        vec![
            vec![3, 2, 6, 7], // A
            vec![7, 4, 0, 3], // B
            vec![4, 5, 1, 0], // C
            vec![5, 6, 2, 1], // D
            vec![0, 1, 2, 3], // E
        ],
    )
    .expect("Q' fixture is valid")
}

/// Four triangles around a single interior vertex at the origin.
pub fn delta_plus() -> PolytopalComplex {
    PolytopalComplex::new(
        2,
        ComplexKind::Simplicial,
        pts(&[(1, 0), (0, 1), (-1, 0), (0, -1), (0, 0)]),
        vec![vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![3, 0, 4]],
    )
    .expect("delta_plus fixture is valid")
}

/// Two unit squares sharing the edge x = 0.
pub fn two_unit_squares() -> PolytopalComplex {
    PolytopalComplex::new(
        2,
        ComplexKind::Polytopal2d,
        pts(&[(-1, 0), (0, 0), (0, 1), (-1, 1), (1, 0), (1, 1)]),
        vec![vec![0, 1, 2, 3], vec![1, 4, 5, 2]],
    )
    .expect("two-squares fixture is valid")
}

/// The T_n family: one triangle, n-1 quadrilaterals, and two (n+1)-gons.
/// Vertices are (0,0), v_i = (i, i(i+1)/2) and w_j = (j, -j(j+1)/2).
/// Facets in label order: A = upper (n+1)-gon, B = lower (n+1)-gon,
/// then P_0 (the triangle) and P_1..P_{n-1}.
pub fn tn(n: usize) -> PolytopalComplex {
    assert!(n >= 2, "T_n requires n >= 2");
    let mut vertices = vec![vec![qr(0), qr(0)]];
    for i in 1..=n as i64 {
        vertices.push(vec![qr(i), qr(i * (i + 1) / 2)]);
    }
    for j in 1..=n as i64 {
        vertices.push(vec![qr(j), qr(-j * (j + 1) / 2)]);
    }
    let upper: Vec<usize> = std::iter::once(0).chain(1..=n).collect();
    let lower: Vec<usize> = std::iter::once(0).chain((n + 1..=2 * n).rev()).collect();
    let mut facets = vec![upper, lower];
    facets.push(vec![0, n + 1, 1]); // P_0
    for i in 1..n {
        facets.push(vec![i, n + i, n + i + 1, i + 1]); // P_i
    }
    PolytopalComplex::new(2, ComplexKind::Polytopal2d, vertices, facets)
        .expect("T_n fixture is valid")
}

/// Names of the built-in fixtures, for the CLI.
pub fn fixture_by_name(name: &str) -> Option<PolytopalComplex> {
    match name {
        "q" => Some(q()),
        "qprime" => Some(q_prime()),
        "delta_plus" => Some(delta_plus()),
        "two_squares" => Some(two_unit_squares()),
        _ => name
            .strip_prefix('t')
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&n| n >= 2)
            .map(tn),
    }
}

pub const FIXTURE_NAMES: &[&str] = &["q", "qprime", "delta_plus", "two_squares", "t2", "t3", "t4"];

/// Random triangulation of a triangle by repeated centroid and edge-midpoint
/// splits. Midpoint splits produce collinear interior edges, which is the
/// interesting case for lattice computations. At most `max_facets` triangles.
pub fn random_triangulation(rng: &mut impl Rng, max_facets: usize) -> PolytopalComplex {
    let mut vertices: Vec<Vec<BigRational>> = pts(&[(0, 0), (6, 0), (0, 6)]);
    let mut triangles: Vec<[usize; 3]> = vec![[0, 1, 2]];
    while triangles.len() + 2 <= max_facets {
        if rng.gen_bool(0.5) {
            // Centroid split of a random triangle.
            let ti = rng.gen_range(0..triangles.len());
            let [a, b, c] = triangles.swap_remove(ti);
            let centroid: Vec<BigRational> = (0..2)
                .map(|k| {
                    (&vertices[a][k] + &vertices[b][k] + &vertices[c][k]) * qr_frac(1, 3)
                })
                .collect();
            let g = vertices.len();
            vertices.push(centroid);
            triangles.extend([[a, b, g], [b, c, g], [c, a, g]]);
        } else {
            // Midpoint split of a random edge (both sides if interior).
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for t in &triangles {
                for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                    let e = (u.min(v), u.max(v));
                    if !edges.contains(&e) {
                        edges.push(e);
                    }
                }
            }
            edges.sort_unstable();
            let (u, v) = edges[rng.gen_range(0..edges.len())];
            let adjacent: Vec<usize> = (0..triangles.len())
                .filter(|&i| triangles[i].contains(&u) && triangles[i].contains(&v))
                .collect();
            if adjacent.len() + triangles.len() > max_facets {
                continue;
            }
            let midpoint: Vec<BigRational> = (0..2)
                .map(|k| (&vertices[u][k] + &vertices[v][k]) * qr_frac(1, 2))
                .collect();
            let m = vertices.len();
            vertices.push(midpoint);
            for &ti in adjacent.iter().rev() {
                let t = triangles.swap_remove(ti);
                let w = *t.iter().find(|&&x| x != u && x != v).unwrap();
                triangles.push([u, m, w]);
                triangles.push([m, v, w]);
            }
        }
    }
    let facets = triangles.iter().map(|t| t.to_vec()).collect();
    PolytopalComplex::new(2, ComplexKind::Simplicial, vertices, facets)
        .expect("generated triangulation is valid")
}

/// True iff the three points are collinear (used by tests).
pub fn collinear(a: &[BigRational], b: &[BigRational], c: &[BigRational]) -> bool {
    ((&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0])).is_zero()
}
