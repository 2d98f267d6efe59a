//! Shared test support: reference data and a brute-force special-face
//! enumerator that shares no code with the library's geometry.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::Ratio;
use strange_duality::catalog::{Catalog, SingularityEntry};

type Q = Ratio<i64>;
pub type P3 = [i64; 3];

pub fn row(label: &str) -> &'static SingularityEntry {
    Catalog::embedded().find(label).unwrap_or_else(|_| panic!("no row {label}")).0
}

/// The ten blocks of matrices: rows on the left use the matrix, rows on
/// the right use its transpose.
pub type MatrixBlock = (&'static [&'static str], [[i64; 3]; 3], &'static [&'static str]);

pub const MATRIX_BLOCKS: [MatrixBlock; 10] = [
    (&["E12"], [[1, 2, 3], [2, 5, 7], [3, 7, 11]], &["E12"]),
    (&["E13"], [[1, 2, 3], [1, 3, 4], [2, 5, 8]], &["Z11"]),
    (&["E14", "J3,0"], [[1, 2, 3], [1, 3, 4], [1, 3, 5]], &["Q10", "J'9"]),
    (&["Z12"], [[1, 1, 2], [1, 2, 3], [2, 3, 6]], &["Z12"]),
    (&["Z13", "Z1,0"], [[1, 1, 2], [1, 2, 3], [1, 2, 4]], &["Q11", "J'10"]),
    (&["Q12", "Q2,0", "J'2,0"], [[1, 1, 1], [1, 2, 2], [1, 2, 3]], &["Q12", "J'11", "J'2,0"]),
    (&["W12"], [[1, 1, 2], [1, 1, 3], [2, 3, 5]], &["W12"]),
    (&["W13", "W1,0/1", "W1,0/2"], [[1, 1, 2], [1, 1, 3], [1, 2, 3]], &["S11", "K'10", "L10"]),
    (
        &["S12", "S1,0/1", "S1,0/2", "L1,0/1", "L1,0/2", "K'1,0/2", "I1,0"],
        [[1, 1, 1], [1, 1, 2], [1, 2, 2]],
        &["S12", "K'11", "L11", "L1,0/1", "K'1,0/1", "K'1,0/2", "I1,0"],
    ),
    (&["U12", "U1,0", "M1,0"], [[1, 1, 1], [1, 2, 1], [1, 1, 2]], &["U12", "M11", "M1,0"]),
];

pub fn transpose(a: [[i64; 3]; 3]) -> [[i64; 3]; 3] {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| a[j][i]))
}

fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: P3, b: P3) -> P3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: P3, b: P3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn det3(a: P3, b: P3, c: P3) -> i64 {
    dot(a, cross(b, c))
}

/// Rank of a set of integer vectors by minors.
fn rank(vs: &[P3]) -> usize {
    if vs.iter().all(|v| *v == [0, 0, 0]) {
        return 0;
    }
    for a in vs {
        for b in vs {
            for c in vs {
                if det3(*a, *b, *c) != 0 {
                    return 3;
                }
            }
        }
    }
    for a in vs {
        for b in vs {
            if cross(*a, *b) != [0, 0, 0] {
                return 2;
            }
        }
    }
    1
}

/// `p` lies in the closed segment `[a, b]`.
fn on_segment(p: P3, a: P3, b: P3) -> bool {
    if cross(sub(p, a), sub(b, a)) != [0, 0, 0] {
        return false;
    }
    let t = dot(sub(p, a), sub(b, a));
    t >= 0 && t <= dot(sub(b, a), sub(b, a))
}

/// `p` lies in the closed triangle `abc` (all coplanar).
fn in_triangle(p: P3, a: P3, b: P3, c: P3) -> bool {
    let n = cross(sub(b, a), sub(c, a));
    if n == [0, 0, 0] || dot(n, sub(p, a)) != 0 {
        return false;
    }
    let s = [
        dot(n, cross(sub(b, a), sub(p, a))).signum(),
        dot(n, cross(sub(c, b), sub(p, b))).signum(),
        dot(n, cross(sub(a, c), sub(p, c))).signum(),
    ];
    s.iter().all(|x| *x >= 0) || s.iter().all(|x| *x <= 0)
}

/// Extreme points of a coplanar point set.
pub fn planar_vertices(points: &[P3]) -> Vec<P3> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    pts.iter()
        .copied()
        .filter(|p| {
            let others: Vec<P3> = pts.iter().copied().filter(|q| q != p).collect();
            let k = others.len();
            let mut covered = false;
            for i in 0..k {
                for j in i + 1..k {
                    covered |= on_segment(*p, others[i], others[j]);
                    for l in j + 1..k {
                        covered |= in_triangle(*p, others[i], others[j], others[l]);
                    }
                }
            }
            !covered
        })
        .collect()
}

/// Pairs of vertices of a convex polygon forming an edge: all other
/// vertices on one side of the line within the plane.
fn polygon_edges(vs: &[P3]) -> Vec<(P3, P3)> {
    if vs.len() == 2 {
        return vec![(vs[0], vs[1])];
    }
    let n = cross(sub(vs[1], vs[0]), sub(vs[2], vs[0]));
    let mut out = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let signs: Vec<i64> = vs
                .iter()
                .filter(|q| **q != vs[i] && **q != vs[j])
                .map(|q| dot(n, cross(sub(vs[j], vs[i]), sub(*q, vs[i]))).signum())
                .collect();
            if signs.iter().all(|s| *s > 0) || signs.iter().all(|s| *s < 0) {
                out.push((vs[i], vs[j]));
            }
        }
    }
    out
}

/// Coordinates of `z` in the basis `basis` of a subspace, if `z` lies in it.
fn coords(basis: &[P3], z: P3) -> Option<Vec<Q>> {
    let q = |x: i64| Q::from_integer(x);
    let d = basis.len();
    // least-squares-free exact solve: pick d independent coordinate rows
    let rows: Vec<usize> = (0..3).collect();
    let choose: Vec<Vec<usize>> = match d {
        1 => rows.iter().map(|r| vec![*r]).collect(),
        2 => vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        _ => vec![vec![0, 1, 2]],
    };
    for sel in choose {
        let m: Vec<Vec<Q>> = sel.iter().map(|r| basis.iter().map(|b| q(b[*r])).collect()).collect();
        let rhs: Vec<Q> = sel.iter().map(|r| q(z[*r])).collect();
        if let Some(sol) = solve(m, rhs) {
            let back: Vec<Q> =
                (0..3).map(|k| basis.iter().zip(&sol).map(|(b, s)| q(b[k]) * s).sum()).collect();
            return (back.iter().zip(z).all(|(a, b)| *a == q(b))).then_some(sol);
        }
    }
    None
}

fn solve(mut m: Vec<Vec<Q>>, mut rhs: Vec<Q>) -> Option<Vec<Q>> {
    let n = m.len();
    for c in 0..n {
        let p = (c..n).find(|r| m[*r][c] != Q::from_integer(0))?;
        m.swap(c, p);
        rhs.swap(c, p);
        for r in 0..n {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in 0..n {
                    let v = m[c][k];
                    m[r][k] -= f * v;
                }
                let v = rhs[c];
                rhs[r] -= f * v;
            }
        }
    }
    Some((0..n).map(|i| rhs[i] / m[i][i]).collect())
}

const BOX: i64 = 9;

fn lattice_box() -> impl Iterator<Item = P3> {
    (-BOX..=BOX).flat_map(|x| (-BOX..=BOX).flat_map(move |y| (-BOX..=BOX).map(move |z| [x, y, z])))
}

/// `m(s)`: the reciprocal of the least positive value on lattice points of
/// the span of the linear function equal to 1 on the face.
fn level(face: &[P3]) -> i64 {
    let basis = independent(face);
    let min = lattice_box()
        .filter_map(|z| coords(&basis, z))
        .map(|c| c.iter().sum::<Q>())
        .filter(|h| *h > Q::from_integer(0))
        .min()
        .expect("lattice points in the span");
    assert_eq!(*min.numer(), 1, "least positive height is 1/m");
    *min.denom()
}

/// Lattice points of the span in the half-open parallelepiped over `cone`.
fn parallelepiped_count(cone: &[P3]) -> i64 {
    let lo: Vec<i64> = (0..3).map(|k| cone.iter().map(|v| v[k].min(0)).sum()).collect();
    let hi: Vec<i64> = (0..3).map(|k| cone.iter().map(|v| v[k].max(0)).sum()).collect();
    let mut n = 0;
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            for z in lo[2]..=hi[2] {
                if let Some(c) = coords(cone, [x, y, z]) {
                    if c.iter().all(|t| *t >= Q::from_integer(0) && *t < Q::from_integer(1)) {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

fn independent(face: &[P3]) -> Vec<P3> {
    let mut basis: Vec<P3> = Vec::new();
    for p in face {
        let mut trial = basis.clone();
        trial.push(*p);
        if rank(&trial) == trial.len() {
            basis = trial;
        }
    }
    basis
}

/// `V(s)` by counting: a fan of simplicial cones from the first vertex.
fn volume(face: &[P3], edges: &[(P3, P3)]) -> i64 {
    match face.len() {
        1 | 2 => parallelepiped_count(face),
        _ => edges
            .iter()
            .filter(|(a, b)| *a != face[0] && *b != face[0])
            .map(|(a, b)| parallelepiped_count(&[face[0], *a, *b]))
            .sum(),
    }
}

/// `(dim, m, χ)` for every special face, sorted.
pub fn special_faces(points: &[P3], generators: &[P3]) -> Vec<(usize, i64, i64)> {
    let vs = planar_vertices(points);
    let mut faces: Vec<Vec<P3>> = vs.iter().map(|v| vec![*v]).collect();
    let edges = if vs.len() >= 2 { polygon_edges(&vs) } else { vec![] };
    if vs.len() >= 3 {
        faces.extend(edges.iter().map(|(a, b)| vec![*a, *b]));
    }
    if vs.len() >= 2 {
        faces.push(vs.clone());
    }
    let k = generators.len();
    let mut out = Vec::new();
    for face in faces {
        let r = rank(&face) - 1;
        let special = (1u32..(1 << k)).any(|mask| {
            let sub: Vec<P3> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| generators[i]).collect();
            let span = rank(&sub);
            span == r + 1 && face.iter().all(|p| rank(&[sub.clone(), vec![*p]].concat()) == span)
        });
        if !special {
            continue;
        }
        let m = level(&face);
        let v = volume(&face, &edges);
        assert_eq!(v % m, 0, "χ not integral on {face:?}");
        let chi = if r % 2 == 0 { v / m } else { -(v / m) };
        out.push((r, m, chi));
    }
    out.sort();
    out
}

/// `((λ−1)⁻¹ ∏ (λ^m − 1)^χ)^{(−1)^{n−1}}` as an exponent map.
pub fn phi(points: &[P3], generators: &[P3], n: usize) -> BTreeMap<u64, i64> {
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let mut map = BTreeMap::new();
    *map.entry(1).or_insert(0) -= sign;
    for (_, m, chi) in special_faces(points, generators) {
        *map.entry(m as u64).or_insert(0) += sign * chi;
    }
    map.retain(|_, e| *e != 0);
    map
}

pub const STANDARD: [P3; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
pub const CLASS_C: [P3; 3] = [[1, 0, 0], [-1, 2, 0], [0, 0, 1]];
pub const CLASS_D: [P3; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 1, 1]];
