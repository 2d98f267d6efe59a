//! Exact convex hulls and polar duals of small point sets in R³.
//!
//! Inputs here never exceed a few dozen points, so the hull is found by
//! enumerating candidate supporting planes through point triples. Every
//! comparison is exact.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::linalg::{primitive_integer, rank3, Rational, Vec3Q};
use super::GeometryError;

/// A supporting half-space `⟨normal, x⟩ ≥ offset` of a full-dimensional
/// polytope. The normal is a primitive integer vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec3Q,
    pub offset: Rational,
}

impl Facet {
    /// Builds the facet `⟨n, x⟩ ≥ ⟨n, p⟩` with `n` rescaled to be primitive.
    fn through(normal: &Vec3Q, point: &Vec3Q) -> Facet {
        let ints = primitive_integer(&normal.0).expect("nonzero normal");
        let n = Vec3Q(std::array::from_fn(|i| Rational::from_integer(ints[i].clone())));
        let offset = n.dot(point);
        Facet { normal: n, offset }
    }

    pub fn slack(&self, p: &Vec3Q) -> Rational {
        self.normal.dot(p) - &self.offset
    }
}

/// Convex polytope with exact rational vertices.
///
/// Vertices are irredundant and kept in ascending lexicographic order.
/// Facets are present exactly when `dim == 3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolytope {
    vertices: Vec<Vec3Q>,
    dim: usize,
    facets: Vec<Facet>,
}

impl RationalPolytope {
    pub fn vertices(&self) -> &[Vec3Q] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(Vec3Q::is_integral)
    }

    pub fn translate(&self, by: &Vec3Q) -> RationalPolytope {
        let moved: Vec<Vec3Q> = self.vertices.iter().map(|v| v + by).collect();
        convex_hull(&moved)
    }

    /// True when the origin lies in the interior (dim 3 only).
    pub fn contains_origin_strictly(&self) -> bool {
        self.dim == 3 && self.facets.iter().all(|f| f.offset.is_negative())
    }

    /// Membership test; exact for every dimension.
    pub fn contains(&self, p: &Vec3Q) -> bool {
        let mut pts = self.vertices.clone();
        pts.push(p.clone());
        convex_hull(&pts).vertices == self.vertices
    }

    /// Vertex indices of a polygon (dim 2) in cyclic order, starting at the
    /// lexicographically smallest vertex. For lower dimensions the vertex
    /// list itself is returned.
    pub fn cyclic_order(&self) -> Vec<usize> {
        if self.dim < 2 {
            return (0..self.vertices.len()).collect();
        }
        assert_eq!(self.dim, 2, "cyclic order is defined for polygons only");
        let n = self.plane_normal();
        let start = 0;
        let mut order = vec![start];
        let mut used = vec![false; self.vertices.len()];
        used[start] = true;
        while order.len() < self.vertices.len() {
            let cur = &self.vertices[*order.last().unwrap()];
            // next vertex: all others lie on the left of cur -> next
            let next = (0..self.vertices.len())
                .filter(|&j| !used[j])
                .find(|&j| {
                    let edge = &self.vertices[j] - cur;
                    self.vertices.iter().enumerate().all(|(k, v)| {
                        k == j || {
                            let side = n.dot(&edge.cross(&(v - cur)));
                            !side.is_negative()
                        }
                    })
                })
                .expect("convex polygon has a next vertex");
            used[next] = true;
            order.push(next);
        }
        order
    }

    /// Edges as index pairs (dim 1 and 2).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self.dim {
            0 => Vec::new(),
            1 => vec![(0, 1)],
            2 => {
                let cyc = self.cyclic_order();
                (0..cyc.len())
                    .map(|i| {
                        let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
                        (a.min(b), a.max(b))
                    })
                    .collect()
            }
            _ => {
                // vertex pairs sharing two independent facets
                let mut out = Vec::new();
                for i in 0..self.vertices.len() {
                    for j in i + 1..self.vertices.len() {
                        let common: Vec<Vec3Q> = self
                            .facets
                            .iter()
                            .filter(|f| {
                                f.slack(&self.vertices[i]).is_zero()
                                    && f.slack(&self.vertices[j]).is_zero()
                            })
                            .map(|f| f.normal.clone())
                            .collect();
                        if rank3(&common) >= 2 {
                            out.push((i, j));
                        }
                    }
                }
                out
            }
        }
    }

    /// All non-empty faces of a polytope of dimension at most 2: the
    /// vertices, the edges, and the polytope itself.
    pub fn faces(&self) -> Vec<RationalPolytope> {
        assert!(self.dim <= 2, "face enumeration supports dim ≤ 2");
        let mut out: Vec<RationalPolytope> = self
            .vertices
            .iter()
            .map(|v| convex_hull(std::slice::from_ref(v)))
            .collect();
        if self.dim == 2 {
            for (a, b) in self.edges() {
                out.push(convex_hull(&[self.vertices[a].clone(), self.vertices[b].clone()]));
            }
        }
        if self.dim >= 1 {
            out.push(self.clone());
        }
        out
    }

    fn plane_normal(&self) -> Vec3Q {
        let p0 = &self.vertices[0];
        let diffs: Vec<Vec3Q> = self.vertices[1..].iter().map(|v| v - p0).collect();
        for i in 0..diffs.len() {
            for j in i + 1..diffs.len() {
                let n = diffs[i].cross(&diffs[j]);
                if !n.is_zero() {
                    return n;
                }
            }
        }
        unreachable!("polygon with collinear vertices")
    }

    /// Polar dual `{y : ⟨x, y⟩ ≥ −1 for all x}`.
    pub fn polar_dual(&self) -> Result<RationalPolytope, GeometryError> {
        if !self.contains_origin_strictly() {
            return Err(GeometryError::OriginNotInterior);
        }
        let dual_vertices: Vec<Vec3Q> = self
            .facets
            .iter()
            .map(|f| f.normal.scale(&(-f.offset.recip())))
            .collect();
        Ok(convex_hull(&dual_vertices))
    }
}

/// Convex hull of a non-empty point set.
///
/// # Panics
/// If `points` is empty.
pub fn convex_hull(points: &[Vec3Q]) -> RationalPolytope {
    assert!(!points.is_empty(), "convex hull of an empty set");
    let pts: Vec<Vec3Q> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let p0 = &pts[0];
    let diffs: Vec<Vec3Q> = pts.iter().map(|p| p - p0).collect();
    let dim = rank3(&diffs);
    match dim {
        0 => RationalPolytope { vertices: vec![p0.clone()], dim, facets: Vec::new() },
        1 => {
            let dir = diffs.iter().find(|d| !d.is_zero()).unwrap();
            let key = |p: &Vec3Q| (p - p0).dot(dir);
            let lo = pts.iter().min_by_key(|p| key(p)).unwrap().clone();
            let hi = pts.iter().max_by_key(|p| key(p)).unwrap().clone();
            let mut vertices = vec![lo, hi];
            vertices.sort();
            RationalPolytope { vertices, dim, facets: Vec::new() }
        }
        2 => RationalPolytope { vertices: planar_extreme_points(&pts), dim, facets: Vec::new() },
        _ => {
            let facets = supporting_facets(&pts);
            let vertices = pts
                .iter()
                .filter(|p| {
                    let tight: Vec<Vec3Q> = facets
                        .iter()
                        .filter(|f| f.slack(p).is_zero())
                        .map(|f| f.normal.clone())
                        .collect();
                    rank3(&tight) == 3
                })
                .cloned()
                .collect();
            RationalPolytope { vertices, dim, facets }
        }
    }
}

/// Extreme points of a coplanar (affinely 2-dimensional) point set.
fn planar_extreme_points(pts: &[Vec3Q]) -> Vec<Vec3Q> {
    let p0 = &pts[0];
    let mut normal = Vec3Q::zero();
    'outer: for a in pts {
        for b in pts {
            let n = (a - p0).cross(&(b - p0));
            if !n.is_zero() {
                normal = n;
                break 'outer;
            }
        }
    }
    // A point is extreme iff some line through it in the plane has every
    // other point strictly on one side, or it is an endpoint of a hull edge.
    // Equivalently: it is an endpoint of an edge (p, q) with all points
    // weakly on one side and p, q extreme along that edge.
    let mut extreme = BTreeSet::new();
    for (i, p) in pts.iter().enumerate() {
        for (j, q) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let edge = q - p;
            let sides: Vec<Rational> = pts.iter().map(|r| normal.dot(&edge.cross(&(r - p)))).collect();
            if sides.iter().all(|s| !s.is_negative()) {
                // (p, q) lies on a supporting line; extreme points of that
                // line segment are hull vertices.
                let on_line: Vec<&Vec3Q> = pts
                    .iter()
                    .zip(&sides)
                    .filter(|(_, s)| s.is_zero())
                    .map(|(r, _)| r)
                    .collect();
                let key = |r: &&Vec3Q| (*r - p).dot(&edge);
                extreme.insert(on_line.iter().copied().min_by_key(key).unwrap().clone());
                extreme.insert(on_line.iter().copied().max_by_key(key).unwrap().clone());
            }
        }
    }
    extreme.into_iter().collect()
}

fn supporting_facets(pts: &[Vec3Q]) -> Vec<Facet> {
    let mut facets = BTreeSet::new();
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = (&pts[j] - &pts[i]).cross(&(&pts[k] - &pts[i]));
                if normal.is_zero() {
                    continue;
                }
                let d = normal.dot(&pts[i]);
                let mut pos = false;
                let mut neg = false;
                for p in pts {
                    let s = normal.dot(p) - &d;
                    pos |= s.is_positive();
                    neg |= s.is_negative();
                    if pos && neg {
                        break;
                    }
                }
                if pos && neg {
                    continue;
                }
                let oriented = if neg { -&normal } else { normal };
                facets.insert(Facet::through(&oriented, &pts[i]));
            }
        }
    }
    facets.into_iter().collect()
}

/// Volume of a dim-3 polytope times 6 (sum over a fan from one vertex).
pub fn six_volume(p: &RationalPolytope) -> Rational {
    if p.dim() < 3 {
        return Rational::zero();
    }
    let apex = &p.vertices()[0];
    let mut total = Rational::zero();
    for f in p.facets() {
        if f.slack(apex).is_zero() {
            continue;
        }
        let face: Vec<Vec3Q> = p
            .vertices()
            .iter()
            .filter(|v| f.slack(v).is_zero())
            .cloned()
            .collect();
        let poly = convex_hull(&face);
        let cyc = poly.cyclic_order();
        let vs = poly.vertices();
        for w in 1..cyc.len() - 1 {
            let a = &vs[cyc[0]] - apex;
            let b = &vs[cyc[w]] - apex;
            let c = &vs[cyc[w + 1]] - apex;
            total += a.dot(&b.cross(&c)).abs();
        }
    }
    total
}
