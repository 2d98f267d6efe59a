//! Saturated sublattices of Z³ and lattice-normalized measurements of faces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::hull::RationalPolytope;
use super::linalg::{combination, det, int, nullspace, primitive_integer, rank, rank3, Rational, Vec3Q, IVec3};
use super::GeometryError;

/// A linear subspace of R³ spanned by integer vectors, together with a basis
/// of the lattice `Z³ ∩ span`.
///
/// The lattice basis is kept in row Hermite normal form, so two subspaces are
/// equal exactly when their lattice bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Vec<IVec3>,
    lattice_basis: Vec<IVec3>,
}

impl Subspace {
    /// Independent subset of the spanning vectors, in input order.
    pub fn basis(&self) -> &[IVec3] {
        &self.basis
    }

    pub fn lattice_basis(&self) -> &[IVec3] {
        &self.lattice_basis
    }

    pub fn rank(&self) -> usize {
        self.lattice_basis.len()
    }

    /// Coordinates of `p` with respect to the lattice basis, or `None` when
    /// `p` is not in the subspace.
    pub fn coordinates(&self, p: &Vec3Q) -> Option<Vec<Rational>> {
        let basis: Vec<Vec3Q> = self.lattice_basis.iter().copied().map(Vec3Q::from_ints).collect();
        combination(&basis, p)
    }

    pub fn contains(&self, p: &Vec3Q) -> bool {
        self.coordinates(p).is_some()
    }

    /// Lattice points have integral coordinates; this checks membership of
    /// an integer point in the lattice.
    pub fn contains_lattice_point(&self, p: IVec3) -> bool {
        self.coordinates(&Vec3Q::from_ints(p))
            .is_some_and(|c| c.iter().all(Rational::is_integer))
    }
}

/// The subspace spanned by `span_vectors` and a basis of its integral points.
///
/// # Panics
/// If every vector is zero.
pub fn intersection_lattice(span_vectors: &[IVec3]) -> Subspace {
    let mut basis: Vec<IVec3> = Vec::new();
    for v in span_vectors {
        let mut trial: Vec<Vec3Q> = basis.iter().copied().map(Vec3Q::from_ints).collect();
        trial.push(Vec3Q::from_ints(*v));
        if rank3(&trial) == trial.len() {
            basis.push(*v);
        }
    }
    assert!(!basis.is_empty(), "span of zero vectors");
    let lattice_basis = hermite_rows(saturate(&basis));
    Subspace { basis, lattice_basis }
}

/// Basis of `Z³ ∩ span(rows)` for linearly independent integer rows.
///
/// Unimodular column operations bring the row matrix `B` to `[H | 0]`
/// while maintaining `B_original = B_current · W⁻¹`; the first `r` rows of
/// the unimodular `W⁻¹` then generate the saturated lattice.
fn saturate(rows: &[IVec3]) -> Vec<IVec3> {
    let mut b: Vec<[i128; 3]> = rows.iter().map(|r| r.map(i128::from)).collect();
    let mut winv: [[i128; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut pivot = 0;
    for row in 0..b.len() {
        if pivot == 3 {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (pivot..3).filter(|&c| b[row][c] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            let smallest = *nonzero.iter().min_by_key(|&&c| b[row][c].abs()).unwrap();
            if smallest != pivot {
                for r in b.iter_mut() {
                    r.swap(pivot, smallest);
                }
                winv.swap(pivot, smallest);
            }
            let mut cleared = true;
            for c in pivot + 1..3 {
                if b[row][c] != 0 {
                    let q = Integer::div_floor(&b[row][c], &b[row][pivot]);
                    // col_c -= q col_pivot, so row_pivot(W⁻¹) += q row_c(W⁻¹)
                    for r in b.iter_mut() {
                        r[c] -= q * r[pivot];
                    }
                    for k in 0..3 {
                        winv[pivot][k] += q * winv[c][k];
                    }
                    cleared &= b[row][c] == 0;
                }
            }
            if cleared {
                pivot += 1;
                break;
            }
        }
    }
    winv[..pivot]
        .iter()
        .map(|r| r.map(|x| i64::try_from(x).expect("lattice basis entry overflow")))
        .collect()
}

/// Row Hermite normal form: echelon, positive pivots, entries above each
/// pivot reduced into `[0, pivot)`.
pub fn hermite_rows(mut rows: Vec<IVec3>) -> Vec<IVec3> {
    let mut r = 0;
    for c in 0..3 {
        if r == rows.len() {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..rows.len()).filter(|&i| rows[i][c] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            rows.swap(r, best);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c] != 0 {
                    let q = Integer::div_floor(&rows[i][c], &rows[r][c]);
                    for k in 0..3 {
                        rows[i][k] -= q * rows[r][k];
                    }
                    done &= rows[i][c] == 0;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c] == 0 {
            continue;
        }
        if rows[r][c] < 0 {
            rows[r] = rows[r].map(|x| -x);
        }
        for i in 0..r {
            let q = Integer::div_floor(&rows[i][c], &rows[r][c]);
            for k in 0..3 {
                rows[i][k] -= q * rows[r][k];
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn face_coordinates(face: &RationalPolytope, sub: &Subspace) -> Result<Vec<Vec<Rational>>, GeometryError> {
    if sub.rank() != face.dim() + 1 {
        return Err(GeometryError::DimensionMismatch { face: face.dim(), subspace: sub.rank() });
    }
    let coords = face
        .vertices()
        .iter()
        .map(|v| sub.coordinates(v).ok_or(GeometryError::NotInSubspace))
        .collect::<Result<Vec<_>, _>>()?;
    if rank(&coords) != sub.rank() {
        return Err(GeometryError::FaceThroughOrigin);
    }
    Ok(coords)
}

/// `(r+1)!` times the volume of `conv({0} ∪ face)`, measured in the
/// coordinates of `sub`'s lattice basis. `face` has dimension `r ≤ 2` and
/// `sub` rank `r + 1`.
pub fn normalized_cone_volume(face: &RationalPolytope, sub: &Subspace) -> Result<Rational, GeometryError> {
    let coords = face_coordinates(face, sub)?;
    let order = face.cyclic_order();
    let volume = match face.dim() {
        0 | 1 => det(&coords).abs(),
        _ => {
            // fan triangulation from the first vertex
            let c = |i: usize| coords[order[i]].clone();
            (1..order.len() - 1)
                .map(|i| det(&[c(0), c(i), c(i + 1)]).abs())
                .sum()
        }
    };
    Ok(volume)
}

/// The primitive integral functional `alpha` (in lattice-basis coordinates)
/// that is constant on `face`, with that constant `m > 0`.
pub fn primitive_functional(face: &RationalPolytope, sub: &Subspace) -> Result<(Vec<i64>, u64), GeometryError> {
    let coords = face_coordinates(face, sub)?;
    let d = sub.rank();
    let diffs: Vec<Vec<Rational>> = coords[1..]
        .iter()
        .map(|c| c.iter().zip(&coords[0]).map(|(a, b)| a - b).collect())
        .collect();
    let normal = if diffs.is_empty() {
        vec![int(1)]
    } else {
        let ns = nullspace(&diffs, d);
        debug_assert_eq!(ns.len(), 1);
        ns.into_iter().next().ok_or(GeometryError::FaceThroughOrigin)?
    };
    let alpha: Vec<BigInt> = primitive_integer(&normal).ok_or(GeometryError::FaceThroughOrigin)?;
    let mut value: Rational = alpha
        .iter()
        .zip(&coords[0])
        .map(|(a, x)| Rational::from_integer(a.clone()) * x)
        .sum();
    let mut alpha = alpha;
    if value.is_zero() {
        return Err(GeometryError::FaceThroughOrigin);
    }
    if value.is_negative() {
        value = -value;
        alpha = alpha.into_iter().map(|a| -a).collect();
    }
    if !value.is_integer() {
        return Err(GeometryError::NonIntegralLevel(value.to_string()));
    }
    let m = value.to_integer().to_u64().ok_or(GeometryError::Overflow)?;
    let alpha = alpha
        .iter()
        .map(|a| a.to_i64().ok_or(GeometryError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((alpha, m))
}
