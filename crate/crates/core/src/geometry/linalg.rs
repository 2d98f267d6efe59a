//! Exact rational vectors and small dense matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Integer 3-vector. Exponents, generators and lattice bases use this.
pub type IVec3 = [i64; 3];

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Converts an integral rational to `i64`, if it is integral and fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec3Q(pub [Rational; 3]);

impl Vec3Q {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Vec3Q([x, y, z])
    }

    pub fn zero() -> Self {
        Vec3Q([Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn from_ints(v: IVec3) -> Self {
        Vec3Q([int(v[0]), int(v[1]), int(v[2])])
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.0
    }

    pub fn dot(&self, other: &Vec3Q) -> Rational {
        &self.0[0] * &other.0[0] + &self.0[1] * &other.0[1] + &self.0[2] * &other.0[2]
    }

    pub fn cross(&self, other: &Vec3Q) -> Vec3Q {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &other.0;
        Vec3Q([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    pub fn scale(&self, k: &Rational) -> Vec3Q {
        Vec3Q([&self.0[0] * k, &self.0[1] * k, &self.0[2] * k])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    /// Integer coordinates, if the vector is integral and fits in `i64`.
    pub fn to_ints(&self) -> Option<IVec3> {
        Some([to_i64(&self.0[0])?, to_i64(&self.0[1])?, to_i64(&self.0[2])?])
    }

    /// The primitive integer vector pointing in the same direction.
    /// Returns `None` for the zero vector.
    pub fn primitive(&self) -> Option<IVec3> {
        let scaled = primitive_integer(&self.0)?;
        Some([
            scaled[0].to_i64()?,
            scaled[1].to_i64()?,
            scaled[2].to_i64()?,
        ])
    }
}

impl fmt::Display for Vec3Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl Add for &Vec3Q {
    type Output = Vec3Q;
    fn add(self, rhs: &Vec3Q) -> Vec3Q {
        Vec3Q([
            &self.0[0] + &rhs.0[0],
            &self.0[1] + &rhs.0[1],
            &self.0[2] + &rhs.0[2],
        ])
    }
}

impl Sub for &Vec3Q {
    type Output = Vec3Q;
    fn sub(self, rhs: &Vec3Q) -> Vec3Q {
        Vec3Q([
            &self.0[0] - &rhs.0[0],
            &self.0[1] - &rhs.0[1],
            &self.0[2] - &rhs.0[2],
        ])
    }
}

impl Neg for &Vec3Q {
    type Output = Vec3Q;
    fn neg(self) -> Vec3Q {
        Vec3Q([-&self.0[0], -&self.0[1], -&self.0[2]])
    }
}

impl From<IVec3> for Vec3Q {
    fn from(v: IVec3) -> Self {
        Vec3Q::from_ints(v)
    }
}

/// Scales a rational vector to the primitive integer vector with the same
/// direction (gcd of entries 1). `None` for the zero vector.
pub fn primitive_integer(v: &[Rational]) -> Option<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| x / &g).collect())
}

/// 3×3 rational matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix3Q {
    pub rows: [Vec3Q; 3],
}

impl Matrix3Q {
    pub fn from_rows(rows: [Vec3Q; 3]) -> Self {
        Matrix3Q { rows }
    }

    pub fn from_columns(cols: [Vec3Q; 3]) -> Self {
        Matrix3Q::from_rows(cols).transpose()
    }

    pub fn from_int_rows(rows: [IVec3; 3]) -> Self {
        Matrix3Q::from_rows(rows.map(Vec3Q::from_ints))
    }

    pub fn identity() -> Self {
        Matrix3Q::from_int_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i].0[j]
    }

    pub fn column(&self, j: usize) -> Vec3Q {
        Vec3Q([
            self.rows[0].0[j].clone(),
            self.rows[1].0[j].clone(),
            self.rows[2].0[j].clone(),
        ])
    }

    pub fn transpose(&self) -> Self {
        Matrix3Q::from_rows([self.column(0), self.column(1), self.column(2)])
    }

    pub fn det(&self) -> Rational {
        self.rows[0].dot(&self.rows[1].cross(&self.rows[2]))
    }

    /// `M · v` with `v` a column vector.
    pub fn apply(&self, v: &Vec3Q) -> Vec3Q {
        Vec3Q([self.rows[0].dot(v), self.rows[1].dot(v), self.rows[2].dot(v)])
    }

    /// `v · M` with `v` a row vector.
    pub fn apply_row(&self, v: &Vec3Q) -> Vec3Q {
        self.transpose().apply(v)
    }

    pub fn mul(&self, other: &Matrix3Q) -> Matrix3Q {
        let t = other.transpose();
        Matrix3Q::from_rows(std::array::from_fn(|i| {
            Vec3Q(std::array::from_fn(|j| self.rows[i].dot(&t.rows[j])))
        }))
    }

    pub fn inverse(&self) -> Option<Matrix3Q> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let [r0, r1, r2] = &self.rows;
        // Columns of the inverse are the cross products of row pairs.
        let inv_cols = [r1.cross(r2), r2.cross(r0), r0.cross(r1)];
        let inv_det = det.recip();
        Some(Matrix3Q::from_columns(inv_cols.map(|c| c.scale(&inv_det))))
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().all(Vec3Q::is_integral)
    }

    pub fn to_ints(&self) -> Option<[IVec3; 3]> {
        Some([
            self.rows[0].to_ints()?,
            self.rows[1].to_ints()?,
            self.rows[2].to_ints()?,
        ])
    }
}

impl Mul for &Matrix3Q {
    type Output = Matrix3Q;
    fn mul(self, rhs: &Matrix3Q) -> Matrix3Q {
        Matrix3Q::mul(self, rhs)
    }
}

impl fmt::Display for Matrix3Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}, {}, {}]", row.0[0], row.0[1], row.0[2])?;
        }
        write!(f, "]")
    }
}

/// Row-reduces a copy of `rows` and returns its rank.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    echelon(rows.to_vec()).len()
}

/// Rank of a list of 3-vectors.
pub fn rank3(vectors: &[Vec3Q]) -> usize {
    rank(&vectors.iter().map(|v| v.0.to_vec()).collect::<Vec<_>>())
}

/// Reduced row echelon form with zero rows dropped.
fn echelon(mut m: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    m
}

/// A basis of `{x : M x = 0}` for an `rows × ncols` matrix.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let rref = echelon(rows.to_vec());
    let pivots: Vec<usize> = rref
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (row, &p) in rref.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Determinant of a square rational matrix by elimination.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut result = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            result = -result;
        }
        result *= &a[c][c];
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let d = &f * &a[c][j];
                    a[i][j] -= d;
                }
            }
        }
    }
    result
}

/// Solves `Σ c_i · basis[i] = target` for linearly independent `basis`.
/// Returns `None` when `target` is outside the span.
pub fn combination(basis: &[Vec3Q], target: &Vec3Q) -> Option<Vec<Rational>> {
    let k = basis.len();
    // Augmented system: 3 equations, k unknowns.
    let rows: Vec<Vec<Rational>> = (0..3)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b.0[i].clone()).collect();
            row.push(target.0[i].clone());
            row
        })
        .collect();
    let rref = echelon(rows);
    let mut sol = vec![Rational::zero(); k];
    for row in &rref {
        let p = row.iter().position(|x| !x.is_zero())?;
        if p == k {
            return None;
        }
        if row[p + 1..k].iter().any(|x| !x.is_zero()) {
            // basis was dependent
            return None;
        }
        sol[p] = row[k].clone();
    }
    Some(sol)
}
