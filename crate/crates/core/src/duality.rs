//! Polar duality of Newton polyhedra: the unimodular matrix `A` carrying
//! `Γ̃` onto the polar dual of the dual row's full Newton polyhedron, the
//! dual weight system, and `∇` in the coordinates given by the rows of `A`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, SingularityClass, SingularityEntry};
use crate::cyclotomic::CyclotomicProduct;
use crate::geometry::{convex_hull, int, GeometryError, IVec3, Matrix3Q, RationalPolytope, Vec3Q};
use crate::laurent::WeightSystem;
use crate::monodromy::{char_poly, saito_psi};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualityError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("Γ̃ has {0} vertices besides u0; expected 3 or 4")]
    BadVertexCount(usize),
    #[error("|det U| = {0}; expected 1, 2 or 3")]
    BadDeterminant(i64),
    #[error("no target profile for m = {m}, |det U| = {det}")]
    Unreachable { m: usize, det: i64 },
    #[error("u0 = {0} is not a vertex of Γ̃")]
    MissingOrigin(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("{0} matrices remain after selection")]
    Ambiguous(usize),
}

impl DualityError {
    pub fn name(&self) -> &'static str {
        match self {
            DualityError::Geometry(e) => e.name(),
            DualityError::BadVertexCount(_) => "BadVertexCount",
            DualityError::BadDeterminant(_) => "BadDeterminant",
            DualityError::Unreachable { .. } => "Unreachable",
            DualityError::MissingOrigin(_) => "MissingOrigin",
            DualityError::NoSolution(_) => "NoSolution",
            DualityError::Ambiguous(_) => "Ambiguous",
        }
    }
}

/// The vertices of `Γ̃`: `u0` and the others in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMatrix {
    pub u0: IVec3,
    pub columns: Vec<IVec3>,
    /// `|det U|`, for three columns only.
    pub det_u: Option<i64>,
}

impl VertexMatrix {
    pub fn m(&self) -> usize {
        self.columns.len()
    }
}

pub fn vertex_matrix(entry: &SingularityEntry) -> Result<VertexMatrix, DualityError> {
    let gamma = entry.newton_polyhedra()?.gamma_tilde;
    let u0 = entry.u0();
    let u0q = Vec3Q::from_ints(u0);
    if !gamma.vertices().contains(&u0q) {
        return Err(DualityError::MissingOrigin(u0q.to_string()));
    }
    let columns: Vec<IVec3> = gamma
        .vertices()
        .iter()
        .filter(|v| **v != u0q)
        .map(|v| v.to_ints().expect("Γ̃ is integral"))
        .collect();
    let det_u = match columns.len() {
        3 => {
            let d = columns_matrix(&columns).det().to_integer();
            let d = i64::try_from(d).map_err(|_| GeometryError::Overflow)?.abs();
            if !(1..=3).contains(&d) {
                return Err(DualityError::BadDeterminant(d));
            }
            Some(d)
        }
        4 => None,
        n => return Err(DualityError::BadVertexCount(n)),
    };
    Ok(VertexMatrix { u0, columns, det_u })
}

fn columns_matrix(cols: &[IVec3]) -> Matrix3Q {
    Matrix3Q::from_columns([cols[0], cols[1], cols[2]].map(Vec3Q::from_ints))
}

/// What `Γ̃` is mapped onto: the class of the dual row (`A` standing for
/// either a or b) and the columns `v_1, …, v_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetProfile {
    pub class: SingularityClass,
    pub columns: Vec<IVec3>,
}

impl TargetProfile {
    /// Completes `(w1*, w2*, w3*)` by the fourth-weight rule of the class.
    pub fn extend_weights(&self, w: [i64; 3]) -> Vec<i64> {
        let mut out = w.to_vec();
        match self.class {
            SingularityClass::A | SingularityClass::B => {}
            SingularityClass::C => out.push(2 * w[1] - w[0]),
            SingularityClass::D => out.push(w[1] + w[2] - w[0]),
            SingularityClass::E => out.push(3 * w[0] - w[1]),
        }
        out
    }
}

pub fn target_profile(m: usize, det_u: Option<i64>) -> Result<TargetProfile, DualityError> {
    let class = match (m, det_u) {
        (3, Some(1)) => SingularityClass::A,
        (3, Some(2)) => SingularityClass::C,
        (3, Some(3)) => SingularityClass::E,
        (4, _) => SingularityClass::D,
        _ => return Err(DualityError::Unreachable { m, det: det_u.unwrap_or(0) }),
    };
    Ok(TargetProfile { class, columns: class.dual_vertex_pattern() })
}

/// One matrix `A` with `A·u_i = v_{σ(i)}` and what it predicts about the
/// dual row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub a: Matrix3Q,
    /// `(w1*, w2*, w3*)` extended by the class rule.
    pub dual_weights: Vec<i64>,
    /// Images of the vertices of `∇` in row-of-`A` coordinates.
    pub nabla_coords: Vec<Vec3Q>,
}

impl Candidate {
    fn new(a: Matrix3Q, source: &SingularityEntry, profile: &TargetProfile) -> Self {
        let w = a.apply(&Vec3Q::from_ints(source.u0()));
        let w3 = [0, 1, 2].map(|i| -w.coords()[i].to_integer().try_into().unwrap_or(i64::MIN / 8));
        let dual_weights = profile.extend_weights(w3);
        let inverse = a.inverse().expect("unimodular");
        let mut nabla_coords: Vec<Vec3Q> = nabla_vertices(source).iter().map(|v| inverse.apply_row(v)).collect();
        nabla_coords.sort();
        Candidate { a, dual_weights, nabla_coords }
    }

    pub fn weight_system(&self, degree: u64) -> Option<WeightSystem> {
        if self.dual_weights.iter().any(|w| *w <= 0) {
            return None;
        }
        WeightSystem::new(self.dual_weights.iter().map(|w| *w as u64).collect(), degree).ok()
    }

    fn matches(&self, dual: &SingularityEntry) -> bool {
        let ws_ok = self.weight_system(dual.ws.degree()).as_ref() == Some(&dual.ws);
        ws_ok && vertex_set(&self.nabla_coords) == dual.newton_diagram().vertices()
    }
}

fn vertex_set(points: &[Vec3Q]) -> Vec<Vec3Q> {
    convex_hull(points).vertices().to_vec()
}

/// `ṽ_i = v_i − v_0` for the source row's class pattern,
/// `v_0 = −(w1, w2, w3)`.
pub fn nabla_vertices(entry: &SingularityEntry) -> Vec<Vec3Q> {
    let w = entry.ws.weights();
    entry
        .class
        .dual_vertex_pattern()
        .iter()
        .map(|v| Vec3Q::from_ints([0, 1, 2].map(|i| v[i] + w[i] as i64)))
        .collect()
}

/// All matrices `A` with `A·U = V_σ` for some bijection `σ` that are
/// integral, unimodular and have every entry ≥ 1.
pub fn admissible_matrices(vm: &VertexMatrix, profile: &TargetProfile) -> Vec<Matrix3Q> {
    let m = vm.m();
    let us: Vec<Vec3Q> = vm.columns.iter().copied().map(Vec3Q::from_ints).collect();
    // first independent triple of U columns, lexicographically
    let triple = (0..m)
        .flat_map(|i| (i + 1..m).flat_map(move |j| (j + 1..m).map(move |k| [i, j, k])))
        .find(|t| columns_matrix(&t.map(|i| vm.columns[i])).det() != int(0))
        .expect("Γ̃ is three-dimensional");
    let u_inv = Matrix3Q::from_columns(triple.map(|i| us[i].clone())).inverse().expect("independent");
    let mut out = Vec::new();
    for perm in permutations(m) {
        let v = Matrix3Q::from_columns(triple.map(|i| Vec3Q::from_ints(profile.columns[perm[i]])));
        let a = &v * &u_inv;
        let positive = a.rows.iter().all(|r| r.coords().iter().all(|x| x.is_integer() && *x >= int(1)));
        if !positive || (a.det() != int(1) && a.det() != int(-1)) {
            continue;
        }
        let consistent = (0..m).all(|i| a.apply(&us[i]) == Vec3Q::from_ints(profile.columns[perm[i]]));
        if consistent {
            out.push(a);
        }
    }
    out.sort_by(|x, y| x.rows.cmp(&y.rows));
    out
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

/// Result of the search for `A`, with the number of matrices surviving each
/// stage of selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityComputation {
    pub vertex_matrix: VertexMatrix,
    pub target: TargetProfile,
    pub a: Matrix3Q,
    pub dual_ws: WeightSystem,
    pub nabla: RationalPolytope,
    pub nabla_coords: Vec<Vec3Q>,
    /// Integral, unimodular, positive.
    pub admissible: usize,
    /// Of those, the ones whose prediction agrees with the catalog's dual row.
    pub matching: usize,
}

/// Finds `A` for `entry`.
///
/// Several positive unimodular matrices can map the vertex sets onto each
/// other, since a permutation of the rows of `U⁻¹` stays positive. They are
/// narrowed down to those predicting the dual row actually recorded in the
/// catalog; a remaining pair related by a coordinate swap is resolved in
/// favour of `det A = +1`.
pub fn compute_duality(entry: &SingularityEntry, catalog: &Catalog) -> Result<DualityComputation, DualityError> {
    let vm = vertex_matrix(entry)?;
    let target = target_profile(vm.m(), vm.det_u)?;
    let admissible = admissible_matrices(&vm, &target);
    if admissible.is_empty() {
        return Err(DualityError::NoSolution("no positive unimodular matrix maps the vertices".into()));
    }
    let degree = entry.ws.degree();
    let candidates: Vec<Candidate> =
        admissible.iter().map(|a| Candidate::new(a.clone(), entry, &target)).collect();
    let dual = catalog.dual_of(entry);
    let matching: Vec<&Candidate> = candidates.iter().filter(|c| c.matches(dual)).collect();
    let chosen: Vec<&Candidate> = if matching.len() > 1 {
        matching.iter().copied().filter(|c| c.a.det() == int(1)).collect()
    } else {
        matching.clone()
    };
    let chosen = match chosen.as_slice() {
        [one] => *one,
        [] => {
            return Err(DualityError::NoSolution(format!(
                "none of {} admissible matrices predicts the dual row",
                admissible.len()
            )))
        }
        many => return Err(DualityError::Ambiguous(many.len())),
    };
    Ok(DualityComputation {
        vertex_matrix: vm,
        target,
        a: chosen.a.clone(),
        dual_ws: chosen.weight_system(degree).expect("matching candidates have valid weights"),
        nabla: convex_hull(&nabla_vertices(entry)),
        nabla_coords: chosen.nabla_coords.clone(),
        admissible: admissible.len(),
        matching: matching.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub variant: u32,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(id: &str, pass: bool, detail: impl Into<String>) -> Check {
    Check { id: id.to_string(), pass, detail: detail.into() }
}

fn fail(id: &str, err: impl std::fmt::Display) -> Check {
    check(id, false, format!("error: {err}"))
}

fn points(ps: &[Vec3Q]) -> String {
    let s: Vec<String> = ps.iter().map(ToString::to_string).collect();
    format!("{{{}}}", s.join(", "))
}

/// Runs the six checks on one row:
/// (i) dual weights, (ii) `∇` against the dual's Newton diagram,
/// (iii) vertices of the polar dual of `Δ̃`, (iv) admissibility and
/// uniqueness of `A`, (v) the dual row's matrix is `Aᵀ`,
/// (vi) Saito duality of `ψ`; and `mu`, the stored Milnor number against
/// the degree of `φ`.
pub fn verify_row(entry: &SingularityEntry, catalog: &Catalog) -> VerificationReport {
    let dual = catalog.dual_of(entry);
    let comp = compute_duality(entry, catalog);
    let mut checks = Vec::new();

    checks.push(match &comp {
        Ok(c) => check(
            "i",
            c.dual_ws == dual.ws,
            format!("w* = {}, dual row {} has {}", c.dual_ws, catalog.label(&dual.row_ref()), dual.ws),
        ),
        Err(e) => fail("i", e),
    });

    checks.push(match &comp {
        Ok(c) => {
            let hull = convex_hull(&c.nabla_coords);
            let gamma = dual.newton_diagram();
            let pass = hull == gamma && vertex_set(&c.nabla_coords) == gamma.vertices();
            check("ii", pass, format!("∇ = {}, Γ(dual) = {}", points(&c.nabla_coords), points(gamma.vertices())))
        }
        Err(e) => fail("ii", e),
    });

    checks.push(match entry.newton_polyhedra().and_then(|p| p.delta_tilde.polar_dual()) {
        Ok(polar) => {
            let w = entry.ws.weights();
            let mut expected: Vec<Vec3Q> =
                entry.class.dual_vertex_pattern().into_iter().map(Vec3Q::from_ints).collect();
            expected.push(Vec3Q::from_ints([0, 1, 2].map(|i| -(w[i] as i64))));
            expected.sort();
            check("iii", polar.vertices() == expected.as_slice(), format!("Δ̃* vertices {}", points(polar.vertices())))
        }
        Err(e) => fail("iii", e),
    });

    checks.push(match &comp {
        Ok(c) => {
            let det = c.a.det();
            let pass = (det == int(1) || det == int(-1))
                && c.a.is_integral()
                && c.a.rows.iter().all(|r| r.coords().iter().all(|x| *x >= int(1)));
            check(
                "iv",
                pass,
                format!(
                    "A = {}, det {}; {} admissible, {} matching the dual row",
                    c.a, det, c.admissible, c.matching
                ),
            )
        }
        Err(e) => fail("iv", e),
    });

    checks.push(match (&comp, &compute_duality(dual, catalog)) {
        (Ok(c), Ok(d)) => check("v", d.a == c.a.transpose(), format!("A(dual) = {}", d.a)),
        (Err(e), _) | (_, Err(e)) => fail("v", e),
    });

    checks.push(if entry.class == SingularityClass::E || dual.class == SingularityClass::E {
        check("vi", true, "not applicable (class e)")
    } else {
        match saito_pair(entry, dual) {
            Ok((star, psi_dual)) => check("vi", star == psi_dual, format!("ψ* = {star}, ψ(dual) = {psi_dual}")),
            Err(e) => fail("vi", e),
        }
    });

    checks.push(match char_poly(entry) {
        Ok(phi) => check("mu", phi.degree() == entry.mu as i64, format!("deg φ = {}, stored {}", phi.degree(), entry.mu)),
        Err(e) => fail("mu", e),
    });

    VerificationReport { name: entry.name.clone(), variant: entry.variant, checks }
}

/// `(saito_dual(ψ(X), N), ψ(X*))`.
pub fn saito_pair(
    entry: &SingularityEntry,
    dual: &SingularityEntry,
) -> Result<(CyclotomicProduct, CyclotomicProduct), crate::monodromy::MonodromyError> {
    let psi = saito_psi(entry, &char_poly(entry)?)?;
    let star = psi.saito_dual(entry.ws.degree())?;
    let psi_dual = saito_psi(dual, &char_poly(dual)?)?;
    Ok((star, psi_dual))
}

/// Reports for every row, in catalog order.
pub fn verify_all(catalog: &Catalog) -> Vec<VerificationReport> {
    catalog.entries().par_iter().map(|e| verify_row(e, catalog)).collect()
}
