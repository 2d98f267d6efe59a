//! Characteristic polynomials of the monodromy from Newton diagrams, via the
//! Ehlers–Varchenko special-face formula relative to a system of generators.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive};

use crate::catalog::{SingularityClass, SingularityEntry};
use crate::cyclotomic::{CyclotomicError, CyclotomicProduct};
use crate::geometry::{
    int, intersection_lattice, normalized_cone_volume, primitive_functional, rank3, GeometryError, IVec3,
    Rational, RationalPolytope, Subspace, Vec3Q,
};
use crate::laurent::{in_cone, LaurentError, LaurentPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonodromyError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("face {face}: V = {volume} is not divisible by m = {m}")]
    NonIntegralChi { face: String, volume: String, m: u64 },
    #[error("diagram vertex {0} lies outside the cone of the generators")]
    OutsideCone(String),
    #[error("invalid generator system: {0}")]
    InvalidGenerators(String),
    #[error("ψ is only defined for classes a–d")]
    ClassE,
    #[error("not a suspension of a plane curve: {0}")]
    NotSuspension(String),
}

impl MonodromyError {
    pub fn name(&self) -> &'static str {
        match self {
            MonodromyError::Geometry(e) => e.name(),
            MonodromyError::Cyclotomic(e) => e.name(),
            MonodromyError::Laurent(e) => e.name(),
            MonodromyError::NonIntegralChi { .. } => "NonIntegralChi",
            MonodromyError::OutsideCone(_) => "OutsideCone",
            MonodromyError::InvalidGenerators(_) => "InvalidGenerators",
            MonodromyError::ClassE => "ClassE",
            MonodromyError::NotSuspension(_) => "NotSuspension",
        }
    }
}

/// Generators `b_1, …, b_k` of a cone in `R^n` (`n = 2` means the
/// `xy`-plane).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSystem {
    generators: Vec<IVec3>,
    ambient_dim: usize,
}

impl GeneratorSystem {
    pub fn new(generators: Vec<IVec3>, ambient_dim: usize) -> Result<Self, MonodromyError> {
        if !(2..=3).contains(&ambient_dim) {
            return Err(MonodromyError::InvalidGenerators(format!("ambient dimension {ambient_dim}")));
        }
        if ambient_dim == 2 && generators.iter().any(|g| g[2] != 0) {
            return Err(MonodromyError::InvalidGenerators("planar generators must have z = 0".into()));
        }
        let vs: Vec<Vec3Q> = generators.iter().copied().map(Vec3Q::from_ints).collect();
        if rank3(&vs) != ambient_dim {
            return Err(MonodromyError::InvalidGenerators(format!(
                "{generators:?} do not span R^{ambient_dim}"
            )));
        }
        Ok(GeneratorSystem { generators, ambient_dim })
    }

    pub fn standard(n: usize) -> Self {
        let e = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        Self::new(e[..n].to_vec(), n).expect("standard basis")
    }

    /// `{e1, −e1+2e2, e3}`, the cone of the quadric `xw = y²`.
    pub fn class_c() -> Self {
        Self::new(vec![[1, 0, 0], [-1, 2, 0], [0, 0, 1]], 3).expect("valid")
    }

    /// `{e1, e2, e3, −e1+e2+e3}`, the cone of the quadric `xw = yz`.
    pub fn class_d() -> Self {
        Self::new(vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 1, 1]], 3).expect("valid")
    }

    /// `{3e1−e2, e2, e3}`, the cone of `x³ = yw`.
    pub fn class_e() -> Self {
        Self::new(vec![[3, -1, 0], [0, 1, 0], [0, 0, 1]], 3).expect("valid")
    }

    /// `{e1, −e1+2e2}` in the `xy`-plane.
    pub fn planar_c() -> Self {
        Self::new(vec![[1, 0, 0], [-1, 2, 0]], 2).expect("valid")
    }

    pub fn generators(&self) -> &[IVec3] {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The distinct subspaces spanned by subsets of the generators, ordered
    /// by rank and then by lattice basis.
    pub fn spans(&self) -> Vec<Subspace> {
        let k = self.generators.len();
        let mut seen: BTreeMap<(usize, Vec<IVec3>), Subspace> = BTreeMap::new();
        for mask in 1u32..(1 << k) {
            let subset: Vec<IVec3> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| self.generators[i]).collect();
            let s = intersection_lattice(&subset);
            seen.entry((s.rank(), s.lattice_basis().to_vec())).or_insert(s);
        }
        seen.into_values().collect()
    }
}

/// A face `s` of dimension `r` lying in an `(r+1)`-dimensional span of
/// generators, with `χ(s) = (−1)^r V(s) / m(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialFace {
    pub face: RationalPolytope,
    pub subspace: Subspace,
    pub m: u64,
    pub volume: u64,
    pub chi: i64,
}

fn describe(face: &RationalPolytope) -> String {
    let vs: Vec<String> = face.vertices().iter().map(ToString::to_string).collect();
    format!("[{}]", vs.join(", "))
}

/// All special faces of `diagram`, vertices first, then edges, then the
/// diagram itself.
pub fn special_faces(diagram: &RationalPolytope, gen: &GeneratorSystem) -> Result<Vec<SpecialFace>, MonodromyError> {
    for v in diagram.vertices() {
        let inside = v.to_ints().is_some_and(|p| in_cone(p, gen.generators()));
        if !inside {
            return Err(MonodromyError::OutsideCone(v.to_string()));
        }
    }
    let spans = gen.spans();
    let mut out = Vec::new();
    for face in diagram.faces() {
        let r = face.dim();
        let Some(sub) = spans
            .iter()
            .find(|s| s.rank() == r + 1 && face.vertices().iter().all(|v| s.contains(v)))
        else {
            continue;
        };
        let volume = normalized_cone_volume(&face, sub)?;
        let (_, m) = primitive_functional(&face, sub)?;
        let quotient = &volume / int(m as i64);
        if !quotient.is_integer() {
            return Err(MonodromyError::NonIntegralChi { face: describe(&face), volume: volume.to_string(), m });
        }
        let magnitude = quotient.to_integer().abs().to_i64().ok_or(GeometryError::Overflow)?;
        let chi = if r % 2 == 0 { magnitude } else { -magnitude };
        let volume = volume.to_integer().to_u64().ok_or(GeometryError::Overflow)?;
        out.push(SpecialFace { face, subspace: sub.clone(), m, volume, chi });
    }
    Ok(out)
}

/// `((λ−1)⁻¹ ∏_s (λ^{m(s)}−1)^{χ(s)})^{(−1)^{n−1}}` with `n` the ambient
/// dimension of `gen`.
pub fn phi_gamma(diagram: &RationalPolytope, gen: &GeneratorSystem) -> Result<CyclotomicProduct, MonodromyError> {
    let faces = special_faces(diagram, gen)?;
    let base = CyclotomicProduct::from_factors(
        std::iter::once((1, -1)).chain(faces.iter().map(|s| (s.m, s.chi))),
    );
    Ok(if gen.ambient_dim() % 2 == 1 { base } else { base.pow(-1) })
}

/// The value for `I1,0`, taken from Oka's computation for complete
/// intersections rather than from a diagram.
pub fn oka_i10() -> CyclotomicProduct {
    CyclotomicProduct::from_factors([(1, -1), (2, -2), (6, 3)])
}

/// Characteristic polynomial `φ` of a catalog row, with level `N`.
pub fn char_poly(entry: &SingularityEntry) -> Result<CyclotomicProduct, MonodromyError> {
    let diagram = entry.poly.newton_diagram()?;
    let phi = match entry.class {
        SingularityClass::A | SingularityClass::B => phi_gamma(&diagram, &GeneratorSystem::standard(3))?,
        SingularityClass::C => {
            CyclotomicProduct::factor(2, 1).multiply(&phi_gamma(&diagram, &GeneratorSystem::class_c())?)
        }
        SingularityClass::D => phi_gamma(&diagram, &GeneratorSystem::class_d())?,
        SingularityClass::E => oka_i10(),
    };
    Ok(phi.with_level(entry.ws.degree())?)
}

/// The plane curve `p'(x, y)` with `p ~ p' + z²`.
///
/// Writing `p = a·z² + z·B(x, y) + C(x, y)`, the weighted-homogeneous change
/// `z ↦ z − B/(2a)` gives `p' = C − B²/(4a)`; when `B = 0` this is `p − z²`.
pub fn plane_curve_part(p: &LaurentPolynomial) -> Result<LaurentPolynomial, MonodromyError> {
    let mut a = None;
    let mut linear: Vec<(IVec3, Rational)> = Vec::new();
    let mut constant: Vec<(IVec3, Rational)> = Vec::new();
    for (e, c) in p.terms() {
        match e[2] {
            0 => constant.push((*e, c.clone())),
            1 => linear.push(([e[0], e[1], 0], c.clone())),
            2 if e[0] == 0 && e[1] == 0 => a = Some(c.clone()),
            _ => return Err(MonodromyError::NotSuspension(format!("term with exponent {e:?}"))),
        }
    }
    let a = a.ok_or_else(|| MonodromyError::NotSuspension("no z² term".into()))?;
    let four_a = int(4) * a;
    for (e1, c1) in &linear {
        for (e2, c2) in &linear {
            constant.push(([e1[0] + e2[0], e1[1] + e2[1], 0], -(c1 * c2) / &four_a));
        }
    }
    Ok(LaurentPolynomial::from_terms(constant)?)
}

/// `φ'` of the plane curve part of a class-c row, relative to
/// `{e1, −e1+2e2}`.
pub fn plane_curve_phi(entry: &SingularityEntry) -> Result<CyclotomicProduct, MonodromyError> {
    let curve = plane_curve_part(&entry.poly)?;
    phi_gamma(&curve.newton_diagram()?, &GeneratorSystem::planar_c())
}

/// For a class-c row, `suspend(φ')` with the closed-form suspension
/// transform.
pub fn suspension_route(entry: &SingularityEntry) -> Result<CyclotomicProduct, MonodromyError> {
    Ok(plane_curve_phi(entry)?.suspend()?)
}

/// Saito's `ψ` at level `h = N`: `φ` for classes a/b, `(λ−1)⁻¹φ` for c/d.
pub fn saito_psi(entry: &SingularityEntry, phi: &CyclotomicProduct) -> Result<CyclotomicProduct, MonodromyError> {
    let psi = match entry.class {
        SingularityClass::A | SingularityClass::B => phi.clone(),
        SingularityClass::C | SingularityClass::D => CyclotomicProduct::factor(1, -1).multiply(phi),
        SingularityClass::E => return Err(MonodromyError::ClassE),
    };
    Ok(psi.without_level().with_level(entry.ws.degree())?)
}
