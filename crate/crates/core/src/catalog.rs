//! The dataset of weighted-homogeneous singularities and complete
//! intersections, with the class-specific Newton diagrams and polyhedra.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::geometry::{convex_hull, ratio, GeometryError, IVec3, RationalPolytope, Vec3Q};
use crate::laurent::{LaurentPolynomial, WeightSystem};
use crate::monodromy::GeneratorSystem;

const EMBEDDED: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("malformed catalog JSON: {0}")]
    Json(String),
    #[error("row {row}: {message}")]
    InvalidRow { row: String, message: String },
    #[error("unknown row {0}")]
    UnknownRow(String),
}

impl CatalogError {
    pub fn name(&self) -> &'static str {
        match self {
            CatalogError::Json(_) => "Json",
            CatalogError::InvalidRow { .. } => "InvalidRow",
            CatalogError::UnknownRow(_) => "UnknownRow",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SingularityClass {
    A,
    B,
    C,
    D,
    E,
}

impl SingularityClass {
    pub const ALL: [SingularityClass; 5] =
        [SingularityClass::A, SingularityClass::B, SingularityClass::C, SingularityClass::D, SingularityClass::E];

    pub fn tag(self) -> char {
        match self {
            SingularityClass::A => 'a',
            SingularityClass::B => 'b',
            SingularityClass::C => 'c',
            SingularityClass::D => 'd',
            SingularityClass::E => 'e',
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| tag.len() == 1 && tag.starts_with(c.tag()))
    }

    /// The quadric `g` cutting out the ambient toric variety, if any.
    pub fn quadric(self) -> Option<&'static str> {
        match self {
            SingularityClass::A | SingularityClass::B => None,
            SingularityClass::C => Some("xw−y²"),
            SingularityClass::D => Some("xw−yz"),
            SingularityClass::E => Some("x³−yw"),
        }
    }

    pub fn weight_count(self) -> usize {
        match self {
            SingularityClass::A | SingularityClass::B => 3,
            _ => 4,
        }
    }

    /// The translation moving the origin into the interior of the polyhedra.
    pub fn u0(self) -> IVec3 {
        match self {
            SingularityClass::A | SingularityClass::B => [-1, -1, -1],
            SingularityClass::C | SingularityClass::D => [0, -1, -1],
            SingularityClass::E => [-1, 0, -1],
        }
    }

    pub fn generators(self) -> GeneratorSystem {
        match self {
            SingularityClass::A | SingularityClass::B => GeneratorSystem::standard(3),
            SingularityClass::C => GeneratorSystem::class_c(),
            SingularityClass::D => GeneratorSystem::class_d(),
            SingularityClass::E => GeneratorSystem::class_e(),
        }
    }

    /// The vertices `v_1, …, v_m` of the polar dual of the full Newton
    /// polyhedron, apart from `v_0 = −(w_1, w_2, w_3)`.
    pub fn dual_vertex_pattern(self) -> Vec<IVec3> {
        match self {
            SingularityClass::A | SingularityClass::B => vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            SingularityClass::C => vec![[2, 1, 0], [0, 1, 0], [0, 0, 1]],
            SingularityClass::D => vec![[1, 0, 1], [1, 1, 0], [0, 0, 1], [0, 1, 0]],
            SingularityClass::E => vec![[1, 0, 0], [1, 3, 0], [0, 0, 1]],
        }
    }

    /// The linear relation among four weights imposed by the quadric.
    pub fn relation_holds(self, w: &[u64]) -> bool {
        match self {
            SingularityClass::A | SingularityClass::B => w.len() == 3,
            SingularityClass::C => w.len() == 4 && w[0] + w[3] == 2 * w[1],
            SingularityClass::D => w.len() == 4 && w[0] + w[3] == w[1] + w[2],
            SingularityClass::E => w.len() == 4 && 3 * w[0] == w[1] + w[3],
        }
    }
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RowRef {
    pub name: String,
    pub variant: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityEntry {
    pub name: String,
    pub variant: u32,
    pub class: SingularityClass,
    pub ws: WeightSystem,
    pub poly: LaurentPolynomial,
    pub dual: RowRef,
    pub mu: u64,
}

impl SingularityEntry {
    pub fn row_ref(&self) -> RowRef {
        RowRef { name: self.name.clone(), variant: self.variant }
    }

    pub fn u0(&self) -> IVec3 {
        self.class.u0()
    }

    /// `Γ(p)`.
    pub fn newton_diagram(&self) -> RationalPolytope {
        self.poly.newton_diagram().expect("catalog polynomials are validated on load")
    }

    /// The class-specific full Newton diagram `Δ(w)`.
    pub fn full_newton_diagram(&self) -> RationalPolytope {
        let w: Vec<i64> = self.ws.weights().iter().map(|x| *x as i64).collect();
        let n = self.ws.degree() as i64;
        let q = |k: i64, i: usize| ratio(k * n, w[i]);
        let zero = || ratio(0, 1);
        let points = match self.class {
            SingularityClass::A | SingularityClass::B => vec![
                Vec3Q::new(q(1, 0), zero(), zero()),
                Vec3Q::new(zero(), q(1, 1), zero()),
                Vec3Q::new(zero(), zero(), q(1, 2)),
            ],
            SingularityClass::C => vec![
                Vec3Q::new(q(1, 0), zero(), zero()),
                Vec3Q::new(zero(), zero(), q(1, 2)),
                Vec3Q::new(q(-1, 3), q(2, 3), zero()),
            ],
            SingularityClass::D => vec![
                Vec3Q::new(q(1, 0), zero(), zero()),
                Vec3Q::new(zero(), q(1, 1), zero()),
                Vec3Q::new(zero(), zero(), q(1, 2)),
                Vec3Q::new(q(-1, 3), q(1, 3), q(1, 3)),
            ],
            SingularityClass::E => vec![
                Vec3Q::new(q(3, 3), q(-1, 3), zero()),
                Vec3Q::new(zero(), q(1, 1), zero()),
                Vec3Q::new(zero(), zero(), q(1, 2)),
            ],
        };
        convex_hull(&points)
    }

    /// `Γ̃` and `Δ̃`: hulls with the origin, translated by `u0`.
    pub fn newton_polyhedra(&self) -> Result<DiagramPair, GeometryError> {
        let u0 = Vec3Q::from_ints(self.u0());
        let polyhedron = |diagram: RationalPolytope| {
            let mut pts = diagram.vertices().to_vec();
            pts.push(Vec3Q::zero());
            let p = convex_hull(&pts).translate(&u0);
            if p.contains_origin_strictly() {
                Ok(p)
            } else {
                Err(GeometryError::OriginNotInterior)
            }
        };
        Ok(DiagramPair {
            gamma_tilde: polyhedron(self.newton_diagram())?,
            delta_tilde: polyhedron(self.full_newton_diagram())?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramPair {
    pub gamma_tilde: RationalPolytope,
    pub delta_tilde: RationalPolytope,
}

/// On-disk row layout.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogRow {
    pub name: String,
    pub variant: u32,
    pub class: SingularityClass,
    pub weights: Vec<u64>,
    pub degree: u64,
    pub poly: String,
    pub dual: RowRef,
    pub mu: u64,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<SingularityEntry>,
    index: BTreeMap<RowRef, usize>,
}

impl Catalog {
    /// The dataset compiled into the binary.
    pub fn embedded() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::from_json(EMBEDDED).expect("embedded catalog is valid"))
    }

    pub fn from_json(text: &str) -> Result<Catalog, CatalogError> {
        let rows: Vec<CatalogRow> = serde_json::from_str(text).map_err(|e| CatalogError::Json(e.to_string()))?;
        Catalog::from_rows(rows)
    }

    pub fn from_rows(rows: Vec<CatalogRow>) -> Result<Catalog, CatalogError> {
        let mut entries = Vec::with_capacity(rows.len());
        let mut index = BTreeMap::new();
        for row in rows {
            let entry = validate_row(row)?;
            if index.insert(entry.row_ref(), entries.len()).is_some() {
                return Err(invalid(&entry.name, entry.variant, "duplicate row"));
            }
            entries.push(entry);
        }
        let catalog = Catalog { entries, index };
        for e in &catalog.entries {
            let dual = catalog
                .resolve(&e.dual)
                .ok_or_else(|| invalid(&e.name, e.variant, &format!("dual {} not found", e.dual.name)))?;
            if dual.dual != e.row_ref() {
                return Err(invalid(&e.name, e.variant, "duality is not an involution"));
            }
        }
        Ok(catalog)
    }

    pub fn to_rows(&self) -> Vec<CatalogRow> {
        self.entries
            .iter()
            .map(|e| CatalogRow {
                name: e.name.clone(),
                variant: e.variant,
                class: e.class,
                weights: e.ws.weights().to_vec(),
                degree: e.ws.degree(),
                poly: e.poly.to_string(),
                dual: e.dual.clone(),
                mu: e.mu,
            })
            .collect()
    }

    pub fn entries(&self) -> &[SingularityEntry] {
        &self.entries
    }

    pub fn lookup(&self, name: &str, variant: u32) -> Option<&SingularityEntry> {
        self.index.get(&RowRef { name: name.to_string(), variant }).map(|i| &self.entries[*i])
    }

    pub fn resolve(&self, r: &RowRef) -> Option<&SingularityEntry> {
        self.index.get(r).map(|i| &self.entries[*i])
    }

    pub fn dual_of(&self, e: &SingularityEntry) -> &SingularityEntry {
        self.resolve(&e.dual).expect("dual references are validated on load")
    }

    pub fn variant_count(&self, name: &str) -> usize {
        self.entries.iter().filter(|e| e.name == name).count()
    }

    /// `NAME` or `NAME/V` for names with several rows.
    pub fn label(&self, r: &RowRef) -> String {
        if self.variant_count(&r.name) > 1 {
            format!("{}/{}", r.name, r.variant)
        } else {
            r.name.clone()
        }
    }

    /// Resolves `NAME` or `NAME/V`. The flag reports whether variant 1 was
    /// chosen for a name that has several rows.
    pub fn find(&self, query: &str) -> Result<(&SingularityEntry, bool), CatalogError> {
        let unknown = || CatalogError::UnknownRow(query.to_string());
        let (name, variant, explicit) = match query.rsplit_once('/') {
            Some((n, v)) => (n, v.parse::<u32>().map_err(|_| unknown())?, true),
            None => (query, 1, false),
        };
        let entry = self.lookup(name, variant).ok_or_else(unknown)?;
        Ok((entry, !explicit && self.variant_count(name) > 1))
    }
}

fn invalid(name: &str, variant: u32, message: &str) -> CatalogError {
    CatalogError::InvalidRow { row: format!("{name}/{variant}"), message: message.to_string() }
}

fn validate_row(row: CatalogRow) -> Result<SingularityEntry, CatalogError> {
    let bad = |m: &str| invalid(&row.name, row.variant, m);
    if row.variant == 0 || row.mu == 0 {
        return Err(bad("variant and mu must be positive"));
    }
    let ws = WeightSystem::new(row.weights.clone(), row.degree).map_err(|e| bad(&e.to_string()))?;
    if row.weights.len() != row.class.weight_count() || !row.class.relation_holds(&row.weights) {
        return Err(bad("weights violate the class relation"));
    }
    let poly = LaurentPolynomial::parse(&row.poly).map_err(|e| bad(&e.to_string()))?;
    if !poly.is_homogeneous_for(&row.weights[..3], row.degree) {
        return Err(bad("polynomial is not weighted homogeneous for the weights"));
    }
    poly.newton_diagram().map_err(|e| bad(&e.to_string()))?;
    Ok(SingularityEntry {
        name: row.name,
        variant: row.variant,
        class: row.class,
        ws,
        poly,
        dual: row.dual,
        mu: row.mu,
    })
}
