//! Command-line front end.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog::{Catalog, CatalogError, SingularityClass, SingularityEntry};
use crate::cyclotomic::{format_expanded, CyclotomicProduct};
use crate::duality::{compute_duality, verify_all, VerificationReport};
use crate::geometry::{RationalPolytope, Vec3Q};
use crate::laurent::LaurentPolynomial;
use crate::monodromy::{char_poly, phi_gamma, saito_psi, GeneratorSystem};

#[derive(Parser, Debug)]
#[command(name = "strange-duality", version, about = "Polar duality of Newton polyhedra and monodromy of the exceptional singularities")]
struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// Use this catalog file instead of the embedded dataset
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog rows
    List {
        #[arg(long, value_parser = parse_class)]
        class: Option<SingularityClass>,
    },
    /// Weights, polynomial and polyhedra of a row
    Show { name: String },
    /// The matrix A, the dual weight system and ∇
    Dual { name: String },
    /// Characteristic polynomial of the monodromy
    Monodromy {
        #[arg(required_unless_present = "poly", conflicts_with_all = ["poly", "generators"])]
        name: Option<String>,
        #[arg(long, value_name = "EXPR", requires = "generators")]
        poly: Option<String>,
        #[arg(long, value_enum)]
        generators: Option<Generators>,
    },
    /// Saito's dual of ψ compared with ψ of the dual row
    Saito { name: String },
    /// Run every check on every row
    Verify,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Generators {
    Std,
    C,
    D,
}

fn parse_class(s: &str) -> Result<SingularityClass, String> {
    SingularityClass::from_tag(s).ok_or_else(|| format!("unknown class '{s}' (expected a, b, c, d or e)"))
}

enum Failure {
    Usage(String),
    Compute { name: &'static str, message: String },
    Verification,
    /// The reader went away; not worth reporting.
    ClosedOutput,
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::UnknownRow(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute { name: e.name(), message: e.to_string() },
        }
    }
}

macro_rules! compute_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Compute { name: e.name(), message: e.to_string() }
            }
        }
    )*};
}

compute_failure!(
    crate::geometry::GeometryError,
    crate::laurent::LaurentError,
    crate::cyclotomic::CyclotomicError,
    crate::monodromy::MonodromyError,
    crate::duality::DualityError
);

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::ClosedOutput;
        }
        Failure::Compute { name: "Io", message: e.to_string() }
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and notices and diagnostics to `err`. Returns the exit
/// code: 0 success, 1 failed verification, 2 usage error, 3 computation
/// error.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(()) | Err(Failure::ClosedOutput) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Compute { name, message }) => {
            let _ = writeln!(err, "error [{name}]: {message}");
            3
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let owned;
    let catalog = match &cli.catalog {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            owned = Catalog::from_json(&text)?;
            &owned
        }
        None => Catalog::embedded(),
    };
    let find = |name: &str, err: &mut dyn Write| -> Result<&SingularityEntry, Failure> {
        let (entry, defaulted) = catalog.find(name)?;
        if defaulted {
            writeln!(
                err,
                "note: {name} has {} rows; using {name}/1",
                catalog.variant_count(name)
            )?;
        }
        Ok(entry)
    };
    match &cli.command {
        Command::List { class } => list(catalog, *class, cli.json, out),
        Command::Show { name } => show(catalog, find(name, err)?, cli.json, out),
        Command::Dual { name } => dual(catalog, find(name, err)?, cli.json, out),
        Command::Monodromy { name: Some(name), .. } => monodromy(find(name, err)?, cli.json, out),
        Command::Monodromy { poly: Some(poly), generators: Some(g), .. } => custom_monodromy(poly, *g, cli.json, out),
        Command::Monodromy { .. } => Err(Failure::Usage("give NAME or --poly with --generators".into())),
        Command::Saito { name } => saito(catalog, find(name, err)?, cli.json, out),
        Command::Verify => verify(catalog, cli.json, out),
    }
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"))?;
    Ok(())
}

fn point_json(p: &Vec3Q) -> Value {
    json!(p.coords().iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn polytope_json(p: &RationalPolytope) -> Value {
    json!(p.vertices().iter().map(point_json).collect::<Vec<_>>())
}

fn points_text(ps: &[Vec3Q]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn list(catalog: &Catalog, class: Option<SingularityClass>, as_json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let keep = |c: SingularityClass| class.is_none_or(|k| k == c);
    if as_json {
        let rows: Vec<_> = catalog.to_rows().into_iter().filter(|r| keep(r.class)).collect();
        return emit(out, &serde_json::to_value(&rows).expect("serializable"));
    }
    writeln!(out, "{:<9} {:<5} {:<16} {:<4} {:<30} dual", "name", "class", "weights", "mu", "polynomial")?;
    for e in catalog.entries().iter().filter(|e| keep(e.class)) {
        writeln!(
            out,
            "{:<9} {:<5} {:<16} {:<4} {:<30} {}",
            catalog.label(&e.row_ref()),
            e.class.tag(),
            e.ws.to_string(),
            e.mu,
            e.poly.to_string(),
            catalog.label(&e.dual)
        )?;
    }
    Ok(())
}

fn show(catalog: &Catalog, e: &SingularityEntry, as_json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let gamma = e.newton_diagram();
    let pair = e.newton_polyhedra()?;
    let polar = pair.delta_tilde.polar_dual()?;
    if as_json {
        return emit(
            out,
            &json!({
                "name": e.name,
                "variant": e.variant,
                "class": e.class,
                "weights": e.ws.weights(),
                "degree": e.ws.degree(),
                "poly": e.poly.to_string(),
                "dual": e.dual,
                "mu": e.mu,
                "u0": e.u0(),
                "gamma": polytope_json(&gamma),
                "gamma_tilde": polytope_json(&pair.gamma_tilde),
                "delta": polytope_json(&e.full_newton_diagram()),
                "delta_tilde": polytope_json(&pair.delta_tilde),
                "delta_tilde_dual": polytope_json(&polar),
            }),
        );
    }
    writeln!(out, "{} (class {})", catalog.label(&e.row_ref()), e.class)?;
    if let Some(q) = e.class.quadric() {
        writeln!(out, "quadric   {q}")?;
    }
    writeln!(out, "weights   {}", e.ws)?;
    writeln!(out, "poly      {}", e.poly)?;
    writeln!(out, "mu        {}", e.mu)?;
    writeln!(out, "dual      {}", catalog.label(&e.dual))?;
    writeln!(out, "u0        {}", Vec3Q::from_ints(e.u0()))?;
    writeln!(out, "Γ         {}", points_text(gamma.vertices()))?;
    writeln!(out, "Δ         {}", points_text(e.full_newton_diagram().vertices()))?;
    writeln!(out, "Γ̃         {}", points_text(pair.gamma_tilde.vertices()))?;
    writeln!(out, "Δ̃         {}", points_text(pair.delta_tilde.vertices()))?;
    writeln!(out, "Δ̃*        {}", points_text(polar.vertices()))?;
    Ok(())
}

fn dual(catalog: &Catalog, e: &SingularityEntry, as_json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let c = compute_duality(e, catalog)?;
    let d = catalog.dual_of(e);
    let a = c.a.to_ints().expect("A is integral");
    if as_json {
        return emit(
            out,
            &json!({
                "name": e.name,
                "variant": e.variant,
                "dual": d.row_ref(),
                "a": a,
                "dual_weights": c.dual_ws.weights(),
                "degree": c.dual_ws.degree(),
                "u": c.vertex_matrix.columns,
                "det_u": c.vertex_matrix.det_u,
                "target_class": c.target.class,
                "nabla": polytope_json(&c.nabla),
                "nabla_coords": c.nabla_coords.iter().map(point_json).collect::<Vec<_>>(),
                "admissible": c.admissible,
                "matching": c.matching,
            }),
        );
    }
    writeln!(out, "{} → {}", catalog.label(&e.row_ref()), catalog.label(&d.row_ref()))?;
    writeln!(out, "U         {}", c.vertex_matrix.columns.iter().map(|u| Vec3Q::from_ints(*u).to_string()).collect::<Vec<_>>().join(" "))?;
    writeln!(out, "A         {}", c.a)?;
    writeln!(out, "det A     {}", c.a.det())?;
    writeln!(out, "w*        {}", c.dual_ws)?;
    writeln!(out, "∇         {}", points_text(c.nabla.vertices()))?;
    writeln!(out, "∇ in A    {}", points_text(&c.nabla_coords))?;
    writeln!(out, "dual      {} {} {}", catalog.label(&d.row_ref()), d.ws, d.poly)?;
    writeln!(out, "candidates {} admissible, {} matching the dual row", c.admissible, c.matching)?;
    Ok(())
}

fn product_lines(label: &str, p: &CyclotomicProduct, out: &mut dyn Write) -> Result<(), Failure> {
    writeln!(out, "{label} = {p}")?;
    writeln!(out, "degree {}", p.degree())?;
    if let Ok(coeffs) = p.expand() {
        writeln!(out, "expanded {}", format_expanded(&coeffs))?;
    }
    Ok(())
}

fn monodromy(e: &SingularityEntry, as_json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let phi = char_poly(e)?;
    if as_json {
        return emit(out, &serde_json::to_value(&phi).expect("serializable"));
    }
    product_lines("φ", &phi, out)
}

fn custom_monodromy(poly: &str, g: Generators, as_json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let p = LaurentPolynomial::parse(poly)?;
    let gen = match g {
        Generators::Std => GeneratorSystem::standard(3),
        Generators::C => GeneratorSystem::class_c(),
        Generators::D => GeneratorSystem::class_d(),
    };
    let phi = phi_gamma(&p.newton_diagram()?, &gen)?;
    if as_json {
        return emit(out, &serde_json::to_value(&phi).expect("serializable"));
    }
    product_lines("φ_Γ", &phi, out)
}

fn saito(catalog: &Catalog, e: &SingularityEntry, as_json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let d = catalog.dual_of(e);
    let h = e.ws.degree();
    let psi = saito_psi(e, &char_poly(e)?)?;
    let star = psi.saito_dual(h)?;
    let psi_dual = saito_psi(d, &char_poly(d)?)?;
    let matches = star == psi_dual;
    let verdict = match (matches, e.row_ref() == d.row_ref()) {
        (true, true) => "SELF-DUAL",
        (true, false) => "MATCH",
        (false, _) => "MISMATCH",
    };
    if as_json {
        emit(
            out,
            &json!({
                "name": e.name,
                "variant": e.variant,
                "h": h,
                "psi": psi,
                "psi_star": star,
                "dual": d.row_ref(),
                "psi_dual": psi_dual,
                "verdict": verdict,
            }),
        )?;
    } else {
        writeln!(out, "ψ         {psi}")?;
        writeln!(out, "h         {h}")?;
        writeln!(out, "ψ*        {star}")?;
        writeln!(out, "ψ({})  {psi_dual}", catalog.label(&d.row_ref()))?;
        writeln!(out, "{verdict}")?;
    }
    if matches {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn verify(catalog: &Catalog, as_json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let reports: Vec<VerificationReport> = verify_all(catalog);
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if as_json {
        emit(out, &serde_json::to_value(&reports).expect("serializable"))?;
    } else {
        for (r, e) in reports.iter().zip(catalog.entries()) {
            let ids: Vec<String> =
                r.checks.iter().map(|c| format!("{}:{}", c.id, if c.pass { "ok" } else { "FAIL" })).collect();
            writeln!(out, "{:<9} {} {}", catalog.label(&e.row_ref()), if r.passed() { "PASS" } else { "FAIL" }, ids.join(" "))?;
            for c in r.checks.iter().filter(|c| !c.pass) {
                writeln!(out, "    ({}) {}", c.id, c.detail)?;
            }
        }
        writeln!(out, "{} rows, {} failed", reports.len(), failed)?;
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
