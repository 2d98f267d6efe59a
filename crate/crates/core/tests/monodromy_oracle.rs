mod common;

use common::{row, CLASS_C, CLASS_D, P3, STANDARD};
use strange_duality::catalog::{Catalog, SingularityClass};
use strange_duality::cyclotomic::CyclotomicProduct;
use strange_duality::monodromy::{phi_gamma, special_faces, GeneratorSystem};

fn support(label: &str) -> Vec<P3> {
    row(label).poly.support()
}

fn oracle_product(points: &[P3], generators: &[P3], n: usize) -> CyclotomicProduct {
    CyclotomicProduct::from_factors(common::phi(points, generators, n))
}

#[test]
fn special_faces_agree_with_brute_force_on_every_diagram() {
    for e in Catalog::embedded().entries() {
        let (lib_gen, oracle_gen): (GeneratorSystem, &[P3]) = match e.class {
            SingularityClass::A | SingularityClass::B => (GeneratorSystem::standard(3), &STANDARD),
            SingularityClass::C => (GeneratorSystem::class_c(), &CLASS_C),
            SingularityClass::D => (GeneratorSystem::class_d(), &CLASS_D),
            SingularityClass::E => continue,
        };
        let mut lib: Vec<(usize, i64, i64)> = special_faces(&e.newton_diagram(), &lib_gen)
            .unwrap()
            .iter()
            .map(|s| (s.face.dim(), s.m as i64, s.chi))
            .collect();
        lib.sort();
        assert_eq!(lib, common::special_faces(&e.poly.support(), oracle_gen), "{} {}", e.name, e.variant);
    }
}

#[test]
fn e12_phi_from_brute_force() {
    let expected = CyclotomicProduct::from_factors([(1, -1), (2, 1), (3, 1), (6, -1), (7, 1), (14, -1), (21, -1), (42, 1)]);
    let oracle = oracle_product(&support("E12"), &STANDARD, 3);
    assert_eq!(oracle, expected);
    assert_eq!(oracle.degree(), 12);
    assert_eq!(phi_gamma(&row("E12").newton_diagram(), &GeneratorSystem::standard(3)).unwrap(), oracle);
}

#[test]
fn m11_phi_from_brute_force() {
    let oracle = oracle_product(&support("M11"), &CLASS_D, 3);
    assert_eq!(oracle, CyclotomicProduct::from_factors([(1, -1), (3, 1), (9, 1)]));
    assert_eq!(oracle.degree(), 11);
}

#[test]
fn j9_and_j30_from_brute_force() {
    let j30 = oracle_product(&support("J3,0"), &STANDARD, 3);
    assert_eq!(j30, CyclotomicProduct::from_factors([(1, -1), (2, 1), (3, 1), (6, -1), (9, -2), (18, 2)]));
    let j9 = CyclotomicProduct::factor(2, 1).multiply(&oracle_product(&support("J'9"), &CLASS_C, 3));
    assert_eq!(j9, CyclotomicProduct::from_factors([(1, -1), (2, 2), (3, 1), (6, -1), (9, -1), (18, 1)]));
    // ψ = φ for J3,0 and (λ−1)⁻¹φ for J'9
    let psi_j9 = CyclotomicProduct::factor(1, -1).multiply(&j9);
    assert_eq!(j30.saito_dual(18).unwrap(), psi_j9.with_level(18).unwrap());
}

#[test]
fn planar_outer_exponent() {
    let oracle = oracle_product(&[[2, 0, 0]], &STANDARD[..2], 2);
    assert_eq!(oracle, CyclotomicProduct::from_factors([(1, 1), (2, -1)]));
}

#[test]
fn oracle_special_faces_of_e12_by_hand() {
    let s = common::special_faces(&[[7, 0, 0], [0, 3, 0], [0, 0, 2]], &STANDARD);
    assert_eq!(s, vec![(0, 2, 1), (0, 3, 1), (0, 7, 1), (1, 6, -1), (1, 14, -1), (1, 21, -1), (2, 42, 1)]);
}
