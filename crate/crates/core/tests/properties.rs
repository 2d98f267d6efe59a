use num_bigint::BigInt;
use proptest::prelude::*;
use strange_duality::cyclotomic::CyclotomicProduct;
use strange_duality::geometry::{convex_hull, Vec3Q};
use strange_duality::laurent::LaurentPolynomial;

/// Random integer points plus one point on each side of every axis, so the
/// origin is strictly inside.
fn polytope_points() -> impl Strategy<Value = Vec<[i64; 3]>> {
    (prop::array::uniform6(1i64..5), prop::collection::vec(prop::array::uniform3(-4i64..=4), 0..8)).prop_map(
        |(axes, extra)| {
            let mut pts = vec![
                [axes[0], 0, 0],
                [-axes[1], 0, 0],
                [0, axes[2], 0],
                [0, -axes[3], 0],
                [0, 0, axes[4]],
                [0, 0, -axes[5]],
            ];
            pts.extend(extra);
            pts
        },
    )
}

fn divisors(h: u64) -> Vec<u64> {
    (1..=h).filter(|d| h % d == 0).collect()
}

fn leveled_product() -> impl Strategy<Value = (CyclotomicProduct, u64)> {
    (1u64..=72).prop_flat_map(|h| {
        let ds = divisors(h);
        let n = ds.len();
        prop::collection::vec(-3i64..=3, n).prop_map(move |exps| {
            let p = CyclotomicProduct::from_factors(ds.iter().copied().zip(exps));
            (p.with_level(h).unwrap(), h)
        })
    })
}

fn product() -> impl Strategy<Value = CyclotomicProduct> {
    prop::collection::vec((1u64..=24, -3i64..=3), 0..6).prop_map(CyclotomicProduct::from_factors)
}

fn polynomial() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((prop::array::uniform3(-4i64..=6), -5i64..=5), 1..6).prop_filter_map(
        "all terms cancel",
        |terms| {
            LaurentPolynomial::from_terms(
                terms.into_iter().map(|(e, c)| (e, strange_duality::geometry::int(c))),
            )
            .ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn polar_dual_is_an_involution(points in polytope_points()) {
        let p = convex_hull(&points.iter().copied().map(Vec3Q::from_ints).collect::<Vec<_>>());
        prop_assert!(p.contains_origin_strictly());
        let dual = p.polar_dual().unwrap();
        prop_assert!(dual.contains_origin_strictly());
        prop_assert_eq!(dual.polar_dual().unwrap(), p);
    }

    #[test]
    fn hull_contains_its_points(points in polytope_points()) {
        let qs: Vec<Vec3Q> = points.iter().copied().map(Vec3Q::from_ints).collect();
        let p = convex_hull(&qs);
        for q in &qs {
            prop_assert!(p.contains(q));
        }
        for v in p.vertices() {
            prop_assert!(qs.contains(v));
        }
    }

    #[test]
    fn saito_dual_is_an_involution((p, h) in leveled_product()) {
        let once = p.saito_dual(h).unwrap();
        prop_assert_eq!(once.level(), Some(h));
        prop_assert_eq!(once.saito_dual(h).unwrap(), p);
    }

    #[test]
    fn multiply_is_commutative_and_associative(a in product(), b in product(), c in product()) {
        prop_assert_eq!(a.multiply(&b), b.multiply(&a));
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        prop_assert_eq!(a.multiply(&CyclotomicProduct::one()), a.clone());
        prop_assert!(a.multiply(&a.pow(-1)).is_one());
    }

    #[test]
    fn degree_is_additive_and_matches_expansion(a in product(), b in product()) {
        prop_assert_eq!(a.multiply(&b).degree(), a.degree() + b.degree());
        if let Ok(coeffs) = a.expand() {
            prop_assert_eq!(coeffs.len() as i64 - 1, a.degree());
        }
    }

    #[test]
    fn negate_variable_flips_odd_coefficients(a in product()) {
        if let Ok(coeffs) = a.expand() {
            let flipped: Vec<BigInt> = coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
            let negated = a.negate_variable().expand().unwrap();
            let sign_flipped: Vec<BigInt> = negated.iter().map(|c| -c).collect();
            prop_assert!(negated == flipped || sign_flipped == flipped);
        }
    }

    #[test]
    fn print_then_parse_is_identity(p in polynomial()) {
        let text = p.to_string();
        let again = LaurentPolynomial::parse(&text).unwrap();
        prop_assert_eq!(again.to_string(), text);
        prop_assert_eq!(again, p);
    }

    #[test]
    fn product_json_round_trips((p, _h) in leveled_product()) {
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<CyclotomicProduct>(&text).unwrap(), p);
    }
}
