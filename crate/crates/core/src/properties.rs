//! Property-based checks of the exact pipelines.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use crate::bergman::{orthonormalize, rho_exact, rho_sequence};
use crate::checks::hermitian;
use crate::moments::{moment_table_closed, moment_table_of_polygon, polygon_real_moments};
use crate::opuc::{szego_forward, szego_inverse, VerblunskySequence};
use crate::regions::{area_and_centroid, realize_polygon, rotate_to_zero_i21, translate_to_zero_centroid};
use crate::scalar::cx;
use crate::{MpFloat, Param, Point, PolygonRegion, RegionSpec, Scalar};

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational `α` with `|α| < 1`.
fn alpha() -> impl Strategy<Value = (BigRational, BigRational)> {
    (2i64..40).prop_flat_map(|q| {
        (-(q - 1)..q, -(q - 1)..q)
            .prop_filter("inside the disk", move |(a, b)| a * a + b * b < q * q)
            .prop_map(move |(a, b)| (r(a, q), r(b, q)))
    })
}

/// Convex polygons from points on a rational parametrisation of the circle, sorted by angle.
fn convex_polygon() -> impl Strategy<Value = Vec<(BigRational, BigRational)>> {
    prop::collection::btree_set(-12i64..12, 3..7).prop_map(|ts| {
        let mut pts: Vec<(f64, (BigRational, BigRational))> = ts
            .into_iter()
            .map(|t| {
                // t ↦ ((1-t²)/(1+t²), 2t/(1+t²)) with t = k/4
                let (t, d) = (r(t, 4), r(1, 1));
                let den = &d + &t * &t;
                let p = ((&d - &t * &t) / &den, (r(2, 1) * &t) / &den);
                (
                    num_traits::ToPrimitive::to_f64(&p.1)
                        .unwrap()
                        .atan2(num_traits::ToPrimitive::to_f64(&p.0).unwrap()),
                    p,
                )
            })
            .collect();
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        pts.into_iter().map(|(_, p)| p).collect()
    })
}

fn polygon(pts: &[(BigRational, BigRational)]) -> PolygonRegion<BigRational> {
    PolygonRegion::new(pts.iter().map(|(x, y)| Point::new(x.clone(), y.clone())).collect()).unwrap()
}

fn house_param() -> impl Strategy<Value = BigRational> {
    (0i64..=20).prop_map(|k| r(k, 40))
}

fn triangle_param() -> impl Strategy<Value = BigRational> {
    (4i64..=40).prop_map(|k| r(k, 8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn szego_roundtrip(alphas in prop::collection::vec(alpha(), 1..8)) {
        let seq = VerblunskySequence::new(alphas.into_iter().map(|(a, b)| cx(a, b)).collect()).unwrap();
        let phi = szego_forward(&seq);
        prop_assert!(phi.is_monic());
        let (back, phis) = szego_inverse(&phi).unwrap();
        prop_assert_eq!(&back, &seq);
        prop_assert_eq!(phis.len(), seq.len());
    }

    #[test]
    fn centering_is_idempotent(pts in convex_polygon()) {
        let once = translate_to_zero_centroid(&polygon(&pts));
        let twice = translate_to_zero_centroid(&once);
        prop_assert_eq!(once.vertices(), twice.vertices());
        let (_, c) = area_and_centroid(&once);
        prop_assert!(c.x.is_zero() && c.y.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gram_hermitian_positive(pts in convex_polygon()) {
        let t = moment_table_of_polygon(&polygon(&pts), 4);
        prop_assert!(hermitian(&t));
        prop_assert!(orthonormalize(&t, 4).is_ok());
    }

    #[test]
    fn rho_nonincreasing(pts in convex_polygon()) {
        let p = rho_sequence(&moment_table_of_polygon(&polygon(&pts), 4), 4).unwrap();
        for w in p.rho.windows(2) {
            prop_assert!(w[1] <= w[0]);
        }
        prop_assert!(p.rho[4] > BigRational::zero());
    }

    #[test]
    fn rho_translation_invariant(pts in convex_polygon(), dx in -5i64..5, dy in -5i64..5) {
        let poly = polygon(&pts);
        let moved = poly.translate(&r(dx, 3), &r(dy, 7));
        let a = rho_sequence(&moment_table_of_polygon(&poly, 3), 3).unwrap();
        let b = rho_sequence(&moment_table_of_polygon(&moved, 3), 3).unwrap();
        prop_assert_eq!(a.rho, b.rho);
    }

    #[test]
    fn rho_scales_by_fourth_power(pts in convex_polygon(), k in 1i64..6) {
        let poly = polygon(&pts);
        let s = r(k, 3);
        let a = rho_sequence(&moment_table_of_polygon(&poly, 3), 3).unwrap();
        let b = rho_sequence(&moment_table_of_polygon(&poly.scale(&s), 3), 3).unwrap();
        let s4 = &s * &s * &s * &s;
        for (x, y) in a.rho.iter().zip(&b.rho) {
            prop_assert_eq!(x * &s4, y.clone());
        }
    }

    #[test]
    fn house_closed_moments_match_polygon(a in house_param()) {
        let spec = RegionSpec::House { a: Param::rational(a) };
        let closed = moment_table_closed::<BigRational>(&spec, 4, 0).unwrap();
        let poly = moment_table_of_polygon(&realize_polygon::<BigRational>(&spec, 0).unwrap(), 4);
        for i in 0..6 {
            for j in 0..6 {
                prop_assert_eq!(closed.get(i, j), poly.get(i, j));
            }
        }
    }

    #[test]
    fn triangle_closed_moments_match_polygon(a in triangle_param()) {
        let spec = RegionSpec::RightTriangle { a: Param::rational(a) };
        let closed = moment_table_closed::<BigRational>(&spec, 4, 0).unwrap();
        let poly = moment_table_of_polygon(&realize_polygon::<BigRational>(&spec, 0).unwrap(), 4);
        for i in 0..6 {
            for j in 0..6 {
                prop_assert_eq!(closed.get(i, j), poly.get(i, j));
            }
        }
    }

    #[test]
    fn realized_families_are_valid(a in house_param(), b in triangle_param()) {
        for spec in [
            RegionSpec::House { a: Param::rational(a.clone()) },
            RegionSpec::RightTriangle { a: Param::rational(b.clone()) },
            RegionSpec::Rectangle { a: Param::rational(b.clone()), b: Param::rational(b.recip()) },
        ] {
            let poly = realize_polygon::<BigRational>(&spec, 0).unwrap();
            let (area, c) = area_and_centroid(&poly);
            prop_assert!(area.is_one(), "{spec}");
            prop_assert!(poly.contains(&c));
        }
    }

    #[test]
    fn rotation_keeps_polar_moment(pts in convex_polygon()) {
        let f = |x: &BigRational| MpFloat::from_rational(x, 256);
        let poly = PolygonRegion::new(pts.iter().map(|(x, y)| Point::new(f(x), f(y))).collect()).unwrap();
        let centered = translate_to_zero_centroid(&poly);
        let (rot, _) = rotate_to_zero_i21(&centered).unwrap();
        let before = polygon_real_moments(&centered, 3);
        let after = polygon_real_moments(&rot, 3);
        let polar = |m: &crate::moments::RealMoments<MpFloat>| (m.get(2, 0) + m.get(0, 2)).to_f64();
        prop_assert!((polar(&before) - polar(&after)).abs() < 1e-30);
        prop_assert!((before.get(0, 0).to_f64() - after.get(0, 0).to_f64()).abs() < 1e-30);
        prop_assert!(after.get(2, 1).to_f64().abs() < 1e-30);
    }
}

#[test]
fn exact_and_float_pipelines_agree() {
    let spec = RegionSpec::House { a: Param::ratio(1, 3) };
    let exact = rho_exact(&spec, 5).unwrap();
    let float = crate::bergman::rho_moment_sequence(&spec, 5, 256).unwrap().0[5];
    assert!((num_traits::ToPrimitive::to_f64(&exact).unwrap() - float).abs() < 1e-15);
}
