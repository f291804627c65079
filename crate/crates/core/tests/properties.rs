use std::f64::consts::PI;

use inellipse_core::conic::Line;
use inellipse_core::inscribed::{self, FamilyParam};
use inellipse_core::oracle::{self, FuzzConfig};
use inellipse_core::*;
use proptest::prelude::*;

fn admissible() -> impl Strategy<Value = NormalizedQuad> {
    (0.2..3.5f64, 0.2..3.5f64)
        .prop_filter("inside G, away from s = 1", |(s, t)| s + t > 1.05 && (s - 1.0).abs() > 0.05)
        .prop_map(|(s, t)| NormalizedQuad::new(s, t).unwrap())
}

fn generic() -> impl Strategy<Value = NormalizedQuad> {
    admissible().prop_filter("off the special loci", |nq| {
        let (s, t) = (nq.s(), nq.t());
        (s - t).abs() > 0.05 && (s + t - 2.0).abs() > 0.05 && (t - 1.0).abs() > 0.05
    })
}

fn param() -> impl Strategy<Value = FamilyParam> {
    (0.02..0.98f64).prop_map(|q| FamilyParam::new(q).unwrap())
}

fn affine() -> impl Strategy<Value = AffineMap> {
    (0.0..2.0 * PI, 0.0..2.0 * PI, 0.3..4.0f64, 1.0..20.0f64, any::<bool>(), -10.0..10.0f64, -10.0..10.0f64)
        .prop_map(|(r1, r2, big, kappa, flip, x, y)| {
            let rot = |a: f64| [[a.cos(), -a.sin()], [a.sin(), a.cos()]];
            let mul = |p: [[f64; 2]; 2], q: [[f64; 2]; 2]| {
                [
                    [p[0][0] * q[0][0] + p[0][1] * q[1][0], p[0][0] * q[0][1] + p[0][1] * q[1][1]],
                    [p[1][0] * q[0][0] + p[1][1] * q[1][0], p[1][0] * q[0][1] + p[1][1] * q[1][1]],
                ]
            };
            let sign = if flip { -1.0 } else { 1.0 };
            let linear = mul(mul(rot(r1), [[big, 0.0], [0.0, sign * big / kappa]]), rot(r2));
            AffineMap::new(linear, Point::new(x, y)).unwrap()
        })
}

proptest! {
    #[test]
    fn canonical_form_is_scale_invariant(nq in admissible(), q in param(), lambda in prop_oneof![-50.0..-0.01f64, 0.01..50.0f64]) {
        let c = inscribed::ellipse_from_q(&nq, q);
        prop_assert!(c.scaled(lambda).canonical().approx_eq(&c.canonical(), 1e-12));
    }

    #[test]
    fn area_product_matches_discriminants(nq in admissible(), q in param()) {
        let c = inscribed::ellipse_from_q(&nq, q);
        let g = c.geometry().unwrap();
        let product = (g.a * g.b).powi(2);
        prop_assert!((product - c.semi_axes_product_sq()).abs() <= 1e-9 * product);
        prop_assert!((inscribed::area_product(&nq, q) - product).abs() <= 1e-9 * product);
    }

    #[test]
    fn family_members_touch_every_side(nq in admissible(), q in param()) {
        let c = inscribed::ellipse_from_q(&nq, q);
        let points = inscribed::tangency_points(&nq, q);
        for (j, (a, b)) in nq.quad().sides().into_iter().enumerate() {
            let r = c.line_tangency(&Line::through(a, b).unwrap(), 1e-9).unwrap();
            prop_assert!(r.residual <= 1e-9, "side {}: residual {}", j + 1, r.residual);
            prop_assert!(r.point.unwrap().distance(points.0[j]) <= 1e-7 * nq.diameter());
        }
        prop_assert!(oracle::inscribed_check(&c, &nq.quad(), 1e-9));
    }

    #[test]
    fn pushforward_moves_points_and_scales_area(nq in admissible(), q in param(), map in affine()) {
        let c = inscribed::ellipse_from_q(&nq, q);
        let image = c.pushforward(&map).unwrap();
        let g = c.geometry().unwrap();
        for k in 0..8 {
            let p = map.apply(g.point_at(k as f64 * PI / 4.0));
            // residual relative to the size of the terms being summed
            let [a, b, cc, d, e, f] = image.to_array();
            let terms = (a * p.x * p.x).abs() + (b * p.x * p.y).abs() + (cc * p.y * p.y).abs()
                + (d * p.x).abs() + (e * p.y).abs() + f.abs();
            prop_assert!(image.eval_raw(p).abs() <= 1e-9 * terms);
        }
        // area is translation invariant; the linear part alone avoids the
        // cancellation a far-off center adds to δ
        let linear = AffineMap::new(map.linear, Point::new(0.0, 0.0)).unwrap();
        let ratio = c.pushforward(&linear).unwrap().area().unwrap() / c.area().unwrap();
        prop_assert!((ratio - map.det().abs()).abs() <= 1e-9 * map.det().abs());
    }

    #[test]
    fn normalization_round_trips(nq in admissible(), map in affine()) {
        let Ok(quad) = Quadrilateral::new(nq.vertices().map(|p| map.apply(p))) else {
            return Ok(());
        };
        let Ok(norm) = quad.normalize() else {
            return Ok(());
        };
        let back = norm.to_user();
        for (p, v) in norm.nq.vertices().into_iter().zip(norm.quad.vertices()) {
            prop_assert!(back.apply(p).distance(v) <= 1e-9 * quad.diameter());
        }
    }

    #[test]
    fn classification_follows_the_loci(nq in admissible()) {
        let (s, t) = (nq.s(), nq.t());
        let kind = nq.quad().classify(DEFAULT_TOL);
        let expected = if t == 1.0 {
            Classification::Trapezoid
        } else if s == t {
            Classification::MdqType1
        } else if s + t == 2.0 {
            Classification::MdqType2
        } else {
            Classification::Generic
        };
        prop_assert_eq!(kind, expected);
        let specials = [NormalizedQuad::new(s, s), NormalizedQuad::new(s, 2.0 - s), NormalizedQuad::new(s, 1.0)];
        for sq in specials.into_iter().flatten() {
            let k = sq.quad().classify(DEFAULT_TOL);
            prop_assert!(Classification::ALL.contains(&k));
            prop_assert_ne!(k, Classification::Parallelogram);
        }
    }

    #[test]
    fn never_three_midpoints(nq in admissible(), q in param()) {
        prop_assert!(inscribed::count_midpoint_tangencies(&nq, q, 1e-7) <= 2);
    }

    #[test]
    fn midpoint_solutions_hit_midpoints(nq in admissible()) {
        let sol = inscribed::midpoint_solutions(&nq).as_array();
        let mids = nq.side_midpoints();
        for (j, q) in sol.into_iter().enumerate() {
            let points = inscribed::tangency_points(&nq, FamilyParam::new(q).unwrap());
            prop_assert!(points.0[j].distance(mids[j]) <= 1e-9 * nq.diameter());
        }
    }

    #[test]
    fn generic_solutions_are_distinct(nq in generic()) {
        let sol = inscribed::midpoint_solutions(&nq).as_array();
        for i in 0..4 {
            for j in i + 1..4 {
                prop_assert!((sol[i] - sol[j]).abs() > 1e-6, "q{} = q{}", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn tangency_point_is_injective_in_q(nq in admissible(), a in 0.02..0.98f64, b in 0.02..0.98f64) {
        prop_assume!((a - b).abs() > 1e-3);
        let pa = inscribed::tangency_points(&nq, FamilyParam::new(a).unwrap());
        let pb = inscribed::tangency_points(&nq, FamilyParam::new(b).unwrap());
        for j in 0..4 {
            prop_assert!(pa.0[j].distance(pb.0[j]) > 0.0);
        }
    }

    #[test]
    fn grid_argmin_converges(nq in generic()) {
        let sol = inscribed::midpoint_solutions(&nq).as_array();
        let scan = oracle::grid_scan_midpoints(&nq, 4096);
        for j in 0..4 {
            prop_assert!((scan[j].q - sol[j]).abs() <= 2.0 / 4096.0);
        }
    }

    #[test]
    fn polygonal_area_increases_to_the_ellipse(nq in admissible(), q in param()) {
        let c = inscribed::ellipse_from_q(&nq, q);
        let exact = c.area().unwrap();
        let mut previous = 0.0;
        for n in [8, 64, 512, 4096] {
            let a = oracle::polygonal_area(&c, n).unwrap();
            prop_assert!(a > previous && a <= exact * (1.0 + 1e-12));
            previous = a;
        }
        prop_assert!((exact - previous).abs() <= 1e-5 * exact);
    }

    #[test]
    fn inscribed_check_is_affine_invariant(nq in admissible(), q in param(), map in affine()) {
        let c = inscribed::ellipse_from_q(&nq, q);
        let quad = nq.quad().transformed(&map);
        let Ok(frame) = oracle::local_frame(&quad) else {
            return Ok(());
        };
        let framed = c.pushforward(&frame.compose(&map)).unwrap();
        prop_assert!(oracle::inscribed_check(&framed, &quad.transformed(&frame), 1e-7));
    }

    #[test]
    fn fuzz_reports_are_reproducible(seed in any::<u64>()) {
        let cfg = FuzzConfig { seed, trials: 20, grid_size: 64, tol: 1e-7 };
        let mut a = oracle::fuzz_theorem_t1(&cfg).unwrap();
        let mut b = oracle::fuzz_theorem_t1(&cfg).unwrap();
        a.elapsed = Default::default();
        b.elapsed = Default::default();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn trapezoid_area_law() {
    for s in [0.3, 2.0, 4.0, 7.5] {
        let nq = NormalizedQuad::new(s, 1.0).unwrap();
        for q in [0.1, 0.37, 0.5, 0.9] {
            let got = inscribed::area_product(&nq, FamilyParam::new(q).unwrap());
            let law = s / 4.0 * q * (1.0 - q);
            assert!((got - law).abs() <= 1e-12 * law, "s={s} q={q}");
        }
    }
}
