use std::f64::consts::PI;
use std::sync::Arc;

use slice_cauchy::algebra::{decompose, AlgebraSpec};
use slice_cauchy::cauchy::QuadratureGrid;
use slice_cauchy::geometry::{Gis, PlanarDomain};
use slice_cauchy::jump::{
    cauchy_transform, cauchy_transform_near, default_offsets, extension_test, extrapolate_to_zero,
    jump_check, slice_transform_f_theta, Side, EXTENSION_TOL,
};
use slice_cauchy::{Element, Error, SlicePolynomial, StemFunction};

fn h() -> Arc<AlgebraSpec> {
    AlgebraSpec::quaternions()
}

fn q(c: [f64; 4]) -> Element {
    Element::new(&h(), c.to_vec()).unwrap()
}

fn inverse(x: &Element) -> Element {
    x.conj().scale(1.0 / x.norm().real_part())
}

fn grid() -> QuadratureGrid {
    QuadratureGrid::boundary(256, 16).unwrap()
}

#[test]
fn neville_reproduces_polynomials() {
    let hs = [0.16, 0.08, 0.04];
    let vals: Vec<Vec<f64>> = hs.iter().map(|h| vec![2.0 - 3.0 * h + 5.0 * h * h, 1.0 + h]).collect();
    let v = extrapolate_to_zero(&hs, &vals);
    assert!((v[0] - 2.0).abs() < 1e-13 && (v[1] - 1.0).abs() < 1e-14);
    let two = extrapolate_to_zero(&hs[1..], &vals[1..]);
    // Linear extrapolation leaves the quadratic term 5 h1 h2.
    assert!((two[0] - (2.0 - 5.0 * 0.08 * 0.04)).abs() < 1e-13);
}

#[test]
fn remark_values_on_both_spheres() {
    let alg = h();
    let d = PlanarDomain::unit_disk();
    let (i, j) = (Element::basis(&alg, 1), Element::basis(&alg, 2));
    let g = grid();
    let interior = [q([0.3, 0.2, 0.1, -0.2]), q([0.1, 0.0, 0.5, 0.0])];
    let exterior = [q([1.3, 0.4, 0.2, 0.1]), q([0.2, 0.0, -1.5, 0.0])];

    let s = Gis::plane(&i).unwrap();
    let f = StemFunction::remark(&i);
    for x in &interior {
        let v = cauchy_transform(&s, &d, &f, x, &g, Side::Plus).unwrap();
        assert!(v.distance(x) < 1e-6);
        assert!(cauchy_transform_near(&s, &d, &f, x, &g).unwrap().distance(x) < 1e-6);
    }
    for x in &exterior {
        let v = cauchy_transform(&s, &d, &f, x, &g, Side::Minus).unwrap();
        assert!(v.euclidean_norm() < 1e-6);
    }

    let s2 = Gis::plane(&j).unwrap();
    let f2 = StemFunction::remark(&j);
    for x in &interior {
        let v = cauchy_transform(&s2, &d, &f2, x, &g, Side::Plus).unwrap();
        assert!(v.distance(&x.scale(0.5)) < 1e-4);
    }
    for x in &exterior {
        let v = cauchy_transform(&s2, &d, &f2, x, &g, Side::Minus).unwrap();
        assert!(v.distance(&inverse(x).scale(-0.5)) < 1e-4);
    }
}

#[test]
fn jump_at_the_diagonal_point() {
    let alg = h();
    let i = Element::basis(&alg, 1);
    let s = Gis::plane(&i).unwrap();
    let d = PlanarDomain::unit_disk();
    let x_hat = Element::from_plane((PI / 4.0).cos(), (PI / 4.0).sin(), &i);
    let r = jump_check(&s, &d, &StemFunction::remark(&i), &x_hat, &grid(), &default_offsets(&d)).unwrap();
    assert!(r.jump.distance(&x_hat) < 1e-6);
    assert!(r.residual < 1e-6);
    assert!(r.monotone);
    assert_eq!(r.offsets, vec![0.16, 0.08, 0.04]);
}

#[test]
fn remark_jump_on_the_second_sphere() {
    let alg = h();
    let j = Element::basis(&alg, 2);
    let s2 = Gis::plane(&j).unwrap();
    let d = PlanarDomain::unit_disk();
    let f = StemFunction::remark(&j);
    for k in 0..8 {
        let t = 2.0 * PI * (k as f64 + 0.5) / 8.0;
        let x_hat = Element::from_plane(t.cos(), t.sin(), &j);
        let r = jump_check(&s2, &d, &f, &x_hat, &grid(), &default_offsets(&d)).unwrap();
        // (x + x^{-1}) / 2 = Re(x) on the unit sphere.
        let re = Element::real(&alg, t.cos());
        assert!(r.boundary_value.distance(&re) < 1e-15);
        assert!(r.residual < 5e-4, "{k}: {}", r.residual);
        assert!(r.f_plus.distance(&x_hat.scale(0.5)) < 5e-4);
        assert!(r.f_minus.distance(&inverse(&x_hat).scale(-0.5)) < 5e-4);
    }
}

#[test]
fn constant_data() {
    let alg = h();
    let full = Gis::full_quaternion(&alg).unwrap();
    let d = PlanarDomain::unit_disk();
    let c = q([0.5, -1.0, 2.0, 0.25]);
    let f = StemFunction::constant(&c);
    let x_hat = q([0.6, 0.0, 0.8, 0.0]);
    let r = jump_check(&full, &d, &f, &x_hat, &QuadratureGrid::boundary(128, 12).unwrap(), &default_offsets(&d)).unwrap();
    assert!(r.f_plus.distance(&c) < 1e-10);
    assert!(r.f_minus.euclidean_norm() < 1e-10);
    assert!(r.residual < 1e-10);
}

#[test]
fn conjugate_data_on_the_circle() {
    let alg = h();
    let i = Element::basis(&alg, 1);
    let s = Gis::plane(&i).unwrap();
    let d = PlanarDomain::unit_disk();
    let f = StemFunction::conjugate(&alg);
    let g = grid();
    let inside = q([0.2, 0.3, 0.0, 0.0]);
    assert!(cauchy_transform(&s, &d, &f, &inside, &g, Side::Plus).unwrap().euclidean_norm() < 1e-10);
    for x in [q([1.5, 0.5, 0.0, 0.0]), q([0.0, -2.0, 0.0, 0.0])] {
        let v = cauchy_transform(&s, &d, &f, &x, &g, Side::Minus).unwrap();
        assert!(v.distance(&inverse(&x).scale(-1.0)) < 1e-10);
    }
}

#[test]
fn square_extends_and_is_reproduced() {
    let alg = h();
    let full = Gis::full_quaternion(&alg).unwrap();
    let d = PlanarDomain::unit_disk();
    let sq = SlicePolynomial::from_real(&alg, &[0.0, 0.0, 1.0]).unwrap();
    let f = sq.stem();
    let g = QuadratureGrid::boundary(128, 12).unwrap();
    let probes = [q([0.9, 0.6, 0.0, 0.0]), q([-0.5, 0.0, 0.6, 0.8]), q([0.1, 0.3, 0.3, 1.0])];
    let e = extension_test(&full, &d, &f, &g, &probes, EXTENSION_TOL, &default_offsets(&d)).unwrap();
    assert!(e.extends, "{}", e.max_f_minus);
    for r in &e.reports {
        assert!(r.f_plus.distance(&sq.eval(&r.point)) < 1e-6);
    }
    let x = q([0.2, 0.1, -0.3, 0.2]);
    let v = cauchy_transform(&full, &d, &f, &x, &g, Side::Plus).unwrap();
    assert!(v.distance(&sq.eval(&x)) < 1e-8);
}

#[test]
fn extension_verdicts_for_the_remark_data() {
    let alg = h();
    let d = PlanarDomain::unit_disk();
    for (k, extends) in [(1, true), (2, false)] {
        let u = Element::basis(&alg, k);
        let s = Gis::plane(&u).unwrap();
        let probes: Vec<Element> =
            (0..4).map(|n| Element::from_plane(1.1 * (n as f64).cos(), 1.1 * (n as f64).sin(), &u)).collect();
        let e = extension_test(&s, &d, &StemFunction::remark(&u), &grid(), &probes, EXTENSION_TOL, &default_offsets(&d))
            .unwrap();
        assert_eq!(e.extends, extends);
        if !extends {
            assert!((e.max_f_minus - 0.5).abs() < 1e-3);
        }
        assert!(extension_test(&s, &d, &StemFunction::remark(&u), &grid(), &[q([0.1, 0.0, 0.0, 0.0])], EXTENSION_TOL, &default_offsets(&d)).is_err());
    }
}

#[test]
fn slice_transforms() {
    let alg = h();
    let d = PlanarDomain::unit_disk();
    let j = Element::basis(&alg, 2);
    let plane = Gis::plane(&j).unwrap();
    let f = SlicePolynomial::from_real(&alg, &[0.0, 1.0, 1.0]).unwrap().stem();
    let g = QuadratureGrid::boundary(64, 4).unwrap();
    let x = q([0.2, 0.1, 0.3, -0.1]);
    let a = slice_transform_f_theta(&plane, &d, &f, &x, &[], &g, Side::Plus).unwrap();
    let b = cauchy_transform(&plane, &d, &f, &x, &g, Side::Plus).unwrap();
    assert!(a.distance(&b) < 1e-14);

    // The identity confined to C_{J_theta}: F^+ = x, F^- = 0.
    let full = Gis::full_quaternion(&alg).unwrap();
    let id = StemFunction::identity(&alg);
    let theta = [1.1, 0.4];
    let u = slice_cauchy::geometry::gis_unit(&full, &theta).unwrap();
    let inside = Element::from_plane(0.2, 0.5, &u);
    let outside = Element::from_plane(1.2, -0.7, &u);
    let g = QuadratureGrid::boundary(128, 4).unwrap();
    let fp = slice_transform_f_theta(&full, &d, &id, &inside, &theta, &g, Side::Plus).unwrap();
    let fm = slice_transform_f_theta(&full, &d, &id, &outside, &theta, &g, Side::Minus).unwrap();
    assert!(fp.distance(&inside) < 1e-12);
    assert!(fm.euclidean_norm() < 1e-12, "{fm}");
}

#[test]
fn exterior_values_decay() {
    let alg = h();
    let j = Element::basis(&alg, 2);
    let s2 = Gis::plane(&j).unwrap();
    let d = PlanarDomain::unit_disk();
    let f = StemFunction::remark(&j);
    let dir = q([0.6, 0.0, 0.8, 0.0]);
    let norms: Vec<f64> = [2.0, 4.0, 8.0, 16.0]
        .iter()
        .map(|r| cauchy_transform(&s2, &d, &f, &dir.scale(*r), &grid(), Side::Minus).unwrap().euclidean_norm())
        .collect();
    assert!(norms.windows(2).all(|w| w[1] < w[0]));
    assert!((norms[3] - 1.0 / 32.0).abs() < 1e-8);
}

#[test]
fn interior_transform_is_slice_regular() {
    // d/d alpha + I d/d beta of F^+ on a plane through x vanishes.
    let alg = h();
    let j = Element::basis(&alg, 2);
    let s2 = Gis::plane(&j).unwrap();
    let d = PlanarDomain::unit_disk();
    let f = StemFunction::remark(&j);
    let unit = q([0.0, 0.6, 0.0, 0.8]);
    let at = |a: f64, b: f64| cauchy_transform_near(&s2, &d, &f, &Element::from_plane(a, b, &unit), &grid()).unwrap();
    let (a, b, hh) = (0.2, 0.3, 1e-4);
    let da = &at(a + hh, b) - &at(a - hh, b);
    let db = &at(a, b + hh) - &at(a, b - hh);
    let cr = (&da + &(&unit * &db)).scale(0.5 / (2.0 * hh));
    assert!(cr.euclidean_norm() < 1e-8, "{cr}");
}

#[test]
fn argument_checks() {
    let alg = h();
    let i = Element::basis(&alg, 1);
    let s = Gis::plane(&i).unwrap();
    let d = PlanarDomain::unit_disk();
    let f = StemFunction::remark(&i);
    let g = grid();
    let inside = q([0.1, 0.2, 0.0, 0.0]);
    assert!(matches!(cauchy_transform(&s, &d, &f, &inside, &g, Side::Minus), Err(Error::WrongSide)));
    let near = q([0.0, 0.99, 0.0, 0.0]);
    assert!(matches!(cauchy_transform(&s, &d, &f, &near, &g, Side::Plus), Err(Error::TooCloseToBoundary { .. })));
    assert!(matches!(jump_check(&s, &d, &f, &inside, &g, &default_offsets(&d)), Err(Error::NotOnBoundary(_))));
    let on = Element::from_plane(0.6, 0.8, &i);
    for bad in [vec![0.1], vec![0.02, 0.04], vec![0.9, 0.1], vec![0.1, -0.05]] {
        assert!(jump_check(&s, &d, &f, &on, &g, &bad).is_err(), "{bad:?}");
    }
    let dec = decompose(&on, 1e-9).unwrap();
    assert!((dec.alpha - 0.6).abs() < 1e-15);
}
