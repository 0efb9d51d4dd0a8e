use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;
use slice_cauchy::algebra::{decompose, in_quadratic_cone, AlgebraSpec};
use slice_cauchy::geometry::polar::half_box;
use slice_cauchy::geometry::{jacobian_in, jacobian_in_det, polar_phi, Gis};
use slice_cauchy::parse::parse_element;
use slice_cauchy::slice::{cauchy_kernel_c, representation};
use slice_cauchy::{Element, SlicePolynomial};

fn coeffs(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, n)
}

fn angles(n: usize) -> impl Strategy<Value = Vec<f64>> {
    let b = half_box(n);
    b.into_iter()
        .map(|(lo, hi)| {
            let pad = 1e-3 * (hi - lo);
            lo + pad..hi - pad
        })
        .collect::<Vec<_>>()
}

fn unit_from(gis: &Gis, dir: &[f64]) -> Option<Element> {
    let len = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
    (len > 0.1).then(|| gis.combine(0.0, &dir.iter().map(|d| d / len).collect::<Vec<_>>()))
}

fn gis_choices() -> Vec<Gis> {
    vec![
        Gis::full_quaternion(&AlgebraSpec::quaternions()).unwrap(),
        Gis::paravector(&AlgebraSpec::clifford(3).unwrap()).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn decomposition_round_trip(c in coeffs(4)) {
        let h = AlgebraSpec::quaternions();
        let x = Element::new(&h, c).unwrap();
        let d = decompose(&x, 1e-9).unwrap();
        prop_assert!(d.beta >= 0.0);
        let back = d.reconstruct(&h);
        prop_assert!(back.distance(&x) <= 1e-12 * x.euclidean_norm().max(1.0));
    }

    #[test]
    fn paravector_decomposition(c in coeffs(4)) {
        let gis = &gis_choices()[1];
        let x = gis.combine(c[0], &c[1..]);
        prop_assert!(in_quadratic_cone(&x, 1e-9));
        let d = decompose(&x, 1e-9).unwrap();
        prop_assert!(d.reconstruct(gis.algebra()).distance(&x) <= 1e-12 * x.euclidean_norm().max(1.0));
        prop_assert!(x.trace().non_real_residual() < 1e-10 && x.norm().non_real_residual() < 1e-10);
    }

    #[test]
    fn same_plane_products_are_complex(a in coeffs(2), b in coeffs(2), dir in coeffs(3)) {
        let h = AlgebraSpec::quaternions();
        let full = Gis::full_quaternion(&h).unwrap();
        if let Some(u) = unit_from(&full, &dir) {
            let x = Element::from_plane(a[0], a[1], &u);
            let y = Element::from_plane(b[0], b[1], &u);
            let xy = &x * &y;
            prop_assert!(xy.distance(&(&y * &x)) < 1e-12);
            let z = Complex64::new(a[0], a[1]) * Complex64::new(b[0], b[1]);
            prop_assert!(xy.distance(&Element::from_plane(z.re, z.im, &u)) < 1e-12);
        }
    }

    #[test]
    fn norm_restriction_on_m(a in coeffs(4), b in coeffs(4)) {
        for gis in gis_choices() {
            let x = gis.combine(a[0], &a[1..]);
            let y = gis.combine(b[0], &b[1..]);
            let n = |v: &Element| v.norm().real_part();
            prop_assert!(n(&(&x + &y)).sqrt() <= n(&x).sqrt() + n(&y).sqrt() + 1e-12);
            let sq: f64 = a.iter().map(|v| v * v).sum();
            prop_assert!((n(&x) - sq).abs() < 1e-12 * sq.max(1.0));
        }
    }

    #[test]
    fn trace_of_unit_products(d1 in coeffs(3), d2 in coeffs(3)) {
        for gis in gis_choices() {
            if let (Some(i), Some(j)) = (unit_from(&gis, &d1), unit_from(&gis, &d2)) {
                let t = (&i * &j).trace();
                prop_assert!(t.non_real_residual() < 1e-12);
                prop_assert!(t.real_part() >= -2.0 - 1e-12);
            }
        }
    }

    #[test]
    fn kernel_times_difference_is_one(a in coeffs(2), b in coeffs(2), dir in coeffs(3)) {
        let h = AlgebraSpec::quaternions();
        let full = Gis::full_quaternion(&h).unwrap();
        if let Some(u) = unit_from(&full, &dir) {
            let x = Element::from_plane(a[0], a[1], &u);
            let w = Element::from_plane(b[0], b[1], &u);
            prop_assume!(x.distance(&w) > 1e-2 && x.distance(&w.conj()) > 1e-2);
            let c = cauchy_kernel_c(&x, &w).unwrap();
            let one = &c * &(&w - &x);
            prop_assert!(one.distance(&Element::one(&h)) < 1e-10);
        }
    }

    #[test]
    fn representation_with_equal_units(a in coeffs(4), b in coeffs(4), dir in coeffs(3)) {
        let h = AlgebraSpec::quaternions();
        let full = Gis::full_quaternion(&h).unwrap();
        if let Some(u) = unit_from(&full, &dir) {
            let fp = Element::new(&h, a).unwrap();
            let fm = Element::new(&h, b).unwrap();
            prop_assert!(representation(&fp, &fm, &u, &u).unwrap().distance(&fp) < 1e-12);
        }
    }

    #[test]
    fn real_polynomial_products_are_pointwise(p in coeffs(3), r in coeffs(3), x in coeffs(4)) {
        let h = AlgebraSpec::quaternions();
        let f = SlicePolynomial::from_real(&h, &p).unwrap();
        let g = SlicePolynomial::from_real(&h, &r).unwrap();
        let x = Element::new(&h, x).unwrap().scale(0.5);
        let fg = f.slice_mul(&g).eval(&x);
        prop_assert!(fg.distance(&(&f.eval(&x) * &g.eval(&x))) < 1e-11);
    }

    #[test]
    fn polar_points_are_unit_and_jacobians_agree(th in angles(3)) {
        let p = polar_phi(&th).unwrap();
        let len: f64 = p.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assert!((len - 1.0).abs() < 1e-14);
        let i = jacobian_in(&th).unwrap();
        prop_assert!(i >= 0.0);
        prop_assert!((i - jacobian_in_det(&th, 1e-5).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn display_parses_back(c in coeffs(8)) {
        let c3 = AlgebraSpec::clifford(3).unwrap();
        let x = Element::new(&c3, c).unwrap();
        let y = parse_element(&c3, &x.to_string()).unwrap();
        prop_assert_eq!(x.coeffs(), y.coeffs());
        let h: Arc<AlgebraSpec> = AlgebraSpec::quaternions();
        let q = Element::new(&h, x.coeffs()[..4].to_vec()).unwrap();
        let back = parse_element(&h, &q.to_string()).unwrap();
        prop_assert_eq!(back.coeffs(), q.coeffs());
    }
}

#[test]
fn half_box_covers_the_sphere_once() {
    // The right half-sphere area from the polar chart.
    let n = 2;
    let mut total = 0.0;
    for (th, w) in slice_cauchy::quadrature::tensor_rule(&half_box(n), 20) {
        total += w * jacobian_in(&th).unwrap();
    }
    assert!((total - 2.0 * PI).abs() < 1e-10);
}
