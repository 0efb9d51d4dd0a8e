//! Stem functions, induced slice functions and the base Cauchy kernel.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::algebra::{
    decompose, in_quadratic_cone, invert_in_plane, is_imaginary_unit, AlgebraSpec, Element,
    DEFAULT_TOL,
};
use crate::error::{Error, Result};
use crate::geometry::{Membership, PlanarDomain};

/// Default central-difference step for the z-bar derivative.
pub const FD_STEP: f64 = 1e-5;

/// Kernel points with `|n(Delta_w(x))|` below this are treated as singular.
pub const KERNEL_TOL: f64 = 1e-20;

/// Tolerance on `|F2(alpha, 0)|` at real points.
pub const REAL_POINT_TOL: f64 = 1e-8;

/// A stem component pair `(F1, F2)` evaluated at `(alpha, beta)`.
pub type StemFn = dyn Fn(f64, f64) -> (Element, Element) + Send + Sync;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    C0,
    C1,
}

/// `F = F1 + i F2` on a conjugation-symmetric planar set.
#[derive(Clone)]
pub struct StemFunction {
    name: String,
    algebra: Arc<AlgebraSpec>,
    eval: Arc<StemFn>,
    dzbar: Option<Arc<StemFn>>,
    domain: Option<PlanarDomain>,
    smoothness: Smoothness,
    regular: bool,
}

impl fmt::Debug for StemFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StemFunction")
            .field("name", &self.name)
            .field("algebra", &self.algebra.name())
            .field("analytic_dzbar", &self.dzbar.is_some())
            .field("domain", &self.domain)
            .field("regular", &self.regular)
            .finish()
    }
}

impl StemFunction {
    pub fn new(
        name: impl Into<String>,
        algebra: &Arc<AlgebraSpec>,
        eval: impl Fn(f64, f64) -> (Element, Element) + Send + Sync + 'static,
    ) -> Self {
        StemFunction {
            name: name.into(),
            algebra: Arc::clone(algebra),
            eval: Arc::new(eval),
            dzbar: None,
            domain: None,
            smoothness: Smoothness::C1,
            regular: false,
        }
    }

    /// Analytic components `(d1, d2)` of `dF/dz-bar`.
    pub fn with_dzbar(
        mut self,
        dzbar: impl Fn(f64, f64) -> (Element, Element) + Send + Sync + 'static,
    ) -> Self {
        self.dzbar = Some(Arc::new(dzbar));
        self
    }

    pub fn with_domain(mut self, domain: PlanarDomain) -> Self {
        self.domain = Some(domain);
        self
    }

    pub fn with_smoothness(mut self, smoothness: Smoothness) -> Self {
        self.smoothness = smoothness;
        self
    }

    /// Declares `dF/dz-bar = 0`.
    pub fn slice_regular(mut self) -> Self {
        self.regular = true;
        let alg = Arc::clone(&self.algebra);
        self.dzbar = Some(Arc::new(move |_, _| (Element::zero(&alg), Element::zero(&alg))));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.algebra
    }

    pub fn domain(&self) -> Option<&PlanarDomain> {
        self.domain.as_ref()
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn is_slice_regular(&self) -> bool {
        self.regular
    }

    pub fn has_analytic_dzbar(&self) -> bool {
        self.dzbar.is_some()
    }

    pub fn eval(&self, alpha: f64, beta: f64) -> (Element, Element) {
        (self.eval)(alpha, beta)
    }

    /// `F1(alpha, beta) + J F2(alpha, beta)` for any sign of `beta`.
    pub fn induce_in_plane(&self, alpha: f64, beta: f64, unit: &Element) -> Element {
        let (f1, f2) = self.eval(alpha, beta);
        &f1 + &(unit * &f2)
    }

    /// Components of `dF/dz-bar`, analytic when available.
    pub fn dzbar_components(&self, alpha: f64, beta: f64, h: f64) -> Result<(Element, Element)> {
        if self.smoothness == Smoothness::C0 {
            return Err(Error::NotDifferentiable);
        }
        if let Some(d) = &self.dzbar {
            return Ok(d(alpha, beta));
        }
        self.dzbar_fd(alpha, beta, h)
    }

    /// Central-difference `dF/dz-bar`: `d1 = (F1_a - F2_b) / 2`, `d2 = (F2_a + F1_b) / 2`.
    pub fn dzbar_fd(&self, alpha: f64, beta: f64, h: f64) -> Result<(Element, Element)> {
        if let Some(d) = &self.domain {
            let stencil = [(alpha + h, beta), (alpha - h, beta), (alpha, beta + h), (alpha, beta - h)];
            if stencil.iter().any(|&(a, b)| !d.contains(a, b)) {
                return Err(Error::StencilOutsideDomain { alpha, beta });
            }
        }
        let (p1, p2) = self.eval(alpha + h, beta);
        let (m1, m2) = self.eval(alpha - h, beta);
        let (q1, q2) = self.eval(alpha, beta + h);
        let (n1, n2) = self.eval(alpha, beta - h);
        let s = 1.0 / (4.0 * h);
        let d1 = &(&p1 - &m1) - &(&q2 - &n2);
        let d2 = &(&p2 - &m2) + &(&q1 - &n1);
        Ok((d1.scale(s), d2.scale(s)))
    }

    /// The stem `dF/dz-bar` as a stem function in its own right.
    pub fn dzbar_stem(&self) -> Result<StemFunction> {
        if self.smoothness == Smoothness::C0 {
            return Err(Error::NotDifferentiable);
        }
        let me = self.clone();
        let mut out = StemFunction::new(format!("dzbar({})", self.name), &self.algebra, move |a, b| {
            me.dzbar_components(a, b, FD_STEP)
                .unwrap_or_else(|_| (Element::zero(&me.algebra), Element::zero(&me.algebra)))
        });
        out.domain = self.domain;
        out.smoothness = Smoothness::C0;
        Ok(out)
    }

    /// Largest violation of `F1(a, -b) = F1(a, b)`, `F2(a, -b) = -F2(a, b)`
    /// over the given sample points.
    pub fn symmetry_residual(&self, samples: &[(f64, f64)]) -> f64 {
        samples
            .iter()
            .map(|&(a, b)| {
                let (f1, f2) = self.eval(a, b);
                let (g1, g2) = self.eval(a, -b);
                f1.distance(&g1).max((&f2 + &g2).euclidean_norm())
            })
            .fold(0.0, f64::max)
    }

    // Built-in stems.

    /// `F(z) = z`.
    pub fn identity(algebra: &Arc<AlgebraSpec>) -> Self {
        let alg = Arc::clone(algebra);
        StemFunction::new("identity", algebra, move |a, b| {
            (Element::real(&alg, a), Element::real(&alg, b))
        })
        .slice_regular()
    }

    /// `F(z) = conj(z)`, inducing `x^c` with `dF/dz-bar = 1`.
    pub fn conjugate(algebra: &Arc<AlgebraSpec>) -> Self {
        let alg = Arc::clone(algebra);
        let alg2 = Arc::clone(algebra);
        StemFunction::new("conj", algebra, move |a, b| {
            (Element::real(&alg, a), Element::real(&alg, -b))
        })
        .with_dzbar(move |_, _| (Element::one(&alg2), Element::zero(&alg2)))
    }

    /// `F(z) = |z|^2`, inducing `n(x)` with `dF/dz-bar = z`.
    pub fn norm_squared(algebra: &Arc<AlgebraSpec>) -> Self {
        let alg = Arc::clone(algebra);
        let alg2 = Arc::clone(algebra);
        StemFunction::new("normsq", algebra, move |a, b| {
            (Element::real(&alg, a * a + b * b), Element::zero(&alg))
        })
        .with_dzbar(move |a, b| (Element::real(&alg2, a), Element::real(&alg2, b)))
    }

    pub fn constant(value: &Element) -> Self {
        let v = value.clone();
        let alg = Arc::clone(value.algebra());
        StemFunction::new(format!("const({value})"), value.algebra(), move |_, _| {
            (v.clone(), Element::zero(&alg))
        })
        .slice_regular()
    }

    /// Boundary datum `x_0 + e_1 x_1` on the plane of `unit`: with
    /// `x = alpha + beta J`, `x_1 = beta J_1`, so `F2 = beta J_1 (-J e_1)`.
    pub fn remark(unit: &Element) -> Self {
        let alg = Arc::clone(unit.algebra());
        let e1 = Element::basis(&alg, 1);
        let j1 = unit.coeffs()[1];
        let dir = (unit * &e1).scale(-j1);
        let a2 = Arc::clone(&alg);
        StemFunction::new("remark", &alg, move |a, b| {
            (Element::real(&a2, a), dir.scale(b))
        })
    }
}

/// `f(x) = F1(alpha, beta) + J F2(alpha, beta)` for `x = alpha + beta J`.
pub fn induce(stem: &StemFunction, x: &Element) -> Result<Element> {
    if !x.same_algebra(&Element::zero(stem.algebra())) {
        return Err(Error::AlgebraMismatch {
            left: stem.algebra().name().to_string(),
            right: x.algebra().name().to_string(),
        });
    }
    let dec = decompose(x, DEFAULT_TOL)?;
    if let Some(d) = stem.domain() {
        if d.classify(dec.alpha, dec.beta, DEFAULT_TOL) == Membership::Exterior {
            return Err(Error::OutsideDomain { alpha: dec.alpha, beta: dec.beta });
        }
    }
    let (f1, f2) = stem.eval(dec.alpha, dec.beta);
    match dec.unit {
        Some(unit) => Ok(&f1 + &(&unit * &f2)),
        None => {
            let residual = f2.euclidean_norm();
            if residual > REAL_POINT_TOL {
                return Err(Error::RealPointResidual { alpha: dec.alpha, residual });
            }
            Ok(f1)
        }
    }
}

/// The slice function induced by `dF/dz-bar`, evaluated at `x`.
pub fn slice_derivative(stem: &StemFunction, x: &Element, h: f64) -> Result<Element> {
    let dec = decompose(x, DEFAULT_TOL)?;
    if let Some(d) = stem.domain() {
        if !d.contains(dec.alpha, dec.beta) {
            return Err(Error::OutsideDomain { alpha: dec.alpha, beta: dec.beta });
        }
    }
    let (d1, d2) = stem.dzbar_components(dec.alpha, dec.beta, h)?;
    Ok(match dec.unit {
        Some(unit) => &d1 + &(&unit * &d2),
        None => d1,
    })
}

/// `Delta_w(x) = x^2 - x t(w) + n(w)`.
pub fn char_poly(w: &Element, x: &Element) -> Result<Element> {
    if !w.same_algebra(x) {
        return Err(Error::AlgebraMismatch {
            left: w.algebra().name().to_string(),
            right: x.algebra().name().to_string(),
        });
    }
    if !in_quadratic_cone(w, DEFAULT_TOL) || !in_quadratic_cone(x, DEFAULT_TOL) {
        return Err(Error::OutsideCone);
    }
    let t = w.trace().real_part();
    let n = w.norm().real_part();
    let mut out = &(x * x) - &x.scale(t);
    out.add_real(n);
    Ok(out)
}

/// `C(x, w) = Delta_w(x)^{-1} (w^c - x)`, inverting in the plane of `x`.
pub fn cauchy_kernel_c(x: &Element, w: &Element) -> Result<Element> {
    let delta = char_poly(w, x)?;
    let nd = delta.norm().real_part();
    if nd.abs() <= KERNEL_TOL {
        return Err(Error::SingularKernel(nd));
    }
    let inv = invert_in_plane(&delta, DEFAULT_TOL).map_err(|_| Error::SingularKernel(nd))?;
    Ok(&inv * &(&w.conj() - x))
}

/// `f(alpha + beta I)` from `f' = f(alpha + beta J)` and `f'' = f(alpha - beta J)`.
pub fn representation(
    f_plus: &Element,
    f_minus: &Element,
    i_unit: &Element,
    j_unit: &Element,
) -> Result<Element> {
    if !is_imaginary_unit(i_unit, DEFAULT_TOL) || !is_imaginary_unit(j_unit, DEFAULT_TOL) {
        return Err(Error::NotImaginaryUnit);
    }
    Ok(representation_unchecked(f_plus, f_minus, i_unit, j_unit))
}

pub(crate) fn representation_unchecked(
    f_plus: &Element,
    f_minus: &Element,
    i_unit: &Element,
    j_unit: &Element,
) -> Element {
    let mean = (f_plus + f_minus).scale(0.5);
    let diff = (f_plus - f_minus).scale(0.5);
    &mean - &(&(i_unit * j_unit) * &diff)
}

/// `x -> sum_k x^k a_k` with right coefficients.
#[derive(Debug, Clone)]
pub struct SlicePolynomial {
    coeffs: Vec<Element>,
}

impl SlicePolynomial {
    pub fn new(coeffs: Vec<Element>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::InvalidAlgebra("polynomial needs at least one coefficient".into()))?;
        if let Some(bad) = coeffs.iter().find(|c| !c.same_algebra(first)) {
            return Err(Error::AlgebraMismatch {
                left: first.algebra().name().to_string(),
                right: bad.algebra().name().to_string(),
            });
        }
        Ok(SlicePolynomial { coeffs })
    }

    pub fn from_real(algebra: &Arc<AlgebraSpec>, coeffs: &[f64]) -> Result<Self> {
        SlicePolynomial::new(coeffs.iter().map(|&c| Element::real(algebra, c)).collect())
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        self.coeffs[0].algebra()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation, `result <- x result + a_k`.
    pub fn eval(&self, x: &Element) -> Element {
        let mut acc = Element::zero(x.algebra());
        for a in self.coeffs.iter().rev() {
            acc = &(x * &acc) + a;
        }
        acc
    }

    /// Slice product: convolution of coefficient lists.
    pub fn slice_mul(&self, other: &SlicePolynomial) -> SlicePolynomial {
        let alg = self.algebra();
        let mut out = vec![Element::zero(alg); self.coeffs.len() + other.coeffs.len() - 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            for (l, b) in other.coeffs.iter().enumerate() {
                out[k + l] += &(a * b);
            }
        }
        SlicePolynomial { coeffs: out }
    }

    /// Stem `sum_k z^k a_k` with `z^k = u_k + i v_k`.
    pub fn stem(&self) -> StemFunction {
        let coeffs = self.coeffs.clone();
        let alg = Arc::clone(self.algebra());
        StemFunction::new(format!("poly{}", self.coeffs.len()), self.algebra(), move |a, b| {
            let z = Complex64::new(a, b);
            let mut zk = Complex64::new(1.0, 0.0);
            let mut f1 = Element::zero(&alg);
            let mut f2 = Element::zero(&alg);
            for c in &coeffs {
                f1 += &c.scale(zk.re);
                f2 += &c.scale(zk.im);
                zk *= z;
            }
            (f1, f2)
        })
        .slice_regular()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn h() -> Arc<AlgebraSpec> {
        AlgebraSpec::quaternions()
    }

    fn q(c: [f64; 4]) -> Element {
        Element::new(&h(), c.to_vec()).unwrap()
    }

    fn random_q(rng: &mut ChaCha8Rng) -> Element {
        q([
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ])
    }

    #[test]
    fn induce_builtin_stems() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let alg = h();
        let id = StemFunction::identity(&alg);
        let cj = StemFunction::conjugate(&alg);
        let sq = SlicePolynomial::from_real(&alg, &[0.0, 0.0, 1.0]).unwrap().stem();
        for _ in 0..10 {
            let x = random_q(&mut rng);
            assert!(induce(&id, &x).unwrap().distance(&x) < 1e-14);
            assert!(induce(&cj, &x).unwrap().distance(&x.conj()) < 1e-14);
            assert!(induce(&sq, &x).unwrap().distance(&(&x * &x)) < 1e-14);
        }
        assert_eq!(induce(&id, &Element::real(&alg, 2.5)).unwrap().coeffs(), &[2.5, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn real_point_requires_vanishing_f2() {
        let alg = h();
        let a2 = Arc::clone(&alg);
        let bad = StemFunction::new("bad", &alg, move |_, _| (Element::zero(&a2), Element::one(&a2)));
        assert!(matches!(
            induce(&bad, &Element::real(&alg, 0.3)),
            Err(Error::RealPointResidual { .. })
        ));
        let d = PlanarDomain::unit_disk();
        let id = StemFunction::identity(&alg).with_domain(d);
        assert!(induce(&id, &q([2.0, 0.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn slice_derivative_examples() {
        let alg = h();
        let x = q([0.3, 0.1, -0.2, 0.4]);
        let id = StemFunction::identity(&alg);
        assert!(slice_derivative(&id, &x, FD_STEP).unwrap().euclidean_norm() < 1e-15);
        let cj = StemFunction::conjugate(&alg);
        assert!(slice_derivative(&cj, &x, FD_STEP).unwrap().distance(&Element::one(&alg)) < 1e-15);
        // Finite differences on |z|^2 give back z, that is the identity.
        let a2 = Arc::clone(&alg);
        let ns = StemFunction::new("normsq-fd", &alg, move |a, b| {
            (Element::real(&a2, a * a + b * b), Element::zero(&a2))
        });
        assert!(!ns.has_analytic_dzbar());
        assert!(slice_derivative(&ns, &x, FD_STEP).unwrap().distance(&x) < 1e-9);
        let c0 = StemFunction::identity(&alg).with_smoothness(Smoothness::C0);
        assert!(matches!(slice_derivative(&c0, &x, FD_STEP), Err(Error::NotDifferentiable)));
        let near = StemFunction::norm_squared(&alg);
        let (fa, fb) = near.dzbar_fd(0.3, 0.2, FD_STEP).unwrap();
        let (ea, eb) = near.dzbar_components(0.3, 0.2, FD_STEP).unwrap();
        assert!(fa.distance(&ea) < 1e-9 && fb.distance(&eb) < 1e-9);
        let edge = near.with_domain(PlanarDomain::unit_disk());
        assert!(matches!(
            edge.dzbar_fd(1.0 - 1e-6, 0.0, FD_STEP),
            Err(Error::StencilOutsideDomain { .. })
        ));
    }

    #[test]
    fn char_poly_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let w = random_q(&mut rng);
            assert!(char_poly(&w, &w).unwrap().euclidean_norm() < 1e-14);
        }
        let x = q([0.2, 0.5, -0.1, 0.3]);
        let i = q([0.0, 1.0, 0.0, 0.0]);
        let expect = &(&x * &x) + &Element::one(&h());
        assert!(char_poly(&i, &x).unwrap().distance(&expect) < 1e-15);
        let v = char_poly(&q([1.0, 0.0, 1.0, 0.0]), &q([2.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(v.coeffs(), &[2.0, 0.0, 0.0, 0.0]);
        let c3 = AlgebraSpec::clifford(3).unwrap();
        let e123 = Element::basis(&c3, 7);
        assert!(matches!(char_poly(&e123, &Element::one(&c3)), Err(Error::OutsideCone)));
    }

    #[test]
    fn kernel_in_common_plane() {
        let x = q([0.1, 0.3, 0.0, 0.0]);
        let w = q([0.5, -0.8, 0.0, 0.0]);
        let c = cauchy_kernel_c(&x, &w).unwrap();
        let expect = (Complex64::new(0.5, -0.8) - Complex64::new(0.1, 0.3)).inv();
        assert!((c.coeffs()[0] - expect.re).abs() < 1e-14 && (c.coeffs()[1] - expect.im).abs() < 1e-14);
        assert!((&c * &(&w - &x)).distance(&Element::one(&h())) < 1e-12);
        let w = q([0.3, 0.2, -0.5, 0.1]);
        let c0 = cauchy_kernel_c(&Element::zero(&h()), &w).unwrap();
        let inv = w.conj().scale(1.0 / w.norm().real_part());
        assert!(c0.distance(&inv) < 1e-14);
        assert!(matches!(cauchy_kernel_c(&w, &w), Err(Error::SingularKernel(_))));
    }

    #[test]
    fn kernel_matches_slice_product_oracle() {
        // Delta_w = (x - w) * (x - w^c) as a slice product.
        let w = q([0.0, 1.0, 0.0, 0.0]);
        let lin = |c: &Element| SlicePolynomial::new(vec![-c, Element::one(&h())]).unwrap();
        let delta = lin(&w).slice_mul(&lin(&w.conj()));
        let x = q([0.0, 0.0, 0.5, 0.0]);
        let direct = char_poly(&w, &x).unwrap();
        assert!(delta.eval(&x).distance(&direct) < 1e-15);
        let c = cauchy_kernel_c(&x, &w).unwrap();
        // Delta_w(x) C(x, w) = w^c - x
        assert!((&direct * &c).distance(&(&w.conj() - &x)) < 1e-14);
    }

    #[test]
    fn representation_formula() {
        let alg = h();
        let s = 0.5f64.sqrt();
        let i_unit = q([0.0, s, s, 0.0]);
        let j_unit = q([0.0, 1.0, 0.0, 0.0]);
        let sq = SlicePolynomial::from_real(&alg, &[0.0, 0.0, 1.0]).unwrap();
        let (a, b) = (0.3, 0.7);
        let fp = sq.eval(&Element::from_plane(a, b, &j_unit));
        let fm = sq.eval(&Element::from_plane(a, -b, &j_unit));
        let x = Element::from_plane(a, b, &i_unit);
        let r = representation(&fp, &fm, &i_unit, &j_unit).unwrap();
        assert!(r.distance(&sq.eval(&x)) < 1e-14);
        assert!(representation(&fp, &fm, &j_unit, &j_unit).unwrap().distance(&fp) < 1e-15);
        assert!(representation(&fp, &fm, &Element::one(&alg), &j_unit).is_err());
        let idv = representation(
            &Element::from_plane(a, b, &j_unit),
            &Element::from_plane(a, -b, &j_unit),
            &i_unit,
            &j_unit,
        )
        .unwrap();
        assert!(idv.distance(&x) < 1e-15);
    }

    #[test]
    fn polynomial_stem_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let coeffs: Vec<Element> = (0..4).map(|_| random_q(&mut rng)).collect();
        let p = SlicePolynomial::new(coeffs).unwrap();
        let stem = p.stem();
        let samples: Vec<(f64, f64)> = (0..20).map(|k| (0.1 * k as f64 - 1.0, 0.05 * k as f64)).collect();
        assert!(stem.symmetry_residual(&samples) < 1e-14);
        for _ in 0..10 {
            let x = random_q(&mut rng);
            assert!(induce(&stem, &x).unwrap().distance(&p.eval(&x)) < 1e-13);
        }
    }

    #[test]
    fn remark_stem_values() {
        let alg = h();
        let i = Element::basis(&alg, 1);
        let j = Element::basis(&alg, 2);
        let x = Element::from_plane(0.3, 0.4, &i);
        assert!(induce(&StemFunction::remark(&i), &x).unwrap().distance(&x) < 1e-15);
        let y = Element::from_plane(0.3, 0.4, &j);
        let v = induce(&StemFunction::remark(&j), &y).unwrap();
        assert!(v.distance(&Element::real(&alg, 0.3)) < 1e-15);
    }
}
