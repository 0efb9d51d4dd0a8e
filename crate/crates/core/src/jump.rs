//! Cauchy-type transforms `F_S^+-`, boundary limits and the jump formula.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::{decompose, Element, DEFAULT_TOL};
use crate::cauchy::{angle_nodes, boundary_integral_unchecked, KernelFrame, QuadratureGrid};
use crate::error::{Error, Result};
use crate::geometry::gis::unit_checked;
use crate::geometry::polar::jacobian_in_unchecked;
use crate::geometry::{Gis, PlanarDomain};
use crate::quadrature::{graded_periodic_rule, GaussRule, VectorSum};
use crate::slice::StemFunction;

/// Default approach offsets as fractions of `diam(D)`.
pub const DEFAULT_OFFSET_FRACTIONS: [f64; 3] = [0.08, 0.04, 0.02];

/// Default tolerance on `|F^-|` in [`extension_test`].
pub const EXTENSION_TOL: f64 = 1e-3;

/// Points closer than this fraction of `diam(D)` count as on the boundary.
const ON_BOUNDARY_FRACTION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Inside `Omega_D`.
    Plus,
    /// Outside the closure of `Omega_D`.
    Minus,
}

impl Side {
    pub fn of(domain: &PlanarDomain, alpha: f64, beta: f64) -> Side {
        if domain.contains(alpha, beta) {
            Side::Plus
        } else {
            Side::Minus
        }
    }
}

pub fn default_offsets(domain: &PlanarDomain) -> Vec<f64> {
    DEFAULT_OFFSET_FRACTIONS.iter().map(|f| f * domain.diameter()).collect()
}

fn check_side(domain: &PlanarDomain, frame: &KernelFrame, side: Side, margin: f64) -> Result<()> {
    if Side::of(domain, frame.alpha, frame.beta) != side {
        return Err(Error::WrongSide);
    }
    let distance = domain.distance_to_boundary(frame.alpha, frame.beta);
    if distance < margin {
        return Err(Error::TooCloseToBoundary { distance, margin });
    }
    Ok(())
}

/// `F_S^+-(x) = 1/(2 pi) int C_S(x, w) n(w) f(w) dsigma_w` by plain tensor quadrature.
pub fn cauchy_transform(
    gis: &Gis,
    domain: &PlanarDomain,
    f: &StemFunction,
    x: &Element,
    grid: &QuadratureGrid,
    side: Side,
) -> Result<Element> {
    grid.validate()?;
    let frame = KernelFrame::new(x)?;
    check_side(domain, &frame, side, grid.margin(domain))?;
    Ok(boundary_integral_unchecked(gis, domain, f, &frame, grid)?.scale(0.5 / PI))
}

/// `F_theta(x) = 1/(2 pi) int_{dD_J} C(x, w) J^{-1} dw f(w)` on the slice of `J_theta`.
pub fn slice_transform_f_theta(
    gis: &Gis,
    domain: &PlanarDomain,
    f: &StemFunction,
    x: &Element,
    theta: &[f64],
    grid: &QuadratureGrid,
    side: Side,
) -> Result<Element> {
    grid.validate()?;
    let unit = unit_checked(gis, theta)?;
    let frame = KernelFrame::new(x)?;
    check_side(domain, &frame, side, grid.margin(domain))?;
    let rule = GaussRule::new(grid.n_t, 0.0, 1.0);
    let alg = gis.algebra();
    let mut acc = VectorSum::new(alg.dim());
    for k in 0..domain.component_count() {
        for (t, wt) in rule.iter() {
            let c = domain.curve(k, t);
            let w = Element::from_plane(c.a, c.b, &unit);
            let kern = frame.kernel(&w, c.a, c.b)?;
            let normal = Element::from_plane(c.db, -c.da, &unit);
            let v = &(&kern * &normal) * &f.induce_in_plane(c.a, c.b, &unit);
            acc.add_scaled(v.coeffs(), wt);
        }
    }
    Ok(Element::new(alg, acc.values())?.scale(0.5 / PI))
}

/// `(P, Q)` with `int_{dD} (w - p)^{-1} J^{-1} dw f(w) = P + J Q` for every
/// unit `J`, with the value at the nearest boundary point subtracted and
/// the residue term added back.
fn plane_transform_pair(
    domain: &PlanarDomain,
    f: &StemFunction,
    p: (f64, f64),
    grid: &QuadratureGrid,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let dim = f.algebra().dim();
    let loc = domain.nearest_boundary_point(p.0, p.1);
    if loc.distance <= 1e-12 {
        return Err(Error::TooCloseToBoundary { distance: loc.distance, margin: 1e-12 });
    }
    let (g1, g2) = f.eval(loc.point.a, loc.point.b);
    let pz = Complex64::new(p.0, p.1);
    let mut pa = VectorSum::new(dim);
    let mut qa = VectorSum::new(dim);
    let panel = (grid.n_t / 16).max(8);
    for k in 0..domain.component_count() {
        let rule = if k == loc.component {
            graded_periodic_rule(loc.t, loc.distance / loc.point.speed(), panel)
        } else {
            GaussRule::new(grid.n_t, 0.0, 1.0)
        };
        for (t, wt) in rule.iter() {
            let c = domain.curve(k, t);
            // (w - p)^{-1} J^{-1} dw/dt as a complex number.
            let kern = Complex64::new(0.0, -1.0) * Complex64::new(c.da, c.db)
                / (Complex64::new(c.a, c.b) - pz);
            let (f1, f2) = f.eval(c.a, c.b);
            let d1 = &f1 - &g1;
            let d2 = &f2 - &g2;
            pa.add_scaled(d1.coeffs(), wt * kern.re);
            pa.add_scaled(d2.coeffs(), -wt * kern.im);
            qa.add_scaled(d2.coeffs(), wt * kern.re);
            qa.add_scaled(d1.coeffs(), wt * kern.im);
        }
    }
    if domain.contains(p.0, p.1) {
        pa.add_scaled(g1.coeffs(), 2.0 * PI);
        qa.add_scaled(g2.coeffs(), 2.0 * PI);
    }
    Ok((pa.values(), qa.values()))
}

/// `F_S(x)` for any `x` off the boundary, accurate close to it.
///
/// Each slice integral is written through the representation formula in
/// terms of `x' = alpha + beta J` and `x'' = alpha - beta J`, whose in-plane
/// integrals use singularity subtraction and panels graded toward the
/// nearest boundary point.
pub fn cauchy_transform_near(
    gis: &Gis,
    domain: &PlanarDomain,
    f: &StemFunction,
    x: &Element,
    grid: &QuadratureGrid,
) -> Result<Element> {
    grid.validate()?;
    let frame = KernelFrame::new(x)?;
    let plus = plane_transform_pair(domain, f, (frame.alpha, frame.beta), grid)?;
    let minus = if frame.unit.is_some() {
        Some(plane_transform_pair(domain, f, (frame.alpha, -frame.beta), grid)?)
    } else {
        None
    };
    let alg = gis.algebra();
    let as_element = |pair: &(Vec<f64>, Vec<f64>), u: &Element| {
        let p = Element::new(alg, pair.0.clone()).expect("dimension");
        let q = Element::new(alg, pair.1.clone()).expect("dimension");
        &p + &(u * &q)
    };
    let mut acc = VectorSum::new(alg.dim());
    let pre = gis.kernel_prefactor();
    for (theta, wt) in angle_nodes(gis, grid.n_theta) {
        let u = gis.unit_unchecked(&theta);
        let vp = as_element(&plus, &u);
        let v = match &minus {
            Some(m) => frame.combine(&vp, &as_element(m, &u), &u),
            None => vp,
        };
        acc.add_scaled(v.coeffs(), pre * wt * jacobian_in_unchecked(&theta) * 0.5 / PI);
    }
    Element::new(alg, acc.values())
}

/// Polynomial extrapolation to `h = 0` (Neville) of coefficient vectors.
pub fn extrapolate_to_zero(hs: &[f64], values: &[Vec<f64>]) -> Vec<f64> {
    let n = hs.len();
    let mut table: Vec<Vec<f64>> = values.to_vec();
    for level in 1..n {
        for i in 0..n - level {
            let (hi, hj) = (hs[i], hs[i + level]);
            table[i] = table[i]
                .iter()
                .zip(&table[i + 1])
                .map(|(a, b)| (hj * a - hi * b) / (hj - hi))
                .collect();
        }
    }
    table[0].clone()
}

#[derive(Debug, Clone)]
pub struct JumpReport {
    pub point: Element,
    pub f_plus: Element,
    pub f_minus: Element,
    pub jump: Element,
    pub boundary_value: Element,
    pub residual: f64,
    pub offsets: Vec<f64>,
    /// `false` when the differences between successive offset values grow.
    pub monotone: bool,
}

fn check_offsets(domain: &PlanarDomain, offsets: &[f64]) -> Result<()> {
    let limit = 0.25 * domain.diameter();
    let ok = offsets.len() >= 2
        && offsets.iter().all(|&h| h > 0.0 && h < limit)
        && offsets.windows(2).all(|w| w[1] < w[0]);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidGrid(format!(
            "offsets must be at least two strictly decreasing values in (0, {limit}), got {offsets:?}"
        )))
    }
}

fn differences_shrink(values: &[Element]) -> bool {
    let d: Vec<f64> = values.windows(2).map(|w| w[0].distance(&w[1])).collect();
    d.windows(2).all(|w| w[1] <= w[0] + 1e-12)
}

/// Boundary limits of `F^+-` at `x_hat` from evaluations at `x_hat -+ h n`.
pub fn jump_check(
    gis: &Gis,
    domain: &PlanarDomain,
    f: &StemFunction,
    x_hat: &Element,
    grid: &QuadratureGrid,
    offsets: &[f64],
) -> Result<JumpReport> {
    grid.validate()?;
    check_offsets(domain, offsets)?;
    let dec = decompose(x_hat, DEFAULT_TOL)?;
    let unit = dec.unit.clone().unwrap_or_else(|| gis.basis()[1].clone());
    let loc = domain.nearest_boundary_point(dec.alpha, dec.beta);
    if loc.distance > ON_BOUNDARY_FRACTION * domain.diameter() {
        return Err(Error::NotOnBoundary(loc.distance));
    }
    let (n1, n2) = loc.point.normal();
    let eval = |sign: f64, h: f64, side: Side| -> Result<Element> {
        let (a, b) = (dec.alpha + sign * h * n1, dec.beta + sign * h * n2);
        if Side::of(domain, a, b) != side {
            return Err(Error::WrongSide);
        }
        cauchy_transform_near(gis, domain, f, &Element::from_plane(a, b, &unit), grid)
    };
    let plus: Vec<Element> = offsets.iter().map(|&h| eval(-1.0, h, Side::Plus)).collect::<Result<_>>()?;
    let minus: Vec<Element> = offsets.iter().map(|&h| eval(1.0, h, Side::Minus)).collect::<Result<_>>()?;
    let alg = gis.algebra();
    let limit = |vals: &[Element]| {
        let v: Vec<Vec<f64>> = vals.iter().map(|e| e.coeffs().to_vec()).collect();
        Element::new(alg, extrapolate_to_zero(offsets, &v)).expect("dimension")
    };
    let f_plus = limit(&plus);
    let f_minus = limit(&minus);
    let jump = &f_plus - &f_minus;
    let boundary_value = f.induce_in_plane(dec.alpha, dec.beta, &unit);
    let residual = jump.distance(&boundary_value);
    Ok(JumpReport {
        point: x_hat.clone(),
        f_plus,
        f_minus,
        jump,
        boundary_value,
        residual,
        offsets: offsets.to_vec(),
        monotone: differences_shrink(&plus) && differences_shrink(&minus),
    })
}

#[derive(Debug, Clone)]
pub struct ExtensionReport {
    pub extends: bool,
    pub max_f_minus: f64,
    /// One report per probe, at the boundary point nearest to it.
    pub reports: Vec<JumpReport>,
}

/// `f` extends slice regularly iff the exterior limits `F^-` vanish on the boundary.
pub fn extension_test(
    gis: &Gis,
    domain: &PlanarDomain,
    f: &StemFunction,
    grid: &QuadratureGrid,
    probes: &[Element],
    tol: f64,
    offsets: &[f64],
) -> Result<ExtensionReport> {
    let reports: Vec<JumpReport> = probes
        .par_iter()
        .map(|x| {
            let dec = decompose(x, DEFAULT_TOL)?;
            if domain.contains(dec.alpha, dec.beta) {
                return Err(Error::WrongSide);
            }
            let unit = dec.unit.clone().unwrap_or_else(|| gis.basis()[1].clone());
            let loc = domain.nearest_boundary_point(dec.alpha, dec.beta);
            let x_hat = Element::from_plane(loc.point.a, loc.point.b, &unit);
            jump_check(gis, domain, f, &x_hat, grid, offsets)
        })
        .collect::<Result<_>>()?;
    let max_f_minus = reports.iter().map(|r| r.f_minus.euclidean_norm()).fold(0.0, f64::max);
    Ok(ExtensionReport { extends: max_f_minus < tol, max_f_minus, reports })
}
