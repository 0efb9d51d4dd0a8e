//! The gis Cauchy kernel and quadrature of the boundary and volume integrals.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::algebra::{decompose, Element, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::geometry::polar::jacobian_in_unchecked;
use crate::geometry::{Gis, PlanarDomain};
use crate::quadrature::{graded_rule, tensor_rule, GaussRule, NeumaierSum, VectorSum};
use crate::slice::{cauchy_kernel_c, representation_unchecked, StemFunction, FD_STEP, KERNEL_TOL};

/// Node counts and singularity-refinement parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureGrid {
    /// Gauss nodes in `t` per boundary component.
    pub n_t: usize,
    /// Gauss nodes per angle on the boundary chart.
    pub n_theta: usize,
    /// Radial nodes per ray segment of the volume chart.
    pub n_r: usize,
    /// Angular nodes of the volume chart.
    pub n_s: usize,
    /// Gauss nodes per angle on the volume chart.
    pub n_theta_volume: usize,
    /// Excision radius as a fraction of `diam(D)`.
    pub excision_fraction: f64,
    pub grading_ratio: f64,
    pub grading_levels: usize,
    pub nodes_per_panel: usize,
    /// Interior margin as a fraction of `diam(D)`.
    pub margin_fraction: f64,
}

impl QuadratureGrid {
    pub fn new(n_t: usize, n_theta: usize, n_r: usize, n_s: usize) -> Result<Self> {
        let g = QuadratureGrid {
            n_t,
            n_theta,
            n_r,
            n_s,
            n_theta_volume: n_theta,
            excision_fraction: 0.05,
            grading_ratio: 0.5,
            grading_levels: 4,
            nodes_per_panel: 8,
            margin_fraction: 0.05,
        };
        g.validate()?;
        Ok(g)
    }

    /// Grid for boundary-only work; volume counts mirror the boundary ones.
    pub fn boundary(n_t: usize, n_theta: usize) -> Result<Self> {
        QuadratureGrid::new(n_t, n_theta, n_t.max(2), n_t.max(2))
    }

    pub fn with_volume_theta(mut self, n: usize) -> Result<Self> {
        self.n_theta_volume = n;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let counts = [self.n_t, self.n_theta, self.n_r, self.n_s, self.n_theta_volume, self.nodes_per_panel];
        if counts.iter().any(|&n| n < 2) {
            return Err(Error::InvalidGrid(format!("all node counts must be >= 2, got {self}")));
        }
        if !(self.excision_fraction > 0.0) || !(self.grading_ratio > 0.0 && self.grading_ratio < 1.0) {
            return Err(Error::InvalidGrid("need excision > 0 and grading ratio in (0, 1)".into()));
        }
        if !(self.margin_fraction >= 0.0) {
            return Err(Error::InvalidGrid("margin must be non-negative".into()));
        }
        Ok(())
    }

    /// Every node count halved (at least 2).
    pub fn halved(&self) -> Self {
        let h = |n: usize| (n / 2).max(2);
        QuadratureGrid {
            n_t: h(self.n_t),
            n_theta: h(self.n_theta),
            n_r: h(self.n_r),
            n_s: h(self.n_s),
            n_theta_volume: h(self.n_theta_volume),
            ..*self
        }
    }

    pub fn doubled(&self) -> Self {
        QuadratureGrid {
            n_t: 2 * self.n_t,
            n_theta: 2 * self.n_theta,
            n_r: 2 * self.n_r,
            n_s: 2 * self.n_s,
            n_theta_volume: 2 * self.n_theta_volume,
            ..*self
        }
    }

    pub fn margin(&self, domain: &PlanarDomain) -> f64 {
        self.margin_fraction * domain.diameter()
    }
}

impl fmt::Display for QuadratureGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{}",
            self.n_t, self.n_theta, self.n_r, self.n_s, self.n_theta_volume
        )
    }
}

impl FromStr for QuadratureGrid {
    type Err = Error;

    /// `Nt,Ntheta,Nr,Ns` with an optional fifth count for the volume angles.
    fn from_str(s: &str) -> Result<Self> {
        let nums: Vec<usize> = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidGrid(format!("bad count '{}' in '{s}'", x.trim())))
            })
            .collect::<Result<_>>()?;
        match nums.len() {
            4 => QuadratureGrid::new(nums[0], nums[1], nums[2], nums[3]),
            5 => QuadratureGrid::new(nums[0], nums[1], nums[2], nums[3])?.with_volume_theta(nums[4]),
            n => Err(Error::InvalidGrid(format!("expected 4 or 5 counts, got {n}"))),
        }
    }
}

/// Output of [`cauchy_reconstruct`].
#[derive(Debug, Clone)]
pub struct CauchyResult {
    /// `int C_S n f dsigma` (without the `1/(2 pi)` factor).
    pub boundary: Element,
    /// `int C_S df dw` (without the `1/pi` factor).
    pub volume: Element,
    /// `boundary / (2 pi) - volume / pi`.
    pub combined: Element,
    /// Per-slice estimates of `f(x)` at the volume angle nodes.
    pub per_theta: Vec<Element>,
    pub boundary_nodes: usize,
    pub volume_nodes: usize,
    /// Distance between the results on this grid and on the halved grid.
    pub error_estimate: f64,
}

/// `x = alpha + beta I` prepared for repeated kernel evaluations.
#[derive(Debug, Clone)]
pub(crate) struct KernelFrame {
    pub x: Element,
    pub alpha: f64,
    pub beta: f64,
    pub unit: Option<Element>,
}

impl KernelFrame {
    pub fn new(x: &Element) -> Result<Self> {
        let dec = decompose(x, DEFAULT_TOL)?;
        Ok(KernelFrame { x: x.clone(), alpha: dec.alpha, beta: dec.beta, unit: dec.unit })
    }

    /// `C(x, w)` for `w` with `t(w) = 2a` and `n(w) = a^2 + b^2`.
    pub fn kernel(&self, w: &Element, a: f64, b: f64) -> Result<Element> {
        let (al, be) = (self.alpha, self.beta);
        let p = al * al - be * be - 2.0 * a * al + a * a + b * b;
        let q = 2.0 * be * (al - a);
        let nd = p * p + q * q;
        if nd <= KERNEL_TOL {
            return Err(Error::SingularKernel(nd));
        }
        let inv = match &self.unit {
            Some(u) => Element::from_plane(p / nd, -q / nd, u),
            None => Element::real(w.algebra(), p / nd),
        };
        Ok(&inv * &(&w.conj() - &self.x))
    }

    /// `f(alpha + beta I)` from values on the plane of `j`.
    pub fn combine(&self, v_plus: &Element, v_minus: &Element, j: &Element) -> Element {
        match &self.unit {
            Some(i) => representation_unchecked(v_plus, v_minus, i, j),
            None => v_plus.clone(),
        }
    }
}

/// `C_S(x, w) = 2 / eta_{m-2} C(x, w) / |Im w|^{m-2}`.
pub fn kernel_cs(gis: &Gis, x: &Element, w: &Element) -> Result<Element> {
    let c = cauchy_kernel_c(x, w)?;
    let m = gis.dim();
    if m == 2 {
        return Ok(c);
    }
    let im = w.imaginary_part().euclidean_norm();
    if im <= DEFAULT_TOL {
        return Err(Error::RealKernelPoint);
    }
    Ok(c.scale(gis.kernel_prefactor() / im.powi(m as i32 - 2)))
}

/// Angle nodes `(theta, weight)` over `I_{m-2}^+`; one empty node when `m = 2`.
pub(crate) fn angle_nodes(gis: &Gis, n: usize) -> Vec<(Vec<f64>, f64)> {
    tensor_rule(&gis.angle_box(), n)
}

fn check_interior(domain: &PlanarDomain, alpha: f64, beta: f64, margin: f64) -> Result<()> {
    if !domain.contains(alpha, beta) {
        return Err(Error::OutsideDomain { alpha, beta });
    }
    let distance = domain.distance_to_boundary(alpha, beta);
    if distance < margin {
        return Err(Error::TooCloseToBoundary { distance, margin });
    }
    Ok(())
}

fn reduce_in_order(dim: usize, parts: &[Vec<f64>]) -> Vec<f64> {
    let mut acc = VectorSum::new(dim);
    for p in parts {
        acc.add_scaled(p, 1.0);
    }
    acc.values()
}

/// `sum_k int_0^1 C(x, w)(b' - a' J) f(w) dt` over the slice `D_J`.
fn slice_boundary_line(
    frame: &KernelFrame,
    domain: &PlanarDomain,
    f: &StemFunction,
    unit: &Element,
    rule: &GaussRule,
) -> Result<Vec<f64>> {
    let dim = unit.algebra().dim();
    let mut acc = VectorSum::new(dim);
    for k in 0..domain.component_count() {
        for (t, wt) in rule.iter() {
            let c = domain.curve(k, t);
            let w = Element::from_plane(c.a, c.b, unit);
            let kern = frame.kernel(&w, c.a, c.b)?;
            let normal = Element::from_plane(c.db, -c.da, unit);
            let val = &(&kern * &normal) * &f.induce_in_plane(c.a, c.b, unit);
            acc.add_scaled(val.coeffs(), wt);
        }
    }
    Ok(acc.values())
}

/// Boundary integral over the `psi` chart without the interior check.
pub(crate) fn boundary_integral_unchecked(
    gis: &Gis,
    domain: &PlanarDomain,
    f: &StemFunction,
    frame: &KernelFrame,
    grid: &QuadratureGrid,
) -> Result<Element> {
    let alg = gis.algebra();
    let rule = GaussRule::new(grid.n_t, 0.0, 1.0);
    let nodes = angle_nodes(gis, grid.n_theta);
    let pre = gis.kernel_prefactor();
    let parts: Vec<Vec<f64>> = nodes
        .par_iter()
        .map(|(theta, wt)| {
            let unit = gis.unit_unchecked(theta);
            let scale = pre * wt * jacobian_in_unchecked(theta);
            let line = slice_boundary_line(frame, domain, f, &unit, &rule)?;
            Ok(line.iter().map(|v| v * scale).collect())
        })
        .collect::<Result<_>>()?;
    Element::new(alg, reduce_in_order(alg.dim(), &parts))
}

/// `int_{dOmega} C_S(x, w) n(w) f(w) dsigma_w` (no `1/(2 pi)` factor).
///
/// The chart weight `|b|^{m-2}` is cancelled against the kernel's
/// `|Im w|^{-(m-2)}` before summation.
pub fn boundary_integral(
    gis: &Gis,
    domain: &PlanarDomain,
    f: &StemFunction,
    x: &Element,
    grid: &QuadratureGrid,
) -> Result<Element> {
    grid.validate()?;
    let frame = KernelFrame::new(x)?;
    check_interior(domain, frame.alpha, frame.beta, grid.margin(domain))?;
    boundary_integral_unchecked(gis, domain, f, &frame, grid)
}

/// `(P, Q)` with `int_D (w - p)^{-1} (D1 + J D2) dr ds = P + J Q` for every
/// unit `J`, computed in polar coordinates centred at `p`.
pub(crate) fn plane_volume_pair(
    domain: &PlanarDomain,
    df: &StemFunction,
    p: (f64, f64),
    grid: &QuadratureGrid,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let dim = df.algebra().dim();
    let eps = (grid.excision_fraction * domain.diameter())
        .min(0.9 * domain.distance_to_boundary(p.0, p.1));
    let inner = graded_rule(eps, grid.grading_levels, grid.grading_ratio, grid.nodes_per_panel);
    let phis = GaussRule::new(grid.n_s, 0.0, 2.0 * PI);
    let inside = domain.contains(p.0, p.1);
    let rows: Vec<(Vec<f64>, Vec<f64>)> = phis
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(phi, wphi)| {
            let (c, s) = (phi.cos(), phi.sin());
            let mut pa = VectorSum::new(dim);
            let mut qa = VectorSum::new(dim);
            let mut add = |rho: f64, w: f64| -> Result<()> {
                let (d1, d2) = df.dzbar_components(p.0 + rho * c, p.1 + rho * s, FD_STEP)?;
                // (cos - sin J)(D1 + J D2) = (cos D1 + sin D2) + J (cos D2 - sin D1)
                pa.add_scaled(d1.coeffs(), w * c);
                pa.add_scaled(d2.coeffs(), w * s);
                qa.add_scaled(d2.coeffs(), w * c);
                qa.add_scaled(d1.coeffs(), -w * s);
                Ok(())
            };
            if inside {
                for (rho, w) in inner.iter() {
                    add(rho, w * wphi)?;
                }
            }
            for (r0, r1) in domain.ray_segments(p, phi) {
                let lo = if inside { r0.max(eps) } else { r0 };
                if r1 <= lo {
                    continue;
                }
                for (rho, w) in GaussRule::new(grid.n_r, lo, r1).iter() {
                    add(rho, w * wphi)?;
                }
            }
            Ok((pa.values(), qa.values()))
        })
        .collect::<Result<_>>()?;
    let mut pa = VectorSum::new(dim);
    let mut qa = VectorSum::new(dim);
    for (p_row, q_row) in &rows {
        pa.add_scaled(p_row, 1.0);
        qa.add_scaled(q_row, 1.0);
    }
    Ok((pa.values(), qa.values()))
}

fn pair_value(pair: &(Vec<f64>, Vec<f64>), unit: &Element) -> Element {
    let alg = unit.algebra();
    let p = Element::new(alg, pair.0.clone()).expect("dimension");
    let q = Element::new(alg, pair.1.clone()).expect("dimension");
    &p + &(unit * &q)
}

/// Plane-independent data for the volume integral at `x`.
pub(crate) struct VolumeData {
    plus: (Vec<f64>, Vec<f64>),
    minus: Option<(Vec<f64>, Vec<f64>)>,
}

impl VolumeData {
    pub fn new(
        domain: &PlanarDomain,
        df: &StemFunction,
        frame: &KernelFrame,
        grid: &QuadratureGrid,
    ) -> Result<Self> {
        let plus = plane_volume_pair(domain, df, (frame.alpha, frame.beta), grid)?;
        let minus = if frame.unit.is_some() {
            Some(plane_volume_pair(domain, df, (frame.alpha, -frame.beta), grid)?)
        } else {
            None
        };
        Ok(VolumeData { plus, minus })
    }

    /// `int_D C(x, r + s J) df(r + s J) dr ds`.
    pub fn on_slice(&self, frame: &KernelFrame, unit: &Element) -> Element {
        let vp = pair_value(&self.plus, unit);
        match &self.minus {
            Some(m) => frame.combine(&vp, &pair_value(m, unit), unit),
            None => vp,
        }
    }
}

/// `int_{Omega} C_S(x, w) df(w) dw` (no `1/pi` factor), with `df` the stem
/// whose z-bar derivative supplies the integrand.
pub fn volume_integral(
    gis: &Gis,
    domain: &PlanarDomain,
    f: &StemFunction,
    x: &Element,
    grid: &QuadratureGrid,
) -> Result<Element> {
    grid.validate()?;
    let frame = KernelFrame::new(x)?;
    check_interior(domain, frame.alpha, frame.beta, grid.margin(domain))?;
    let data = VolumeData::new(domain, f, &frame, grid)?;
    Ok(average_over_angles(gis, grid.n_theta_volume, |u| data.on_slice(&frame, u)).0)
}

/// `(2 / eta) sum_theta w I(theta) g(J_theta)` and the per-node values.
fn average_over_angles(
    gis: &Gis,
    n: usize,
    g: impl Fn(&Element) -> Element,
) -> (Element, Vec<Element>) {
    let alg = gis.algebra();
    let pre = gis.kernel_prefactor();
    let mut acc = VectorSum::new(alg.dim());
    let mut per = Vec::new();
    for (theta, wt) in angle_nodes(gis, n) {
        let v = g(&gis.unit_unchecked(&theta));
        acc.add_scaled(v.coeffs(), pre * wt * jacobian_in_unchecked(&theta));
        per.push(v);
    }
    (Element::new(alg, acc.values()).expect("dimension"), per)
}

fn reconstruct_once(
    gis: &Gis,
    domain: &PlanarDomain,
    f: &StemFunction,
    frame: &KernelFrame,
    grid: &QuadratureGrid,
    with_volume: bool,
) -> Result<CauchyResult> {
    let alg = gis.algebra();
    let boundary = boundary_integral_unchecked(gis, domain, f, frame, grid)?;
    let boundary_nodes =
        domain.component_count() * grid.n_t * grid.n_theta.pow(gis.angle_count() as u32);
    let rule = GaussRule::new(grid.n_t, 0.0, 1.0);
    let (volume, per_theta, volume_nodes) = if with_volume {
        let data = VolumeData::new(domain, f, frame, grid)?;
        let (volume, _) = average_over_angles(gis, grid.n_theta_volume, |u| data.on_slice(frame, u));
        let mut per = Vec::new();
        for (theta, _) in angle_nodes(gis, grid.n_theta_volume) {
            let u = gis.unit_unchecked(&theta);
            let line = Element::new(alg, slice_boundary_line(frame, domain, f, &u, &rule)?)?;
            let v = data.on_slice(frame, &u);
            per.push((&line - &v.scale(2.0)).scale(0.5 / PI));
        }
        let per_plane = grid.n_s * (grid.n_r + (grid.grading_levels + 1) * grid.nodes_per_panel);
        let planes = if frame.unit.is_some() { 2 } else { 1 };
        (volume, per, planes * per_plane)
    } else {
        (Element::zero(alg), Vec::new(), 0)
    };
    let combined = &boundary.scale(0.5 / PI) - &volume.scale(1.0 / PI);
    Ok(CauchyResult {
        boundary,
        volume,
        combined,
        per_theta,
        boundary_nodes,
        volume_nodes,
        error_estimate: 0.0,
    })
}

/// `f(x) = 1/(2 pi) int C_S n f dsigma - 1/pi int C_S df dw`; the volume term
/// is skipped when `f` is declared slice regular.
pub fn cauchy_reconstruct(
    gis: &Gis,
    domain: &PlanarDomain,
    f: &StemFunction,
    x: &Element,
    grid: &QuadratureGrid,
) -> Result<CauchyResult> {
    grid.validate()?;
    let frame = KernelFrame::new(x)?;
    check_interior(domain, frame.alpha, frame.beta, grid.margin(domain))?;
    let with_volume = !f.is_slice_regular();
    let mut fine = reconstruct_once(gis, domain, f, &frame, grid, with_volume)?;
    let coarse = reconstruct_once(gis, domain, f, &frame, &grid.halved(), with_volume)?;
    fine.error_estimate = fine.combined.distance(&coarse.combined);
    Ok(fine)
}

/// Boundary, volume and combined parts of the single-slice identity
/// `int_{dD_J} C J^{-1} dy f - int_{D_J} C J^{-1} dy^c ^ dy df = 2 pi f(x)`.
#[derive(Debug, Clone)]
pub struct SliceReduction {
    pub boundary: Element,
    pub volume: Element,
    pub combined: Element,
}

pub fn slice_reduction(
    gis: &Gis,
    domain: &PlanarDomain,
    f: &StemFunction,
    x: &Element,
    theta: &[f64],
    grid: &QuadratureGrid,
) -> Result<SliceReduction> {
    grid.validate()?;
    let unit = crate::geometry::gis::unit_checked(gis, theta)?;
    let frame = KernelFrame::new(x)?;
    check_interior(domain, frame.alpha, frame.beta, grid.margin(domain))?;
    let rule = GaussRule::new(grid.n_t, 0.0, 1.0);
    let boundary = Element::new(gis.algebra(), slice_boundary_line(&frame, domain, f, &unit, &rule)?)?;
    let volume = if f.is_slice_regular() {
        Element::zero(gis.algebra())
    } else {
        VolumeData::new(domain, f, &frame, grid)?.on_slice(&frame, &unit).scale(2.0)
    };
    let combined = &boundary - &volume;
    Ok(SliceReduction { boundary, volume, combined })
}

/// Estimates of `int_{Omega} |C_S(x, w)| dw` over the exhaustion of
/// `Omega` by the sets `{dist(w, S_x) >= eps_k}`, `eps_k = eps_0 4^{-k}`.
///
/// Each slice integral is split by the smooth partition of unity
/// `rho''^4 / (rho'^4 + rho''^4)` and integrated in polar coordinates around
/// the two singular points `(alpha, +-beta)`. Every level adds the annuli
/// `eps_k <= rho < eps_{k-1}` to the previous estimate, so the sequence is
/// non-decreasing and its increments measure the mass left near `S_x`.
pub fn summability_diagnostic(
    gis: &Gis,
    domain: &PlanarDomain,
    x: &Element,
    grid: &QuadratureGrid,
    levels: usize,
) -> Result<Vec<f64>> {
    grid.validate()?;
    let frame = KernelFrame::new(x)?;
    if domain.distance_to_boundary(frame.alpha, frame.beta) <= DEFAULT_TOL {
        return Err(Error::TooCloseToBoundary { distance: 0.0, margin: DEFAULT_TOL });
    }
    let levels = levels.max(1);
    let nodes = angle_nodes(gis, grid.n_theta_volume);
    let parts: Vec<Vec<f64>> = nodes
        .par_iter()
        .map(|(theta, wt)| {
            let unit = gis.unit_unchecked(theta);
            let scale = gis.kernel_prefactor() * wt * jacobian_in_unchecked(theta);
            let v = slice_kernel_norm(&frame, domain, &unit, grid, levels)?;
            Ok(v.iter().map(|e| e * scale).collect())
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(levels);
    let mut acc = NeumaierSum::default();
    for k in 0..levels {
        for p in &parts {
            acc.add(p[k]);
        }
        out.push(acc.value());
    }
    Ok(out)
}

/// Per-level contributions of one slice to [`summability_diagnostic`].
fn slice_kernel_norm(
    frame: &KernelFrame,
    domain: &PlanarDomain,
    unit: &Element,
    grid: &QuadratureGrid,
    levels: usize,
) -> Result<Vec<f64>> {
    let centres: Vec<(f64, f64)> = if frame.beta > 0.0 {
        vec![(frame.alpha, frame.beta), (frame.alpha, -frame.beta)]
    } else {
        vec![(frame.alpha, 0.0)]
    };
    let phis = GaussRule::new(grid.n_s, 0.0, 2.0 * PI);
    let mut acc = vec![NeumaierSum::default(); levels];
    for (ci, &p) in centres.iter().enumerate() {
        let other = if centres.len() == 2 { Some(centres[1 - ci]) } else { None };
        let inside = domain.contains(p.0, p.1);
        let eps0 = (grid.excision_fraction * domain.diameter())
            .min(0.5 * domain.distance_to_boundary(p.0, p.1));
        let eps = |k: usize| eps0 * 0.25f64.powi(k as i32);
        for (phi, wphi) in phis.iter() {
            let (c, s) = (phi.cos(), phi.sin());
            let eval = |rho: f64| -> Result<f64> {
                let (a, b) = (p.0 + rho * c, p.1 + rho * s);
                let chi = match other {
                    Some(q) => {
                        let d1 = rho.powi(4);
                        let d2 = ((a - q.0).powi(2) + (b - q.1).powi(2)).powi(2);
                        d2 / (d1 + d2)
                    }
                    None => 1.0,
                };
                if chi == 0.0 {
                    return Ok(0.0);
                }
                let k = frame.kernel(&Element::from_plane(a, b, unit), a, b)?;
                Ok(rho * chi * k.euclidean_norm())
            };
            for (r0, r1) in domain.ray_segments(p, phi) {
                let lo = if inside { r0.max(eps(0)) } else { r0 };
                if r1 > lo {
                    for (rho, w) in GaussRule::new(grid.n_r, lo, r1).iter() {
                        acc[0].add(wphi * w * eval(rho)?);
                    }
                }
            }
            if inside {
                for (k, a) in acc.iter_mut().enumerate().skip(1) {
                    for (rho, w) in GaussRule::new(grid.n_r, eps(k), eps(k - 1)).iter() {
                        a.add(wphi * w * eval(rho)?);
                    }
                }
            }
        }
    }
    Ok(acc.iter().map(NeumaierSum::value).collect())
}

/// Estimates of `int_{dOmega} |C_S(x, w)| dsigma_w` on each grid.
pub fn boundary_summability_diagnostic(
    gis: &Gis,
    domain: &PlanarDomain,
    x: &Element,
    grids: &[QuadratureGrid],
) -> Result<Vec<f64>> {
    let frame = KernelFrame::new(x)?;
    check_interior(domain, frame.alpha, frame.beta, 0.0)?;
    grids
        .iter()
        .map(|grid| {
            let rule = GaussRule::new(grid.n_t, 0.0, 1.0);
            let mut acc = NeumaierSum::default();
            for (theta, wt) in angle_nodes(gis, grid.n_theta) {
                let unit = gis.unit_unchecked(&theta);
                let scale = gis.kernel_prefactor() * wt * jacobian_in_unchecked(&theta);
                for k in 0..domain.component_count() {
                    for (t, w) in rule.iter() {
                        let cp = domain.curve(k, t);
                        let wel = Element::from_plane(cp.a, cp.b, &unit);
                        let kern = frame.kernel(&wel, cp.a, cp.b)?;
                        acc.add(scale * w * cp.speed() * kern.euclidean_norm());
                    }
                }
            }
            Ok(acc.value())
        })
        .collect()
}
