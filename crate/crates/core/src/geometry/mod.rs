//! Domains, genuine imaginary spheres and the charts of circularized sets.

pub mod domain;
pub mod gis;
pub mod polar;

pub use domain::{BoundaryLocation, CurvePoint, Membership, PlanarDomain};
pub use gis::{gis_unit, scalar_product, Gis};
pub use polar::{
    jacobian_in, jacobian_in_det, jacobian_in_gram, polar_phi, sphere_volume, PolarPoint,
};

use crate::algebra::{in_quadratic_cone, Element, DEFAULT_TOL};
use crate::error::{Error, Result};

/// A node of the boundary chart `psi`.
#[derive(Debug, Clone)]
pub struct BoundaryNode {
    pub w: Element,
    /// `|b|^{m-2} I_{m-2}(theta) sqrt(a'^2 + b'^2)`.
    pub weight: f64,
    /// `(b' - a' J_theta) / sqrt(a'^2 + b'^2)`.
    pub normal: Element,
    pub unit: Element,
    pub curve: CurvePoint,
}

fn check_angles(gis: &Gis, theta: &[f64]) -> Result<()> {
    let b = gis.angle_box();
    if theta.len() != b.len()
        || theta.iter().zip(&b).any(|(t, (lo, hi))| !(t >= lo && t <= hi))
    {
        return Err(Error::AngleOutOfRange(format!("{theta:?} not in {b:?}")));
    }
    Ok(())
}

pub fn boundary_point_psi(
    domain: &PlanarDomain,
    gis: &Gis,
    component: usize,
    t: f64,
    theta: &[f64],
) -> Result<BoundaryNode> {
    check_angles(gis, theta)?;
    if component >= domain.component_count() {
        return Err(Error::InvalidDomain(format!("no boundary component {component}")));
    }
    let curve = domain.curve(component, t);
    let speed = curve.speed();
    if speed <= 1e-14 {
        return Err(Error::DegenerateTangent(t));
    }
    let unit = gis.unit_unchecked(theta);
    let w = Element::from_plane(curve.a, curve.b, &unit);
    let normal = Element::from_plane(curve.db / speed, -curve.da / speed, &unit);
    let weight = curve.b.abs().powi(gis.angle_count() as i32)
        * polar::jacobian_in_unchecked(theta)
        * speed;
    Ok(BoundaryNode { w, weight, normal, unit, curve })
}

/// `w = r + s J_theta` with weight `|s|^{m-2} I_{m-2}(theta)`.
pub fn volume_point_gamma(
    domain: &PlanarDomain,
    gis: &Gis,
    r: f64,
    s: f64,
    theta: &[f64],
) -> Result<(Element, f64)> {
    check_angles(gis, theta)?;
    if !domain.contains(r, s) {
        return Err(Error::OutsideDomain { alpha: r, beta: s });
    }
    let unit = gis.unit_unchecked(theta);
    let weight = s.abs().powi(gis.angle_count() as i32) * polar::jacobian_in_unchecked(theta);
    Ok((Element::from_plane(r, s, &unit), weight))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Circularized {
    Interior,
    Boundary,
    Exterior,
    OutsideM,
}

/// Classifies `x` against `Omega_D(S)`.
pub fn circularize_membership(
    domain: &PlanarDomain,
    gis: &Gis,
    x: &Element,
    tol: f64,
) -> Circularized {
    if !x.same_algebra(&gis.basis()[0]) || !in_quadratic_cone(x, DEFAULT_TOL) {
        return Circularized::OutsideM;
    }
    let (coords, residual) = gis.project(x);
    if residual > tol {
        return Circularized::OutsideM;
    }
    let beta = coords[1..].iter().map(|c| c * c).sum::<f64>().sqrt();
    match domain.classify(coords[0], beta, tol) {
        Membership::Interior => Circularized::Interior,
        Membership::Boundary => Circularized::Boundary,
        Membership::Exterior => Circularized::Exterior,
    }
}
