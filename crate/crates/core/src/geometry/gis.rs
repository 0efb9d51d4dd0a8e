//! Genuine imaginary spheres `S = M ∩ S_A` given by an orthonormal basis of `M`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::polar::{half_box, phi, sphere_volume};
use crate::algebra::{in_quadratic_cone, is_imaginary_unit, AlgebraSpec, Element};
use crate::error::{Error, Result};

const GRAM_TOL: f64 = 1e-10;
const SAMPLES: usize = 64;

#[derive(Debug, Clone)]
pub struct Gis {
    algebra: Arc<AlgebraSpec>,
    /// `v_0 = 1, v_1, ..., v_{m-1}`.
    basis: Vec<Element>,
}

/// `(x, y) = t(x y^c) / 2`, read off the real part.
pub fn scalar_product(x: &Element, y: &Element) -> f64 {
    0.5 * (x * &y.conj()).trace().real_part()
}

impl Gis {
    /// Validates `1, imaginary...` as an orthonormal basis of a subspace of
    /// the quadratic cone whose unit trace-free vectors are imaginary units.
    pub fn new(algebra: &Arc<AlgebraSpec>, imaginary: Vec<Element>) -> Result<Self> {
        if imaginary.is_empty() {
            return Err(Error::InvalidGis("need at least one imaginary basis vector".into()));
        }
        let mut basis = vec![Element::one(algebra)];
        for v in imaginary {
            if !v.same_algebra(&basis[0]) {
                return Err(Error::AlgebraMismatch {
                    left: algebra.name().to_string(),
                    right: v.algebra().name().to_string(),
                });
            }
            basis.push(v);
        }
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                let g = scalar_product(x, y);
                let e: f64 = x.coeffs().iter().zip(y.coeffs()).map(|(a, b)| a * b).sum();
                if (g - want).abs() > GRAM_TOL || (e - want).abs() > GRAM_TOL {
                    return Err(Error::InvalidGis(format!(
                        "basis is not orthonormal at ({i}, {j}): (x, y) = {g}"
                    )));
                }
            }
        }
        let gis = Gis { algebra: Arc::clone(algebra), basis };
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..SAMPLES {
            let dir: Vec<f64> = (1..gis.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
            let len = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
            if len < 1e-3 {
                continue;
            }
            let unit = gis.combine(0.0, &dir.iter().map(|d| d / len).collect::<Vec<_>>());
            if !is_imaginary_unit(&unit, 1e-9) {
                return Err(Error::InvalidGis(format!("{unit} is not an imaginary unit")));
            }
            let x = gis.combine(rng.random_range(-2.0..2.0), &dir);
            if !in_quadratic_cone(&x, 1e-9) {
                return Err(Error::InvalidGis(format!("{x} is outside the quadratic cone")));
            }
        }
        Ok(gis)
    }

    /// `S_H`: `M = H` with basis `1, i, j, k`.
    pub fn full_quaternion(algebra: &Arc<AlgebraSpec>) -> Result<Self> {
        if algebra.name() != "quaternion" || algebra.dim() != 4 {
            return Err(Error::InvalidGis("the full gis needs the quaternion algebra".into()));
        }
        Gis::new(algebra, (1..4).map(|i| Element::basis(algebra, i)).collect())
    }

    /// Paravectors `R^{n+1}` of a Clifford algebra, `S = S^{n-1}`.
    pub fn paravector(algebra: &Arc<AlgebraSpec>) -> Result<Self> {
        if !algebra.name().starts_with("clifford") {
            return Err(Error::InvalidGis("the paravector gis needs a Clifford algebra".into()));
        }
        let gens: Vec<Element> = algebra
            .labels()
            .iter()
            .enumerate()
            .filter(|(_, l)| l.len() == 2 && l.starts_with('e'))
            .map(|(i, _)| Element::basis(algebra, i))
            .collect();
        Gis::new(algebra, gens)
    }

    /// `S = {J, -J}` for an imaginary unit `J` (normalized first).
    pub fn plane(unit: &Element) -> Result<Self> {
        let mut u = unit.clone();
        let len = u.euclidean_norm();
        if len == 0.0 {
            return Err(Error::NotImaginaryUnit);
        }
        u = u.scale(1.0 / len);
        if !is_imaginary_unit(&u, 1e-9) {
            return Err(Error::NotImaginaryUnit);
        }
        Gis::new(unit.algebra(), vec![u])
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.algebra
    }

    /// Dimension `m` of `M`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    /// Number of polar angles, `m - 2`.
    pub fn angle_count(&self) -> usize {
        self.dim() - 2
    }

    /// `2 / eta_{m-2}`; equals 1 when `m = 2`.
    pub fn kernel_prefactor(&self) -> f64 {
        2.0 / sphere_volume(self.angle_count())
    }

    /// Integration box `I_{m-2}^+` for the angles.
    pub fn angle_box(&self) -> Vec<(f64, f64)> {
        half_box(self.angle_count())
    }

    /// `alpha + sum_l dir_l v_{l+1}`.
    pub fn combine(&self, alpha: f64, dir: &[f64]) -> Element {
        let mut x = Element::real(&self.algebra, alpha);
        for (d, v) in dir.iter().zip(&self.basis[1..]) {
            x += &v.scale(*d);
        }
        x
    }

    /// `J_theta`; the single unit `v_1` when `m = 2`.
    pub(crate) fn unit_unchecked(&self, theta: &[f64]) -> Element {
        if self.dim() == 2 {
            return self.basis[1].clone();
        }
        self.combine(0.0, &phi(theta))
    }

    /// Coordinates of `x` in the basis of `M` and the distance from `x` to `M`.
    pub fn project(&self, x: &Element) -> (Vec<f64>, f64) {
        let coords: Vec<f64> = self
            .basis
            .iter()
            .map(|v| v.coeffs().iter().zip(x.coeffs()).map(|(a, b)| a * b).sum())
            .collect();
        let back = self.combine(coords[0], &coords[1..]);
        (coords, back.distance(x))
    }
}

/// Like [`gis_unit`], but returns `v_1` for `m = 2` and an empty angle vector.
pub fn unit_checked(gis: &Gis, theta: &[f64]) -> Result<Element> {
    if gis.dim() == 2 && theta.is_empty() {
        return Ok(gis.unit_unchecked(theta));
    }
    gis_unit(gis, theta)
}

/// `J_theta = sum_l phi_{m-2}(theta)_l v_l`.
pub fn gis_unit(gis: &Gis, theta: &[f64]) -> Result<Element> {
    if gis.dim() == 2 {
        return Err(Error::NoAngles(2));
    }
    let b = gis.angle_box();
    if theta.len() != b.len()
        || theta.iter().zip(&b).any(|(t, (lo, hi))| !(t >= lo && t <= hi))
    {
        return Err(Error::AngleOutOfRange(format!("{theta:?} not in {b:?}")));
    }
    Ok(gis.unit_unchecked(theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn builtin_sphere_dimensions() {
        let h = AlgebraSpec::quaternions();
        assert_eq!(Gis::full_quaternion(&h).unwrap().dim(), 4);
        let c3 = AlgebraSpec::clifford(3).unwrap();
        let p = Gis::paravector(&c3).unwrap();
        assert_eq!(p.dim(), 4);
        assert!(Gis::full_quaternion(&c3).is_err());
        assert!(Gis::paravector(&h).is_err());
        let j = Element::basis(&h, 2).scale(3.0);
        assert_eq!(Gis::plane(&j).unwrap().dim(), 2);
        assert!(Gis::plane(&Element::one(&h)).is_err());
    }

    #[test]
    fn rejects_non_orthonormal_basis() {
        let h = AlgebraSpec::quaternions();
        let i = Element::basis(&h, 1);
        let v = &i + &Element::basis(&h, 2);
        assert!(Gis::new(&h, vec![i, v]).is_err());
    }

    #[test]
    fn rejects_spans_leaving_the_cone() {
        // e1 and e23 are orthonormal imaginary units of R_3, but e1 + e23 is not.
        let c3 = AlgebraSpec::clifford(3).unwrap();
        let e1 = Element::basis(&c3, c3.label_index("e1").unwrap());
        let e23 = Element::basis(&c3, c3.label_index("e23").unwrap());
        assert!(Gis::new(&c3, vec![e1, e23]).is_err());
    }

    #[test]
    fn units_from_angles() {
        let h = AlgebraSpec::quaternions();
        let g = Gis::full_quaternion(&h).unwrap();
        let j = gis_unit(&g, &[0.0, 0.0]).unwrap();
        assert_eq!(j.coeffs(), &[0.0, 1.0, 0.0, 0.0]);
        let j = gis_unit(&g, &[1.1, 0.7]).unwrap();
        let sq = &j * &j;
        assert!((sq.coeffs()[0] + 1.0).abs() < 1e-14 && sq.non_real_residual() < 1e-14);
        assert!(gis_unit(&g, &[1.0, -0.1]).is_err());
        let c3 = AlgebraSpec::clifford(3).unwrap();
        let p = Gis::paravector(&c3).unwrap();
        let j = gis_unit(&p, &[2.0, 0.3]).unwrap();
        for (c, l) in j.coeffs().iter().zip(c3.labels()) {
            if l.len() != 2 {
                assert_eq!(*c, 0.0);
            }
        }
        let plane = Gis::plane(&Element::basis(&h, 1)).unwrap();
        assert!(matches!(gis_unit(&plane, &[]), Err(Error::NoAngles(2))));
        assert_eq!(plane.kernel_prefactor(), 1.0);
        assert!((g.kernel_prefactor() - 1.0 / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn projection() {
        let c3 = AlgebraSpec::clifford(3).unwrap();
        let p = Gis::paravector(&c3).unwrap();
        let x = p.combine(0.5, &[0.1, -0.2, 0.3]);
        let (coords, res) = p.project(&x);
        assert_eq!(coords, vec![0.5, 0.1, -0.2, 0.3]);
        assert_eq!(res, 0.0);
        let e12 = Element::basis(&c3, c3.label_index("e12").unwrap());
        assert!((p.project(&e12).1 - 1.0).abs() < 1e-15);
    }
}
