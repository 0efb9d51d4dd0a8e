//! Conjugation-symmetric planar domains centred on the real axis.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const TAU: f64 = 2.0 * PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlanarDomain {
    Disk { center: f64, radius: f64 },
    Annulus { center: f64, inner: f64, outer: f64 },
    Ellipse { center: f64, semi_real: f64, semi_imag: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Interior,
    Boundary,
    Exterior,
}

/// Point and tangent of a boundary curve at parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub a: f64,
    pub b: f64,
    pub da: f64,
    pub db: f64,
}

impl CurvePoint {
    pub fn speed(&self) -> f64 {
        self.da.hypot(self.db)
    }

    /// Outer unit normal `(b', -a') / |(a', b')|`.
    pub fn normal(&self) -> (f64, f64) {
        let s = self.speed();
        (self.db / s, -self.da / s)
    }
}

/// Closest boundary point to a planar point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryLocation {
    pub component: usize,
    pub t: f64,
    pub point: CurvePoint,
    pub distance: f64,
}

impl PlanarDomain {
    pub fn disk(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !center.is_finite() || !radius.is_finite() {
            return Err(Error::InvalidDomain(format!("disk radius must be positive, got {radius}")));
        }
        Ok(PlanarDomain::Disk { center, radius })
    }

    pub fn annulus(center: f64, inner: f64, outer: f64) -> Result<Self> {
        if !(inner > 0.0 && outer > inner) || !center.is_finite() || !outer.is_finite() {
            return Err(Error::InvalidDomain(format!(
                "annulus radii must satisfy 0 < r1 < r2, got {inner}, {outer}"
            )));
        }
        Ok(PlanarDomain::Annulus { center, inner, outer })
    }

    pub fn ellipse(center: f64, semi_real: f64, semi_imag: f64) -> Result<Self> {
        if !(semi_real > 0.0 && semi_imag > 0.0) || !center.is_finite() {
            return Err(Error::InvalidDomain("ellipse semi-axes must be positive".into()));
        }
        Ok(PlanarDomain::Ellipse { center, semi_real, semi_imag })
    }

    pub fn unit_disk() -> Self {
        PlanarDomain::Disk { center: 0.0, radius: 1.0 }
    }

    pub fn center(&self) -> f64 {
        match *self {
            PlanarDomain::Disk { center, .. }
            | PlanarDomain::Annulus { center, .. }
            | PlanarDomain::Ellipse { center, .. } => center,
        }
    }

    pub fn component_count(&self) -> usize {
        match self {
            PlanarDomain::Annulus { .. } => 2,
            _ => 1,
        }
    }

    /// Boundary component `k` at `t in [0, 1]`, positively oriented with
    /// respect to the domain (the inner annulus circle runs clockwise).
    pub fn curve(&self, component: usize, t: f64) -> CurvePoint {
        let (c, s) = ((TAU * t).cos(), (TAU * t).sin());
        match *self {
            PlanarDomain::Disk { center, radius } => CurvePoint {
                a: center + radius * c,
                b: radius * s,
                da: -TAU * radius * s,
                db: TAU * radius * c,
            },
            PlanarDomain::Annulus { center, inner, outer } => {
                if component == 0 {
                    CurvePoint {
                        a: center + outer * c,
                        b: outer * s,
                        da: -TAU * outer * s,
                        db: TAU * outer * c,
                    }
                } else {
                    CurvePoint {
                        a: center + inner * c,
                        b: -inner * s,
                        da: -TAU * inner * s,
                        db: -TAU * inner * c,
                    }
                }
            }
            PlanarDomain::Ellipse { center, semi_real, semi_imag } => CurvePoint {
                a: center + semi_real * c,
                b: semi_imag * s,
                da: -TAU * semi_real * s,
                db: TAU * semi_imag * c,
            },
        }
    }

    pub fn diameter(&self) -> f64 {
        match *self {
            PlanarDomain::Disk { radius, .. } => 2.0 * radius,
            PlanarDomain::Annulus { outer, .. } => 2.0 * outer,
            PlanarDomain::Ellipse { semi_real, semi_imag, .. } => 2.0 * semi_real.max(semi_imag),
        }
    }

    /// `(alpha_min, alpha_max, beta_min, beta_max)`.
    pub fn bounding_box(&self) -> (f64, f64, f64, f64) {
        match *self {
            PlanarDomain::Disk { center, radius } => {
                (center - radius, center + radius, -radius, radius)
            }
            PlanarDomain::Annulus { center, outer, .. } => {
                (center - outer, center + outer, -outer, outer)
            }
            PlanarDomain::Ellipse { center, semi_real, semi_imag } => {
                (center - semi_real, center + semi_real, -semi_imag, semi_imag)
            }
        }
    }

    pub fn area(&self) -> f64 {
        match *self {
            PlanarDomain::Disk { radius, .. } => PI * radius * radius,
            PlanarDomain::Annulus { inner, outer, .. } => PI * (outer * outer - inner * inner),
            PlanarDomain::Ellipse { semi_real, semi_imag, .. } => PI * semi_real * semi_imag,
        }
    }

    /// Strict interior test.
    pub fn contains(&self, alpha: f64, beta: f64) -> bool {
        match *self {
            PlanarDomain::Disk { center, radius } => (alpha - center).hypot(beta) < radius,
            PlanarDomain::Annulus { center, inner, outer } => {
                let r = (alpha - center).hypot(beta);
                r > inner && r < outer
            }
            PlanarDomain::Ellipse { center, semi_real, semi_imag } => {
                let u = (alpha - center) / semi_real;
                let v = beta / semi_imag;
                u * u + v * v < 1.0
            }
        }
    }

    pub fn distance_to_boundary(&self, alpha: f64, beta: f64) -> f64 {
        match *self {
            PlanarDomain::Disk { center, radius } => ((alpha - center).hypot(beta) - radius).abs(),
            PlanarDomain::Annulus { center, inner, outer } => {
                let r = (alpha - center).hypot(beta);
                (r - inner).abs().min((r - outer).abs())
            }
            PlanarDomain::Ellipse { .. } => self.nearest_boundary_point(alpha, beta).distance,
        }
    }

    pub fn classify(&self, alpha: f64, beta: f64, tol: f64) -> Membership {
        if self.distance_to_boundary(alpha, beta) <= tol {
            Membership::Boundary
        } else if self.contains(alpha, beta) {
            Membership::Interior
        } else {
            Membership::Exterior
        }
    }

    /// Nearest boundary point by a dense scan refined with golden-section search.
    pub fn nearest_boundary_point(&self, alpha: f64, beta: f64) -> BoundaryLocation {
        const SAMPLES: usize = 720;
        let dist2 = |k: usize, t: f64| {
            let p = self.curve(k, t);
            (p.a - alpha).powi(2) + (p.b - beta).powi(2)
        };
        let mut best = (0usize, 0.0f64, f64::INFINITY);
        for k in 0..self.component_count() {
            for i in 0..SAMPLES {
                let t = i as f64 / SAMPLES as f64;
                let d = dist2(k, t);
                if d < best.2 {
                    best = (k, t, d);
                }
            }
        }
        let (k, t0, _) = best;
        let h = 1.0 / SAMPLES as f64;
        let (mut lo, mut hi) = (t0 - h, t0 + h);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let mut x1 = hi - g * (hi - lo);
        let mut x2 = lo + g * (hi - lo);
        let (mut f1, mut f2) = (dist2(k, x1), dist2(k, x2));
        for _ in 0..80 {
            if f1 < f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = dist2(k, x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = dist2(k, x2);
            }
        }
        let t = (0.5 * (lo + hi)).rem_euclid(1.0);
        let point = self.curve(k, t);
        BoundaryLocation {
            component: k,
            t,
            point,
            distance: (point.a - alpha).hypot(point.b - beta),
        }
    }

    /// Sub-intervals `[rho_0, rho_1]` of the ray `origin + rho (cos phi, sin phi)`,
    /// `rho >= 0`, that lie inside the domain.
    pub fn ray_segments(&self, origin: (f64, f64), phi: f64) -> Vec<(f64, f64)> {
        let (u1, u2) = (phi.cos(), phi.sin());
        let (r0, s0) = origin;
        let mut roots = vec![0.0];
        let mut push_roots = |qa: f64, qb: f64, qc: f64| {
            let disc = qb * qb - 4.0 * qa * qc;
            if disc < 0.0 {
                return;
            }
            let sq = disc.sqrt();
            // Numerically stable quadratic roots.
            let q = -0.5 * (qb + qb.signum() * sq);
            let mut cands = Vec::new();
            if q != 0.0 {
                cands.push(q / qa);
                cands.push(qc / q);
            } else {
                cands.push(0.0);
            }
            for r in cands {
                if r > 0.0 && r.is_finite() {
                    roots.push(r);
                }
            }
        };
        let circle = |center: f64, radius: f64| {
            let (dx, dy) = (r0 - center, s0);
            (1.0, 2.0 * (dx * u1 + dy * u2), dx * dx + dy * dy - radius * radius)
        };
        match *self {
            PlanarDomain::Disk { center, radius } => {
                let (a, b, c) = circle(center, radius);
                push_roots(a, b, c);
            }
            PlanarDomain::Annulus { center, inner, outer } => {
                let (a, b, c) = circle(center, outer);
                push_roots(a, b, c);
                let (a, b, c) = circle(center, inner);
                push_roots(a, b, c);
            }
            PlanarDomain::Ellipse { center, semi_real, semi_imag } => {
                let (p, q) = (semi_real * semi_real, semi_imag * semi_imag);
                let dx = r0 - center;
                push_roots(
                    u1 * u1 / p + u2 * u2 / q,
                    2.0 * (dx * u1 / p + s0 * u2 / q),
                    dx * dx / p + s0 * s0 / q - 1.0,
                );
            }
        }
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-15 * (1.0 + y.abs()));
        roots
            .windows(2)
            .filter(|w| {
                let mid = 0.5 * (w[0] + w[1]);
                self.contains(r0 + mid * u1, s0 + mid * u2)
            })
            .map(|w| (w[0], w[1]))
            .collect()
    }
}

impl fmt::Display for PlanarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarDomain::Disk { center, radius } => write!(f, "disk:{center},{radius}"),
            PlanarDomain::Annulus { center, inner, outer } => {
                write!(f, "annulus:{center},{inner},{outer}")
            }
            PlanarDomain::Ellipse { center, semi_real, semi_imag } => {
                write!(f, "ellipse:{center},{semi_real},{semi_imag}")
            }
        }
    }
}

impl FromStr for PlanarDomain {
    type Err = Error;

    /// `disk:c,r`, `annulus:c,r1,r2` or `ellipse:c,ax,ay`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::InvalidDomain(format!("expected kind:args, got '{s}'")))?;
        let nums: Vec<f64> = args
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidDomain(format!("bad number '{}' in '{s}'", x.trim())))
            })
            .collect::<Result<_>>()?;
        let want = |n: usize| -> Result<()> {
            if nums.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidDomain(format!(
                    "'{kind}' takes {n} numbers, got {}",
                    nums.len()
                )))
            }
        };
        match kind.trim() {
            "disk" => {
                want(2)?;
                PlanarDomain::disk(nums[0], nums[1])
            }
            "annulus" => {
                want(3)?;
                PlanarDomain::annulus(nums[0], nums[1], nums[2])
            }
            "ellipse" => {
                want(3)?;
                PlanarDomain::ellipse(nums[0], nums[1], nums[2])
            }
            other => Err(Error::InvalidDomain(format!("unknown domain kind '{other}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn domains() -> Vec<PlanarDomain> {
        vec![
            "disk:0,1".parse().unwrap(),
            "disk:0.5,2".parse().unwrap(),
            "annulus:0,0.5,1.5".parse().unwrap(),
            "ellipse:-0.25,1.5,0.75".parse().unwrap(),
        ]
    }

    #[test]
    fn parse_and_display_round_trip() {
        for d in domains() {
            let again: PlanarDomain = d.to_string().parse().unwrap();
            assert_eq!(d, again);
        }
        assert!("disk:0".parse::<PlanarDomain>().is_err());
        assert!("disk:0,-1".parse::<PlanarDomain>().is_err());
        assert!("annulus:0,2,1".parse::<PlanarDomain>().is_err());
        assert!("square:0,1".parse::<PlanarDomain>().is_err());
        assert!("disk:0,x".parse::<PlanarDomain>().is_err());
    }

    #[test]
    fn boundary_is_conjugation_symmetric() {
        for d in domains() {
            for k in 0..d.component_count() {
                for i in 0..64 {
                    let t = i as f64 / 64.0;
                    let p = d.curve(k, t);
                    assert!(d.distance_to_boundary(p.a, -p.b) < 1e-12);
                    assert_eq!(d.contains(0.3 * p.a, 0.2), d.contains(0.3 * p.a, -0.2));
                }
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-6;
        for d in domains() {
            for k in 0..d.component_count() {
                for &t in &[0.1, 0.37, 0.8] {
                    let p = d.curve(k, t);
                    let (pp, pm) = (d.curve(k, t + h), d.curve(k, t - h));
                    assert!(((pp.a - pm.a) / (2.0 * h) - p.da).abs() < 1e-6);
                    assert!(((pp.b - pm.b) / (2.0 * h) - p.db).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn normals_point_outward() {
        let eps = 1e-4;
        for d in domains() {
            for k in 0..d.component_count() {
                for i in 0..50 {
                    let t = (i as f64 + 0.5) / 50.0;
                    let p = d.curve(k, t);
                    let (n1, n2) = p.normal();
                    assert!(!d.contains(p.a + eps * n1, p.b + eps * n2), "{d} t={t}");
                    assert!(d.contains(p.a - eps * n1, p.b - eps * n2), "{d} t={t}");
                }
            }
        }
    }

    #[test]
    fn classification() {
        let d = PlanarDomain::unit_disk();
        assert_eq!(d.classify(0.5, 0.5, 1e-9), Membership::Interior);
        assert_eq!(d.classify(0.0, 1.0, 1e-9), Membership::Boundary);
        assert_eq!(d.classify(1.2, 0.1, 1e-9), Membership::Exterior);
        let a: PlanarDomain = "annulus:0,0.5,1".parse().unwrap();
        assert_eq!(a.classify(0.1, 0.0, 1e-9), Membership::Exterior);
        assert_eq!(a.classify(0.0, -0.5, 1e-9), Membership::Boundary);
    }

    #[test]
    fn ellipse_distance_matches_scan() {
        let d: PlanarDomain = "ellipse:0,2,1".parse().unwrap();
        let loc = d.nearest_boundary_point(0.3, 0.2);
        // Brute-force check over a fine grid.
        let brute = (0..200_000)
            .map(|i| {
                let p = d.curve(0, i as f64 / 200_000.0);
                (p.a - 0.3).hypot(p.b - 0.2)
            })
            .fold(f64::INFINITY, f64::min);
        assert!((loc.distance - brute).abs() < 1e-9);
        assert!((loc.distance - 0.8).abs() < 0.05);
    }

    #[test]
    fn ray_segments_cover_area() {
        use crate::quadrature::GaussRule;
        for d in domains() {
            let origin = (d.center() + 0.1 * d.diameter(), 0.05);
            let phis = GaussRule::new(400, 0.0, TAU);
            let mut area = 0.0;
            for (phi, w) in phis.iter() {
                for (r0, r1) in d.ray_segments(origin, phi) {
                    area += w * 0.5 * (r1 * r1 - r0 * r0);
                }
            }
            let tol = if matches!(d, PlanarDomain::Annulus { .. }) { 1e-4 } else { 1e-10 };
            assert!((area - d.area()).abs() < tol * d.area(), "{d}: {area} vs {}", d.area());
        }
    }
}
