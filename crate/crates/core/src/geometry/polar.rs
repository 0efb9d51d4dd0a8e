//! Polar coordinates on spheres and their Jacobian factors.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Volume of the unit sphere `S^n` in `R^{n+1}`.
pub fn sphere_volume(n: usize) -> f64 {
    let half = (n as f64 + 1.0) / 2.0;
    2.0 * PI.powf(half) / gamma(half)
}

/// Angular coordinates `theta = (theta_1, ..., theta_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarPoint(pub Vec<f64>);

impl PolarPoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn in_half_box(&self) -> bool {
        in_box(&self.0, &half_box(self.0.len()))
    }
}

impl std::ops::Deref for PolarPoint {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// The closure of `I_n = (0, 2pi) x (-pi/2, pi/2)^{n-1}`.
pub fn full_box(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|k| if k == 0 { (0.0, 2.0 * PI) } else { (-FRAC_PI_2, FRAC_PI_2) })
        .collect()
}

/// The closure of `I_n^+`: `(0, pi)` for `n = 1`, otherwise
/// `I_{n-1} x (0, pi/2)`.
pub fn half_box(n: usize) -> Vec<(f64, f64)> {
    match n {
        0 => Vec::new(),
        1 => vec![(0.0, PI)],
        _ => {
            let mut b = full_box(n - 1);
            b.push((0.0, FRAC_PI_2));
            b
        }
    }
}

fn in_box(theta: &[f64], intervals: &[(f64, f64)]) -> bool {
    theta.len() == intervals.len()
        && theta
            .iter()
            .zip(intervals)
            .all(|(t, (lo, hi))| t.is_finite() && *t >= *lo && *t <= *hi)
}

fn check(theta: &[f64], intervals: &[(f64, f64)]) -> Result<()> {
    if in_box(theta, intervals) {
        Ok(())
    } else {
        Err(Error::AngleOutOfRange(format!("{theta:?} not in {intervals:?}")))
    }
}

/// `phi_n` without range checks.
pub(crate) fn phi(theta: &[f64]) -> Vec<f64> {
    let mut v = vec![1.0];
    for (k, &t) in theta.iter().enumerate() {
        if k == 0 {
            v = vec![t.cos(), t.sin()];
        } else {
            let c = t.cos();
            v.iter_mut().for_each(|x| *x *= c);
            v.push(t.sin());
        }
    }
    v
}

/// Polar coordinates `phi_n : I_n -> S^n`, with `n = theta.len() >= 1`.
pub fn polar_phi(theta: &[f64]) -> Result<Vec<f64>> {
    if theta.is_empty() {
        return Err(Error::AngleOutOfRange("polar coordinates need n >= 1".into()));
    }
    check(theta, &full_box(theta.len()))?;
    Ok(phi(theta))
}

/// Closed-form `I_n(theta) = prod_{k=2}^n cos(theta_k)^{k-1}` on `I_n^+`.
/// An empty angle vector (the two-dimensional case) gives 1.
pub fn jacobian_in(theta: &[f64]) -> Result<f64> {
    check(theta, &half_box(theta.len()))?;
    Ok(jacobian_in_unchecked(theta))
}

pub(crate) fn jacobian_in_unchecked(theta: &[f64]) -> f64 {
    theta
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, t)| t.cos().powi(k as i32))
        .product()
}

/// Central-difference Jacobian of `phi_n`, an `(n+1) x n` matrix.
pub fn phi_jacobian_fd(theta: &[f64], h: f64) -> DMatrix<f64> {
    let n = theta.len();
    let mut jac = DMatrix::zeros(n + 1, n);
    let mut plus = theta.to_vec();
    let mut minus = theta.to_vec();
    for col in 0..n {
        plus[col] = theta[col] + h;
        minus[col] = theta[col] - h;
        let fp = phi(&plus);
        let fm = phi(&minus);
        for row in 0..=n {
            jac[(row, col)] = (fp[row] - fm[row]) / (2.0 * h);
        }
        plus[col] = theta[col];
        minus[col] = theta[col];
    }
    jac
}

/// `det(phi_n | J_phi_n)` with a finite-difference Jacobian.
pub fn jacobian_in_det(theta: &[f64], h: f64) -> Result<f64> {
    if theta.is_empty() {
        return Err(Error::AngleOutOfRange("polar coordinates need n >= 1".into()));
    }
    check(theta, &half_box(theta.len()))?;
    let n = theta.len();
    let jac = phi_jacobian_fd(theta, h);
    let p = phi(theta);
    let mut m = DMatrix::zeros(n + 1, n + 1);
    for row in 0..=n {
        m[(row, 0)] = p[row];
        for col in 0..n {
            m[(row, col + 1)] = jac[(row, col)];
        }
    }
    Ok(m.determinant())
}

/// `sqrt(det(J^T J))` with a finite-difference Jacobian.
pub fn jacobian_in_gram(theta: &[f64], h: f64) -> Result<f64> {
    if theta.is_empty() {
        return Err(Error::AngleOutOfRange("polar coordinates need n >= 1".into()));
    }
    check(theta, &half_box(theta.len()))?;
    let jac = phi_jacobian_fd(theta, h);
    Ok((jac.transpose() * &jac).determinant().max(0.0).sqrt())
}
