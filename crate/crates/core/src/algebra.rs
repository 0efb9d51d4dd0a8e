//! Finite-dimensional real associative *-algebras given by structure constants.
//!
//! An algebra is a dense `d x d x d` table `c[i][j][k]` with
//! `v_i v_j = sum_k c[i][j][k] v_k`, `v_0 = 1`, and a conjugation acting
//! diagonally on the basis by signs `s[i]`. The quaternions and the Clifford
//! algebras `R_{0,n}` (`n <= 6`) are registered by [`AlgebraSpec::quaternions`]
//! and [`AlgebraSpec::clifford`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default absolute tolerance on non-real residuals.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Largest supported Clifford generator count.
pub const MAX_CLIFFORD_GENERATORS: usize = 6;

#[derive(Debug)]
pub struct AlgebraSpec {
    name: String,
    dim: usize,
    table: Vec<f64>,
    conj_signs: Vec<f64>,
    labels: Vec<String>,
    // Nonzero entries of the table, grouped by (i, j).
    products: Vec<Vec<(usize, f64)>>,
}

/// Largest violation of each *-algebra axiom over all basis pairs and triples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxiomResiduals {
    pub unit: f64,
    pub associativity: f64,
    pub anti_involution: f64,
    pub involution: f64,
}

impl AxiomResiduals {
    pub fn max(&self) -> f64 {
        self.unit
            .max(self.associativity)
            .max(self.anti_involution)
            .max(self.involution)
    }
}

impl AlgebraSpec {
    /// Registers an algebra, validating unit, associativity and the
    /// anti-involution laws on the basis.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        structure_constants: Vec<f64>,
        conj_signs: Vec<f64>,
        labels: Vec<String>,
    ) -> Result<Arc<Self>> {
        let name = name.into();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if structure_constants.len() != dim * dim * dim {
            return Err(Error::InvalidAlgebra(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                structure_constants.len()
            )));
        }
        if conj_signs.len() != dim || labels.len() != dim {
            return Err(Error::InvalidAlgebra(
                "conjugation signs and labels must have one entry per basis element".into(),
            ));
        }
        if conj_signs.iter().any(|s| *s != 1.0 && *s != -1.0) {
            return Err(Error::InvalidAlgebra("conjugation signs must be +1 or -1".into()));
        }
        if conj_signs[0] != 1.0 {
            return Err(Error::InvalidAlgebra("the unit must be self-conjugate".into()));
        }
        let mut products = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let c = structure_constants[(i * dim + j) * dim + k];
                    if c != 0.0 {
                        products[i * dim + j].push((k, c));
                    }
                }
            }
        }
        let spec = AlgebraSpec {
            name,
            dim,
            table: structure_constants,
            conj_signs,
            labels,
            products,
        };
        let residuals = spec.axiom_residuals();
        if residuals.max() > 1e-12 {
            return Err(Error::InvalidAlgebra(format!(
                "axioms violated: {residuals:?}"
            )));
        }
        Ok(Arc::new(spec))
    }

    /// Hamilton's quaternions with basis `1, i, j, k`.
    pub fn quaternions() -> Arc<Self> {
        // (row, col) -> (sign, index) for the units i, j, k.
        const UNITS: [[(f64, usize); 4]; 4] = [
            [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
            [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
            [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
            [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
        ];
        let mut table = vec![0.0; 64];
        for (i, row) in UNITS.iter().enumerate() {
            for (j, &(sign, k)) in row.iter().enumerate() {
                table[(i * 4 + j) * 4 + k] = sign;
            }
        }
        let labels = ["1", "i", "j", "k"].map(String::from).to_vec();
        Self::new("quaternion", 4, table, vec![1.0, -1.0, -1.0, -1.0], labels)
            .expect("quaternion table is valid")
    }

    /// The Clifford algebra `R_{0,n}` with generators squaring to `-1` and
    /// Clifford conjugation. Blades are indexed by subsets of `{1..n}` in
    /// graded-lexicographic order.
    pub fn clifford(n: usize) -> Result<Arc<Self>> {
        if n == 0 || n > MAX_CLIFFORD_GENERATORS {
            return Err(Error::InvalidAlgebra(format!(
                "Clifford generator count must be in 1..={MAX_CLIFFORD_GENERATORS}, got {n}"
            )));
        }
        let blades = graded_lex_blades(n);
        let dim = blades.len();
        let mut index_of = vec![0usize; dim];
        for (idx, blade) in blades.iter().enumerate() {
            index_of[blade_mask(blade)] = idx;
        }
        let mut table = vec![0.0; dim * dim * dim];
        for (i, a) in blades.iter().enumerate() {
            for (j, b) in blades.iter().enumerate() {
                let (sign, blade) = blade_product(a, b);
                let k = index_of[blade_mask(&blade)];
                table[(i * dim + j) * dim + k] = sign;
            }
        }
        // Clifford conjugation = reversion composed with grade involution.
        let conj_signs = blades
            .iter()
            .map(|b| {
                let g = b.len();
                if (g * (g + 1) / 2) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            })
            .collect();
        let labels = blades
            .iter()
            .map(|b| {
                if b.is_empty() {
                    "1".to_string()
                } else {
                    let digits: String = b.iter().map(|g| g.to_string()).collect();
                    format!("e{digits}")
                }
            })
            .collect();
        Self::new(format!("clifford:{n}"), dim, table, conj_signs, labels)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.table[(i * self.dim + j) * self.dim + k]
    }

    pub fn conj_sign(&self, i: usize) -> f64 {
        self.conj_signs[i]
    }

    /// Exact residuals of the unit, associativity and anti-involution laws on
    /// every basis pair and triple.
    pub fn axiom_residuals(&self) -> AxiomResiduals {
        let d = self.dim;
        let mut unit: f64 = 0.0;
        for j in 0..d {
            for k in 0..d {
                let delta = if j == k { 1.0 } else { 0.0 };
                unit = unit
                    .max((self.structure_constant(0, j, k) - delta).abs())
                    .max((self.structure_constant(j, 0, k) - delta).abs());
            }
        }

        let mut associativity: f64 = 0.0;
        let mut left = vec![0.0; d];
        let mut right = vec![0.0; d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    left.iter_mut().for_each(|v| *v = 0.0);
                    right.iter_mut().for_each(|v| *v = 0.0);
                    for &(l, c1) in &self.products[i * d + j] {
                        for &(m, c2) in &self.products[l * d + k] {
                            left[m] += c1 * c2;
                        }
                    }
                    for &(l, c1) in &self.products[j * d + k] {
                        for &(m, c2) in &self.products[i * d + l] {
                            right[m] += c1 * c2;
                        }
                    }
                    for m in 0..d {
                        associativity = associativity.max((left[m] - right[m]).abs());
                    }
                }
            }
        }

        // (v_i v_j)^c = v_j^c v_i^c, with conjugation diagonal on the basis.
        let mut anti_involution: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let lhs = self.conj_signs[k] * self.structure_constant(i, j, k);
                    let rhs = self.conj_signs[i] * self.conj_signs[j] * self.structure_constant(j, i, k);
                    anti_involution = anti_involution.max((lhs - rhs).abs());
                }
            }
        }
        let involution = self
            .conj_signs
            .iter()
            .map(|s| (s * s - 1.0).abs())
            .fold(0.0, f64::max);

        AxiomResiduals {
            unit,
            associativity,
            anti_involution,
            involution,
        }
    }

    fn mul_into(&self, a: &[f64], b: &[f64], out: &mut [f64]) {
        let d = self.dim;
        out.iter_mut().for_each(|v| *v = 0.0);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0.0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0.0 {
                    continue;
                }
                let ab = ai * bj;
                for &(k, c) in &self.products[i * d + j] {
                    out[k] += c * ab;
                }
            }
        }
    }
}

fn graded_lex_blades(n: usize) -> Vec<Vec<usize>> {
    let mut blades: Vec<Vec<usize>> = (0u32..(1 << n))
        .map(|mask| (1..=n).filter(|g| mask & (1 << (g - 1)) != 0).collect())
        .collect();
    blades.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    blades
}

fn blade_mask(blade: &[usize]) -> usize {
    blade.iter().fold(0, |m, g| m | (1 << (g - 1)))
}

/// Product of two basis blades by reordering the concatenated generator word
/// with adjacent swaps and contracting `e_g e_g = -1`.
fn blade_product(a: &[usize], b: &[usize]) -> (f64, Vec<usize>) {
    let mut word: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut sign = 1.0;
    // Bubble sort; every swap of distinct anticommuting generators flips the sign.
    let len = word.len();
    for pass in 0..len {
        for idx in 0..len.saturating_sub(1 + pass) {
            if word[idx] > word[idx + 1] {
                word.swap(idx, idx + 1);
                sign = -sign;
            }
        }
    }
    let mut out = Vec::with_capacity(len);
    let mut idx = 0;
    while idx < word.len() {
        if idx + 1 < word.len() && word[idx] == word[idx + 1] {
            sign = -sign;
            idx += 2;
        } else {
            out.push(word[idx]);
            idx += 1;
        }
    }
    (sign, out)
}

/// An algebra element as a coefficient vector in the fixed basis.
#[derive(Clone)]
pub struct Element {
    algebra: Arc<AlgebraSpec>,
    coeffs: Vec<f64>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({}, {:?})", self.algebra.name, self.coeffs)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, label) in self.coeffs.iter().zip(&self.algebra.labels) {
            if *c == 0.0 {
                continue;
            }
            let body = if label == "1" {
                format!("{}", c.abs())
            } else {
                format!("{}{}", c.abs(), label)
            };
            match (first, *c < 0.0) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Element {
    pub fn new(algebra: &Arc<AlgebraSpec>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != algebra.dim {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim,
                got: coeffs.len(),
            });
        }
        Ok(Element {
            algebra: Arc::clone(algebra),
            coeffs,
        })
    }

    pub fn zero(algebra: &Arc<AlgebraSpec>) -> Self {
        Element {
            algebra: Arc::clone(algebra),
            coeffs: vec![0.0; algebra.dim],
        }
    }

    pub fn real(algebra: &Arc<AlgebraSpec>, value: f64) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[0] = value;
        e
    }

    pub fn one(algebra: &Arc<AlgebraSpec>) -> Self {
        Self::real(algebra, 1.0)
    }

    pub fn basis(algebra: &Arc<AlgebraSpec>, index: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[index] = 1.0;
        e
    }

    /// `alpha + beta * unit`.
    pub fn from_plane(alpha: f64, beta: f64, unit: &Element) -> Self {
        let mut e = unit.scale(beta);
        e.coeffs[0] += alpha;
        e
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn real_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn same_algebra(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
            || (self.algebra.dim == other.algebra.dim && self.algebra.name == other.algebra.name)
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.algebra.name.clone(),
                right: other.algebra.name.clone(),
            })
        }
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut out = vec![0.0; self.algebra.dim];
        self.algebra.mul_into(&self.coeffs, &other.coeffs, &mut out);
        Ok(Element {
            algebra: Arc::clone(&self.algebra),
            coeffs: out,
        })
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    fn zip_with(&self, other: &Element, op: impl Fn(f64, f64) -> f64) -> Element {
        Element {
            algebra: Arc::clone(&self.algebra),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| op(*a, *b))
                .collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> Element {
        Element {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn conj(&self) -> Element {
        Element {
            algebra: Arc::clone(&self.algebra),
            coeffs: self
                .coeffs
                .iter()
                .zip(&self.algebra.conj_signs)
                .map(|(c, s)| c * s)
                .collect(),
        }
    }

    /// `t(x) = x + x^c`.
    pub fn trace(&self) -> Element {
        self + &self.conj()
    }

    /// `n(x) = x x^c`.
    pub fn norm(&self) -> Element {
        self * &self.conj()
    }

    /// Largest absolute non-real coefficient.
    pub fn non_real_residual(&self) -> f64 {
        self.coeffs[1..].iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.non_real_residual() <= tol
    }

    /// Euclidean norm of the coefficient vector.
    pub fn euclidean_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &Element) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn add_real(&mut self, value: f64) {
        self.coeffs[0] += value;
    }

    /// Imaginary part `(x - x^c) / 2`.
    pub fn imaginary_part(&self) -> Element {
        (self - &self.conj()).scale(0.5)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert!(self.same_algebra(rhs), "algebra mismatch in addition");
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert!(self.same_algebra(rhs), "algebra mismatch in subtraction");
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

/// Panics on algebra mismatch; use [`mul`] for the checked product.
impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("algebra mismatch in product")
    }
}

impl Mul<f64> for &Element {
    type Output = Element;
    fn mul(self, rhs: f64) -> Element {
        self.scale(rhs)
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        assert!(self.same_algebra(rhs), "algebra mismatch in addition");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

pub fn mul(a: &Element, b: &Element) -> Result<Element> {
    a.try_mul(b)
}

pub fn conj(x: &Element) -> Element {
    x.conj()
}

pub fn trace(x: &Element) -> Element {
    x.trace()
}

pub fn norm(x: &Element) -> Element {
    x.norm()
}

/// Membership in the quadratic cone: real, or with real trace and norm and
/// `4 n(x) > t(x)^2`.
pub fn in_quadratic_cone(x: &Element, tol: f64) -> bool {
    if x.is_real(tol) {
        return true;
    }
    let t = x.trace();
    let n = x.norm();
    if !t.is_real(tol) || !n.is_real(tol) {
        return false;
    }
    4.0 * n.real_part() - t.real_part() * t.real_part() > 0.0
}

/// `t(J) = 0` and `n(J) = 1`, both as algebra elements.
pub fn is_imaginary_unit(unit: &Element, tol: f64) -> bool {
    let t = unit.trace();
    let n = unit.norm();
    t.euclidean_norm() <= tol && n.is_real(tol) && (n.real_part() - 1.0).abs() <= tol
}

/// `x = alpha + beta J` with `beta >= 0`; `unit` is `None` at real points.
#[derive(Debug, Clone)]
pub struct ConeDecomposition {
    pub alpha: f64,
    pub beta: f64,
    pub unit: Option<Element>,
}

impl ConeDecomposition {
    pub fn reconstruct(&self, algebra: &Arc<AlgebraSpec>) -> Element {
        match &self.unit {
            Some(unit) => Element::from_plane(self.alpha, self.beta, unit),
            None => Element::real(algebra, self.alpha),
        }
    }
}

pub fn decompose(x: &Element, tol: f64) -> Result<ConeDecomposition> {
    if !in_quadratic_cone(x, tol) {
        return Err(Error::OutsideCone);
    }
    let alpha = 0.5 * x.trace().real_part();
    let beta = (x.norm().real_part() - alpha * alpha).max(0.0).sqrt();
    if beta <= tol {
        return Ok(ConeDecomposition {
            alpha,
            beta: 0.0,
            unit: None,
        });
    }
    let mut unit = x.scale(1.0 / beta);
    unit.coeffs[0] = 0.0;
    Ok(ConeDecomposition {
        alpha,
        beta,
        unit: Some(unit),
    })
}

/// `x^{-1} = x^c / n(x)` for a cone element, computed in its own plane.
pub fn invert_in_plane(x: &Element, tol: f64) -> Result<Element> {
    if !in_quadratic_cone(x, tol) {
        return Err(Error::OutsideCone);
    }
    let n = x.norm();
    let n0 = n.real_part();
    if n0.abs() <= tol {
        return Err(Error::NotInvertible(n0));
    }
    Ok(x.conj().scale(1.0 / n0))
}
