//! Gauss–Legendre rules and deterministic compensated accumulation.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

/// Gauss–Legendre nodes and weights mapped to `[a, b]`, nodes ascending.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(n: usize, a: f64, b: f64) -> Self {
        let n = NonZeroUsize::new(n.max(1)).expect("nonzero");
        let rule = GaussLegendre::new(n);
        let mut pairs: Vec<(f64, f64)> = rule
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (x, w))
            .collect();
        pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        GaussRule {
            nodes: pairs.iter().map(|(x, _)| mid + half * x).collect(),
            weights: pairs.iter().map(|(_, w)| half * w).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut acc = NeumaierSum::default();
        for (x, w) in self.iter() {
            acc.add(w * f(x));
        }
        acc.value()
    }
}

/// Composite Gauss rule on `[0, outer]` with panels shrinking geometrically
/// toward 0: `[outer r^(k+1), outer r^k]` for `k < levels`, then `[0, outer r^levels]`.
pub fn graded_rule(outer: f64, levels: usize, ratio: f64, nodes_per_panel: usize) -> GaussRule {
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut edges = Vec::with_capacity(levels + 2);
    edges.push(0.0);
    for k in (0..=levels).rev() {
        edges.push(outer * ratio.powi(k as i32));
    }
    for pair in edges.windows(2) {
        let panel = GaussRule::new(nodes_per_panel, pair[0], pair[1]);
        nodes.extend(panel.nodes);
        weights.extend(panel.weights);
    }
    GaussRule { nodes, weights }
}

/// Composite Gauss rule over one period `[center - 1/2, center + 1/2]` with
/// panels of width `h0, 2 h0, 4 h0, ...` growing away from `center` on both sides.
pub fn graded_periodic_rule(center: f64, h0: f64, nodes_per_panel: usize) -> GaussRule {
    let mut right = vec![0.0];
    let mut width = h0.clamp(1e-12, 0.5);
    while *right.last().expect("nonempty") < 0.5 {
        let next = (right.last().expect("nonempty") + width).min(0.5);
        right.push(next);
        width *= 2.0;
    }
    let mut edges: Vec<f64> = right.iter().rev().map(|e| center - e).collect();
    edges.extend(right.iter().skip(1).map(|e| center + e));
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for pair in edges.windows(2) {
        let panel = GaussRule::new(nodes_per_panel, pair[0], pair[1]);
        nodes.extend(panel.nodes);
        weights.extend(panel.weights);
    }
    GaussRule { nodes, weights }
}

/// Neumaier-compensated scalar sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Coefficient-wise compensated accumulator for algebra-valued sums.
#[derive(Debug, Clone)]
pub struct VectorSum {
    parts: Vec<NeumaierSum>,
}

impl VectorSum {
    pub fn new(dim: usize) -> Self {
        VectorSum {
            parts: vec![NeumaierSum::default(); dim],
        }
    }

    pub fn add_scaled(&mut self, values: &[f64], scale: f64) {
        for (p, v) in self.parts.iter_mut().zip(values) {
            p.add(v * scale);
        }
    }

    pub fn values(&self) -> Vec<f64> {
        self.parts.iter().map(NeumaierSum::value).collect()
    }
}

/// Tensor Gauss rule over a box; returns `(point, weight)` pairs in
/// lexicographic node order (first coordinate slowest).
pub fn tensor_rule(intervals: &[(f64, f64)], nodes_per_axis: usize) -> Vec<(Vec<f64>, f64)> {
    let rules: Vec<GaussRule> = intervals
        .iter()
        .map(|&(a, b)| GaussRule::new(nodes_per_axis, a, b))
        .collect();
    let mut out = vec![(Vec::with_capacity(intervals.len()), 1.0)];
    for rule in &rules {
        let mut next = Vec::with_capacity(out.len() * rule.len());
        for (point, weight) in &out {
            for (x, w) in rule.iter() {
                let mut p = point.clone();
                p.push(x);
                next.push((p, weight * w));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_rule_integrates_polynomials_exactly() {
        let rule = GaussRule::new(5, -1.0, 2.0);
        // Exact for degree <= 9.
        let exact = (2f64.powi(10) - 1.0) / 10.0;
        assert!((rule.integrate(|x| x.powi(9)) - exact).abs() < 1e-12);
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!((rule.weights.iter().sum::<f64>() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn graded_rule_covers_interval() {
        let rule = graded_rule(0.1, 12, 0.5, 6);
        assert_eq!(rule.len(), 13 * 6);
        assert!((rule.weights.iter().sum::<f64>() - 0.1).abs() < 1e-15);
        assert!(rule.nodes.iter().all(|&x| x > 0.0 && x < 0.1));
        // Integrable endpoint singularity x^{-1/2}: graded panels help.
        let approx = rule.integrate(|x| x.powf(-0.5));
        assert!((approx - 2.0 * 0.1f64.sqrt()).abs() < 1e-3);
    }

    #[test]
    fn graded_periodic_rule_covers_one_period() {
        let rule = graded_periodic_rule(0.3, 1e-4, 8);
        assert!((rule.weights.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(rule.nodes[0] > -0.2 && *rule.nodes.last().unwrap() < 0.8);
        // Periodic integrand with a sharp peak at the centre.
        let d = 1e-3;
        let f = |t: f64| {
            let s = (std::f64::consts::PI * (t - 0.3)).sin();
            d / (s * s + d * d)
        };
        let exact = 1.0 / (1.0 + d * d).sqrt();
        assert!((rule.integrate(f) - exact).abs() < 1e-8);
    }

    #[test]
    fn tensor_rule_volume() {
        let pts = tensor_rule(&[(0.0, 1.0), (0.0, 2.0)], 4);
        assert_eq!(pts.len(), 16);
        let vol: f64 = pts.iter().map(|(_, w)| w).sum();
        assert!((vol - 2.0).abs() < 1e-14);
        let moment: f64 = pts.iter().map(|(p, w)| w * p[0] * p[1] * p[1]).sum();
        assert!((moment - 0.5 * 8.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn neumaier_recovers_cancellation() {
        let mut s = NeumaierSum::default();
        for v in [1.0, 1e100, 1.0, -1e100] {
            s.add(v);
        }
        assert_eq!(s.value(), 2.0);
    }
}
