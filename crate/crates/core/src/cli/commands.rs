//! The verification campaigns behind each subcommand.

use std::time::Instant;

use anyhow::{anyhow, bail};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{CommandKind, RunConfig};
use super::table::{Criterion, ErrorTable, ErrorTableRow};
use crate::algebra::Element;
use crate::cauchy::{cauchy_reconstruct, kernel_cs};
use crate::geometry::polar::half_box;
use crate::geometry::{
    circularize_membership, jacobian_in, jacobian_in_det, jacobian_in_gram, sphere_volume,
    Circularized, Gis,
};
use crate::jump::{extension_test, jump_check, EXTENSION_TOL};
use crate::parse::format_coeffs;
use crate::quadrature::{tensor_rule, NeumaierSum};

pub const CAUCHY_TOL_REGULAR: f64 = 1e-5;
pub const CAUCHY_TOL_VOLUME: f64 = 1e-3;
pub const JUMP_TOL: f64 = 5e-4;
pub const LEMMA_TOL: f64 = 1e-6;
pub const LEMMA_INTEGRAL_TOL: f64 = 1e-8;
pub const KERNEL_TOL: f64 = 1e-10;

const DEFAULT_POINTS: usize = 5;
const DEFAULT_BOUNDARY_POINTS: usize = 8;
const LEMMA_FD_STEP: f64 = 1e-5;
const LEMMA_QUADRATURE_NODES: usize = 24;

pub fn run_command(cfg: &RunConfig) -> anyhow::Result<ErrorTable> {
    let mut table = ErrorTable { metadata: cfg.metadata(), ..Default::default() };
    match cfg.command {
        CommandKind::VerifyCauchy => verify_cauchy(cfg, &mut table)?,
        CommandKind::VerifyJump => verify_jump(cfg, &mut table)?,
        CommandKind::ExtensionTest => run_extension_test(cfg, &mut table)?,
        CommandKind::LemmaSuite => lemma_suite(cfg, &mut table)?,
        CommandKind::KernelEval => kernel_eval(cfg, &mut table)?,
    }
    Ok(table)
}

fn elapsed(cfg: &RunConfig, start: Instant) -> f64 {
    if cfg.timing {
        start.elapsed().as_secs_f64()
    } else {
        0.0
    }
}

fn random_direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let d: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let len = d.iter().map(|v| v * v).sum::<f64>().sqrt();
        if len > 0.1 && len <= 1.0 {
            return d.iter().map(|v| v / len).collect();
        }
    }
}

/// Seeded interior points of `Omega_D(S)` well away from the boundary.
pub fn default_interior_points(cfg: &RunConfig, count: usize) -> Vec<Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let d = &cfg.domain;
    let (x0, x1, _, y1) = d.bounding_box();
    let mut min_dist = 0.2 * d.diameter();
    let mut out = Vec::with_capacity(count);
    let mut misses = 0;
    while out.len() < count {
        let a = rng.random_range(x0..x1);
        let b = rng.random_range(0.0..y1);
        if d.contains(a, b) && d.distance_to_boundary(a, b) >= min_dist {
            let dir = random_direction(&mut rng, cfg.gis.dim() - 1);
            let scaled: Vec<f64> = dir.iter().map(|v| v * b).collect();
            out.push(cfg.gis.combine(a, &scaled));
        } else {
            misses += 1;
            if misses % 1000 == 0 {
                min_dist *= 0.5;
            }
        }
    }
    out
}

/// Points `t_k = (k + 1/2) / count` on the first boundary curve, in the plane of `v_1`.
pub fn default_boundary_points(cfg: &RunConfig, count: usize) -> Vec<Element> {
    let unit = &cfg.gis.basis()[1];
    (0..count)
        .map(|k| {
            let cp = cfg.domain.curve(0, (k as f64 + 0.5) / count as f64);
            Element::from_plane(cp.a, cp.b, unit)
        })
        .collect()
}

/// The boundary points pushed outward by `0.05 diam(D)`.
pub fn default_probes(cfg: &RunConfig, count: usize) -> Vec<Element> {
    let unit = &cfg.gis.basis()[1];
    let h = 0.05 * cfg.domain.diameter();
    (0..count)
        .map(|k| {
            let cp = cfg.domain.curve(0, (k as f64 + 0.5) / count as f64);
            let (n1, n2) = cp.normal();
            Element::from_plane(cp.a + h * n1, cp.b + h * n2, unit)
        })
        .collect()
}

fn boundary_node_count(cfg: &RunConfig) -> usize {
    let angles = cfg.grid.n_theta.pow(cfg.gis.angle_count() as u32);
    cfg.grid.n_t * cfg.domain.component_count() * angles
}

fn verify_cauchy(cfg: &RunConfig, table: &mut ErrorTable) -> anyhow::Result<()> {
    let f = cfg.stem();
    let tol = cfg.tol.unwrap_or(if f.is_slice_regular() {
        CAUCHY_TOL_REGULAR
    } else {
        CAUCHY_TOL_VOLUME
    });
    let points = if cfg.points.is_empty() {
        default_interior_points(cfg, DEFAULT_POINTS)
    } else {
        cfg.points.clone()
    };
    for (k, x) in points.iter().enumerate() {
        let m = circularize_membership(&cfg.domain, &cfg.gis, x, crate::DEFAULT_TOL);
        if m != Circularized::Interior {
            bail!("point {k} ({x}) is not interior to the circularized domain ({m:?})");
        }
    }
    table.rows = points
        .par_iter()
        .enumerate()
        .map(|(k, x)| {
            let start = Instant::now();
            let res = cauchy_reconstruct(&cfg.gis, &cfg.domain, &f, x, &cfg.grid)
                .map_err(|e| anyhow!("point {k} ({x}): {e}"))?;
            let reference = cfg.oracle(x);
            Ok(ErrorTableRow::compare("cauchy", x, &reference, &res.combined, tol, Criterion::Relative)
                .with_nodes(res.boundary_nodes, res.volume_nodes)
                .with_wall_time(elapsed(cfg, start)))
        })
        .collect::<anyhow::Result<_>>()?;
    table.metadata.push(("tolerance".into(), format!("{tol:e}")));
    Ok(())
}

fn verify_jump(cfg: &RunConfig, table: &mut ErrorTable) -> anyhow::Result<()> {
    let f = cfg.stem();
    let tol = cfg.tol.unwrap_or(JUMP_TOL);
    let offsets: Vec<f64> = cfg.offsets.iter().map(|o| o * cfg.domain.diameter()).collect();
    let points = if cfg.points.is_empty() {
        default_boundary_points(cfg, DEFAULT_BOUNDARY_POINTS)
    } else {
        cfg.points.clone()
    };
    let reports = points
        .par_iter()
        .enumerate()
        .map(|(k, x)| {
            let start = Instant::now();
            let r = jump_check(&cfg.gis, &cfg.domain, &f, x, &cfg.grid, &offsets)
                .map_err(|e| anyhow!("point {k} ({x}): {e}"))?;
            Ok((r, elapsed(cfg, start)))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let nodes = boundary_node_count(cfg);
    let mut max_f_minus: f64 = 0.0;
    let mut non_monotone = 0;
    for (r, wall) in &reports {
        max_f_minus = max_f_minus.max(r.f_minus.euclidean_norm());
        if !r.monotone {
            non_monotone += 1;
        }
        let label = if r.monotone { "jump" } else { "jump (non-monotone)" };
        table.rows.push(
            ErrorTableRow::compare(label, &r.point, &r.boundary_value, &r.jump, tol, Criterion::Absolute)
                .with_nodes(nodes, 0)
                .with_wall_time(*wall),
        );
    }
    table.metadata.push(("tolerance".into(), format!("{tol:e}")));
    table.metadata.push(("offsets".into(), format_coeffs(&offsets)));
    table.summary.push(("max_f_minus".into(), format!("{max_f_minus:.16e}")));
    table.summary.push(("extends".into(), (max_f_minus < EXTENSION_TOL).to_string()));
    table.summary.push(("non_monotone".into(), non_monotone.to_string()));
    Ok(())
}

fn run_extension_test(cfg: &RunConfig, table: &mut ErrorTable) -> anyhow::Result<()> {
    let f = cfg.stem();
    let tol = cfg.tol.unwrap_or(EXTENSION_TOL);
    let offsets: Vec<f64> = cfg.offsets.iter().map(|o| o * cfg.domain.diameter()).collect();
    let probes = if cfg.points.is_empty() {
        default_probes(cfg, DEFAULT_BOUNDARY_POINTS)
    } else {
        cfg.points.clone()
    };
    let start = Instant::now();
    let report = extension_test(&cfg.gis, &cfg.domain, &f, &cfg.grid, &probes, tol, &offsets)
        .map_err(|e| anyhow!("extension test: {e}"))?;
    let wall = elapsed(cfg, start) / probes.len() as f64;
    let nodes = boundary_node_count(cfg);
    let zero = Element::zero(&cfg.algebra);
    for (probe, r) in probes.iter().zip(&report.reports) {
        table.rows.push(
            ErrorTableRow::compare("f_minus", probe, &zero, &r.f_minus, tol, Criterion::Absolute)
                .with_nodes(nodes, 0)
                .with_wall_time(wall),
        );
    }
    table.metadata.push(("tolerance".into(), format!("{tol:e}")));
    table.summary.push(("max_f_minus".into(), format!("{:.16e}", report.max_f_minus)));
    table.summary.push(("extends".into(), report.extends.to_string()));
    Ok(())
}

fn random_angles(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    half_box(n)
        .into_iter()
        .map(|(lo, hi)| {
            // Keep clear of the box edges, where the central differences leave the box.
            let pad = 1e-3 * (hi - lo);
            rng.random_range(lo + pad..hi - pad)
        })
        .collect()
}

fn lemma_suite(cfg: &RunConfig, table: &mut ErrorTable) -> anyhow::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let tol = cfg.tol.unwrap_or(LEMMA_TOL);
    for n in 1..=cfg.max_n {
        let point = format!("n={n}");
        let samples: Vec<Vec<f64>> = (0..cfg.samples.max(1)).map(|_| random_angles(&mut rng, n)).collect();
        type Oracle = fn(&[f64], f64) -> crate::Result<f64>;
        let oracles: [(&str, Oracle); 2] =
            [("product-vs-det", jacobian_in_det), ("product-vs-gram", jacobian_in_gram)];
        for (label, oracle) in oracles {
            let start = Instant::now();
            let mut worst = (0.0, 0.0, -1.0);
            for th in &samples {
                let p = jacobian_in(th)?;
                let q = oracle(th, LEMMA_FD_STEP)?;
                let dev = (p - q).abs();
                if !(dev <= worst.2) {
                    worst = (p, q, dev);
                }
            }
            table.rows.push(
                ErrorTableRow::scalars(label, point.clone(), vec![worst.0], vec![worst.1], tol, Criterion::Absolute)
                    .with_wall_time(elapsed(cfg, start)),
            );
        }
        if n == 1 {
            let mut worst = (1.0, 0.0);
            for th in &samples {
                let v = jacobian_in(th)?;
                if (v - 1.0).abs() >= (worst.0 - 1.0f64).abs() {
                    worst = (v, (v - 1.0).abs());
                }
            }
            table.rows.push(ErrorTableRow::scalars(
                "unit-jacobian",
                point.clone(),
                vec![1.0],
                vec![worst.0],
                0.0,
                Criterion::Absolute,
            ));
        }
        let start = Instant::now();
        let nodes = tensor_rule(&half_box(n), LEMMA_QUADRATURE_NODES);
        let mut acc = NeumaierSum::default();
        for (th, w) in &nodes {
            acc.add(w * jacobian_in(th)?);
        }
        table.rows.push(
            ErrorTableRow::scalars(
                "integral",
                point,
                vec![sphere_volume(n) / 2.0],
                vec![acc.value()],
                LEMMA_INTEGRAL_TOL,
                Criterion::Absolute,
            )
            .with_nodes(0, nodes.len())
            .with_wall_time(elapsed(cfg, start)),
        );
    }
    table.metadata.push(("samples".into(), cfg.samples.to_string()));
    Ok(())
}

/// `C_S(x, w)` by solving `Delta_w(x) y = w^c - x` with the left-multiplication matrix.
pub fn kernel_by_linear_solve(gis: &Gis, x: &Element, w: &Element) -> anyhow::Result<Element> {
    let alg = gis.algebra();
    let dim = alg.dim();
    let tw = w.trace().real_part();
    let nw = w.norm().real_part();
    let mut delta = &(x * x) - &x.scale(tw);
    delta.add_real(nw);
    let mut lmat = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        let col = &delta * &Element::basis(alg, j);
        for (i, c) in col.coeffs().iter().enumerate() {
            lmat[(i, j)] = *c;
        }
    }
    let rhs = DVector::from_column_slice((&w.conj() - x).coeffs());
    let y = lmat.lu().solve(&rhs).ok_or_else(|| anyhow!("Delta_w(x) is singular"))?;
    let mut c = Element::new(alg, y.iter().copied().collect())?;
    if gis.dim() > 2 {
        let im = w.imaginary_part().euclidean_norm();
        c = c.scale(gis.kernel_prefactor() / im.powi(gis.dim() as i32 - 2));
    }
    Ok(c)
}

fn default_kernel_pairs(cfg: &RunConfig) -> Vec<(Element, Element)> {
    let xs = default_interior_points(cfg, DEFAULT_POINTS);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6b65726e);
    let d = &cfg.domain;
    xs.into_iter()
        .map(|x| loop {
            let k = rng.random_range(0..d.component_count());
            let cp = d.curve(k, rng.random_range(0.0..1.0));
            if cp.b.abs() < 0.1 * d.diameter() {
                continue;
            }
            let dir = random_direction(&mut rng, cfg.gis.dim() - 1);
            let unit = cfg.gis.combine(0.0, &dir);
            break (x, Element::from_plane(cp.a, cp.b, &unit));
        })
        .collect()
}

fn kernel_eval(cfg: &RunConfig, table: &mut ErrorTable) -> anyhow::Result<()> {
    let tol = cfg.tol.unwrap_or(KERNEL_TOL);
    let pairs: Vec<(Element, Element)> = if cfg.points.is_empty() {
        default_kernel_pairs(cfg)
    } else {
        cfg.points
            .iter()
            .zip(&cfg.kernel_w)
            .enumerate()
            .map(|(k, (x, w))| {
                w.clone()
                    .map(|w| (x.clone(), w))
                    .ok_or_else(|| anyhow!("point {k}: kernel-eval needs 'x|w' pairs"))
            })
            .collect::<anyhow::Result<_>>()?
    };
    for (k, (x, w)) in pairs.iter().enumerate() {
        let start = Instant::now();
        let computed = kernel_cs(&cfg.gis, x, w).map_err(|e| anyhow!("pair {k}: {e}"))?;
        let wall = elapsed(cfg, start);
        let reference = kernel_by_linear_solve(&cfg.gis, x, w)?;
        let label = format!("kernel w={}", format_coeffs(w.coeffs()));
        table.rows.push(
            ErrorTableRow::compare(label, x, &reference, &computed, tol, Criterion::Relative)
                .with_wall_time(wall),
        );
    }
    table.metadata.push(("tolerance".into(), format!("{tol:e}")));
    Ok(())
}
