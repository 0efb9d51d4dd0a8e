//! Error tables and their CSV form.

use std::io::Write;

use crate::algebra::Element;
use crate::parse::format_coeffs;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    Absolute,
    Relative,
}

#[derive(Debug, Clone)]
pub struct ErrorTableRow {
    pub label: String,
    pub point: String,
    pub reference: Vec<f64>,
    pub computed: Vec<f64>,
    pub abs_error: f64,
    pub rel_error: f64,
    pub tolerance: f64,
    pub criterion: Criterion,
    pub boundary_nodes: usize,
    pub volume_nodes: usize,
    pub wall_time: f64,
}

impl ErrorTableRow {
    pub fn compare(
        label: impl Into<String>,
        point: &Element,
        reference: &Element,
        computed: &Element,
        tolerance: f64,
        criterion: Criterion,
    ) -> Self {
        Self::scalars(
            label,
            format_coeffs(point.coeffs()),
            reference.coeffs().to_vec(),
            computed.coeffs().to_vec(),
            tolerance,
            criterion,
        )
    }

    pub fn scalars(
        label: impl Into<String>,
        point: String,
        reference: Vec<f64>,
        computed: Vec<f64>,
        tolerance: f64,
        criterion: Criterion,
    ) -> Self {
        let abs_error = reference
            .iter()
            .zip(&computed)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let scale = reference.iter().map(|a| a * a).sum::<f64>().sqrt();
        let rel_error = if scale >= f64::MIN_POSITIVE { abs_error / scale } else { abs_error };
        ErrorTableRow {
            label: label.into(),
            point,
            reference,
            computed,
            abs_error,
            rel_error,
            tolerance,
            criterion,
            boundary_nodes: 0,
            volume_nodes: 0,
            wall_time: 0.0,
        }
    }

    pub fn with_nodes(mut self, boundary: usize, volume: usize) -> Self {
        self.boundary_nodes = boundary;
        self.volume_nodes = volume;
        self
    }

    pub fn with_wall_time(mut self, seconds: f64) -> Self {
        self.wall_time = seconds;
        self
    }

    pub fn error(&self) -> f64 {
        match self.criterion {
            Criterion::Absolute => self.abs_error,
            Criterion::Relative => self.rel_error,
        }
    }

    pub fn pass(&self) -> bool {
        self.error() <= self.tolerance
    }
}

#[derive(Debug, Clone, Default)]
pub struct ErrorTable {
    /// `# key=value` lines before the header.
    pub metadata: Vec<(String, String)>,
    pub rows: Vec<ErrorTableRow>,
    /// `# key=value` lines after the last row.
    pub summary: Vec<(String, String)>,
}

pub const HEADER: [&str; 13] = [
    "row",
    "label",
    "point",
    "reference",
    "computed",
    "abs_error",
    "rel_error",
    "tolerance",
    "criterion",
    "pass",
    "boundary_nodes",
    "volume_nodes",
    "wall_time",
];

fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

impl ErrorTable {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(ErrorTableRow::pass)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass()).count()
    }

    pub fn to_csv(&self) -> std::io::Result<Vec<u8>> {
        let mut out = Vec::new();
        for (k, v) in &self.metadata {
            writeln!(out, "# {k}={v}")?;
        }
        {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(HEADER)?;
            for (i, r) in self.rows.iter().enumerate() {
                w.write_record([
                    i.to_string(),
                    r.label.clone(),
                    r.point.clone(),
                    format_coeffs(&r.reference),
                    format_coeffs(&r.computed),
                    sci(r.abs_error),
                    sci(r.rel_error),
                    sci(r.tolerance),
                    match r.criterion {
                        Criterion::Absolute => "abs".to_string(),
                        Criterion::Relative => "rel".to_string(),
                    },
                    r.pass().to_string(),
                    r.boundary_nodes.to_string(),
                    r.volume_nodes.to_string(),
                    sci(r.wall_time),
                ])?;
            }
            w.flush()?;
        }
        for (k, v) in &self.summary {
            writeln!(out, "# {k}={v}")?;
        }
        Ok(out)
    }
}
