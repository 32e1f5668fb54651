//! Benchmark harness: per parameter row, generate seeded instances, solve
//! each by cut generation and aggregate the results.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::generator::{generate_instance, instance_seed, GenParams};
use crate::regret::{minmax_regret, RobustStatus, SolverConfig};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub instances_per_row: usize,
    pub solver: SolverConfig,
    /// Record wall-clock times. Without timing, time columns are left empty
    /// and reports are reproducible byte for byte.
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self { instances_per_row: 10, solver: SolverConfig::default(), timing: true }
    }
}

/// Raw outcome of one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceRecord {
    pub row: usize,
    pub index: usize,
    pub seed: u64,
    /// Forbidden pairs of the generated instance.
    pub pairs: Option<usize>,
    pub status: Option<RobustStatus>,
    /// Set when generation or solving failed.
    pub error: Option<String>,
    pub regret: Option<i64>,
    pub lower_bound: Option<i64>,
    pub gap: Option<f64>,
    pub iterations: Option<usize>,
    pub time: Option<f64>,
}

impl InstanceRecord {
    pub fn is_optimal(&self) -> bool {
        self.status == Some(RobustStatus::Optimal)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub params: GenParams,
    pub n: usize,
    pub k_effective_mean: f64,
    /// Over every instance, limit hits included.
    pub time_mean: Option<f64>,
    pub time_std: Option<f64>,
    /// Over optimal runs.
    pub iter_mean: Option<f64>,
    pub iter_std: Option<f64>,
    pub opt_count: usize,
    /// Mean returned regret over solved instances (the best upper bound for
    /// non-optimal ones).
    pub value_mean: Option<f64>,
    /// Mean gap over non-optimal runs; absent when all are optimal.
    pub gap_mean: Option<f64>,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub records: Vec<InstanceRecord>,
}

fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

/// Sample standard deviation; 0 for a single value.
fn std_dev(xs: &[f64]) -> Option<f64> {
    let mu = mean(xs)?;
    if xs.len() < 2 {
        return Some(0.0);
    }
    Some((xs.iter().map(|x| (x - mu).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt())
}

fn run_one(row: usize, index: usize, params: &GenParams, config: &BenchConfig) -> InstanceRecord {
    let seed = instance_seed(params.rng_seed, index as u64);
    let mut rec = InstanceRecord {
        row,
        index,
        seed,
        pairs: None,
        status: None,
        error: None,
        regret: None,
        lower_bound: None,
        gap: None,
        iterations: None,
        time: None,
    };
    let gen = GenParams { rng_seed: seed, ..params.clone() };
    let inst = match generate_instance(&gen) {
        Ok(inst) => inst,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    rec.pairs = Some(inst.forbidden().len());
    let solver = config.solver.clone().seeded(seed);
    let started = Instant::now();
    let result = minmax_regret(&inst, &solver);
    if config.timing {
        rec.time = Some(started.elapsed().as_secs_f64());
    }
    match result {
        Ok(res) => {
            rec.status = Some(res.status);
            rec.regret = Some(res.regret);
            rec.lower_bound = Some(res.lower_bound);
            rec.gap = Some(res.gap);
            rec.iterations = Some(res.iterations);
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec
}

/// Aggregates the records of one row.
pub fn summarize(params: &GenParams, records: &[InstanceRecord]) -> BenchRow {
    let pairs: Vec<f64> = records.iter().filter_map(|r| r.pairs).map(|k| k as f64).collect();
    let times: Vec<f64> = records.iter().filter_map(|r| r.time).collect();
    let iters: Vec<f64> = records.iter().filter(|r| r.is_optimal()).filter_map(|r| r.iterations).map(|i| i as f64).collect();
    let values: Vec<f64> = records.iter().filter_map(|r| r.regret).map(|v| v as f64).collect();
    let gaps: Vec<f64> = records.iter().filter(|r| r.status.is_some() && !r.is_optimal()).filter_map(|r| r.gap).collect();
    let opt_count = records.iter().filter(|r| r.is_optimal()).count();
    BenchRow {
        params: params.clone(),
        n: params.m * params.r,
        k_effective_mean: mean(&pairs).unwrap_or(0.0),
        time_mean: mean(&times),
        time_std: std_dev(&times),
        iter_mean: mean(&iters),
        iter_std: std_dev(&iters),
        opt_count,
        value_mean: mean(&values),
        gap_mean: if opt_count < records.len() { mean(&gaps) } else { None },
        failures: records.iter().filter(|r| r.error.is_some()).count(),
    }
}

/// Runs every row. Failures are recorded per instance and never stop the
/// suite.
pub fn run_benchmark(rows: &[GenParams], config: &BenchConfig) -> BenchReport {
    let mut report = BenchReport { rows: Vec::new(), records: Vec::new() };
    for (row, params) in rows.iter().enumerate() {
        let records: Vec<InstanceRecord> =
            (0..config.instances_per_row).map(|i| run_one(row, i, params, config)).collect();
        report.rows.push(summarize(params, &records));
        report.records.extend(records);
    }
    report
}

pub const CSV_HEADER: [&str; 12] =
    ["n", "m", "r", "p", "K", "time_mean", "time_std", "iter_mean", "iter_std", "opt", "value_mean", "gap"];

fn cells(row: &BenchRow) -> [String; 12] {
    let two = |x: Option<f64>| x.map(|v| format!("{v:.2}")).unwrap_or_default();
    [
        row.n.to_string(),
        row.params.m.to_string(),
        row.params.r.to_string(),
        row.params.p.to_string(),
        format!("{:.2}", row.k_effective_mean),
        two(row.time_mean),
        two(row.time_std),
        two(row.iter_mean),
        two(row.iter_std),
        row.opt_count.to_string(),
        two(row.value_mean),
        row.gap_mean.map(|g| format!("{g:.4}")).unwrap_or_default(),
    ]
}

pub fn to_csv(rows: &[BenchRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(std::io::Error::from)?;
    for row in rows {
        w.write_record(cells(row)).map_err(std::io::Error::from)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Fixed-width table with the CSV columns.
pub fn to_text_table(rows: &[BenchRow]) -> String {
    let body: Vec<[String; 12]> = rows.iter().map(cells).collect();
    let widths: Vec<usize> = (0..12)
        .map(|c| body.iter().map(|r| r[c].len()).chain([CSV_HEADER[c].len()]).max().unwrap())
        .collect();
    let mut out = String::new();
    let line = |out: &mut String, cols: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cols.zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut out, &mut CSV_HEADER.iter().copied());
    for r in &body {
        line(&mut out, &mut r.iter().map(String::as_str));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::Mode;

    fn quick() -> BenchConfig {
        BenchConfig { instances_per_row: 3, timing: false, ..BenchConfig::default() }
    }

    #[test]
    fn degenerate_row() {
        let mut params = GenParams::new(3, 3, 1, 2, Mode::Normal, 4);
        params.cost_range = (5, 5);
        let report = run_benchmark(&[params], &quick());
        let row = &report.rows[0];
        assert_eq!(row.opt_count, 3);
        assert_eq!(row.value_mean, Some(0.0));
        assert_eq!(row.gap_mean, None);
        assert_eq!(row.k_effective_mean, 2.0);
    }

    #[test]
    fn failures_are_recorded() {
        let report = run_benchmark(&[GenParams::new(2, 2, 3, 0, Mode::Normal, 0)], &quick());
        assert_eq!(report.rows[0].failures, 3);
        assert_eq!(report.rows[0].opt_count, 0);
    }

    #[test]
    fn statistics() {
        assert_eq!(mean(&[1.0, 2.0, 3.0]), Some(2.0));
        assert_eq!(std_dev(&[1.0, 2.0, 3.0]), Some(1.0));
        assert_eq!(std_dev(&[4.0]), Some(0.0));
        assert_eq!(mean(&[]), None);
    }

    #[test]
    fn csv_layout() {
        let report = run_benchmark(&[GenParams::new(3, 4, 1, 2, Mode::Normal, 1)], &quick());
        let csv = to_csv(&report.rows).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("n,m,r,p,K,time_mean,time_std,iter_mean,iter_std,opt,value_mean,gap"));
        assert!(lines.next().unwrap().starts_with("12,3,4,1,2.00,,,"));
        assert!(to_text_table(&report.rows).lines().count() == 2);
    }
}
