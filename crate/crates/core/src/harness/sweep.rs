//! Fairness sweeps: solve each instance over a grid of `delta` and summarize.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::instance::{expected_outcomes, Instance};
use crate::oracle::exact::unconstrained_optimum;
use crate::solver::{solve, SolverConfig};

/// Mean and standard error over instances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub stderr: f64,
}

impl Stat {
    pub fn of(xs: &[f64]) -> Stat {
        let m = xs.len() as f64;
        if xs.is_empty() {
            return Stat { mean: f64::NAN, stderr: f64::NAN };
        }
        let mean = xs.iter().sum::<f64>() / m;
        if xs.len() == 1 {
            return Stat { mean, stderr: 0.0 };
        }
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
        Stat { mean, stderr: (var / m).sqrt() }
    }
}

/// Result of one (instance, delta) solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub instance: usize,
    pub delta: f64,
    pub objective: f64,
    pub unconstrained: f64,
    /// Relative revenue loss `1 - objective / unconstrained`.
    pub pof: f64,
    pub support: usize,
    pub outcomes: Vec<f64>,
    pub oracle_calls: usize,
    pub time: f64,
}

/// Summary of one `delta` across instances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub delta: f64,
    pub objective: Stat,
    pub unconstrained: Stat,
    pub pof: Stat,
    pub support: Stat,
    pub oracle_calls: Stat,
    pub time: Stat,
    /// Per-item mean outcome; empty when instances differ in size.
    pub outcomes: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub points: Vec<SweepPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub solver: SolverConfig,
    /// Record wall time per solve; off gives reproducible output.
    pub timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { solver: SolverConfig::default(), timing: true }
    }
}

pub fn delta_sweep(instances: &[Instance], deltas: &[f64], config: &SweepConfig) -> Result<SweepResult> {
    if instances.is_empty() || deltas.is_empty() {
        return input("sweep needs at least one instance and one delta");
    }
    if let Some(d) = deltas.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
        return input(format!("delta must be finite and nonnegative, got {d}"));
    }
    let base: Vec<f64> = instances.iter().map(|inst| unconstrained_optimum(inst).1).collect();
    let cells: Vec<(usize, usize)> = (0..instances.len()).flat_map(|i| (0..deltas.len()).map(move |d| (i, d))).collect();
    let points = cells
        .par_iter()
        .map(|&(i, d)| {
            let inst = instances[i].with_delta(deltas[d]);
            let rep = solve(&inst, &config.solver)?;
            let unconstrained = base[i];
            Ok(SweepPoint {
                instance: i,
                delta: deltas[d],
                objective: rep.objective,
                unconstrained,
                pof: if unconstrained > 0.0 { 1.0 - rep.objective / unconstrained } else { 0.0 },
                support: rep.support_size,
                outcomes: expected_outcomes(&inst, &rep.solution),
                oracle_calls: rep.oracle_calls,
                time: if config.timing { rep.wall_time_secs } else { 0.0 },
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let same_n = instances.iter().all(|x| x.n() == instances[0].n());
    let rows = deltas
        .iter()
        .enumerate()
        .map(|(d, &delta)| {
            let pts: Vec<&SweepPoint> = points.iter().skip(d).step_by(deltas.len()).collect();
            let col = |f: &dyn Fn(&SweepPoint) -> f64| Stat::of(&pts.iter().map(|p| f(p)).collect::<Vec<_>>());
            let outcomes = if same_n {
                (0..instances[0].n()).map(|j| pts.iter().map(|p| p.outcomes[j]).sum::<f64>() / pts.len() as f64).collect()
            } else {
                Vec::new()
            };
            SweepRow {
                delta,
                objective: col(&|p| p.objective),
                unconstrained: col(&|p| p.unconstrained),
                pof: col(&|p| p.pof),
                support: col(&|p| p.support as f64),
                oracle_calls: col(&|p| p.oracle_calls as f64),
                time: col(&|p| p.time),
                outcomes,
            }
        })
        .collect();
    Ok(SweepResult { rows, points })
}

impl SweepResult {
    /// One row per delta with mean values at full precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("delta,objective,unconstrained,pof,support,time\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.delta, r.objective.mean, r.unconstrained.mean, r.pof.mean, r.support.mean, r.time.mean
            );
        }
        out
    }

    /// Aligned text table, means with standard errors, 6 significant digits.
    pub fn to_table(&self) -> String {
        let head = ["delta", "objective", "loss %", "support", "oracle calls", "time (s)"];
        let mut lines = vec![head.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
        for r in &self.rows {
            let pm = |s: Stat, scale: f64| format!("{} ± {}", sig6(s.mean * scale), sig6(s.stderr * scale));
            lines.push(vec![
                sig6(r.delta),
                pm(r.objective, 1.0),
                pm(r.pof, 100.0),
                pm(r.support, 1.0),
                pm(r.oracle_calls, 1.0),
                pm(r.time, 1.0),
            ]);
        }
        let widths: Vec<usize> =
            (0..head.len()).map(|c| lines.iter().map(|l| l[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for l in &lines {
            let cells: Vec<String> = l.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
            let _ = writeln!(out, "{}", cells.join("  "));
        }
        out
    }
}

/// Formats with 6 significant digits, dropping trailing zeros.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = 5 - x.abs().log10().floor() as i32;
    if (0..=9).contains(&digits) {
        let s = format!("{:.*}", digits as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.5e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::OracleMethod;

    #[test]
    fn stats() {
        let s = Stat::of(&[1.0, 2.0, 3.0]);
        assert_eq!(s.mean, 2.0);
        assert!((s.stderr - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(Stat::of(&[4.0]).stderr, 0.0);
    }

    #[test]
    fn formatting() {
        assert_eq!(sig6(0.123456789), "0.123457");
        assert_eq!(sig6(1234.5678), "1234.57");
        assert_eq!(sig6(2.5), "2.5");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(1.0e-9), "1.00000e-9");
    }

    #[test]
    fn loosening_fairness_never_hurts() {
        let inst = Instance::visibility(2, 0.0, vec![1.0, 0.6, 0.3], vec![0.5, 1.0, 1.5], vec![0.5, 1.0, 1.5]).unwrap();
        let cfg = SweepConfig { solver: SolverConfig::default().with_oracle(OracleMethod::Brute), timing: false };
        let res = delta_sweep(&[inst], &[0.0, 0.5, 1.0, 100.0], &cfg).unwrap();
        let obj: Vec<f64> = res.rows.iter().map(|r| r.objective.mean).collect();
        assert!(obj.windows(2).all(|w| w[1] >= w[0] - 1e-9), "{obj:?}");
        // With a huge delta the fairness rows are slack.
        assert!(res.rows[3].pof.mean.abs() < 1e-9);
        assert!(res.to_csv().starts_with("delta,objective,unconstrained,pof,support,time\n0,"));
        assert_eq!(res.rows[0].time.mean, 0.0);
    }

    #[test]
    fn rejects_negative_delta() {
        let inst = Instance::visibility(1, 0.0, vec![1.0], vec![1.0], vec![1.0]).unwrap();
        assert!(delta_sweep(&[inst], &[-0.1], &SweepConfig::default()).is_err());
    }
}
