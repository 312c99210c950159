//! Ellipsoid method on the dual `min rho + delta sum z_ij q_i q_j`.
//!
//! The iterate lives in dimension `n^2 + 1`: the full `z` matrix, row-major,
//! followed by `rho`. Every step cuts through the center, either on the
//! objective, a sign constraint, or a dual constraint the oracle reports as
//! violated. Sets behind the latter cuts become the columns of the final primal.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::master::fairness_column;
use super::{restricted_master, SolveReport, SolverConfig};
use crate::error::{Error, Result};
use crate::instance::{post_fairness, Assortment, DualMatrix, DualPoint, Instance};
use crate::oracle::{oracle_with, OracleOptions};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub incumbent: f64,
    pub log_det: f64,
}

const PD_CHECK_EVERY: usize = 100;

fn log_det(d: &DMatrix<f64>) -> Option<f64> {
    let ch = d.clone().cholesky()?;
    Some(2.0 * ch.l().diagonal().iter().map(|x| x.ln()).sum::<f64>())
}

pub fn ellipsoid_solve(inst: &Instance, config: &SolverConfig) -> Result<SolveReport> {
    config.oracle.check(inst)?;
    let n = inst.n();
    let dim = n * n + 1;
    let rho_at = n * n;
    let nf = dim as f64;

    let mut cost = DVector::zeros(dim);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                cost[i * n + j] = inst.delta * inst.q[i] * inst.q[j];
            }
        }
    }
    cost[rho_at] = 1.0;

    let r_bar = inst.r_max();
    let radius = config
        .ellipsoid
        .initial_radius
        .unwrap_or(n as f64 * r_bar.max(inst.delta * inst.q_max().powi(2)).max(1.0));
    let mut center = DVector::zeros(dim);
    center[rho_at] = r_bar;
    let mut shape = DMatrix::identity(dim, dim) * (radius * radius);

    // (0, r_max) is dual feasible since every set earns less than r_max.
    let mut best = center.clone();
    let mut best_obj = r_bar;
    let mut columns: BTreeSet<Assortment> = BTreeSet::new();
    let mut generated = Vec::new();
    let mut calls = 0;
    let mut trace = config.ellipsoid.trace.then(Vec::new);
    let mut iterations = 0;

    for t in 0..config.ellipsoid.t_max {
        iterations = t + 1;
        let obj = cost.dot(&center);
        let a: DVector<f64> = if obj >= best_obj {
            -cost.clone()
        } else if center[rho_at] < 0.0 {
            unit(dim, rho_at)
        } else if let Some(k) = (0..n * n).find(|&k| center[k] < 0.0) {
            unit(dim, k)
        } else {
            let z = DualMatrix::from_flat(n, center.as_slice()[..n * n].to_vec())?;
            let res = oracle_with(inst, &post_fairness(inst, &z), config.oracle, OracleOptions::default())?;
            calls += 1;
            if res.value > center[rho_at] && !res.set.is_empty() {
                let mut a = DVector::zeros(dim);
                let coeffs = fairness_column(inst, &res.set);
                let mut row = 0;
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            a[i * n + j] = coeffs[row];
                            row += 1;
                        }
                    }
                }
                a[rho_at] = 1.0;
                if columns.insert(res.set.clone()) {
                    generated.push(res.set);
                }
                a
            } else {
                best = center.clone();
                best_obj = obj;
                -cost.clone()
            }
        };

        let da = &shape * &a;
        let ada = a.dot(&da);
        // Once the width along the cut reaches rounding level the ellipsoid has collapsed
        // onto the optimal face; a clearly negative a'Da means the shape itself is broken.
        let floor = (1e-13 * radius).powi(2) * a.norm_squared();
        if !ada.is_finite() || ada < -1e-8 * radius * radius * a.norm_squared() {
            return Err(Error::Numerical(format!("ellipsoid lost positive definiteness at iteration {t} (a'Da = {ada:e})")));
        }
        if ada <= floor {
            break;
        }
        let width = ada.sqrt();
        center += &da / ((nf + 1.0) * width);
        shape = (&shape - (&da * da.transpose()) * (2.0 / ((nf + 1.0) * ada))) * (nf * nf / (nf * nf - 1.0));
        shape = (&shape + shape.transpose()) * 0.5;

        // A shape that fails Cholesky has collapsed to rounding level along some
        // direction: treat it like a vanishing cut width and keep the incumbent,
        // which only ever moves to centers the oracle has certified.
        if let Some(tr) = trace.as_mut() {
            let Some(ld) = log_det(&shape) else { break };
            tr.push(TracePoint { incumbent: best_obj, log_det: ld });
        } else if (t + 1) % PD_CHECK_EVERY == 0 && shape.clone().cholesky().is_none() {
            break;
        }
    }

    let mut all: Vec<Assortment> = (0..n).map(Assortment::singleton).collect();
    all.extend(columns.iter().filter(|s| s.len() > 1).cloned());
    let (sol, _) = restricted_master(inst, &all)?;
    let z = DualMatrix::from_flat(n, best.as_slice()[..n * n].iter().map(|v| v.max(0.0)).collect())?;
    let dual = DualPoint { z, rho: best[rho_at].max(0.0) };
    let mut report = SolveReport::new(inst, config, sol, dual, iterations, calls, generated);
    report.trace = trace;
    report.iteration_bound = config
        .ellipsoid
        .q_max
        .map(|q| (n as f64).powi(12) * ((n as f64) * q as f64).ln().max(1.0));
    Ok(report)
}

fn unit(dim: usize, k: usize) -> DVector<f64> {
    let mut e = DVector::zeros(dim);
    e[k] = 1.0;
    e
}
