use std::collections::BTreeSet;

use super::master::master_from;
use super::{SolveReport, SolverConfig};
use crate::error::{Error, Result};
use crate::instance::{post_fairness, Assortment, Instance};
use crate::oracle::{oracle_with, OracleOptions};

/// Column generation starting from the singletons.
///
/// Each round solves the restricted master, prices at its duals with the
/// configured oracle and adds the returned set if its reduced cost is positive.
pub fn column_generation(inst: &Instance, config: &SolverConfig) -> Result<SolveReport> {
    config.oracle.check(inst)?;
    let n = inst.n();
    let cap = config.max_iterations.unwrap_or(10 * n * n).max(1);
    let mut columns: Vec<Assortment> = (0..n).map(Assortment::singleton).collect();
    let mut known: BTreeSet<Assortment> = columns.iter().cloned().collect();
    let mut generated = Vec::new();
    let mut history: Vec<f64> = Vec::new();
    let mut calls = 0;
    let mut basis = None;

    for iter in 1..=cap {
        let (sol, dual, ws) = master_from(inst, &columns, basis.as_ref())?;
        basis = Some(ws);
        history.push(sol.objective);
        let pf = post_fairness(inst, &dual.z);
        let res = oracle_with(inst, &pf, config.oracle, OracleOptions::default())?;
        calls += 1;

        let improving = res.value > dual.rho + config.red_cost_tol && !res.set.is_empty();
        let stalled = history.len() > config.stall_window
            && sol.objective - history[history.len() - 1 - config.stall_window] < config.stall_tol;
        if !improving || !known.insert(res.set.clone()) || stalled {
            return Ok(SolveReport::new(inst, config, sol, dual, iter, calls, generated));
        }
        columns.push(res.set.clone());
        generated.push(res.set);
    }
    Err(Error::Convergence(format!("column generation hit its cap of {cap} iterations")))
}
