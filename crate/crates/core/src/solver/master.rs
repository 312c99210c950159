use crate::error::{Error, Result};
use crate::instance::{outcome_in, rev, Assortment, DistributionSolution, DualMatrix, DualPoint, Instance};
use crate::lp::{lp_solve, lp_solve_from, LpProblem, LpStatus, RowSense, WarmStart};

/// Coefficient of `p(S)` in the fairness row of ordered pair `(i, j)`, for every pair.
///
/// Rows are `q_j O_i - q_i O_j <= delta q_i q_j`, ordered by `i` then `j`.
pub(crate) fn fairness_column(inst: &Instance, s: &Assortment) -> Vec<f64> {
    let n = inst.n();
    let ws = inst.weight(s);
    let mut o = vec![0.0; n];
    for i in s.iter() {
        o[i] = outcome_in(inst, i, ws);
    }
    let mut col = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                col.push(inst.q[j] * o[i] - inst.q[i] * o[j]);
            }
        }
    }
    col
}

/// Solves the fairness LP with `p(S) = 0` outside `columns`.
///
/// Returns the policy and the duals: `z_ij` from the fairness rows and `rho`
/// from the probability row, both nonnegative.
pub fn restricted_master(inst: &Instance, columns: &[Assortment]) -> Result<(DistributionSolution, DualPoint)> {
    master_from(inst, columns, None).map(|(p, dual, _)| (p, dual))
}

/// [`restricted_master`] started from an earlier basis, which stays feasible
/// when columns are only appended. Also returns the final basis.
pub(crate) fn master_from(
    inst: &Instance,
    columns: &[Assortment],
    start: Option<&WarmStart>,
) -> Result<(DistributionSolution, DualPoint, WarmStart)> {
    if columns.is_empty() {
        return Err(Error::Input("restricted master needs at least one column".into()));
    }
    if let Some(s) = columns.iter().find(|s| s.len() > inst.k) {
        return Err(Error::Input(format!("column {s} exceeds K = {}", inst.k)));
    }
    let n = inst.n();
    let m = n * (n - 1) + 1;
    let d = columns.len();
    let c: Vec<f64> = columns.iter().map(|s| rev(inst, s)).collect();
    let mut lp = LpProblem::new(c);
    lp.a = vec![0.0; m * d];
    for (k, s) in columns.iter().enumerate() {
        for (row, v) in fairness_column(inst, s).into_iter().enumerate() {
            lp.a[row * d + k] = v;
        }
        lp.a[(m - 1) * d + k] = 1.0;
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                lp.senses.push(RowSense::Le);
                lp.rhs.push(inst.delta * inst.q[i] * inst.q[j]);
            }
        }
    }
    lp.senses.push(RowSense::Le);
    lp.rhs.push(1.0);

    let sol = match start {
        Some(ws) => lp_solve_from(&lp, 1e-9, ws)?,
        None => lp_solve(&lp, 1e-9)?,
    };
    if sol.status != LpStatus::Optimal {
        return Err(Error::Internal(format!("fairness LP reported {:?}", sol.status)));
    }
    let p = DistributionSolution::from_weights(inst, columns.iter().cloned().zip(sol.x.iter().copied()));
    let mut z = DualMatrix::zeros(n);
    let mut row = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                z.set(i, j, sol.duals[row].max(0.0));
                row += 1;
            }
        }
    }
    let rho = sol.duals[m - 1].max(0.0);
    Ok((p, DualPoint { z, rho }, sol.warm_start()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fairness_check;

    fn singletons(n: usize) -> Vec<Assortment> {
        (0..n).map(Assortment::singleton).collect()
    }

    #[test]
    fn large_delta_picks_best_singleton() {
        let inst = Instance::visibility(1, 1e3, vec![1.0, 0.6, 0.2], vec![1.0, 3.0, 0.5], vec![1.0; 3]).unwrap();
        let (p, dual) = restricted_master(&inst, &singletons(3)).unwrap();
        let best = (0..3).map(|i| rev(&inst, &Assortment::singleton(i))).fold(0.0, f64::max);
        assert_eq!(p.support.len(), 1);
        assert!((p.objective - best).abs() < 1e-12);
        assert!((dual.rho - best).abs() < 1e-9);
    }

    #[test]
    fn symmetric_pair_splits_evenly() {
        let inst = Instance::visibility(1, 0.0, vec![1.0, 1.0], vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        let (p, dual) = restricted_master(&inst, &singletons(2)).unwrap();
        assert!(p.support.iter().all(|e| (e.p - 0.5).abs() < 1e-12));
        assert!(fairness_check(&inst, &p, 1e-9).pass);
        assert!(dual.z.as_slice().iter().all(|&v| v >= 0.0));
    }
}
