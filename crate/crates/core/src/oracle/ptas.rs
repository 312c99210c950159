//! Polynomial-time approximation scheme: guess the `l` highest-utility items,
//! then complete the set with the modified 1/2-approximation.

use itertools::Itertools;

use super::half::{smaller_items, HalfRun};
use super::partition::breakpoints;
use super::{Collector, KnapsackView, OracleResult};
use crate::error::{input, Result};
use crate::instance::{post_fairness, DualMatrix, Instance, PostFairness};

/// Size of the guessed prefix: `min(ceil(1/eps - 2), K)`, floored at 1.
pub fn guess_size(epsilon: f64, k: usize) -> usize {
    let raw = (1.0 / epsilon - 2.0 - 1e-9).ceil();
    (raw.max(1.0) as usize).min(k).max(1)
}

pub fn ptas(inst: &Instance, z: &DualMatrix, epsilon: f64) -> Result<OracleResult> {
    ptas_with(inst, &post_fairness(inst, z), epsilon, false)
}

pub(crate) fn ptas_with(inst: &Instance, pf: &PostFairness, epsilon: f64, collect: bool) -> Result<OracleResult> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return input(format!("epsilon = {epsilon} must lie in (0, 1)"));
    }
    let view = KnapsackView::new(inst, pf);
    let mut col = Collector::new(&view, collect);
    let n = view.len();
    let ell = guess_size(epsilon, view.k);

    // Small sets are the same for every interval; each fits below W_cap.
    for size in 1..ell.min(n + 1) {
        for small in (0..n).combinations(size) {
            col.offer(&small);
        }
    }

    let part = breakpoints(&view);
    let mut buf = Vec::with_capacity(view.k);
    let mut max_swaps = 0;
    for iv in &part.intervals {
        for base in (0..n).combinations(ell) {
            if view.weight_of(&base) > iv.hi {
                continue;
            }
            let small = smaller_items(&view, &base, *iv);
            let run = HalfRun {
                view: &view,
                pool: &small,
                budget: view.k - ell,
                offset: view.weight_of(&base),
                prefix_at_threshold: true,
            };
            let swaps = run.run(*iv, &mut |s| {
                buf.clear();
                buf.extend_from_slice(&base);
                buf.extend_from_slice(s);
                col.offer(&buf);
            })?;
            max_swaps = max_swaps.max(swaps);
        }
    }
    col.stats.intervals = part.intervals.len();
    col.stats.max_swaps = max_swaps;
    Ok(col.finish(pf, &inst.w))
}
