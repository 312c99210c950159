//! Exact oracle when outcomes carry no fixed part (`b = 0`).
//!
//! Then `rev_cost(S) = sum r~_i w_i / (1 + w(S))`, a capacitated MNL revenue.
//! Its optimum `lam*` is the root of `g(lam) = max_{|S|<=K} sum w_i (r~_i - lam) - lam`,
//! and the maximizing set at the root is optimal.

use super::{Collector, KnapsackView, OracleResult};
use crate::error::{input, Result};
use crate::instance::{post_fairness, DualMatrix, Instance, PostFairness};

/// Items with the `k` largest positive values of `w_i (r_i - lam)`, and their sum.
fn top_k(view: &KnapsackView, lam: f64) -> (Vec<usize>, f64) {
    let mut gains: Vec<(f64, usize)> = (0..view.len())
        .map(|i| (view.w[i] * (view.r[i] - lam), i))
        .filter(|(g, _)| *g > 0.0)
        .collect();
    gains.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    gains.truncate(view.k);
    let total = gains.iter().map(|g| g.0).sum();
    (gains.into_iter().map(|g| g.1).collect(), total)
}

/// Root of `g` by bisection; `g` is strictly decreasing with `g(0) >= 0`.
pub fn fixed_point(view: &KnapsackView) -> f64 {
    let g = |lam: f64| top_k(view, lam).1 - lam;
    let mut lo = 0.0;
    let mut hi = view.r.iter().cloned().fold(0.0, f64::max);
    if g(lo) <= 0.0 {
        return 0.0;
    }
    while hi - lo > 1e-12 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn exact_oracle(inst: &Instance, z: &DualMatrix) -> Result<OracleResult> {
    exact_with(inst, &post_fairness(inst, z), false)
}

pub(crate) fn exact_with(inst: &Instance, pf: &PostFairness, collect: bool) -> Result<OracleResult> {
    // The fixed-point search assumes no per-item fixed cost, which holds when b = 0 or z = 0.
    if pf.fixed_cost.iter().any(|&c| c != 0.0) {
        return input("exact oracle needs b = 0 for every item");
    }
    let view = KnapsackView::new(inst, pf);
    let mut col = Collector::new(&view, collect);
    let lam = fixed_point(&view);
    let step = 1e-12 * lam.max(1.0);
    for probe in [lam - step, lam, lam + step] {
        col.offer(&top_k(&view, probe.max(0.0)).0);
    }
    col.stats.intervals = 1;
    Ok(col.finish(pf, &inst.w))
}

/// Best revenue over `|S| <= K` ignoring fairness.
pub fn unconstrained_optimum(inst: &Instance) -> (crate::instance::Assortment, f64) {
    let n = inst.n();
    let view = KnapsackView::from_parts(inst.r.clone(), vec![0.0; n], inst.w.clone(), inst.k);
    let mut col = Collector::new(&view, false);
    let lam = fixed_point(&view);
    let step = 1e-12 * lam.max(1.0);
    for probe in [lam - step, lam, lam + step] {
        col.offer(&top_k(&view, probe.max(0.0)).0);
    }
    let pf = PostFairness { cost: vec![0.0; n], revenue: inst.r.clone(), fixed_cost: vec![0.0; n] };
    let res = col.finish(&pf, &inst.w);
    (res.set, res.value)
}
