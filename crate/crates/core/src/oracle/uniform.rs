//! 1/2-approximation for visibility-fair instances with one common revenue.
//!
//! With equal revenues the ratio ranking and the swap slopes do not depend on
//! the capacity, so no pre-partition is needed.

use super::{Collector, KnapsackView, OracleResult};
use crate::error::{input, Error, Result};
use crate::instance::{post_fairness, DualMatrix, Instance, PostFairness};

pub fn uniform_half_approx(inst: &Instance, z: &DualMatrix) -> Result<OracleResult> {
    uniform_half_with(inst, &post_fairness(inst, z), false)
}

pub(crate) fn uniform_half_with(inst: &Instance, pf: &PostFairness, collect: bool) -> Result<OracleResult> {
    if !(inst.is_visibility_fair() && inst.is_uniform_revenue()) {
        return input("uniform 1/2-approximation needs a visibility-fair instance with uniform revenues");
    }
    let r = inst.r[0];
    let view = KnapsackView::new(inst, pf);
    let mut col = Collector::new(&view, collect);
    let n = view.len();
    let k = view.k;
    for j in 0..n {
        col.offer(&[j]);
    }
    if n == 0 {
        return Ok(col.finish(pf, &inst.w));
    }

    // Highest utility-to-weight ratio first: smallest c~/w.
    let mut rank: Vec<usize> = (0..n).collect();
    let cw = |i: usize| view.c[i] / view.w[i];
    rank.sort_by(|&x, &y| cw(x).total_cmp(&cw(y)).then(x.cmp(&y)));
    let d = k.min(n);
    for j in 1..=d {
        col.offer(&rank[..j]);
    }
    let w_th = view.weight_of(&rank[..d]);
    if d < k {
        let positive: Vec<usize> = (0..n).filter(|&i| view.utility(i, w_th) > 0.0).collect();
        col.offer(&positive);
        return Ok(col.finish(pf, &inst.w));
    }
    if view.utility(rank[d - 1], w_th) < 0.0 {
        return Ok(col.finish(pf, &inst.w));
    }

    let mut p1: Vec<usize> = rank[..d].to_vec();
    let mut in_p1 = vec![false; n];
    p1.iter().for_each(|&i| in_p1[i] = true);
    let mut w_next = w_th;
    let cap = 4 * n * k;
    let mut swaps = 0;
    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        let mut outs = p1.clone();
        outs.sort_unstable();
        for &i in &outs {
            for (j, &taken) in in_p1.iter().enumerate() {
                if taken || view.w[i] >= view.w[j] {
                    continue;
                }
                let slope = (view.c[j] - view.c[i]) / (view.w[j] - view.w[i]);
                if best.is_none_or(|(_, _, s)| slope < s) {
                    best = Some((i, j, slope));
                }
            }
        }
        let Some((i, j, slope)) = best else { break };
        w_next += view.w[j] - view.w[i];
        let pos = p1.iter().position(|&x| x == i).expect("i is in P1");
        p1[pos] = j;
        in_p1[i] = false;
        in_p1[j] = true;
        if slope <= r / (1.0 + w_next) {
            col.offer(&p1);
        } else {
            break;
        }
        swaps += 1;
        if swaps > cap {
            return Err(Error::Numerical(format!("swap loop exceeded {cap} swaps")));
        }
    }
    col.stats.intervals = 1;
    col.stats.max_swaps = swaps;
    Ok(col.finish(pf, &inst.w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Assortment;

    #[test]
    fn single_item() {
        let inst = Instance::visibility(1, 0.0, vec![1.0], vec![1.0], vec![1.0]).unwrap();
        let res = uniform_half_approx(&inst, &DualMatrix::zeros(1)).unwrap();
        assert_eq!(res.set, Assortment::singleton(0));
        assert!((res.value - 0.5).abs() < 1e-15);

        let pf = PostFairness { cost: vec![0.8], revenue: vec![1.0], fixed_cost: vec![0.8] };
        let res = uniform_half_with(&inst, &pf, false).unwrap();
        assert_eq!(res.set, Assortment::empty());
    }

    #[test]
    fn rejects_mixed_revenues() {
        let inst = Instance::visibility(1, 0.0, vec![1.0, 0.5], vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        assert!(uniform_half_approx(&inst, &DualMatrix::zeros(2)).is_err());
    }
}
