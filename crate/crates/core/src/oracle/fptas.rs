//! Fully polynomial scheme for visibility-fair instances with uniform revenue.
//!
//! Capacity is split where the set of items that fit with nonnegative
//! utility changes. Per piece, utilities are rounded up to integers and a DP
//! over (scaled utility, count) keeps the lightest set for every cell.

use super::partition::{Interval, WellBehavingPartition};
use super::{Collector, KnapsackView, OracleResult};
use crate::error::{input, Result};
use crate::instance::{post_fairness, DualMatrix, Instance, PostFairness};

/// `ceil(K^2 / eps) + K`
pub fn chi_max(k: usize, epsilon: f64) -> usize {
    ((k * k) as f64 / epsilon).ceil() as usize + k
}

/// Interior capacities where some item starts to fit or changes utility sign.
pub fn eligibility_partition(view: &KnapsackView) -> WellBehavingPartition {
    let mut pts: Vec<f64> = view.w.clone();
    for i in 0..view.len() {
        if view.c[i] > 0.0 {
            pts.push(view.r[i] * view.w[i] / view.c[i] - 1.0);
        }
    }
    WellBehavingPartition::from_points(pts, view.w_cap())
}

pub fn fptas(inst: &Instance, z: &DualMatrix, epsilon: f64) -> Result<OracleResult> {
    fptas_with(inst, &post_fairness(inst, z), epsilon, false)
}

#[derive(Clone)]
struct Cell {
    weight: f64,
    set: Vec<usize>,
}

pub(crate) fn fptas_with(inst: &Instance, pf: &PostFairness, epsilon: f64, collect: bool) -> Result<OracleResult> {
    if !(inst.is_visibility_fair() && inst.is_uniform_revenue()) {
        return input("FPTAS needs a visibility-fair instance with uniform revenues");
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return input(format!("epsilon = {epsilon} must lie in (0, 1)"));
    }
    let view = KnapsackView::new(inst, pf);
    let mut col = Collector::new(&view, collect);
    let k = view.k;
    let top = chi_max(k, epsilon);
    let part = eligibility_partition(&view);
    // Shared weights are merged by the partition; keep boundary items eligible.
    let fit_tol = 1e-10;

    // Items weighing exactly W_cap only fit at the closing point, which no
    // interval starts at; give it a zero-width interval of its own.
    let closing = (part.w_cap > 0.0).then_some(Interval { lo: part.w_cap, hi: part.w_cap });

    for iv in part.intervals.iter().chain(closing.as_ref()) {
        let mid = iv.mid();
        let eligible: Vec<usize> = (0..view.len())
            .filter(|&i| view.w[i] <= iv.lo + fit_tol && view.utility(i, mid) >= 0.0)
            .collect();
        let big_u = eligible.iter().map(|&i| view.utility(i, iv.lo)).fold(f64::NEG_INFINITY, f64::max);
        if eligible.is_empty() || big_u.is_nan() || big_u <= 0.0 {
            continue;
        }

        // table[chi][kappa]; None marks an unreachable cell.
        let mut table: Vec<Vec<Option<Cell>>> = vec![vec![None; k + 1]; top + 1];
        table[0][0] = Some(Cell { weight: 0.0, set: Vec::new() });
        for &i in &eligible {
            let scaled = (view.utility(i, iv.lo).max(0.0) * k as f64 / (big_u * epsilon)).ceil() as usize;
            for kappa in (1..=k).rev() {
                for chi in (scaled..=top).rev() {
                    let Some(prev) = &table[chi - scaled][kappa - 1] else { continue };
                    let w = prev.weight + view.w[i];
                    if table[chi][kappa].as_ref().is_none_or(|c| w < c.weight) {
                        let mut set = prev.set.clone();
                        set.push(i);
                        table[chi][kappa] = Some(Cell { weight: w, set });
                    }
                }
            }
        }
        for row in &table {
            for cell in row.iter().flatten() {
                if cell.weight <= iv.hi {
                    col.offer(&cell.set);
                }
            }
        }
    }
    col.stats.intervals = part.intervals.len();
    Ok(col.finish(pf, &inst.w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_max_example() {
        assert_eq!(chi_max(2, 0.5), 10);
    }

    #[test]
    fn top_item_scales_to_k_over_eps() {
        let (k, eps, u) = (3usize, 0.2, 0.37);
        assert_eq!((u * k as f64 / (u * eps)).ceil() as usize, (k as f64 / eps).ceil() as usize);
    }

    #[test]
    fn requires_uniform_visibility() {
        let inst = Instance::market_share(1, 0.0, vec![1.0, 1.0], vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        assert!(fptas(&inst, &DualMatrix::zeros(2), 0.2).is_err());
    }

    #[test]
    fn zero_dual_finds_a_good_set() {
        let inst = Instance::visibility(2, 0.0, vec![1.0; 3], vec![0.5, 1.0, 2.0], vec![1.0; 3]).unwrap();
        let res = fptas(&inst, &DualMatrix::zeros(3), 0.2).unwrap();
        // Best pair is {1, 2} with revenue 3/4.
        assert!(res.value >= 0.8 * 0.75);
    }

    #[test]
    fn item_as_heavy_as_the_cap_is_considered() {
        // K = 1 makes W_cap the heaviest weight, which fits only at the cap itself.
        let inst = Instance::visibility(1, 0.0, vec![1.0; 2], vec![0.1, 3.0], vec![1.0; 2]).unwrap();
        let res = fptas(&inst, &DualMatrix::zeros(2), 0.2).unwrap();
        assert_eq!(res.set.items(), &[1]);
        assert!((res.value - 0.75).abs() < 1e-12);
    }
}
