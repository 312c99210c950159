//! The 1/2-approximation: per interval, prefixes of the ratio ranking cover
//! small capacities and a chain of single swaps covers the rest.

use super::partition::{breakpoints, Interval};
use super::{Collector, KnapsackView, OracleResult};
use crate::error::{Error, Result};
use crate::instance::{post_fairness, DualMatrix, Instance, PostFairness};
use crate::lp::{kp_relax_solve, Profile};

/// One run of the swap procedure over `pool`, with `base` already in the knapsack.
///
/// Candidate sets are reported through `sink` as pool items only; the caller
/// adds `base`. Returns the number of swaps made.
pub(crate) struct HalfRun<'a> {
    pub view: &'a KnapsackView,
    pub pool: &'a [usize],
    pub budget: usize,
    pub offset: f64,
    /// Initialize from the prefix set when `lo == W_TH` (the variant used inside the PTAS).
    pub prefix_at_threshold: bool,
}

impl HalfRun<'_> {
    pub fn run(&self, iv: Interval, sink: &mut dyn FnMut(&[usize])) -> Result<usize> {
        let v = self.view;
        sink(&[]);
        if self.budget == 0 {
            return Ok(0);
        }
        for &j in self.pool {
            sink(&[j]);
        }
        if self.pool.is_empty() {
            return Ok(0);
        }

        let mid = iv.mid();
        let mut rank: Vec<usize> = self.pool.to_vec();
        let ratio = |i: usize| v.utility(i, mid) / v.w[i];
        rank.sort_by(|&x, &y| ratio(y).total_cmp(&ratio(x)).then(x.cmp(&y)));
        let d = self.budget.min(rank.len());
        let heads = &rank[..d];
        let w_th = v.weight_of(heads) + self.offset;

        if d < self.budget {
            // The cardinality bound never binds, so prefixes and the positive part cover every capacity.
            if iv.lo < w_th {
                (1..=d).for_each(|j| sink(&rank[..j]));
            }
            let positive: Vec<usize> = self.pool.iter().copied().filter(|&i| v.utility(i, mid) > 0.0).collect();
            sink(&positive);
            return Ok(0);
        }

        if iv.lo < w_th {
            (1..=d).for_each(|j| sink(&rank[..j]));
            if v.utility(rank[d - 1], w_th) < 0.0 {
                return Ok(0);
            }
        }
        if iv.hi <= w_th {
            return Ok(0);
        }

        let from_prefix = if self.prefix_at_threshold { iv.lo <= w_th } else { iv.lo < w_th };
        let mut p1: Vec<usize>;
        let mut w_next;
        if from_prefix {
            p1 = heads.to_vec();
            w_next = w_th;
            sink(&p1);
        } else {
            let utils: Vec<f64> = self.pool.iter().map(|&i| v.utility(i, iv.lo)).collect();
            let weights: Vec<f64> = self.pool.iter().map(|&i| v.w[i]).collect();
            let sol = kp_relax_solve(&utils, &weights, iv.lo - self.offset, self.budget)?;
            let prof = Profile::from_solution(&sol.x, &weights, 1e-9)?;
            p1 = prof.p1.iter().map(|&k| self.pool[k]).collect();
            let (fi, fj) = prof.fractional;
            let fi = fi.map(|k| self.pool[k]);
            let fj = fj.map(|k| self.pool[k]);
            let with = |extra: Option<usize>| {
                let mut s = p1.clone();
                s.extend(extra);
                s
            };
            let si = with(fi);
            let sj = with(fj);
            sink(&si);
            sink(&sj);
            p1 = sj;
            w_next = v.weight_of(&p1) + self.offset;
        }

        let cap = 4 * v.len().max(1) * v.k.max(1);
        let mut in_p1 = vec![false; v.len()];
        p1.iter().for_each(|&i| in_p1[i] = true);
        let mut swaps = 0;
        loop {
            let mut best: Option<(usize, usize, f64)> = None;
            let mut outs: Vec<usize> = p1.clone();
            outs.sort_unstable();
            for &i in &outs {
                let ui = v.utility(i, w_next);
                for &j in self.pool {
                    if in_p1[j] || v.w[i] >= v.w[j] {
                        continue;
                    }
                    let slope = (v.utility(j, w_next) - ui) / (v.w[j] - v.w[i]);
                    if best.is_none_or(|(_, _, s)| slope > s) {
                        best = Some((i, j, slope));
                    }
                }
            }
            let Some((i, j, _)) = best else { break };
            if w_next >= iv.hi || v.utility(i, w_next) > v.utility(j, w_next) {
                break;
            }
            let pos = p1.iter().position(|&x| x == i).expect("i is in P1");
            p1[pos] = j;
            in_p1[i] = false;
            in_p1[j] = true;
            w_next += v.w[j] - v.w[i];
            sink(&p1);
            swaps += 1;
            if swaps > cap {
                return Err(Error::Numerical(format!("swap loop exceeded {cap} swaps")));
            }
        }
        Ok(swaps)
    }
}

/// Candidate collection of one interval for the whole item set.
pub fn half_approx_interval(view: &KnapsackView, iv: Interval) -> Result<(Vec<Vec<usize>>, usize)> {
    let pool: Vec<usize> = (0..view.len()).collect();
    let run = HalfRun { view, pool: &pool, budget: view.k, offset: 0.0, prefix_at_threshold: false };
    let mut out = Vec::new();
    let swaps = run.run(iv, &mut |s| {
        let mut s = s.to_vec();
        s.sort_unstable();
        out.push(s);
    })?;
    Ok((out, swaps))
}

/// Items outside `base` whose utility on the interval never exceeds any item of `base`.
pub fn smaller_items(view: &KnapsackView, base: &[usize], iv: Interval) -> Vec<usize> {
    let mid = iv.mid();
    let floor = base.iter().map(|&i| view.utility(i, mid)).fold(f64::INFINITY, f64::min);
    (0..view.len()).filter(|i| !base.contains(i) && view.utility(*i, mid) <= floor).collect()
}

/// Modified run for the PTAS: items from `small`, budget `K - |base|`, threshold shifted by `w(base)`.
/// Returned sets exclude `base`.
pub fn modified_half_approx(
    base: &[usize],
    small: &[usize],
    view: &KnapsackView,
    iv: Interval,
) -> Result<Vec<Vec<usize>>> {
    let run = HalfRun {
        view,
        pool: small,
        budget: view.k.saturating_sub(base.len()),
        offset: view.weight_of(base),
        prefix_at_threshold: true,
    };
    let mut out = Vec::new();
    run.run(iv, &mut |s| {
        let mut s = s.to_vec();
        s.sort_unstable();
        if !out.contains(&s) {
            out.push(s);
        }
    })?;
    Ok(out)
}

pub fn half_approx(inst: &Instance, z: &DualMatrix) -> Result<OracleResult> {
    half_approx_with(inst, &post_fairness(inst, z), false)
}

pub(crate) fn half_approx_with(inst: &Instance, pf: &PostFairness, collect: bool) -> Result<OracleResult> {
    let view = KnapsackView::new(inst, pf);
    let mut col = Collector::new(&view, collect);
    let part = breakpoints(&view);
    let pool: Vec<usize> = (0..view.len()).collect();
    let run = HalfRun { view: &view, pool: &pool, budget: view.k, offset: 0.0, prefix_at_threshold: false };
    let mut max_swaps = 0;
    for iv in &part.intervals {
        let swaps = run.run(*iv, &mut |s| col.offer(s))?;
        max_swaps = max_swaps.max(swaps);
    }
    col.stats.intervals = part.intervals.len();
    col.stats.max_swaps = max_swaps;
    Ok(col.finish(pf, &inst.w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Assortment;

    #[test]
    fn two_item_interval() {
        let view = KnapsackView::from_parts(vec![1.0, 1.0], vec![0.0, 0.0], vec![1.0, 2.0], 2);
        let (sets, _) = half_approx_interval(&view, Interval { lo: 0.0, hi: 3.0 }).unwrap();
        assert!(sets.contains(&vec![0]));
        assert!(sets.contains(&vec![0, 1]));
        let best = sets.iter().map(|s| view.value(s)).fold(0.0, f64::max);
        assert!((best - 0.75).abs() < 1e-12);
    }

    #[test]
    fn empty_is_returned_when_nothing_helps() {
        let inst = Instance::market_share(2, 0.0, vec![1.0, 1.0], vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        let pf = PostFairness { cost: vec![2.0, 2.0], revenue: vec![-1.0, -1.0], fixed_cost: vec![0.0, 0.0] };
        let res = half_approx_with(&inst, &pf, false).unwrap();
        assert_eq!(res.set, Assortment::empty());
        assert_eq!(res.value, 0.0);
    }

    #[test]
    fn modified_run_with_no_room() {
        let view = KnapsackView::from_parts(vec![1.0; 3], vec![0.0; 3], vec![1.0, 2.0, 3.0], 2);
        let iv = Interval { lo: 0.0, hi: 6.0 };
        assert_eq!(modified_half_approx(&[0, 1], &[2], &view, iv).unwrap(), vec![Vec::<usize>::new()]);
        assert_eq!(modified_half_approx(&[0], &[], &view, iv).unwrap(), vec![Vec::<usize>::new()]);
    }
}
