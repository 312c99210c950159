//! Exhaustive reference solvers for small instances.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::instance::{post_fairness, Assortment, DistributionSolution, DualMatrix, Instance, PostFairness};
use crate::oracle::{Collector, KnapsackView, OracleResult};

pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

/// Number of sets with `1 <= |S| <= k`, plus the empty set.
pub fn count_sets(n: usize, k: usize) -> u128 {
    let mut total: u128 = 1;
    let mut binom: u128 = 1;
    for j in 1..=k.min(n) {
        binom = binom * (n - j + 1) as u128 / j as u128;
        total += binom;
    }
    total
}

fn guard(n: usize, k: usize, cap: u64) -> Result<()> {
    let count = count_sets(n, k);
    if count > cap as u128 {
        return Err(Error::Capacity { count, cap });
    }
    Ok(())
}

/// Every nonempty set of at most `k` of `n` items, in lexicographic order by size.
pub fn all_sets(n: usize, k: usize) -> impl Iterator<Item = Assortment> {
    (1..=k.min(n)).flat_map(move |size| (0..n).combinations(size).map(|c| Assortment::new(c).expect("distinct")))
}

/// Maximizes `rev_cost(S, z)` over all `|S| <= K` by enumeration.
pub fn brute_force_subdual(inst: &Instance, z: &DualMatrix) -> Result<OracleResult> {
    brute_force_subdual_capped(inst, &post_fairness(inst, z), DEFAULT_ENUM_CAP, false)
}

pub(crate) fn brute_force_subdual_capped(
    inst: &Instance,
    pf: &PostFairness,
    cap: u64,
    collect: bool,
) -> Result<OracleResult> {
    guard(inst.n(), inst.k, cap)?;
    // Every item is kept so that the enumeration is independent of the oracles' pruning.
    let view = KnapsackView::from_parts(pf.revenue.clone(), pf.fixed_cost.clone(), inst.w.clone(), inst.k);
    let mut col = Collector::new(&view, collect);
    for s in all_sets(inst.n(), inst.k) {
        col.offer(s.items());
    }
    Ok(col.finish(pf, &inst.w))
}

/// Solves the fairness LP over every set of size at most `K`.
pub fn brute_force_fair(inst: &Instance) -> Result<DistributionSolution> {
    brute_force_fair_capped(inst, DEFAULT_ENUM_CAP)
}

pub fn brute_force_fair_capped(inst: &Instance, cap: u64) -> Result<DistributionSolution> {
    guard(inst.n(), inst.k, cap)?;
    let columns: Vec<Assortment> = all_sets(inst.n(), inst.k).collect();
    Ok(crate::solver::restricted_master(inst, &columns)?.0)
}
