//! Separation oracles for the dual of the fair assortment LP.
//!
//! Each oracle maximizes `rev_cost(S, z)` over `|S| <= K`, exactly or
//! approximately, by searching over the total weight `W = w(S)` of the answer.

pub mod exact;
pub mod fptas;
pub mod half;
pub mod partition;
pub mod ptas;
pub mod uniform;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::enumerate::{brute_force_subdual_capped, DEFAULT_ENUM_CAP};
use crate::error::{input, Error, Result};
use crate::instance::{post_fairness, Assortment, DualMatrix, Instance, PostFairness};

pub use partition::{breakpoints, Interval, WellBehavingPartition};

/// The parameterized knapsack seen by the oracles.
///
/// Only live items are kept: an item with `r~ <= 0` and `c~ >= 0` can never
/// raise `rev_cost` and is dropped. `ids` maps local indices back to the instance.
#[derive(Debug, Clone, PartialEq)]
pub struct KnapsackView {
    pub ids: Vec<usize>,
    pub r: Vec<f64>,
    pub c: Vec<f64>,
    pub w: Vec<f64>,
    pub k: usize,
}

impl KnapsackView {
    pub fn new(inst: &Instance, pf: &PostFairness) -> Self {
        let ids: Vec<usize> = (0..inst.n())
            .filter(|&i| !(pf.revenue[i] <= 0.0 && pf.fixed_cost[i] >= 0.0))
            .collect();
        KnapsackView {
            r: ids.iter().map(|&i| pf.revenue[i]).collect(),
            c: ids.iter().map(|&i| pf.fixed_cost[i]).collect(),
            w: ids.iter().map(|&i| inst.w[i]).collect(),
            ids,
            k: inst.k,
        }
    }

    /// A view over raw data; every item is kept.
    pub fn from_parts(r: Vec<f64>, c: Vec<f64>, w: Vec<f64>, k: usize) -> Self {
        KnapsackView { ids: (0..r.len()).collect(), r, c, w, k }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// `u_i(W) = r~_i w_i / (1 + W) - c~_i`
    pub fn utility(&self, i: usize, cap: f64) -> f64 {
        self.r[i] * self.w[i] / (1.0 + cap) - self.c[i]
    }

    pub fn weight_of(&self, set: &[usize]) -> f64 {
        set.iter().map(|&i| self.w[i]).sum()
    }

    /// Largest capacity worth considering: the total live weight.
    pub fn w_cap(&self) -> f64 {
        self.w.iter().sum()
    }

    /// `rev_cost` of a set of local indices.
    pub fn value(&self, set: &[usize]) -> f64 {
        if set.is_empty() {
            return 0.0;
        }
        let ws = self.weight_of(set);
        let num: f64 = set.iter().map(|&i| self.r[i] * self.w[i]).sum();
        num / (1.0 + ws) - set.iter().map(|&i| self.c[i]).sum::<f64>()
    }

    pub fn to_assortment(&self, set: &[usize]) -> Assortment {
        Assortment::from_iter_dedup(set.iter().map(|&i| self.ids[i]))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct OracleStats {
    pub intervals: usize,
    pub candidates: usize,
    /// Largest number of profile swaps made inside one interval.
    pub max_swaps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub set: Assortment,
    pub value: f64,
    /// Every candidate examined, when requested.
    pub collection: Option<Vec<Assortment>>,
    pub stats: OracleStats,
}

/// Tracks the best candidate and, optionally, all distinct candidates seen.
pub(crate) struct Collector<'a> {
    view: &'a KnapsackView,
    best: Vec<usize>,
    best_value: f64,
    seen: Option<BTreeSet<Vec<usize>>>,
    scratch: Vec<usize>,
    pub stats: OracleStats,
}

impl<'a> Collector<'a> {
    pub fn new(view: &'a KnapsackView, keep: bool) -> Self {
        let mut c = Collector {
            view,
            best: Vec::new(),
            best_value: 0.0,
            seen: keep.then(BTreeSet::new),
            scratch: Vec::new(),
            stats: OracleStats::default(),
        };
        c.offer(&[]);
        c
    }

    /// Considers a set of local indices in any order.
    pub fn offer(&mut self, set: &[usize]) {
        debug_assert!(set.len() <= self.view.k);
        self.scratch.clear();
        self.scratch.extend_from_slice(set);
        self.scratch.sort_unstable();
        self.stats.candidates += 1;
        let v = self.view.value(&self.scratch);
        if v > self.best_value || (v == self.best_value && self.scratch < self.best) {
            self.best_value = v;
            self.best.clone_from(&self.scratch);
        }
        if let Some(seen) = &mut self.seen {
            if !seen.contains(&self.scratch) {
                seen.insert(self.scratch.clone());
            }
        }
    }

    pub fn finish(self, pf: &PostFairness, inst_w: &[f64]) -> OracleResult {
        let set = self.view.to_assortment(&self.best);
        let value = pf.rev_cost(inst_w, set.items());
        let collection = self
            .seen
            .map(|s| s.iter().map(|v| self.view.to_assortment(v)).collect());
        OracleResult { set, value, collection, stats: self.stats }
    }
}

/// Which oracle to run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleMethod {
    Auto,
    Brute,
    Exact,
    Half,
    UniformHalf,
    Ptas(f64),
    Fptas(f64),
}

/// Accuracy used when `auto` selects the FPTAS.
pub const AUTO_FPTAS_EPSILON: f64 = 0.1;

impl OracleMethod {
    /// Concrete method `auto` resolves to for this instance.
    pub fn resolve(self, inst: &Instance) -> OracleMethod {
        match self {
            OracleMethod::Auto if inst.is_revenue_fair() => OracleMethod::Exact,
            OracleMethod::Auto if inst.is_visibility_fair() && inst.is_uniform_revenue() => {
                OracleMethod::Fptas(AUTO_FPTAS_EPSILON)
            }
            OracleMethod::Auto => OracleMethod::Half,
            m => m,
        }
    }

    /// Guaranteed approximation ratio of the resolved method.
    pub fn ratio(self, inst: &Instance) -> f64 {
        match self.resolve(inst) {
            OracleMethod::Brute | OracleMethod::Exact => 1.0,
            OracleMethod::Half | OracleMethod::UniformHalf => 0.5,
            OracleMethod::Ptas(e) | OracleMethod::Fptas(e) => 1.0 - e,
            OracleMethod::Auto => unreachable!("resolved"),
        }
    }

    pub fn check(self, inst: &Instance) -> Result<()> {
        let uniform_vis = inst.is_visibility_fair() && inst.is_uniform_revenue();
        match self.resolve(inst) {
            OracleMethod::Exact if !inst.is_revenue_fair() => input("exact oracle needs b = 0"),
            OracleMethod::UniformHalf | OracleMethod::Fptas(_) if !uniform_vis => {
                input("this oracle needs a visibility-fair instance with uniform revenues")
            }
            OracleMethod::Ptas(e) | OracleMethod::Fptas(e) if !(e > 0.0 && e < 1.0) => {
                input(format!("epsilon = {e} must lie in (0, 1)"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for OracleMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleMethod::Auto => write!(f, "auto"),
            OracleMethod::Brute => write!(f, "brute"),
            OracleMethod::Exact => write!(f, "exact"),
            OracleMethod::Half => write!(f, "half"),
            OracleMethod::UniformHalf => write!(f, "uniform-half"),
            OracleMethod::Ptas(e) => write!(f, "ptas:{e}"),
            OracleMethod::Fptas(e) => write!(f, "fptas:{e}"),
        }
    }
}

impl FromStr for OracleMethod {
    type Err = Error;

    /// Accepts `auto`, `brute`, `exact`, `half`, `uniform-half`, `ptas[:eps]`, `fptas[:eps]`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let eps = |default: f64| -> Result<f64> {
            match arg {
                None => Ok(default),
                Some(a) => a.parse::<f64>().map_err(|_| Error::Input(format!("bad epsilon '{a}'"))),
            }
        };
        let m = match name {
            "auto" => OracleMethod::Auto,
            "brute" => OracleMethod::Brute,
            "exact" => OracleMethod::Exact,
            "half" => OracleMethod::Half,
            "uniform-half" => OracleMethod::UniformHalf,
            "ptas" => OracleMethod::Ptas(eps(0.25)?),
            "fptas" => OracleMethod::Fptas(eps(AUTO_FPTAS_EPSILON)?),
            _ => return input(format!("unknown oracle '{s}'")),
        };
        if arg.is_some() && !matches!(m, OracleMethod::Ptas(_) | OracleMethod::Fptas(_)) {
            return input(format!("oracle '{name}' takes no parameter"));
        }
        if let OracleMethod::Ptas(e) | OracleMethod::Fptas(e) = m {
            if !(e > 0.0 && e < 1.0) {
                return input(format!("epsilon = {e} must lie in (0, 1)"));
            }
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    /// Return the full candidate collection.
    pub collect: bool,
    /// Enumeration cap for the brute-force oracle.
    pub enum_cap: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { collect: false, enum_cap: DEFAULT_ENUM_CAP }
    }
}

/// Runs `method` at dual point `z`.
pub fn oracle_dispatch(inst: &Instance, z: &DualMatrix, method: OracleMethod) -> Result<OracleResult> {
    oracle_with(inst, &post_fairness(inst, z), method, OracleOptions::default())
}

/// Runs `method` with the adjusted revenues and costs already computed.
pub fn oracle_with(
    inst: &Instance,
    pf: &PostFairness,
    method: OracleMethod,
    opts: OracleOptions,
) -> Result<OracleResult> {
    // With every fixed cost at zero (e.g. z = 0) the exact oracle applies whatever b is.
    let no_fixed = pf.fixed_cost.iter().all(|&c| c == 0.0);
    if !(method == OracleMethod::Exact && no_fixed) {
        method.check(inst)?;
    }
    match method.resolve(inst) {
        OracleMethod::Brute => brute_force_subdual_capped(inst, pf, opts.enum_cap, opts.collect),
        OracleMethod::Exact => exact::exact_with(inst, pf, opts.collect),
        OracleMethod::Half => half::half_approx_with(inst, pf, opts.collect),
        OracleMethod::UniformHalf => uniform::uniform_half_with(inst, pf, opts.collect),
        OracleMethod::Ptas(e) => ptas::ptas_with(inst, pf, e, opts.collect),
        OracleMethod::Fptas(e) => fptas::fptas_with(inst, pf, e, opts.collect),
        OracleMethod::Auto => unreachable!("resolved"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_methods() {
        assert_eq!("ptas:0.25".parse::<OracleMethod>().unwrap(), OracleMethod::Ptas(0.25));
        assert_eq!("fptas".parse::<OracleMethod>().unwrap(), OracleMethod::Fptas(0.1));
        assert_eq!("half".parse::<OracleMethod>().unwrap(), OracleMethod::Half);
        assert!("half:0.2".parse::<OracleMethod>().is_err());
        assert!("ptas:1.5".parse::<OracleMethod>().is_err());
        assert!("simplex".parse::<OracleMethod>().is_err());
        for m in ["auto", "brute", "exact", "half", "uniform-half", "ptas:0.3", "fptas:0.2"] {
            assert_eq!(m.parse::<OracleMethod>().unwrap().to_string(), m);
        }
    }

    #[test]
    fn auto_resolution() {
        let w = vec![1.0, 2.0];
        let rev = Instance::revenue(1, 0.0, vec![1.0, 2.0], w.clone(), vec![1.0; 2]).unwrap();
        assert_eq!(OracleMethod::Auto.resolve(&rev), OracleMethod::Exact);
        let vis = Instance::visibility(1, 0.0, vec![1.0, 1.0], w.clone(), vec![1.0; 2]).unwrap();
        assert_eq!(OracleMethod::Auto.resolve(&vis), OracleMethod::Fptas(AUTO_FPTAS_EPSILON));
        let gen = Instance::visibility(1, 0.0, vec![1.0, 0.5], w, vec![1.0; 2]).unwrap();
        assert_eq!(OracleMethod::Auto.resolve(&gen), OracleMethod::Half);
        assert!(OracleMethod::Exact.check(&gen).is_err());
        assert!(OracleMethod::Fptas(0.2).check(&gen).is_err());
    }

    #[test]
    fn view_drops_useless_items() {
        let inst = Instance::market_share(2, 0.0, vec![1.0, 1.0, 1.0], vec![1.0; 3], vec![1.0; 3]).unwrap();
        let pf = PostFairness { cost: vec![0.0; 3], revenue: vec![1.0, -0.5, 0.0], fixed_cost: vec![0.0, 0.0, -0.1] };
        let v = KnapsackView::new(&inst, &pf);
        assert_eq!(v.ids, vec![0, 2]);
    }
}
