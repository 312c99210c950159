//! Problem instances, MNL arithmetic and the fairness algebra shared by every solver.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};

/// A fair assortment planning instance.
///
/// Item `i` has popularity weight `w[i]`, revenue `r[i]`, quality `q[i]` and
/// outcome parameters `a[i]`, `b[i]` so that its outcome when shown in `S` is
/// `a[i] * w[i] / (1 + w(S)) + b[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub k: usize,
    pub delta: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub r: Vec<f64>,
    pub w: Vec<f64>,
    pub q: Vec<f64>,
    pub labels: Option<Vec<String>>,
}

impl Instance {
    pub fn new(
        k: usize,
        delta: f64,
        a: Vec<f64>,
        b: Vec<f64>,
        r: Vec<f64>,
        w: Vec<f64>,
        q: Vec<f64>,
    ) -> Result<Self> {
        let inst = Instance { k, delta, a, b, r, w, q, labels: None };
        inst.validate()?;
        Ok(inst)
    }

    /// Visibility outcome (`a = 0`, `b = 1`).
    pub fn visibility(k: usize, delta: f64, r: Vec<f64>, w: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        let n = r.len();
        Self::new(k, delta, vec![0.0; n], vec![1.0; n], r, w, q)
    }

    /// Market-share outcome (`a = 1`, `b = 0`).
    pub fn market_share(k: usize, delta: f64, r: Vec<f64>, w: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        let n = r.len();
        Self::new(k, delta, vec![1.0; n], vec![0.0; n], r, w, q)
    }

    /// Revenue outcome (`a = r`, `b = 0`).
    pub fn revenue(k: usize, delta: f64, r: Vec<f64>, w: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        let n = r.len();
        Self::new(k, delta, r.clone(), vec![0.0; n], r, w, q)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return input(format!("{} labels for {} items", labels.len(), self.n()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_delta(&self, delta: f64) -> Self {
        Instance { delta, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.r.len();
        if n == 0 {
            return input("instance has no items");
        }
        for (name, v) in [("a", &self.a), ("b", &self.b), ("w", &self.w), ("q", &self.q)] {
            if v.len() != n {
                return input(format!("vector {name} has length {} but n = {n}", v.len()));
            }
        }
        if self.k < 1 || self.k > n {
            return input(format!("K = {} outside 1..={n}", self.k));
        }
        if !self.delta.is_finite() || self.delta < 0.0 {
            return input(format!("delta = {} must be finite and nonnegative", self.delta));
        }
        for i in 0..n {
            let ok = self.w[i] > 0.0
                && self.r[i] > 0.0
                && self.q[i] > 0.0
                && self.a[i] >= 0.0
                && self.b[i] >= 0.0
                && [self.w[i], self.r[i], self.q[i], self.a[i], self.b[i]].iter().all(|x| x.is_finite());
            if !ok {
                return input(format!(
                    "item {i}: need w, r, q > 0 and a, b >= 0 (w={}, r={}, q={}, a={}, b={})",
                    self.w[i], self.r[i], self.q[i], self.a[i], self.b[i]
                ));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    /// Revenue and market-share fair instances have `b = 0`.
    pub fn is_revenue_fair(&self) -> bool {
        self.b.iter().all(|&x| x == 0.0)
    }

    pub fn is_visibility_fair(&self) -> bool {
        self.a.iter().all(|&x| x == 0.0)
    }

    pub fn is_uniform_revenue(&self) -> bool {
        self.r.iter().all(|&x| x == self.r[0])
    }

    pub fn r_max(&self) -> f64 {
        self.r.iter().cloned().fold(0.0, f64::max)
    }

    pub fn q_max(&self) -> f64 {
        self.q.iter().cloned().fold(0.0, f64::max)
    }

    pub fn weight(&self, s: &Assortment) -> f64 {
        s.iter().map(|i| self.w[i]).sum()
    }

    pub fn check_assortment(&self, s: &Assortment) -> Result<()> {
        match s.items().last() {
            Some(&last) if last >= self.n() => input(format!("item {last} out of range for n = {}", self.n())),
            _ => Ok(()),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InstanceDoc = serde_json::from_str(text)?;
        doc.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&InstanceDoc::from(self)).expect("instance serializes")
    }
}

/// On-disk instance layout.
#[derive(Debug, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub delta: f64,
    pub items: Vec<ItemDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ItemDoc {
    pub id: usize,
    pub w: f64,
    pub r: f64,
    pub q: f64,
    pub a: f64,
    pub b: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl From<&Instance> for InstanceDoc {
    fn from(inst: &Instance) -> Self {
        let items = (0..inst.n())
            .map(|i| ItemDoc {
                id: i,
                w: inst.w[i],
                r: inst.r[i],
                q: inst.q[i],
                a: inst.a[i],
                b: inst.b[i],
                label: inst.labels.as_ref().map(|l| l[i].clone()),
            })
            .collect();
        InstanceDoc { n: inst.n(), k: inst.k, delta: inst.delta, items }
    }
}

impl TryFrom<InstanceDoc> for Instance {
    type Error = Error;

    fn try_from(mut doc: InstanceDoc) -> Result<Self> {
        if doc.items.len() != doc.n {
            return input(format!("n = {} but {} items listed", doc.n, doc.items.len()));
        }
        doc.items.sort_by_key(|it| it.id);
        if doc.items.iter().enumerate().any(|(i, it)| it.id != i) {
            return input("item ids must be 0..n-1 without gaps or repeats");
        }
        let col = |f: fn(&ItemDoc) -> f64| doc.items.iter().map(f).collect::<Vec<_>>();
        let inst = Instance::new(
            doc.k,
            doc.delta,
            col(|it| it.a),
            col(|it| it.b),
            col(|it| it.r),
            col(|it| it.w),
            col(|it| it.q),
        )?;
        if doc.items.iter().any(|it| it.label.is_some()) {
            let labels = doc.items.iter().map(|it| it.label.clone().unwrap_or_default()).collect();
            return inst.with_labels(labels);
        }
        Ok(inst)
    }
}

/// A set of items, stored as a strictly increasing index list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Assortment(Vec<usize>);

impl Assortment {
    pub fn empty() -> Self {
        Assortment(Vec::new())
    }

    pub fn singleton(i: usize) -> Self {
        Assortment(vec![i])
    }

    /// Builds an assortment from arbitrary order; duplicates are an error.
    pub fn new(mut items: Vec<usize>) -> Result<Self> {
        items.sort_unstable();
        if items.windows(2).any(|p| p[0] == p[1]) {
            return input(format!("duplicate item in assortment {items:?}"));
        }
        Ok(Assortment(items))
    }

    /// Sorts and drops duplicates.
    pub fn from_iter_dedup(items: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Assortment(v)
    }

    pub fn items(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }
}

impl TryFrom<Vec<usize>> for Assortment {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Assortment::new(v)
    }
}

impl From<Assortment> for Vec<usize> {
    fn from(s: Assortment) -> Self {
        s.0
    }
}

impl fmt::Display for Assortment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportEntry {
    pub items: Assortment,
    pub p: f64,
}

/// A randomized assortment policy: `p(S)` over a finite support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionSolution {
    pub objective: f64,
    pub support: Vec<SupportEntry>,
}

impl DistributionSolution {
    /// Drops nonpositive weights, sorts by assortment and recomputes the objective.
    pub fn from_weights(inst: &Instance, weights: impl IntoIterator<Item = (Assortment, f64)>) -> Self {
        let mut support: Vec<SupportEntry> = weights
            .into_iter()
            .filter(|(_, p)| *p > 0.0)
            .map(|(items, p)| SupportEntry { items, p })
            .collect();
        support.sort_by(|x, y| x.items.cmp(&y.items));
        let objective = support.iter().map(|e| e.p * rev(inst, &e.items)).sum();
        DistributionSolution { objective, support }
    }

    pub fn total_probability(&self) -> f64 {
        self.support.iter().map(|e| e.p).sum()
    }

    /// Number of sets offered with probability above `threshold`.
    pub fn support_size(&self, threshold: f64) -> usize {
        self.support.iter().filter(|e| e.p > threshold).count()
    }
}

/// Square dual matrix `z`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct DualMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DualMatrix {
    pub fn zeros(n: usize) -> Self {
        DualMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn from_flat(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return input(format!("dual matrix needs {} entries, got {}", n * n, data.len()));
        }
        Ok(DualMatrix { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return input("dual matrix must be square");
        }
        Ok(DualMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

impl From<Vec<Vec<f64>>> for DualMatrix {
    fn from(rows: Vec<Vec<f64>>) -> Self {
        let n = rows.len();
        let mut data: Vec<f64> = rows.into_iter().flat_map(|mut r| {
            r.resize(n, 0.0);
            r
        }).collect();
        data.resize(n * n, 0.0);
        DualMatrix { n, data }
    }
}

impl From<DualMatrix> for Vec<Vec<f64>> {
    fn from(m: DualMatrix) -> Self {
        if m.n == 0 {
            return Vec::new();
        }
        m.data.chunks(m.n).map(|c| c.to_vec()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualPoint {
    pub z: DualMatrix,
    pub rho: f64,
}

/// Per-item dual costs and the adjusted revenues and fixed costs they induce.
#[derive(Debug, Clone, PartialEq)]
pub struct PostFairness {
    pub cost: Vec<f64>,
    pub revenue: Vec<f64>,
    pub fixed_cost: Vec<f64>,
}

impl PostFairness {
    /// `rev_cost` with the adjusted quantities already in hand.
    pub fn rev_cost(&self, w: &[f64], s: &[usize]) -> f64 {
        if s.is_empty() {
            return 0.0;
        }
        let ws: f64 = s.iter().map(|&i| w[i]).sum();
        let num: f64 = s.iter().map(|&i| self.revenue[i] * w[i]).sum();
        let fixed: f64 = s.iter().map(|&i| self.fixed_cost[i]).sum();
        num / (1.0 + ws) - fixed
    }
}

/// MNL expected revenue of offering `s`.
pub fn rev(inst: &Instance, s: &Assortment) -> f64 {
    if s.is_empty() {
        return 0.0;
    }
    let ws = inst.weight(s);
    s.iter().map(|i| inst.r[i] * inst.w[i]).sum::<f64>() / (1.0 + ws)
}

pub fn try_rev(inst: &Instance, s: &Assortment) -> Result<f64> {
    inst.check_assortment(s)?;
    Ok(rev(inst, s))
}

/// Outcome of item `i` when `s` is offered.
pub fn outcome(inst: &Instance, i: usize, s: &Assortment) -> Result<f64> {
    inst.check_assortment(s)?;
    if !s.contains(i) {
        return input(format!("item {i} is not in {s}"));
    }
    Ok(outcome_in(inst, i, inst.weight(s)))
}

/// Outcome of an item known to be in a set of total weight `ws`.
pub(crate) fn outcome_in(inst: &Instance, i: usize, ws: f64) -> f64 {
    inst.a[i] * inst.w[i] / (1.0 + ws) + inst.b[i]
}

/// Expected outcome of every item under `p`.
pub fn expected_outcomes(inst: &Instance, p: &DistributionSolution) -> Vec<f64> {
    let mut out = vec![0.0; inst.n()];
    for e in &p.support {
        let ws = inst.weight(&e.items);
        for i in e.items.iter() {
            out[i] += e.p * outcome_in(inst, i, ws);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FairnessVerdict {
    pub pass: bool,
    /// Ordered pair maximizing `O_i/q_i - O_j/q_j`.
    pub worst_pair: Option<(usize, usize)>,
    /// `max O_i/q_i - O_j/q_j - delta`; nonpositive when every pair is fair.
    pub slack: f64,
}

pub fn fairness_check(inst: &Instance, p: &DistributionSolution, tol: f64) -> FairnessVerdict {
    let o = expected_outcomes(inst, p);
    let norm: Vec<f64> = o.iter().zip(&inst.q).map(|(o, q)| o / q).collect();
    let n = inst.n();
    let mut worst: Option<((usize, usize), f64)> = None;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let gap = norm[i] - norm[j];
            if worst.is_none_or(|(_, g)| gap > g) {
                worst = Some(((i, j), gap));
            }
        }
    }
    match worst {
        None => FairnessVerdict { pass: true, worst_pair: None, slack: -inst.delta },
        Some((pair, gap)) => {
            let slack = gap - inst.delta;
            FairnessVerdict { pass: slack <= tol, worst_pair: Some(pair), slack }
        }
    }
}

pub fn post_fairness(inst: &Instance, z: &DualMatrix) -> PostFairness {
    let n = inst.n();
    let cost: Vec<f64> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i).map(|j| (z.get(i, j) - z.get(j, i)) * inst.q[j]).sum())
        .collect();
    let revenue = (0..n).map(|i| inst.r[i] - inst.a[i] * cost[i]).collect();
    let fixed_cost = (0..n).map(|i| inst.b[i] * cost[i]).collect();
    PostFairness { cost, revenue, fixed_cost }
}

/// Revenue of `s` net of the dual fairness costs at `z`.
pub fn rev_cost(inst: &Instance, s: &Assortment, z: &DualMatrix) -> f64 {
    post_fairness(inst, z).rev_cost(&inst.w, s.items())
}

/// The same quantity written as `rev(S) - sum O_i(S) c_i(z)`.
pub fn rev_cost_outcome_form(inst: &Instance, s: &Assortment, z: &DualMatrix) -> f64 {
    let pf = post_fairness(inst, z);
    let ws = inst.weight(s);
    rev(inst, s) - s.iter().map(|i| outcome_in(inst, i, ws) * pf.cost[i]).sum::<f64>()
}

/// Always-feasible policy: singletons with `p({i})` proportional to `q_i / O_i({i})`,
/// scaled so that every normalized outcome is equal.
pub fn fallback_solution(inst: &Instance) -> DistributionSolution {
    let n = inst.n();
    let ratios: Vec<f64> = (0..n).map(|i| inst.q[i] / outcome_in(inst, i, inst.w[i])).collect();
    if ratios.iter().any(|x| !x.is_finite()) {
        // Some item can never earn an outcome, so only the empty policy equalizes.
        return DistributionSolution { objective: 0.0, support: Vec::new() };
    }
    let t = 1.0 / ratios.iter().sum::<f64>();
    DistributionSolution::from_weights(inst, (0..n).map(|i| (Assortment::singleton(i), t * ratios[i])))
}
