//! Dense bounded-variable revised simplex.
//!
//! Every row gets a slack whose bounds encode the row sense, so the working
//! form is `A x + s = b` with `l <= (x, s) <= u`. Rows the starting point cannot
//! satisfy get an artificial column and a phase-one pass removes them.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSense {
    Le,
    Eq,
    Ge,
}

/// `max c.x` subject to row constraints and variable bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub c: Vec<f64>,
    /// Row-major, `rows() x cols()`.
    pub a: Vec<f64>,
    pub senses: Vec<RowSense>,
    pub rhs: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl LpProblem {
    /// New problem with objective `c` and every variable in `[0, inf)`.
    pub fn new(c: Vec<f64>) -> Self {
        let d = c.len();
        LpProblem {
            c,
            a: Vec::new(),
            senses: Vec::new(),
            rhs: Vec::new(),
            lower: vec![0.0; d],
            upper: vec![f64::INFINITY; d],
        }
    }

    pub fn add_row(&mut self, coeffs: &[f64], sense: RowSense, rhs: f64) -> &mut Self {
        assert_eq!(coeffs.len(), self.cols(), "row length must match variable count");
        self.a.extend_from_slice(coeffs);
        self.senses.push(sense);
        self.rhs.push(rhs);
        self
    }

    pub fn set_bounds(&mut self, j: usize, lower: f64, upper: f64) -> &mut Self {
        self.lower[j] = lower;
        self.upper[j] = upper;
        self
    }

    pub fn rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn cols(&self) -> usize {
        self.c.len()
    }

    fn validate(&self) -> Result<()> {
        let (m, d) = (self.rows(), self.cols());
        let bad = |msg: String| Err(Error::Input(msg));
        if self.a.len() != m * d || self.senses.len() != m || self.lower.len() != d || self.upper.len() != d {
            return bad(format!("inconsistent LP dimensions (m = {m}, d = {d})"));
        }
        if self.c.iter().chain(&self.a).chain(&self.rhs).any(|x| !x.is_finite()) {
            return bad("LP data must be finite".into());
        }
        for j in 0..d {
            if self.lower[j] > self.upper[j] || self.lower[j] == f64::INFINITY || self.upper[j] == f64::NEG_INFINITY {
                return bad(format!("variable {j} has bounds [{}, {}]", self.lower[j], self.upper[j]));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub objective: f64,
    /// Row duals for the max problem: nonnegative on binding `<=` rows.
    pub duals: Vec<f64>,
    /// `c_j - duals . A_j`.
    pub reduced_costs: Vec<f64>,
    /// Basic variables: structurals are `0..d`, row slacks `d..d+m`, artificials after.
    pub basis: Vec<usize>,
    pub iterations: usize,
}

/// A starting basis: the basic structural columns and the rows whose slack is basic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WarmStart {
    pub structurals: Vec<usize>,
    pub slacks: Vec<usize>,
}

impl LpSolution {
    /// The final basis, for restarting on a problem with the same rows and
    /// more columns appended. Basic artificials are dropped, which leaves the
    /// basis short and makes [`lp_solve_from`] start cold.
    pub fn warm_start(&self) -> WarmStart {
        let d = self.x.len();
        let m = self.duals.len();
        let mut ws = WarmStart::default();
        for &j in &self.basis {
            if j < d {
                ws.structurals.push(j);
            } else if j < d + m {
                ws.slacks.push(j - d);
            }
        }
        ws
    }
}

#[derive(Clone, Copy)]
enum Col {
    Structural(usize),
    Slack(usize),
    Artificial(usize, f64),
}

const PIVOT_TOL: f64 = 1e-7;
/// Pivots smaller than this, relative to the column, trigger an immediate refactor.
const WEAK_PIVOT: f64 = 1e-5;
const DEGENERATE_STEP: f64 = 1e-12;
const FEAS_TOL: f64 = 1e-9;
const BLAND_AFTER: usize = 20;
const REFACTOR_EVERY: usize = 100;

struct Simplex<'a> {
    p: &'a LpProblem,
    m: usize,
    cols: Vec<Col>,
    lo: Vec<f64>,
    up: Vec<f64>,
    x: Vec<f64>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    binv: Vec<f64>,
    cost: Vec<f64>,
    tol: f64,
    iterations: usize,
    since_refactor: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl<'a> Simplex<'a> {
    fn a(&self, i: usize, j: usize) -> f64 {
        self.p.a[i * self.p.cols() + j]
    }

    /// `y . A_j`
    fn dot_col(&self, y: &[f64], j: usize) -> f64 {
        match self.cols[j] {
            Col::Structural(s) => (0..self.m).map(|i| y[i] * self.a(i, s)).sum(),
            Col::Slack(i) => y[i],
            Col::Artificial(i, sg) => sg * y[i],
        }
    }

    /// `B^-1 A_j`
    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let mut out = vec![0.0; m];
        match self.cols[j] {
            Col::Structural(s) => {
                for k in 0..m {
                    let v = self.a(k, s);
                    if v != 0.0 {
                        for (i, o) in out.iter_mut().enumerate() {
                            *o += self.binv[i * m + k] * v;
                        }
                    }
                }
            }
            Col::Slack(k) | Col::Artificial(k, _) => {
                let sg = if let Col::Artificial(_, sg) = self.cols[j] { sg } else { 1.0 };
                for (i, o) in out.iter_mut().enumerate() {
                    *o = sg * self.binv[i * m + k];
                }
            }
        }
        out
    }

    fn refactor(&mut self) -> Result<()> {
        let binv = match self.block_inverse() {
            Some(b) => Some(b),
            None => {
                let m = self.m;
                let mut bmat = vec![0.0; m * m];
                for (pos, &j) in self.basis.iter().enumerate() {
                    match self.cols[j] {
                        Col::Structural(s) => (0..m).for_each(|i| bmat[i * m + pos] = self.a(i, s)),
                        Col::Slack(i) => bmat[i * m + pos] = 1.0,
                        Col::Artificial(i, sg) => bmat[i * m + pos] = sg,
                    }
                }
                invert(bmat, m)
            }
        };
        self.binv = binv.ok_or_else(|| Error::Numerical("basis matrix became singular".into()))?;
        self.since_refactor = 0;
        self.recompute_basics();
        Ok(())
    }

    /// Inverse of a basis that is mostly unit columns. With `k` structurals
    /// basic, only the `k x k` block on rows without a basic unit column needs
    /// a real inverse; the unit rows follow by substitution.
    fn block_inverse(&self) -> Option<Vec<f64>> {
        let m = self.m;
        let mut unit: Vec<Option<(usize, f64)>> = vec![None; m];
        let mut structs = Vec::new();
        for (pos, &j) in self.basis.iter().enumerate() {
            let (i, sg) = match self.cols[j] {
                Col::Structural(s) => {
                    structs.push((pos, s));
                    continue;
                }
                Col::Slack(i) => (i, 1.0),
                Col::Artificial(i, sg) => (i, sg),
            };
            if unit[i].replace((pos, sg)).is_some() {
                return None;
            }
        }
        let rows: Vec<usize> = (0..m).filter(|&i| unit[i].is_none()).collect();
        let k = structs.len();
        if rows.len() != k {
            return None;
        }
        let mut block = vec![0.0; k * k];
        for (r, &i) in rows.iter().enumerate() {
            for (c, &(_, s)) in structs.iter().enumerate() {
                block[r * k + c] = self.a(i, s);
            }
        }
        let inv = invert(block, k)?;
        let mut binv = vec![0.0; m * m];
        for (c, &(pos, _)) in structs.iter().enumerate() {
            for (r, &i) in rows.iter().enumerate() {
                binv[pos * m + i] = inv[c * k + r];
            }
        }
        for (i, u) in unit.iter().enumerate() {
            let Some((pos, sg)) = *u else { continue };
            binv[pos * m + i] = sg;
            for (c, &(_, s)) in structs.iter().enumerate() {
                let g = sg * self.a(i, s);
                if g != 0.0 {
                    for (r, &t) in rows.iter().enumerate() {
                        binv[pos * m + t] -= g * inv[c * k + r];
                    }
                }
            }
        }
        Some(binv)
    }

    fn recompute_basics(&mut self) {
        let m = self.m;
        let mut r = self.p.rhs.clone();
        for j in 0..self.cols.len() {
            if self.in_basis[j] || self.x[j] == 0.0 {
                continue;
            }
            let xj = self.x[j];
            match self.cols[j] {
                Col::Structural(s) => (0..m).for_each(|i| r[i] -= self.a(i, s) * xj),
                Col::Slack(i) => r[i] -= xj,
                Col::Artificial(i, sg) => r[i] -= sg * xj,
            }
        }
        for pos in 0..m {
            let v = (0..m).map(|k| self.binv[pos * m + k] * r[k]).sum();
            self.x[self.basis[pos]] = v;
        }
    }

    fn duals(&self) -> Vec<f64> {
        let m = self.m;
        let mut y = vec![0.0; m];
        for (pos, &j) in self.basis.iter().enumerate() {
            let cb = self.cost[j];
            if cb != 0.0 {
                for (k, yk) in y.iter_mut().enumerate() {
                    *yk += cb * self.binv[pos * m + k];
                }
            }
        }
        y
    }

    fn run(&mut self, max_iter: usize) -> Result<Outcome> {
        let m = self.m;
        let mut degenerate_run = 0usize;
        loop {
            if self.iterations >= max_iter {
                return Err(Error::Numerical(format!("simplex exceeded {max_iter} pivots")));
            }
            let bland = degenerate_run > BLAND_AFTER;
            let y = self.duals();

            // Pricing.
            let mut enter: Option<(usize, f64, f64)> = None;
            for j in 0..self.cols.len() {
                if self.in_basis[j] || self.up[j] <= self.lo[j] {
                    continue;
                }
                let d = self.cost[j] - self.dot_col(&y, j);
                let dir = if self.lo[j].is_finite() && self.x[j] <= self.lo[j] {
                    if d < -self.tol { 1.0 } else { continue }
                } else if self.up[j].is_finite() && self.x[j] >= self.up[j] {
                    if d > self.tol { -1.0 } else { continue }
                } else if d.abs() > self.tol {
                    -d.signum()
                } else {
                    continue;
                };
                let better = match enter {
                    None => true,
                    Some(_) if bland => false,
                    Some((_, _, best)) => d.abs() > best,
                };
                if better {
                    enter = Some((j, dir, d.abs()));
                }
                if bland {
                    break;
                }
            }
            let Some((q, dir, _)) = enter else { return Ok(Outcome::Optimal) };

            // Ratio test, two passes (Harris): find the longest step that keeps every
            // basic within FEAS_TOL of its bounds, then pivot on the largest |alpha|
            // among rows blocking before it. Tiny pivots wreck the basis inverse.
            let alpha = self.ftran(q);
            let ratio = |pos: usize, slack: f64| -> Option<f64> {
                let da = dir * alpha[pos];
                let b = self.basis[pos];
                if da > PIVOT_TOL && self.lo[b].is_finite() {
                    Some((self.x[b] - self.lo[b] + slack) / da)
                } else if da < -PIVOT_TOL && self.up[b].is_finite() {
                    Some((self.up[b] - self.x[b] + slack) / -da)
                } else {
                    None
                }
            };
            let bound = if bland {
                f64::INFINITY
            } else {
                (0..m).filter_map(|pos| ratio(pos, FEAS_TOL)).fold(f64::INFINITY, f64::min)
            };
            let mut leave: Option<(usize, f64)> = None;
            let mut theta = f64::INFINITY;
            for pos in 0..m {
                let Some(t) = ratio(pos, 0.0) else { continue };
                let t = t.max(0.0);
                let take = if bland {
                    match leave {
                        None => true,
                        Some((lp, _)) => {
                            t < theta - DEGENERATE_STEP
                                || (t <= theta + DEGENERATE_STEP && self.basis[pos] < self.basis[lp])
                        }
                    }
                } else {
                    t <= bound && leave.is_none_or(|(lp, _)| alpha[pos].abs() > alpha[lp].abs())
                };
                if take {
                    theta = if bland { theta.min(t) } else { t };
                    leave = Some((pos, t));
                }
            }
            let flip = self.up[q] - self.lo[q];
            self.iterations += 1;

            if flip.is_finite() && flip <= theta {
                self.x[q] += dir * flip;
                for (&b, &al) in self.basis.iter().zip(&alpha) {
                    self.x[b] -= dir * flip * al;
                }
                degenerate_run = 0;
                continue;
            }
            let Some((r, _)) = leave else {
                // An unbounded ray on a stale factorization may be drift; confirm on a fresh one.
                if self.since_refactor > 0 {
                    self.iterations -= 1;
                    self.refactor()?;
                    continue;
                }
                return Ok(Outcome::Unbounded);
            };

            self.x[q] += dir * theta;
            for (&b, &al) in self.basis.iter().zip(&alpha) {
                self.x[b] -= dir * theta * al;
            }
            let out = self.basis[r];
            self.x[out] = if dir * alpha[r] > 0.0 { self.lo[out] } else { self.up[out] };
            self.in_basis[out] = false;
            self.in_basis[q] = true;
            self.basis[r] = q;

            let piv = alpha[r];
            for k in 0..m {
                self.binv[r * m + k] /= piv;
            }
            let pivot_row = self.binv[r * m..(r + 1) * m].to_vec();
            for (i, &f) in alpha.iter().enumerate() {
                if i != r && f != 0.0 {
                    for (b, p) in self.binv[i * m..(i + 1) * m].iter_mut().zip(&pivot_row) {
                        *b -= f * p;
                    }
                }
            }
            self.since_refactor += 1;
            let col_max = alpha.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            if self.since_refactor >= REFACTOR_EVERY || piv.abs() < WEAK_PIVOT * col_max {
                self.refactor()?;
            }
            degenerate_run = if theta <= DEGENERATE_STEP { degenerate_run + 1 } else { 0 };
        }
    }
}

/// Gauss-Jordan inverse with partial pivoting; `None` if singular.
fn invert(mut a: Vec<f64>, m: usize) -> Option<Vec<f64>> {
    let mut inv = vec![0.0; m * m];
    for i in 0..m {
        inv[i * m + i] = 1.0;
    }
    for col in 0..m {
        let piv = (col..m).max_by(|&x, &y| a[x * m + col].abs().total_cmp(&a[y * m + col].abs()))?;
        if a[piv * m + col].abs() < 1e-13 {
            return None;
        }
        if piv != col {
            for k in 0..m {
                a.swap(piv * m + k, col * m + k);
                inv.swap(piv * m + k, col * m + k);
            }
        }
        let d = a[col * m + col];
        for k in 0..m {
            a[col * m + k] /= d;
            inv[col * m + k] /= d;
        }
        for i in 0..m {
            let f = a[i * m + col];
            if i != col && f != 0.0 {
                for k in 0..m {
                    a[i * m + k] -= f * a[col * m + k];
                    inv[i * m + k] -= f * inv[col * m + k];
                }
            }
        }
    }
    Some(inv)
}

/// Solves `problem` to optimality, or reports infeasibility or unboundedness.
///
/// `tol` is used both as the pricing threshold and the phase-one feasibility test.
pub fn lp_solve(problem: &LpProblem, tol: f64) -> Result<LpSolution> {
    problem.validate()?;
    let (m, d) = (problem.rows(), problem.cols());
    let (mut cols, mut lo, mut up, mut x) = working_form(problem);

    // Crash basis: slack where it can absorb the residual, artificial otherwise.
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let resid = problem.rhs[i] - (0..d).map(|j| problem.a[i * d + j] * x[j]).sum::<f64>();
        let s = d + i;
        if resid >= lo[s] && resid <= up[s] {
            x[s] = resid;
            basis.push(s);
        } else {
            let clamp = resid.clamp(lo[s], up[s]);
            x[s] = clamp;
            let gap = resid - clamp;
            cols.push(Col::Artificial(i, gap.signum()));
            lo.push(0.0);
            up.push(f64::INFINITY);
            x.push(gap.abs());
            basis.push(cols.len() - 1);
        }
    }
    let ntot = cols.len();
    let mut in_basis = vec![false; ntot];
    basis.iter().for_each(|&j| in_basis[j] = true);

    let mut binv = vec![0.0; m * m];
    for (pos, &j) in basis.iter().enumerate() {
        binv[pos * m + pos] = if let Col::Artificial(_, sg) = cols[j] { sg } else { 1.0 };
    }

    let mut phase1_cost = vec![0.0; ntot];
    phase1_cost[d + m..].iter_mut().for_each(|c| *c = 1.0);
    let mut sx = Simplex {
        p: problem,
        m,
        cols,
        lo,
        up,
        x,
        basis,
        in_basis,
        binv,
        cost: phase1_cost,
        tol,
        iterations: 0,
        since_refactor: 0,
    };
    let max_iter = 100 * (m + ntot) + 1000;

    if ntot > d + m {
        sx.run(max_iter)?;
        sx.refactor()?;
        let infeas: f64 = (d + m..ntot).map(|j| sx.x[j].abs()).sum();
        let scale = 1.0 + problem.rhs.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if infeas > tol.max(1e-9) * scale {
            return Ok(finish(&sx, LpStatus::Infeasible));
        }
        for j in d + m..ntot {
            sx.up[j] = 0.0;
            if !sx.in_basis[j] {
                sx.x[j] = 0.0;
            }
        }
    }

    phase_two(sx, max_iter)
}

fn phase_two(mut sx: Simplex, max_iter: usize) -> Result<LpSolution> {
    let d = sx.p.cols();
    sx.cost = vec![0.0; sx.cols.len()];
    sx.cost[..d].iter_mut().zip(&sx.p.c).for_each(|(c, v)| *c = -v);
    let outcome = sx.run(max_iter)?;
    sx.refactor()?;
    Ok(finish(
        &sx,
        match outcome {
            Outcome::Optimal => LpStatus::Optimal,
            Outcome::Unbounded => LpStatus::Unbounded,
        },
    ))
}

/// Structural and slack columns with their bounds, nonbasics at a finite bound.
fn working_form(problem: &LpProblem) -> (Vec<Col>, Vec<f64>, Vec<f64>, Vec<f64>) {
    let (m, d) = (problem.rows(), problem.cols());
    let cols: Vec<Col> = (0..d).map(Col::Structural).chain((0..m).map(Col::Slack)).collect();
    let mut lo = problem.lower.clone();
    let mut up = problem.upper.clone();
    for s in &problem.senses {
        let (l, u) = match s {
            RowSense::Le => (0.0, f64::INFINITY),
            RowSense::Ge => (f64::NEG_INFINITY, 0.0),
            RowSense::Eq => (0.0, 0.0),
        };
        lo.push(l);
        up.push(u);
    }
    let mut x: Vec<f64> = (0..d)
        .map(|j| if lo[j].is_finite() { lo[j] } else if up[j].is_finite() { up[j] } else { 0.0 })
        .collect();
    x.resize(d + m, 0.0);
    (cols, lo, up, x)
}

/// Like [`lp_solve`], but starts phase two from `start` when that basis is
/// nonsingular and primal feasible. Falls back to a cold start otherwise.
pub fn lp_solve_from(problem: &LpProblem, tol: f64, start: &WarmStart) -> Result<LpSolution> {
    problem.validate()?;
    let (m, d) = (problem.rows(), problem.cols());
    let mut basis: Vec<usize> = start.structurals.iter().copied().chain(start.slacks.iter().map(|i| d + i)).collect();
    let mut seen = vec![false; d + m];
    let usable = basis.len() == m && basis.iter().all(|&j| j < d + m && !std::mem::replace(&mut seen[j], true));
    if !usable {
        return lp_solve(problem, tol);
    }
    let (cols, lo, up, mut x) = working_form(problem);
    basis.iter().for_each(|&j| x[j] = 0.0);
    let mut sx = Simplex {
        p: problem,
        m,
        cols,
        lo,
        up,
        x,
        basis: std::mem::take(&mut basis),
        in_basis: seen,
        binv: Vec::new(),
        cost: Vec::new(),
        tol,
        iterations: 0,
        since_refactor: 0,
    };
    if sx.refactor().is_err() {
        return lp_solve(problem, tol);
    }
    let scale = 1.0 + problem.rhs.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let slack = tol.max(1e-9) * scale;
    if sx.basis.iter().any(|&j| !(sx.x[j] >= sx.lo[j] - slack && sx.x[j] <= sx.up[j] + slack)) {
        return lp_solve(problem, tol);
    }
    // Snap small violations so the ratio test never sees a negative step.
    for &j in &sx.basis {
        sx.x[j] = sx.x[j].clamp(sx.lo[j], sx.up[j]);
    }
    let max_iter = 100 * (2 * m + d) + 1000;
    match phase_two(sx, max_iter) {
        Ok(sol) => Ok(sol),
        Err(Error::Numerical(_)) => lp_solve(problem, tol),
        Err(e) => Err(e),
    }
}

fn finish(sx: &Simplex, status: LpStatus) -> LpSolution {
    let d = sx.p.cols();
    let y = sx.duals();
    let duals: Vec<f64> = y.iter().map(|v| -v).collect();
    let reduced_costs = (0..d).map(|j| sx.p.c[j] - sx.dot_col(&duals, j)).collect();
    let x = sx.x[..d].to_vec();
    let objective = x.iter().zip(&sx.p.c).map(|(x, c)| x * c).sum();
    LpSolution { status, x, objective, duals, reduced_costs, basis: sx.basis.clone(), iterations: sx.iterations }
}

/// Relaxed cardinality knapsack: `max u.x` with `w.x <= cap`, `sum x <= k`, `x in [0,1]`.
pub fn kp_relax_solve(utilities: &[f64], weights: &[f64], cap: f64, k: usize) -> Result<LpSolution> {
    let n = utilities.len();
    let mut lp = LpProblem::new(utilities.to_vec());
    for j in 0..n {
        lp.set_bounds(j, 0.0, 1.0);
    }
    lp.add_row(weights, RowSense::Le, cap.max(0.0));
    lp.add_row(&vec![1.0; n], RowSense::Le, k as f64);
    let sol = lp_solve(&lp, 1e-12)?;
    match sol.status {
        LpStatus::Optimal => Ok(sol),
        s => Err(Error::Internal(format!("relaxed knapsack reported {s:?}"))),
    }
}

/// Items fully in, the fractional pair (lighter first) and items left out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub p1: Vec<usize>,
    pub fractional: (Option<usize>, Option<usize>),
    pub p0: Vec<usize>,
}

impl Profile {
    /// Reads the profile of a relaxed solution. Components within `tol` of a
    /// bound count as integral; at most two fractional ones are expected.
    pub fn from_solution(x: &[f64], weights: &[f64], tol: f64) -> Result<Self> {
        let (mut p1, mut frac, mut p0) = (Vec::new(), Vec::new(), Vec::new());
        for (i, &v) in x.iter().enumerate() {
            if v >= 1.0 - tol {
                p1.push(i);
            } else if v <= tol {
                p0.push(i);
            } else {
                frac.push(i);
            }
        }
        if frac.len() > 2 {
            return Err(Error::Numerical(format!("{} fractional items in a basic solution", frac.len())));
        }
        frac.sort_by(|&i, &j| weights[i].total_cmp(&weights[j]).then(i.cmp(&j)));
        let fractional = match frac.as_slice() {
            [] => (None, None),
            [j] => (None, Some(*j)),
            [i, j] => (Some(*i), Some(*j)),
            _ => unreachable!(),
        };
        Ok(Profile { p1, fractional, p0 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn one_variable() {
        let mut lp = LpProblem::new(vec![1.0]);
        lp.set_bounds(0, 0.0, 2.0).add_row(&[1.0], RowSense::Le, 1.0);
        let s = lp_solve(&lp, 1e-9).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!(close(s.x[0], 1.0) && close(s.duals[0], 1.0));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LpProblem::new(vec![1.0]);
        lp.add_row(&[1.0], RowSense::Ge, 2.0).add_row(&[1.0], RowSense::Le, 1.0);
        assert_eq!(lp_solve(&lp, 1e-9).unwrap().status, LpStatus::Infeasible);

        let mut lp = LpProblem::new(vec![1.0, 1.0]);
        lp.add_row(&[1.0, -1.0], RowSense::Le, 1.0);
        assert_eq!(lp_solve(&lp, 1e-9).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn equality_and_free_variables() {
        // max x + 2y, x + y = 3, x - y >= -1, y free, x <= 2.5
        let mut lp = LpProblem::new(vec![1.0, 2.0]);
        lp.set_bounds(0, 0.0, 2.5).set_bounds(1, f64::NEG_INFINITY, f64::INFINITY);
        lp.add_row(&[1.0, 1.0], RowSense::Eq, 3.0).add_row(&[1.0, -1.0], RowSense::Ge, -1.0);
        let s = lp_solve(&lp, 1e-9).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!(close(s.x[0], 1.0) && close(s.x[1], 2.0), "{:?}", s.x);
        assert!(close(s.objective, 5.0));
        // Duality identity: c.x = y.b + rc.x
        let yb: f64 = s.duals.iter().zip(&lp.rhs).map(|(y, b)| y * b).sum();
        let rcx: f64 = s.reduced_costs.iter().zip(&s.x).map(|(r, x)| r * x).sum();
        assert!(close(s.objective, yb + rcx));
    }

    #[test]
    fn kp_relax_examples() {
        let s = kp_relax_solve(&[3.0, 2.0], &[1.0, 1.0], 0.0, 2).unwrap();
        assert!(s.x.iter().all(|&v| v.abs() < 1e-12) && s.objective.abs() < 1e-12);

        let s = kp_relax_solve(&[3.0, 2.0], &[1.0, 1.0], 1.5, 2).unwrap();
        assert!(close(s.x[0], 1.0) && close(s.x[1], 0.5) && close(s.objective, 4.0));

        let s = kp_relax_solve(&[3.0, 2.0], &[1.0, 2.0], 3.0, 1).unwrap();
        assert!(close(s.x[0], 1.0) && close(s.x[1], 0.0) && close(s.objective, 3.0));
    }

    #[test]
    fn profile_orders_fractional_pair_by_weight() {
        let p = Profile::from_solution(&[1.0, 0.3, 0.0, 0.7], &[1.0, 3.0, 1.0, 2.0], 1e-9).unwrap();
        assert_eq!(p.p1, vec![0]);
        assert_eq!(p.fractional, (Some(3), Some(1)));
        assert_eq!(p.p0, vec![2]);
        assert!(Profile::from_solution(&[0.5, 0.5, 0.5], &[1.0; 3], 1e-9).is_err());
    }

    #[test]
    fn resolve_is_deterministic() {
        let mut lp = LpProblem::new(vec![1.0, 1.0, 1.0]);
        lp.add_row(&[1.0, 1.0, 0.0], RowSense::Le, 1.0)
            .add_row(&[0.0, 1.0, 1.0], RowSense::Le, 1.0)
            .add_row(&[1.0, 0.0, 1.0], RowSense::Le, 1.0);
        let a = lp_solve(&lp, 1e-9).unwrap();
        let b = lp_solve(&lp, 1e-9).unwrap();
        assert_eq!(a.basis, b.basis);
        assert!(close(a.objective, 1.5));
    }

    #[test]
    fn warm_start_after_appending_a_column() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
        let mut lp = LpProblem::new(vec![3.0, 2.0]);
        lp.add_row(&[1.0, 1.0], RowSense::Le, 4.0)
            .add_row(&[1.0, 3.0], RowSense::Le, 6.0)
            .add_row(&[1.0, 0.0], RowSense::Le, 3.0);
        let first = lp_solve(&lp, 1e-9).unwrap();
        assert!(close(first.objective, 11.0));

        // Append z with cost 4 and column (1, 1, 0).
        let mut wide = LpProblem::new(vec![3.0, 2.0, 4.0]);
        wide.add_row(&[1.0, 1.0, 1.0], RowSense::Le, 4.0)
            .add_row(&[1.0, 3.0, 1.0], RowSense::Le, 6.0)
            .add_row(&[1.0, 0.0, 0.0], RowSense::Le, 3.0);
        let warm = lp_solve_from(&wide, 1e-9, &first.warm_start()).unwrap();
        let cold = lp_solve(&wide, 1e-9).unwrap();
        assert!(close(warm.objective, cold.objective) && close(warm.objective, 16.0));
        // Restarting an unchanged problem from its own optimum needs no pivots.
        let again = lp_solve_from(&lp, 1e-9, &first.warm_start()).unwrap();
        assert_eq!(again.iterations, 0);
        assert!(close(again.objective, 11.0));

        // Duplicate or missing entries fall back to a cold start.
        let bad = WarmStart { structurals: vec![0, 0], slacks: vec![1] };
        assert!(close(lp_solve_from(&wide, 1e-9, &bad).unwrap().objective, 16.0));
        let short = WarmStart { structurals: vec![], slacks: vec![0] };
        assert!(close(lp_solve_from(&wide, 1e-9, &short).unwrap().objective, 16.0));
    }
}
