//! Splitting `[0, W_cap]` into intervals on which the knapsack keeps its shape.
//!
//! Every condition that can change (utility signs, utility order, ratio order
//! and the order of swap slopes sharing an item) is linear in `s = 1/(1+W)`,
//! so each root is a single division.

use super::KnapsackView;

const MERGE_TOL: f64 = 1e-10;

/// `[lo, hi)`, except the last interval of a partition which also holds `hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WellBehavingPartition {
    pub breakpoints: Vec<f64>,
    pub intervals: Vec<Interval>,
    pub w_cap: f64,
}

impl WellBehavingPartition {
    /// Builds consecutive intervals over `[0, w_cap]` from sorted interior points.
    pub fn from_points(mut points: Vec<f64>, w_cap: f64) -> Self {
        points.retain(|&w| w > 0.0 && w < w_cap);
        points.sort_by(f64::total_cmp);
        let mut breakpoints: Vec<f64> = Vec::with_capacity(points.len());
        for p in points {
            if breakpoints.last().is_none_or(|&last| p - last > MERGE_TOL) {
                breakpoints.push(p);
            }
        }
        let mut intervals = Vec::with_capacity(breakpoints.len() + 1);
        if w_cap > 0.0 {
            let mut lo = 0.0;
            for &b in &breakpoints {
                intervals.push(Interval { lo, hi: b });
                lo = b;
            }
            intervals.push(Interval { lo, hi: w_cap });
        }
        WellBehavingPartition { breakpoints, intervals, w_cap }
    }
}

/// Root of `coef * s = rhs` as a capacity `W = 1/s - 1`, if `s` is in `(0, 1]`.
fn root(coef: f64, rhs: f64) -> Option<f64> {
    if coef == 0.0 {
        return None;
    }
    let s = rhs / coef;
    (s > 0.0 && s <= 1.0).then(|| 1.0 / s - 1.0)
}

/// Slope of `u_j - u_i` over `w_j - w_i` as `a * s - b`.
fn slope_line(v: &KnapsackView, i: usize, j: usize) -> (f64, f64) {
    let dw = v.w[j] - v.w[i];
    let a = if v.r[i] == v.r[j] { v.r[i] } else { (v.r[j] * v.w[j] - v.r[i] * v.w[i]) / dw };
    (a, (v.c[j] - v.c[i]) / dw)
}

pub fn breakpoints(v: &KnapsackView) -> WellBehavingPartition {
    let n = v.len();
    let mut pts = Vec::new();
    for i in 0..n {
        pts.extend(root(v.r[i] * v.w[i], v.c[i]));
        for j in i + 1..n {
            pts.extend(root(v.r[i] * v.w[i] - v.r[j] * v.w[j], v.c[i] - v.c[j]));
            pts.extend(root(v.r[i] - v.r[j], v.c[i] / v.w[i] - v.c[j] / v.w[j]));
        }
    }
    for i in 0..n {
        let others: Vec<usize> = (0..n).filter(|&j| j != i && v.w[j] != v.w[i]).collect();
        let lines: Vec<(f64, f64)> = others.iter().map(|&j| slope_line(v, i, j)).collect();
        for x in 0..lines.len() {
            for y in x + 1..lines.len() {
                let (a1, b1) = lines[x];
                let (a2, b2) = lines[y];
                let da = if a1 == a2 { 0.0 } else { a1 - a2 };
                pts.extend(root(da, b1 - b2));
            }
        }
    }
    WellBehavingPartition::from_points(pts, v.w_cap())
}

/// Order signature used to certify that an interval is well behaved.
#[doc(hidden)]
pub fn orderings(v: &KnapsackView, cap: f64) -> Vec<Vec<i8>> {
    let n = v.len();
    let u: Vec<f64> = (0..n).map(|i| v.utility(i, cap)).collect();
    let sgn = |x: f64| -> i8 {
        if x > 0.0 {
            1
        } else if x < 0.0 {
            -1
        } else {
            0
        }
    };
    let mut sig = vec![u.iter().map(|&x| sgn(x)).collect::<Vec<_>>()];
    let mut by_u = Vec::new();
    let mut by_ratio = Vec::new();
    let mut by_slope = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            by_u.push(sgn(u[i] - u[j]));
            by_ratio.push(sgn(u[i] / v.w[i] - u[j] / v.w[j]));
        }
        let slope = |j: usize| (u[j] - u[i]) / (v.w[j] - v.w[i]);
        let others: Vec<usize> = (0..n).filter(|&j| j != i && v.w[j] != v.w[i]).collect();
        for x in 0..others.len() {
            for y in x + 1..others.len() {
                by_slope.push(sgn(slope(others[x]) - slope(others[y])));
            }
        }
    }
    sig.extend([by_u, by_ratio, by_slope]);
    sig
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_solved_roots() {
        let v = KnapsackView::from_parts(vec![1.0, 1.0], vec![0.2, 0.5], vec![1.0, 2.0], 2);
        // W_cap = 3 keeps the utility root 7/3 but drops sign roots at 4 and 3.
        let p = breakpoints(&v);
        assert_eq!(p.breakpoints.len(), 1);
        assert!((p.breakpoints[0] - 7.0 / 3.0).abs() < 1e-12);

        let wide = KnapsackView { w: vec![1.0, 2.0, 5.0], r: vec![1.0, 1.0, 1.0], c: vec![0.2, 0.5, 10.0], ids: vec![0, 1, 2], k: 2 };
        let p = breakpoints(&wide);
        for want in [4.0, 3.0, 7.0 / 3.0] {
            assert!(p.breakpoints.iter().any(|b| (b - want).abs() < 1e-9), "{want} missing from {:?}", p.breakpoints);
        }
    }

    #[test]
    fn uniform_revenue_has_no_ratio_or_slope_roots() {
        let r = 0.7;
        let v = KnapsackView::from_parts(vec![r; 4], vec![0.1, -0.2, 0.3, 0.05], vec![0.5, 1.3, 0.9, 2.2], 2);
        let p = breakpoints(&v);
        assert!(p.breakpoints.len() <= 2 * 4 * 4);
        let n = 4;
        let mut expect = Vec::new();
        for i in 0..n {
            expect.extend(root(v.r[i] * v.w[i], v.c[i]));
            for j in i + 1..n {
                expect.extend(root(v.r[i] * v.w[i] - v.r[j] * v.w[j], v.c[i] - v.c[j]));
            }
        }
        let only = WellBehavingPartition::from_points(expect, v.w_cap());
        assert_eq!(p.breakpoints, only.breakpoints);
    }

    #[test]
    fn zero_costs_have_no_sign_roots() {
        let v = KnapsackView::from_parts(vec![1.0, 0.4], vec![0.0, 0.0], vec![1.0, 3.0], 1);
        let p = breakpoints(&v);
        for b in &p.breakpoints {
            assert!((0..2).all(|i| v.utility(i, *b).abs() > 1e-12));
        }
    }

    #[test]
    fn intervals_tile_the_range() {
        let p = WellBehavingPartition::from_points(vec![2.0, 1.0, 1.0 + 1e-12, -1.0, 9.0], 3.0);
        assert_eq!(p.breakpoints, vec![1.0, 2.0]);
        assert_eq!(p.intervals.len(), 3);
        assert_eq!(p.intervals[0].lo, 0.0);
        assert_eq!(p.intervals[2].hi, 3.0);
    }
}
