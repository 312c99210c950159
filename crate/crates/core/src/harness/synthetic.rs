//! Seeded instance generators.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Result};
use crate::instance::Instance;

/// How item quality is set.
#[derive(Debug, Clone, PartialEq)]
pub enum QualityRule {
    /// `q_i = w_i`
    Weight,
    /// `q_i ~ U[lo, hi]`
    Uniform(f64, f64),
}

/// Items with `r_i ~ U(revenue)`, `theta_i ~ U(theta)` and `w_i = exp(beta r_i + theta_i)`,
/// judged on visibility.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub n: usize,
    pub k: usize,
    pub delta: f64,
    pub beta: f64,
    pub revenue: (f64, f64),
    pub theta: (f64, f64),
    pub quality: QualityRule,
    pub seed: u64,
    pub count: usize,
}

impl SyntheticSpec {
    /// Ten items, at most five shown, revenues `U[0, 1]`, `theta ~ U[0, 0.5]`, `q = w`.
    pub fn price_sensitive(beta: f64, count: usize, seed: u64) -> Self {
        SyntheticSpec {
            n: 10,
            k: 5,
            delta: 0.0,
            beta,
            revenue: (0.0, 1.0),
            theta: (0.0, 0.5),
            quality: QualityRule::Weight,
            seed,
            count,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |(lo, hi): (f64, f64)| lo <= hi && lo.is_finite() && hi.is_finite();
        if !ok(self.revenue) || !ok(self.theta) {
            return input("ranges must be finite with lo <= hi");
        }
        if let QualityRule::Uniform(lo, hi) = self.quality {
            if !ok((lo, hi)) || hi <= 0.0 {
                return input("quality range must be finite, ordered and reach above 0");
            }
        }
        if self.count < 1 {
            return input("need at least one instance");
        }
        if self.k < 1 || self.k > self.n {
            return input(format!("K = {} outside 1..={}", self.k, self.n));
        }
        Ok(())
    }
}

/// Uniform draw that tolerates point ranges; a zero draw is nudged up so values stay positive.
pub(crate) fn draw(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..hi)
    }
}

fn positive(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        f64::MIN_POSITIVE
    }
}

pub fn gen_synthetic(spec: &SyntheticSpec) -> Result<Vec<Instance>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count)
        .map(|_| {
            let r: Vec<f64> = (0..spec.n).map(|_| positive(draw(&mut rng, spec.revenue))).collect();
            let theta: Vec<f64> = (0..spec.n).map(|_| draw(&mut rng, spec.theta)).collect();
            let w: Vec<f64> = r.iter().zip(&theta).map(|(r, t)| (spec.beta * r + t).exp()).collect();
            let q = match spec.quality {
                QualityRule::Weight => w.clone(),
                QualityRule::Uniform(lo, hi) => (0..spec.n).map(|_| positive(draw(&mut rng, (lo, hi)))).collect(),
            };
            Instance::visibility(spec.k, spec.delta, r, w, q)
        })
        .collect()
}

/// Two-type generator: items are split into groups by quality and by revenue.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoGroupSpec {
    pub n: usize,
    pub k: usize,
    pub delta: f64,
    pub high_q: (f64, f64),
    pub low_q: (f64, f64),
    pub high_r: (f64, f64),
    pub low_r: (f64, f64),
    pub beta: f64,
    pub theta: (f64, f64),
    pub seed: u64,
}

impl TwoGroupSpec {
    /// Four items, one per (quality, revenue) combination, at most two shown.
    pub fn quadrants(seed: u64) -> Self {
        TwoGroupSpec {
            n: 4,
            k: 2,
            delta: 0.0,
            high_q: (0.5, 1.0),
            low_q: (0.0, 0.5),
            high_r: (0.6, 1.0),
            low_r: (0.2, 0.6),
            beta: -1.0,
            theta: (0.0, 0.5),
            seed,
        }
    }
}

/// Item `i` has high quality when `i` is even and high revenue when `i mod 4 < 2`.
pub fn gen_two_group(spec: &TwoGroupSpec) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut r = Vec::with_capacity(spec.n);
    let mut q = Vec::with_capacity(spec.n);
    let mut w = Vec::with_capacity(spec.n);
    for i in 0..spec.n {
        let qi = draw(&mut rng, if i % 2 == 0 { spec.high_q } else { spec.low_q });
        let ri = draw(&mut rng, if i % 4 < 2 { spec.high_r } else { spec.low_r });
        let ti = draw(&mut rng, spec.theta);
        q.push(positive(qi));
        r.push(positive(ri));
        w.push((spec.beta * ri + ti).exp());
    }
    Instance::visibility(spec.k, spec.delta, r, w, q)
}

/// `m` highly attractive items with `theta ~ U[0.4, 1]`, the rest `U[0.2, 0.4]`; `q = w`.
#[derive(Debug, Clone, PartialEq)]
pub struct AttractiveSpec {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub delta: f64,
    pub beta: f64,
    pub seed: u64,
}

pub fn gen_attractive(spec: &AttractiveSpec) -> Result<Instance> {
    if spec.m < 1 || spec.m > spec.n.div_ceil(4) {
        return input(format!("m = {} outside 1..={}", spec.m, spec.n.div_ceil(4)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let r: Vec<f64> = (0..spec.n).map(|_| positive(draw(&mut rng, (0.0, 1.0)))).collect();
    let w: Vec<f64> = (0..spec.n)
        .map(|i| {
            let theta = draw(&mut rng, if i < spec.m { (0.4, 1.0) } else { (0.2, 0.4) });
            (spec.beta * r[i] + theta).exp()
        })
        .collect();
    Instance::visibility(spec.k, spec.delta, r, w.clone(), w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_determinism() {
        let spec = SyntheticSpec::price_sensitive(-1.0, 3, 7);
        let a = gen_synthetic(&spec).unwrap();
        let b = gen_synthetic(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        for inst in &a {
            assert_eq!((inst.n(), inst.k), (10, 5));
            assert_eq!(inst.q, inst.w);
            assert!(inst.is_visibility_fair());
            for i in 0..10 {
                let theta = inst.w[i].ln() + inst.r[i];
                assert!(inst.r[i] > 0.0 && inst.r[i] < 1.0);
                assert!((-1e-12..0.5 + 1e-12).contains(&theta));
            }
        }
    }

    #[test]
    fn zero_beta_decouples_weight_from_revenue() {
        let mut spec = SyntheticSpec::price_sensitive(0.0, 1, 3);
        spec.theta = (0.2, 0.2);
        let inst = &gen_synthetic(&spec).unwrap()[0];
        assert!(inst.w.iter().all(|&w| (w - 0.2f64.exp()).abs() < 1e-15));
    }

    #[test]
    fn point_ranges_are_constant() {
        let mut spec = TwoGroupSpec::quadrants(1);
        spec.high_q = (0.9, 0.9);
        spec.low_q = (0.1, 0.1);
        spec.high_r = (0.8, 0.8);
        spec.low_r = (0.3, 0.3);
        let inst = gen_two_group(&spec).unwrap();
        assert_eq!(inst.q, vec![0.9, 0.1, 0.9, 0.1]);
        assert_eq!(inst.r, vec![0.8, 0.8, 0.3, 0.3]);
    }

    #[test]
    fn quadrant_ranges() {
        for seed in 0..20 {
            let inst = gen_two_group(&TwoGroupSpec::quadrants(seed)).unwrap();
            assert!(inst.q[0] >= 0.5 && inst.q[1] < 0.5 && inst.q[2] >= 0.5 && inst.q[3] < 0.5);
            assert!(inst.r[0] >= 0.6 && inst.r[1] >= 0.6 && inst.r[2] < 0.6 && inst.r[3] < 0.6);
        }
    }

    #[test]
    fn attractive_items() {
        let inst = gen_attractive(&AttractiveSpec { n: 10, k: 3, m: 2, delta: 0.0, beta: -1.0, seed: 5 }).unwrap();
        assert_eq!(inst.q, inst.w);
        for i in 0..10 {
            let theta = inst.w[i].ln() + inst.r[i];
            if i < 2 {
                assert!(theta >= 0.4 - 1e-12);
            } else {
                assert!(theta <= 0.4 + 1e-12);
            }
        }
        assert!(gen_attractive(&AttractiveSpec { n: 10, k: 3, m: 4, delta: 0.0, beta: -1.0, seed: 5 }).is_err());
    }
}
