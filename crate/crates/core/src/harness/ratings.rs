//! Building market-share instances from (user, item, rating) records.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Error, Result};
use crate::instance::Instance;

/// Genre columns of the MovieLens `u.item` file, in order.
pub const GENRES: [&str; 19] = [
    "unknown", "action", "adventure", "animation", "children", "comedy", "crime", "documentary", "drama",
    "fantasy", "film-noir", "horror", "musical", "mystery", "romance", "sci-fi", "thriller", "war", "western",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RatingsSpec {
    pub min_raters: usize,
    pub min_avg: f64,
    pub top_n: usize,
    pub scale: f64,
    pub k: usize,
    pub delta: f64,
    /// Field separator; `None` splits on any whitespace.
    pub delimiter: Option<char>,
}

impl Default for RatingsSpec {
    fn default() -> Self {
        RatingsSpec { min_raters: 5, min_avg: 3.0, top_n: 20, scale: 1.0 / 20.0, k: 5, delta: 0.0, delimiter: None }
    }
}

impl RatingsSpec {
    pub fn validate(&self) -> Result<()> {
        if self.scale.is_nan() || self.scale <= 0.0 {
            return input("weight scale must be positive");
        }
        if self.top_n < self.k || self.k < 1 {
            return input(format!("need 1 <= K <= topN, got K = {} and topN = {}", self.k, self.top_n));
        }
        Ok(())
    }
}

fn fields(line: &str, delimiter: Option<char>) -> Vec<&str> {
    match delimiter {
        Some(d) => line.split(d).map(str::trim).collect(),
        None => line.split_whitespace().collect(),
    }
}

/// Per-item `(count, mean rating)` from rating rows. Blank lines and `#` comments are skipped.
pub fn item_averages(text: &str, delimiter: Option<char>) -> Result<BTreeMap<u64, (usize, f64)>> {
    let mut acc: BTreeMap<u64, (usize, f64)> = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f = fields(line, delimiter);
        let bad = |msg: &str| Error::Parse { line: idx + 1, msg: msg.to_string() };
        if f.len() < 3 {
            return Err(bad("expected user, item and rating fields"));
        }
        f[0].parse::<u64>().map_err(|_| bad("user id is not an integer"))?;
        let item = f[1].parse::<u64>().map_err(|_| bad("item id is not an integer"))?;
        let rating = f[2].parse::<f64>().map_err(|_| bad("rating is not a number"))?;
        if !rating.is_finite() {
            return Err(bad("rating is not finite"));
        }
        let e = acc.entry(item).or_insert((0, 0.0));
        e.0 += 1;
        e.1 += rating;
    }
    Ok(acc.into_iter().map(|(k, (c, s))| (k, (c, s / c as f64))).collect())
}

/// Item ids flagged with `genre` in a pipe-delimited item file (id, title, dates, url, flags).
pub fn items_in_genre(text: &str, genre: &str) -> Result<BTreeSet<u64>> {
    let col = GENRES
        .iter()
        .position(|g| g.eq_ignore_ascii_case(genre))
        .ok_or_else(|| Error::Input(format!("unknown genre '{genre}'")))?;
    let mut out = BTreeSet::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('|').collect();
        let bad = |msg: &str| Error::Parse { line: idx + 1, msg: msg.to_string() };
        if f.len() < 5 + GENRES.len() {
            return Err(bad("item row has too few fields"));
        }
        let id = f[0].trim().parse::<u64>().map_err(|_| bad("item id is not an integer"))?;
        let flags = &f[f.len() - GENRES.len()..];
        if flags[col].trim() == "1" {
            out.insert(id);
        }
    }
    Ok(out)
}

/// Builds an instance with `w = s * gamma`, `q = w`, `r = 1` and visibility outcomes.
///
/// `gamma` is the average rating; items need `min_raters` ratings and an average
/// of at least `min_avg`, and the `top_n` best rated are kept.
pub fn ingest_ratings(path: impl AsRef<Path>, spec: &RatingsSpec, genre: Option<(&Path, &str)>) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    let allowed = match genre {
        Some((items, name)) => Some(items_in_genre(&std::fs::read_to_string(items)?, name)?),
        None => None,
    };
    instance_from_ratings(&text, spec, allowed.as_ref())
}

pub fn instance_from_ratings(text: &str, spec: &RatingsSpec, allowed: Option<&BTreeSet<u64>>) -> Result<Instance> {
    spec.validate()?;
    let mut items: Vec<(u64, f64)> = item_averages(text, spec.delimiter)?
        .into_iter()
        .filter(|(id, (count, avg))| {
            *count >= spec.min_raters && *avg >= spec.min_avg && allowed.is_none_or(|a| a.contains(id))
        })
        .map(|(id, (_, avg))| (id, avg))
        .collect();
    items.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    items.truncate(spec.top_n);
    if items.len() < spec.k {
        return input(format!("only {} items survive the filters, fewer than K = {}", items.len(), spec.k));
    }
    let n = items.len();
    let w: Vec<f64> = items.iter().map(|(_, g)| spec.scale * g).collect();
    let inst = Instance::visibility(spec.k, spec.delta, vec![1.0; n], w.clone(), w)?;
    inst.with_labels(items.iter().map(|(id, _)| id.to_string()).collect())
}

/// Spread of average ratings among the most-rated films of a typical
/// movie-ratings dump, used by the stand-in generator.
#[allow(clippy::approx_constant)] // a ratings average, not pi
pub const STAND_IN_GAMMA: (f64, f64) = (3.14, 4.09);

/// Synthetic ratings file: `n_items` items whose target averages are `U[lo, hi]`,
/// plus a few items that the default filters reject.
pub fn stand_in_ratings(n_items: usize, gamma: (f64, f64), seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    let mut emit = |rng: &mut ChaCha8Rng, item: usize, target: f64, raters: usize| {
        let base = target.floor();
        for u in 0..raters {
            let rating = base + if rng.gen_bool((target - base).clamp(0.0, 1.0)) { 1.0 } else { 0.0 };
            let _ = writeln!(out, "{}\t{}\t{}\t0", u + 1, item, rating.min(5.0));
        }
    };
    for item in 1..=n_items {
        let target = super::synthetic::draw(&mut rng, gamma);
        let raters = rng.gen_range(40..120);
        emit(&mut rng, item, target, raters);
    }
    // Too few raters, and too low an average.
    emit(&mut rng, n_items + 1, 5.0, 3);
    emit(&mut rng, n_items + 2, 2.0, 50);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_filters() {
        let text = "1\t10\t4\t0\n2\t10\t5\t0\n1\t11\t2\t0\n2\t11\t3\t0\n\n# comment\n3\t12\t5\t0\n";
        let avgs = item_averages(text, Some('\t')).unwrap();
        assert_eq!(avgs[&10], (2, 4.5));
        let spec = RatingsSpec { min_raters: 2, min_avg: 3.0, top_n: 5, k: 1, ..Default::default() };
        let inst = instance_from_ratings(text, &spec, None).unwrap();
        assert_eq!(inst.n(), 1);
        assert_eq!(inst.labels.as_ref().unwrap()[0], "10");
        assert!((inst.w[0] - 4.5 / 20.0).abs() < 1e-15);
        assert_eq!(inst.q, inst.w);
        assert_eq!(inst.r, vec![1.0]);
    }

    #[test]
    fn malformed_rows_report_line() {
        let err = item_averages("1 2 3\n1 x 3\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = item_averages("1 2\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn too_few_items() {
        let spec = RatingsSpec { min_raters: 1, top_n: 5, k: 3, ..Default::default() };
        assert!(matches!(instance_from_ratings("1 1 4\n1 2 4\n", &spec, None), Err(Error::Input(_))));
    }

    #[test]
    fn equal_ratings_give_equal_weights() {
        let text: String = (1..=4).flat_map(|i| (1..=5).map(move |u| format!("{u} {i} 4\n"))).collect();
        let spec = RatingsSpec { top_n: 4, k: 2, ..Default::default() };
        let inst = instance_from_ratings(&text, &spec, None).unwrap();
        assert!(inst.w.iter().all(|&w| w == inst.w[0]));
    }

    #[test]
    fn genre_filter() {
        let row = |id: u64, drama: bool| {
            let mut flags = vec!["0"; 19];
            if drama {
                flags[8] = "1";
            }
            format!("{id}|Title|01-Jan-1995||http://x|{}", flags.join("|"))
        };
        let text = format!("{}\n{}\n", row(1, true), row(2, false));
        assert_eq!(items_in_genre(&text, "Drama").unwrap(), BTreeSet::from([1]));
        assert!(items_in_genre(&text, "opera").is_err());
    }

    #[test]
    fn stand_in_is_deterministic_and_filtered() {
        let a = stand_in_ratings(25, STAND_IN_GAMMA, 11);
        assert_eq!(a, stand_in_ratings(25, STAND_IN_GAMMA, 11));
        let inst = instance_from_ratings(&a, &RatingsSpec::default(), None).unwrap();
        assert_eq!(inst.n(), 20);
        let labels = inst.labels.unwrap();
        assert!(!labels.contains(&"26".to_string()) && !labels.contains(&"27".to_string()));
    }
}
