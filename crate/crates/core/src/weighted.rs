//! Edge-weighted complete graphs and the degree-product conditions on them:
//! the global inequality, the per-set condition used to accept a
//! `(t+1)`-set, the randomized disjoint-set partition search, and a
//! Monte-Carlo estimator for the bad-set probability.
//!
//! Weights are `f64` by default. The `*_exact` variants redo the slack
//! comparisons in exact rational arithmetic (weights and parameters are
//! interpreted through their shortest decimal representation), which makes
//! boundary cases reproducible; they expect short decimals like `0.55`.

use crate::exec;
use crate::graph::VertexSet;
use num_rational::Ratio;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Sub};

type Rat = Ratio<i128>;

#[derive(Clone, Debug, PartialEq)]
pub enum WeightedError {
    /// Fewer than 3 vertices: the pair sums range over an empty index set.
    DomainTooSmall {
        k: usize,
    },
    BadWeight {
        i: usize,
        j: usize,
        value: f64,
    },
    SelfPair {
        i: usize,
    },
    OutOfRange {
        index: usize,
        k: usize,
    },
    DuplicatePair {
        i: usize,
        j: usize,
    },
    /// The partition search requires the global inequality to hold.
    PreconditionFailed {
        pair: (usize, usize),
        slack: f64,
    },
    SetTooLarge {
        set_size: usize,
        k: usize,
    },
    RetriesExhausted {
        best_q: usize,
        needed: usize,
        trials: usize,
    },
    TooFewTrials {
        trials: u64,
    },
    Json(String),
    /// A decimal could not be converted for exact arithmetic.
    NotDecimal {
        value: f64,
    },
}

impl fmt::Display for WeightedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightedError::DomainTooSmall { k } => {
                write!(f, "need at least 3 vertices, got {k}")
            }
            WeightedError::BadWeight { i, j, value } => {
                write!(f, "weight d({i},{j}) = {value} outside [0,1]")
            }
            WeightedError::SelfPair { i } => write!(f, "weight on self pair ({i},{i})"),
            WeightedError::OutOfRange { index, k } => {
                write!(f, "vertex {index} out of range for k = {k}")
            }
            WeightedError::DuplicatePair { i, j } => {
                write!(f, "pair ({i},{j}) given twice")
            }
            WeightedError::PreconditionFailed { pair, slack } => write!(
                f,
                "global inequality fails at pair ({}, {}) with slack {slack:.6}",
                pair.0, pair.1
            ),
            WeightedError::SetTooLarge { set_size, k } => {
                write!(f, "sets of size {set_size} cannot fit in {k} vertices")
            }
            WeightedError::RetriesExhausted {
                best_q,
                needed,
                trials,
            } => write!(
                f,
                "no trial reached Q >= {needed} in {trials} tries (best Q = {best_q}); \
                 t is likely below the regime the bound needs"
            ),
            WeightedError::TooFewTrials { trials } => {
                write!(
                    f,
                    "{trials} trials give a meaningless interval; use at least 100"
                )
            }
            WeightedError::Json(msg) => write!(f, "bad weighted-graph JSON: {msg}"),
            WeightedError::NotDecimal { value } => {
                write!(f, "{value} has no finite decimal form for exact arithmetic")
            }
        }
    }
}

impl std::error::Error for WeightedError {}

/// Complete graph on `k` vertices with symmetric pair weights in `[0,1]`
/// (absent pairs weigh 0; the diagonal does not exist).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedReducedGraph {
    k: usize,
    weights: Vec<f64>,
}

/// JSON wire format: `{"k": 4, "triples": [[0, 1, 0.6], ...]}`.
#[derive(Serialize, Deserialize)]
struct WireFormat {
    k: usize,
    triples: Vec<(usize, usize, f64)>,
}

impl WeightedReducedGraph {
    pub fn new(k: usize) -> WeightedReducedGraph {
        WeightedReducedGraph {
            k,
            weights: vec![0.0; k * k.saturating_sub(1) / 2],
        }
    }

    pub fn uniform(k: usize, w: f64) -> WeightedReducedGraph {
        let mut g = WeightedReducedGraph::new(k);
        g.weights.fill(w);
        g
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i != j && i < self.k && j < self.k);
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        a * (2 * self.k - a - 1) / 2 + (b - a - 1)
    }

    pub fn set(&mut self, i: usize, j: usize, d: f64) -> Result<(), WeightedError> {
        if i == j {
            return Err(WeightedError::SelfPair { i });
        }
        for idx in [i, j] {
            if idx >= self.k {
                return Err(WeightedError::OutOfRange {
                    index: idx,
                    k: self.k,
                });
            }
        }
        if !(0.0..=1.0).contains(&d) {
            return Err(WeightedError::BadWeight { i, j, value: d });
        }
        let slot = self.slot(i, j);
        self.weights[slot] = d;
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.weights[self.slot(i, j)]
    }

    pub fn from_json(text: &str) -> Result<WeightedReducedGraph, WeightedError> {
        let wire: WireFormat =
            serde_json::from_str(text).map_err(|e| WeightedError::Json(e.to_string()))?;
        let mut g = WeightedReducedGraph::new(wire.k);
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, d) in wire.triples {
            if i != j && !seen.insert((i.min(j), i.max(j))) {
                return Err(WeightedError::DuplicatePair { i, j });
            }
            g.set(i, j, d)?;
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let triples: Vec<(usize, usize, f64)> = (0..self.k)
            .flat_map(|i| ((i + 1)..self.k).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j) != 0.0)
            .map(|(i, j)| (i, j, self.get(i, j)))
            .collect();
        serde_json::to_string(&WireFormat { k: self.k, triples }).expect("serializable")
    }

    /// Exact rational view of the weights (shortest-decimal interpretation).
    fn rational_weights(&self) -> Result<Vec<Rat>, WeightedError> {
        self.weights.iter().map(|&w| decimal_to_ratio(w)).collect()
    }
}

/// Converts through the shortest decimal representation, so `0.6` means
/// exactly 3/5.
pub(crate) fn decimal_to_ratio(x: f64) -> Result<Rat, WeightedError> {
    if !x.is_finite() {
        return Err(WeightedError::NotDecimal { value: x });
    }
    let text = format!("{x}");
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1i128, rest),
        None => (1i128, text.as_str()),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if frac_part.len() > 27 || int_part.len() > 10 {
        return Err(WeightedError::NotDecimal { value: x });
    }
    let digits: String = format!("{int_part}{frac_part}");
    let numer: i128 = digits
        .parse()
        .map_err(|_| WeightedError::NotDecimal { value: x })?;
    let denom = 10i128.pow(frac_part.len() as u32);
    Ok(Rat::new(sign * numer, denom))
}

/// Numeric abstraction shared by the float and exact paths.
trait Num:
    Clone + PartialOrd + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
}

impl Num for f64 {}
impl Num for Rat {}

/// `sum_{p not in {i,j}} (d_ip * d_jp - cmu * d_ip)` for the ordered pair.
fn pair_sum<T: Num>(weights: &[T], k: usize, i: usize, j: usize, cmu: &T) -> T {
    let slot = |a: usize, b: usize| -> usize {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        a * (2 * k - a - 1) / 2 + (b - a - 1)
    };
    let mut acc = T::zero();
    for p in 0..k {
        if p == i || p == j {
            continue;
        }
        let dip = weights[slot(i, p)].clone();
        let djp = weights[slot(j, p)].clone();
        acc = acc + dip.clone() * djp - cmu.clone() * dip;
    }
    acc
}

/// Outcome of the global inequality check over all ordered pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InequalityOutcome {
    /// Every ordered pair clears the bound; the tightest pair is reported.
    Pass {
        min_slack: f64,
        tightest: (usize, usize),
    },
    /// First failing ordered pair in scan order with its slack (negative).
    Fail { pair: (usize, usize), slack: f64 },
}

impl InequalityOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, InequalityOutcome::Pass { .. })
    }
}

fn inequality_core<T: Num>(
    weights: &[T],
    k: usize,
    cmu: &T,
    rhs: &T,
    to_f64: impl Fn(&T) -> f64,
) -> InequalityOutcome {
    let mut min_slack: Option<(f64, (usize, usize))> = None;
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let sum = pair_sum(weights, k, i, j, cmu);
            let slack = sum - rhs.clone();
            if slack < T::zero() {
                return InequalityOutcome::Fail {
                    pair: (i, j),
                    slack: to_f64(&slack),
                };
            }
            let s = to_f64(&slack);
            if min_slack.is_none_or(|(best, _)| s < best) {
                min_slack = Some((s, (i, j)));
            }
        }
    }
    let (min_slack, tightest) = min_slack.expect("k >= 3 checked by caller");
    InequalityOutcome::Pass {
        min_slack,
        tightest,
    }
}

/// Checks `sum_p (d_ip d_jp - (c + mu/6) d_ip) >= mu k / 24` for every
/// ordered pair `(i, j)`.
pub fn check_inequality_one(
    r: &WeightedReducedGraph,
    c: f64,
    mu: f64,
) -> Result<InequalityOutcome, WeightedError> {
    if r.k() < 3 {
        return Err(WeightedError::DomainTooSmall { k: r.k() });
    }
    let cmu = c + mu / 6.0;
    let rhs = mu * r.k() as f64 / 24.0;
    Ok(inequality_core(&r.weights, r.k(), &cmu, &rhs, |x| *x))
}

/// Exact-rational variant of [`check_inequality_one`].
pub fn check_inequality_one_exact(
    r: &WeightedReducedGraph,
    c: f64,
    mu: f64,
) -> Result<InequalityOutcome, WeightedError> {
    if r.k() < 3 {
        return Err(WeightedError::DomainTooSmall { k: r.k() });
    }
    let weights = r.rational_weights()?;
    let c = decimal_to_ratio(c)?;
    let mu = decimal_to_ratio(mu)?;
    let cmu = c + mu / Rat::from_integer(6);
    let rhs = mu * Rat::from_integer(r.k() as i128) / Rat::from_integer(24);
    Ok(inequality_core(&weights, r.k(), &cmu, &rhs, rat_to_f64))
}

fn rat_to_f64(x: &Rat) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn condition_e_core<T: Num>(weights: &[T], k: usize, members: &[usize], cmu: &T) -> bool {
    for &i in members {
        for &j in members {
            if i == j {
                continue;
            }
            let mut acc = T::zero();
            for &p in members {
                if p == i || p == j {
                    continue;
                }
                let slot = |a: usize, b: usize| -> usize {
                    let (a, b) = if a < b { (a, b) } else { (b, a) };
                    a * (2 * k - a - 1) / 2 + (b - a - 1)
                };
                let dip = weights[slot(i, p)].clone();
                let djp = weights[slot(j, p)].clone();
                acc = acc + dip.clone() * djp - cmu.clone() * dip;
            }
            // Strict positivity for every ordered pair; incomparable values
            // (float NaN) count as failures.
            if acc.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
                return false;
            }
        }
    }
    true
}

/// True iff the within-set sum is strictly positive for every ordered pair
/// of `s`. Requires `|s| >= 3`.
pub fn check_condition_e(r: &WeightedReducedGraph, s: &VertexSet, c: f64, mu: f64) -> bool {
    assert!(s.len() >= 3, "condition needs sets of size at least 3");
    let members: Vec<usize> = s.iter().collect();
    assert!(members.iter().all(|&v| v < r.k()), "set out of range");
    condition_e_core(&r.weights, r.k(), &members, &(c + mu / 6.0))
}

/// Exact-rational variant of [`check_condition_e`].
pub fn check_condition_e_exact(
    r: &WeightedReducedGraph,
    s: &VertexSet,
    c: f64,
    mu: f64,
) -> Result<bool, WeightedError> {
    assert!(s.len() >= 3, "condition needs sets of size at least 3");
    let members: Vec<usize> = s.iter().collect();
    let weights = r.rational_weights()?;
    let cmu = decimal_to_ratio(c)? + decimal_to_ratio(mu)? / Rat::from_integer(6);
    Ok(condition_e_core(&weights, r.k(), &members, &cmu))
}

/// Accepted family from [`random_partition_search`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionFamily {
    /// The good `(t+1)`-sets, pairwise disjoint.
    pub sets: Vec<VertexSet>,
    /// Good-set count (`sets.len()`), kept explicit for reporting.
    pub q: usize,
    /// The bound the family had to meet.
    pub required: usize,
    /// 1-based count of trials consumed (the successful one included).
    pub trials_used: usize,
}

/// Repeatedly draws a uniform random partition of the vertices into
/// `floor(k/(t+1))` disjoint `(t+1)`-sets, keeps those passing the per-set
/// condition, and accepts once the good count reaches
/// `(1 - mu / (8(t+1))) * floor(k/(t+1))`.
///
/// Trials are indexed and seeded independently, so the accepted trial is the
/// lowest-index success no matter how many workers run.
pub fn random_partition_search(
    r: &WeightedReducedGraph,
    c: f64,
    mu: f64,
    t: usize,
    seed: u64,
    retries: usize,
) -> Result<PartitionFamily, WeightedError> {
    let k = r.k();
    let set_size = t + 1;
    if set_size > k {
        return Err(WeightedError::SetTooLarge { set_size, k });
    }
    match check_inequality_one(r, c, mu)? {
        InequalityOutcome::Pass { .. } => {}
        InequalityOutcome::Fail { pair, slack } => {
            return Err(WeightedError::PreconditionFailed { pair, slack });
        }
    }
    let z = k / set_size;
    let required = ((1.0 - mu / (8.0 * set_size as f64)) * z as f64).ceil() as usize;
    let retries = retries.max(1);

    let run_trial = |trial: usize| -> (usize, Vec<VertexSet>) {
        let mut rng = ChaCha8Rng::seed_from_u64(exec::derive_seed(seed, trial as u64));
        let mut perm: Vec<usize> = (0..k).collect();
        use rand::seq::SliceRandom;
        perm.shuffle(&mut rng);
        let good: Vec<VertexSet> = perm
            .chunks_exact(set_size)
            .take(z)
            .map(|chunk| VertexSet::from_iter_unchecked(chunk.iter().copied()))
            .filter(|s| check_condition_e(r, s, c, mu))
            .collect();
        (good.len(), good)
    };

    if let Some((idx, (q, sets))) = exec::find_first_indexed(retries, |trial| {
        let (q, sets) = run_trial(trial);
        (q >= required).then_some((q, sets))
    }) {
        return Ok(PartitionFamily {
            sets,
            q,
            required,
            trials_used: idx + 1,
        });
    }

    let best_q = exec::map_indexed(retries, |trial| run_trial(trial).0)
        .into_iter()
        .max()
        .unwrap_or(0);
    Err(WeightedError::RetriesExhausted {
        best_q,
        needed: required,
        trials: retries,
    })
}

/// Monte-Carlo estimate of the probability that a uniform random
/// `(t+1)`-set fails the per-set condition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BadProbEstimate {
    pub trials: u64,
    pub bad: u64,
    pub estimate: f64,
    /// 95% Wilson score interval.
    pub wilson_low: f64,
    pub wilson_high: f64,
    /// The theoretical tail bound `C(t+1,2) exp(-mu^2 t / 1000)` the
    /// estimate is reported against (often vacuous for small `t`).
    pub reference_bound: f64,
}

/// Samples uniform `(t+1)`-subsets and reports the bad fraction with a 95%
/// Wilson interval. Refuses fewer than 100 trials.
pub fn estimate_bad_probability(
    r: &WeightedReducedGraph,
    c: f64,
    mu: f64,
    t: usize,
    trials: u64,
    seed: u64,
) -> Result<BadProbEstimate, WeightedError> {
    if trials < 100 {
        return Err(WeightedError::TooFewTrials { trials });
    }
    let k = r.k();
    let set_size = t + 1;
    if set_size > k {
        return Err(WeightedError::SetTooLarge { set_size, k });
    }

    let flags = exec::map_indexed(trials as usize, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(exec::derive_seed(seed, i as u64));
        let set = sample_subset(k, set_size, &mut rng);
        !check_condition_e(r, &set, c, mu)
    });
    let bad = flags.into_iter().filter(|&b| b).count() as u64;

    let estimate = bad as f64 / trials as f64;
    let (wilson_low, wilson_high) = wilson_interval(bad, trials);
    let pairs = (set_size * (set_size - 1) / 2) as f64;
    let reference_bound = pairs * (-mu * mu * t as f64 / 1000.0).exp();
    Ok(BadProbEstimate {
        trials,
        bad,
        estimate,
        wilson_low,
        wilson_high,
        reference_bound,
    })
}

fn sample_subset(k: usize, size: usize, rng: &mut ChaCha8Rng) -> VertexSet {
    // Floyd's algorithm.
    let mut chosen: Vec<usize> = Vec::with_capacity(size);
    for j in (k - size)..k {
        let t = rng.random_range(0..=j);
        if chosen.contains(&t) {
            chosen.push(j);
        } else {
            chosen.push(t);
        }
    }
    VertexSet::from_iter_unchecked(chosen)
}

/// 95% Wilson score interval for `bad` successes in `trials`.
fn wilson_interval(bad: u64, trials: u64) -> (f64, f64) {
    let z = 1.96f64;
    let n = trials as f64;
    let p = bad as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}
