//! Isolated edges of the loop subgraph and their moments in the ER model.

use super::models::{gen_er_support, ErModelParams};
use super::rng::{trial_rng, TrialRng};
use crate::support::{matching_number, HomogeneousSupport, SupportGraph};

/// Edges `(i, j)` of `G'` such that no other looped vertex is adjacent in `G`
/// to `i` or `j`.
pub fn count_isolated_edges(g: &SupportGraph) -> usize {
    let looped_neighbours = |v: u32| g.neighbors(v).iter().filter(|&&w| g.has_loop(w)).count();
    g.loop_subgraph_edges()
        .filter(|&(i, j)| looped_neighbours(i) == 1 && looped_neighbours(j) == 1)
        .count()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolatedEdgeStats {
    pub mean: f64,
    pub variance: f64,
}

fn ln_binom(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// `ln(base^exp)`, with `0^0 = 1`.
fn ln_pow(base: f64, exp: usize) -> f64 {
    if exp == 0 {
        0.0
    } else {
        exp as f64 * base.ln()
    }
}

/// Closed-form mean and variance of the isolated-edge count on `n + 1`
/// vertices, loops with probability `q`, edges with probability `p`.
pub fn isolated_edge_stats(n: usize, p: f64, q: f64) -> IsolatedEdgeStats {
    assert!((0.0..=1.0).contains(&p) && (0.0..=1.0).contains(&q), "probabilities in [0, 1]");
    let others = n.saturating_sub(1);
    let ln_mean = ln_binom(n + 1, 2)
        + ln_pow(q, 2)
        + ln_pow(p, 1)
        + ln_pow(1.0 - q * (1.0 - (1.0 - p).powi(2)), others);
    let mean = ln_mean.exp();
    let pair = if n >= 3 {
        let ln_pair = 6f64.ln()
            + ln_binom(n + 1, 4)
            + ln_pow(q, 4)
            + ln_pow(p, 2)
            + ln_pow(1.0 - p, 4)
            + ln_pow(1.0 - q * (1.0 - (1.0 - p).powi(4)), n - 3);
        ln_pair.exp()
    } else {
        0.0
    };
    let variance = (mean - mean * mean + pair).max(0.0);
    IsolatedEdgeStats { mean, variance }
}

/// Sample moments of the isolated-edge count over ER draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleMoments {
    pub trials: u64,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    /// Fourth central moment, used for the standard error of the variance.
    pub fourth_central: f64,
}

fn z(diff: f64, se: f64) -> f64 {
    if se > 0.0 {
        diff / se
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY.copysign(diff)
    }
}

impl SampleMoments {
    /// `(mean - E) / sqrt(Var / trials)` against the closed forms.
    pub fn mean_z(&self, exact: &IsolatedEdgeStats) -> f64 {
        z(self.mean - exact.mean, (exact.variance / self.trials as f64).sqrt())
    }

    /// `(s^2 - Var) / se(s^2)` with `se^2 = (mu_4 - s^4) / trials`.
    pub fn variance_z(&self, exact: &IsolatedEdgeStats) -> f64 {
        let se = ((self.fourth_central - self.variance * self.variance).max(0.0) / self.trials as f64).sqrt();
        z(self.variance - exact.variance, se)
    }
}

pub fn sample_isolated_edges(params: &ErModelParams, trials: u64, seed: u64) -> SampleMoments {
    assert!(trials >= 2);
    let counts: Vec<f64> = (0..trials)
        .map(|t| count_isolated_edges(&gen_er_support(params, &mut trial_rng(seed, t)).graph()) as f64)
        .collect();
    let n = trials as f64;
    let mean = counts.iter().sum::<f64>() / n;
    let variance = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let fourth_central = counts.iter().map(|c| (c - mean).powi(4)).sum::<f64>() / n;
    SampleMoments { trials, mean, variance, fourth_central }
}

/// Empirical `P(nu >= threshold)` over `trials` draws, trial `t` using
/// `trial_rng(seed, t)`.
pub fn matching_tail_probability<F>(mut model: F, threshold: usize, trials: u64, seed: u64) -> f64
where
    F: FnMut(&mut TrialRng) -> HomogeneousSupport,
{
    assert!(trials >= 1);
    let hits = (0..trials)
        .filter(|&t| {
            let s = model(&mut trial_rng(seed, t));
            threshold == 0 || matching_number(&s.graph()).size() >= threshold
        })
        .count();
    hits as f64 / trials as f64
}
