//! Monte-Carlo success-rate sweeps: random support, random system with `n`
//! equations, success when a verified certificate comes back.

use std::fmt::Write as _;
use std::time::Duration;

use rayon::prelude::*;
use thiserror::Error;

use crate::certify::{certify_with, CertificateSolver, CertifyError, FewnomialSystem, Limits, SolverRegistry};
use crate::gf::{GfError, PrimeField};
use crate::random::{splitmix64, trial_rng, ModelError, ModelRegistry};
use crate::support::matching_number;

pub const CSV_HEADER: &str = "n,k,beta,trials,successes,rate,mean_nu,mean_t_phase1_ms,mean_t_phase2_ms";

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("unknown solver `{0}`")]
    Solver(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("solver `{0}` returned a certificate that does not verify")]
    Unsound(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: String,
    pub n_values: Vec<usize>,
    pub k: usize,
    pub beta: Option<f64>,
    pub trials: u64,
    pub prime: u64,
    pub seed: u64,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub solver: String,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            mode: "uniform-affine".into(),
            n_values: vec![10],
            k: 1,
            beta: Some(0.9),
            trials: 100,
            prime: 65521,
            seed: 0,
            jobs: 0,
            solver: crate::certify::DEFAULT_SOLVER.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TrialOutcome {
    pub success: bool,
    pub nu: usize,
    pub phase1: Duration,
    pub phase2: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub n: usize,
    pub k: usize,
    pub beta: Option<f64>,
    pub trials: u64,
    pub successes: u64,
    pub mean_nu: f64,
    pub mean_t_phase1_ms: f64,
    pub mean_t_phase2_ms: f64,
}

impl ExperimentRecord {
    pub fn rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    pub fn csv_row(&self) -> String {
        let beta = self.beta.map(|b| b.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{:.6},{:.4},{:.4},{:.4}",
            self.n,
            self.k,
            beta,
            self.trials,
            self.successes,
            self.rate(),
            self.mean_nu,
            self.mean_t_phase1_ms,
            self.mean_t_phase2_ms
        )
    }
}

pub fn to_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}

/// Seed of the point `n`; trial `t` then draws from `trial_rng(point_seed, t)`.
pub fn point_seed(seed: u64, n: usize) -> u64 {
    splitmix64(seed ^ splitmix64(n as u64 ^ 0x5EED))
}

/// One trial. A support without the constant cannot give a certificate and
/// counts as a failure.
pub fn run_trial(
    field: PrimeField,
    model: &dyn crate::random::SupportModel,
    solver: &dyn CertificateSolver,
    cfg: &ExperimentConfig,
    n: usize,
    t: u64,
) -> Result<TrialOutcome, ExperimentError> {
    let mut rng = trial_rng(point_seed(cfg.seed, n), t);
    let hs = model.sample(n, cfg.k, cfg.beta, &mut rng)?;
    let nu = matching_number(&hs.graph()).size();
    let Ok(support) = hs.dehomogenize() else {
        return Ok(TrialOutcome { nu, ..Default::default() });
    };
    let sys = FewnomialSystem::random(field, support, n.max(1), &mut rng);
    Ok(match certify_with(&sys, solver, &Limits::default()) {
        Ok(rep) => TrialOutcome { success: true, nu, phase1: rep.phase1, phase2: rep.phase2 },
        Err(CertifyError::Unsound(name)) => return Err(ExperimentError::Unsound(name)),
        Err(_) => TrialOutcome { success: false, nu, ..Default::default() },
    })
}

fn summarize(cfg: &ExperimentConfig, n: usize, outcomes: &[TrialOutcome]) -> ExperimentRecord {
    let trials = outcomes.len() as u64;
    let successes = outcomes.iter().filter(|o| o.success).count() as u64;
    let ms = |f: fn(&TrialOutcome) -> Duration| {
        if successes == 0 {
            0.0
        } else {
            outcomes.iter().filter(|o| o.success).map(|o| f(o).as_secs_f64() * 1e3).sum::<f64>() / successes as f64
        }
    };
    ExperimentRecord {
        n,
        k: cfg.k,
        beta: cfg.beta,
        trials,
        successes,
        mean_nu: outcomes.iter().map(|o| o.nu as f64).sum::<f64>() / trials as f64,
        mean_t_phase1_ms: ms(|o| o.phase1),
        mean_t_phase2_ms: ms(|o| o.phase2),
    }
}

/// One record per value of `n`, sorted by `n`. Results do not depend on the
/// worker count; only the timing columns vary between runs.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>, ExperimentError> {
    if cfg.trials == 0 {
        return Err(ExperimentError::Config("trials must be at least 1".into()));
    }
    if cfg.n_values.is_empty() {
        return Err(ExperimentError::Config("empty range of n".into()));
    }
    if let Some(b) = cfg.beta {
        if !(b > 0.0 && b <= 1.0) {
            return Err(ModelError::Beta(b).into());
        }
    }
    let field = PrimeField::new(cfg.prime)?;
    let models = ModelRegistry::default();
    let model = models.get(&cfg.mode)?;
    if model.needs_beta() && cfg.beta.is_none() {
        return Err(ModelError::MissingBeta(model.name()).into());
    }
    let solvers = SolverRegistry::default();
    let solver = solvers.get(&cfg.solver).map_err(|_| ExperimentError::Solver(cfg.solver.clone()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| ExperimentError::Config(e.to_string()))?;

    let mut ns = cfg.n_values.clone();
    ns.sort_unstable();
    ns.dedup();
    ns.iter()
        .map(|&n| {
            let outcomes: Vec<TrialOutcome> = pool.install(|| {
                (0..cfg.trials)
                    .into_par_iter()
                    .map(|t| run_trial(field, model, solver, cfg, n, t))
                    .collect::<Result<_, _>>()
            })?;
            Ok(summarize(cfg, n, &outcomes))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(mode: &str, beta: Option<f64>) -> ExperimentConfig {
        ExperimentConfig {
            mode: mode.into(),
            n_values: vec![12, 6],
            k: 1,
            beta,
            trials: 40,
            seed: 3,
            ..Default::default()
        }
    }

    #[test]
    fn deterministic_and_independent_of_jobs() {
        let a = run_experiment(&ExperimentConfig { jobs: 1, ..small("uniform-affine", Some(0.9)) }).unwrap();
        let b = run_experiment(&ExperimentConfig { jobs: 3, ..small("uniform-affine", Some(0.9)) }).unwrap();
        assert_eq!(a.iter().map(|r| r.n).collect::<Vec<_>>(), vec![6, 12]);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!((x.successes, x.mean_nu), (y.successes, y.mean_nu));
        }
    }

    #[test]
    fn every_mode_runs() {
        for mode in ["er", "uniform-affine", "uniform-homogeneous"] {
            let r = run_experiment(&small(mode, Some(0.8))).unwrap();
            assert!(r.iter().all(|r| r.successes <= r.trials));
        }
        run_experiment(&small("uniform-unconstrained", None)).unwrap();
        assert!(run_experiment(&small("er", None)).is_err());
        assert!(run_experiment(&small("uniform-affine", Some(1.5))).is_err());
        assert!(run_experiment(&ExperimentConfig { trials: 0, ..Default::default() }).is_err());
    }

    #[test]
    fn single_trial_rate_is_extreme() {
        let r = run_experiment(&ExperimentConfig { trials: 1, ..Default::default() }).unwrap();
        assert!(r[0].rate() == 0.0 || r[0].rate() == 1.0);
    }

    #[test]
    fn csv_layout() {
        let r = run_experiment(&ExperimentConfig { trials: 5, ..Default::default() }).unwrap();
        let csv = to_csv(&r);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 9);
        assert_eq!(&row[..4], &["10", "1", "0.9", "5"]);
    }
}
