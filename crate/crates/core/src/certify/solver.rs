use std::time::{Duration, Instant};

use thiserror::Error;

use super::{verify_certificate, Certificate, FewnomialSystem, MacaulaySolver, Reduction, StructuredSolver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    /// 1 is not in the span of `{mu f_i}`; `rank` is the dimension of that
    /// span inside `span(M^2)` of dimension `columns`.
    #[error("no certificate in the support span (rank {rank} of {columns})")]
    NotFound { rank: usize, columns: usize },
    #[error("working dimension {needed} exceeds the cap {cap}")]
    DimensionOverflow { needed: usize, cap: usize },
    #[error("unknown solver `{0}`")]
    UnknownSolver(String),
    #[error("solver `{0}` produced a certificate that does not verify")]
    Unsound(&'static str),
}

/// Limits shared by all solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Cap on the number of columns a solver may work with.
    pub max_columns: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_columns: 4_000_000 }
    }
}

/// Phase 2 back end: decides whether 1 lies in `span{mu f_i}` and extracts
/// cofactors.
pub trait CertificateSolver: Send + Sync {
    fn name(&self) -> &'static str;

    /// Whether [`CertificateSolver::solve`] wants the phase 1 reduction.
    fn uses_reduction(&self) -> bool {
        true
    }

    fn solve(&self, sys: &FewnomialSystem, red: Option<&Reduction>, limits: &Limits) -> Result<Certificate, CertifyError>;
}

/// Solvers selectable by name.
pub struct SolverRegistry {
    solvers: Vec<Box<dyn CertificateSolver>>,
}

impl Default for SolverRegistry {
    fn default() -> Self {
        let mut reg = SolverRegistry::empty();
        reg.register(Box::new(StructuredSolver));
        reg.register(Box::new(MacaulaySolver::default()));
        reg
    }
}

impl SolverRegistry {
    pub fn empty() -> SolverRegistry {
        SolverRegistry { solvers: Vec::new() }
    }

    /// Adds a solver; a later registration with the same name replaces it.
    pub fn register(&mut self, solver: Box<dyn CertificateSolver>) {
        self.solvers.retain(|s| s.name() != solver.name());
        self.solvers.push(solver);
    }

    pub fn get(&self, name: &str) -> Result<&dyn CertificateSolver, CertifyError> {
        self.solvers
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| CertifyError::UnknownSolver(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.solvers.iter().map(|s| s.name()).collect()
    }
}

pub const DEFAULT_SOLVER: &str = "structured";

#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub certificate: Certificate,
    pub phase1: Duration,
    pub phase2: Duration,
}

/// Runs phase 1 (when the solver wants it) and phase 2, then checks the
/// identity `sum f_i h_i = 1` before returning.
pub fn certify_with(sys: &FewnomialSystem, solver: &dyn CertificateSolver, limits: &Limits) -> Result<CertifyReport, CertifyError> {
    let t0 = Instant::now();
    let red = solver.uses_reduction().then(|| Reduction::new(sys));
    let phase1 = t0.elapsed();
    let t1 = Instant::now();
    let certificate = solver.solve(sys, red.as_ref(), limits)?;
    let phase2 = t1.elapsed();
    if !verify_certificate(sys, &certificate) {
        return Err(CertifyError::Unsound(solver.name()));
    }
    Ok(CertifyReport { certificate, phase1, phase2 })
}

/// Certificate `h` with `sum f_i h_i = 1` and every `h_i` in the span of the
/// support, using the default solver.
pub fn compute_certificate(sys: &FewnomialSystem) -> Result<Certificate, CertifyError> {
    let reg = SolverRegistry::default();
    certify_with(sys, reg.get(DEFAULT_SOLVER)?, &Limits::default()).map(|r| r.certificate)
}
