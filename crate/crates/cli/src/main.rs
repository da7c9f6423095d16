use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fewnomial::allsquares::{self, AllSquaresError, AllSquaresSystem, CoreLimits, SquareClass};
use fewnomial::certify::{
    certify_with, verify_certificate, Certificate, CertifyError, FewnomialSystem, Limits, SolverRegistry,
    DEFAULT_SOLVER,
};
use fewnomial::experiment::{run_experiment, to_csv, ExperimentConfig};
use fewnomial::gf::PrimeField;
use fewnomial::random::{
    isolated_edge_stats, sample_isolated_edges, trial_rng, ErModelParams, ModelRegistry,
};
use fewnomial::support::{check_criterion, format_monomial, parse_monomial, Monomial, Support};

#[derive(Parser)]
#[command(name = "fewnomial", version, about = "Support-sized Nullstellensatz certificates for quadratic fewnomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random support and a system with uniform coefficients.
    Gen(GenArgs),
    /// Search for a certificate `sum h_i f_i = 1` with `h_i` over the support.
    Certify(CertifyArgs),
    /// Check a certificate against its system.
    Verify(VerifyArgs),
    /// Evaluate the matching-number criterion of a system's support.
    Criterion(CriterionArgs),
    /// Success-rate sweep over a range of n, as CSV.
    Experiment(ExperimentArgs),
    /// Isolated-edge moments in the ER model: closed forms against sampling.
    Stats(StatsArgs),
    /// Orbit description of the solutions of a system containing all squares.
    SolveAllsquares(AllSquaresArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    beta: Option<f64>,
    /// er, uniform-affine, uniform-affine-full, uniform-homogeneous, uniform-unconstrained or all-squares
    #[arg(long, default_value = "uniform-affine")]
    mode: String,
    #[arg(long, default_value_t = 65521)]
    prime: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Equation count (defaults to n).
    #[arg(long)]
    m: Option<usize>,
    /// Write only the support.
    #[arg(long)]
    support_only: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    system: PathBuf,
    #[arg(long, default_value = DEFAULT_SOLVER)]
    solver: String,
    #[arg(long)]
    max_columns: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    system: PathBuf,
    #[arg(long)]
    certificate: PathBuf,
}

#[derive(Args)]
struct CriterionArgs {
    /// A system file; its support and equation count are used.
    #[arg(long, conflicts_with = "support")]
    system: Option<PathBuf>,
    /// A bare support file (needs --m).
    #[arg(long)]
    support: Option<PathBuf>,
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, default_value = "uniform-affine")]
    mode: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, default_value_t = 10)]
    n_step: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 65521)]
    prime: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, default_value = DEFAULT_SOLVER)]
    solver: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AllSquaresArgs {
    #[arg(long)]
    system: PathBuf,
    /// Square-free monomial for the eliminant, e.g. `x0*x3`.
    #[arg(long)]
    mu: Option<String>,
    /// Print one representative point per orbit.
    #[arg(long)]
    points: bool,
    #[arg(long, default_value_t = 6)]
    max_core_vars: usize,
}

enum Failure {
    /// No certificate, failed verification, unmet criterion.
    Negative(String),
    Usage(String),
    Io(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_system(path: &Path) -> Result<FewnomialSystem, Failure> {
    FewnomialSystem::parse(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// File variables are 0-based: `x0` is the first variable.
fn var_name(i: u32) -> String {
    format!("x{}", i - 1)
}

fn gen(a: GenArgs) -> Outcome {
    let field = PrimeField::new(a.prime).map_err(usage)?;
    let mut rng = trial_rng(a.seed, 0);
    let support = if a.mode == "all-squares" {
        allsquares::random_all_squares_support(a.n, a.k, &mut rng)
    } else {
        let models = ModelRegistry::default();
        let model = models.get(&a.mode).map_err(usage)?;
        let hs = model.sample(a.n, a.k, a.beta, &mut rng).map_err(usage)?;
        if a.support_only {
            return emit(a.out.as_deref(), &hs.to_text());
        }
        hs.dehomogenize()
            .map_err(|_| Failure::Negative("sampled support has no constant monomial".into()))?
    };
    if a.support_only {
        return emit(a.out.as_deref(), &support.to_text());
    }
    let m = a.m.unwrap_or(a.n).max(1);
    let sys = FewnomialSystem::random(field, support, m, &mut rng);
    emit(a.out.as_deref(), &sys.to_text())
}

fn certify(a: CertifyArgs) -> Outcome {
    let sys = load_system(&a.system)?;
    let solvers = SolverRegistry::default();
    let solver = solvers.get(&a.solver).map_err(usage)?;
    let mut limits = Limits::default();
    if let Some(c) = a.max_columns {
        limits.max_columns = c;
    }
    match certify_with(&sys, solver, &limits) {
        Ok(rep) => {
            eprintln!(
                "certificate: {} nonzero coefficients, phase 1 {:.3} ms, phase 2 {:.3} ms",
                rep.certificate.nnz(),
                rep.phase1.as_secs_f64() * 1e3,
                rep.phase2.as_secs_f64() * 1e3
            );
            emit(a.out.as_deref(), &rep.certificate.to_text())
        }
        Err(e @ (CertifyError::NotFound { .. } | CertifyError::DimensionOverflow { .. })) => {
            Err(Failure::Negative(e.to_string()))
        }
        Err(e) => Err(usage(e)),
    }
}

fn verify(a: VerifyArgs) -> Outcome {
    let sys = load_system(&a.system)?;
    let text = read(&a.certificate)?;
    let cert = Certificate::parse(&text, sys.field(), sys.m(), sys.support().len())
        .map_err(|e| usage(format!("{}: {e}", a.certificate.display())))?;
    if verify_certificate(&sys, &cert) {
        println!("true");
        Ok(())
    } else {
        println!("false");
        Err(Failure::Negative("certificate does not verify".into()))
    }
}

fn criterion(a: CriterionArgs) -> Outcome {
    let (support, m) = match (&a.system, &a.support) {
        (Some(p), _) => {
            let sys = load_system(p)?;
            let m = a.m.unwrap_or(sys.m());
            (sys.support().clone(), m)
        }
        (None, Some(p)) => {
            let s = Support::parse(&read(p)?, None).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            (s, a.m.ok_or_else(|| usage("--support needs --m"))?)
        }
        (None, None) => return Err(usage("give --system or --support")),
    };
    let r = check_criterion(&support, m);
    println!("support_size,nu,m,minimal_m,holds");
    println!("{},{},{},{},{}", r.support_size, r.nu, r.m, r.minimal_m, r.holds);
    if r.holds {
        Ok(())
    } else {
        Err(Failure::Negative(format!("criterion needs m >= {}", r.minimal_m)))
    }
}

fn experiment(a: ExperimentArgs) -> Outcome {
    let n_max = a.n_max.unwrap_or(a.n);
    if n_max < a.n || a.n_step == 0 {
        return Err(usage("empty range of n"));
    }
    let cfg = ExperimentConfig {
        mode: a.mode,
        n_values: (a.n..=n_max).step_by(a.n_step).collect(),
        k: a.k,
        beta: a.beta,
        trials: a.trials,
        prime: a.prime,
        seed: a.seed,
        jobs: a.jobs,
        solver: a.solver,
    };
    let records = run_experiment(&cfg).map_err(usage)?;
    emit(a.out.as_deref(), &to_csv(&records))
}

fn stats(a: StatsArgs) -> Outcome {
    if a.trials < 2 {
        return Err(usage("--trials must be at least 2"));
    }
    let params = ErModelParams::new(a.n, a.p, a.q).map_err(usage)?;
    let exact = isolated_edge_stats(a.n, a.p, a.q);
    let sample = sample_isolated_edges(&params, a.trials, a.seed);
    let mut out = String::from("n,p,q,trials,mean_formula,mean_empirical,mean_z,var_formula,var_empirical,var_z\n");
    let _ = writeln!(
        out,
        "{},{},{},{},{:.6},{:.6},{:.3},{:.6},{:.6},{:.3}",
        a.n,
        a.p,
        a.q,
        a.trials,
        exact.mean,
        sample.mean,
        sample.mean_z(&exact),
        exact.variance,
        sample.variance,
        sample.variance_z(&exact)
    );
    emit(a.out.as_deref(), &out)
}

fn class_char(c: SquareClass) -> char {
    match c {
        SquareClass::Zero => '0',
        SquareClass::Residue => 'R',
        SquareClass::NonResidue => 'N',
    }
}

fn solve_allsquares(a: AllSquaresArgs) -> Outcome {
    let sys = AllSquaresSystem::new(load_system(&a.system)?).map_err(usage)?;
    let limits = CoreLimits { max_vars: a.max_core_vars, ..Default::default() };
    let orb = allsquares::orbit_representation(&sys, &limits).map_err(usage)?;
    let names = |vs: &[u32]| vs.iter().map(|&v| var_name(v)).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    let _ = writeln!(out, "n {}\nk {}\nell {}", sys.n(), sys.k(), sys.ell());
    let _ = writeln!(out, "edge_variables {}", names(&orb.edge_vars));
    let _ = writeln!(out, "core_solutions {}", orb.orbits.len());
    let _ = writeln!(out, "rational_solutions {}", orb.rational_solution_count());
    for (i, o) in orb.orbits.iter().enumerate() {
        let core: Vec<String> = o.core_point.iter().map(u32::to_string).collect();
        let profile: String = o.classes.iter().map(|&c| class_char(c)).collect();
        let _ = writeln!(out, "orbit {i} core ({}) squares {} points {}", core.join(","), profile, o.rational_size());
        if a.points {
            if let Some(rep) = &o.representative {
                let pt: Vec<String> = rep.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "  representative ({})", pt.join(","));
            }
        }
    }
    if let Some(mu) = &a.mu {
        let mono: Monomial = parse_monomial(mu.trim()).map_err(usage)?;
        let points: Vec<Vec<u32>> = orb.orbits.iter().map(|o| o.core_point.clone()).collect();
        let pm = allsquares::eliminant_of_points(orb.field, &orb.edge_vars, &points, mono).map_err(|e| match e {
            AllSquaresError::ForeignVariable(v) => usage(format!("{} is not an edge variable", var_name(v))),
            e => usage(e),
        })?;
        let coeffs: Vec<String> = pm.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "eliminant {} {}", format_monomial(mono), coeffs.join(" "));
    }
    emit(None, &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Certify(a) => certify(a),
        Command::Verify(a) => verify(a),
        Command::Criterion(a) => criterion(a),
        Command::Experiment(a) => experiment(a),
        Command::Stats(a) => stats(a),
        Command::SolveAllsquares(a) => solve_allsquares(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
