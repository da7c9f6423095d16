use rand::seq::index::sample;
use rand::Rng;
use thiserror::Error;

use super::rng::{floor_pow, TrialRng};
use crate::support::{HomogeneousSupport, Monomial};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("cannot draw {want} of {have} {what}")]
    TooMany { want: usize, have: usize, what: &'static str },
    #[error("model `{0}` needs a beta value")]
    MissingBeta(&'static str),
    #[error("beta {0} outside (0, 1]")]
    Beta(f64),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Slots of `C(vertices, 2)` in lexicographic order of `(i, j)`, converted
/// to monomials by one walk.
fn pairs_from_sorted(vertices: usize, mut slots: Vec<usize>) -> Vec<Monomial> {
    slots.sort_unstable();
    let mut out = Vec::with_capacity(slots.len());
    let (mut i, mut base) = (0usize, 0usize);
    for k in slots {
        while k >= base + (vertices - 1 - i) {
            base += vertices - 1 - i;
            i += 1;
        }
        out.push(Monomial::product(i as u32, (i + 1 + k - base) as u32));
    }
    out
}

/// Erdős–Rényi style model on `X_0..X_n`: each `X_i X_j` (`i < j`) with
/// probability `p`, each square with probability `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErModelParams {
    pub n: usize,
    pub p: f64,
    pub q: f64,
}

impl ErModelParams {
    pub fn new(n: usize, p: f64, q: f64) -> Result<Self, ModelError> {
        for v in [p, q] {
            if !(0.0..=1.0).contains(&v) {
                return Err(ModelError::Probability(v));
            }
        }
        Ok(ErModelParams { n, p, q })
    }

    /// `q = (n+1)^(beta-1)` and `p` chosen so that `E|M| = n + k + 1`.
    pub fn matched(n: usize, k: usize, beta: f64) -> Result<Self, ModelError> {
        let q = ((n + 1) as f64).powf(beta - 1.0);
        let slots = binom2(n + 1).max(1) as f64;
        let p = ((n + k + 1) as f64 - (n + 1) as f64 * q) / slots;
        ErModelParams::new(n, p.clamp(0.0, 1.0), q)
    }
}

/// Independent Bernoulli(`p`) choice over `len` slots by geometric skipping.
fn bernoulli_slots(len: usize, p: f64, rng: &mut impl Rng) -> Vec<usize> {
    if p <= 0.0 || len == 0 {
        return Vec::new();
    }
    if p >= 1.0 {
        return (0..len).collect();
    }
    let log_q = (1.0 - p).ln();
    let mut out = Vec::new();
    let mut k = 0usize;
    loop {
        let u: f64 = 1.0 - rng.random::<f64>();
        let skip = (u.ln() / log_q).floor();
        if !skip.is_finite() || skip >= (len - k) as f64 {
            break;
        }
        k += skip as usize;
        out.push(k);
        k += 1;
        if k >= len {
            break;
        }
    }
    out
}

pub fn gen_er_support(params: &ErModelParams, rng: &mut impl Rng) -> HomogeneousSupport {
    let v = params.n + 1;
    let mut mons = pairs_from_sorted(v, bernoulli_slots(binom2(v), params.p, rng));
    mons.extend(bernoulli_slots(v, params.q, rng).into_iter().map(|i| Monomial::square(i as u32)));
    HomogeneousSupport::new(params.n, mons).expect("distinct degree-2 monomials")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniformVariant {
    /// `a` square-free monomials and `b` squares among all of `X_0..X_n`.
    Homogeneous,
    /// The constant, `a` monomials of the forms `X_i`, `X_i X_j`, and `b - 1`
    /// squares `X_i^2` with `i >= 1` (homogenized: `X_0^2` is always there).
    Affine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniformModelParams {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub variant: UniformVariant,
}

impl UniformModelParams {
    pub fn new(n: usize, a: usize, b: usize, variant: UniformVariant) -> Result<Self, ModelError> {
        let nonsquares = binom2(n + 1);
        if a > nonsquares {
            return Err(ModelError::TooMany { want: a, have: nonsquares, what: "square-free monomials" });
        }
        let (want, have) = match variant {
            UniformVariant::Homogeneous => (b, n + 1),
            UniformVariant::Affine => {
                if b == 0 {
                    return Err(ModelError::TooMany { want: 0, have: 0, what: "squares (b counts the constant)" });
                }
                (b - 1, n)
            }
        };
        if want > have {
            return Err(ModelError::TooMany { want, have, what: "squares" });
        }
        Ok(UniformModelParams { n, a, b, variant })
    }
}

pub fn gen_uniform_support(params: &UniformModelParams, rng: &mut impl Rng) -> HomogeneousSupport {
    let v = params.n + 1;
    let picked = sample(rng, binom2(v), params.a).into_vec();
    let mut mons = pairs_from_sorted(v, picked);
    match params.variant {
        UniformVariant::Homogeneous => {
            mons.extend(sample(rng, v, params.b).iter().map(|i| Monomial::square(i as u32)));
        }
        UniformVariant::Affine => {
            mons.push(Monomial::square(0));
            mons.extend(sample(rng, params.n, params.b - 1).iter().map(|i| Monomial::square(i as u32 + 1)));
        }
    }
    HomogeneousSupport::new(params.n, mons).expect("distinct degree-2 monomials")
}

/// The constant plus `size - 1` of the other `C(n+2, 2) - 1` monomials of
/// degree at most 2, uniformly.
pub fn gen_unconstrained_support(n: usize, size: usize, rng: &mut impl Rng) -> Result<HomogeneousSupport, ModelError> {
    let v = n + 1;
    let others = binom2(v) + n;
    if size == 0 || size - 1 > others {
        return Err(ModelError::TooMany { want: size.saturating_sub(1), have: others, what: "monomials" });
    }
    let picked = sample(rng, others, size - 1).into_vec();
    let (pairs, squares): (Vec<usize>, Vec<usize>) = picked.into_iter().partition(|&k| k < binom2(v));
    let mut mons = pairs_from_sorted(v, pairs);
    mons.push(Monomial::square(0));
    mons.extend(squares.into_iter().map(|k| Monomial::square((k - binom2(v) + 1) as u32)));
    HomogeneousSupport::new(n, mons).map_err(|_| unreachable!("distinct monomials"))
}

/// A random support model driven by `(n, k, beta)`: supports of expected or
/// exact size `n + k + 1`, returned homogenized.
pub trait SupportModel: Send + Sync {
    fn name(&self) -> &'static str;
    fn needs_beta(&self) -> bool {
        true
    }
    fn sample(&self, n: usize, k: usize, beta: Option<f64>, rng: &mut TrialRng) -> Result<HomogeneousSupport, ModelError>;
}

fn require_beta(name: &'static str, beta: Option<f64>) -> Result<f64, ModelError> {
    let b = beta.ok_or(ModelError::MissingBeta(name))?;
    if !(b > 0.0 && b <= 1.0) {
        return Err(ModelError::Beta(b));
    }
    Ok(b)
}

/// Squares kept with probability `(n+1)^(beta-1)`, square-free monomials with
/// the probability matching `E|M| = n + k + 1`.
pub struct ErModel;

impl SupportModel for ErModel {
    fn name(&self) -> &'static str {
        "er"
    }
    fn sample(&self, n: usize, k: usize, beta: Option<f64>, rng: &mut TrialRng) -> Result<HomogeneousSupport, ModelError> {
        let beta = require_beta(self.name(), beta)?;
        Ok(gen_er_support(&ErModelParams::matched(n, k, beta)?, rng))
    }
}

/// The experimental model: `n + k` monomials, namely the constant, `b - 1`
/// non-constant squares and `n + k - b` other monomials, where
/// `b = floor(n^beta)` counts the constant as the square `X_0^2`.
pub struct UniformAffineModel;

impl SupportModel for UniformAffineModel {
    fn name(&self) -> &'static str {
        "uniform-affine"
    }
    fn sample(&self, n: usize, k: usize, beta: Option<f64>, rng: &mut TrialRng) -> Result<HomogeneousSupport, ModelError> {
        let b = floor_pow(n, require_beta(self.name(), beta)?).max(1);
        let a = (n + k).checked_sub(b).ok_or(ModelError::TooMany { want: b, have: n + k, what: "squares" })?;
        Ok(gen_uniform_support(&UniformModelParams::new(n, a, b, UniformVariant::Affine)?, rng))
    }
}

/// Like [`UniformAffineModel`] with the constant on top of `floor(n^beta)`
/// non-constant squares: `n + k + 1` monomials in all.
pub struct UniformAffineFullModel;

impl SupportModel for UniformAffineFullModel {
    fn name(&self) -> &'static str {
        "uniform-affine-full"
    }
    fn sample(&self, n: usize, k: usize, beta: Option<f64>, rng: &mut TrialRng) -> Result<HomogeneousSupport, ModelError> {
        let b = floor_pow(n, require_beta(self.name(), beta)?) + 1;
        let a = (n + k + 1).checked_sub(b).ok_or(ModelError::TooMany { want: b, have: n + k + 1, what: "squares" })?;
        Ok(gen_uniform_support(&UniformModelParams::new(n, a, b, UniformVariant::Affine)?, rng))
    }
}

/// `floor(n^beta)` squares among `X_0^2..X_n^2`, the rest square-free.
pub struct UniformHomogeneousModel;

impl SupportModel for UniformHomogeneousModel {
    fn name(&self) -> &'static str {
        "uniform-homogeneous"
    }
    fn sample(&self, n: usize, k: usize, beta: Option<f64>, rng: &mut TrialRng) -> Result<HomogeneousSupport, ModelError> {
        let b = floor_pow(n, require_beta(self.name(), beta)?);
        let a = (n + k + 1).checked_sub(b).ok_or(ModelError::TooMany { want: b, have: n + k + 1, what: "squares" })?;
        Ok(gen_uniform_support(&UniformModelParams::new(n, a, b, UniformVariant::Homogeneous)?, rng))
    }
}

/// Uniform among supports of size `n + k + 1` containing 1.
pub struct UniformUnconstrainedModel;

impl SupportModel for UniformUnconstrainedModel {
    fn name(&self) -> &'static str {
        "uniform-unconstrained"
    }
    fn needs_beta(&self) -> bool {
        false
    }
    fn sample(&self, n: usize, k: usize, _beta: Option<f64>, rng: &mut TrialRng) -> Result<HomogeneousSupport, ModelError> {
        gen_unconstrained_support(n, n + k + 1, rng)
    }
}

/// Support models selectable by name.
pub struct ModelRegistry {
    models: Vec<Box<dyn SupportModel>>,
}

impl Default for ModelRegistry {
    fn default() -> Self {
        ModelRegistry {
            models: vec![
                Box::new(ErModel),
                Box::new(UniformAffineModel),
                Box::new(UniformAffineFullModel),
                Box::new(UniformHomogeneousModel),
                Box::new(UniformUnconstrainedModel),
            ],
        }
    }
}

impl ModelRegistry {
    pub fn register(&mut self, model: Box<dyn SupportModel>) {
        self.models.retain(|m| m.name() != model.name());
        self.models.push(model);
    }

    pub fn get(&self, name: &str) -> Result<&dyn SupportModel, ModelError> {
        self.models
            .iter()
            .find(|m| m.name() == name)
            .map(|m| m.as_ref())
            .ok_or_else(|| ModelError::UnknownModel(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.models.iter().map(|m| m.name()).collect()
    }
}
