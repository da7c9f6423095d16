//! Monomial supports of degree at most two and their support graphs.
//!
//! An affine [`Support`] lives in variables `X_1..X_n` and always contains the
//! constant 1. Its homogenization (a [`HomogeneousSupport`]) adds `X_0` so that
//! every monomial has degree exactly two; the [`SupportGraph`] is read off the
//! homogeneous form.

mod criterion;
mod graph;
mod matching;
mod monomial;
mod relations;
pub(crate) mod text;

pub use criterion::{check_criterion, check_criterion_homogeneous, triangular_root, CriterionReport};
pub use graph::SupportGraph;
pub use matching::{matching_number, max_cardinality_matching, Matching};
pub use monomial::{Monomial, MAX_VARIABLE};
pub use relations::{card_m2, card_m2_homogeneous, count_relations, RelationCounts};
pub use text::{format_monomial, parse_monomial};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupportError {
    #[error("support must contain the constant monomial 1")]
    MissingConstant,
    #[error("duplicate monomial {0} in support")]
    Duplicate(Monomial),
    #[error("monomial {0} has degree above 2")]
    DegreeTooHigh(Monomial),
    #[error("monomial {0} is not homogeneous of degree 2")]
    NotHomogeneous(Monomial),
    #[error("monomial {monomial} uses a variable outside 1..={n}")]
    VariableOutOfRange { monomial: Monomial, n: usize },
    #[error("variable count {0} exceeds the supported maximum")]
    TooManyVariables(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A set of monomials of degree at most two in `X_1..X_n`, containing 1.
///
/// Monomials are kept sorted in [`Monomial`] order; positions in that order
/// index coefficient vectors throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Support {
    n: usize,
    monomials: Vec<Monomial>,
}

impl Support {
    pub fn new(n: usize, monomials: impl IntoIterator<Item = Monomial>) -> Result<Support, SupportError> {
        if n > (MAX_VARIABLE as usize) - 1 {
            return Err(SupportError::TooManyVariables(n));
        }
        let mut monomials: Vec<Monomial> = monomials.into_iter().collect();
        monomials.sort();
        for w in monomials.windows(2) {
            if w[0] == w[1] {
                return Err(SupportError::Duplicate(w[0]));
            }
        }
        for &m in &monomials {
            if m.degree() > 2 {
                return Err(SupportError::DegreeTooHigh(m));
            }
            if m.indices().any(|i| i == 0 || i as usize > n) {
                return Err(SupportError::VariableOutOfRange { monomial: m, n });
            }
        }
        if monomials.first() != Some(&Monomial::ONE) {
            return Err(SupportError::MissingConstant);
        }
        Ok(Support { n, monomials })
    }

    /// Number of variables `n` (variables are `X_1..X_n`).
    pub fn n(&self) -> usize {
        self.n
    }

    /// `|M|`, counting the constant.
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, idx: usize) -> Monomial {
        self.monomials[idx]
    }

    pub fn index_of(&self, m: Monomial) -> Option<usize> {
        self.monomials.binary_search(&m).ok()
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.index_of(m).is_some()
    }

    pub fn squares(&self) -> impl Iterator<Item = u32> + '_ {
        self.monomials.iter().filter_map(|m| m.as_square())
    }

    pub fn homogenize(&self) -> HomogeneousSupport {
        let monomials = self.monomials.iter().map(|m| m.homogenize());
        HomogeneousSupport::new(self.n, monomials).expect("homogenization of a valid support is valid")
    }

    pub fn graph(&self) -> SupportGraph {
        SupportGraph::from_support(&self.homogenize())
    }

    /// Renders the support in the one-monomial-per-line text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &m in &self.monomials {
            out.push_str(&format_monomial(m));
            out.push('\n');
        }
        out
    }

    /// Parses the text format. `n` defaults to the largest variable present.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Support, SupportError> {
        let monomials = text::parse_block(text.lines().enumerate())?;
        let inferred = monomials.iter().filter_map(|m| m.max_index()).max().unwrap_or(0) as usize;
        Support::new(n.unwrap_or(inferred), monomials)
    }
}

/// A set of degree-2 monomials in `X_0..X_n`.
///
/// Unlike [`Support`] it may be empty or lack `X_0^2`; random models produce
/// supports in this form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousSupport {
    n: usize,
    monomials: Vec<Monomial>,
}

impl HomogeneousSupport {
    pub fn new(n: usize, monomials: impl IntoIterator<Item = Monomial>) -> Result<Self, SupportError> {
        if n > (MAX_VARIABLE as usize) - 1 {
            return Err(SupportError::TooManyVariables(n));
        }
        let mut monomials: Vec<Monomial> = monomials.into_iter().collect();
        monomials.sort();
        for w in monomials.windows(2) {
            if w[0] == w[1] {
                return Err(SupportError::Duplicate(w[0]));
            }
        }
        for &m in &monomials {
            if m.degree() != 2 {
                return Err(SupportError::NotHomogeneous(m));
            }
            if m.indices().any(|i| i as usize > n) {
                return Err(SupportError::VariableOutOfRange { monomial: m, n });
            }
        }
        Ok(HomogeneousSupport { n, monomials })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: Monomial) -> Option<usize> {
        self.monomials.binary_search(&m).ok()
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.index_of(m).is_some()
    }

    /// True when `X_0^2` (the homogenized constant) is present.
    pub fn has_constant(&self) -> bool {
        self.contains(Monomial::square(0))
    }

    pub fn square_count(&self) -> usize {
        self.monomials.iter().filter(|m| m.as_square().is_some()).count()
    }

    /// Sets `X_0 = 1`; fails when the result would not contain 1.
    pub fn dehomogenize(&self) -> Result<Support, SupportError> {
        Support::new(self.n, self.monomials.iter().map(|m| m.dehomogenize()))
    }

    pub fn graph(&self) -> SupportGraph {
        SupportGraph::from_support(self)
    }

    /// Text form of the dehomogenized monomials (`1` stands for `X_0^2`).
    pub fn to_text(&self) -> String {
        let mut affine: Vec<Monomial> = self.monomials.iter().map(|m| m.dehomogenize()).collect();
        affine.sort();
        affine.iter().map(|&m| format_monomial(m) + "\n").collect()
    }
}
