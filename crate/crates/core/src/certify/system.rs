use rand::Rng;
use thiserror::Error;

use crate::gf::{GfError, PrimeField};
use crate::poly::SparsePoly;
use crate::support::{text, Support, SupportError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Support(#[from] SupportError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("system has no equations")]
    Empty,
    #[error("row {row} has {got} coefficients, expected {expected}")]
    RowLength { row: usize, got: usize, expected: usize },
    #[error("expected {expected} rows, found {got}")]
    RowCount { expected: usize, got: usize },
}

/// `m` polynomials sharing one affine support, stored as dense coefficient
/// rows aligned with the support order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FewnomialSystem {
    field: PrimeField,
    support: Support,
    rows: Vec<Vec<u32>>,
}

impl FewnomialSystem {
    /// Coefficients are reduced modulo p. At least one row is required.
    pub fn new(field: PrimeField, support: Support, rows: Vec<Vec<u32>>) -> Result<Self, FormatError> {
        if rows.is_empty() {
            return Err(FormatError::Empty);
        }
        Self::from_rows(field, support, rows)
    }

    /// Like [`FewnomialSystem::new`] but allows zero rows (a reduced system of
    /// rank 0).
    pub(crate) fn from_rows(field: PrimeField, support: Support, mut rows: Vec<Vec<u32>>) -> Result<Self, FormatError> {
        for (i, r) in rows.iter_mut().enumerate() {
            if r.len() != support.len() {
                return Err(FormatError::RowLength { row: i, got: r.len(), expected: support.len() });
            }
            r.iter_mut().for_each(|c| *c %= field.modulus());
        }
        Ok(FewnomialSystem { field, support, rows })
    }

    /// `m` polynomials with independent uniform coefficients.
    pub fn random(field: PrimeField, support: Support, m: usize, rng: &mut impl Rng) -> Self {
        let p = field.modulus();
        let rows = (0..m)
            .map(|_| (0..support.len()).map(|_| rng.random_range(0..p)).collect())
            .collect();
        FewnomialSystem { field, support, rows }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i]
    }

    pub fn poly(&self, i: usize) -> SparsePoly {
        SparsePoly::from_dense(self.field, self.support.monomials(), &self.rows[i])
    }

    pub fn polys(&self) -> Vec<SparsePoly> {
        (0..self.m()).map(|i| self.poly(i)).collect()
    }

    /// Header `p n m`, the support block, a blank line, then one coefficient
    /// line per polynomial in support order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.field.modulus(), self.support.n(), self.m());
        out.push_str(&self.support.to_text());
        out.push('\n');
        for r in &self.rows {
            out.push_str(&join(r));
            out.push('\n');
        }
        out
    }

    pub fn parse(input: &str) -> Result<Self, FormatError> {
        let mut lines = input.lines().enumerate().filter(|(_, l)| !l.trim_start().starts_with('#'));
        let (hline, header) = lines
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or(FormatError::Empty)?;
        let nums = parse_ints(header, hline)?;
        let [p, n, m] = nums[..] else {
            return Err(FormatError::Syntax { line: hline + 1, message: "header must be `p n m`".into() });
        };
        let field = PrimeField::new(p)?;
        let mut block = Vec::new();
        for (k, l) in lines.by_ref() {
            if l.trim().is_empty() {
                if block.is_empty() {
                    continue;
                }
                break;
            }
            block.push((k, l));
        }
        let monomials = text::parse_block(block.into_iter())?;
        let support = Support::new(n as usize, monomials)?;
        let rows = parse_rows(lines, support.len())?;
        if rows.len() != m as usize {
            return Err(FormatError::RowCount { expected: m as usize, got: rows.len() });
        }
        FewnomialSystem::new(field, support, rows)
    }
}

/// Cofactors `h_1..h_m` over the system support, as dense rows aligned with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    rows: Vec<Vec<u32>>,
}

impl Certificate {
    pub fn new(rows: Vec<Vec<u32>>) -> Certificate {
        Certificate { rows }
    }

    pub fn zero(m: usize, support_len: usize) -> Certificate {
        Certificate { rows: vec![vec![0; support_len]; m] }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn rows_mut(&mut self) -> &mut [Vec<u32>] {
        &mut self.rows
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn cofactors(&self, sys: &FewnomialSystem) -> Vec<SparsePoly> {
        self.rows
            .iter()
            .map(|r| SparsePoly::from_dense(sys.field(), sys.support().monomials(), r))
            .collect()
    }

    /// Number of nonzero coefficients.
    pub fn nnz(&self) -> usize {
        self.rows.iter().flatten().filter(|&&c| c != 0).count()
    }

    pub fn to_text(&self) -> String {
        self.rows.iter().map(|r| join(r) + "\n").collect()
    }

    /// Reads m lines of `support_len` integers.
    pub fn parse(input: &str, field: PrimeField, m: usize, support_len: usize) -> Result<Self, FormatError> {
        let mut rows = parse_rows(input.lines().enumerate(), support_len)?;
        if rows.len() != m {
            return Err(FormatError::RowCount { expected: m, got: rows.len() });
        }
        rows.iter_mut().flatten().for_each(|c| *c %= field.modulus());
        Ok(Certificate { rows })
    }
}

fn join(r: &[u32]) -> String {
    r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn parse_ints(line: &str, lineno: usize) -> Result<Vec<u64>, FormatError> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| FormatError::Syntax { line: lineno + 1, message: format!("bad integer `{t}`") })
        })
        .collect()
}

fn parse_rows<'a>(lines: impl Iterator<Item = (usize, &'a str)>, len: usize) -> Result<Vec<Vec<u32>>, FormatError> {
    let mut rows = Vec::new();
    for (k, l) in lines {
        if text::is_skippable(l) {
            continue;
        }
        let r: Vec<u32> = parse_ints(l, k)?
            .into_iter()
            .map(|v| u32::try_from(v).map_err(|_| FormatError::Syntax { line: k + 1, message: "integer too large".into() }))
            .collect::<Result<_, _>>()?;
        if r.len() != len {
            return Err(FormatError::RowLength { row: rows.len(), got: r.len(), expected: len });
        }
        rows.push(r);
    }
    Ok(rows)
}
