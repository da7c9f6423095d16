use rand::Rng;
use thiserror::Error;

use super::{product_span_rank, FewnomialSystem};
use crate::gf::PrimeField;
use crate::linalg::{EchelonBasis, PivotRule, SparseVec};
use crate::support::{matching_number, triangular_root, HomogeneousSupport, Matching, Monomial, Support};

/// Draws allowed for the spanning squares before giving up.
pub const SPANNING_RETRIES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("no spanning set of squares found for t = {t} after {attempts} draws")]
    ConstructionFailed { t: usize, attempts: usize },
}

/// Linear forms `l_1..l_p` in `t` variables with
/// `<X_1^2, .., X_t^2, l_1, .., l_p>` containing every degree-2 monomial,
/// where `p = t - triangular_root(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareSpanningForms {
    pub t: usize,
    /// Rows `l''_1..l''_t` of the change of variables.
    pub theta: Vec<Vec<u32>>,
    /// Rows `l_1..l_p`, each of length `t`.
    pub forms: Vec<Vec<u32>>,
}

fn pair_index(t: usize, a: usize, b: usize) -> u32 {
    let (a, b) = (a.min(b), a.max(b));
    (a * t - a * (a + 1) / 2 + b) as u32
}

/// Rank of the squares of `forms` (each in `s` variables) among quadratic forms.
fn square_rank(field: PrimeField, forms: &[Vec<u32>], s: usize) -> usize {
    let mut basis = EchelonBasis::new(field, s * (s + 1) / 2, PivotRule::Leading, false);
    for (k, l) in forms.iter().enumerate() {
        let mut pairs = Vec::new();
        for a in 0..s {
            for b in a..s {
                let c = field.mul(l[a], l[b]);
                pairs.push((pair_index(s, a, b), if a == b { c } else { field.add(c, c) }));
            }
        }
        basis.insert(&SparseVec::from_pairs(field, pairs), k as u32);
    }
    basis.rank()
}

fn invert(field: PrimeField, m: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let t = m.len();
    let mut a: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..t).map(|j| (i == j) as u32));
            row
        })
        .collect();
    for c in 0..t {
        let r = (c..t).find(|&r| a[r][c] != 0)?;
        a.swap(c, r);
        let inv = field.inv(a[c][c]).ok()?;
        a[c].iter_mut().for_each(|v| *v = field.mul(*v, inv));
        let pivot = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && row[c] != 0 {
                let x = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot) {
                    *v = field.sub(*v, field.mul(x, pv));
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[t..].to_vec()).collect())
}

/// Checks that `X_i^2` and `X_j l` span all quadratic forms in `t` variables.
pub fn spans_all_quadrics(field: PrimeField, t: usize, forms: &[Vec<u32>]) -> bool {
    let dim = t * (t + 1) / 2;
    let mut basis = EchelonBasis::new(field, dim, PivotRule::Leading, false);
    for i in 0..t {
        basis.insert(&SparseVec::unit(pair_index(t, i, i)), 0);
    }
    for l in forms {
        for j in 0..t {
            let pairs = (0..t).map(|i| (pair_index(t, i, j), l[i])).collect();
            basis.insert(&SparseVec::from_pairs(field, pairs), 0);
        }
    }
    basis.rank() == dim
}

/// Builds the forms by choosing `t` forms in `s = t - p` variables whose
/// squares span the quadratic forms in `s` variables, completing them to a
/// change of variables `theta` and pulling `X_{s+1}..X_t` back through it.
pub fn square_spanning_forms(field: PrimeField, t: usize, rng: &mut impl Rng) -> Result<SquareSpanningForms, WitnessError> {
    let s = triangular_root(t);
    let p = t - s;
    if p == 0 {
        let theta = (0..t).map(|i| (0..t).map(|j| (i == j) as u32).collect()).collect();
        return Ok(SquareSpanningForms { t, theta, forms: Vec::new() });
    }
    let q = field.modulus();
    for _ in 0..SPANNING_RETRIES {
        let primed: Vec<Vec<u32>> = (0..t).map(|_| (0..s).map(|_| rng.random_range(0..q)).collect()).collect();
        if square_rank(field, &primed, s) < s * (s + 1) / 2 {
            continue;
        }
        let theta: Vec<Vec<u32>> = primed
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let mut row = vec![0u32; t];
                for (dst, &v) in row.iter_mut().zip(l) {
                    *dst = if i < s { v } else { field.neg(v) };
                }
                if i >= s {
                    row[i] = 1;
                }
                row
            })
            .collect();
        let Some(inv) = invert(field, &theta) else { continue };
        let forms = inv[s..].to_vec();
        if spans_all_quadrics(field, t, &forms) {
            return Ok(SquareSpanningForms { t, theta, forms });
        }
    }
    Err(WitnessError::ConstructionFailed { t, attempts: SPANNING_RETRIES })
}

/// A homogeneous system over `M^h` for which `span{mu f_i}` is all of
/// `span((M^h)^2)`.
#[derive(Debug, Clone)]
pub struct WitnessSystem {
    pub field: PrimeField,
    pub support: HomogeneousSupport,
    /// Dense rows over `support.monomials()`.
    pub rows: Vec<Vec<u32>>,
    pub matching: Matching,
}

impl WitnessSystem {
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// `(rank of span{mu f_i}, |(M^h)^2|)`.
    pub fn product_span_rank(&self) -> (usize, usize) {
        product_span_rank(self.field, self.support.monomials(), &self.rows)
    }

    /// Sets `X_0 = 1`, giving an affine system over the original support.
    pub fn dehomogenize(&self) -> FewnomialSystem {
        let support = self.support.dehomogenize().expect("witness supports contain the constant");
        let mons = self.support.monomials();
        let pos: Vec<usize> = mons.iter().map(|m| support.index_of(m.dehomogenize()).unwrap()).collect();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = vec![0; r.len()];
                for (c, &v) in r.iter().enumerate() {
                    out[pos[c]] = v;
                }
                out
            })
            .collect();
        FewnomialSystem::new(self.field, support, rows).expect("nonempty")
    }
}

/// The explicit system of `|M| - triangular_root(nu)` polynomials: the
/// square-free monomials of `M^h`, the squares off a maximum matching `A` of
/// `G'`, `X_a^2 - X_b^2` for each `{a, b}` in `A`, and the forms of
/// [`square_spanning_forms`] evaluated at the `X_a^2`.
pub fn build_witness_system(s: &Support, field: PrimeField, rng: &mut impl Rng) -> Result<WitnessSystem, WitnessError> {
    let h = s.homogenize();
    let graph = h.graph();
    let matching = matching_number(&graph);
    let mons = h.monomials();
    let col = |m: Monomial| h.index_of(m).expect("monomial of M^h");
    let unit = |c: usize| {
        let mut r = vec![0u32; mons.len()];
        r[c] = 1;
        r
    };
    let mut rows = Vec::new();
    for (c, &m) in mons.iter().enumerate() {
        match m.as_square() {
            None => rows.push(unit(c)),
            Some(i) if !matching.covers(i) => rows.push(unit(c)),
            Some(_) => {}
        }
    }
    for &(a, b) in matching.pairs() {
        let mut r = unit(col(Monomial::square(a)));
        r[col(Monomial::square(b))] = field.neg(1);
        rows.push(r);
    }
    let forms = square_spanning_forms(field, matching.size(), rng)?;
    for l in &forms.forms {
        let mut r = vec![0u32; mons.len()];
        for (&(a, _), &v) in matching.pairs().iter().zip(l) {
            r[col(Monomial::square(a))] = v;
        }
        rows.push(r);
    }
    debug_assert_eq!(rows.len(), s.len() - triangular_root(matching.size()));
    Ok(WitnessSystem { field, support: h, rows, matching })
}
