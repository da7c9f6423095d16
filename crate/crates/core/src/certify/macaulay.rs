use std::collections::HashMap;

use super::{Certificate, CertificateSolver, CertifyError, FewnomialSystem, Limits, Reduction};
use crate::gf::PrimeField;
use crate::linalg::{EchelonBasis, PivotRule, SparseVec};
use crate::support::Monomial;

/// Direct elimination of the degree-4 matrix with rows `mu f_i` (or
/// `mu g_j` for the reduced system) and columns `M^2`.
#[derive(Debug, Clone, Copy)]
pub struct MacaulaySolver {
    pub reduce_first: bool,
}

impl Default for MacaulaySolver {
    fn default() -> Self {
        MacaulaySolver { reduce_first: true }
    }
}

/// Sorted distinct pairwise products of `monomials`.
pub(crate) fn product_columns(monomials: &[Monomial]) -> Vec<Monomial> {
    let mut cols: Vec<Monomial> = Vec::new();
    for (a, &x) in monomials.iter().enumerate() {
        for &y in &monomials[a..] {
            cols.push(x.mul(y).expect("degree at most 4"));
        }
    }
    cols.sort_unstable();
    cols.dedup();
    cols
}

struct MacaulayMatrix {
    ncols: usize,
    rows: Vec<SparseVec>,
    /// `(multiplier position, polynomial)` behind each row.
    origin: Vec<(usize, usize)>,
    counts: Vec<u32>,
}

fn build(field: PrimeField, monomials: &[Monomial], polys: &[Vec<(usize, u32)>], cap: usize) -> Result<MacaulayMatrix, CertifyError> {
    let cols = product_columns(monomials);
    if cols.len() > cap {
        return Err(CertifyError::DimensionOverflow { needed: cols.len(), cap });
    }
    let index: HashMap<Monomial, u32> = cols.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
    let mut rows = Vec::new();
    let mut origin = Vec::new();
    let mut counts = vec![0u32; cols.len()];
    for (a, &mu) in monomials.iter().enumerate() {
        for (j, poly) in polys.iter().enumerate() {
            let pairs = poly.iter().map(|&(c, v)| (index[&mu.mul(monomials[c]).unwrap()], v)).collect();
            let row = SparseVec::from_pairs(field, pairs);
            if row.is_empty() {
                continue;
            }
            for &c in &row.idx {
                counts[c as usize] += 1;
            }
            rows.push(row);
            origin.push((a, j));
        }
    }
    Ok(MacaulayMatrix { ncols: cols.len(), rows, origin, counts })
}

/// Rank of `span{mu f_i}` and `|M^2|` for an arbitrary monomial list
/// (homogeneous or not), with `polys` given as dense rows over it.
pub fn product_span_rank(field: PrimeField, monomials: &[Monomial], polys: &[Vec<u32>]) -> (usize, usize) {
    let sparse: Vec<Vec<(usize, u32)>> = polys.iter().map(|r| dense_to_pairs(r)).collect();
    let mat = build(field, monomials, &sparse, usize::MAX).expect("no cap");
    let mut basis = EchelonBasis::new(field, mat.ncols, PivotRule::Leading, false);
    for (t, r) in mat.rows.iter().enumerate() {
        basis.insert(r, t as u32);
        if basis.is_full() {
            break;
        }
    }
    (basis.rank(), mat.ncols)
}

fn dense_to_pairs(r: &[u32]) -> Vec<(usize, u32)> {
    r.iter().enumerate().filter(|&(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect()
}

impl CertificateSolver for MacaulaySolver {
    fn name(&self) -> &'static str {
        "macaulay"
    }

    fn uses_reduction(&self) -> bool {
        self.reduce_first
    }

    fn solve(&self, sys: &FewnomialSystem, red: Option<&Reduction>, limits: &Limits) -> Result<Certificate, CertifyError> {
        let f = sys.field();
        let mons = sys.support().monomials();
        let owned;
        let red = match (self.reduce_first, red) {
            (false, _) => None,
            (true, Some(r)) => Some(r),
            (true, None) => {
                owned = Reduction::new(sys);
                Some(&owned)
            }
        };
        let polys: Vec<Vec<(usize, u32)>> = match red {
            Some(r) => (0..r.rank()).map(|j| dense_to_pairs(&r.reduced_row(j, mons.len()))).collect(),
            None => sys.rows().iter().map(|r| dense_to_pairs(r)).collect(),
        };
        let mat = build(f, mons, &polys, limits.max_columns)?;
        let mut order: Vec<usize> = (0..mat.rows.len()).collect();
        order.sort_by_key(|&t| mat.rows[t].len());
        let mut basis = EchelonBasis::new(f, mat.ncols, PivotRule::MinColumnCount(mat.counts.clone()), true);
        for &t in &order {
            basis.insert(&mat.rows[t], t as u32);
            if basis.is_full() {
                break;
            }
        }
        // the constant is the smallest monomial, hence column 0
        let (residual, comb) = basis.reduce(&SparseVec::unit(0));
        if !residual.is_empty() {
            return Err(CertifyError::NotFound { rank: basis.rank(), columns: mat.ncols });
        }
        let entries = comb.iter().map(|(t, c)| (mat.origin[t as usize], c));
        Ok(match red {
            Some(r) => r.lift_cofactors(sys, entries),
            None => {
                let mut cert = Certificate::zero(sys.m(), mons.len());
                for ((a, i), c) in entries {
                    let slot = &mut cert.rows_mut()[i][a];
                    *slot = f.add(*slot, c);
                }
                cert
            }
        })
    }
}
