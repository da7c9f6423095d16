use std::collections::BTreeMap;

use super::{Certificate, FewnomialSystem};
use crate::linalg::DenseReduction;

/// Phase 1: the quadratic system brought to reduced echelon form.
///
/// Reduced polynomial `g_j` is monic at support position `pivots()[j]`, and
/// its other terms sit at free (non-pivot) positions only, with coefficients
/// `tail(j)` aligned with `free_columns()`.
#[derive(Debug, Clone)]
pub struct Reduction {
    dense: DenseReduction,
    free: Vec<usize>,
    tails: Vec<Vec<u32>>,
}

impl Reduction {
    pub fn new(sys: &FewnomialSystem) -> Reduction {
        let dense = DenseReduction::new(sys.field(), sys.rows(), sys.support().len());
        let free = dense.free_columns();
        let tails = dense.reduced_free_part();
        Reduction { dense, free, tails }
    }

    pub fn rank(&self) -> usize {
        self.dense.rank()
    }

    pub fn pivots(&self) -> &[usize] {
        self.dense.pivots()
    }

    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn tail(&self, j: usize) -> &[u32] {
        &self.tails[j]
    }

    /// Reduced row `j` for the pivot in support column `col`.
    pub fn pivot_row(&self, col: usize) -> Option<usize> {
        self.dense.pivot_row(col)
    }

    pub fn dependent_rows(&self) -> &[usize] {
        self.dense.dependent_rows()
    }

    /// Dense coefficients of `g_j` over the support.
    pub fn reduced_row(&self, j: usize, support_len: usize) -> Vec<u32> {
        let mut row = vec![0; support_len];
        row[self.pivots()[j]] = 1;
        for (&c, &v) in self.free.iter().zip(&self.tails[j]) {
            row[c] = v;
        }
        row
    }

    /// Coefficients over the input polynomials of `sum_j c_j g_j`.
    pub fn pull_back(&self, c: &[u32]) -> Vec<u32> {
        self.dense.pull_back(c)
    }

    /// Turns cofactors of the reduced polynomials, given as
    /// `((support position, reduced row), coefficient)` entries, into a
    /// certificate for the input polynomials.
    pub fn lift_cofactors(&self, sys: &FewnomialSystem, entries: impl IntoIterator<Item = ((usize, usize), u32)>) -> Certificate {
        let f = sys.field();
        let mut by_column: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for ((col, j), c) in entries {
            let v = by_column.entry(col).or_insert_with(|| vec![0; self.rank()]);
            v[j] = f.add(v[j], c);
        }
        let mut cert = Certificate::zero(sys.m(), sys.support().len());
        for (col, c) in by_column {
            for (i, y) in self.pull_back(&c).into_iter().enumerate() {
                cert.rows_mut()[i][col] = y;
            }
        }
        cert
    }
}

/// The reduced system, sorted by pivot position (each polynomial has a
/// distinct leading monomial). Rank-deficient input gives fewer rows.
pub fn reduce_system(sys: &FewnomialSystem) -> FewnomialSystem {
    let red = Reduction::new(sys);
    let mut order: Vec<usize> = (0..red.rank()).collect();
    order.sort_unstable_by_key(|&j| red.pivots()[j]);
    let rows = order.iter().map(|&j| red.reduced_row(j, sys.support().len())).collect();
    FewnomialSystem::from_rows(sys.field(), sys.support().clone(), rows).expect("row lengths match")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::PrimeField;
    use crate::linalg::{EchelonBasis, PivotRule, SparseVec};
    use crate::support::{Monomial, Support};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rank(f: PrimeField, rows: &[Vec<u32>]) -> usize {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut b = EchelonBasis::new(f, ncols, PivotRule::Leading, false);
        for (t, r) in rows.iter().enumerate() {
            let pairs = r.iter().enumerate().map(|(c, &v)| (c as u32, v)).collect();
            b.insert(&SparseVec::from_pairs(f, pairs), t as u32);
        }
        b.rank()
    }

    fn same_span(f: PrimeField, a: &[Vec<u32>], b: &[Vec<u32>]) -> bool {
        let stacked: Vec<Vec<u32>> = a.iter().chain(b).cloned().collect();
        let r = rank(f, &stacked);
        r == rank(f, a) && r == rank(f, b)
    }

    fn five_term_support() -> Support {
        Support::new(3, [Monomial::ONE, Monomial::var(1), Monomial::var(2), Monomial::square(3), Monomial::product(1, 3)]).unwrap()
    }

    #[test]
    fn generic_three_by_five() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sys = FewnomialSystem::random(f, five_term_support(), 3, &mut rng);
        let red = reduce_system(&sys);
        assert_eq!(red.m(), 3);
        // k = 1: pivot plus at most two free terms
        for r in red.rows() {
            assert!(r.iter().filter(|&&c| c != 0).count() <= 3);
        }
        let leads: Vec<usize> = red.rows().iter().map(|r| r.iter().position(|&c| c != 0).unwrap()).collect();
        assert_eq!(leads, vec![0, 1, 2]);
        assert!(same_span(f, sys.rows(), red.rows()));
    }

    #[test]
    fn echelon_input_is_fixed_up_to_scaling() {
        let f = PrimeField::new(101).unwrap();
        let rows = vec![vec![1, 0, 0, 5, 7], vec![0, 1, 0, 2, 0], vec![0, 0, 1, 0, 3]];
        let scaled: Vec<Vec<u32>> = rows
            .iter()
            .zip([3u32, 10, 99])
            .map(|(r, s)| r.iter().map(|&c| f.mul(c, s)).collect())
            .collect();
        let sys = FewnomialSystem::new(f, five_term_support(), scaled).unwrap();
        assert_eq!(reduce_system(&sys).rows(), &rows[..]);
    }

    #[test]
    fn rank_deficient_input() {
        let f = PrimeField::new(65521).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let base = FewnomialSystem::random(f, five_term_support(), 2, &mut rng);
            let mut rows = base.rows().to_vec();
            let (a, b) = (rng.random_range(0..65521), rng.random_range(0..65521));
            rows.push((0..5).map(|c| f.add(f.mul(a, rows[0][c]), f.mul(b, rows[1][c]))).collect());
            let sys = FewnomialSystem::new(f, five_term_support(), rows).unwrap();
            let red = reduce_system(&sys);
            assert_eq!(red.m(), 2);
            assert!(same_span(f, sys.rows(), red.rows()));
        }
    }

    #[test]
    fn reduced_terms_bound_at_scale() {
        // m = n, |M| = n + k + 1: at most k + 2 terms per reduced polynomial
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let n = 30;
        let mut mons = vec![Monomial::ONE];
        mons.extend((1..=n as u32).map(Monomial::square));
        mons.extend([Monomial::var(1), Monomial::product(2, 3), Monomial::product(4, 9)]);
        let support = Support::new(n, mons).unwrap();
        let sys = FewnomialSystem::random(f, support, n, &mut rng);
        let red = reduce_system(&sys);
        assert_eq!(red.m(), n);
        let k = 3;
        for r in red.rows() {
            assert!(r.iter().filter(|&&c| c != 0).count() <= k + 2);
        }
    }
}
