use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::gf::PrimeField;

const NONE: u32 = u32::MAX;

/// Sparse vector with strictly increasing indices and nonzero values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseVec {
    pub idx: Vec<u32>,
    pub val: Vec<u32>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec::default()
    }

    /// Builds from unsorted `(index, value)` pairs, summing repeats.
    pub fn from_pairs(field: PrimeField, mut pairs: Vec<(u32, u32)>) -> SparseVec {
        pairs.sort_unstable_by_key(|&(i, _)| i);
        let mut out = SparseVec::new();
        for (i, v) in pairs {
            if out.idx.last() == Some(&i) {
                let last = out.val.last_mut().unwrap();
                *last = field.add(*last, v);
            } else {
                out.idx.push(i);
                out.val.push(v % field.modulus());
            }
        }
        out.prune();
        out
    }

    pub fn unit(i: u32) -> SparseVec {
        SparseVec { idx: vec![i], val: vec![1] }
    }

    pub fn len(&self) -> usize {
        self.idx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idx.is_empty()
    }

    pub fn get(&self, i: u32) -> u32 {
        self.idx.binary_search(&i).map_or(0, |k| self.val[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.idx.iter().copied().zip(self.val.iter().copied())
    }

    fn prune(&mut self) {
        let mut k = 0;
        for r in 0..self.idx.len() {
            if self.val[r] != 0 {
                self.idx[k] = self.idx[r];
                self.val[k] = self.val[r];
                k += 1;
            }
        }
        self.idx.truncate(k);
        self.val.truncate(k);
    }
}

/// Dense scatter buffer with a list of touched positions.
#[derive(Debug, Clone, Default)]
struct Spa {
    vals: Vec<u32>,
    touched: Vec<u32>,
    mark: Vec<bool>,
}

impl Spa {
    fn ensure(&mut self, len: usize) {
        if self.vals.len() < len {
            self.vals.resize(len, 0);
            self.mark.resize(len, false);
        }
    }

    #[inline]
    fn touch(&mut self, i: u32) {
        if !self.mark[i as usize] {
            self.mark[i as usize] = true;
            self.touched.push(i);
        }
    }

    fn axpy(&mut self, field: PrimeField, x: u32, v: &SparseVec) {
        if let Some(&last) = v.idx.last() {
            self.ensure(last as usize + 1);
        }
        for (i, a) in v.iter() {
            self.touch(i);
            let slot = &mut self.vals[i as usize];
            *slot = field.add(*slot, field.mul(x, a));
        }
    }

    fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = SparseVec::new();
        for &i in &self.touched {
            let v = std::mem::take(&mut self.vals[i as usize]);
            self.mark[i as usize] = false;
            if v != 0 {
                out.idx.push(i);
                out.val.push(v);
            }
        }
        self.touched.clear();
        out
    }
}

/// How the pivot column of a new basis vector is chosen.
#[derive(Debug, Clone)]
pub enum PivotRule {
    /// Smallest column index.
    Leading,
    /// Column with the fewest entries in the whole matrix (Markowitz-style
    /// fill heuristic); ties go to the smaller index.
    MinColumnCount(Vec<u32>),
}

/// Incrementally built echelon basis of a row space, with optional
/// provenance: every basis vector knows its expression as a combination of
/// the tagged rows that were inserted.
///
/// A basis vector never contains the pivot column of an older basis vector,
/// so reducing a row against the basis in insertion order terminates.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: PrimeField,
    ncols: usize,
    rule: PivotRule,
    track: bool,
    vecs: Vec<SparseVec>,
    provenance: Vec<SparseVec>,
    pivot_col: Vec<u32>,
    pivot_of_col: Vec<u32>,
    spa: Spa,
    tags: Spa,
    queued: Vec<bool>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField, ncols: usize, rule: PivotRule, track: bool) -> EchelonBasis {
        let mut spa = Spa::default();
        spa.ensure(ncols);
        EchelonBasis {
            field,
            ncols,
            rule,
            track,
            vecs: Vec::new(),
            provenance: Vec::new(),
            pivot_col: Vec::new(),
            pivot_of_col: vec![NONE; ncols],
            spa,
            tags: Spa::default(),
            queued: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ncols
    }

    pub fn pivot_columns(&self) -> &[u32] {
        &self.pivot_col
    }

    pub fn basis_vector(&self, j: usize) -> &SparseVec {
        &self.vecs[j]
    }

    /// Loads `row` into the scatter buffer and eliminates every basis pivot;
    /// the accumulated multipliers go to `tags` with sign `tag_sign`.
    fn eliminate(&mut self, row: &SparseVec, tag_sign: bool) {
        let f = self.field;
        self.spa.axpy(f, 1, row);
        self.queued.resize(self.vecs.len(), false);
        let mut heap = BinaryHeap::new();
        for &c in &row.idx {
            let j = self.pivot_of_col[c as usize];
            if j != NONE && !self.queued[j as usize] {
                self.queued[j as usize] = true;
                heap.push(Reverse(j));
            }
        }
        while let Some(Reverse(j)) = heap.pop() {
            let j = j as usize;
            self.queued[j] = false;
            let x = self.spa.vals[self.pivot_col[j] as usize];
            if x == 0 {
                continue;
            }
            let minus = f.neg(x);
            for (c, a) in self.vecs[j].iter() {
                self.spa.touch(c);
                let slot = &mut self.spa.vals[c as usize];
                *slot = f.add(*slot, f.mul(minus, a));
                let jj = self.pivot_of_col[c as usize];
                if jj != NONE && jj as usize != j && !self.queued[jj as usize] {
                    debug_assert!(jj as usize > j);
                    self.queued[jj as usize] = true;
                    heap.push(Reverse(jj));
                }
            }
            if self.track {
                let coef = if tag_sign { x } else { minus };
                self.tags.axpy(f, coef, &self.provenance[j]);
            }
        }
    }

    /// Reduces `row` against the basis. Returns the residual and, when
    /// tracking, the combination `c` of inserted tags with
    /// `row - residual = sum_t c_t row_t`.
    pub fn reduce(&mut self, row: &SparseVec) -> (SparseVec, SparseVec) {
        self.eliminate(row, true);
        let residual = self.spa.drain();
        let comb = self.tags.drain();
        (residual, comb)
    }

    /// Inserts a row carrying `tag`; returns its basis index when it enlarges
    /// the span.
    pub fn insert(&mut self, row: &SparseVec, tag: u32) -> Option<usize> {
        let f = self.field;
        self.eliminate(row, false);
        let residual = self.spa.drain();
        if self.track {
            self.tags.axpy(f, 1, &SparseVec::unit(tag));
        }
        let prov = self.tags.drain();
        if residual.is_empty() {
            return None;
        }
        let k = match &self.rule {
            PivotRule::Leading => 0,
            PivotRule::MinColumnCount(counts) => (0..residual.len())
                .min_by_key(|&k| (counts[residual.idx[k] as usize], residual.idx[k]))
                .unwrap(),
        };
        let col = residual.idx[k];
        let inv = f.inv(residual.val[k]).expect("nonzero pivot");
        let scale = |mut v: SparseVec| {
            v.val.iter_mut().for_each(|a| *a = f.mul(*a, inv));
            v
        };
        let j = self.vecs.len();
        self.vecs.push(scale(residual));
        self.provenance.push(if self.track { scale(prov) } else { SparseVec::new() });
        self.pivot_col.push(col);
        self.pivot_of_col[col as usize] = j as u32;
        Some(j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_sparse(rng: &mut ChaCha8Rng, ncols: usize, p: u32) -> SparseVec {
        let mut pairs = Vec::new();
        for c in 0..ncols as u32 {
            if rng.random_bool(0.3) {
                pairs.push((c, rng.random_range(1..p)));
            }
        }
        SparseVec::from_pairs(PrimeField::new(p as u64).unwrap(), pairs)
    }

    fn dense(v: &SparseVec, n: usize) -> Vec<u32> {
        let mut out = vec![0; n];
        for (i, a) in v.iter() {
            out[i as usize] = a;
        }
        out
    }

    #[test]
    fn provenance_reconstructs_membership() {
        let f = PrimeField::new(31).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for rule in [PivotRule::Leading, PivotRule::MinColumnCount((0..12).rev().collect())] {
            let rows: Vec<SparseVec> = (0..8).map(|_| random_sparse(&mut rng, 12, 31)).collect();
            let mut basis = EchelonBasis::new(f, 12, rule, true);
            for (t, r) in rows.iter().enumerate() {
                basis.insert(r, t as u32);
            }
            let target = random_sparse(&mut rng, 12, 31);
            let (res, comb) = basis.reduce(&target);
            let mut lhs = dense(&target, 12);
            for (i, a) in res.iter() {
                lhs[i as usize] = f.sub(lhs[i as usize], a);
            }
            let mut rhs = vec![0; 12];
            for (t, c) in comb.iter() {
                for (i, a) in rows[t as usize].iter() {
                    rhs[i as usize] = f.add(rhs[i as usize], f.mul(c, a));
                }
            }
            assert_eq!(lhs, rhs);
            // residual contains no pivot column
            for &c in &res.idx {
                assert!(!basis.pivot_columns().contains(&c));
            }
        }
    }

    #[test]
    fn rank_of_dependent_rows() {
        let f = PrimeField::new(7).unwrap();
        let a = SparseVec::from_pairs(f, vec![(0, 1), (2, 3)]);
        let b = SparseVec::from_pairs(f, vec![(1, 2), (2, 1)]);
        let c = SparseVec::from_pairs(f, vec![(0, 2), (1, 4), (2, 1)]);
        let mut basis = EchelonBasis::new(f, 3, PivotRule::Leading, false);
        assert_eq!(basis.insert(&a, 0), Some(0));
        assert_eq!(basis.insert(&b, 1), Some(1));
        // c = 2a + 2b
        assert_eq!(basis.insert(&c, 2), None);
        assert_eq!(basis.rank(), 2);
    }

    #[test]
    fn from_pairs_merges_and_prunes() {
        let f = PrimeField::new(7).unwrap();
        let v = SparseVec::from_pairs(f, vec![(3, 4), (1, 2), (3, 3), (5, 0)]);
        assert_eq!(v.idx, vec![1]);
        assert_eq!(v.val, vec![2]);
    }
}
