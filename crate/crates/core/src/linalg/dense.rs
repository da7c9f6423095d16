use crate::gf::PrimeField;

const BLOCK: usize = 8;

/// `acc -= acc[c] * u` with lazy reduction; returns the multiplier.
#[inline]
fn eliminate(acc: &mut [u64], u: &[u32], c: usize, p: u64, budget: u64, pending: &mut u64) -> u32 {
    let x = (acc[c] % p) as u32;
    if x == 0 {
        acc[c] = 0;
        return 0;
    }
    if *pending == budget {
        acc.iter_mut().for_each(|a| *a %= p);
        *pending = 0;
    }
    let f = (p as u32) - x;
    for (a, &v) in acc[c..].iter_mut().zip(&u[c..]) {
        *a += f as u64 * v as u64;
    }
    *pending += 1;
    acc[c] = 0;
    x
}

/// Left-looking Gaussian elimination of a dense matrix, keeping enough of the
/// elimination history to map combinations of reduced rows back onto the
/// input rows.
///
/// Rows are processed in input order. Each independent row yields an echelon
/// row `U_j`, monic at its pivot, with zeros at every pivot chosen before it.
#[derive(Debug, Clone)]
pub struct DenseReduction {
    field: PrimeField,
    ncols: usize,
    /// Pivot column of each echelon row, in insertion order.
    pivots: Vec<usize>,
    rows: Vec<Vec<u32>>,
    /// Input row each echelon row came from.
    source: Vec<usize>,
    /// Inverse of the pivot value before normalisation.
    inv_lead: Vec<u32>,
    /// `mults[j][j']`: multiple of `U_{j'}` removed while reducing row `j`.
    mults: Vec<Vec<u32>>,
    dependent: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl DenseReduction {
    pub fn new(field: PrimeField, rows: &[Vec<u32>], ncols: usize) -> DenseReduction {
        let p = field.modulus() as u64;
        let budget = field.lazy_budget();
        let mut out = DenseReduction {
            field,
            ncols,
            pivots: Vec::new(),
            rows: Vec::new(),
            source: Vec::new(),
            inv_lead: Vec::new(),
            mults: Vec::new(),
            dependent: Vec::new(),
            pivot_row: vec![None; ncols],
        };
        let mut block: Vec<Vec<u64>> = Vec::new();
        let mut mults: Vec<Vec<u32>> = Vec::new();
        let mut pending = vec![0u64; BLOCK];
        for (b0, chunk) in rows.chunks(BLOCK).enumerate() {
            block.resize(chunk.len(), Vec::new());
            mults.resize(chunk.len(), Vec::new());
            for (b, row) in chunk.iter().enumerate() {
                assert_eq!(row.len(), ncols, "row {} has the wrong length", b0 * BLOCK + b);
                block[b].clear();
                block[b].extend(row.iter().map(|&v| v as u64 % p));
                mults[b].clear();
                pending[b] = 0;
            }
            let first_in_block = out.rows.len();
            // each older echelon row is streamed once per block
            for j in 0..first_in_block {
                let (c, u) = (out.pivots[j], &out.rows[j]);
                for b in 0..chunk.len() {
                    mults[b].push(eliminate(&mut block[b], u, c, p, budget, &mut pending[b]));
                }
            }
            for b in 0..chunk.len() {
                for j in first_in_block..out.rows.len() {
                    let (c, u) = (out.pivots[j], &out.rows[j]);
                    mults[b].push(eliminate(&mut block[b], u, c, p, budget, &mut pending[b]));
                }
                let acc = &block[b];
                match acc.iter().position(|&a| a % p != 0) {
                    None => out.dependent.push(b0 * BLOCK + b),
                    Some(c) => {
                        let inv = field.inv((acc[c] % p) as u32).expect("nonzero pivot");
                        let mut u = vec![0u32; ncols];
                        for (dst, &a) in u[c..].iter_mut().zip(&acc[c..]) {
                            *dst = field.mul((a % p) as u32, inv);
                        }
                        out.pivot_row[c] = Some(out.rows.len());
                        out.pivots.push(c);
                        out.rows.push(u);
                        out.source.push(b0 * BLOCK + b);
                        out.inv_lead.push(inv);
                        out.mults.push(std::mem::take(&mut mults[b]));
                    }
                }
            }
        }
        out
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Pivot columns in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Input rows that reduced to zero.
    pub fn dependent_rows(&self) -> &[usize] {
        &self.dependent
    }

    /// Input row behind each echelon row.
    pub fn sources(&self) -> &[usize] {
        &self.source
    }

    pub fn echelon_row(&self, j: usize) -> &[u32] {
        &self.rows[j]
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    pub fn pivot_row(&self, col: usize) -> Option<usize> {
        self.pivot_row[col]
    }

    /// Fully reduced rows restricted to the free columns: row `j` of the
    /// result is `G_j[free]`, where `G_j` is monic at `pivots()[j]` and zero at
    /// every other pivot.
    pub fn reduced_free_part(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let free = self.free_columns();
        let r = self.rank();
        let mut out = vec![Vec::new(); r];
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_unstable_by_key(|&j| std::cmp::Reverse(self.pivots[j]));
        for &j in &order {
            let u = &self.rows[j];
            let mut g: Vec<u32> = free.iter().map(|&c| u[c]).collect();
            for c in self.pivots[j] + 1..self.ncols {
                let x = u[c];
                if x == 0 {
                    continue;
                }
                if let Some(jj) = self.pivot_row[c] {
                    let minus = f.neg(x);
                    for (a, &b) in g.iter_mut().zip(&out[jj]) {
                        *a = f.add(*a, f.mul(minus, b));
                    }
                }
            }
            out[j] = g;
        }
        out
    }

    /// Coefficients `y` over the input rows with `sum_i y_i A_i = sum_j c_j G_j`
    /// for a combination `c` of fully reduced rows (indexed like `pivots()`).
    pub fn pull_back(&self, c: &[u32]) -> Vec<u32> {
        let f = self.field;
        let r = self.rank();
        assert_eq!(c.len(), r);
        // G -> U, in increasing pivot order
        let mut d = c.to_vec();
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_unstable_by_key(|&j| self.pivots[j]);
        for &j in &order {
            if d[j] == 0 {
                continue;
            }
            let minus = f.neg(d[j]);
            let u = &self.rows[j];
            for col in self.pivots[j] + 1..self.ncols {
                if u[col] != 0 {
                    if let Some(jj) = self.pivot_row[col] {
                        d[jj] = f.add(d[jj], f.mul(minus, u[col]));
                    }
                }
            }
        }
        // U -> A, in reverse insertion order
        let mut y = vec![0u32; self.dependent.len() + r];
        for j in (0..r).rev() {
            if d[j] == 0 {
                continue;
            }
            let a = f.mul(d[j], self.inv_lead[j]);
            y[self.source[j]] = f.add(y[self.source[j]], a);
            for (jj, &m) in self.mults[j].iter().enumerate() {
                if m != 0 {
                    d[jj] = f.sub(d[jj], f.mul(a, m));
                }
            }
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, p: u32) -> Vec<Vec<u32>> {
        (0..m).map(|_| (0..n).map(|_| rng.random_range(0..p)).collect()).collect()
    }

    /// Reference rank by textbook elimination.
    fn naive_rank(f: PrimeField, mut a: Vec<Vec<u32>>) -> usize {
        let ncols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..ncols {
            let Some(r) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
            a.swap(rank, r);
            let inv = f.inv(a[rank][c]).unwrap();
            let piv: Vec<u32> = a[rank].iter().map(|&v| f.mul(v, inv)).collect();
            for (i, row) in a.iter_mut().enumerate() {
                if i != rank && row[c] != 0 {
                    let x = row[c];
                    for (v, &pv) in row.iter_mut().zip(&piv) {
                        *v = f.sub(*v, f.mul(x, pv));
                    }
                }
            }
            a[rank] = piv;
            rank += 1;
        }
        rank
    }

    fn combine(f: PrimeField, rows: &[Vec<u32>], y: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; rows[0].len()];
        for (row, &c) in rows.iter().zip(y) {
            for (o, &v) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(c, v));
            }
        }
        out
    }

    fn full_reduced_row(red: &DenseReduction, j: usize) -> Vec<u32> {
        let free = red.free_columns();
        let g = red.reduced_free_part();
        let mut row = vec![0u32; red.ncols()];
        row[red.pivots()[j]] = 1;
        for (&c, &v) in free.iter().zip(&g[j]) {
            row[c] = v;
        }
        row
    }

    #[test]
    fn pull_back_reproduces_reduced_rows() {
        for &p in &[7u32, 65521, 4294967291] {
            let f = PrimeField::new(p as u64).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
            for trial in 0..20 {
                let (m, n) = (1 + trial % 6, 1 + (trial * 7) % 9);
                let a = random_matrix(&mut rng, m, n, p.min(5));
                let red = DenseReduction::new(f, &a, n);
                assert_eq!(red.rank(), naive_rank(f, a.clone()));
                assert_eq!(red.rank() + red.dependent_rows().len(), m);
                for j in 0..red.rank() {
                    let mut c = vec![0u32; red.rank()];
                    c[j] = 1;
                    let y = red.pull_back(&c);
                    assert_eq!(combine(f, &a, &y), full_reduced_row(&red, j));
                }
            }
        }
    }

    #[test]
    fn reduced_rows_vanish_on_other_pivots() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 6, 9, 101);
        let red = DenseReduction::new(f, &a, 9);
        for j in 0..red.rank() {
            let row = full_reduced_row(&red, j);
            for (jj, &c) in red.pivots().iter().enumerate() {
                assert_eq!(row[c], (jj == j) as u32);
            }
            let lead = row.iter().position(|&v| v != 0).unwrap();
            assert_eq!(lead, red.pivots()[j]);
        }
    }

    #[test]
    fn dependent_rows_are_reported() {
        let f = PrimeField::new(13).unwrap();
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1], vec![1, 3, 4]];
        let red = DenseReduction::new(f, &a, 3);
        assert_eq!(red.rank(), 2);
        assert_eq!(red.dependent_rows(), &[1, 3]);
        assert_eq!(red.free_columns(), vec![2]);
    }

    #[test]
    fn lazy_accumulation_handles_many_updates() {
        // largest 32-bit prime: the budget is a single update between reductions
        let f = PrimeField::new(4294967291).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_matrix(&mut rng, 30, 32, 4294967291);
        let red = DenseReduction::new(f, &a, 32);
        assert_eq!(red.rank(), 30);
        let c: Vec<u32> = (0..30).map(|_| rng.random_range(0..4294967291u32)).collect();
        let y = red.pull_back(&c);
        let lhs = combine(f, &a, &y);
        let rows: Vec<Vec<u32>> = (0..30).map(|j| full_reduced_row(&red, j)).collect();
        assert_eq!(lhs, combine(f, &rows, &c));
    }
}
