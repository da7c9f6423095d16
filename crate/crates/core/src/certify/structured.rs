use std::collections::hash_map::Entry;
use std::collections::HashMap;

use super::{Certificate, CertificateSolver, CertifyError, FewnomialSystem, Limits, Reduction};
use crate::gf::PrimeField;
use crate::linalg::{EchelonBasis, PivotRule, SparseVec};

const NONE: u32 = u32::MAX;

/// Quotient method on the reduced system.
///
/// With `g_j = pi_j - R_j` (each `R_j` supported on the free monomials `F`),
/// every product `mu nu` of support monomials is congruent modulo
/// `W = span{mu g_j}` to `L(mu) L(nu)` in the span of `F F`, where `L` is the
/// identity on `F` and sends `pi_j` to `R_j`. Two factorisations of the same
/// product give a difference in `W`, and these differences span all of
/// `W ∩ span(F F)`. So `1 ∈ W` iff `L(1)^2` lies in the span of the
/// differences, a problem of dimension `|F F|` instead of `|M^2|`.
#[derive(Debug, Clone, Copy, Default)]
pub struct StructuredSolver;

struct Quotient<'a> {
    field: PrimeField,
    red: &'a Reduction,
    /// `L(mu)` for every support position, over free positions.
    images: Vec<Vec<(u32, u32)>>,
    /// Index in `F F` of the product of two free positions.
    ff: Vec<u32>,
    nfree: usize,
}

impl Quotient<'_> {
    fn phi(&self, a: usize, b: usize, sign: u32, out: &mut Vec<(u32, u32)>) {
        let f = self.field;
        for &(e, x) in &self.images[a] {
            let xs = f.mul(x, sign);
            for &(e2, y) in &self.images[b] {
                out.push((self.ff[e as usize * self.nfree + e2 as usize], f.mul(xs, y)));
            }
        }
    }

    /// Appends the expression of `mu nu - L(mu) L(nu)` in terms of `nu' g_j`.
    fn relation(&self, a: usize, b: usize, coef: u32, out: &mut Vec<((usize, usize), u32)>) {
        let f = self.field;
        match (self.red.pivot_row(a), self.red.pivot_row(b)) {
            (None, None) => {}
            (Some(ja), None) => out.push(((b, ja), coef)),
            (None, Some(jb)) => out.push(((a, jb), coef)),
            (Some(ja), Some(jb)) => {
                out.push(((b, ja), coef));
                let free = self.red.free_columns();
                for &(e, v) in &self.images[a] {
                    out.push(((free[e as usize], jb), f.mul(coef, v)));
                }
            }
        }
    }
}

impl CertificateSolver for StructuredSolver {
    fn name(&self) -> &'static str {
        "structured"
    }

    fn solve(&self, sys: &FewnomialSystem, red: Option<&Reduction>, limits: &Limits) -> Result<Certificate, CertifyError> {
        let owned;
        let red = match red {
            Some(r) => r,
            None => {
                owned = Reduction::new(sys);
                &owned
            }
        };
        let f = sys.field();
        let mons = sys.support().monomials();
        let nmon = mons.len();
        let free = red.free_columns();
        let nfree = free.len();
        let pairs = nfree * (nfree + 1) / 2;
        if pairs > limits.max_columns {
            return Err(CertifyError::DimensionOverflow { needed: pairs, cap: limits.max_columns });
        }

        let mut ff = vec![NONE; nfree * nfree];
        let mut ff_ids: HashMap<u64, u32> = HashMap::new();
        for a in 0..nfree {
            for b in a..nfree {
                let w = mons[free[a]].mul(mons[free[b]]).expect("degree at most 4").key();
                let next = ff_ids.len() as u32;
                let id = *ff_ids.entry(w).or_insert(next);
                ff[a * nfree + b] = id;
                ff[b * nfree + a] = id;
            }
        }
        let nff = ff_ids.len();

        let mut images: Vec<Vec<(u32, u32)>> = vec![Vec::new(); nmon];
        for (pos, &c) in free.iter().enumerate() {
            images[c] = vec![(pos as u32, 1)];
        }
        for (j, &c) in red.pivots().iter().enumerate() {
            images[c] = red
                .tail(j)
                .iter()
                .enumerate()
                .filter(|&(_, &v)| v != 0)
                .map(|(e, &v)| (e as u32, f.neg(v)))
                .collect();
        }
        let q = Quotient { field: f, red, images, ff, nfree };

        let mut buf = Vec::new();
        q.phi(0, 0, 1, &mut buf);
        let target = SparseVec::from_pairs(f, std::mem::take(&mut buf));

        let mut basis = EchelonBasis::new(f, nff, PivotRule::Leading, true);
        let mut diffs: Vec<((usize, usize), (usize, usize))> = Vec::new();
        let mut first: HashMap<u64, (u32, u32)> = HashMap::with_capacity(nmon * (nmon + 1) / 4);
        let mut card = 0usize;
        if !target.is_empty() {
            'products: for a in 0..nmon {
                for b in a..nmon {
                    let w = mons[a].mul(mons[b]).expect("degree at most 4").key();
                    match first.entry(w) {
                        Entry::Vacant(v) => {
                            v.insert((a as u32, b as u32));
                            card += 1;
                        }
                        Entry::Occupied(o) => {
                            let (a0, b0) = *o.get();
                            let (a0, b0) = (a0 as usize, b0 as usize);
                            q.phi(a0, b0, 1, &mut buf);
                            q.phi(a, b, f.neg(1), &mut buf);
                            let d = SparseVec::from_pairs(f, std::mem::take(&mut buf));
                            if !d.is_empty() && basis.insert(&d, diffs.len() as u32).is_some() {
                                diffs.push(((a0, b0), (a, b)));
                                if basis.is_full() {
                                    break 'products;
                                }
                            }
                        }
                    }
                }
            }
        }

        let (residual, comb) = basis.reduce(&target);
        if !residual.is_empty() {
            return Err(CertifyError::NotFound { rank: card - (nff - basis.rank()), columns: card });
        }
        // 1 = (1 - L(1)^2) + sum_t c_t (T_f - T_f0), with T_f = w - Phi_f(w)
        let mut entries = Vec::new();
        q.relation(0, 0, 1, &mut entries);
        for (t, c) in comb.iter() {
            let ((a0, b0), (a, b)) = diffs[t as usize];
            q.relation(a, b, c, &mut entries);
            q.relation(a0, b0, f.neg(c), &mut entries);
        }
        Ok(red.lift_cofactors(sys, entries))
    }
}
