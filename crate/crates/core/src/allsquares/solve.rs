//! Exhaustive search for the GF(p)-rational zeros of a small core system.

use super::AllSquaresError;
use crate::gf::PrimeField;
use crate::poly::SparsePoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoreLimits {
    pub max_vars: usize,
    pub max_prime: u32,
    /// Cap on visited search nodes.
    pub max_nodes: u64,
}

impl Default for CoreLimits {
    fn default() -> Self {
        CoreLimits { max_vars: 6, max_prime: 1 << 17, max_nodes: 1 << 28 }
    }
}

struct Search<'a> {
    field: PrimeField,
    vars: &'a [u32],
    /// Position of each variable in `vars`.
    pos: Vec<usize>,
    /// Polynomials grouped by the deepest variable they contain.
    by_level: Vec<Vec<&'a SparsePoly>>,
    point: Vec<u32>,
    nodes: u64,
    cap: u64,
    out: Vec<Vec<u32>>,
}

impl Search<'_> {
    fn value(&self, var: u32) -> u32 {
        self.point[self.pos[var as usize]]
    }

    /// `(a, b, c)` with `h = a x^2 + b x + c` in the variable at `level`.
    fn coefficients(&self, h: &SparsePoly, level: usize) -> [u32; 3] {
        let f = self.field;
        let x = self.vars[level];
        let mut abc = [0u32; 3];
        for &(m, coef) in h.terms() {
            let mut v = coef;
            let mut e = 0;
            for i in m.indices() {
                if i == x {
                    e += 1;
                } else {
                    v = f.mul(v, self.value(i));
                }
            }
            abc[2 - e] = f.add(abc[2 - e], v);
        }
        abc
    }

    /// Roots of `a x^2 + b x + c`; `None` when it vanishes identically.
    fn roots(&self, [a, b, c]: [u32; 3]) -> Option<Vec<u32>> {
        let f = self.field;
        if a == 0 && b == 0 {
            return if c == 0 { None } else { Some(Vec::new()) };
        }
        let mut r = if a == 0 {
            vec![f.mul(f.neg(c), f.inv(b).expect("nonzero"))]
        } else {
            let disc = f.sub(f.mul(b, b), f.mul(4, f.mul(a, c)));
            match f.sqrt(disc) {
                None => Vec::new(),
                Some((s, t)) => {
                    let inv2a = f.inv(f.mul(2, a)).expect("p is odd");
                    let nb = f.neg(b);
                    vec![f.mul(f.add(nb, s), inv2a), f.mul(f.add(nb, t), inv2a)]
                }
            }
        };
        r.sort_unstable();
        r.dedup();
        Some(r)
    }

    fn go(&mut self, level: usize) -> Result<(), AllSquaresError> {
        if level == self.vars.len() {
            self.out.push(self.point.clone());
            return Ok(());
        }
        let mut candidates: Option<Vec<u32>> = None;
        for h in &self.by_level[level] {
            if let Some(r) = self.roots(self.coefficients(h, level)) {
                candidates = Some(match candidates {
                    None => r,
                    Some(c) => c.into_iter().filter(|x| r.contains(x)).collect(),
                });
            }
        }
        let all: Vec<u32>;
        let list = match &candidates {
            Some(c) => c.as_slice(),
            None => {
                all = (0..self.field.modulus()).collect();
                &all
            }
        };
        for &x in list {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(AllSquaresError::WorkCap(self.cap));
            }
            self.point[level] = x;
            self.go(level + 1)?;
        }
        Ok(())
    }
}

/// All common zeros in GF(p)^l of `core`, a system in the variables `vars`.
/// Points are listed in lexicographic order, coordinates aligned with `vars`.
/// Zeros over extension fields are not found.
pub fn solve_core(
    field: PrimeField,
    vars: &[u32],
    core: &[SparsePoly],
    limits: &CoreLimits,
) -> Result<Vec<Vec<u32>>, AllSquaresError> {
    if vars.len() > limits.max_vars {
        return Err(AllSquaresError::CoreTooLarge { vars: vars.len(), cap: limits.max_vars });
    }
    if field.modulus() > limits.max_prime {
        return Err(AllSquaresError::PrimeTooLarge { p: field.modulus(), cap: limits.max_prime });
    }
    let mut by_level = vec![Vec::new(); vars.len()];
    for h in core {
        let mut deepest = None;
        for &(m, _) in h.terms() {
            for i in m.indices() {
                let pos = vars.iter().position(|&v| v == i).ok_or(AllSquaresError::ForeignVariable(i))?;
                deepest = deepest.max(Some(pos));
            }
        }
        match deepest {
            Some(d) => by_level[d].push(h),
            None if h.is_zero() => {}
            None => return Ok(Vec::new()),
        }
    }
    let mut pos = vec![usize::MAX; vars.iter().max().map_or(0, |&v| v as usize + 1)];
    for (k, &v) in vars.iter().enumerate() {
        pos[v as usize] = k;
    }
    let mut s = Search {
        field,
        vars,
        pos,
        by_level,
        point: vec![0; vars.len()],
        nodes: 0,
        cap: limits.max_nodes,
        out: Vec::new(),
    };
    s.go(0)?;
    Ok(s.out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support::Monomial;
    use rand::{Rng, SeedableRng};

    fn poly(f: PrimeField, terms: &[(Monomial, i64)]) -> SparsePoly {
        SparsePoly::from_terms(f, terms.iter().map(|&(m, c)| (m, f.reduce_i64(c))))
    }

    fn brute(f: PrimeField, vars: &[u32], core: &[SparsePoly]) -> Vec<Vec<u32>> {
        let p = f.modulus();
        let mut out = Vec::new();
        let total = (p as u64).pow(vars.len() as u32);
        for code in 0..total {
            let mut c = code;
            let mut pt = vec![0u32; vars.len()];
            for slot in pt.iter_mut().rev() {
                *slot = (c % p as u64) as u32;
                c /= p as u64;
            }
            let at = |i: u32| pt[vars.iter().position(|&v| v == i).unwrap()];
            if core.iter().all(|h| h.eval(at) == 0) {
                out.push(pt.clone());
            }
        }
        out
    }

    #[test]
    fn univariate_roots() {
        let f = PrimeField::new(7).unwrap();
        let h = poly(f, &[(Monomial::square(1), 1), (Monomial::ONE, -4)]);
        assert_eq!(solve_core(f, &[1], &[h], &CoreLimits::default()).unwrap(), vec![vec![2], vec![5]]);
    }

    #[test]
    fn circle_and_diagonal() {
        let f = PrimeField::new(7).unwrap();
        let h1 = poly(f, &[(Monomial::square(1), 1), (Monomial::square(2), 1), (Monomial::ONE, -2)]);
        let h2 = poly(f, &[(Monomial::var(1), 1), (Monomial::var(2), -1)]);
        let sols = solve_core(f, &[1, 2], &[h1, h2], &CoreLimits::default()).unwrap();
        assert_eq!(sols, vec![vec![1, 1], vec![6, 6]]);
    }

    #[test]
    fn empty_and_inconsistent_cores() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(solve_core(f, &[], &[], &CoreLimits::default()).unwrap(), vec![Vec::<u32>::new()]);
        let one = SparsePoly::constant(f, 1);
        assert!(solve_core(f, &[1], &[one], &CoreLimits::default()).unwrap().is_empty());
        let limits = CoreLimits { max_vars: 1, ..Default::default() };
        assert!(matches!(solve_core(f, &[1, 2], &[], &limits), Err(AllSquaresError::CoreTooLarge { .. })));
        let small = CoreLimits { max_prime: 3, ..Default::default() };
        assert!(matches!(solve_core(f, &[1], &[], &small), Err(AllSquaresError::PrimeTooLarge { .. })));
    }

    #[test]
    fn matches_brute_force_and_bezout() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let mons = [
            Monomial::ONE,
            Monomial::var(1),
            Monomial::var(2),
            Monomial::square(1),
            Monomial::square(2),
            Monomial::product(1, 2),
        ];
        for p in [3u64, 5, 11, 13] {
            let f = PrimeField::new(p).unwrap();
            for _ in 0..40 {
                let core: Vec<SparsePoly> = (0..2)
                    .map(|_| {
                        let c: Vec<u32> = mons.iter().map(|_| rng.random_range(0..p as u32)).collect();
                        SparsePoly::from_dense(f, &mons, &c)
                    })
                    .collect();
                let got = solve_core(f, &[1, 2], &core, &CoreLimits::default()).unwrap();
                assert_eq!(got, brute(f, &[1, 2], &core));
                // finitely many zeros means at most 4; a common curve has about p
                assert!(got.len() <= 4 || got.len() + 1 >= p as usize, "{} zeros mod {p}", got.len());
            }
        }
    }

    #[test]
    fn work_cap_is_enforced() {
        let f = PrimeField::new(13).unwrap();
        let limits = CoreLimits { max_nodes: 50, ..Default::default() };
        assert!(matches!(solve_core(f, &[1, 2], &[], &limits), Err(AllSquaresError::WorkCap(50))));
    }
}
