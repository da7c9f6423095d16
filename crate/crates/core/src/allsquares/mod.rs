//! Systems whose support holds 1 and every square `X_i^2`: reduction to a core
//! in the variables of the square-free monomials, and the sign-flip orbit
//! description of the GF(p)-solutions.

mod solve;

use thiserror::Error;

use crate::certify::FewnomialSystem;
use crate::gf::PrimeField;
use crate::poly::SparsePoly;
use crate::support::{Monomial, Support};

pub use solve::{solve_core, CoreLimits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AllSquaresError {
    #[error("support lacks the constant monomial")]
    MissingConstant,
    #[error("support lacks the square of variable {0}")]
    MissingSquare(u32),
    #[error("expected as many equations as variables, got {m} for {n}")]
    NotSquare { m: usize, n: usize },
    #[error("need n > 2k, got n = {n} and k = {k}")]
    TooFewVariables { n: usize, k: usize },
    #[error("square coefficient matrix has rank {rank}, needs {needed}")]
    RankDeficient { rank: usize, needed: usize },
    #[error("core has {vars} variables, cap is {cap}")]
    CoreTooLarge { vars: usize, cap: usize },
    #[error("exhaustive search needs p <= {cap}, got {p}")]
    PrimeTooLarge { p: u32, cap: u32 },
    #[error("core search exceeded {0} nodes")]
    WorkCap(u64),
    #[error("variable {0} does not belong to the core")]
    ForeignVariable(u32),
    #[error("monomial must be square-free in the core variables")]
    BadMonomial,
}

/// A square system with support `{1, X_1^2, .., X_n^2}` plus `k` square-free
/// monomials.
#[derive(Debug, Clone)]
pub struct AllSquaresSystem {
    sys: FewnomialSystem,
    k: usize,
    edge_vars: Vec<u32>,
    other_vars: Vec<u32>,
}

impl AllSquaresSystem {
    pub fn new(sys: FewnomialSystem) -> Result<Self, AllSquaresError> {
        let s = sys.support();
        let n = s.n();
        if sys.m() != n {
            return Err(AllSquaresError::NotSquare { m: sys.m(), n });
        }
        if !s.contains(Monomial::ONE) {
            return Err(AllSquaresError::MissingConstant);
        }
        if let Some(i) = (1..=n as u32).find(|&i| !s.contains(Monomial::square(i))) {
            return Err(AllSquaresError::MissingSquare(i));
        }
        let k = s.len() - n - 1;
        if n <= 2 * k {
            return Err(AllSquaresError::TooFewVariables { n, k });
        }
        let mut edge = vec![false; n + 1];
        for &m in s.monomials() {
            if m.as_square().is_none() {
                m.indices().for_each(|i| edge[i as usize] = true);
            }
        }
        let edge_vars = (1..=n as u32).filter(|&i| edge[i as usize]).collect();
        let other_vars = (1..=n as u32).filter(|&i| !edge[i as usize]).collect();
        Ok(AllSquaresSystem { sys, k, edge_vars, other_vars })
    }

    pub fn system(&self) -> &FewnomialSystem {
        &self.sys
    }

    pub fn n(&self) -> usize {
        self.sys.support().n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of variables occurring in some square-free monomial.
    pub fn ell(&self) -> usize {
        self.edge_vars.len()
    }

    pub fn edge_variables(&self) -> &[u32] {
        &self.edge_vars
    }

    /// Variables occurring only in their square.
    pub fn other_variables(&self) -> &[u32] {
        &self.other_vars
    }

    /// The `n x (n - l)` coefficients of `X_i^2` for the other variables.
    pub fn s_matrix(&self) -> Vec<Vec<u32>> {
        let cols: Vec<usize> = self.square_columns();
        self.sys.rows().iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect()
    }

    fn square_columns(&self) -> Vec<usize> {
        let s = self.sys.support();
        self.other_vars.iter().map(|&i| s.index_of(Monomial::square(i)).expect("all squares")).collect()
    }
}

/// `X_i^2 = g_i` for every other variable, and the core `h_1..h_l`; all
/// polynomials involve only the edge variables.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSystem {
    pub relations: Vec<(u32, SparsePoly)>,
    pub core: Vec<SparsePoly>,
}

/// Gauss-Jordan elimination of the other squares, pivoting on the first
/// nonzero entry of each column.
pub fn reduce_all_squares(sys: &AllSquaresSystem) -> Result<ReducedSystem, AllSquaresError> {
    let f = sys.sys.field();
    let support: &Support = sys.sys.support();
    let cols = sys.square_columns();
    let mut rows: Vec<Vec<u32>> = sys.sys.rows().to_vec();
    let n = rows.len();
    let mut rank = 0;
    for &c in &cols {
        let Some(r) = (rank..n).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = f.inv(rows[rank][c]).expect("nonzero pivot");
        rows[rank].iter_mut().for_each(|x| *x = f.mul(*x, inv));
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let t = row[c];
            if i == rank || t == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = f.sub(*x, f.mul(t, y));
            }
        }
        rank += 1;
    }
    if rank < cols.len() {
        return Err(AllSquaresError::RankDeficient { rank, needed: cols.len() });
    }
    let rest: Vec<usize> = (0..support.len()).filter(|c| !cols.contains(c)).collect();
    let restricted = |row: &[u32], negate: bool| {
        SparsePoly::from_terms(
            f,
            rest.iter().map(|&c| (support.get(c), if negate { f.neg(row[c]) } else { row[c] })),
        )
    };
    let relations = sys.other_vars.iter().zip(&rows).map(|(&v, row)| (v, restricted(row, true))).collect();
    let core = rows[cols.len()..].iter().map(|row| restricted(row, false)).collect();
    Ok(ReducedSystem { relations, core })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareClass {
    Zero,
    Residue,
    NonResidue,
}

/// One core solution `a` with the values `g_i(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    /// Coordinates aligned with the edge variables.
    pub core_point: Vec<u32>,
    /// `g_i(a)`, aligned with the other variables.
    pub square_values: Vec<u32>,
    pub classes: Vec<SquareClass>,
    /// A full GF(p)-solution (entry `i - 1` is `X_i`), present when every
    /// `g_i(a)` has a square root in GF(p).
    pub representative: Option<Vec<u32>>,
}

impl Orbit {
    /// Number of GF(p)-points in the orbit.
    pub fn rational_size(&self) -> u128 {
        if self.representative.is_none() {
            return 0;
        }
        let flips = self.classes.iter().filter(|&&c| c == SquareClass::Residue).count();
        1u128.checked_shl(flips as u32).unwrap_or(u128::MAX)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitRepresentation {
    pub field: PrimeField,
    pub edge_vars: Vec<u32>,
    pub other_vars: Vec<u32>,
    pub reduced: ReducedSystem,
    pub orbits: Vec<Orbit>,
}

impl OrbitRepresentation {
    pub fn rational_solution_count(&self) -> u128 {
        self.orbits.iter().map(Orbit::rational_size).fold(0, u128::saturating_add)
    }

    /// `point` with the sign of `X_var` flipped.
    pub fn flip(&self, point: &[u32], var: u32) -> Vec<u32> {
        let mut q = point.to_vec();
        q[var as usize - 1] = self.field.neg(q[var as usize - 1]);
        q
    }

    /// Every GF(p)-solution, sorted; `None` if there are more than `cap`.
    pub fn rational_solutions(&self, cap: usize) -> Option<Vec<Vec<u32>>> {
        if self.rational_solution_count() > cap as u128 {
            return None;
        }
        let mut out = Vec::new();
        for o in &self.orbits {
            let Some(rep) = &o.representative else { continue };
            let flippable: Vec<u32> = self
                .other_vars
                .iter()
                .zip(&o.classes)
                .filter(|(_, &c)| c == SquareClass::Residue)
                .map(|(&v, _)| v)
                .collect();
            for mask in 0u64..1 << flippable.len() {
                let mut q = rep.clone();
                for (b, &v) in flippable.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        q = self.flip(&q, v);
                    }
                }
                out.push(q);
            }
        }
        out.sort();
        out.dedup();
        Some(out)
    }
}

pub fn orbit_representation(sys: &AllSquaresSystem, limits: &CoreLimits) -> Result<OrbitRepresentation, AllSquaresError> {
    let f = sys.sys.field();
    let reduced = reduce_all_squares(sys)?;
    let points = solve_core(f, &sys.edge_vars, &reduced.core, limits)?;
    let orbits = points
        .into_iter()
        .map(|a| {
            let at = |i: u32| a[sys.edge_vars.iter().position(|&v| v == i).expect("edge variable")];
            let square_values: Vec<u32> = reduced.relations.iter().map(|(_, g)| g.eval(at)).collect();
            let roots: Vec<Option<(u32, u32)>> = square_values.iter().map(|&v| f.sqrt(v)).collect();
            let classes = square_values
                .iter()
                .zip(&roots)
                .map(|(&v, r)| match (v, r) {
                    (0, _) => SquareClass::Zero,
                    (_, Some(_)) => SquareClass::Residue,
                    _ => SquareClass::NonResidue,
                })
                .collect();
            let representative = roots.iter().all(Option::is_some).then(|| {
                let mut x = vec![0u32; sys.n()];
                for (&v, &c) in sys.edge_vars.iter().zip(&a) {
                    x[v as usize - 1] = c;
                }
                for (&v, r) in sys.other_vars.iter().zip(&roots) {
                    x[v as usize - 1] = r.expect("residue").0;
                }
                x
            });
            Orbit { core_point: a, square_values, classes, representative }
        })
        .collect();
    Ok(OrbitRepresentation {
        field: f,
        edge_vars: sys.edge_vars.clone(),
        other_vars: sys.other_vars.clone(),
        reduced,
        orbits,
    })
}

/// `prod (T - v)` over the distinct values `v = mu(a)` at the given core
/// points; coefficients from the constant term up.
pub fn eliminant_of_points(field: PrimeField, vars: &[u32], points: &[Vec<u32>], mu: Monomial) -> Result<Vec<u32>, AllSquaresError> {
    if !mu.is_squarefree() {
        return Err(AllSquaresError::BadMonomial);
    }
    if let Some(i) = mu.indices().find(|i| !vars.contains(i)) {
        return Err(AllSquaresError::ForeignVariable(i));
    }
    let mut values: Vec<u32> = points
        .iter()
        .map(|a| mu.eval(field, |i| a[vars.iter().position(|&v| v == i).expect("checked")]))
        .collect();
    values.sort_unstable();
    values.dedup();
    let mut poly = vec![1u32];
    for v in values {
        // poly * (T - v)
        let mut next = vec![0u32; poly.len() + 1];
        for (d, &c) in poly.iter().enumerate() {
            next[d + 1] = field.add(next[d + 1], c);
            next[d] = field.sub(next[d], field.mul(c, v));
        }
        poly = next;
    }
    Ok(poly)
}

/// Univariate `P_mu` vanishing at `mu(x)` for every solution `x` whose edge
/// coordinates lie in GF(p).
pub fn eliminant(sys: &AllSquaresSystem, mu: Monomial, limits: &CoreLimits) -> Result<Vec<u32>, AllSquaresError> {
    let reduced = reduce_all_squares(sys)?;
    let points = solve_core(sys.sys.field(), &sys.edge_vars, &reduced.core, limits)?;
    eliminant_of_points(sys.sys.field(), &sys.edge_vars, &points, mu)
}

/// The constant, all `n` squares, and `k` distinct square-free monomials of
/// degree 1 or 2 drawn uniformly.
pub fn random_all_squares_support(n: usize, k: usize, rng: &mut impl rand::Rng) -> Support {
    let mut pool: Vec<Monomial> = (1..=n as u32).map(Monomial::var).collect();
    pool.extend((1..=n as u32).flat_map(|i| (i + 1..=n as u32).map(move |j| Monomial::product(i, j))));
    let picks = rand::seq::index::sample(rng, pool.len(), k.min(pool.len()));
    let mut mons = vec![Monomial::ONE];
    mons.extend((1..=n as u32).map(Monomial::square));
    mons.extend(picks.iter().map(|i| pool[i]));
    Support::new(n, mons).expect("distinct monomials")
}
