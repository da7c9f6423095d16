//! Support-sized Nullstellensatz certificates.
//!
//! [`compute_certificate`] looks for `h_1..h_m` in the span of the support
//! with `sum f_i h_i = 1` in two phases: the quadratic system is reduced to
//! echelon form ([`reduce_system`]), then a degree-4 problem is solved by one
//! of the registered [`CertificateSolver`]s.

mod macaulay;
mod reduce;
mod solver;
mod structured;
mod system;
mod verify;
mod witness;

pub use macaulay::{product_span_rank, MacaulaySolver};
pub use reduce::{reduce_system, Reduction};
pub use solver::{
    certify_with, compute_certificate, CertificateSolver, CertifyError, CertifyReport, Limits, SolverRegistry,
    DEFAULT_SOLVER,
};
pub use structured::StructuredSolver;
pub use system::{Certificate, FewnomialSystem, FormatError};
pub use verify::verify_certificate;
pub use witness::{
    build_witness_system, spans_all_quadrics, square_spanning_forms, SquareSpanningForms, WitnessError, WitnessSystem,
    SPANNING_RETRIES,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::PrimeField;
    use crate::support::tests::example_3_1;
    use crate::support::{card_m2_homogeneous, check_criterion, triangular_root, Monomial, Support};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn solvers() -> Vec<Box<dyn CertificateSolver>> {
        vec![
            Box::new(StructuredSolver),
            Box::new(MacaulaySolver { reduce_first: true }),
            Box::new(MacaulaySolver { reduce_first: false }),
        ]
    }

    fn random_support(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Support {
        let mut all = Vec::new();
        for i in 1..=n as u32 {
            all.push(Monomial::var(i));
            for j in i..=n as u32 {
                all.push(Monomial::product(i, j));
            }
        }
        let picked = rand::seq::index::sample(rng, all.len(), extra.min(all.len()));
        Support::new(n, std::iter::once(Monomial::ONE).chain(picked.iter().map(|k| all[k]))).unwrap()
    }

    /// Dense rank by plain elimination, independent of the crate's linalg.
    fn naive_rank(f: PrimeField, mut a: Vec<Vec<u32>>) -> usize {
        let ncols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..ncols {
            let Some(r) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
            a.swap(rank, r);
            let inv = f.inv(a[rank][c]).unwrap();
            let piv: Vec<u32> = a[rank].iter().map(|&v| f.mul(v, inv)).collect();
            for row in a.iter_mut().skip(rank + 1) {
                let x = row[c];
                if x != 0 {
                    for (v, &pv) in row.iter_mut().zip(&piv) {
                        *v = f.sub(*v, f.mul(x, pv));
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Brute force over explicitly enumerated products: rank of `{mu f_i}`,
    /// `|M^2|`, and whether the constant lies in the span.
    fn brute_membership(f: PrimeField, mons: &[Monomial], rows: &[Vec<u32>]) -> (usize, usize, bool) {
        let mut cols: Vec<Monomial> = mons.iter().flat_map(|&a| mons.iter().map(move |&b| a.mul(b).unwrap())).collect();
        cols.sort();
        cols.dedup();
        let mut mat = Vec::new();
        for &mu in mons {
            for r in rows {
                let mut v = vec![0u32; cols.len()];
                for (c, &x) in r.iter().enumerate() {
                    let k = cols.binary_search(&mu.mul(mons[c]).unwrap()).unwrap();
                    v[k] = f.add(v[k], x);
                }
                mat.push(v);
            }
        }
        let rank = naive_rank(f, mat.clone());
        let one = cols.binary_search(&Monomial::ONE);
        let with_one = match one {
            Ok(k) => {
                let mut e = vec![0u32; cols.len()];
                e[k] = 1;
                mat.push(e);
                naive_rank(f, mat) == rank
            }
            Err(_) => false,
        };
        (rank, cols.len(), with_one)
    }

    fn brute_product_rank(f: PrimeField, mons: &[Monomial], rows: &[Vec<u32>]) -> (usize, usize) {
        let (r, c, _) = brute_membership(f, mons, rows);
        (r, c)
    }

    #[test]
    fn constant_equation_gives_trivial_certificate() {
        let f = PrimeField::default();
        let s = example_3_1();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut sys_rows = FewnomialSystem::random(f, s.clone(), 3, &mut rng).rows().to_vec();
        sys_rows[0] = vec![0; s.len()];
        sys_rows[0][0] = 1;
        let sys = FewnomialSystem::new(f, s, sys_rows).unwrap();
        for solver in solvers() {
            let cert = certify_with(&sys, solver.as_ref(), &Limits::default()).unwrap().certificate;
            assert!(verify_certificate(&sys, &cert));
        }
        // the structured path finds exactly h_1 = 1
        let cert = compute_certificate(&sys).unwrap();
        assert_eq!(cert.cofactors(&sys)[0].terms(), &[(Monomial::ONE, 1)]);
        assert!(cert.cofactors(&sys)[1..].iter().all(|h| h.is_zero()));
    }

    #[test]
    fn zero_cofactors_do_not_verify() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sys = FewnomialSystem::random(f, example_3_1(), 8, &mut rng);
        assert!(!verify_certificate(&sys, &Certificate::zero(8, 9)));
        assert!(!verify_certificate(&sys, &Certificate::zero(7, 9)));
    }

    #[test]
    fn tampered_certificate_fails() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let sys = FewnomialSystem::random(f, example_3_1(), 8, &mut rng);
        let cert = compute_certificate(&sys).unwrap();
        for _ in 0..20 {
            let mut bad = cert.clone();
            let (i, c) = (rng.random_range(0..8), rng.random_range(0..9));
            let slot = &mut bad.rows_mut()[i][c];
            *slot = f.add(*slot, rng.random_range(1..65521));
            assert!(!verify_certificate(&sys, &bad));
        }
    }

    #[test]
    fn example_3_1_random_system_at_minimal_m() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = example_3_1();
        assert_eq!(check_criterion(&s, 8).minimal_m, 8);
        for _ in 0..10 {
            let sys = FewnomialSystem::random(f, s.clone(), 8, &mut rng);
            let cert = compute_certificate(&sys).unwrap();
            assert!(verify_certificate(&sys, &cert));
            assert_eq!(cert.rows().len(), 8);
            assert!(cert.rows().iter().all(|r| r.len() == s.len()));
        }
    }

    #[test]
    fn solvers_agree_with_brute_force_rank() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..150 {
            let n = 1 + trial % 5;
            let extra = rng.random_range(0..=n + 3);
            let s = random_support(&mut rng, n, extra);
            let m = rng.random_range(1..=s.len());
            let mut sys = FewnomialSystem::random(f, s.clone(), m, &mut rng);
            if trial % 7 == 0 && m > 1 {
                // force a dependent row
                let mut rows = sys.rows().to_vec();
                rows[m - 1] = rows[0].iter().map(|&v| f.mul(v, 3)).collect();
                sys = FewnomialSystem::new(f, s.clone(), rows).unwrap();
            }
            let (rank, cols, expect_found) = brute_membership(f, s.monomials(), sys.rows());
            for solver in solvers() {
                match certify_with(&sys, solver.as_ref(), &Limits::default()) {
                    Ok(r) => {
                        assert!(expect_found, "{} found a certificate", solver.name());
                        assert!(verify_certificate(&sys, &r.certificate));
                    }
                    Err(CertifyError::NotFound { rank: got, columns }) => {
                        assert!(!expect_found, "{} missed a certificate", solver.name());
                        assert_eq!((got, columns), (rank, cols), "{}", solver.name());
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn phase_equivalence() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let direct = MacaulaySolver { reduce_first: false };
        for _ in 0..60 {
            let n = rng.random_range(2..7);
            let s = random_support(&mut rng, n, n + 1);
            let m = rng.random_range(1..=n);
            let sys = FewnomialSystem::random(f, s, m, &mut rng);
            let reduced = reduce_system(&sys);
            let a = certify_with(&sys, &direct, &Limits::default()).is_ok();
            if reduced.m() > 0 {
                let b = certify_with(&reduced, &direct, &Limits::default()).is_ok();
                assert_eq!(a, b);
            }
            // the reduced path maps back to cofactors of the original system
            let c = certify_with(&sys, &StructuredSolver, &Limits::default());
            assert_eq!(a, c.is_ok());
            if let Ok(r) = c {
                assert!(verify_certificate(&sys, &r.certificate));
            }
        }
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let sys = FewnomialSystem::random(f, example_3_1(), 8, &mut rng);
        let tiny = Limits { max_columns: 3 };
        let err = certify_with(&sys, &MacaulaySolver::default(), &tiny).unwrap_err();
        assert!(matches!(err, CertifyError::DimensionOverflow { cap: 3, .. }));
        let one_row = FewnomialSystem::random(f, example_3_1(), 1, &mut rng);
        let err = certify_with(&one_row, &StructuredSolver, &tiny).unwrap_err();
        assert!(matches!(err, CertifyError::DimensionOverflow { .. }));
    }

    #[test]
    fn registry_lookup() {
        let reg = SolverRegistry::default();
        assert_eq!(reg.names(), vec!["structured", "macaulay"]);
        assert!(reg.get("structured").is_ok());
        assert!(matches!(reg.get("groebner"), Err(CertifyError::UnknownSolver(_))));
    }

    #[test]
    fn spanning_forms_sizes() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for (t, p) in [(1, 0), (2, 1), (3, 1), (4, 2), (6, 3), (10, 6)] {
            let sf = square_spanning_forms(f, t, &mut rng).unwrap();
            assert_eq!(sf.forms.len(), p, "t = {t}");
            assert_eq!(t - triangular_root(t), p);
            // independent membership check: X_i^2 and X_j l span all quadrics
            let dim = t * (t + 1) / 2;
            let idx = |a: usize, b: usize| {
                let (a, b) = (a.min(b), a.max(b));
                (0..a).map(|r| t - r).sum::<usize>() + (b - a)
            };
            let mut mat = Vec::new();
            for i in 0..t {
                let mut v = vec![0u32; dim];
                v[idx(i, i)] = 1;
                mat.push(v);
            }
            for l in &sf.forms {
                for j in 0..t {
                    let mut v = vec![0u32; dim];
                    for i in 0..t {
                        v[idx(i, j)] = f.add(v[idx(i, j)], l[i]);
                    }
                    mat.push(v);
                }
            }
            assert_eq!(naive_rank(f, mat), dim, "t = {t}");
        }
    }

    #[test]
    fn fewer_forms_cannot_span() {
        // p = t - triangular_root(t) is also necessary: one form less fails
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for t in [3usize, 6] {
            let sf = square_spanning_forms(f, t, &mut rng).unwrap();
            assert!(!spans_all_quadrics(f, t, &sf.forms[1..]));
            let random: Vec<Vec<u32>> = (1..sf.forms.len()).map(|_| (0..t).map(|_| rng.random_range(0..65521)).collect()).collect();
            assert!(!spans_all_quadrics(f, t, &random));
        }
    }

    #[test]
    fn witness_example_3_1() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let w = build_witness_system(&example_3_1(), f, &mut rng).unwrap();
        assert_eq!(w.m(), 8);
        let (rank, cols) = w.product_span_rank();
        assert_eq!(cols as u64, card_m2_homogeneous(&w.support));
        assert_eq!(rank, cols);
        assert_eq!(brute_product_rank(f, w.support.monomials(), &w.rows), (rank, cols));
    }

    #[test]
    fn witness_without_matching_is_the_monomials() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let s = Support::new(3, [Monomial::ONE, Monomial::var(1), Monomial::product(2, 3), Monomial::square(2)]).unwrap();
        let w = build_witness_system(&s, f, &mut rng).unwrap();
        assert_eq!(w.matching.size(), 0);
        assert_eq!(w.m(), s.len());
        for (c, r) in w.rows.iter().enumerate() {
            assert_eq!(r.iter().filter(|&&v| v != 0).count(), 1);
            assert_eq!(r[c], 1);
        }
    }

    #[test]
    fn witness_random_supports() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for _ in 0..25 {
            let n = rng.random_range(1..=12);
            let extra = rng.random_range(0..2 * n + 2);
            let mut s = random_support(&mut rng, n, extra);
            // plenty of squares so the matching is nontrivial
            let mut mons = s.monomials().to_vec();
            for i in 1..=n as u32 {
                if rng.random_bool(0.6) && !mons.contains(&Monomial::square(i)) {
                    mons.push(Monomial::square(i));
                }
            }
            s = Support::new(n, mons).unwrap();
            let w = build_witness_system(&s, f, &mut rng).unwrap();
            assert_eq!(w.m(), s.len() - triangular_root(w.matching.size()));
            let (rank, cols) = w.product_span_rank();
            assert_eq!(cols as u64, card_m2_homogeneous(&s.homogenize()));
            assert_eq!(rank, cols);
            let sys = w.dehomogenize();
            assert!(compute_certificate(&sys).is_ok());
        }
    }
}
