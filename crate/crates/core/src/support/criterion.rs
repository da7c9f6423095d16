use super::{matching_number, HomogeneousSupport, Support};

/// Outcome of the matching-number test `m >= |M| - (sqrt(1 + 8 nu) - 1) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriterionReport {
    /// `|M|`, the constant included.
    pub support_size: usize,
    pub nu: usize,
    pub m: usize,
    pub holds: bool,
    /// Smallest equation count (at least 1) for which the test passes.
    pub minimal_m: usize,
}

/// Largest `t` with `t (t + 1) / 2 <= x`, i.e. `floor((sqrt(1 + 8x) - 1) / 2)`.
pub fn triangular_root(x: usize) -> usize {
    let x = x as u128;
    let mut t = (((8 * x + 1) as f64).sqrt() as u128).saturating_sub(1) / 2;
    while (t + 1) * (t + 2) / 2 <= x {
        t += 1;
    }
    while t * (t + 1) / 2 > x {
        t -= 1;
    }
    t as usize
}

fn report(support_size: usize, nu: usize, m: usize) -> CriterionReport {
    // m >= |M| - (sqrt(1+8nu)-1)/2  <=>  m >= |M| or (2(|M|-m)+1)^2 <= 1+8nu
    let holds = m >= support_size || {
        let d = 2 * (support_size - m) as u128 + 1;
        d * d <= 1 + 8 * nu as u128
    };
    let minimal_m = support_size.saturating_sub(triangular_root(nu)).max(1);
    CriterionReport {
        support_size,
        nu,
        m,
        holds,
        minimal_m,
    }
}

/// Evaluates the criterion in exact integer arithmetic; `nu` is taken on the
/// homogenized support graph.
pub fn check_criterion(s: &Support, m: usize) -> CriterionReport {
    let nu = matching_number(&s.graph()).size();
    report(s.len(), nu, m)
}

pub fn check_criterion_homogeneous(s: &HomogeneousSupport, m: usize) -> CriterionReport {
    let nu = matching_number(&s.graph()).size();
    report(s.len(), nu, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support::tests::example_3_1;
    use crate::support::{Monomial, SupportGraph};
    use proptest::prelude::*;

    #[test]
    fn triangular_roots() {
        let expected = [0, 1, 1, 2, 2, 2, 3, 3, 3, 3, 4];
        for (x, &t) in expected.iter().enumerate() {
            assert_eq!(triangular_root(x), t, "x = {x}");
        }
        assert_eq!(triangular_root(6), 3);
        assert_eq!(triangular_root(5050), 100);
    }

    #[test]
    fn example_3_1_minimal_m() {
        let s = example_3_1();
        let r8 = check_criterion(&s, 8);
        assert_eq!((r8.support_size, r8.nu), (9, 2));
        assert!(r8.holds);
        assert_eq!(r8.minimal_m, 8);
        assert!(!check_criterion(&s, 7).holds);
    }

    #[test]
    fn zero_matching_reduces_to_support_size() {
        let s = Support::new(2, [Monomial::ONE, Monomial::var(1), Monomial::product(1, 2)]).unwrap();
        for m in 1..6 {
            assert_eq!(check_criterion(&s, m).holds, m >= 3);
        }
    }

    #[test]
    fn nu_three_allows_m_equal_n() {
        // k = 1: |M| = n + 2 with three disjoint looped edges
        let s = Support::new(
            7,
            [
                Monomial::ONE,
                Monomial::square(1),
                Monomial::square(2),
                Monomial::square(3),
                Monomial::square(4),
                Monomial::square(5),
                Monomial::product(1, 2),
                Monomial::product(3, 4),
                Monomial::var(5),
            ],
        )
        .unwrap();
        let r = check_criterion(&s, 7);
        assert_eq!((r.support_size, r.nu), (9, 3));
        assert_eq!(r.minimal_m, 7);
        assert!(r.holds);
    }

    proptest! {
        #[test]
        fn exact_test_matches_float_away_from_ties(size in 1usize..60, nu in 0usize..500, m in 1usize..60) {
            let r = report(size, nu, m);
            let bound = size as f64 - (((1 + 8 * nu) as f64).sqrt() - 1.0) / 2.0;
            if (m as f64 - bound).abs() > 1e-9 {
                prop_assert_eq!(r.holds, m as f64 >= bound);
            }
            prop_assert_eq!(r.holds, m >= r.minimal_m);
        }

        #[test]
        fn more_loop_edges_never_raise_minimal_m(
            extra in proptest::collection::vec((0u32..7, 0u32..7), 0..10),
        ) {
            let base = SupportGraph::from_parts(7, &[(0, 1), (2, 3)], &[0, 1, 2, 3, 4, 5, 6]);
            let nu0 = matching_number(&base).size();
            let mut g = base.clone();
            for (a, b) in extra {
                if a != b {
                    g.add_edge(a, b);
                }
            }
            let nu1 = matching_number(&g).size();
            prop_assert!(nu1 >= nu0);
            prop_assert!(report(20, nu1, 1).minimal_m <= report(20, nu0, 1).minimal_m);
        }
    }
}
