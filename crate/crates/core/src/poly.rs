//! Sparse polynomials with coefficients in GF(p).

use std::collections::HashMap;
use std::fmt;

use crate::gf::PrimeField;
use crate::support::Monomial;

/// Polynomial stored as sorted `(monomial, coefficient)` pairs with nonzero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    field: PrimeField,
    terms: Vec<(Monomial, u32)>,
}

impl SparsePoly {
    pub fn zero(field: PrimeField) -> SparsePoly {
        SparsePoly { field, terms: Vec::new() }
    }

    pub fn constant(field: PrimeField, c: u32) -> SparsePoly {
        SparsePoly::from_terms(field, [(Monomial::ONE, c)])
    }

    /// Collects terms, adding coefficients of repeated monomials.
    pub fn from_terms(field: PrimeField, terms: impl IntoIterator<Item = (Monomial, u32)>) -> SparsePoly {
        let mut map: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            let e = map.entry(m).or_insert(0);
            *e = field.add(*e, c % field.modulus());
        }
        let mut terms: Vec<(Monomial, u32)> = map.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by_key(|&(m, _)| m);
        SparsePoly { field, terms }
    }

    /// Polynomial with coefficient `coeffs[i]` on `monomials[i]`.
    pub fn from_dense(field: PrimeField, monomials: &[Monomial], coeffs: &[u32]) -> SparsePoly {
        assert_eq!(monomials.len(), coeffs.len());
        SparsePoly::from_terms(field, monomials.iter().copied().zip(coeffs.iter().copied()))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(Monomial::ONE, 1)]
    }

    pub fn coeff(&self, m: Monomial) -> u32 {
        self.terms
            .binary_search_by_key(&m, |&(t, _)| t)
            .map_or(0, |k| self.terms[k].1)
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        SparsePoly::from_terms(self.field, self.terms.iter().chain(&other.terms).copied())
    }

    pub fn scale(&self, c: u32) -> SparsePoly {
        SparsePoly::from_terms(self.field, self.terms.iter().map(|&(m, a)| (m, self.field.mul(a, c))))
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.scale(self.field.neg(1)))
    }

    /// Product; `None` when a term would exceed degree 4.
    pub fn mul(&self, other: &SparsePoly) -> Option<SparsePoly> {
        let f = self.field;
        let mut out = Vec::with_capacity(self.len() * other.len());
        for &(a, x) in &self.terms {
            for &(b, y) in &other.terms {
                out.push((a.mul(b)?, f.mul(x, y)));
            }
        }
        Some(SparsePoly::from_terms(f, out))
    }

    /// Value at a point given by `point(i)` for variable `X_i`.
    pub fn eval(&self, point: impl Fn(u32) -> u32) -> u32 {
        let f = self.field;
        self.terms
            .iter()
            .fold(0, |acc, &(m, c)| f.add(acc, f.mul(c, m.eval(f, &point))))
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}
