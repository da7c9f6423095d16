use std::cmp::Ordering;
use std::fmt;

/// Largest variable index a [`Monomial`] can carry.
pub const MAX_VARIABLE: u32 = (u16::MAX - 1) as u32;

const SLOT_BITS: u32 = 16;
const SLOT_MASK: u64 = 0xFFFF;

/// A monomial of total degree at most 4 in variables `X_0, X_1, ...`.
///
/// The variables are kept as a sorted multiset of indices packed into four
/// 16-bit slots (index + 1, highest slot first, empty slots zero), so equal
/// monomials compare and hash equal. Degree-2 monomials are the support
/// elements; degree-4 ones appear as pairwise products.
///
/// Ordering is graded: lower degree first, then lexicographic on the sorted
/// index list.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn one() -> Monomial {
        Monomial::ONE
    }

    pub fn var(i: u32) -> Monomial {
        Monomial::from_sorted(&[i])
    }

    pub fn square(i: u32) -> Monomial {
        Monomial::from_sorted(&[i, i])
    }

    /// `X_i * X_j` in either argument order.
    pub fn product(i: u32, j: u32) -> Monomial {
        Monomial::from_sorted(&[i.min(j), i.max(j)])
    }

    /// Builds a monomial from up to four variable indices, in any order.
    pub fn from_indices(indices: &[u32]) -> Option<Monomial> {
        if indices.len() > 4 || indices.iter().any(|&i| i > MAX_VARIABLE) {
            return None;
        }
        let mut buf = [0u32; 4];
        buf[..indices.len()].copy_from_slice(indices);
        let slice = &mut buf[..indices.len()];
        slice.sort_unstable();
        Some(Monomial::from_sorted(slice))
    }

    fn from_sorted(sorted: &[u32]) -> Monomial {
        debug_assert!(sorted.len() <= 4);
        debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        let mut packed = 0u64;
        for (slot, &i) in sorted.iter().enumerate() {
            assert!(i <= MAX_VARIABLE, "variable index {i} out of range");
            packed |= ((i as u64) + 1) << (SLOT_BITS * (3 - slot as u32));
        }
        Monomial(packed)
    }

    /// Packed representation; a stable hash key.
    #[inline]
    pub fn key(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn degree(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            4 - (self.0.trailing_zeros() / SLOT_BITS) as usize
        }
    }

    /// Sorted variable indices, with repetition.
    pub fn indices(self) -> impl Iterator<Item = u32> {
        let packed = self.0;
        (0..4u32).map_while(move |s| {
            let v = (packed >> (SLOT_BITS * (3 - s))) & SLOT_MASK;
            (v != 0).then(|| (v - 1) as u32)
        })
    }

    pub fn exponent(self, var: u32) -> usize {
        self.indices().filter(|&i| i == var).count()
    }

    pub fn max_index(self) -> Option<u32> {
        self.indices().last()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// `X_i^2` for some `i`.
    pub fn as_square(self) -> Option<u32> {
        let mut it = self.indices();
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) if a == b => Some(a),
            _ => None,
        }
    }

    /// `(i, j)` with `i < j` for `X_i X_j`.
    pub fn as_product(self) -> Option<(u32, u32)> {
        let mut it = self.indices();
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) if a != b => Some((a, b)),
            _ => None,
        }
    }

    pub fn is_squarefree(self) -> bool {
        let mut prev = None;
        for i in self.indices() {
            if prev == Some(i) {
                return false;
            }
            prev = Some(i);
        }
        true
    }

    /// Product of two monomials, `None` if the degree would exceed 4.
    pub fn mul(self, other: Monomial) -> Option<Monomial> {
        let (da, db) = (self.degree(), other.degree());
        if da + db > 4 {
            return None;
        }
        let mut buf = [0u32; 4];
        let (mut a, mut b) = (self.indices().peekable(), other.indices().peekable());
        for slot in buf.iter_mut().take(da + db) {
            *slot = match (a.peek(), b.peek()) {
                (Some(&x), Some(&y)) if x <= y => a.next().unwrap(),
                (Some(_), Some(_)) => b.next().unwrap(),
                (Some(_), None) => a.next().unwrap(),
                (None, _) => b.next().unwrap(),
            };
        }
        Some(Monomial::from_sorted(&buf[..da + db]))
    }

    /// Multiplies by `X_0^(2 - deg)`.
    pub fn homogenize(self) -> Monomial {
        debug_assert!(self.degree() <= 2);
        let mut buf = [0u32; 4];
        let pad = 2 - self.degree();
        for (slot, i) in buf.iter_mut().skip(pad).zip(self.indices()) {
            *slot = i;
        }
        Monomial::from_sorted(&buf[..2])
    }

    /// Sets `X_0 = 1`.
    pub fn dehomogenize(self) -> Monomial {
        let mut buf = [0u32; 4];
        let mut len = 0;
        for i in self.indices().filter(|&i| i != 0) {
            buf[len] = i;
            len += 1;
        }
        Monomial::from_sorted(&buf[..len])
    }

    pub fn eval(self, field: crate::gf::PrimeField, point: impl Fn(u32) -> u32) -> u32 {
        self.indices().fold(1, |acc, i| field.mul(acc, point(i)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let idx: Vec<u32> = self.indices().collect();
        let mut first = true;
        let mut k = 0;
        while k < idx.len() {
            let mut e = 1;
            while k + e < idx.len() && idx[k + e] == idx[k] {
                e += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "X{}", idx[k])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            k += e;
        }
        Ok(())
    }
}
