use std::collections::HashMap;

use super::{Certificate, FewnomialSystem};
use crate::support::Monomial;

/// Checks `sum_i f_i h_i = 1` exactly.
///
/// The sum is regrouped by cofactor monomial: for each `mu` used by some
/// `h_i`, `w_mu = sum_i h_i[mu] f_i` is formed first and `mu w_mu` is then
/// expanded. This is the same polynomial as the term-by-term product but
/// cheap when the cofactors share few monomials.
pub fn verify_certificate(sys: &FewnomialSystem, cert: &Certificate) -> bool {
    let f = sys.field();
    let mons = sys.support().monomials();
    if cert.m() != sys.m() || cert.rows().iter().any(|r| r.len() != mons.len()) {
        return false;
    }
    let p = f.modulus() as u64;
    let mut total: HashMap<Monomial, u32> = HashMap::new();
    let mut w = vec![0u64; mons.len()];
    for (a, &mu) in mons.iter().enumerate() {
        let mut used = false;
        for (h, row) in cert.rows().iter().zip(sys.rows()) {
            let c = h[a] as u64 % p;
            if c == 0 {
                continue;
            }
            used = true;
            for (acc, &v) in w.iter_mut().zip(row) {
                *acc = (*acc + c * v as u64) % p;
            }
        }
        if !used {
            continue;
        }
        for (b, acc) in w.iter_mut().enumerate() {
            if *acc != 0 {
                let e = total.entry(mu.mul(mons[b]).expect("degree at most 4")).or_insert(0);
                *e = f.add(*e, *acc as u32);
                *acc = 0;
            }
        }
    }
    total.retain(|_, c| *c != 0);
    total.len() == 1 && total.get(&Monomial::ONE) == Some(&1)
}
