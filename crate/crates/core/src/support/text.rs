//! Line-oriented text format for monomials: `1`, `xi`, `xi^2`, `xi*xj`.
//!
//! File indices are 0-based: `x0` is the first variable `X_1`. Lines starting
//! with `#` are comments.

use super::{Monomial, SupportError};

/// Formats an affine monomial of degree at most 2.
pub fn format_monomial(m: Monomial) -> String {
    debug_assert!(m.degree() <= 2 && m.indices().all(|i| i >= 1));
    let idx: Vec<u32> = m.indices().collect();
    match idx.as_slice() {
        [] => "1".to_string(),
        [i] => format!("x{}", i - 1),
        [i, j] if i == j => format!("x{}^2", i - 1),
        [i, j] => format!("x{}*x{}", i - 1, j - 1),
        _ => unreachable!("degree above 2"),
    }
}

fn parse_var(tok: &str) -> Result<u32, String> {
    let digits = tok
        .strip_prefix('x')
        .ok_or_else(|| format!("expected a variable like x0, got `{tok}`"))?;
    let i: u32 = digits
        .parse()
        .map_err(|_| format!("bad variable index in `{tok}`"))?;
    if i + 1 > super::MAX_VARIABLE {
        return Err(format!("variable index in `{tok}` too large"));
    }
    Ok(i + 1)
}

/// Parses one monomial token into internal (1-based) variables.
pub fn parse_monomial(token: &str) -> Result<Monomial, String> {
    let token = token.trim();
    if token == "1" {
        return Ok(Monomial::ONE);
    }
    if let Some((a, b)) = token.split_once('*') {
        let (i, j) = (parse_var(a.trim())?, parse_var(b.trim())?);
        return Ok(if i == j {
            Monomial::square(i)
        } else {
            Monomial::product(i, j)
        });
    }
    if let Some(base) = token.strip_suffix("^2") {
        return Ok(Monomial::square(parse_var(base.trim())?));
    }
    Ok(Monomial::var(parse_var(token)?))
}

pub(crate) fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

pub(crate) fn parse_block<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Vec<Monomial>, SupportError> {
    let mut out = Vec::new();
    for (lineno, line) in lines {
        if is_skippable(line) {
            continue;
        }
        let m = parse_monomial(line).map_err(|message| SupportError::Parse {
            line: lineno + 1,
            message,
        })?;
        out.push(m);
    }
    Ok(out)
}
