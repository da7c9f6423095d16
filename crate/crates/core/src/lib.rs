//! Support-sized Nullstellensatz certificates for quadratic fewnomial systems.

pub mod gf;
pub mod support;
pub mod linalg;
pub mod poly;
pub mod certify;
pub mod random;
pub mod experiment;
pub mod allsquares;
