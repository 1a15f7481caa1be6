//! Exact computer algebra for Kac polynomials and the BPS invariants of
//! deformed tripled quivers with potential.
//!
//! The crate is organised bottom-up:
//!
//! - [`quiver`]: quivers, dimension vectors, Euler form, doubling/tripling/framing.
//! - [`ncpot`]: path algebras, cyclic words, cyclic derivatives and the canonical
//!   cubic potential with its `μ`-deformations.
//! - [`fqrep`]: brute-force enumeration of representations over prime fields,
//!   orbit decomposition and absolute indecomposability.
//! - [`kac`]: Kac polynomials by interpolating oracle counts (plus a
//!   generating-function backend), with a persistent cache.
//! - [`charser`]: Laurent polynomials and rational functions in `t = q^{1/2}`,
//!   multigraded series, and the super plethystic exponential/logarithm.
//! - [`bps`]: refined and Hodge BPS invariants, PBW and stack series.

pub mod bps;
pub mod charser;
pub mod fqrep;
pub mod kac;
pub mod ncpot;
pub mod quiver;

pub use num_rational::BigRational as Rational;

/// Parses `"1,-1"` or `"1/2,0"` into rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',')
        .map(|p| {
            let p = p.trim();
            p.parse::<Rational>()
                .map_err(|_| format!("cannot parse rational `{p}`"))
        })
        .collect()
}

/// `μ·d = Σ_i μ_i d_i`.
pub fn pairing(mu: &[Rational], d: &quiver::DimVector) -> Rational {
    mu.iter()
        .zip(d.iter())
        .map(|(m, &x)| m * Rational::from_integer(x.into()))
        .sum()
}
