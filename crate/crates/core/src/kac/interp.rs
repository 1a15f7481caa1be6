//! Exact Lagrange interpolation at prime field sizes.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{IntPoly, KacError};
use crate::fqrep::is_prime;
use crate::Rational;

/// The `n` smallest primes.
pub fn smallest_primes(n: usize) -> Vec<u32> {
    (2u32..).filter(|&p| is_prime(p)).take(n).collect()
}

/// The unique polynomial of degree `< points.len()` through `points`,
/// which must have distinct abscissae. Fails unless every coefficient is
/// an integer fitting in `i64`.
pub fn interpolate(points: &[(i64, i64)]) -> Result<IntPoly, KacError> {
    let n = points.len();
    let mut acc = vec![Rational::zero(); n];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // basis polynomial ∏_{j≠i} (x − x_j) / (x_i − x_j), built in ascending coefficients
        let mut basis = vec![Rational::from_integer(BigInt::from(1))];
        let mut denom = Rational::from_integer(BigInt::from(1));
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * Rational::from_integer(xj.into());
            }
            basis = next;
            denom *= Rational::from_integer((xi - xj).into());
        }
        let scale = Rational::from_integer(yi.into()) / denom;
        for (k, c) in basis.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    let mut coeffs = Vec::with_capacity(n);
    for c in acc {
        if !c.is_integer() {
            return Err(KacError::NonInteger(c.to_string()));
        }
        let v = c
            .to_integer()
            .to_i64()
            .ok_or_else(|| KacError::Overflow(c.to_string()))?;
        coeffs.push(v);
    }
    Ok(IntPoly::from_coeffs(&coeffs))
}
