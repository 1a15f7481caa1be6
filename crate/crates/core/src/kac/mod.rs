//! Kac polynomials `a_{Q,d}(q)`.
//!
//! The normative route counts absolutely indecomposable representations
//! over the smallest primes and interpolates, with one extra prime as a
//! stability check. A second backend evaluates Hua's generating function;
//! both implement [`KacSource`].

mod cache;
mod hua;
mod interp;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charser::CharError;
use crate::fqrep::{count_abs_indec_classes, Caps, FqError};
use crate::quiver::{DimVector, Quiver, QuiverError};

pub use cache::{CacheEntry, KacCache};
pub use hua::{hua_kac_polynomials, HuaKac};
pub use interp::{interpolate, smallest_primes};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KacError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Oracle(#[from] FqError),
    #[error(transparent)]
    Character(#[from] CharError),
    #[error("Kac polynomials are only defined for nonzero dimension vectors")]
    ZeroDimension,
    #[error(
        "interpolation is unstable: {base} from {base_primes:?}, {extended} with one more prime"
    )]
    Unstable {
        base: IntPoly,
        extended: IntPoly,
        base_primes: Vec<u32>,
    },
    #[error("interpolated coefficient {0} is not an integer")]
    NonInteger(String),
    #[error("Kac polynomial {0} has a negative coefficient")]
    Negative(IntPoly),
    #[error("Kac polynomial coefficient {0} does not fit in 64 bits")]
    Overflow(String),
    #[error("cache: {0}")]
    Cache(String),
}

/// A polynomial in `q` with integer coefficients; zero coefficients are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly(BTreeMap<u32, i64>);

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly(BTreeMap::new())
    }

    /// `coeffs[i]` is the coefficient of `q^i`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        IntPoly(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i as u32, c))
                .collect(),
        )
    }

    pub fn coefficient(&self, i: u32) -> i64 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.0.iter().map(|(&i, &c)| (i, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, x: i64) -> i128 {
        self.terms()
            .map(|(i, c)| c as i128 * (x as i128).pow(i))
            .sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.values().all(|&c| c >= 0)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&i, &c)) in self.0.iter().rev().enumerate() {
            if k == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            let mag = c.unsigned_abs();
            match (i, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => f.write_str("q")?,
                (1, _) => write!(f, "{mag} q")?,
                (_, 1) => write!(f, "q^{i}")?,
                _ => write!(f, "{mag} q^{i}")?,
            }
        }
        Ok(())
    }
}

/// `max(0, 1 − χ(d, d))`.
pub fn degree_bound(q: &Quiver, d: &DimVector) -> Result<u32, KacError> {
    let chi = q.euler_form(d, d)?;
    Ok((1 - chi).max(0) as u32)
}

/// Something that produces Kac polynomials.
pub trait KacSource: Send + Sync {
    fn kac_polynomial(&self, q: &Quiver, d: &DimVector) -> Result<IntPoly, KacError>;

    fn name(&self) -> &'static str;
}

/// Brute-force counts at the `degree_bound + 1` smallest primes,
/// interpolated, then confirmed at the next prime.
pub struct OracleKac {
    caps: Caps,
    cache: Option<Mutex<KacCache>>,
}

impl Default for OracleKac {
    fn default() -> Self {
        OracleKac::new(Caps::default())
    }
}

impl OracleKac {
    pub fn new(caps: Caps) -> Self {
        OracleKac { caps, cache: None }
    }

    pub fn with_cache(caps: Caps, cache: KacCache) -> Self {
        OracleKac {
            caps,
            cache: Some(Mutex::new(cache)),
        }
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    /// Runs `f` on the cache, if there is one.
    pub fn with_cache_ref<R>(&self, f: impl FnOnce(&KacCache) -> R) -> Option<R> {
        self.cache
            .as_ref()
            .map(|c| f(&c.lock().expect("cache lock poisoned")))
    }

    /// Interpolation without touching the cache; returns the primes used.
    pub fn compute(&self, q: &Quiver, d: &DimVector) -> Result<(IntPoly, Vec<u32>), KacError> {
        check_input(q, d)?;
        let bound = degree_bound(q, d)? as usize;
        let primes = smallest_primes(bound + 2);
        let counts: Vec<u64> = primes
            .par_iter()
            .map(|&p| count_abs_indec_classes(q, d, p, &self.caps).map(|r| r.abs_indec_orbit_count))
            .collect::<Result<_, _>>()?;
        let points: Vec<(i64, i64)> = primes
            .iter()
            .zip(&counts)
            .map(|(&p, &c)| (p as i64, c as i64))
            .collect();
        let base = interpolate(&points[..bound + 1])?;
        let extended = interpolate(&points)?;
        if base != extended {
            return Err(KacError::Unstable {
                base,
                extended,
                base_primes: primes[..bound + 1].to_vec(),
            });
        }
        if !base.is_nonnegative() {
            return Err(KacError::Negative(base));
        }
        Ok((base, primes))
    }
}

fn check_input(q: &Quiver, d: &DimVector) -> Result<(), KacError> {
    q.check_dim(d)?;
    if d.is_zero() {
        return Err(KacError::ZeroDimension);
    }
    Ok(())
}

impl KacSource for OracleKac {
    fn kac_polynomial(&self, q: &Quiver, d: &DimVector) -> Result<IntPoly, KacError> {
        check_input(q, d)?;
        let hash = q.canonical_hash();
        if let Some(hit) = self
            .with_cache_ref(|c| c.get(&hash, d).map(|e| e.poly.clone()))
            .flatten()
        {
            return Ok(hit);
        }
        let (poly, primes) = self.compute(q, d)?;
        if let Some(cache) = &self.cache {
            let mut cache = cache.lock().expect("cache lock poisoned");
            cache.insert(
                &hash,
                CacheEntry {
                    d: d.0.clone(),
                    poly: poly.clone(),
                    primes,
                },
            );
            cache.save()?;
        }
        Ok(poly)
    }

    fn name(&self) -> &'static str {
        "oracle"
    }
}

/// `a_{Q,d}` from the oracle with default caps and no cache.
pub fn kac_polynomial(q: &Quiver, d: &DimVector) -> Result<IntPoly, KacError> {
    OracleKac::default().kac_polynomial(q, d)
}

/// Coefficient of `q^i` in `a_{Q,d}`; zero outside the support.
pub fn kac_coefficient(
    source: &dyn KacSource,
    q: &Quiver,
    d: &DimVector,
    i: u32,
) -> Result<i64, KacError> {
    Ok(source.kac_polynomial(q, d)?.coefficient(i))
}
