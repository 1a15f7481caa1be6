//! Representations of quivers over prime fields `F_p`.
//!
//! A representation of dimension `d` is a tuple of matrices, one
//! `d_{t(a)} × d_{s(a)}` matrix per arrow. The whole space of them is indexed
//! by `0..p^N` (`N` = number of entries): entries are read in arrow order,
//! each matrix row-major, as base-`p` digits with the first entry most
//! significant. Orbits under `∏_i GL_{d_i}(F_p)` are found with a union-find
//! over generator images, and each orbit is represented by its smallest index.

mod endo;
mod matrix;
mod orbits;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::quiver::{DimVector, Quiver, QuiverError};

pub use endo::{
    automorphism_count, end_algebra, hom_space, idempotent_count_by_scan,
    is_absolutely_indecomposable, is_absolutely_indecomposable_by_scan, radical_dimension_by_scan,
    EndAlgebra,
};
pub use matrix::FpMatrix;
pub use orbits::{count_abs_indec_classes, orbit_decomposition, Orbit};

pub(crate) use matrix::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FqError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("{what} needs {required}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        required: String,
        cap: String,
    },
    #[error("representations over different fields (p = {0} and p = {1})")]
    PrimeMismatch(u32, u32),
    #[error("representations of different quivers")]
    QuiverMismatch,
    #[error("matrix for arrow `{arrow}` is {got:?}, expected {expected:?}")]
    Shape {
        arrow: String,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("expected {expected} matrices, got {got}")]
    MatrixCount { expected: usize, got: usize },
    #[error("{0} overflows")]
    Overflow(&'static str),
}

/// Size limits for the brute-force routines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest representation space enumerated.
    pub max_reps: u64,
    /// Optional limit on `|∏ GL_{d_i}(F_p)|`; orbits are found from group
    /// generators, so the group order itself does not bound the work.
    pub max_group_order: Option<u128>,
    /// Largest endomorphism algebra scanned element by element.
    pub max_end_size: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_reps: 10_000_000,
            max_group_order: None,
            max_end_size: 1 << 20,
        }
    }
}

/// A representation `ρ` of `quiver` over `F_p`, one matrix per arrow in arrow order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqRep {
    quiver: Arc<Quiver>,
    dim: DimVector,
    p: u32,
    mats: Vec<FpMatrix>,
}

impl FqRep {
    pub fn new(
        quiver: Arc<Quiver>,
        dim: DimVector,
        p: u32,
        mats: Vec<FpMatrix>,
    ) -> Result<Self, FqError> {
        if !is_prime(p) {
            return Err(FqError::NotPrime(p));
        }
        quiver.check_dim(&dim)?;
        if mats.len() != quiver.arrow_count() {
            return Err(FqError::MatrixCount {
                expected: quiver.arrow_count(),
                got: mats.len(),
            });
        }
        for (a, m) in quiver.arrows().iter().zip(&mats) {
            let expected = (dim[a.target] as usize, dim[a.source] as usize);
            if (m.rows(), m.cols()) != expected {
                return Err(FqError::Shape {
                    arrow: a.id.clone(),
                    expected,
                    got: (m.rows(), m.cols()),
                });
            }
            if m.prime() != p {
                return Err(FqError::PrimeMismatch(p, m.prime()));
            }
        }
        Ok(FqRep {
            quiver,
            dim,
            p,
            mats,
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn matrices(&self) -> &[FpMatrix] {
        &self.mats
    }

    pub fn matrix(&self, arrow_id: &str) -> Option<&FpMatrix> {
        self.quiver.arrow_by_id(arrow_id).map(|a| &self.mats[a])
    }
}

/// The set of all `d`-dimensional representations over `F_p`, indexed by
/// `0..size`.
#[derive(Clone, Debug)]
pub struct RepSpace {
    quiver: Arc<Quiver>,
    dim: DimVector,
    p: u32,
    shapes: Vec<(usize, usize)>,
    entries: usize,
    size: u64,
}

impl RepSpace {
    pub fn new(quiver: &Quiver, dim: &DimVector, p: u32, caps: &Caps) -> Result<Self, FqError> {
        if !is_prime(p) {
            return Err(FqError::NotPrime(p));
        }
        quiver.check_dim(dim)?;
        let shapes: Vec<(usize, usize)> = quiver
            .arrows()
            .iter()
            .map(|a| (dim[a.target] as usize, dim[a.source] as usize))
            .collect();
        let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let too_big = || FqError::CapExceeded {
            what: "enumeration",
            required: format!("{p}^{entries} representations"),
            cap: caps.max_reps.to_string(),
        };
        let size = u32::try_from(entries)
            .ok()
            .and_then(|e| (p as u64).checked_pow(e))
            .ok_or_else(too_big)?;
        if size > caps.max_reps {
            return Err(too_big());
        }
        Ok(RepSpace {
            quiver: Arc::new(quiver.clone()),
            dim: dim.clone(),
            p,
            shapes,
            entries,
            size,
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Number of matrix entries `N = Σ_a d_{s(a)} d_{t(a)}`.
    pub fn entries(&self) -> usize {
        self.entries
    }

    /// `p^N`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub(crate) fn digits_into(&self, mut index: u64, digits: &mut [u32]) {
        let p = self.p as u64;
        for d in digits.iter_mut().rev() {
            *d = (index % p) as u32;
            index /= p;
        }
    }

    pub(crate) fn index_of(&self, digits: &[u32]) -> u64 {
        digits
            .iter()
            .fold(0u64, |acc, &d| acc * self.p as u64 + d as u64)
    }

    pub fn decode(&self, index: u64) -> FqRep {
        assert!(index < self.size, "representation index out of range");
        let mut digits = vec![0; self.entries];
        self.digits_into(index, &mut digits);
        self.rep_from_digits(&digits)
    }

    pub(crate) fn rep_from_digits(&self, digits: &[u32]) -> FqRep {
        let mut offset = 0;
        let mats = self
            .shapes
            .iter()
            .map(|&(r, c)| {
                let m = FpMatrix::from_data(r, c, self.p, digits[offset..offset + r * c].to_vec());
                offset += r * c;
                m
            })
            .collect();
        FqRep {
            quiver: self.quiver.clone(),
            dim: self.dim.clone(),
            p: self.p,
            mats,
        }
    }

    pub fn encode(&self, rep: &FqRep) -> u64 {
        let digits: Vec<u32> = rep
            .mats
            .iter()
            .flat_map(|m| m.data().iter().copied())
            .collect();
        self.index_of(&digits)
    }

    pub fn iter(&self) -> impl Iterator<Item = FqRep> + '_ {
        (0..self.size).map(move |i| self.decode(i))
    }
}

/// Every `d`-dimensional representation over `F_p` once, in index order.
pub fn enumerate_reps(
    q: &Quiver,
    d: &DimVector,
    p: u32,
    caps: &Caps,
) -> Result<impl Iterator<Item = FqRep>, FqError> {
    let space = RepSpace::new(q, d, p, caps)?;
    Ok((0..space.size()).map(move |i| space.decode(i)))
}

/// `|∏_i GL_{d_i}(F_p)| = ∏_i ∏_{j<d_i} (p^{d_i} − p^j)`.
pub fn group_order(d: &DimVector, p: u32) -> Result<u128, FqError> {
    let p = p as u128;
    let mut order: u128 = 1;
    for &n in d.iter() {
        let pn = p.checked_pow(n).ok_or(FqError::Overflow("group order"))?;
        for j in 0..n {
            let factor = pn - p.pow(j);
            order = order
                .checked_mul(factor)
                .ok_or(FqError::Overflow("group order"))?;
        }
    }
    Ok(order)
}

/// Orbit statistics of `∏ GL_{d_i}(F_p)` acting on `d`-dimensional representations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub total_reps: u64,
    pub abs_indec_orbit_count: u64,
    pub orbit_count_all: u64,
    pub group_order: u128,
}
