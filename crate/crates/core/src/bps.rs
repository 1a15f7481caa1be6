//! BPS invariants of `μ`-deformed tripled quivers and the series built from them.
//!
//! Character conventions, shared with [`charser`](crate::charser):
//!
//! | object              | character         |
//! |---------------------|-------------------|
//! | `L^{k/2}`           | `t^k`             |
//! | shift `V[k]`        | `t^{-k} · χ(V)`   |
//! | dual `V^∨`          | `t ↦ t^{-1}`      |
//! | `H(pt/C^*)` factor  | `1/(1 − t²)`      |
//! | `H_c(pt/C^*)_vir`   | `t^{-1}/(1 − t^{-2})` |
//!
//! Deforming by `μ` flips the parity of the BPS invariant exactly on the
//! dimension vectors with `μ·d ≠ 0`; everything here is driven by a
//! [`KacSource`] and that vanishing pattern.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::charser::{CharError, GradedSeries, TatePoly, TateRational};
use crate::kac::{IntPoly, KacError, KacSource};
use crate::quiver::{DimVector, Quiver, QuiverError};
use crate::{pairing, Rational};

/// Horizon `Σ d'_i ≤ 12` for the genericity check of `μ`.
pub const DEFAULT_GENERICITY_HORIZON: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BpsError {
    #[error(transparent)]
    Kac(#[from] KacError),
    #[error(transparent)]
    Character(#[from] CharError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("BPS invariants are only defined for nonzero dimension vectors")]
    ZeroDimension,
    #[error("μ has {got} entries but the quiver has {expected} vertices")]
    MuLength { expected: usize, got: usize },
    #[error("dimension vector {0} is divisible")]
    Divisible(DimVector),
    #[error("μ·d ≠ 0 for d = {0}")]
    NotBalanced(DimVector),
    #[error("μ is not generic for {d}: μ·{witness} = 0 but {witness} is not a multiple of {d} (horizon {horizon})")]
    NotGeneric {
        d: DimVector,
        witness: DimVector,
        horizon: u32,
    },
    #[error("the deformation power must be 1 or 2, got {0}")]
    UnsupportedPower(u32),
}

/// A finite multiset of half-integer Tate twists `L^{k/2}`, keyed by `k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HodgeMultiset(BTreeMap<i64, u64>);

impl HodgeMultiset {
    pub fn new() -> Self {
        HodgeMultiset::default()
    }

    /// Adds `mult` copies of `L^{exp_times_2 / 2}`.
    pub fn insert(&mut self, exp_times_2: i64, mult: u64) {
        if mult > 0 {
            *self.0.entry(exp_times_2).or_default() += mult;
        }
    }

    /// `(2·exponent, multiplicity)` pairs, exponents increasing.
    pub fn entries(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(&k, &m)| (k, m))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total multiplicity.
    pub fn dimension(&self) -> u64 {
        self.0.values().sum()
    }

    /// `Σ mult · t^k`.
    pub fn character(&self) -> TatePoly {
        TatePoly::from_terms(
            self.entries()
                .map(|(k, m)| (k, Rational::from_integer(m.into()))),
        )
    }

    /// Reads off a polynomial with non-negative integer coefficients.
    pub fn from_character(p: &TatePoly) -> Option<HodgeMultiset> {
        let mut out = HodgeMultiset::new();
        for (k, c) in p.terms() {
            if !c.is_integer() || c < &Rational::zero() {
                return None;
            }
            out.insert(k, c.to_integer().try_into().ok()?);
        }
        Some(out)
    }
}

impl fmt::Display for HodgeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, (k, m)) in self.entries().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            if m > 1 {
                write!(f, "{m} ")?;
            }
            if k % 2 == 0 {
                write!(f, "L^{}", k / 2)?;
            } else {
                write!(f, "L^{k}/2")?;
            }
        }
        f.write_str("}")
    }
}

impl Serialize for HodgeMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            #[serde(rename = "L_exp_times_2")]
            exp_times_2: i64,
            mult: u64,
        }
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (exp_times_2, mult) in self.entries() {
            seq.serialize_element(&Entry { exp_times_2, mult })?;
        }
        seq.end()
    }
}

/// A quiver, a deformation parameter `μ ∈ Q^{Q_0}` and the power `n` of the
/// loop term in `W̃ + (1/n) μ ω^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationData {
    quiver: Quiver,
    mu: Vec<Rational>,
    power: u32,
}

impl DeformationData {
    pub fn new(quiver: Quiver, mu: Vec<Rational>, power: u32) -> Result<Self, BpsError> {
        check_mu(&quiver, &mu)?;
        if power == 0 {
            return Err(BpsError::UnsupportedPower(0));
        }
        Ok(DeformationData { quiver, mu, power })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn mu(&self) -> &[Rational] {
        &self.mu
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    /// `μ·d = 0`.
    pub fn is_balanced(&self, d: &DimVector) -> bool {
        pairing(&self.mu, d).is_zero()
    }
}

fn check_mu(q: &Quiver, mu: &[Rational]) -> Result<(), BpsError> {
    if mu.len() != q.vertex_count() {
        return Err(BpsError::MuLength {
            expected: q.vertex_count(),
            got: mu.len(),
        });
    }
    Ok(())
}

fn check_dim(q: &Quiver, d: &DimVector) -> Result<(), BpsError> {
    q.check_dim(d)?;
    if d.is_zero() {
        return Err(BpsError::ZeroDimension);
    }
    Ok(())
}

/// `Σ_i c_i t^{scale·i + offset}`.
fn kac_to_t(a: &IntPoly, scale: i64, offset: i64) -> TatePoly {
    TatePoly::from_terms(
        a.terms()
            .map(|(i, c)| (scale * i as i64 + offset, Rational::from_integer(c.into()))),
    )
}

/// `H_c(pt/C^*)_vir = ⊕_{i≥0} L^{-1/2-i}`, i.e. `t^{-1}/(1 − t^{-2})`.
pub fn compact_vir_factor() -> TateRational {
    TateRational::new(
        TatePoly::t_pow(-1),
        TatePoly::from_ints(&[(0, 1), (-2, -1)]),
    )
    .expect("nonzero denominator")
}

/// `H(pt/C^*)` shifted by `[-1]`, i.e. `t/(1 − t²)`.
pub fn coha_generator_factor() -> TateRational {
    TateRational::geometric(2).mul_poly(&TatePoly::t_pow(1))
}

/// Refined BPS invariant of `(Q̃, W̃^μ)` at `d`: `Σ a_i t^{-2i}` if
/// `μ·d ≠ 0`, and `t^{-1} Σ a_i t^{-2i}` if `μ·d = 0`.
pub fn dt_refined(
    kac: &dyn KacSource,
    q: &Quiver,
    mu: &[Rational],
    d: &DimVector,
) -> Result<TatePoly, BpsError> {
    check_mu(q, mu)?;
    check_dim(q, d)?;
    let a = kac.kac_polynomial(q, d)?;
    let offset = if pairing(mu, d).is_zero() { -1 } else { 0 };
    Ok(kac_to_t(&a, -2, offset))
}

/// The Hodge-theoretic BPS invariant: `L^{-i}` (or `L^{-i-1/2}` when
/// `μ·d = 0`) with multiplicity `a_{Q,d,i}`.
pub fn dt_hodge(
    kac: &dyn KacSource,
    q: &Quiver,
    mu: &[Rational],
    d: &DimVector,
) -> Result<HodgeMultiset, BpsError> {
    check_mu(q, mu)?;
    check_dim(q, d)?;
    let a = kac.kac_polynomial(q, d)?;
    let offset = if pairing(mu, d).is_zero() { -1 } else { 0 };
    let mut out = HodgeMultiset::new();
    for (i, c) in a.terms() {
        let mult = u64::try_from(c).map_err(|_| KacError::Negative(a.clone()))?;
        out.insert(-2 * i as i64 + offset, mult);
    }
    Ok(out)
}

/// Refined BPS invariant of `W̃ + (1/n) μ ω^n` for `n ∈ {1, 2}`:
/// the undeformed invariant times `L^{1/2} ⊗ H(A^1, φ_{(μ·d) x^n} IC)`.
/// That factor has character `t^{-1}` when `μ·d = 0`, `1` when `n = 2`,
/// and vanishes when `n = 1`. Higher `n` give non-Tate factors.
pub fn dt_refined_power(
    kac: &dyn KacSource,
    data: &DeformationData,
    d: &DimVector,
) -> Result<TatePoly, BpsError> {
    let q = data.quiver();
    check_dim(q, d)?;
    if !matches!(data.power(), 1 | 2) {
        return Err(BpsError::UnsupportedPower(data.power()));
    }
    let vanishing_cycles = if data.is_balanced(d) {
        TatePoly::t_pow(-1)
    } else if data.power() == 2 {
        TatePoly::one()
    } else {
        TatePoly::zero()
    };
    let undeformed = kac_to_t(&kac.kac_polynomial(q, d)?, -2, -1);
    Ok(undeformed.mul(&TatePoly::t_pow(1)).mul(&vanishing_cycles))
}

/// `Σ_d t^{χ(d,d)} ∏_i ∏_{k=1}^{d_i} (1 − t^{2k})^{-1} x^d`, the character of
/// the free cohomological Hall algebra of `Q`.
pub fn free_coha_series(q: &Quiver, cutoff: u32) -> GradedSeries {
    let n = q.vertex_count();
    let mut out = GradedSeries::one(n, cutoff);
    for d in DimVector::all_nonzero_up_to(n, cutoff) {
        let chi = q
            .euler_form(&d, &d)
            .expect("dimension vector matches the quiver");
        let mut c = TateRational::t_pow(chi);
        for &di in d.iter() {
            for k in 1..=di as i64 {
                c = c.mul(&TateRational::geometric(2 * k));
            }
        }
        out.set(d, c);
    }
    out
}

/// Kac polynomials of all nonzero `d` with `Σ d_i ≤ cutoff` and `keep(d)`.
fn kac_table(
    kac: &dyn KacSource,
    q: &Quiver,
    cutoff: u32,
    keep: impl Fn(&DimVector) -> bool,
) -> Result<Vec<(DimVector, IntPoly)>, BpsError> {
    let dims: Vec<DimVector> = DimVector::all_nonzero_up_to(q.vertex_count(), cutoff)
        .into_iter()
        .filter(keep)
        .collect();
    dims.into_par_iter()
        .map(|d| {
            kac.kac_polynomial(q, &d)
                .map(|a| (d, a))
                .map_err(BpsError::from)
        })
        .collect()
}

/// PBW character `Exp(Σ_d dt_refined(d) · t/(1 − t²) x^d)` of the
/// cohomological Hall algebra of `(Q̃, W̃^μ)`.
pub fn coha_pbw_series(
    kac: &dyn KacSource,
    q: &Quiver,
    mu: &[Rational],
    cutoff: u32,
) -> Result<GradedSeries, BpsError> {
    check_mu(q, mu)?;
    let factor = coha_generator_factor();
    let terms = kac_table(kac, q, cutoff, |_| true)?
        .into_iter()
        .map(|(d, a)| {
            let offset = if pairing(mu, &d).is_zero() { -1 } else { 0 };
            let c = factor.mul_poly(&kac_to_t(&a, -2, offset));
            (d, c)
        });
    let generators = GradedSeries::from_terms(q.vertex_count(), cutoff, terms);
    Ok(generators.super_exp()?)
}

/// Character of `⊕_d H_c(𝔐_d(Π_{Q,μ})) ⊗ L^{χ(d,d)} x^d`:
/// `Exp(Σ_{μ·d=0} (Σ_i a_{d,i} t^{2i+1}) · t^{-1}/(1 − t^{-2}) x^d)`.
pub fn stack_series_deformed(
    kac: &dyn KacSource,
    q: &Quiver,
    mu: &[Rational],
    cutoff: u32,
) -> Result<GradedSeries, BpsError> {
    check_mu(q, mu)?;
    let vir = compact_vir_factor();
    let terms = kac_table(kac, q, cutoff, |d| pairing(mu, d).is_zero())?
        .into_iter()
        .map(|(d, a)| (d, vir.mul_poly(&kac_to_t(&a, 2, 1))));
    let generators = GradedSeries::from_terms(q.vertex_count(), cutoff, terms);
    Ok(generators.super_exp()?)
}

/// Checks that every `d'` with `Σ d'_i ≤ horizon` and `μ·d' = 0` is a
/// multiple of `d`.
pub fn check_genericity(mu: &[Rational], d: &DimVector, horizon: u32) -> Result<(), BpsError> {
    for e in DimVector::all_nonzero_up_to(d.len(), horizon) {
        if pairing(mu, &e).is_zero() && e.multiple_of(d).is_none() {
            return Err(BpsError::NotGeneric {
                d: d.clone(),
                witness: e,
                horizon,
            });
        }
    }
    Ok(())
}

/// `H_c(M_d(Π_{Q,μ}))` for indivisible `d` and generic `μ` with `μ·d = 0`:
/// `L^{1+i−χ(d,d)}` with multiplicity `a_{Q,d,i}`. Genericity is checked up
/// to [`DEFAULT_GENERICITY_HORIZON`].
pub fn moduli_cohomology_indivisible(
    kac: &dyn KacSource,
    q: &Quiver,
    mu: &[Rational],
    d: &DimVector,
) -> Result<HodgeMultiset, BpsError> {
    moduli_cohomology_indivisible_with_horizon(kac, q, mu, d, DEFAULT_GENERICITY_HORIZON)
}

pub fn moduli_cohomology_indivisible_with_horizon(
    kac: &dyn KacSource,
    q: &Quiver,
    mu: &[Rational],
    d: &DimVector,
    horizon: u32,
) -> Result<HodgeMultiset, BpsError> {
    check_mu(q, mu)?;
    check_dim(q, d)?;
    if !d.is_indivisible() {
        return Err(BpsError::Divisible(d.clone()));
    }
    if !pairing(mu, d).is_zero() {
        return Err(BpsError::NotBalanced(d.clone()));
    }
    check_genericity(mu, d, horizon)?;
    let chi = q.euler_form(d, d)?;
    let a = kac.kac_polynomial(q, d)?;
    let mut out = HodgeMultiset::new();
    for (i, c) in a.terms() {
        let mult = u64::try_from(c).map_err(|_| KacError::Negative(a.clone()))?;
        out.insert(2 * (1 + i as i64 - chi), mult);
    }
    Ok(out)
}

/// Recovers the generating data from a total series: `Log(F)` with every
/// coefficient divided by `vir_factor`.
pub fn integrality_invert(
    f: &GradedSeries,
    vir_factor: &TateRational,
) -> Result<GradedSeries, BpsError> {
    let log = f.super_log()?;
    let inv = vir_factor.inverse()?;
    Ok(log.map(|c| c.mul(&inv)))
}
