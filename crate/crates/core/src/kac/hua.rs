//! Kac polynomials from Hua's generating function.
//!
//! `Σ_π ∏_a q^{⟨π_s(a), π_t(a)⟩} / ∏_i q^{⟨π_i, π_i⟩} b_{π_i}(q^{-1}) x^{|π|}
//!     = Exp(Σ_{d≠0} a_d(q) x^d / (q − 1))`,
//! summed over tuples of partitions, where `⟨λ, μ⟩ = Σ_k λ'_k μ'_k` and
//! `b_λ(x) = ∏_k (x; x)_{m_k(λ)}`. With `q = t²` the signed Adams
//! operations of [`GradedSeries`] act as `q ↦ q^k`, so the plethystic
//! logarithm is `super_log`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::ToPrimitive;

use super::{IntPoly, KacError, KacSource};
use crate::charser::{GradedSeries, TatePoly, TateRational};
use crate::quiver::{DimVector, Quiver};

/// Partitions of `n`, parts in non-increasing order.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn conjugate(lambda: &[u32]) -> Vec<u32> {
    let width = lambda.first().copied().unwrap_or(0);
    (1..=width)
        .map(|k| lambda.iter().filter(|&&p| p >= k).count() as u32)
        .collect()
}

fn pairing(a: &[u32], b: &[u32]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum()
}

/// `(x; x)_n = ∏_{k=1}^n (1 − x^k)`, as a polynomial in `x`.
fn q_pochhammer(n: u32) -> TatePoly {
    (1..=n as i64).fold(TatePoly::one(), |acc, k| {
        acc.mul(&TatePoly::from_ints(&[(0, 1), (k, -1)]))
    })
}

/// `(x; x)_{|λ|} / b_λ(x)`, a polynomial in `x`.
fn multinomial(lambda: &[u32]) -> TatePoly {
    let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
    for &p in lambda {
        *mult.entry(p).or_default() += 1;
    }
    let b = mult
        .values()
        .fold(TatePoly::one(), |acc, &m| acc.mul(&q_pochhammer(m)));
    let (quot, rem) = q_pochhammer(lambda.iter().sum()).div_rem(&b);
    debug_assert!(rem.is_zero());
    quot
}

/// Substitutes `x = t^{-2}`.
fn at_inverse_q(p: &TatePoly) -> TatePoly {
    TatePoly::from_terms(p.terms().map(|(j, c)| (-2 * j, c.clone())))
}

struct VertexData {
    conj: Vec<u32>,
    multinomial: TatePoly,
}

/// `a_{Q,d}` for every nonzero `d` with `Σ d_i ≤ cutoff`.
pub fn hua_kac_polynomials(
    q: &Quiver,
    cutoff: u32,
) -> Result<BTreeMap<DimVector, IntPoly>, KacError> {
    let n = q.vertex_count();
    let per_size: Vec<Vec<VertexData>> = (0..=cutoff)
        .map(|m| {
            partitions(m)
                .into_iter()
                .map(|l| VertexData {
                    conj: conjugate(&l),
                    multinomial: multinomial(&l),
                })
                .collect()
        })
        .collect();
    let mut lhs = GradedSeries::one(n, cutoff);
    for d in DimVector::all_nonzero_up_to(n, cutoff) {
        let mut num = TatePoly::zero();
        let mut choice = vec![0usize; n];
        loop {
            let parts: Vec<&VertexData> = (0..n)
                .map(|i| &per_size[d[i] as usize][choice[i]])
                .collect();
            let mut exponent = 0i64;
            for arrow in q.arrows() {
                exponent += pairing(&parts[arrow.source].conj, &parts[arrow.target].conj);
            }
            for p in &parts {
                exponent -= pairing(&p.conj, &p.conj);
            }
            // q^E = x^{-E} with x = q^{-1}
            let term = parts
                .iter()
                .fold(TatePoly::t_pow(-exponent), |acc, p| acc.mul(&p.multinomial));
            num = num.add(&term);
            // next tuple, odometer style
            let mut i = 0;
            while i < n {
                choice[i] += 1;
                if choice[i] < per_size[d[i] as usize].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        let den = d
            .iter()
            .fold(TatePoly::one(), |acc, &m| acc.mul(&q_pochhammer(m)));
        lhs.set(
            d,
            TateRational::new(at_inverse_q(&num), at_inverse_q(&den))?,
        );
    }
    let log = lhs.super_log()?;
    let q_minus_one = TatePoly::from_ints(&[(0, -1), (2, 1)]);
    let mut out = BTreeMap::new();
    for d in DimVector::all_nonzero_up_to(n, cutoff) {
        let value = log.coefficient(&d).mul_poly(&q_minus_one);
        out.insert(d, to_int_poly_in_q(&value)?);
    }
    Ok(out)
}

/// Reads `Σ c_j t^{2j}` as `Σ c_j q^j`, checking integrality and sign.
fn to_int_poly_in_q(value: &TateRational) -> Result<IntPoly, KacError> {
    let poly = value
        .as_poly()
        .ok_or_else(|| KacError::NonInteger(value.to_string()))?;
    if !poly.is_zero() && (poly.low() < 0 || !poly.has_parity(false)) {
        return Err(KacError::NonInteger(value.to_string()));
    }
    let mut coeffs = vec![0i64; (poly.high().max(0) / 2 + 1) as usize];
    for (j, c) in poly.terms() {
        if !c.is_integer() {
            return Err(KacError::NonInteger(c.to_string()));
        }
        coeffs[(j / 2) as usize] = c
            .to_integer()
            .to_i64()
            .ok_or_else(|| KacError::Overflow(c.to_string()))?;
    }
    let out = IntPoly::from_coeffs(&coeffs);
    if !out.is_nonnegative() {
        return Err(KacError::Negative(out));
    }
    Ok(out)
}

/// Cutoff reached and the polynomials computed up to it.
type Memo = (u32, BTreeMap<DimVector, IntPoly>);

/// [`KacSource`] backed by Hua's formula, memoised per quiver.
#[derive(Default)]
pub struct HuaKac {
    memo: Mutex<HashMap<String, Memo>>,
}

impl HuaKac {
    pub fn new() -> Self {
        HuaKac::default()
    }

    /// Every `a_{Q,d}` with `Σ d_i ≤ cutoff`, reusing earlier work.
    pub fn all_up_to(
        &self,
        q: &Quiver,
        cutoff: u32,
    ) -> Result<BTreeMap<DimVector, IntPoly>, KacError> {
        let hash = q.canonical_hash();
        // held across the computation so concurrent callers wait for one result
        let mut memo = self.memo.lock().expect("memo lock poisoned");
        if let Some((c, table)) = memo.get(&hash) {
            if *c >= cutoff {
                return Ok(table
                    .iter()
                    .filter(|(d, _)| d.total() <= cutoff)
                    .map(|(d, p)| (d.clone(), p.clone()))
                    .collect());
            }
        }
        let table = hua_kac_polynomials(q, cutoff)?;
        memo.insert(hash, (cutoff, table.clone()));
        Ok(table)
    }
}

impl KacSource for HuaKac {
    fn kac_polynomial(&self, q: &Quiver, d: &DimVector) -> Result<IntPoly, KacError> {
        super::check_input(q, d)?;
        let table = self.all_up_to(q, d.total())?;
        Ok(table.get(d).cloned().unwrap_or_default())
    }

    fn name(&self) -> &'static str {
        "hua"
    }
}
