//! Laurent polynomials in `t` with rational coefficients.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// `Σ_j c_j t^j`, stored densely from the lowest exponent. Both ends are
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TatePoly {
    low: i64,
    coeffs: Vec<Rational>,
}

impl TatePoly {
    pub fn zero() -> Self {
        TatePoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        TatePoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        TatePoly::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        TatePoly::from_dense(exp, vec![c])
    }

    /// `t^exp`.
    pub fn t_pow(exp: i64) -> Self {
        TatePoly::monomial(Rational::one(), exp)
    }

    pub fn from_dense(low: i64, coeffs: Vec<Rational>) -> Self {
        let mut p = TatePoly { low, coeffs };
        p.trim();
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let terms: Vec<(i64, Rational)> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|(e, _)| *e).min() else {
            return TatePoly::zero();
        };
        let high = terms.iter().map(|(e, _)| *e).max().unwrap_or(low);
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        TatePoly::from_dense(low, coeffs)
    }

    /// Integer coefficients, e.g. `from_ints(&[(-3, 1), (-1, 1)])`.
    pub fn from_ints(terms: &[(i64, i64)]) -> Self {
        TatePoly::from_terms(
            terms
                .iter()
                .map(|&(e, c)| (e, Rational::from_integer(c.into()))),
        )
    }

    fn trim(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.low = 0;
            }
            Some(k) => {
                let end = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(k);
                self.coeffs.truncate(end + 1);
                self.coeffs.drain(..k);
                self.low += k as i64;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coefficient(&self, exp: i64) -> Rational {
        let k = exp - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            Rational::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn dense(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn add(&self, other: &TatePoly) -> TatePoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + i] += c;
        }
        TatePoly::from_dense(low, coeffs)
    }

    pub fn neg(&self) -> TatePoly {
        TatePoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &TatePoly) -> TatePoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> TatePoly {
        if c.is_zero() {
            return TatePoly::zero();
        }
        TatePoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &TatePoly) -> TatePoly {
        if self.is_zero() || other.is_zero() {
            return TatePoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TatePoly::from_dense(self.low + other.low, coeffs)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> TatePoly {
        if self.is_zero() {
            return TatePoly::zero();
        }
        TatePoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> TatePoly {
        let mut acc = TatePoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `t ↦ −(−t)^k`, i.e. `t^j ↦ (−1)^{j(k+1)} t^{jk}`.
    pub fn psi(&self, k: u32) -> TatePoly {
        assert!(k >= 1, "Adams operations start at k = 1");
        let k = k as i64;
        TatePoly::from_terms(self.terms().map(|(j, c)| {
            let negate = (j * (k + 1)).rem_euclid(2) == 1;
            (j * k, if negate { -c } else { c.clone() })
        }))
    }

    /// `t ↦ t^{-1}`.
    pub fn invert_variable(&self) -> TatePoly {
        TatePoly::from_terms(self.terms().map(|(j, c)| (-j, c.clone())))
    }

    /// Every exponent has the given parity.
    pub fn has_parity(&self, odd: bool) -> bool {
        self.terms().all(|(j, _)| (j.rem_euclid(2) == 1) == odd)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Quotient and remainder in `Q[t]`; both operands must have `low ≥ 0`.
    pub(crate) fn div_rem(&self, divisor: &TatePoly) -> (TatePoly, TatePoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let a = self.to_ordinary();
        let b = divisor.to_ordinary();
        if a.len() < b.len() {
            return (TatePoly::zero(), self.clone());
        }
        let mut rem = a;
        let lead_inv = b.last().expect("nonzero divisor").recip();
        let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + b.len() - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
            quot[i] = c;
        }
        (TatePoly::from_dense(0, quot), TatePoly::from_dense(0, rem))
    }

    /// Coefficients of `t^0, t^1, …` for a polynomial with `low ≥ 0`.
    fn to_ordinary(&self) -> Vec<Rational> {
        assert!(
            self.is_zero() || self.low >= 0,
            "not an ordinary polynomial"
        );
        let mut v = vec![Rational::zero(); self.low.max(0) as usize];
        v.extend(self.coeffs.iter().cloned());
        v
    }

    /// Monic gcd in `Q[t]` of two polynomials with `low ≥ 0`.
    pub(crate) fn gcd(&self, other: &TatePoly) -> TatePoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().recip();
        a.scale(&lead)
    }
}

impl fmt::Display for TatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.terms() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{mag} t")?,
                (_, true) => write!(f, "t^{j}")?,
                (_, false) => write!(f, "{mag} t^{j}")?,
            }
        }
        Ok(())
    }
}
