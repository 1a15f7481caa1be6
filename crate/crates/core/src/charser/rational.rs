//! Rational functions in `t`.

use std::fmt;

use num_traits::{One, Zero};

use super::{CharError, TatePoly};
use crate::Rational;

/// `num / den` in lowest terms: `den` is an ordinary polynomial with
/// constant term 1 and no common factor with `num` in `Q[t, t^{-1}]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TateRational {
    num: TatePoly,
    den: TatePoly,
}

impl TateRational {
    pub fn zero() -> Self {
        TateRational {
            num: TatePoly::zero(),
            den: TatePoly::one(),
        }
    }

    pub fn one() -> Self {
        TateRational::from_poly(TatePoly::one())
    }

    pub fn from_poly(p: TatePoly) -> Self {
        TateRational {
            num: p,
            den: TatePoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        TateRational::from_poly(TatePoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        TateRational::constant(Rational::from_integer(c.into()))
    }

    /// `t^k`.
    pub fn t_pow(k: i64) -> Self {
        TateRational::from_poly(TatePoly::t_pow(k))
    }

    pub fn new(num: TatePoly, den: TatePoly) -> Result<Self, CharError> {
        if den.is_zero() {
            return Err(CharError::DivisionByZero);
        }
        Ok(TateRational::reduce(num, den))
    }

    /// `1 / (1 − t^k)`.
    pub fn geometric(k: i64) -> Self {
        let den = TatePoly::one().sub(&TatePoly::t_pow(k));
        TateRational::new(TatePoly::one(), den).expect("1 − t^k is nonzero for k ≠ 0")
    }

    fn reduce(num: TatePoly, den: TatePoly) -> Self {
        if num.is_zero() {
            return TateRational::zero();
        }
        let s = den.low();
        let mut d = den.shift(-s);
        let n = num.shift(-s);
        let r = n.low();
        let mut n0 = n.shift(-r);
        if d.high() > 0 && n0.high() > 0 {
            let g = n0.gcd(&d);
            if g.high() > 0 {
                n0 = n0.div_rem(&g).0;
                d = d.div_rem(&g).0;
            }
        }
        let c = d.coefficient(0).recip();
        TateRational {
            num: n0.shift(r).scale(&c),
            den: d.scale(&c),
        }
    }

    pub fn numerator(&self) -> &TatePoly {
        &self.num
    }

    pub fn denominator(&self) -> &TatePoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The polynomial, when the denominator is 1.
    pub fn as_poly(&self) -> Option<&TatePoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn add(&self, other: &TateRational) -> TateRational {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return TateRational::reduce(self.num.add(&other.num), self.den.clone());
        }
        if self.den.is_one() {
            return TateRational::reduce(
                self.num.mul(&other.den).add(&other.num),
                other.den.clone(),
            );
        }
        if other.den.is_one() {
            return TateRational::reduce(self.num.add(&other.num.mul(&self.den)), self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let (a, b) = if g.high() > 0 {
            (self.den.div_rem(&g).0, other.den.div_rem(&g).0)
        } else {
            (self.den.clone(), other.den.clone())
        };
        let num = self.num.mul(&b).add(&other.num.mul(&a));
        TateRational::reduce(num, self.den.mul(&b))
    }

    pub fn neg(&self) -> TateRational {
        TateRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &TateRational) -> TateRational {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> TateRational {
        if c.is_zero() {
            return TateRational::zero();
        }
        TateRational {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &TatePoly) -> TateRational {
        if p.terms().count() == 1 {
            let (e, c) = p.terms().next().expect("one term");
            return TateRational {
                num: self.num.scale(c).shift(e),
                den: self.den.clone(),
            };
        }
        TateRational::reduce(self.num.mul(p), self.den.clone())
    }

    pub fn mul(&self, other: &TateRational) -> TateRational {
        if self.is_zero() || other.is_zero() {
            return TateRational::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return TateRational::from_poly(self.num.mul(&other.num));
        }
        if other.den.is_one() {
            return self.mul_poly(&other.num);
        }
        if self.den.is_one() {
            return other.mul_poly(&self.num);
        }
        TateRational::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inverse(&self) -> Result<TateRational, CharError> {
        TateRational::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &TateRational) -> Result<TateRational, CharError> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, n: u32) -> TateRational {
        let mut acc = TateRational::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The signed Adams operation `t ↦ −(−t)^k`; it preserves lowest terms.
    pub fn psi(&self, k: u32) -> TateRational {
        TateRational {
            num: self.num.psi(k),
            den: self.den.psi(k),
        }
    }

    /// `t ↦ t^{-1}`.
    pub fn invert_variable(&self) -> TateRational {
        TateRational::reduce(self.num.invert_variable(), self.den.invert_variable())
    }

    /// Terms `t^lo … t^hi` of the expansion in increasing powers of `t`.
    pub fn expand_ascending(&self, lo: i64, hi: i64) -> TatePoly {
        if self.is_zero() || hi < self.num.low() {
            return TatePoly::zero();
        }
        // den has constant term 1, so 1/den is a power series
        let start = self.num.low();
        let n = (hi - start + 1) as usize;
        let d = self.den.dense();
        let mut inv = vec![Rational::zero(); n];
        inv[0] = Rational::one();
        for i in 1..n {
            let mut acc = Rational::zero();
            for j in 1..d.len().min(i + 1) {
                acc -= &d[j] * &inv[i - j];
            }
            inv[i] = acc;
        }
        let num = self.num.dense();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in num.iter().enumerate().take(n) {
            for (j, b) in inv.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        let full = TatePoly::from_dense(start, out);
        TatePoly::from_terms(
            full.terms()
                .filter(|(e, _)| *e >= lo)
                .map(|(e, c)| (e, c.clone())),
        )
    }

    /// Terms `t^lo … t^hi` of the expansion in decreasing powers of `t`.
    pub fn expand_descending(&self, lo: i64, hi: i64) -> TatePoly {
        self.invert_variable()
            .expand_ascending(-hi, -lo)
            .invert_variable()
    }

    pub fn is_integral_poly(&self) -> bool {
        self.den.is_one() && self.num.is_integral()
    }
}

impl fmt::Display for TateRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl From<TatePoly> for TateRational {
    fn from(p: TatePoly) -> Self {
        TateRational::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> TatePoly {
        TatePoly::from_ints(terms)
    }

    #[test]
    fn field_identities() {
        let g = TateRational::geometric(2);
        let one_minus = TateRational::from_poly(poly(&[(0, 1), (2, -1)]));
        assert!(one_minus.mul(&g).is_one());
        let x = TateRational::new(poly(&[(-1, 1)]), poly(&[(0, 1), (-2, -1)])).unwrap();
        let zero_term = TateRational::new(poly(&[(1, 1)]), poly(&[(0, 1), (2, -1)]))
            .unwrap()
            .scale(&Rational::zero());
        assert_eq!(x.add(&zero_term), x);
        let p = TateRational::from_poly(poly(&[(-3, 1), (-1, 1)]));
        assert_eq!(
            p.mul(&TateRational::t_pow(3)),
            TateRational::from_poly(poly(&[(0, 1), (2, 1)]))
        );
        assert_eq!(
            TateRational::new(poly(&[(0, 1)]), TatePoly::zero()),
            Err(CharError::DivisionByZero)
        );
    }

    #[test]
    fn canonical_form_is_unique() {
        // t^{-1}/(1 − t^{-2}) = t/(t² − 1) = −t/(1 − t²)
        let a = TateRational::new(poly(&[(-1, 1)]), poly(&[(0, 1), (-2, -1)])).unwrap();
        let b = TateRational::new(poly(&[(1, -1)]), poly(&[(0, 1), (2, -1)])).unwrap();
        assert_eq!(a, b);
        // (1 − t⁴)/(1 − t²) = 1 + t²
        let c = TateRational::new(poly(&[(0, 1), (4, -1)]), poly(&[(0, 1), (2, -1)])).unwrap();
        assert_eq!(c, TateRational::from_poly(poly(&[(0, 1), (2, 1)])));
        assert_eq!(c.denominator(), &TatePoly::one());
    }

    #[test]
    fn sums_with_different_denominators() {
        let a = TateRational::geometric(2);
        let b = TateRational::geometric(4);
        let s = a.add(&b).sub(&b);
        assert_eq!(s, a);
        let ratio = a.div(&b).unwrap();
        assert_eq!(ratio, TateRational::from_poly(poly(&[(0, 1), (2, 1)])));
    }

    #[test]
    fn expansions() {
        let x = TateRational::new(poly(&[(1, 1)]), poly(&[(0, 1), (2, -1)])).unwrap();
        assert_eq!(x.expand_ascending(0, 6), poly(&[(1, 1), (3, 1), (5, 1)]));
        let y = TateRational::new(poly(&[(-1, 1)]), poly(&[(0, 1), (-2, -1)])).unwrap();
        assert_eq!(
            y.expand_descending(-6, 0),
            poly(&[(-1, 1), (-3, 1), (-5, 1)])
        );
    }

    #[test]
    fn adams_on_rational_functions() {
        let x = TateRational::new(poly(&[(1, 1)]), poly(&[(0, 1), (2, -1)])).unwrap();
        assert_eq!(
            x.psi(2),
            TateRational::new(poly(&[(2, -1)]), poly(&[(0, 1), (4, -1)])).unwrap()
        );
        assert_eq!(x.psi(1), x);
        assert_eq!(x.psi(2).psi(3), x.psi(6));
    }
}
