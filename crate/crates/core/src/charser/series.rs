//! Series `Σ_d c_d x^d` over dimension vectors, truncated at total degree.

use std::collections::BTreeMap;
use std::fmt;

use super::{CharError, TatePoly, TateRational};
use crate::quiver::DimVector;
use crate::Rational;

/// A series in `x^d` (`d ∈ N^n`) with coefficients in `Q(t)`, keeping only
/// `Σ d_i ≤ cutoff`. The constant term is held separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    vertices: usize,
    cutoff: u32,
    constant: TateRational,
    terms: BTreeMap<DimVector, TateRational>,
}

impl GradedSeries {
    pub fn zero(vertices: usize, cutoff: u32) -> Self {
        GradedSeries {
            vertices,
            cutoff,
            constant: TateRational::zero(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vertices: usize, cutoff: u32) -> Self {
        let mut s = GradedSeries::zero(vertices, cutoff);
        s.constant = TateRational::one();
        s
    }

    /// `c · x^d`; zero if `d` lies past the cutoff.
    pub fn monomial(vertices: usize, cutoff: u32, d: DimVector, c: TateRational) -> Self {
        let mut s = GradedSeries::zero(vertices, cutoff);
        s.set(d, c);
        s
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn constant(&self) -> &TateRational {
        &self.constant
    }

    pub fn set_constant(&mut self, c: TateRational) {
        self.constant = c;
    }

    /// Sets the coefficient of `x^d` (the constant term when `d = 0`).
    /// Coefficients past the cutoff are discarded.
    pub fn set(&mut self, d: DimVector, c: TateRational) {
        assert_eq!(
            d.len(),
            self.vertices,
            "dimension vector has the wrong length"
        );
        if d.is_zero() {
            self.constant = c;
        } else if d.total() <= self.cutoff {
            if c.is_zero() {
                self.terms.remove(&d);
            } else {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn coefficient(&self, d: &DimVector) -> TateRational {
        if d.is_zero() {
            return self.constant.clone();
        }
        self.terms
            .get(d)
            .cloned()
            .unwrap_or_else(TateRational::zero)
    }

    /// Nonzero coefficients of `x^d`, `d ≠ 0`, in dimension-vector order.
    pub fn terms(&self) -> impl Iterator<Item = (&DimVector, &TateRational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<DimVector> {
        self.terms.keys().cloned().collect()
    }

    fn compatible(&self, other: &GradedSeries) -> Result<u32, CharError> {
        if self.vertices != other.vertices {
            return Err(CharError::VertexMismatch(self.vertices, other.vertices));
        }
        Ok(self.cutoff.min(other.cutoff))
    }

    /// Re-truncates to a smaller cutoff.
    pub fn truncate(&self, cutoff: u32) -> GradedSeries {
        let mut out = GradedSeries::zero(self.vertices, cutoff.min(self.cutoff));
        out.constant = self.constant.clone();
        for (d, c) in &self.terms {
            out.set(d.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, other: &GradedSeries) -> Result<GradedSeries, CharError> {
        let cutoff = self.compatible(other)?;
        let mut out = self.truncate(cutoff);
        out.constant = out.constant.add(&other.constant);
        for (d, c) in &other.terms {
            let sum = out.coefficient(d).add(c);
            out.set(d.clone(), sum);
        }
        Ok(out)
    }

    pub fn neg(&self) -> GradedSeries {
        self.map(|c| c.neg())
    }

    pub fn sub(&self, other: &GradedSeries) -> Result<GradedSeries, CharError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &TateRational) -> GradedSeries {
        self.map(|x| x.mul(c))
    }

    /// Applies `f` to every coefficient, the constant term included.
    pub fn map(&self, f: impl Fn(&TateRational) -> TateRational) -> GradedSeries {
        let mut out = GradedSeries::zero(self.vertices, self.cutoff);
        out.constant = f(&self.constant);
        for (d, c) in &self.terms {
            out.set(d.clone(), f(c));
        }
        out
    }

    pub fn mul(&self, other: &GradedSeries) -> Result<GradedSeries, CharError> {
        let cutoff = self.compatible(other)?;
        let mut acc: BTreeMap<DimVector, TateRational> = BTreeMap::new();
        let mut push = |d: DimVector, c: TateRational| {
            if d.total() <= cutoff && !c.is_zero() {
                let e = acc.entry(d).or_insert_with(TateRational::zero);
                *e = e.add(&c);
            }
        };
        if !self.constant.is_zero() {
            for (d, c) in &other.terms {
                push(d.clone(), self.constant.mul(c));
            }
        }
        if !other.constant.is_zero() {
            for (d, c) in &self.terms {
                push(d.clone(), other.constant.mul(c));
            }
        }
        for (d, a) in &self.terms {
            for (e, b) in &other.terms {
                if d.total() + e.total() <= cutoff {
                    push(d.add(e), a.mul(b));
                }
            }
        }
        let mut out = GradedSeries::zero(self.vertices, cutoff);
        out.constant = self.constant.mul(&other.constant);
        for (d, c) in acc {
            out.set(d, c);
        }
        Ok(out)
    }

    /// `t ↦ −(−t)^k` on coefficients and `x^d ↦ x^{kd}`.
    pub fn psi(&self, k: u32) -> GradedSeries {
        assert!(k >= 1, "Adams operations start at k = 1");
        let mut out = GradedSeries::zero(self.vertices, self.cutoff);
        out.constant = self.constant.psi(k);
        for (d, c) in &self.terms {
            if d.total() as u64 * k as u64 <= self.cutoff as u64 {
                out.set(d.scaled(k), c.psi(k));
            }
        }
        out
    }

    /// Ordinary exponential of a series with zero constant term, from
    /// `|d| F_d = Σ_{0<e≤d} |e| G_e F_{d−e}`.
    pub fn exp(&self) -> Result<GradedSeries, CharError> {
        if !self.constant.is_zero() {
            return Err(CharError::NonzeroConstant);
        }
        let mut out = GradedSeries::one(self.vertices, self.cutoff);
        for d in DimVector::all_nonzero_up_to(self.vertices, self.cutoff) {
            let mut acc = TateRational::zero();
            for (e, g) in self.terms.iter().filter(|(e, _)| e.fits_in(&d)) {
                let rest = d.checked_sub(e).expect("e ≤ d");
                let f = out.coefficient(&rest);
                if !f.is_zero() {
                    acc = acc.add(&g.mul(&f).scale(&Rational::from_integer(e.total().into())));
                }
            }
            out.set(
                d.clone(),
                acc.scale(&Rational::new(1.into(), d.total().into())),
            );
        }
        Ok(out)
    }

    /// Ordinary logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<GradedSeries, CharError> {
        if !self.constant.is_one() {
            return Err(CharError::ConstantNotOne);
        }
        let mut out = GradedSeries::zero(self.vertices, self.cutoff);
        for d in DimVector::all_nonzero_up_to(self.vertices, self.cutoff) {
            let mut acc = self
                .coefficient(&d)
                .scale(&Rational::from_integer(d.total().into()));
            for (e, g) in out.terms.iter().filter(|(e, _)| e.fits_in(&d) && **e != d) {
                let rest = d.checked_sub(e).expect("e ≤ d");
                let f = self.coefficient(&rest);
                if !f.is_zero() {
                    acc = acc.sub(&g.mul(&f).scale(&Rational::from_integer(e.total().into())));
                }
            }
            out.set(
                d.clone(),
                acc.scale(&Rational::new(1.into(), d.total().into())),
            );
        }
        Ok(out)
    }

    /// `Exp(f) = exp(Σ_{k≥1} psi(f, k)/k)`: the character of the free
    /// supercommutative algebra on `f`.
    pub fn super_exp(&self) -> Result<GradedSeries, CharError> {
        if !self.constant.is_zero() {
            return Err(CharError::NonzeroConstant);
        }
        let mut sum = GradedSeries::zero(self.vertices, self.cutoff);
        for k in 1..=self.cutoff.max(1) {
            let term = self
                .psi(k)
                .scale(&TateRational::constant(Rational::new(1.into(), k.into())));
            sum = sum.add(&term)?;
        }
        sum.exp()
    }

    /// `Log(F) = Σ_{k≥1} (μ(k)/k) psi(log F, k)`, the inverse of [`super_exp`](Self::super_exp).
    pub fn super_log(&self) -> Result<GradedSeries, CharError> {
        let log = self.log()?;
        let mut out = GradedSeries::zero(self.vertices, self.cutoff);
        for k in 1..=self.cutoff.max(1) {
            let m = mobius(k);
            if m == 0 {
                continue;
            }
            let c = TateRational::constant(Rational::new(m.into(), k.into()));
            out = out.add(&log.psi(k).scale(&c))?;
        }
        Ok(out)
    }

    /// Coefficients are integral Laurent polynomials (no denominators).
    pub fn is_integral(&self) -> bool {
        self.constant.is_integral_poly() && self.terms.values().all(TateRational::is_integral_poly)
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.constant.is_zero() {
            writeln!(
                f,
                "{}: {}",
                DimVector(vec![0; self.vertices]),
                self.constant
            )?;
        }
        for (d, c) in &self.terms {
            writeln!(f, "{d}: {c}")?;
        }
        Ok(())
    }
}

pub(crate) fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// One generator of a free supercommutative algebra: `multiplicity` copies
/// of `t^{t_exp} x^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub t_exp: i64,
    pub d: DimVector,
    pub multiplicity: i64,
}

/// `∏ (1 − t^j x^d)^{−c}` over even `j` times `∏ (1 + t^j x^d)^{c}` over
/// odd `j`, multiplied out directly.
pub fn sym_generators_product(
    vertices: usize,
    gens: &[Generator],
    cutoff: u32,
) -> Result<GradedSeries, CharError> {
    let mut acc = GradedSeries::one(vertices, cutoff);
    for g in gens {
        if g.multiplicity < 0 {
            return Err(CharError::NegativeMultiplicity(g.multiplicity));
        }
        if g.d.len() != vertices {
            return Err(CharError::VertexMismatch(vertices, g.d.len()));
        }
        if g.d.is_zero() {
            return Err(CharError::NonzeroConstant);
        }
        let c = g.multiplicity as u64;
        let odd = g.t_exp.rem_euclid(2) == 1;
        let mut factor = GradedSeries::one(vertices, cutoff);
        let mut n = 1u32;
        while n * g.d.total() <= cutoff {
            // (1 + y)^c = Σ C(c, n) y^n ; (1 − y)^{−c} = Σ C(c+n−1, n) y^n
            let coeff = if odd {
                binomial(c, n as u64)
            } else {
                binomial(c + n as u64 - 1, n as u64)
            };
            if coeff > 0 {
                let mono =
                    TatePoly::monomial(Rational::from_integer(coeff.into()), g.t_exp * n as i64);
                factor.set(g.d.scaled(n), TateRational::from_poly(mono));
            }
            n += 1;
        }
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl GradedSeries {
    /// The series `Σ_d c_d x^d` from a polynomial-coefficient map; used for
    /// generator data.
    pub fn from_terms<I>(vertices: usize, cutoff: u32, terms: I) -> GradedSeries
    where
        I: IntoIterator<Item = (DimVector, TateRational)>,
    {
        let mut out = GradedSeries::zero(vertices, cutoff);
        for (d, c) in terms {
            let sum = out.coefficient(&d).add(&c);
            out.set(d, sum);
        }
        out
    }

    /// Integer coefficient of `t^j x^d` for a polynomial coefficient.
    pub fn t_coefficient(&self, d: &DimVector, j: i64) -> Option<Rational> {
        let c = self.coefficient(d);
        c.as_poly().map(|p| p.coefficient(j))
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    /// Terms with a zero coefficient are never stored.
    pub fn len(&self) -> usize {
        self.terms.len() + usize::from(!self.constant.is_zero())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: u32) -> DimVector {
        DimVector(vec![n])
    }

    fn tp(k: i64) -> TateRational {
        TateRational::t_pow(k)
    }

    #[test]
    fn odd_and_even_generators() {
        let odd = GradedSeries::monomial(1, 6, x(1), tp(1))
            .super_exp()
            .unwrap();
        assert_eq!(
            odd,
            GradedSeries::from_terms(1, 6, [(x(0), tp(0)), (x(1), tp(1))])
        );
        let even = GradedSeries::monomial(1, 6, x(1), tp(2))
            .super_exp()
            .unwrap();
        for n in 0..=6 {
            assert_eq!(even.coefficient(&x(n)), tp(2 * n as i64));
        }
    }

    #[test]
    fn euler_identity() {
        // Exp(t/(1−t²) x): coefficient of x^n is t^{n²} / ∏_{k≤n} (1 − t^{2k})
        let gen = tp(1).mul(&TateRational::geometric(2));
        let f = GradedSeries::monomial(1, 6, x(1), gen).super_exp().unwrap();
        for n in 0..=6u32 {
            let mut expected = tp((n * n) as i64);
            for k in 1..=n {
                expected = expected.mul(&TateRational::geometric(2 * k as i64));
            }
            assert_eq!(f.coefficient(&x(n)), expected, "n = {n}");
        }
    }

    #[test]
    fn log_of_bosonic_product() {
        // ∏_{i≥0} (1 − t^{2i} x)^{-1} has Log = x/(1 − t²)
        let gen = TateRational::geometric(2);
        let f = GradedSeries::monomial(1, 5, x(1), gen.clone())
            .super_exp()
            .unwrap();
        let back = f.super_log().unwrap();
        assert_eq!(back, GradedSeries::monomial(1, 5, x(1), gen));
        let ext = GradedSeries::from_terms(1, 5, [(x(0), tp(0)), (x(1), tp(1))]);
        assert_eq!(
            ext.super_log().unwrap(),
            GradedSeries::monomial(1, 5, x(1), tp(1))
        );
    }

    #[test]
    fn product_formula_examples() {
        let g = |j, c| Generator {
            t_exp: j,
            d: x(1),
            multiplicity: c,
        };
        let a = sym_generators_product(1, &[g(1, 1)], 4).unwrap();
        assert_eq!(
            a,
            GradedSeries::from_terms(1, 4, [(x(0), tp(0)), (x(1), tp(1))])
        );
        let b = sym_generators_product(1, &[g(0, 2)], 4).unwrap();
        for n in 0..=4 {
            assert_eq!(b.coefficient(&x(n)), TateRational::from_int(n as i64 + 1));
        }
        let c = sym_generators_product(1, &[g(1, 2)], 4).unwrap();
        assert_eq!(
            c.coefficient(&x(1)),
            tp(1).scale(&Rational::from_integer(2.into()))
        );
        assert_eq!(c.coefficient(&x(2)), tp(2));
        assert!(c.coefficient(&x(3)).is_zero());
        assert_eq!(
            sym_generators_product(1, &[g(0, -1)], 4),
            Err(CharError::NegativeMultiplicity(-1))
        );
    }

    #[test]
    fn preconditions() {
        let mut f = GradedSeries::one(1, 3);
        assert_eq!(f.super_exp(), Err(CharError::NonzeroConstant));
        f.set_constant(TateRational::from_int(2));
        assert_eq!(f.super_log(), Err(CharError::ConstantNotOne));
        assert!(GradedSeries::one(1, 3).super_log().unwrap().is_zero());
    }

    #[test]
    fn mobius_values() {
        let v: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(v, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
