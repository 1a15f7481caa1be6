//! Noncommutative potential calculus in path algebras.
//!
//! Paths compose left to right: the word `a.b` is defined when
//! `t(a) = s(b)`. Products of non-composable paths are zero, as in the path
//! algebra. A [`Potential`] stores each cyclic word in its canonical rotation,
//! the lexicographically smallest rotation when arrows are compared by id.

mod checks;
mod text;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::quiver::{omega_name, Quiver, QuiverError};
use crate::Rational;

pub use checks::{
    check_conifold, check_gkw, gkw_expected_relations, kw_potential, ConifoldReport, GkwMismatch,
    GkwReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PotentialError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("word `{0}` is not a composable path")]
    NotComposable(String),
    #[error("word `{0}` is not closed")]
    NotClosed(String),
    #[error("empty word")]
    EmptyWord,
    #[error("`{0}` lives on a different quiver")]
    QuiverMismatch(&'static str),
    #[error("substitution for `{arrow}` is not a sum of paths from {from} to {to}")]
    SubstitutionMismatch {
        arrow: String,
        from: String,
        to: String,
    },
    #[error("expected {expected} deformation parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },
    #[error("the power of ω must be at least 1")]
    ZeroPower,
    #[error("parse error: {0}")]
    Parse(String),
}

/// A path `e_start · a_1 ⋯ a_k`; an empty arrow list is the lazy path `e_start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    start: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(vertex: usize) -> Path {
        Path {
            start: vertex,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Path {
        Path {
            start: q.arrow(a).source,
            arrows: vec![a],
        }
    }

    /// Checks composability of `arrows` (left to right).
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Path, PotentialError> {
        let first = *arrows.first().ok_or(PotentialError::EmptyWord)?;
        if !is_composable(q, &arrows) {
            return Err(PotentialError::NotComposable(word_name(q, &arrows)));
        }
        Ok(Path {
            start: q.arrow(first).source,
            arrows,
        })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.arrows
            .last()
            .map_or(self.start, |&a| q.arrow(a).target)
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    // A path of length zero is a lazy path; `is_lazy` plays the role of `is_empty`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_closed(&self, q: &Quiver) -> bool {
        self.end(q) == self.start
    }

    /// Concatenation, or `None` when the end of `self` is not the start of `other`.
    pub fn compose(&self, q: &Quiver, other: &Path) -> Option<Path> {
        if self.end(q) != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            start: self.start,
            arrows,
        })
    }
}

fn is_composable(q: &Quiver, arrows: &[usize]) -> bool {
    arrows
        .windows(2)
        .all(|w| q.arrow(w[0]).target == q.arrow(w[1]).source)
}

fn word_name(q: &Quiver, arrows: &[usize]) -> String {
    arrows
        .iter()
        .map(|&a| q.arrow(a).id.as_str())
        .collect::<Vec<_>>()
        .join(".")
}

/// A cyclic path stored in its canonical rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord(Vec<usize>);

impl CyclicWord {
    pub fn arrows(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Canonical rotation of a closed composable word: the lexicographically
/// smallest rotation, comparing arrows by their id strings.
pub fn cyclic_normalize(q: &Quiver, word: &[usize]) -> Result<CyclicWord, PotentialError> {
    if word.is_empty() {
        return Err(PotentialError::EmptyWord);
    }
    if !is_composable(q, word) {
        return Err(PotentialError::NotComposable(word_name(q, word)));
    }
    let first = q.arrow(word[0]).source;
    let last = q.arrow(word[word.len() - 1]).target;
    if first != last {
        return Err(PotentialError::NotClosed(word_name(q, word)));
    }
    Ok(canonical_rotation(q, word))
}

fn canonical_rotation(q: &Quiver, word: &[usize]) -> CyclicWord {
    let n = word.len();
    let key = |r: usize| -> Vec<&str> {
        (0..n)
            .map(|i| q.arrow(word[(r + i) % n]).id.as_str())
            .collect()
    };
    let best = (0..n).min_by(|&x, &y| key(x).cmp(&key(y))).unwrap_or(0);
    CyclicWord((0..n).map(|i| word[(best + i) % n]).collect())
}

fn accumulate<K: Ord>(terms: &mut BTreeMap<K, Rational>, key: K, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(v) => {
            v.insert(coeff);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// A finite rational combination of paths of a fixed quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPoly {
    quiver: Arc<Quiver>,
    terms: BTreeMap<Path, Rational>,
}

impl NCPoly {
    pub fn zero(quiver: Arc<Quiver>) -> Self {
        NCPoly {
            quiver,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_path(quiver: Arc<Quiver>, path: Path, coeff: Rational) -> Self {
        let mut p = NCPoly::zero(quiver);
        p.add_term(path, coeff);
        p
    }

    pub fn arrow(quiver: &Arc<Quiver>, a: usize) -> Self {
        let path = Path::arrow(quiver, a);
        NCPoly::from_path(quiver.clone(), path, Rational::one())
    }

    pub fn lazy(quiver: &Arc<Quiver>, vertex: usize) -> Self {
        NCPoly::from_path(quiver.clone(), Path::lazy(vertex), Rational::one())
    }

    /// `Σ_i e_i`, the unit of the path algebra.
    pub fn one(quiver: &Arc<Quiver>) -> Self {
        let mut p = NCPoly::zero(quiver.clone());
        for v in 0..quiver.vertex_count() {
            p.add_term(Path::lazy(v), Rational::one());
        }
        p
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, path: &Path) -> Rational {
        self.terms.get(path).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, path: Path, coeff: Rational) {
        accumulate(&mut self.terms, path, coeff);
    }

    fn same_quiver(&self, other: &NCPoly) {
        assert!(
            Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver,
            "NCPoly operands live on different quivers"
        );
    }

    pub fn scale(&self, c: &Rational) -> NCPoly {
        let mut out = NCPoly::zero(self.quiver.clone());
        if c.is_zero() {
            return out;
        }
        for (p, x) in &self.terms {
            out.terms.insert(p.clone(), x * c);
        }
        out
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        self.same_quiver(other);
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Path-algebra product; non-composable pairs contribute zero.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        self.same_quiver(other);
        let mut out = NCPoly::zero(self.quiver.clone());
        for (p, x) in &self.terms {
            for (r, y) in &other.terms {
                if let Some(pr) = p.compose(&self.quiver, r) {
                    out.add_term(pr, x * y);
                }
            }
        }
        out
    }

    /// `[x, y] = xy − yx`.
    pub fn commutator(&self, other: &NCPoly) -> NCPoly {
        self.mul(other).sub(&other.mul(self))
    }

    /// Sends every arrow `a` to `σ(a)` (identity where `σ` is silent).
    pub fn substitute(&self, sigma: &Substitution) -> Result<NCPoly, PotentialError> {
        sigma.check(&self.quiver)?;
        let mut out = NCPoly::zero(self.quiver.clone());
        for (path, c) in &self.terms {
            let image = sigma.image_of_word(&self.quiver, path.start, &path.arrows);
            out = out.add(&image.scale(c));
        }
        Ok(out)
    }
}

/// A rational combination of cyclic words of a fixed quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    quiver: Arc<Quiver>,
    terms: BTreeMap<CyclicWord, Rational>,
}

impl Potential {
    pub fn zero(quiver: Arc<Quiver>) -> Self {
        Potential {
            quiver,
            terms: BTreeMap::new(),
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicWord, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &CyclicWord) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `coeff · word` after cyclic normalisation.
    pub fn add_word(&mut self, word: &[usize], coeff: Rational) -> Result<(), PotentialError> {
        let w = cyclic_normalize(&self.quiver, word)?;
        self.add_cyclic(w, coeff);
        Ok(())
    }

    fn add_cyclic(&mut self, w: CyclicWord, coeff: Rational) {
        accumulate(&mut self.terms, w, coeff);
    }

    /// The closed paths of `p` as cyclic words. Lazy paths are constants of
    /// the path algebra; they have no cyclic derivatives and are dropped.
    pub fn from_closed_paths(p: &NCPoly) -> Result<Potential, PotentialError> {
        let mut out = Potential::zero(p.quiver.clone());
        for (path, c) in &p.terms {
            if path.is_lazy() {
                continue;
            }
            if !path.is_closed(&p.quiver) {
                return Err(PotentialError::NotClosed(word_name(
                    &p.quiver,
                    &path.arrows,
                )));
            }
            out.add_cyclic(canonical_rotation(&p.quiver, &path.arrows), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Potential {
        let mut out = Potential::zero(self.quiver.clone());
        if !c.is_zero() {
            for (w, x) in &self.terms {
                out.terms.insert(w.clone(), x * c);
            }
        }
        out
    }

    pub fn add(&self, other: &Potential) -> Result<Potential, PotentialError> {
        if self.quiver != other.quiver {
            return Err(PotentialError::QuiverMismatch("potential"));
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_cyclic(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Potential) -> Result<Potential, PotentialError> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// `∂W/∂a = Σ_{a_m = a} a_{m+1} ⋯ a_n a_1 ⋯ a_{m−1}`, a combination of
    /// paths from `t(a)` to `s(a)`.
    pub fn cyclic_derivative(&self, a: usize) -> NCPoly {
        let q = &self.quiver;
        let mut out = NCPoly::zero(q.clone());
        for (w, c) in &self.terms {
            let word = &w.0;
            let n = word.len();
            for m in (0..n).filter(|&m| word[m] == a) {
                let arrows: Vec<usize> = (1..n).map(|k| word[(m + k) % n]).collect();
                out.add_term(
                    Path {
                        start: q.arrow(a).target,
                        arrows,
                    },
                    c.clone(),
                );
            }
        }
        out
    }

    pub fn cyclic_derivative_by_id(&self, id: &str) -> Result<NCPoly, PotentialError> {
        let a = self.quiver.require_arrow(id)?;
        Ok(self.cyclic_derivative(a))
    }

    /// Multilinear expansion of `W(σ(a_1), …, σ(a_n))`, renormalised cyclically.
    pub fn substitute(&self, sigma: &Substitution) -> Result<Potential, PotentialError> {
        sigma.check(&self.quiver)?;
        let q = &self.quiver;
        let mut expanded = NCPoly::zero(q.clone());
        for (w, c) in &self.terms {
            let start = q.arrow(w.0[0]).source;
            expanded = expanded.add(&sigma.image_of_word(q, start, &w.0).scale(c));
        }
        Potential::from_closed_paths(&expanded)
    }

    /// `Σ_c [c, ∂W/∂c]` over all arrows `c`; identically zero.
    pub fn necklace_check(&self) -> NCPoly {
        let q = &self.quiver;
        let mut out = NCPoly::zero(q.clone());
        for c in 0..q.arrow_count() {
            let arrow = NCPoly::arrow(q, c);
            out = out.add(&arrow.commutator(&self.cyclic_derivative(c)));
        }
        out
    }
}

/// Canonical-form comparison of two potentials on the same quiver.
pub fn potentials_equal(p1: &Potential, p2: &Potential) -> bool {
    p1 == p2
}

/// One relation per arrow of `q`, in arrow order.
pub fn jacobi_relations(
    q: &Quiver,
    w: &Potential,
) -> Result<Vec<(String, NCPoly)>, PotentialError> {
    if w.quiver.as_ref() != q {
        return Err(PotentialError::QuiverMismatch("potential"));
    }
    Ok((0..q.arrow_count())
        .map(|a| (q.arrow(a).id.clone(), w.cyclic_derivative(a)))
        .collect())
}

/// `W̃ = Σ_{a∈Q_1} [a, a*] · Σ_{i∈Q_0} ω_i` on the tripled quiver.
pub fn canonical_tripled_potential(q: &Quiver) -> Result<Potential, PotentialError> {
    let tq = Arc::new(q.triple()?);
    let (commutators, omega) = preprojective_parts(q, &tq)?;
    Potential::from_closed_paths(&commutators.mul(&omega))
}

/// `(Σ_a [a, a*], Σ_i ω_i)` as elements of the path algebra of `tq = triple(q)`.
pub(crate) fn preprojective_parts(
    q: &Quiver,
    tq: &Arc<Quiver>,
) -> Result<(NCPoly, NCPoly), PotentialError> {
    let mut commutators = NCPoly::zero(tq.clone());
    for a in q.arrows() {
        let x = NCPoly::arrow(tq, tq.require_arrow(&a.id)?);
        let y = NCPoly::arrow(tq, tq.require_arrow(&format!("{}*", a.id))?);
        commutators = commutators.add(&x.commutator(&y));
    }
    let mut omega = NCPoly::zero(tq.clone());
    for v in q.vertices() {
        omega = omega.add(&NCPoly::arrow(tq, tq.require_arrow(&omega_name(v))?));
    }
    Ok((commutators, omega))
}

/// `W̃^μ_n = W̃ + Σ_i (μ_i / n) ω_i^n`; `n = 2` is the potential of the
/// central extensions, `n = 1` the linear deformation.
pub fn mu_potential(q: &Quiver, mu: &[Rational], n: u32) -> Result<Potential, PotentialError> {
    if mu.len() != q.vertex_count() {
        return Err(PotentialError::ParameterCount {
            expected: q.vertex_count(),
            got: mu.len(),
        });
    }
    if n == 0 {
        return Err(PotentialError::ZeroPower);
    }
    let mut w = canonical_tripled_potential(q)?;
    let scale = Rational::from_integer(n.into());
    for (v, m) in q.vertices().iter().zip(mu) {
        let omega = w.quiver.require_arrow(&omega_name(v))?;
        w.add_word(&vec![omega; n as usize], m / &scale)?;
    }
    Ok(w)
}

/// Arrow substitution `a ↦ σ(a)`; arrows not listed map to themselves.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    images: BTreeMap<usize, NCPoly>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, arrow: usize, image: NCPoly) {
        self.images.insert(arrow, image);
    }

    pub fn with(mut self, arrow: usize, image: NCPoly) -> Self {
        self.set(arrow, image);
        self
    }

    fn check(&self, q: &Arc<Quiver>) -> Result<(), PotentialError> {
        for (&a, img) in &self.images {
            if img.quiver.as_ref() != q.as_ref() {
                return Err(PotentialError::QuiverMismatch("substitution"));
            }
            let arrow = q.arrow(a);
            let ok = img
                .terms
                .keys()
                .all(|p| p.start == arrow.source && p.end(q) == arrow.target);
            if !ok {
                return Err(PotentialError::SubstitutionMismatch {
                    arrow: arrow.id.clone(),
                    from: q.vertices()[arrow.source].clone(),
                    to: q.vertices()[arrow.target].clone(),
                });
            }
        }
        Ok(())
    }

    fn image_of_word(&self, q: &Arc<Quiver>, start: usize, word: &[usize]) -> NCPoly {
        let mut acc = NCPoly::lazy(q, start);
        for &a in word {
            let img = self
                .images
                .get(&a)
                .cloned()
                .unwrap_or_else(|| NCPoly::arrow(q, a));
            acc = acc.mul(&img);
        }
        acc
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render_ncpoly(self))
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render_potential(self))
    }
}

impl Potential {
    /// Parses `"1/2 * w0.w0 - 1 * a.b"` against the arrows of `quiver`.
    pub fn parse(quiver: Arc<Quiver>, s: &str) -> Result<Potential, PotentialError> {
        text::parse_potential(quiver, s, false)
    }

    /// Like [`Potential::parse`] but reads each word right to left, i.e.
    /// `x.y` means "first `y`, then `x`".
    pub fn parse_right_to_left(quiver: Arc<Quiver>, s: &str) -> Result<Potential, PotentialError> {
        text::parse_potential(quiver, s, true)
    }
}

impl NCPoly {
    /// Parses the potential text format; lazy paths are written `e_<vertex>`.
    pub fn parse(quiver: Arc<Quiver>, s: &str) -> Result<NCPoly, PotentialError> {
        text::parse_ncpoly(quiver, s, false)
    }

    pub fn parse_right_to_left(quiver: Arc<Quiver>, s: &str) -> Result<NCPoly, PotentialError> {
        text::parse_ncpoly(quiver, s, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn jordan_triple() -> Arc<Quiver> {
        Arc::new(Quiver::jordan().triple().unwrap())
    }

    #[test]
    fn normalisation_identifies_rotations() {
        let q = jordan_triple();
        let l = q.arrow_by_id("ℓ").unwrap();
        let ls = q.arrow_by_id("ℓ*").unwrap();
        assert_eq!(
            cyclic_normalize(&q, &[l, ls]).unwrap(),
            cyclic_normalize(&q, &[ls, l]).unwrap()
        );
        let aff = Quiver::affine_a1();
        let a = aff.arrow_by_id("a").unwrap();
        assert_eq!(
            cyclic_normalize(&aff, &[a]),
            Err(PotentialError::NotClosed("a".into()))
        );
        assert!(matches!(
            cyclic_normalize(&aff, &[a, a]),
            Err(PotentialError::NotComposable(_))
        ));
    }

    #[test]
    fn tripled_potential_of_jordan_quiver() {
        let w = canonical_tripled_potential(&Quiver::jordan()).unwrap();
        let q = w.quiver().clone();
        let expected = Potential::parse(q.clone(), "1 * ω_0.ℓ.ℓ* - 1 * ω_0.ℓ*.ℓ").unwrap();
        assert!(potentials_equal(&w, &expected));
        let d_omega = w.cyclic_derivative_by_id("ω_0").unwrap();
        assert_eq!(
            d_omega,
            NCPoly::parse(q.clone(), "1 * ℓ.ℓ* - 1 * ℓ*.ℓ").unwrap()
        );
        let d_l = w.cyclic_derivative_by_id("ℓ").unwrap();
        assert_eq!(
            d_l,
            NCPoly::parse(q.clone(), "1 * ℓ*.ω_0 - 1 * ω_0.ℓ*").unwrap()
        );
    }

    #[test]
    fn jacobi_relations_of_tripled_jordan() {
        // hand unrolled: ∂/∂ℓ = [ℓ*, ω], ∂/∂ℓ* = [ω, ℓ], ∂/∂ω = [ℓ, ℓ*]
        let q = Quiver::jordan().triple().unwrap();
        let w = canonical_tripled_potential(&Quiver::jordan()).unwrap();
        let rels = jacobi_relations(&q, &w).unwrap();
        let qa = w.quiver().clone();
        let x = |id: &str| NCPoly::arrow(&qa, qa.arrow_by_id(id).unwrap());
        let ids: Vec<&str> = rels.iter().map(|(id, _)| id.as_str()).collect();
        assert_eq!(ids, ["ℓ", "ℓ*", "ω_0"]);
        assert_eq!(rels[0].1, x("ℓ*").commutator(&x("ω_0")));
        assert_eq!(rels[1].1, x("ω_0").commutator(&x("ℓ")));
        assert_eq!(rels[2].1, x("ℓ").commutator(&x("ℓ*")));
    }

    #[test]
    fn quadratic_deformation_of_the_point() {
        let w = mu_potential(&Quiver::point(), &[Rational::one()], 2).unwrap();
        let q = w.quiver().clone();
        assert_eq!(w, Potential::parse(q.clone(), "1/2 * ω_0.ω_0").unwrap());
        let rels = jacobi_relations(&q, &w).unwrap();
        assert_eq!(rels[0].1, NCPoly::arrow(&q, 0));
    }

    #[test]
    fn linear_deformation_adds_omega() {
        let mu = [r(1, 1), r(-1, 1)];
        let w1 = mu_potential(&Quiver::affine_a1(), &mu, 1).unwrap();
        let q = w1.quiver().clone();
        let base = canonical_tripled_potential(&Quiver::affine_a1()).unwrap();
        let lin = Potential::parse(q.clone(), "1 * ω_0 - 1 * ω_1").unwrap();
        assert_eq!(w1, base.add(&lin).unwrap());
        // derivative of the linear term is a lazy path
        let d = w1.cyclic_derivative_by_id("ω_1").unwrap();
        assert_eq!(d.coefficient(&Path::lazy(1)), r(-1, 1));
    }

    #[test]
    fn mu_potential_validates_input() {
        assert!(matches!(
            mu_potential(&Quiver::affine_a1(), &[r(1, 1)], 2),
            Err(PotentialError::ParameterCount {
                expected: 2,
                got: 1
            })
        ));
        assert_eq!(
            mu_potential(&Quiver::point(), &[r(1, 1)], 0),
            Err(PotentialError::ZeroPower)
        );
    }

    #[test]
    fn derivative_of_absent_arrow_vanishes() {
        let w = canonical_tripled_potential(&Quiver::point()).unwrap();
        assert!(w.is_zero());
        let w = mu_potential(&Quiver::point(), &[r(3, 1)], 2).unwrap();
        let q = Arc::new(Quiver::point().triple().unwrap().double().unwrap());
        let on_bigger = Potential::parse(q.clone(), &w.to_string()).unwrap();
        assert!(on_bigger.cyclic_derivative_by_id("ω_0*").unwrap().is_zero());
    }

    #[test]
    fn derivative_is_linear() {
        let w = canonical_tripled_potential(&Quiver::affine_a1()).unwrap();
        let c = r(-7, 3);
        for a in 0..w.quiver().arrow_count() {
            assert_eq!(
                w.scale(&c).cyclic_derivative(a),
                w.cyclic_derivative(a).scale(&c)
            );
        }
    }

    #[test]
    fn identity_and_scaling_substitutions() {
        let w = mu_potential(&Quiver::affine_a1(), &[r(1, 1), r(-1, 1)], 2).unwrap();
        assert_eq!(w.substitute(&Substitution::new()).unwrap(), w);
        let q = w.quiver().clone();
        let a = q.arrow_by_id("a").unwrap();
        let doubled = Substitution::new().with(a, NCPoly::arrow(&q, a).scale(&r(2, 1)));
        let out = w.substitute(&doubled).unwrap();
        for (word, c) in w.terms() {
            let k = word.arrows().iter().filter(|&&x| x == a).count() as u32;
            assert_eq!(
                out.coefficient(word),
                c * Rational::from_integer(2i64.pow(k).into())
            );
        }
    }

    #[test]
    fn substitution_must_preserve_endpoints() {
        let w = canonical_tripled_potential(&Quiver::affine_a1()).unwrap();
        let q = w.quiver().clone();
        let a = q.arrow_by_id("a").unwrap();
        let b = q.arrow_by_id("b").unwrap();
        let bad = Substitution::new().with(a, NCPoly::arrow(&q, b));
        assert!(matches!(
            w.substitute(&bad),
            Err(PotentialError::SubstitutionMismatch { .. })
        ));
    }

    #[test]
    fn potential_equality_up_to_rotation() {
        let q = jordan_triple();
        let p1 = Potential::parse(q.clone(), "1 * ω_0.ℓ.ℓ* + 2 * ℓ.ℓ").unwrap();
        let p2 = Potential::parse(q.clone(), "2 * ℓ.ℓ + 1 * ℓ.ℓ*.ω_0").unwrap();
        assert!(potentials_equal(&p1, &p2));
        let p3 = Potential::parse(q.clone(), "1 * ω_0.ℓ*.ℓ + 2 * ℓ.ℓ").unwrap();
        assert!(!potentials_equal(&p1, &p3));
    }

    #[test]
    fn necklace_vanishes_on_canonical_potentials() {
        for q in [
            Quiver::point(),
            Quiver::jordan(),
            Quiver::affine_a1(),
            Quiver::loops(2),
        ] {
            let w = canonical_tripled_potential(&q).unwrap();
            assert!(w.necklace_check().is_zero());
        }
        assert!(kw_potential().necklace_check().is_zero());
    }
}
