//! Independent checks of the tripled-quiver potentials: the relation sets of
//! the deformed preprojective algebra and the conifold change of variables.

use std::sync::Arc;

use num_traits::One;

use super::{
    jacobi_relations, mu_potential, preprojective_parts, NCPoly, Potential, PotentialError,
    Substitution,
};
use crate::quiver::{omega_name, Quiver};
use crate::Rational;

/// The Klebanov–Witten potential on the double of the affine `A_1` quiver
/// (`a: 0→1`, `b: 1→0`), `a*.a.b.b* − a.a*.b*.b` read left to right.
pub fn kw_potential() -> Potential {
    let q = Arc::new(Quiver::affine_a1().double().expect("affine A1 doubles"));
    Potential::parse(q, "1 * a*.a.b.b* - 1 * a.a*.b*.b").expect("KW potential is well formed")
}

/// Relations expected from the deformed preprojective algebra, built from
/// products in the path algebra rather than from cyclic derivatives:
///
/// - at `a`: `a*·Ω − Ω·a*`
/// - at `a*`: `Ω·a − a·Ω`
/// - at `ω_i`: `e_i·(Σ_a [a,a*])·e_i + μ_i ω_i`
///
/// where `Ω = Σ_i ω_i`. Listed in the arrow order of `triple(q)`.
pub fn gkw_expected_relations(
    q: &Quiver,
    mu: &[Rational],
) -> Result<Vec<(String, NCPoly)>, PotentialError> {
    if mu.len() != q.vertex_count() {
        return Err(PotentialError::ParameterCount {
            expected: q.vertex_count(),
            got: mu.len(),
        });
    }
    let tq = Arc::new(q.triple()?);
    let (commutators, omega) = preprojective_parts(q, &tq)?;
    let arrow = |id: &str| -> Result<NCPoly, PotentialError> {
        Ok(NCPoly::arrow(&tq, tq.require_arrow(id)?))
    };
    let mut out = Vec::new();
    for a in q.arrows() {
        let star = arrow(&format!("{}*", a.id))?;
        out.push((a.id.clone(), star.mul(&omega).sub(&omega.mul(&star))));
    }
    for a in q.arrows() {
        let x = arrow(&a.id)?;
        out.push((format!("{}*", a.id), omega.mul(&x).sub(&x.mul(&omega))));
    }
    for (i, v) in q.vertices().iter().enumerate() {
        let e = NCPoly::lazy(&tq, i);
        let w = arrow(&omega_name(v))?;
        out.push((
            omega_name(v),
            e.mul(&commutators).mul(&e).add(&w.scale(&mu[i])),
        ));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkwMismatch {
    pub arrow: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkwReport {
    pub passes: bool,
    pub relations: usize,
    pub mismatches: Vec<GkwMismatch>,
}

/// Compares `jacobi_relations(triple(q), W̃^μ)` term by term with
/// [`gkw_expected_relations`].
pub fn check_gkw(q: &Quiver, mu: &[Rational]) -> Result<GkwReport, PotentialError> {
    let w = mu_potential(q, mu, 2)?;
    let actual = jacobi_relations(w.quiver(), &w)?;
    let expected = gkw_expected_relations(q, mu)?;
    let mut mismatches = Vec::new();
    for ((id_a, rel_a), (id_e, rel_e)) in actual.iter().zip(&expected) {
        if id_a != id_e || rel_a != rel_e {
            mismatches.push(GkwMismatch {
                arrow: id_a.clone(),
                expected: format!("{id_e}: {rel_e}"),
                actual: format!("{id_a}: {rel_a}"),
            });
        }
    }
    if actual.len() != expected.len() {
        mismatches.push(GkwMismatch {
            arrow: "<count>".into(),
            expected: expected.len().to_string(),
            actual: actual.len().to_string(),
        });
    }
    Ok(GkwReport {
        passes: mismatches.is_empty(),
        relations: actual.len(),
        mismatches,
    })
}

/// Outcome of the conifold change of variables on `triple(affine A_1)` with
/// `μ = (1, −1)`.
#[derive(Clone, Debug)]
pub struct ConifoldReport {
    /// `mu_potential(affine A_1, (1,−1), 2)` agrees with the displayed `W̃^μ`.
    pub wtilde_matches_display: bool,
    pub substituted: Potential,
    pub expected: Potential,
    /// `substituted − expected`.
    pub residual: Potential,
    pub passes: bool,
    /// Whether the substituted potential equals the target after the further
    /// rescaling `a ↦ −a`.
    pub matches_after_negating_a: bool,
}

// Displayed forms, words read right to left.
const WTILDE_DISPLAY: &str =
    "1 * ω_0.a*.a - 1 * ω_0.b.b* - 1 * ω_1.a.a* + 1 * ω_1.b*.b + 1/2 * ω_0.ω_0 - 1/2 * ω_1.ω_1";
const OMEGA0_IMAGE: &str = "1 * ω_0 - 1 * a*.a + 1 * b.b*";
const OMEGA1_IMAGE: &str = "1 * ω_1 - 1 * a.a* + 1 * b*.b";
const TARGET_DISPLAY: &str = "1/2 * ω_0.ω_0 - 1/2 * ω_1.ω_1 + 1 * b*.b.a.a* - 1 * b.b*.a*.a";

pub fn check_conifold() -> Result<ConifoldReport, PotentialError> {
    let q = Quiver::affine_a1();
    let mu = [Rational::one(), -Rational::one()];
    let w = mu_potential(&q, &mu, 2)?;
    let tq = w.quiver().clone();
    let display = Potential::parse_right_to_left(tq.clone(), WTILDE_DISPLAY)?;

    let sigma = Substitution::new()
        .with(
            tq.require_arrow("ω_0")?,
            NCPoly::parse_right_to_left(tq.clone(), OMEGA0_IMAGE)?,
        )
        .with(
            tq.require_arrow("ω_1")?,
            NCPoly::parse_right_to_left(tq.clone(), OMEGA1_IMAGE)?,
        );
    let substituted = w.substitute(&sigma)?;
    let expected = Potential::parse_right_to_left(tq.clone(), TARGET_DISPLAY)?;
    let residual = substituted.sub(&expected)?;

    let a = tq.require_arrow("a")?;
    let negate_a = Substitution::new().with(a, NCPoly::arrow(&tq, a).scale(&-Rational::one()));
    let negated = substituted.substitute(&negate_a)?;

    Ok(ConifoldReport {
        wtilde_matches_display: w == display,
        passes: residual.is_zero(),
        matches_after_negating_a: negated == expected,
        substituted,
        expected,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kw_has_two_terms_and_expected_derivative() {
        let w = kw_potential();
        let coeffs: Vec<String> = w.terms().map(|(_, c)| c.to_string()).collect();
        assert_eq!(w.len(), 2);
        assert!(coeffs.contains(&"1".to_string()) && coeffs.contains(&"-1".to_string()));
        let d = w.cyclic_derivative_by_id("a").unwrap();
        assert_eq!(
            d,
            NCPoly::parse(w.quiver().clone(), "1 * b.b*.a* - 1 * a*.b*.b").unwrap()
        );
    }

    #[test]
    fn gkw_relations_match_on_small_quivers() {
        let one = Rational::one();
        let cases: Vec<(Quiver, Vec<Rational>)> = vec![
            (Quiver::point(), vec![Rational::from_integer(0.into())]),
            (Quiver::point(), vec![one.clone()]),
            (Quiver::jordan(), vec![one.clone()]),
            (Quiver::affine_a1(), vec![one.clone(), -one.clone()]),
            (Quiver::loops(2), vec![Rational::new(3.into(), 2.into())]),
        ];
        for (q, mu) in cases {
            let report = check_gkw(&q, &mu).unwrap();
            assert!(report.passes, "{:?}", report.mismatches);
            assert_eq!(report.relations, q.triple().unwrap().arrow_count());
        }
    }

    #[test]
    fn conifold_residual_is_a_sign() {
        let r = check_conifold().unwrap();
        assert!(r.wtilde_matches_display);
        // the quadratic part cancels; the quartic part comes out with the opposite sign
        let quartic = Potential::parse_right_to_left(
            r.expected.quiver().clone(),
            "1 * b*.b.a.a* - 1 * b.b*.a*.a",
        )
        .unwrap();
        assert_eq!(
            r.residual,
            quartic.scale(&Rational::from_integer((-2).into()))
        );
        assert!(r.matches_after_negating_a);
        assert!(!r.passes);
    }
}
