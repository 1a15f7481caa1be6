//! Strategies and property checks shared by the acceptance and property suites.
#![allow(dead_code)]

use std::sync::Arc;

use kacdt_core::charser::{
    sym_generators_product, Generator, GradedSeries, TatePoly, TateRational,
};
use kacdt_core::fqrep::{
    automorphism_count, count_abs_indec_classes, end_algebra, group_order,
    is_absolutely_indecomposable, is_absolutely_indecomposable_by_scan, orbit_decomposition, Caps,
    RepSpace,
};
use kacdt_core::kac::{degree_bound, smallest_primes, KacSource, OracleKac};
use kacdt_core::ncpot::{NCPoly, Potential};
use kacdt_core::quiver::{DimVector, Quiver};
use kacdt_core::Rational;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Largest representation space a Kac property case may enumerate.
pub const KAC_CASE_LIMIT: u64 = 200_000;
/// Largest representation space for the orbit-stabilizer check.
pub const ORBIT_CASE_LIMIT: u64 = 4_096;
/// Largest endomorphism algebra whose radical is also found by pair scan.
pub const SCAN_END_LIMIT: u128 = 729;

pub fn dv(v: &[u32]) -> DimVector {
    DimVector(v.to_vec())
}

pub fn build_quiver(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    let vertices: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = arrows
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| (format!("a{k}"), s.to_string(), t.to_string()))
        .collect();
    Quiver::new(vertices, arrows).expect("generated quiver is well formed")
}

/// Quivers with one or two vertices and at most `max_arrows` arrows.
pub fn small_quiver(max_arrows: usize) -> impl Strategy<Value = Quiver> {
    (1usize..=2).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_arrows)
            .prop_map(move |arrows| build_quiver(n, &arrows))
    })
}

/// A quiver together with a nonzero dimension vector of total at most `max_total`.
pub fn quiver_and_dim(
    max_arrows: usize,
    max_total: u32,
) -> impl Strategy<Value = (Quiver, DimVector)> {
    small_quiver(max_arrows).prop_flat_map(move |q| {
        let dims = DimVector::all_nonzero_up_to(q.vertex_count(), max_total);
        (Just(q), prop::sample::select(dims))
    })
}

pub fn rep_space_size(q: &Quiver, d: &DimVector, p: u32) -> Option<u64> {
    let entries: u32 = q.arrows().iter().map(|a| d[a.source] * d[a.target]).sum();
    (p as u64).checked_pow(entries)
}

/// The oracle can interpolate `a_{Q,d}` using `extra` primes beyond the stability prime.
pub fn oracle_feasible(q: &Quiver, d: &DimVector, extra: usize) -> bool {
    let bound = degree_bound(q, d).expect("dimension matches") as usize;
    let p = *smallest_primes(bound + 2 + extra)
        .last()
        .expect("at least one prime");
    rep_space_size(q, d, p).is_some_and(|s| s <= KAC_CASE_LIMIT)
}

pub fn kac_case(
    max_arrows: usize,
    max_total: u32,
    extra: usize,
) -> impl Strategy<Value = (Quiver, DimVector)> {
    quiver_and_dim(max_arrows, max_total).prop_filter("within oracle capacity", move |(q, d)| {
        oracle_feasible(q, d, extra)
    })
}

pub fn orbit_case() -> impl Strategy<Value = (Quiver, DimVector, u32)> {
    (quiver_and_dim(3, 3), prop::sample::select(vec![2u32, 3]))
        .prop_map(|((q, d), p)| (q, d, p))
        .prop_filter("small representation space", |(q, d, p)| {
            rep_space_size(q, d, *p).is_some_and(|s| s <= ORBIT_CASE_LIMIT)
        })
}

pub fn tate_poly() -> impl Strategy<Value = TatePoly> {
    prop::collection::vec((-3i64..=3, -2i64..=2), 0..4).prop_map(|t| TatePoly::from_ints(&t))
}

/// Laurent polynomials, sometimes divided by `1 − t²`.
pub fn coefficient() -> impl Strategy<Value = TateRational> {
    (tate_poly(), any::<bool>()).prop_map(|(p, geometric)| {
        let r = TateRational::from_poly(p);
        if geometric {
            r.mul(&TateRational::geometric(2))
        } else {
            r
        }
    })
}

/// Series with zero constant term.
pub fn series(vertices: usize, cutoff: u32) -> impl Strategy<Value = GradedSeries> {
    let dims = DimVector::all_nonzero_up_to(vertices, cutoff);
    prop::collection::vec((prop::sample::select(dims), coefficient()), 0..4)
        .prop_map(move |terms| GradedSeries::from_terms(vertices, cutoff, terms))
}

pub fn generators(vertices: usize, cutoff: u32) -> impl Strategy<Value = Vec<Generator>> {
    let dims = DimVector::all_nonzero_up_to(vertices, cutoff);
    prop::collection::vec((-3i64..=3, prop::sample::select(dims), 0i64..=2), 0..4).prop_map(
        |gens| {
            gens.into_iter()
                .map(|(t_exp, d, multiplicity)| Generator {
                    t_exp,
                    d,
                    multiplicity,
                })
                .collect()
        },
    )
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

pub fn check_exp_log_roundtrip(f: &GradedSeries) -> Result<(), TestCaseError> {
    let e = f.super_exp().map_err(|e| fail(e.to_string()))?;
    let back = e.super_log().map_err(|e| fail(e.to_string()))?;
    prop_assert_eq!(&back, f);
    let again = back.super_exp().map_err(|e| fail(e.to_string()))?;
    prop_assert_eq!(again, e);
    Ok(())
}

pub fn check_exp_additive(f: &GradedSeries, g: &GradedSeries) -> Result<(), TestCaseError> {
    let sum = f.add(g).map_err(|e| fail(e.to_string()))?;
    let lhs = sum.super_exp().map_err(|e| fail(e.to_string()))?;
    let ef = f.super_exp().map_err(|e| fail(e.to_string()))?;
    let eg = g.super_exp().map_err(|e| fail(e.to_string()))?;
    prop_assert_eq!(lhs, ef.mul(&eg).map_err(|e| fail(e.to_string()))?);
    Ok(())
}

pub fn check_product_vs_psi(
    vertices: usize,
    cutoff: u32,
    gens: &[Generator],
) -> Result<(), TestCaseError> {
    let product =
        sym_generators_product(vertices, gens, cutoff).map_err(|e| fail(e.to_string()))?;
    let f = GradedSeries::from_terms(
        vertices,
        cutoff,
        gens.iter().map(|g| {
            (
                g.d.clone(),
                TateRational::t_pow(g.t_exp).scale(&Rational::from_integer(g.multiplicity.into())),
            )
        }),
    );
    let e = f.super_exp().map_err(|e| fail(e.to_string()))?;
    prop_assert!(e.is_integral());
    prop_assert_eq!(product, e);
    Ok(())
}

/// Orbit sizes add up to the number of representations, and each orbit has
/// size `|G| / |Aut(ρ)|`.
pub fn check_orbit_stabilizer(q: &Quiver, d: &DimVector, p: u32) -> Result<(), TestCaseError> {
    let caps = Caps::default();
    let space = RepSpace::new(q, d, p, &caps).map_err(|e| fail(e.to_string()))?;
    let orbits = orbit_decomposition(&space, &caps).map_err(|e| fail(e.to_string()))?;
    let total: u64 = orbits.iter().map(|o| o.size).sum();
    prop_assert_eq!(total, space.size());
    let g = group_order(d, p).map_err(|e| fail(e.to_string()))?;
    for o in &orbits {
        let rho = space.decode(o.representative);
        let aut = automorphism_count(&rho, &caps).map_err(|e| fail(e.to_string()))?;
        prop_assert_eq!(
            o.size as u128 * aut as u128,
            g,
            "orbit of {}",
            o.representative
        );
        if end_algebra(&rho)
            .size()
            .is_some_and(|s| s <= SCAN_END_LIMIT)
        {
            let fast = is_absolutely_indecomposable(&rho);
            let scan = is_absolutely_indecomposable_by_scan(&rho, &caps)
                .map_err(|e| fail(e.to_string()))?;
            prop_assert_eq!(fast, scan, "orbit of {}", o.representative);
        }
    }
    let report = count_abs_indec_classes(q, d, p, &caps).map_err(|e| fail(e.to_string()))?;
    prop_assert_eq!(report.orbit_count_all, orbits.len() as u64);
    prop_assert_eq!(report.total_reps, space.size());
    Ok(())
}

pub fn check_orientation_independence(
    q: &Quiver,
    d: &DimVector,
    arrow: usize,
) -> Result<(), TestCaseError> {
    let oracle = OracleKac::default();
    let a = oracle
        .kac_polynomial(q, d)
        .map_err(|e| fail(e.to_string()))?;
    let reversed = q.reverse_arrow(arrow);
    let b = oracle
        .kac_polynomial(&reversed, d)
        .map_err(|e| fail(e.to_string()))?;
    prop_assert_eq!(a, b);
    Ok(())
}

pub fn check_kac_nonnegative(q: &Quiver, d: &DimVector) -> Result<(), TestCaseError> {
    let a = OracleKac::default()
        .kac_polynomial(q, d)
        .map_err(|e| fail(e.to_string()))?;
    prop_assert!(a.terms().all(|(_, c)| c >= 0), "{}", a);
    Ok(())
}

/// The interpolated polynomial predicts the count at the next prime too.
pub fn check_interpolation_stable(q: &Quiver, d: &DimVector) -> Result<(), TestCaseError> {
    let oracle = OracleKac::default();
    let (a, primes) = oracle.compute(q, d).map_err(|e| fail(e.to_string()))?;
    let next = *smallest_primes(primes.len() + 1).last().expect("nonempty");
    let count =
        count_abs_indec_classes(q, d, next, &Caps::default()).map_err(|e| fail(e.to_string()))?;
    prop_assert_eq!(a.eval(next as i64), count.abs_indec_orbit_count as i128);
    Ok(())
}

/// Random closed words on `q` (every vertex must carry a cycle for this to succeed).
pub fn random_potential(q: &Arc<Quiver>, words: &[(Vec<usize>, i64)]) -> Potential {
    let mut w = Potential::zero(q.clone());
    for (word, c) in words {
        if !word.is_empty() && is_closed_walk(q, word) {
            w.add_word(word, Rational::from_integer((*c).into()))
                .expect("closed word");
        }
    }
    w
}

pub fn is_closed_walk(q: &Quiver, word: &[usize]) -> bool {
    let ok = word
        .windows(2)
        .all(|w| q.arrow(w[0]).target == q.arrow(w[1]).source);
    ok && q.arrow(word[word.len() - 1]).target == q.arrow(word[0]).source
}

/// A walk following arrows from `start_arrow`, choosing successors by `choices`.
pub fn walk(q: &Quiver, start_arrow: usize, choices: &[usize]) -> Vec<usize> {
    let mut word = vec![start_arrow];
    for &c in choices {
        let here = q.arrow(*word.last().expect("nonempty")).target;
        let next: Vec<usize> = (0..q.arrow_count())
            .filter(|&a| q.arrow(a).source == here)
            .collect();
        if next.is_empty() {
            break;
        }
        word.push(next[c % next.len()]);
    }
    word
}

pub fn necklace_is_zero(w: &Potential) -> bool {
    let n: NCPoly = w.necklace_check();
    n.is_zero()
}
