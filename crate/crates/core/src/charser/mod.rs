//! Characters of Tate-type graded vector spaces.
//!
//! A character is a rational function of `t = q^{1/2}`. Conventions:
//! `L^{k/2} ↦ t^k`, a class in cohomological degree `j` contributes `t^j`,
//! and the shift `V[k]` multiplies the character by `t^{-k}`. Series over
//! dimension vectors are truncated at a total degree, and the plethystic
//! exponential uses the signed Adams operation `t ↦ −(−t)^k`, so odd powers
//! of `t` behave as exterior generators.

mod poly;
mod rational;
mod series;

use serde::ser::{SerializeMap, SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use poly::TatePoly;
pub use rational::TateRational;
pub use series::{sym_generators_product, Generator, GradedSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("the series has a nonzero constant term")]
    NonzeroConstant,
    #[error("the series does not have constant term 1")]
    ConstantNotOne,
    #[error("series over {0} and {1} vertices")]
    VertexMismatch(usize, usize),
    #[error("negative generator multiplicity {0}")]
    NegativeMultiplicity(i64),
}

impl Serialize for TatePoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (j, c) in self.terms() {
            map.serialize_entry(&format!("t^{j}"), &c.to_string())?;
        }
        map.end()
    }
}

impl Serialize for TateRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TateRational", 2)?;
        st.serialize_field("num", self.numerator())?;
        st.serialize_field("den", self.denominator())?;
        st.end()
    }
}

impl Serialize for GradedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            d: &'a [u32],
            coeff: &'a TateRational,
        }
        let zero = vec![0u32; self.vertices()];
        let mut seq = s.serialize_seq(None)?;
        if !self.constant().is_zero() {
            seq.serialize_element(&Term {
                d: &zero,
                coeff: self.constant(),
            })?;
        }
        for (d, c) in self.terms() {
            seq.serialize_element(&Term { d: &d.0, coeff: c })?;
        }
        seq.end()
    }
}
