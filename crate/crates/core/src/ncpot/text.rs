//! Text format for potentials and path-algebra elements.
//!
//! A term is `coeff * word` where `word` is arrow ids joined by `.`; terms are
//! joined by ` + ` / ` - `. The `*` must stand alone between spaces since
//! generated arrow ids (`a*`) contain the character. Lazy paths are `e_<vertex>`.

use std::sync::Arc;

use num_traits::{One, Signed};

use super::{NCPoly, Path, Potential, PotentialError};
use crate::quiver::Quiver;
use crate::Rational;

struct Term {
    coeff: Rational,
    word: Word,
}

enum Word {
    Arrows(Vec<usize>),
    Lazy(usize),
}

fn parse_terms(q: &Quiver, s: &str, right_to_left: bool) -> Result<Vec<Term>, PotentialError> {
    let tokens: Vec<&str> = s.split_whitespace().collect();
    if tokens.len() == 1 && tokens[0] == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < tokens.len() {
        let mut sign = Rational::one();
        match tokens[i] {
            "+" => i += 1,
            "-" => {
                sign = -sign;
                i += 1;
            }
            _ if !first => {
                return Err(PotentialError::Parse(format!(
                    "expected `+` or `-` before `{}`",
                    tokens[i]
                )))
            }
            _ => {}
        }
        first = false;
        let tok = *tokens
            .get(i)
            .ok_or_else(|| PotentialError::Parse("expression ends with a sign".into()))?;
        let (coeff, word_tok) = if tokens.get(i + 1) == Some(&"*") {
            let c: Rational = tok
                .parse()
                .map_err(|_| PotentialError::Parse(format!("bad coefficient `{tok}`")))?;
            let w = *tokens
                .get(i + 2)
                .ok_or_else(|| PotentialError::Parse("missing word after `*`".into()))?;
            i += 3;
            (c, w)
        } else {
            i += 1;
            (Rational::one(), tok)
        };
        out.push(Term {
            coeff: sign * coeff,
            word: parse_word(q, word_tok, right_to_left)?,
        });
    }
    Ok(out)
}

fn parse_word(q: &Quiver, tok: &str, right_to_left: bool) -> Result<Word, PotentialError> {
    if q.arrow_by_id(tok).is_none() {
        if let Some(v) = tok.strip_prefix("e_").and_then(|v| q.vertex(v)) {
            return Ok(Word::Lazy(v));
        }
    }
    let mut arrows = tok
        .split('.')
        .map(|id| {
            q.arrow_by_id(id)
                .ok_or_else(|| PotentialError::Parse(format!("unknown arrow `{id}` in `{tok}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if right_to_left {
        arrows.reverse();
    }
    Ok(Word::Arrows(arrows))
}

pub(super) fn parse_potential(
    quiver: Arc<Quiver>,
    s: &str,
    rtl: bool,
) -> Result<Potential, PotentialError> {
    let terms = parse_terms(&quiver, s, rtl)?;
    let mut w = Potential::zero(quiver);
    for t in terms {
        match t.word {
            Word::Arrows(a) => w.add_word(&a, t.coeff)?,
            Word::Lazy(_) => {
                return Err(PotentialError::Parse(
                    "a potential has no lazy paths".into(),
                ))
            }
        }
    }
    Ok(w)
}

pub(super) fn parse_ncpoly(
    quiver: Arc<Quiver>,
    s: &str,
    rtl: bool,
) -> Result<NCPoly, PotentialError> {
    let terms = parse_terms(&quiver, s, rtl)?;
    let mut p = NCPoly::zero(quiver.clone());
    for t in terms {
        let path = match t.word {
            Word::Arrows(a) => Path::from_arrows(&quiver, a)?,
            Word::Lazy(v) => Path::lazy(v),
        };
        p.add_term(path, t.coeff);
    }
    Ok(p)
}

fn join_terms<'a>(terms: impl Iterator<Item = (String, &'a Rational)>) -> String {
    let mut out = String::new();
    for (word, c) in terms {
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&format!("{mag} * {word}"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn arrows_text(q: &Quiver, arrows: &[usize]) -> String {
    arrows
        .iter()
        .map(|&a| q.arrow(a).id.as_str())
        .collect::<Vec<_>>()
        .join(".")
}

pub(super) fn render_potential(w: &Potential) -> String {
    let q = w.quiver();
    join_terms(
        w.terms()
            .map(|(word, c)| (arrows_text(q, word.arrows()), c)),
    )
}

pub(super) fn render_ncpoly(p: &NCPoly) -> String {
    let q = p.quiver();
    join_terms(p.terms().map(|(path, c)| {
        let word = if path.is_lazy() {
            format!("e_{}", q.vertices()[path.start()])
        } else {
            arrows_text(q, path.arrows())
        };
        (word, c)
    }))
}
