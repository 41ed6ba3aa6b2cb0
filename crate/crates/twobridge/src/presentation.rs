//! The two-generator presentation of a two-bridge link group and the
//! rewritten presentation of its Alexander subgroup.
//!
//! The link group is `< a, b | w >` with `w = a^e0 b^e1 ... a^e(2p-2) b^e(2p-1)`.
//! Rewriting the relator over the coset representatives a^k turns w into a
//! word R_0 in the generators S_k = a^k b a^(-k-1); every other relator is a
//! subscript shift of R_0. The j-th letter of R_0 has exponent eps(2j-1) and
//! subscript sigma(2j - theta), where theta is 1 for a positive letter and 0
//! for a negative one.

use std::fmt;

use crate::error::Result;
use crate::pairs::CoprimePair;
use crate::words::{Letter, SWord};

/// Generator of the two-bridge group presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    A,
    B,
}

/// The single relator `w` of the group presentation, stored as alternating
/// a/b letters with exponents +-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoGeneratorPresentation {
    letters: Vec<(Gen, i8)>,
}

impl TwoGeneratorPresentation {
    pub fn letters(&self) -> &[(Gen, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&(_, e)| e as i64).sum()
    }
}

impl fmt::Display for TwoGeneratorPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = match g {
                Gen::A => "a",
                Gen::B => "b",
            };
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^-1")?;
            }
        }
        Ok(())
    }
}

/// Relator of `pi(L(p/q)) = < a, b | w >`: length 2p, alternating a and b,
/// exponents given by the sign sequence.
pub fn schubert_word(pair: &CoprimePair) -> TwoGeneratorPresentation {
    let mut letters = Vec::with_capacity(2 * pair.p() as usize);
    for i in 0..2 * pair.p() {
        let g = if i % 2 == 0 { Gen::A } else { Gen::B };
        letters.push((g, pair.epsilon(i) as i8));
    }
    TwoGeneratorPresentation { letters }
}

/// The rewritten relator R_0 of the Alexander subgroup: p letters, the j-th
/// (1-indexed) being S_sigma(2j-1)^+1 when eps(2j-1) = +1 and
/// S_sigma(2j)^-1 when eps(2j-1) = -1.
pub fn rewrite_r0(pair: &CoprimePair) -> SWord {
    let sigma = pair.sigma_table();
    let mut letters = Vec::with_capacity(pair.p() as usize);
    for j in 1..=pair.p() {
        let eta = pair.epsilon(2 * j - 1) as i8;
        let f = if eta == 1 { 2 * j - 1 } else { 2 * j };
        letters.push(Letter::new(sigma[f as usize], eta));
    }
    SWord::from_letters(letters)
}

/// R_k: R_0 with every subscript shifted by k.
pub fn relator(pair: &CoprimePair, k: i64) -> SWord {
    rewrite_r0(pair).shift(k)
}

/// Minimal and maximal subscripts (m, M) occurring in R_0.
pub fn subscript_bounds(pair: &CoprimePair) -> (i64, i64) {
    let r0 = rewrite_r0(pair);
    (
        r0.min_subscript().expect("R_0 is nonempty"),
        r0.max_subscript().expect("R_0 is nonempty"),
    )
}

/// The truncation Y_n of the Alexander subgroup presentation: generators
/// S_(m-n) .. S_(M+n-1) and relators R_(-n) .. R_(n-1). Y_0 is free.
#[derive(Debug, Clone)]
pub struct ChainPresentation {
    pub level: i64,
    pub gen_min: i64,
    pub gen_max: i64,
    pub relators: Vec<SWord>,
    pub m: i64,
    pub big_m: i64,
}

impl ChainPresentation {
    pub fn generator_count(&self) -> usize {
        (self.gen_max - self.gen_min + 1) as usize
    }

    pub fn generators(&self) -> impl Iterator<Item = i64> {
        self.gen_min..=self.gen_max
    }
}

pub fn chain_presentation(pair: &CoprimePair, n: i64) -> Result<ChainPresentation> {
    assert!(n >= 0, "chain level must be non-negative");
    let (m, big_m) = subscript_bounds(pair);
    let relators = (-n..n).map(|k| relator(pair, k)).collect();
    Ok(ChainPresentation {
        level: n,
        gen_min: m - n,
        gen_max: big_m + n - 1,
        relators,
        m,
        big_m,
    })
}

/// Literal coset-table rewriting of a word in a, b over the representatives
/// a^k: a-letters only move the coset, each b^(+-1) emits one S-letter. Slow
/// but direct; used to validate the closed form of R_0.
#[cfg(test)]
pub(crate) fn schreier_rewrite(word: &TwoGeneratorPresentation) -> SWord {
    let mut out = SWord::empty();
    let mut coset: i64 = 0;
    for &(g, e) in word.letters() {
        match (g, e) {
            (Gen::A, 1) => coset += 1,
            (Gen::A, -1) => coset -= 1,
            (Gen::B, 1) => {
                out.push(Letter::new(coset, 1));
                coset += 1;
            }
            (Gen::B, -1) => {
                coset -= 1;
                out.push(Letter::new(coset, -1));
            }
            _ => unreachable!(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::canonical_pairs;

    fn pair(p: i64, q: i64) -> CoprimePair {
        CoprimePair::normalize(p, q).unwrap()
    }

    #[test]
    fn schubert_word_4_1() {
        let w = schubert_word(&pair(4, 1));
        assert_eq!(w.to_string(), "a b a b a^-1 b^-1 a^-1 b^-1");
    }

    #[test]
    fn schubert_word_structure() {
        for a in canonical_pairs(60, true) {
            let w = schubert_word(&a);
            assert_eq!(w.len(), 2 * a.p() as usize);
            assert_eq!(w.exponent_sum(), 0, "{a}");
            for (i, &(g, _)) in w.letters().iter().enumerate() {
                assert_eq!(g == Gen::A, i % 2 == 0);
            }
        }
    }

    #[test]
    fn r0_17_13_matches_listing() {
        let want: SWord =
            "S_1 S_1 S_0^-1 S_0^-1 S_1 S_1 S_0^-1 S_0^-1 S_0^-1 S_-1 S_-1 S_0^-1 S_0^-1 S_-1 S_-1 S_0^-1 S_0^-1"
                .parse()
                .unwrap();
        assert_eq!(rewrite_r0(&pair(17, 13)), want);
        let v = rewrite_r0(&pair(17, 13)).abelianize();
        assert_eq!((v.coeff(-1), v.coeff(0), v.coeff(1)), (4, -9, 4));
    }

    #[test]
    fn shifted_relators_17_13() {
        let r_minus: SWord =
            "S_0 S_0 S_-1^-1 S_-1^-1 S_0 S_0 S_-1^-1 S_-1^-1 S_-1^-1 S_-2 S_-2 S_-1^-1 S_-1^-1 S_-2 S_-2 S_-1^-1 S_-1^-1"
                .parse()
                .unwrap();
        let r_plus: SWord =
            "S_2 S_2 S_1^-1 S_1^-1 S_2 S_2 S_1^-1 S_1^-1 S_1^-1 S_0 S_0 S_1^-1 S_1^-1 S_0 S_0 S_1^-1 S_1^-1"
                .parse()
                .unwrap();
        assert_eq!(relator(&pair(17, 13), -1), r_minus);
        assert_eq!(relator(&pair(17, 13), 1), r_plus);
    }

    #[test]
    fn torus_orientation_relator_pattern() {
        // Exactly one of q = 1, 3 yields relators of the shape
        // S_(k+1)^2 S_k^-2; enumerate to find it.
        let mut found = Vec::new();
        for q in [1i64, 3] {
            let r0 = rewrite_r0(&pair(4, q)).free_reduce();
            let pattern: SWord = "S_1 S_1 S_0^-1 S_0^-1".parse().unwrap();
            if r0 == pattern {
                found.push(q);
            }
        }
        assert_eq!(found, vec![3]);
        let v = rewrite_r0(&pair(4, 3)).abelianize();
        assert_eq!((v.coeff(0), v.coeff(1)), (-2, 2));
    }

    #[test]
    fn closed_form_matches_literal_rewriting() {
        for a in canonical_pairs(60, true) {
            let literal = schreier_rewrite(&schubert_word(&a));
            assert_eq!(rewrite_r0(&a), literal, "{a}");
        }
    }

    #[test]
    fn r0_length_and_signs() {
        for a in canonical_pairs(200, false) {
            let r0 = rewrite_r0(&a);
            assert_eq!(r0.len(), a.p() as usize, "{a}");
            for (j, l) in r0.letters().iter().enumerate() {
                let j = j as i64 + 1;
                assert_eq!(l.exponent as i64, a.epsilon(2 * j - 1), "{a} letter {j}");
            }
        }
    }

    #[test]
    fn subscript_spread_equals_continued_fraction_length() {
        for a in canonical_pairs(200, true) {
            let (m, big_m) = subscript_bounds(&a);
            let cf = a.even_continued_fraction();
            assert_eq!((big_m - m) as usize, cf.len(), "{a}");
        }
    }

    #[test]
    fn chain_presentation_17_13() {
        let a = pair(17, 13);
        let y0 = chain_presentation(&a, 0).unwrap();
        assert_eq!((y0.gen_min, y0.gen_max), (-1, 0));
        assert!(y0.relators.is_empty());
        let y1 = chain_presentation(&a, 1).unwrap();
        assert_eq!((y1.gen_min, y1.gen_max), (-2, 1));
        assert_eq!(y1.generator_count(), 4);
        assert_eq!(y1.relators.len(), 2);
        assert_eq!(y1.relators[0], relator(&a, -1));
        assert_eq!(y1.relators[1], relator(&a, 0));
    }

    #[test]
    fn chain_presentation_counts() {
        for a in canonical_pairs(40, false) {
            let (m, big_m) = subscript_bounds(&a);
            for n in 0..4 {
                let y = chain_presentation(&a, n).unwrap();
                assert_eq!(
                    y.generator_count() as i64,
                    2 * n + (big_m - m),
                    "{a} level {n}"
                );
                assert_eq!(y.relators.len() as i64, 2 * n);
                for r in &y.relators {
                    assert!(r.min_subscript().unwrap() >= y.gen_min);
                    assert!(r.max_subscript().unwrap() <= y.gen_max);
                }
            }
        }
    }
}
