//! Words over the indexed alphabet {S_k} with free and cyclic reduction.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One letter S_k^(+-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub subscript: i64,
    pub exponent: i8,
}

impl Letter {
    pub fn new(subscript: i64, exponent: i8) -> Self {
        assert!(exponent == 1 || exponent == -1);
        Letter { subscript, exponent }
    }

    pub fn inverse(&self) -> Letter {
        Letter { subscript: self.subscript, exponent: -self.exponent }
    }
}

/// A word in the free group on {S_k}. The stored form may be unreduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SWord {
    letters: Vec<Letter>,
}

impl SWord {
    pub fn empty() -> Self {
        SWord { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        SWord { letters }
    }

    /// Builds a word from (subscript, exponent) pairs.
    pub fn from_pairs(pairs: &[(i64, i8)]) -> Self {
        SWord {
            letters: pairs.iter().map(|&(s, e)| Letter::new(s, e)).collect(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &SWord) -> SWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        SWord { letters }
    }

    pub fn invert(&self) -> SWord {
        SWord {
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    pub fn power(&self, n: u32) -> SWord {
        let mut letters = Vec::with_capacity(self.letters.len() * n as usize);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        SWord { letters }
    }

    /// Adds k to every subscript.
    pub fn shift(&self, k: i64) -> SWord {
        SWord {
            letters: self
                .letters
                .iter()
                .map(|l| Letter::new(l.subscript + k, l.exponent))
                .collect(),
        }
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> SWord {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last().is_some_and(|t| *t == l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        SWord { letters: stack }
    }

    /// Freely reduces, then strips cancelling first/last pairs.
    pub fn cyclic_reduce(&self) -> SWord {
        let mut w = self.free_reduce();
        while w.letters.len() >= 2
            && w.letters[0] == w.letters[w.letters.len() - 1].inverse()
        {
            w.letters.pop();
            w.letters.remove(0);
        }
        w
    }

    /// True when the cyclic reductions are rotations of each other, i.e. the
    /// words are conjugate in the free group.
    pub fn cyclically_equal(&self, other: &SWord) -> bool {
        let u = self.cyclic_reduce();
        let v = other.cyclic_reduce();
        if u.len() != v.len() {
            return false;
        }
        if u.is_empty() {
            return true;
        }
        let doubled: Vec<Letter> = u.letters.iter().chain(u.letters.iter()).copied().collect();
        doubled.windows(v.len()).any(|w| w == v.letters.as_slice())
    }

    /// Signed letter counts per subscript.
    pub fn abelianize(&self) -> AbelianVector {
        let mut v = AbelianVector::zero();
        for l in &self.letters {
            v.add_term(l.subscript, l.exponent as i64);
        }
        v
    }

    pub fn min_subscript(&self) -> Option<i64> {
        self.letters.iter().map(|l| l.subscript).min()
    }

    pub fn max_subscript(&self) -> Option<i64> {
        self.letters.iter().map(|l| l.subscript).max()
    }

    /// True when some letter has the given subscript (raw letters, no
    /// free reduction applied).
    pub fn mentions(&self, subscript: i64) -> bool {
        self.letters.iter().any(|l| l.subscript == subscript)
    }
}

impl fmt::Display for SWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.exponent == 1 {
                write!(f, "S_{}", l.subscript)?;
            } else {
                write!(f, "S_{}^-1", l.subscript)?;
            }
        }
        Ok(())
    }
}

impl FromStr for SWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(SWord::empty());
        }
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let rest = tok
                .strip_prefix("S_")
                .ok_or_else(|| Error::Parse(format!("bad letter {tok:?}")))?;
            let (sub, exp) = match rest.split_once('^') {
                None => (rest, 1i8),
                Some((sub, "1")) => (sub, 1),
                Some((sub, "-1")) => (sub, -1),
                Some((_, e)) => return Err(Error::Parse(format!("bad exponent {e:?}"))),
            };
            let sub: i64 = sub
                .parse()
                .map_err(|_| Error::Parse(format!("bad subscript in {tok:?}")))?;
            letters.push(Letter::new(sub, exp));
        }
        Ok(SWord { letters })
    }
}

/// Element of the free abelian group on {S_k}: finitely supported integer
/// coefficients per subscript.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AbelianVector {
    coeffs: BTreeMap<i64, i64>,
}

impl AbelianVector {
    pub fn zero() -> Self {
        AbelianVector { coeffs: BTreeMap::new() }
    }

    pub fn add_term(&mut self, subscript: i64, count: i64) {
        let e = self.coeffs.entry(subscript).or_insert(0);
        *e += count;
        if *e == 0 {
            self.coeffs.remove(&subscript);
        }
    }

    pub fn coeff(&self, subscript: i64) -> i64 {
        self.coeffs.get(&subscript).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_min(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn support_max(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&k, &v)| (k, v))
    }

    pub fn add(&self, other: &AbelianVector) -> AbelianVector {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_term(k, v);
        }
        out
    }

    pub fn sub(&self, other: &AbelianVector) -> AbelianVector {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_term(k, -v);
        }
        out
    }

    pub fn scale(&self, c: i64) -> AbelianVector {
        let mut out = AbelianVector::zero();
        if c != 0 {
            for (k, v) in self.iter() {
                out.add_term(k, c * v);
            }
        }
        out
    }

    pub fn shift(&self, k: i64) -> AbelianVector {
        AbelianVector {
            coeffs: self.iter().map(|(s, v)| (s + k, v)).collect(),
        }
    }
}
