//! Canonical co-prime fractions p/q and their continued-fraction expansions.
//!
//! A two-bridge link is indexed by a fraction p/q with p >= 2, q odd and
//! |q| < p. `CoprimePair` enforces that canonical form. The sign sequence
//! `epsilon` and its partial sums `sigma` drive everything downstream: the
//! two-generator relator, the rewritten relators of the Alexander subgroup
//! and the cycle graph gradings.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A canonical fraction p/q: p >= 2, q odd, 0 < |q| < p, gcd(p, q) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoprimePair {
    p: i64,
    q: i64,
}

impl CoprimePair {
    /// Reduces an arbitrary fraction to canonical form.
    ///
    /// q is first reduced mod 2p into (-p, p). An even q can only occur for
    /// odd p (a knot); adding or subtracting p then lands on the odd
    /// representative of the same knot.
    pub fn normalize(p: i64, q: i64) -> Result<Self> {
        if p < 2 {
            return Err(Error::NotTwoBridge(p));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        if q.rem_euclid(p) == 0 {
            return Err(Error::DegenerateFraction);
        }
        let mut q = q.rem_euclid(2 * p);
        if q >= p {
            q -= 2 * p;
        }
        if q % 2 == 0 {
            // gcd(p, q) = 1 with q even forces p odd, so q +- p is odd.
            q += if q < 0 { p } else { -p };
        }
        debug_assert!(q % 2 != 0 && -p < q && q < p && q != 0);
        Ok(CoprimePair { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// A knot has odd p; even p gives a two-component link.
    pub fn is_knot(&self) -> bool {
        self.p % 2 == 1
    }

    /// Equivalence as oriented links: q = q' or qq' = 1 (mod 2p).
    pub fn oriented_equivalent(&self, other: &CoprimePair) -> bool {
        if self.p != other.p {
            return false;
        }
        let m = 2 * self.p;
        (self.q - other.q).rem_euclid(m) == 0 || (self.q * other.q - 1).rem_euclid(m) == 0
    }

    /// Equivalence as unoriented links: q = q' or qq' = 1 (mod p).
    pub fn unoriented_equivalent(&self, other: &CoprimePair) -> bool {
        if self.p != other.p {
            return false;
        }
        let m = self.p;
        (self.q - other.q).rem_euclid(m) == 0 || (self.q * other.q - 1).rem_euclid(m) == 0
    }

    /// The mirror image p/(-q).
    pub fn mirror(&self) -> CoprimePair {
        CoprimePair::normalize(self.p, -self.q).expect("mirror of canonical pair is canonical")
    }

    /// Reverses the orientation of one component of a two-component link,
    /// which replaces q by q -+ p. Errors on knots.
    pub fn reverse_component(&self) -> Result<CoprimePair> {
        if self.is_knot() {
            return Err(Error::KnotHasOneComponent);
        }
        let q = if self.q > 0 { self.q - self.p } else { self.q + self.p };
        CoprimePair::normalize(self.p, q)
    }

    /// Sign sequence `(-1)^floor(iq/p)`, defined for every integer i.
    pub fn epsilon(&self, i: i64) -> i64 {
        let f = (i * self.q).div_euclid(self.p);
        if f.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Partial sums of epsilon: sum of eps_0..eps_{i-1} for i > 0, zero at
    /// i = 0 and the sum eps_i..eps_{-1} for i < 0.
    pub fn sigma(&self, i: i64) -> i64 {
        if i == 0 {
            return 0;
        }
        if i > 0 {
            // eps has period 2p and sigma(2p) = 0.
            let r = i.rem_euclid(2 * self.p);
            (0..r).map(|j| self.epsilon(j)).sum()
        } else {
            (i..0).map(|j| self.epsilon(j)).sum()
        }
    }

    /// Prefix sums sigma_0..sigma_{2p} as a table.
    pub fn sigma_table(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(2 * self.p as usize + 1);
        let mut s = 0;
        out.push(0);
        for i in 0..2 * self.p {
            s += self.epsilon(i);
            out.push(s);
        }
        out
    }

    /// Even continued fraction of p/(p-q) (for q < 0 the equivalent
    /// representative q + 2p is used so the expanded value has modulus > 1).
    pub fn even_continued_fraction(&self) -> EvenContinuedFraction {
        let denom = if self.q > 0 { self.p - self.q } else { -self.p - self.q };
        let mut entries = Vec::new();
        let (mut a, mut b) = (self.p, denom);
        loop {
            let k = round_div(a, 2 * b);
            entries.push(2 * k);
            let r = a - 2 * k * b;
            if r == 0 {
                break;
            }
            a = b;
            b = r;
        }
        debug_assert!(entries.iter().all(|&e| e != 0 && e % 2 == 0));
        EvenContinuedFraction { entries }
    }
}

impl fmt::Display for CoprimePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for CoprimePair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (ps, qs) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected \"p/q\", got {s:?}")))?;
        let p: i64 = ps
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator {ps:?}")))?;
        let q: i64 = qs
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator {qs:?}")))?;
        CoprimePair::normalize(p, q)
    }
}

/// Nearest integer to a/b with ties rounded away from zero.
fn round_div(a: i64, b: i64) -> i64 {
    let (a, b) = if b < 0 { (-a, -b) } else { (a, b) };
    let q = a.div_euclid(b);
    let r = a.rem_euclid(b);
    match (2 * r).cmp(&b) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        // x = q + 1/2: away from zero means up for x > 0, down for x < 0.
        std::cmp::Ordering::Equal => {
            if q >= 0 {
                q + 1
            } else {
                q
            }
        }
    }
}

/// An even continued fraction [2k_1, ..., 2k_n].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenContinuedFraction {
    entries: Vec<i64>,
}

impl EvenContinuedFraction {
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exact value as a reduced fraction (numerator, denominator), den > 0.
    pub fn eval(&self) -> (i128, i128) {
        let (mut num, mut den): (i128, i128) = (1, 0);
        for &e in self.entries.iter().rev() {
            // [e, tail] = e + 1/tail
            let (n2, d2) = (e as i128 * num + den, num);
            num = n2;
            den = d2;
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        (num, den)
    }

    pub fn all_positive(&self) -> bool {
        self.entries.iter().all(|&e| e > 0)
    }
}

impl fmt::Display for EvenContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// All canonical pairs with 2 <= p <= max_p. Positive q only unless
/// `both_signs` is set.
pub fn canonical_pairs(max_p: i64, both_signs: bool) -> Vec<CoprimePair> {
    let mut out = Vec::new();
    for p in 2..=max_p {
        for q in 1..p {
            if q % 2 == 1 && p.gcd(&q) == 1 {
                out.push(CoprimePair { p, q });
                if both_signs {
                    out.push(CoprimePair { p, q: -q });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_canonical_inputs() {
        let a = CoprimePair::normalize(17, 13).unwrap();
        assert_eq!((a.p(), a.q()), (17, 13));
        let b = CoprimePair::normalize(4, 5).unwrap();
        assert_eq!((b.p(), b.q()), (4, -3));
        let c = CoprimePair::normalize(2, 1).unwrap();
        assert_eq!((c.p(), c.q()), (2, 1));
    }

    #[test]
    fn normalize_even_q_lands_in_equivalence_class() {
        // Oracle: enumerate the odd representatives of the class of 30 mod 17
        // (knot classification is mod p together with inversion).
        let got = CoprimePair::normalize(17, 30).unwrap();
        let mut class = Vec::new();
        for x in -16i64..17 {
            if x % 2 != 0 && ((x - 30).rem_euclid(17) == 0 || (x * 30 - 1).rem_euclid(17) == 0) {
                class.push(x);
            }
        }
        assert!(class.contains(&got.q()), "{} not in {class:?}", got.q());
        assert_eq!(got.q(), 13);
    }

    #[test]
    fn normalize_rejects_degenerate() {
        assert!(matches!(CoprimePair::normalize(1, 1), Err(Error::NotTwoBridge(1))));
        assert!(matches!(CoprimePair::normalize(0, 1), Err(Error::NotTwoBridge(0))));
        assert!(matches!(
            CoprimePair::normalize(9, 6),
            Err(Error::NotCoprime { .. })
        ));
        assert!(CoprimePair::normalize(5, 10).is_err());
    }

    #[test]
    fn oriented_equivalence_modular_inverse() {
        let a = CoprimePair::normalize(17, 13).unwrap();
        assert!(a.oriented_equivalent(&a));
        // 13 * (-13) = -169 = 1 (mod 34)
        let b = CoprimePair::normalize(17, -13).unwrap();
        assert_eq!((-13i64 * 13 - 1).rem_euclid(34), 0);
        assert!(a.oriented_equivalent(&b));
        let c = CoprimePair::normalize(19, 13).unwrap();
        assert!(!a.oriented_equivalent(&c));
    }

    #[test]
    fn equivalence_relation_properties() {
        let pairs = canonical_pairs(60, true);
        for p in [15i64, 16, 17, 24, 33] {
            let fam: Vec<_> = pairs.iter().filter(|a| a.p() == p).collect();
            for a in &fam {
                assert!(a.oriented_equivalent(a));
                for b in &fam {
                    assert_eq!(a.oriented_equivalent(b), b.oriented_equivalent(a));
                    if a.oriented_equivalent(b) {
                        assert!(a.unoriented_equivalent(b));
                    }
                    for c in &fam {
                        if a.oriented_equivalent(b) && b.oriented_equivalent(c) {
                            assert!(a.oriented_equivalent(c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mirror_is_involution() {
        for a in canonical_pairs(40, true) {
            let m = a.mirror();
            assert_eq!(m.mirror(), a);
        }
        let a = CoprimePair::normalize(17, 13).unwrap();
        assert_eq!(a.mirror().q(), -13);
        let b = CoprimePair::normalize(4, 1).unwrap();
        assert_eq!(b.mirror().q(), -1);
    }

    #[test]
    fn reverse_component_examples() {
        let a = CoprimePair::normalize(4, 1).unwrap();
        assert_eq!(a.reverse_component().unwrap().q(), -3);
        let b = CoprimePair::normalize(8, 3).unwrap();
        assert_eq!(b.reverse_component().unwrap().q(), -5);
        let knot = CoprimePair::normalize(17, 13).unwrap();
        assert!(matches!(knot.reverse_component(), Err(Error::KnotHasOneComponent)));
    }

    #[test]
    fn epsilon_and_sigma_basics() {
        for a in canonical_pairs(50, true) {
            assert_eq!(a.epsilon(0), 1);
            let table = a.sigma_table();
            for i in 0..2 * a.p() {
                assert_eq!(table[i as usize + 1] - table[i as usize], a.epsilon(i));
                assert_eq!(a.sigma(i), table[i as usize]);
                assert!(a.sigma(i).abs() <= a.p());
            }
            assert_eq!(a.sigma(2 * a.p()), 0);
        }
    }

    #[test]
    fn sigma_summation_oracle() {
        // sigma(2p) = 0 because eps(i + p) = -eps(i).
        for a in canonical_pairs(80, true) {
            for i in 0..a.p() {
                assert_eq!(a.epsilon(i + a.p()), -a.epsilon(i));
            }
            let total: i64 = (0..2 * a.p()).map(|i| a.epsilon(i)).sum();
            assert_eq!(total, 0);
        }
    }

    #[test]
    fn continued_fraction_golden() {
        let a = CoprimePair::normalize(81, 49).unwrap();
        assert_eq!(a.even_continued_fraction().entries(), &[2, 2, -8, -2]);
        let b = CoprimePair::normalize(17, 13).unwrap();
        assert_eq!(b.even_continued_fraction().entries(), &[4, 4]);
        // 8/(8-3) = 8/5
        let c = CoprimePair::normalize(8, 3).unwrap();
        let cf = c.even_continued_fraction();
        assert_eq!(cf.eval(), (8, 5));
    }

    #[test]
    fn continued_fraction_roundtrip() {
        for a in canonical_pairs(200, true) {
            let cf = a.even_continued_fraction();
            assert!(cf.entries().iter().all(|&e| e != 0 && e % 2 == 0), "{a}");
            let (num, den) = cf.eval();
            let expect_den = if a.q() > 0 { a.p() - a.q() } else { -a.p() - a.q() };
            assert_eq!(
                num * expect_den as i128,
                a.p() as i128 * den,
                "{a} -> {cf} evaluates to {num}/{den}"
            );
            // parity of the length matches knot vs link
            assert_eq!(cf.len() % 2 == 0, a.is_knot(), "{a}");
        }
    }

    #[test]
    fn normalize_is_idempotent() {
        for a in canonical_pairs(60, true) {
            let again = CoprimePair::normalize(a.p(), a.q()).unwrap();
            assert_eq!(a, again);
        }
    }

    #[test]
    fn display_parse_roundtrip() {
        for s in ["17/13", "4/-3", "8/3"] {
            let a: CoprimePair = s.parse().unwrap();
            assert_eq!(a.to_string(), s);
        }
        assert!("1/1".parse::<CoprimePair>().is_err());
        assert!("x".parse::<CoprimePair>().is_err());
    }
}
