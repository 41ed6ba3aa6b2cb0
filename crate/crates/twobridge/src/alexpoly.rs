//! Alexander polynomials of two-bridge links, computed two independent ways.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::pairs::CoprimePair;
use crate::presentation::{rewrite_r0, subscript_bounds};

/// Integer polynomial, constant term first. The zero polynomial has no
/// coefficients; otherwise the top coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// gcd of all coefficients; errors on the zero polynomial.
    pub fn content(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        Ok(g)
    }

    /// Strips powers of t so the constant term is nonzero, then forces a
    /// positive leading coefficient. This is a canonical representative of
    /// the class up to units +-t^k.
    pub fn normalized(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let first = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let mut coeffs: Vec<BigInt> = self.coeffs[first..].to_vec();
        if coeffs.last().unwrap().is_negative() {
            for c in &mut coeffs {
                *c = -c.clone();
            }
        }
        IntPolynomial { coeffs }
    }

    /// Equality up to multiplication by +-t^k.
    pub fn eq_up_to_units(&self, other: &IntPolynomial) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                1 => {
                    if mag.is_one() {
                        write!(f, "t")?;
                    } else {
                        write!(f, "{mag}*t")?;
                    }
                }
                _ => {
                    if mag.is_one() {
                        write!(f, "t^{i}")?;
                    } else {
                        write!(f, "{mag}*t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Closed-form free-derivative sum: Delta(t) = sum over b-letters of
/// eps(2i-1) * t^sigma(f(i)) with f(i) = 2i - theta(eps(2i-1)), normalized.
pub fn alexander_from_fox(pair: &CoprimePair) -> IntPolynomial {
    let sigma = pair.sigma_table();
    let mut lo = 0i64;
    let mut terms: Vec<(i64, i64)> = Vec::with_capacity(pair.p() as usize);
    for i in 1..=pair.p() {
        let e = pair.epsilon(2 * i - 1);
        let f = if e == 1 { 2 * i - 1 } else { 2 * i };
        let exp = sigma[f as usize];
        lo = lo.min(exp);
        terms.push((exp, e));
    }
    let mut coeffs = vec![BigInt::zero(); terms.iter().map(|&(e, _)| e - lo).max().unwrap() as usize + 1];
    for (exp, e) in terms {
        coeffs[(exp - lo) as usize] += BigInt::from(e);
    }
    IntPolynomial::from_coeffs(coeffs).normalized()
}

/// The same polynomial read off the abelianized relator [R_0].
pub fn alexander_from_relator(pair: &CoprimePair) -> IntPolynomial {
    let ab = rewrite_r0(pair).abelianize();
    let lo = ab.support_min().expect("R_0 abelianization is nonzero");
    let hi = ab.support_max().unwrap();
    let coeffs = (lo..=hi).map(|s| BigInt::from(ab.coeff(s))).collect();
    IntPolynomial::from_coeffs(coeffs).normalized()
}

/// Canonical Alexander polynomial of the pair.
pub fn alexander(pair: &CoprimePair) -> IntPolynomial {
    alexander_from_fox(pair)
}

/// Genus from the subscript spread of R_0: M - m is 2g for a knot and
/// 2g + 1 for a link.
pub fn genus(pair: &CoprimePair) -> u32 {
    let (m, big_m) = subscript_bounds(pair);
    let spread = (big_m - m) as u32;
    if pair.is_knot() {
        spread / 2
    } else {
        (spread - 1) / 2
    }
}

/// k1*k2*t^2 - (2*k1*k2 + 1)*t + k1*k2, the genus-one knot polynomial.
pub fn genus_one_knot_poly(k1: i64, k2: i64) -> Result<IntPolynomial> {
    if k1 == 0 || k2 == 0 {
        return Err(Error::ZeroTwist);
    }
    let a = k1 * k2;
    Ok(IntPolynomial::from_i64(&[a, -(2 * a + 1), a]))
}

/// (t - 1) * (A*t^2 - (2A + k1 + k3)*t + A) with A = k1*k2*k3, the genus-one
/// two-component link polynomial.
pub fn genus_one_link_poly(k1: i64, k2: i64, k3: i64) -> Result<IntPolynomial> {
    if k1 == 0 || k2 == 0 || k3 == 0 {
        return Err(Error::ZeroTwist);
    }
    let a = k1 * k2 * k3;
    let quad = IntPolynomial::from_i64(&[a, -(2 * a + k1 + k3), a]);
    let linear = IntPolynomial::from_i64(&[-1, 1]);
    Ok(linear.mul(&quad))
}
