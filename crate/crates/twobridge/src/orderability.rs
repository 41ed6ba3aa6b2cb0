//! Bi-orderability certificates from exact polynomial root data.
//!
//! A verdict of `BiOrderable` requires the Alexander polynomial to have
//! coprime coefficients and all roots real and positive, certified by exact
//! Sturm counts on square-free factors. `NotBiOrderable` is issued only for
//! genus-one knots whose twist product is negative. Everything else is
//! `Unknown`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::alexpoly::{alexander, IntPolynomial};
use crate::error::{Error, Result};
use crate::pairs::CoprimePair;

/// Outcome of a certificate check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    BiOrderable,
    NotBiOrderable,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Status::BiOrderable => "bi-orderable",
            Status::NotBiOrderable => "not bi-orderable",
            Status::Unknown => "unknown",
        };
        write!(f, "{s}")
    }
}

/// Exact root count data for the positive real axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCount {
    /// Number of distinct roots in (0, oo).
    pub distinct: usize,
    /// True when every root (over the complex numbers) is real and positive.
    pub all_real_positive: bool,
}

/// Genus-one classification data, when the pair has genus one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusOneData {
    pub twists: Vec<i64>,
    pub status: Status,
}

/// A certificate: the status together with the evidence it rests on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub delta: IntPolynomial,
    pub content: BigInt,
    pub roots: RootCount,
    pub cf_entries: Vec<i64>,
    pub genus_one: Option<GenusOneData>,
    pub reasons: Vec<String>,
}

// --- exact univariate machinery over BigInt coefficients ---

fn poly_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    g
}

/// Divides by the content and makes the leading coefficient positive.
fn poly_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let v = poly_trim(v);
    if v.is_empty() {
        return v;
    }
    let mut g = poly_content(&v);
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// Divides by the (positive) content, preserving the sign pattern.
fn poly_divide_content(v: Vec<BigInt>) -> Vec<BigInt> {
    let v = poly_trim(v);
    if v.is_empty() {
        return v;
    }
    let g = poly_content(&v);
    v.into_iter().map(|c| c / &g).collect()
}

fn poly_derivative(v: &[BigInt]) -> Vec<BigInt> {
    v.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Pseudo-remainder scaled by a positive constant, so signs of values are
/// preserved.
fn poly_signed_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lead = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for i in 0..=db {
            let v = &r[dr - db + i] - &lead * &b[i];
            r[dr - db + i] = v;
        }
        r = poly_trim(r);
        if r.is_empty() {
            break;
        }
        // the scale lb may be negative; an even power of it is not, so undo
        // one sign per step when needed
        if lb.is_negative() {
            for c in r.iter_mut() {
                *c = -c.clone();
            }
        }
    }
    r
}

/// Primitive polynomial gcd (positive leading coefficient).
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut f = poly_primitive(a.to_vec());
    let mut g = poly_primitive(b.to_vec());
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let r = poly_primitive(poly_signed_prem(&f, &g));
        f = g;
        g = r;
    }
    f
}

/// Exact division of polynomials known to divide evenly.
fn poly_exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    assert!(!b.is_empty());
    let mut r: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(db)];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r.last().unwrap() / lb;
        q[dr - db] = c.clone();
        for i in 0..=db {
            let v = &r[dr - db + i] - &c * &b[i];
            r[dr - db + i] = v;
        }
        r = poly_trim(r);
    }
    debug_assert!(r.is_empty(), "division was not exact");
    poly_trim(q)
}

/// Sturm chain of a square-free primitive polynomial. Remainders are scaled
/// only by positive constants so the sign pattern at any point is preserved.
fn sturm_chain(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut chain = vec![f.to_vec(), poly_trim(poly_derivative(f))];
    while chain.last().is_some_and(|p| !p.is_empty() && p.len() > 1) {
        let n = chain.len();
        let rem = poly_signed_prem(&chain[n - 2], &chain[n - 1]);
        let neg: Vec<BigInt> = rem.iter().map(|c| -c.clone()).collect();
        chain.push(poly_divide_content(neg));
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut prev = 0i8;
    for s in signs {
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

fn sign_of(v: &BigInt) -> i8 {
    match v.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Distinct real roots of a square-free polynomial in (0, oo); requires a
/// nonzero constant term.
fn sturm_count_positive(f: &[BigInt]) -> usize {
    debug_assert!(!f.is_empty() && !f[0].is_zero());
    if f.len() == 1 {
        return 0;
    }
    let chain = sturm_chain(f);
    let at_zero = sign_changes(chain.iter().filter(|p| !p.is_empty()).map(|p| sign_of(&p[0])));
    let at_inf = sign_changes(
        chain
            .iter()
            .filter(|p| !p.is_empty())
            .map(|p| sign_of(p.last().unwrap())),
    );
    at_zero - at_inf
}

/// Exact count of distinct roots in (0, oo) together with the certificate
/// that every complex root is real and positive. The decision is made on the
/// square-free decomposition: each factor must have as many distinct
/// positive real roots as its degree. A root at zero (positive powers of t)
/// refutes positivity outright.
pub fn count_positive_real_roots(poly: &IntPolynomial) -> Result<RootCount> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut coeffs = poly_primitive(poly.coeffs().to_vec());
    let mut root_at_zero = false;
    let zero_at = coeffs.iter().position(|c| !c.is_zero()).unwrap();
    if zero_at > 0 {
        root_at_zero = true;
        coeffs.drain(..zero_at);
    }
    if coeffs.len() == 1 {
        return Ok(RootCount { distinct: 0, all_real_positive: !root_at_zero });
    }

    // square-free decomposition by repeated gcd with the derivative
    let mut factors: Vec<Vec<BigInt>> = Vec::new();
    let mut rest = coeffs;
    while rest.len() > 1 {
        let g = poly_gcd(&rest, &poly_derivative(&rest));
        let squarefree = poly_exact_div(&rest, &g);
        if squarefree.len() > 1 {
            factors.push(poly_primitive(squarefree));
        }
        rest = g;
    }

    // the first factor is the radical (every distinct root once); later
    // factors collect the roots of higher multiplicity and divide it
    let mut distinct = 0;
    let mut all_real_positive = !root_at_zero;
    for (idx, f) in factors.iter().enumerate() {
        let count = sturm_count_positive(f);
        if idx == 0 {
            distinct = count;
        }
        if count != f.len() - 1 {
            all_real_positive = false;
        }
    }
    Ok(RootCount { distinct, all_real_positive })
}

/// True when the even continued fraction of p/(p - q) has all positive
/// entries, in which case all roots of the Alexander polynomial are real and
/// positive.
pub fn lyubich_murasugi_applies(pair: &CoprimePair) -> bool {
    pair.even_continued_fraction().all_positive()
}

/// Certificate for a pair: coprime content plus certified positive real
/// roots gives `BiOrderable`; a genus-one knot with negative twist product
/// gives `NotBiOrderable`; otherwise `Unknown`.
pub fn certify(pair: &CoprimePair) -> Verdict {
    let delta = alexander(pair);
    let content = delta.content().expect("Alexander polynomial is nonzero");
    let roots = count_positive_real_roots(&delta).expect("nonzero polynomial");
    let cf = pair.even_continued_fraction();
    let cf_entries = cf.entries().to_vec();
    let genus_one = genus_one_classify(pair).ok().map(|v| GenusOneData {
        twists: cf_entries.iter().map(|e| e / 2).collect(),
        status: v.status,
    });

    let mut reasons = Vec::new();
    let status = if content.is_one() && roots.all_real_positive {
        reasons.push(format!(
            "coefficients coprime and all {} roots real and positive",
            roots.distinct
        ));
        Status::BiOrderable
    } else if let Some(g) = genus_one.as_ref().filter(|g| g.status == Status::NotBiOrderable) {
        reasons.push(format!(
            "genus-one knot with negative twist product {:?}",
            g.twists
        ));
        Status::NotBiOrderable
    } else {
        if !content.is_one() {
            reasons.push(format!("coefficient gcd is {content}"));
        }
        if !roots.all_real_positive {
            reasons.push("roots are not all real and positive".into());
        }
        Status::Unknown
    };
    Verdict { status, delta, content, roots, cf_entries, genus_one, reasons }
}

/// Classification for genus-one pairs from their twist parameters: knots are
/// bi-orderable exactly when k1*k2 > 0; two-component links are certified
/// bi-orderable when gcd(k1, k3) = 1, gcd(k2, k1 + k3) = 1 and
/// k1*k2*k3*(k1 + k3) >= 0.
pub fn genus_one_classify(pair: &CoprimePair) -> Result<Verdict> {
    let cf = pair.even_continued_fraction();
    let entries = cf.entries();
    let delta = alexander(pair);
    let content = delta.content()?;
    let roots = count_positive_real_roots(&delta)?;
    let base = |status: Status, reasons: Vec<String>, twists: Vec<i64>| Verdict {
        status,
        delta: delta.clone(),
        content: content.clone(),
        roots: roots.clone(),
        cf_entries: entries.to_vec(),
        genus_one: Some(GenusOneData { twists, status }),
        reasons,
    };
    match entries.len() {
        2 => {
            let (k1, k2) = (entries[0] / 2, entries[1] / 2);
            if k1 * k2 > 0 {
                Ok(base(
                    Status::BiOrderable,
                    vec![format!("genus-one knot with twist product {} > 0", k1 * k2)],
                    vec![k1, k2],
                ))
            } else {
                Ok(base(
                    Status::NotBiOrderable,
                    vec![format!("genus-one knot with twist product {} < 0", k1 * k2)],
                    vec![k1, k2],
                ))
            }
        }
        3 => {
            let (k1, k2, k3) = (entries[0] / 2, entries[1] / 2, entries[2] / 2);
            let ok = k1.gcd(&k3) == 1 && k2.gcd(&(k1 + k3)) == 1 && k1 * k2 * k3 * (k1 + k3) >= 0;
            if ok {
                Ok(base(
                    Status::BiOrderable,
                    vec!["genus-one link with coprime twists and non-negative discriminant term"
                        .into()],
                    vec![k1, k2, k3],
                ))
            } else {
                Ok(base(Status::Unknown, vec!["genus-one link criteria not met".into()], vec![
                    k1, k2, k3,
                ]))
            }
        }
        _ => Err(Error::NotGenusOne),
    }
}
