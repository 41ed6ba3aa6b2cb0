//! Exact integer matrices: Smith diagonalization, gcd of maximal minors and
//! the finite-quotient index computation for the subgroup chain.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::pairs::CoprimePair;
use crate::presentation::{rewrite_r0, subscript_bounds};

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

/// Invariant factors d_1 | d_2 | ... | d_k (positive, units included), one
/// per nonzero diagonal entry of the Smith form. Zero matrix gives [].
pub fn smith_invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.rows;
    let cols = m.cols;
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut diag: Vec<BigInt> = Vec::new();
    let mut t = 0usize;

    while t < rows && t < cols {
        // pivot: nonzero entry of least magnitude in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        // Clear the pivot row and column, then enforce that the pivot
        // divides the trailing block. Every swap and every post-fold
        // remainder strictly shrinks |pivot|, so this terminates.
        loop {
            'clear: loop {
                for i in t + 1..rows {
                    if !a[i][t].is_zero() {
                        let q = &a[i][t] / &a[t][t];
                        if !q.is_zero() {
                            for j in t..cols {
                                let v = &a[i][j] - &q * &a[t][j];
                                a[i][j] = v;
                            }
                        }
                        if !a[i][t].is_zero() {
                            a.swap(t, i);
                            continue 'clear;
                        }
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() {
                        let q = &a[t][j] / &a[t][t];
                        if !q.is_zero() {
                            for i in t..rows {
                                let v = &a[i][j] - &q * &a[i][t];
                                a[i][j] = v;
                            }
                        }
                        if !a[t][j].is_zero() {
                            for row in a.iter_mut() {
                                row.swap(t, j);
                            }
                            continue 'clear;
                        }
                    }
                }
                break;
            }

            let mut folded = false;
            'fold: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        for jj in t..cols {
                            let v = &a[t][jj] + &a[i][jj];
                            a[t][jj] = v;
                        }
                        folded = true;
                        break 'fold;
                    }
                }
            }
            if !folded {
                break;
            }
        }

        diag.push(a[t][t].abs());
        t += 1;
    }

    // gcd/lcm fixups give the divisibility chain
    let n = diag.len();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in i + 1..n {
                if !(&diag[j] % &diag[i]).is_zero() {
                    let g = diag[i].gcd(&diag[j]);
                    let l = (&diag[i] * &diag[j]) / &g;
                    diag[i] = g;
                    diag[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    diag.sort();
    diag
}

/// gcd of all maximal (rows x rows) minors, computed as the product of the
/// invariant factors. Requires rows <= cols and full row rank.
pub fn gcd_maximal_minors(m: &IntMatrix) -> Result<BigInt> {
    if m.rows > m.cols {
        return Err(Error::NotFullRank);
    }
    let f = smith_invariant_factors(m);
    if f.len() < m.rows {
        return Err(Error::NotFullRank);
    }
    Ok(f.iter().product())
}

/// Reference implementation: enumerate every maximal minor directly and take
/// the gcd of their absolute values. Exponential; intended for cross-checks
/// at small sizes.
pub fn gcd_maximal_minors_by_enumeration(m: &IntMatrix) -> Result<BigInt> {
    if m.rows > m.cols {
        return Err(Error::NotFullRank);
    }
    let mut g = BigInt::zero();
    let mut subset: Vec<usize> = (0..m.rows).collect();
    loop {
        let d = determinant_of_columns(m, &subset);
        g = g.gcd(&d);
        // next combination
        let k = m.rows;
        let n = m.cols;
        let mut i = k;
        loop {
            if i == 0 {
                if g.is_zero() {
                    return Err(Error::NotFullRank);
                }
                return Ok(g);
            }
            i -= 1;
            if subset[i] != i + n - k {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn determinant_of_columns(m: &IntMatrix, cols: &[usize]) -> BigInt {
    let n = cols.len();
    let sub: Vec<Vec<BigInt>> = (0..n)
        .map(|r| cols.iter().map(|&c| m.get(r, c).clone()).collect())
        .collect();
    determinant(&sub)
}

/// Cofactor expansion; fine for the small orders used here.
pub fn determinant(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut det = BigInt::zero();
    for (j, pivot) in a[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = pivot * determinant(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// True when the presented module is free, i.e. the gcd of maximal minors is
/// a unit.
pub fn is_free_quotient(m: &IntMatrix) -> Result<bool> {
    Ok(gcd_maximal_minors(m)?.is_one())
}

/// Order of a finitely presented abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientOrder {
    Finite(BigInt),
    Infinite,
}

impl QuotientOrder {
    pub fn as_finite(&self) -> Option<&BigInt> {
        match self {
            QuotientOrder::Finite(n) => Some(n),
            QuotientOrder::Infinite => None,
        }
    }
}

impl std::fmt::Display for QuotientOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuotientOrder::Finite(n) => write!(f, "{n}"),
            QuotientOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// Order of the step quotient of the subgroup chain at level n: the abelian
/// group on S'_(m-n-1) .. S'_(M+n) presented by the relator classes
/// [R_(-n-1)] .. [R_n] together with the middle generators killed. Equals the
/// square of the leading Alexander coefficient.
pub fn index_of_chain_quotient(pair: &CoprimePair, n: i64) -> QuotientOrder {
    assert!(n >= 0);
    let (m, big_m) = subscript_bounds(pair);
    let r0ab = rewrite_r0(pair).abelianize();
    let gen_min = m - n - 1;
    let gen_max = big_m + n;
    let width = (gen_max - gen_min + 1) as usize;
    let col = |s: i64| (s - gen_min) as usize;

    let band_rows = 2 * n + 2;
    let unit_rows = (big_m - m + 2 * n) as usize;
    let mut mat = IntMatrix::zero(band_rows as usize + unit_rows, width);
    for (r, j) in (-n - 1..=n).enumerate() {
        for (s, v) in r0ab.iter() {
            mat.set(r, col(s + j), BigInt::from(v));
        }
    }
    for (r, s) in (m - n..=big_m + n - 1).enumerate() {
        mat.set(band_rows as usize + r, col(s), BigInt::one());
    }

    let f = smith_invariant_factors(&mat);
    if f.len() < width {
        QuotientOrder::Infinite
    } else {
        QuotientOrder::Finite(f.iter().product())
    }
}
