//! Exact linear algebra: small dense solves and ranks of sparse matrices,
//! either over Q by fraction-free elimination or over a large prime field.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Matrices with fewer entries than this are reduced densely.
pub const DENSE_LIMIT: usize = 10_000;

/// Smallest admissible modulus for [`RankMode::Modular`].
pub const MIN_PRIME: u64 = 1 << 30;

/// Solves a square system with a unique solution by Gauss-Jordan elimination.
#[allow(clippy::needless_range_loop)] // rows r and col alias m
pub fn solve_dense(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Domain("solve_dense needs a square system".into()));
    }
    let mut m: Vec<Vec<Rational>> = a.iter().zip(b).map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect()).collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Domain("linear system is singular".into()))?;
        m.swap(col, piv);
        let inv = Rational::one() / &m[col][col];
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in col..=n {
                    let sub = &f * &m[col][k];
                    m[r][k] -= sub;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n].clone()).collect())
}

/// A sparse matrix stored by rows; entries are kept nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.add(i, j, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Adds `v` to entry (i, j).
    pub fn add(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.nrows && j < self.ncols, "entry ({i}, {j}) out of range");
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => {
                row[k].1 += v;
                if row[k].1.is_zero() {
                    row.remove(k);
                }
            }
            Err(k) => row.insert(k, (j, v)),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        match self.rows[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.nrows).map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ncols != rhs.nrows {
            return Err(Error::Domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let mut out = SparseMatrix::new(self.nrows, rhs.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: HashMap<usize, Rational> = HashMap::new();
            for (k, a) in row {
                for (j, b) in &rhs.rows[*k] {
                    *acc.entry(*j).or_insert_with(Rational::zero) += a * b;
                }
            }
            let mut r: Vec<_> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            r.sort_by_key(|e| e.0);
            out.rows[i] = r;
        }
        Ok(out)
    }

    /// Rows scaled to primitive integer vectors; the row space is unchanged.
    fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let l = r.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
                let mut row: Vec<(usize, BigInt)> =
                    r.iter().map(|(j, v)| (*j, (v * Rational::from_integer(l.clone())).to_integer())).collect();
                make_primitive(&mut row);
                row
            })
            .collect()
    }
}

fn make_primitive(row: &mut [(usize, BigInt)]) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// How ranks are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RankMode {
    #[default]
    Exact,
    /// Reduction modulo a prime larger than 2^30. The result can only
    /// undercount the rational rank.
    Modular(u64),
}

impl RankMode {
    pub fn modular(p: u64) -> Result<Self> {
        if p <= MIN_PRIME {
            return Err(Error::Domain(format!("modulus {p} must exceed 2^30")));
        }
        if !is_prime(p) {
            return Err(Error::Domain(format!("modulus {p} is not prime")));
        }
        Ok(RankMode::Modular(p))
    }
}

/// Rank of a sparse matrix.
pub fn rank(m: &SparseMatrix, mode: RankMode) -> Result<usize> {
    match mode {
        RankMode::Exact => {
            let rows = m.integer_rows();
            if m.nrows * m.ncols < DENSE_LIMIT {
                Ok(bareiss_rank(dense_from_rows(&rows, m.ncols)))
            } else {
                Ok(sparse_integer_rank(rows))
            }
        }
        RankMode::Modular(p) => modular_rank(m, p),
    }
}

fn dense_from_rows(rows: &[Vec<(usize, BigInt)>], ncols: usize) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let mut d = vec![BigInt::zero(); ncols];
            for (j, v) in r {
                d[*j] = v.clone();
            }
            d
        })
        .collect()
}

/// Fraction-free Gaussian elimination on a dense integer matrix.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Row reduction keyed by leading column, cross-multiplying to stay in the
/// integers and removing row content after each step.
fn sparse_integer_rank(rows: Vec<Vec<(usize, BigInt)>>) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, BigInt)>> = HashMap::new();
    for mut row in rows {
        while let Some((lead, _)) = row.first() {
            let Some(p) = pivots.get(lead) else {
                pivots.insert(*lead, row);
                break;
            };
            row = eliminate(&row, p);
        }
    }
    pivots.len()
}

/// p_lead * row − row_lead * p, which cancels the shared leading column.
fn eliminate(row: &[(usize, BigInt)], p: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let a = &p[0].1;
    let b = &row[0].1;
    let mut out = Vec::with_capacity(row.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < p.len() {
        let (col, v) = match (row.get(i), p.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                i += 1;
                j += 1;
                (*ci, a * vi - b * vj)
            }
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                i += 1;
                (*ci, a * vi)
            }
            (Some((ci, vi)), None) => {
                i += 1;
                (*ci, a * vi)
            }
            (_, Some((cj, vj))) => {
                j += 1;
                (*cj, -(b * vj))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    make_primitive(&mut out);
    if out.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in out.iter_mut() {
            *v = -&*v;
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn reduce_mod(q: &Rational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let to_u64 = |x: &BigInt| x.mod_floor(&pb).to_u64().expect("residue fits in u64");
    let d = to_u64(q.denom());
    if d == 0 {
        return Err(Error::Domain(format!("prime {p} divides a denominator")));
    }
    Ok(mul_mod(to_u64(q.numer()), pow_mod(d, p - 2, p), p))
}

fn modular_rank(m: &SparseMatrix, p: u64) -> Result<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for r in &m.rows {
        let mut row: Vec<(usize, u64)> = Vec::with_capacity(r.len());
        for (j, v) in r {
            let x = reduce_mod(v, p)?;
            if x != 0 {
                row.push((*j, x));
            }
        }
        while let Some(&(lead, lv)) = row.first() {
            let Some(piv) = pivots.get(&lead) else {
                let inv = pow_mod(lv, p - 2, p);
                for (_, v) in row.iter_mut() {
                    *v = mul_mod(*v, inv, p);
                }
                pivots.insert(lead, row);
                break;
            };
            // pivot rows are monic, so subtract lv * pivot
            let mut out = Vec::with_capacity(row.len() + piv.len());
            let (mut i, mut j) = (1, 1);
            while i < row.len() || j < piv.len() {
                let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
                let cj = piv.get(j).map(|e| e.0).unwrap_or(usize::MAX);
                let (col, v) = if ci == cj {
                    let v = (row[i].1 + p - mul_mod(lv, piv[j].1, p)) % p;
                    i += 1;
                    j += 1;
                    (ci, v)
                } else if ci < cj {
                    i += 1;
                    (ci, row[i - 1].1)
                } else {
                    j += 1;
                    (cj, (p - mul_mod(lv, piv[j - 1].1, p)) % p)
                };
                if v != 0 {
                    out.push((col, v));
                }
            }
            row = out;
        }
    }
    Ok(pivots.len())
}
