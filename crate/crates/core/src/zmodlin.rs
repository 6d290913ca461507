//! Exact integer and residue-ring linear algebra.
//!
//! Everything that solves a coboundary equation ends up here: the equation
//! is linearized over exponent lattices, reduced modulo the ambient root
//! order, and handed to [`solve_mod`], which works through a Smith normal
//! form over `ℤ`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("modulus must be at least 1")]
    ZeroModulus,
}

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinAlgError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn from_row_vecs(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let n = rows.len();
        IntMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `u · m · v = s` with `s` diagonal, `s[i][i] | s[i+1][i+1]`, and `u`, `v`
/// unimodular.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

struct SnfWork {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    rhs: Option<Vec<BigInt>>,
}

impl SnfWork {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap(i, j);
        }
        if let Some(r) = self.rhs.as_mut() {
            r.swap(i, j);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, src: usize, dst: usize, f: &BigInt) {
        fn axpy(rows: &mut [Vec<BigInt>], src: usize, dst: usize, f: &BigInt) {
            let (s, d) = if src < dst {
                let (lo, hi) = rows.split_at_mut(dst);
                (&lo[src], &mut hi[0])
            } else {
                let (lo, hi) = rows.split_at_mut(src);
                (&hi[0], &mut lo[dst])
            };
            for (x, y) in d.iter_mut().zip(s.iter()) {
                if !y.is_zero() {
                    *x += f * y;
                }
            }
        }
        axpy(&mut self.a, src, dst, f);
        if let Some(u) = self.u.as_mut() {
            axpy(u, src, dst, f);
        }
        if let Some(r) = self.rhs.as_mut() {
            let add = f * &r[src];
            r[dst] += add;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        if let Some(u) = self.u.as_mut() {
            for x in u[i].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        if let Some(r) = self.rhs.as_mut() {
            r[i] = -std::mem::take(&mut r[i]);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, src: usize, dst: usize, f: &BigInt) {
        for row in self.a.iter_mut() {
            if !row[src].is_zero() {
                let add = f * &row[src];
                row[dst] += add;
            }
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                if !row[src].is_zero() {
                    let add = f * &row[src];
                    row[dst] += add;
                }
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].abs() <= x.abs() => {}
                    _ => {
                        if x.abs().is_one() {
                            return Some((i, j));
                        }
                        best = Some((i, j));
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            loop {
                let Some((pi, pj)) = self.min_entry(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.add_row(t, i, &-q);
                    if !self.a[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.add_col(t, j, &-q);
                    if !self.a[t][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(i, t, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let mut w = SnfWork {
        a: m.to_rows(),
        rows: m.rows,
        cols: m.cols,
        u: Some(IntMatrix::identity(m.rows).to_rows()),
        v: Some(IntMatrix::identity(m.cols).to_rows()),
        rhs: None,
    };
    w.run();
    SnfResult {
        u: IntMatrix::from_row_vecs(w.u.take().unwrap_or_default(), m.rows),
        s: IntMatrix::from_row_vecs(std::mem::take(&mut w.a), m.cols),
        v: IntMatrix::from_row_vecs(w.v.take().unwrap_or_default(), m.cols),
    }
}

/// Solutions of `A·x ≡ b (mod m)`: one particular solution and generators
/// of the homogeneous solution group, all reduced into `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModSolution {
    pub modulus: u64,
    pub particular: Vec<u64>,
    pub kernel: Vec<Vec<u64>>,
}

/// One equation `Σ coeff·x[col] ≡ rhs`, stored sparsely.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseRow {
    pub terms: Vec<(usize, i64)>,
    pub rhs: i64,
}

impl SparseRow {
    pub fn new(rhs: i64) -> Self {
        SparseRow {
            terms: Vec::new(),
            rhs,
        }
    }

    pub fn push(&mut self, col: usize, coeff: i64) -> &mut Self {
        self.terms.push((col, coeff));
        self
    }
}

fn reduce(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    // returns (g, s, t) with s*a + t*b = g >= 0
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Triangular generating set, over `ℤ/m`, of the row module of an augmented
/// system. Rows are inserted one at a time with 2×2 unimodular steps, so the
/// stored rows always generate the same submodule as everything inserted.
struct RowCompressor {
    width: usize,
    m: u64,
    pivots: Vec<Option<Vec<u64>>>,
}

impl RowCompressor {
    fn new(width: usize, m: u64) -> Self {
        RowCompressor {
            width,
            m,
            pivots: vec![None; width],
        }
    }

    fn insert(&mut self, mut r: Vec<u64>) {
        let m = self.m as i128;
        let mut j = 0;
        while j < self.width {
            if r[j] == 0 {
                j += 1;
                continue;
            }
            let rj = r[j] as i128;
            match self.pivots[j].take() {
                None => {
                    let (g, _s, t) = ext_gcd(m, rj);
                    let p: Vec<u64> = r.iter().map(|&x| reduce(t * x as i128, self.m)).collect();
                    let k = m / g;
                    r = r.iter().map(|&x| reduce(-k * x as i128, self.m)).collect();
                    self.pivots[j] = Some(p);
                }
                Some(p) => {
                    let pj = p[j] as i128;
                    let (g, s, t) = ext_gcd(pj, rj);
                    let (a, b) = (rj / g, pj / g);
                    let np: Vec<u64> = p
                        .iter()
                        .zip(&r)
                        .map(|(&x, &y)| reduce(s * x as i128 + t * y as i128, self.m))
                        .collect();
                    r = p
                        .iter()
                        .zip(&r)
                        .map(|(&x, &y)| reduce(a * x as i128 - b * y as i128, self.m))
                        .collect();
                    self.pivots[j] = Some(np);
                }
            }
            debug_assert_eq!(r[j], 0);
            j += 1;
        }
    }

    fn rows(self) -> Vec<Vec<u64>> {
        self.pivots.into_iter().flatten().collect()
    }
}

/// Solves `A·x ≡ b (mod m)`. Returns `None` when the system has no solution.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], m: u64) -> Result<Option<ModSolution>, LinAlgError> {
    if b.len() != a.rows {
        return Err(LinAlgError::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    if m == 0 {
        return Err(LinAlgError::ZeroModulus);
    }
    let mb = BigInt::from(m);
    let mut comp = RowCompressor::new(a.cols + 1, m);
    for i in 0..a.rows {
        let mut r: Vec<u64> = a
            .row(i)
            .iter()
            .map(|x| x.mod_floor(&mb).to_u64().unwrap_or(0))
            .collect();
        r.push(b[i].mod_floor(&mb).to_u64().unwrap_or(0));
        comp.insert(r);
    }
    Ok(solve_compressed(a.cols, comp.rows(), m))
}

/// Same as [`solve_mod`] for systems given as sparse rows over `cols` unknowns.
pub fn solve_mod_sparse(cols: usize, rows: &[SparseRow], m: u64) -> Result<Option<ModSolution>, LinAlgError> {
    if m == 0 {
        return Err(LinAlgError::ZeroModulus);
    }
    let mut comp = RowCompressor::new(cols + 1, m);
    for row in rows {
        let mut r = vec![0u64; cols + 1];
        for &(c, k) in &row.terms {
            if c >= cols {
                return Err(LinAlgError::DimensionMismatch {
                    expected: cols,
                    found: c + 1,
                });
            }
            r[c] = reduce(r[c] as i128 + k as i128, m);
        }
        r[cols] = reduce(row.rhs as i128, m);
        if r.iter().any(|&x| x != 0) {
            comp.insert(r);
        }
    }
    Ok(solve_compressed(cols, comp.rows(), m))
}

fn solve_compressed(cols: usize, rows: Vec<Vec<u64>>, m: u64) -> Option<ModSolution> {
    let nrows = rows.len();
    let mut a = Vec::with_capacity(nrows);
    let mut rhs = Vec::with_capacity(nrows);
    for r in rows {
        a.push(r[..cols].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        rhs.push(BigInt::from(r[cols]));
    }
    let mut w = SnfWork {
        a,
        rows: nrows,
        cols,
        u: None,
        v: Some(IntMatrix::identity(cols).to_rows()),
        rhs: Some(rhs),
    };
    w.run();
    let mb = BigInt::from(m);
    let v = w.v.take().unwrap_or_default();
    let c = w.rhs.take().unwrap_or_default();
    let diag = |i: usize| -> BigInt {
        if i < nrows && i < cols {
            w.a[i][i].clone()
        } else {
            BigInt::zero()
        }
    };

    let mut y = vec![BigInt::zero(); cols];
    for (i, ci) in c.iter().enumerate() {
        let s = diag(i);
        let g = s.gcd(&mb);
        let ci = ci.mod_floor(&mb);
        if !ci.is_multiple_of(&g) {
            return None;
        }
        if i < cols && g != mb {
            let mg = &mb / &g;
            let sg = (&s / &g).mod_floor(&mg);
            let inv = mod_inverse(&sg, &mg)?;
            y[i] = ((&ci / &g) * inv).mod_floor(&mg);
        }
    }

    let apply_v = |y: &[BigInt]| -> Vec<u64> {
        (0..cols)
            .map(|r| {
                let x: BigInt = v[r].iter().zip(y).filter(|(_, b)| !b.is_zero()).map(|(a, b)| a * b).sum();
                x.mod_floor(&mb).to_u64().unwrap_or(0)
            })
            .collect()
    };

    let particular = apply_v(&y);
    let mut kernel = Vec::new();
    for i in 0..cols {
        let g = diag(i).gcd(&mb);
        let step = (&mb / &g).mod_floor(&mb);
        if step.is_zero() {
            continue;
        }
        let mut e = vec![BigInt::zero(); cols];
        e[i] = step;
        let k = apply_v(&e);
        if k.iter().any(|&x| x != 0) {
            kernel.push(k);
        }
    }
    Some(ModSolution {
        modulus: m,
        particular,
        kernel,
    })
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}
