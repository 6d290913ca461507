//! Exact arithmetic in the cyclotomic field `ℚ(ζ_N) = ℚ[x]/Φ_N(x)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::groups::RootExp;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("expected {expected} coefficients, found {found}")]
    Length { expected: usize, found: usize },
    #[error("root of order dividing {0} is not in ℚ(ζ_{1})")]
    NotInField(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
}

/// `Σ cᵢ xⁱ / den` with `i < φ(N)`, `den > 0` and `gcd(c, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNumber {
    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    /// Rational value, if the number lies in `ℚ`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { c.to_string() } else { format!("{c}x^{i}") })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

/// `ℚ(ζ_N)` with precomputed reductions of `x^k`, `0 ≤ k < N`.
#[derive(Clone, Debug)]
pub struct CycField {
    n: u64,
    phi: usize,
    cyclo: Vec<i64>,
    powers: Vec<Vec<i64>>,
    units: Vec<u64>,
}

fn poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // both monic, exact division
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            r[i + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_divexact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

impl CycField {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "cyclotomic order must be positive");
        let cyclo = cyclotomic_polynomial(n);
        let phi = cyclo.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce by the monic Φ
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..phi - 1]);
            for j in 0..phi {
                next[j] -= top * cyclo[j];
            }
            cur = next;
        }
        let units = (1..=n).filter(|&k| k.gcd(&n) == 1).map(|k| k % n).collect();
        CycField { n, phi, cyclo, powers, units }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    /// `φ(N)`, the dimension over `ℚ`.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus_polynomial(&self) -> &[i64] {
        &self.cyclo
    }

    fn make(&self, mut num: Vec<BigInt>, mut den: BigInt) -> CycNumber {
        if den.is_negative() {
            den = -den;
            for c in &mut num {
                *c = -c.clone();
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(|c| c.is_zero()) {
            return CycNumber { num, den: BigInt::one() };
        }
        if !g.is_one() {
            for c in &mut num {
                *c /= &g;
            }
            den /= &g;
        }
        CycNumber { num, den }
    }

    pub fn zero(&self) -> CycNumber {
        CycNumber {
            num: vec![BigInt::zero(); self.phi],
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> CycNumber {
        self.from_integer(1)
    }

    pub fn from_integer(&self, k: i64) -> CycNumber {
        let mut num = vec![BigInt::zero(); self.phi];
        num[0] = BigInt::from(k);
        CycNumber { num, den: BigInt::one() }
    }

    pub fn from_rational(&self, r: &BigRational) -> CycNumber {
        let mut num = vec![BigInt::zero(); self.phi];
        num[0] = r.numer().clone();
        self.make(num, r.denom().clone())
    }

    pub fn from_coefficients(&self, coeffs: &[BigRational]) -> Result<CycNumber, CycError> {
        if coeffs.len() != self.phi {
            return Err(CycError::Length {
                expected: self.phi,
                found: coeffs.len(),
            });
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(self.make(num, den))
    }

    /// `ζ_N^k`.
    pub fn root(&self, k: i64) -> CycNumber {
        let p = &self.powers[k.rem_euclid(self.n as i64) as usize];
        CycNumber {
            num: p.iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    /// The field element denoted by a root of unity whose order divides `N`.
    pub fn root_exp(&self, r: RootExp) -> Result<CycNumber, CycError> {
        let k = self.root_index(r)?;
        Ok(self.root(k as i64))
    }

    /// Exponent `k` with `r = ζ_N^k`.
    pub fn root_index(&self, r: RootExp) -> Result<u64, CycError> {
        let m = r.ambient();
        let ord = r.order();
        if self.n % ord != 0 {
            return Err(CycError::NotInField(m, self.n));
        }
        // r = exp(2πi·k/m) with k/m = k'/ord in lowest terms
        let g = r.numerator().gcd(&m);
        let (kk, mm) = (r.numerator() / g, m / g);
        Ok(kk * (self.n / mm) % self.n)
    }

    /// `Σ_k counts[k]·ζ_N^k`.
    pub fn from_root_counts(&self, counts: &[i64]) -> CycNumber {
        assert_eq!(counts.len(), self.n as usize);
        let mut acc = vec![0i128; self.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, &p) in acc.iter_mut().zip(&self.powers[k]) {
                    *a += c as i128 * p as i128;
                }
            }
        }
        self.make(acc.into_iter().map(BigInt::from).collect(), BigInt::one())
    }

    pub fn add(&self, a: &CycNumber, b: &CycNumber) -> CycNumber {
        if b.is_zero() {
            return a.clone();
        }
        if a.is_zero() {
            return b.clone();
        }
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return self.make(num, a.den.clone());
        }
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        self.make(num, &a.den * &b.den)
    }

    pub fn neg(&self, a: &CycNumber) -> CycNumber {
        CycNumber {
            num: a.num.iter().map(|c| -c).collect(),
            den: a.den.clone(),
        }
    }

    pub fn sub(&self, a: &CycNumber, b: &CycNumber) -> CycNumber {
        self.add(a, &self.neg(b))
    }

    fn reduce_wide(&self, wide: Vec<BigInt>) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = wide[..self.phi.min(wide.len())].to_vec();
        out.resize(self.phi, BigInt::zero());
        for (d, c) in wide.iter().enumerate().skip(self.phi) {
            if c.is_zero() {
                continue;
            }
            let p = &self.powers[d % self.n as usize];
            for (o, &pj) in out.iter_mut().zip(p) {
                if pj != 0 {
                    *o += c * pj;
                }
            }
        }
        out
    }

    fn mul_small(&self, a: &[i64], b: &[i64]) -> Option<Vec<BigInt>> {
        let mut wide = vec![0i128; 2 * self.phi - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                wide[i + j] = wide[i + j].checked_add(x as i128 * y as i128)?;
            }
        }
        let mut out: Vec<i128> = wide[..self.phi].to_vec();
        for (d, &c) in wide.iter().enumerate().skip(self.phi) {
            if c == 0 {
                continue;
            }
            for (o, &pj) in out.iter_mut().zip(&self.powers[d % self.n as usize]) {
                *o = o.checked_add(c.checked_mul(pj as i128)?)?;
            }
        }
        Some(out.into_iter().map(BigInt::from).collect())
    }

    pub fn mul(&self, a: &CycNumber, b: &CycNumber) -> CycNumber {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let small = |x: &CycNumber| x.num.iter().map(|c| c.to_i64()).collect::<Option<Vec<i64>>>();
        let num = match (small(a), small(b)) {
            (Some(sa), Some(sb)) => self.mul_small(&sa, &sb),
            _ => None,
        };
        let num = num.unwrap_or_else(|| {
            let mut wide = vec![BigInt::zero(); 2 * self.phi - 1];
            for (i, x) in a.num.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.num.iter().enumerate() {
                    if !y.is_zero() {
                        wide[i + j] += x * y;
                    }
                }
            }
            self.reduce_wide(wide)
        });
        self.make(num, &a.den * &b.den)
    }

    pub fn scale(&self, a: &CycNumber, r: &BigRational) -> CycNumber {
        self.make(a.num.iter().map(|c| c * r.numer()).collect(), &a.den * r.denom())
    }

    /// `a·ζ_N^k`.
    pub fn mul_root(&self, a: &CycNumber, k: i64) -> CycNumber {
        let k = k.rem_euclid(self.n as i64) as usize;
        let mut out = vec![BigInt::zero(); self.phi];
        for (i, c) in a.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &pj) in out.iter_mut().zip(&self.powers[(i + k) % self.n as usize]) {
                if pj != 0 {
                    *o += c * pj;
                }
            }
        }
        CycNumber { num: out, den: a.den.clone() }
    }

    /// The Galois automorphism `ζ ↦ ζ^k`, `gcd(k, N) = 1`.
    pub fn galois(&self, a: &CycNumber, k: u64) -> CycNumber {
        let mut out = vec![BigInt::zero(); self.phi];
        for (i, c) in a.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as u64 * k % self.n) as usize;
            for (o, &pj) in out.iter_mut().zip(&self.powers[e]) {
                if pj != 0 {
                    *o += c * pj;
                }
            }
        }
        CycNumber { num: out, den: a.den.clone() }
    }

    /// `a⁻¹ = Π_{k≠1} σ_k(a) / N(a)`.
    pub fn inv(&self, a: &CycNumber) -> Result<CycNumber, CycError> {
        if a.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(r) = a.as_rational() {
            return Ok(self.from_rational(&r.recip()));
        }
        let mut prod = self.one();
        for &k in &self.units {
            if k != 1 {
                prod = self.mul(&prod, &self.galois(a, k));
            }
        }
        let norm = self.mul(&prod, a).as_rational().expect("norm is rational");
        Ok(self.scale(&prod, &norm.recip()))
    }

    pub fn div(&self, a: &CycNumber, b: &CycNumber) -> Result<CycNumber, CycError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Complex value, for display only.
    pub fn approx(&self, a: &CycNumber) -> (f64, f64) {
        let den = a.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in a.num.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * i as f64 / self.n as f64;
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}

/// Dense matrix over `ℚ(ζ_N)`, row-major.
pub type CycMatrix = Vec<Vec<CycNumber>>;

pub fn identity_matrix(f: &CycField, n: usize) -> CycMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect()
}

pub fn mat_mul(f: &CycField, a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "matrix shapes differ");
            (0..cols)
                .map(|j| {
                    let mut acc = f.zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = f.add(&acc, &f.mul(&row[k], &b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &CycMatrix) -> CycMatrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Row-reduces `[m | rhs]` in place; returns pivot columns of `m`.
fn eliminate(f: &CycField, m: &mut [Vec<CycNumber>], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]).expect("nonzero pivot");
        let pivot_row: Vec<CycNumber> = m[r].iter().map(|x| f.mul(x, &inv)).collect();
        m[r] = pivot_row;
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..m[i].len() {
                    if !m[r][j].is_zero() {
                        let t = f.mul(&factor, &m[r][j]);
                        m[i][j] = f.sub(&m[i][j], &t);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(f: &CycField, m: &CycMatrix) -> usize {
    let width = m.first().map_or(0, |r| r.len());
    let mut work = m.clone();
    eliminate(f, &mut work, width).len()
}

/// Some `x` with `m·x = b`, or `None` if inconsistent.
pub fn solve(f: &CycField, m: &CycMatrix, b: &[CycNumber]) -> Option<Vec<CycNumber>> {
    let width = m.first().map_or(0, |r| r.len());
    let mut work: CycMatrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = eliminate(f, &mut work, width);
    if work.iter().skip(pivots.len()).any(|r| !r[width].is_zero()) {
        return None;
    }
    let mut x = vec![f.zero(); width];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = work[i][width].clone();
    }
    Some(x)
}

pub fn inverse(f: &CycField, m: &CycMatrix) -> Option<CycMatrix> {
    let n = m.len();
    let mut work: CycMatrix = m
        .iter()
        .zip(identity_matrix(f, n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    if eliminate(f, &mut work, n).len() < n {
        return None;
    }
    Some(work.into_iter().map(|r| r[n..].to_vec()).collect())
}
