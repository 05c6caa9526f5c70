//! Exact scalars over ℚ or GF(p), and dense exact linear algebra.
//!
//! Everything here is deterministic: echelon forms pick the leftmost pivot
//! column and the topmost candidate row, so every basis choice made by the
//! homology pipelines is reproducible bit for bit.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {p} is not prime ({p} = {factor}·{cofactor})")]
    NotPrime { p: u64, factor: u64, cofactor: u64 },
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("unrecognized field descriptor {0:?} (expected \"rationals\" or \"prime p\")")]
    BadDescriptor(String),
}

/// The coefficient field: ℚ or GF(p) for a prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

/// Smallest nontrivial factor, or None when n is prime. n ≥ 2.
fn smallest_factor(n: u64) -> Option<u64> {
    if n % 2 == 0 {
        return if n == 2 { None } else { Some(2) };
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return Some(d);
        }
        d += 2;
    }
    None
}

impl Field {
    pub fn rationals() -> Field {
        Field::Rationals
    }

    /// GF(p); rejects composite or undersized moduli, naming a factor.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p < 2 {
            return Err(FieldError::ModulusTooSmall(p));
        }
        match smallest_factor(p) {
            Some(f) => Err(FieldError::NotPrime { p, factor: f, cofactor: p / f }),
            None => Ok(Field::Prime(p)),
        }
    }

    /// Accepts "rationals" (or "q"), "prime p", "prime:p".
    pub fn parse(spec: &str) -> Result<Field, FieldError> {
        let s = spec.trim();
        match s.to_ascii_lowercase().as_str() {
            "rationals" | "rational" | "q" => return Ok(Field::Rationals),
            _ => {}
        }
        let rest = s
            .strip_prefix("prime")
            .map(|r| r.trim_start_matches([' ', ':']))
            .ok_or_else(|| FieldError::BadDescriptor(spec.to_string()))?;
        let p: u64 = rest
            .trim()
            .parse()
            .map_err(|_| FieldError::BadDescriptor(spec.to_string()))?;
        Field::prime(p)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(Box::new(BigRational::zero())),
            Field::Prime(p) => Scalar::Mod(0, *p),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(Box::new(BigRational::from_integer(BigInt::from(n)))),
            Field::Prime(p) => {
                let r = n.rem_euclid(*p as i64);
                Scalar::Mod(r as u64, *p)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "rationals"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn modpow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (num's invariant); residues live in [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Box<BigRational>),
    Mod(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(Box::new(-r.as_ref())),
            Scalar::Mod(v, p) => Scalar::Mod(if *v == 0 { 0 } else { p - v }, *p),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(Box::new(a.as_ref() + b.as_ref())),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => {
                Scalar::Mod(((*a as u128 + *b as u128) % *p as u128) as u64, *p)
            }
            _ => panic!("scalar field mismatch: {self:?} vs {rhs:?}"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(Box::new(a.as_ref() * b.as_ref())),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => {
                Scalar::Mod(((*a as u128 * *b as u128) % *p as u128) as u64, *p)
            }
            _ => panic!("scalar field mismatch: {self:?} vs {rhs:?}"),
        }
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(Box::new(r.recip())),
            Scalar::Mod(v, p) => Scalar::Mod(modpow(*v, p - 2, *p), *p),
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|i| self.mul(&i))
    }

    /// Sign character of a rational, or the "smaller half" heuristic mod p is
    /// not meaningful; used only for display.
    pub fn to_display(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

/// Dense matrix over a single field. Row-major storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            for s in r {
                assert_eq!(s.field(), field, "entry field mismatch");
                data.push(s);
            }
        }
        Matrix { field, rows: nrows, cols: ncols, data }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&n| field.from_i64(n)).collect()).collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        assert_eq!(self.field, rhs.field);
        let mut out = Matrix::zero(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![self.field.zero(); self.rows];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() || v[k].is_zero() {
                    continue;
                }
                out[i] = out[i].add(&a.mul(&v[k]));
            }
        }
        out
    }

    pub fn hconcat(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        assert_eq!(self.field, rhs.field);
        let mut out = Matrix::zero(self.field, self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        out
    }

    /// Columns selected by index, in the given order.
    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zero(self.field, self.rows, idx.len());
        for (j, &c) in idx.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, i: usize, s: &Scalar) {
        for c in 0..self.cols {
            let idx = i * self.cols + c;
            if !self.data[idx].is_zero() {
                self.data[idx] = self.data[idx].mul(s);
            }
        }
    }

    /// row_i -= f · row_j
    fn row_sub_mul(&mut self, i: usize, j: usize, f: &Scalar) {
        if f.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let src = self.data[j * self.cols + c].clone();
            if src.is_zero() {
                continue;
            }
            let idx = i * self.cols + c;
            self.data[idx] = self.data[idx].sub(&f.mul(&src));
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

/// Full echelon data: transform · input = rref, pivot columns, and a
/// deterministic kernel basis (one column per free variable, ascending).
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub rref: Matrix,
    pub transform: Matrix,
    pub nullspace: Matrix,
}

pub fn echelon(m: &Matrix) -> Echelon {
    let field = m.field();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = m.clone();
    let mut t = Matrix::identity(field, rows);
    let mut pivots: Vec<usize> = Vec::new();
    let mut pr = 0usize;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        let Some(sel) = (pr..rows).find(|&i| !r.get(i, col).is_zero()) else {
            continue;
        };
        r.swap_rows(pr, sel);
        t.swap_rows(pr, sel);
        let inv = r.get(pr, col).inv().expect("pivot is nonzero");
        r.scale_row(pr, &inv);
        t.scale_row(pr, &inv);
        for i in 0..rows {
            if i != pr && !r.get(i, col).is_zero() {
                let f = r.get(i, col).clone();
                r.row_sub_mul(i, pr, &f);
                t.row_sub_mul(i, pr, &f);
            }
        }
        pivots.push(col);
        pr += 1;
    }

    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut ns = Matrix::zero(field, cols, free.len());
    for (fi, &fc) in free.iter().enumerate() {
        ns.set(fc, fi, field.one());
        for (pi, &pc) in pivots.iter().enumerate() {
            let v = r.get(pi, fc);
            if !v.is_zero() {
                ns.set(pc, fi, v.neg());
            }
        }
    }

    Echelon { rank: pivots.len(), pivots, rref: r, transform: t, nullspace: ns }
}

/// Rank only (forward elimination, no transform bookkeeping).
pub fn rank(m: &Matrix) -> usize {
    rank_in_place(m.clone())
}

/// Rank by forward elimination, consuming the matrix (no transform or
/// reduced form is kept, so this is the cheapest rank path).
pub fn rank_in_place(m: Matrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = m;
    let mut pr = 0usize;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        let Some(sel) = (pr..rows).find(|&i| !r.get(i, col).is_zero()) else {
            continue;
        };
        r.swap_rows(pr, sel);
        let inv = r.get(pr, col).inv().expect("pivot is nonzero");
        r.scale_row(pr, &inv);
        for i in pr + 1..rows {
            if !r.get(i, col).is_zero() {
                let f = r.get(i, col).clone();
                r.row_sub_mul(i, pr, &f);
            }
        }
        pr += 1;
    }
    pr
}

pub fn nullspace(m: &Matrix) -> Matrix {
    echelon(m).nullspace
}

/// Solves A·X = B column-wise; free variables are set to zero. None when some
/// column of B is outside the column span of A.
pub fn solve_in_span(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows(), b.rows(), "right-hand side has wrong height");
    let e = echelon(a);
    let y = e.transform.mul(b);
    for r in e.rank..y.rows() {
        for c in 0..y.cols() {
            if !y.get(r, c).is_zero() {
                return None;
            }
        }
    }
    let mut x = Matrix::zero(a.field(), a.cols(), b.cols());
    for (i, &pc) in e.pivots.iter().enumerate() {
        for c in 0..b.cols() {
            x.set(pc, c, y.get(i, c).clone());
        }
    }
    Some(x)
}

pub fn solve_in_span_vec(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let bm = Matrix::from_rows(a.field(), b.iter().map(|s| vec![s.clone()]).collect());
    let bm = if b.is_empty() { Matrix::zero(a.field(), 0, 1) } else { bm };
    solve_in_span(a, &bm).map(|x| x.col(0))
}

/// A growing subspace of F^dim kept in echelon form, for one-at-a-time
/// independence tests without re-running full eliminations.
#[derive(Debug, Clone)]
pub struct IncrementalSpan {
    field: Field,
    dim: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl IncrementalSpan {
    pub fn new(field: Field, dim: usize) -> IncrementalSpan {
        IncrementalSpan { field, dim, rows: Vec::new() }
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = x.sub(&f.mul(r));
                }
            }
        }
        v
    }

    /// Adds v to the span. Returns true when v was independent of it.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim, "vector has wrong dimension");
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inv().expect("leading entry is nonzero");
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }
}
