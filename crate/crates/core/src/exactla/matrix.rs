//! Dense matrices over a [`Field`] with exact elimination.
//!
//! Storage is typed per field so that GF(p) work runs on plain `u32`
//! arithmetic; the element-level API speaks [`Scalar`].

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::field::{inv_mod, Field, Scalar};

trait Arith {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    /// `row[k] -= f * src[k]` for all `k`.
    fn axpy_neg(&self, row: &mut [Self::E], f: &Self::E, src: &[Self::E]);
    fn scale_row(&self, row: &mut [Self::E], f: &Self::E);
    fn wrap(&self, v: Vec<Self::E>) -> Store;
    fn from_scalar(&self, s: &Scalar) -> Self::E;
    fn to_scalar(&self, a: &Self::E) -> Scalar;
}

#[derive(Clone, Copy)]
struct FpArith(u32);

impl Arith for FpArith {
    type E = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.0
    }
    fn neg(&self, a: &u32) -> u32 {
        (self.0 - a) % self.0
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (a * b) % self.0
    }
    fn inv(&self, a: &u32) -> u32 {
        inv_mod(*a, self.0)
    }
    fn axpy_neg(&self, row: &mut [u32], f: &u32, src: &[u32]) {
        let p = self.0;
        let g = p - f;
        for (r, s) in row.iter_mut().zip(src) {
            if *s != 0 {
                *r = (*r + g * s) % p;
            }
        }
    }
    fn scale_row(&self, row: &mut [u32], f: &u32) {
        for r in row.iter_mut() {
            *r = (*r * f) % self.0;
        }
    }
    fn wrap(&self, v: Vec<u32>) -> Store {
        Store::Fp(self.0, v)
    }
    fn from_scalar(&self, s: &Scalar) -> u32 {
        match s {
            Scalar::Fp(v) if *v < self.0 => *v,
            _ => panic!("scalar {s:?} is not an element of GF({})", self.0),
        }
    }
    fn to_scalar(&self, a: &u32) -> Scalar {
        Scalar::Fp(*a)
    }
}

#[derive(Clone, Copy)]
struct QArith;

impl Arith for QArith {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn axpy_neg(&self, row: &mut [BigRational], f: &BigRational, src: &[BigRational]) {
        for (r, s) in row.iter_mut().zip(src) {
            if !s.is_zero() {
                *r -= f * s;
            }
        }
    }
    fn scale_row(&self, row: &mut [BigRational], f: &BigRational) {
        for r in row.iter_mut() {
            *r *= f;
        }
    }
    fn wrap(&self, v: Vec<BigRational>) -> Store {
        Store::Q(v)
    }
    fn from_scalar(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Q(q) => q.clone(),
            _ => panic!("scalar {s:?} is not rational"),
        }
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Q(a.clone())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Store {
    Fp(u32, Vec<u32>),
    Q(Vec<BigRational>),
}

macro_rules! with_store {
    ($store:expr, $ar:ident, $v:ident => $body:expr) => {
        match $store {
            Store::Fp(p, $v) => {
                let $ar = FpArith(*p);
                $body
            }
            Store::Q($v) => {
                let $ar = QArith;
                $body
            }
        }
    };
}

macro_rules! with_two {
    ($a:expr, $b:expr, $ar:ident, $x:ident, $y:ident => $body:expr) => {
        match ($a, $b) {
            (Store::Fp(p, $x), Store::Fp(q, $y)) => {
                assert_eq!(p, q, "matrices over different fields");
                let $ar = FpArith(*p);
                $body
            }
            (Store::Q($x), Store::Q($y)) => {
                let $ar = QArith;
                $body
            }
            _ => panic!("matrices over different fields"),
        }
    };
}

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    store: Store,
}

fn rref_impl<A: Arith>(ar: &A, v: &mut [A::E], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(src) = (r..rows).find(|&i| !ar.is_zero(&v[i * cols + c])) else {
            continue;
        };
        if src != r {
            for k in 0..cols {
                v.swap(src * cols + k, r * cols + k);
            }
        }
        let inv = ar.inv(&v[r * cols + c]);
        ar.scale_row(&mut v[r * cols + c..(r + 1) * cols], &inv);
        let pivot_row: Vec<A::E> = v[r * cols + c..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = v[i * cols + c].clone();
            if ar.is_zero(&f) {
                continue;
            }
            ar.axpy_neg(&mut v[i * cols + c..(i + 1) * cols], &f, &pivot_row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Row echelon form (not reduced above pivots); enough for rank.
fn echelon_rank<A: Arith>(ar: &A, v: &mut [A::E], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(src) = (r..rows).find(|&i| !ar.is_zero(&v[i * cols + c])) else {
            continue;
        };
        if src != r {
            for k in c..cols {
                v.swap(src * cols + k, r * cols + k);
            }
        }
        let inv = ar.inv(&v[r * cols + c]);
        ar.scale_row(&mut v[r * cols + c..(r + 1) * cols], &inv);
        let pivot_row: Vec<A::E> = v[r * cols + c..(r + 1) * cols].to_vec();
        for i in r + 1..rows {
            let f = v[i * cols + c].clone();
            if ar.is_zero(&f) {
                continue;
            }
            ar.axpy_neg(&mut v[i * cols + c..(i + 1) * cols], &f, &pivot_row);
        }
        r += 1;
    }
    r
}

fn mul_impl<A: Arith>(ar: &A, a: &[A::E], b: &[A::E], n: usize, m: usize, k: usize) -> Vec<A::E> {
    // a: n x m, b: m x k
    let mut out = vec![ar.zero(); n * k];
    let neg_one = ar.neg(&ar.one());
    for i in 0..n {
        for j in 0..m {
            let x = &a[i * m + j];
            if ar.is_zero(x) {
                continue;
            }
            // out_i += x * b_j  ==  out_i -= (-x) * b_j
            let f = ar.mul(x, &neg_one);
            ar.axpy_neg(&mut out[i * k..(i + 1) * k], &f, &b[j * k..(j + 1) * k]);
        }
    }
    out
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        let store = match field {
            Field::Prime(p) => Store::Fp(p, vec![0; rows * cols]),
            Field::Rationals => Store::Q(vec![BigRational::zero(); rows * cols]),
        };
        ExactMatrix { rows, cols, store }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        let one = field.one();
        for i in 0..n {
            m.set(i, i, &one);
        }
        m
    }

    pub fn from_scalars(field: Field, rows: usize, cols: usize, entries: &[Scalar]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        let store = match field {
            Field::Prime(p) => {
                let ar = FpArith(p);
                Store::Fp(p, entries.iter().map(|s| ar.from_scalar(s)).collect())
            }
            Field::Rationals => Store::Q(entries.iter().map(|s| QArith.from_scalar(s)).collect()),
        };
        ExactMatrix { rows, cols, store }
    }

    /// Integer entries, reduced into the field.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        let s: Vec<Scalar> = entries.iter().map(|&x| field.from_i64(x)).collect();
        Self::from_scalars(field, rows, cols, &s)
    }

    pub fn from_rows_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let flat: Vec<i64> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().copied()
            })
            .collect();
        Self::from_i64(field, rows.len(), cols, &flat)
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Self {
        let e: Vec<Scalar> = (0..rows * cols).map(|_| field.random(rng, 3)).collect();
        Self::from_scalars(field, rows, cols, &e)
    }

    pub fn field(&self) -> Field {
        match &self.store {
            Store::Fp(p, _) => Field::Prime(*p),
            Store::Q(_) => Field::Rationals,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols);
        let c = self.cols;
        with_store!(&self.store, ar, v => ar.to_scalar(&v[i * c + j]))
    }

    pub fn set(&mut self, i: usize, j: usize, s: &Scalar) {
        assert!(i < self.rows && j < self.cols);
        let c = self.cols;
        with_store!(&mut self.store, ar, v => v[i * c + j] = ar.from_scalar(s))
    }

    /// Adds `s` to entry `(i, j)`.
    pub fn add_at(&mut self, i: usize, j: usize, s: &Scalar) {
        let c = self.cols;
        with_store!(&mut self.store, ar, v => {
            let x = ar.from_scalar(s);
            v[i * c + j] = ar.add(&v[i * c + j], &x);
        })
    }

    pub fn entries(&self) -> Vec<Scalar> {
        with_store!(&self.store, ar, v => v.iter().map(|x| ar.to_scalar(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        with_store!(&self.store, ar, v => v.iter().all(|x| ar.is_zero(x)))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.field(), self.rows)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        let c = self.cols;
        with_store!(&self.store, ar, v => v[i * c..(i + 1) * c].iter().all(|x| ar.is_zero(x)))
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        let store = with_store!(&self.store, ar, v => {
            let mut out = Vec::with_capacity(r * c);
            for j in 0..c {
                for i in 0..r {
                    out.push(v[i * c + j].clone());
                }
            }
            ar.wrap(out)
        });
        ExactMatrix {
            rows: c,
            cols: r,
            store,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let (n, m, k) = (self.rows, self.cols, other.cols);
        let store = with_two!(&self.store, &other.store, ar, a, b => ar.wrap(mul_impl(&ar, a, b, n, m, k)));
        ExactMatrix {
            rows: n,
            cols: k,
            store,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let store = with_two!(&self.store, &other.store, ar, a, b =>
            ar.wrap(a.iter().zip(b).map(|(x, y)| ar.add(x, y)).collect()));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            store,
        }
    }

    pub fn neg(&self) -> Self {
        let store = with_store!(&self.store, ar, v => ar.wrap(v.iter().map(|x| ar.neg(x)).collect()));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            store,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let store = with_store!(&self.store, ar, v => {
            let f = ar.from_scalar(s);
            ar.wrap(v.iter().map(|x| ar.mul(x, &f)).collect())
        });
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            store,
        }
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        let c = self.cols;
        let store = with_store!(&self.store, ar, v => {
            let mut out = Vec::with_capacity((r1 - r0) * (c1 - c0));
            for i in r0..r1 {
                out.extend_from_slice(&v[i * c + c0..i * c + c1]);
            }
            ar.wrap(out)
        });
        ExactMatrix {
            rows: r1 - r0,
            cols: c1 - c0,
            store,
        }
    }

    pub fn row(&self, i: usize) -> Self {
        self.block(i, i + 1, 0, self.cols)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let c = self.cols;
        let store = with_store!(&self.store, ar, v => {
            let mut out = Vec::with_capacity(idx.len() * c);
            for &i in idx {
                out.extend_from_slice(&v[i * c..(i + 1) * c]);
            }
            ar.wrap(out)
        });
        ExactMatrix {
            rows: idx.len(),
            cols: c,
            store,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        self.transpose().select_rows(idx).transpose()
    }

    /// Writes `src` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, src: &Self) {
        assert!(r0 + src.rows <= self.rows && c0 + src.cols <= self.cols);
        let (c, sc) = (self.cols, src.cols);
        with_two!(&mut self.store, &src.store, _ar, d, s => {
            for i in 0..src.rows {
                d[(r0 + i) * c + c0..(r0 + i) * c + c0 + sc].clone_from_slice(&s[i * sc..(i + 1) * sc]);
            }
        })
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut r = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            out.paste(r, 0, m);
            r += m.rows;
        }
        out
    }

    pub fn hstack(field: Field, rows: usize, parts: &[&Self]) -> Self {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut c = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            out.paste(0, c, m);
            c += m.cols;
        }
        out
    }

    pub fn block_diag(field: Field, parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.paste(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    /// Reduced row echelon form and the strictly increasing pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let (r, c) = (self.rows, self.cols);
        let piv = with_store!(&mut m.store, ar, v => rref_impl(&ar, v, r, c));
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (r, c) = (self.rows, self.cols);
        // eliminate along the shorter side
        if r > c {
            m = m.transpose();
            return with_store!(&mut m.store, ar, v => echelon_rank(&ar, v, c, r));
        }
        with_store!(&mut m.store, ar, v => echelon_rank(&ar, v, r, c))
    }

    /// Columns spanning `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Self {
        let field = self.field();
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(field, self.cols, free.len());
        let one = field.one();
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, &one);
            for (row, &pc) in pivots.iter().enumerate() {
                let e = r.get(row, f);
                if !e.is_zero() {
                    k.set(pc, j, &field.neg(&e));
                }
            }
        }
        k
    }

    /// Rows spanning `{x : x * self = 0}`.
    pub fn left_kernel_basis(&self) -> Self {
        self.transpose().kernel_basis().transpose()
    }

    /// Some `X` with `self * X = rhs`, verified before returning.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows, "row counts must match");
        let field = self.field();
        let aug = Self::hstack(field, self.rows, &[self, rhs]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(field, self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, &r.get(row, self.cols + j));
            }
        }
        if self.mul(&x) != *rhs {
            return None;
        }
        Some(x)
    }

    /// Some `X` with `X * self = rhs`.
    pub fn solve_left(&self, rhs: &Self) -> Option<Self> {
        self.transpose().solve(&rhs.transpose()).map(|x| x.transpose())
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        if self.rank() != self.rows {
            return None;
        }
        self.solve(&Self::identity(self.field(), self.rows))
    }

    /// Nonzero rows of the rref: a basis of the row space.
    pub fn row_space_basis(&self) -> Self {
        let (r, p) = self.rref();
        r.block(0, p.len(), 0, self.cols)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x{} over {}", self.rows, self.cols, self.field())?;
        for i in 0..self.rows {
            write!(f, "\n ")?;
            for j in 0..self.cols {
                write!(f, " {}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// A subspace of `k^n`, kept as the nonzero rows of a reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowSpace {
    basis: ExactMatrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn span(m: &ExactMatrix) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.block(0, pivots.len(), 0, m.cols());
        RowSpace { basis, pivots }
    }

    pub fn zero(field: Field, n: usize) -> Self {
        RowSpace {
            basis: ExactMatrix::zeros(field, 0, n),
            pivots: vec![],
        }
    }

    pub fn full(field: Field, n: usize) -> Self {
        RowSpace {
            basis: ExactMatrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces every row of `v` modulo the subspace.
    pub fn reduce(&self, v: &ExactMatrix) -> ExactMatrix {
        let mut out = v.clone();
        for i in 0..v.rows() {
            for (r, &pc) in self.pivots.iter().enumerate() {
                let c = out.get(i, pc);
                if c.is_zero() {
                    continue;
                }
                let sub = self.basis.row(r).scale(&c);
                let row = out.row(i).sub(&sub);
                out.paste(i, 0, &row);
            }
        }
        out
    }

    pub fn contains(&self, v: &ExactMatrix) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_space(&self, other: &RowSpace) -> bool {
        self.contains(&other.basis)
    }

    /// Coordinates `X` with `v = X * basis`, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &ExactMatrix) -> Option<ExactMatrix> {
        if !self.contains(v) {
            return None;
        }
        Some(v.select_cols(&self.pivots))
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        let field = self.basis.field();
        RowSpace::span(&ExactMatrix::vstack(
            field,
            self.ambient(),
            &[&self.basis, &other.basis],
        ))
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient()).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Unit rows at the non-pivot columns: a complement.
    pub fn complement(&self) -> ExactMatrix {
        let field = self.basis.field();
        let np = self.non_pivots();
        let mut m = ExactMatrix::zeros(field, np.len(), self.ambient());
        let one = field.one();
        for (i, &c) in np.iter().enumerate() {
            m.set(i, c, &one);
        }
        m
    }

    /// `n x (n - dim)` matrix sending a vector to its coordinates modulo the
    /// subspace, in the basis given by [`RowSpace::complement`].
    pub fn projection(&self) -> ExactMatrix {
        let field = self.basis.field();
        let n = self.ambient();
        let np = self.non_pivots();
        let mut p = ExactMatrix::zeros(field, n, np.len());
        let one = field.one();
        for (j, &c) in np.iter().enumerate() {
            p.set(c, j, &one);
        }
        for (r, &pc) in self.pivots.iter().enumerate() {
            for (j, &c) in np.iter().enumerate() {
                let e = self.basis.get(r, c);
                if !e.is_zero() {
                    p.set(pc, j, &field.neg(&e));
                }
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = gf5();
        let id = ExactMatrix::identity(f, 2);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1]));
        let z = ExactMatrix::zeros(f, 2, 2);
        assert_eq!(z.rref(), (z.clone(), vec![]));
    }

    #[test]
    fn rref_hand_reduction() {
        // [[2,4],[1,2]] over GF(5): row1 * 2^{-1}=3 -> [1,2]; row2 - row1 -> 0
        let f = gf5();
        let m = ExactMatrix::from_rows_i64(f, &[&[2, 4], &[1, 2]]);
        let (r, p) = m.rref();
        assert_eq!(r, ExactMatrix::from_rows_i64(f, &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        let f = gf5();
        assert_eq!(ExactMatrix::identity(f, 3).kernel_basis().cols(), 0);
        assert_eq!(ExactMatrix::zeros(f, 3, 3).kernel_basis().cols(), 3);
        // x + 2y = 0 over GF(5): brute force the solution set
        let m = ExactMatrix::from_rows_i64(f, &[&[1, 2]]);
        let sols: Vec<(i64, i64)> = (0..5)
            .flat_map(|x| (0..5).map(move |y| (x, y)))
            .filter(|(x, y)| (x + 2 * y) % 5 == 0 && (*x, *y) != (0, 0))
            .collect();
        assert!(sols.contains(&(3, 1)));
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k, ExactMatrix::from_rows_i64(f, &[&[3], &[1]]));
    }

    #[test]
    fn solve_examples() {
        let f = gf5();
        let rhs = ExactMatrix::from_rows_i64(f, &[&[2], &[4]]);
        assert_eq!(ExactMatrix::identity(f, 2).solve(&rhs).unwrap(), rhs);
        assert!(ExactMatrix::zeros(f, 2, 2).solve(&rhs).is_none());
        // [[1,1],[0,1]] x = (3,1) over QQ: y = 1, x = 3 - 1 = 2
        let q = Field::Rationals;
        let m = ExactMatrix::from_rows_i64(q, &[&[1, 1], &[0, 1]]);
        let x = m.solve(&ExactMatrix::from_rows_i64(q, &[&[3], &[1]])).unwrap();
        assert_eq!(x, ExactMatrix::from_rows_i64(q, &[&[2], &[1]]));
    }

    #[test]
    fn rational_inverse() {
        let q = Field::Rationals;
        let m = ExactMatrix::from_rows_i64(q, &[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(inv.get(0, 1).to_string(), "-1");
    }

    #[test]
    fn rank_nullity_fuzz() {
        let f = gf5();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let r = rng.gen_range(0..=8);
            let c = rng.gen_range(0..=8);
            let m = ExactMatrix::random(f, r, c, &mut rng);
            let k = m.kernel_basis();
            assert_eq!(m.rank() + k.cols(), c);
            assert!(m.mul(&k).is_zero());
            assert_eq!(m.rref().1.len(), m.rank());
        }
    }

    #[test]
    fn projection_kills_subspace() {
        let f = gf5();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(1..7);
            let k = rng.gen_range(0..=n);
            let s = RowSpace::span(&ExactMatrix::random(f, k, n, &mut rng));
            let p = s.projection();
            assert!(s.basis().mul(&p).is_zero());
            assert!(s.complement().mul(&p).is_identity());
        }
    }

    proptest! {
        #[test]
        fn rref_idempotent(entries in proptest::collection::vec(0i64..5, 16), r in 1usize..5) {
            let f = gf5();
            let c = 16 / r;
            let m = ExactMatrix::from_i64(f, r, c, &entries[..r * c]);
            let (once, p1) = m.rref();
            let (twice, p2) = once.rref();
            prop_assert_eq!(once, twice);
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn solve_then_verify(entries in proptest::collection::vec(-4i64..5, 24), seed in 0u64..1000) {
            let q = Field::Rationals;
            let m = ExactMatrix::from_i64(q, 4, 3, &entries[..12]);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rhs = if seed % 2 == 0 {
                m.mul(&ExactMatrix::random(q, 3, 2, &mut rng))
            } else {
                ExactMatrix::from_i64(q, 4, 2, &entries[12..20])
            };
            if let Some(x) = m.solve(&rhs) {
                prop_assert_eq!(m.mul(&x), rhs);
            } else {
                prop_assert!(seed % 2 == 1);
            }
        }
    }
}
