//! Smith normal form over the integers.
//!
//! The elimination runs first on checked `i64` arithmetic and restarts on
//! `BigInt` as soon as any intermediate value would overflow, so results are
//! always exact. Pivots are chosen as the entry of smallest absolute value
//! (first in row-major order on ties), which keeps the output deterministic.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal with `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d₁, …, d_k` with `k = min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith(a: &IntMatrix) -> SmithDecomposition {
    let raw = smith_with(a, Track { u: true, uinv: false, v: true, vinv: false });
    SmithDecomposition {
        u: raw.u.unwrap(),
        d: raw.d,
        v: raw.v.unwrap(),
    }
}

/// Which transformation matrices to accumulate alongside the elimination.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub uinv: bool,
    pub v: bool,
    pub vinv: bool,
}

pub(crate) struct RawSmith {
    pub d: IntMatrix,
    pub rank: usize,
    pub u: Option<IntMatrix>,
    pub uinv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub vinv: Option<IntMatrix>,
}

impl RawSmith {
    pub fn diag(&self, i: usize) -> &BigInt {
        &self.d[(i, i)]
    }
}

pub(crate) fn smith_with(a: &IntMatrix, track: Track) -> RawSmith {
    if let Some(small) = a.to_i64_rows() {
        let flat: Vec<i64> = small.into_iter().flatten().collect();
        if let Some(done) = Work::<i64>::new(flat, a.rows(), a.cols(), track).and_then(Work::run) {
            return done.finish();
        }
    }
    let flat: Vec<BigInt> = (0..a.rows()).flat_map(|i| a.row(i).to_vec()).collect();
    Work::<BigInt>::new(flat, a.rows(), a.cols(), track)
        .and_then(Work::run)
        .expect("big integer elimination cannot overflow")
        .finish()
}

trait Entry: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_nil(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn negated(&self) -> Option<Self>;
    /// `self - q·b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    /// Quotient of `self / b` rounded to the nearest integer.
    fn round_div(&self, b: &Self) -> Option<Self>;
    /// Whether `self` divides `a`.
    fn divides(&self, a: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn negated(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|p| self.checked_sub(p))
    }
    fn round_div(&self, b: &Self) -> Option<Self> {
        let (q, r) = (self.div_euclid(*b), self.rem_euclid(*b));
        // r in [0, |b|); move to the nearest quotient
        let twice = r.checked_mul(2)?;
        if twice > b.checked_abs()? {
            if *b > 0 {
                q.checked_add(1)
            } else {
                q.checked_sub(1)
            }
        } else {
            Some(q)
        }
    }
    fn divides(&self, a: &Self) -> bool {
        if *self == 0 {
            *a == 0
        } else {
            a.checked_rem(*self) == Some(0)
        }
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn negated(&self) -> Option<Self> {
        Some(-self)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn round_div(&self, b: &Self) -> Option<Self> {
        let (q, r) = self.div_mod_floor(b);
        // r has the sign of b
        let twice: BigInt = &r * 2;
        if twice.abs() > b.abs() {
            Some(q + 1)
        } else {
            Some(q)
        }
    }
    fn divides(&self, a: &Self) -> bool {
        if Zero::is_zero(self) {
            Zero::is_zero(a)
        } else {
            Zero::is_zero(&(a % self))
        }
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

fn identity<T: Entry>(n: usize) -> Vec<T> {
    let mut m = vec![T::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = T::one();
    }
    m
}

struct Work<T> {
    a: Vec<T>,
    rows: usize,
    cols: usize,
    rank: usize,
    u: Option<Vec<T>>,
    uinv: Option<Vec<T>>,
    v: Option<Vec<T>>,
    vinv: Option<Vec<T>>,
}

impl<T: Entry> Work<T> {
    fn new(a: Vec<T>, rows: usize, cols: usize, track: Track) -> Option<Self> {
        Some(Work {
            a,
            rows,
            cols,
            rank: 0,
            u: track.u.then(|| identity(rows)),
            uinv: track.uinv.then(|| identity(rows)),
            v: track.v.then(|| identity(cols)),
            vinv: track.vinv.then(|| identity(cols)),
        })
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_rows_in(&mut self.a, self.cols, i, j);
        if let Some(u) = &mut self.u {
            swap_rows_in(u, self.rows, i, j);
        }
        if let Some(ui) = &mut self.uinv {
            swap_cols_in(ui, self.rows, self.rows, i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols_in(&mut self.a, self.rows, self.cols, i, j);
        if let Some(v) = &mut self.v {
            swap_cols_in(v, self.cols, self.cols, i, j);
        }
        if let Some(vi) = &mut self.vinv {
            swap_rows_in(vi, self.cols, i, j);
        }
    }

    /// row_i -= q · row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &T) -> Option<()> {
        row_sub_in(&mut self.a, self.cols, i, t, q)?;
        if let Some(u) = &mut self.u {
            row_sub_in(u, self.rows, i, t, q)?;
        }
        if let Some(ui) = &mut self.uinv {
            // inverse: col_t += q · col_i
            col_sub_in(ui, self.rows, self.rows, t, i, &q.negated()?)?;
        }
        Some(())
    }

    /// col_j -= q · col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &T) -> Option<()> {
        col_sub_in(&mut self.a, self.rows, self.cols, j, t, q)?;
        if let Some(v) = &mut self.v {
            col_sub_in(v, self.cols, self.cols, j, t, q)?;
        }
        if let Some(vi) = &mut self.vinv {
            // inverse: row_t += q · row_j
            row_sub_in(vi, self.cols, t, j, &q.negated()?)?;
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        negate_row_in(&mut self.a, self.cols, i)?;
        if let Some(u) = &mut self.u {
            negate_row_in(u, self.rows, i)?;
        }
        if let Some(ui) = &mut self.uinv {
            for r in 0..self.rows {
                ui[r * self.rows + i] = ui[r * self.rows + i].negated()?;
            }
        }
        Some(())
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.at(i, j);
                if x.is_nil() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if x.cmp_abs(self.at(bi, bj)) != Ordering::Less => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(mut self) -> Option<Self> {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.smallest_in_block(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.at(t, t).clone();
                for i in t + 1..self.rows {
                    if !self.at(i, t).is_nil() {
                        let q = self.at(i, t).round_div(&p)?;
                        self.row_sub(i, t, &q)?;
                    }
                }
                for j in t + 1..self.cols {
                    if !self.at(t, j).is_nil() {
                        let q = self.at(t, j).round_div(&p)?;
                        self.col_sub(j, t, &q)?;
                    }
                }
                // a remainder smaller than the pivot: promote it and repeat
                let mut next: Option<(bool, usize)> = None;
                let mut best = p.clone();
                for i in t + 1..self.rows {
                    let x = self.at(i, t);
                    if !x.is_nil() && x.cmp_abs(&best) == Ordering::Less {
                        best = x.clone();
                        next = Some((true, i));
                    }
                }
                for j in t + 1..self.cols {
                    let x = self.at(t, j);
                    if !x.is_nil() && x.cmp_abs(&best) == Ordering::Less {
                        best = x.clone();
                        next = Some((false, j));
                    }
                }
                match next {
                    Some((true, i)) => {
                        self.swap_rows(t, i);
                        continue;
                    }
                    Some((false, j)) => {
                        self.swap_cols(t, j);
                        continue;
                    }
                    None => {}
                }
                let offender = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !p.divides(self.at(i, j))));
                if let Some(i) = offender {
                    // row_t += row_i
                    self.row_sub(t, i, &T::one().negated()?)?;
                    continue;
                }
                break;
            }
            if self.at(t, t).is_neg() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        self.rank = t;
        Some(self)
    }

    fn finish(self) -> RawSmith {
        let to_mat = |m: Vec<T>, r: usize, c: usize| IntMatrix::from_fn(r, c, |i, j| m[i * c + j].to_big());
        let (rows, cols) = (self.rows, self.cols);
        RawSmith {
            d: to_mat(self.a, rows, cols),
            rank: self.rank,
            u: self.u.map(|m| to_mat(m, rows, rows)),
            uinv: self.uinv.map(|m| to_mat(m, rows, rows)),
            v: self.v.map(|m| to_mat(m, cols, cols)),
            vinv: self.vinv.map(|m| to_mat(m, cols, cols)),
        }
    }
}

fn swap_rows_in<T>(m: &mut [T], cols: usize, i: usize, j: usize) {
    for k in 0..cols {
        m.swap(i * cols + k, j * cols + k);
    }
}

fn swap_cols_in<T>(m: &mut [T], rows: usize, cols: usize, i: usize, j: usize) {
    for r in 0..rows {
        m.swap(r * cols + i, r * cols + j);
    }
}

fn row_sub_in<T: Entry>(m: &mut [T], cols: usize, i: usize, t: usize, q: &T) -> Option<()> {
    if q.is_nil() {
        return Some(());
    }
    for k in 0..cols {
        let b = &m[t * cols + k];
        if b.is_nil() {
            continue;
        }
        let v = m[i * cols + k].sub_mul(q, b)?;
        m[i * cols + k] = v;
    }
    Some(())
}

fn col_sub_in<T: Entry>(m: &mut [T], rows: usize, cols: usize, j: usize, t: usize, q: &T) -> Option<()> {
    if q.is_nil() {
        return Some(());
    }
    for r in 0..rows {
        let b = &m[r * cols + t];
        if b.is_nil() {
            continue;
        }
        let v = m[r * cols + j].sub_mul(q, b)?;
        m[r * cols + j] = v;
    }
    Some(())
}

fn negate_row_in<T: Entry>(m: &mut [T], cols: usize, i: usize) -> Option<()> {
    for k in 0..cols {
        m[i * cols + k] = m[i * cols + k].negated()?;
    }
    Some(())
}

/// Convenience for callers that only need the invariant factors.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let raw = smith_with(a, Track::default());
    (0..raw.rank).map(|i| raw.diag(i).clone()).collect()
}
