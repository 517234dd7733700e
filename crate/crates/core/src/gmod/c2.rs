//! Decomposition of `C₂`-lattices into the indecomposables `Z`, `Z(1)` and
//! `Ind = Z[C₂]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intlat::{kernel_basis, smith, IntMatrix};

/// `B·S·B⁻¹ = diag(I_a, −I_b, c copies of [[0,1],[1,0]])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C2Decomposition {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub base_change: IntMatrix,
}

impl C2Decomposition {
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.a, self.b, self.c)
    }
}

/// The canonical involution with `a` trivial, `b` sign and `c` swap blocks.
pub fn canonical_involution(a: usize, b: usize, c: usize) -> IntMatrix {
    let n = a + b + 2 * c;
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..a {
        m[(i, i)] = BigInt::one();
    }
    for i in a..a + b {
        m[(i, i)] = -BigInt::one();
    }
    for k in 0..c {
        let i = a + b + 2 * k;
        m[(i, i + 1)] = BigInt::one();
        m[(i + 1, i)] = BigInt::one();
    }
    m
}

pub fn is_involution(s: &IntMatrix) -> bool {
    s.is_square() && s * s == IntMatrix::identity(s.rows())
}

/// Splits an integral involution into its indecomposable blocks.
pub fn c2_decompose(s: &IntMatrix) -> Result<C2Decomposition> {
    if !is_involution(s) {
        return Err(Error::NotAnInvolution);
    }
    let n = s.rows();
    let id = IntMatrix::identity(n);

    // basis of Z^n whose first p vectors span N⁺ = ker(S − I)
    let plus = kernel_basis(&s.sub(&id), None);
    let p = plus.len();
    let q = n - p;
    let f = IntMatrix::from_columns(&plus, n);
    let basis = if p == 0 { id.clone() } else { smith(&f).u.inverse_unimodular()? };
    // In this basis S = [[I, C], [0, −I]].
    let s1 = &(&basis.inverse_unimodular()? * s) * &basis;
    let mut cmat = IntMatrix::from_fn(p, q, |i, j| s1[(i, p + j)].clone());

    // integral row/column operations making C ≡ [[I_c, 0], [0, 0]] mod 2
    let mut rows_op = IntMatrix::identity(p); // C ← L·C
    let mut cols_op = IntMatrix::identity(q); // C ← C·T
    let mut c = 0;
    let odd = |x: &BigInt| x.is_odd();
    while c < p.min(q) {
        let Some((pi, pj)) = (c..p).flat_map(|i| (c..q).map(move |j| (i, j))).find(|&(i, j)| odd(&cmat[(i, j)]))
        else {
            break;
        };
        swap_rows(&mut cmat, c, pi);
        swap_rows(&mut rows_op, c, pi);
        swap_cols(&mut cmat, c, pj);
        swap_cols(&mut cols_op, c, pj);
        for i in 0..p {
            if i != c && odd(&cmat[(i, c)]) {
                add_row(&mut cmat, i, c, -1);
                add_row(&mut rows_op, i, c, -1);
            }
        }
        for j in 0..q {
            if j != c && odd(&cmat[(c, j)]) {
                add_col(&mut cmat, j, c, -1);
                add_col(&mut cols_op, j, c, -1);
            }
        }
        c += 1;
    }

    // basis change diag(L⁻¹, T) turns C into L·C·T; then [[I, Z], [0, I]]
    // with Z = (E − C)/2 turns it into E exactly.
    let linv = rows_op.inverse_unimodular()?;
    let target = IntMatrix::from_fn(p, q, |i, j| if i == j && i < c { BigInt::one() } else { BigInt::zero() });
    let two = BigInt::from(2);
    let z = IntMatrix::from_fn(p, q, |i, j| {
        let d = &target[(i, j)] - &cmat[(i, j)];
        debug_assert!(d.is_even());
        d / &two
    });
    let block = linv.direct_sum(&cols_op);
    let shear = IntMatrix::from_fn(n, n, |i, j| {
        if i == j {
            BigInt::one()
        } else if i < p && j >= p {
            z[(i, j - p)].clone()
        } else {
            BigInt::zero()
        }
    });
    let adapted = &(&basis * &block) * &shear;
    // Columns of `adapted` are f_0..f_{p−1}, g_0..g_{q−1} with S f_i = f_i,
    // S g_j = f_j − g_j for j < c and S g_j = −g_j otherwise.
    let col = |k: usize| adapted.column(k);
    let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    cols.extend((c..p).map(col));
    cols.extend((p + c..n).map(col));
    for j in 0..c {
        let g = col(p + j);
        let f = col(j);
        let sg: Vec<BigInt> = f.iter().zip(&g).map(|(x, y)| x - y).collect();
        cols.push(g);
        cols.push(sg);
    }
    let binv = IntMatrix::from_columns(&cols, n);
    let b_mat = binv.inverse_unimodular()?;
    let (a, b) = (p - c, q - c);
    let canonical = canonical_involution(a, b, c);
    if &(&b_mat * s) * &binv != canonical || s.trace() != BigInt::from(a as i64 - b as i64) {
        return Err(Error::InvalidModule("involution decomposition failed to verify".into()));
    }
    Ok(C2Decomposition { a, b, c, base_change: b_mat })
}

fn swap_rows(m: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for k in 0..m.cols() {
            let t = m[(i, k)].clone();
            m[(i, k)] = m[(j, k)].clone();
            m[(j, k)] = t;
        }
    }
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for k in 0..m.rows() {
            let t = m[(k, i)].clone();
            m[(k, i)] = m[(k, j)].clone();
            m[(k, j)] = t;
        }
    }
}

/// row_i += k·row_j
fn add_row(m: &mut IntMatrix, i: usize, j: usize, k: i64) {
    for c in 0..m.cols() {
        let v = &m[(j, c)] * k;
        m[(i, c)] += v;
    }
}

/// col_i += k·col_j
fn add_col(m: &mut IntMatrix, i: usize, j: usize, k: i64) {
    for r in 0..m.rows() {
        let v = &m[(r, j)] * k;
        m[(r, i)] += v;
    }
}
