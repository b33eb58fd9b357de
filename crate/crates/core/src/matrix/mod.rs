//! Dense exact matrices over any ring of the tower.

mod invariant;
mod neumann;

pub use invariant::{
    determinantal_divisors, invariant_factors_over_r, minor_gcd_up_to_constants, r_associated, rank_over_fraction_field,
    InvariantFactorProfile,
    MAX_INVARIANT_FACTOR_SIZE,
};
pub use neumann::{neumann_inverse, neumann_inverse_novikov, signed_permutation_plus_negative_inverse};

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::ring::{Field, Ring};

/// Row-major dense matrix. Shapes with zero rows or columns are allowed.
#[derive(Clone)]
pub struct RingMatrix<R: Ring> {
    ctx: R::Ctx,
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> RingMatrix<R> {
    pub fn new(ctx: R::Ctx, rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(AlgebraError::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(RingMatrix { ctx, rows, cols, data })
    }

    pub fn zeros(ctx: R::Ctx, rows: usize, cols: usize) -> Self {
        let data = vec![R::zero_in(&ctx); rows * cols];
        RingMatrix { ctx, rows, cols, data }
    }

    pub fn identity(ctx: R::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one_in(&m.ctx);
        }
        m
    }

    pub fn from_rows(ctx: R::Ctx, rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        Ok(RingMatrix { ctx, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(ctx: R::Ctx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RingMatrix { ctx, rows, cols, data }
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &R> {
        self.data.iter()
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_elem())
    }

    pub fn is_identity(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let one = R::one_in(&self.ctx);
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    *e == one
                } else {
                    e.is_zero_elem()
                }
            })
        })
    }

    fn check_same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::Shape(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Ok(RingMatrix { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Ok(RingMatrix { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Self {
        RingMatrix { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.neg()).collect() }
    }

    pub fn scale(&self, k: &R) -> Self {
        RingMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| k.mul(a)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RingMatrix::<R>::zeros(self.ctx.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero_elem() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        RingMatrix::from_fn(self.ctx.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        RingMatrix::from_fn(self.ctx.clone(), rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn map<S: Ring>(&self, ctx: S::Ctx, f: impl Fn(&R) -> S) -> RingMatrix<S> {
        RingMatrix { ctx, rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<S: Ring>(&self, ctx: S::Ctx, f: impl Fn(&R) -> Result<S>) -> Result<RingMatrix<S>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(RingMatrix { ctx, rows: self.rows, cols: self.cols, data })
    }

    /// Replaces every entry by an m x m block.
    pub fn expand_blocks<S: Ring>(&self, ctx: S::Ctx, m: usize, f: impl Fn(&R) -> Result<RingMatrix<S>>) -> Result<RingMatrix<S>> {
        let mut out = RingMatrix::zeros(ctx, self.rows * m, self.cols * m);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let block = f(self.get(i, j))?;
                if block.rows != m || block.cols != m {
                    return Err(AlgebraError::Shape(format!("block of shape {}x{}, expected {m}x{m}", block.rows, block.cols)));
                }
                for a in 0..m {
                    for b in 0..m {
                        out.set(i * m + a, j * m + b, block.get(a, b).clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// Determinant by Laplace expansion along the first row; meant for small matrices.
    pub fn determinant_laplace(&self) -> Result<R> {
        if !self.is_square() {
            return Err(AlgebraError::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let idx: Vec<usize> = (0..self.cols).collect();
        Ok(self.laplace(0, &idx))
    }

    fn laplace(&self, row: usize, cols: &[usize]) -> R {
        if cols.is_empty() {
            return R::one_in(&self.ctx);
        }
        let mut acc = R::zero_in(&self.ctx);
        for (k, &c) in cols.iter().enumerate() {
            let e = self.get(row, c);
            if e.is_zero_elem() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = e.mul(&self.laplace(row + 1, &rest));
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// First nonzero entry in row-major order as (row, col).
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.data.iter().position(|x| !x.is_zero_elem()).map(|p| (p / self.cols, p % self.cols))
    }
}

/// Entrywise equality; the ring context is not compared, so truncated
/// matrices with different working cutoffs compare as cosets.
impl<R: Ring> PartialEq for RingMatrix<R> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<R: Ring> fmt::Debug for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.render()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rings whose square matrices can be inverted when invertible (or at least
/// in the shapes the collapse needs).
pub trait MatrixInverse: Ring {
    fn invert_matrix(m: &RingMatrix<Self>) -> Result<RingMatrix<Self>>;
}

/// Gauss-Jordan inversion using, in each column, the first row whose entry
/// is a unit of the ring.
pub fn gauss_jordan_inverse<R: Ring>(m: &RingMatrix<R>) -> Result<RingMatrix<R>> {
    if !m.is_square() {
        return Err(AlgebraError::Shape(format!("inverse of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = RingMatrix::<R>::identity(m.ctx.clone(), n);
    for col in 0..n {
        let mut pivot = None;
        for r in col..n {
            if let Some(u) = a.get(r, col).try_inverse() {
                pivot = Some((r, u));
                break;
            }
        }
        let Some((p, u)) = pivot else {
            return Err(AlgebraError::NotInvertible(format!("no unit pivot in column {col}")));
        };
        if p != col {
            for j in 0..n {
                a.data.swap(p * n + j, col * n + j);
                inv.data.swap(p * n + j, col * n + j);
            }
        }
        for j in 0..n {
            let idx = col * n + j;
            a.data[idx] = a.data[idx].mul(&u);
            inv.data[idx] = inv.data[idx].mul(&u);
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a.get(r, col).clone();
            if factor.is_zero_elem() {
                continue;
            }
            for j in 0..n {
                let t = a.get(col, j).mul(&factor);
                a.data[r * n + j] = a.data[r * n + j].sub(&t);
                let t = inv.get(col, j).mul(&factor);
                inv.data[r * n + j] = inv.data[r * n + j].sub(&t);
            }
        }
    }
    Ok(inv)
}

/// Rank over a field by Gaussian elimination with first-nonzero pivots.
pub fn field_rank<F: Field>(m: &RingMatrix<F>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(p) = (pivot_row..rows).find(|&r| !a.get(r, col).is_zero_elem()) else {
            continue;
        };
        if p != pivot_row {
            for j in 0..cols {
                a.data.swap(p * cols + j, pivot_row * cols + j);
            }
        }
        let inv = a.get(pivot_row, col).try_inverse().expect("nonzero field element");
        for r in pivot_row + 1..rows {
            let e = a.get(r, col);
            if e.is_zero_elem() {
                continue;
            }
            let factor = e.mul(&inv);
            for j in col..cols {
                let t = a.get(pivot_row, j).mul(&factor);
                a.data[r * cols + j] = a.data[r * cols + j].sub(&t);
            }
        }
        pivot_row += 1;
        rank += 1;
    }
    rank
}

/// Fields with an exact rank routine.
pub trait FieldRank: Field {
    fn matrix_rank(m: &RingMatrix<Self>) -> usize {
        field_rank(m)
    }
}

impl FieldRank for num_rational::BigRational {}
impl FieldRank for crate::ring::Fp {}

impl MatrixInverse for num_rational::BigRational {
    fn invert_matrix(m: &RingMatrix<Self>) -> Result<RingMatrix<Self>> {
        let det = field_determinant(m)?;
        if det.is_zero_elem() {
            return Err(AlgebraError::NotInvertible("0".into()));
        }
        gauss_jordan_inverse(m)
    }
}

impl MatrixInverse for crate::ring::Fp {
    fn invert_matrix(m: &RingMatrix<Self>) -> Result<RingMatrix<Self>> {
        let det = field_determinant(m)?;
        if det.is_zero_elem() {
            return Err(AlgebraError::NotInvertible("0".into()));
        }
        gauss_jordan_inverse(m)
    }
}

impl MatrixInverse for crate::group_ring::GroupRingElement {
    fn invert_matrix(m: &RingMatrix<Self>) -> Result<RingMatrix<Self>> {
        gauss_jordan_inverse(m).map_err(|_| {
            let det = if m.rows() <= 8 { m.determinant_laplace().map(|d| d.render()).unwrap_or_default() } else { "?".into() };
            AlgebraError::NotInvertible(det)
        })
    }
}

/// Determinant over a field by Gaussian elimination.
pub fn field_determinant<F: Field>(m: &RingMatrix<F>) -> Result<F> {
    if !m.is_square() {
        return Err(AlgebraError::Shape(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut det = F::one_in(&m.ctx);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero_elem()) else {
            return Ok(F::zero_in(&m.ctx));
        };
        if p != col {
            for j in 0..n {
                a.data.swap(p * n + j, col * n + j);
            }
            det = det.neg();
        }
        let piv = a.get(col, col).clone();
        det = det.mul(&piv);
        let inv = piv.try_inverse().expect("nonzero field element");
        for r in col + 1..n {
            let e = a.get(r, col);
            if e.is_zero_elem() {
                continue;
            }
            let factor = e.mul(&inv);
            for j in col..n {
                let t = a.get(col, j).mul(&factor);
                a.data[r * n + j] = a.data[r * n + j].sub(&t);
            }
        }
    }
    Ok(det)
}

impl<F: crate::ring::CoeffField> MatrixInverse for crate::tower::RatFn<F> {
    fn invert_matrix(m: &RingMatrix<Self>) -> Result<RingMatrix<Self>> {
        let det = field_determinant(m)?;
        if det.is_zero_elem() {
            return Err(AlgebraError::NotInvertible("0".into()));
        }
        gauss_jordan_inverse(m)
    }
}

impl MatrixInverse for crate::tower::RationalFnR {
    /// Inverts over Q(t) and maps back; the determinant must be a unit of R.
    fn invert_matrix(m: &RingMatrix<Self>) -> Result<RingMatrix<Self>> {
        use crate::tower::{RatFnCtx, RationalFnR};
        let ctx = RatFnCtx::new(1, ());
        let q = m.map(ctx, |x| x.to_ratfn());
        let det = field_determinant(&q)?;
        let det_r = RationalFnR::from_ratfn(&det)
            .ok_or_else(|| AlgebraError::InvariantViolation(format!("determinant {det:?} left R")))?;
        if !det_r.is_unit() {
            return Err(AlgebraError::NotInvertible(det_r.render()));
        }
        let inv = gauss_jordan_inverse(&q)?;
        inv.try_map((), |x| {
            RationalFnR::from_ratfn(x)
                .ok_or_else(|| AlgebraError::InvariantViolation(format!("inverse entry {x:?} is not in R")))
        })
    }
}

/// Exact inverse; `M * M^-1 = I` is verified before returning.
pub fn exact_inverse<R: MatrixInverse>(m: &RingMatrix<R>) -> Result<RingMatrix<R>> {
    if !m.is_square() {
        return Err(AlgebraError::Shape(format!("inverse of a {}x{} matrix", m.rows, m.cols)));
    }
    let inv = R::invert_matrix(m)?;
    if !m.mul(&inv)?.is_identity() {
        return Err(AlgebraError::InvariantViolation("computed inverse fails M*M^-1 = I".into()));
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qm(rows: &[&[i64]]) -> RingMatrix<BigRational> {
        RingMatrix::from_rows((), rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn shapes_are_checked() {
        let a = qm(&[&[1, 2]]);
        assert!(a.mul(&a).is_err());
        assert!(a.add(&qm(&[&[1], &[2]])).is_err());
        assert!(RingMatrix::<BigRational>::new((), 2, 2, vec![q(1)]).is_err());
    }

    #[test]
    fn rational_inverse() {
        let m = qm(&[&[1, 1], &[0, 1]]);
        assert_eq!(exact_inverse(&m).unwrap(), qm(&[&[1, -1], &[0, 1]]));
        assert!(matches!(exact_inverse(&qm(&[&[1, 2], &[2, 4]])), Err(AlgebraError::NotInvertible(_))));
        let i3 = RingMatrix::<BigRational>::identity((), 3);
        assert_eq!(exact_inverse(&i3).unwrap(), i3);
    }

    #[test]
    fn ranks_and_determinants() {
        assert_eq!(field_rank(&qm(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        assert_eq!(field_rank(&RingMatrix::<BigRational>::zeros((), 0, 3)), 0);
        assert_eq!(qm(&[&[2, 1], &[7, 4]]).determinant_laplace().unwrap(), q(1));
    }
}
