use rayon::prelude::*;

use super::coeff::{CoeffRing, Coefficient};
use super::poly::LaurentPoly;
use crate::{Error, Result};

/// Dense row-major matrix of Laurent polynomials over a single coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<C: Coefficient> {
    ring: C::Ring,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly<C>>,
}

impl<C: Coefficient> PolyMatrix<C> {
    pub fn zeros(ring: &C::Ring, rows: usize, cols: usize) -> Self {
        Self { ring: ring.clone(), rows, cols, entries: vec![LaurentPoly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &C::Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one(ring);
        }
        m
    }

    pub fn from_rows(ring: &C::Ring, rows: Vec<Vec<LaurentPoly<C>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        if rows.iter().flatten().any(|e| e.ring() != ring) {
            return Err(Error::Dimension("entries from different rings".into()));
        }
        Ok(Self { ring: ring.clone(), rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn ring(&self) -> &C::Ring {
        &self.ring
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

    pub fn row(&self, i: usize) -> &[LaurentPoly<C>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<D: Coefficient>(&self, ring: &D::Ring, f: impl Fn(&LaurentPoly<C>) -> LaurentPoly<D>) -> PolyMatrix<D> {
        PolyMatrix { ring: ring.clone(), rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Submatrix keeping the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self[(i, j)].clone());
            }
        }
        Self { ring: self.ring.clone(), rows: rows.len(), cols: cols.len(), entries }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        let one = self.ring.one();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    out[(i, j)].add_scaled_shifted(&prod, &one, 0);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor · row[source]`
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &LaurentPoly<C>, from_col: usize) {
        let one = self.ring.one();
        for j in from_col..self.cols {
            let s = &self.entries[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let prod = s * factor;
            self.entries[target * self.cols + j].add_scaled_shifted(&prod, &one, 0);
        }
    }

    /// `col[target] += factor · col[source]`
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &LaurentPoly<C>, from_row: usize) {
        let one = self.ring.one();
        for i in from_row..self.rows {
            let s = &self.entries[i * self.cols + source];
            if s.is_zero() {
                continue;
            }
            let prod = s * factor;
            self.entries[i * self.cols + target].add_scaled_shifted(&prod, &one, 0);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination with full
    /// pivoting. No division ever leaves the coefficient ring.
    pub fn det_fraction_free(&self) -> Result<LaurentPoly<C>> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one(&self.ring));
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = LaurentPoly::one(&self.ring);
        for k in 0..n {
            let Some((pi, pj)) = a.cheapest_pivot(k) else {
                return Ok(LaurentPoly::zero(&self.ring));
            };
            if pi != k {
                a.swap_rows(pi, k);
                negate = !negate;
            }
            if pj != k {
                a.swap_cols(pj, k);
                negate = !negate;
            }
            if k + 1 == n {
                break;
            }
            let cols = a.cols;
            let (head, tail) = a.entries.split_at_mut((k + 1) * cols);
            let pivot_row = &head[k * cols..];
            let pivot = &pivot_row[k];
            let prev_ref = &prev;
            let update_row = |row: &mut [LaurentPoly<C>]| {
                let lead = row[k].clone();
                for j in k + 1..n {
                    // (pivot·a_ij − a_ik·a_kj) / prev, exact by Sylvester's identity
                    let mut num = if row[j].is_zero() { row[j].clone() } else { pivot * &row[j] };
                    if !lead.is_zero() && !pivot_row[j].is_zero() {
                        num = &num - &(&lead * &pivot_row[j]);
                    }
                    row[j] = if prev_ref.is_one() {
                        num
                    } else {
                        num.exact_div(prev_ref).expect("Bareiss division is exact")
                    };
                }
                row[k] = LaurentPoly::zero(pivot.ring());
            };
            if (n - k) * (n - k) > 256 {
                tail.par_chunks_mut(cols).for_each(update_row);
            } else {
                tail.chunks_mut(cols).for_each(update_row);
            }
            prev = a[(k, k)].clone();
        }
        let det = a[(n - 1, n - 1)].clone();
        Ok(if negate { -det } else { det })
    }

    /// Nonzero entry in the trailing block `k.., k..` minimizing (span, terms).
    fn cheapest_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<((u64, usize), (usize, usize))> = None;
        for i in k..self.rows {
            for j in k..self.cols {
                let e = &self[(i, j)];
                if let Some(d) = e.deg_span().finite() {
                    let key = (d, e.num_terms());
                    if best.as_ref().is_none_or(|(b, _)| key < *b) {
                        best = Some((key, (i, j)));
                        if key == (0, 1) {
                            return best.map(|(_, p)| p);
                        }
                    }
                }
            }
        }
        best.map(|(_, p)| p)
    }

    /// Invariant factors `d₁ | d₂ | …` of a matrix over `F[t±]` (prime field
    /// `F`), normalized and padded with zeros to `min(rows, cols)` entries.
    pub fn smith_diagonal(&self) -> Result<Vec<LaurentPoly<C>>> {
        if !C::is_field() {
            return Err(Error::UnsupportedRing(format!(
                "Smith form over {} is not supported; use a prime field",
                self.ring.tag()
            )));
        }
        let mut a = self.clone();
        let size = self.rows.min(self.cols);
        let mut diag = Vec::with_capacity(size);
        for k in 0..size {
            let Some((pi, pj)) = a.cheapest_pivot(k) else { break };
            a.swap_rows(pi, k);
            a.swap_cols(pj, k);
            loop {
                let pivot = a[(k, k)].clone();
                let mut leftover = false;
                for i in k + 1..a.rows {
                    if a[(i, k)].is_zero() {
                        continue;
                    }
                    let (q, r) = a[(i, k)].div_rem(&pivot)?;
                    a.add_row_multiple(i, k, &-q, k);
                    leftover |= !r.is_zero();
                }
                for j in k + 1..a.cols {
                    if a[(k, j)].is_zero() {
                        continue;
                    }
                    let (q, r) = a[(k, j)].div_rem(&pivot)?;
                    a.add_col_multiple(j, k, &-q, k);
                    leftover |= !r.is_zero();
                }
                if !leftover {
                    break;
                }
                // a remainder of smaller span is now in row k or column k
                let mut best = (k, k);
                let mut best_key = (a[(k, k)].deg_span(), a[(k, k)].num_terms());
                for i in k + 1..a.rows {
                    let e = &a[(i, k)];
                    if !e.is_zero() && (e.deg_span(), e.num_terms()) < best_key {
                        best_key = (e.deg_span(), e.num_terms());
                        best = (i, k);
                    }
                }
                for j in k + 1..a.cols {
                    let e = &a[(k, j)];
                    if !e.is_zero() && (e.deg_span(), e.num_terms()) < best_key {
                        best_key = (e.deg_span(), e.num_terms());
                        best = (k, j);
                    }
                }
                a.swap_rows(best.0, k);
                a.swap_cols(best.1, k);
            }
            diag.push(a[(k, k)].normalized());
        }
        // diagonal → Smith form via pairwise (gcd, lcm)
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                let g = diag[i].gcd(&diag[j])?;
                if g != diag[i] {
                    let l = diag[i].lcm(&diag[j])?;
                    diag[i] = g;
                    diag[j] = l;
                }
            }
        }
        diag.resize(size, LaurentPoly::zero(&self.ring));
        Ok(diag)
    }
}

impl<C: Coefficient> std::ops::Index<(usize, usize)> for PolyMatrix<C> {
    type Output = LaurentPoly<C>;

    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly<C> {
        &self.entries[i * self.cols + j]
    }
}

impl<C: Coefficient> std::ops::IndexMut<(usize, usize)> for PolyMatrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly<C> {
        &mut self.entries[i * self.cols + j]
    }
}

/// Row-reduce `b` by unimodular row operations until its nonzero rows come
/// first and have full rank, mirroring every operation on `f` as the inverse
/// column operation so that `f·b` is preserved. Returns the rank of `b`.
///
/// After the call the rows of `b` past the rank are zero, so the trailing
/// columns of `f` describe `f` in a basis adapted to `ker b`.
pub(crate) fn reduce_rows_tracking<C: Coefficient>(b: &mut PolyMatrix<C>, f: &mut PolyMatrix<C>) -> Result<usize> {
    debug_assert_eq!(f.cols, b.rows);
    let mut rank = 0;
    for col in 0..b.cols {
        if rank == b.rows {
            break;
        }
        loop {
            let mut best: Option<(usize, (crate::laurent::Degree, usize))> = None;
            for i in rank..b.rows {
                let e = &b[(i, col)];
                if !e.is_zero() {
                    let key = (e.deg_span(), e.num_terms());
                    if best.as_ref().is_none_or(|(_, bk)| key < *bk) {
                        best = Some((i, key));
                    }
                }
            }
            let Some((pi, _)) = best else { break };
            b.swap_rows(pi, rank);
            f.swap_cols(pi, rank);
            let pivot = b[(rank, col)].clone();
            let mut done = true;
            for i in rank + 1..b.rows {
                if b[(i, col)].is_zero() {
                    continue;
                }
                let (q, r) = b[(i, col)].div_rem(&pivot)?;
                // row_i -= q·row_rank  ⇔  col_rank += q·col_i
                b.add_row_multiple(i, rank, &-q.clone(), col);
                f.add_col_multiple(rank, i, &q, 0);
                done &= r.is_zero();
            }
            if done {
                rank += 1;
                break;
            }
        }
    }
    Ok(rank)
}
