//! Integer and rational matrices with the normal-form algorithms the
//! lattice side needs: row Hermite normal form, Smith normal form with a
//! left transform, Bareiss determinants, rational inverses and kernels.

use num::{BigInt, Integer, One, Signed, Zero};

use super::Rat;

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
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
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c));
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
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

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| Rat::from_integer(v.clone())).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row(dst) -= q * row(src)
    fn row_submul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            self.data[dst * self.cols + j] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * other.get(l, j);
                    out.data[i * other.cols + j] += v;
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for t in 0..n - 1 {
            if m.get(t, t).is_zero() {
                let Some(r) = (t + 1..n).find(|&r| !m.get(r, t).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(t, r);
                sign = -sign;
            }
            for i in t + 1..n {
                for j in t + 1..n {
                    let v = (m.get(i, j) * m.get(t, t) - m.get(i, t) * m.get(t, j))
                        .div_exact_ref(&prev);
                    m.set(i, j, v);
                }
                m.set(i, t, BigInt::zero());
            }
            prev = m.get(t, t).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }
}

trait DivExactRef {
    fn div_exact_ref(&self, d: &BigInt) -> BigInt;
}

impl DivExactRef for BigInt {
    fn div_exact_ref(&self, d: &BigInt) -> BigInt {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }
}

/// Row-style Hermite normal form.
///
/// Returns a basis of the integer row lattice of `m`: pivots positive and
/// strictly right-down, entries above each pivot reduced into `[0, pivot)`,
/// zero rows dropped.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let rows = a.rows;
    let cols = a.cols;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        // Euclidean elimination below the pivot row.
        loop {
            let best = (pivot_row..rows)
                .filter(|&r| !a.get(r, col).is_zero())
                .min_by_key(|&r| a.get(r, col).abs());
            let Some(best) = best else { break };
            a.swap_rows(pivot_row, best);
            let mut dirty = false;
            for r in pivot_row + 1..rows {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let q = a.get(r, col).div_floor(a.get(pivot_row, col));
                a.row_submul(r, pivot_row, &q);
                if !a.get(r, col).is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        if a.get(pivot_row, col).is_zero() {
            continue;
        }
        if a.get(pivot_row, col).is_negative() {
            a.negate_row(pivot_row);
        }
        // Reduce entries above the pivot into [0, pivot).
        for r in 0..pivot_row {
            let q = a.get(r, col).div_floor(a.get(pivot_row, col));
            a.row_submul(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    let kept: Vec<Vec<BigInt>> = (0..pivot_row).map(|i| a.row(i).to_vec()).collect();
    IntMatrix::from_rows(kept)
}

/// Smith normal form `D = P * A * Q` with only the left transform tracked.
///
/// Returns `(D, P)` where `D` is diagonal with nonnegative entries and `P`
/// is unimodular.
pub fn snf_with_left(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut d = a.clone();
    let mut p = IntMatrix::identity(a.rows);
    let n = d.rows.min(d.cols);
    let mut t = 0;
    while t < n {
        // Find a minimal nonzero entry in the trailing submatrix.
        let mut pos: Option<(usize, usize)> = None;
        for i in t..d.rows {
            for j in t..d.cols {
                if !d.get(i, j).is_zero()
                    && pos.map_or(true, |(pi, pj)| d.get(i, j).abs() < d.get(pi, pj).abs())
                {
                    pos = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pos else { break };
        d.swap_rows(t, pi);
        p.swap_rows(t, pi);
        swap_cols(&mut d, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..d.rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                d.row_submul(i, t, &q);
                p.row_submul(i, t, &q);
                if !d.get(i, t).is_zero() {
                    // Remainder is smaller: promote it to the pivot.
                    d.swap_rows(t, i);
                    p.swap_rows(t, i);
                    clean = false;
                }
            }
            for j in t + 1..d.cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                col_submul(&mut d, j, t, &q);
                if !d.get(t, j).is_zero() {
                    swap_cols(&mut d, t, j);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        // Divisibility condition d_t | d_{t+1..}; merge offending rows.
        let mut redo = false;
        'outer: for i in t + 1..d.rows {
            for j in t + 1..d.cols {
                if !d.get(i, j).is_zero() && !(d.get(i, j) % d.get(t, t)).is_zero() {
                    let one = BigInt::from(-1);
                    d.row_submul(t, i, &one); // row t += row i
                    p.row_submul(t, i, &one);
                    redo = true;
                    break 'outer;
                }
            }
        }
        if redo {
            continue;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            p.negate_row(t);
        }
        t += 1;
    }
    (d, p)
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        let x = m.get(i, a).clone();
        let y = m.get(i, b).clone();
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

/// col(dst) -= q * col(src)
fn col_submul(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for i in 0..m.rows {
        let v = m.get(i, src) * q;
        let cur = m.get(i, dst).clone();
        m.set(i, dst, cur - v);
    }
}

/// Basis of the integer lattice `{x in Z^r : x * m in Z^r}` for square
/// rational `m`, via the Smith normal form of the denominator-cleared
/// matrix.
pub fn snf_preimage(m: &RatMatrix) -> IntMatrix {
    assert_eq!(m.rows, m.cols);
    let r = m.rows;
    let (a, den) = m.clear_denominators();
    let (d, p) = snf_with_left(&a);
    // x*A in den*Z^r  <=>  y_i * d_i in den*Z for y = x * P^{-1}; the basis
    // in y-coordinates is diag(den / gcd(d_i, den)), so rows are c_i * P_i.
    let mut rows = Vec::with_capacity(r);
    for i in 0..r {
        let di = if i < d.rows.min(d.cols) {
            d.get(i, i).clone()
        } else {
            BigInt::zero()
        };
        let c = &den / di.gcd(&den);
        rows.push(p.row(i).iter().map(|v| v * &c).collect());
    }
    hnf(&IntMatrix::from_rows(rows))
}

/// Dense rational matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c));
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * other.get(l, j);
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + v);
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// `(A, den)` with `A` integer and `self = A / den`.
    pub fn clear_denominators(&self) -> (IntMatrix, BigInt) {
        let mut den = BigInt::one();
        for v in &self.data {
            den = den.lcm(v.denom());
        }
        let data = self
            .data
            .iter()
            .map(|v| v.numer() * (&den / v.denom()))
            .collect();
        (
            IntMatrix {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            den,
        )
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            a.swap_rows_rat(col, piv);
            inv.swap_rows_rat(col, piv);
            let d = a.get(col, col).clone();
            for j in 0..n {
                let v = a.get(col, j) / &d;
                a.set(col, j, v);
                let v = inv.get(col, j) / &d;
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let v = a.get(r, j) - &f * a.get(col, j);
                    a.set(r, j, v);
                    let v = inv.get(r, j) - &f * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(piv) = (rank..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows_rat(rank, piv);
            for r in rank + 1..a.rows {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col) / a.get(rank, col);
                for j in col..a.cols {
                    let v = a.get(r, j) - &f * a.get(rank, j);
                    a.set(r, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Solve `x * self = v` for a full-row-rank matrix via the Gram matrix;
    /// `None` when `v` is outside the row span.
    pub fn solve_left(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.cols);
        let bt = self.transpose();
        let gram = self.mul(&bt);
        let gram_inv = gram.inverse()?;
        // x = v * B^T * (B B^T)^{-1}
        let vb: Vec<Rat> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &v[j] * self.get(i, j))
                    .fold(Rat::zero(), |a, b| a + b)
            })
            .collect();
        let x: Vec<Rat> = (0..self.rows)
            .map(|i| {
                (0..self.rows)
                    .map(|l| &vb[l] * gram_inv.get(l, i))
                    .fold(Rat::zero(), |a, b| a + b)
            })
            .collect();
        // Verify x * B = v (v may lie outside the row span).
        for j in 0..self.cols {
            let s: Rat = (0..self.rows)
                .map(|i| &x[i] * self.get(i, j))
                .fold(Rat::zero(), |a, b| a + b);
            if s != v[j] {
                return None;
            }
        }
        Some(x)
    }

    fn swap_rows_rat(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}
