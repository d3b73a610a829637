//! Dense rational matrices with fraction-free elimination.
//!
//! Rank, kernel and determinant are computed over the integers after clearing
//! denominators row by row: elimination steps are cross-multiplications followed
//! by a content reduction, so no rounding ever occurs and intermediate growth
//! stays close to the size of the minors of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        QMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        assert!(!rows.is_empty(), "need at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        QMatrix::new(nrows, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::rat::rat(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn column_vector(entries: Vec<Rat>) -> Self {
        let n = entries.len();
        QMatrix::new(n, 1, entries)
    }

    pub fn transpose(&self) -> Self {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn stack(blocks: &[QMatrix]) -> QMatrix {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols));
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for b in blocks {
            entries.extend(b.entries.iter().cloned());
        }
        QMatrix::new(rows, cols, entries)
    }

    /// Submatrix with the given (0-based) row/column selections.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self[(i, j)].clone()))
            .collect();
        QMatrix::new(rows.len(), cols.len(), entries)
    }

    fn to_int_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut lcm = BigInt::one();
                for e in row {
                    lcm = lcm.lcm(e.denom());
                }
                let ints: Vec<BigInt> = row.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
                reduce_content(ints)
            })
            .collect()
    }

    /// Row echelon form over the integers; returns (rows, pivot columns).
    fn int_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut m = self.to_int_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            // prefer the shortest nonzero entry as pivot to limit growth
            let mut best: Option<(usize, u64)> = None;
            for i in r..m.len() {
                if !m[i][c].is_zero() {
                    let bits = m[i][c].bits();
                    if best.map_or(true, |(_, b)| bits < b) {
                        best = Some((i, bits));
                    }
                }
            }
            let Some((p, _)) = best else { continue };
            m.swap(r, p);
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let a = m[r][c].clone();
                let b = m[i][c].clone();
                for j in 0..self.cols {
                    m[i][j] = &m[i][j] * &a - &m[r][j] * &b;
                }
                m[i] = reduce_content(std::mem::take(&mut m[i]));
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.int_echelon().1.len()
    }

    /// Canonical basis of the right null space, one column vector per free
    /// column: the free coordinate is 1 and pivot coordinates are solved.
    pub fn kernel(&self) -> Vec<QMatrix> {
        let (ech, pivots) = self.int_echelon();
        // reduced echelon over Q
        let r = pivots.len();
        let mut rr: Vec<Vec<Rat>> = ech[..r]
            .iter()
            .map(|row| row.iter().map(|e| Rat::from_integer(e.clone())).collect())
            .collect();
        for k in (0..r).rev() {
            let pc = pivots[k];
            let inv = rr[k][pc].clone();
            for j in 0..self.cols {
                rr[k][j] = &rr[k][j] / &inv;
            }
            for i in 0..k {
                if !rr[i][pc].is_zero() {
                    let f = rr[i][pc].clone();
                    for j in 0..self.cols {
                        let sub = &f * &rr[k][j];
                        rr[i][j] = &rr[i][j] - &sub;
                    }
                }
            }
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -rr[k][free].clone();
            }
            basis.push(QMatrix::column_vector(v));
        }
        basis
    }

    /// Exact determinant of a square matrix (Bareiss on the cleared-denominator
    /// integer matrix, with the row scales divided back out).
    pub fn det(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("det of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        // clear denominators, remembering the divisor
        let mut scale = Rat::one();
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let row = self.row(i);
                let mut lcm = BigInt::one();
                for e in row {
                    lcm = lcm.lcm(e.denom());
                }
                scale *= Rat::from_integer(lcm.clone());
                row.iter().map(|e| e.numer() * (&lcm / e.denom())).collect()
            })
            .collect();
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        sign = -sign;
                    }
                    None => return Ok(Rat::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &t / &prev; // exact by the Bareiss identity
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = Rat::from_integer(m[n - 1][n - 1].clone() * BigInt::from(sign));
        Ok(d / scale)
    }

    /// Determinant restricted to 4x4 inputs.
    pub fn det4(&self) -> Result<Rat> {
        if self.rows != 4 || self.cols != 4 {
            return Err(Error::Dimension(format!("det4 of {}x{}", self.rows, self.cols)));
        }
        self.det()
    }

    /// Unique solution x of self * x = b; errors when the system is
    /// inconsistent or underdetermined.
    pub fn solve_unique(&self, b: &[Rat]) -> Result<Vec<Rat>> {
        if b.len() != self.rows {
            return Err(Error::Dimension("solve: rhs length".into()));
        }
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let r_a = self.rank();
        let r_aug = aug.rank();
        if r_aug > r_a {
            return Err(Error::Inconsistent("linear system has no solution".into()));
        }
        if r_a < self.cols {
            return Err(Error::KernelDimension { expected: 0, got: self.cols - r_a });
        }
        // solution = -v[0..cols]/v[cols] for the kernel vector of the augmented matrix
        let ker = aug.kernel();
        debug_assert_eq!(ker.len(), 1);
        let v = ker[0].col_vec(0);
        let last = v[self.cols].clone();
        debug_assert!(!last.is_zero());
        Ok(v[..self.cols].iter().map(|x| -(x / &last)).collect())
    }

    /// True when the symmetric matrix is positive or negative definite.
    /// Used to decide whether a real quadric meets a linear subspace.
    pub fn is_definite(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return false;
        }
        let idx: Vec<usize> = (0..n).collect();
        let mut minors = Vec::with_capacity(n);
        for k in 1..=n {
            match self.submatrix(&idx[..k], &idx[..k]).det() {
                Ok(d) => minors.push(d),
                Err(_) => unreachable!(),
            }
        }
        if minors.iter().any(|d| d.is_zero()) {
            return false; // singular: the form has a nontrivial kernel vector
        }
        let pos = minors.iter().all(|d| d.is_positive());
        let neg = minors
            .iter()
            .enumerate()
            .all(|(i, d)| if i % 2 == 0 { d.is_negative() } else { d.is_positive() });
        pos || neg
    }
}

fn reduce_content(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for e in &row {
        if !e.is_zero() {
            g = g.gcd(e);
        }
        if g.is_one() {
            return row;
        }
    }
    if g.is_zero() || g.is_one() {
        return row;
    }
    for e in &mut row {
        *e = &*e / &g;
    }
    row
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }
}

impl std::fmt::Display for QMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(crate::rat::format_rat).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
