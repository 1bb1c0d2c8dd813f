//! Dense exact linear algebra over a prime field.
//!
//! Matrices here are small (degreewise pieces of graded modules), so a
//! plain dense row-reduction is the right tool. Everything is
//! deterministic: pivots are always the leftmost available column, and
//! kernel bases come out in ascending free-column order.

use crate::ringkernel::field::{FieldElement, PrimeField};

/// Row-major dense matrix over `GF(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatGF {
    pub rows: usize,
    pub cols: usize,
    data: Vec<FieldElement>,
}

impl MatGF {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatGF {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatGF::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul_vec(&self, field: &PrimeField, v: &[FieldElement]) -> Vec<FieldElement> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc: u64 = 0;
                for c in 0..self.cols {
                    acc = (acc + self.get(r, c) as u64 * v[c] as u64) % field.characteristic() as u64;
                }
                acc as u32
            })
            .collect()
    }

    pub fn mul(&self, field: &PrimeField, other: &MatGF) -> MatGF {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = MatGF::zero(self.rows, other.cols);
        let p = field.characteristic() as u64;
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = (out.get(r, c) as u64 + a as u64 * other.get(k, c) as u64) % p;
                    out.set(r, c, v as u32);
                }
            }
        }
        out
    }

    pub fn rank(&self, field: &PrimeField) -> usize {
        let mut ech = Echelon::new(field.clone(), self.cols);
        for r in 0..self.rows {
            ech.insert(self.row(r).to_vec());
        }
        ech.rank()
    }

    /// Rank computed by inserting columns; equals `rank` but avoids a
    /// transpose when the matrix is naturally built column-wise.
    pub fn column_rank(&self, field: &PrimeField) -> usize {
        let mut ech = Echelon::new(field.clone(), self.rows);
        for c in 0..self.cols {
            ech.insert(self.column(c));
        }
        ech.rank()
    }

    /// Basis of the right kernel `{v : Av = 0}`, one vector per free column,
    /// in ascending free-column order. Each vector has a 1 in its free
    /// column; this makes the basis canonical.
    pub fn kernel_basis(&self, field: &PrimeField) -> Vec<Vec<FieldElement>> {
        let (rref, pivots) = self.rref(field);
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = Some(ri);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                // pivot variable = -sum(free coefficients)
                v[pc] = field.neg(rref.get(ri, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form together with the pivot columns of each row.
    pub fn rref(&self, field: &PrimeField) -> (MatGF, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(sel) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if sel != row {
                for c in 0..m.cols {
                    let a = m.get(row, c);
                    let b = m.get(sel, c);
                    m.set(row, c, b);
                    m.set(sel, c, a);
                }
            }
            let inv = field.inv(m.get(row, col));
            for c in 0..m.cols {
                m.set(row, c, field.mul(m.get(row, c), inv));
            }
            for r in 0..m.rows {
                if r != row && m.get(r, col) != 0 {
                    let factor = m.get(r, col);
                    for c in 0..m.cols {
                        let v = field.sub(m.get(r, c), field.mul(factor, m.get(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// One solution of `Ax = b` with free variables set to zero, or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, field: &PrimeField, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        debug_assert_eq!(b.len(), self.rows);
        let mut aug = MatGF::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let (rref, pivots) = aug.rref(field);
        for (ri, &pc) in pivots.iter().enumerate() {
            if pc == self.cols {
                return None; // pivot in the augmented column
            }
            let _ = ri;
        }
        let mut x = vec![0; self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = rref.get(ri, self.cols);
        }
        Some(x)
    }
}

/// A growing reduced echelon basis of a subspace of `GF(p)^width`.
///
/// Rows are kept fully reduced and sorted by pivot column, so membership
/// tests and canonical representatives are cheap and deterministic.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    width: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, width: usize) -> Self {
        Echelon {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    /// Fully reduce `v` against the current basis.
    pub fn reduce(&self, mut v: Vec<FieldElement>) -> Vec<FieldElement> {
        debug_assert_eq!(v.len(), self.width);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                for i in 0..self.width {
                    v[i] = self.field.sub(v[i], self.field.mul(c, row[i]));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&c| c == 0)
    }

    /// Insert a vector; returns `true` when it enlarged the subspace.
    pub fn insert(&mut self, v: Vec<FieldElement>) -> bool {
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = self.field.inv(v[pivot]);
        for c in v.iter_mut() {
            *c = self.field.mul(*c, inv);
        }
        // back-substitute into existing rows to stay fully reduced
        for row in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for i in 0..self.width {
                    row[i] = self.field.sub(row[i], self.field.mul(c, v[i]));
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, v);
        true
    }

    /// Columns without a pivot, i.e. coordinates of a complement basis.
    pub fn non_pivot_columns(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut it = self.pivots.iter().peekable();
        for c in 0..self.width {
            if it.peek() == Some(&&c) {
                it.next();
            } else {
                out.push(c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn from_rows(rows: &[&[u32]]) -> MatGF {
        let r = rows.len();
        let c = rows[0].len();
        let mut m = MatGF::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[test]
    fn rank_and_kernel() {
        let f = f5();
        let m = from_rows(&[&[1, 2, 3], &[0, 1, 1]]);
        assert_eq!(m.rank(&f), 2);
        let ker = m.kernel_basis(&f);
        assert_eq!(ker.len(), 1);
        for v in &ker {
            assert!(m.mul_vec(&f, v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let f = f5();
        let m = MatGF::zero(2, 3);
        assert_eq!(m.kernel_basis(&f).len(), 3);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = f5();
        let m = from_rows(&[&[1, 0], &[0, 0]]);
        assert_eq!(m.solve(&f, &[3, 0]), Some(vec![3, 0]));
        assert_eq!(m.solve(&f, &[3, 1]), None);
    }

    #[test]
    fn echelon_membership_and_canonical_reduce() {
        let f = f5();
        let mut e = Echelon::new(f.clone(), 3);
        assert!(e.insert(vec![1, 2, 0]));
        assert!(e.insert(vec![0, 1, 1]));
        assert!(!e.insert(vec![1, 3, 1])); // sum of the two
        assert!(e.contains(&[2, 4, 0]));
        assert!(!e.contains(&[0, 0, 1]));
        assert_eq!(e.non_pivot_columns(), vec![2]);
    }

    #[test]
    fn matrix_multiplication() {
        let f = f5();
        let a = from_rows(&[&[1, 2], &[3, 4]]);
        let b = from_rows(&[&[0, 1], &[1, 0]]);
        let ab = a.mul(&f, &b);
        assert_eq!(ab, from_rows(&[&[2, 1], &[4, 3]]));
    }
}
