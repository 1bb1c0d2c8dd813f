//! Degreewise k-bases: monomial bases of graded free modules and coset
//! bases of presented modules. These are the coordinate systems all exact
//! linear algebra in the crate runs in.

use std::sync::Arc;

use crate::linalg::{Echelon, MatGF};
use crate::ringkernel::{Monomial, Polynomial, QuotientRing};

/// Basis of the degree-`degree` piece of a free module with the given
/// shifts: pairs `(component, standard monomial)`, ordered by component
/// then monomial order.
pub struct FreeDegreeBasis {
    pub degree: i64,
    pub items: Vec<(usize, Monomial)>,
    offsets: Vec<usize>,
    shifts: Vec<i64>,
}

impl FreeDegreeBasis {
    pub fn new(ring: &QuotientRing, shifts: &[i64], degree: i64) -> Self {
        let mut items = Vec::new();
        let mut offsets = Vec::with_capacity(shifts.len());
        for (j, &s) in shifts.iter().enumerate() {
            offsets.push(items.len());
            for m in ring.monomial_basis(degree - s).iter() {
                items.push((j, m.clone()));
            }
        }
        FreeDegreeBasis {
            degree,
            items,
            offsets,
            shifts: shifts.to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.items.len()
    }

    pub fn index_of(&self, ring: &QuotientRing, component: usize, m: &Monomial) -> Option<usize> {
        let local = ring.basis_index(self.degree - self.shifts[component], m)?;
        Some(self.offsets[component] + local)
    }

    /// Coordinates of a homogeneous element given as one polynomial per
    /// component (already in normal form).
    pub fn coords_of(&self, ring: &QuotientRing, column: &[Polynomial]) -> Vec<u32> {
        let mut v = vec![0u32; self.items.len()];
        for (j, poly) in column.iter().enumerate() {
            for (m, c) in poly.terms() {
                let idx = self
                    .index_of(ring, j, m)
                    .expect("normal-form term must be a standard monomial of the right degree");
                v[idx] = c;
            }
        }
        v
    }

    /// The element with the given coordinates, as a polynomial column.
    pub fn column_of(&self, ring: &QuotientRing, coords: &[u32]) -> Vec<Polynomial> {
        let n = ring.num_vars();
        let mut column = vec![Polynomial::zero(n); self.shifts.len()];
        for (idx, &c) in coords.iter().enumerate() {
            if c != 0 {
                let (j, m) = &self.items[idx];
                column[*j] = column[*j].add(ring.field(), &Polynomial::monomial(m.clone(), c));
            }
        }
        column
    }
}

/// The degree-`d` piece of a presented module `coker(psi)`: the ambient
/// free piece modulo the image of `psi` in that degree, with an explicit
/// section. `project` maps ambient coordinates onto coset coordinates and
/// `lift` picks the canonical representative.
#[derive(Debug)]
pub struct QuotientSpace {
    pub ambient_dim: usize,
    image: Echelon,
    coset_cols: Vec<usize>,
}

impl QuotientSpace {
    pub fn new(ambient_dim: usize, image: Echelon) -> Self {
        let coset_cols = image.non_pivot_columns();
        QuotientSpace {
            ambient_dim,
            image,
            coset_cols,
        }
    }

    pub fn dim(&self) -> usize {
        self.coset_cols.len()
    }

    pub fn project(&self, ambient: Vec<u32>) -> Vec<u32> {
        let reduced = self.image.reduce(ambient);
        self.coset_cols.iter().map(|&c| reduced[c]).collect()
    }

    pub fn lift(&self, coset: &[u32]) -> Vec<u32> {
        let mut v = vec![0u32; self.ambient_dim];
        for (i, &c) in self.coset_cols.iter().enumerate() {
            v[c] = coset[i];
        }
        v
    }

    pub fn contains_in_image(&self, ambient: &[u32]) -> bool {
        self.image.contains(ambient)
    }

    /// Express an ambient vector known to lie in the image as a combination
    /// is not needed; membership and projection cover all callers.
    pub fn image_rank(&self) -> usize {
        self.image.rank()
    }
}

/// Matrix of a k-linear map given columnwise by images of basis elements.
pub fn matrix_from_columns(rows: usize, columns: &[Vec<u32>]) -> MatGF {
    let mut m = MatGF::zero(rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        debug_assert_eq!(col.len(), rows);
        for (i, &v) in col.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m
}

pub fn arc_slice_shifts(shifts: &Arc<Vec<i64>>) -> &[i64] {
    shifts.as_slice()
}
