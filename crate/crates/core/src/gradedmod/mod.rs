//! Finitely generated graded modules presented as cokernels of maps
//! between graded free modules, with Hilbert functions, minimalization,
//! direct sums, shifts and a witnessed isomorphism test.

pub mod basis;
pub mod hom;
pub mod iso;
pub mod minimal;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::hilbert::HilbertSeries;
use crate::linalg::{Echelon, MatGF};
use crate::ringkernel::{Polynomial, QuotientRing};

use basis::{matrix_from_columns, FreeDegreeBasis, QuotientSpace};

pub use hom::ModuleHom;
pub use iso::{is_isomorphic, IsoVerdict};
pub use minimal::{minimalize, minimalize_with_maps, Minimalization};

/// A graded free module, recorded by the degrees of its basis elements.
/// `shifts[j] = a` means basis element `j` generates a copy of `A(-a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedFreeModule {
    shifts: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(shifts: Vec<i64>) -> Self {
        GradedFreeModule { shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn min_shift(&self) -> Option<i64> {
        self.shifts.iter().copied().min()
    }

    pub fn max_shift(&self) -> Option<i64> {
        self.shifts.iter().copied().max()
    }

    pub fn shifted(&self, a: i64) -> Self {
        GradedFreeModule {
            shifts: self.shifts.iter().map(|s| s + a).collect(),
        }
    }

    pub fn degree_basis(&self, ring: &QuotientRing, d: i64) -> FreeDegreeBasis {
        FreeDegreeBasis::new(ring, &self.shifts, d)
    }

    pub fn dim_k(&self, ring: &QuotientRing, d: i64) -> usize {
        self.shifts
            .iter()
            .map(|&s| ring.dim_k(d - s))
            .sum()
    }

    pub fn hilbert(&self, ring: &QuotientRing, hi: i64) -> HilbertSeries {
        let lo = self.min_shift().unwrap_or(0);
        HilbertSeries::from_fn(lo, hi, |d| self.dim_k(ring, d))
    }
}

/// A degree-0 homomorphism between graded free modules, stored as a matrix
/// of homogeneous polynomials: entry `(i, j)` has degree
/// `source.shifts[j] - target.shifts[i]` (or is zero). Columns are the
/// images of the source basis elements.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    ring: Arc<QuotientRing>,
    source: GradedFreeModule,
    target: GradedFreeModule,
    entries: Vec<Vec<Polynomial>>, // entries[row][col]
}

impl ModuleMap {
    pub fn new(
        ring: Arc<QuotientRing>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::ShapeMismatch(format!(
                "expected {}x{} entries",
                target.rank(),
                source.rank()
            )));
        }
        let mut normalized = Vec::with_capacity(entries.len());
        for (i, row) in entries.into_iter().enumerate() {
            let mut out_row = Vec::with_capacity(row.len());
            for (j, e) in row.into_iter().enumerate() {
                if e.num_vars() != ring.num_vars() {
                    return Err(Error::VariableCountMismatch {
                        expected: ring.num_vars(),
                        got: e.num_vars(),
                    });
                }
                let e = ring.normal_form(&e);
                let expected = source.shifts()[j] - target.shifts()[i];
                if !e.is_zero() {
                    if expected < 0 || e.homogeneous_degree() != Some(expected as u32) {
                        return Err(Error::InhomogeneousEntry {
                            row: i,
                            col: j,
                            expected,
                        });
                    }
                }
                out_row.push(e);
            }
            normalized.push(out_row);
        }
        Ok(ModuleMap {
            ring,
            source,
            target,
            entries: normalized,
        })
    }

    pub fn zero(ring: Arc<QuotientRing>, source: GradedFreeModule, target: GradedFreeModule) -> Self {
        let n = ring.num_vars();
        let entries = vec![vec![Polynomial::zero(n); source.rank()]; target.rank()];
        ModuleMap {
            ring,
            source,
            target,
            entries,
        }
    }

    pub fn identity(ring: Arc<QuotientRing>, free: &GradedFreeModule) -> Self {
        let n = ring.num_vars();
        let r = free.rank();
        let mut entries = vec![vec![Polynomial::zero(n); r]; r];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = Polynomial::constant(1, n);
        }
        ModuleMap {
            ring,
            source: free.clone(),
            target: free.clone(),
            entries,
        }
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row][col]
    }

    pub fn column(&self, col: usize) -> Vec<Polynomial> {
        (0..self.target.rank())
            .map(|row| self.entries[row][col].clone())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    /// Every entry lies in the irrelevant maximal ideal (no unit entries).
    pub fn is_minimal(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|e| e.is_zero() || e.homogeneous_degree() != Some(0))
    }

    /// `self` after `other`: requires `other.target == self.source`.
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.source != other.target {
            return Err(Error::ShapeMismatch(
                "composition shape mismatch".to_string(),
            ));
        }
        let field = self.ring.field();
        let n = self.ring.num_vars();
        let mut entries = vec![vec![Polynomial::zero(n); other.source.rank()]; self.target.rank()];
        for i in 0..self.target.rank() {
            for j in 0..other.source.rank() {
                let mut acc = Polynomial::zero(n);
                for k in 0..self.source.rank() {
                    if self.entries[i][k].is_zero() || other.entries[k][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(field, &self.entries[i][k].mul(field, &other.entries[k][j]));
                }
                entries[i][j] = self.ring.normal_form(&acc);
            }
        }
        Ok(ModuleMap {
            ring: self.ring.clone(),
            source: other.source.clone(),
            target: self.target.clone(),
            entries,
        })
    }

    /// The same matrix viewed with both source and target shifted by `a`.
    pub fn shifted(&self, a: i64) -> ModuleMap {
        ModuleMap {
            ring: self.ring.clone(),
            source: self.source.shifted(a),
            target: self.target.shifted(a),
            entries: self.entries.clone(),
        }
    }

    /// The k-linear matrix of the map in internal degree `d`.
    pub fn degree_matrix(&self, d: i64) -> MatGF {
        let src = self.source.degree_basis(&self.ring, d);
        let tgt = self.target.degree_basis(&self.ring, d);
        let mut cols = Vec::with_capacity(src.dim());
        for (j, m) in &src.items {
            let mut col = vec![Polynomial::zero(self.ring.num_vars()); self.target.rank()];
            for i in 0..self.target.rank() {
                let e = &self.entries[i][*j];
                if !e.is_zero() {
                    col[i] = self.ring.normal_form(&e.mul_term(self.ring.field(), m, 1));
                }
            }
            cols.push(tgt.coords_of(&self.ring, &col));
        }
        matrix_from_columns(tgt.dim(), &cols)
    }

    /// Structural equality of presentations (entries already normal-formed).
    pub fn same_map(&self, other: &ModuleMap) -> bool {
        self.ring.same_ring(&other.ring)
            && self.source == other.source
            && self.target == other.target
            && self.entries == other.entries
    }

    /// Place two maps with the same target side by side: `[self | other]`.
    pub fn concat_columns(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.target != other.target {
            return Err(Error::ShapeMismatch(
                "column concatenation needs equal targets".into(),
            ));
        }
        let source = GradedFreeModule::new(
            self.source
                .shifts()
                .iter()
                .chain(other.source.shifts())
                .copied()
                .collect(),
        );
        let entries: Vec<Vec<Polynomial>> = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Ok(ModuleMap {
            ring: self.ring.clone(),
            source,
            target: self.target.clone(),
            entries,
        })
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &ModuleMap) -> ModuleMap {
        let n = self.ring.num_vars();
        let source = GradedFreeModule::new(
            self.source
                .shifts()
                .iter()
                .chain(other.source.shifts())
                .copied()
                .collect(),
        );
        let target = GradedFreeModule::new(
            self.target
                .shifts()
                .iter()
                .chain(other.target.shifts())
                .copied()
                .collect(),
        );
        let mut entries = vec![vec![Polynomial::zero(n); source.rank()]; target.rank()];
        for i in 0..self.target.rank() {
            for j in 0..self.source.rank() {
                entries[i][j] = self.entries[i][j].clone();
            }
        }
        let (ro, co) = (self.target.rank(), self.source.rank());
        for i in 0..other.target.rank() {
            for j in 0..other.source.rank() {
                entries[ro + i][co + j] = other.entries[i][j].clone();
            }
        }
        ModuleMap {
            ring: self.ring.clone(),
            source,
            target,
            entries,
        }
    }
}

/// A finitely generated graded module, the cokernel of its presentation.
/// Degreewise coset bases and resolution data are cached behind mutexes;
/// the module itself is immutable once constructed.
#[derive(Debug)]
pub struct GradedModule {
    presentation: ModuleMap,
    spaces: Mutex<BTreeMap<i64, Arc<QuotientSpace>>>,
    pub(crate) res_diffs: Mutex<Vec<Arc<ModuleMap>>>,
    pub(crate) minimal_form: Mutex<Option<Arc<GradedModule>>>,
    minimal_flag: std::sync::atomic::AtomicBool,
}

impl GradedModule {
    pub fn from_presentation(presentation: ModuleMap) -> Arc<Self> {
        Arc::new(GradedModule {
            presentation,
            spaces: Mutex::new(BTreeMap::new()),
            res_diffs: Mutex::new(Vec::new()),
            minimal_form: Mutex::new(None),
            minimal_flag: std::sync::atomic::AtomicBool::new(false),
        })
    }

    /// Mark a module whose presentation is known minimal by construction
    /// (syzygy modules); `minimalize` then returns it unchanged.
    pub fn known_minimal(&self) {
        self.minimal_flag
            .store(true, std::sync::atomic::Ordering::Relaxed);
    }

    pub fn is_known_minimal(&self) -> bool {
        self.minimal_flag.load(std::sync::atomic::Ordering::Relaxed)
    }

    /// The free module `A(-s_1) + ... + A(-s_r)` as a module.
    pub fn free(ring: Arc<QuotientRing>, shifts: Vec<i64>) -> Arc<Self> {
        let target = GradedFreeModule::new(shifts);
        let source = GradedFreeModule::new(Vec::new());
        Self::from_presentation(ModuleMap::zero(ring, source, target))
    }

    /// The cyclic module `A/(f_1, ..., f_r)`.
    pub fn cyclic(ring: Arc<QuotientRing>, gens: Vec<Polynomial>) -> Result<Arc<Self>> {
        let mut shifts = Vec::new();
        let mut row = Vec::new();
        for g in gens {
            let g = ring.normal_form(&g);
            if g.is_zero() {
                continue;
            }
            let d = g
                .homogeneous_degree()
                .ok_or(Error::NonHomogeneousGenerator { index: shifts.len() })?;
            shifts.push(d as i64);
            row.push(g);
        }
        let source = GradedFreeModule::new(shifts);
        let target = GradedFreeModule::new(vec![0]);
        Ok(Self::from_presentation(ModuleMap::new(
            ring,
            source,
            target,
            vec![row],
        )?))
    }

    /// The residue field `k = A/m`.
    pub fn residue_field(ring: Arc<QuotientRing>) -> Arc<Self> {
        let n = ring.num_vars();
        let gens = (0..n).map(|i| Polynomial::variable(i, n)).collect();
        Self::cyclic(ring, gens).expect("variables are homogeneous")
    }

    pub fn zero_module(ring: Arc<QuotientRing>) -> Arc<Self> {
        Self::free(ring, Vec::new())
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        self.presentation.ring()
    }

    pub fn presentation(&self) -> &ModuleMap {
        &self.presentation
    }

    /// Degrees of the chosen generators (shifts of the ambient free module).
    pub fn gens(&self) -> &GradedFreeModule {
        self.presentation.target()
    }

    pub fn relations(&self) -> &GradedFreeModule {
        self.presentation.source()
    }

    pub fn min_gen_degree(&self) -> Option<i64> {
        self.gens().min_shift()
    }

    /// The degree-`d` piece as an explicit quotient space.
    pub fn space(&self, d: i64) -> Arc<QuotientSpace> {
        let mut spaces = self.spaces.lock().unwrap();
        if let Some(sp) = spaces.get(&d) {
            return sp.clone();
        }
        let ring = self.ring();
        let tgt = self.gens().degree_basis(ring, d);
        let mut image = Echelon::new(*ring.field(), tgt.dim());
        // image of the presentation in degree d: all monomial multiples of
        // the relation columns landing in degree d
        for (l, &rel_deg) in self.relations().shifts().iter().enumerate() {
            if rel_deg > d {
                continue;
            }
            let col = self.presentation.column(l);
            for m in ring.monomial_basis(d - rel_deg).iter() {
                let mult: Vec<Polynomial> = col
                    .iter()
                    .map(|e| ring.normal_form(&e.mul_term(ring.field(), m, 1)))
                    .collect();
                image.insert(tgt.coords_of(ring, &mult));
            }
        }
        let sp = Arc::new(QuotientSpace::new(tgt.dim(), image));
        spaces.insert(d, sp.clone());
        sp
    }

    pub fn dim_k(&self, d: i64) -> usize {
        if self.gens().rank() == 0 {
            return 0;
        }
        let lo = self.min_gen_degree().unwrap();
        if d < lo {
            return 0;
        }
        self.space(d).dim()
    }

    pub fn hilbert(&self, hi: i64) -> HilbertSeries {
        let lo = self.min_gen_degree().unwrap_or(0);
        if lo > hi {
            return HilbertSeries::zero();
        }
        HilbertSeries::from_fn(lo, hi, |d| self.dim_k(d))
    }

    /// A module is zero iff all of its generators are redundant.
    pub fn is_zero_module(&self) -> bool {
        let mut degs: Vec<i64> = self.gens().shifts().to_vec();
        degs.sort_unstable();
        degs.dedup();
        degs.into_iter().all(|d| self.dim_k(d) == 0)
    }

    /// Matrix of multiplication by a homogeneous `f` from degree `d`.
    pub fn mult_matrix(&self, d: i64, f: &Polynomial) -> MatGF {
        let ring = self.ring();
        let deg_f = f.homogeneous_degree().expect("multiplier must be homogeneous") as i64;
        let from = self.space(d);
        let to = self.space(d + deg_f);
        let from_basis = self.gens().degree_basis(ring, d);
        let to_basis = self.gens().degree_basis(ring, d + deg_f);
        let mut cols = Vec::with_capacity(from.dim());
        for ci in 0..from.dim() {
            let mut coset = vec![0u32; from.dim()];
            coset[ci] = 1;
            let ambient = from.lift(&coset);
            let column = from_basis.column_of(ring, &ambient);
            let multiplied: Vec<Polynomial> = column
                .iter()
                .map(|e| ring.normal_form(&e.mul(ring.field(), f)))
                .collect();
            cols.push(to.project(to_basis.coords_of(ring, &multiplied)));
        }
        matrix_from_columns(to.dim(), &cols)
    }

    /// Class of an element (given as a polynomial column over the
    /// generators, homogeneous of degree `d`) in coset coordinates.
    pub fn class_coords(&self, column: &[Polynomial], d: i64) -> Vec<u32> {
        let ring = self.ring();
        let basis = self.gens().degree_basis(ring, d);
        let nf: Vec<Polynomial> = column.iter().map(|e| ring.normal_form(e)).collect();
        self.space(d).project(basis.coords_of(ring, &nf))
    }

    pub fn shifted(self: &Arc<Self>, a: i64) -> Arc<GradedModule> {
        let out = GradedModule::from_presentation(self.presentation.shifted(a));
        if self.is_known_minimal() {
            out.known_minimal();
        }
        out
    }

    pub fn direct_sum(a: &Arc<Self>, b: &Arc<Self>) -> Result<Arc<GradedModule>> {
        if !a.ring().same_ring(b.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(GradedModule::from_presentation(
            a.presentation.direct_sum(&b.presentation),
        ))
    }

    pub fn same_presentation(&self, other: &GradedModule) -> bool {
        self.presentation.same_map(&other.presentation)
    }

    /// Multiset of generator degrees.
    pub fn gen_degree_multiset(&self) -> Vec<i64> {
        let mut v = self.gens().shifts().to_vec();
        v.sort_unstable();
        v
    }

    /// Free means the minimal presentation has no relations.
    pub fn is_free(self: &Arc<Self>) -> bool {
        minimalize(self).relations().rank() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringkernel::Monomial;

    fn dual_numbers() -> Arc<QuotientRing> {
        // GF(5)[x]/(x^2)
        Arc::new(
            QuotientRing::new(
                5,
                vec!["x".into()],
                vec![Polynomial::from_terms(1, [(Monomial::new(vec![2]), 1)])],
            )
            .unwrap(),
        )
    }

    #[test]
    fn free_module_hilbert() {
        let r = dual_numbers();
        let f = GradedModule::free(r.clone(), vec![0, 1]);
        // A + A(-1): (1,1) + (0,1,1) = (1,2,1)
        assert_eq!(f.hilbert(4).window(4), vec![1, 2, 1, 0, 0]);
        assert!(!f.is_zero_module());
    }

    #[test]
    fn residue_field_hilbert() {
        let r = dual_numbers();
        let k = GradedModule::residue_field(r);
        assert_eq!(k.hilbert(3).window(3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn direct_sum_and_shift_are_additive() {
        let r = dual_numbers();
        let k = GradedModule::residue_field(r.clone());
        let kk = GradedModule::direct_sum(&k, &k).unwrap();
        assert_eq!(kk.hilbert(3).window(3), vec![2, 0, 0, 0]);
        let sk = k.shifted(1);
        assert_eq!(sk.hilbert(3).window(3), vec![0, 1, 0, 0]);
    }

    #[test]
    fn degree_matrix_of_multiplication() {
        let r = dual_numbers();
        let k = GradedModule::residue_field(r.clone());
        // presentation [x]: A(-1) -> A; in degree 1 the matrix is 1x1 [1]
        let m = k.presentation().degree_matrix(1);
        assert_eq!((m.rows, m.cols), (1, 1));
        assert_eq!(m.get(0, 0), 1);
        // in degree 2 both pieces vanish (x^2 = 0 kills A_2)
        let m2 = k.presentation().degree_matrix(2);
        assert_eq!((m2.rows, m2.cols), (0, 1));
    }

    #[test]
    fn zero_module_detection() {
        let r = dual_numbers();
        let z = GradedModule::zero_module(r.clone());
        assert!(z.is_zero_module());
        // coker of identity is zero
        let free = GradedFreeModule::new(vec![0]);
        let id = ModuleMap::identity(r.clone(), &free);
        let m = GradedModule::from_presentation(id);
        assert!(m.is_zero_module());
    }
}
