//! Homomorphisms between presented modules, given by a matrix on chosen
//! generators. Well-definedness (relations map into relations) is checked
//! on construction, so a `ModuleHom` value is always an actual map.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::MatGF;
use crate::ringkernel::Polynomial;

use super::basis::matrix_from_columns;
use super::GradedModule;

/// A homogeneous map `source -> target` of internal degree `degree`:
/// entry `(i, j)` is the coefficient of target generator `i` in the image
/// of source generator `j`, homogeneous of degree
/// `source_deg(j) + degree - target_deg(i)`.
#[derive(Debug, Clone)]
pub struct ModuleHom {
    source: Arc<GradedModule>,
    target: Arc<GradedModule>,
    degree: i64,
    matrix: Vec<Vec<Polynomial>>,
}

impl ModuleHom {
    pub fn new(
        source: Arc<GradedModule>,
        target: Arc<GradedModule>,
        degree: i64,
        matrix: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let hom = Self::new_unverified(source, target, degree, matrix)?;
        hom.check_well_defined()?;
        Ok(hom)
    }

    /// Shape and homogeneity checks only. Used internally when
    /// well-definedness is guaranteed by construction and verified later.
    pub(crate) fn new_unverified(
        source: Arc<GradedModule>,
        target: Arc<GradedModule>,
        degree: i64,
        matrix: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if !source.ring().same_ring(target.ring()) {
            return Err(Error::RingMismatch);
        }
        let ring = source.ring().clone();
        let (rows, cols) = (target.gens().rank(), source.gens().rank());
        if matrix.len() != rows || matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "expected {}x{} hom matrix",
                rows, cols
            )));
        }
        let mut normalized = Vec::with_capacity(rows);
        for (i, row) in matrix.into_iter().enumerate() {
            let mut out = Vec::with_capacity(cols);
            for (j, e) in row.into_iter().enumerate() {
                let e = ring.normal_form(&e);
                let expected = source.gens().shifts()[j] + degree - target.gens().shifts()[i];
                if !e.is_zero() && (expected < 0 || e.homogeneous_degree() != Some(expected as u32))
                {
                    return Err(Error::InhomogeneousEntry {
                        row: i,
                        col: j,
                        expected,
                    });
                }
                out.push(e);
            }
            normalized.push(out);
        }
        Ok(ModuleHom {
            source,
            target,
            degree,
            matrix: normalized,
        })
    }

    fn check_well_defined(&self) -> Result<()> {
        let ring = self.source.ring();
        let pres = self.source.presentation();
        for l in 0..self.source.relations().rank() {
            let rel_deg = self.source.relations().shifts()[l];
            let rel = pres.column(l);
            // image of the relation under the matrix, as a column over the
            // target generators
            let mut image = vec![Polynomial::zero(ring.num_vars()); self.target.gens().rank()];
            for (i, img) in image.iter_mut().enumerate() {
                let mut acc = Polynomial::zero(ring.num_vars());
                for (j, r) in rel.iter().enumerate() {
                    if r.is_zero() || self.matrix[i][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(ring.field(), &self.matrix[i][j].mul(ring.field(), r));
                }
                *img = ring.normal_form(&acc);
            }
            if image.iter().all(|e| e.is_zero()) {
                continue;
            }
            let d = rel_deg + self.degree;
            let coords = self.target.class_coords(&image, d);
            if coords.iter().any(|&c| c != 0) {
                return Err(Error::ShapeMismatch(format!(
                    "relation {l} does not map into the target relations"
                )));
            }
        }
        Ok(())
    }

    pub fn zero(source: Arc<GradedModule>, target: Arc<GradedModule>, degree: i64) -> Self {
        let n = source.ring().num_vars();
        let matrix =
            vec![vec![Polynomial::zero(n); source.gens().rank()]; target.gens().rank()];
        ModuleHom {
            source,
            target,
            degree,
            matrix,
        }
    }

    pub fn identity(module: &Arc<GradedModule>) -> Self {
        let n = module.ring().num_vars();
        let r = module.gens().rank();
        let mut matrix = vec![vec![Polynomial::zero(n); r]; r];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = Polynomial::constant(1, n);
        }
        ModuleHom {
            source: module.clone(),
            target: module.clone(),
            degree: 0,
            matrix,
        }
    }

    pub fn source(&self) -> &Arc<GradedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedModule> {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn matrix(&self) -> &[Vec<Polynomial>] {
        &self.matrix
    }

    /// Image of source generator `j` as a polynomial column over the
    /// target generators.
    pub fn image_of_gen(&self, j: usize) -> Vec<Polynomial> {
        (0..self.target.gens().rank())
            .map(|i| self.matrix[i][j].clone())
            .collect()
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if !Arc::ptr_eq(&self.source, &other.target)
            && !self.source.same_presentation(&other.target)
        {
            return Err(Error::ShapeMismatch("hom composition mismatch".into()));
        }
        let ring = self.source.ring();
        let n = ring.num_vars();
        let rows = self.target.gens().rank();
        let cols = other.source.gens().rank();
        let mut matrix = vec![vec![Polynomial::zero(n); cols]; rows];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = Polynomial::zero(n);
                for k in 0..self.source.gens().rank() {
                    if self.matrix[i][k].is_zero() || other.matrix[k][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(ring.field(), &self.matrix[i][k].mul(ring.field(), &other.matrix[k][j]));
                }
                *cell = ring.normal_form(&acc);
            }
        }
        ModuleHom::new_unverified(
            other.source.clone(),
            self.target.clone(),
            self.degree + other.degree,
            matrix,
        )
    }

    /// The k-linear map `M_d -> N_{d + degree}` in coset coordinates.
    pub fn degreewise(&self, d: i64) -> MatGF {
        let ring = self.source.ring();
        let from = self.source.space(d);
        let to_deg = d + self.degree;
        let to = self.target.space(to_deg);
        let from_basis = self.source.gens().degree_basis(ring, d);
        let to_basis = self.target.gens().degree_basis(ring, to_deg);
        let mut cols = Vec::with_capacity(from.dim());
        for ci in 0..from.dim() {
            let mut coset = vec![0u32; from.dim()];
            coset[ci] = 1;
            let ambient = from.lift(&coset);
            let column = from_basis.column_of(ring, &ambient);
            // apply the matrix
            let mut image = vec![Polynomial::zero(ring.num_vars()); self.target.gens().rank()];
            for (i, img) in image.iter_mut().enumerate() {
                let mut acc = Polynomial::zero(ring.num_vars());
                for (j, c) in column.iter().enumerate() {
                    if c.is_zero() || self.matrix[i][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(ring.field(), &self.matrix[i][j].mul(ring.field(), c));
                }
                *img = ring.normal_form(&acc);
            }
            cols.push(to.project(to_basis.coords_of(ring, &image)));
        }
        matrix_from_columns(to.dim(), &cols)
    }

    pub fn is_injective_on(&self, lo: i64, hi: i64) -> bool {
        (lo..=hi).all(|d| {
            let m = self.degreewise(d);
            m.cols == 0 || m.column_rank(self.source.ring().field()) == m.cols
        })
    }

    pub fn is_surjective_on(&self, lo: i64, hi: i64) -> bool {
        (lo..=hi).all(|d| {
            let m = self.degreewise(d);
            m.rows == 0 || m.rank(self.source.ring().field()) == m.rows
        })
    }

    /// Equality as maps (difference of matrices maps into the relations).
    pub fn equals_mod_relations(&self, other: &ModuleHom) -> bool {
        if self.degree != other.degree
            || self.matrix.len() != other.matrix.len()
            || self.source.gens().rank() != other.source.gens().rank()
        {
            return false;
        }
        let ring = self.source.ring();
        for j in 0..self.source.gens().rank() {
            let d = self.source.gens().shifts()[j] + self.degree;
            let diff: Vec<Polynomial> = (0..self.target.gens().rank())
                .map(|i| self.matrix[i][j].sub(ring.field(), &other.matrix[i][j]))
                .collect();
            if diff.iter().all(|e| e.is_zero()) {
                continue;
            }
            let coords = self.target.class_coords(&diff, d);
            if coords.iter().any(|&c| c != 0) {
                return false;
            }
        }
        true
    }

    pub fn is_zero_map(&self) -> bool {
        let zero = ModuleHom::zero(self.source.clone(), self.target.clone(), self.degree);
        self.equals_mod_relations(&zero)
    }
}

/// Verification of a short exact sequence `0 -> A -> B -> C -> 0` given by
/// an inclusion and a projection, checked degreewise through degree `hi`.
pub fn verify_ses(incl: &ModuleHom, proj: &ModuleHom, hi: i64) -> Result<()> {
    if !Arc::ptr_eq(incl.target(), proj.source()) && !incl.target().same_presentation(proj.source())
    {
        return Err(Error::ShapeMismatch("SES maps do not chain".into()));
    }
    let comp = proj.compose(incl)?;
    if !comp.is_zero_map() {
        return Err(Error::CompositionNonzero);
    }
    let lo = [
        incl.source().min_gen_degree(),
        incl.target().min_gen_degree(),
        proj.target().min_gen_degree(),
    ]
    .into_iter()
    .flatten()
    .min()
    .unwrap_or(0);
    let lo = lo + incl.degree().min(0) + proj.degree().min(0);
    if !incl.is_injective_on(lo, hi) {
        return Err(Error::ShapeMismatch("SES inclusion not injective".into()));
    }
    if !proj.is_surjective_on(lo, hi) {
        return Err(Error::ShapeMismatch("SES projection not surjective".into()));
    }
    for d in lo..=hi {
        let middle = proj.source().dim_k(d);
        let left = incl.source().dim_k(d - incl.degree());
        let right = proj.target().dim_k(d + proj.degree());
        if middle != left + right {
            return Err(Error::ShapeMismatch(format!(
                "SES dimension count fails in degree {d}: {middle} != {left} + {right}"
            )));
        }
    }
    Ok(())
}
