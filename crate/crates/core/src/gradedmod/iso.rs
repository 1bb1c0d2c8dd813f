//! Graded Hom spaces and a witnessed isomorphism test.
//!
//! The test is honestly three-valued: Hilbert functions or generator
//! degrees can rule an isomorphism out; a found witness with a verified
//! two-sided inverse rules it in; otherwise the search reports "not
//! proven", never a definite no.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::MatGF;
use crate::ringkernel::Polynomial;
use crate::Limits;

use super::basis::matrix_from_columns;
use super::{GradedModule, ModuleHom};

/// A k-basis of the space of degree-`degree` homomorphisms `M -> N`.
///
/// A hom is determined by the images of the generators; the constraints
/// say every relation of `M` must map to zero in `N`.
pub fn hom_space(
    source: &Arc<GradedModule>,
    target: &Arc<GradedModule>,
    degree: i64,
) -> Result<Vec<ModuleHom>> {
    let ring = source.ring();
    let gens = source.gens();
    // unknown block per generator: coset coordinates of its image
    let mut offsets = Vec::with_capacity(gens.rank());
    let mut total = 0usize;
    for &s in gens.shifts() {
        offsets.push(total);
        total += target.dim_k(s + degree);
    }
    if total == 0 {
        return Ok(Vec::new());
    }
    // constraint rows: one block per relation column of the source
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let pres = source.presentation();
    for l in 0..source.relations().rank() {
        let rel_deg = source.relations().shifts()[l];
        let out_dim = target.dim_k(rel_deg + degree);
        if out_dim == 0 {
            continue;
        }
        let mut block = vec![vec![0u32; total]; out_dim];
        for (j, &s) in gens.shifts().iter().enumerate() {
            let entry = pres.entry(j, l);
            if entry.is_zero() {
                continue;
            }
            let mult = target.mult_matrix(s + degree, entry);
            debug_assert_eq!(mult.rows, out_dim);
            for r in 0..mult.rows {
                for c in 0..mult.cols {
                    block[r][offsets[j] + c] = mult.get(r, c);
                }
            }
        }
        rows.extend(block);
    }
    let mat = if rows.is_empty() {
        MatGF::zero(0, total)
    } else {
        matrix_from_columns(rows.len(), &transpose(&rows, total))
    };
    let kernel = mat.kernel_basis(ring.field());
    let mut out = Vec::with_capacity(kernel.len());
    for v in kernel {
        out.push(hom_from_coords(source, target, degree, &offsets, &v)?);
    }
    Ok(out)
}

fn transpose(rows: &[Vec<u32>], width: usize) -> Vec<Vec<u32>> {
    (0..width)
        .map(|c| rows.iter().map(|r| r[c]).collect())
        .collect()
}

fn hom_from_coords(
    source: &Arc<GradedModule>,
    target: &Arc<GradedModule>,
    degree: i64,
    offsets: &[usize],
    coords: &[u32],
) -> Result<ModuleHom> {
    let ring = source.ring();
    let n = ring.num_vars();
    let rows = target.gens().rank();
    let cols = source.gens().rank();
    let mut matrix = vec![vec![Polynomial::zero(n); cols]; rows];
    for (j, &s) in source.gens().shifts().iter().enumerate() {
        let d = s + degree;
        let dim = target.dim_k(d);
        if dim == 0 {
            continue;
        }
        let coset: Vec<u32> = coords[offsets[j]..offsets[j] + dim].to_vec();
        let ambient = target.space(d).lift(&coset);
        let column = target.gens().degree_basis(ring, d).column_of(ring, &ambient);
        for (i, e) in column.into_iter().enumerate() {
            matrix[i][j] = e;
        }
    }
    ModuleHom::new_unverified(source.clone(), target.clone(), degree, matrix)
}

/// Outcome of the isomorphism test.
pub enum IsoVerdict {
    Isomorphic { forward: ModuleHom, inverse: ModuleHom },
    HilbertMismatch,
    GeneratorDegreeMismatch,
    NotProven { trials: usize },
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic { .. })
    }
}

/// Decide whether two minimal modules over the same ring are isomorphic.
///
/// Strategy: compare Hilbert functions and generator degrees, then search
/// the degree-0 Hom space for a unit, first over the basis elements and
/// then over a deterministic seeded sequence of k-linear combinations
/// (64 trials). A candidate passes only with a verified two-sided inverse
/// modulo the presentations, so a positive answer is exact.
pub fn is_isomorphic(
    m: &Arc<GradedModule>,
    n: &Arc<GradedModule>,
    limits: &Limits,
) -> Result<IsoVerdict> {
    let hi = limits.max_degree;
    if m.is_zero_module() && n.is_zero_module() {
        return Ok(IsoVerdict::Isomorphic {
            forward: ModuleHom::zero(m.clone(), n.clone(), 0),
            inverse: ModuleHom::zero(n.clone(), m.clone(), 0),
        });
    }
    if !m.hilbert(hi).eq_up_to(&n.hilbert(hi), hi) {
        return Ok(IsoVerdict::HilbertMismatch);
    }
    if m.gen_degree_multiset() != n.gen_degree_multiset() {
        return Ok(IsoVerdict::GeneratorDegreeMismatch);
    }
    let forward_basis = hom_space(m, n, 0)?;
    if forward_basis.is_empty() {
        return Ok(IsoVerdict::NotProven { trials: 0 });
    }
    let backward_basis = hom_space(n, m, 0)?;
    if backward_basis.is_empty() {
        return Ok(IsoVerdict::NotProven { trials: 0 });
    }
    let p = m.ring().characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed ^ 0x1505_c0de);
    let mut trials = 0usize;
    // candidate coefficient vectors: basis elements first, then random combos
    let mut candidates: Vec<Vec<u32>> = Vec::new();
    for i in 0..forward_basis.len() {
        let mut v = vec![0u32; forward_basis.len()];
        v[i] = 1;
        candidates.push(v);
    }
    for _ in 0..64 {
        let v: Vec<u32> = (0..forward_basis.len())
            .map(|_| rng.gen_range(0..p))
            .collect();
        if v.iter().any(|&c| c != 0) {
            candidates.push(v);
        }
    }
    for coeffs in candidates {
        trials += 1;
        let h = combine(&forward_basis, &coeffs)?;
        if let Some(inv) = try_invert(m, n, &h, &backward_basis)? {
            return Ok(IsoVerdict::Isomorphic {
                forward: h,
                inverse: inv,
            });
        }
    }
    Ok(IsoVerdict::NotProven { trials })
}

fn combine(basis: &[ModuleHom], coeffs: &[u32]) -> Result<ModuleHom> {
    let first = &basis[0];
    let ring = first.source().ring().clone();
    let field = ring.field();
    let n = ring.num_vars();
    let rows = first.target().gens().rank();
    let cols = first.source().gens().rank();
    let mut matrix = vec![vec![Polynomial::zero(n); cols]; rows];
    for (b, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for i in 0..rows {
            for j in 0..cols {
                let term = b.matrix()[i][j].scale(field, c);
                matrix[i][j] = matrix[i][j].add(field, &term);
            }
        }
    }
    ModuleHom::new_unverified(
        first.source().clone(),
        first.target().clone(),
        first.degree(),
        matrix,
    )
}

/// Solve for a two-sided inverse of `h` inside the span of
/// `backward_basis`, and verify both compositions exactly.
fn try_invert(
    m: &Arc<GradedModule>,
    n: &Arc<GradedModule>,
    h: &ModuleHom,
    backward_basis: &[ModuleHom],
) -> Result<Option<ModuleHom>> {
    let ring = m.ring();
    let field = ring.field();
    // cheap filter: degreewise bijectivity on the generator degrees
    let mut check_degs: Vec<i64> = m
        .gen_degree_multiset()
        .into_iter()
        .chain(n.gen_degree_multiset())
        .collect();
    check_degs.sort_unstable();
    check_degs.dedup();
    for &d in &check_degs {
        let mat = h.degreewise(d);
        if mat.rows != mat.cols || mat.rank(field) != mat.rows {
            return Ok(None);
        }
    }
    // unknowns: coefficients of the inverse in the backward basis.
    // conditions: h' h = id_M and h h' = id_N on generators, in coset coords
    let t = backward_basis.len();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut rhs: Vec<u32> = Vec::new();
    for (j, &s) in m.gens().shifts().iter().enumerate() {
        let img = h.image_of_gen(j); // element of N_s
        let img_coords = n.class_coords(&img, s);
        let out_dim = m.dim_k(s);
        let mut blocks: Vec<Vec<u32>> = vec![vec![0; t]; out_dim];
        for (bt, b) in backward_basis.iter().enumerate() {
            let applied = b.degreewise(s).mul_vec(field, &img_coords);
            for (r, &v) in applied.iter().enumerate() {
                blocks[r][bt] = v;
            }
        }
        // target: coords of the class of generator j in M_s
        let mut unit = vec![Polynomial::zero(ring.num_vars()); m.gens().rank()];
        unit[j] = Polynomial::constant(1, ring.num_vars());
        let gen_coords = m.class_coords(&unit, s);
        for (r, block) in blocks.into_iter().enumerate() {
            rows.push(block);
            rhs.push(gen_coords[r]);
        }
    }
    for (j, &s) in n.gens().shifts().iter().enumerate() {
        // (h h')(gen_j) = gen_j: h' applied to gen_j, then h
        let mut unit = vec![Polynomial::zero(ring.num_vars()); n.gens().rank()];
        unit[j] = Polynomial::constant(1, ring.num_vars());
        let gen_coords = n.class_coords(&unit, s);
        let out_dim = n.dim_k(s);
        let mut blocks: Vec<Vec<u32>> = vec![vec![0; t]; out_dim];
        let h_mat = h.degreewise(s);
        for (bt, b) in backward_basis.iter().enumerate() {
            let back = b.degreewise(s).mul_vec(field, &gen_coords);
            let round = h_mat.mul_vec(field, &back);
            for (r, &v) in round.iter().enumerate() {
                blocks[r][bt] = v;
            }
        }
        for (r, block) in blocks.into_iter().enumerate() {
            rows.push(block);
            rhs.push(gen_coords[r]);
        }
    }
    let mat = matrix_from_columns(rows.len(), &transpose(&rows, t));
    let Some(sol) = mat.solve(field, &rhs) else {
        return Ok(None);
    };
    let inv = combine(backward_basis, &sol)?;
    // exact verification modulo the presentations
    let id_m = ModuleHom::identity(m);
    let id_n = ModuleHom::identity(n);
    if inv.compose(h)?.equals_mod_relations(&id_m) && h.compose(&inv)?.equals_mod_relations(&id_n) {
        Ok(Some(inv))
    } else {
        Ok(None)
    }
}
