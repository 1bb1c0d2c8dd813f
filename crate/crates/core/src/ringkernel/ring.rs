//! Standard-graded quotient rings `GF(p)[x_1..x_n]/I` with a reduced
//! Gröbner basis, normal forms, degreewise monomial bases and the Krull
//! dimension.
//!
//! The ring plays the role of a local ring localized at the irrelevant
//! maximal ideal: all ideals are homogeneous, so minimal resolutions,
//! depth and Betti numbers agree with the graded computation.

use std::collections::BTreeSet;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::hilbert::HilbertSeries;

use super::field::PrimeField;
use super::monomial::Monomial;
use super::poly::Polynomial;

#[derive(Debug)]
pub struct QuotientRing {
    field: PrimeField,
    num_vars: usize,
    var_names: Vec<String>,
    ideal_gens: Vec<Polynomial>,
    groebner: Vec<Polynomial>,
    krull_dim: usize,
    // standard monomials per degree, extended lazily
    basis_cache: Mutex<Vec<std::sync::Arc<Vec<Monomial>>>>,
}

impl QuotientRing {
    /// Build the quotient ring, computing the reduced Gröbner basis of the
    /// ideal. Generators must be homogeneous of positive degree.
    pub fn new(p: u32, var_names: Vec<String>, ideal_gens: Vec<Polynomial>) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let num_vars = var_names.len();
        assert!(num_vars >= 1, "need at least one variable");
        let mut gens = Vec::new();
        for (index, g) in ideal_gens.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            if g.num_vars() != num_vars {
                return Err(Error::VariableCountMismatch {
                    expected: num_vars,
                    got: g.num_vars(),
                });
            }
            match g.homogeneous_degree() {
                Some(0) => return Err(Error::UnitIdealGenerator { index }),
                Some(_) => gens.push(g.clone()),
                None => return Err(Error::NonHomogeneousGenerator { index }),
            }
        }
        let groebner = buchberger(&field, num_vars, &gens);
        let krull_dim = initial_ideal_dimension(num_vars, &groebner);
        Ok(QuotientRing {
            field,
            num_vars,
            var_names,
            ideal_gens,
            groebner,
            krull_dim,
            basis_cache: Mutex::new(Vec::new()),
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn ideal_gens(&self) -> &[Polynomial] {
        &self.ideal_gens
    }

    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.groebner
    }

    pub fn krull_dim(&self) -> usize {
        self.krull_dim
    }

    pub fn is_artinian(&self) -> bool {
        self.krull_dim == 0
    }

    /// Codimension equals the number of (listed) ideal generators. This is
    /// the recognition rule for quotients by a regular sequence.
    pub fn is_complete_intersection_fixture(&self) -> bool {
        self.ideal_gens.iter().filter(|g| !g.is_zero()).count() == self.num_vars - self.krull_dim
    }

    /// The unique reduced representative of `f` modulo the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let mut work = f.clone();
        let mut out = Polynomial::zero(self.num_vars);
        'outer: while let Some((lm, lc)) = work.leading() {
            let lm = lm.clone();
            for g in &self.groebner {
                let (gm, _) = g.leading().expect("basis elements are nonzero");
                if gm.divides(&lm) {
                    let q = gm.div_into(&lm);
                    work = work.sub(&self.field, &g.mul_term(&self.field, &q, lc));
                    continue 'outer;
                }
            }
            out.add_assign_term(&self.field, lm.clone(), lc);
            work = work.sub(&self.field, &Polynomial::monomial(lm, lc));
        }
        out
    }

    pub fn nf_mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.normal_form(&a.mul(&self.field, b))
    }

    /// Standard monomials of the given degree (monomials outside the
    /// initial ideal), ascending in the monomial order.
    pub fn monomial_basis(&self, degree: i64) -> std::sync::Arc<Vec<Monomial>> {
        if degree < 0 {
            return std::sync::Arc::new(Vec::new());
        }
        let d = degree as usize;
        let mut cache = self.basis_cache.lock().unwrap();
        while cache.len() <= d {
            let deg = cache.len() as u32;
            let basis: Vec<Monomial> = Monomial::all_of_degree(self.num_vars, deg)
                .into_iter()
                .filter(|m| {
                    !self
                        .groebner
                        .iter()
                        .any(|g| g.leading().unwrap().0.divides(m))
                })
                .collect();
            cache.push(std::sync::Arc::new(basis));
        }
        cache[d].clone()
    }

    pub fn dim_k(&self, degree: i64) -> usize {
        self.monomial_basis(degree).len()
    }

    /// Position of a standard monomial within its degree basis.
    pub fn basis_index(&self, degree: i64, m: &Monomial) -> Option<usize> {
        self.monomial_basis(degree).binary_search(m).ok()
    }

    pub fn hilbert_series(&self, max_degree: i64) -> HilbertSeries {
        HilbertSeries::from_fn(0, max_degree.max(0), |d| self.dim_k(d))
    }

    /// For artinian rings, the largest degree with a nonzero graded piece.
    pub fn top_degree(&self) -> Option<i64> {
        if !self.is_artinian() {
            return None;
        }
        // Artinian: every variable has a pure power in the initial ideal,
        // so sum of (exponent - 1) bounds the top socle degree.
        let mut bound: i64 = 0;
        for v in 0..self.num_vars {
            let e = self
                .groebner
                .iter()
                .filter_map(|g| {
                    let lm = g.leading().unwrap().0;
                    let is_pure = lm
                        .exps()
                        .iter()
                        .enumerate()
                        .all(|(i, &x)| i == v || x == 0);
                    if is_pure && lm.exps()[v] > 0 {
                        Some(lm.exps()[v] as i64)
                    } else {
                        None
                    }
                })
                .min()
                .expect("artinian ring has a pure power per variable");
            bound += e - 1;
        }
        Some((0..=bound).rev().find(|&d| self.dim_k(d) > 0).unwrap_or(0))
    }

    /// Membership in the ideal.
    pub fn reduces_to_zero(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn display_poly(&self, f: &Polynomial) -> String {
        f.display(&self.var_names)
    }

    /// Structural equality of the presentation data (ignores caches).
    pub fn same_ring(&self, other: &QuotientRing) -> bool {
        self.field == other.field
            && self.var_names == other.var_names
            && self.groebner == other.groebner
    }
}

/// Buchberger's algorithm with the product criterion and the chain
/// criterion, followed by autoreduction to the reduced basis.
fn buchberger(field: &PrimeField, num_vars: usize, gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        let g = g.monic(field);
        if !g.is_zero() {
            basis.push(g);
        }
    }
    // queue ordered by (lcm degree, i, j): normal selection strategy
    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut treated: BTreeSet<(usize, usize)> = BTreeSet::new();
    let enqueue = |queue: &mut BTreeSet<(u32, usize, usize)>, basis: &[Polynomial], i: usize, j: usize| {
        let lmi = basis[i].leading().unwrap().0;
        let lmj = basis[j].leading().unwrap().0;
        queue.insert((lmi.lcm(lmj).degree(), i, j));
    };
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            enqueue(&mut queue, &basis, i, j);
        }
    }
    while let Some((_, i, j)) = queue.pop_first() {
        treated.insert((i, j));
        let lmi = basis[i].leading().unwrap().0.clone();
        let lmj = basis[j].leading().unwrap().0.clone();
        if lmi.coprime(&lmj) {
            continue; // product criterion
        }
        let lcm = lmi.lcm(&lmj);
        // chain criterion: some k with lt | lcm and both pairs already treated
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let lmk = basis[k].leading().unwrap().0;
            if !lmk.divides(&lcm) {
                return false;
            }
            let a = (i.min(k), i.max(k));
            let b = (j.min(k), j.max(k));
            treated.contains(&a) && treated.contains(&b)
        });
        if chain {
            continue;
        }
        let qi = lmi.div_into(&lcm);
        let qj = lmj.div_into(&lcm);
        let s = basis[i]
            .mul_term(field, &qi, 1)
            .sub(field, &basis[j].mul_term(field, &qj, 1));
        let r = reduce_full(field, &s, &basis);
        if !r.is_zero() {
            basis.push(r.monic(field));
            let new = basis.len() - 1;
            for t in 0..new {
                enqueue(&mut queue, &basis, t, new);
            }
        }
    }
    reduce_basis(field, num_vars, basis)
}

fn reduce_full(field: &PrimeField, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut work = f.clone();
    let mut out = Polynomial::zero(f.num_vars());
    'outer: while let Some((lm, lc)) = work.leading() {
        let lm = lm.clone();
        for g in basis {
            let (gm, _) = g.leading().unwrap();
            if gm.divides(&lm) {
                let q = gm.div_into(&lm);
                work = work.sub(field, &g.mul_term(field, &q, lc));
                continue 'outer;
            }
        }
        out.add_assign_term(field, lm.clone(), lc);
        work = work.sub(field, &Polynomial::monomial(lm, lc));
    }
    out
}

/// Drop basis elements with redundant leading terms, tail-reduce the rest,
/// and sort ascending by leading monomial.
fn reduce_basis(field: &PrimeField, num_vars: usize, basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let _ = num_vars;
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    for (idx, g) in sorted.iter().enumerate() {
        let lm = g.leading().unwrap().0;
        let redundant = sorted.iter().enumerate().any(|(k, h)| {
            if k == idx {
                return false;
            }
            let hm = h.leading().unwrap().0;
            hm.divides(lm) && (hm != lm || k < idx)
        });
        if !redundant {
            kept.push(g.clone());
        }
    }
    // tail-reduce every element against the others until stable
    loop {
        let mut changed = false;
        for i in 0..kept.len() {
            let others: Vec<Polynomial> = kept
                .iter()
                .enumerate()
                .filter_map(|(k, h)| if k == i { None } else { Some(h.clone()) })
                .collect();
            let r = reduce_full(field, &kept[i], &others).monic(field);
            if r != kept[i] {
                kept[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    kept.retain(|g| !g.is_zero());
    kept.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    kept
}

/// Krull dimension of `k[x]/J` for the monomial ideal `J` generated by the
/// leading terms: the largest subset `S` of variables such that no leading
/// term is supported inside `S`.
fn initial_ideal_dimension(num_vars: usize, groebner: &[Polynomial]) -> usize {
    let supports: Vec<Vec<usize>> = groebner
        .iter()
        .map(|g| {
            g.leading()
                .unwrap()
                .0
                .exps()
                .iter()
                .enumerate()
                .filter_map(|(i, &e)| if e > 0 { Some(i) } else { None })
                .collect()
        })
        .collect();
    let mut best = 0usize;
    for mask in 0u32..(1 << num_vars) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let ok = supports
            .iter()
            .all(|sup| !sup.iter().all(|&v| mask & (1 << v) != 0));
        if ok {
            best = size;
        }
    }
    best
}
