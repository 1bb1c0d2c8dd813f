//! Small standard-graded rings and modules from the commutative-algebra
//! literature. The test suites are built around these; they are also
//! convenient starting points for experiments.

use std::sync::Arc;

use crate::error::Result;
use crate::gradedmod::{GradedFreeModule, GradedModule, ModuleMap};
use crate::ringkernel::{Monomial, Polynomial, QuotientRing};

/// `GF(5)[x]/(x^2)`, the dual numbers.
pub fn dual_numbers() -> Arc<QuotientRing> {
    let x2 = Polynomial::from_terms(1, [(Monomial::new(vec![2]), 1)]);
    Arc::new(QuotientRing::new(5, vec!["x".into()], vec![x2]).unwrap())
}

/// The artinian complete intersection `GF(5)[x,y]/(x^2, y^2)`.
pub fn ci_two_quadrics() -> Arc<QuotientRing> {
    let x2 = Polynomial::from_terms(2, [(Monomial::new(vec![2, 0]), 1)]);
    let y2 = Polynomial::from_terms(2, [(Monomial::new(vec![0, 2]), 1)]);
    Arc::new(QuotientRing::new(5, vec!["x".into(), "y".into()], vec![x2, y2]).unwrap())
}

/// The one-dimensional hypersurface `GF(5)[x,y]/(xy)`.
pub fn hypersurface_xy() -> Arc<QuotientRing> {
    let xy = Polynomial::from_terms(2, [(Monomial::new(vec![1, 1]), 1)]);
    Arc::new(QuotientRing::new(5, vec!["x".into(), "y".into()], vec![xy]).unwrap())
}

/// Gasharov's artinian algebra: `GF(p)[x1..x4]` modulo the seven quadrics
/// `x1^2, x2^2, x3^2, x4^2, x3*x4, x1*x4 + x2*x4, alpha*x1*x3 + x2*x3`.
pub fn gasharov_ring(p: u32, alpha: u32) -> Result<Arc<QuotientRing>> {
    let e = |a: u16, b: u16, c: u16, d: u16| Monomial::new(vec![a, b, c, d]);
    let gens = vec![
        Polynomial::from_terms(4, [(e(2, 0, 0, 0), 1)]),
        Polynomial::from_terms(4, [(e(0, 2, 0, 0), 1)]),
        Polynomial::from_terms(4, [(e(0, 0, 2, 0), 1)]),
        Polynomial::from_terms(4, [(e(0, 0, 0, 2), 1)]),
        Polynomial::from_terms(4, [(e(0, 0, 1, 1), 1)]),
        Polynomial::from_terms(4, [(e(1, 0, 0, 1), 1), (e(0, 1, 0, 1), 1)]),
        Polynomial::from_terms(4, [(e(1, 0, 1, 0), alpha), (e(0, 1, 1, 0), 1)]),
    ];
    let names = ["x1", "x2", "x3", "x4"].map(String::from).to_vec();
    Ok(Arc::new(QuotientRing::new(p, names, gens)?))
}

/// The periodic module over the Gasharov ring, presented by the matrix
/// `(x1, alpha*x3 + x4; 0, x2)`. When `alpha` has multiplicative order `q`
/// the module is periodic of period `q`.
pub fn gasharov_module(ring: &Arc<QuotientRing>, alpha: u32) -> Result<Arc<GradedModule>> {
    let e = |a: u16, b: u16, c: u16, d: u16| Monomial::new(vec![a, b, c, d]);
    let x1 = Polynomial::from_terms(4, [(e(1, 0, 0, 0), 1)]);
    let x2 = Polynomial::from_terms(4, [(e(0, 1, 0, 0), 1)]);
    let col2_top = Polynomial::from_terms(4, [(e(0, 0, 1, 0), alpha), (e(0, 0, 0, 1), 1)]);
    let zero = Polynomial::zero(4);
    let source = GradedFreeModule::new(vec![1, 1]);
    let target = GradedFreeModule::new(vec![0, 0]);
    let map = ModuleMap::new(
        ring.clone(),
        source,
        target,
        vec![vec![x1, col2_top], vec![zero, x2]],
    )?;
    Ok(GradedModule::from_presentation(map))
}

/// `A/(f)` for a single homogeneous `f`, as a module over the given ring.
pub fn quotient_module(ring: &Arc<QuotientRing>, f: Polynomial) -> Result<Arc<GradedModule>> {
    GradedModule::cyclic(ring.clone(), vec![f])
}

/// Shorthand for the variable polynomials of a ring.
pub fn vars(ring: &QuotientRing) -> Vec<Polynomial> {
    (0..ring.num_vars())
        .map(|i| Polynomial::variable(i, ring.num_vars()))
        .collect()
}
