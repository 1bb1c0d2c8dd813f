//! Minimal graded free resolutions computed degreewise: kernels of the
//! differentials by exact linear algebra, new generators selected minimally
//! (a complement of m * kernel inside the kernel, earliest pivots first).
//!
//! Over an artinian ring the degree window is chosen so kernels are
//! computed exactly; otherwise the window is capped at the configured
//! truncation degree with a guard band, and running into the guard raises
//! a truncation error naming the homological step.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gradedmod::{minimalize, GradedFreeModule, GradedModule, ModuleMap};
use crate::linalg::Echelon;
use crate::ringkernel::Polynomial;
use crate::Limits;

/// A minimal free resolution of a module, as far as it has been computed:
/// `diffs[0] = d_1` is the minimal presentation, `diffs[i]` maps
/// `F_{i+1} -> F_i`.
pub struct Resolution {
    module: Arc<GradedModule>,
    diffs: Vec<Arc<ModuleMap>>,
    /// kernels were computed exactly (artinian window), not truncated
    exact: bool,
}

impl Resolution {
    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.diffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diffs.is_empty()
    }

    pub fn diff(&self, i: usize) -> &Arc<ModuleMap> {
        &self.diffs[i - 1]
    }

    pub fn diffs(&self) -> &[Arc<ModuleMap>] {
        &self.diffs
    }

    pub fn exact_window(&self) -> bool {
        self.exact
    }

    /// The free module at homological position `i <= len`.
    pub fn free_module(&self, i: usize) -> &GradedFreeModule {
        if i == 0 {
            self.diffs[0].target()
        } else {
            self.diffs[i - 1].source()
        }
    }

    pub fn betti(&self, i: usize) -> usize {
        self.free_module(i).rank()
    }

    pub fn betti_table(&self, h: usize) -> BettiTable {
        assert!(h <= self.len(), "resolution too short");
        let betti = (0..=h).map(|i| self.betti(i)).collect();
        let mut graded = BTreeMap::new();
        for i in 0..=h {
            for &s in self.free_module(i).shifts() {
                *graded.entry((i, s)).or_insert(0) += 1;
            }
        }
        BettiTable { betti, graded }
    }

    /// Euler-characteristic identity: the alternating sum of the Hilbert
    /// functions of the free modules matches the module, in degrees where
    /// the computed window is complete.
    pub fn euler_check(&self, hi: i64) -> bool {
        let ring = self.module.ring();
        let gen_lo = self.module.min_gen_degree().unwrap_or(0);
        // F_i generators live in degrees >= i + gen_lo, so degrees up to
        // len + gen_lo - 1 see every contribution
        let safe_hi = hi.min(self.len() as i64 + gen_lo - 1);
        for d in gen_lo..=safe_hi {
            let mut acc: i64 = 0;
            for i in 0..=self.len() {
                let dim = self.free_module(i).dim_k(ring, d) as i64;
                acc += if i % 2 == 0 { dim } else { -dim };
            }
            if acc != self.module.dim_k(d) as i64 {
                return false;
            }
        }
        true
    }

    /// `d_i . d_{i+1} = 0` for every computed pair.
    pub fn verify_complex(&self) -> bool {
        self.diffs
            .windows(2)
            .all(|w| w[0].compose(&w[1]).map(|c| c.is_zero()).unwrap_or(false))
    }

    /// No differential has a unit entry.
    pub fn verify_minimal(&self) -> bool {
        self.diffs.iter().all(|d| d.is_minimal())
    }

    /// Degreewise exactness at every interior step:
    /// rank ker (d_i)_d = rank im (d_{i+1})_d.
    pub fn verify_exactness(&self, hi: i64) -> bool {
        let field = self.module.ring().field();
        for i in 1..self.len() {
            let d_i = &self.diffs[i - 1];
            let d_next = &self.diffs[i];
            let lo = d_i.source().min_shift().unwrap_or(0);
            for d in lo..=hi {
                let m = d_i.degree_matrix(d);
                let ker = m.cols - m.rank(field);
                let im = d_next.degree_matrix(d).rank(field);
                if ker != im {
                    return false;
                }
            }
        }
        true
    }
}

/// Betti numbers of a resolution window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub betti: Vec<usize>,
    /// (homological degree, internal degree) -> number of generators
    pub graded: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn h(&self) -> usize {
        self.betti.len() - 1
    }
}

/// External storage for computed resolutions (the CLI's on-disk cache).
/// Installed per thread around a session run; the engine consults it
/// before computing syzygies and offers freshly computed chains back.
pub trait ResolutionStore {
    /// Restored differentials for (module, steps, D), if stored.
    fn load(&self, module: &Arc<GradedModule>, steps: usize, limits: &Limits) -> Option<Vec<ModuleMap>>;
    /// Persist a freshly computed chain for (module, steps, D).
    fn save(&self, module: &Arc<GradedModule>, diffs: &[Arc<ModuleMap>], limits: &Limits);
}

thread_local! {
    static STORE: std::cell::RefCell<Option<std::rc::Rc<dyn ResolutionStore>>> =
        const { std::cell::RefCell::new(None) };
}

/// Run `f` with the given store installed on this thread.
pub fn with_resolution_store<T>(store: std::rc::Rc<dyn ResolutionStore>, f: impl FnOnce() -> T) -> T {
    STORE.with(|s| *s.borrow_mut() = Some(store));
    let out = f();
    STORE.with(|s| *s.borrow_mut() = None);
    out
}

fn store_load(module: &Arc<GradedModule>, steps: usize, limits: &Limits) -> Option<Vec<ModuleMap>> {
    STORE.with(|s| {
        s.borrow()
            .as_ref()
            .and_then(|store| store.load(module, steps, limits))
    })
}

fn store_save(module: &Arc<GradedModule>, diffs: &[Arc<ModuleMap>], limits: &Limits) {
    STORE.with(|s| {
        if let Some(store) = s.borrow().as_ref() {
            store.save(module, diffs, limits);
        }
    });
}

/// Compute (or extend) the minimal free resolution to `steps` differentials.
pub fn resolution(module: &Arc<GradedModule>, steps: usize, limits: &Limits) -> Result<Resolution> {
    let minimal = minimalize(module);
    let mut diffs = minimal.res_diffs.lock().unwrap();
    if diffs.is_empty() {
        diffs.push(Arc::new(minimal.presentation().clone()));
    }
    let steps = steps.max(1);
    if diffs.len() < steps {
        if let Some(restored) = store_load(&minimal, steps, limits) {
            if restored.len() > diffs.len() && validate_chain(&minimal, &restored) {
                *diffs = restored.into_iter().map(Arc::new).collect();
            }
        }
    }
    let mut exact = true;
    let mut grew = false;
    while diffs.len() < steps {
        let step = diffs.len() + 1;
        let last = diffs.last().unwrap().clone();
        let (next, step_exact) = syzygy_map(&last, limits, step)?;
        exact &= step_exact;
        debug_assert!(last.compose(&next).map(|c| c.is_zero()).unwrap_or(false));
        diffs.push(Arc::new(next));
        grew = true;
    }
    if grew {
        store_save(&minimal, &diffs[..steps], limits);
    }
    Ok(Resolution {
        module: minimal.clone(),
        diffs: diffs.iter().take(steps).cloned().collect(),
        exact,
    })
}

fn validate_chain(minimal: &Arc<GradedModule>, restored: &[ModuleMap]) -> bool {
    if restored.is_empty() || !restored[0].same_map(minimal.presentation()) {
        return false;
    }
    for w in restored.windows(2) {
        if w[0].source() != w[1].target() {
            return false;
        }
        if !w[0].compose(&w[1]).map(|c| c.is_zero()).unwrap_or(false) {
            return false;
        }
    }
    restored.iter().all(|d| d.is_minimal())
}

/// One syzygy step: a map whose image minimally generates `ker(d)`.
pub fn syzygy_step(d: &ModuleMap, limits: &Limits) -> Result<ModuleMap> {
    Ok(syzygy_map(d, limits, 0)?.0)
}

/// Seed a module's resolution cache with differentials restored from
/// storage. The chain is validated: the first map must be the minimal
/// presentation, consecutive shapes must chain, every map must be minimal
/// and consecutive compositions must vanish.
pub fn preload_resolution(
    module: &Arc<GradedModule>,
    restored: Vec<ModuleMap>,
    limits: &Limits,
) -> Result<Resolution> {
    let minimal = minimalize(module);
    if restored.is_empty() {
        return resolution(&minimal, 1, limits);
    }
    if !validate_chain(&minimal, &restored) {
        return Err(Error::ShapeMismatch(
            "restored resolution fails validation against the module".into(),
        ));
    }
    let mut diffs = minimal.res_diffs.lock().unwrap();
    if diffs.len() < restored.len() {
        *diffs = restored.into_iter().map(Arc::new).collect();
    }
    let snapshot: Vec<Arc<ModuleMap>> = diffs.clone();
    drop(diffs);
    Ok(Resolution {
        module: minimal,
        diffs: snapshot,
        exact: module.ring().is_artinian(),
    })
}

fn syzygy_map(d: &ModuleMap, limits: &Limits, step: usize) -> Result<(ModuleMap, bool)> {
    let ring = d.ring().clone();
    let field = *ring.field();
    let source = d.source();
    if source.rank() == 0 {
        let zero = ModuleMap::zero(ring, GradedFreeModule::new(Vec::new()), source.clone());
        return Ok((zero, true));
    }
    let lo = source.min_shift().unwrap();
    let (cap, exact) = match ring.top_degree() {
        Some(top) => (source.max_shift().unwrap() + top, true),
        None => (limits.max_degree, false),
    };
    let mut gens: Vec<(i64, Vec<Polynomial>)> = Vec::new();
    let mut prev_kernel: Vec<Vec<u32>> = Vec::new(); // full kernel basis in degree deg-1
    let mut prev_basis: Option<crate::gradedmod::basis::FreeDegreeBasis> = None;
    for deg in lo..=cap {
        let basis = source.degree_basis(&ring, deg);
        let mat = d.degree_matrix(deg);
        let kernel = mat.kernel_basis(&field);
        // span of m * (kernel in degree deg-1)
        let mut span = Echelon::new(field, basis.dim());
        if let Some(pb) = &prev_basis {
            for v in &prev_kernel {
                let col = pb.column_of(&ring, v);
                for var in 0..ring.num_vars() {
                    let xi = Polynomial::variable(var, ring.num_vars());
                    let mult: Vec<Polynomial> = col
                        .iter()
                        .map(|e| ring.normal_form(&e.mul(&field, &xi)))
                        .collect();
                    span.insert(basis.coords_of(&ring, &mult));
                }
            }
        }
        for v in &kernel {
            if span.insert(v.clone()) {
                // a new minimal generator of the kernel
                if !exact && deg > cap - 2 {
                    return Err(Error::TruncationOverflow { step, cap });
                }
                gens.push((deg, basis.column_of(&ring, v)));
            }
        }
        prev_kernel = kernel;
        prev_basis = Some(basis);
    }
    let new_shifts: Vec<i64> = gens.iter().map(|(d, _)| *d).collect();
    let new_free = GradedFreeModule::new(new_shifts);
    let mut entries = vec![vec![Polynomial::zero(ring.num_vars()); gens.len()]; source.rank()];
    for (j, (_, col)) in gens.iter().enumerate() {
        for (i, e) in col.iter().enumerate() {
            entries[i][j] = e.clone();
        }
    }
    Ok((ModuleMap::new(ring, new_free, source.clone(), entries)?, exact))
}

/// The n-th syzygy module, presented by `d_{n+1}` of the minimal resolution.
pub fn omega(module: &Arc<GradedModule>, n: usize, limits: &Limits) -> Result<Arc<GradedModule>> {
    let minimal = minimalize(module);
    if n == 0 {
        return Ok(minimal);
    }
    let res = resolution(&minimal, n + 1, limits)?;
    let pres = res.diff(n + 1).as_ref().clone();
    let out = GradedModule::from_presentation(pres);
    // the tail of the resolution is a resolution of the syzygy module
    {
        let mut diffs = out.res_diffs.lock().unwrap();
        let all = minimal.res_diffs.lock().unwrap();
        *diffs = all.iter().skip(n).cloned().collect();
    }
    out.known_minimal();
    Ok(out)
}

/// How the complexity estimate was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CxMethod {
    EventuallyZero,
    EventuallyConstant,
    FiniteDifferenceFit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CxValue {
    Finite(usize),
    UnboundedWithin,
}

/// Empirical polynomial-growth degree of the Betti numbers over a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityEstimate {
    pub value: CxValue,
    pub window: (usize, usize),
    pub method: CxMethod,
    pub confident: bool,
}

impl ComplexityEstimate {
    pub fn finite_value(&self) -> Option<usize> {
        match self.value {
            CxValue::Finite(v) => Some(v),
            CxValue::UnboundedWithin => None,
        }
    }
}

/// Estimate the complexity from a Betti table over the given window.
pub fn estimate_complexity(
    table: &BettiTable,
    window: (usize, usize),
) -> Result<ComplexityEstimate> {
    let (n0, n1) = window;
    if n1 > table.h() {
        return Err(Error::ShapeMismatch(format!(
            "window end {n1} exceeds computed homological degree {}",
            table.h()
        )));
    }
    if n1 < n0 || n1 - n0 + 1 < 4 {
        return Err(Error::WindowTooShort(n0, n1));
    }
    // a zero Betti number anywhere certifies finite projective dimension:
    // minimal resolutions stay zero once they hit zero
    if table.betti.iter().any(|&b| b == 0) {
        return Ok(ComplexityEstimate {
            value: CxValue::Finite(0),
            window,
            method: CxMethod::EventuallyZero,
            confident: true,
        });
    }
    let seq: Vec<i64> = table.betti[n0..=n1].iter().map(|&b| b as i64).collect();
    let mut diffs = seq.clone();
    let max_t = seq.len().saturating_sub(2);
    for t in 1..=max_t {
        let constant_all = diffs.windows(2).all(|w| w[0] == w[1]);
        let tail = diffs.len().div_ceil(2).max(2);
        let constant_tail = diffs[diffs.len() - tail..]
            .windows(2)
            .all(|w| w[0] == w[1]);
        if constant_all || constant_tail {
            return Ok(ComplexityEstimate {
                value: CxValue::Finite(t),
                window,
                method: if t == 1 {
                    CxMethod::EventuallyConstant
                } else {
                    CxMethod::FiniteDifferenceFit
                },
                confident: constant_all,
            });
        }
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    }
    Ok(ComplexityEstimate {
        value: CxValue::UnboundedWithin,
        window,
        method: CxMethod::FiniteDifferenceFit,
        confident: false,
    })
}

/// Complexity of a module with the default window `(H/2, H)`.
pub fn complexity_of(module: &Arc<GradedModule>, limits: &Limits) -> Result<ComplexityEstimate> {
    let h = limits.max_hdeg;
    let res = resolution(module, h.max(1), limits)?;
    let table = res.betti_table(h);
    estimate_complexity(&table, (h / 2, h))
}

/// Witness of finite projective dimension: a zero Betti number within the
/// window (minimal resolutions stay zero once they are zero). Returns the
/// projective dimension when witnessed.
pub fn finite_pd_witness(module: &Arc<GradedModule>, limits: &Limits) -> Result<Option<usize>> {
    let h = limits.max_hdeg;
    let res = resolution(module, h.max(1), limits)?;
    let betti = res.betti_table(h).betti;
    match betti.iter().position(|&b| b == 0) {
        None => Ok(None),
        Some(first_zero) => {
            debug_assert!(betti[first_zero..].iter().all(|&b| b == 0));
            Ok(Some(if first_zero == 0 { 0 } else { first_zero - 1 }))
        }
    }
}

/// Result of the periodicity search: least `p` with `omega^p(M)` isomorphic
/// to `M` up to the reported uniform degree shift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub period: usize,
    pub shift: i64,
}

pub fn detect_period(
    module: &Arc<GradedModule>,
    max_period: usize,
    limits: &Limits,
) -> Result<Option<PeriodReport>> {
    let minimal = minimalize(module);
    if minimal.is_zero_module() {
        return Ok(None);
    }
    let target_degs = minimal.gen_degree_multiset();
    let base = minimal.min_gen_degree().unwrap();
    for p in 1..=max_period {
        let w = omega(&minimal, p, limits)?;
        if w.is_zero_module() {
            return Ok(None); // syzygies stay zero from here on
        }
        let shift = w.min_gen_degree().unwrap() - base;
        let shifted_degs: Vec<i64> = w
            .gen_degree_multiset()
            .into_iter()
            .map(|d| d - shift)
            .collect();
        if shifted_degs != target_degs {
            continue;
        }
        let candidate = w.shifted(-shift);
        if let crate::gradedmod::IsoVerdict::Isomorphic { .. } =
            crate::gradedmod::is_isomorphic(&candidate, &minimal, limits)?
        {
            return Ok(Some(PeriodReport { period: p, shift }));
        }
    }
    Ok(None)
}

