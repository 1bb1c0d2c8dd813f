//! Ext classes as cocycles on the minimal resolution, chain-map lifting,
//! Yoneda products and powers, and the pushout module attached to a class:
//! for `eta` in `Ext^n(M, Y)` the short exact sequence
//! `0 -> Y -> K -> syzygy^{n-1}(M) -> 0` built from the cocycle and the
//! n-th differential.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gradedmod::{
    minimalize, minimalize_with_maps, GradedFreeModule, GradedModule, ModuleHom, ModuleMap,
};
use crate::homalg::hom_differential;
use crate::linalg::Echelon;
use crate::resolve::{omega, resolution};
use crate::ringkernel::Polynomial;
use crate::Limits;

/// A homogeneous element of `Ext^n(M, N)`, represented by a cocycle
/// matrix from `F_n` of the minimal resolution of `M` to the generators
/// of `N`. The representative is kept reduced modulo coboundaries when it
/// comes out of `ext_class_basis`.
#[derive(Debug, Clone)]
pub struct ExtClass {
    module: Arc<GradedModule>,
    target: Arc<GradedModule>,
    hdeg: usize,
    internal_degree: i64,
    /// map `F_n(internal_degree) -> ambient free module of N's generators`
    cocycle: ModuleMap,
}

impl ExtClass {
    /// Build and verify a class from a cocycle matrix: rows indexed by the
    /// generators of `N`, columns by the basis of `F_n`.
    pub fn new(
        module: &Arc<GradedModule>,
        target: &Arc<GradedModule>,
        hdeg: usize,
        internal_degree: i64,
        matrix: Vec<Vec<Polynomial>>,
        limits: &Limits,
    ) -> Result<Self> {
        if hdeg == 0 {
            return Err(Error::Precondition(
                "Ext classes of homological degree 0 are plain homs".into(),
            ));
        }
        let module = minimalize(module);
        let target = minimalize(target);
        let res = resolution(&module, hdeg + 1, limits)?;
        let f_n = res.free_module(hdeg).shifted(internal_degree);
        let ambient = GradedFreeModule::new(target.gens().shifts().to_vec());
        let cocycle = ModuleMap::new(module.ring().clone(), f_n, ambient, matrix)?;
        let class = ExtClass {
            module,
            target,
            hdeg,
            internal_degree,
            cocycle,
        };
        class.verify_cocycle(limits)?;
        Ok(class)
    }

    fn from_parts(
        module: Arc<GradedModule>,
        target: Arc<GradedModule>,
        hdeg: usize,
        internal_degree: i64,
        cocycle: ModuleMap,
    ) -> Self {
        ExtClass {
            module,
            target,
            hdeg,
            internal_degree,
            cocycle,
        }
    }

    /// Assemble a class from parts already known consistent (sums of
    /// verified cocycles stay cocycles).
    pub(crate) fn from_raw(
        module: Arc<GradedModule>,
        target: Arc<GradedModule>,
        hdeg: usize,
        internal_degree: i64,
        cocycle: ModuleMap,
    ) -> Self {
        Self::from_parts(module, target, hdeg, internal_degree, cocycle)
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }

    pub fn target(&self) -> &Arc<GradedModule> {
        &self.target
    }

    pub fn hdeg(&self) -> usize {
        self.hdeg
    }

    pub fn internal_degree(&self) -> i64 {
        self.internal_degree
    }

    pub fn cocycle(&self) -> &ModuleMap {
        &self.cocycle
    }

    pub fn is_endo(&self) -> bool {
        Arc::ptr_eq(&self.module, &self.target) || self.module.same_presentation(&self.target)
    }

    /// `cocycle . d_{n+1} = 0` modulo the relations of the target.
    pub fn verify_cocycle(&self, limits: &Limits) -> Result<()> {
        let res = resolution(&self.module, self.hdeg + 1, limits)?;
        let next = res.diff(self.hdeg + 1).shifted(self.internal_degree);
        let comp = self.cocycle.compose(&next)?;
        for j in 0..comp.source().rank() {
            let col = comp.column(j);
            if col.iter().all(|e| e.is_zero()) {
                continue;
            }
            let d = comp.source().shifts()[j];
            let coords = self.target.class_coords(&col, d);
            if coords.iter().any(|&c| c != 0) {
                return Err(Error::NotACocycle);
            }
        }
        Ok(())
    }

    /// Coordinates of the cocycle in the cochain space `Hom(F_n, N)_d`.
    fn cochain_coords(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (j, &s) in self.cocycle.source().shifts().iter().enumerate() {
            let col = self.cocycle.column(j);
            out.extend(self.target.class_coords(&col, s));
        }
        out
    }

    /// Test whether the class is zero (a coboundary), by reducing against
    /// the image of the previous Hom differential.
    pub fn is_zero_class(&self, limits: &Limits) -> Result<bool> {
        let res = resolution(&self.module, self.hdeg + 1, limits)?;
        let prev = hom_differential(res.diff(self.hdeg), &self.target, self.internal_degree);
        let field = self.module.ring().field();
        let mut ech = Echelon::new(*field, prev.rows);
        for c in 0..prev.cols {
            ech.insert(prev.column(c));
        }
        Ok(ech.reduce(self.cochain_coords()).iter().all(|&c| c == 0))
    }

    /// The zero class of the given bidegree.
    pub fn zero_class(
        module: &Arc<GradedModule>,
        target: &Arc<GradedModule>,
        hdeg: usize,
        internal_degree: i64,
        limits: &Limits,
    ) -> Result<Self> {
        let module = minimalize(module);
        let target = minimalize(target);
        let res = resolution(&module, hdeg + 1, limits)?;
        let f_n = res.free_module(hdeg).shifted(internal_degree);
        let ambient = GradedFreeModule::new(target.gens().shifts().to_vec());
        let cocycle = ModuleMap::zero(module.ring().clone(), f_n, ambient);
        Ok(ExtClass::from_parts(
            module,
            target,
            hdeg,
            internal_degree,
            cocycle,
        ))
    }
}

/// Cocycle representatives of a k-basis of `Ext^n(M, N)`, grouped over all
/// internal degrees up to the truncation bound, reduced modulo
/// coboundaries, in (internal degree, echelon index) order.
pub fn ext_class_basis(
    m: &Arc<GradedModule>,
    target: &Arc<GradedModule>,
    n: usize,
    limits: &Limits,
) -> Result<Vec<ExtClass>> {
    if n == 0 {
        return Err(Error::Precondition("ext_class_basis needs n >= 1".into()));
    }
    let module = minimalize(m);
    let target = minimalize(target);
    let res = resolution(&module, n + 1, limits)?;
    let field = *module.ring().field();
    let f_n = res.free_module(n).clone();
    let t_lo = target.min_gen_degree().unwrap_or(0);
    let d_lo = t_lo - f_n.max_shift().unwrap_or(0);
    let mut out = Vec::new();
    for d in d_lo..=limits.max_degree {
        let delta_n = hom_differential(res.diff(n + 1), &target, d);
        if delta_n.cols == 0 {
            continue;
        }
        let delta_prev = hom_differential(res.diff(n), &target, d);
        let mut boundaries = Echelon::new(field, delta_n.cols);
        for c in 0..delta_prev.cols {
            boundaries.insert(delta_prev.column(c));
        }
        let mut chosen = boundaries.clone();
        for v in delta_n.kernel_basis(&field) {
            let rep = boundaries.reduce(v);
            if !chosen.insert(rep.clone()) {
                continue;
            }
            out.push(class_from_cochain(&module, &target, n, d, &f_n, &rep)?);
        }
    }
    Ok(out)
}

fn class_from_cochain(
    module: &Arc<GradedModule>,
    target: &Arc<GradedModule>,
    n: usize,
    d: i64,
    f_n: &GradedFreeModule,
    coords: &[u32],
) -> Result<ExtClass> {
    let ring = module.ring();
    let nv = ring.num_vars();
    let rows = target.gens().rank();
    let mut matrix = vec![vec![Polynomial::zero(nv); f_n.rank()]; rows];
    let mut pos = 0usize;
    for (j, &s) in f_n.shifts().iter().enumerate() {
        let piece = target.dim_k(d + s);
        if piece == 0 {
            continue;
        }
        let coset = &coords[pos..pos + piece];
        pos += piece;
        let ambient = target.space(d + s).lift(coset);
        let column = target
            .gens()
            .degree_basis(ring, d + s)
            .column_of(ring, &ambient);
        for (i, e) in column.into_iter().enumerate() {
            matrix[i][j] = e;
        }
    }
    let cocycle = ModuleMap::new(
        ring.clone(),
        f_n.shifted(d),
        GradedFreeModule::new(target.gens().shifts().to_vec()),
        matrix,
    )?;
    Ok(ExtClass::from_parts(
        module.clone(),
        target.clone(),
        n,
        d,
        cocycle,
    ))
}

/// Lift the cocycle to a chain map along the minimal resolutions:
/// `g_t: F_{n+t}(M) -> F_t(N)` with `d_t g_t = g_{t-1} d_{n+t}`. Returns
/// `[g_0, ..., g_steps]` where `g_0` is the cocycle itself.
pub fn lift_chain_map(class: &ExtClass, steps: usize, limits: &Limits) -> Result<Vec<ModuleMap>> {
    let module = &class.module;
    let target = &class.target;
    let ring = module.ring().clone();
    let field = *ring.field();
    let n = class.hdeg;
    let delta = class.internal_degree;
    let res_m = resolution(module, n + steps, limits)?;
    let res_n = resolution(target, steps.max(1), limits)?;
    let mut lifts: Vec<ModuleMap> = vec![class.cocycle.clone()];
    for t in 1..=steps {
        let rhs_map = lifts[t - 1].compose(&res_m.diff(n + t).shifted(delta))?;
        let d_t = res_n.diff(t);
        let src = res_m.free_module(n + t).shifted(delta);
        let tgt = res_n.free_module(t).clone();
        let mut entries =
            vec![vec![Polynomial::zero(ring.num_vars()); src.rank()]; tgt.rank()];
        for j in 0..src.rank() {
            let deg = src.shifts()[j];
            let rhs_col = rhs_map.column(j);
            let rhs_basis = res_n.free_module(t - 1).degree_basis(&ring, deg);
            let rhs = rhs_basis.coords_of(&ring, &rhs_col);
            let mat = d_t.degree_matrix(deg);
            let sol = mat
                .solve(&field, &rhs)
                .ok_or(Error::LiftInconsistent { step: t, column: j })?;
            let col = tgt.degree_basis(&ring, deg).column_of(&ring, &sol);
            for (i, e) in col.into_iter().enumerate() {
                entries[i][j] = e;
            }
        }
        let g_t = ModuleMap::new(ring.clone(), src, tgt, entries)?;
        // chain-map condition, exactly
        let lhs = d_t.compose(&g_t)?;
        let rhs = lifts[t - 1].compose(&res_m.diff(n + t).shifted(delta))?;
        if !lhs.same_map(&rhs) {
            return Err(Error::Internal(format!(
                "chain-map condition fails at lift step {t}"
            )));
        }
        lifts.push(g_t);
    }
    Ok(lifts)
}

/// Yoneda product `theta2 . theta1` for `theta1` an endo class on `M` and
/// `theta2` a class `M -> Y`: compose `theta2`'s cocycle with the
/// `hdeg(theta2)`-step lift of `theta1`.
pub fn yoneda_product(theta2: &ExtClass, theta1: &ExtClass, limits: &Limits) -> Result<ExtClass> {
    if !theta1.is_endo() {
        return Err(Error::NotComposable(
            "the right factor must be an endo class".into(),
        ));
    }
    if !Arc::ptr_eq(&theta2.module, &theta1.module)
        && !theta2.module.same_presentation(&theta1.module)
    {
        return Err(Error::NotComposable(
            "classes live on different modules".into(),
        ));
    }
    let m = theta2.hdeg;
    let lifts = lift_chain_map(theta1, m, limits)?;
    let g_m = lifts[m].shifted(theta2.internal_degree);
    let cocycle = theta2.cocycle.compose(&g_m)?;
    Ok(ExtClass::from_parts(
        theta1.module.clone(),
        theta2.target.clone(),
        theta1.hdeg + m,
        theta1.internal_degree + theta2.internal_degree,
        cocycle,
    ))
}

/// `eta^t` under the Yoneda product, `t >= 1`.
pub fn power(eta: &ExtClass, t: usize, limits: &Limits) -> Result<ExtClass> {
    if t == 0 {
        return Err(Error::Precondition("powers need t >= 1".into()));
    }
    if !eta.is_endo() {
        return Err(Error::NotComposable("powers need an endo class".into()));
    }
    let mut acc = eta.clone();
    for _ in 1..t {
        acc = yoneda_product(&acc, eta, limits)?;
    }
    Ok(acc)
}

/// The pushout data of a class: module, SES maps, and the verified flag.
pub struct PushoutResult {
    pub k: Arc<GradedModule>,
    /// `Y -> K`
    pub inclusion: ModuleHom,
    /// `K -> omega^{n-1}(M)` shifted by the class's internal degree
    pub projection: ModuleHom,
    /// the third term of the sequence
    pub omega_part: Arc<GradedModule>,
    pub ses_verified: bool,
}

/// Build `K_eta` for `eta` in `Ext^n(M, Y)`: generators of `Y` together
/// with the basis of `F_{n-1}`, modulo the relations of `Y` and one
/// relation `(f_eta(e), -d_n(e))` per basis vector `e` of `F_n`.
pub fn pushout(class: &ExtClass, limits: &Limits) -> Result<PushoutResult> {
    class.verify_cocycle(limits)?;
    let module = &class.module;
    let y = &class.target;
    let ring = module.ring().clone();
    let nv = ring.num_vars();
    let field = *ring.field();
    let n = class.hdeg;
    let delta = class.internal_degree;
    let res = resolution(module, n, limits)?;
    let f_prev = res.free_module(n - 1).shifted(delta);
    let d_n = res.diff(n).shifted(delta);

    let y_gens = y.gens().shifts().to_vec();
    let gen_shifts: Vec<i64> = y_gens.iter().chain(f_prev.shifts()).copied().collect();
    let y_rank = y_gens.len();
    let total = gen_shifts.len();

    let mut rel_shifts = Vec::new();
    let mut columns: Vec<Vec<Polynomial>> = Vec::new();
    // relations of Y, padded with zeros
    for l in 0..y.relations().rank() {
        let mut col = vec![Polynomial::zero(nv); total];
        for (i, e) in y.presentation().column(l).into_iter().enumerate() {
            col[i] = e;
        }
        rel_shifts.push(y.relations().shifts()[l]);
        columns.push(col);
    }
    // pushout relations: one per basis vector of F_n
    let f_n = d_n.source();
    for j in 0..f_n.rank() {
        let mut col = vec![Polynomial::zero(nv); total];
        for (i, e) in class.cocycle.column(j).into_iter().enumerate() {
            col[i] = e;
        }
        for (i, e) in d_n.column(j).into_iter().enumerate() {
            col[y_rank + i] = e.neg(&field);
        }
        rel_shifts.push(f_n.shifts()[j]);
        columns.push(col);
    }
    let mut entries = vec![vec![Polynomial::zero(nv); columns.len()]; total];
    for (l, col) in columns.iter().enumerate() {
        for (r, e) in col.iter().enumerate() {
            entries[r][l] = e.clone();
        }
    }
    let raw = GradedModule::from_presentation(ModuleMap::new(
        ring.clone(),
        GradedFreeModule::new(rel_shifts),
        GradedFreeModule::new(gen_shifts),
        entries,
    )?);

    let reduction = minimalize_with_maps(&raw)?;
    let k = reduction.module.clone();
    k.known_minimal();

    // inclusion Y -> K through the raw module
    let mut incl_matrix = vec![vec![Polynomial::zero(nv); y_rank]; total];
    for (j, row) in incl_matrix.iter_mut().enumerate().take(y_rank) {
        row[j] = Polynomial::constant(1, nv);
    }
    let incl_raw = ModuleHom::new(y.clone(), raw.clone(), 0, incl_matrix)?;
    let inclusion = reduction.to_min.compose(&incl_raw)?;

    // projection K -> omega^{n-1}(M) shifted
    let omega_part = omega(module, n - 1, limits)?.shifted(delta);
    let mut proj_matrix = vec![vec![Polynomial::zero(nv); total]; f_prev.rank()];
    for (i, row) in proj_matrix.iter_mut().enumerate() {
        row[y_rank + i] = Polynomial::constant(1, nv);
    }
    let proj_raw = ModuleHom::new(raw.clone(), omega_part.clone(), 0, proj_matrix)?;
    let projection = proj_raw.compose(&reduction.from_min)?;

    let ses_verified =
        crate::gradedmod::hom::verify_ses(&inclusion, &projection, limits.max_degree).is_ok();
    Ok(PushoutResult {
        k,
        inclusion,
        projection,
        omega_part,
        ses_verified,
    })
}

/// Hilbert-series bookkeeping for the syzygy/pushout exact sequence
/// `0 -> omega^{|t2|}(K_{t1}) -> K_{t2 t1} (+) F -> K_{t2} -> 0`:
/// the difference of the two sides must be the Hilbert series of an actual
/// free module, whose ranks are reported.
#[derive(Debug, Clone)]
pub struct SpliceReport {
    pub consistent: bool,
    pub free_ranks: BTreeMap<i64, usize>,
    pub detail: String,
}

pub fn splice_bookkeeping(
    theta1: &ExtClass,
    theta2: &ExtClass,
    limits: &Limits,
) -> Result<SpliceReport> {
    if !theta1.is_endo() {
        return Err(Error::NotComposable("theta1 must be an endo class".into()));
    }
    let hi = limits.max_degree;
    let k1 = pushout(theta1, limits)?;
    let k2 = pushout(theta2, limits)?;
    let prod = yoneda_product(theta2, theta1, limits)?;
    let k21 = pushout(&prod, limits)?;
    let w = omega(&k1.k, theta2.hdeg(), limits)?;

    let ring = theta1.module().ring().clone();
    let lhs = w.hilbert(hi).add(&k2.k.hilbert(hi));
    let rhs = k21.k.hilbert(hi);
    // solve lhs = rhs + HS(F) for a free module F
    let lo = [lhs.support_lo(), rhs.support_lo()]
        .into_iter()
        .flatten()
        .min()
        .unwrap_or(0);
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    for d in lo..=hi {
        let mut acc = rhs.get(d) as i64;
        for (&a, &r) in &ranks {
            acc += (r * ring.dim_k(d - a)) as i64;
        }
        let diff = lhs.get(d) as i64 - acc;
        if diff < 0 {
            return Ok(SpliceReport {
                consistent: false,
                free_ranks: ranks,
                detail: format!("negative free rank needed in degree {d}"),
            });
        }
        if diff > 0 {
            // margin guard: a generator chosen too close to the window top
            // could not be distinguished from noise
            if d > hi - 2 {
                return Ok(SpliceReport {
                    consistent: false,
                    free_ranks: ranks,
                    detail: format!("free generator at degree {d} is too close to the window top"),
                });
            }
            ranks.insert(d, diff as usize);
        }
    }
    Ok(SpliceReport {
        consistent: true,
        free_ranks: ranks,
        detail: "difference realized by a free module".into(),
    })
}
