//! Complexity-reduction certificates and what they buy.
//!
//! A certificate for `M` is a chain of pushouts
//! `0 -> K_{i-1} -> K_i -> omega^{n_i - 1}(K_{i-1}) -> 0` along endo Ext
//! classes, with depth preserved and the complexity estimate strictly
//! decreasing, ending in a module of witnessed finite projective
//! dimension. The checker re-verifies everything from the stored data;
//! the searcher, transporter and the MCM-approximation loops build such
//! chains.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gradedmod::hom::verify_ses;
use crate::gradedmod::{
    is_isomorphic, minimalize, minimalize_with_maps, GradedModule, IsoVerdict, ModuleHom,
};
use crate::homalg::{depth, is_mcm, q_index, tor_table, Depth, SupIndex, TorTable, VanishingTable};
use crate::resolve::{complexity_of, finite_pd_witness, omega, resolution, ComplexityEstimate};
use crate::ringkernel::Polynomial;
use crate::yoneda::{ext_class_basis, lift_chain_map, power, pushout, ExtClass, PushoutResult};
use crate::Limits;

/// One pushout link of a certificate chain.
pub struct CertLink {
    /// endo class on the previous module
    pub class: ExtClass,
    /// the pushout module `K_i`
    pub module: Arc<GradedModule>,
    /// `K_{i-1} -> K_i`
    pub inclusion: ModuleHom,
    /// `K_i -> omega^{n_i - 1}(K_{i-1})` shifted by the class degree
    pub projection: ModuleHom,
    pub ses_verified: bool,
}

/// The certificate: chain data plus the recorded invariant trails.
pub struct Certificate {
    pub base: Arc<GradedModule>,
    pub links: Vec<CertLink>,
    pub terminal_pd: usize,
    pub cx_trail: Vec<ComplexityEstimate>,
    pub depth_trail: Vec<Depth>,
}

impl Certificate {
    pub fn chain_len(&self) -> usize {
        self.links.len()
    }

    pub fn terminal_module(&self) -> &Arc<GradedModule> {
        self.links.last().map(|l| &l.module).unwrap_or(&self.base)
    }

    /// `|eta_1| + ... + |eta_c| - c`, the vanishing-window span of the
    /// chain (window length minus one).
    pub fn window_span(&self) -> usize {
        self.links.iter().map(|l| l.class.hdeg() - 1).sum()
    }

    /// The empty chain for a module of witnessed finite projective
    /// dimension.
    pub fn trivial(base: Arc<GradedModule>, limits: &Limits) -> Result<Certificate> {
        let base = minimalize(&base);
        let pd = finite_pd_witness(&base, limits)?.ok_or_else(|| {
            Error::Precondition("empty-chain certificate needs finite projective dimension".into())
        })?;
        let cx = complexity_of(&base, limits)?;
        let d = depth(&base, limits)?.depth;
        Ok(Certificate {
            base,
            links: Vec::new(),
            terminal_pd: pd,
            cx_trail: vec![cx],
            depth_trail: vec![d],
        })
    }
}

/// Outcome of `check_certificate`: pass, or the first failing condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertVerdict {
    Pass,
    Fail { condition: String },
}

impl CertVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, CertVerdict::Pass)
    }
}

fn fail(msg: impl Into<String>) -> CertVerdict {
    CertVerdict::Fail {
        condition: msg.into(),
    }
}

/// Re-verify every certificate invariant from scratch: base identity,
/// cocycle conditions, SES exactness, pushout consistency, depth equality,
/// strict complexity decrease and the terminal finite-pd witness.
pub fn check_certificate(m: &Arc<GradedModule>, cert: &Certificate, limits: &Limits) -> Result<CertVerdict> {
    let minimal = minimalize(m);
    if !minimal.same_presentation(&cert.base) {
        return Ok(fail("base module does not match the certified module"));
    }
    let mut current = cert.base.clone();
    let mut depths = Vec::new();
    let mut cxs = Vec::new();
    depths.push(depth(&current, limits)?.depth);
    cxs.push(complexity_of(&current, limits)?);
    for (i, link) in cert.links.iter().enumerate() {
        if !link.class.module().same_presentation(&current) {
            return Ok(fail(format!("link {i}: class lives on the wrong module")));
        }
        if link.class.verify_cocycle(limits).is_err() {
            return Ok(fail(format!("link {i}: cocycle condition fails")));
        }
        if verify_ses(&link.inclusion, &link.projection, limits.max_degree).is_err() {
            return Ok(fail(format!("link {i}: stored SES does not verify")));
        }
        if !link.inclusion.source().same_presentation(&current) {
            return Ok(fail(format!("link {i}: SES does not start at the chain module")));
        }
        if !link.inclusion.target().same_presentation(&link.module) {
            return Ok(fail(format!("link {i}: SES middle is not the stored module")));
        }
        // pushout consistency: recompute and compare up to isomorphism
        let p = pushout(&link.class, limits)?;
        let consistent = p.k.same_presentation(&link.module)
            || is_isomorphic(&p.k, &link.module, limits)?.is_isomorphic();
        if !consistent {
            return Ok(fail(format!(
                "link {i}: stored module is not the pushout of the stored class"
            )));
        }
        current = link.module.clone();
        let d = depth(&current, limits)?.depth;
        if d != depths[0] {
            return Ok(fail(format!(
                "link {i}: depth changed along the chain ({:?} vs {:?})",
                d, depths[0]
            )));
        }
        depths.push(d);
        let cx = complexity_of(&current, limits)?;
        let (prev, now) = (cxs.last().unwrap().finite_value(), cx.finite_value());
        match (prev, now) {
            (Some(a), Some(b)) if b < a => {}
            _ => {
                return Ok(fail(format!(
                    "link {i}: complexity does not strictly decrease ({:?} -> {:?})",
                    cxs.last().unwrap().value,
                    cx.value
                )))
            }
        }
        cxs.push(cx);
    }
    match finite_pd_witness(&current, limits)? {
        Some(pd) if pd == cert.terminal_pd => Ok(CertVerdict::Pass),
        Some(pd) => Ok(fail(format!(
            "terminal projective dimension {pd} differs from recorded {}",
            cert.terminal_pd
        ))),
        None => Ok(fail("terminal module has no finite-pd witness within H")),
    }
}

/// Search outcome: a certificate, or diagnostics when the budget ran out.
pub enum SearchOutcome {
    Found(Certificate),
    Exhausted {
        classes_tried: usize,
        best_cx: Option<usize>,
        chain_reached: usize,
    },
}

impl SearchOutcome {
    pub fn certificate(self) -> Option<Certificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

struct Candidate {
    class: ExtClass,
    push: PushoutResult,
    cx_after: usize,
}

/// Enumerate candidate reducing classes on `module` in a deterministic
/// order: echelon basis classes first, then coefficient-1 sums of pairs in
/// the same internal degree, then seeded combinations. Evaluating a
/// candidate costs one pushout + complexity estimate against the budget.
fn find_reducing_class(
    module: &Arc<GradedModule>,
    cx_now: usize,
    target_depth: Depth,
    max_hdeg: usize,
    budget: &mut usize,
    classes_tried: &mut usize,
    best_cx: &mut Option<usize>,
    limits: &Limits,
) -> Result<Option<Candidate>> {
    use rand::{Rng, SeedableRng};
    let p = module.ring().characteristic();
    for n in 1..=max_hdeg {
        let basis = ext_class_basis(module, module, n, limits)?;
        if basis.is_empty() {
            continue;
        }
        // group indices by internal degree for homogeneous combinations
        let mut groups: Vec<(i64, Vec<usize>)> = Vec::new();
        for (i, c) in basis.iter().enumerate() {
            match groups.iter_mut().find(|(d, _)| *d == c.internal_degree()) {
                Some((_, v)) => v.push(i),
                None => groups.push((c.internal_degree(), vec![i])),
            }
        }
        let mut combos: Vec<Vec<(usize, u32)>> = Vec::new();
        for (i, _) in basis.iter().enumerate() {
            combos.push(vec![(i, 1)]);
        }
        for (_, idxs) in &groups {
            for a in 0..idxs.len() {
                for b in (a + 1)..idxs.len() {
                    combos.push(vec![(idxs[a], 1), (idxs[b], 1)]);
                }
            }
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(limits.seed.wrapping_add(n as u64));
        for (_, idxs) in &groups {
            if idxs.len() < 2 {
                continue;
            }
            for _ in 0..16 {
                let coeffs: Vec<(usize, u32)> = idxs
                    .iter()
                    .map(|&i| (i, rng.gen_range(0..p)))
                    .filter(|&(_, c)| c != 0)
                    .collect();
                if coeffs.len() >= 2 {
                    combos.push(coeffs);
                }
            }
        }
        let mut best: Option<Candidate> = None;
        for combo in combos {
            if *budget == 0 {
                return Ok(best);
            }
            *budget -= 1;
            *classes_tried += 1;
            let class = combine_classes(&basis, &combo)?;
            if class.is_zero_class(limits)? {
                continue;
            }
            let push = pushout(&class, limits)?;
            if !push.ses_verified {
                continue;
            }
            let cx = complexity_of(&push.k, limits)?;
            let Some(cx_after) = cx.finite_value() else {
                continue;
            };
            if cx_after < cx_now {
                *best_cx = Some((*best_cx).map_or(cx_after, |b: usize| b.min(cx_after)));
            }
            if cx_after >= cx_now || !cx.confident {
                continue;
            }
            if depth(&push.k, limits)?.depth != target_depth {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => cx_after < b.cx_after,
            };
            if better {
                best = Some(Candidate {
                    class,
                    push,
                    cx_after,
                });
            }
        }
        if best.is_some() {
            return Ok(best);
        }
    }
    Ok(None)
}

fn combine_classes(basis: &[ExtClass], combo: &[(usize, u32)]) -> Result<ExtClass> {
    debug_assert!(!combo.is_empty());
    let first = &basis[combo[0].0];
    if combo.len() == 1 && combo[0].1 == 1 {
        return Ok(first.clone());
    }
    let ring = first.module().ring().clone();
    let field = *ring.field();
    let nv = ring.num_vars();
    let rows = first.cocycle().target().rank();
    let cols = first.cocycle().source().rank();
    let mut matrix = vec![vec![Polynomial::zero(nv); cols]; rows];
    for &(idx, c) in combo {
        let b = &basis[idx];
        debug_assert_eq!(b.hdeg(), first.hdeg());
        debug_assert_eq!(b.internal_degree(), first.internal_degree());
        for i in 0..rows {
            for j in 0..cols {
                let term = b.cocycle().entry(i, j).scale(&field, c);
                matrix[i][j] = matrix[i][j].add(&field, &term);
            }
        }
    }
    let cocycle = crate::gradedmod::ModuleMap::new(
        ring,
        first.cocycle().source().clone(),
        first.cocycle().target().clone(),
        matrix,
    )?;
    Ok(ExtClass::from_raw(
        first.module().clone(),
        first.target().clone(),
        first.hdeg(),
        first.internal_degree(),
        cocycle,
    ))
}

/// Search for a certificate: greedy over homological degree, preferring
/// larger complexity drops, recursing on the pushout module.
pub fn search_certificate(
    m: &Arc<GradedModule>,
    max_hdeg: usize,
    budget: usize,
    limits: &Limits,
) -> Result<SearchOutcome> {
    let minimal = minimalize(m);
    let cx0 = complexity_of(&minimal, limits)?;
    let Some(mut cx_now) = cx0.finite_value() else {
        return Err(Error::Precondition(
            "complexity estimate is unbounded within the window".into(),
        ));
    };
    if !cx0.confident {
        return Err(Error::Precondition(
            "complexity estimate is not confident; enlarge the window".into(),
        ));
    }
    let target_depth = depth(&minimal, limits)?.depth;
    let mut budget = budget;
    let mut classes_tried = 0usize;
    let mut best_cx = None;
    let mut links = Vec::new();
    let mut cx_trail = vec![cx0];
    let mut depth_trail = vec![target_depth];
    let mut current = minimal.clone();
    while cx_now > 0 {
        let found = find_reducing_class(
            &current,
            cx_now,
            target_depth,
            max_hdeg,
            &mut budget,
            &mut classes_tried,
            &mut best_cx,
            limits,
        )?;
        let Some(cand) = found else {
            return Ok(SearchOutcome::Exhausted {
                classes_tried,
                best_cx,
                chain_reached: links.len(),
            });
        };
        cx_trail.push(complexity_of(&cand.push.k, limits)?);
        depth_trail.push(depth(&cand.push.k, limits)?.depth);
        cx_now = cand.cx_after;
        current = cand.push.k.clone();
        links.push(CertLink {
            class: cand.class,
            module: cand.push.k.clone(),
            inclusion: cand.push.inclusion,
            projection: cand.push.projection,
            ses_verified: cand.push.ses_verified,
        });
    }
    let terminal_pd = finite_pd_witness(&current, limits)?
        .ok_or_else(|| Error::Internal("cx 0 without a finite-pd witness".into()))?;
    Ok(SearchOutcome::Found(Certificate {
        base: minimal,
        links,
        terminal_pd,
        cx_trail,
        depth_trail,
    }))
}

/// Transport a certificate across one syzygy: the classes of the new chain
/// are the one-step lifts of the old ones, the modules are the syzygies of
/// the old chain modules padded with the free summands forced by the
/// Horseshoe Lemma. Everything is re-verified.
pub fn syzygy_transport(cert: &Certificate, limits: &Limits) -> Result<Certificate> {
    let ring = cert.base.ring().clone();
    // the ring must be Cohen-Macaulay for the transported depth condition
    let a = GradedModule::free(ring.clone(), vec![0]);
    let depth_a = depth(&a, limits)?.depth.finite().unwrap_or(0);
    if depth_a != ring.krull_dim() {
        return Err(Error::RingNotCohenMacaulay {
            depth: depth_a,
            dim: ring.krull_dim(),
        });
    }
    let base_syzygy = omega(&cert.base, 1, limits)?;
    if base_syzygy.is_zero_module() || cert.links.is_empty() {
        return Certificate::trivial(base_syzygy, limits);
    }
    let mut current = base_syzygy.clone();
    let mut links = Vec::new();
    let mut prev_chain_module = cert.base.clone();
    for (i, link) in cert.links.iter().enumerate() {
        let n = link.class.hdeg();
        let delta = link.class.internal_degree();
        // lift the class one step along the resolution of the chain module
        let lifts = lift_chain_map(&link.class, 1, limits)?;
        let g1 = &lifts[1];
        // the lifted cocycle on the current module: rows are its
        // generators = F_1 of the chain module plus any free summand
        let res_cur = resolution(&current, n + 1, limits)?;
        let f_n_cur = res_cur.free_module(n);
        if f_n_cur.shifts() != g1.source().shifts().iter().map(|s| s - delta).collect::<Vec<_>>() {
            return Err(Error::Transport(format!(
                "link {i}: resolution of the syzygy module does not share the chain resolution"
            )));
        }
        let nv = ring.num_vars();
        let rows = current.gens().rank();
        let top = g1.target().rank();
        let cols = g1.source().rank();
        let mut matrix = vec![vec![Polynomial::zero(nv); cols]; rows];
        for r in 0..top {
            for c in 0..cols {
                matrix[r][c] = g1.entry(r, c).clone();
            }
        }
        let theta = ExtClass::new(&current, &current, n, delta, matrix, limits)
            .map_err(|e| Error::Transport(format!("link {i}: lifted class invalid: {e}")))?;
        let push = pushout(&theta, limits)?;
        if !push.ses_verified {
            return Err(Error::Transport(format!("link {i}: pushout SES failed")));
        }
        // expected shape: omega^1 of the old chain module plus a free part
        let next_syzygy = omega(&link.module, 1, limits)?;
        let free_part = free_difference(&push.k, &next_syzygy, limits)
            .ok_or_else(|| Error::Transport(format!("link {i}: pushout is not a syzygy plus free")))?;
        let shaped = if free_part.is_empty() {
            next_syzygy.clone()
        } else {
            GradedModule::direct_sum(&next_syzygy, &GradedModule::free(ring.clone(), free_part))?
        };
        let verdict = is_isomorphic(&push.k, &shaped, limits)?;
        let IsoVerdict::Isomorphic { forward, inverse } = verdict else {
            return Err(Error::Transport(format!(
                "link {i}: pushout not isomorphic to the expected syzygy shape"
            )));
        };
        let inclusion = forward.compose(&push.inclusion)?;
        let projection = push.projection.compose(&inverse)?;
        let ses_verified = verify_ses(&inclusion, &projection, limits.max_degree).is_ok();
        if !ses_verified {
            return Err(Error::Transport(format!(
                "link {i}: transported SES failed re-verification"
            )));
        }
        links.push(CertLink {
            class: theta,
            module: shaped.clone(),
            inclusion,
            projection,
            ses_verified,
        });
        current = shaped;
        prev_chain_module = link.module.clone();
    }
    let _ = prev_chain_module;
    let terminal_pd = finite_pd_witness(&current, limits)?
        .ok_or_else(|| Error::Transport("transported terminal has no finite-pd witness".into()))?;
    let mut cx_trail = Vec::new();
    let mut depth_trail = Vec::new();
    cx_trail.push(complexity_of(&base_syzygy, limits)?);
    depth_trail.push(depth(&base_syzygy, limits)?.depth);
    for l in &links {
        cx_trail.push(complexity_of(&l.module, limits)?);
        depth_trail.push(depth(&l.module, limits)?.depth);
    }
    let cert_out = Certificate {
        base: base_syzygy.clone(),
        links,
        terminal_pd,
        cx_trail,
        depth_trail,
    };
    match check_certificate(&base_syzygy, &cert_out, limits)? {
        CertVerdict::Pass => Ok(cert_out),
        CertVerdict::Fail { condition } => Err(Error::Transport(format!(
            "transported certificate fails re-verification: {condition}"
        ))),
    }
}

/// Shift multiset of a free module `F` with `HF(big) = HF(small) + HF(F)`,
/// or `None` when the difference is not free-shaped.
fn free_difference(
    big: &Arc<GradedModule>,
    small: &Arc<GradedModule>,
    limits: &Limits,
) -> Option<Vec<i64>> {
    let ring = big.ring();
    let hi = limits.max_degree;
    let hb = big.hilbert(hi);
    let hs = small.hilbert(hi);
    let lo = [hb.support_lo(), hs.support_lo()]
        .into_iter()
        .flatten()
        .min()
        .unwrap_or(0);
    let mut shifts = Vec::new();
    for d in lo..=hi {
        let mut acc = hs.get(d) as i64;
        for &a in &shifts {
            acc += ring.dim_k(d - a) as i64;
        }
        let diff = hb.get(d) as i64 - acc;
        if diff < 0 {
            return None;
        }
        for _ in 0..diff {
            if d > hi - 2 {
                return None; // too close to the window top to trust
            }
            shifts.push(d);
        }
    }
    Some(shifts)
}

/// `0 -> Y -> C -> M -> 0` with `C` maximal Cohen-Macaulay and `pd Y`
/// finite (witnessed), built by iterating pushouts along powers of
/// reducing classes.
pub struct McmApproximation {
    pub y: Arc<GradedModule>,
    pub c: Arc<GradedModule>,
    /// `Y -> C`
    pub inclusion: ModuleHom,
    /// `C -> M`
    pub projection: ModuleHom,
    pub y_pd: usize,
    pub iterations: usize,
}

fn require_complete_intersection(ring: &Arc<crate::ringkernel::QuotientRing>) -> Result<()> {
    if ring.is_complete_intersection_fixture() {
        Ok(())
    } else {
        Err(Error::NotCompleteIntersection)
    }
}

pub fn mcm_approximation(m: &Arc<GradedModule>, limits: &Limits) -> Result<McmApproximation> {
    let ring = m.ring().clone();
    require_complete_intersection(&ring)?;
    let minimal = minimalize(m);
    if is_mcm(&minimal, limits)? {
        // already MCM: Y = 0, C = M
        let zero = GradedModule::zero_module(ring.clone());
        let inclusion = ModuleHom::zero(zero.clone(), minimal.clone(), 0);
        let projection = ModuleHom::identity(&minimal);
        return Ok(McmApproximation {
            y: zero,
            c: minimal,
            inclusion,
            projection,
            y_pd: 0,
            iterations: 0,
        });
    }
    // start from the minimal free cover
    let cover = GradedModule::free(ring.clone(), minimal.gens().shifts().to_vec());
    let nv = ring.num_vars();
    let id_matrix: Vec<Vec<Polynomial>> = (0..minimal.gens().rank())
        .map(|i| {
            (0..cover.gens().rank())
                .map(|j| {
                    if i == j {
                        Polynomial::constant(1, nv)
                    } else {
                        Polynomial::zero(nv)
                    }
                })
                .collect()
        })
        .collect();
    let mut proj = ModuleHom::new(cover.clone(), minimal.clone(), 0, id_matrix)?;
    let mut c_mod = cover;
    let mut y_mod = omega(&minimal, 1, limits)?;
    // inclusion omega^1(M) -> F_0 via the first differential
    let res = resolution(&minimal, 1, limits)?;
    let d1 = res.diff(1);
    let incl_matrix: Vec<Vec<Polynomial>> = (0..d1.target().rank())
        .map(|i| (0..d1.source().rank()).map(|j| d1.entry(i, j).clone()).collect())
        .collect();
    let mut incl = ModuleHom::new(y_mod.clone(), c_mod.clone(), 0, incl_matrix)?;
    let mut iterations = 0usize;
    loop {
        let cx = complexity_of(&y_mod, limits)?;
        let cx_now = cx.finite_value().ok_or_else(|| {
            Error::Precondition("complexity of the kernel is unbounded within the window".into())
        })?;
        if cx_now == 0 {
            break;
        }
        iterations += 1;
        let target_depth = depth(&y_mod, limits)?.depth;
        let mut budget = 512;
        let mut tried = 0;
        let mut best = None;
        let cand = find_reducing_class(
            &y_mod, cx_now, target_depth, limits.max_hdeg.min(4), &mut budget, &mut tried,
            &mut best, limits,
        )?
        .ok_or_else(|| Error::SearchExhausted("no reducing class for the kernel".into()))?;
        let eta = cand.class;
        let n = eta.hdeg();
        // minimal power with an MCM syzygy target
        let cap = (limits.max_hdeg / n).max(1);
        let mut chosen = None;
        for t in 1..=cap {
            if t * n >= 1 && is_mcm(&omega(&y_mod, t * n - 1, limits)?, limits)? {
                chosen = Some(t);
                break;
            }
        }
        let t = chosen.ok_or_else(|| {
            Error::Precondition("no syzygy of the kernel becomes MCM within the window".into())
        })?;
        let eta_t = power(&eta, t, limits)?;
        let push = pushout(&eta_t, limits)?;
        if !push.ses_verified {
            return Err(Error::Internal("approximation pushout SES failed".into()));
        }
        // C' = pushout of (Y -> K) and (Y -> C)
        let (c_new, into_from_k, into_from_c) =
            pushout_of_homs(&push.inclusion, &incl, limits)?;
        // projection C' -> M kills the K block and restricts to proj on C
        let proj_matrix: Vec<Vec<Polynomial>> = (0..minimal.gens().rank())
            .map(|i| {
                let mut row = Vec::new();
                for _ in 0..push.k.gens().rank() {
                    row.push(Polynomial::zero(nv));
                }
                for j in 0..c_mod.gens().rank() {
                    row.push(proj.matrix()[i][j].clone());
                }
                row
            })
            .collect();
        let proj_raw = ModuleHom::new(into_from_k.raw_module.clone(), minimal.clone(), 0, proj_matrix)?;
        proj = proj_raw.compose(&into_from_k.from_min)?;
        incl = into_from_k.map.clone();
        let _ = into_from_c;
        y_mod = push.k.clone();
        c_mod = c_new;
        if iterations > limits.max_hdeg {
            return Err(Error::Internal("approximation loop did not terminate".into()));
        }
    }
    let y_pd = finite_pd_witness(&y_mod, limits)?
        .ok_or_else(|| Error::Internal("kernel has cx 0 but no pd witness".into()))?;
    if !is_mcm(&c_mod, limits)? {
        return Err(Error::Internal("approximation middle term is not MCM".into()));
    }
    verify_ses(&incl, &proj, limits.max_degree)
        .map_err(|e| Error::Internal(format!("approximation SES failed: {e}")))?;
    Ok(McmApproximation {
        y: y_mod,
        c: c_mod,
        inclusion: incl,
        projection: proj,
        y_pd,
        iterations,
    })
}

/// Result bundle for a map into a pushout, keeping the raw module and the
/// minimalization witnesses so callers can transport other maps.
struct IntoPushout {
    map: ModuleHom,
    raw_module: Arc<GradedModule>,
    from_min: ModuleHom,
}

/// The pushout `(K (+) C) / {(f(y), -g(y))}` of two degree-0 homs with the
/// same source, with the canonical maps from `K` (returned first) and `C`.
fn pushout_of_homs(
    f: &ModuleHom,
    g: &ModuleHom,
    _limits: &Limits,
) -> Result<(Arc<GradedModule>, IntoPushout, IntoPushout)> {
    if f.degree() != 0 || g.degree() != 0 {
        return Err(Error::Precondition("pushout needs degree-0 maps".into()));
    }
    if !f.source().same_presentation(g.source()) {
        return Err(Error::ShapeMismatch("pushout legs have different sources".into()));
    }
    let ring = f.source().ring().clone();
    let nv = ring.num_vars();
    let field = *ring.field();
    let k = f.target().clone();
    let c = g.target().clone();
    let k_rank = k.gens().rank();
    let total = k_rank + c.gens().rank();
    let gen_shifts: Vec<i64> = k
        .gens()
        .shifts()
        .iter()
        .chain(c.gens().shifts())
        .copied()
        .collect();
    let mut rel_shifts = Vec::new();
    let mut cols: Vec<Vec<Polynomial>> = Vec::new();
    for l in 0..k.relations().rank() {
        let mut col = vec![Polynomial::zero(nv); total];
        for (i, e) in k.presentation().column(l).into_iter().enumerate() {
            col[i] = e;
        }
        rel_shifts.push(k.relations().shifts()[l]);
        cols.push(col);
    }
    for l in 0..c.relations().rank() {
        let mut col = vec![Polynomial::zero(nv); total];
        for (i, e) in c.presentation().column(l).into_iter().enumerate() {
            col[k_rank + i] = e;
        }
        rel_shifts.push(c.relations().shifts()[l]);
        cols.push(col);
    }
    for (j, &s) in f.source().gens().shifts().iter().enumerate() {
        let mut col = vec![Polynomial::zero(nv); total];
        for (i, e) in f.image_of_gen(j).into_iter().enumerate() {
            col[i] = e;
        }
        for (i, e) in g.image_of_gen(j).into_iter().enumerate() {
            col[k_rank + i] = e.neg(&field);
        }
        rel_shifts.push(s);
        cols.push(col);
    }
    let mut entries = vec![vec![Polynomial::zero(nv); cols.len()]; total];
    for (l, col) in cols.iter().enumerate() {
        for (r, e) in col.iter().enumerate() {
            entries[r][l] = e.clone();
        }
    }
    let raw = GradedModule::from_presentation(crate::gradedmod::ModuleMap::new(
        ring.clone(),
        crate::gradedmod::GradedFreeModule::new(rel_shifts),
        crate::gradedmod::GradedFreeModule::new(gen_shifts),
        entries,
    )?);
    let red = minimalize_with_maps(&raw)?;
    let k_block: Vec<Vec<Polynomial>> = (0..total)
        .map(|i| {
            (0..k_rank)
                .map(|j| {
                    if i == j {
                        Polynomial::constant(1, nv)
                    } else {
                        Polynomial::zero(nv)
                    }
                })
                .collect()
        })
        .collect();
    let c_block: Vec<Vec<Polynomial>> = (0..total)
        .map(|i| {
            (0..c.gens().rank())
                .map(|j| {
                    if i == k_rank + j {
                        Polynomial::constant(1, nv)
                    } else {
                        Polynomial::zero(nv)
                    }
                })
                .collect()
        })
        .collect();
    let from_k = red.to_min.compose(&ModuleHom::new(k.clone(), raw.clone(), 0, k_block)?)?;
    let from_c = red.to_min.compose(&ModuleHom::new(c.clone(), raw.clone(), 0, c_block)?)?;
    Ok((
        red.module.clone(),
        IntoPushout {
            map: from_k,
            raw_module: raw.clone(),
            from_min: red.from_min.clone(),
        },
        IntoPushout {
            map: from_c,
            raw_module: raw,
            from_min: red.from_min,
        },
    ))
}

/// `0 -> M -> Y -> C -> 0` with `C` MCM and `pd Y` finite (witnessed).
pub struct FidHull {
    pub y: Arc<GradedModule>,
    pub c: Arc<GradedModule>,
    /// `M -> Y`
    pub inclusion: ModuleHom,
    /// `Y -> C`
    pub projection: ModuleHom,
    pub y_pd: usize,
    pub iterations: usize,
}

pub fn fid_hull(m: &Arc<GradedModule>, limits: &Limits) -> Result<FidHull> {
    let ring = m.ring().clone();
    require_complete_intersection(&ring)?;
    let minimal = minimalize(m);
    let cx0 = complexity_of(&minimal, limits)?;
    if cx0.finite_value() == Some(0) {
        // finite projective dimension: the module is its own hull
        let zero = GradedModule::zero_module(ring.clone());
        let y_pd = finite_pd_witness(&minimal, limits)?.unwrap_or(0);
        return Ok(FidHull {
            y: minimal.clone(),
            c: zero.clone(),
            inclusion: ModuleHom::identity(&minimal),
            projection: ModuleHom::zero(minimal, zero, 0),
            y_pd,
            iterations: 0,
        });
    }
    // seed: a power of a reducing class of M whose syzygy target is MCM
    let (mut y_mod, mut incl, mut proj, mut c_mod) = {
        let cx_now = cx0.finite_value().unwrap();
        let target_depth = depth(&minimal, limits)?.depth;
        let mut budget = 512;
        let mut tried = 0;
        let mut best = None;
        let cand = find_reducing_class(
            &minimal, cx_now, target_depth, limits.max_hdeg.min(4), &mut budget, &mut tried,
            &mut best, limits,
        )?
        .ok_or_else(|| Error::SearchExhausted("no reducing class for the module".into()))?;
        let eta = cand.class;
        let n = eta.hdeg();
        let cap = (limits.max_hdeg / n).max(1);
        let mut chosen = None;
        for t in 1..=cap {
            if t * n >= 1 && is_mcm(&omega(&minimal, t * n - 1, limits)?, limits)? {
                chosen = Some(t);
                break;
            }
        }
        let t = chosen.ok_or_else(|| {
            Error::Precondition("no syzygy of the module becomes MCM within the window".into())
        })?;
        let push = pushout(&power(&eta, t, limits)?, limits)?;
        if !push.ses_verified {
            return Err(Error::Internal("hull seed pushout SES failed".into()));
        }
        (push.k.clone(), push.inclusion, push.projection, push.omega_part)
    };
    let mut iterations = 0usize;
    loop {
        let cx = complexity_of(&y_mod, limits)?;
        if cx.finite_value() == Some(0) {
            break;
        }
        iterations += 1;
        let cx_now = cx.finite_value().ok_or_else(|| {
            Error::Precondition("complexity of the hull middle is unbounded".into())
        })?;
        let target_depth = depth(&y_mod, limits)?.depth;
        let mut budget = 512;
        let mut tried = 0;
        let mut best = None;
        let cand = find_reducing_class(
            &y_mod, cx_now, target_depth, limits.max_hdeg.min(4), &mut budget, &mut tried,
            &mut best, limits,
        )?
        .ok_or_else(|| Error::SearchExhausted("no reducing class for the hull middle".into()))?;
        let eta = cand.class;
        let n = eta.hdeg();
        let cap = (limits.max_hdeg / n).max(1);
        let mut chosen = None;
        for t in 1..=cap {
            if t * n >= 1 && is_mcm(&omega(&y_mod, t * n - 1, limits)?, limits)? {
                chosen = Some(t);
                break;
            }
        }
        let t = chosen.ok_or_else(|| {
            Error::Precondition("no syzygy of the hull middle becomes MCM".into())
        })?;
        let push = pushout(&power(&eta, t, limits)?, limits)?;
        if !push.ses_verified {
            return Err(Error::Internal("hull pushout SES failed".into()));
        }
        // C_{i+1} = pushout of (q: Y -> C) along (iota: Y -> K')
        let (c_new, into_from_k, _into_from_c) = pushout_of_homs(&push.inclusion, &proj, limits)?;
        incl = push.inclusion.compose(&incl)?;
        proj = into_from_k.map.clone();
        y_mod = push.k.clone();
        c_mod = c_new;
        if iterations > limits.max_hdeg {
            return Err(Error::Internal("hull loop did not terminate".into()));
        }
    }
    let y_pd = finite_pd_witness(&y_mod, limits)?
        .ok_or_else(|| Error::Internal("hull middle has cx 0 but no pd witness".into()))?;
    if !c_mod.is_zero_module() && !is_mcm(&c_mod, limits)? {
        return Err(Error::Internal("hull cokernel is not MCM".into()));
    }
    verify_ses(&incl, &proj, limits.max_degree)
        .map_err(|e| Error::Internal(format!("hull SES failed: {e}")))?;
    Ok(FidHull {
        y: y_mod,
        c: c_mod,
        inclusion: incl,
        projection: proj,
        y_pd,
        iterations,
    })
}

/// Replace `(X, Y)` by finite-projective-dimension modules with the same
/// positive-degree Tor, assuming the eventual vanishing of `Tor(X, Y)` is
/// witnessed in the top half of the window.
pub struct TorTransfer {
    pub x_prime: Arc<GradedModule>,
    pub y_prime: Arc<GradedModule>,
    pub tor_preserved_through: usize,
    pub x_pd: usize,
    pub y_pd: usize,
}

pub fn tor_transfer(
    x: &Arc<GradedModule>,
    y: &Arc<GradedModule>,
    limits: &Limits,
) -> Result<TorTransfer> {
    let ring = x.ring().clone();
    require_complete_intersection(&ring)?;
    let h = limits.max_hdeg;
    let x0 = minimalize(x);
    let y0 = minimalize(y);
    let base = tor_table(&x0, &y0, h, limits)?;
    for i in (h / 2 + 1)..=h {
        if !base.is_zero_at(i) {
            return Err(Error::Precondition(format!(
                "Tor_{i} does not vanish: eventual vanishing is not witnessed"
            )));
        }
    }
    let q_pos = (1..=h).rev().find(|&i| !base.is_zero_at(i)).unwrap_or(0);
    let x_prime = reduce_to_finite_pd(&x0, &y0, q_pos, limits)?;
    let y_prime = reduce_to_finite_pd(&y0, &x_prime, q_pos, limits)?;
    // verify the Tor dimensions are preserved through half the window
    let after = tor_table(&x_prime, &y_prime, h, limits)?;
    for i in 1..=h / 2 {
        let before_i: usize = base
            .dims
            .range((i, i64::MIN)..=(i, i64::MAX))
            .map(|(_, &v)| v)
            .sum();
        let after_i: usize = after
            .dims
            .range((i, i64::MIN)..=(i, i64::MAX))
            .map(|(_, &v)| v)
            .sum();
        if before_i != after_i {
            return Err(Error::Internal(format!(
                "Tor_{i} changed under transfer: {before_i} != {after_i}"
            )));
        }
    }
    let x_pd = finite_pd_witness(&x_prime, limits)?
        .ok_or_else(|| Error::Internal("transfer left X with unwitnessed pd".into()))?;
    let y_pd = finite_pd_witness(&y_prime, limits)?
        .ok_or_else(|| Error::Internal("transfer left Y with unwitnessed pd".into()))?;
    // depth preservation (automatic over Cohen-Macaulay rings)
    if depth(&x_prime, limits)?.depth != depth(&x0, limits)?.depth
        || depth(&y_prime, limits)?.depth != depth(&y0, limits)?.depth
    {
        return Err(Error::Internal("transfer changed a depth".into()));
    }
    Ok(TorTransfer {
        x_prime,
        y_prime,
        tor_preserved_through: h / 2,
        x_pd,
        y_pd,
    })
}

fn reduce_to_finite_pd(
    x: &Arc<GradedModule>,
    against: &Arc<GradedModule>,
    q_pos: usize,
    limits: &Limits,
) -> Result<Arc<GradedModule>> {
    let _ = against;
    let mut current = x.clone();
    loop {
        let cx = complexity_of(&current, limits)?;
        let Some(cx_now) = cx.finite_value() else {
            return Err(Error::Precondition("unbounded complexity in transfer".into()));
        };
        if cx_now == 0 {
            return Ok(current);
        }
        let target_depth = depth(&current, limits)?.depth;
        let mut budget = 512;
        let mut tried = 0;
        let mut best = None;
        let cand = find_reducing_class(
            &current, cx_now, target_depth, limits.max_hdeg.min(4), &mut budget, &mut tried,
            &mut best, limits,
        )?
        .ok_or_else(|| Error::SearchExhausted("no reducing class during transfer".into()))?;
        let n = cand.class.hdeg();
        // smallest power shifting all positive Tor past the vanishing point
        let t = (q_pos / n) + 1;
        let push = pushout(&power(&cand.class, t, limits)?, limits)?;
        if !push.ses_verified {
            return Err(Error::Internal("transfer pushout SES failed".into()));
        }
        current = push.k.clone();
    }
}

/// Verdict wrapper: scan a table for the certificate's vanishing window.
pub fn vanishing_window_verdict(
    cert: &Certificate,
    table: crate::homalg::TableKind<'_>,
    other: &Arc<GradedModule>,
    limits: &Limits,
) -> Result<crate::homalg::WindowVerdict> {
    match check_certificate(&cert.base, cert, limits)? {
        CertVerdict::Pass => {}
        CertVerdict::Fail { condition } => {
            return Err(Error::Precondition(format!("certificate invalid: {condition}")));
        }
    }
    let ring = cert.base.ring().clone();
    let a = GradedModule::free(ring, vec![0]);
    let depth_a = depth(&a, limits)?.depth.finite().unwrap_or(0);
    let depth_m = depth(&cert.base, limits)?
        .depth
        .finite()
        .ok_or_else(|| Error::Precondition("certified module is zero".into()))?;
    let depth_n = depth(other, limits)?.depth.finite().unwrap_or(0);
    let span = cert.window_span();
    let t_min = depth_a.saturating_sub(depth_m);
    Ok(crate::homalg::window_verdict_from_gap(
        table, span, t_min, depth_a, depth_m, depth_n,
    ))
}

/// Check eventual vanishing of Tor for two modules, for use as a
/// `tor_transfer` precondition probe.
pub fn tor_eventually_vanishes(t: &TorTable, h: usize) -> bool {
    ((h / 2 + 1)..=h).all(|i| t.is_zero_at(i))
}

/// Convenience: q as a plain number when finite.
pub fn q_value(
    m: &Arc<GradedModule>,
    n: &Arc<GradedModule>,
    h: usize,
    limits: &Limits,
) -> Result<SupIndex> {
    q_index(m, n, h, limits)
}
