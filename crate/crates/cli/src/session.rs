//! Session execution: bind declarations, dispatch commands against the
//! computation kernel, and collect one provenance-stamped record per
//! command. With a cache directory configured, every resolution computed
//! anywhere in a command (including inside certificate searches) is
//! stored and restored content-addressed.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::rc::Rc;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use redcx_core::gradedmod::{minimalize, GradedModule, ModuleMap};
use redcx_core::homalg::{ext_table, p_index, q_index, tor_table, Depth, SupIndex};
use redcx_core::reducible::{check_certificate, search_certificate, SearchOutcome};
use redcx_core::resolve::{
    complexity_of, detect_period, resolution, with_resolution_store, Resolution, ResolutionStore,
};
use redcx_core::ringkernel::QuotientRing;
use redcx_core::yoneda::{ext_class_basis, pushout};
use redcx_core::Limits;

use crate::ast::{print_command, Command, Item, Session};
use crate::cache;
use crate::serialize;

#[derive(Debug, Clone)]
pub struct Config {
    pub max_degree: i64,
    pub max_hdeg: usize,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_degree: 16,
            max_hdeg: 12,
            seed: 0,
            cache_dir: None,
        }
    }
}

impl Config {
    pub fn limits(&self) -> Limits {
        Limits {
            max_degree: self.max_degree,
            max_hdeg: self.max_hdeg,
            seed: self.seed,
        }
    }
}

pub struct SessionOutput {
    pub records: Vec<Value>,
    pub config: Config,
}

impl SessionOutput {
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": 1,
            "config": {
                "max_degree": self.config.max_degree,
                "max_hdeg": self.config.max_hdeg,
                "seed": self.config.seed,
            },
            "records": self.records,
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }
}

/// Disk-backed store wired into the resolution engine, with hit counters
/// so records can carry a cache flag.
struct DiskStore {
    dir: PathBuf,
    limits: Limits,
    hits: Cell<usize>,
    misses: Cell<usize>,
}

impl ResolutionStore for DiskStore {
    fn load(&self, module: &Arc<GradedModule>, steps: usize, limits: &Limits) -> Option<Vec<ModuleMap>> {
        let ring = module.ring().clone();
        let key = cache::cache_key(&ring, module, steps, self.limits.max_degree);
        match cache::cache_get(&self.dir, &key, &ring, module, limits) {
            Some(res) => {
                self.hits.set(self.hits.get() + 1);
                Some(res.diffs().iter().map(|d| d.as_ref().clone()).collect())
            }
            None => {
                self.misses.set(self.misses.get() + 1);
                None
            }
        }
    }

    fn save(&self, module: &Arc<GradedModule>, diffs: &[Arc<ModuleMap>], limits: &Limits) {
        let ring = module.ring().clone();
        let key = cache::cache_key(&ring, module, diffs.len(), self.limits.max_degree);
        let res = match redcx_core::resolve::preload_resolution(
            module,
            diffs.iter().map(|d| d.as_ref().clone()).collect(),
            limits,
        ) {
            Ok(r) => r,
            Err(_) => return,
        };
        if let Err(e) = cache::cache_put(&self.dir, &key, &res) {
            eprintln!("warning: cache write failed: {e}");
        }
    }
}

struct Env {
    rings: BTreeMap<String, Arc<QuotientRing>>,
    modules: BTreeMap<String, Arc<GradedModule>>,
    current_ring: Option<String>,
}

impl Env {
    fn lookup_module(&self, id: &str) -> Result<Arc<GradedModule>> {
        if let Some(m) = self.modules.get(id) {
            return Ok(m.clone());
        }
        if let Some(r) = self.rings.get(id) {
            // the ring itself, as the rank-one free module
            return Ok(GradedModule::free(r.clone(), vec![0]));
        }
        bail!("undeclared identifier `{id}`")
    }
}

pub fn run_session(session: &Session, config: &Config) -> Result<SessionOutput> {
    match &config.cache_dir {
        Some(dir) => {
            let store = Rc::new(DiskStore {
                dir: dir.clone(),
                limits: config.limits(),
                hits: Cell::new(0),
                misses: Cell::new(0),
            });
            let store_for_flags = store.clone();
            with_resolution_store(store, || run_inner(session, config, Some(store_for_flags)))
        }
        None => run_inner(session, config, None),
    }
}

fn run_inner(
    session: &Session,
    config: &Config,
    store: Option<Rc<DiskStore>>,
) -> Result<SessionOutput> {
    let limits = config.limits();
    let mut env = Env {
        rings: BTreeMap::new(),
        modules: BTreeMap::new(),
        current_ring: None,
    };
    let mut records = Vec::new();
    for item in &session.items {
        match item {
            Item::Ring(decl) => {
                let mut gens = Vec::new();
                // evaluate against a provisional zero-ideal ring for names
                let probe = QuotientRing::new(decl.char_p, decl.vars.clone(), vec![])
                    .map_err(|e| anyhow!("ring {}: {e}", decl.name))?;
                for g in &decl.ideal {
                    gens.push(serialize::eval_poly(g, &probe)?);
                }
                let ring = Arc::new(
                    QuotientRing::new(decl.char_p, decl.vars.clone(), gens)
                        .map_err(|e| anyhow!("ring {}: {e}", decl.name))?,
                );
                env.current_ring = Some(decl.name.clone());
                env.rings.insert(decl.name.clone(), ring);
            }
            Item::Module(decl) => {
                let ring_name = env
                    .current_ring
                    .clone()
                    .ok_or_else(|| anyhow!("module {} declared before any ring", decl.name))?;
                let ring = env.rings[&ring_name].clone();
                let pres = serialize::presentation_from_matrix(&ring, &decl.matrix)
                    .with_context(|| format!("module {}", decl.name))?;
                env.modules
                    .insert(decl.name.clone(), GradedModule::from_presentation(pres));
            }
            Item::Command(cmd) => {
                let before_hits = store.as_ref().map(|s| s.hits.get());
                let (payload, truncated) = execute(cmd, &env, &limits)
                    .with_context(|| format!("command `{}`", print_command(cmd)))?;
                let cache_hit = match (&store, before_hits) {
                    (Some(s), Some(h0)) => Some(s.hits.get() > h0),
                    _ => None,
                };
                records.push(json!({
                    "command": print_command(cmd),
                    "payload": payload,
                    "provenance": {
                        "max_degree": config.max_degree,
                        "max_hdeg": config.max_hdeg,
                        "seed": config.seed,
                        "truncated": truncated,
                        "cache_hit": cache_hit,
                    },
                }));
            }
        }
    }
    Ok(SessionOutput {
        records,
        config: config.clone(),
    })
}

fn betti_payload(res: &Resolution, h: usize) -> Value {
    let table = res.betti_table(h.min(res.len()));
    let graded: Vec<Value> = table
        .graded
        .iter()
        .map(|(&(i, d), &count)| json!([i, d, count]))
        .collect();
    json!({
        "betti": table.betti,
        "graded_betti": graded,
        "exact_window": res.exact_window(),
    })
}

fn execute(cmd: &Command, env: &Env, limits: &Limits) -> Result<(Value, bool)> {
    match cmd {
        Command::Resolve { id, steps } => {
            let m = env.lookup_module(id)?;
            let res = resolution(&m, *steps, limits)?;
            Ok((betti_payload(&res, *steps), !res.exact_window()))
        }
        Command::Betti { id } => {
            let m = env.lookup_module(id)?;
            let res = resolution(&m, limits.max_hdeg, limits)?;
            Ok((betti_payload(&res, limits.max_hdeg), !res.exact_window()))
        }
        Command::Ext { a, b } => {
            let ma = env.lookup_module(a)?;
            let mb = env.lookup_module(b)?;
            let t = ext_table(&ma, &mb, limits.max_hdeg, limits)?;
            let p = p_index(&ma, &mb, limits.max_hdeg, limits)?;
            let entries: Vec<Value> = t
                .dims
                .iter()
                .map(|(&(i, d), &dim)| json!([i, d, dim]))
                .collect();
            Ok((
                json!({
                    "kind": "ext",
                    "entries": entries,
                    "p_index": sup_index_json(&p),
                    "h": t.h,
                }),
                t.truncated,
            ))
        }
        Command::Tor { a, b } => {
            let ma = env.lookup_module(a)?;
            let mb = env.lookup_module(b)?;
            let t = tor_table(&ma, &mb, limits.max_hdeg, limits)?;
            let q = q_index(&ma, &mb, limits.max_hdeg, limits)?;
            let entries: Vec<Value> = t
                .dims
                .iter()
                .map(|(&(i, d), &dim)| json!([i, d, dim]))
                .collect();
            Ok((
                json!({
                    "kind": "tor",
                    "entries": entries,
                    "q_index": sup_index_json(&q),
                    "h": t.h,
                }),
                t.truncated,
            ))
        }
        Command::Pushout { id, deg, class } => {
            let m = env.lookup_module(id)?;
            let basis = ext_class_basis(&m, &m, *deg, limits)?;
            if basis.is_empty() {
                bail!("Ext^{deg}(M, M) is zero: nothing to push out");
            }
            let j = class.unwrap_or(0);
            let eta = basis
                .get(j)
                .ok_or_else(|| anyhow!("class index {j} out of range (basis has {})", basis.len()))?;
            let p = pushout(eta, limits)?;
            let cx_before = complexity_of(&m, limits)?;
            let cx_after = complexity_of(&p.k, limits)?;
            Ok((
                json!({
                    "class": {
                        "hdeg": eta.hdeg(),
                        "internal_degree": eta.internal_degree(),
                        "index": j,
                        "basis_size": basis.len(),
                    },
                    "k_hilbert": p.k.hilbert(limits.max_degree).window(limits.max_degree),
                    "k_gens": p.k.gens().shifts(),
                    "k_is_free": p.k.is_free(),
                    "ses_verified": p.ses_verified,
                    "cx_before": serde_json::to_value(&cx_before)?,
                    "cx_after": serde_json::to_value(&cx_after)?,
                }),
                false,
            ))
        }
        Command::Certify { id } => {
            let m = env.lookup_module(id)?;
            let max_hdeg = limits.max_hdeg.min(4).max(1);
            match search_certificate(&m, max_hdeg, 512, limits)? {
                SearchOutcome::Found(cert) => {
                    let verdict = check_certificate(&m, &cert, limits)?;
                    Ok((
                        json!({
                            "found": true,
                            "certificate": serialize::certificate_to_json(&cert),
                            "recheck": verdict.passed(),
                        }),
                        false,
                    ))
                }
                SearchOutcome::Exhausted {
                    classes_tried,
                    best_cx,
                    chain_reached,
                } => Ok((
                    json!({
                        "found": false,
                        "classes_tried": classes_tried,
                        "best_cx": best_cx,
                        "chain_reached": chain_reached,
                    }),
                    false,
                )),
            }
        }
        Command::Mcm { id } => {
            let m = env.lookup_module(id)?;
            let approx = redcx_core::reducible::mcm_approximation(&m, limits)?;
            let c_depth = redcx_core::homalg::depth(&approx.c, limits)?;
            Ok((
                json!({
                    "y_hilbert": approx.y.hilbert(limits.max_degree).window(limits.max_degree),
                    "c_hilbert": approx.c.hilbert(limits.max_degree).window(limits.max_degree),
                    "c_depth": depth_json(&c_depth.depth),
                    "c_is_mcm": c_depth.is_mcm,
                    "y_pd": approx.y_pd,
                    "iterations": approx.iterations,
                }),
                false,
            ))
        }
        Command::Depth { id } => {
            let m = env.lookup_module(id)?;
            let report = redcx_core::homalg::depth(&m, limits)?;
            Ok((
                json!({
                    "depth": depth_json(&report.depth),
                    "first_nonvanishing": report.first_nonvanishing,
                    "ring_dim": report.ring_dim,
                    "is_mcm": report.is_mcm,
                }),
                false,
            ))
        }
        Command::Period { id } => {
            let m = env.lookup_module(id)?;
            let max_p = limits.max_hdeg.saturating_sub(1).clamp(1, 8);
            let report = detect_period(&m, max_p, limits)?;
            Ok((
                match report {
                    Some(r) => json!({"period": r.period, "shift": r.shift}),
                    None => json!({"period": Value::Null, "max_tested": max_p}),
                },
                false,
            ))
        }
    }
}

fn sup_index_json(s: &SupIndex) -> Value {
    match s {
        SupIndex::MinusInfinity => json!({"kind": "all_zero"}),
        SupIndex::Finite(n) => json!({"kind": "finite", "value": n}),
        SupIndex::AtLeast(h) => json!({"kind": "at_least", "value": h}),
    }
}

fn depth_json(d: &Depth) -> Value {
    match d {
        Depth::Finite(n) => json!(n),
        Depth::Infinite => json!("infinite"),
    }
}

/// Re-verify a stored certificate against a session's module.
pub fn reverify_certificate(
    cert_json: &Value,
    ring: &Arc<QuotientRing>,
    module: &Arc<GradedModule>,
    limits: &Limits,
) -> Result<bool> {
    let cert = serialize::certificate_from_json(cert_json, ring, limits)?;
    Ok(check_certificate(&minimalize(module), &cert, limits)?.passed())
}
