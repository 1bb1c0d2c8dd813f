//! JSON schemas for presentations, resolutions and certificates, plus the
//! evaluation of parsed polynomial expressions into ring elements.
//! Certificates round-trip: a stored certificate can be reloaded against
//! the same ring and re-verified from scratch.

use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use redcx_core::gradedmod::{GradedFreeModule, GradedModule, ModuleHom, ModuleMap};
use redcx_core::reducible::{CertLink, Certificate};
use redcx_core::ringkernel::{Polynomial, QuotientRing};
use redcx_core::yoneda::ExtClass;
use redcx_core::Limits;

use crate::ast::PolyExpr;

/// Evaluate a parsed polynomial expression in the given ring.
pub fn eval_poly(expr: &PolyExpr, ring: &QuotientRing) -> Result<Polynomial> {
    let n = ring.num_vars();
    let field = ring.field();
    let mut acc = Polynomial::zero(n);
    for term in &expr.terms {
        let mut poly = Polynomial::constant(1, n);
        for (name, exp) in &term.factors {
            let idx = ring
                .var_names()
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| {
                    anyhow!(
                        "undeclared variable `{}` at {}:{}",
                        name,
                        expr.pos.0,
                        expr.pos.1
                    )
                })?;
            for _ in 0..*exp {
                poly = poly.mul(field, &Polynomial::variable(idx, n));
            }
        }
        let mut c = field.from_i64(term.coeff.unwrap_or(1) as i64);
        if term.negative {
            c = field.neg(c);
        }
        acc = acc.add(field, &poly.scale(field, c));
    }
    Ok(acc)
}

/// Parse a single polynomial from its canonical string form.
pub fn poly_from_str(s: &str, ring: &QuotientRing) -> Result<Polynomial> {
    let expr = crate::parser::parse_poly_str(s).map_err(|e| anyhow!("{e}"))?;
    eval_poly(&expr, ring)
}

pub fn poly_to_string(p: &Polynomial, ring: &QuotientRing) -> String {
    ring.display_poly(p)
}

pub fn map_to_json(map: &ModuleMap, ring: &QuotientRing) -> Value {
    let entries: Vec<Vec<String>> = map
        .entries()
        .iter()
        .map(|row| row.iter().map(|e| poly_to_string(e, ring)).collect())
        .collect();
    json!({
        "source_shifts": map.source().shifts(),
        "target_shifts": map.target().shifts(),
        "entries": entries,
    })
}

pub fn map_from_json(v: &Value, ring: &Arc<QuotientRing>) -> Result<ModuleMap> {
    let source: Vec<i64> = from_json_array(&v["source_shifts"])?;
    let target: Vec<i64> = from_json_array(&v["target_shifts"])?;
    let rows = v["entries"]
        .as_array()
        .context("entries must be an array")?;
    let mut entries = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().context("entry row must be an array")?;
        let mut out = Vec::with_capacity(row.len());
        for cell in row {
            let s = cell.as_str().context("entry must be a string")?;
            out.push(poly_from_str(s, ring)?);
        }
        entries.push(out);
    }
    Ok(ModuleMap::new(
        ring.clone(),
        GradedFreeModule::new(source),
        GradedFreeModule::new(target),
        entries,
    )?)
}

fn from_json_array(v: &Value) -> Result<Vec<i64>> {
    v.as_array()
        .context("expected an array")?
        .iter()
        .map(|x| x.as_i64().context("expected an integer"))
        .collect()
}

pub fn module_to_json(m: &GradedModule) -> Value {
    map_to_json(m.presentation(), m.ring())
}

pub fn module_from_json(v: &Value, ring: &Arc<QuotientRing>) -> Result<Arc<GradedModule>> {
    Ok(GradedModule::from_presentation(map_from_json(v, ring)?))
}

fn hom_to_json(h: &ModuleHom, ring: &QuotientRing) -> Value {
    let matrix: Vec<Vec<String>> = h
        .matrix()
        .iter()
        .map(|row| row.iter().map(|e| poly_to_string(e, ring)).collect())
        .collect();
    json!({
        "degree": h.degree(),
        "matrix": matrix,
    })
}

fn hom_from_json(
    v: &Value,
    source: &Arc<GradedModule>,
    target: &Arc<GradedModule>,
    ring: &Arc<QuotientRing>,
) -> Result<ModuleHom> {
    let degree = v["degree"].as_i64().context("hom needs a degree")?;
    let rows = v["matrix"].as_array().context("hom needs a matrix")?;
    let mut matrix = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().context("matrix row must be an array")?;
        let mut out = Vec::with_capacity(row.len());
        for cell in row {
            out.push(poly_from_str(
                cell.as_str().context("matrix entry must be a string")?,
                ring,
            )?);
        }
        matrix.push(out);
    }
    Ok(ModuleHom::new(source.clone(), target.clone(), degree, matrix)?)
}

pub fn certificate_to_json(cert: &Certificate) -> Value {
    let ring = cert.base.ring();
    let links: Vec<Value> = cert
        .links
        .iter()
        .map(|l| {
            let cocycle: Vec<Vec<String>> = l
                .class
                .cocycle()
                .entries()
                .iter()
                .map(|row| row.iter().map(|e| poly_to_string(e, ring)).collect())
                .collect();
            json!({
                "class": {
                    "hdeg": l.class.hdeg(),
                    "internal_degree": l.class.internal_degree(),
                    "cocycle": cocycle,
                },
                "module": module_to_json(&l.module),
                "inclusion": hom_to_json(&l.inclusion, ring),
                "projection": hom_to_json(&l.projection, ring),
                "projection_target": module_to_json(l.projection.target()),
                "ses_verified": l.ses_verified,
            })
        })
        .collect();
    json!({
        "base": module_to_json(&cert.base),
        "links": links,
        "terminal_pd": cert.terminal_pd,
        "cx_trail": serde_json::to_value(&cert.cx_trail).unwrap(),
        "depth_trail": serde_json::to_value(&cert.depth_trail).unwrap(),
        "window_span": cert.window_span(),
        "chain_length": cert.chain_len(),
    })
}

pub fn certificate_from_json(
    v: &Value,
    ring: &Arc<QuotientRing>,
    limits: &Limits,
) -> Result<Certificate> {
    let base = module_from_json(&v["base"], ring)?;
    let mut links = Vec::new();
    let mut prev = redcx_core::gradedmod::minimalize(&base);
    for lv in v["links"].as_array().context("links must be an array")? {
        let class_v = &lv["class"];
        let hdeg = class_v["hdeg"].as_u64().context("class hdeg")? as usize;
        let internal = class_v["internal_degree"]
            .as_i64()
            .context("class internal degree")?;
        let rows = class_v["cocycle"].as_array().context("class cocycle")?;
        let mut matrix = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().context("cocycle row")?;
            let mut out = Vec::with_capacity(row.len());
            for cell in row {
                out.push(poly_from_str(cell.as_str().context("cocycle entry")?, ring)?);
            }
            matrix.push(out);
        }
        let class = ExtClass::new(&prev, &prev, hdeg, internal, matrix, limits)?;
        let module = module_from_json(&lv["module"], ring)?;
        let inclusion = hom_from_json(&lv["inclusion"], &prev, &module, ring)?;
        let proj_target = module_from_json(&lv["projection_target"], ring)?;
        let projection = hom_from_json(&lv["projection"], &module, &proj_target, ring)?;
        let ses_verified = lv["ses_verified"].as_bool().unwrap_or(false);
        prev = module.clone();
        links.push(CertLink {
            class,
            module,
            inclusion,
            projection,
            ses_verified,
        });
    }
    let terminal_pd = v["terminal_pd"].as_u64().context("terminal_pd")? as usize;
    let cx_trail = serde_json::from_value(v["cx_trail"].clone()).context("cx_trail")?;
    let depth_trail = serde_json::from_value(v["depth_trail"].clone()).context("depth_trail")?;
    Ok(Certificate {
        base,
        links,
        terminal_pd,
        cx_trail,
        depth_trail,
    })
}

/// Serialized differentials of a resolution, for the on-disk cache.
pub fn resolution_diffs_to_json(diffs: &[Arc<ModuleMap>], ring: &QuotientRing) -> Value {
    Value::Array(diffs.iter().map(|d| map_to_json(d, ring)).collect())
}

pub fn resolution_diffs_from_json(v: &Value, ring: &Arc<QuotientRing>) -> Result<Vec<ModuleMap>> {
    let arr = v.as_array().context("diffs must be an array")?;
    arr.iter().map(|d| map_from_json(d, ring)).collect()
}

/// Shared consistency check used by the module declaration: infer the
/// column degrees of a cokernel matrix whose generators sit in degree 0.
pub fn presentation_from_matrix(
    ring: &Arc<QuotientRing>,
    matrix: &[Vec<PolyExpr>],
) -> Result<ModuleMap> {
    let rows = matrix.len();
    if rows == 0 {
        bail!("empty presentation matrix");
    }
    let cols = matrix[0].len();
    if matrix.iter().any(|r| r.len() != cols) {
        bail!("ragged presentation matrix");
    }
    let mut entries = vec![vec![Polynomial::zero(ring.num_vars()); cols]; rows];
    let mut col_degrees = vec![None; cols];
    for (i, row) in matrix.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let p = ring.normal_form(&eval_poly(cell, ring)?);
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree().ok_or_else(|| {
                anyhow!(
                    "non-homogeneous entry at row {}, column {} ({}:{})",
                    i + 1,
                    j + 1,
                    cell.pos.0,
                    cell.pos.1
                )
            })? as i64;
            match col_degrees[j] {
                None => col_degrees[j] = Some(d),
                Some(existing) if existing == d => {}
                Some(existing) => bail!(
                    "column {} mixes degrees {} and {} ({}:{})",
                    j + 1,
                    existing,
                    d,
                    cell.pos.0,
                    cell.pos.1
                ),
            }
            entries[i][j] = p;
        }
    }
    let source: Vec<i64> = col_degrees
        .into_iter()
        .map(|d| d.unwrap_or(1)) // a zero column can carry any degree
        .collect();
    Ok(ModuleMap::new(
        ring.clone(),
        GradedFreeModule::new(source),
        GradedFreeModule::new(vec![0; rows]),
        entries,
    )?)
}
