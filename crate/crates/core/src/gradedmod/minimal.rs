//! Nakayama minimalization of presentations: eliminate unit entries by
//! pivoting, drop redundant relation columns, and keep explicit maps
//! between the module and its minimal form.

use std::sync::Arc;

use crate::error::Result;
use crate::linalg::Echelon;
use crate::ringkernel::Polynomial;

use super::{GradedFreeModule, GradedModule, ModuleHom, ModuleMap};

/// A minimal presentation together with the comparison isomorphisms.
pub struct Minimalization {
    pub module: Arc<GradedModule>,
    /// original -> minimal
    pub to_min: ModuleHom,
    /// minimal -> original (inclusion of the surviving generators)
    pub from_min: ModuleHom,
}

pub fn minimalize(m: &Arc<GradedModule>) -> Arc<GradedModule> {
    if m.is_known_minimal() {
        return m.clone();
    }
    if let Some(cached) = m.minimal_form.lock().unwrap().clone() {
        return cached;
    }
    let result = minimalize_with_maps(m).expect("minimalization cannot fail on a valid module");
    if result.module.same_presentation(m) {
        m.known_minimal();
        return m.clone();
    }
    result.module.known_minimal();
    let out = result.module;
    *m.minimal_form.lock().unwrap() = Some(out.clone());
    out
}

pub fn minimalize_with_maps(m: &Arc<GradedModule>) -> Result<Minimalization> {
    let ring = m.ring().clone();
    let field = *ring.field();
    let n = ring.num_vars();
    let pres = m.presentation();

    // mutable working state
    let mut gen_shifts: Vec<i64> = m.gens().shifts().to_vec();
    let mut cols: Vec<(i64, Vec<Polynomial>)> = (0..m.relations().rank())
        .map(|l| (m.relations().shifts()[l], pres.column(l)))
        .collect();
    // to[current_gen][original_gen]: expression of original generators in
    // terms of the surviving ones
    let orig_rank = gen_shifts.len();
    let mut to: Vec<Vec<Polynomial>> = (0..orig_rank)
        .map(|i| {
            (0..orig_rank)
                .map(|j| {
                    if i == j {
                        Polynomial::constant(1, n)
                    } else {
                        Polynomial::zero(n)
                    }
                })
                .collect()
        })
        .collect();
    // surviving generator indices into the original list
    let mut survivors: Vec<usize> = (0..orig_rank).collect();

    // eliminate unit entries
    loop {
        let mut pivot = None;
        'scan: for (ci, (_, col)) in cols.iter().enumerate() {
            for (ri, e) in col.iter().enumerate() {
                if !e.is_zero() && e.homogeneous_degree() == Some(0) {
                    pivot = Some((ri, ci));
                    break 'scan;
                }
            }
        }
        let Some((ri, ci)) = pivot else { break };
        let c = cols[ci].1[ri].constant_term();
        let cinv = field.inv(c);
        // normalize the pivot column so the pivot entry is 1
        for e in cols[ci].1.iter_mut() {
            *e = e.scale(&field, cinv);
        }
        // substitution: g_ri = -sum_{r != ri} col[r] g_r
        let subst: Vec<Polynomial> = cols[ci].1.iter().map(|e| e.neg(&field)).collect();
        // rewrite the remaining columns
        for (cj, (_, col)) in cols.iter_mut().enumerate() {
            if cj == ci {
                continue;
            }
            let coeff = col[ri].clone();
            if coeff.is_zero() {
                continue;
            }
            for (r, e) in col.iter_mut().enumerate() {
                if r == ri {
                    continue;
                }
                *e = ring.normal_form(&e.add(&field, &coeff.mul(&field, &subst[r])));
            }
            col[ri] = Polynomial::zero(n);
        }
        // update the expressions of the original generators
        for oc in 0..orig_rank {
            let coeff = to[ri][oc].clone();
            if coeff.is_zero() {
                continue;
            }
            for r in 0..to.len() {
                if r == ri {
                    continue;
                }
                let add = coeff.mul(&field, &subst[r]);
                to[r][oc] = ring.normal_form(&to[r][oc].add(&field, &add));
            }
        }
        // drop generator ri and column ci
        gen_shifts.remove(ri);
        survivors.remove(ri);
        to.remove(ri);
        for (_, col) in cols.iter_mut() {
            col.remove(ri);
        }
        cols.remove(ci);
    }

    // drop zero columns, then keep only a minimal generating set of the
    // relation submodule, scanning degrees in ascending order
    cols.retain(|(_, col)| col.iter().any(|e| !e.is_zero()));
    let mut order: Vec<usize> = (0..cols.len()).collect();
    order.sort_by_key(|&i| (cols[i].0, i));
    let mut kept: Vec<(i64, Vec<Polynomial>)> = Vec::new();
    for &i in &order {
        let (deg, col) = &cols[i];
        // span of the submodule generated by kept columns, in degree `deg`
        let basis = GradedFreeModule::new(gen_shifts.clone()).degree_basis(&ring, *deg);
        let mut span = Echelon::new(field, basis.dim());
        for (kdeg, kcol) in &kept {
            if kdeg > deg {
                continue;
            }
            for mono in ring.monomial_basis(deg - kdeg).iter() {
                let mult: Vec<Polynomial> = kcol
                    .iter()
                    .map(|e| ring.normal_form(&e.mul_term(&field, mono, 1)))
                    .collect();
                span.insert(basis.coords_of(&ring, &mult));
            }
        }
        if !span.contains(&basis.coords_of(&ring, col)) {
            kept.push((*deg, col.clone()));
        }
    }
    kept.sort_by(|a, b| a.0.cmp(&b.0));

    // assemble the minimal module
    let new_gens = GradedFreeModule::new(gen_shifts.clone());
    let rel_shifts: Vec<i64> = kept.iter().map(|(d, _)| *d).collect();
    let rel_free = GradedFreeModule::new(rel_shifts);
    let mut entries = vec![vec![Polynomial::zero(n); kept.len()]; new_gens.rank()];
    for (l, (_, col)) in kept.iter().enumerate() {
        for (r, e) in col.iter().enumerate() {
            entries[r][l] = e.clone();
        }
    }
    let minimal =
        GradedModule::from_presentation(ModuleMap::new(ring.clone(), rel_free, new_gens, entries)?);

    // comparison maps
    let to_matrix: Vec<Vec<Polynomial>> = to
        .iter()
        .map(|row| row.clone())
        .collect();
    let to_min = ModuleHom::new(m.clone(), minimal.clone(), 0, to_matrix)?;
    let mut from_matrix = vec![vec![Polynomial::zero(n); survivors.len()]; orig_rank];
    for (new_idx, &old_idx) in survivors.iter().enumerate() {
        from_matrix[old_idx][new_idx] = Polynomial::constant(1, n);
    }
    let from_min = ModuleHom::new(minimal.clone(), m.clone(), 0, from_matrix)?;

    debug_assert!(to_min
        .compose(&from_min)?
        .equals_mod_relations(&ModuleHom::identity(&minimal)));
    debug_assert!(from_min
        .compose(&to_min)?
        .equals_mod_relations(&ModuleHom::identity(m)));

    Ok(Minimalization {
        module: minimal,
        to_min,
        from_min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringkernel::{Monomial, Polynomial, QuotientRing};

    fn ring_x3() -> Arc<QuotientRing> {
        // GF(5)[x]/(x^3)
        Arc::new(
            QuotientRing::new(
                5,
                vec!["x".into()],
                vec![Polynomial::from_terms(1, [(Monomial::new(vec![3]), 1)])],
            )
            .unwrap(),
        )
    }

    #[test]
    fn coker_of_unit_is_zero() {
        let r = ring_x3();
        let free = GradedFreeModule::new(vec![0]);
        let src = GradedFreeModule::new(vec![0]);
        let map = ModuleMap::new(
            r.clone(),
            src,
            free,
            vec![vec![Polynomial::constant(1, 1)]],
        )
        .unwrap();
        let m = GradedModule::from_presentation(map);
        let min = minimalize(&m);
        assert_eq!(min.gens().rank(), 0);
        assert!(min.is_zero_module());
    }

    #[test]
    fn redundant_relation_column_is_dropped() {
        // coker([x^2, x]) over GF(5)[x]/(x^3): the x^2 column is x * (x column)
        let r = ring_x3();
        let x = Polynomial::variable(0, 1);
        let x2 = x.mul(r.field(), &x);
        let src = GradedFreeModule::new(vec![2, 1]);
        let tgt = GradedFreeModule::new(vec![0]);
        let map = ModuleMap::new(r.clone(), src, tgt, vec![vec![x2, x.clone()]]).unwrap();
        let m = GradedModule::from_presentation(map);
        let res = minimalize_with_maps(&m).unwrap();
        assert_eq!(res.module.relations().rank(), 1);
        assert_eq!(res.module.presentation().entry(0, 0), &x);
        // Hilbert function is preserved
        assert!(res.module.hilbert(6).eq_up_to(&m.hilbert(6), 6));
    }

    #[test]
    fn unit_pivot_elimination_keeps_hilbert_function() {
        // gens u (deg 0), v (deg 1); relations: v - x*u (unit on v), x^2*v
        let r = ring_x3();
        let x = Polynomial::variable(0, 1);
        let x2 = x.mul(r.field(), &x);
        let src = GradedFreeModule::new(vec![1, 3]);
        let tgt = GradedFreeModule::new(vec![0, 1]);
        let minus_x = x.neg(r.field());
        let one = Polynomial::constant(1, 1);
        let zero = Polynomial::zero(1);
        let map = ModuleMap::new(
            r.clone(),
            src,
            tgt,
            vec![vec![minus_x, zero], vec![one, x2]],
        )
        .unwrap();
        let m = GradedModule::from_presentation(map);
        let res = minimalize_with_maps(&m).unwrap();
        // v = x*u, so the module is cyclic: A/(x^3) = A
        assert_eq!(res.module.gens().rank(), 1);
        assert!(res.module.hilbert(6).eq_up_to(&m.hilbert(6), 6));
        assert!(res.module.presentation().is_minimal());
        // witnesses invert each other
        let round = res.to_min.compose(&res.from_min).unwrap();
        assert!(round.equals_mod_relations(&ModuleHom::identity(&res.module)));
        let round2 = res.from_min.compose(&res.to_min).unwrap();
        assert!(round2.equals_mod_relations(&ModuleHom::identity(&m)));
    }

    #[test]
    fn minimalize_is_idempotent() {
        let r = ring_x3();
        let x = Polynomial::variable(0, 1);
        let src = GradedFreeModule::new(vec![1]);
        let tgt = GradedFreeModule::new(vec![0]);
        let map = ModuleMap::new(r.clone(), src, tgt, vec![vec![x]]).unwrap();
        let m = GradedModule::from_presentation(map);
        let once = minimalize(&m);
        let twice = minimalize(&once);
        assert!(once.same_presentation(&twice));
    }
}
