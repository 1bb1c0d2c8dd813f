//! MCM approximations, hulls of finite injective dimension, and the
//! Tor-transfer construction over the complete-intersection fixtures.

use redcx_core::fixtures::*;
use redcx_core::gradedmod::GradedModule;
use redcx_core::homalg::{depth, q_index, Depth, SupIndex};
use redcx_core::reducible::*;
use redcx_core::ringkernel::Polynomial;
use redcx_core::Limits;

fn limits() -> Limits {
    Limits {
        max_hdeg: 10,
        ..Limits::default()
    }
}

#[test]
fn mcm_approximation_of_residue_field_over_hypersurface() {
    let r = hypersurface_xy();
    let k = GradedModule::residue_field(r);
    let lim = limits();
    let approx = mcm_approximation(&k, &lim).unwrap();
    // C is maximal Cohen-Macaulay of depth 1 = dim A
    let dc = depth(&approx.c, &lim).unwrap();
    assert_eq!(dc.depth, Depth::Finite(1));
    assert!(dc.is_mcm);
    // Y has witnessed finite projective dimension
    assert!(approx.y_pd <= 1);
    assert!(approx.iterations >= 1);
}

#[test]
fn mcm_approximation_short_circuits_on_mcm_input() {
    let r = hypersurface_xy();
    let m = quotient_module(&r, Polynomial::variable(0, 2)).unwrap();
    let lim = limits();
    let approx = mcm_approximation(&m, &lim).unwrap();
    assert!(approx.y.is_zero_module());
    assert!(approx.c.same_presentation(&redcx_core::gradedmod::minimalize(&m)));
    assert_eq!(approx.iterations, 0);
}

#[test]
fn mcm_approximation_of_free_module_is_itself() {
    let r = hypersurface_xy();
    let f = GradedModule::free(r, vec![0]);
    let lim = limits();
    let approx = mcm_approximation(&f, &lim).unwrap();
    assert!(approx.y.is_zero_module());
    assert_eq!(approx.iterations, 0);
}

#[test]
fn mcm_approximation_rejects_non_ci_rings() {
    let r = gasharov_ring(7, 2).unwrap();
    let m = gasharov_module(&r, 2).unwrap();
    assert!(mcm_approximation(&m, &limits()).is_err());
}

#[test]
fn fid_hull_of_residue_field_over_hypersurface() {
    let r = hypersurface_xy();
    let k = GradedModule::residue_field(r);
    let lim = limits();
    let hull = fid_hull(&k, &lim).unwrap();
    // the middle has finite pd; the cokernel is MCM
    assert!(hull.y_pd <= 1);
    let dc = depth(&hull.c, &lim).unwrap();
    assert!(dc.is_mcm, "hull cokernel must be MCM, got {:?}", dc.depth);
}

#[test]
fn fid_hull_of_finite_pd_module_is_trivial() {
    let r = ci_two_quadrics();
    let f = GradedModule::free(r, vec![0, 1]);
    let lim = limits();
    let hull = fid_hull(&f, &lim).unwrap();
    assert!(hull.c.is_zero_module());
    assert_eq!(hull.iterations, 0);
}

#[test]
fn tor_transfer_on_the_vanishing_pair() {
    let r = ci_two_quadrics();
    let m = quotient_module(&r, Polynomial::variable(0, 2)).unwrap();
    let n = quotient_module(&r, Polynomial::variable(1, 2)).unwrap();
    let lim = limits();
    let out = tor_transfer(&m, &n, &lim).unwrap();
    // both replacements have witnessed finite pd and the same depths
    assert_eq!(
        depth(&out.x_prime, &lim).unwrap().depth,
        depth(&m, &lim).unwrap().depth
    );
    assert_eq!(
        depth(&out.y_prime, &lim).unwrap().depth,
        depth(&n, &lim).unwrap().depth
    );
    // positive-degree Tor stays all zero
    let t = redcx_core::homalg::tor_table(&out.x_prime, &out.y_prime, lim.max_hdeg, &lim).unwrap();
    use redcx_core::homalg::VanishingTable;
    for i in 1..=lim.max_hdeg / 2 {
        assert!(t.is_zero_at(i));
    }
}

#[test]
fn tor_transfer_keeps_finite_pd_inputs_unchanged() {
    let r = ci_two_quadrics();
    let f = GradedModule::free(r.clone(), vec![0]);
    let g = GradedModule::free(r.clone(), vec![1]);
    let lim = limits();
    let out = tor_transfer(&f, &g, &lim).unwrap();
    assert!(out.x_prime.same_presentation(&redcx_core::gradedmod::minimalize(&f)));
    assert!(out.y_prime.same_presentation(&redcx_core::gradedmod::minimalize(&g)));

    // an infinite-pd partner must be replaced: both outputs carry a
    // finite-pd witness
    let n = quotient_module(&r, Polynomial::variable(1, 2)).unwrap();
    let out = tor_transfer(&f, &n, &lim).unwrap();
    assert!(out.x_prime.same_presentation(&redcx_core::gradedmod::minimalize(&f)));
    assert!(redcx_core::resolve::finite_pd_witness(&out.y_prime, &lim)
        .unwrap()
        .is_some());
}

#[test]
fn tor_transfer_precondition_fails_for_k_with_itself() {
    let r = ci_two_quadrics();
    let k = GradedModule::residue_field(r);
    let lim = limits();
    let err = tor_transfer(&k, &k, &lim);
    assert!(err.is_err(), "Tor(k,k) never vanishes");
    // confirm the reason: the q index is pinned at the top of the window
    let q = q_index(&k, &k, lim.max_hdeg, &lim).unwrap();
    assert_eq!(q, SupIndex::AtLeast(lim.max_hdeg));
}
