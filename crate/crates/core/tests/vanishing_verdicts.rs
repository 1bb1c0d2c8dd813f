//! Vanishing-window verdicts and the depth formula on the fixture pairs.

use redcx_core::fixtures::*;
use redcx_core::gradedmod::GradedModule;
use redcx_core::homalg::*;
use redcx_core::reducible::{search_certificate, vanishing_window_verdict};
use redcx_core::ringkernel::Polynomial;
use redcx_core::Limits;

fn limits() -> Limits {
    Limits {
        max_hdeg: 10,
        ..Limits::default()
    }
}

#[test]
fn window_verdict_finite_for_the_vanishing_pair() {
    let r = ci_two_quadrics();
    let m = quotient_module(&r, Polynomial::variable(0, 2)).unwrap();
    let n = quotient_module(&r, Polynomial::variable(1, 2)).unwrap();
    let lim = limits();
    let cert = search_certificate(&m, 3, 256, &lim)
        .unwrap()
        .certificate()
        .expect("period-one module certifies with one degree-1 class");
    assert_eq!(cert.chain_len(), 1);
    assert_eq!(cert.links[0].class.hdeg(), 1);
    assert_eq!(cert.window_span(), 0);

    let e = ext_table(&m, &n, lim.max_hdeg, &lim).unwrap();
    let verdict = vanishing_window_verdict(&cert, TableKind::Ext(&e), &n, &lim).unwrap();
    match verdict {
        WindowVerdict::FiniteExt { predicted_p, .. } => assert_eq!(predicted_p, 0),
        other => panic!("expected a finite Ext verdict, got {other:?}"),
    }
    assert_eq!(p_index(&m, &n, lim.max_hdeg, &lim).unwrap(), SupIndex::Finite(0));

    let t = tor_table(&m, &n, lim.max_hdeg, &lim).unwrap();
    let verdict = vanishing_window_verdict(&cert, TableKind::Tor(&t), &n, &lim).unwrap();
    match verdict {
        WindowVerdict::FiniteTor {
            predicted_q_lo,
            predicted_q_hi,
            ..
        } => {
            assert_eq!(predicted_q_lo, 0);
            assert_eq!(predicted_q_hi, 0);
        }
        other => panic!("expected a finite Tor verdict, got {other:?}"),
    }
    assert_eq!(q_index(&m, &n, lim.max_hdeg, &lim).unwrap(), SupIndex::Finite(0));
}

#[test]
fn window_verdict_finds_no_gap_for_the_gasharov_module_against_k() {
    let r = gasharov_ring(7, 2).unwrap();
    let m = gasharov_module(&r, 2).unwrap();
    let k = GradedModule::residue_field(r);
    let lim = Limits::default();
    let cert = search_certificate(&m, 4, 512, &lim)
        .unwrap()
        .certificate()
        .unwrap();
    let e = ext_table(&m, &k, lim.max_hdeg, &lim).unwrap();
    // dim Ext^i(M, k) = 2 for every i: no vanishing window exists
    use redcx_core::homalg::VanishingTable;
    for i in 0..=lim.max_hdeg {
        assert_eq!(e.total_dim(i), 2);
    }
    let verdict = vanishing_window_verdict(&cert, TableKind::Ext(&e), &k, &lim).unwrap();
    assert!(matches!(verdict, WindowVerdict::NoWindowFound { .. }));
}

#[test]
fn free_module_gets_a_finite_verdict_from_a_single_zero() {
    let r = ci_two_quadrics();
    let f = GradedModule::free(r.clone(), vec![0]);
    let n = GradedModule::residue_field(r);
    let lim = limits();
    let cert = search_certificate(&f, 3, 64, &lim)
        .unwrap()
        .certificate()
        .unwrap();
    assert_eq!(cert.window_span(), 0);
    let e = ext_table(&f, &n, lim.max_hdeg, &lim).unwrap();
    let verdict = vanishing_window_verdict(&cert, TableKind::Ext(&e), &n, &lim).unwrap();
    assert!(matches!(verdict, WindowVerdict::FiniteExt { predicted_p: 0, .. }));
}

#[test]
fn depth_formula_holds_on_the_vanishing_pair() {
    let r = ci_two_quadrics();
    let m = quotient_module(&r, Polynomial::variable(0, 2)).unwrap();
    let n = quotient_module(&r, Polynomial::variable(1, 2)).unwrap();
    let lim = limits();
    let report = depth_formula_check(&m, &n, true, &lim).unwrap();
    match report {
        DepthFormulaReport::Verdict {
            holds,
            depth_m,
            depth_n,
            depth_a,
            depth_tensor,
        } => {
            assert!(holds);
            assert_eq!((depth_m, depth_n, depth_a, depth_tensor), (0, 0, 0, 0));
        }
        other => panic!("expected a verdict, got {other:?}"),
    }
}

#[test]
fn depth_formula_holds_for_free_module_with_mcm_partner() {
    let r = hypersurface_xy();
    let a = GradedModule::free(r.clone(), vec![0]);
    let n = quotient_module(&r, Polynomial::variable(0, 2)).unwrap(); // MCM
    let lim = limits();
    let report = depth_formula_check(&a, &n, true, &lim).unwrap();
    match report {
        DepthFormulaReport::Verdict { holds, .. } => assert!(holds),
        other => panic!("expected a verdict, got {other:?}"),
    }
}

#[test]
fn depth_formula_reports_failed_preconditions_over_the_hypersurface() {
    let r = hypersurface_xy();
    let m = quotient_module(&r, Polynomial::variable(0, 2)).unwrap();
    let n = quotient_module(&r, Polynomial::variable(1, 2)).unwrap();
    let lim = limits();
    let report = depth_formula_check(&m, &n, true, &lim).unwrap();
    match report {
        DepthFormulaReport::PreconditionFailed { q_nonzero, .. } => assert!(q_nonzero),
        other => panic!("expected a precondition failure, got {other:?}"),
    }
}

#[test]
fn ext_symmetry_spot_check_on_gorenstein_fixtures() {
    // Gorenstein symmetry: vanishing of Ext in the top half of the window
    // is symmetric in the two arguments
    let lim = limits();
    for ring in [ci_two_quadrics(), hypersurface_xy()] {
        let x = Polynomial::variable(0, 2);
        let y = Polynomial::variable(1, 2);
        let mods = [
            GradedModule::residue_field(ring.clone()),
            quotient_module(&ring, x).unwrap(),
            quotient_module(&ring, y).unwrap(),
            GradedModule::free(ring.clone(), vec![0]),
        ];
        use redcx_core::homalg::VanishingTable;
        for a in &mods {
            for b in &mods {
                let e_ab = ext_table(a, b, lim.max_hdeg, &lim).unwrap();
                let e_ba = ext_table(b, a, lim.max_hdeg, &lim).unwrap();
                let top = (lim.max_hdeg / 2 + 1)..=lim.max_hdeg;
                let ab_vanishes = top.clone().all(|i| e_ab.is_zero_at(i));
                let ba_vanishes = top.clone().all(|i| e_ba.is_zero_at(i));
                assert_eq!(ab_vanishes, ba_vanishes, "Ext symmetry violated");
            }
        }
    }
}
