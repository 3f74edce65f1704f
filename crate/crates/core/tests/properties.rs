use proptest::prelude::*;
use qsignals::random::{ginibre, random_density, random_pure_state, random_unitary};
use qsignals::scenario::{parse_scenario, serialize_scenario};
use qsignals::{
    apply_channel, partial_trace, random_channel, tensor_state, Complex, ComplexMatrix,
    CompositeDensity, Subsystem,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    a.max_abs_diff(b).unwrap() <= tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_is_cyclic(seed: u64, n in 1usize..6, m in 1usize..6) {
        let mut r = rng(seed);
        let a = ginibre(n, m, &mut r);
        let b = ginibre(m, n, &mut r);
        let ab = a.matmul(&b).unwrap().trace().unwrap();
        let ba = b.matmul(&a).unwrap().trace().unwrap();
        prop_assert!((ab - ba).norm() <= 1e-12);
    }

    #[test]
    fn kron_mixed_product(seed: u64, n in 1usize..4, m in 1usize..4) {
        let mut r = rng(seed);
        let (a, c) = (ginibre(n, n, &mut r), ginibre(n, n, &mut r));
        let (b, d) = (ginibre(m, m, &mut r), ginibre(m, m, &mut r));
        let lhs = a.kron(&b).matmul(&c.kron(&d)).unwrap();
        let rhs = a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap());
        prop_assert!(close(&lhs, &rhs, 1e-11));
    }

    #[test]
    fn adjoint_is_an_involution(seed: u64, n in 1usize..6, m in 1usize..6) {
        let a = ginibre(n, m, &mut rng(seed));
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn pure_states_have_unit_purity(seed: u64, n in 1usize..7) {
        let psi = random_pure_state(n, &mut rng(seed));
        let rho = qsignals::density_from_pure(&psi);
        prop_assert!((rho.purity() - 1.0).abs() <= 1e-10);
        prop_assert!((rho.trace() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn partial_trace_is_adjoint_to_lifting(seed: u64, na in 1usize..4, nb in 1usize..4) {
        // Tr[(X (x) I) rho] == Tr[X Tr_B rho] and symmetrically for B.
        let mut r = rng(seed);
        let rho = CompositeDensity::from_density(random_density(na * nb, &mut r), na, nb).unwrap();
        let x = ginibre(na, na, &mut r);
        let y = ginibre(nb, nb, &mut r);
        let lifted_x = x.kron(&ComplexMatrix::identity(nb)).matmul(rho.matrix()).unwrap().trace().unwrap();
        let reduced_x = x.matmul(partial_trace(&rho, Subsystem::B).matrix()).unwrap().trace().unwrap();
        prop_assert!((lifted_x - reduced_x).norm() <= 1e-11);
        let lifted_y = ComplexMatrix::identity(na).kron(&y).matmul(rho.matrix()).unwrap().trace().unwrap();
        let reduced_y = y.matmul(partial_trace(&rho, Subsystem::A).matrix()).unwrap().trace().unwrap();
        prop_assert!((lifted_y - reduced_y).norm() <= 1e-11);
    }

    #[test]
    fn partial_trace_inverts_tensor(seed: u64, na in 1usize..4, nb in 1usize..4) {
        let mut r = rng(seed);
        let a = random_density(na, &mut r);
        let b = random_density(nb, &mut r);
        let ab = tensor_state(&a, &b);
        prop_assert!(close(partial_trace(&ab, Subsystem::B).matrix(), a.matrix(), 1e-12));
        prop_assert!(close(partial_trace(&ab, Subsystem::A).matrix(), b.matrix(), 1e-12));
    }

    #[test]
    fn channels_preserve_trace(seed in 0u64..10_000, n in 1usize..5, k in 1usize..17) {
        prop_assume!(k <= n * n);
        let ch = random_channel(n, k, seed).unwrap();
        let rho = random_density(n, &mut rng(seed ^ 0x5eed));
        let out = apply_channel(&ch, &rho).unwrap();
        prop_assert!((out.trace() - 1.0).abs() <= 1e-10);
        prop_assert!(out.matrix().hermitian_eigen(1e-9).unwrap().min_eigenvalue() >= -1e-9);
    }

    #[test]
    fn unitary_conjugation_preserves_spectrum_sum_of_squares(seed: u64, n in 1usize..5) {
        let mut r = rng(seed);
        let rho = random_density(n, &mut r);
        let u = random_unitary(n, &mut r);
        let ch = qsignals::KrausChannel::unitary(u, 1e-10).unwrap();
        let out = ch.apply(&rho).unwrap();
        prop_assert!((out.purity() - rho.purity()).abs() <= 1e-10);
    }

    #[test]
    fn scenario_round_trip(amps in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..6), p in 0.01f64..0.99) {
        let norm = amps.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let n = amps.len();
        let amplitudes: Vec<[f64; 2]> = amps.iter().map(|&(a, b)| [a / norm, b / norm]).collect();
        let basis: Vec<[f64; 2]> = (0..n).map(|i| [if i == 0 { 1.0 } else { 0.0 }, 0.0]).collect();
        let json = serde_json::json!({
            "states": {
                "psi": { "kind": "pure", "amplitudes": amplitudes },
                "mix": { "kind": "ensemble", "members": [
                    { "p": p, "amplitudes": amplitudes },
                    { "p": 1.0 - p, "amplitudes": basis }
                ] }
            },
            "pipeline": [ { "op": "validate", "inputs": ["mix"], "as": "ok" } ]
        });
        let doc = parse_scenario(json.to_string().as_bytes()).unwrap();
        let again = parse_scenario(&serialize_scenario(&doc)).unwrap();
        prop_assert_eq!(doc, again);
    }

    #[test]
    fn parser_never_panics(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let _ = parse_scenario(&bytes);
    }

    #[test]
    fn parser_never_panics_on_near_valid_text(
        op in "[a-z_]{0,12}",
        name in "[a-z]{0,3}",
        x in -2.0f64..2.0,
    ) {
        let text = format!(
            r#"{{"states": {{"a": {{"kind": "pure", "amplitudes": [[{x}, 0], [1, 0]]}}}},
                "channels": {{"c": {{"kind": "kraus", "matrices": [[[[{x}, 0], [0, 0]], [[0, 0], [1, 0]]]]}}}},
                "pipeline": [{{"op": "{op}", "inputs": ["{name}", "a"]}}]}}"#
        );
        if let Ok(doc) = parse_scenario(text.as_bytes()) {
            let _ = qsignals::scenario::run_pipeline(&doc);
        }
    }
}

#[test]
fn kron_index_convention() {
    let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
    let b = ComplexMatrix::from_real_rows(&[&[0.0, 5.0], &[6.0, 7.0]]).unwrap();
    let k = a.kron(&b);
    for n in 0..2 {
        for i in 0..2 {
            for m in 0..2 {
                for j in 0..2 {
                    assert_eq!(k[(n * 2 + m, i * 2 + j)], a[(n, i)] * b[(m, j)]);
                }
            }
        }
    }
    assert_eq!(k[(0, 1)], Complex::new(5.0, 0.0));
}
