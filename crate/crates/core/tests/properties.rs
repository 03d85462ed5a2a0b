use proptest::prelude::*;

use ucdtqw::complement::{
    closed_form_distribution, run_complement_statevector, ComplementSpec,
};
use ucdtqw::graphs::{complete_shift, ShiftModel};
use ucdtqw::linalg::{apply, is_unitary, kron, Complex, ComplexMatrix, ComplexVector};
use ucdtqw::probability::{l1_distance, node_probabilities, probability_matrix, ProbabilityVector};
use ucdtqw::walk::{
    basis_state, evolution_operator, evolve, grover_coin, hadamard_coin, CoinSpec, WalkerState,
};

fn complex() -> impl Strategy<Value = Complex> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex::new(re, im))
}

fn matrix(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        prop::collection::vec(complex(), r * c)
            .prop_map(move |d| ComplexMatrix::new(r, c, d).unwrap())
    })
}

fn distribution(len: usize) -> impl Strategy<Value = ProbabilityVector> {
    prop::collection::vec(0.0..1.0f64, len).prop_filter_map("all zero", |w| {
        let total: f64 = w.iter().sum();
        (total > 1e-6).then(|| {
            let p: Vec<f64> = w.iter().map(|x| x / total).collect();
            let fixed: f64 = p[..p.len() - 1].iter().sum();
            let mut p = p;
            let last = p.len() - 1;
            p[last] = (1.0 - fixed).max(0.0);
            ProbabilityVector::new(p).unwrap()
        })
    })
}

/// Random unitary coin built from Hadamard, Grover and diagonal phases.
fn unitary_coin(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    let dim = 1usize << n;
    (prop::collection::vec(0.0..std::f64::consts::TAU, dim), any::<bool>()).prop_map(
        move |(phases, grover)| {
            let d = ComplexMatrix::from_fn(dim, dim, |i, j| {
                if i == j { Complex::from_polar(1.0, phases[i]) } else { Complex::new(0.0, 0.0) }
            });
            let base = if grover { grover_coin(n).unwrap() } else { hadamard_coin(n).unwrap() };
            base.matmul(&d).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_is_associative(a in matrix(3), b in matrix(2), c in matrix(3)) {
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_abs_diff(&right).unwrap() < 1e-12);
    }

    #[test]
    fn kron_of_unitaries_is_unitary(n in 1usize..3, m in 1usize..3, flip in any::<bool>()) {
        let a = hadamard_coin(n).unwrap();
        let b = if flip { grover_coin(m).unwrap() } else { hadamard_coin(m).unwrap() };
        prop_assert!(is_unitary(&kron(&a, &b), 1e-10).unwrap());
    }

    #[test]
    fn apply_to_basis_vector_extracts_column(m in matrix(5), k in 0usize..5) {
        let k = k % m.cols();
        let e = ComplexVector::basis(m.cols(), k).unwrap();
        let out = apply(&m, &e).unwrap();
        prop_assert_eq!(out, m.column(k));
    }

    #[test]
    fn evolution_preserves_norm(coin in unitary_coin(2), model in any::<bool>(),
                                steps in 1usize..4, c in 0usize..4, p in 0usize..4) {
        let model = if model { ShiftModel::Cnot } else { ShiftModel::Swap };
        let s = complete_shift(2, model).unwrap();
        let u = evolution_operator(&s, &CoinSpec::Uniform(coin), false).unwrap();
        let psi = evolve(&basis_state(2, c, p).unwrap(), &u, steps).unwrap();
        prop_assert!((psi.amplitudes().norm() - 1.0).abs() < 1e-10);
        let probs = node_probabilities(&psi);
        prop_assert!((probs.sum() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn probability_matrix_is_column_stochastic(coin in unitary_coin(2), target in 0usize..4,
                                               steps in 1usize..3) {
        let s = complete_shift(2, ShiftModel::Cnot).unwrap();
        let u = evolution_operator(&s, &CoinSpec::perturbed(coin, target), true).unwrap();
        let mp = probability_matrix(&u, steps).unwrap();
        for sum in mp.column_sums() {
            prop_assert!((sum - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn probability_matrix_columns_match_basis_evolution(coin in unitary_coin(2), c in 0usize..4,
                                                        p in 0usize..4, steps in 1usize..3) {
        let s = complete_shift(2, ShiftModel::Cnot).unwrap();
        let u = evolution_operator(&s, &CoinSpec::Uniform(coin), false).unwrap();
        let mp = probability_matrix(&u, steps).unwrap();
        let psi = evolve(&basis_state(2, c, p).unwrap(), &u, steps).unwrap();
        let direct = node_probabilities(&psi);
        for (a, b) in mp.column(c, p).iter().zip(direct.as_slice()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn l1_is_a_metric(p in distribution(6), q in distribution(6), r in distribution(6)) {
        let d = |a: &ProbabilityVector, b: &ProbabilityVector| l1_distance(a, b).unwrap();
        prop_assert!(d(&p, &p).abs() < 1e-15);
        prop_assert!((d(&p, &q) - d(&q, &p)).abs() < 1e-15);
        prop_assert!(d(&p, &q) >= 0.0 && d(&p, &q) <= 1.0 + 1e-12);
        prop_assert!(d(&p, &r) <= d(&p, &q) + d(&q, &r) + 1e-12);
    }

    #[test]
    fn complement_suppresses_target_xor_coin(n in 1usize..6, seed in any::<u64>()) {
        let nodes = 1usize << n;
        let pick = |k: u64| (seed >> k) as usize % nodes;
        let spec = ComplementSpec::new(n, pick(0), pick(16), pick(32)).unwrap();
        let got = run_complement_statevector(&spec).unwrap();
        let exact = closed_form_distribution(&spec);
        prop_assert_eq!(got.suppressed_node, spec.target ^ spec.coin_init);
        prop_assert!((got.distribution.sum() - 1.0).abs() < 1e-12);
        for (a, b) in got.distribution.as_slice().iter().zip(exact.distribution.as_slice()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        let ratio = got.other_probability() / got.suppressed_probability();
        prop_assert!((ratio - (nodes as f64 + 1.0)).abs() < 1e-8);
    }

    #[test]
    fn uniform_state_is_normalized(n in 1usize..5) {
        let psi = WalkerState::uniform(n);
        prop_assert!((psi.amplitudes().norm() - 1.0).abs() < 1e-12);
    }
}
