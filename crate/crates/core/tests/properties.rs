//! Structural invariants over randomized inputs.

mod common;

use common::*;
use kerr_chain::closed::resonant_epsilon;
use kerr_chain::{Branch, DampingKind, SystemParams};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn damped_params() -> impl Strategy<Value = SystemParams> {
    (
        0.001f64..0.05,
        any::<bool>(),
        any::<bool>(),
        -0.8f64..0.8,
        0.05f64..3.0,
    )
        .prop_map(|(alpha, plus, amp, delta, kappa)| {
            let branch = if plus { Branch::Plus } else { Branch::Minus };
            let kind = if amp {
                DampingKind::Amplitude
            } else {
                DampingKind::Phase
            };
            SystemParams::undamped(alpha, resonant_epsilon(alpha, branch))
                .with_delta(delta * alpha)
                .with_damping(kind, kappa * alpha)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn open_evolution_preserves_state_properties(params in damped_params()) {
        prop_assert_eq!(check_open_evolution(&params), Ok(()));
    }

    #[test]
    fn steady_state_residual_is_small(params in damped_params()) {
        prop_assert_eq!(check_steady_residual(&params), Ok(()));
    }

    #[test]
    fn hamiltonian_is_mirror_symmetric(params in damped_params(), n_max in 1usize..4) {
        prop_assert_eq!(check_mirror_hamiltonian(&params, n_max), Ok(()));
    }

    #[test]
    fn g1_lies_in_unit_interval(seed in any::<u64>(), d in 2usize..4, rank in 1usize..4) {
        let rho = random_density(&mut StdRng::seed_from_u64(seed), d, rank);
        prop_assert_eq!(check_g1_range(&rho), Ok(()));
    }

    #[test]
    fn tripartite_is_geometric_mean(seed in any::<u64>(), rank in 1usize..4) {
        let rho = random_density(&mut StdRng::seed_from_u64(seed), 2, rank);
        prop_assert_eq!(check_geometric_mean(&rho), Ok(()));
    }

    #[test]
    fn partial_transpose_is_an_involution(
        seed in any::<u64>(),
        part in prop::sample::select(vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]),
    ) {
        let rho = random_density(&mut StdRng::seed_from_u64(seed), 2, 2);
        prop_assert_eq!(check_transpose_involution(&rho, &part), Ok(()));
    }
}
