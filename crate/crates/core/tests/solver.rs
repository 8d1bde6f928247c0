mod common;

use common::{dense_solve, random_dominant, rel_inf_diff};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tripart::solver::{make_plan, residual_inf, solve_partition, thomas_solve, RecursionPolicy, SolverError, TridiagonalSystem};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn partition_matches_dense_oracle(
        seed in any::<u64>(),
        n in 1usize..300,
        sizes in prop::collection::vec(2usize..40, 1..5),
        factor in 1.05f64..4.0,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_dominant(&mut rng, n, factor);
        let oracle = dense_solve(&sys);
        let x = solve_partition(&sys, &RecursionPolicy::new(sizes).unwrap()).unwrap();
        prop_assert!(rel_inf_diff(&x, &oracle) < 1e-10);
        let t = thomas_solve(&sys).unwrap();
        prop_assert!(rel_inf_diff(&t, &oracle) < 1e-10);
    }

    #[test]
    fn plan_blocks_tile_the_rows(n in 2usize..5000, m in 2usize..100) {
        let plan = make_plan(n, m).unwrap();
        prop_assert_eq!(plan.blocks.first().unwrap().start, 0);
        prop_assert_eq!(plan.blocks.last().unwrap().end, n);
        for w in plan.blocks.windows(2) {
            prop_assert_eq!(w[0].end, w[1].start);
        }
        prop_assert!(plan.blocks.iter().all(|b| b.len() >= 2 || plan.blocks.len() == 1));
        prop_assert_eq!(plan.interface_len(), 2 * plan.block_count());
    }
}

#[test]
fn single_precision_agrees_with_double() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sys = random_dominant(&mut rng, 4000, 2.0);
    let sys32 = TridiagonalSystem::<f32>::new(
        sys.sub().iter().map(|&v| v as f32).collect(),
        sys.diag().iter().map(|&v| v as f32).collect(),
        sys.sup().iter().map(|&v| v as f32).collect(),
        sys.rhs().iter().map(|&v| v as f32).collect(),
    )
    .unwrap();
    let x32 = solve_partition(&sys32, &RecursionPolicy::new(vec![32, 10, 16]).unwrap()).unwrap();
    let x64 = dense_solve(&sys);
    let widened: Vec<f64> = x32.iter().map(|&v| v as f64).collect();
    assert!(rel_inf_diff(&widened, &x64) < 1e-5);
    assert!(residual_inf(&sys32, &x32) < 1e-4);
}

#[test]
fn zero_pivot_is_reported() {
    let sys = TridiagonalSystem::new(vec![0.0, 1.0], vec![1.0, 1.0], vec![1.0, 0.0], vec![1.0, 2.0]).unwrap();
    assert!(matches!(thomas_solve(&sys), Err(SolverError::ZeroPivot { row: 1 })));
}

#[test]
fn malformed_systems_are_rejected() {
    assert!(TridiagonalSystem::new(vec![1.0], vec![1.0], vec![0.0], vec![1.0]).is_err());
    assert!(TridiagonalSystem::<f64>::new(vec![], vec![], vec![], vec![]).is_err());
    assert!(TridiagonalSystem::new(vec![0.0, 1.0], vec![1.0], vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
    assert!(RecursionPolicy::new(vec![]).is_err());
    assert!(RecursionPolicy::flat(1).is_err());
    assert!(make_plan(1, 4).is_err());
}
