mod support;

use nj_core::family::build;
use nj_core::jacobian::{is_nilpotent_power, jacobian_matrix, NilpotencyMethod, PolynomialMap};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check(name: &str, result: Result<(), String>) {
    if let Err(e) = result {
        panic!("{name}: {e}");
    }
}

/// A family member, perturbed when `perturbed` is set.
fn structured(seed: u64, n: usize, perturbed: bool) -> PolynomialMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = build(&support::corpus_params(&mut rng, n, 3)).unwrap();
    if perturbed {
        support::perturb(&mut rng, &h, 3)
    } else {
        h
    }
}

#[test]
fn jacobian_of_composition() {
    let maps = (1usize..=4).prop_flat_map(|n| (support::map(n, 3, 3), support::map(n, 3, 3)));
    check(
        "chain rule",
        support::run(300, maps, |(f, g)| {
            let lhs = jacobian_matrix(&f.compose(&g).unwrap());
            let outer = jacobian_matrix(&f).map_entries(|p| p.eval_polys(g.components()).unwrap());
            prop_assert_eq!(lhs, outer.mul(&jacobian_matrix(&g)));
            Ok(())
        }),
    );
}

#[test]
fn nilpotency_methods_agree() {
    check(
        "three-way equivalence",
        support::run(200, (any::<u64>(), 3usize..=5, any::<bool>()), |(seed, n, perturbed)| {
            let h = structured(seed, n, perturbed);
            let [power, char, equations] = support::verdicts(&h);
            prop_assert_eq!(power, char);
            prop_assert_eq!(char, equations);
            prop_assert!(perturbed || power, "family member not nilpotent: {}", h);
            Ok(())
        }),
    );
}

#[test]
fn nilpotent_jacobians_are_traceless_and_keller() {
    check(
        "trace and keller",
        support::run(200, (any::<u64>(), 3usize..=6, any::<bool>()), |(seed, n, perturbed)| {
            let h = structured(seed, n, perturbed);
            let j = jacobian_matrix(&h);
            if is_nilpotent_power(&j) {
                prop_assert!(j.trace().is_zero());
                prop_assert!(support::keller(&h));
            }
            Ok(())
        }),
    );
}

#[test]
fn recursion_equals_cofactor_determinant() {
    check(
        "recursion",
        support::run(200, (any::<u64>(), 3usize..=6, any::<bool>()), |(seed, n, perturbed)| {
            prop_assert!(support::recursion_matches(&structured(seed, n, perturbed)));
            Ok(())
        }),
    );
}

#[test]
fn default_method_is_char() {
    assert_eq!(NilpotencyMethod::default(), NilpotencyMethod::Char);
}
