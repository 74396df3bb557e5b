use std::collections::BTreeSet;

use empathic_core::af::{oracle_extensions, solve_batch, ArgumentId, ArgumentationFramework, Extension, Semantics};
use empathic_core::Execution;
use proptest::prelude::*;

fn name(i: usize) -> String {
    format!("x{i}")
}

fn build(n: usize, edges: &[(usize, usize)]) -> ArgumentationFramework {
    ArgumentationFramework::new((0..n).map(name), edges.iter().map(|&(a, b)| (name(a), name(b)))).unwrap()
}

/// Frameworks with up to `max` arguments and a per-framework attack density.
fn framework(max: usize) -> impl Strategy<Value = ArgumentationFramework> {
    (0..=max, 0.0f64..0.6).prop_flat_map(|(n, density)| {
        proptest::collection::vec(proptest::bool::weighted(density.max(0.01)), n * n).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| bits[a * n + b])
                .collect();
            build(n, &edges)
        })
    })
}

fn members(e: &Extension) -> BTreeSet<ArgumentId> {
    e.members().clone()
}

fn least_fixed_point(af: &ArgumentationFramework) -> BTreeSet<ArgumentId> {
    let mut s = BTreeSet::new();
    loop {
        let next = af.characteristic_function(&s).unwrap();
        if next == s {
            return s;
        }
        s = next;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn agrees_with_oracle(af in framework(8)) {
        for sem in Semantics::ALL {
            let oracle = oracle_extensions(&af, sem, Execution::Sequential).unwrap();
            prop_assert_eq!(af.solve_with(sem, Execution::Sequential), oracle.clone(), "{}", sem);
            prop_assert_eq!(af.solve_with(sem, Execution::Parallel), oracle, "{}", sem);
        }
    }

    #[test]
    fn admissible_sets_are_conflict_free(af in framework(8)) {
        for sem in [Semantics::Complete, Semantics::Preferred] {
            for e in af.solve(sem) {
                let s = members(&e);
                prop_assert!(af.is_admissible(&s).unwrap());
                prop_assert!(af.is_conflict_free(&s).unwrap());
            }
        }
    }

    #[test]
    fn complete_extensions_are_fixed_points(af in framework(8)) {
        for e in af.complete_extensions() {
            let s = members(&e);
            prop_assert_eq!(af.characteristic_function(&s).unwrap(), s);
        }
    }

    #[test]
    fn grounded_is_least_complete(af in framework(8)) {
        let grounded = af.grounded_extension();
        prop_assert_eq!(members(&grounded), least_fixed_point(&af));
        let complete = af.complete_extensions();
        prop_assert!(complete.contains(&grounded));
        for e in &complete {
            prop_assert!(grounded.is_subset(e));
        }
    }

    #[test]
    fn preferred_are_maximal_complete(af in framework(8)) {
        let complete = af.complete_extensions();
        let preferred = af.preferred_extensions();
        prop_assert!(!preferred.is_empty());
        for p in &preferred {
            prop_assert!(complete.contains(p));
            prop_assert!(!complete.iter().any(|c| c != p && p.is_subset(c)));
        }
    }

    #[test]
    fn maximal_ideal_sits_between_grounded_and_every_preferred(af in framework(8)) {
        let ideal = af.maximal_ideal_extension();
        prop_assert!(af.is_admissible(ideal.members()).unwrap());
        prop_assert!(af.grounded_extension().is_subset(&ideal));
        for p in af.preferred_extensions() {
            prop_assert!(ideal.is_subset(&p));
        }
        prop_assert!(af.complete_extensions().contains(&ideal));
    }

    #[test]
    fn relabeling_commutes_with_solving(af in framework(7), shift in 1usize..50) {
        let rename = |a: &ArgumentId| ArgumentId::from(format!("arg-{shift}-{}", &a.as_str()[1..]));
        let renamed = ArgumentationFramework::new(
            af.arguments().iter().map(rename),
            af.attacks().map(|at| (rename(&at.attacker), rename(&at.target))),
        ).unwrap();
        for sem in Semantics::ALL {
            let mapped: BTreeSet<Extension> = af
                .solve(sem)
                .iter()
                .map(|e| e.members().iter().map(rename).collect())
                .collect();
            let direct: BTreeSet<Extension> = renamed.solve(sem).into_iter().collect();
            prop_assert_eq!(mapped, direct);
        }
    }

    #[test]
    fn output_is_sorted_and_deterministic(af in framework(8)) {
        for sem in Semantics::ALL {
            let a = af.solve(sem);
            let mut sorted = a.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(&a, &sorted);
            prop_assert_eq!(a, af.solve(sem));
        }
    }
}

#[test]
fn unattacked_framework_has_one_extension_of_everything() {
    for n in 0..6 {
        let af = build(n, &[]);
        let all: Extension = af.arguments().iter().cloned().collect();
        for sem in Semantics::ALL {
            assert_eq!(af.solve(sem), vec![all.clone()], "{sem} n={n}");
        }
    }
}

#[test]
fn odd_cycle_has_only_the_empty_extension() {
    let af = build(3, &[(0, 1), (1, 2), (2, 0)]);
    for sem in Semantics::ALL {
        assert_eq!(af.solve(sem), vec![Extension::default()], "{sem}");
    }
}

#[test]
fn batch_matches_individual_solves() {
    let frameworks: Vec<_> = (0..12)
        .map(|k| {
            build(
                k % 7,
                &[(0, 1), (1, 0), (2, 3)]
                    .iter()
                    .copied()
                    .filter(|&(a, b)| a.max(b) < k % 7)
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    for sem in Semantics::ALL {
        let expected: Vec<_> = frameworks.iter().map(|af| af.solve(sem)).collect();
        assert_eq!(solve_batch(&frameworks, sem, Execution::Sequential), expected);
        assert_eq!(solve_batch(&frameworks, sem, Execution::Parallel), expected);
    }
}

#[test]
fn larger_frameworks_match_between_execution_modes() {
    // Past the fan-out threshold of the parallel search.
    let n = 16;
    let edges: Vec<_> = (0..n)
        .map(|i| (i, (i + 1) % n))
        .chain((0..n).step_by(3).map(|i| ((i + 5) % n, i)))
        .collect();
    let af = build(n, &edges);
    for sem in Semantics::ALL {
        assert_eq!(
            af.solve_with(sem, Execution::Sequential),
            af.solve_with(sem, Execution::Parallel),
            "{sem}"
        );
        assert_eq!(
            af.solve(sem),
            oracle_extensions(&af, sem, Execution::Parallel).unwrap(),
            "{sem}"
        );
    }
}
