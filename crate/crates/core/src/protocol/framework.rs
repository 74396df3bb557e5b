use std::collections::{BTreeMap, BTreeSet};

use super::{AttackClaim, AttackTarget, ProtocolError};
use crate::af::{ArgumentId, ArgumentationFramework};
use crate::agent::AcceptabilityRule;

/// Framework of a dispute: one argument per attacked rule, one per attack
/// label, and an edge from each label to what it targets. Rules nobody
/// attacks are left out.
pub fn build_framework(
    rules: &[AcceptabilityRule],
    attacks: &[AttackClaim],
) -> Result<ArgumentationFramework, ProtocolError> {
    let labels: BTreeSet<&ArgumentId> = attacks.iter().map(|c| &c.label).collect();
    let rule_ids: BTreeSet<ArgumentId> = rules.iter().map(AcceptabilityRule::argument_id).collect();

    let mut arguments: BTreeSet<ArgumentId> = labels.iter().map(|l| (*l).clone()).collect();
    let mut edges = Vec::new();
    for claim in attacks {
        for target in resolve_target(claim, rules, &rule_ids, &labels)? {
            arguments.insert(target.clone());
            edges.push((claim.label.clone(), target));
        }
    }
    Ok(ArgumentationFramework::new(arguments, edges).expect("all endpoints were collected as arguments"))
}

fn resolve_target(
    claim: &AttackClaim,
    rules: &[AcceptabilityRule],
    rule_ids: &BTreeSet<ArgumentId>,
    labels: &BTreeSet<&ArgumentId>,
) -> Result<Vec<ArgumentId>, ProtocolError> {
    let dangling = || ProtocolError::DanglingTarget {
        label: claim.label.clone(),
        target: claim.target.to_string(),
    };
    match &claim.target {
        AttackTarget::RuleOf(action) => {
            let hits: BTreeSet<ArgumentId> = rules
                .iter()
                .filter(|r| &r.action == action)
                .map(AcceptabilityRule::argument_id)
                .collect();
            if hits.is_empty() {
                Err(dangling())
            } else {
                Ok(hits.into_iter().collect())
            }
        }
        AttackTarget::Argument(id) => {
            if rule_ids.contains(id) || labels.contains(id) {
                Ok(vec![id.clone()])
            } else {
                Err(dangling())
            }
        }
    }
}

/// Whether `claim` can be launched against the given pool right now.
pub(crate) fn is_resolvable(
    claim: &AttackClaim,
    rules: &[AcceptabilityRule],
    owners: &BTreeMap<ArgumentId, super::Role>,
) -> bool {
    match &claim.target {
        AttackTarget::RuleOf(action) => rules.iter().any(|r| &r.action == action),
        AttackTarget::Argument(id) => owners.contains_key(id),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::{Extension, Semantics};

    #[test]
    fn single_attack_on_vodka_rule() {
        let rules = [AcceptabilityRule::new("Show vodka ad", "Show university ad").with_id("a")];
        let attacks = [AttackClaim::on_rules_of("Alcoholic", "Show vodka ad")];
        let af = build_framework(&rules, &attacks).unwrap();
        let expected = ArgumentationFramework::new(["a", "Alcoholic"], [("Alcoholic", "a")]).unwrap();
        assert_eq!(af, expected);
        assert_eq!(af.maximal_ideal_extension(), Extension::from_iter(["Alcoholic"]));
    }

    #[test]
    fn second_example_exchange_reproduces_the_framework() {
        let rules = [AcceptabilityRule::wildcard("Show steak ad").with_id("a2")];
        let attacks = [
            AttackClaim::on_argument("b2", "a2"),
            AttackClaim::on_argument("c2", "b2"),
            AttackClaim::on_argument("d2", "c2"),
            AttackClaim::on_argument("e2", "d2"),
            AttackClaim::on_argument("b2", "d2"),
            AttackClaim::on_argument("d2", "e2"),
        ];
        let af = build_framework(&rules, &attacks).unwrap();
        let expected = ArgumentationFramework::new(
            ["a2", "b2", "c2", "d2", "e2"],
            [
                ("b2", "a2"),
                ("b2", "d2"),
                ("c2", "b2"),
                ("d2", "c2"),
                ("e2", "d2"),
                ("d2", "e2"),
            ],
        )
        .unwrap();
        assert_eq!(af, expected);
        assert_eq!(
            af.solve(Semantics::MaximalIdeal),
            vec![Extension::from_iter(["a2", "c2", "e2"])]
        );
    }

    #[test]
    fn unattacked_rules_stay_out() {
        let rules = [AcceptabilityRule::new("x", "y").with_id("r")];
        assert!(build_framework(&rules, &[]).unwrap().is_empty());
        assert!(build_framework(&[], &[]).unwrap().is_empty());
    }

    #[test]
    fn dangling_targets_are_errors() {
        let rules = [AcceptabilityRule::new("x", "y").with_id("r")];
        let err = build_framework(&rules, &[AttackClaim::on_argument("b", "nope")]).unwrap_err();
        assert!(matches!(err, ProtocolError::DanglingTarget { .. }));
        let err = build_framework(&rules, &[AttackClaim::on_rules_of("b", "z")]).unwrap_err();
        assert!(matches!(err, ProtocolError::DanglingTarget { .. }));
    }
}
