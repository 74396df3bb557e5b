use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{AcceptabilityRule, ActionId, AgentError, JointActionProfile, Utility, UtilityTable};

/// Lazy agents only look at their own optimum and the shared optimum; full
/// agents also walk the profiles in between.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    Lazy,
    Full,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Lazy => "lazy",
            Variant::Full => "full",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lazy" => Ok(Variant::Lazy),
            "full" => Ok(Variant::Full),
            other => Err(format!("unknown variant `{other}` (expected lazy or full)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rationale {
    NoConflictOwnMax,
    ConflictAcceptableOwnMax,
    ConflictSharedMax,
    /// Full variant: a non-maximal own profile nobody objects to.
    NoConflictNextBest,
    /// Full variant: a non-maximal own profile whose conflict is acceptable.
    ConflictAcceptableNextBest,
    Cancelled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionOutcome {
    pub chosen: JointActionProfile,
    pub rationale: Rationale,
    pub considered: Vec<JointActionProfile>,
}

impl DecisionOutcome {
    pub fn action(&self) -> Option<&ActionId> {
        self.chosen.primary_action()
    }
}

/// Every profile attaining the table's maximum, in declaration order.
pub fn argmax_profiles(table: &UtilityTable) -> Result<Vec<JointActionProfile>, AgentError> {
    let best = table
        .entries()
        .iter()
        .map(|e| e.utility)
        .max()
        .ok_or_else(|| AgentError::EmptyTable(table.owner.clone()))?;
    Ok(table
        .entries()
        .iter()
        .filter(|e| e.utility == best)
        .map(|e| e.profile.clone())
        .collect())
}

/// Conflict of interests: true iff no choice of one maximizer per family has
/// a non-empty common action set.
pub fn detect_conflict(families: &[Vec<JointActionProfile>]) -> Result<bool, AgentError> {
    if let Some(i) = families.iter().position(Vec::is_empty) {
        return Err(AgentError::EmptyFamily(i));
    }
    fn common_choice<'a>(families: &'a [Vec<JointActionProfile>], acc: Option<BTreeSet<&'a ActionId>>) -> bool {
        let Some((family, rest)) = families.split_first() else {
            return acc.is_some_and(|s| !s.is_empty());
        };
        family.iter().any(|profile| {
            let actions = profile.actions();
            let next = match &acc {
                None => actions,
                Some(prev) => prev.intersection(&actions).copied().collect(),
            };
            !next.is_empty() && common_choice(rest, Some(next))
        })
    }
    Ok(!common_choice(families, None))
}

/// True iff some rule permits one of `profile`'s actions given one of the
/// actions the counterpart prefers.
pub fn is_profile_acceptable(
    profile: &JointActionProfile,
    counterpart_best: &JointActionProfile,
    rules: &[AcceptabilityRule],
) -> bool {
    let preferred = counterpart_best.actions();
    rules.iter().any(|rule| {
        profile.actions().into_iter().any(|action| {
            if preferred.is_empty() {
                rule.action == *action && rule.counterpart_preference == super::Preference::Any
            } else {
                preferred.iter().any(|p| rule.matches(action, p))
            }
        })
    })
}

/// Pointwise sum of the tables, in the first table's declaration order.
pub fn shared_utility(tables: &[UtilityTable]) -> Result<UtilityTable, AgentError> {
    let (first, rest) = tables.split_first().ok_or(AgentError::NoTables)?;
    let space: BTreeSet<&JointActionProfile> = first.profiles().collect();
    for t in rest {
        if t.profiles().collect::<BTreeSet<_>>() != space {
            return Err(AgentError::MismatchedProfiles {
                left: first.owner.clone(),
                right: t.owner.clone(),
            });
        }
    }
    let owner = if rest.is_empty() {
        first.owner.clone()
    } else {
        "shared".to_owned()
    };
    UtilityTable::new(
        owner,
        first.entries().iter().map(|e| {
            let total = rest.iter().fold(e.utility, |acc, t| {
                acc + t.get(&e.profile).expect("checked profile space")
            });
            (e.profile.clone(), total)
        }),
    )
}

struct Context {
    own_max: Vec<JointActionProfile>,
    other_max: Vec<JointActionProfile>,
    shared_best: JointActionProfile,
}

impl Context {
    fn new(own: &UtilityTable, other: &UtilityTable) -> Result<Self, AgentError> {
        let own_max = argmax_profiles(own)?;
        let other_max = argmax_profiles(other)?;
        let shared = shared_utility(&[own.clone(), other.clone()])?;
        let shared_best = argmax_profiles(&shared)?.swap_remove(0);
        Ok(Context {
            own_max,
            other_max,
            shared_best,
        })
    }

    fn conflicts(&self, profile: &JointActionProfile) -> bool {
        detect_conflict(&[vec![profile.clone()], self.other_max.clone()]).expect("families are non-empty")
    }

    /// Ties resolve to the first profile in declaration order.
    fn counterpart_best(&self) -> &JointActionProfile {
        &self.other_max[0]
    }
}

/// The base algorithm: own optimum if unopposed or acceptably opposed,
/// otherwise the shared optimum.
pub fn decide_lazy(
    own: &UtilityTable,
    other: &UtilityTable,
    rules: &[AcceptabilityRule],
) -> Result<DecisionOutcome, AgentError> {
    let ctx = Context::new(own, other)?;
    let mut considered = ctx.own_max.clone();

    if !detect_conflict(&[ctx.own_max.clone(), ctx.other_max.clone()])? {
        let chosen = ctx
            .own_max
            .iter()
            .find(|p| !ctx.conflicts(p))
            .expect("no conflict implies a shared maximizer")
            .clone();
        return Ok(DecisionOutcome {
            chosen,
            rationale: Rationale::NoConflictOwnMax,
            considered,
        });
    }

    if let Some(p) = ctx
        .own_max
        .iter()
        .find(|p| is_profile_acceptable(p, ctx.counterpart_best(), rules))
    {
        return Ok(DecisionOutcome {
            chosen: p.clone(),
            rationale: Rationale::ConflictAcceptableOwnMax,
            considered,
        });
    }

    if !considered.contains(&ctx.shared_best) {
        considered.push(ctx.shared_best.clone());
    }
    Ok(DecisionOutcome {
        chosen: ctx.shared_best,
        rationale: Rationale::ConflictSharedMax,
        considered,
    })
}

/// Walks own-utility tiers from the top and takes the first profile that is
/// unopposed or acceptably opposed. Tiers worth less to this agent than the
/// shared optimum are never entered; the shared optimum is the fallback.
pub fn decide_full(
    own: &UtilityTable,
    other: &UtilityTable,
    rules: &[AcceptabilityRule],
) -> Result<DecisionOutcome, AgentError> {
    let ctx = Context::new(own, other)?;
    let floor = own.get(&ctx.shared_best).expect("shared table spans own profiles");

    let mut levels: Vec<Utility> = own.entries().iter().map(|e| e.utility).collect();
    levels.sort_by(|a, b| b.cmp(a));
    levels.dedup();

    let mut considered = Vec::new();
    for (depth, level) in levels.into_iter().enumerate() {
        if level < floor {
            break;
        }
        let tier: Vec<&JointActionProfile> = own
            .entries()
            .iter()
            .filter(|e| e.utility == level)
            .map(|e| &e.profile)
            .collect();
        considered.extend(tier.iter().map(|p| (*p).clone()));
        let top = depth == 0;

        if let Some(p) = tier.iter().find(|p| !ctx.conflicts(p)) {
            return Ok(DecisionOutcome {
                chosen: (*p).clone(),
                rationale: if top {
                    Rationale::NoConflictOwnMax
                } else {
                    Rationale::NoConflictNextBest
                },
                considered,
            });
        }
        if let Some(p) = tier
            .iter()
            .find(|p| is_profile_acceptable(p, ctx.counterpart_best(), rules))
        {
            return Ok(DecisionOutcome {
                chosen: (*p).clone(),
                rationale: if top {
                    Rationale::ConflictAcceptableOwnMax
                } else {
                    Rationale::ConflictAcceptableNextBest
                },
                considered,
            });
        }
    }

    if !considered.contains(&ctx.shared_best) {
        considered.push(ctx.shared_best.clone());
    }
    Ok(DecisionOutcome {
        chosen: ctx.shared_best,
        rationale: Rationale::ConflictSharedMax,
        considered,
    })
}

pub fn decide(
    variant: Variant,
    own: &UtilityTable,
    other: &UtilityTable,
    rules: &[AcceptabilityRule],
) -> Result<DecisionOutcome, AgentError> {
    match variant {
        Variant::Lazy => decide_lazy(own, other, rules),
        Variant::Full => decide_full(own, other, rules),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const VODKA: &str = "Show vodka ad";
    const UNI: &str = "Show university ad";
    const COLLEGE: &str = "Show community college ad";

    fn revenue() -> UtilityTable {
        UtilityTable::single_actor("persuader", [(VODKA, 3.0), (UNI, 1.0)]).unwrap()
    }

    fn benefit() -> UtilityTable {
        UtilityTable::single_actor("mitigator", [(VODKA, -100.0), (UNI, 10.0)]).unwrap()
    }

    fn basic_rules() -> Vec<AcceptabilityRule> {
        vec![AcceptabilityRule::new(UNI, COLLEGE)]
    }

    fn p(a: &str) -> JointActionProfile {
        JointActionProfile::single_actor(a)
    }

    #[test]
    fn argmax_cases() {
        assert_eq!(argmax_profiles(&revenue()).unwrap(), [p(VODKA)]);
        assert_eq!(argmax_profiles(&benefit()).unwrap(), [p(UNI)]);
        let tie = UtilityTable::single_actor("t", [("b", 2.0), ("a", 2.0), ("c", 1.0)]).unwrap();
        assert_eq!(argmax_profiles(&tie).unwrap(), [p("b"), p("a")]);
        let empty = UtilityTable::single_actor("e", []).unwrap();
        assert_eq!(argmax_profiles(&empty), Err(AgentError::EmptyTable("e".into())));
    }

    #[test]
    fn conflict_by_exhaustive_pairing() {
        assert!(detect_conflict(&[vec![p(VODKA)], vec![p(UNI)]]).unwrap());
        assert!(!detect_conflict(&[vec![p(UNI)], vec![p(UNI)]]).unwrap());
        assert!(!detect_conflict(&[vec![p("A"), p("B")], vec![p("B"), p("C")]]).unwrap());
        assert_eq!(
            detect_conflict(&[vec![p("A")], vec![]]),
            Err(AgentError::EmptyFamily(1))
        );
    }

    #[test]
    fn conflict_over_action_sets() {
        let set = |xs: &[&str]| {
            JointActionProfile::new(vec![xs.iter().map(|x| ActionId::from(*x)).collect(), BTreeSet::new()])
        };
        // three agents, common action y
        let fams = [
            vec![set(&["x", "y"])],
            vec![set(&["y", "z"])],
            vec![set(&["w"]), set(&["y"])],
        ];
        assert!(!detect_conflict(&fams).unwrap());
        let fams = [
            vec![set(&["x", "y"])],
            vec![set(&["y", "z"])],
            vec![set(&["x"]), set(&["z"])],
        ];
        assert!(detect_conflict(&fams).unwrap());
    }

    #[test]
    fn acceptability_cases() {
        assert!(is_profile_acceptable(&p(UNI), &p(COLLEGE), &basic_rules()));
        assert!(!is_profile_acceptable(&p(UNI), &p(COLLEGE), &[]));
        let steak = [AcceptabilityRule::wildcard("Show steak ad")];
        assert!(is_profile_acceptable(&p("Show steak ad"), &p("Show fruit ad"), &steak));
        assert!(is_profile_acceptable(&p("Show steak ad"), &p("Show steak ad"), &steak));
        assert!(!is_profile_acceptable(&p(VODKA), &p(UNI), &basic_rules()));
    }

    #[test]
    fn shared_sum() {
        let shared = shared_utility(&[revenue(), benefit()]).unwrap();
        assert_eq!(shared.get(&p(VODKA)), Some(Utility::from(-97.0)));
        assert_eq!(shared.get(&p(UNI)), Some(Utility::from(11.0)));

        let zero = UtilityTable::single_actor("z", [(UNI, 0.0), (VODKA, 0.0)]).unwrap();
        let same = shared_utility(&[revenue(), zero]).unwrap();
        assert_eq!(same.entries(), revenue().entries());

        assert_eq!(shared_utility(&[revenue()]).unwrap(), revenue());

        let other = UtilityTable::single_actor("o", [(UNI, 0.0)]).unwrap();
        assert!(matches!(
            shared_utility(&[revenue(), other]),
            Err(AgentError::MismatchedProfiles { .. })
        ));
        assert_eq!(shared_utility(&[]), Err(AgentError::NoTables));
    }

    #[test]
    fn lazy_basic_scenario_falls_back_to_shared() {
        let out = decide_lazy(&revenue(), &benefit(), &basic_rules()).unwrap();
        assert_eq!(out.chosen, p(UNI));
        assert_eq!(out.rationale, Rationale::ConflictSharedMax);
        assert_eq!(out.considered, [p(VODKA), p(UNI)]);
    }

    #[test]
    fn lazy_without_conflict() {
        let out = decide_lazy(&benefit(), &benefit(), &[]).unwrap();
        assert_eq!(out.chosen, p(UNI));
        assert_eq!(out.rationale, Rationale::NoConflictOwnMax);
    }

    #[test]
    fn lazy_with_persuader_vodka_rule() {
        let rules = [AcceptabilityRule::new(VODKA, UNI)];
        let out = decide_lazy(&revenue(), &benefit(), &rules).unwrap();
        assert_eq!(out.chosen, p(VODKA));
        assert_eq!(out.rationale, Rationale::ConflictAcceptableOwnMax);
    }

    #[test]
    fn lazy_prefers_the_unopposed_tied_maximizer() {
        let own = UtilityTable::single_actor("o", [("a", 5.0), ("b", 5.0)]).unwrap();
        let other = UtilityTable::single_actor("x", [("a", 0.0), ("b", 1.0)]).unwrap();
        let out = decide_lazy(&own, &other, &[]).unwrap();
        assert_eq!(out.chosen, p("b"));
        assert_eq!(out.rationale, Rationale::NoConflictOwnMax);
    }

    #[test]
    fn full_finds_second_best_unopposed() {
        let own = UtilityTable::single_actor("o", [("x", 5.0), ("y", 4.0), ("z", 1.0)]).unwrap();
        let other = UtilityTable::single_actor("m", [("y", 9.0), ("x", 0.0), ("z", 0.0)]).unwrap();
        let out = decide_full(&own, &other, &[]).unwrap();
        assert_eq!(out.chosen, p("y"));
        assert_eq!(out.rationale, Rationale::NoConflictNextBest);
        assert_eq!(out.considered, [p("x"), p("y")]);
    }

    #[test]
    fn full_beats_lazy_between_the_poles() {
        // shared optimum is z (own 1); full finds acceptable y (own 4) first
        let own = UtilityTable::single_actor("o", [("x", 5.0), ("y", 4.0), ("z", 1.0)]).unwrap();
        let other = UtilityTable::single_actor("m", [("x", -10.0), ("y", -2.0), ("z", 9.0)]).unwrap();
        let rules = [AcceptabilityRule::new("y", "z")];
        let lazy = decide_lazy(&own, &other, &rules).unwrap();
        let full = decide_full(&own, &other, &rules).unwrap();
        assert_eq!(lazy.chosen, p("z"));
        assert_eq!(full.chosen, p("y"));
        assert_eq!(full.rationale, Rationale::ConflictAcceptableNextBest);
    }

    #[test]
    fn full_matches_lazy_on_basic_tables() {
        let lazy = decide_lazy(&revenue(), &benefit(), &basic_rules()).unwrap();
        let full = decide_full(&revenue(), &benefit(), &basic_rules()).unwrap();
        assert_eq!(full.chosen, lazy.chosen);

        let lazy = decide_lazy(&benefit(), &benefit(), &[]).unwrap();
        let full = decide_full(&benefit(), &benefit(), &[]).unwrap();
        assert_eq!(full, lazy);
    }

    #[test]
    fn sentinel_vetoes_shared_choice() {
        let own = UtilityTable::single_actor("o", [("x", 5.0), ("y", 1.0)]).unwrap();
        let other = UtilityTable::new("m", [(p("x"), Utility::NegInfinity), (p("y"), Utility::from(0.0))]).unwrap();
        let out = decide_lazy(&own, &other, &[]).unwrap();
        assert_eq!(out.chosen, p("y"));
    }
}
