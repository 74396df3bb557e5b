use std::collections::{BTreeMap, BTreeSet};

use super::framework::{build_framework, is_resolvable};
use super::trace::{OutcomeStatus, Trace, TraceEvent, TraceHeader, TRACE_FORMAT};
use super::{
    AttackClaim, BeliefBase, MessageBody, Phase, ProtocolError, Role, SessionBus, SessionConfig, SessionState,
};
use crate::af::{ArgumentId, ArgumentationFramework, Extension};
use crate::agent::{decide, shared_utility, AcceptabilityRule, ActionId, DecisionOutcome, UtilityTable};
use crate::scenario::Scenario;

#[derive(Debug, Clone)]
struct Agent {
    beliefs: BeliefBase,
    repertoire: Vec<AttackClaim>,
    /// Counterpart rules this agent has been told about.
    known_counterpart_rules: Vec<AcceptabilityRule>,
}

/// Arguments disclosed or launched so far in the session. Only grows.
#[derive(Debug, Clone, Default)]
struct ArgumentPool {
    rules: Vec<AcceptabilityRule>,
    claims: Vec<AttackClaim>,
    owners: BTreeMap<ArgumentId, Role>,
}

impl ArgumentPool {
    fn disclose(&mut self, rules: &[AcceptabilityRule]) {
        for rule in rules {
            if !self.rules.contains(rule) {
                self.rules.push(rule.clone());
            }
            self.owners.entry(rule.argument_id()).or_insert(Role::Persuader);
        }
    }

    fn launch(&mut self, claims: &[AttackClaim], by: Role) {
        for claim in claims {
            self.claims.push(claim.clone());
            self.owners.entry(claim.label.clone()).or_insert(by);
        }
    }

    fn framework(&self) -> Result<ArgumentationFramework, ProtocolError> {
        build_framework(&self.rules, &self.claims)
    }

    /// Targets owned by `role` itself are never attacked by it.
    fn targets_only_own(&self, claim: &AttackClaim, role: Role) -> bool {
        match &claim.target {
            super::AttackTarget::Argument(id) => self.owners.get(id) == Some(&role),
            super::AttackTarget::RuleOf(action) => self
                .rules
                .iter()
                .filter(|r| &r.action == action)
                .all(|r| self.owners.get(&r.argument_id()) == Some(&role)),
        }
    }
}

/// Rule sets each side would hold once a resolved framework is accepted.
struct Retention<'a> {
    af: &'a ArgumentationFramework,
    extension: &'a Extension,
}

impl Retention<'_> {
    fn keeps(&self, rule: &AcceptabilityRule) -> bool {
        let id = rule.argument_id();
        !self.af.contains(&id) || self.extension.contains(&id)
    }

    fn retain(&self, rules: &[AcceptabilityRule]) -> Vec<AcceptabilityRule> {
        rules.iter().filter(|r| self.keeps(r)).cloned().collect()
    }
}

fn union(mut base: Vec<AcceptabilityRule>, extra: &[AcceptabilityRule]) -> Vec<AcceptabilityRule> {
    for r in extra {
        if !base.contains(r) {
            base.push(r.clone());
        }
    }
    base
}

/// How an argumentation phase ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyncOutcome {
    /// A framework was accepted and beliefs updated; the persuader proposes next.
    Accepted,
    Cancelled,
}

enum Review {
    Approved(ActionId),
    Disapproved,
}

/// One negotiation between a persuader and a mitigator.
#[derive(Debug, Clone)]
pub struct Session {
    config: SessionConfig,
    persuader: Agent,
    mitigator: Agent,
    pool: ArgumentPool,
    bus: SessionBus,
}

impl Session {
    pub fn new(scenario: &Scenario, config: SessionConfig) -> Result<Self, ProtocolError> {
        scenario.validate()?;
        let agent = |role: Role| -> Result<Agent, ProtocolError> {
            let decl = scenario.agent(role);
            Ok(Agent {
                beliefs: BeliefBase {
                    utilities: scenario.utility_table(role)?,
                    counterpart_utilities: None,
                    rules: union(Vec::new(), &decl.rules),
                    attacks: Vec::new(),
                },
                repertoire: decl.attacks.clone(),
                known_counterpart_rules: Vec::new(),
            })
        };
        Ok(Session {
            config,
            persuader: agent(Role::Persuader)?,
            mitigator: agent(Role::Mitigator)?,
            pool: ArgumentPool::default(),
            bus: SessionBus::new(),
        })
    }

    pub fn state(&self) -> &SessionState {
        self.bus.state()
    }

    pub fn config(&self) -> SessionConfig {
        self.config
    }

    pub fn beliefs(&self, role: Role) -> &BeliefBase {
        &self.agent(role).beliefs
    }

    fn agent(&self, role: Role) -> &Agent {
        match role {
            Role::Persuader => &self.persuader,
            Role::Mitigator => &self.mitigator,
        }
    }

    fn agent_mut(&mut self, role: Role) -> &mut Agent {
        match role {
            Role::Persuader => &mut self.persuader,
            Role::Mitigator => &mut self.mitigator,
        }
    }

    /// The persuader's table is the acting agent's; the mitigator's the other.
    fn tables(&self) -> (&UtilityTable, &UtilityTable) {
        (&self.persuader.beliefs.utilities, &self.mitigator.beliefs.utilities)
    }

    /// What the persuader should do, judged with `rules`.
    fn expected(&self, rules: &[AcceptabilityRule]) -> Result<DecisionOutcome, ProtocolError> {
        let (actor, other) = self.tables();
        Ok(decide(self.config.variant, actor, other, rules)?)
    }

    /// Each agent's expected action under its current belief base.
    pub fn expected_actions(&self) -> Result<(ActionId, ActionId), ProtocolError> {
        let p = self.expected(&self.persuader.beliefs.rules)?;
        let m = self.expected(&self.mitigator.beliefs.rules)?;
        Ok((primary(&p), primary(&m)))
    }

    fn send(&mut self, from: Role, body: MessageBody) -> Result<(), ProtocolError> {
        self.bus.deliver(from, from.counterpart(), body).map(|_| ())
    }

    pub fn exchange_utilities(&mut self) -> Result<(), ProtocolError> {
        let announced = self.persuader.beliefs.utilities.clone();
        self.send(
            Role::Persuader,
            MessageBody::AnnounceUtilities {
                utilities: announced.clone(),
            },
        )?;
        self.mitigator.beliefs.counterpart_utilities = Some(announced);

        let response = self.mitigator.beliefs.utilities.clone();
        self.send(
            Role::Mitigator,
            MessageBody::RespondUtilities {
                utilities: response.clone(),
            },
        )?;
        self.persuader.beliefs.counterpart_utilities = Some(response);

        let (a, b) = self.tables();
        let table = shared_utility(&[a.clone(), b.clone()])?;
        self.bus.record(TraceEvent::SharedUtility {
            operator: "sum".to_owned(),
            table,
        });
        Ok(())
    }

    fn decide_for(&mut self, role: Role) -> Result<ActionId, ProtocolError> {
        let outcome = self.expected(&self.agent(role).beliefs.rules)?;
        let action = primary(&outcome);
        self.bus.record(TraceEvent::Decision {
            agent: role,
            variant: self.config.variant,
            outcome,
        });
        Ok(action)
    }

    fn propose(&mut self) -> Result<ActionId, ProtocolError> {
        let action = self.decide_for(Role::Persuader)?;
        self.send(Role::Persuader, MessageBody::ProposeAction { action: action.clone() })?;
        Ok(action)
    }

    fn review(&mut self, proposed: ActionId) -> Result<Review, ProtocolError> {
        let expected = self.decide_for(Role::Mitigator)?;
        if expected == proposed {
            self.send(
                Role::Mitigator,
                MessageBody::Approve {
                    action: proposed.clone(),
                },
            )?;
            Ok(Review::Approved(proposed))
        } else {
            self.send(Role::Mitigator, MessageBody::Disapprove { proposed, expected })?;
            Ok(Review::Disapproved)
        }
    }

    fn cancel(&mut self, by: Role, reason: &str) -> Result<(), ProtocolError> {
        self.send(
            by,
            MessageBody::CancelSession {
                reason: reason.to_owned(),
            },
        )?;
        self.bus.record(TraceEvent::Outcome {
            status: OutcomeStatus::Cancelled,
            action: None,
            rounds: self.bus.round(),
            reason: Some(reason.to_owned()),
        });
        Ok(())
    }

    /// Claims `role` would launch now: repertoire entries not yet launched
    /// whose target is in the pool and belongs to the counterpart.
    fn launchable(&self, role: Role) -> Vec<AttackClaim> {
        let mut out: Vec<AttackClaim> = Vec::new();
        for claim in &self.agent(role).repertoire {
            if self.pool.claims.contains(claim) || out.contains(claim) {
                continue;
            }
            if is_resolvable(claim, &self.pool.rules, &self.pool.owners) && !self.pool.targets_only_own(claim, role) {
                out.push(claim.clone());
            }
        }
        out
    }

    /// Rule sets after accepting `extension`, as `perspective` predicts them:
    /// (persuader's, mitigator's). The mitigator adopts the persuader's
    /// surviving rules.
    fn predicted_rules(
        &self,
        perspective: Role,
        keep: &Retention<'_>,
    ) -> (Vec<AcceptabilityRule>, Vec<AcceptabilityRule>) {
        let me = self.agent(perspective);
        let (persuader_known, mitigator_known) = match perspective {
            Role::Persuader => (&me.beliefs.rules, &me.known_counterpart_rules),
            Role::Mitigator => (&me.known_counterpart_rules, &me.beliefs.rules),
        };
        let persuader = keep.retain(persuader_known);
        let mitigator = union(keep.retain(mitigator_known), &persuader);
        (persuader, mitigator)
    }

    fn can_accept(&self, role: Role, keep: &Retention<'_>) -> Result<bool, ProtocolError> {
        let (p_rules, m_rules) = self.predicted_rules(role, keep);
        Ok(self.expected(&p_rules)?.chosen == self.expected(&m_rules)?.chosen)
    }

    fn apply(&mut self, keep: &Retention<'_>) -> (Vec<ArgumentId>, Vec<ArgumentId>) {
        let mut retracted = BTreeSet::new();
        let mut adopted = BTreeSet::new();

        let p_before = self.persuader.beliefs.rules.clone();
        let p_after = keep.retain(&p_before);
        retracted.extend(
            p_before
                .iter()
                .filter(|r| !p_after.contains(r))
                .map(|r| r.argument_id()),
        );

        let m_before = self.mitigator.beliefs.rules.clone();
        let m_kept = keep.retain(&m_before);
        retracted.extend(m_before.iter().filter(|r| !m_kept.contains(r)).map(|r| r.argument_id()));
        let disclosed = keep.retain(&self.mitigator.known_counterpart_rules);
        adopted.extend(
            disclosed
                .iter()
                .filter(|r| !m_kept.contains(r))
                .map(|r| r.argument_id()),
        );
        let m_after = union(m_kept, &disclosed);

        self.persuader.beliefs.rules = p_after;
        self.mitigator.beliefs.rules = m_after;
        self.mitigator.known_counterpart_rules = disclosed;

        let surviving: Vec<AttackClaim> = self
            .pool
            .claims
            .iter()
            .filter(|c| keep.extension.contains(&c.label))
            .cloned()
            .collect();
        self.persuader.beliefs.attacks = surviving.clone();
        self.mitigator.beliefs.attacks = surviving;

        (retracted.into_iter().collect(), adopted.into_iter().collect())
    }

    fn snapshot(&mut self, af: &ArgumentationFramework) {
        self.bus.record(TraceEvent::Framework {
            round: self.bus.round(),
            arguments: af.arguments().to_vec(),
            attacks: af.attacks().collect(),
        });
    }

    /// The argumentation loop. The mitigator asks for the persuader's rules,
    /// then the agents alternate, starting with the mitigator: each turn an
    /// agent launches every applicable attack from its repertoire, or, if it
    /// has none, resolves the framework and either accepts it (when both
    /// sides' expected actions would then coincide) or cancels.
    ///
    /// Every mitigator turn opens a new round; needing more than
    /// `max_rounds` rounds cancels the session.
    pub fn synchronize_beliefs(&mut self) -> Result<SyncOutcome, ProtocolError> {
        if self.bus.phase() != Phase::Arguing {
            return Err(ProtocolError::WrongPhase {
                expected: Phase::Arguing,
                actual: self.bus.phase(),
            });
        }
        self.send(Role::Mitigator, MessageBody::RequestRules {})?;
        let rules = self.persuader.beliefs.rules.clone();
        self.send(Role::Persuader, MessageBody::SendRules { rules: rules.clone() })?;
        self.mitigator.known_counterpart_rules = rules.clone();
        self.pool.disclose(&rules);

        let mut turn = Role::Mitigator;
        loop {
            if turn == Role::Mitigator {
                if self.bus.round() >= self.config.max_rounds {
                    self.cancel(Role::Mitigator, "argumentation round limit reached")?;
                    return Ok(SyncOutcome::Cancelled);
                }
                self.bus.next_round();
            }

            let claims = self.launchable(turn);
            if !claims.is_empty() {
                self.pool.launch(&claims, turn);
                for role in [Role::Persuader, Role::Mitigator] {
                    let attacks = &mut self.agent_mut(role).beliefs.attacks;
                    attacks.extend(claims.iter().cloned());
                }
                self.send(turn, MessageBody::SendAttacks { attacks: claims })?;
                let af = self.pool.framework()?;
                self.snapshot(&af);
                turn = turn.counterpart();
                continue;
            }

            let af = self.pool.framework()?;
            let extension = self.config.semantics.resolve(&af);
            let keep = Retention {
                af: &af,
                extension: &extension,
            };
            if !self.can_accept(turn, &keep)? {
                self.cancel(turn, "resolved framework leaves the expected actions inconsistent")?;
                return Ok(SyncOutcome::Cancelled);
            }
            self.send(
                turn,
                MessageBody::AcceptAf {
                    semantics: self.config.semantics,
                    extension: extension.clone(),
                },
            )?;
            let (retracted, adopted) = self.apply(&keep);
            self.bus.record(TraceEvent::Resolution {
                round: self.bus.round(),
                semantics: self.config.semantics,
                extension,
                retracted,
                adopted,
            });
            return Ok(SyncOutcome::Accepted);
        }
    }

    /// Drives the session to agreement or cancellation.
    pub fn run(&mut self) -> Result<(), ProtocolError> {
        if self.bus.phase() == Phase::Init {
            self.exchange_utilities()?;
        }
        loop {
            let proposal = self.propose()?;
            match self.review(proposal)? {
                Review::Approved(action) => {
                    self.send(Role::Persuader, MessageBody::ExecuteAction { action: action.clone() })?;
                    self.bus.record(TraceEvent::Outcome {
                        status: OutcomeStatus::Agreed,
                        action: Some(action),
                        rounds: self.bus.round(),
                        reason: None,
                    });
                    return Ok(());
                }
                Review::Disapproved => {
                    if self.bus.round() >= self.config.max_rounds {
                        self.cancel(Role::Mitigator, "proposal rejected and no argumentation rounds left")?;
                        return Ok(());
                    }
                    if self.synchronize_beliefs()? == SyncOutcome::Cancelled {
                        return Ok(());
                    }
                }
            }
        }
    }

    pub fn into_events(self) -> Vec<TraceEvent> {
        self.bus.into_events()
    }
}

fn primary(outcome: &DecisionOutcome) -> ActionId {
    outcome
        .action()
        .cloned()
        .expect("scenario profiles always name the persuader's action")
}

/// Runs a complete negotiation and returns its trace.
pub fn run_session(scenario: &Scenario, config: SessionConfig) -> Result<Trace, ProtocolError> {
    let mut session = Session::new(scenario, config)?;
    session.run()?;
    Ok(Trace {
        header: TraceHeader {
            trace_format: TRACE_FORMAT,
            engine: crate::ENGINE_VERSION.to_owned(),
            scenario: scenario.name.clone(),
            scenario_hash: scenario.content_hash(),
            config,
        },
        events: session.into_events(),
    })
}
