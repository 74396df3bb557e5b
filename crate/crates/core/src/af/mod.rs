//! Dung-style abstract argumentation frameworks.
//!
//! A framework is a finite argument set with a binary attack relation. Sets
//! of arguments are exchanged with callers as `BTreeSet<ArgumentId>`;
//! internally every argument is mapped to a dense index and sets become
//! bitsets.

mod bits;
mod oracle;
mod semantics;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub(crate) use bits::ArgSet;
pub use oracle::{oracle_extensions, ORACLE_MAX_ARGUMENTS};
pub use semantics::solve_batch;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AfError {
    #[error("argument identifiers must be non-empty")]
    EmptyArgumentId,
    #[error("argument `{0}` is not part of the framework")]
    UnknownArgument(ArgumentId),
    #[error("unknown semantics `{0}` (expected complete, preferred, grounded or maximal_ideal)")]
    UnknownSemantics(String),
    #[error("framework has {size} arguments; the oracle enumerates at most {max}")]
    TooLarge { size: usize, max: usize },
}

/// Label of an abstract argument.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArgumentId(String);

impl ArgumentId {
    pub fn new(id: impl Into<String>) -> Result<Self, AfError> {
        let id = id.into();
        if id.is_empty() {
            return Err(AfError::EmptyArgumentId);
        }
        Ok(ArgumentId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for ArgumentId {
    fn from(s: &str) -> Self {
        ArgumentId(s.to_owned())
    }
}

impl From<String> for ArgumentId {
    fn from(s: String) -> Self {
        ArgumentId(s)
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `attacker` attacks `target`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Attack {
    pub attacker: ArgumentId,
    pub target: ArgumentId,
}

impl Attack {
    pub fn new(attacker: impl Into<ArgumentId>, target: impl Into<ArgumentId>) -> Self {
        Attack {
            attacker: attacker.into(),
            target: target.into(),
        }
    }
}

/// A set of arguments selected by some semantics.
///
/// Ordering is lexicographic over the sorted member ids, which is the
/// canonical order used for every list of extensions this crate returns.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Extension(BTreeSet<ArgumentId>);

impl Extension {
    pub fn new(members: BTreeSet<ArgumentId>) -> Self {
        Extension(members)
    }

    pub fn members(&self) -> &BTreeSet<ArgumentId> {
        &self.0
    }

    pub fn into_members(self) -> BTreeSet<ArgumentId> {
        self.0
    }

    pub fn contains(&self, id: &ArgumentId) -> bool {
        self.0.contains(id)
    }

    pub fn is_subset(&self, other: &Extension) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_vec(&self) -> Vec<String> {
        self.0.iter().map(|a| a.0.clone()).collect()
    }
}

impl<A: Into<ArgumentId>> FromIterator<A> for Extension {
    fn from_iter<I: IntoIterator<Item = A>>(iter: I) -> Self {
        Extension(iter.into_iter().map(Into::into).collect())
    }
}

/// Renders as `{a1,c1}`.
impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(a.as_str())?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Semantics {
    Complete,
    Preferred,
    Grounded,
    MaximalIdeal,
}

impl Semantics {
    pub const ALL: [Semantics; 4] = [
        Semantics::Complete,
        Semantics::Preferred,
        Semantics::Grounded,
        Semantics::MaximalIdeal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Semantics::Complete => "complete",
            Semantics::Preferred => "preferred",
            Semantics::Grounded => "grounded",
            Semantics::MaximalIdeal => "maximal_ideal",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semantics {
    type Err = AfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "complete" => Ok(Semantics::Complete),
            "preferred" => Ok(Semantics::Preferred),
            "grounded" => Ok(Semantics::Grounded),
            "maximal_ideal" | "maximal-ideal" | "ideal" => Ok(Semantics::MaximalIdeal),
            other => Err(AfError::UnknownSemantics(other.to_owned())),
        }
    }
}

/// Dung's ⟨A, R⟩.
///
/// Arguments are kept sorted, so two frameworks built from the same sets
/// compare equal regardless of input order. Duplicate arguments and attacks
/// collapse. Self-attacks are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgumentationFramework {
    arguments: Vec<ArgumentId>,
    index: BTreeMap<ArgumentId, usize>,
    attacks: BTreeSet<(usize, usize)>,
    attackers: Vec<ArgSet>,
    targets: Vec<ArgSet>,
}

impl Default for ArgumentationFramework {
    fn default() -> Self {
        Self::empty()
    }
}

impl ArgumentationFramework {
    pub fn empty() -> Self {
        ArgumentationFramework {
            arguments: Vec::new(),
            index: BTreeMap::new(),
            attacks: BTreeSet::new(),
            attackers: Vec::new(),
            targets: Vec::new(),
        }
    }

    pub fn new<A, I, J, X, Y>(arguments: I, attacks: J) -> Result<Self, AfError>
    where
        A: Into<ArgumentId>,
        I: IntoIterator<Item = A>,
        X: Into<ArgumentId>,
        Y: Into<ArgumentId>,
        J: IntoIterator<Item = (X, Y)>,
    {
        let mut sorted = BTreeSet::new();
        for a in arguments {
            let a = a.into();
            if a.as_str().is_empty() {
                return Err(AfError::EmptyArgumentId);
            }
            sorted.insert(a);
        }
        let arguments: Vec<ArgumentId> = sorted.into_iter().collect();
        let index: BTreeMap<ArgumentId, usize> = arguments.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();

        let n = arguments.len();
        let mut edges = BTreeSet::new();
        let mut attackers = vec![ArgSet::empty(n); n];
        let mut targets = vec![ArgSet::empty(n); n];
        for (x, y) in attacks {
            let (x, y) = (x.into(), y.into());
            let from = *index.get(&x).ok_or(AfError::UnknownArgument(x))?;
            let to = *index.get(&y).ok_or(AfError::UnknownArgument(y))?;
            if edges.insert((from, to)) {
                attackers[to].insert(from);
                targets[from].insert(to);
            }
        }

        Ok(ArgumentationFramework {
            arguments,
            index,
            attacks: edges,
            attackers,
            targets,
        })
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    pub fn arguments(&self) -> &[ArgumentId] {
        &self.arguments
    }

    pub fn contains(&self, id: &ArgumentId) -> bool {
        self.index.contains_key(id)
    }

    pub fn attacks(&self) -> impl Iterator<Item = Attack> + '_ {
        self.attacks.iter().map(|&(x, y)| Attack {
            attacker: self.arguments[x].clone(),
            target: self.arguments[y].clone(),
        })
    }

    pub fn attack_count(&self) -> usize {
        self.attacks.len()
    }

    /// Attackers of `id`, sorted.
    pub fn attackers_of(&self, id: &ArgumentId) -> Result<Vec<ArgumentId>, AfError> {
        let i = self.idx(id)?;
        Ok(self.attackers[i].iter().map(|j| self.arguments[j].clone()).collect())
    }

    pub fn is_conflict_free(&self, set: &BTreeSet<ArgumentId>) -> Result<bool, AfError> {
        let s = self.to_bits(set)?;
        Ok(self.conflict_free(&s))
    }

    /// Whether every attacker of `arg` is attacked by some member of `set`.
    pub fn is_acceptable(&self, set: &BTreeSet<ArgumentId>, arg: &ArgumentId) -> Result<bool, AfError> {
        let s = self.to_bits(set)?;
        let a = self.idx(arg)?;
        Ok(self.attackers[a].is_subset(&self.range(&s)))
    }

    pub fn is_admissible(&self, set: &BTreeSet<ArgumentId>) -> Result<bool, AfError> {
        let s = self.to_bits(set)?;
        Ok(self.admissible(&s))
    }

    /// Dung's characteristic function: the arguments acceptable w.r.t. `set`.
    pub fn characteristic_function(&self, set: &BTreeSet<ArgumentId>) -> Result<BTreeSet<ArgumentId>, AfError> {
        let s = self.to_bits(set)?;
        Ok(self.extension_of(&self.defended(&s)).into_members())
    }

    pub(crate) fn idx(&self, id: &ArgumentId) -> Result<usize, AfError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| AfError::UnknownArgument(id.clone()))
    }

    pub(crate) fn to_bits(&self, set: &BTreeSet<ArgumentId>) -> Result<ArgSet, AfError> {
        let mut bits = ArgSet::empty(self.len());
        for a in set {
            bits.insert(self.idx(a)?);
        }
        Ok(bits)
    }

    pub(crate) fn extension_of(&self, bits: &ArgSet) -> Extension {
        Extension(bits.iter().map(|i| self.arguments[i].clone()).collect())
    }

    pub(crate) fn attackers_bits(&self, i: usize) -> &ArgSet {
        &self.attackers[i]
    }

    pub(crate) fn targets_bits(&self, i: usize) -> &ArgSet {
        &self.targets[i]
    }

    /// Everything attacked by some member of `s`.
    pub(crate) fn range(&self, s: &ArgSet) -> ArgSet {
        let mut out = ArgSet::empty(self.len());
        for i in s.iter() {
            out.union_with(&self.targets[i]);
        }
        out
    }

    pub(crate) fn conflict_free(&self, s: &ArgSet) -> bool {
        s.iter().all(|i| self.targets[i].is_disjoint(s))
    }

    pub(crate) fn defended(&self, s: &ArgSet) -> ArgSet {
        let range = self.range(s);
        let mut out = ArgSet::empty(self.len());
        for i in 0..self.len() {
            if self.attackers[i].is_subset(&range) {
                out.insert(i);
            }
        }
        out
    }

    pub(crate) fn admissible(&self, s: &ArgSet) -> bool {
        self.conflict_free(s) && s.is_subset(&self.defended(s))
    }

    /// Raw attack list in index space, for the oracle.
    pub(crate) fn index_attacks(&self) -> Vec<(usize, usize)> {
        self.attacks.iter().copied().collect()
    }
}

/// On-disk and on-wire framework description: an argument list plus
/// `[attacker, target]` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameworkSpec {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub arguments: Vec<String>,
    #[serde(default)]
    pub attacks: Vec<(String, String)>,
}

fn default_schema() -> u32 {
    1
}

impl FrameworkSpec {
    pub fn build(&self) -> Result<ArgumentationFramework, AfError> {
        ArgumentationFramework::new(
            self.arguments.iter().map(String::as_str),
            self.attacks.iter().map(|(x, y)| (x.as_str(), y.as_str())),
        )
    }
}

impl From<&ArgumentationFramework> for FrameworkSpec {
    fn from(af: &ArgumentationFramework) -> Self {
        FrameworkSpec {
            schema: 1,
            arguments: af.arguments().iter().map(|a| a.as_str().to_owned()).collect(),
            attacks: af.attacks().map(|at| (at.attacker.0, at.target.0)).collect(),
        }
    }
}
