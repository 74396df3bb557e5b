//! Brute-force reference semantics.
//!
//! Enumerates every subset as a `u32` mask and applies the textbook
//! definitions literally, without the bitset machinery or the search
//! pruning used by the production solvers.

use super::{AfError, ArgumentationFramework, Extension, Semantics};
use crate::Execution;

pub const ORACLE_MAX_ARGUMENTS: usize = 20;

struct Brute {
    n: usize,
    attacks: Vec<(usize, usize)>,
}

impl Brute {
    fn member(mask: u32, i: usize) -> bool {
        mask & (1 << i) != 0
    }

    fn conflict_free(&self, s: u32) -> bool {
        !self
            .attacks
            .iter()
            .any(|&(x, y)| Self::member(s, x) && Self::member(s, y))
    }

    fn acceptable(&self, s: u32, a: usize) -> bool {
        self.attacks
            .iter()
            .filter(|&&(_, y)| y == a)
            .all(|&(b, _)| self.attacks.iter().any(|&(c, y)| y == b && Self::member(s, c)))
    }

    fn admissible(&self, s: u32) -> bool {
        self.conflict_free(s)
            && (0..self.n)
                .filter(|&a| Self::member(s, a))
                .all(|a| self.acceptable(s, a))
    }

    fn complete(&self, s: u32) -> bool {
        self.admissible(s) && (0..self.n).all(|a| !self.acceptable(s, a) || Self::member(s, a))
    }
}

fn subset(a: u32, b: u32) -> bool {
    a & !b == 0
}

fn maximal(sets: &[u32]) -> Vec<u32> {
    sets.iter()
        .copied()
        .filter(|&s| !sets.iter().any(|&t| t != s && subset(s, t)))
        .collect()
}

/// Extensions under `semantics` by exhaustive enumeration of all `2^n`
/// subsets. Same contract as [`ArgumentationFramework::solve`].
pub fn oracle_extensions(
    af: &ArgumentationFramework,
    semantics: Semantics,
    exec: Execution,
) -> Result<Vec<Extension>, AfError> {
    let n = af.len();
    if n > ORACLE_MAX_ARGUMENTS {
        return Err(AfError::TooLarge {
            size: n,
            max: ORACLE_MAX_ARGUMENTS,
        });
    }
    let brute = Brute {
        n,
        attacks: af.index_attacks(),
    };
    let admissible: Vec<u32> = exec.flat_map_range(0..1u64 << n, |m| {
        let m = m as u32;
        brute.admissible(m).then_some(m)
    });

    let selected: Vec<u32> = match semantics {
        Semantics::Complete => admissible.iter().copied().filter(|&s| brute.complete(s)).collect(),
        Semantics::Preferred => maximal(&admissible),
        Semantics::Grounded => {
            let complete: Vec<u32> = admissible.iter().copied().filter(|&s| brute.complete(s)).collect();
            // least complete extension: a subset of every complete extension
            complete
                .iter()
                .copied()
                .filter(|&s| complete.iter().all(|&t| subset(s, t)))
                .collect()
        }
        Semantics::MaximalIdeal => {
            let preferred = maximal(&admissible);
            let ideal: Vec<u32> = admissible
                .iter()
                .copied()
                .filter(|&s| preferred.iter().all(|&p| subset(s, p)))
                .collect();
            maximal(&ideal)
        }
    };

    let mut out: Vec<Extension> = selected
        .into_iter()
        .map(|m| {
            Extension::from_iter(
                (0..n)
                    .filter(|&i| Brute::member(m, i))
                    .map(|i| af.arguments()[i].clone()),
            )
        })
        .collect();
    out.sort();
    Ok(out)
}
