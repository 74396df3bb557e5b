use super::{ArgSet, ArgumentationFramework, Extension, Semantics};
use crate::Execution;

/// Subtrees below this many undecided arguments are not worth splitting
/// across threads.
const MIN_PARALLEL_CANDIDATES: usize = 12;
const SPLIT_DEPTH: usize = 6;

impl ArgumentationFramework {
    /// Least fixed point of the characteristic function, iterated from `{}`.
    pub fn grounded_extension(&self) -> Extension {
        self.extension_of(&self.grounded_bits())
    }

    pub fn complete_extensions(&self) -> Vec<Extension> {
        self.complete_extensions_with(Execution::default())
    }

    pub fn complete_extensions_with(&self, exec: Execution) -> Vec<Extension> {
        self.canonical(self.complete_bits(exec))
    }

    pub fn preferred_extensions(&self) -> Vec<Extension> {
        self.preferred_extensions_with(Execution::default())
    }

    pub fn preferred_extensions_with(&self, exec: Execution) -> Vec<Extension> {
        self.canonical(self.preferred_bits(exec))
    }

    pub fn maximal_ideal_extension(&self) -> Extension {
        self.maximal_ideal_extension_with(Execution::default())
    }

    pub fn maximal_ideal_extension_with(&self, exec: Execution) -> Extension {
        let preferred = self.preferred_bits(exec);
        self.extension_of(&self.maximal_ideal_bits(&preferred))
    }

    /// Extensions under `semantics`, canonically ordered. Grounded and
    /// maximal ideal yield exactly one extension.
    pub fn solve(&self, semantics: Semantics) -> Vec<Extension> {
        self.solve_with(semantics, Execution::default())
    }

    pub fn solve_with(&self, semantics: Semantics, exec: Execution) -> Vec<Extension> {
        match semantics {
            Semantics::Complete => self.complete_extensions_with(exec),
            Semantics::Preferred => self.preferred_extensions_with(exec),
            Semantics::Grounded => vec![self.grounded_extension()],
            Semantics::MaximalIdeal => vec![self.maximal_ideal_extension_with(exec)],
        }
    }

    pub(crate) fn grounded_bits(&self) -> ArgSet {
        let mut current = ArgSet::empty(self.len());
        loop {
            let next = self.defended(&current);
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// Complete extensions by subset search over the arguments left
    /// undecided by the grounded extension. Every complete extension contains
    /// the grounded one, so its members are fixed in, and everything it
    /// attacks or that attacks it is fixed out.
    pub(crate) fn complete_bits(&self, exec: Execution) -> Vec<ArgSet> {
        let n = self.len();
        let grounded = self.grounded_bits();
        let mut excluded = self.range(&grounded);
        for g in grounded.iter() {
            excluded.union_with(self.attackers_bits(g));
        }
        let candidates: Vec<usize> = (0..n)
            .filter(|&i| !grounded.contains(i) && !excluded.contains(i) && !self.targets_bits(i).contains(i))
            .collect();

        let search = Search {
            af: self,
            candidates: &candidates,
        };

        if !exec.is_parallel() || candidates.len() < MIN_PARALLEL_CANDIDATES {
            let mut out = Vec::new();
            search.descend(0, grounded, &mut out);
            return out;
        }

        // Fan out over all in/out assignments of the first few candidates.
        let depth = SPLIT_DEPTH.min(candidates.len());
        let prefixes: Vec<ArgSet> = (0..1u64 << depth)
            .filter_map(|mask| {
                let mut s = grounded.clone();
                for (bit, &c) in candidates[..depth].iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        if !search.compatible(&s, c) {
                            return None;
                        }
                        s.insert(c);
                    }
                }
                Some(s)
            })
            .collect();
        exec.map(prefixes, |s| {
            let mut out = Vec::new();
            search.descend(depth, s, &mut out);
            out
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// Preferred extensions are exactly the inclusion-maximal complete ones.
    pub(crate) fn preferred_bits(&self, exec: Execution) -> Vec<ArgSet> {
        let complete = self.complete_bits(exec);
        let keep = exec.map((0..complete.len()).collect(), |i| {
            let s = &complete[i];
            !complete.iter().any(|t| t != s && s.is_subset(t))
        });
        complete
            .into_iter()
            .zip(keep)
            .filter_map(|(s, k)| k.then_some(s))
            .collect()
    }

    /// Largest admissible subset of the intersection of the preferred
    /// extensions, found by repeatedly dropping undefended members.
    pub(crate) fn maximal_ideal_bits(&self, preferred: &[ArgSet]) -> ArgSet {
        let mut current = match preferred.split_first() {
            Some((first, rest)) => rest.iter().fold(first.clone(), |mut acc, p| {
                acc.intersect_with(p);
                acc
            }),
            None => ArgSet::empty(self.len()),
        };
        loop {
            let mut next = self.defended(&current);
            next.intersect_with(&current);
            if next == current {
                return current;
            }
            current = next;
        }
    }

    fn canonical(&self, sets: Vec<ArgSet>) -> Vec<Extension> {
        let mut exts: Vec<Extension> = sets.iter().map(|s| self.extension_of(s)).collect();
        exts.sort();
        exts.dedup();
        exts
    }
}

struct Search<'a> {
    af: &'a ArgumentationFramework,
    candidates: &'a [usize],
}

impl Search<'_> {
    fn compatible(&self, s: &ArgSet, c: usize) -> bool {
        self.af.targets_bits(c).is_disjoint(s) && self.af.attackers_bits(c).is_disjoint(s)
    }

    fn descend(&self, depth: usize, current: ArgSet, out: &mut Vec<ArgSet>) {
        if depth == self.candidates.len() {
            // conflict-freeness is maintained on the way down
            let defended = self.af.defended(&current);
            if defended == current {
                out.push(current);
            }
            return;
        }
        let c = self.candidates[depth];
        if self.compatible(&current, c) {
            let mut with = current.clone();
            with.insert(c);
            self.descend(depth + 1, with, out);
        }
        self.descend(depth + 1, current, out);
    }
}

/// Solves many frameworks under one semantics, one framework per task.
pub fn solve_batch(
    frameworks: &[ArgumentationFramework],
    semantics: Semantics,
    exec: Execution,
) -> Vec<Vec<Extension>> {
    // inner searches stay sequential; parallelism is across frameworks
    exec.map(frameworks.iter().collect(), |af| {
        af.solve_with(semantics, Execution::Sequential)
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    fn exts(sets: &[&[&str]]) -> Vec<Extension> {
        let mut v: Vec<Extension> = sets.iter().map(|s| Extension::from_iter(s.iter().copied())).collect();
        v.sort();
        v
    }

    #[test]
    fn first_worked_example() {
        let af = af1();
        assert_eq!(af.grounded_extension(), Extension::default());
        assert_eq!(af.complete_extensions(), exts(&[&["b1"], &["a1", "c1"], &[]]));
        assert_eq!(af.preferred_extensions(), exts(&[&["b1"], &["a1", "c1"]]));
        assert_eq!(af.maximal_ideal_extension(), Extension::default());
    }

    #[test]
    fn second_worked_example() {
        let af = af2();
        assert_eq!(af.grounded_extension(), Extension::default());
        assert_eq!(af.complete_extensions(), exts(&[&["a2", "c2", "e2"], &[]]));
        assert_eq!(af.preferred_extensions(), exts(&[&["a2", "c2", "e2"]]));
        assert_eq!(af.maximal_ideal_extension(), Extension::from_iter(["a2", "c2", "e2"]));
    }

    #[test]
    fn mutual_attack() {
        let af = mutual();
        assert_eq!(af.preferred_extensions(), exts(&[&["a"], &["b"]]));
        assert_eq!(af.maximal_ideal_extension(), Extension::default());
        assert_eq!(af.grounded_extension(), Extension::default());
    }

    #[test]
    fn unattacked_arguments() {
        let af = ArgumentationFramework::new(["x", "y", "z"], Vec::<(&str, &str)>::new()).unwrap();
        let all = Extension::from_iter(["x", "y", "z"]);
        for sem in Semantics::ALL {
            assert_eq!(af.solve(sem), vec![all.clone()], "{sem}");
        }
        let single = ArgumentationFramework::new(["only"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(single.grounded_extension(), Extension::from_iter(["only"]));
    }

    #[test]
    fn empty_framework() {
        let af = ArgumentationFramework::empty();
        for sem in Semantics::ALL {
            assert_eq!(af.solve(sem), vec![Extension::default()]);
        }
    }

    #[test]
    fn self_attacker_never_accepted() {
        let af = ArgumentationFramework::new(["s", "t"], [("s", "s"), ("s", "t")]).unwrap();
        assert_eq!(af.preferred_extensions(), exts(&[&[]]));
        let af = ArgumentationFramework::new(["s", "t"], [("s", "s"), ("t", "s")]).unwrap();
        assert_eq!(af.grounded_extension(), Extension::from_iter(["t"]));
    }

    #[test]
    fn dispatch() {
        assert_eq!(af1().solve(Semantics::Preferred), exts(&[&["b1"], &["a1", "c1"]]));
        assert_eq!(af2().solve(Semantics::MaximalIdeal), exts(&[&["a2", "c2", "e2"]]));
    }

    #[test]
    fn parallel_split_matches_sequential() {
        // a chain of 2-cycles: 2^k preferred extensions, enough candidates to split
        let k = 8;
        let args: Vec<String> = (0..2 * k).map(|i| format!("x{i}")).collect();
        let mut attacks = Vec::new();
        for i in 0..k {
            attacks.push((args[2 * i].clone(), args[2 * i + 1].clone()));
            attacks.push((args[2 * i + 1].clone(), args[2 * i].clone()));
        }
        let af = ArgumentationFramework::new(args, attacks).unwrap();
        let seq = af.complete_extensions_with(Execution::Sequential);
        let par = af.complete_extensions_with(Execution::Parallel);
        assert_eq!(seq.len(), 3usize.pow(k as u32));
        assert_eq!(seq, par);
        assert_eq!(af.preferred_extensions().len(), 1 << k);
    }
}
