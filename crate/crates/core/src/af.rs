use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A Dung-style argumentation framework: a set of arguments and a directed
/// attack relation between them.
///
/// Arguments are stored in lexicographic byte order and addressed internally
/// by their position in that order, so index order and name order coincide.
/// Self-attacks are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArgumentationFramework {
    names: Vec<String>,
    attacks: BTreeSet<(usize, usize)>,
    attackers: Vec<Vec<usize>>,
    targets: Vec<Vec<usize>>,
}

impl ArgumentationFramework {
    /// Builds a framework from argument names and `(attacker, target)` pairs.
    ///
    /// Duplicate arguments and attacks collapse. Every attack endpoint must be
    /// one of the given arguments.
    pub fn new<A, S, R, T, U>(arguments: A, attacks: R) -> Result<Self>
    where
        A: IntoIterator<Item = S>,
        S: Into<String>,
        R: IntoIterator<Item = (T, U)>,
        T: AsRef<str>,
        U: AsRef<str>,
    {
        let names: BTreeSet<String> = arguments.into_iter().map(Into::into).collect();
        if names.iter().any(String::is_empty) {
            return Err(Error::InvalidArgument("argument identifiers must be non-empty".to_string()));
        }
        let names: Vec<String> = names.into_iter().collect();
        let lookup = |id: &str| {
            names.binary_search_by(|n| n.as_str().cmp(id)).map_err(|_| Error::UnknownArgument(id.to_string()))
        };
        let mut pairs = BTreeSet::new();
        for (a, b) in attacks {
            pairs.insert((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Ok(Self::from_parts(names, pairs))
    }

    /// Builds a framework over `n` arguments from index pairs. Names are the
    /// decimal indices zero-padded to a common width so that name order
    /// matches index order.
    pub fn from_indices(n: usize, attacks: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let digits = n.saturating_sub(1).to_string().len();
        let names: Vec<String> = (0..n).map(|i| alloc::format!("x{:0digits$}", i)).collect();
        let mut pairs = BTreeSet::new();
        for (a, b) in attacks {
            if a >= n || b >= n {
                return Err(Error::InvalidArgument(alloc::format!("attack ({a},{b}) out of range")));
            }
            pairs.insert((a, b));
        }
        Ok(Self::from_parts(names, pairs))
    }

    fn from_parts(names: Vec<String>, attacks: BTreeSet<(usize, usize)>) -> Self {
        let n = names.len();
        let mut attackers = alloc::vec![Vec::new(); n];
        let mut targets = alloc::vec![Vec::new(); n];
        for &(a, b) in &attacks {
            attackers[b].push(a);
            targets[a].push(b);
        }
        Self { names, attacks, attackers, targets }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Argument names in lexicographic order.
    pub fn arguments(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    /// Like [`index_of`](Self::index_of) but reports unknown names as an error.
    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownArgument(name.to_string()))
    }

    pub fn attack_count(&self) -> usize {
        self.attacks.len()
    }

    /// Attacks as index pairs in lexicographic pair order.
    pub fn attacks(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.attacks.iter().copied()
    }

    pub fn attacks_named(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.attacks.iter().map(|&(a, b)| (self.name(a), self.name(b)))
    }

    pub fn attacks_pair(&self, attacker: usize, target: usize) -> bool {
        self.attacks.contains(&(attacker, target))
    }

    pub fn attackers(&self, index: usize) -> &[usize] {
        &self.attackers[index]
    }

    pub fn targets(&self, index: usize) -> &[usize] {
        &self.targets[index]
    }

    /// Builds an extension after checking every member is an argument of this
    /// framework.
    pub fn extension<I, S>(&self, members: I) -> Result<Extension>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let ext: Extension = members.into_iter().collect();
        self.check(&ext)?;
        Ok(ext)
    }

    pub(crate) fn extension_from_indices(&self, members: impl IntoIterator<Item = usize>) -> Extension {
        members.into_iter().map(|i| self.names[i].clone()).collect()
    }

    fn check(&self, s: &Extension) -> Result<Vec<usize>> {
        s.iter().map(|m| self.require(m)).collect()
    }

    pub fn is_conflict_free(&self, s: &Extension) -> Result<bool> {
        let members = self.check(s)?;
        Ok(members.iter().all(|&a| self.targets[a].iter().all(|b| members.binary_search(b).is_err())))
    }

    /// Whether every attacker of `argument` is attacked by some member of `s`.
    pub fn is_defended(&self, s: &Extension, argument: &str) -> Result<bool> {
        let members = self.check(s)?;
        let a = self.require(argument)?;
        Ok(self.defended_by(&members, a))
    }

    fn defended_by(&self, members: &[usize], a: usize) -> bool {
        self.attackers[a].iter().all(|&b| self.attackers[b].iter().any(|c| members.binary_search(c).is_ok()))
    }

    pub fn is_admissible(&self, s: &Extension) -> Result<bool> {
        if !self.is_conflict_free(s)? {
            return Ok(false);
        }
        let members = self.check(s)?;
        Ok(members.iter().all(|&a| self.defended_by(&members, a)))
    }
}

/// A set of arguments, kept sorted by name.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Extension {
    members: BTreeSet<String>,
}

impl Extension {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, argument: &str) -> bool {
        self.members.contains(argument)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.members.iter().map(String::as_str)
    }

    pub fn is_subset(&self, other: &Extension) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl<S: Into<String>> FromIterator<S> for Extension {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Self { members: iter.into_iter().map(Into::into).collect() }
    }
}

/// Renders as `{a,c}`; the empty extension renders as `{}`.
impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(m)?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::tests::example_one;

    fn ext(af: &ArgumentationFramework, m: &[&str]) -> Extension {
        af.extension(m.iter().copied()).unwrap()
    }

    #[test]
    fn conflict_freeness() {
        let af = example_one();
        assert!(af.is_conflict_free(&ext(&af, &["a", "c"])).unwrap());
        assert!(!af.is_conflict_free(&ext(&af, &["c", "d"])).unwrap());
        assert!(af.is_conflict_free(&Extension::new()).unwrap());
    }

    #[test]
    fn self_attack_is_a_conflict() {
        let af = ArgumentationFramework::new(["a"], [("a", "a")]).unwrap();
        assert!(!af.is_conflict_free(&ext(&af, &["a"])).unwrap());
    }

    #[test]
    fn defense() {
        let af = example_one();
        assert!(af.is_defended(&ext(&af, &["d", "g"]), "g").unwrap());
        assert!(!af.is_defended(&Extension::new(), "b").unwrap());
        assert!(af.is_defended(&Extension::new(), "a").unwrap());
    }

    #[test]
    fn admissibility() {
        let af = example_one();
        assert!(af.is_admissible(&ext(&af, &["d", "g"])).unwrap());
        assert!(!af.is_admissible(&ext(&af, &["g"])).unwrap());
        assert!(af.is_admissible(&Extension::new()).unwrap());
    }

    #[test]
    fn unknown_members_are_rejected() {
        let af = example_one();
        let bogus: Extension = ["a", "zz"].into_iter().collect();
        assert_eq!(af.is_conflict_free(&bogus), Err(Error::UnknownArgument("zz".into())));
        assert_eq!(af.is_defended(&Extension::new(), "q"), Err(Error::UnknownArgument("q".into())));
        assert!(af.extension(["h"]).is_err());
    }

    #[test]
    fn construction_rejects_dangling_attacks_and_empty_names() {
        assert!(ArgumentationFramework::new(["a"], [("a", "b")]).is_err());
        assert!(ArgumentationFramework::new([""], core::iter::empty::<(&str, &str)>()).is_err());
    }

    #[test]
    fn names_are_sorted_and_deduplicated() {
        let af = ArgumentationFramework::new(["b", "a", "b"], [("b", "a"), ("b", "a")]).unwrap();
        assert_eq!(af.arguments(), &["a".to_string(), "b".to_string()]);
        assert_eq!(af.attack_count(), 1);
        assert!(af.attacks_pair(1, 0));
    }

    #[test]
    fn display() {
        let e: Extension = ["d", "a", "g"].into_iter().collect();
        assert_eq!(alloc::format!("{e}"), "{a,d,g}");
        assert_eq!(alloc::format!("{}", Extension::new()), "{}");
    }
}
