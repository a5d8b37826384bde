//! Exhaustive reference semantics.
//!
//! Everything here enumerates all `2^n` subsets and is meant as ground truth
//! for tests and small instances only. The size is capped at
//! [`ORACLE_LIMIT`] arguments.

use alloc::vec::Vec;

use crate::{ArgumentationFramework, Error, Extension, Result};

pub const ORACLE_LIMIT: usize = 25;

struct Masks {
    attackers: Vec<u32>,
    targets: Vec<u32>,
}

fn masks(af: &ArgumentationFramework) -> Result<Masks> {
    if af.len() > ORACLE_LIMIT {
        return Err(Error::Capacity { size: af.len(), limit: ORACLE_LIMIT });
    }
    let mut attackers = alloc::vec![0u32; af.len()];
    let mut targets = alloc::vec![0u32; af.len()];
    for (a, b) in af.attacks() {
        attackers[b] |= 1 << a;
        targets[a] |= 1 << b;
    }
    Ok(Masks { attackers, targets })
}

fn admissible_masks(af: &ArgumentationFramework) -> Result<Vec<u32>> {
    let m = masks(af)?;
    let mut out = Vec::new();
    for s in 0u32..(1u32 << af.len()) {
        let mut hit = 0u32;
        let mut threats = 0u32;
        let mut bits = s;
        while bits != 0 {
            let a = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            hit |= m.targets[a];
            threats |= m.attackers[a];
        }
        if hit & s == 0 && threats & !hit == 0 {
            out.push(s);
        }
    }
    Ok(out)
}

fn maximal(sets: &[u32]) -> Vec<u32> {
    sets.iter().copied().filter(|&s| !sets.iter().any(|&t| t != s && t & s == s)).collect()
}

fn to_extensions(af: &ArgumentationFramework, sets: &[u32]) -> Vec<Extension> {
    let mut out: Vec<Extension> =
        sets.iter().map(|&s| af.extension_from_indices((0..af.len()).filter(|i| s >> i & 1 == 1))).collect();
    out.sort();
    out
}

/// All admissible sets, sorted.
pub fn enumerate_admissible(af: &ArgumentationFramework) -> Result<Vec<Extension>> {
    Ok(to_extensions(af, &admissible_masks(af)?))
}

/// All preferred extensions (subset-maximal admissible sets), sorted.
pub fn enumerate_preferred(af: &ArgumentationFramework) -> Result<Vec<Extension>> {
    Ok(to_extensions(af, &maximal(&admissible_masks(af)?)))
}

fn member_mask(af: &ArgumentationFramework, argument: &str) -> Result<u32> {
    let i = af.require(argument)?;
    if af.len() > ORACLE_LIMIT {
        return Err(Error::Capacity { size: af.len(), limit: ORACLE_LIMIT });
    }
    Ok(1 << i)
}

/// Membership in at least one preferred extension.
pub fn credulous(af: &ArgumentationFramework, argument: &str) -> Result<bool> {
    let bit = member_mask(af, argument)?;
    Ok(maximal(&admissible_masks(af)?).iter().any(|s| s & bit != 0))
}

/// Membership in at least one admissible set. Always agrees with
/// [`credulous`].
pub fn credulous_admissible(af: &ArgumentationFramework, argument: &str) -> Result<bool> {
    let bit = member_mask(af, argument)?;
    Ok(admissible_masks(af)?.iter().any(|s| s & bit != 0))
}

/// Membership in every preferred extension.
pub fn skeptical(af: &ArgumentationFramework, argument: &str) -> Result<bool> {
    let bit = member_mask(af, argument)?;
    Ok(maximal(&admissible_masks(af)?).iter().all(|s| s & bit != 0))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::vec;

    pub(crate) fn example_one() -> ArgumentationFramework {
        ArgumentationFramework::new(
            ["a", "b", "c", "d", "e", "f", "g"],
            [("a", "b"), ("c", "b"), ("c", "d"), ("d", "c"), ("d", "e"), ("e", "g"), ("f", "e"), ("g", "f")],
        )
        .unwrap()
    }

    fn sets(raw: &[&[&str]]) -> Vec<Extension> {
        let mut v: Vec<Extension> = raw.iter().map(|s| s.iter().copied().collect()).collect();
        v.sort();
        v
    }

    #[test]
    fn example_one_admissible_sets() {
        let expected = sets(&[&[], &["a"], &["c"], &["d"], &["d", "g"], &["a", "c"], &["a", "d"], &["a", "d", "g"]]);
        assert_eq!(enumerate_admissible(&example_one()).unwrap(), expected);
    }

    #[test]
    fn example_one_preferred() {
        assert_eq!(enumerate_preferred(&example_one()).unwrap(), sets(&[&["a", "c"], &["a", "d", "g"]]));
    }

    #[test]
    fn tiny_frameworks() {
        let free = ArgumentationFramework::new(["a"], core::iter::empty::<(&str, &str)>()).unwrap();
        assert_eq!(enumerate_admissible(&free).unwrap(), sets(&[&[], &["a"]]));
        let selfish = ArgumentationFramework::new(["a"], [("a", "a")]).unwrap();
        assert_eq!(enumerate_admissible(&selfish).unwrap(), sets(&[&[]]));
        let pair = ArgumentationFramework::new(["x", "y"], core::iter::empty::<(&str, &str)>()).unwrap();
        assert_eq!(enumerate_preferred(&pair).unwrap(), sets(&[&["x", "y"]]));
        let mutual = ArgumentationFramework::new(["a", "b"], [("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(enumerate_preferred(&mutual).unwrap(), sets(&[&["a"], &["b"]]));
    }

    #[test]
    fn acceptance_on_example_one() {
        let af = example_one();
        assert!(credulous(&af, "d").unwrap());
        assert!(!skeptical(&af, "d").unwrap());
        assert!(!credulous(&af, "b").unwrap());
        assert!(skeptical(&af, "a").unwrap());
        for name in af.arguments() {
            assert_eq!(credulous(&af, name).unwrap(), credulous_admissible(&af, name).unwrap());
        }
    }

    #[test]
    fn guards() {
        let af = example_one();
        assert_eq!(credulous(&af, "z"), Err(Error::UnknownArgument("z".into())));
        let big = ArgumentationFramework::from_indices(26, vec![]).unwrap();
        assert_eq!(enumerate_admissible(&big), Err(Error::Capacity { size: 26, limit: ORACLE_LIMIT }));
        assert!(skeptical(&big, big.name(0)).is_err());
    }
}
