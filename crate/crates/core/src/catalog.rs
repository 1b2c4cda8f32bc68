//! Built-in example algebras.

use crate::error::Result;
use crate::format::{parse_algebra, AlgebraFile};

/// `(name, file contents)` for every shipped example.
pub const ENTRIES: &[(&str, &str)] = &[
    ("semisimple", include_str!("../catalog/semisimple.alg")),
    ("a2", include_str!("../catalog/a2.alg")),
    ("exm_strictness", include_str!("../catalog/exm_strictness.alg")),
    ("dual_numbers", include_str!("../catalog/dual_numbers.alg")),
    ("loop3", include_str!("../catalog/loop3.alg")),
    ("diamond", include_str!("../catalog/diamond.alg")),
    ("auslander", include_str!("../catalog/auslander.alg")),
];

pub fn source(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parses a catalog entry.
pub fn load(name: &str) -> Option<Result<AlgebraFile>> {
    source(name).map(parse_algebra)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_builds() {
        for (name, _) in ENTRIES {
            let f = load(name).unwrap().unwrap_or_else(|e| panic!("{name}: {e}"));
            let a = f.build().unwrap();
            a.check_associativity().unwrap();
        }
    }

    #[test]
    fn strictness_algebra_matches_hand_count() {
        let a = load("exm_strictness").unwrap().unwrap().build().unwrap();
        assert_eq!(a.dim(), 17);
        assert_eq!(a.cartan(), vec![vec![1, 2, 1], vec![2, 5, 2], vec![1, 2, 1]]);
    }
}
