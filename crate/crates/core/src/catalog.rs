//! The six transitive groups of degree 8 that occur as Galois groups of
//! quadratic extensions of `S₄`-quartic fields.
//!
//! Points are labelled so that `{1,2},{3,4},{5,6},{7,8}` is a block system
//! for every entry.

use num_rational::Ratio;

use crate::group::{GroupError, PermGroup};

#[derive(Debug, Clone)]
pub struct GroupCatalogEntry {
    pub label: &'static str,
    pub name: &'static str,
    pub generators: &'static [&'static str],
    pub expected_order: u128,
    /// `(numerator, denominator)`
    pub expected_alpha: (u64, u64),
}

impl GroupCatalogEntry {
    pub fn group(&self) -> PermGroup {
        PermGroup::from_cycle_strings(8, self.generators).expect("catalog generators are valid")
    }

    pub fn alpha(&self) -> Ratio<u64> {
        Ratio::new(self.expected_alpha.0, self.expected_alpha.1)
    }
}

pub const CATALOG: [GroupCatalogEntry; 6] = [
    GroupCatalogEntry {
        label: "8T14",
        name: "S4",
        generators: &["(1 4)(2 3)(5 6)(7 8)", "(1 4 5 8)(2 3 6 7)"],
        expected_order: 24,
        expected_alpha: (1, 4),
    },
    GroupCatalogEntry {
        label: "8T23",
        name: "GL(2,3)",
        generators: &["(3 5 8)(4 6 7)", "(1 3 5 7 2 4 6 8)", "(3 4)(5 7)(6 8)"],
        expected_order: 48,
        expected_alpha: (1, 3),
    },
    GroupCatalogEntry {
        label: "8T24",
        name: "S4 x C2",
        generators: &["(1 3)(2 4)", "(1 3 5 7)(2 4 6 8)", "(1 2)(3 4)(5 6)(7 8)"],
        expected_order: 48,
        expected_alpha: (1, 2),
    },
    GroupCatalogEntry {
        label: "8T39",
        name: "C2^3 : S4",
        generators: &["(1 2)(3 4)", "(1 3)(2 4)", "(1 3 5 7)(2 4 6 8)"],
        expected_order: 192,
        expected_alpha: (1, 2),
    },
    GroupCatalogEntry {
        label: "8T40",
        name: "Q8 : S3 . C2",
        generators: &["(1 2)(3 4)", "(1 3 2 4)", "(1 3 5 7 2 4 6 8)"],
        expected_order: 192,
        expected_alpha: (1, 2),
    },
    GroupCatalogEntry {
        label: "8T44",
        name: "C2 wr S4",
        generators: &["(1 2)", "(1 3)(2 4)", "(1 3 5 7)(2 4 6 8)"],
        expected_order: 384,
        expected_alpha: (1, 1),
    },
];

pub fn labels() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|e| e.label)
}

pub fn entry(label: &str) -> Option<&'static GroupCatalogEntry> {
    CATALOG.iter().find(|e| e.label.eq_ignore_ascii_case(label))
}

pub fn lookup(label: &str) -> Result<PermGroup, GroupError> {
    entry(label)
        .map(GroupCatalogEntry::group)
        .ok_or_else(|| GroupError::Parse(format!("unknown catalog label {label:?}")))
}

/// `C₂ ≀ S₄` on 8 points: the four block flips together with block
/// permutations lifting a transposition and a 4-cycle of `S₄`.
pub fn wreath_c2_s4() -> PermGroup {
    PermGroup::from_cycle_strings(
        8,
        &[
            "(1 2)",
            "(3 4)",
            "(5 6)",
            "(7 8)",
            "(1 3)(2 4)",
            "(1 3 5 7)(2 4 6 8)",
        ],
    )
    .expect("wreath generators are valid")
}

/// The block kernel `C₂⁴` of [`wreath_c2_s4`].
pub fn wreath_base() -> PermGroup {
    PermGroup::from_cycle_strings(8, &["(1 2)", "(3 4)", "(5 6)", "(7 8)"])
        .expect("flips are valid")
}

/// Point set `{1,2},{3,4},{5,6},{7,8}` as zero-based blocks.
pub const BLOCKS: [[usize; 2]; 4] = [[0, 1], [2, 3], [4, 5], [6, 7]];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{perm_isomorphic, quotient_as_perm, find_isomorphism};
    use crate::perm::Perm;

    #[test]
    fn entries_have_expected_order_transitivity_and_alpha() {
        for e in &CATALOG {
            let g = e.group();
            assert_eq!(g.order(), e.expected_order, "{}", e.label);
            assert!(g.is_transitive(), "{}", e.label);
            assert!(g.is_subgroup_of(&wreath_c2_s4()), "{}", e.label);
            assert_eq!(g.malle_alpha().unwrap(), e.alpha(), "{}", e.label);
            assert_eq!(perm_isomorphic(&g, &g).unwrap(), Some(Perm::identity(8)));
        }
    }

    #[test]
    fn wreath_basics() {
        let w = wreath_c2_s4();
        assert_eq!(w.order(), 384);
        assert!(w.is_transitive());
        // sign oracle: a single flip is odd
        let flip = Perm::parse_cycles(8, "(1 2)").unwrap();
        assert!(w.contains(&flip));
        assert!(!flip.is_even());
        assert!(!w.is_even());
    }

    #[test]
    fn wreath_block_quotient_is_s4() {
        let w = wreath_c2_s4();
        let q = quotient_as_perm(&w, &wreath_base()).unwrap();
        assert_eq!(q.order(), 24);
        assert!(find_isomorphism(&q, &PermGroup::symmetric(4).unwrap()).is_some());
    }

    #[test]
    fn element_orders() {
        let gl23 = lookup("8T23").unwrap();
        assert_eq!(
            gl23.cyclic_subgroup_orders().into_iter().collect::<Vec<_>>(),
            vec![1, 2, 3, 4, 6, 8]
        );
        assert!(gl23.index_set().iter().all(|i| [3, 4, 6, 7].contains(i)));
    }

    #[test]
    fn relabelled_8t39_is_perm_isomorphic() {
        let g = lookup("8T39").unwrap();
        let c = Perm::parse_cycles(8, "(1 2)").unwrap();
        let h = g.conjugate(&c);
        let w = perm_isomorphic(&g, &h).unwrap().unwrap();
        assert_eq!(g.conjugate(&w), h);
    }

    #[test]
    fn lookup_is_case_insensitive() {
        assert!(entry("8t44").is_some());
        assert!(lookup("8T99").is_err());
        assert_eq!(labels().count(), 6);
    }
}
