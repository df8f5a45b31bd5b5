//! Exact permutation groups of small degree.
//!
//! A [`PermGroup`] is immutable once built. Its element list, indexed
//! table and conjugacy classes are computed lazily, once.

mod action;
mod chain;
mod iso;
pub(crate) mod lattice;
mod table;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use num_rational::Ratio;
use thiserror::Error;

use crate::perm::{Perm, PermError, MAX_DEGREE};

pub use action::{coset_action, quotient_as_perm, CosetAction};
pub use chain::StabChain;
pub use iso::{find_isomorphism, perm_isomorphic, GroupHom, PERM_ISO_MAX_DEGREE};
pub use lattice::{subgroup_classes, SubgroupClass, LATTICE_MAX_ORDER};
pub use table::{ElemSet, GroupTable};

/// Upper bound on the size of any materialized element list.
pub const ELEMENT_CAP: u128 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("group order {0} exceeds the element cap")]
    OrderTooLarge(u128),
    #[error("group order {order} exceeds the limit {limit} for this operation")]
    OrderLimit { order: u128, limit: u128 },
    #[error("no nonidentity element")]
    NoNonidentity,
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("not a normal subgroup")]
    NotNormal,
    #[error("degree {0} exceeds the limit {1} for this operation")]
    DegreeLimit(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("index {0} exceeds the permutation degree cap")]
    IndexTooLarge(usize),
    #[error("cannot parse group text {0:?}")]
    Parse(String),
}

/// One conjugacy class of elements.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub representative: Perm,
    pub size: usize,
}

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    order: u128,
    elements: OnceLock<Vec<Perm>>,
    table: OnceLock<std::sync::Arc<GroupTable>>,
    classes: OnceLock<Vec<ConjugacyClass>>,
}

impl PermGroup {
    /// Group generated by `generators` acting on `degree` points. An empty
    /// generator list gives the trivial group.
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup, GroupError> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(PermError::BadDegree(degree).into());
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch(degree, g.degree()));
        }
        let mut generators: Vec<Perm> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        generators.sort_unstable();
        generators.dedup();
        if generators.is_empty() {
            generators.push(Perm::identity(degree));
        }
        let order = StabChain::new(degree, &generators).order();
        if order > ELEMENT_CAP {
            return Err(GroupError::OrderTooLarge(order));
        }
        Ok(PermGroup {
            degree,
            generators,
            order,
            elements: OnceLock::new(),
            table: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    /// Builds a group from generators given in 1-based cycle notation.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<PermGroup, GroupError> {
        let perms = gens
            .iter()
            .map(|s| Perm::parse_cycles(degree, s))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(degree, perms)
    }

    /// Subgroup whose element set is already known to be closed.
    pub(crate) fn from_closed_set(degree: usize, table: &GroupTable, set: &ElemSet) -> PermGroup {
        let gens: Vec<Perm> = table
            .generators_of(set)
            .into_iter()
            .map(|i| *table.perm(i))
            .collect();
        let mut elements = table.perms_of(set);
        elements.sort_unstable();
        let mut generators = gens;
        generators.sort_unstable();
        if generators.is_empty() {
            generators.push(Perm::identity(degree));
        }
        let g = PermGroup {
            degree,
            generators,
            order: elements.len() as u128,
            elements: OnceLock::new(),
            table: OnceLock::new(),
            classes: OnceLock::new(),
        };
        let _ = g.elements.set(elements);
        g
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, vec![]).expect("trivial group")
    }

    pub fn symmetric(degree: usize) -> Result<PermGroup, GroupError> {
        if degree == 1 {
            return Ok(PermGroup::trivial(1));
        }
        let cyc: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
        let tr = Perm::from_cycles(degree, &[&[0, 1]])?;
        PermGroup::new(degree, vec![tr, Perm::from_images(&cyc)?])
    }

    pub fn alternating(degree: usize) -> Result<PermGroup, GroupError> {
        let gens = (2..degree)
            .map(|k| Perm::from_cycles(degree, &[&[0, 1, k]]))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(degree, gens)
    }

    pub fn cyclic(g: Perm) -> PermGroup {
        PermGroup::new(g.degree(), vec![g]).expect("cyclic group of a valid perm")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Sorted element list, computed by closure under the generators.
    pub fn elements(&self) -> &[Perm] {
        self.elements.get_or_init(|| {
            let mut seen: HashSet<Perm> = HashSet::with_capacity(self.order as usize);
            let id = Perm::identity(self.degree);
            seen.insert(id);
            let mut list = vec![id];
            let mut k = 0;
            while k < list.len() {
                let x = list[k];
                k += 1;
                for g in &self.generators {
                    let y = x.compose(g);
                    if seen.insert(y) {
                        list.push(y);
                    }
                }
            }
            list.sort_unstable();
            list
        })
    }

    pub fn table(&self) -> &GroupTable {
        self.table
            .get_or_init(|| std::sync::Arc::new(GroupTable::new(self.elements().to_vec())))
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.elements().binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        self.is_subgroup_of(ambient)
            && ambient.generators.iter().all(|a| {
                self.generators
                    .iter()
                    .all(|h| self.contains(&h.conjugate_by(a)))
            })
    }

    pub fn orbit(&self, point: usize) -> BTreeSet<usize> {
        let mut orbit = BTreeSet::from([point]);
        let mut stack = vec![point];
        while let Some(x) = stack.pop() {
            for g in &self.generators {
                let y = g.apply(x);
                if orbit.insert(y) {
                    stack.push(y);
                }
            }
        }
        orbit
    }

    pub fn orbits(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    pub fn stabilizer(&self, point: usize) -> PermGroup {
        let t = self.table();
        let mut set = ElemSet::empty(t.len());
        for (i, g) in t.elements().iter().enumerate() {
            if g.apply(point) == point {
                set.insert(i);
            }
        }
        PermGroup::from_closed_set(self.degree, t, &set)
    }

    /// `c ∘ G ∘ c⁻¹`.
    pub fn conjugate(&self, c: &Perm) -> PermGroup {
        let gens = self.generators.iter().map(|g| g.conjugate_by(c)).collect();
        PermGroup::new(self.degree, gens).expect("conjugate of a valid group")
    }

    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        self.classes.get_or_init(|| {
            let t = self.table();
            let n = t.len();
            let mut assigned = vec![false; n];
            let mut out = Vec::new();
            for x in 0..n {
                if assigned[x] {
                    continue;
                }
                let mut size = 0;
                for g in 0..n {
                    let y = t.conj(g, x);
                    if !assigned[y] {
                        assigned[y] = true;
                        size += 1;
                    }
                }
                out.push(ConjugacyClass {
                    representative: *t.perm(x),
                    size,
                });
            }
            out
        })
    }

    /// Multiset of element cycle types.
    pub fn cycle_type_census(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut census = BTreeMap::new();
        for g in self.elements() {
            *census.entry(g.cycle_type()).or_insert(0) += 1;
        }
        census
    }

    /// Multiset of element orders.
    pub fn order_profile(&self) -> BTreeMap<u64, usize> {
        let mut prof = BTreeMap::new();
        for g in self.elements() {
            *prof.entry(g.order()).or_insert(0) += 1;
        }
        prof
    }

    /// `{ ind(g) : g ∈ G, g ≠ e }`.
    pub fn index_set(&self) -> BTreeSet<usize> {
        self.elements()
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| g.index())
            .collect()
    }

    /// Orders of the cyclic subgroups, i.e. the element orders.
    pub fn cyclic_subgroup_orders(&self) -> BTreeSet<u64> {
        self.elements().iter().map(|g| g.order()).collect()
    }

    /// Malle's `a`-invariant: the reciprocal of the least nonidentity index.
    pub fn malle_alpha(&self) -> Result<Ratio<u64>, GroupError> {
        let min = self
            .index_set()
            .into_iter()
            .next()
            .ok_or(GroupError::NoNonidentity)?;
        Ok(Ratio::new(1, min as u64))
    }

    pub fn is_even(&self) -> bool {
        self.generators.iter().all(|g| g.is_even())
    }

    /// Largest normal subgroup of `self` contained in `sub`.
    pub fn normal_core(&self, sub: &PermGroup) -> Result<PermGroup, GroupError> {
        if !sub.is_subgroup_of(self) {
            return Err(GroupError::NotSubgroup);
        }
        let t = self.table();
        let h = t.set_of(sub.elements()).ok_or(GroupError::NotSubgroup)?;
        let mut core = h.clone();
        for g in 0..t.len() {
            core = core.intersection(&t.conjugate_set(g, &h));
        }
        Ok(PermGroup::from_closed_set(self.degree, t, &core))
    }

    /// Normal subgroup generated by `elems`.
    pub fn normal_closure(&self, elems: &[Perm]) -> Result<PermGroup, GroupError> {
        let t = self.table();
        let mut gens = Vec::new();
        for e in elems {
            let i = t.index_of(e).ok_or(GroupError::NotSubgroup)?;
            for g in 0..t.len() {
                gens.push(t.conj(g, i));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        let set = t.closure(&gens);
        Ok(PermGroup::from_closed_set(self.degree, t, &set))
    }

    /// All normal subgroups, sorted by order then element list.
    ///
    /// Every normal subgroup is a join of normal closures of single
    /// conjugacy classes, so the lattice is built from those by repeated
    /// joins.
    pub fn normal_subgroups(&self) -> Vec<PermGroup> {
        let t = self.table();
        let n = t.len();
        let mut principal: Vec<ElemSet> = Vec::new();
        let mut seen: HashSet<ElemSet> = HashSet::new();
        for class in self.conjugacy_classes() {
            let x = t.index_of(&class.representative).unwrap();
            let gens: Vec<usize> = (0..n).map(|g| t.conj(g, x)).collect();
            let s = t.closure(&gens);
            if seen.insert(s.clone()) {
                principal.push(s);
            }
        }
        let mut all: Vec<ElemSet> = principal.clone();
        let mut k = 0;
        while k < all.len() {
            let cur = all[k].clone();
            k += 1;
            for p in &principal {
                if p.is_subset(&cur) {
                    continue;
                }
                let mut gens = t.generators_of(&cur);
                gens.extend(t.generators_of(p));
                let join = t.closure(&gens);
                if seen.insert(join.clone()) {
                    all.push(join);
                }
            }
        }
        let mut groups: Vec<PermGroup> = all
            .iter()
            .map(|s| PermGroup::from_closed_set(self.degree, t, s))
            .collect();
        groups.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.elements().cmp(b.elements())));
        groups
    }

    /// Canonical text: degree, then generator cycle strings sorted
    /// lexicographically, separated by `;`.
    pub fn canonical_text(&self) -> String {
        let mut gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        gens.sort();
        format!("{};{}", self.degree, gens.join(";"))
    }

    pub fn parse_canonical(text: &str) -> Result<PermGroup, GroupError> {
        let mut parts = text.split(';');
        let degree: usize = parts
            .next()
            .and_then(|d| d.trim().parse().ok())
            .ok_or_else(|| GroupError::Parse(text.to_string()))?;
        let gens = parts
            .map(|s| Perm::parse_cycles(degree, s))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(degree, gens)
    }
}

/// Groups are equal when their element sets are.
impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order == other.order
            && self.generators.iter().all(|g| other.contains(g))
    }
}

impl Eq for PermGroup {}

impl fmt::Display for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩ ≤ S{}", self.degree)
    }
}

/// `degree − #orbits(⟨g⟩)`.
pub fn index(g: &Perm) -> usize {
    g.index()
}

pub fn malle_alpha(g: &PermGroup) -> Result<Ratio<u64>, GroupError> {
    g.malle_alpha()
}

pub fn cyclic_subgroup_orders(g: &PermGroup) -> BTreeSet<u64> {
    g.cyclic_subgroup_orders()
}

pub fn index_set(g: &PermGroup) -> BTreeSet<usize> {
    g.index_set()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn order_matches_element_list() {
        let g = grp(8, &["(1 2 3 4 5 6 7 8)", "(1 2)"]);
        assert_eq!(g.order(), 40320);
        assert_eq!(g.elements().len() as u128, g.order());
        let s4 = PermGroup::symmetric(4).unwrap();
        assert_eq!(s4.elements().len(), 24);
    }

    #[test]
    fn order_cap_enforced() {
        let r = PermGroup::symmetric(10);
        assert_eq!(r.unwrap_err(), GroupError::OrderTooLarge(3_628_800));
    }

    #[test]
    fn closure_under_products() {
        let g = grp(6, &["(1 2 3)(4 5)", "(1 4)"]);
        let els = g.elements();
        for a in els.iter().take(30) {
            for b in els.iter().take(30) {
                assert!(g.contains(&(a * b)));
            }
            assert!(g.contains(&a.inverse()));
        }
    }

    #[test]
    fn malle_alpha_trivial_errors() {
        assert_eq!(PermGroup::trivial(4).malle_alpha(), Err(GroupError::NoNonidentity));
        let s3 = PermGroup::symmetric(3).unwrap();
        assert_eq!(s3.malle_alpha().unwrap(), Ratio::new(1, 1));
    }

    #[test]
    fn eight_cycle_index_set() {
        let c = grp(8, &["(1 2 3 4 5 6 7 8)"]);
        // c, c^2, c^4 give one, two and four orbits
        assert_eq!(c.index_set(), BTreeSet::from([4, 6, 7]));
    }

    #[test]
    fn s4_cyclic_orders() {
        let s4 = PermGroup::symmetric(4).unwrap();
        assert_eq!(s4.cyclic_subgroup_orders(), BTreeSet::from([1, 2, 3, 4]));
        assert_eq!(s4.conjugacy_classes().len(), 5);
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let orders: Vec<u128> = s4.normal_subgroups().iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn core_of_point_stabilizer_is_trivial() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let h = s4.stabilizer(0);
        assert_eq!(h.order(), 6);
        assert!(s4.normal_core(&h).unwrap().is_trivial());
    }

    #[test]
    fn canonical_text_round_trip() {
        let g = grp(8, &["(1 3)(2 4)", "(1 2)", "(1 3 5 7)(2 4 6 8)"]);
        let text = g.canonical_text();
        assert_eq!(text, "8;(1 2);(1 3 5 7)(2 4 6 8);(1 3)(2 4)");
        assert_eq!(PermGroup::parse_canonical(&text).unwrap(), g);
    }

    #[test]
    fn equality_is_by_element_set() {
        let a = grp(4, &["(1 2)", "(1 2 3 4)"]);
        let b = grp(4, &["(1 2)", "(2 3)", "(3 4)"]);
        assert_eq!(a, b);
        assert_ne!(a, PermGroup::alternating(4).unwrap());
    }
}
