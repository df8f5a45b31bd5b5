//! Subgroups up to conjugacy by cyclic extension.
//!
//! Starting from the trivial group, each class representative is joined
//! with every cyclic subgroup of prime-power order. Every subgroup is
//! generated by its prime-power-order elements, so this reaches every
//! class. New subgroups are deduplicated against the set of all conjugates
//! seen so far.

use std::collections::HashSet;
use std::sync::Arc;

use super::table::{ElemSet, GroupTable};
use super::{GroupError, PermGroup};

pub const LATTICE_MAX_ORDER: u128 = 10_000;

/// A conjugacy class of subgroups of `ambient`.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub representative: PermGroup,
    /// Number of distinct ambient-conjugates of the representative.
    pub class_size: usize,
    pub ambient: Arc<PermGroup>,
}

impl SubgroupClass {
    pub fn normalizer_order(&self) -> u128 {
        self.ambient.order() / self.class_size as u128
    }
}

/// Index-level form of the lattice, shared with the verifiers.
#[derive(Debug, Clone)]
pub(crate) struct LatticeClass {
    pub rep: ElemSet,
    pub order: usize,
    pub conjugates: Vec<ElemSet>,
}

fn is_prime_power(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

pub(crate) fn lattice(table: &GroupTable) -> Vec<LatticeClass> {
    let n = table.len();
    let mut zuppos: Vec<usize> = Vec::new();
    let mut seen_cyclic: HashSet<ElemSet> = HashSet::new();
    for x in 1..n {
        if is_prime_power(table.order_of(x)) {
            let c = table.cyclic(x);
            if seen_cyclic.insert(c) {
                zuppos.push(x);
            }
        }
    }

    let conjugates_of = |set: &ElemSet| -> Vec<ElemSet> {
        let mut out: HashSet<ElemSet> = HashSet::new();
        for g in 0..n {
            out.insert(table.conjugate_set(g, set));
        }
        let mut v: Vec<ElemSet> = out.into_iter().collect();
        v.sort();
        v
    };

    let mut known: HashSet<ElemSet> = HashSet::new();
    let trivial = table.closure(&[]);
    known.insert(trivial.clone());
    let mut classes = vec![LatticeClass {
        rep: trivial.clone(),
        order: 1,
        conjugates: vec![trivial],
    }];
    let mut class_gens: Vec<Vec<usize>> = vec![vec![]];

    let mut k = 0;
    while k < classes.len() {
        let rep = classes[k].rep.clone();
        let gens = class_gens[k].clone();
        k += 1;
        for &z in &zuppos {
            if rep.contains(z) {
                continue;
            }
            let joined = table.join_with(&gens, z);
            if known.contains(&joined) {
                continue;
            }
            let conjugates = conjugates_of(&joined);
            known.extend(conjugates.iter().cloned());
            let rep = conjugates[0].clone();
            let rep_gens = table.generators_of(&rep);
            classes.push(LatticeClass {
                order: rep.len(),
                rep,
                conjugates,
            });
            class_gens.push(rep_gens);
        }
    }
    classes.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.rep.cmp(&b.rep)));
    classes
}

/// All subgroups of `g` up to `g`-conjugacy, sorted by order.
pub fn subgroup_classes(g: &PermGroup) -> Result<Vec<SubgroupClass>, GroupError> {
    if g.order() > LATTICE_MAX_ORDER {
        return Err(GroupError::OrderLimit {
            order: g.order(),
            limit: LATTICE_MAX_ORDER,
        });
    }
    let table = g.table();
    let ambient = Arc::new(g.clone());
    Ok(lattice(table)
        .into_iter()
        .map(|c| SubgroupClass {
            representative: PermGroup::from_closed_set(g.degree(), table, &c.rep),
            class_size: c.conjugates.len(),
            ambient: Arc::clone(&ambient),
        })
        .collect())
}
