use std::sync::Arc;

use crate::perm::{Perm, MAX_DEGREE};

use super::{GroupError, PermGroup};

/// Action of a group on the left cosets of a subgroup.
#[derive(Debug, Clone)]
pub struct CosetAction {
    group: Arc<PermGroup>,
    point_stabilizer: PermGroup,
    /// Coset number of every element of `group`, by element index.
    coset_of: Vec<u16>,
    /// One representative element index per coset; coset 0 is the subgroup.
    reps: Vec<usize>,
}

impl CosetAction {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn point_stabilizer(&self) -> &PermGroup {
        &self.point_stabilizer
    }

    /// `[G : H]`.
    pub fn induced_degree(&self) -> usize {
        self.reps.len()
    }

    /// Image of `g` acting by `xH ↦ gxH`. Panics if `g ∉ G`.
    pub fn image(&self, g: &Perm) -> Perm {
        let t = self.group.table();
        let gi = t.index_of(g).expect("element of the acting group");
        self.image_of_index(gi)
    }

    pub(crate) fn image_of_index(&self, gi: usize) -> Perm {
        let t = self.group.table();
        let images: Vec<usize> = self
            .reps
            .iter()
            .map(|&r| self.coset_of[t.mul(gi, r)] as usize)
            .collect();
        Perm::from_images(&images).expect("coset action is a permutation")
    }

    /// Image of the whole group.
    pub fn image_group(&self) -> PermGroup {
        let gens = self.group.generators().iter().map(|g| self.image(g)).collect();
        PermGroup::new(self.induced_degree(), gens).expect("image of a coset action")
    }

    /// Elements acting trivially.
    pub fn kernel(&self) -> PermGroup {
        let t = self.group.table();
        let mut set = super::ElemSet::empty(t.len());
        for i in 0..t.len() {
            if self.image_of_index(i).is_identity() {
                set.insert(i);
            }
        }
        PermGroup::from_closed_set(self.group.degree(), t, &set)
    }
}

/// Transitive action of `g` on the left cosets of `h`.
pub fn coset_action(g: &PermGroup, h: &PermGroup) -> Result<CosetAction, GroupError> {
    if !h.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup);
    }
    let index = (g.order() / h.order()) as usize;
    if index > MAX_DEGREE {
        return Err(GroupError::IndexTooLarge(index));
    }
    let t = g.table();
    let h_idx: Vec<usize> = h
        .elements()
        .iter()
        .map(|p| t.index_of(p).ok_or(GroupError::NotSubgroup))
        .collect::<Result<_, _>>()?;
    let mut coset_of = vec![u16::MAX; t.len()];
    let mut reps = Vec::with_capacity(index);
    let gen_idx: Vec<usize> = g
        .generators()
        .iter()
        .map(|p| t.index_of(p).unwrap())
        .collect();
    // breadth-first over cosets from H itself
    let mark = |rep: usize, id: u16, coset_of: &mut Vec<u16>| {
        for &x in &h_idx {
            coset_of[t.mul(rep, x)] = id;
        }
    };
    mark(0, 0, &mut coset_of);
    reps.push(0);
    let mut k = 0;
    while k < reps.len() {
        let r = reps[k];
        k += 1;
        for &s in &gen_idx {
            let y = t.mul(s, r);
            if coset_of[y] == u16::MAX {
                let id = reps.len() as u16;
                mark(y, id, &mut coset_of);
                reps.push(y);
            }
        }
    }
    debug_assert_eq!(reps.len(), index);
    Ok(CosetAction {
        group: Arc::new(g.clone()),
        point_stabilizer: h.clone(),
        coset_of,
        reps,
    })
}

/// `G/N` as a permutation group via the action on the cosets of `N`.
pub fn quotient_as_perm(g: &PermGroup, n: &PermGroup) -> Result<PermGroup, GroupError> {
    if !n.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup);
    }
    if !n.is_normal_in(g) {
        return Err(GroupError::NotNormal);
    }
    if n.order() == g.order() {
        return Ok(PermGroup::trivial(1));
    }
    Ok(coset_action(g, n)?.image_group())
}

#[cfg(test)]
mod tests {
    use super::super::perm_isomorphic;
    use super::*;

    #[test]
    fn s3_on_cosets_of_transposition() {
        let s3 = PermGroup::symmetric(3).unwrap();
        let h = PermGroup::from_cycle_strings(3, &["(1 2)"]).unwrap();
        let act = coset_action(&s3, &h).unwrap();
        assert_eq!(act.induced_degree(), 3);
        let img = act.image_group();
        assert_eq!(img.order(), 6);
        assert!(perm_isomorphic(&img, &s3).unwrap().is_some());
        assert!(act.kernel().is_trivial());
    }

    #[test]
    fn homomorphism_property() {
        let g = PermGroup::from_cycle_strings(5, &["(1 2 3 4 5)", "(1 2)"]).unwrap();
        let h = g.stabilizer(0);
        let act = coset_action(&g, &h).unwrap();
        let els = g.elements();
        for a in els.iter().step_by(7) {
            for b in els.iter().step_by(11) {
                assert_eq!(act.image(&(a * b)), act.image(a) * act.image(b));
            }
        }
    }

    #[test]
    fn not_subgroup_rejected() {
        let a4 = PermGroup::alternating(4).unwrap();
        let h = PermGroup::from_cycle_strings(4, &["(1 2)"]).unwrap();
        assert_eq!(coset_action(&a4, &h).unwrap_err(), GroupError::NotSubgroup);
    }

    #[test]
    fn quotient_of_s4_by_v4() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let v4 = PermGroup::from_cycle_strings(4, &["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap();
        let q = quotient_as_perm(&s4, &v4).unwrap();
        assert_eq!(q.order(), 6);
        let s3 = PermGroup::symmetric(3).unwrap();
        assert!(super::super::find_isomorphism(&q, &s3).is_some());
        assert!(quotient_as_perm(&s4, &s4).unwrap().is_trivial());
        let c2 = PermGroup::from_cycle_strings(4, &["(1 2)"]).unwrap();
        assert_eq!(quotient_as_perm(&s4, &c2).unwrap_err(), GroupError::NotNormal);
    }
}
