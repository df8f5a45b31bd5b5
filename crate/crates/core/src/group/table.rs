use std::collections::HashMap;

use crate::perm::Perm;

/// Multiplication tables are materialized only up to this many elements.
const TABLE_LIMIT: usize = 4096;

/// A subset of an ambient group's elements, addressed by element index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn empty(n: usize) -> ElemSet {
        ElemSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        ElemSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Indexed view of a finite permutation group used by the lattice,
/// isomorphism and splitting code. Elements are sorted, so index 0 is the
/// identity.
#[derive(Debug)]
pub struct GroupTable {
    elements: Vec<Perm>,
    lookup: HashMap<Perm, u32>,
    mul: Option<Vec<u32>>,
    inv: Vec<u32>,
    orders: Vec<u32>,
}

impl GroupTable {
    pub fn new(mut elements: Vec<Perm>) -> GroupTable {
        elements.sort_unstable();
        elements.dedup();
        let n = elements.len();
        let lookup: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (*p, i as u32))
            .collect();
        let inv = elements.iter().map(|p| lookup[&p.inverse()]).collect();
        let orders = elements.iter().map(|p| p.order() as u32).collect();
        let mul = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(lookup[&a.compose(b)]);
                }
            }
            t
        });
        GroupTable {
            elements,
            lookup,
            mul,
            inv,
            orders,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    #[inline]
    pub fn perm(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    #[inline]
    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.lookup.get(p).map(|&i| i as usize)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.lookup[&self.elements[a].compose(&self.elements[b])] as usize,
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn order_of(&self, a: usize) -> u32 {
        self.orders[a]
    }

    /// Index of `g h g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn full_set(&self) -> ElemSet {
        let mut s = ElemSet::empty(self.len());
        for i in 0..self.len() {
            s.insert(i);
        }
        s
    }

    /// Subgroup generated by the given element indices.
    pub fn closure(&self, gens: &[usize]) -> ElemSet {
        let mut set = ElemSet::empty(self.len());
        set.insert(0);
        let mut list = vec![0usize];
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            k += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    list.push(y);
                }
            }
        }
        set
    }

    /// Smallest subgroup containing `base` and `extra`, where `base` is
    /// already a subgroup generated by `base_gens`.
    pub fn join_with(&self, base_gens: &[usize], extra: usize) -> ElemSet {
        let mut gens = base_gens.to_vec();
        gens.push(extra);
        self.closure(&gens)
    }

    pub fn cyclic(&self, g: usize) -> ElemSet {
        self.closure(&[g])
    }

    pub fn conjugate_set(&self, g: usize, set: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.len());
        for h in set.iter() {
            out.insert(self.conj(g, h));
        }
        out
    }

    /// Elements of the ambient group normalizing `set`.
    pub fn normalizer(&self, set: &ElemSet, set_gens: &[usize]) -> ElemSet {
        let mut out = ElemSet::empty(self.len());
        for g in 0..self.len() {
            if set_gens.iter().all(|&h| set.contains(self.conj(g, h))) {
                out.insert(g);
            }
        }
        out
    }

    /// A small generating set for the subgroup `set`: greedily adds the
    /// highest-order element not yet covered.
    pub fn generators_of(&self, set: &ElemSet) -> Vec<usize> {
        let mut members: Vec<usize> = set.iter().collect();
        members.sort_by_key(|&i| (std::cmp::Reverse(self.order_of(i)), i));
        let target = members.len();
        let mut gens = Vec::new();
        let mut current = self.closure(&[]);
        for &m in &members {
            if current.len() == target {
                break;
            }
            if !current.contains(m) {
                gens.push(m);
                current = self.closure(&gens);
            }
        }
        gens
    }

    pub fn perms_of(&self, set: &ElemSet) -> Vec<Perm> {
        set.iter().map(|i| self.elements[i]).collect()
    }

    pub fn set_of<'a>(&self, perms: impl IntoIterator<Item = &'a Perm>) -> Option<ElemSet> {
        let mut s = ElemSet::empty(self.len());
        for p in perms {
            s.insert(self.index_of(p)?);
        }
        Some(s)
    }
}
