//! Permutation isomorphism (conjugacy inside `S_n`) and abstract
//! isomorphism of small groups.

use std::collections::BTreeMap;

use crate::perm::{Perm, MAX_DEGREE};

use super::table::GroupTable;
use super::{GroupError, PermGroup};

pub const PERM_ISO_MAX_DEGREE: usize = 12;

fn orbit_lengths(g: &PermGroup) -> Vec<usize> {
    let mut v: Vec<usize> = g.orbits().iter().map(|o| o.len()).collect();
    v.sort_unstable();
    v
}

fn generating_perms(g: &PermGroup) -> Vec<Perm> {
    let t = g.table();
    t.generators_of(&t.full_set())
        .into_iter()
        .map(|i| *t.perm(i))
        .collect()
}

/// Finds `c` with `c a c⁻¹ = b` for every pair, by assigning one point per
/// orbit of `⟨a_i⟩` and propagating along the generators.
fn simultaneous_conjugator(n: usize, a: &[Perm], b: &[Perm]) -> Option<Perm> {
    fn assign(
        a: &[Perm],
        b: &[Perm],
        map: &mut [Option<u8>; MAX_DEGREE],
        used: &mut [bool; MAX_DEGREE],
        trail: &mut Vec<usize>,
        x: usize,
        y: usize,
    ) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            match map[x] {
                Some(v) if v as usize == y => continue,
                Some(_) => return false,
                None => {
                    if used[y] {
                        return false;
                    }
                    map[x] = Some(y as u8);
                    used[y] = true;
                    trail.push(x);
                }
            }
            for (ai, bi) in a.iter().zip(b) {
                queue.push((ai.apply(x), bi.apply(y)));
            }
        }
        true
    }

    fn search(
        n: usize,
        a: &[Perm],
        b: &[Perm],
        map: &mut [Option<u8>; MAX_DEGREE],
        used: &mut [bool; MAX_DEGREE],
    ) -> bool {
        let Some(x) = (0..n).find(|&x| map[x].is_none()) else {
            return true;
        };
        for y in 0..n {
            if used[y] {
                continue;
            }
            let mut trail = Vec::new();
            if assign(a, b, map, used, &mut trail, x, y) && search(n, a, b, map, used) {
                return true;
            }
            for &t in &trail {
                used[map[t].unwrap() as usize] = false;
                map[t] = None;
            }
        }
        false
    }

    let mut map = [None; MAX_DEGREE];
    let mut used = [false; MAX_DEGREE];
    if !search(n, a, b, &mut map, &mut used) {
        return None;
    }
    let images: Vec<usize> = (0..n).map(|x| map[x].unwrap() as usize).collect();
    Some(Perm::from_images(&images).expect("bijective assignment"))
}

/// Returns `c` with `c A c⁻¹ = B` if `A` and `B` are conjugate in `S_n`.
///
/// Candidates are filtered by order, cycle-type census and orbit lengths;
/// then generator images are enumerated (the first one up to
/// `B`-conjugacy) and a conjugator solved for by backtracking.
pub fn perm_isomorphic(a: &PermGroup, b: &PermGroup) -> Result<Option<Perm>, GroupError> {
    if a.degree() != b.degree() {
        return Err(GroupError::DegreeMismatch(a.degree(), b.degree()));
    }
    let n = a.degree();
    if n > PERM_ISO_MAX_DEGREE {
        return Err(GroupError::DegreeLimit(n, PERM_ISO_MAX_DEGREE));
    }
    if a.order() != b.order()
        || orbit_lengths(a) != orbit_lengths(b)
        || a.cycle_type_census() != b.cycle_type_census()
    {
        return Ok(None);
    }
    if a.is_trivial() {
        return Ok(Some(Perm::identity(n)));
    }
    let gens = generating_perms(a);
    let types: Vec<Vec<usize>> = gens.iter().map(|g| g.cycle_type()).collect();
    let first: Vec<Perm> = b
        .conjugacy_classes()
        .iter()
        .map(|c| c.representative)
        .filter(|r| r.cycle_type() == types[0])
        .collect();
    let rest: Vec<Vec<Perm>> = types[1..]
        .iter()
        .map(|ty| {
            b.elements()
                .iter()
                .filter(|e| &e.cycle_type() == ty)
                .copied()
                .collect()
        })
        .collect();

    let mut chosen: Vec<Perm> = Vec::with_capacity(gens.len());
    fn pick(
        n: usize,
        gens: &[Perm],
        first: &[Perm],
        rest: &[Vec<Perm>],
        chosen: &mut Vec<Perm>,
    ) -> Option<Perm> {
        let depth = chosen.len();
        if depth == gens.len() {
            return simultaneous_conjugator(n, gens, chosen);
        }
        let pool: &[Perm] = if depth == 0 { first } else { &rest[depth - 1] };
        for cand in pool {
            chosen.push(*cand);
            // prune with the partial system
            let ok = depth == 0 || simultaneous_conjugator(n, &gens[..=depth], chosen).is_some();
            if ok {
                if let Some(c) = pick(n, gens, first, rest, chosen) {
                    return Some(c);
                }
            }
            chosen.pop();
        }
        None
    }
    let Some(c) = pick(n, &gens, &first, &rest, &mut chosen) else {
        return Ok(None);
    };
    // checked, not trusted
    let ok = a.generators().iter().all(|g| b.contains(&g.conjugate_by(&c)));
    Ok(ok.then_some(c))
}

/// An isomorphism given by generator images.
#[derive(Debug, Clone)]
pub struct GroupHom {
    pub sources: Vec<Perm>,
    pub images: Vec<Perm>,
}

fn order_profile(t: &GroupTable) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for i in 0..t.len() {
        *m.entry(t.order_of(i)).or_insert(0) += 1;
    }
    m
}

/// Extends `gens ↦ imgs` along the Cayley graph of the source; succeeds iff
/// the assignment defines an injective homomorphism.
fn extends_to_iso(src: &GroupTable, dst: &GroupTable, gens: &[usize], imgs: &[usize]) -> bool {
    let n = src.len();
    let mut phi = vec![usize::MAX; n];
    let mut hit = vec![false; dst.len()];
    phi[0] = 0;
    hit[0] = true;
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for (&g, &h) in gens.iter().zip(imgs) {
            let y = src.mul(x, g);
            let img = dst.mul(phi[x], h);
            if phi[y] == usize::MAX {
                if hit[img] {
                    return false;
                }
                hit[img] = true;
                phi[y] = img;
                queue.push(y);
            } else if phi[y] != img {
                return false;
            }
        }
    }
    queue.len() == n
}

/// Abstract isomorphism `A → B` by generator-image backtracking, with an
/// element-order profile prefilter.
pub fn find_isomorphism(a: &PermGroup, b: &PermGroup) -> Option<GroupHom> {
    if a.order() != b.order() {
        return None;
    }
    let (ta, tb) = (a.table(), b.table());
    if order_profile(ta) != order_profile(tb) {
        return None;
    }
    let gens = ta.generators_of(&ta.full_set());
    if gens.is_empty() {
        return Some(GroupHom {
            sources: vec![],
            images: vec![],
        });
    }
    let class_reps: Vec<usize> = b
        .conjugacy_classes()
        .iter()
        .map(|c| tb.index_of(&c.representative).unwrap())
        .collect();
    let pools: Vec<Vec<usize>> = gens
        .iter()
        .enumerate()
        .map(|(i, &g)| {
            let ord = ta.order_of(g);
            let base: Vec<usize> = if i == 0 {
                class_reps.clone()
            } else {
                (0..tb.len()).collect()
            };
            base.into_iter().filter(|&h| tb.order_of(h) == ord).collect()
        })
        .collect();

    let mut chosen = Vec::with_capacity(gens.len());
    fn pick(
        ta: &GroupTable,
        tb: &GroupTable,
        gens: &[usize],
        pools: &[Vec<usize>],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == gens.len() {
            return extends_to_iso(ta, tb, gens, chosen);
        }
        for &c in &pools[chosen.len()] {
            chosen.push(c);
            if pick(ta, tb, gens, pools, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if !pick(ta, tb, &gens, &pools, &mut chosen) {
        return None;
    }
    Some(GroupHom {
        sources: gens.iter().map(|&i| *ta.perm(i)).collect(),
        images: chosen.iter().map(|&i| *tb.perm(i)).collect(),
    })
}
