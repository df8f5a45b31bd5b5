//! Deterministic Schreier–Sims stabilizer chain, used for group orders and
//! membership without enumerating elements.

use crate::perm::Perm;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// `transversal[x] = u` with `u(base) = x`, for `x` in the basic orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    strong: Vec<Perm>,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm]) -> StabChain {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for g in gens.iter().filter(|g| !g.is_identity()) {
            if chain.levels.iter().all(|l| g.apply(l.base) == l.base) {
                chain.push_base_for(g);
            }
            chain.strong.push(*g);
        }
        for i in 0..chain.levels.len() {
            chain.rebuild(i);
        }
        chain.complete();
        chain
    }

    fn push_base_for(&mut self, h: &Perm) {
        let moved = (0..self.degree)
            .find(|&x| h.apply(x) != x)
            .expect("non-identity permutation moves a point");
        self.levels.push(Level {
            base: moved,
            transversal: Vec::new(),
            orbit: Vec::new(),
        });
    }

    fn level_gens(&self, i: usize) -> Vec<Perm> {
        self.strong
            .iter()
            .filter(|s| self.levels[..i].iter().all(|l| s.apply(l.base) == l.base))
            .copied()
            .collect()
    }

    fn rebuild(&mut self, i: usize) {
        let gens = self.level_gens(i);
        let base = self.levels[i].base;
        let mut transversal = vec![None; self.degree];
        transversal[base] = Some(Perm::identity(self.degree));
        let mut orbit = vec![base];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            k += 1;
            let ux = transversal[x].unwrap();
            for s in &gens {
                let y = s.apply(x);
                if transversal[y].is_none() {
                    transversal[y] = Some(s.compose(&ux));
                    orbit.push(y);
                }
            }
        }
        self.levels[i].transversal = transversal;
        self.levels[i].orbit = orbit;
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed all levels).
    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let x = g.apply(level.base);
            match &level.transversal[x] {
                Some(u) => g = u.inverse().compose(&g),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let iu = i as usize;
            let gens = self.level_gens(iu);
            let orbit = self.levels[iu].orbit.clone();
            for &x in &orbit {
                let ux = self.levels[iu].transversal[x].unwrap();
                for s in &gens {
                    let sx = s.apply(x);
                    let usx = self.levels[iu].transversal[sx].unwrap();
                    let schreier = usx.inverse().compose(&s.compose(&ux));
                    let (h, j) = self.strip(schreier, iu + 1);
                    if !h.is_identity() {
                        if j == self.levels.len() {
                            self.push_base_for(&h);
                        }
                        self.strong.push(h);
                        for l in iu + 1..=j {
                            self.rebuild(l);
                        }
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// Product of basic orbit lengths.
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.strip(*g, 0).0.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }
}
