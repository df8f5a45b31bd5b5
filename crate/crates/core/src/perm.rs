//! Permutations of at most [`MAX_DEGREE`] points.
//!
//! Points are stored 0-based internally; all text forms (cycle notation,
//! canonical serialization) are 1-based.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported permutation degree.
pub const MAX_DEGREE: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree {0} outside 1..={MAX_DEGREE}")]
    BadDegree(usize),
    #[error("images do not form a bijection on 1..={0}")]
    NotBijective(usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cannot parse cycle notation {0:?}")]
    Parse(String),
}

/// A permutation of `{0, .., degree-1}`.
///
/// Slots past `degree` always hold their own index so that derived
/// equality, ordering and hashing agree with permutation equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    degree: u8,
    images: [u8; MAX_DEGREE],
}

const IDENTITY_IMAGES: [u8; MAX_DEGREE] = {
    let mut a = [0u8; MAX_DEGREE];
    let mut i = 0;
    while i < MAX_DEGREE {
        a[i] = i as u8;
        i += 1;
    }
    a
};

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        assert!((1..=MAX_DEGREE).contains(&degree), "bad degree {degree}");
        Perm {
            degree: degree as u8,
            images: IDENTITY_IMAGES,
        }
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: &[usize]) -> Result<Perm, PermError> {
        let n = images.len();
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(PermError::BadDegree(n));
        }
        let mut seen = [false; MAX_DEGREE];
        let mut out = IDENTITY_IMAGES;
        for (i, &img) in images.iter().enumerate() {
            if img >= n || seen[img] {
                return Err(PermError::NotBijective(n));
            }
            seen[img] = true;
            out[i] = img as u8;
        }
        Ok(Perm {
            degree: n as u8,
            images: out,
        })
    }

    /// Builds a permutation from 1-based images, as written in the literature.
    pub fn from_images_one_based(images: &[usize]) -> Result<Perm, PermError> {
        let zero: Vec<usize> = images
            .iter()
            .map(|&x| x.checked_sub(1).ok_or(PermError::NotBijective(images.len())))
            .collect::<Result<_, _>>()?;
        Perm::from_images(&zero)
    }

    /// Builds a permutation from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm, PermError> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(PermError::BadDegree(degree));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(PermError::PointOutOfRange { point: a + 1, degree });
                }
                if touched[a] {
                    return Err(PermError::NotBijective(degree));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(&images)
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4)` or `(1,2)(3,4)`.
    /// `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm, PermError> {
        let bad = || PermError::Parse(text.to_string());
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(bad)?;
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let body = &rest[1..body_end];
            let pts: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().ok().and_then(|x| x.checked_sub(1)))
                .collect::<Option<_>>()
                .ok_or_else(bad)?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = rest[body_end + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// 0-based images.
    pub fn images(&self) -> &[u8] {
        &self.images[..self.degree as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images == IDENTITY_IMAGES
    }

    /// Functional composition: `(self ∘ other)(x) = self(other(x))`.
    #[inline]
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree, other.degree);
        let mut out = IDENTITY_IMAGES;
        for i in 0..self.degree as usize {
            out[i] = self.images[other.images[i] as usize];
        }
        Perm {
            degree: self.degree,
            images: out,
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut out = IDENTITY_IMAGES;
        for i in 0..self.degree as usize {
            out[self.images[i] as usize] = i as u8;
        }
        Perm {
            degree: self.degree,
            images: out,
        }
    }

    /// `c ∘ self ∘ c⁻¹`, i.e. `self` relabelled by `c`.
    pub fn conjugate_by(&self, c: &Perm) -> Perm {
        let mut out = IDENTITY_IMAGES;
        for i in 0..self.degree as usize {
            out[c.images[i] as usize] = c.images[self.images[i] as usize];
        }
        Perm {
            degree: self.degree,
            images: out,
        }
    }

    pub fn pow(&self, mut k: u64) -> Perm {
        let mut base = *self;
        let mut acc = Perm::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    /// Cycles of length ≥ 2, each starting at its smallest point, ordered by
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Sorted lengths of all cycles, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    pub fn num_orbits(&self) -> usize {
        self.cycle_type().len()
    }

    /// Degree minus the number of orbits of `⟨self⟩`.
    pub fn index(&self) -> usize {
        self.degree() - self.num_orbits()
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
    }

    pub fn is_even(&self) -> bool {
        self.index().is_multiple_of(2)
    }
}

impl Mul for Perm {
    type Output = Perm;
    fn mul(self, rhs: Perm) -> Perm {
        self.compose(&rhs)
    }
}

impl<'a> Mul<&'a Perm> for &'a Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree, self)
    }
}

/// `"deg:cycles"`, e.g. `8:(1 2)(3 4)`.
impl FromStr for Perm {
    type Err = PermError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (deg, body) = s.split_once(':').ok_or_else(|| PermError::Parse(s.to_string()))?;
        let degree: usize = deg
            .trim()
            .parse()
            .map_err(|_| PermError::Parse(s.to_string()))?;
        Perm::parse_cycles(degree, body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(deg: usize, s: &str) -> Perm {
        Perm::parse_cycles(deg, s).unwrap()
    }

    #[test]
    fn index_examples() {
        assert_eq!(p(8, "(1 2)").index(), 1);
        assert_eq!(Perm::identity(8).index(), 0);
        assert_eq!(p(8, "(1 2 3 4 5 6 7 8)").index(), 7);
    }

    #[test]
    fn cycle_notation_round_trip() {
        let g = p(8, "(1,3,5)(2 8)");
        assert_eq!(g.to_string(), "(1 3 5)(2 8)");
        assert_eq!(p(8, &g.to_string()), g);
        assert_eq!(Perm::identity(5).to_string(), "()");
        assert_eq!("5:()".parse::<Perm>().unwrap(), Perm::identity(5));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Perm::parse_cycles(4, "(1 5)").is_err());
        assert!(Perm::parse_cycles(4, "(1 2)(2 3)").is_err());
        assert!(Perm::parse_cycles(4, "1 2").is_err());
        assert!(Perm::from_images(&[0, 0, 1]).is_err());
        assert!(Perm::from_images(&[0; 25]).is_err());
    }

    #[test]
    fn composition_is_right_to_left() {
        let a = p(3, "(1 2)");
        let b = p(3, "(2 3)");
        // a∘b sends 2 -> 3 -> 3 and 3 -> 2 -> 1
        assert_eq!((a * b).to_string(), "(1 2 3)");
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(&v).unwrap())
    }

    proptest! {
        #[test]
        fn group_axioms(a in arb_perm(9), b in arb_perm(9), c in arb_perm(9)) {
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert!((a * a.inverse()).is_identity());
            prop_assert!((a.inverse() * a).is_identity());
        }

        #[test]
        fn index_is_conjugation_invariant(g in arb_perm(8), h in arb_perm(8)) {
            prop_assert_eq!(g.index(), (h * g * h.inverse()).index());
            prop_assert_eq!(g.conjugate_by(&h), h * g * h.inverse());
        }

        #[test]
        fn order_kills(g in arb_perm(10)) {
            prop_assert!(g.pow(g.order()).is_identity());
        }
    }
}
