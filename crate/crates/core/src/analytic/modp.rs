//! Polynomials over prime fields `𝔽_p` with `p < 2⁶¹`, and their
//! factorization: squarefree, distinct-degree, then equal-degree splitting.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::arith::{is_prime, mul_mod, pow_mod};

use super::AnalyticError;

pub const MAX_MODULUS: u64 = 1 << 61;

/// A polynomial over `𝔽_p`, coefficients ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> PolyModP {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyModP { p, coeffs }
    }

    pub fn from_integers(p: u64, f: &[BigInt]) -> PolyModP {
        let m = BigInt::from(p);
        PolyModP::new(
            p,
            f.iter()
                .map(|c| c.mod_floor(&m).to_u64().expect("reduced residue"))
                .collect(),
        )
    }

    pub fn one(p: u64) -> PolyModP {
        PolyModP::new(p, vec![1])
    }

    pub fn x(p: u64) -> PolyModP {
        PolyModP::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree 0 here.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn lead(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn monic(&self) -> PolyModP {
        if self.is_zero() {
            return self.clone();
        }
        let li = self.inv(self.lead());
        PolyModP::new(self.p, self.coeffs.iter().map(|&c| mul_mod(c, li, self.p)).collect())
    }

    pub fn add(&self, other: &PolyModP) -> PolyModP {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        PolyModP::new(self.p, c)
    }

    pub fn sub(&self, other: &PolyModP) -> PolyModP {
        let neg = PolyModP::new(
            self.p,
            other.coeffs.iter().map(|&c| (self.p - c) % self.p).collect(),
        );
        self.add(&neg)
    }

    pub fn mul(&self, other: &PolyModP) -> PolyModP {
        if self.is_zero() || other.is_zero() {
            return PolyModP::new(self.p, vec![]);
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        PolyModP::new(self.p, c)
    }

    pub fn div_rem(&self, d: &PolyModP) -> (PolyModP, PolyModP) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let li = self.inv(d.lead());
        if r.len() <= dd {
            return (PolyModP::new(p, vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dd], li, p);
            q[k] = c;
            if c != 0 {
                for (i, &di) in d.coeffs.iter().enumerate() {
                    r[k + i] = (r[k + i] + p - mul_mod(c, di, p)) % p;
                }
            }
        }
        r.truncate(dd);
        (PolyModP::new(p, q), PolyModP::new(p, r))
    }

    pub fn rem(&self, d: &PolyModP) -> PolyModP {
        self.div_rem(d).1
    }

    pub fn gcd(&self, other: &PolyModP) -> PolyModP {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> PolyModP {
        PolyModP::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &PolyModP) -> PolyModP {
        let mut acc = PolyModP::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// `g` with `g(x)^p = self`, for `self` a polynomial in `x^p`.
    fn pth_root(&self) -> PolyModP {
        let p = self.p as usize;
        PolyModP::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }
}

/// Squarefree decomposition of a monic polynomial: `(factor, multiplicity)`.
fn squarefree(f: &PolyModP) -> Vec<(PolyModP, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree(&f.pth_root()) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if fac.degree() > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree(&c.pth_root()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial.
fn distinct_degree(f: &PolyModP) -> Vec<(usize, PolyModP)> {
    let p = f.p;
    let pe = BigUint::from(p);
    let x = PolyModP::x(p);
    let mut g = f.clone();
    let mut h = x.rem(&g);
    let mut out = Vec::new();
    let mut i = 1;
    while g.degree() >= 2 * i {
        h = h.pow_mod(&pe, &g);
        let d = g.gcd(&h.sub(&x));
        if d.degree() > 0 {
            g = g.div_rem(&d).0;
            h = h.rem(&g);
            out.push((i, d));
        }
        i += 1;
    }
    if g.degree() > 0 {
        out.push((g.degree(), g.monic()));
    }
    out
}

/// Deterministic pseudo-random candidates for the splitting step.
struct Candidates(u64);

impl Candidates {
    fn next(&mut self, p: u64, deg: usize) -> PolyModP {
        let mut c = Vec::with_capacity(deg);
        for _ in 0..deg {
            self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = self.0;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            c.push((z ^ (z >> 31)) % p);
        }
        PolyModP::new(p, c)
    }
}

/// Splits a product of distinct irreducibles of degree `d`.
fn equal_degree(f: &PolyModP, d: usize, rng: &mut Candidates) -> Vec<PolyModP> {
    if f.degree() == d {
        return vec![f.monic()];
    }
    let p = f.p;
    loop {
        let a = rng.next(p, f.degree());
        if a.degree() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a² + … + a^{2^{d−1}}
            let mut t = a.rem(f);
            let mut s = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                s = s.add(&t);
            }
            s
        } else {
            let e = (num_traits::pow(BigUint::from(p), d) - BigUint::one()) / 2u32;
            a.pow_mod(&e, f).sub(&PolyModP::one(p))
        };
        let g = f.gcd(&b);
        if g.degree() > 0 && g.degree() < f.degree() {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.div_rem(&g).0, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// checked by re-multiplication.
pub fn factor_full(f: &PolyModP) -> Result<Vec<(PolyModP, u32)>, AnalyticError> {
    if !f.is_monic() {
        return Err(AnalyticError::NotMonic);
    }
    let mut rng = Candidates(f.p ^ 0x5DEECE66D);
    let mut out = Vec::new();
    for (sq, m) in squarefree(f) {
        for (d, part) in distinct_degree(&sq) {
            for irr in equal_degree(&part, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort();
    let mut prod = PolyModP::one(f.p);
    for (g, m) in &out {
        for _ in 0..*m {
            prod = prod.mul(g);
        }
    }
    if &prod != f {
        return Err(AnalyticError::FactorCheck(f.p));
    }
    Ok(out)
}

/// Degrees of the irreducible factors of a monic integer polynomial modulo
/// `p`, as sorted `(degree, multiplicity)` pairs.
pub fn factor_mod_p(f: &[BigInt], p: u64) -> Result<Vec<(usize, u32)>, AnalyticError> {
    if p >= MAX_MODULUS || !is_prime(p) {
        return Err(AnalyticError::NotPrime(p));
    }
    let g = PolyModP::from_integers(p, f);
    if !g.is_monic() || g.degree() + 1 != f.len() {
        return Err(AnalyticError::NotMonic);
    }
    let mut degs: Vec<(usize, u32)> = factor_full(&g)?
        .into_iter()
        .map(|(h, m)| (h.degree(), m))
        .collect();
    degs.sort_unstable();
    Ok(degs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(factor_mod_p(&z(&[1, 0, 1]), 5).unwrap(), vec![(1, 1), (1, 1)]);
        assert_eq!(factor_mod_p(&z(&[1, 0, 1]), 3).unwrap(), vec![(2, 1)]);
        assert_eq!(factor_mod_p(&z(&[1, 0, 1]), 2).unwrap(), vec![(1, 2)]);
        assert_eq!(factor_mod_p(&z(&[-1, -1, 0, 0, 1]), 2).unwrap(), vec![(4, 1)]);
        assert!(matches!(factor_mod_p(&z(&[1, 0, 1]), 9), Err(AnalyticError::NotPrime(9))));
    }

    #[test]
    fn quartic_mod_2_against_irreducibles() {
        // the monic irreducibles of degree ≤ 2 over 𝔽₂: x, x+1, x²+x+1
        let f = PolyModP::from_integers(2, &z(&[-1, -1, 0, 0, 1]));
        for g in [vec![0, 1], vec![1, 1], vec![1, 1, 1]] {
            let g = PolyModP::new(2, g);
            assert!(!f.rem(&g).is_zero());
        }
    }

    #[test]
    fn inseparable_power() {
        // (x+1)^4 = x⁴ + 1 over 𝔽₂; (x²+x+1)³ over 𝔽₃
        assert_eq!(factor_mod_p(&z(&[1, 0, 0, 0, 1]), 2).unwrap(), vec![(1, 4)]);
        let g = PolyModP::new(3, vec![2, 0, 1]); // x² − 1 = (x−1)(x+1)
        let cube = g.mul(&g).mul(&g);
        let coeffs: Vec<BigInt> = cube.coeffs().iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(factor_mod_p(&coeffs, 3).unwrap(), vec![(1, 3), (1, 3)]);
    }

    #[test]
    fn large_prime() {
        let p = (1u64 << 61) - 1;
        let r = factor_mod_p(&z(&[1, 0, 1]), p).unwrap();
        // p ≡ 3 mod 4, so x² + 1 is irreducible
        assert_eq!(r, vec![(2, 1)]);
        let r = factor_mod_p(&z(&[-1, -1, 0, 0, 1]), p).unwrap();
        assert_eq!(r.iter().map(|(d, m)| d * *m as usize).sum::<usize>(), 4);
    }

    proptest! {
        #[test]
        fn degrees_sum_to_degree(
            coeffs in proptest::collection::vec(-50i64..50, 1..8),
            pi in 0usize..10,
        ) {
            let p = [2u64, 3, 5, 7, 11, 13, 101, 1009, 65537, 1_000_000_007][pi];
            let mut f = z(&coeffs);
            f.push(BigInt::one());
            let r = factor_mod_p(&f, p).unwrap();
            prop_assert_eq!(r.iter().map(|(d, m)| d * *m as usize).sum::<usize>(), f.len() - 1);
        }
    }
}
