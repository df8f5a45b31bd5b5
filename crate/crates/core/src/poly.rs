//! Integer polynomials (coefficients in ascending order): discriminants,
//! real-root counts, numerical roots and irreducibility.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::analytic::factor_mod_p;
use crate::arith::primes_up_to;

pub fn degree(f: &[BigInt]) -> usize {
    f.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

pub fn is_monic(f: &[BigInt]) -> bool {
    f.last().is_some_and(One::is_one)
}

pub fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Determinant by fraction-free Gaussian elimination.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (m, n) = (degree(f), degree(g));
    let size = m + n;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            rows[i][i + j] = f[m - j].clone();
        }
    }
    for i in 0..m {
        for j in 0..=n {
            rows[n + i][i + j] = g[n - j].clone();
        }
    }
    bareiss(rows)
}

/// Polynomial discriminant `(−1)^{n(n−1)/2} Res(f, f′) / lc(f)`.
pub fn discriminant(f: &[BigInt]) -> BigInt {
    let n = degree(f);
    if n <= 1 {
        return BigInt::one();
    }
    let r = resultant(&f[..=n], &derivative(&f[..=n]));
    let d = r / &f[n];
    if (n * (n - 1) / 2) % 2 == 1 {
        -d
    } else {
        d
    }
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let lead = r.last().unwrap().clone() / b[db].clone();
        let shift = r.len() - 1 - db;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &lead * c;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// Number of real roots of a squarefree polynomial, by a Sturm sequence.
pub fn real_root_count(f: &[BigInt]) -> usize {
    let to_rat = |v: &[BigInt]| -> Vec<BigRational> {
        v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    };
    let n = degree(f);
    let mut seq = vec![to_rat(&f[..=n]), to_rat(&derivative(&f[..=n]))];
    loop {
        let k = seq.len();
        if seq[k - 1].is_empty() || seq[k - 1].len() == 1 {
            break;
        }
        let r: Vec<BigRational> = rat_rem(&seq[k - 2], &seq[k - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    let changes = |at_neg: bool| {
        let signs: Vec<bool> = seq
            .iter()
            .filter(|p| !p.is_empty())
            .map(|p| {
                let pos = p.last().unwrap().is_positive();
                if at_neg && (p.len() - 1) % 2 == 1 {
                    !pos
                } else {
                    pos
                }
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(true) - changes(false)
}

fn eval_c(f: &[f64], z: Complex64) -> Complex64 {
    f.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// All complex roots by Aberth–Ehrlich iteration.
pub fn complex_roots(f: &[BigInt]) -> Vec<Complex64> {
    let n = degree(f);
    if n == 0 {
        return Vec::new();
    }
    let lc = f[n].to_f64().unwrap_or(f64::MAX);
    let c: Vec<f64> = f[..=n].iter().map(|x| x.to_f64().unwrap_or(f64::MAX) / lc).collect();
    let df: Vec<f64> = c.iter().enumerate().skip(1).map(|(i, x)| x * i as f64).collect();
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let p = eval_c(&c, z[i]);
            let dp = eval_c(&df, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Quotient `f / g` when `g` is monic and divides `f` exactly.
pub fn div_exact(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let (m, n) = (degree(f), degree(g));
    if n > m || !is_monic(&g[..=n]) {
        return None;
    }
    let mut r: Vec<BigInt> = f[..=m].to_vec();
    let mut q = vec![BigInt::zero(); m - n + 1];
    for k in (0..=m - n).rev() {
        let lead = r[k + n].clone();
        for (i, gi) in g[..=n].iter().enumerate() {
            r[k + i] -= &lead * gi;
        }
        q[k] = lead;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if ok[s - d] {
                ok[s] = true;
            }
        }
    }
    ok
}

/// Exact irreducibility over `ℚ` of a monic integer polynomial.
///
/// Factor degrees modulo small primes rule out most splittings. Any degree
/// that survives is settled by forming the candidate factors from subsets
/// of the numerical roots and testing exact division.
pub fn is_irreducible(f: &[BigInt]) -> bool {
    let n = degree(f);
    if n <= 1 {
        return true;
    }
    let disc = discriminant(f);
    if disc.is_zero() {
        return false;
    }
    let mut possible = vec![true; n + 1];
    for p in primes_up_to(300) {
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        let Ok(pattern) = factor_mod_p(f, p) else {
            continue;
        };
        let degs: Vec<usize> = pattern
            .iter()
            .flat_map(|&(d, m)| std::iter::repeat_n(d, m as usize))
            .collect();
        let sums = subset_sums(&degs, n);
        for k in 1..n {
            possible[k] &= sums[k];
        }
        if (1..n).all(|k| !possible[k]) {
            return true;
        }
    }
    let roots = complex_roots(f);
    for k in (1..=n / 2).filter(|&k| possible[k]) {
        if has_factor_of_degree(f, &roots, k) {
            return false;
        }
    }
    true
}

fn has_factor_of_degree(f: &[BigInt], roots: &[Complex64], k: usize) -> bool {
    let n = roots.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut prod = vec![Complex64::new(1.0, 0.0)];
        for &i in &idx {
            let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
            for (j, c) in prod.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * roots[i];
            }
            prod = next;
        }
        let near_integer = prod
            .iter()
            .all(|c| c.im.abs() < 1e-3 * c.re.abs().max(1.0) && (c.re - c.re.round()).abs() < 1e-3 * c.re.abs().max(1.0));
        if near_integer {
            let g: Vec<BigInt> = prod.iter().map(|c| BigInt::from(c.re.round() as i128)).collect();
            if div_exact(f, &g).is_some() {
                return true;
            }
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Evaluates at an integer.
pub fn eval(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Content (gcd of coefficients).
pub fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}
