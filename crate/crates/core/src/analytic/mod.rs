//! Dedekind zeta values of quartic fields and the leading constant of the
//! octic counting function.

mod modp;

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::primes_up_to;
use crate::nfdata::{FieldRecord, Snapshot};
use crate::poly;

pub use modp::{factor_full, factor_mod_p, PolyModP, MAX_MODULUS};

/// Exponent in the bound `|Cl(K)[2]| ≪ |Δ_K|^{κ+ε}` for quartic fields.
/// Used only to annotate reports.
pub const KAPPA: f64 = 0.2784;

pub const DEFAULT_PRIME_BOUND: u64 = 100_000;

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

#[derive(Debug, Error, PartialEq)]
pub enum AnalyticError {
    #[error("{0} is not a prime below 2^61")]
    NotPrime(u64),
    #[error("polynomial is not monic modulo p")]
    NotMonic,
    #[error("factorization modulo {0} failed its re-multiplication check")]
    FactorCheck(u64),
    #[error("{label}: defining polynomial is reducible")]
    Reducible { label: String },
    #[error("{label}: missing {field}")]
    MissingInvariant { label: String, field: &'static str },
    #[error("{label}: discriminant does not divide the polynomial discriminant")]
    IndexMismatch { label: String },
    #[error("prime bound {0} is below 100")]
    PrimeBound(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalFactorData {
    pub p: u64,
    /// Residue degrees of the primes above `p`; empty when untrusted.
    pub residue_degrees: Vec<usize>,
    pub ramified: bool,
    /// False when `p` may divide the index of `ℤ[θ]` in the maximal order.
    pub trusted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaValue {
    pub value: f64,
    pub error_bound: f64,
}

impl ZetaValue {
    pub fn lower(&self) -> f64 {
        self.value - self.error_bound
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error_bound
    }

    pub fn contains(&self, x: f64) -> bool {
        (x - self.value).abs() <= self.error_bound
    }
}

/// Squared index `disc(f) / Δ_K` of the polynomial order.
fn index_square(record: &FieldRecord) -> Result<BigInt, AnalyticError> {
    if record.coeffs.len() == 2 {
        return Ok(BigInt::from(1));
    }
    let pd = poly::discriminant(&record.coeffs);
    if record.disc.is_zero() || !(&pd % &record.disc).is_zero() {
        return Err(AnalyticError::IndexMismatch {
            label: record.label.clone(),
        });
    }
    Ok((pd / &record.disc).abs())
}

fn divides(p: u64, n: &BigInt) -> bool {
    (n % BigInt::from(p)).is_zero()
}

/// Splitting data at `p`. Primes dividing the squared index are
/// untrusted; at the others the factorization modulo `p` is the
/// factorization of `p`.
pub fn local_factor_data(
    record: &FieldRecord,
    p: u64,
    index_sq: &BigInt,
) -> Result<LocalFactorData, AnalyticError> {
    let ramified = divides(p, &record.disc);
    if divides(p, index_sq) {
        return Ok(LocalFactorData {
            p,
            residue_degrees: Vec::new(),
            ramified,
            trusted: false,
        });
    }
    let degs = factor_mod_p(&record.coeffs, p)?;
    Ok(LocalFactorData {
        p,
        residue_degrees: degs.into_iter().map(|(d, _)| d).collect(),
        ramified,
        trusted: true,
    })
}

/// `ζ_K(2)` as a truncated Euler product over `p ≤ prime_bound`.
///
/// The true value lies in `[lo, hi]` where untrusted local factors are
/// bracketed by `1` and `(1 − p⁻²)^{−n}`, and the tail is bounded by
/// `exp(n Σ_{p>P} p⁻²/(1 − p⁻²))` with `Σ_{p>P} p⁻² ≤ 1/(P − 1)`.
pub fn zeta_k_at_2(record: &FieldRecord, prime_bound: u64) -> Result<ZetaValue, AnalyticError> {
    if prime_bound < 100 {
        return Err(AnalyticError::PrimeBound(prime_bound));
    }
    let n = record.coeffs.len() - 1;
    if n > 1 && !poly::is_irreducible(&record.coeffs) {
        return Err(AnalyticError::Reducible {
            label: record.label.clone(),
        });
    }
    let index_sq = index_square(record)?;
    let mut lo = 1.0f64;
    let mut bracket = 1.0f64;
    let mut ops = 0u64;
    for p in primes_up_to(prime_bound) {
        let data = if n == 1 {
            LocalFactorData {
                p,
                residue_degrees: vec![1],
                ramified: false,
                trusted: true,
            }
        } else {
            local_factor_data(record, p, &index_sq)?
        };
        let pf = p as f64;
        if data.trusted {
            for f in data.residue_degrees {
                lo /= 1.0 - pf.powi(-2 * f as i32);
                ops += 4;
            }
        } else {
            bracket /= (1.0 - pf.powi(-2)).powi(n as i32);
            ops += 4 + n as u64;
        }
    }
    let pb = prime_bound as f64;
    let tail_sum = 1.0 / ((pb - 1.0) * (1.0 - pb.powi(-2)));
    let tail = (n as f64 * tail_sum).exp();
    let hi = lo * bracket * tail;
    let rounding = hi * (ops + 16) as f64 * UNIT_ROUNDOFF * 1.01;
    Ok(ZetaValue {
        value: (lo + hi) / 2.0,
        error_bound: (hi - lo) / 2.0 + rounding,
    })
}

/// Residue at `s = 1` by the analytic class number formula
/// `2^{r₁} (2π)^{r₂} h R / (w √|Δ|)`.
pub fn zeta_residue(record: &FieldRecord) -> Result<ZetaValue, AnalyticError> {
    let missing = |field| AnalyticError::MissingInvariant {
        label: record.label.clone(),
        field,
    };
    let h = record.h.ok_or_else(|| missing("h"))? as f64;
    let w = record.w.ok_or_else(|| missing("w"))? as f64;
    let unit_rank = (record.r1 + record.r2).saturating_sub(1);
    let (reg, reg_rel) = if unit_rank == 0 {
        (1.0, 0.0)
    } else {
        let r = record.reg.as_ref().ok_or_else(|| missing("reg"))?;
        (r.value(), r.relative_precision())
    };
    let abs_disc = record.disc.abs().to_f64().ok_or_else(|| missing("disc"))?;
    let value = 2f64.powi(record.r1 as i32) * (2.0 * PI).powi(record.r2 as i32) * h * reg
        / (w * abs_disc.sqrt());
    Ok(ZetaValue {
        value,
        error_bound: value * (reg_rel + 16.0 * UNIT_ROUNDOFF),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantTerm {
    pub label: String,
    pub disc: String,
    pub value: f64,
    pub error_bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PartialConstant {
    /// Cutoff on `|Δ_K|`.
    pub z: String,
    pub prime_bound: u64,
    pub value: f64,
    pub error_bound: f64,
    pub terms: usize,
    pub term_list: Vec<ConstantTerm>,
}

fn term(
    record: &FieldRecord,
    residue: impl Fn(&FieldRecord) -> Result<ZetaValue, AnalyticError>,
    zeta2: impl Fn(&FieldRecord) -> Result<ZetaValue, AnalyticError>,
) -> Result<ConstantTerm, AnalyticError> {
    let res = residue(record)?;
    let z2 = zeta2(record)?;
    let d = record.disc.abs().to_f64().unwrap_or(f64::INFINITY);
    let scale = 2f64.powi(record.r2 as i32) * d * d;
    let value = res.value / (scale * z2.value);
    let hi = res.upper() / (scale * z2.lower());
    let lo = res.lower() / (scale * z2.upper());
    let rounding = value * 8.0 * UNIT_ROUNDOFF;
    Ok(ConstantTerm {
        label: record.label.clone(),
        disc: record.disc.to_string(),
        value,
        error_bound: (hi - value).max(value - lo) + rounding,
    })
}

/// Sum of `ζ*_K(1) / (2^{r₂} ζ_K(2) Δ_K²)` over `S₄`-quartic records with
/// `|Δ_K| ≤ z`, with the residue and `ζ_K(2)` supplied by the callers.
pub fn partial_constant_with<R, F>(
    snapshot: &Snapshot,
    z: &BigInt,
    prime_bound: u64,
    residue: R,
    zeta2: F,
) -> Result<PartialConstant, AnalyticError>
where
    R: Fn(&FieldRecord) -> Result<ZetaValue, AnalyticError> + Sync,
    F: Fn(&FieldRecord) -> Result<ZetaValue, AnalyticError> + Sync,
{
    let fields: Vec<&FieldRecord> = snapshot
        .records
        .values()
        .filter(|r| r.degree == 4 && r.galois == "4T5" && r.disc.abs() <= *z)
        .collect();
    let term_list: Vec<ConstantTerm> = fields
        .par_iter()
        .map(|r| term(r, &residue, &zeta2))
        .collect::<Result<_, _>>()?;
    let mut value = 0.0;
    let mut error_bound = 0.0;
    for t in &term_list {
        value += t.value;
        error_bound += t.error_bound;
    }
    error_bound += value * term_list.len() as f64 * UNIT_ROUNDOFF;
    Ok(PartialConstant {
        z: z.to_string(),
        prime_bound,
        value,
        error_bound,
        terms: term_list.len(),
        term_list,
    })
}

pub fn partial_constant(
    snapshot: &Snapshot,
    z: &BigInt,
    prime_bound: u64,
) -> Result<PartialConstant, AnalyticError> {
    partial_constant_with(snapshot, z, prime_bound, zeta_residue, |r| {
        zeta_k_at_2(r, prime_bound)
    })
}
