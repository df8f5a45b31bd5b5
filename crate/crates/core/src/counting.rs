//! Counting functions over snapshots, the support-based factorizations of
//! the relative norm and of `Δ_K`, valuation audits, the squarefree tail
//! statistic, and error-exponent fits.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Map};
use thiserror::Error;

use crate::analytic::PartialConstant;
use crate::arith::{self, expand};
use crate::nfdata::{FieldRecord, Snapshot};
use crate::verify::VerificationReport;

pub const VALUATION_AUDIT: &str = "valuation-audit";

/// Error exponent in the main-term asymptotic.
pub const THETA: f64 = 0.75 - 1.0 / 30.0;

#[derive(Debug, Error, PartialEq)]
pub enum CountingError {
    #[error("{parent}: squared discriminant does not divide the discriminant of {octic}")]
    NotDivisible { octic: String, parent: String },
    #[error("checkpoints must be strictly increasing")]
    Checkpoints,
    #[error("need at least 3 checkpoints, got {0}")]
    TooFewCheckpoints(usize),
}

type Factored = Vec<(BigUint, u32)>;

fn decimal<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn small_prime(p: &BigUint) -> bool {
    *p == BigUint::from(2u32) || *p == BigUint::from(3u32)
}

fn exponent(f: &[(BigUint, u32)], p: &BigUint) -> u32 {
    f.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
}

fn normalize(mut f: Factored) -> Factored {
    f.retain(|(_, e)| *e > 0);
    f.sort();
    f
}

/// `Nm Δ_{L/K} = n0·n1·n2` and `|Δ_K| = d0·d1·d2`, split by prime support:
/// the `2`-and-`3` parts go to `n2`, `d2`; primes of `Δ_K` to `n0`; the
/// rest of the norm to `n1`; primes of `Δ_K` meeting the norm to `d0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelDiscSplit {
    #[serde(serialize_with = "decimal")]
    pub norm: BigUint,
    #[serde(serialize_with = "decimal")]
    pub n0: BigUint,
    #[serde(serialize_with = "decimal")]
    pub n1: BigUint,
    #[serde(serialize_with = "decimal")]
    pub n2: BigUint,
    #[serde(serialize_with = "decimal")]
    pub d0: BigUint,
    #[serde(serialize_with = "decimal")]
    pub d1: BigUint,
    #[serde(serialize_with = "decimal")]
    pub d2: BigUint,
    #[serde(skip)]
    pub norm_factors: Factored,
    #[serde(skip)]
    pub parent_factors: Factored,
}

impl RelDiscSplit {
    /// Splits from factorizations of `|Δ_L|` and `|Δ_K|`.
    pub fn from_factors(octic: &[(BigUint, u32)], parent: &[(BigUint, u32)]) -> Option<RelDiscSplit> {
        let parent_factors = normalize(parent.to_vec());
        let mut norm_factors = Vec::new();
        for (p, e) in octic {
            let e = e.checked_sub(2 * exponent(&parent_factors, p))?;
            norm_factors.push((p.clone(), e));
        }
        if parent_factors
            .iter()
            .any(|(p, e)| 2 * e > exponent(octic, p))
        {
            return None;
        }
        let norm_factors = normalize(norm_factors);
        let part = |f: &Factored, keep: &dyn Fn(&BigUint) -> bool| {
            let sel: Factored = f.iter().filter(|(p, _)| keep(p)).cloned().collect();
            expand(&sel)
        };
        let in_k = |p: &BigUint| exponent(&parent_factors, p) > 0;
        let in_n = |p: &BigUint| exponent(&norm_factors, p) > 0;
        Some(RelDiscSplit {
            norm: expand(&norm_factors),
            n0: part(&norm_factors, &|p| !small_prime(p) && in_k(p)),
            n1: part(&norm_factors, &|p| !small_prime(p) && !in_k(p)),
            n2: part(&norm_factors, &small_prime),
            d0: part(&parent_factors, &|p| !small_prime(p) && in_n(p)),
            d1: part(&parent_factors, &|p| !small_prime(p) && !in_n(p)),
            d2: part(&parent_factors, &small_prime),
            norm_factors,
            parent_factors,
        })
    }

    /// Primes of `n0` with their exponents.
    pub fn n0_factors(&self) -> impl Iterator<Item = &(BigUint, u32)> {
        self.norm_factors
            .iter()
            .filter(|(p, _)| !small_prime(p) && exponent(&self.parent_factors, p) > 0)
    }

    pub fn n1_factors(&self) -> impl Iterator<Item = &(BigUint, u32)> {
        self.norm_factors
            .iter()
            .filter(|(p, _)| !small_prime(p) && exponent(&self.parent_factors, p) == 0)
    }

    pub fn d1_factors(&self) -> impl Iterator<Item = &(BigUint, u32)> {
        self.parent_factors
            .iter()
            .filter(|(p, _)| !small_prime(p) && exponent(&self.norm_factors, p) == 0)
    }

    pub fn parent_valuation(&self, p: &BigUint) -> u32 {
        exponent(&self.parent_factors, p)
    }
}

pub fn split_rel_disc(octic: &FieldRecord, parent: &FieldRecord) -> Result<RelDiscSplit, CountingError> {
    RelDiscSplit::from_factors(&octic.disc_factors, &parent.disc_factors).ok_or_else(|| {
        CountingError::NotDivisible {
            octic: octic.label.clone(),
            parent: parent.label.clone(),
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountSeries {
    pub checkpoints: Vec<u128>,
    pub counts: Vec<u64>,
    pub group_filter: BTreeSet<String>,
    pub provenance: String,
}

/// `N(X)`: records whose Galois label is in `labels` and `|Δ| ≤ X`.
pub fn count_series(
    snapshot: &Snapshot,
    labels: &BTreeSet<String>,
    checkpoints: &[u128],
) -> Result<CountSeries, CountingError> {
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CountingError::Checkpoints);
    }
    let mut discs: Vec<BigUint> = snapshot
        .records
        .values()
        .filter(|r| labels.contains(&r.galois))
        .map(FieldRecord::abs_disc)
        .collect();
    discs.sort();
    let counts = checkpoints
        .iter()
        .map(|&x| {
            let x = BigUint::from(x);
            discs.partition_point(|d| *d <= x) as u64
        })
        .collect();
    Ok(CountSeries {
        checkpoints: checkpoints.to_vec(),
        counts,
        group_filter: labels.clone(),
        provenance: snapshot.provenance.clone(),
    })
}

/// `k` geometric checkpoints from `lo` to `hi`, rounded and deduplicated.
pub fn geometric_checkpoints(lo: u128, hi: u128, k: usize) -> Vec<u128> {
    if k < 2 || lo >= hi {
        return vec![lo];
    }
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    let mut out: Vec<u128> = (0..k)
        .map(|i| {
            let t = i as f64 / (k - 1) as f64;
            (a + t * (b - a)).exp().round() as u128
        })
        .collect();
    out[0] = lo;
    out[k - 1] = hi;
    out.dedup();
    out
}

fn audit_record(r: &FieldRecord, parent: &FieldRecord) -> Vec<String> {
    let mut w = Vec::new();
    let split = match split_rel_disc(r, parent) {
        Ok(s) => s,
        Err(e) => return vec![e.to_string()],
    };
    let label = &r.label;
    match r.galois.as_str() {
        "8T23" => {
            for (p, e) in split.n1_factors() {
                if e % 4 != 0 {
                    w.push(format!("{label}: p={p}: v_p(n1)={e} is not a multiple of 4"));
                }
            }
            for (p, e) in split.n0_factors() {
                let vk = split.parent_valuation(p);
                if *e > vk {
                    w.push(format!("{label}: p={p}: v_p(n0)={e} > v_p(disc K)={vk}"));
                }
            }
            for (p, vk) in &split.parent_factors {
                if *vk == 3 && !small_prime(p) && exponent(&split.norm_factors, p) == 0 {
                    w.push(format!("{label}: p={p}: v_p(disc K)=3 but p does not divide n0"));
                }
            }
        }
        "8T39" => {
            if r.disc <= num_bigint::BigInt::zero() || !arith::is_perfect_power(&r.abs_disc(), 2) {
                w.push(format!("{label}: disc L = {} is not a square", r.disc));
            }
            if !arith::is_perfect_power(&split.norm, 2) {
                w.push(format!("{label}: relative norm {} is not a square", split.norm));
            }
        }
        "8T40" => {
            for (p, e) in split.d1_factors() {
                if *e != 2 {
                    w.push(format!("{label}: p={p}: v_p(d1)={e}, expected 2"));
                }
            }
            let cube = |x: &BigUint| x * x * x;
            if split.d0 > cube(&split.n0) || split.n0 > cube(&split.d0) {
                w.push(format!(
                    "{label}: d0={} and n0={} are not within a cube of each other",
                    split.d0, split.n0
                ));
            }
        }
        _ => {}
    }
    w
}

/// Checks every octic with a parent against the valuation patterns of its
/// Galois label. Octics sharing `|Δ_L|` and parent are listed as a
/// diagnostic, not a failure.
pub fn audit_lemmas(snapshot: &Snapshot) -> VerificationReport {
    use rayon::prelude::*;
    let start = Instant::now();
    let octics: Vec<&FieldRecord> = snapshot.records.values().filter(|r| r.degree == 8).collect();
    let per_record: Vec<(bool, Vec<String>)> = octics
        .par_iter()
        .map(|r| match snapshot.parent_of(r) {
            Some(parent) => (true, audit_record(r, parent)),
            None if r.parent_label.is_some() => (
                true,
                vec![format!("{}: parent {:?} missing", r.label, r.parent_label)],
            ),
            None => (false, Vec::new()),
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut audited = 0usize;
    let mut per_label: BTreeMap<&str, usize> = BTreeMap::new();
    for (r, (had_parent, w)) in octics.iter().zip(per_record) {
        if had_parent {
            audited += 1;
            *per_label.entry(r.galois.as_str()).or_default() += 1;
        }
        witnesses.extend(w);
    }
    let mut shared: BTreeMap<(BigUint, &str), Vec<&str>> = BTreeMap::new();
    for r in &octics {
        if let Some(p) = &r.parent_label {
            shared.entry((r.abs_disc(), p.as_str())).or_default().push(&r.label);
        }
    }
    let shared: Vec<Vec<&str>> = shared.into_values().filter(|v| v.len() > 1).collect();
    let mut details = Map::new();
    details.insert("octics".into(), json!(octics.len()));
    details.insert("audited".into(), json!(audited));
    details.insert("unparented".into(), json!(octics.len() - audited));
    details.insert("audited_by_label".into(), json!(per_label));
    details.insert("shared_disc_and_parent".into(), json!(shared));
    details.insert("provenance".into(), json!(snapshot.provenance));
    let mut report = VerificationReport::new(VALUATION_AUDIT, witnesses, details);
    report.elapsed = start.elapsed();
    report
}

/// Product of the primes whose square divides `|Δ|`.
pub fn square_support(r: &FieldRecord) -> BigUint {
    r.disc_factors
        .iter()
        .filter(|(_, e)| *e >= 2)
        .fold(BigUint::one(), |acc, (p, _)| acc * p)
}

/// `S₄`-quartic records with `|Δ| ≤ x` whose square support exceeds `z`.
pub fn tail_count(snapshot: &Snapshot, z: &BigUint, x: &BigUint) -> u64 {
    snapshot
        .records
        .values()
        .filter(|r| r.degree == 4 && r.galois == "4T5")
        .filter(|r| r.disc.magnitude() <= x && square_support(r) > *z)
        .count() as u64
}

#[derive(Debug, Clone, Serialize)]
pub struct FitPoint {
    pub x: u128,
    pub count: u64,
    pub residual: f64,
    /// `C.error_bound · X`.
    pub caveat: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FitReport {
    pub theta_target: f64,
    pub sup_ratio: f64,
    pub slope: Option<f64>,
    pub c_used: PartialConstant,
    pub points: Vec<FitPoint>,
    pub provenance: String,
}

/// Least-squares slope of `ys` against `xs`.
fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Residuals `N(X) − C·X` against `X^θ` and the log-log slope of `|N − C·X|`.
pub fn fit_error(series: &CountSeries, c: &PartialConstant) -> Result<FitReport, CountingError> {
    let k = series.checkpoints.len();
    if k < 3 {
        return Err(CountingError::TooFewCheckpoints(k));
    }
    let points: Vec<FitPoint> = series
        .checkpoints
        .iter()
        .zip(&series.counts)
        .map(|(&x, &count)| {
            let xf = x as f64;
            FitPoint {
                x,
                count,
                residual: count as f64 - c.value * xf,
                caveat: c.error_bound * xf,
            }
        })
        .collect();
    let sup_ratio = points
        .iter()
        .map(|p| p.residual.abs() / (p.x as f64).powf(THETA))
        .fold(0.0, f64::max);
    let (lx, ly): (Vec<f64>, Vec<f64>) = points
        .iter()
        .filter(|p| p.residual != 0.0)
        .map(|p| ((p.x as f64).ln(), p.residual.abs().ln()))
        .unzip();
    let slope = (lx.len() >= 3 && lx.iter().any(|&x| x != lx[0])).then(|| slope(&lx, &ly));
    Ok(FitReport {
        theta_target: THETA,
        sup_ratio,
        slope,
        c_used: c.clone(),
        points,
        provenance: series.provenance.clone(),
    })
}

/// A constant with the given value and no terms, for synthetic fits.
pub fn fixed_constant(value: f64) -> PartialConstant {
    PartialConstant {
        z: "0".into(),
        prime_bound: 0,
        value,
        error_bound: 0.0,
        terms: 0,
        term_list: Vec::new(),
    }
}
