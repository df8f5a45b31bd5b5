//! Number-field records: line-delimited ingest with validation, a
//! label-indexed snapshot, queries, and a checksummed on-disk store.
//!
//! One record per line, a JSON object whose keys are the field names of
//! [`FieldRecord`]. Integers are decimal strings (small ones may also be
//! plain JSON numbers); `coeffs` lists the constant term first.
//!
//! ```text
//! {"label":"4.2.283.1","degree":"4","coeffs":["-1","-1","0","0","1"],"disc":"-283","disc_factors":[["283","1"]],"galois":"4T5","r1":"2","r2":"1","h":"1","reg":"0.378199332460","w":"2"}
//! ```

mod store;
mod wire;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::{self, expand, is_perfect_power};
use crate::poly;

pub use store::{from_bytes, load, persist, to_bytes};
pub use wire::{parse_record, record_to_line};

/// Largest `|Δ|` the fallback factorizer accepts.
pub const FALLBACK_FACTOR_LIMIT: u64 = 1_000_000_000_000_000_000;

pub const MIN_REGULATOR_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Error)]
pub enum NfError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{} invalid line(s): {}", .0.len(), .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<LineError>),
    #[error("{path}: {message}")]
    Store { path: PathBuf, message: String },
}

impl NfError {
    pub fn io(path: &Path, source: std::io::Error) -> NfError {
        NfError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Line numbers of an [`NfError::Invalid`].
    pub fn lines(&self) -> Vec<usize> {
        match self {
            NfError::Invalid(v) => v.iter().map(|e| e.line).collect(),
            _ => Vec::new(),
        }
    }
}

/// A positive regulator kept as its decimal text and a float.
#[derive(Debug, Clone, PartialEq)]
pub struct Regulator {
    text: String,
    value: f64,
}

impl Regulator {
    pub fn parse(text: &str) -> Result<Regulator, String> {
        let t = text.trim();
        let (mantissa, exponent) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], Some(&t[i + 1..])),
            None => (t, None),
        };
        let digits_ok = !mantissa.is_empty()
            && mantissa.chars().filter(|&c| c == '.').count() <= 1
            && mantissa.chars().all(|c| c.is_ascii_digit() || c == '.')
            && mantissa.chars().any(|c| c.is_ascii_digit());
        let exp_ok = exponent.is_none_or(|e| {
            let e = e.strip_prefix(['+', '-']).unwrap_or(e);
            !e.is_empty() && e.chars().all(|c| c.is_ascii_digit())
        });
        if !digits_ok || !exp_ok {
            return Err(format!("regulator {text:?} is not a positive decimal"));
        }
        let value: f64 = t.parse().map_err(|_| format!("regulator {text:?} is not a number"))?;
        if value <= 0.0 || !value.is_finite() {
            return Err(format!("regulator {text:?} is not positive"));
        }
        Ok(Regulator {
            text: t.to_string(),
            value,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn significant_digits(&self) -> usize {
        let mantissa = self.text.split(['e', 'E']).next().unwrap_or("");
        mantissa
            .chars()
            .filter(char::is_ascii_digit)
            .skip_while(|&c| c == '0')
            .count()
    }

    /// Bound on the relative error of the decimal text.
    pub fn relative_precision(&self) -> f64 {
        5.0 * 10f64.powi(-(self.significant_digits() as i32))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldRecord {
    pub label: String,
    pub degree: u32,
    /// Constant term first; monic.
    pub coeffs: Vec<BigInt>,
    pub disc: BigInt,
    /// `(prime, exponent)` with `|disc| = Π p^e`.
    pub disc_factors: Vec<(BigUint, u32)>,
    pub galois: String,
    pub r1: u32,
    pub r2: u32,
    pub h: Option<u64>,
    pub reg: Option<Regulator>,
    pub w: Option<u32>,
    pub parent_label: Option<String>,
}

impl FieldRecord {
    /// Minimal record for fixtures: factored discriminant, no invariants.
    pub fn synthetic(label: &str, coeffs: &[i64], disc: i64, r1: u32, r2: u32) -> FieldRecord {
        let disc = BigInt::from(disc);
        let disc_factors = arith::factor_bigint(&disc).unwrap_or_default();
        FieldRecord {
            label: label.to_string(),
            degree: coeffs.len() as u32 - 1,
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            disc,
            disc_factors,
            galois: String::new(),
            r1,
            r2,
            h: None,
            reg: None,
            w: None,
            parent_label: None,
        }
    }

    pub fn abs_disc(&self) -> BigUint {
        self.disc.magnitude().clone()
    }

    /// Exponent of `p` in `|disc|`, from the factorization.
    pub fn disc_valuation(&self, p: &BigUint) -> u32 {
        self.disc_factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    /// Every invariant checkable on a record alone.
    pub fn validate(&self) -> Vec<String> {
        let mut errs = Vec::new();
        let n = self.degree as usize;
        if self.degree != 4 && self.degree != 8 {
            errs.push(format!("degree {} is not 4 or 8", self.degree));
        }
        if self.coeffs.len() != n + 1 {
            errs.push(format!("{} coefficients for degree {n}", self.coeffs.len()));
            return errs;
        }
        if !poly::is_monic(&self.coeffs) {
            errs.push("polynomial is not monic".into());
            return errs;
        }
        if self.r1 + 2 * self.r2 != self.degree {
            errs.push(format!("r1 + 2 r2 = {} ≠ degree", self.r1 + 2 * self.r2));
        }
        let label_ok = self
            .galois
            .strip_prefix(&format!("{n}T"))
            .is_some_and(|j| !j.is_empty() && j.chars().all(|c| c.is_ascii_digit()));
        if !label_ok {
            errs.push(format!("galois label {:?} is not a degree-{n} label", self.galois));
        }
        if self.disc.is_zero() {
            errs.push("discriminant is zero".into());
            return errs;
        }
        let mut primes: Vec<&BigUint> = Vec::new();
        for (p, e) in &self.disc_factors {
            if *e == 0 {
                errs.push(format!("exponent 0 for {p}"));
            }
            if !arith::is_prime_big(p) {
                errs.push(format!("{p} in disc_factors is not prime"));
            }
            if primes.contains(&p) {
                errs.push(format!("{p} repeated in disc_factors"));
            }
            primes.push(p);
        }
        if expand(&self.disc_factors) != self.abs_disc() {
            errs.push(format!(
                "disc_factors multiply to {}, not |disc| = {}",
                expand(&self.disc_factors),
                self.abs_disc()
            ));
        }
        let expected_sign = if self.r2.is_multiple_of(2) { 1 } else { -1 };
        if arith::sign_of(&self.disc) != expected_sign {
            errs.push(format!("sign of disc is not (−1)^r2 with r2 = {}", self.r2));
        }
        let pd = poly::discriminant(&self.coeffs);
        if pd.is_zero() {
            errs.push("polynomial has a repeated root".into());
            return errs;
        }
        let (q, r) = pd.div_rem(&self.disc);
        if !r.is_zero() || q.is_negative() || !is_perfect_power(q.magnitude(), 2) {
            errs.push(format!("polynomial discriminant {pd} is not a square times disc"));
        }
        if !poly::is_irreducible(&self.coeffs) {
            errs.push("polynomial is reducible".into());
            return errs;
        }
        let real = poly::real_root_count(&self.coeffs);
        if real != self.r1 as usize {
            errs.push(format!("polynomial has {real} real roots, r1 = {}", self.r1));
        }
        if self.h == Some(0) {
            errs.push("class number 0".into());
        }
        if self.w == Some(0) {
            errs.push("w = 0".into());
        }
        if let Some(reg) = &self.reg {
            let rank = (self.r1 + self.r2).saturating_sub(1);
            if rank > 0 && reg.significant_digits() < MIN_REGULATOR_DIGITS {
                errs.push(format!(
                    "regulator has {} significant digits, need {MIN_REGULATOR_DIGITS}",
                    reg.significant_digits()
                ));
            }
        }
        errs
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Snapshot {
    pub records: BTreeMap<String, FieldRecord>,
    pub provenance: String,
    /// Seconds since the Unix epoch; set only on request.
    pub ingest_time: Option<u64>,
}

impl Snapshot {
    pub fn get(&self, label: &str) -> Option<&FieldRecord> {
        self.records.get(label)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn parent_of(&self, r: &FieldRecord) -> Option<&FieldRecord> {
        r.parent_label.as_deref().and_then(|l| self.records.get(l))
    }
}

fn parent_problems(r: &FieldRecord, records: &BTreeMap<String, FieldRecord>) -> Option<String> {
    let label = r.parent_label.as_ref()?;
    let Some(parent) = records.get(label) else {
        return Some(format!("parent {label:?} does not exist"));
    };
    if parent.degree != 4 || parent.galois != "4T5" {
        return Some(format!("parent {label:?} is not an S4-quartic (4T5) record"));
    }
    let sq = &parent.disc * &parent.disc;
    if !(&r.disc % &sq).is_zero() {
        return Some(format!("parent discriminant squared does not divide {}", r.disc));
    }
    None
}

/// Parses and validates a whole snapshot; fails with every offending line
/// or commits nothing. Blank lines and lines starting with `#` are skipped.
pub fn ingest_str(text: &str, provenance: &str) -> Result<Snapshot, NfError> {
    let mut errors = Vec::new();
    let mut records: BTreeMap<String, FieldRecord> = BTreeMap::new();
    let mut line_of: BTreeMap<String, usize> = BTreeMap::new();
    let mut derived: Vec<String> = Vec::new();
    let parsed: Vec<(usize, Result<(FieldRecord, bool), String>)> = {
        use rayon::prelude::*;
        text.lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(n, l)| {
                let r = parse_record(l).and_then(|(rec, derived)| {
                    let problems = rec.validate();
                    if problems.is_empty() {
                        Ok((rec, derived))
                    } else {
                        Err(format!("{}: {}", rec.label, problems.join("; ")))
                    }
                });
                (n, r)
            })
            .collect()
    };
    for (line, result) in parsed {
        match result {
            Err(message) => errors.push(LineError { line, message }),
            Ok((rec, was_derived)) => match records.get(&rec.label) {
                Some(existing) if *existing == rec => {}
                Some(_) => errors.push(LineError {
                    line,
                    message: format!(
                        "conflicting duplicate of {:?} from line {}",
                        rec.label, line_of[&rec.label]
                    ),
                }),
                None => {
                    if was_derived {
                        derived.push(rec.label.clone());
                    }
                    line_of.insert(rec.label.clone(), line);
                    records.insert(rec.label.clone(), rec);
                }
            },
        }
    }
    for r in records.values() {
        if let Some(message) = parent_problems(r, &records) {
            errors.push(LineError {
                line: line_of[&r.label],
                message: format!("{}: {message}", r.label),
            });
        }
    }
    if !errors.is_empty() {
        errors.sort_by_key(|e| e.line);
        return Err(NfError::Invalid(errors));
    }
    let mut provenance = provenance.to_string();
    if !derived.is_empty() {
        derived.sort();
        provenance.push_str(&format!(
            "; disc_factors derived, unverified: {}",
            derived.join(",")
        ));
    }
    Ok(Snapshot {
        records,
        provenance,
        ingest_time: None,
    })
}

pub fn ingest(path: &Path) -> Result<Snapshot, NfError> {
    let text = std::fs::read_to_string(path).map_err(|e| NfError::io(path, e))?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    ingest_str(&text, &format!("ingest of {name}"))
}

/// Records of the given degree and labels with `|disc| ≤ max_abs_disc`,
/// sorted by `(|disc|, label)`. An empty label list matches every label.
pub fn query<'a>(
    snapshot: &'a Snapshot,
    degree: Option<u32>,
    galois: &[String],
    max_abs_disc: Option<&BigUint>,
) -> Vec<&'a FieldRecord> {
    let mut out: Vec<&FieldRecord> = snapshot
        .records
        .values()
        .filter(|r| degree.is_none_or(|d| r.degree == d))
        .filter(|r| galois.is_empty() || galois.contains(&r.galois))
        .filter(|r| max_abs_disc.is_none_or(|m| r.disc.magnitude() <= m))
        .collect();
    out.sort_by(|a, b| {
        a.disc
            .magnitude()
            .cmp(b.disc.magnitude())
            .then_with(|| a.label.cmp(&b.label))
    });
    out
}
