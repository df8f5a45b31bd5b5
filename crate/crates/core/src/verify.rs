//! Exhaustive verifiers for the group-theoretic statements behind the
//! classification of octic towers over `S₄`-quartic fields.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::catalog::{self, CATALOG};
use crate::group::lattice::lattice;
use crate::group::{
    coset_action, find_isomorphism, perm_isomorphic, quotient_as_perm, subgroup_classes,
    ElemSet, PermGroup,
};

pub const CLASSIFICATION: &str = "classification";
pub const CONVERSE: &str = "converse";
pub const A8_CONTAINMENT: &str = "a8-containment";
pub const MALLE_ALPHA_TABLE: &str = "malle-alpha-table";
pub const S4_OCTIC_UNIQUENESS: &str = "s4-octic-uniqueness";

/// The transitive subgroup count quoted for `C₂ ≀ S₄`.
pub const EXPECTED_TRANSITIVE_CLASSES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub claim_id: String,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub elapsed: Duration,
    pub details: Map<String, Value>,
}

impl VerificationReport {
    pub fn new(claim_id: &str, witnesses: Vec<String>, details: Map<String, Value>) -> Self {
        VerificationReport {
            claim_id: claim_id.to_string(),
            status: if witnesses.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            },
            witnesses,
            elapsed: Duration::ZERO,
            details,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// JSON form; `elapsed_ms` is included only when `stamp` is set.
    pub fn to_json(&self, stamp: bool) -> Value {
        let mut v = json!({
            "claim_id": self.claim_id,
            "status": self.status,
            "witnesses": self.witnesses,
            "details": self.details,
        });
        if stamp {
            v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }
}

fn timed(f: impl FnOnce() -> VerificationReport) -> VerificationReport {
    let start = Instant::now();
    let mut r = f();
    r.elapsed = start.elapsed();
    r
}

fn details(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Whether some quotient of `g` is abstractly isomorphic to `S₄`.
pub fn has_s4_quotient(g: &PermGroup) -> bool {
    if !g.order().is_multiple_of(24) {
        return false;
    }
    let s4 = PermGroup::symmetric(4).expect("S4");
    let target = g.order() / 24;
    g.normal_subgroups()
        .iter()
        .filter(|n| n.order() == target)
        .any(|n| {
            quotient_as_perm(g, n)
                .ok()
                .is_some_and(|q| find_isomorphism(&q, &s4).is_some())
        })
}

/// Transitive subgroups of `C₂ ≀ S₄` up to conjugacy in `C₂ ≀ S₄`.
pub fn transitive_wreath_classes() -> Vec<PermGroup> {
    subgroup_classes(&catalog::wreath_c2_s4())
        .expect("wreath lattice")
        .into_iter()
        .map(|c| c.representative)
        .filter(PermGroup::is_transitive)
        .collect()
}

/// Merges classes that are conjugate in the full symmetric group.
pub fn merge_under_symmetric(groups: &[PermGroup]) -> Vec<PermGroup> {
    let mut reps: Vec<PermGroup> = Vec::new();
    for g in groups {
        let known = reps
            .iter()
            .any(|r| perm_isomorphic(r, g).expect("degree 8").is_some());
        if !known {
            reps.push(g.clone());
        }
    }
    reps
}

fn catalog_match(g: &PermGroup) -> Option<&'static str> {
    CATALOG.iter().find_map(|e| {
        perm_isomorphic(&e.group(), g)
            .expect("degree 8")
            .map(|_| e.label)
    })
}

pub fn verify_classification() -> VerificationReport {
    timed(|| {
        let mut witnesses = Vec::new();
        let wreath_classes = transitive_wreath_classes();
        let sym_classes = merge_under_symmetric(&wreath_classes);
        let (nw, ns) = (wreath_classes.len(), sym_classes.len());
        if nw != EXPECTED_TRANSITIVE_CLASSES && ns != EXPECTED_TRANSITIVE_CLASSES {
            witnesses.push(format!(
                "transitive class count is {nw} up to C2 wr S4 conjugacy and {ns} up to S8 \
                 conjugacy, expected {EXPECTED_TRANSITIVE_CLASSES}"
            ));
        }

        let quotient_flags: Vec<bool> = sym_classes.par_iter().map(has_s4_quotient).collect();
        let with_quotient: Vec<&PermGroup> = sym_classes
            .iter()
            .zip(&quotient_flags)
            .filter_map(|(g, &f)| f.then_some(g))
            .collect();
        let wreath_with_quotient = wreath_classes
            .par_iter()
            .filter(|g| has_s4_quotient(g))
            .count();
        if with_quotient.len() != CATALOG.len() {
            witnesses.push(format!(
                "{} classes have an S4 quotient, expected {}",
                with_quotient.len(),
                CATALOG.len()
            ));
        }
        let mut matched: Vec<Value> = Vec::new();
        let mut hit = vec![false; CATALOG.len()];
        for g in &with_quotient {
            match catalog_match(g) {
                Some(label) => {
                    let k = CATALOG.iter().position(|e| e.label == label).unwrap();
                    if hit[k] {
                        witnesses.push(format!("{label} matched twice"));
                    }
                    hit[k] = true;
                    matched.push(json!({"label": label, "group": g.canonical_text()}));
                }
                None => witnesses.push(format!(
                    "class with S4 quotient outside the catalog: {}",
                    g.canonical_text()
                )),
            }
        }
        for (e, h) in CATALOG.iter().zip(&hit) {
            if !h {
                witnesses.push(format!("{} not found among transitive classes", e.label));
            }
        }
        matched.sort_by_key(|v| v["label"].as_str().unwrap_or_default().to_string());
        let orders: Vec<u128> = sym_classes.iter().map(PermGroup::order).collect();
        VerificationReport::new(
            CLASSIFICATION,
            witnesses,
            details(vec![
                ("transitive_classes_wreath_conjugacy", json!(nw)),
                ("transitive_classes_s8_conjugacy", json!(ns)),
                ("expected_transitive_classes", json!(EXPECTED_TRANSITIVE_CLASSES)),
                ("s4_quotient_classes_s8_conjugacy", json!(with_quotient.len())),
                ("s4_quotient_classes_wreath_conjugacy", json!(wreath_with_quotient)),
                ("transitive_class_orders", json!(orders)),
                ("matched", Value::Array(matched)),
            ]),
        )
    })
}

/// Subgroup classes of `g` of index 8 with trivial core.
pub fn core_free_index8_classes(g: &PermGroup) -> Vec<PermGroup> {
    if !g.order().is_multiple_of(8) {
        return Vec::new();
    }
    let target = g.order() / 8;
    subgroup_classes(g)
        .expect("catalog lattice")
        .into_iter()
        .map(|c| c.representative)
        .filter(|h| h.order() == target)
        .filter(|h| g.normal_core(h).map(|c| c.is_trivial()).unwrap_or(false))
        .collect()
}

/// Index-4 subgroups of `g` containing `h_l` whose coset action is the
/// natural `S₄`. Every such subgroup is listed, not just class
/// representatives.
pub fn quartic_overgroups(g: &PermGroup, h_l: &PermGroup) -> Vec<PermGroup> {
    if !g.order().is_multiple_of(4) {
        return Vec::new();
    }
    let s4 = PermGroup::symmetric(4).expect("S4");
    let t = g.table();
    let target = (g.order() / 4) as usize;
    let Some(hl) = t.set_of(h_l.elements()) else {
        return Vec::new();
    };
    let mut out: Vec<ElemSet> = Vec::new();
    for class in lattice(t).into_iter().filter(|c| c.order == target) {
        for conj in class.conjugates {
            if hl.is_subset(&conj) {
                out.push(conj);
            }
        }
    }
    out.sort();
    out.into_iter()
        .map(|s| PermGroup::from_closed_set(g.degree(), t, &s))
        .filter(|hk| {
            coset_action(g, hk)
                .ok()
                .and_then(|a| perm_isomorphic(&a.image_group(), &s4).ok().flatten())
                .is_some()
        })
        .collect()
}

pub fn verify_converse() -> VerificationReport {
    timed(|| {
        let per_group: Vec<(String, Vec<String>, Value)> = CATALOG
            .par_iter()
            .map(|e| {
                let g = e.group();
                let mut w = Vec::new();
                let mut rows = Vec::new();
                for h_l in core_free_index8_classes(&g) {
                    let over = quartic_overgroups(&g, &h_l);
                    if over.is_empty() {
                        w.push(format!(
                            "{}: no quartic overgroup for {}",
                            e.label,
                            h_l.canonical_text()
                        ));
                    }
                    rows.push(json!({
                        "octic_subgroup": h_l.canonical_text(),
                        "natural": h_l == g.stabilizer(0),
                        "quartic_overgroups": over.len(),
                    }));
                }
                (e.label.to_string(), w, Value::Array(rows))
            })
            .collect();
        let mut witnesses = Vec::new();
        let mut d = Map::new();
        for (label, w, rows) in per_group {
            witnesses.extend(w);
            d.insert(label, rows);
        }
        VerificationReport::new(CONVERSE, witnesses, d)
    })
}

pub fn verify_a8_containment() -> VerificationReport {
    timed(|| {
        let target = catalog::lookup("8T39").expect("catalog");
        let mut witnesses = Vec::new();
        let mut checked = 0usize;
        for g in transitive_wreath_classes() {
            if perm_isomorphic(&target, &g).expect("degree 8").is_none() {
                continue;
            }
            checked += 1;
            for s in g.generators() {
                if !s.is_even() {
                    witnesses.push(format!("odd generator {s} in {}", g.canonical_text()));
                }
            }
        }
        if checked == 0 {
            witnesses.push("no transitive class matches 8T39".into());
        }
        let parity: Map<String, Value> = CATALOG
            .iter()
            .map(|e| {
                let g = e.group();
                let odd = g.elements().iter().filter(|x| !x.is_even()).count();
                (
                    e.label.to_string(),
                    json!({"contained_in_a8": odd == 0, "odd_elements": odd}),
                )
            })
            .collect();
        VerificationReport::new(
            A8_CONTAINMENT,
            witnesses,
            details(vec![
                ("classes_checked", json!(checked)),
                ("catalog_parity", Value::Object(parity)),
            ]),
        )
    })
}

pub fn verify_table1() -> VerificationReport {
    timed(|| {
        let mut witnesses = Vec::new();
        let mut d = Map::new();
        for e in &CATALOG {
            let got = e.group().malle_alpha().expect("nontrivial");
            if got != e.alpha() {
                witnesses.push(format!("{}: alpha {got}, expected {}", e.label, e.alpha()));
            }
            d.insert(e.label.to_string(), json!(got.to_string()));
        }
        VerificationReport::new(MALLE_ALPHA_TABLE, witnesses, d)
    })
}

/// Classes of index-8 core-free subgroups of `g` having a conjugate inside
/// `h_k`.
pub fn octic_classes_below(g: &PermGroup, h_k: &PermGroup) -> Vec<PermGroup> {
    if !g.order().is_multiple_of(8) {
        return Vec::new();
    }
    let t = g.table();
    let Some(hk) = t.set_of(h_k.elements()) else {
        return Vec::new();
    };
    let target = (g.order() / 8) as usize;
    lattice(t)
        .into_iter()
        .filter(|c| c.order == target)
        .filter(|c| c.conjugates.iter().any(|s| s.is_subset(&hk)))
        .map(|c| PermGroup::from_closed_set(g.degree(), t, &c.rep))
        .filter(|h| g.normal_core(h).map(|c| c.is_trivial()).unwrap_or(false))
        .collect()
}

pub fn verify_s4_unique_octic() -> VerificationReport {
    timed(|| {
        let mut witnesses = Vec::new();
        let mut d = Map::new();
        for label in ["8T14", "8T44"] {
            let g = catalog::lookup(label).expect("catalog");
            let h_l = g.stabilizer(0);
            let quartics = quartic_overgroups(&g, &h_l);
            let counts: Vec<usize> = quartics
                .iter()
                .map(|hk| octic_classes_below(&g, hk).len())
                .collect();
            if label == "8T14" {
                if quartics.is_empty() {
                    witnesses.push("8T14: no quartic subgroup".into());
                }
                for c in &counts {
                    if *c != 1 {
                        witnesses.push(format!("8T14: {c} octic classes over the quartic"));
                    }
                }
            }
            d.insert(
                label.to_string(),
                json!({"quartic_subgroups": quartics.len(), "octic_classes": counts}),
            );
        }
        VerificationReport::new(S4_OCTIC_UNIQUENESS, witnesses, d)
    })
}

/// Runs every verifier; reports come back in fixed claim order.
pub fn verify_all() -> Vec<VerificationReport> {
    let jobs: [fn() -> VerificationReport; 5] = [
        verify_classification,
        verify_converse,
        verify_a8_containment,
        verify_table1,
        verify_s4_unique_octic,
    ];
    jobs.par_iter().map(|f| f()).collect()
}
