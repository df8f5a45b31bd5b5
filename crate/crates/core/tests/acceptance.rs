//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use octic_core::analytic::{zeta_k_at_2, zeta_residue};
use octic_core::arith::{expand, factor_u64};
use octic_core::catalog::{self, CATALOG};
use octic_core::counting::{
    audit_lemmas, count_series, fit_error, fixed_constant, geometric_checkpoints,
    tail_count, CountSeries, RelDiscSplit,
};
use octic_core::group::{coset_action, perm_isomorphic, subgroup_classes, CosetAction};
use octic_core::nfdata::{self, FieldRecord, Snapshot};
use octic_core::splitting::{
    self, enumerate_tame_configs, splitting_symbol, tower_actions, TameConfig,
};
use octic_core::verify::{self, EXPECTED_TRANSITIVE_CLASSES};
use octic_core::{Perm, PermGroup};

const FIELDS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/fields.jsonl");

fn report(n: u32, title: &str, failures: &[String]) {
    let mark = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n}: {mark}: {title}");
    for f in failures {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:?}");
}

fn check(failures: &mut Vec<String>, ok: bool, msg: impl Into<String>) {
    if !ok {
        failures.push(msg.into());
    }
}

#[test]
fn criterion_1_group_classification() {
    let start = Instant::now();
    let mut f = Vec::new();
    let wreath = verify::transitive_wreath_classes();
    let merged = verify::merge_under_symmetric(&wreath);
    check(
        &mut f,
        wreath.len() == EXPECTED_TRANSITIVE_CLASSES,
        format!(
            "{} transitive subgroup classes up to conjugacy in C2 wr S4 ({} up to S8), expected {EXPECTED_TRANSITIVE_CLASSES}",
            wreath.len(),
            merged.len()
        ),
    );
    let with_quotient: Vec<&PermGroup> = merged.iter().filter(|g| verify::has_s4_quotient(g)).collect();
    check(&mut f, with_quotient.len() == 6, format!("{} classes with an S4 quotient", with_quotient.len()));
    let mut matched = BTreeSet::new();
    for g in &with_quotient {
        for e in &CATALOG {
            if perm_isomorphic(g, &e.group()).unwrap().is_some() {
                matched.insert(e.label);
            }
        }
    }
    check(&mut f, matched.len() == 6, format!("catalog labels matched: {matched:?}"));
    let t39 = catalog::lookup("8T39").unwrap();
    check(&mut f, t39.generators().iter().all(Perm::is_even), "8T39 has an odd generator");
    let expected = [(1, 4), (1, 3), (1, 2), (1, 2), (1, 2), (1, 1)];
    for (e, (a, b)) in CATALOG.iter().zip(expected) {
        let got = e.group().malle_alpha().unwrap();
        check(&mut f, got == Ratio::new(a, b), format!("alpha({}) = {got}", e.label));
    }
    for r in verify::verify_all() {
        if r.claim_id != verify::CLASSIFICATION {
            check(&mut f, r.passed(), format!("{} failed: {:?}", r.claim_id, r.witnesses));
        }
    }
    let elapsed = start.elapsed();
    check(&mut f, elapsed < Duration::from_secs(60), format!("took {elapsed:?}"));
    report(1, "transitive classes, S4 quotients, 8T39 parity, alpha table", &f);
}

#[test]
fn criterion_2_index_and_order_sets() {
    let mut f = Vec::new();
    let t23 = catalog::lookup("8T23").unwrap();
    let t40 = catalog::lookup("8T40").unwrap();
    let allowed: BTreeSet<usize> = [3, 4, 6, 7].into();
    let i23 = t23.index_set();
    check(&mut f, i23.is_subset(&allowed), format!("index_set(8T23) = {i23:?}"));
    let i40 = t40.index_set();
    check(&mut f, i40 == BTreeSet::from([2, 4, 8]), format!("index_set(8T40) = {i40:?}, expected {{2, 4, 8}}"));
    let c23 = t23.cyclic_subgroup_orders();
    check(&mut f, c23 == BTreeSet::from([1, 2, 3, 4, 6, 8]), format!("cyclic orders(8T23) = {c23:?}"));
    report(2, "index and cyclic-order sets", &f);
}

#[test]
fn criterion_3_splitting_lemmas() {
    let start = Instant::now();
    let mut f = Vec::new();
    for r in [
        splitting::verify_gl23_splitting(false),
        splitting::verify_gl23_norm_valuations(false),
        splitting::verify_8t40_quartic_valuations(false),
    ] {
        check(&mut f, r.passed(), format!("{}: {:?}", r.claim_id, r.witnesses));
    }
    let elapsed = start.elapsed();
    check(&mut f, elapsed < Duration::from_secs(300), format!("took {elapsed:?}"));
    report(3, "ramification lemmas over all tame configurations", &f);
}

/// `(e, f)` per orbit of `⟨τ, σ⟩`, listed by walking the points.
fn orbit_listing_symbol(n: usize, tau: &Perm, sigma: &Perm) -> Vec<(usize, usize)> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut orbit = vec![x];
        seen[x] = true;
        let mut i = 0;
        while i < orbit.len() {
            for g in [tau, sigma] {
                let y = g.apply(orbit[i]);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        let mut e = 1;
        let mut y = tau.apply(x);
        while y != x {
            e += 1;
            y = tau.apply(y);
        }
        out.push((e, orbit.len() / e));
    }
    out.sort();
    out
}

fn check_sums(f: &mut Vec<String>, label: &str, cfg: &TameConfig, action: &CosetAction) {
    let s = splitting_symbol(cfg, action).unwrap();
    let n = action.induced_degree();
    let ef: usize = s.pairs().iter().map(|(e, g)| e * g).sum();
    let ram: usize = s.pairs().iter().map(|(e, g)| (e - 1) * g).sum();
    let ind = action.image(&cfg.inertia_gen).index();
    if ef != n || ram != ind {
        f.push(format!("{label} {}: sum ef = {ef}, sum (e-1)f = {ram}, ind = {ind}", cfg.key()));
    }
}

#[test]
fn criterion_4_symbol_engine() {
    let mut f = Vec::new();
    let mut compared = 0;
    for n in [3usize, 4] {
        let sym = PermGroup::symmetric(n).unwrap();
        let natural = coset_action(&sym, &sym.stabilizer(0)).unwrap();
        for class in subgroup_classes(&sym).unwrap() {
            for cfg in enumerate_tame_configs(&class.representative) {
                let cfg = TameConfig::new(Arc::new(sym.clone()), cfg.inertia_gen, cfg.frobenius);
                let got = splitting_symbol(&cfg, &natural).unwrap();
                let want = orbit_listing_symbol(
                    n,
                    &natural.image(&cfg.inertia_gen),
                    &natural.image(&cfg.frobenius),
                );
                compared += 1;
                if got.pairs() != want.as_slice() {
                    f.push(format!("S{n} {}: {:?} vs {want:?}", cfg.key(), got.pairs()));
                }
            }
        }
    }
    check(&mut f, compared > 0, "no configurations compared");
    for label in catalog::labels() {
        let g = catalog::lookup(label).unwrap();
        let t = tower_actions(&g).unwrap();
        for cfg in enumerate_tame_configs(&g) {
            check_sums(&mut f, label, &cfg, &t.octic);
            for q in &t.quartics {
                check_sums(&mut f, label, &cfg, q);
            }
        }
    }
    report(4, "symbols match orbit listing; degree and index sums", &f);
}

/// `Σ_{k<terms} (−1)^k/(2k+1)²` with the alternating-series remainder.
fn catalan(terms: u64) -> (f64, f64) {
    let mut s = 0.0;
    for k in (0..terms).rev() {
        let t = 1.0 / ((2 * k + 1) as f64).powi(2);
        s += if k % 2 == 0 { t } else { -t };
    }
    (s, 1.0 / ((2 * terms + 1) as f64).powi(2))
}

#[test]
fn criterion_5_analytic_checks() {
    let mut f = Vec::new();
    let q = FieldRecord::synthetic("Q", &[0, 1], 1, 1, 0);
    let z = zeta_k_at_2(&q, 100_000).unwrap();
    check(&mut f, (z.value - PI * PI / 6.0).abs() < 1e-4, format!("zeta_Q(2) = {}", z.value));

    let qi = {
        let mut r = FieldRecord::synthetic("Qi", &[1, 0, 1], -4, 0, 1);
        r.h = Some(1);
        r.w = Some(4);
        r
    };
    let z = zeta_k_at_2(&qi, 100_000).unwrap();
    let (g, g_err) = catalan(2_000_000);
    let oracle = PI * PI / 6.0 * g;
    check(
        &mut f,
        (z.value - oracle).abs() <= z.error_bound + g_err * 2.0,
        format!("zeta_Q(i)(2) = {} ± {}, oracle {oracle}", z.value, z.error_bound),
    );
    let res = zeta_residue(&qi).unwrap();
    check(&mut f, (res.value - PI / 4.0).abs() < 1e-9, format!("residue = {}", res.value));

    let mut prev: Option<(f64, f64)> = None;
    for p in [1_000, 10_000, 100_000] {
        let z = zeta_k_at_2(&q, p).unwrap();
        check(&mut f, z.error_bound.is_finite(), format!("P = {p}: bound {}", z.error_bound));
        if let Some((v, e)) = prev {
            check(&mut f, z.error_bound <= e, format!("P = {p}: bound grew from {e} to {}", z.error_bound));
            check(
                &mut f,
                (z.value - v).abs() < e.max(z.error_bound),
                format!("P = {p}: value moved by {}", (z.value - v).abs()),
            );
        }
        prev = Some((z.value, z.error_bound));
    }
    report(5, "Euler products, residue, convergence in P", &f);
}

/// Quartics `x⁴ + a x + b` with squarefree discriminant: monogenic, so
/// the polynomial and field discriminants agree and the Galois group is S4.
fn quartic_fixture(count: usize) -> Vec<String> {
    let mut out = Vec::new();
    'search: for a in 1i64..200 {
        for b in -60i64..=60 {
            let d = 256 * b.pow(3) - 27 * a.pow(4);
            if d == 0 {
                continue;
            }
            let fac = factor_u64(d.unsigned_abs());
            if fac.iter().any(|&(_, e)| e > 1) {
                continue;
            }
            let coeffs = [b, a, 0, 0, 1].map(BigInt::from);
            if !octic_core::poly::is_irreducible(&coeffs) {
                continue;
            }
            let r1 = octic_core::poly::real_root_count(&coeffs);
            let factors: Vec<String> = fac.iter().map(|(p, e)| format!("[\"{p}\",\"{e}\"]")).collect();
            out.push(format!(
                r#"{{"label":"4.{r1}.{}.a{a}b{b}","degree":"4","coeffs":["{b}","{a}","0","0","1"],"disc":"{d}","disc_factors":[{}],"galois":"4T5","r1":"{r1}","r2":"{}"}}"#,
                d.abs(),
                factors.join(","),
                (4 - r1) / 2
            ));
            if out.len() == count {
                break 'search;
            }
        }
    }
    out
}

#[test]
fn criterion_6_property_suites() {
    let mut f = Vec::new();
    let mut runner = TestRunner::new(Config::with_cases(10_000));
    let primes = vec![2u64, 3, 5, 7, 11, 13, 283, 1_000_003];
    let strategy = (
        proptest::collection::btree_map(proptest::sample::select(primes.clone()), 1u32..5, 0..5),
        proptest::collection::btree_map(proptest::sample::select(primes), 1u32..7, 0..5),
    );
    let outcome = runner.run(&strategy, |(k, extra)| {
        let parent: Vec<(BigUint, u32)> = k.iter().map(|(&p, &e)| (BigUint::from(p), e)).collect();
        let mut octic: BTreeMap<u64, u32> = k.iter().map(|(&p, &e)| (p, 2 * e)).collect();
        for (&p, &e) in &extra {
            *octic.entry(p).or_default() += e;
        }
        let octic: Vec<(BigUint, u32)> = octic.into_iter().map(|(p, e)| (BigUint::from(p), e)).collect();
        let s = RelDiscSplit::from_factors(&octic, &parent).unwrap();
        let dk = expand(&parent);
        prop_assert_eq!(&s.n0 * &s.n1 * &s.n2, s.norm.clone());
        prop_assert_eq!(&s.d0 * &s.d1 * &s.d2, dk.clone());
        prop_assert_eq!(&s.norm * &dk * &dk, expand(&octic));
        Ok(())
    });
    check(&mut f, outcome.is_ok(), format!("split recombination: {outcome:?}"));

    let text = std::fs::read_to_string(FIELDS).unwrap();
    let snap = nfdata::ingest_str(&text, "fixture").unwrap();
    let labels: Vec<String> = snap.records.values().map(|r| r.galois.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let xs = geometric_checkpoints(100, 100_000_000, 25);
    let all: BTreeSet<String> = labels.iter().cloned().collect();
    let total = count_series(&snap, &all, &xs).unwrap();
    check(&mut f, total.counts.windows(2).all(|w| w[0] <= w[1]), "count not monotone");
    let parts: Vec<CountSeries> = labels
        .iter()
        .map(|l| count_series(&snap, &BTreeSet::from([l.clone()]), &xs).unwrap())
        .collect();
    for i in 0..xs.len() {
        let sum: u64 = parts.iter().map(|p| p.counts[i]).sum();
        check(&mut f, sum == total.counts[i], format!("count not additive at {}", xs[i]));
    }

    let lines = quartic_fixture(1000);
    check(&mut f, lines.len() == 1000, format!("fixture has {} records", lines.len()));
    let forward = nfdata::ingest_str(&lines.join("\n"), "fixture").unwrap();
    let mut shuffled = lines.clone();
    shuffled.reverse();
    shuffled.rotate_left(337);
    let backward = nfdata::ingest_str(&shuffled.join("\n"), "fixture").unwrap();
    check(&mut f, forward == backward, "ingest depends on line order");
    let bytes = nfdata::to_bytes(&forward);
    let dir = std::env::temp_dir().join(format!("octic-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fixture.store");
    nfdata::persist(&forward, &path).unwrap();
    let loaded = nfdata::load(&path).unwrap();
    check(&mut f, loaded == forward, "load(persist(s)) != s");
    check(&mut f, nfdata::to_bytes(&loaded) == bytes, "store bytes differ after round trip");
    check(&mut f, nfdata::to_bytes(&backward) == bytes, "store bytes depend on ingest order");
    std::fs::remove_dir_all(&dir).unwrap();

    let zs = [0u64, 1, 2, 5, 10, 30, 100];
    let xs = [0u64, 1_000, 100_000, 10_000_000, 1_000_000_000];
    let mut tails = vec![vec![0u64; xs.len()]; zs.len()];
    for (i, z) in zs.iter().enumerate() {
        for (j, x) in xs.iter().enumerate() {
            tails[i][j] = tail_count(&forward, &BigUint::from(*z), &BigUint::from(*x));
        }
    }
    for i in 0..zs.len() {
        for j in 0..xs.len() {
            if i > 0 {
                check(&mut f, tails[i][j] <= tails[i - 1][j], format!("tail grew with Z at {i},{j}"));
            }
            if j > 0 {
                check(&mut f, tails[i][j] >= tails[i][j - 1], format!("tail shrank with X at {i},{j}"));
            }
        }
    }
    report(6, "split, count, tail and store properties", &f);
}

#[test]
fn criterion_7_synthetic_fit() {
    let mut f = Vec::new();
    let xs = geometric_checkpoints(1_000, 1_000_000, 20);
    check(&mut f, xs.len() == 20, format!("{} checkpoints", xs.len()));
    let counts = xs
        .iter()
        .map(|&x| {
            let x = x as f64;
            (x - 3.0 * x.powf(0.7)).floor() as u64
        })
        .collect();
    let series = CountSeries {
        checkpoints: xs,
        counts,
        group_filter: BTreeSet::new(),
        provenance: "synthetic".into(),
    };
    let fit = fit_error(&series, &fixed_constant(1.0)).unwrap();
    match fit.slope {
        Some(s) => check(&mut f, (0.68..=0.72).contains(&s), format!("slope {s}")),
        None => f.push("no slope".into()),
    }
    report(7, "synthetic error-exponent fit", &f);
}

#[test]
fn criterion_8_audit_and_fit_on_data() {
    let mut f = Vec::new();
    let snap: Snapshot = nfdata::ingest(std::path::Path::new(FIELDS)).unwrap();
    let audit = audit_lemmas(&snap);
    check(&mut f, audit.passed(), format!("audit violations: {:?}", audit.witnesses));
    let audited = audit.details["audited"].as_u64().unwrap();
    check(&mut f, audited > 0, "no octic was audited");
    let z = BigInt::from(10u32).pow(6);
    let c = octic_core::analytic::partial_constant(&snap, &z, 10_000).unwrap();
    let labels: BTreeSet<String> = snap.records.values().filter(|r| r.degree == 8).map(|r| r.galois.clone()).collect();
    let xs = geometric_checkpoints(1_000_000, 100_000_000, 12);
    let series = count_series(&snap, &labels, &xs).unwrap();
    let fit = fit_error(&series, &c).unwrap();
    check(&mut f, fit.sup_ratio.is_finite() && fit.sup_ratio >= 0.0, "sup_ratio missing");
    check(&mut f, !fit.provenance.is_empty(), "fit has no provenance");
    println!(
        "    audited {audited} octics; fit sup_ratio = {:.4e}, slope = {:?}, provenance: {}",
        fit.sup_ratio, fit.slope, fit.provenance
    );
    report(8, "audit on field data; fit emitted with provenance", &f);
}
