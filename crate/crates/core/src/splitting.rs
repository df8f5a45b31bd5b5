//! Tamely ramified primes modelled as `(inertia, decomposition, Frobenius)`
//! configurations inside a transitive group, with splitting symbols and
//! discriminant valuations read off coset actions.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::catalog;
use crate::group::{coset_action, CosetAction, ElemSet, GroupError, PermGroup};
use crate::perm::Perm;
use crate::verify::{quartic_overgroups, VerificationReport};

pub const SPLITTING_GL23: &str = "splitting-in-gl23";
pub const NORM_VALUATIONS_GL23: &str = "norm-valuations-gl23";
pub const QUARTIC_VALUATIONS_8T40: &str = "quartic-valuations-8t40";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SplittingError {
    #[error("action does not belong to the configuration's group")]
    ActionMismatch,
    #[error("inertia is not normal in the decomposition group")]
    NotNormal,
    #[error("expected an action of degree {expected}, got {got}")]
    Degree { expected: usize, got: usize },
    #[error("orbit formula gives valuation {orbit}, index formula gives {index}")]
    Inconsistent { orbit: usize, index: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A ramified prime up to conjugacy: `I = ⟨inertia_gen⟩`, `D = ⟨I, σ⟩`.
#[derive(Debug, Clone)]
pub struct TameConfig {
    pub group: Arc<PermGroup>,
    pub inertia_gen: Perm,
    pub decomposition: PermGroup,
    pub frobenius: Perm,
    /// `σ τ σ⁻¹ = τ^q` for some `q` prime to the order of `τ`.
    pub tame_compatible: bool,
}

impl TameConfig {
    pub fn new(group: Arc<PermGroup>, inertia_gen: Perm, frobenius: Perm) -> TameConfig {
        let decomposition = PermGroup::new(group.degree(), vec![inertia_gen, frobenius])
            .expect("subgroup of a small group");
        let tame_compatible = is_power_action(&inertia_gen, &frobenius);
        TameConfig {
            group,
            inertia_gen,
            decomposition,
            frobenius,
            tame_compatible,
        }
    }

    /// `e(L̃/p)`.
    pub fn inertia_order(&self) -> usize {
        self.inertia_gen.order() as usize
    }

    /// `f(L̃/p) = |D| / |I|`.
    pub fn residue_degree(&self) -> usize {
        self.decomposition.order() as usize / self.inertia_order()
    }

    pub fn inertia(&self) -> PermGroup {
        PermGroup::cyclic(self.inertia_gen)
    }

    pub fn is_unramified(&self) -> bool {
        self.inertia_gen.is_identity()
    }

    pub fn key(&self) -> String {
        format!("{}|{}", self.inertia_gen, self.frobenius)
    }
}

fn is_power_action(tau: &Perm, sigma: &Perm) -> bool {
    let conj = tau.conjugate_by(sigma);
    let n = tau.order();
    (1..=n.max(1))
        .filter(|q| num_integer::gcd(*q, n) == 1)
        .any(|q| tau.pow(q) == conj)
}

/// Multiset of `(e, f)` pairs, one per prime above `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingSymbol {
    pairs: Vec<(usize, usize)>,
}

impl SplittingSymbol {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> SplittingSymbol {
        pairs.sort_unstable();
        SplittingSymbol { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `Σ e·f`.
    pub fn degree(&self) -> usize {
        self.pairs.iter().map(|(e, f)| e * f).sum()
    }

    /// `Σ (e−1)·f`, the tame discriminant valuation.
    pub fn disc_valuation(&self) -> usize {
        self.pairs.iter().map(|(e, f)| (e - 1) * f).sum()
    }

    pub fn ramification_indices(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.0).collect()
    }
}

impl fmt::Display for SplittingSymbol {
    /// `(f^e …)` with `e = 1` omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .rev()
            .map(|&(e, fd)| {
                if e == 1 {
                    fd.to_string()
                } else {
                    format!("{fd}^{e}")
                }
            })
            .collect();
        write!(f, "({})", parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValuationProfile {
    pub v_disc_l: usize,
    pub v_disc_k: usize,
    pub v_norm: i64,
}

/// All configurations of `g` up to conjugacy with nontrivial inertia.
/// Frobenius elements range over the normalizer of the inertia group,
/// and over all of `g` when `include_nontame` is set.
pub fn enumerate_configs(g: &PermGroup, include_nontame: bool) -> Vec<TameConfig> {
    let group = Arc::new(g.clone());
    let t = g.table();
    let n = t.len();
    let mut known: HashSet<ElemSet> = HashSet::new();
    let mut out = Vec::new();
    for x in 1..n {
        let cyc = t.cyclic(x);
        if known.contains(&cyc) {
            continue;
        }
        for h in 0..n {
            known.insert(t.conjugate_set(h, &cyc));
        }
        let normalizer = t.normalizer(&cyc, &[x]);
        let pool: Vec<usize> = if include_nontame {
            (0..n).collect()
        } else {
            normalizer.iter().collect()
        };
        let mut seen: HashSet<ElemSet> = HashSet::new();
        for s in pool {
            let mut coset = ElemSet::empty(n);
            for i in cyc.iter() {
                coset.insert(t.mul(s, i));
            }
            if seen.contains(&coset) {
                continue;
            }
            for m in normalizer.iter() {
                seen.insert(t.conjugate_set(m, &coset));
            }
            out.push(TameConfig::new(Arc::clone(&group), *t.perm(x), *t.perm(s)));
        }
    }
    out
}

pub fn enumerate_tame_configs(g: &PermGroup) -> Vec<TameConfig> {
    enumerate_configs(g, false)
}

fn check_action(cfg: &TameConfig, action: &CosetAction) -> Result<(), SplittingError> {
    let same = action.group().order() == cfg.group.order()
        && cfg.group.generators().iter().all(|s| action.group().contains(s));
    if same {
        Ok(())
    } else {
        Err(SplittingError::ActionMismatch)
    }
}

/// One `(e, f)` per orbit of `D` on the coset space.
pub fn splitting_symbol(cfg: &TameConfig, action: &CosetAction) -> Result<SplittingSymbol, SplittingError> {
    check_action(cfg, action)?;
    let tau = action.image(&cfg.inertia_gen);
    let d_gens: Vec<Perm> = cfg
        .decomposition
        .generators()
        .iter()
        .map(|s| action.image(s))
        .collect();
    symbol_from_images(action.induced_degree(), &tau, &d_gens)
}

fn cycle_len(p: &Perm, x: usize) -> usize {
    let mut k = 1;
    let mut y = p.apply(x);
    while y != x {
        y = p.apply(y);
        k += 1;
    }
    k
}

pub(crate) fn symbol_from_images(
    degree: usize,
    tau: &Perm,
    d_gens: &[Perm],
) -> Result<SplittingSymbol, SplittingError> {
    let mut done = vec![false; degree];
    let mut pairs = Vec::new();
    for start in 0..degree {
        if done[start] {
            continue;
        }
        let mut orbit = vec![start];
        done[start] = true;
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            k += 1;
            for s in d_gens {
                let y = s.apply(x);
                if !done[y] {
                    done[y] = true;
                    orbit.push(y);
                }
            }
        }
        let e = cycle_len(tau, start);
        if orbit.iter().any(|&x| cycle_len(tau, x) != e) {
            return Err(SplittingError::NotNormal);
        }
        pairs.push((e, orbit.len() / e));
    }
    Ok(SplittingSymbol::new(pairs))
}

/// Valuations of `Δ_L`, `Δ_K` and `Nm Δ_{L/K}` at a prime with this
/// configuration. For tame configurations the index formula is checked
/// against the splitting symbols.
pub fn valuation_profile(
    cfg: &TameConfig,
    octic: &CosetAction,
    quartic: &CosetAction,
) -> Result<ValuationProfile, SplittingError> {
    for (a, d) in [(octic, 8), (quartic, 4)] {
        if a.induced_degree() != d {
            return Err(SplittingError::Degree {
                expected: d,
                got: a.induced_degree(),
            });
        }
        check_action(cfg, a)?;
    }
    let v_l = octic.image(&cfg.inertia_gen).index();
    let v_k = quartic.image(&cfg.inertia_gen).index();
    if cfg.tame_compatible {
        for (a, v) in [(octic, v_l), (quartic, v_k)] {
            let orbit = splitting_symbol(cfg, a)?.disc_valuation();
            if orbit != v {
                return Err(SplittingError::Inconsistent { orbit, index: v });
            }
        }
    }
    Ok(ValuationProfile {
        v_disc_l: v_l,
        v_disc_k: v_k,
        v_norm: v_l as i64 - 2 * v_k as i64,
    })
}

/// Octic action on the cosets of a point stabilizer, and the quartic
/// actions through which it factors.
pub struct TowerActions {
    pub octic: CosetAction,
    pub quartics: Vec<CosetAction>,
}

pub fn tower_actions(g: &PermGroup) -> Result<TowerActions, SplittingError> {
    let h_l = g.stabilizer(0);
    let octic = coset_action(g, &h_l)?;
    let quartics = quartic_overgroups(g, &h_l)
        .iter()
        .map(|h_k| coset_action(g, h_k))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TowerActions { octic, quartics })
}

/// Data a lemma check needs about one configuration in one tower.
#[derive(Debug, Clone)]
pub struct ConfigFacts {
    pub key: String,
    pub tame: bool,
    pub inertia_order: usize,
    pub residue_degree: usize,
    /// Inertia orbit lengths on the octic and quartic points.
    pub octic_e: Vec<usize>,
    pub quartic_e: Vec<usize>,
    pub profile: ValuationProfile,
}

fn facts(cfg: &TameConfig, octic: &CosetAction, quartic: &CosetAction) -> Result<ConfigFacts, SplittingError> {
    let profile = valuation_profile(cfg, octic, quartic)?;
    let orbit_lengths = |a: &CosetAction| {
        let img = a.image(&cfg.inertia_gen);
        (0..a.induced_degree()).map(|x| cycle_len(&img, x)).collect::<Vec<_>>()
    };
    Ok(ConfigFacts {
        key: cfg.key(),
        tame: cfg.tame_compatible,
        inertia_order: cfg.inertia_order(),
        residue_degree: cfg.residue_degree(),
        octic_e: orbit_lengths(octic),
        quartic_e: orbit_lengths(quartic),
        profile,
    })
}

fn all_equal(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

type Check = fn(&ConfigFacts) -> Option<String>;

fn run_checks(
    claim: &str,
    label: &str,
    checks: &[(&str, Check)],
    include_nontame: bool,
    extra: Vec<String>,
    mut extra_details: Map<String, Value>,
) -> VerificationReport {
    let g = catalog::lookup(label).expect("catalog label");
    let mut witnesses = extra;
    let configs = enumerate_configs(&g, include_nontame);
    let towers = match tower_actions(&g) {
        Ok(t) => t,
        Err(e) => return VerificationReport::new(claim, vec![format!("{label}: {e}")], Map::new()),
    };
    if towers.quartics.is_empty() {
        witnesses.push(format!("{label}: no quartic action"));
    }
    let mut per_quartic = Vec::new();
    for (qi, quartic) in towers.quartics.iter().enumerate() {
        let results: Vec<Result<ConfigFacts, (String, SplittingError)>> = configs
            .par_iter()
            .map(|c| facts(c, &towers.octic, quartic).map_err(|e| (c.key(), e)))
            .collect();
        let mut tame_fail: BTreeMap<&str, usize> = checks.iter().map(|(n, _)| (*n, 0)).collect();
        let mut nontame_fail: BTreeMap<&str, usize> = checks.iter().map(|(n, _)| (*n, 0)).collect();
        let mut profiles: BTreeMap<String, usize> = BTreeMap::new();
        let mut tame_count = 0;
        for r in results {
            let f = match r {
                Ok(f) => f,
                Err((key, e)) => {
                    witnesses.push(format!("{label} quartic {qi}: config {key}: {e}"));
                    continue;
                }
            };
            if f.tame {
                tame_count += 1;
                let p = f.profile;
                *profiles
                    .entry(format!("{},{},{}", p.v_disc_l, p.v_disc_k, p.v_norm))
                    .or_default() += 1;
            }
            for (name, check) in checks {
                if let Some(msg) = check(&f) {
                    if f.tame {
                        *tame_fail.get_mut(name).unwrap() += 1;
                        witnesses.push(format!("{label} quartic {qi}: {name}: config {}: {msg}", f.key));
                    } else {
                        *nontame_fail.get_mut(name).unwrap() += 1;
                    }
                }
            }
        }
        let mut row = json!({
            "quartic_index": qi,
            "tame_configs": tame_count,
            "counterexamples": tame_fail,
            "profiles_vL_vK_vnorm": profiles,
        });
        if include_nontame {
            row["nontame_configs"] = json!(configs.len() - tame_count);
            row["nontame_counterexamples"] = json!(nontame_fail);
        }
        per_quartic.push(row);
    }
    extra_details.insert("group".into(), json!(label));
    extra_details.insert("quartic_actions".into(), Value::Array(per_quartic));
    VerificationReport::new(claim, witnesses, extra_details)
}

pub fn verify_gl23_splitting(include_nontame: bool) -> VerificationReport {
    let checks: [(&str, Check); 3] = [
        ("inertia-order", |f| {
            (![2, 3, 4, 6, 8].contains(&f.inertia_order))
                .then(|| format!("|I| = {}", f.inertia_order))
        }),
        ("order-two-residue-degree", |f| {
            (f.inertia_order == 2 && !all_equal(&f.quartic_e) && f.residue_degree > 2)
                .then(|| format!("f = {}", f.residue_degree))
        }),
        ("small-octic-ramification", |f| {
            let small = f.octic_e.iter().all(|&e| e <= 2);
            (small && !all_equal(&f.quartic_e) && (f.inertia_order != 2 || f.residue_degree > 2))
                .then(|| format!("|I| = {}, f = {}", f.inertia_order, f.residue_degree))
        }),
    ];
    run_checks(SPLITTING_GL23, "8T23", &checks, include_nontame, vec![], Map::new())
}

pub fn verify_gl23_norm_valuations(include_nontame: bool) -> VerificationReport {
    let checks: [(&str, Check); 3] = [
        ("unramified-quartic", |f| {
            let p = f.profile;
            (p.v_disc_k == 0 && p.v_norm != 4).then(|| format!("v_norm = {}", p.v_norm))
        }),
        ("norm-below-quartic", |f| {
            let p = f.profile;
            (p.v_disc_k >= 1 && p.v_norm > p.v_disc_k as i64)
                .then(|| format!("v_norm = {} > v_K = {}", p.v_norm, p.v_disc_k))
        }),
        ("total-quartic-ramification", |f| {
            let p = f.profile;
            (p.v_disc_k == 3 && p.v_norm < 1).then(|| format!("v_norm = {}", p.v_norm))
        }),
    ];
    run_checks(NORM_VALUATIONS_GL23, "8T23", &checks, include_nontame, vec![], Map::new())
}

/// Valuation forms of the comparison between the quartic discriminant and
/// the relative norm for `8T40`. The index set is reported alongside.
pub fn verify_8t40_quartic_valuations(include_nontame: bool) -> VerificationReport {
    let checks: [(&str, Check); 3] = [
        ("cube-comparison", |f| {
            let p = f.profile;
            let (k, n) = (p.v_disc_k as i64, p.v_norm);
            (k >= 1 && n >= 1 && (k > 3 * n || n > 3 * k)).then(|| format!("v_K = {k}, v_norm = {n}"))
        }),
        ("norm-not-four", |f| {
            let p = f.profile;
            (p.v_disc_k >= 1 && p.v_norm == 4).then(|| format!("v_K = {}", p.v_disc_k))
        }),
        ("odd-quartic-valuation", |f| {
            let p = f.profile;
            ((p.v_disc_k == 1 || p.v_disc_k == 3) && p.v_norm < 1)
                .then(|| format!("v_K = {}, v_norm = {}", p.v_disc_k, p.v_norm))
        }),
    ];
    let g = catalog::lookup("8T40").expect("catalog");
    let mut d = Map::new();
    d.insert("index_set".into(), json!(g.index_set()));
    run_checks(QUARTIC_VALUATIONS_8T40, "8T40", &checks, include_nontame, vec![], d)
}

/// `Σ e·f = degree` and `Σ (e−1)·f = ind(τ)` on every configuration of a
/// catalog group, in both the octic and quartic actions.
pub fn verify_consistency(label: &str) -> Result<VerificationReport, SplittingError> {
    let g = catalog::lookup(label)?;
    let towers = tower_actions(&g)?;
    let configs = enumerate_tame_configs(&g);
    let actions: Vec<&CosetAction> = std::iter::once(&towers.octic).chain(&towers.quartics).collect();
    let witnesses: Vec<String> = configs
        .par_iter()
        .flat_map_iter(|c| {
            actions.iter().filter_map(move |a| {
                let s = match splitting_symbol(c, a) {
                    Ok(s) => s,
                    Err(e) => return Some(format!("{}: {e}", c.key())),
                };
                let ind = a.image(&c.inertia_gen).index();
                (s.degree() != a.induced_degree() || s.disc_valuation() != ind)
                    .then(|| format!("{}: symbol {s} in degree {}", c.key(), a.induced_degree()))
            })
        })
        .collect();
    let mut d = Map::new();
    d.insert("group".into(), json!(label));
    d.insert("configs".into(), json!(configs.len()));
    Ok(VerificationReport::new(&format!("splitting-consistency-{label}"), witnesses, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    fn natural(g: &PermGroup) -> CosetAction {
        coset_action(g, &g.stabilizer(0)).unwrap()
    }

    #[test]
    fn s3_transposition_has_one_config() {
        let s3 = PermGroup::symmetric(3).unwrap();
        let cfgs = enumerate_tame_configs(&s3);
        let trans: Vec<_> = cfgs.iter().filter(|c| c.inertia_order() == 2).collect();
        assert_eq!(trans.len(), 1);
        assert!(trans[0].frobenius.is_identity() || trans[0].inertia().contains(&trans[0].frobenius));
        let sym = splitting_symbol(trans[0], &natural(&s3)).unwrap();
        assert_eq!(sym.pairs(), &[(1, 1), (2, 1)]);
        assert_eq!(sym.to_string(), "(1^2 1)");
    }

    #[test]
    fn inert_and_totally_ramified() {
        let c3 = grp(3, &["(1 2 3)"]);
        let cfg = TameConfig::new(Arc::new(c3.clone()), Perm::identity(3), p(3, "(1 2 3)"));
        let sym = splitting_symbol(&cfg, &natural(&c3)).unwrap();
        assert_eq!(sym.pairs(), &[(1, 3)]);

        let c8 = grp(8, &["(1 2 3 4 5 6 7 8)"]);
        let t = p(8, "(1 2 3 4 5 6 7 8)");
        let cfg = TameConfig::new(Arc::new(c8.clone()), t, t);
        assert_eq!(splitting_symbol(&cfg, &natural(&c8)).unwrap().pairs(), &[(8, 1)]);
    }

    #[test]
    fn center_of_gl23_is_free_on_octic_points() {
        let g = catalog::lookup("8T23").unwrap();
        let tw = tower_actions(&g).unwrap();
        assert_eq!(tw.quartics.len(), 1);
        let center: Vec<Perm> = g
            .elements()
            .iter()
            .filter(|z| !z.is_identity() && g.generators().iter().all(|s| *s * **z == **z * *s))
            .copied()
            .collect();
        assert_eq!(center.len(), 1);
        let cfg = TameConfig::new(Arc::new(g.clone()), center[0], Perm::identity(8));
        let v = valuation_profile(&cfg, &tw.octic, &tw.quartics[0]).unwrap();
        assert_eq!(v, ValuationProfile { v_disc_l: 4, v_disc_k: 0, v_norm: 4 });
    }

    #[test]
    fn unramified_profile_is_zero() {
        let g = catalog::lookup("8T44").unwrap();
        let tw = tower_actions(&g).unwrap();
        let sigma = p(8, "(1 3 5 7)(2 4 6 8)");
        let cfg = TameConfig::new(Arc::new(g), Perm::identity(8), sigma);
        let v = valuation_profile(&cfg, &tw.octic, &tw.quartics[0]).unwrap();
        assert_eq!(v, ValuationProfile { v_disc_l: 0, v_disc_k: 0, v_norm: 0 });
        let s = splitting_symbol(&cfg, &tw.octic).unwrap();
        assert!(s.ramification_indices().iter().all(|&e| e == 1));
        assert_eq!(s.degree(), 8);
    }

    #[test]
    fn q8_order_four_elements_move_quartic_points() {
        let g = catalog::lookup("8T40").unwrap();
        let tw = tower_actions(&g).unwrap();
        let q8 = g
            .normal_subgroups()
            .into_iter()
            .find(|n| {
                n.order() == 8 && n.order_profile().into_iter().collect::<Vec<_>>() == [(1, 1), (2, 1), (4, 6)]
            })
            .unwrap();
        assert_eq!(
            q8.cyclic_subgroup_orders().into_iter().collect::<Vec<_>>(),
            vec![1, 2, 4]
        );
        // the quartic kernel is elementary abelian, so order-4 elements act
        // nontrivially on quartic points
        let kernel = tw.quartics[0].kernel();
        assert!(kernel.elements().iter().all(|x| x.order() <= 2));
        for tau in q8.elements().iter().filter(|x| x.order() == 4) {
            let cfg = TameConfig::new(Arc::new(g.clone()), *tau, Perm::identity(8));
            let v = valuation_profile(&cfg, &tw.octic, &tw.quartics[0]).unwrap();
            assert_eq!(v, ValuationProfile { v_disc_l: 6, v_disc_k: 2, v_norm: 2 });
        }
    }

    /// Independent recount: pairs `(⟨τ⟩, σ⟨τ⟩)` with `σ` normalizing,
    /// up to conjugacy, over all elements.
    fn naive_config_count(g: &PermGroup) -> usize {
        let els = g.elements();
        let key = |i: &PermGroup, s: &Perm| -> (Vec<Perm>, Vec<Perm>) {
            let mut a = i.elements().to_vec();
            a.sort();
            let mut b: Vec<Perm> = a.iter().map(|x| *s * *x).collect();
            b.sort();
            (a, b)
        };
        let mut pairs = BTreeSet::new();
        for t in els.iter().filter(|t| !t.is_identity()) {
            let i = PermGroup::cyclic(*t);
            for s in els {
                if i.conjugate(s) == i {
                    pairs.insert(key(&i, s));
                }
            }
        }
        let mut classes = 0;
        let mut done = BTreeSet::new();
        for (a, b) in &pairs {
            if done.contains(&(a.clone(), b.clone())) {
                continue;
            }
            classes += 1;
            for h in els {
                let mut ca: Vec<Perm> = a.iter().map(|x| x.conjugate_by(h)).collect();
                let mut cb: Vec<Perm> = b.iter().map(|x| x.conjugate_by(h)).collect();
                ca.sort();
                cb.sort();
                done.insert((ca, cb));
            }
        }
        classes
    }

    #[test]
    fn config_count_matches_naive_oracle() {
        for g in [
            PermGroup::symmetric(3).unwrap(),
            PermGroup::symmetric(4).unwrap(),
            catalog::lookup("8T14").unwrap(),
            catalog::lookup("8T23").unwrap(),
        ] {
            assert_eq!(enumerate_tame_configs(&g).len(), naive_config_count(&g), "{g}");
        }
    }

    #[test]
    fn gl23_config_count_regression() {
        let g = catalog::lookup("8T23").unwrap();
        let cfgs = enumerate_tame_configs(&g);
        assert_eq!(cfgs.len(), GL23_CONFIGS);
        for c in &cfgs {
            assert!(c.inertia().is_normal_in(&c.decomposition));
            assert!(c.tame_compatible);
        }
    }

    const GL23_CONFIGS: usize = 19;

    /// Naive symbol: list primes above `p` as orbits of `D`, ramification as
    /// `|D-orbit| / (number of Frobenius-generated residue classes)`.
    fn naive_symbol(deg: usize, tau: &Perm, sigma: &Perm) -> Vec<(usize, usize)> {
        let mut d_orbit_of = vec![usize::MAX; deg];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for x in 0..deg {
            if d_orbit_of[x] != usize::MAX {
                continue;
            }
            let mut o = BTreeSet::new();
            let mut frontier = vec![x];
            while let Some(y) = frontier.pop() {
                if o.insert(y) {
                    frontier.push(tau.apply(y));
                    frontier.push(sigma.apply(y));
                }
            }
            for &y in &o {
                d_orbit_of[y] = orbits.len();
            }
            orbits.push(o.into_iter().collect());
        }
        let mut out: Vec<(usize, usize)> = orbits
            .iter()
            .map(|o| {
                let mut i_orbits = BTreeSet::new();
                for &y in o {
                    let mut c = vec![y];
                    let mut z = tau.apply(y);
                    while z != y {
                        c.push(z);
                        z = tau.apply(z);
                    }
                    c.sort();
                    i_orbits.insert(c);
                }
                let f = i_orbits.len();
                (o.len() / f, f)
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn symbols_match_naive_oracle_on_s3_s4_subgroups() {
        for deg in [3usize, 4] {
            let sym = PermGroup::symmetric(deg).unwrap();
            for class in crate::group::subgroup_classes(&sym).unwrap() {
                let h = class.representative;
                if h.is_trivial() {
                    continue;
                }
                let action = natural(&sym);
                for cfg in enumerate_tame_configs(&h) {
                    let cfg = TameConfig::new(Arc::new(sym.clone()), cfg.inertia_gen, cfg.frobenius);
                    let got = splitting_symbol(&cfg, &action).unwrap();
                    let img_t = action.image(&cfg.inertia_gen);
                    let img_s = action.image(&cfg.frobenius);
                    assert_eq!(got.pairs(), naive_symbol(deg, &img_t, &img_s).as_slice());
                }
            }
        }
    }

    #[test]
    fn consistency_on_catalog() {
        for label in catalog::labels() {
            let r = verify_consistency(label).unwrap();
            assert!(r.passed(), "{label}: {:?}", r.witnesses);
        }
    }

    #[test]
    fn symbols_are_conjugation_invariant() {
        let g = catalog::lookup("8T40").unwrap();
        let act = natural(&g);
        let els = g.elements();
        for cfg in enumerate_tame_configs(&g).iter().take(20) {
            let s = splitting_symbol(cfg, &act).unwrap();
            for h in els.iter().step_by(17) {
                let c2 = TameConfig::new(
                    Arc::clone(&cfg.group),
                    cfg.inertia_gen.conjugate_by(h),
                    cfg.frobenius.conjugate_by(h),
                );
                assert_eq!(splitting_symbol(&c2, &act).unwrap(), s);
            }
        }
    }

    #[test]
    fn mismatched_action_rejected() {
        let s3 = PermGroup::symmetric(3).unwrap();
        let s4 = PermGroup::symmetric(4).unwrap();
        let cfg = enumerate_tame_configs(&s3).remove(0);
        assert_eq!(
            splitting_symbol(&cfg, &natural(&s4)).unwrap_err(),
            SplittingError::ActionMismatch
        );
    }
}
