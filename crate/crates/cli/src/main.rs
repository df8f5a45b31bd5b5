//! `octic`: group verifiers, field-record ingest, counting, constants and fits.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use serde_json::{json, Map, Value};

use octic_core::analytic::{self, DEFAULT_PRIME_BOUND};
use octic_core::counting::{self, CountSeries};
use octic_core::nfdata::{self, record_to_line, Snapshot};
use octic_core::verify::{self, VerificationReport};
use octic_core::{catalog, splitting};

#[derive(Parser)]
#[command(name = "octic", version, about = "Octic towers over S4-quartic fields")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Write the JSON report to PATH, or to standard output with `-`.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<String>,
    /// Write tabular output as CSV to PATH, or to standard output with `-`.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<String>,
    /// Cap on worker threads.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Add timings and ingest times to outputs.
    #[arg(long, global = true)]
    stamp: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the five group-theoretic verifiers.
    VerifyGroups,
    /// Check the ramification lemmas and symbol consistency.
    VerifySplitting {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        include_nontame: bool,
    },
    /// Validate a record file and write a store.
    Ingest {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// List records sorted by |disc| and label.
    Query {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        degree: Option<u32>,
        /// Comma-separated Galois labels.
        #[arg(long)]
        galois: Option<String>,
        #[arg(long)]
        max_disc: Option<BigUint>,
    },
    /// Partial sum of the leading constant over S4-quartics.
    Constant {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        max_disc: BigInt,
        #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
        prime_bound: u64,
        /// Per-field terms as CSV.
        #[arg(long, value_name = "CSV")]
        emit_terms: Option<PathBuf>,
    },
    /// Counting function at checkpoints.
    Count {
        #[arg(long)]
        store: PathBuf,
        /// Comma-separated Galois labels, or `all` for the six octic labels.
        #[arg(long)]
        galois: String,
        /// `X1,X2,...` or `geom:LO:HI:K`.
        #[arg(long)]
        checkpoints: String,
    },
    /// Valuation-pattern audit of every octic with a parent.
    Audit {
        #[arg(long)]
        store: PathBuf,
    },
    /// S4-quartics with |disc| <= X whose square support exceeds Z.
    Tail {
        #[arg(long)]
        store: PathBuf,
        #[arg(long = "Z")]
        z: BigUint,
        #[arg(long = "X")]
        x: BigUint,
    },
    /// Error-exponent fit of an octic count against C·X.
    Fit {
        #[arg(long)]
        store: PathBuf,
        #[arg(long, value_enum)]
        constant_from: ConstantSource,
        #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
        prime_bound: u64,
        #[arg(long, default_value = "8T44")]
        galois: String,
        /// Defaults to 20 geometric points over the matching discriminants.
        #[arg(long)]
        checkpoints: Option<String>,
    },
    /// Malle's invariant a(G) of a catalog group.
    MalleAlpha {
        #[arg(long)]
        label: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstantSource {
    Quartics,
}

/// Bad arguments detected after parsing; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// What a subcommand produced.
struct Outcome {
    json: Value,
    text: String,
    csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    ok: bool,
}

impl Outcome {
    fn new(json: Value, text: String) -> Outcome {
        Outcome {
            json,
            text,
            csv: None,
            ok: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            eprintln!("For more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let g = &cli.global;
    if g.json.as_deref() == Some("-") && g.csv.as_deref() == Some("-") {
        return Err(usage("--json - and --csv - both claim standard output"));
    }
    if let Some(n) = g.threads {
        if n == 0 {
            return Err(usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let out = dispatch(cli.command, g.stamp)?;
    emit(g, &out)?;
    Ok(out.ok)
}

fn write_to(target: &str, bytes: &[u8]) -> Result<()> {
    if target == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(bytes)?;
        stdout.flush()?;
        Ok(())
    } else {
        fs::write(target, bytes).with_context(|| format!("writing {target}"))
    }
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(w.into_inner()?)
}

fn emit(g: &Global, out: &Outcome) -> Result<()> {
    if let Some(target) = &g.json {
        let mut s = serde_json::to_string_pretty(&out.json)?;
        s.push('\n');
        write_to(target, s.as_bytes())?;
    }
    if let Some(target) = &g.csv {
        let Some((header, rows)) = &out.csv else {
            return Err(usage("this subcommand has no tabular output for --csv"));
        };
        write_to(target, &csv_bytes(header, rows)?)?;
    }
    let stdout_taken = [&g.json, &g.csv].iter().any(|t| t.as_deref() == Some("-"));
    if !stdout_taken {
        print!("{}", out.text);
    }
    Ok(())
}

fn load(store: &Path) -> Result<Snapshot> {
    Ok(nfdata::load(store)?)
}

fn labels(spec: &str) -> BTreeSet<String> {
    if spec == "all" {
        return catalog::labels().map(String::from).collect();
    }
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn checkpoints(spec: &str) -> Result<Vec<u128>> {
    let bad = || usage(format!("bad checkpoint spec {spec:?}"));
    if let Some(rest) = spec.strip_prefix("geom:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [lo, hi, k] = parts.as_slice() else {
            return Err(bad());
        };
        let lo: u128 = lo.parse().map_err(|_| bad())?;
        let hi: u128 = hi.parse().map_err(|_| bad())?;
        let k: usize = k.parse().map_err(|_| bad())?;
        if lo == 0 || hi <= lo || k < 2 {
            return Err(bad());
        }
        return Ok(counting::geometric_checkpoints(lo, hi, k));
    }
    let xs = spec
        .split(',')
        .map(|s| s.trim().parse::<u128>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    if xs.is_empty() || xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage("checkpoints must be strictly increasing"));
    }
    Ok(xs)
}

fn report_text(reports: &[VerificationReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let mark = if r.passed() { "PASS" } else { "FAIL" };
        s.push_str(&format!("{mark} {}", r.claim_id));
        if !r.witnesses.is_empty() {
            s.push_str(&format!(" ({} witnesses)", r.witnesses.len()));
        }
        s.push('\n');
        for w in r.witnesses.iter().take(10) {
            s.push_str(&format!("  {w}\n"));
        }
    }
    s
}

fn reports_outcome(reports: Vec<VerificationReport>, stamp: bool) -> Outcome {
    let json: Map<String, Value> = reports
        .iter()
        .map(|r| (r.claim_id.clone(), r.to_json(stamp)))
        .collect();
    let mut out = Outcome::new(Value::Object(json), report_text(&reports));
    out.ok = reports.iter().all(VerificationReport::passed);
    out
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn dispatch(command: Command, stamp: bool) -> Result<Outcome> {
    match command {
        Command::VerifyGroups => Ok(reports_outcome(verify::verify_all(), stamp)),
        Command::VerifySplitting {
            group,
            include_nontame,
        } => {
            let groups: Vec<&str> = match &group {
                Some(l) => {
                    if catalog::entry(l).is_none() {
                        return Err(usage(format!("{l} is not a catalog label")));
                    }
                    vec![l.as_str()]
                }
                None => catalog::labels().collect(),
            };
            let mut reports = Vec::new();
            if groups.contains(&"8T23") {
                reports.push(splitting::verify_gl23_splitting(include_nontame));
                reports.push(splitting::verify_gl23_norm_valuations(include_nontame));
            }
            if groups.contains(&"8T40") {
                reports.push(splitting::verify_8t40_quartic_valuations(include_nontame));
            }
            for l in groups {
                reports.push(splitting::verify_consistency(l)?);
            }
            Ok(reports_outcome(reports, stamp))
        }
        Command::Ingest { input, out } => {
            let mut snapshot = nfdata::ingest(&input)?;
            if stamp {
                snapshot.ingest_time = Some(SystemTime::now().duration_since(UNIX_EPOCH)?.as_secs());
            }
            nfdata::persist(&snapshot, &out)?;
            let json = json!({
                "records": snapshot.len(),
                "store": out.display().to_string(),
                "provenance": snapshot.provenance,
            });
            let text = format!("{} records written to {}\n", snapshot.len(), out.display());
            Ok(Outcome::new(json, text))
        }
        Command::Query {
            store,
            degree,
            galois,
            max_disc,
        } => {
            let snapshot = load(&store)?;
            let gal: Vec<String> = galois.as_deref().map(labels).unwrap_or_default().into_iter().collect();
            let found = nfdata::query(&snapshot, degree, &gal, max_disc.as_ref());
            let lines: Vec<String> = found.iter().map(|r| record_to_line(r)).collect();
            let records: Vec<Value> = lines
                .iter()
                .map(|l| serde_json::from_str(l).expect("canonical line is JSON"))
                .collect();
            let mut text: String = lines.iter().map(|l| format!("{l}\n")).collect();
            if lines.is_empty() {
                text = String::new();
            }
            let mut out = Outcome::new(json!({ "count": records.len(), "records": records }), text);
            out.csv = Some((
                vec!["label", "degree", "galois", "disc", "parent_label"],
                found
                    .iter()
                    .map(|r| {
                        vec![
                            r.label.clone(),
                            r.degree.to_string(),
                            r.galois.clone(),
                            r.disc.to_string(),
                            r.parent_label.clone().unwrap_or_default(),
                        ]
                    })
                    .collect(),
            ));
            Ok(out)
        }
        Command::Constant {
            store,
            max_disc,
            prime_bound,
            emit_terms,
        } => {
            if prime_bound < 100 {
                return Err(usage("--prime-bound must be at least 100"));
            }
            let snapshot = load(&store)?;
            let c = analytic::partial_constant(&snapshot, &max_disc, prime_bound)?;
            let rows: Vec<Vec<String>> = c
                .term_list
                .iter()
                .map(|t| {
                    vec![
                        t.label.clone(),
                        t.disc.clone(),
                        format!("{:e}", t.value),
                        format!("{:e}", t.error_bound),
                    ]
                })
                .collect();
            let header = vec!["label", "disc", "value", "error_bound"];
            if let Some(path) = emit_terms {
                fs::write(&path, csv_bytes(&header, &rows)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let mut json = to_value(&c);
            json.as_object_mut().unwrap().remove("term_list");
            json["provenance"] = json!(snapshot.provenance);
            let text = format!(
                "C(Z={}) = {:.12e} ± {:.3e} over {} fields, P = {}\n",
                c.z, c.value, c.error_bound, c.terms, c.prime_bound
            );
            let mut out = Outcome::new(json, text);
            out.csv = Some((header, rows));
            Ok(out)
        }
        Command::Count {
            store,
            galois,
            checkpoints: spec,
        } => {
            let xs = checkpoints(&spec)?;
            let snapshot = load(&store)?;
            let series = counting::count_series(&snapshot, &labels(&galois), &xs)?;
            Ok(series_outcome(&series))
        }
        Command::Audit { store } => {
            let snapshot = load(&store)?;
            Ok(reports_outcome(vec![counting::audit_lemmas(&snapshot)], stamp))
        }
        Command::Tail { store, z, x } => {
            let snapshot = load(&store)?;
            let n = counting::tail_count(&snapshot, &z, &x);
            let json = json!({ "Z": z.to_string(), "X": x.to_string(), "count": n });
            Ok(Outcome::new(json, format!("{n}\n")))
        }
        Command::Fit {
            store,
            constant_from: ConstantSource::Quartics,
            prime_bound,
            galois,
            checkpoints: spec,
        } => {
            if prime_bound < 100 {
                return Err(usage("--prime-bound must be at least 100"));
            }
            let snapshot = load(&store)?;
            let labels = labels(&galois);
            let xs = match spec {
                Some(s) => checkpoints(&s)?,
                None => default_checkpoints(&snapshot, &labels)?,
            };
            let z = snapshot
                .records
                .values()
                .filter(|r| r.degree == 4)
                .map(|r| BigInt::from(r.abs_disc()))
                .max()
                .unwrap_or_default();
            let c = analytic::partial_constant(&snapshot, &z, prime_bound)?;
            let series = counting::count_series(&snapshot, &labels, &xs)?;
            let fit = counting::fit_error(&series, &c)?;
            let mut json = to_value(&fit);
            json["c_used"].as_object_mut().unwrap().remove("term_list");
            let slope = fit
                .slope
                .map_or("n/a".to_string(), |s| format!("{s:.4}"));
            let text = format!(
                "theta = {:.6}\nsup_ratio = {:.6e}\nslope = {slope}\nC = {:.6e} ± {:.3e} ({} quartics)\nprovenance: {}\n",
                fit.theta_target, fit.sup_ratio, c.value, c.error_bound, c.terms, fit.provenance
            );
            let mut out = Outcome::new(json, text);
            out.csv = Some((
                vec!["x", "count", "residual", "caveat"],
                fit.points
                    .iter()
                    .map(|p| {
                        vec![
                            p.x.to_string(),
                            p.count.to_string(),
                            format!("{:e}", p.residual),
                            format!("{:e}", p.caveat),
                        ]
                    })
                    .collect(),
            ));
            Ok(out)
        }
        Command::MalleAlpha { label } => {
            let g = catalog::lookup(&label).map_err(|_| usage(format!("{label} is not a catalog label")))?;
            let a = g.malle_alpha()?;
            Ok(Outcome::new(
                json!({ "label": label, "alpha": a.to_string() }),
                format!("{a}\n"),
            ))
        }
    }
}

fn default_checkpoints(snapshot: &Snapshot, labels: &BTreeSet<String>) -> Result<Vec<u128>> {
    let discs: Vec<u128> = snapshot
        .records
        .values()
        .filter(|r| labels.contains(&r.galois))
        .filter_map(|r| u128::try_from(r.abs_disc()).ok())
        .collect();
    let (Some(&lo), Some(&hi)) = (discs.iter().min(), discs.iter().max()) else {
        bail!("no records with the requested labels");
    };
    let xs = counting::geometric_checkpoints(lo, hi, 20);
    if xs.len() < 3 {
        bail!("too few distinct discriminants to fit");
    }
    Ok(xs)
}

fn series_outcome(series: &CountSeries) -> Outcome {
    let text: String = series
        .checkpoints
        .iter()
        .zip(&series.counts)
        .map(|(x, n)| format!("{x}\t{n}\n"))
        .collect();
    let json = json!({
        "checkpoints": series.checkpoints.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "counts": series.counts,
        "group_filter": series.group_filter,
        "provenance": series.provenance,
    });
    let mut out = Outcome::new(json, text);
    out.csv = Some((
        vec!["x", "count"],
        series
            .checkpoints
            .iter()
            .zip(&series.counts)
            .map(|(x, n)| vec![x.to_string(), n.to_string()])
            .collect(),
    ));
    out
}
