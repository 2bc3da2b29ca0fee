//! Command-line front end for the prederivator calculus.
//!
//! Exit codes: 0 when every check passes, 1 on a check failure, 2 on an
//! input error, 3 when a resource or word bound was exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use pdcalc_core::budget::Limits;
use pdcalc_core::error::Error;
use pdcalc_core::fincat::Cat;
use pdcalc_core::hocat::{ho_presented, ho_quasicategory};
use pdcalc_core::lkan::{l_eval_objects, l_product_comparison, unit_check};
use pdcalc_core::modelcheck::{
    is_acyclic_fibration_pd, is_fibrant_pd, weq_levelwise_equivalence, HoMapFixture,
};
use pdcalc_core::pdv::{underlying_sset, ProbeFamily};
use pdcalc_core::quasirep::{all_passed, check_quasi_representable, failing_summary};
use pdcalc_core::report::Verdict;
use pdcalc_core::sset::{has_rlp, standard_simplex, SimplicialMap};
use pdcalc_core::suite::{report_all, serialize_reports, RunConfig};
use pdcalc_core::textio;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "pdcalc",
    about = "Finite categories, truncated simplicial sets, and a verified prederivator calculus",
    version
)]
struct Cli {
    /// Truncation bound for simplicial sets.
    #[arg(long, global = true, default_value_t = 3)]
    bound: usize,
    /// Largest horn dimension searched by lifting checks.
    #[arg(long, global = true, default_value_t = 3)]
    nmax: usize,
    /// Word-length bound for congruence closure.
    #[arg(long, global = true, default_value_t = 8)]
    word_bound: usize,
    /// Candidate budget per enumeration (also via PDCALC_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Probe family document; the default family is used when absent.
    #[arg(long, global = true)]
    probes: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutputFormat,
    /// Rejected: this tool has no randomness anywhere.
    #[arg(long, global = true, hide = true)]
    seed: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Validate a category or simplicial-set document.
    Validate { file: String },
    /// Print the nerve of a category.
    Nerve { cat: String },
    /// Print the homotopy category of a simplicial set.
    Ho { sset: String },
    /// Evaluate a prederivator at a category.
    Eval { pd: String, cat: String },
    /// Print the underlying simplicial set of a prederivator.
    Rfunctor { pd: String },
    /// Run the quasi-representability checks.
    QrepCheck { pd: String },
    /// Fibrancy of a prederivator.
    Fibrancy { pd: String },
    /// Search a diagonal lift for every square of the two maps.
    Lift {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Acyclic-fibration test of a prederivator map (homap:<mapspec>).
    Afib { map: String },
    /// Certified weak-equivalence consequences of a simplicial map.
    Weq {
        map: String,
        #[arg(long)]
        certificate: String,
    },
    /// Unit comparison and pointwise colimit data of a simplicial set.
    Lcheck {
        sset: String,
        #[arg(long)]
        probe: Option<String>,
    },
    /// Reproduce the product-comparison defect of the left adjoint.
    #[command(name = "example-1-13")]
    Example113,
    /// Run the entire check suite and emit one JSON document.
    ReportAll {
        /// Include wall-clock runtimes (breaks byte-determinism).
        #[arg(long)]
        timings: bool,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InputFormat(_) | Error::Precondition(_) => 2,
        Error::LawViolation(_) | Error::NotQuasicategory { .. } | Error::Internal(_) => 1,
        Error::BoundExceeded(_) | Error::ResourceExhausted(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn limits_of(cli: &Cli) -> Result<Limits, Error> {
    let mut limits = Limits {
        bound: cli.bound,
        n_max: cli.nmax,
        word_bound: cli.word_bound,
        budget: Limits::default().budget,
    };
    if let Ok(v) = std::env::var("PDCALC_BUDGET") {
        limits.budget = v
            .parse()
            .map_err(|_| Error::InputFormat(format!("PDCALC_BUDGET is not a number: {v}")))?;
    }
    if let Some(b) = cli.budget {
        limits.budget = b;
    }
    limits.validate()?;
    if cli.seed.is_some() {
        return Err(Error::InputFormat(
            "--seed is not accepted: every computation is deterministic".into(),
        ));
    }
    Ok(limits)
}

fn family_of(cli: &Cli, limits: &Limits) -> Result<ProbeFamily, Error> {
    match &cli.probes {
        None => Ok(ProbeFamily::default_family(limits)),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InputFormat(format!("cannot read {path}: {e}")))?;
            textio::parse_probe_family(&text, limits)
        }
    }
}

/// Resolves a simplicial-map spec: `id:<sset>`, `incl:horn:n:k`,
/// `incl:boundary:n`, `to-point:<sset>`, `nervemap:` is not needed; or a
/// path to a map document.
fn resolve_map(spec: &str, bound: usize) -> Result<SimplicialMap, Error> {
    if let Some(rest) = spec.strip_prefix("id:") {
        let x = textio::resolve_sset(rest, bound)?;
        return Ok(SimplicialMap::identity(&x));
    }
    if let Some(rest) = spec.strip_prefix("incl:") {
        if let Some(hs) = rest.strip_prefix("horn:") {
            let parts: Vec<&str> = hs.split(':').collect();
            if parts.len() == 2 {
                let n: usize = parts[0]
                    .parse()
                    .map_err(|_| Error::InputFormat(format!("bad horn spec {spec}")))?;
                let k: usize = parts[1]
                    .parse()
                    .map_err(|_| Error::InputFormat(format!("bad horn spec {spec}")))?;
                if n == 0 || k > n || n > bound {
                    return Err(Error::InputFormat(format!("horn out of range in {spec}")));
                }
                return Ok(pdcalc_core::sset::horn(n, k, bound).1);
            }
        }
        if let Some(bs) = rest.strip_prefix("boundary:") {
            let n: usize = bs
                .parse()
                .map_err(|_| Error::InputFormat(format!("bad boundary spec {spec}")))?;
            if n == 0 || n > bound {
                return Err(Error::InputFormat(format!("boundary out of range in {spec}")));
            }
            return Ok(pdcalc_core::sset::boundary(n, bound).1);
        }
        return Err(Error::InputFormat(format!("unknown inclusion spec {spec}")));
    }
    if let Some(rest) = spec.strip_prefix("to-point:") {
        let x = textio::resolve_sset(rest, bound)?;
        let pt = standard_simplex(0, bound);
        return Ok(SimplicialMap {
            dom: x.clone(),
            cod: pt,
            levels: (0..=bound).map(|n| vec![0; x.count(n)]).collect(),
        });
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::InputFormat(format!("cannot read {spec}: {e}")))?;
    textio::parse_map(&text, bound)
}

fn print_report(
    r: &pdcalc_core::report::CheckReport,
    format: OutputFormat,
) -> Result<u8, Error> {
    match format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(r).map_err(|e| Error::Internal(e.to_string()))?
        ),
        OutputFormat::Text => {
            println!("check: {} on {}", r.check, r.subject);
            for p in &r.probes {
                match &p.witness {
                    Some(w) => println!("  {}: {:?} — {}", p.probe, p.verdict, w),
                    None => println!("  {}: {:?}", p.probe, p.verdict),
                }
            }
            for n in &r.notes {
                println!("  note: {n}");
            }
            println!("verdict: {:?}", r.verdict);
        }
    }
    Ok(if r.passed() { 0 } else { 1 })
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let limits = limits_of(cli)?;
    match &cli.cmd {
        Cmd::Validate { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::InputFormat(format!("cannot read {file}: {e}")))?;
            // Sniff the document kind by its fields.
            let v: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::InputFormat(format!("unparsable document: {e}")))?;
            if v.get("bound").is_some() {
                let x = textio::parse_sset(&text)?;
                println!(
                    "valid simplicial set: bound {}, cells {:?}",
                    x.bound(),
                    (0..=x.bound()).map(|n| x.count(n)).collect::<Vec<_>>()
                );
            } else {
                let c = textio::parse_category(&text)?;
                c.validate()?;
                println!(
                    "valid category: {} objects, {} morphisms",
                    c.n_objects(),
                    c.n_morphisms()
                );
            }
            Ok(0)
        }
        Cmd::Nerve { cat } => {
            let c = textio::resolve_category(cat)?;
            let n = pdcalc_core::sset::nerve(&c, limits.bound);
            println!("{}", textio::write_sset(&n));
            Ok(0)
        }
        Cmd::Ho { sset } => {
            let x = textio::resolve_sset(sset, limits.bound)?;
            let (result, mode) = match ho_quasicategory(&x, &limits) {
                Ok(r) => (r, "exact-quasicategory"),
                Err(Error::NotQuasicategory { horn }) => {
                    eprintln!("not a quasicategory (no filler for {horn}); using the presented construction");
                    (ho_presented(&x, limits.word_bound, &limits)?, "presented-bounded")
                }
                Err(e) => return Err(e),
            };
            println!("mode: {mode}");
            println!("{}", textio::write_category(&result.category));
            Ok(0)
        }
        Cmd::Eval { pd, cat } => {
            let d = textio::resolve_pd(pd, &limits)?;
            let j = textio::resolve_category(cat)?;
            let e = d.eval(&j)?;
            println!("{}", textio::write_category(&e.cat));
            Ok(0)
        }
        Cmd::Rfunctor { pd } => {
            let d = textio::resolve_pd(pd, &limits)?;
            let r = underlying_sset(&d, limits.bound)?;
            println!("{}", textio::write_sset(&r));
            Ok(0)
        }
        Cmd::QrepCheck { pd } => {
            let d = textio::resolve_pd(pd, &limits)?;
            let family = family_of(cli, &limits)?;
            let reports = check_quasi_representable(&d, &family, limits.bound, limits.n_max)?;
            let mut worst = 0u8;
            for r in &reports {
                let code = print_report(r, cli.format)?;
                worst = worst.max(code);
                if r.probes.iter().any(|p| p.verdict == Verdict::Inconclusive) {
                    worst = worst.max(3);
                }
            }
            if all_passed(&reports) {
                println!("quasi-representable over the declared probe family");
            } else if let Some(s) = failing_summary(&reports) {
                println!("not quasi-representable: {s}");
            }
            Ok(worst)
        }
        Cmd::Fibrancy { pd } => {
            let d = textio::resolve_pd(pd, &limits)?;
            let r = is_fibrant_pd(&d, limits.n_max, limits.bound, &limits)?;
            print_report(&r, cli.format)
        }
        Cmd::Lift { left, right } => {
            let i = resolve_map(left, limits.bound)?;
            let p = resolve_map(right, limits.bound)?;
            let r = has_rlp(&p, &i, &limits)?;
            if r.holds {
                println!("every square admits a lift");
                Ok(0)
            } else {
                let (top, bottom) = r.witness.unwrap();
                println!(
                    "no lift for the square with top vertices [{}] and bottom vertices [{}]",
                    top.levels[0]
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    bottom.levels[0]
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                );
                Ok(1)
            }
        }
        Cmd::Afib { map } => {
            let spec = map
                .strip_prefix("homap:")
                .ok_or_else(|| Error::InputFormat("afib expects homap:<mapspec>".into()))?;
            let f = resolve_map(spec, limits.bound)?;
            let m = HoMapFixture::new(&f, &limits)?;
            let r = is_acyclic_fibration_pd(&m, limits.n_max, limits.bound, &limits)?;
            print_report(&r, cli.format)
        }
        Cmd::Weq { map, certificate } => {
            let f = resolve_map(map, limits.bound)?;
            let text = std::fs::read_to_string(certificate)
                .map_err(|e| Error::InputFormat(format!("cannot read {certificate}: {e}")))?;
            let cert = textio::parse_certificate(&text, limits.bound)?;
            let family = family_of(cli, &limits)?;
            let r = weq_levelwise_equivalence(&f, &cert, &family)?;
            print_report(&r, cli.format)
        }
        Cmd::Lcheck { sset, probe } => {
            let x = textio::resolve_sset(sset, limits.bound)?;
            let r = unit_check(&x, &limits)?;
            println!("unit comparison on {}: {:?}", r.name, r.levels);
            let code = if r.pass {
                println!("unit is a levelwise bijection");
                0
            } else {
                println!("unit FAILS");
                1
            };
            if let Some(p) = probe {
                let j: Cat = textio::resolve_category(p)?;
                let set = l_eval_objects(&x, &j, &limits)?;
                println!("objects of L({})({}) = {}", x.name, j.name, set.len());
            }
            Ok(code)
        }
        Cmd::Example113 => {
            let r = l_product_comparison(&limits)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&r).map_err(|e| Error::Internal(e.to_string()))?
            );
            let ok = r.dom_size == 23
                && r.cod_size == 25
                && r.injective
                && !r.surjective
                && r.witness_missing;
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::ReportAll { timings } => {
            let family = family_of(cli, &limits)?;
            let config = RunConfig {
                limits,
                family: Some(family),
                timings: *timings,
            };
            let reports = report_all(&config)?;
            println!("{}", serialize_reports(&reports)?);
            let any_inconclusive = reports
                .iter()
                .any(|r| r.verdict == Verdict::Inconclusive);
            let all_pass = reports.iter().all(|r| r.passed());
            Ok(if any_inconclusive {
                3
            } else if all_pass {
                0
            } else {
                1
            })
        }
    }
}
