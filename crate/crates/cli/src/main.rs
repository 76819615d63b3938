use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fibercert::alexander::{compute_delta_fp, compute_delta_z, AlexJson, AlexPolys, ManifoldMeta, TwistedSetup};
use fibercert::certify::{certify, Budget, CertReport, Verdict};
use fibercert::corpus::{load_corpus, run_corpus, CorpusSummary};
use fibercert::groups::{enumerate_homs, group_by_name, surjections_up_to_automorphism, Hom};
use fibercert::laurent::{Coefficient, Integers};
use fibercert::words::{mapping_torus, wirtinger, FreeAutomorphism, PdCode, PhiClass, Presentation};
use fibercert::{Error, PrimeField, ZMatrix, ZPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "fibercert", version, about = "Twisted Alexander polynomials and fiberedness certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// A `.pd` file (JSON crossing list) or a `.pres` presentation.
    input: PathBuf,
    /// Treat a `.pres` input as a closed manifold (b3 = 1).
    #[arg(long)]
    closed: bool,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = 12)]
    max_order: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
    primes: Vec<u32>,
}

impl BudgetArgs {
    fn budget(&self) -> Result<Budget> {
        Ok(Budget::new(self.max_order, self.primes.clone())?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Twisted polynomials for the trivial quotient or every surjection onto a group.
    Compute {
        #[command(flatten)]
        input: InputArgs,
        /// Catalog group name such as Z3, S3, A4, D5, Z7:Z3 or `trivial`.
        #[arg(long, default_value = "trivial")]
        group: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u32>,
    },
    /// Check that Δ₁ is monic of the expected degree for every catalog quotient up to a budget.
    Certify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Known Thurston norm; inferred from the trivial quotient otherwise.
        #[arg(long)]
        norm: Option<i64>,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
    },
    /// List homomorphisms onto a group, up to conjugation.
    Homs {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        group: String,
        /// Include non-surjective homomorphisms.
        #[arg(long)]
        all: bool,
        /// Deduplicate surjections up to automorphisms of the group.
        #[arg(long)]
        up_to_automorphism: bool,
    },
    /// Self-test on random mapping tori of free-group automorphisms, which
    /// fiber by construction.
    Oracle {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Certify each entry of a JSON or CSV corpus.
    Corpus {
        path: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

fn load_input(args: &InputArgs) -> Result<(Presentation, PhiClass, ManifoldMeta)> {
    let path = &args.input;
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    if path.extension().is_some_and(|e| e == "pd") {
        if args.closed {
            bail!(Error::InvalidInput("a knot exterior has boundary; drop --closed".into()));
        }
        let (mut pres, phi) = wirtinger(&PdCode::from_json(&text)?)?;
        pres.set_label(stem.clone());
        Ok((pres, phi, ManifoldMeta::knot_exterior(stem)))
    } else {
        let (pres, phi) = Presentation::parse(&text)?;
        let label = if pres.label().is_empty() { stem } else { pres.label().to_string() };
        let meta = ManifoldMeta::new(u8::from(args.closed), args.closed, None, label)?;
        Ok((pres, phi, meta))
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn describe<C: Coefficient>(alex: &AlexPolys<C>) -> String {
    let d1 = &alex.delta1;
    let shape = match (d1.is_monic(), d1.deg_span().finite()) {
        (_, None) => "zero".to_string(),
        (Ok(true), Some(d)) => format!("monic, deg {d}"),
        (_, Some(d)) => format!("not monic, deg {d}"),
    };
    format!(
        "  Δ₀ = {}\n  Δ₁ = {} ({shape})\n  Δ₂ = {}\n  div = {}",
        alex.delta0, d1, alex.delta2, alex.div
    )
}

fn cmd_compute(input: &InputArgs, group: &str, primes: &[u32], format: Format) -> Result<i32> {
    let (pres, phi, meta) = load_input(input)?;
    let target = group_by_name(group)?;
    let homs = if target.order() == 1 { vec![Hom::trivial(&pres)] } else { surjections_up_to_automorphism(&pres, &target) };
    let fields = primes.iter().map(|&p| PrimeField::new(p)).collect::<fibercert::Result<Vec<_>>>()?;
    let mut entries: Vec<AlexJson> = Vec::new();
    for hom in homs {
        let header = format!("{} [{}]", target.name(), hom.image_names().join(", "));
        let setup = TwistedSetup::new(&pres, &phi, hom, &meta)?;
        match compute_delta_z(&setup) {
            Ok(z) => {
                if format == Format::Text {
                    println!("{header} over Z\n{}", describe(&z));
                }
                entries.push(z.to_json());
            }
            Err(Error::UnavailableOverZ(why)) => {
                if fields.is_empty() {
                    bail!(Error::InvalidInput(format!("{why}; pass --primes")));
                }
                for field in &fields {
                    let fp = compute_delta_fp(&setup, field)?;
                    if format == Format::Text {
                        println!("{header} over F{}\n{}", field.modulus(), describe(&fp));
                    }
                    entries.push(fp.to_json());
                }
            }
            Err(e) => return Err(e.into()),
        }
    }
    if format == Format::Json {
        print_json(&entries);
    } else if entries.is_empty() {
        println!("no surjection onto {}", target.name());
    }
    Ok(0)
}

fn print_report(report: &CertReport) {
    let head = match &report.verdict {
        Verdict::NotFibered { witness, justification } => {
            format!("NotFibered: {justification} (witness {} [{}])", witness.group, witness.images.join(", "))
        }
        Verdict::ConsistentUpTo { max_order, quotient_count } => {
            format!("ConsistentUpTo({max_order}): {quotient_count} quotients pass")
        }
        Verdict::Degenerate { reason } => format!("Degenerate: {reason}"),
        Verdict::Truncated { completed_order, quotient_count } => {
            format!("Truncated: time limit after order {completed_order}, {quotient_count} quotients checked")
        }
    };
    println!("{}: {head}", report.label);
    let inferred = report.inferred_norm.map_or("none".to_string(), |x| x.to_string());
    println!("norm x = {} ({:?}), inferred norm {inferred}", report.norm, report.norm_source);
    for v in &report.ledger {
        let deg = v.degree.map_or("-".to_string(), |d| d.to_string());
        println!(
            "  {:<6} [{}] Δ₁ = {} over {}: deg {deg}, expected {}, {}, {}",
            v.group,
            v.images.join(", "),
            v.delta1_text,
            v.ring,
            v.expected_degree,
            if v.monic { "monic" } else { "not monic" },
            if v.pass { "pass" } else { "FAIL" }
        );
    }
    for w in &report.warnings {
        println!("warning: {w}");
    }
}

fn cmd_certify(
    input: &InputArgs,
    budget: &BudgetArgs,
    norm: Option<i64>,
    time_limit: Option<f64>,
    format: Format,
) -> Result<i32> {
    let (pres, phi, mut meta) = load_input(input)?;
    if let Some(x) = norm {
        if x < 0 {
            bail!(Error::InvalidInput(format!("Thurston norm must be nonnegative, got {x}")));
        }
        meta = meta.with_norm(x as u64);
    }
    let mut budget = budget.budget()?;
    if let Some(secs) = time_limit {
        if !(secs >= 0.0 && secs.is_finite()) {
            bail!(Error::InvalidInput(format!("bad time limit {secs}")));
        }
        budget = budget.with_time_limit(Duration::from_secs_f64(secs));
    }
    let report = certify(&pres, &phi, &meta, &budget)?;
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print_report(&report),
    }
    Ok(report.verdict.exit_code())
}

fn cmd_homs(input: &InputArgs, group: &str, all: bool, up_to_aut: bool, format: Format) -> Result<i32> {
    let (pres, _, _) = load_input(input)?;
    let target = group_by_name(group)?;
    let homs = if up_to_aut {
        if all {
            bail!(Error::InvalidInput("--up-to-automorphism applies to surjections only".into()));
        }
        surjections_up_to_automorphism(&pres, &target)
    } else {
        enumerate_homs(&pres, &target, !all)
    };
    match format {
        Format::Json => print_json(&homs),
        Format::Text => {
            let plural = if homs.len() == 1 { "" } else { "s" };
            println!("{} homomorphism{plural} onto {} (|G| = {})", homs.len(), target.name(), target.order());
            for h in &homs {
                let tag = if h.is_surjective() { "" } else { "  (not surjective)" };
                println!("  [{}]{tag}", h.image_names().join(", "));
            }
        }
    }
    Ok(0)
}

/// `det(t·I − A)` for an integer matrix `A`.
fn char_poly(a: &[Vec<i64>]) -> fibercert::Result<ZPoly> {
    let n = a.len();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let t = if i == j { ZPoly::t_power(&Integers, 1) } else { ZPoly::zero(&Integers) };
                    &t - &ZPoly::from_i64s(&Integers, 0, &[a[i][j]])
                })
                .collect()
        })
        .collect();
    ZMatrix::from_rows(&Integers, rows)?.det_fraction_free()
}

#[derive(serde::Serialize)]
struct OracleRow {
    index: usize,
    rank: usize,
    images: String,
    verdict: String,
    quotient_count: usize,
    determinant_identity: bool,
    pass: bool,
}

fn cmd_oracle(
    seed: u64,
    count: usize,
    max_rank: usize,
    max_len: usize,
    budget: &BudgetArgs,
    format: Format,
) -> Result<i32> {
    if max_rank == 0 {
        bail!(Error::InvalidInput("max rank must be positive".into()));
    }
    let budget = budget.budget()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for index in 0..count {
        let rank = 1 + index % max_rank;
        let h = FreeAutomorphism::random(rank, max_len, 4 * rank, &mut rng)?;
        let (pres, phi) = mapping_torus(&h)?;
        let meta = ManifoldMeta::free_mapping_torus(format!("oracle-{index}"));
        let report = certify(&pres, &phi, &meta, &budget)?;
        let trivial = report.ledger.first().map(|v| v.delta1_text.clone());
        let expected = char_poly(&h.abelianization())?.normalized().to_string();
        let determinant_identity = trivial.as_deref() == Some(expected.as_str());
        let consistent = matches!(report.verdict, Verdict::ConsistentUpTo { .. });
        let names = pres.to_text(Some(&phi))?;
        rows.push(OracleRow {
            index,
            rank,
            images: names.lines().filter(|l| l.starts_with("rel:")).collect::<Vec<_>>().join("; "),
            verdict: report.verdict.kind().to_string(),
            quotient_count: report.ledger.len(),
            determinant_identity,
            pass: consistent && determinant_identity,
        });
    }
    let failures = rows.iter().filter(|r| !r.pass).count();
    match format {
        Format::Json => print_json(&rows),
        Format::Text => {
            for r in &rows {
                println!(
                    "{:>3} rank {} {:<14} {:>4} quotients  det identity {}  {}",
                    r.index,
                    r.rank,
                    r.verdict,
                    r.quotient_count,
                    r.determinant_identity,
                    if r.pass { "ok" } else { "FAIL" }
                );
            }
            println!("{} of {} mapping tori pass", rows.len() - failures, rows.len());
        }
    }
    Ok(if failures == 0 { 0 } else { 1 })
}

fn print_summary(summary: &CorpusSummary) {
    println!("{:<10} {:<24} {:<15} {:>4} {:>6} {:>6}  note", "name", "Δ₁ (trivial)", "verdict", "x", "2g-1", "agree");
    let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
    for r in &summary.rows {
        let agree = r.norm_agrees.map_or("-", |a| if a { "yes" } else { "no" });
        let mut note = r.error.clone().unwrap_or_default();
        if let Some(g) = &r.witness_group {
            note = format!("witness {g}");
        }
        if r.soundness_violation {
            note.push_str(" SOUNDNESS VIOLATION");
        }
        println!(
            "{:<10} {:<24} {:<15} {:>4} {:>6} {:>6}  {note}",
            r.name,
            r.delta1.as_deref().unwrap_or("-"),
            r.verdict,
            opt(r.norm),
            opt(r.known_norm),
            agree
        );
    }
}

fn cmd_corpus(path: &Path, budget: &BudgetArgs, format: Format) -> Result<i32> {
    let entries = load_corpus(path)?;
    let summary = run_corpus(&entries, &budget.budget()?)?;
    match format {
        Format::Json => println!("{}", summary.to_json()),
        Format::Text => print_summary(&summary),
    }
    Ok(summary.exit_code())
}

fn run(cli: Cli) -> Result<i32> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global()?;
    }
    let format = cli.format;
    match &cli.command {
        Command::Compute { input, group, primes } => cmd_compute(input, group, primes, format),
        Command::Certify { input, budget, norm, time_limit } => cmd_certify(input, budget, *norm, *time_limit, format),
        Command::Homs { input, group, all, up_to_automorphism } => {
            cmd_homs(input, group, *all, *up_to_automorphism, format)
        }
        Command::Oracle { seed, count, max_rank, max_len, budget } => {
            cmd_oracle(*seed, *count, *max_rank, *max_len, budget, format)
        }
        Command::Corpus { path, budget } => cmd_corpus(path, budget, format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = matches!(e.downcast_ref::<Error>(), Some(Error::Inconsistent(_)));
            ExitCode::from(if internal { 1 } else { 2 })
        }
    }
}
