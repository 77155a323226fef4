//! `rrcc`: factor `x^n - 1`, inspect repeated-root cyclic codes, run scans and reproduce the
//! stored tables and examples.

mod output;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rrcc_core::cycliccode::{
    count_dual_containing, enumerate_codes, parse_generator, CodeFamily, CodeRecord, RepeatedRootCode,
};
use rrcc_core::fixtures::{discrepancy_ledger, fixtures, reproduce, Discrepancy, FixtureReport, Status};
use rrcc_core::quantum::{
    css, ea_singleton_slack, eaqec, qec_mds_exhaustive, qec_mds_scan, singleton_check, steane, EaqecCode, Inner,
    QecCode, SingletonReport,
};
use rrcc_core::wtdist::{classify_mds, distance, DistanceReport, MdsClass};
use rrcc_core::{Error, FieldSpec};

use output::{Format, Row};

const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Parser, Debug)]
#[command(name = "rrcc", version, about = "Repeated-root cyclic codes of length 2^r p^s and their quantum codes")]
struct Cli {
    /// Field characteristic (odd prime).
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Field degree over F_p.
    #[arg(long, global = true, default_value_t = 1)]
    m: u32,
    /// Exponent of 2 in the length.
    #[arg(long, global = true)]
    r: Option<u32>,
    /// Exponent of p in the length.
    #[arg(long, global = true, default_value_t = 1)]
    s: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for scans (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Largest number of codes a scan may enumerate; RRCC_BUDGET takes precedence.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor x^n - 1 into powers of minimal polynomials.
    Factor,
    /// Report on one code.
    Code(CodeSpec),
    /// Quantum code parameters.
    Quantum {
        #[command(subcommand)]
        kind: QuantumCmd,
    },
    /// Enumerate a family.
    Scan {
        #[arg(value_enum)]
        target: ScanTarget,
        #[arg(long)]
        min_d: Option<u64>,
        #[arg(long)]
        min_k: Option<u64>,
    },
    /// Recompute a stored table or example ("all" for every one).
    Reproduce { id: String },
}

#[derive(Args, Debug)]
struct CodeSpec {
    /// Generator as a product of powers of irreducible factors, e.g. "(x+1)^2(x+8)".
    #[arg(long = "gen", conflicts_with = "exps", required_unless_present = "exps")]
    generator: Option<String>,
    /// Exponents as "rep:j,rep:j,..."; unlisted representatives get 0.
    #[arg(long)]
    exps: Option<String>,
}

#[derive(Subcommand, Debug)]
enum QuantumCmd {
    /// CSS from C^⊥ ⊆ C, or from C' ⊆ C when an inner code is given.
    Css {
        #[command(flatten)]
        code: CodeSpec,
        /// Generator of a subcode C' ⊆ C with dim C' < dim C (general CSS form)
        #[arg(long = "inner-gen", conflicts_with = "inner_exps")]
        inner_gen: Option<String>,
        /// Exponents of C' as "rep:j,..."
        #[arg(long)]
        inner_exps: Option<String>,
    },
    /// Steane enlargement of C^⊥ ⊆ C ⊆ C'.
    Steane {
        #[command(flatten)]
        code: CodeSpec,
        /// Generator of the larger code C' ⊇ C
        #[arg(long = "outer-gen", conflicts_with = "outer_exps", required_unless_present = "outer_exps")]
        outer_gen: Option<String>,
        /// Exponents of C' as "rep:j,..."
        #[arg(long)]
        outer_exps: Option<String>,
    },
    /// Entanglement-assisted code from the hull.
    Eaqec {
        #[command(flatten)]
        code: CodeSpec,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ScanTarget {
    DualContaining,
    Mds,
    QecMds,
    Eaqec,
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<ExitCode, Failure>;

struct Ctx {
    format: Format,
    jobs: usize,
    budget: u64,
    out: BufWriter<io::Stdout>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match std::env::var("RRCC_BUDGET") {
        Ok(v) => match v.trim().parse() {
            Ok(b) => b,
            Err(_) => {
                eprintln!("error: RRCC_BUDGET must be a non-negative integer (got {v:?})");
                return ExitCode::from(2);
            }
        },
        Err(_) => cli.budget,
    };
    let mut ctx = Ctx { format: cli.format, jobs: cli.jobs, budget, out: BufWriter::new(io::stdout()) };
    let result = run(&cli, &mut ctx).and_then(|code| {
        ctx.out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = ctx.out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Outcome {
    match &cli.command {
        Command::Reproduce { id } => cmd_reproduce(ctx, id),
        Command::Factor => cmd_factor(ctx, &family(cli)?),
        Command::Code(spec) => cmd_code(ctx, &family(cli)?, spec),
        Command::Quantum { kind } => cmd_quantum(ctx, &family(cli)?, kind),
        Command::Scan { target, min_d, min_k } => cmd_scan(ctx, &family(cli)?, *target, *min_d, *min_k),
    }
}

fn family(cli: &Cli) -> Result<CodeFamily, Failure> {
    let p = cli.p.ok_or_else(|| Failure::Usage("--p is required".into()))?;
    let r = cli.r.ok_or_else(|| Failure::Usage("--r is required".into()))?;
    let field = FieldSpec::build(p, cli.m)?;
    Ok(CodeFamily::new(&field, r, cli.s)?)
}

fn parse_exps(family: &CodeFamily, spec: &str) -> Result<Vec<(u64, u64)>, Failure> {
    spec.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let (rep, j) = part
                .split_once(':')
                .ok_or_else(|| Failure::Usage(format!("exponent entry {part:?} is not rep:j")))?;
            let parse = |t: &str| {
                t.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("bad integer {t:?} in {part:?}")))
            };
            let rep = parse(rep)?;
            family.index_of(rep)?;
            Ok((rep, parse(j)?))
        })
        .collect()
}

fn build_code(family: &CodeFamily, generator: Option<&str>, exps: Option<&str>) -> Result<RepeatedRootCode, Failure> {
    match (generator, exps) {
        (Some(g), _) => Ok(family.code(parse_generator(family, g)?.0)?),
        (None, Some(e)) => Ok(family.code_from_pairs(&parse_exps(family, e)?)?),
        (None, None) => Err(Failure::Usage("a code needs --gen or --exps".into())),
    }
}

fn spec_code(family: &CodeFamily, spec: &CodeSpec) -> Result<RepeatedRootCode, Failure> {
    build_code(family, spec.generator.as_deref(), spec.exps.as_deref())
}

#[derive(Serialize)]
struct FactorEntry {
    rep: u64,
    factor: String,
    degree: u64,
    exponent: u64,
}

#[derive(Serialize)]
struct Factorization {
    p: u64,
    m: u32,
    r: u32,
    s: u32,
    n: u64,
    product: String,
    factors: Vec<FactorEntry>,
}

fn cmd_factor(ctx: &mut Ctx, family: &CodeFamily) -> Outcome {
    let ps = family.ps();
    let mut keyed: Vec<(Vec<u32>, FactorEntry)> = family
        .reps()
        .iter()
        .zip(family.minpolys())
        .zip(family.degrees())
        .map(|((&rep, m), &degree)| {
            let key = m.coeffs().iter().rev().map(|c| c.index()).collect();
            (key, FactorEntry { rep, factor: m.to_string(), degree, exponent: ps })
        })
        .collect();
    keyed.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    let factors: Vec<FactorEntry> = keyed.into_iter().map(|(_, f)| f).collect();
    let product = factors.iter().map(|f| format!("({})^{}", f.factor, f.exponent)).collect::<String>();
    let field = family.field();
    let record =
        Factorization { p: field.p(), m: field.m(), r: family.r(), s: family.s(), n: family.n(), product, factors };
    match ctx.format {
        Format::Text => writeln!(ctx.out, "x^{} - 1 = {}", record.n, record.product)?,
        Format::Json => output::json(&mut ctx.out, &record)?,
        Format::Csv => output::csv_rows(&mut ctx.out, &record.factors)?,
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CodeReport {
    #[serde(flatten)]
    record: CodeRecord,
    factored: String,
    distance: DistanceReport,
    mds_class: MdsClass,
}

fn cmd_code(ctx: &mut Ctx, family: &CodeFamily, spec: &CodeSpec) -> Outcome {
    let c = spec_code(family, spec)?;
    if c.is_zero_code() {
        return Err(Error::ZeroCode.into());
    }
    let report = CodeReport {
        record: c.record(),
        factored: family.factored_text(c.exps()),
        distance: distance(&c)?,
        mds_class: classify_mds(&c),
    };
    match ctx.format {
        Format::Json => output::json(&mut ctx.out, &report)?,
        Format::Csv => {
            let row = Row {
                n: c.n(),
                k: c.k(),
                d: report.distance.d,
                generator: report.factored.clone(),
                construction: String::new(),
                extra: format!(
                    "dual_containing={};hull_dim={};mds={}",
                    report.record.dual_containing, report.record.hull_dim, report.mds_class
                ),
            };
            output::csv_rows(&mut ctx.out, &[row])?;
        }
        Format::Text => {
            let r = &report.record;
            let out = &mut ctx.out;
            writeln!(out, "code         [{},{},{}] over F_{}", r.n, r.k, report.distance.d, family.field().q())?;
            writeln!(out, "factored     {}", report.factored)?;
            writeln!(out, "generator    {}", r.generator)?;
            writeln!(out, "exponents    {}", pairs(&r.exponents))?;
            writeln!(out, "dual         {}", pairs(&r.dual_exponents))?;
            writeln!(out, "hull dim     {}", r.hull_dim)?;
            writeln!(out, "dual-contain {}", r.dual_containing)?;
            writeln!(out, "distance     {} (layer t = {})", report.distance.d, report.distance.witness_t)?;
            writeln!(out, "mds          {}", report.mds_class)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn pairs(map: &std::collections::BTreeMap<u64, u64>) -> String {
    map.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
struct QuantumReport<'a> {
    #[serde(flatten)]
    code: &'a QecCode,
    singleton: SingletonReport,
}

#[derive(Serialize)]
struct EaReport<'a> {
    #[serde(flatten)]
    code: &'a EaqecCode,
    singleton_slack: Option<i64>,
}

fn cmd_quantum(ctx: &mut Ctx, family: &CodeFamily, kind: &QuantumCmd) -> Outcome {
    match kind {
        QuantumCmd::Css { code, inner_gen, inner_exps } => {
            let c = spec_code(family, code)?;
            let qc = if inner_gen.is_some() || inner_exps.is_some() {
                let inner = build_code(family, inner_gen.as_deref(), inner_exps.as_deref())?;
                css(&c, Inner::Code(&inner))?
            } else {
                css(&c, Inner::Dual)?
            };
            print_qec(ctx, &qc)
        }
        QuantumCmd::Steane { code, outer_gen, outer_exps } => {
            let c = spec_code(family, code)?;
            let outer = build_code(family, outer_gen.as_deref(), outer_exps.as_deref())?;
            print_qec(ctx, &steane(&c, &outer)?)
        }
        QuantumCmd::Eaqec { code } => {
            let ea = eaqec(&spec_code(family, code)?)?;
            let slack = ea_singleton_slack(&ea);
            match ctx.format {
                Format::Json => output::json(&mut ctx.out, &EaReport { code: &ea, singleton_slack: slack })?,
                Format::Csv => output::csv_rows(&mut ctx.out, &[ea_row(&ea)])?,
                Format::Text => {
                    let slack = slack.map_or("n/a".to_string(), |s| s.to_string());
                    writeln!(ctx.out, "{ea}  hull dim {}  rate {}  net rate {}  EA Singleton slack {slack}", ea.l, ea.rate, ea.net_rate)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_qec(ctx: &mut Ctx, qc: &QecCode) -> Outcome {
    let singleton = singleton_check(qc)?;
    match ctx.format {
        Format::Json => output::json(&mut ctx.out, &QuantumReport { code: qc, singleton })?,
        Format::Csv => output::csv_rows(&mut ctx.out, &[qec_row(qc, singleton)])?,
        Format::Text => {
            let tag = if singleton.is_mds { ", MDS" } else { "" };
            writeln!(ctx.out, "{qc}  {}  Singleton slack {}{tag}", qc.construction, singleton.slack)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn qec_row(qc: &QecCode, singleton: SingletonReport) -> Row {
    Row {
        n: qc.n,
        k: qc.k,
        d: qc.d,
        generator: qc.source_generators.join(" ; "),
        construction: qc.construction.to_string(),
        extra: format!("slack={}", singleton.slack),
    }
}

fn ea_row(ea: &EaqecCode) -> Row {
    Row {
        n: ea.n,
        k: ea.k,
        d: ea.d,
        generator: ea.source_generators.join(" ; "),
        construction: "EAQEC".into(),
        extra: format!("c={};l={}", ea.c, ea.l),
    }
}

fn keep(row: &Row, min_d: Option<u64>, min_k: Option<u64>) -> bool {
    min_d.is_none_or(|d| row.d >= d) && min_k.is_none_or(|k| row.k >= k)
}

fn cmd_scan(ctx: &mut Ctx, family: &CodeFamily, target: ScanTarget, min_d: Option<u64>, min_k: Option<u64>) -> Outcome {
    let (budget, jobs) = (ctx.budget, ctx.jobs);
    let (rows, summary) = match target {
        ScanTarget::DualContaining => {
            let codes = enumerate_codes(family, &|c| c.is_dual_containing(), budget, jobs)?;
            let closed = count_dual_containing(family)?;
            let mut rows = Vec::new();
            for c in &codes {
                let d = distance(c)?.d;
                let row = Row {
                    n: c.n(),
                    k: c.k(),
                    d,
                    generator: family.factored_text(c.exps()),
                    construction: rrcc_core::quantum::Construction::CssDualContaining.to_string(),
                    extra: format!("[[{},{},{}]]", c.n(), 2 * c.k() - c.n(), d),
                };
                if keep(&row, min_d, min_k) {
                    rows.push(row);
                }
            }
            let verdict = if closed == codes.len().into() { "match" } else { "MISMATCH" };
            (rows, format!("enumerated {}, closed-form {closed}, {verdict}", codes.len()))
        }
        ScanTarget::Mds => {
            let codes = enumerate_codes(family, &|c| !c.is_zero_code() && classify_mds(c) != MdsClass::NotMds, budget, jobs)?;
            let mut rows = Vec::new();
            for c in &codes {
                let d = distance(c)?.d;
                if d != c.n() - c.k() + 1 {
                    return Err(Error::Inconsistent(format!("{} classified MDS with d = {d}", c.generator_text())).into());
                }
                let row = Row {
                    n: c.n(),
                    k: c.k(),
                    d,
                    generator: family.factored_text(c.exps()),
                    construction: String::new(),
                    extra: classify_mds(c).to_string(),
                };
                if keep(&row, min_d, min_k) {
                    rows.push(row);
                }
            }
            (rows, format!("{} MDS codes", codes.len()))
        }
        ScanTarget::QecMds => {
            let scan = qec_mds_scan(family)?;
            let mut rows = Vec::new();
            for qc in &scan {
                let row = qec_row(qc, singleton_check(qc)?);
                if keep(&row, min_d, min_k) {
                    rows.push(row);
                }
            }
            let summary = match qec_mds_exhaustive(family, budget, jobs) {
                Ok(all) => {
                    let verdict = if all == scan { "match" } else { "MISMATCH" };
                    format!("certified {}, exhaustive {}, {verdict}", scan.len(), all.len())
                }
                Err(Error::BudgetExceeded { needed, .. }) => {
                    format!("certified {}, exhaustive cross-check skipped ({needed} codes exceed the budget)", scan.len())
                }
                Err(e) => return Err(e.into()),
            };
            (rows, summary)
        }
        ScanTarget::Eaqec => {
            let codes = enumerate_codes(family, &|c| !c.is_zero_code() && c.k() < c.n(), budget, jobs)?;
            let mut rows = Vec::new();
            for c in &codes {
                let row = ea_row(&eaqec(c)?);
                if keep(&row, min_d, min_k) {
                    rows.push(row);
                }
            }
            (rows, format!("{} EAQEC codes", codes.len()))
        }
    };
    output::rows(&mut ctx.out, ctx.format, &rows, &summary)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ReproduceOutput<'a> {
    fixtures: &'a [FixtureReport],
    ledger: &'a [Discrepancy],
}

#[derive(Serialize)]
struct CheckRow<'a> {
    fixture: &'a str,
    item: &'a str,
    expected: &'a str,
    recomputed: &'a str,
    status: Status,
}

fn cmd_reproduce(ctx: &mut Ctx, id: &str) -> Outcome {
    let ids: Vec<&str> = if id == "all" { fixtures().iter().map(|f| f.id.as_str()).collect() } else { vec![id] };
    let reports = ids.iter().map(|id| reproduce(id)).collect::<Result<Vec<_>, _>>()?;
    match ctx.format {
        Format::Json => {
            let ledger: Vec<Discrepancy> =
                discrepancy_ledger().iter().filter(|d| ids.contains(&d.fixture.as_str())).cloned().collect();
            output::json(&mut ctx.out, &ReproduceOutput { fixtures: &reports, ledger: &ledger })?;
        }
        Format::Csv => {
            let rows: Vec<CheckRow> = reports
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(move |c| CheckRow {
                        fixture: &r.id,
                        item: &c.item,
                        expected: &c.expected,
                        recomputed: &c.recomputed,
                        status: c.status,
                    })
                })
                .collect();
            output::csv_rows(&mut ctx.out, &rows)?;
        }
        Format::Text => {
            for r in &reports {
                writeln!(ctx.out, "{:<10} {:<23} {}", r.id, r.status.to_string(), r.title)?;
                for c in &r.checks {
                    let mark = match c.status {
                        Status::Match => "ok ",
                        Status::DocumentedDiscrepancy => "doc",
                        Status::Mismatch => "BAD",
                    };
                    writeln!(ctx.out, "  {mark} {:<16} expected {:<28} recomputed {}", c.item, c.expected, c.recomputed)?;
                    if let Some(note) = &c.note {
                        writeln!(ctx.out, "      note: {note}")?;
                    }
                }
            }
            let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
            writeln!(
                ctx.out,
                "{} fixtures: {} match, {} documented-discrepancy, {} mismatch",
                reports.len(),
                count(Status::Match),
                count(Status::DocumentedDiscrepancy),
                count(Status::Mismatch)
            )?;
        }
    }
    if reports.iter().any(|r| r.status == Status::Mismatch) {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
