//! `eventown`: build, check, analyze and search set families with restricted
//! intersection parities.
//!
//! Exit codes: 0 success or PASS, 1 FAIL or an analysis error, 2 malformed input
//! or a violated precondition.

mod report;

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use eventown::bounds::{instance_grid, verify_bounds};
use eventown::constructions::{
    augmented_block_family, block_family, d_defect_construction, divisibility_violation, one_defect_from_hadamard,
    power_of_two_eventown, recursive_sequence, step_up, strong_not_higher, ConstructionError,
};
use eventown::family::{defect_graph, is_d_defect_l_oddtown, Verdict, DEFAULT_CHECK_BUDGET};
use eventown::format::{parse_family, write_family, FamilyFormat};
use eventown::hadamard::{paley, sylvester, HadamardMatrix};
use eventown::search::{max_family, Property, SearchProblem, DEFAULT_NODE_BUDGET};
use eventown::structure::{
    atom_decomposition, closure_dim, component_gram_analysis, defect_analytics, extract_strong_subfamily,
    independence_certificate_1defect, linear_closure, pair_decomposition_1defect, skew_oddtown_check,
};
use eventown::{GroundSet, PrimeModulus, SetFamily};

#[derive(Parser, Debug)]
#[command(name = "eventown", version, about = "Eventown and oddtown set families")]
struct Cli {
    #[command(flatten)]
    globals: Globals,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Globals {
    /// Modulus ℓ.
    #[arg(long, global = true, default_value_t = 2)]
    ell: u32,
    /// Number of sets intersected (k-wise properties).
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Allowed bad partners per set (defect properties).
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Ground set size.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Worker threads for parallel steps; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized choices.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Node budget for search, subset budget for checks.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Whether the empty set may be a member during search.
    #[arg(long, global = true, default_value_t = true, num_args = 0..=1, default_missing_value = "true", action = clap::ArgAction::Set)]
    allow_empty_set: bool,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family (or a Hadamard matrix) and validate it.
    Construct(ConstructArgs),
    /// Check a family file against a property.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: PropertyKind,
    },
    /// Structural analysis of a family file, as a JSON report.
    Analyze {
        file: PathBuf,
        #[arg(value_enum)]
        analysis: Analysis,
    },
    /// Exact maximum family size for small n.
    Search {
        #[arg(long, value_enum)]
        property: PropertyKind,
    },
    /// Oracle maxima against closed forms and construction sizes for a range of n.
    VerifyBounds {
        #[arg(long, value_enum)]
        property: PropertyKind,
        #[arg(long, default_value_t = 1)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Block size for `block`.
    #[arg(long, default_value_t = 2)]
    block: usize,
    /// Depth for `recursive`.
    #[arg(long)]
    r: Option<usize>,
    /// Paley prime q ≡ 3 (mod 4) for Hadamard kinds.
    #[arg(long)]
    q: Option<u64>,
    /// Sylvester power for Hadamard kinds.
    #[arg(long)]
    power: Option<u32>,
    /// Input family for `step-up`.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Core eventown for `d-defect`.
    #[arg(long)]
    core: Option<PathBuf>,
    /// Output path; stdout when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Structured)]
    format: OutFormat,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Kind {
    Block,
    AugmentedBlock,
    StrongNotHigher,
    Recursive,
    Power2Eventown,
    StepUp,
    Hadamard,
    OneDefectHadamard,
    DDefect,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OutFormat {
    Structured,
    Bitstrings,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum PropertyKind {
    Eventown,
    TwoWiseEventown,
    LEventown,
    KWise,
    StrongKWise,
    LOddtown,
    DDefect,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Analysis {
    Closure,
    Atoms,
    ExtractStrong,
    Defect,
    Gram,
    Pairs,
    Certificate,
}

/// A message and the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(e: impl Display) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }

    fn analysis(e: impl Display) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

impl Globals {
    fn k(&self, default: usize) -> usize {
        self.k.unwrap_or(default)
    }

    fn need_n(&self) -> Result<GroundSet, Failure> {
        let n = self.n.ok_or_else(|| Failure::input("PreconditionViolated: --n is required"))?;
        GroundSet::new(n).map_err(Failure::input)
    }

    fn modulus(&self) -> Result<PrimeModulus, Failure> {
        PrimeModulus::new(self.ell).map_err(Failure::input)
    }

    fn property(&self, kind: PropertyKind) -> Property {
        let ell = self.ell;
        match kind {
            PropertyKind::Eventown => Property::Eventown,
            PropertyKind::TwoWiseEventown => Property::TwoWiseEventown,
            PropertyKind::LEventown => Property::StrongKWise { k: 2, ell },
            PropertyKind::KWise => Property::KWiseEventown { k: self.k(2), ell },
            PropertyKind::StrongKWise => Property::StrongKWise { k: self.k(2), ell },
            PropertyKind::LOddtown => Property::LOddtown { ell },
            PropertyKind::DDefect => Property::DDefectLOddtown {
                d: self.d.unwrap_or(1),
                ell,
            },
        }
    }
}

/// The command line as typed, without `--threads`, which never changes output.
fn invocation() -> String {
    let mut out = vec!["eventown".to_string()];
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        if a == "--threads" {
            args.next();
        } else if !a.starts_with("--threads=") {
            out.push(a);
        }
    }
    out.join(" ")
}

fn print_json(v: &Value) {
    print!("{}", report::render(v));
}

fn read_family(path: &Path) -> Result<SetFamily, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_family(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn verdict_line(v: &Verdict, what: &str) -> String {
    match v {
        Verdict::Pass => format!("PASS ({what})"),
        Verdict::Fail(w) => format!("FAIL ({what}): {w}"),
    }
}

fn emit(args: &ConstructArgs, body: String, summary: String) -> Outcome {
    match &args.out {
        Some(path) => {
            fs::write(path, body).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            println!("{summary}");
            println!("written: {}", path.display());
        }
        None => {
            print!("{body}");
            eprintln!("{summary}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn hadamard(args: &ConstructArgs) -> Result<HadamardMatrix, Failure> {
    match (args.q, args.power) {
        (Some(q), None) => paley(q).map_err(Failure::input),
        (None, Some(p)) => sylvester(p).map_err(Failure::input),
        _ => Err(Failure::input("PreconditionViolated: give exactly one of --q or --power")),
    }
}

fn construct(g: &Globals, args: &ConstructArgs) -> Outcome {
    let cons = |e: ConstructionError| Failure::input(e);
    let ell = g.ell;
    let (family, property) = match args.kind {
        Kind::Hadamard => {
            let h = hadamard(args)?;
            let summary = format!("order: {}\nverdict: PASS (H·Hᵀ = {}·I)", h.order(), h.order());
            return emit(args, h.to_sign_text(), summary);
        }
        Kind::Recursive => {
            let r = args.r.ok_or_else(|| Failure::input("PreconditionViolated: --r is required"))?;
            let seq = recursive_sequence(r).map_err(cons)?;
            let verdict = match divisibility_violation(&seq, r, r) {
                None => "PASS".to_string(),
                Some(w) => format!("FAIL at members {w:?}"),
            };
            let n = seq[0].ground();
            let f = SetFamily::new(GroundSet::new(n).map_err(Failure::input)?, seq).map_err(Failure::input)?;
            let summary = format!(
                "size: {}\nverdict: {verdict} (2^(r-|S|) divides every intersection of |S| <= {r} members)",
                f.len()
            );
            return emit(args, write_family(&f, args.format.into()), summary);
        }
        Kind::Block => {
            let f = block_family(g.need_n()?, args.block).map_err(cons)?;
            (f, Property::StrongKWise {
                k: g.k(2),
                ell: args.block.max(2) as u32,
            })
        }
        Kind::AugmentedBlock => {
            let k = g.k(2);
            let f = augmented_block_family(g.need_n()?, k, g.seed).map_err(cons)?;
            (f, Property::KWiseEventown { k, ell: 2 })
        }
        Kind::StrongNotHigher => {
            let k = g.k(2);
            let f = strong_not_higher(g.need_n()?, k).map_err(cons)?;
            (f, Property::StrongKWise { k, ell: 2 })
        }
        Kind::Power2Eventown => {
            let k = g.k(2);
            let f = power_of_two_eventown(g.need_n()?, k, ell).map_err(cons)?;
            (f, Property::StrongKWise { k, ell })
        }
        Kind::StepUp => {
            let path = args
                .input
                .as_ref()
                .ok_or_else(|| Failure::input("PreconditionViolated: --in is required"))?;
            let f = step_up(&read_family(path)?, ell).map_err(cons)?;
            (f, Property::StrongKWise { k: g.k(3), ell })
        }
        Kind::OneDefectHadamard => {
            let f = one_defect_from_hadamard(&hadamard(args)?, ell).map_err(cons)?;
            (f, Property::DDefectLOddtown { d: 1, ell })
        }
        Kind::DDefect => {
            let d = g.d.unwrap_or(1);
            let core = args.core.as_deref().map(read_family).transpose()?;
            let f = d_defect_construction(g.need_n()?, d, ell, core.as_ref()).map_err(cons)?;
            (f, Property::DDefectLOddtown { d, ell })
        }
    };
    let verdict = property
        .check(&family, g.budget.unwrap_or(DEFAULT_CHECK_BUDGET))
        .map_err(Failure::input)?;
    let summary = format!("size: {}\nverdict: {}", family.len(), verdict_line(&verdict, &property.to_string()));
    emit(args, write_family(&family, args.format.into()), summary)
}

impl From<OutFormat> for FamilyFormat {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Structured => FamilyFormat::Structured,
            OutFormat::Bitstrings => FamilyFormat::Bitstrings,
        }
    }
}

fn check(g: &Globals, file: &Path, kind: PropertyKind) -> Outcome {
    let family = read_family(file)?;
    let property = g.property(kind);
    property.validate().map_err(Failure::input)?;
    let verdict = property
        .check(&family, g.budget.unwrap_or(DEFAULT_CHECK_BUDGET))
        .map_err(Failure::input)?;
    if g.json {
        let body = serde_json::json!({
            "property": property.to_string(),
            "size": family.len(),
            "passed": verdict.passed(),
            "witness": verdict.violation().map(|v| v.to_string()),
        });
        print_json(&report::document(&invocation(), "check", body));
    } else {
        match &verdict {
            Verdict::Pass => println!("PASS {property}"),
            Verdict::Fail(w) => {
                println!("FAIL {property}");
                println!("witness: {w}");
            }
        }
    }
    Ok(if verdict.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn analyze(g: &Globals, file: &Path, analysis: Analysis) -> Outcome {
    let family = read_family(file)?;
    let body = match analysis {
        Analysis::Closure => {
            let dim = closure_dim(&family);
            let closed = linear_closure(&family).ok();
            report::closure(dim, closed.as_ref())
        }
        Analysis::Atoms => report::atoms(&atom_decomposition(&family)),
        Analysis::ExtractStrong => {
            let k = g.k(3);
            let x = extract_strong_subfamily(&family, k).map_err(Failure::analysis)?;
            let (r, b) = x.skew_pairs();
            let ok = skew_oddtown_check(&r, &b).map_err(Failure::analysis)?;
            report::extraction(k, &family, &x, ok)
        }
        Analysis::Defect => {
            let m = g.modulus()?;
            let d = g.d.unwrap_or(1);
            let r = defect_analytics(&defect_graph(&family, m));
            report::defect(d, &r, is_d_defect_l_oddtown(&family, d, m).passed())
        }
        Analysis::Gram => report::gram(&component_gram_analysis(&family, g.modulus()?)),
        Analysis::Pairs => report::pairs(&pair_decomposition_1defect(&family, g.modulus()?).map_err(Failure::analysis)?),
        Analysis::Certificate => {
            report::certificate(&independence_certificate_1defect(&family, g.modulus()?).map_err(Failure::analysis)?)
        }
    };
    let name = analysis.to_possible_value().expect("no skipped variants").get_name().to_string();
    print_json(&report::document(&invocation(), &name, body));
    Ok(ExitCode::SUCCESS)
}

fn search(g: &Globals, kind: PropertyKind) -> Outcome {
    let n = g.n.ok_or_else(|| Failure::input("PreconditionViolated: --n is required"))?;
    let property = g.property(kind);
    let problem = SearchProblem::new(n, property)
        .map_err(Failure::input)?
        .allow_empty_set(g.allow_empty_set)
        .budget(g.budget.unwrap_or(DEFAULT_NODE_BUDGET));
    let r = max_family(&problem).map_err(Failure::input)?;
    let allow = problem.allow_empty_set;
    if g.json {
        print_json(&report::document(&invocation(), "search", report::search(&property.to_string(), n, allow, &r)));
    } else {
        println!("property: {property}");
        println!("n: {n}");
        println!("allow_empty_set: {allow}");
        println!("maximum: {}{}", r.maximum, if r.exact { "" } else { " (lower bound, budget exhausted)" });
        println!("exact: {}", r.exact);
        println!("nodes: {}", r.nodes_explored);
        println!("witness:");
        for s in r.witness.iter() {
            println!("  {s}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn bounds(g: &Globals, kind: PropertyKind, from: usize, to: usize) -> Outcome {
    let property = g.property(kind);
    property.validate().map_err(Failure::input)?;
    let mut instances = instance_grid(property, from.max(1)..=to);
    if !g.allow_empty_set {
        instances.retain(|i| !i.allow_empty_set || !property.admits_empty_set());
    }
    let table = verify_bounds(&instances, g.budget.unwrap_or(DEFAULT_NODE_BUDGET)).map_err(Failure::input)?;
    if g.json {
        print_json(&report::document(&invocation(), "verify-bounds", report::bounds(&table)));
    } else {
        print!("{}", table.to_text());
        for row in &table.rows {
            for c in row.discrepancies() {
                println!("discrepancy: {} ({}): {}", row.instance, c.source, c.value);
            }
        }
    }
    Ok(if table.all_hold() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.globals;
    if let Some(t) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(Failure::input)?;
    }
    match &cli.command {
        Command::Construct(args) => construct(g, args),
        Command::Check { file, property } => check(g, file, *property),
        Command::Analyze { file, analysis } => analyze(g, file, *analysis),
        Command::Search { property } => search(g, *property),
        Command::VerifyBounds { property, from, to } => bounds(g, *property, *from, *to),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
