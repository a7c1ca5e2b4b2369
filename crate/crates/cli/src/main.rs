mod cache;
mod table;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke_core::basicsets::{
    basic_set_catalog, beta_factorization, canonical_basic_set, verify_conjecture_shape, verify_unitriangular,
    BasicSetError, CatalogEntry, LabeledDecompMatrix,
};
use hecke_core::charshur::{builtin_g2_reps, one_dim_reps, schur_table, CharError, SchurTable};
use hecke_core::combinat::{a_invariant_unitary, embed_bipartition, extract_bipartition, Bipartition, Partition};
use hecke_core::coxeter::{build_datum_with_cap, unitary_weights, CoxeterError, CoxeterType, DEFAULT_GROUP_ORDER_CAP};
use hecke_core::exactalg::ExactError;
use hecke_core::genericity::{compute_e, compute_e_prime, sweep, verify_a_equals_a0, GenericityError};
use serde_json::{json, Value};

use cache::{schur_key, SchurCache};
use table::Table;

#[derive(Parser)]
#[command(name = "hecke", version, about = "Hecke algebras, Schur elements and canonical basic sets")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Directory for cached Schur tables
    #[arg(long, env = "HECKE_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Refuse Coxeter groups with more elements than this
    #[arg(long, default_value_t = DEFAULT_GROUP_ORDER_CAP, global = true)]
    group_order_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// e for (q, ell); with --a also e', A and A0
    EValue {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long, default_value_t = 0)]
        b: u64,
    },
    /// Schur elements and a-invariants of the built-in representations
    Schur(DatumArgs),
    /// A canonical basic set from the catalog or from a decomposition matrix
    BasicSet {
        #[command(flatten)]
        datum: OptDatumArgs,
        #[arg(long)]
        e: Option<u32>,
        /// Decomposition matrix in the JSON ingestion format
        #[arg(long, conflicts_with_all = ["kind", "e"])]
        input: Option<PathBuf>,
    },
    /// The partition of 2m+s with 2-core of size s and the given 2-quotient
    Embed {
        #[arg(long)]
        bipartition: Bipartition,
        #[arg(long)]
        s: u32,
    },
    /// The 2-quotient of a partition whose 2-core has size s
    Extract {
        #[arg(long)]
        partition: Partition,
        #[arg(long)]
        s: u32,
    },
    /// The a-invariant of a bipartition for the unitary weights (2s+1; 2, ..., 2)
    Afun {
        #[arg(long)]
        bipartition: Bipartition,
        #[arg(long)]
        s: u32,
    },
    /// Check full = root * dprime and compare the canonical basic sets
    Factor {
        #[arg(long)]
        full: PathBuf,
        #[arg(long)]
        root: PathBuf,
        /// Matrix as a JSON array of integer rows
        #[arg(long)]
        dprime: PathBuf,
    },
    /// Unitriangularity of a matrix labelled by partitions
    VerifyTriangular {
        #[arg(long)]
        input: PathBuf,
    },
    /// Block shape of a matrix whose rows carry class and d
    VerifyConjectureShape {
        #[arg(long)]
        input: PathBuf,
    },
    /// A = A0 and the e'/e relation over a range of (q, ell, a, b)
    SweepGenericity {
        #[arg(long, default_value_t = 50)]
        max_ell: u64,
        #[arg(long, default_value_t = 50)]
        max_q: u64,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        a: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        max_b: u64,
    },
}

#[derive(Args)]
struct DatumArgs {
    /// A, B or G2
    #[arg(long = "type")]
    kind: CoxeterType,
    /// Comma-separated weights, or `unitary:s=0` / `unitary:s=1` for type B
    #[arg(long)]
    weights: Weights,
    /// Rank; defaults to the number of weights
    #[arg(long, alias = "m")]
    rank: Option<usize>,
}

#[derive(Args)]
struct OptDatumArgs {
    #[arg(long = "type", requires = "weights")]
    kind: Option<CoxeterType>,
    #[arg(long)]
    weights: Option<Weights>,
    #[arg(long, alias = "m")]
    rank: Option<usize>,
}

#[derive(Clone)]
enum Weights {
    Explicit(Vec<u32>),
    Unitary(u32),
}

impl std::str::FromStr for Weights {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix("unitary:s=") {
            return match rest {
                "0" => Ok(Self::Unitary(0)),
                "1" => Ok(Self::Unitary(1)),
                _ => Err(format!("s must be 0 or 1 in `{s}`")),
            };
        }
        s.split(',')
            .map(|w| w.trim().parse::<u32>().map_err(|_| format!("bad weight `{w}`")))
            .collect::<Result<_, _>>()
            .map(Self::Explicit)
    }
}

impl Weights {
    fn resolve(&self, kind: CoxeterType, rank: Option<usize>) -> Result<(usize, Vec<u32>), Failure> {
        match self {
            Self::Unitary(s) => {
                if kind != CoxeterType::B {
                    return Err(Failure::Precondition("unitary weights apply to type B only".into()));
                }
                let m = rank.ok_or_else(|| Failure::Precondition("unitary weights need --m".into()))?;
                Ok((m, unitary_weights(m, *s)))
            }
            Self::Explicit(w) => Ok((rank.unwrap_or(w.len()), w.clone())),
        }
    }
}

/// A command failure with its exit code.
enum Failure {
    /// Exit 2: a precondition on the input does not hold.
    Precondition(String),
    /// Exit 3: the mathematics failed on valid input.
    Math(String),
    /// Exit 4: the catalog has no entry.
    NotCatalogued(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Precondition(_) => 2,
            Self::Math(_) => 3,
            Self::NotCatalogued(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Precondition(m) | Self::Math(m) | Self::NotCatalogued(m) => m,
        }
    }
}

impl From<CoxeterError> for Failure {
    fn from(e: CoxeterError) -> Self {
        Self::Precondition(e.to_string())
    }
}

impl From<GenericityError> for Failure {
    fn from(e: GenericityError) -> Self {
        Self::Precondition(e.to_string())
    }
}

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Self {
        Self::Precondition(e.to_string())
    }
}

impl From<CharError> for Failure {
    fn from(e: CharError) -> Self {
        match e {
            CharError::Shape(_) | CharError::DatumMismatch => Self::Precondition(e.to_string()),
            _ => Self::Math(e.to_string()),
        }
    }
}

impl From<BasicSetError> for Failure {
    fn from(e: BasicSetError) -> Self {
        match e {
            BasicSetError::NoCanonicalSet { .. }
            | BasicSetError::ProductMismatch { .. }
            | BasicSetError::BetaNotUnique { .. }
            | BasicSetError::BasicSetsDiffer { .. } => Self::Math(e.to_string()),
            _ => Self::Precondition(e.to_string()),
        }
    }
}

/// What a command produces: the JSON value and its human-readable form.
struct Report {
    json: Value,
    table: String,
    /// Report-style commands exit 3 when the check fails.
    passed: bool,
}

impl Report {
    fn ok(json: Value, table: String) -> Self {
        Self { json, table, passed: true }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Precondition(format!("cannot read {}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<LabeledDecompMatrix, Failure> {
    LabeledDecompMatrix::from_json(&read_file(path)?)
        .map_err(|e| Failure::Precondition(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn e_value(q: u64, ell: u64, a: Option<u64>, b: u64) -> Result<Report, Failure> {
    let e = compute_e(q, ell)?;
    let Some(a) = a else {
        let mut t = Table::new(["quantity", "value"]);
        t.row(["e", &e.to_string()]);
        return Ok(Report::ok(json!({ "e": e }), t.render()));
    };
    let r = verify_a_equals_a0(q, a, b, ell)?;
    debug_assert_eq!(r.e_prime, compute_e_prime(q, a, ell)?);
    let mut t = Table::new(["quantity", "value"]);
    t.row(["e", &r.e.to_string()]);
    t.row(["e'", &r.e_prime.to_string()]);
    t.row(["A", &r.a_set.to_string()]);
    t.row(["A0", &r.a0_set.to_string()]);
    t.row(["equal", &r.equal.to_string()]);
    let passed = r.equal;
    Ok(Report {
        json: to_json(&r),
        table: t.render(),
        passed,
    })
}

fn schur(args: &DatumArgs, cache: &SchurCache, cap: usize) -> Result<Report, Failure> {
    if args.kind == CoxeterType::Custom {
        return Err(Failure::Precondition("schur supports the built-in types A, B and G2".into()));
    }
    let (rank, weights) = args.weights.resolve(args.kind, args.rank)?;
    let datum = Arc::new(build_datum_with_cap(args.kind, rank, &weights, cap)?);
    let reps = if args.kind == CoxeterType::G2 && datum.weights() == [3, 1] {
        builtin_g2_reps()
    } else {
        one_dim_reps(&datum)
    };
    let key = schur_key(&reps);
    let table: SchurTable = match cache.load(&key) {
        Some(t) => t,
        None => {
            let t = schur_table(&reps)?;
            if let Err(e) = cache.store(&key, &t) {
                eprintln!("warning: cannot write cache in {}: {e}", cache.dir().display());
            }
            t
        }
    };
    let mut t = Table::new(["name", "dim", "a", "f", "schur element"]);
    for r in &table.reps {
        t.row([
            r.name.as_str(),
            &r.dim.to_string(),
            &r.a_invariant.to_string(),
            &r.f_lambda.to_string(),
            &r.schur.to_string(),
        ]);
    }
    Ok(Report::ok(to_json(&table), t.render()))
}

fn basic_set_from_catalog(datum: &OptDatumArgs, e: Option<u32>) -> Result<Report, Failure> {
    let (Some(kind), Some(weights), Some(e)) = (datum.kind, &datum.weights, e) else {
        return Err(Failure::Precondition("catalog queries need --type, --weights and --e".into()));
    };
    let (rank, weights) = weights.resolve(kind, datum.rank)?;
    let entry = basic_set_catalog(kind, rank, &weights, e)?;
    let labels = match &entry {
        CatalogEntry::NotCatalogued { reference } => {
            return Err(Failure::NotCatalogued(format!("not catalogued: {reference}")))
        }
        CatalogEntry::Catalogued { labels, .. } => labels,
    };
    let mut t = Table::new(["label"]);
    for l in labels {
        t.row([l.as_str()]);
    }
    Ok(Report::ok(to_json(&entry), t.render()))
}

fn is_partition_square(d: &LabeledDecompMatrix) -> bool {
    d.rows().len() == d.cols().len()
        && d.rows().iter().zip(d.cols()).all(|(r, c)| &r.label == c)
        && d.cols().iter().all(|c| c.parse::<Partition>().is_ok())
}

fn basic_set_from_file(path: &Path) -> Result<Report, Failure> {
    let d = read_matrix(path)?;
    let set = canonical_basic_set(&d)?;
    let mut t = Table::new(["column", "row", "a"]);
    for e in &set.iota {
        t.row([e.column.as_str(), &e.row, &e.a.to_string()]);
    }
    let mut text = t.render();
    let mut json = json!({ "basicSet": set, "labels": set.labels() });
    let mut passed = true;
    if is_partition_square(&d) {
        let r = verify_unitriangular(&d)?;
        text.push_str(&format!("unitriangular: {}\n", verdict(r.pass)));
        passed &= r.pass;
        json["unitriangular"] = to_json(&r);
    }
    if d.rows().len() == d.cols().len() && d.rows().iter().all(|r| r.class.is_some() && r.d.is_some()) {
        let r = verify_conjecture_shape(&d)?;
        text.push_str(&format!("block shape: {}\n", verdict(r.pass)));
        passed &= r.pass;
        json["conjectureShape"] = to_json(&r);
    }
    text.push_str("basic set: pass\n");
    Ok(Report { json, table: text, passed })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn factor(full: &Path, root: &Path, dprime: &Path) -> Result<Report, Failure> {
    let full = read_matrix(full)?;
    let root = read_matrix(root)?;
    let dp: Vec<Vec<u64>> = serde_json::from_str(&read_file(dprime)?)
        .map_err(|e| Failure::Precondition(format!("{}: {e}", dprime.display())))?;
    let r = beta_factorization(&full, &root, &dp)?;
    let mut t = Table::new(["column", "beta", "row"]);
    for ((col, root_col), entry) in r.beta.iter().zip(&r.iota.iota) {
        t.row([col.as_str(), root_col, &entry.row]);
    }
    let mut text = t.render();
    text.push_str(&format!("basic sets equal: {}\n", r.sets_equal));
    Ok(Report::ok(to_json(&r), text))
}

fn violations_table(title: &str, v: &[hecke_core::basicsets::Violation]) -> String {
    if v.is_empty() {
        return format!("{title}: none\n");
    }
    let mut t = Table::new(["row", "column", "value"]);
    for x in v {
        t.row([
            format!("{} ({})", x.row, x.row_label).as_str(),
            &format!("{} ({})", x.col, x.col_label),
            &x.value.to_string(),
        ]);
    }
    format!("{title}:\n{}", t.render())
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let cache = SchurCache::new(
        cli.cache_dir
            .clone()
            .unwrap_or_else(|| std::env::temp_dir().join("hecke-cache")),
    );
    match &cli.command {
        Command::EValue { q, ell, a, b } => e_value(*q, *ell, *a, *b),
        Command::Schur(args) => schur(args, &cache, cli.group_order_cap),
        Command::BasicSet { datum, e, input } => match input {
            Some(path) => basic_set_from_file(path),
            None => basic_set_from_catalog(datum, *e),
        },
        Command::Embed { bipartition, s } => {
            let p = embed_bipartition(bipartition, *s).map_err(|e| Failure::Precondition(e.to_string()))?;
            let json = json!({ "partition": p, "n": p.size() });
            Ok(Report::ok(json, format!("{p}\n")))
        }
        Command::Extract { partition, s } => {
            let b = extract_bipartition(partition, *s).map_err(|e| Failure::Precondition(e.to_string()))?;
            Ok(Report::ok(json!({ "bipartition": b }), format!("{b}\n")))
        }
        Command::Afun { bipartition, s } => {
            let a = a_invariant_unitary(bipartition, *s).map_err(|e| Failure::Precondition(e.to_string()))?;
            Ok(Report::ok(json!({ "bipartition": bipartition, "s": s, "a": a }), format!("{a}\n")))
        }
        Command::Factor { full, root, dprime } => factor(full, root, dprime),
        Command::VerifyTriangular { input } => {
            let r = verify_unitriangular(&read_matrix(input)?)?;
            let mut text = violations_table("dominance violations", &r.dominance_violations);
            text.push_str(&violations_table("n violations", &r.n_violations));
            text.push_str(&format!("result: {}\n", verdict(r.pass)));
            Ok(Report {
                passed: r.pass,
                json: to_json(&r),
                table: text,
            })
        }
        Command::VerifyConjectureShape { input } => {
            let r = verify_conjecture_shape(&read_matrix(input)?)?;
            let mut t = Table::new(["d", "class", "rows"]);
            for b in &r.blocks {
                t.row([b.d.to_string().as_str(), &b.class, &b.rows.join(" ")]);
            }
            let mut text = t.render();
            text.push_str(&violations_table("diagonal block violations", &r.diagonal_violations));
            text.push_str(&violations_table("off-diagonal violations", &r.off_diagonal_violations));
            text.push_str(&format!("result: {}\n", verdict(r.pass)));
            Ok(Report {
                passed: r.pass,
                json: to_json(&r),
                table: text,
            })
        }
        Command::SweepGenericity { max_ell, max_q, a, max_b } => {
            let r = sweep(*max_ell, *max_q, a, *max_b);
            let mut text = format!("cases: {}\nskipped: {}\nfailures: {}\n", r.cases, r.skipped, r.failures.len());
            for f in &r.failures {
                text.push_str(&format!("  q={} a={} b={} ell={}: {}\n", f.q, f.a, f.b, f.ell, f.reason));
            }
            Ok(Report {
                passed: r.failures.is_empty(),
                json: to_json(&r),
                table: text,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("json") + "\n",
                Format::Table => report.table,
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
