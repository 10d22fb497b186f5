//! `rla`: validate, inspect and verify restricted Lie algebras over GF(p).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rla_core::catalog::{self, EnumerationOptions};
use rla_core::cohomology::{self, RestrictedModule};
use rla_core::derivations::{self, Derivation};
use rla_core::harness::{self, Claim, HarnessConfig};
use rla_core::{structure, Error, FieldMatrix, RestrictedLieAlgebra, Subspace, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "rla", version, about = "Restricted Lie algebras over GF(p)")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Maximum candidates any exhaustive search may visit
    #[arg(long, global = true, env = "RLA_BUDGET", default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,

    /// Worker threads (0 = one per core)
    #[arg(long, global = true, env = "RLA_WORKERS", default_value_t = 0)]
    workers: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the randomized property checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra document
    Check { file: PathBuf },

    /// Print structural invariants
    Inspect { file: PathBuf },

    /// Dimensions of the derivation spaces, with optional witness searches
    Derivations {
        file: PathBuf,
        /// List a basis of the restricted derivations
        #[arg(long)]
        restricted: bool,
        /// Print one outer restricted derivation
        #[arg(long)]
        outer: bool,
        /// Search for a square-zero outer restricted derivation
        #[arg(long)]
        square_zero: bool,
        /// Search for a nilpotent outer restricted derivation
        #[arg(long)]
        nilpotent: bool,
    },

    /// Restricted first cohomology with coefficients in a module
    H1 {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModuleKind::Adjoint)]
        module: ModuleKind,
        /// Dimension of the trivial module
        #[arg(long, default_value_t = 1)]
        trivial_dim: usize,
    },

    /// Run a claim over its population and emit a report
    Verify {
        /// Claim id or alias (see `rla verify --list`)
        #[arg(long, required_unless_present = "list")]
        claim: Option<String>,
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Largest enumerated dimension
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Report destination; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
        /// Identify isomorphic restricted structures before checking
        #[arg(long)]
        dedup: bool,
        /// List the known claims
        #[arg(long)]
        list: bool,
    },

    /// Enumerate nilpotent restricted structures of one dimension
    Enumerate {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        dedup: bool,
        /// Write one document per structure plus manifest.json here
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },

    /// Named example algebras
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModuleKind {
    Adjoint,
    Trivial,
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Write every named algebra and a manifest.json
    Export {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

/// Failure classes, each with a fixed exit status.
enum Failure {
    Input(String),
    Validation(String),
    Budget(String),
    Claim(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Claim(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Validation(m) | Failure::Budget(m) | Failure::Claim(m) => {
                m
            }
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            e if e.is_validation() => Failure::Validation(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<RestrictedLieAlgebra, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(RestrictedLieAlgebra::from_json(&text)?)
}

fn write_file(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn emit_json(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    );
}

fn span_text(l: &RestrictedLieAlgebra, s: &Subspace) -> String {
    let parts: Vec<String> = s.basis_vectors().map(|v| l.format_element(v)).collect();
    format!("span({})", parts.join(", "))
}

fn span_rows(s: &Subspace) -> Value {
    json!(s.basis().to_rows())
}

fn matrix_text(l: &RestrictedLieAlgebra, m: &FieldMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(u32::to_string).collect();
        let _ = writeln!(out, "  [{}]", row.join(" "));
    }
    for c in 0..m.cols() {
        let _ = writeln!(
            out,
            "  D({}) = {}",
            l.label(c),
            l.format_element(&m.column(c))
        );
    }
    out
}

fn cmd_check(g: &GlobalArgs, file: &Path) -> CmdResult {
    let l = load(file)?;
    match g.format {
        Format::Json => emit_json(&json!({"valid": true, "p": l.p(), "dim": l.dim()})),
        _ => println!("valid: p = {}, dim = {}", l.p(), l.dim()),
    }
    Ok(())
}

fn cmd_inspect(g: &GlobalArgs, file: &Path) -> CmdResult {
    let l = load(file)?;
    let center = structure::center(&l);
    let derived = structure::derived(&l);
    let class = structure::nilpotency_class(&l);
    // the remaining invariants are defined for nilpotent algebras only
    let torus = structure::maximal_torus(&l).ok();
    let unipotent = structure::is_p_unipotent(&l).ok();
    let max_abelian = structure::maximal_abelian_p_ideal(&l).ok();
    let codim1 = structure::codim1_max_p_ideals(&l).ok().map(|v| v.len());
    if g.format == Format::Json {
        emit_json(&json!({
            "p": l.p(),
            "dim": l.dim(),
            "center": span_rows(&center),
            "derived": span_rows(&derived),
            "nilpotency_class": class,
            "torus_dim": torus.as_ref().map(Subspace::dim),
            "p_unipotent": unipotent,
            "maximal_abelian_p_ideal": max_abelian.as_ref().map(span_rows),
            "codim1_max_p_ideals": codim1,
        }));
        return Ok(());
    }
    let na = || "n/a (not nilpotent)".to_string();
    println!("p: {}", l.p());
    println!("dim: {}", l.dim());
    println!("center: {}", span_text(&l, &center));
    println!("derived: {}", span_text(&l, &derived));
    println!(
        "nilpotency class: {}",
        class.map_or_else(na, |c| c.to_string())
    );
    println!(
        "torus dim: {}",
        torus.map_or_else(na, |t| t.dim().to_string())
    );
    println!(
        "p-unipotent: {}",
        unipotent.map_or_else(na, |u| u.to_string())
    );
    println!(
        "maximal abelian p-ideal: {}",
        max_abelian.map_or_else(na, |a| span_text(&l, &a))
    );
    println!(
        "codim-1 maximal p-ideals: {}",
        codim1.map_or_else(na, |n| n.to_string())
    );
    Ok(())
}

/// Outcome of one witness search, kept apart from the printing.
enum Search<'a> {
    Found(Derivation<'a>, Option<String>),
    None,
    Budget,
}

impl Search<'_> {
    fn to_json(&self) -> Value {
        match self {
            Search::Found(d, route) => {
                json!({"status": "found", "witness": d.matrix().to_rows(), "route": route})
            }
            Search::None => json!({"status": "none"}),
            Search::Budget => json!({"status": "budget"}),
        }
    }

    fn print(&self, l: &RestrictedLieAlgebra, what: &str) {
        match self {
            Search::Found(d, route) => {
                match route {
                    Some(r) => println!("{what}: found ({r})"),
                    None => println!("{what}: found"),
                }
                print!("{}", matrix_text(l, d.matrix()));
            }
            Search::None => println!("{what}: none (complete search)"),
            Search::Budget => println!("{what}: budget exceeded"),
        }
    }
}

fn searched<'a>(
    r: rla_core::Result<Option<(Derivation<'a>, Option<String>)>>,
) -> Result<Search<'a>, Failure> {
    match r {
        Ok(Some((d, route))) => Ok(Search::Found(d, route)),
        Ok(None) => Ok(Search::None),
        Err(Error::BudgetExceeded { .. }) => Ok(Search::Budget),
        Err(e) => Err(e.into()),
    }
}

fn cmd_derivations(
    g: &GlobalArgs,
    file: &Path,
    restricted: bool,
    outer: bool,
    square_zero: bool,
    nilpotent: bool,
) -> CmdResult {
    let l = load(file)?;
    let der = derivations::der(&l).dim();
    let der_p = derivations::der_p(&l);
    let inner = derivations::inner(&l).dim();
    let h1 = der_p.dim() - inner;

    let mut searches: Vec<(&str, Search)> = Vec::new();
    if outer {
        let s = derivations::find_outer(&l).map_or(Search::None, |d| Search::Found(d, None));
        searches.push(("outer", s));
    }
    if square_zero {
        let r = derivations::find_square_zero_outer(&l, g.budget).map(|w| {
            w.map(|w| {
                let route = serde_json::to_value(w.route)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from));
                (w.derivation, route)
            })
        });
        searches.push(("square-zero", searched(r)?));
    }
    if nilpotent {
        let r = derivations::find_nilpotent_outer(&l, g.budget).map(|d| d.map(|d| (d, None)));
        searches.push(("nilpotent", searched(r)?));
    }

    let basis: Vec<FieldMatrix> = if restricted {
        der_p
            .basis_vectors()
            .map(|v| derivations::unflatten(&l, v))
            .collect()
    } else {
        Vec::new()
    };

    if g.format == Format::Json {
        let mut out = json!({"der": der, "der_p": der_p.dim(), "inner": inner, "h1": h1});
        if restricted {
            out["der_p_basis"] = json!(basis.iter().map(FieldMatrix::to_rows).collect::<Vec<_>>());
        }
        for (what, s) in &searches {
            out[*what] = s.to_json();
        }
        emit_json(&out);
    } else {
        println!("der: {der}");
        println!("der_p: {}", der_p.dim());
        println!("inner: {inner}");
        println!("h1: {h1}");
        for (k, m) in basis.iter().enumerate() {
            println!("der_p basis {k}:");
            print!("{}", matrix_text(&l, m));
        }
        for (what, s) in &searches {
            s.print(&l, what);
        }
    }
    if searches.iter().any(|(_, s)| matches!(s, Search::Budget)) {
        return Err(Failure::Budget("budget exceeded".into()));
    }
    Ok(())
}

fn cmd_h1(g: &GlobalArgs, file: &Path, module: ModuleKind, trivial_dim: usize) -> CmdResult {
    let l = load(file)?;
    let m = match module {
        ModuleKind::Adjoint => RestrictedModule::adjoint(&l),
        ModuleKind::Trivial => RestrictedModule::trivial(&l, trivial_dim),
    };
    let z = cohomology::z1(&m).dim();
    let b = cohomology::b1(&m).dim();
    if g.format == Format::Json {
        emit_json(&json!({"module_dim": m.dim(), "z1": z, "b1": b, "h1": z - b}));
    } else {
        println!("module dim: {}", m.dim());
        println!("z1: {z}");
        println!("b1: {b}");
        println!("h1: {}", z - b);
    }
    Ok(())
}

fn cmd_verify(
    g: &GlobalArgs,
    claim: &str,
    p: u32,
    dim: usize,
    out: Option<&Path>,
    dedup: bool,
) -> CmdResult {
    let claim =
        Claim::parse(claim).map_err(|e| Failure::Input(format!("{e}; try `rla verify --list`")))?;
    let config = HarnessConfig {
        budget: g.budget,
        seed: g.seed,
        dedup,
        ..HarnessConfig::default()
    };
    let report = harness::verify(claim, p, dim, &config)?;
    let text = match g.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => {
            let mut t = String::new();
            for i in &report.instances {
                let _ = writeln!(t, "{} {}", i.algebra_id, i.verdict);
            }
            t + &report.summary_line() + "\n"
        }
    };
    match out {
        Some(path) => {
            write_file(path, &text)?;
            eprintln!("{}", report.summary_line());
        }
        None => print!("{text}"),
    }
    if report.summary.fail > 0 {
        Err(Failure::Claim(format!(
            "{} failing instances",
            report.summary.fail
        )))
    } else if report.summary.budget > 0 {
        Err(Failure::Budget(format!(
            "budget exceeded on {} instances",
            report.summary.budget
        )))
    } else {
        Ok(())
    }
}

fn export(entries: &[catalog::CatalogEntry], dir: &Path) -> CmdResult {
    fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    let mut manifest = Vec::new();
    for e in entries {
        let file = format!("{}.json", e.name);
        write_file(&dir.join(&file), &(e.algebra.to_json() + "\n"))?;
        manifest.push(e.manifest_record(&file));
    }
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_file(&dir.join("manifest.json"), &(text + "\n"))
}

fn cmd_enumerate(
    g: &GlobalArgs,
    p: u32,
    dim: usize,
    dedup: bool,
    out_dir: Option<&Path>,
) -> CmdResult {
    let opts = EnumerationOptions {
        dedup,
        budget: g.budget,
    };
    let entries = catalog::enumerate_nilpotent(p, dim, opts)?;
    if let Some(dir) = out_dir {
        export(&entries, dir)?;
    }
    let rows: Vec<(String, catalog::Fingerprint)> = entries
        .iter()
        .map(|e| (e.name.clone(), catalog::fingerprint(&e.algebra)))
        .collect();
    match g.format {
        Format::Json => emit_json(&json!(rows
            .iter()
            .map(|(name, f)| json!({
                "name": name,
                "torus_dim": f.torus_dim,
                "h1_adjoint_dim": f.h1_adjoint_dim,
                "derived_series": f.derived_series,
            }))
            .collect::<Vec<_>>())),
        Format::Csv => {
            println!("name,torus_dim,h1_adjoint_dim");
            for (name, f) in &rows {
                println!("{name},{},{}", f.torus_dim, f.h1_adjoint_dim);
            }
        }
        Format::Text => {
            for (name, f) in &rows {
                println!("{name} torus_dim={} h1={}", f.torus_dim, f.h1_adjoint_dim);
            }
            println!("{} structures", rows.len());
        }
    }
    Ok(())
}

fn cmd_catalog(g: &GlobalArgs, action: &CatalogAction) -> CmdResult {
    match action {
        CatalogAction::List { p } => {
            let entries = catalog::named(*p)?;
            match g.format {
                Format::Json => emit_json(&json!(entries
                    .iter()
                    .map(|e| json!({"name": e.name, "dim": e.algebra.dim(), "provenance": e.provenance}))
                    .collect::<Vec<_>>())),
                _ => {
                    for e in &entries {
                        println!("{} (dim {}): {}", e.name, e.algebra.dim(), e.provenance);
                    }
                }
            }
            Ok(())
        }
        CatalogAction::Export { p, out_dir } => {
            let entries = catalog::named(*p)?;
            export(&entries, out_dir)?;
            println!("wrote {} algebras to {}", entries.len(), out_dir.display());
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let g = &cli.global;
    if g.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(g.workers)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    match &cli.command {
        Command::Check { file } => cmd_check(g, file),
        Command::Inspect { file } => cmd_inspect(g, file),
        Command::Derivations {
            file,
            restricted,
            outer,
            square_zero,
            nilpotent,
        } => cmd_derivations(g, file, *restricted, *outer, *square_zero, *nilpotent),
        Command::H1 {
            file,
            module,
            trivial_dim,
        } => cmd_h1(g, file, *module, *trivial_dim),
        Command::Verify { list: true, .. } => {
            for c in Claim::all() {
                println!("{} ({})", c.id(), c.alias());
            }
            Ok(())
        }
        Command::Verify {
            claim,
            p,
            dim,
            out,
            dedup,
            ..
        } => cmd_verify(
            g,
            claim.as_deref().unwrap_or_default(),
            *p,
            *dim,
            out.as_deref(),
            *dedup,
        ),
        Command::Enumerate {
            p,
            dim,
            dedup,
            out_dir,
        } => cmd_enumerate(g, *p, *dim, *dedup, out_dir.as_deref()),
        Command::Catalog { action } => cmd_catalog(g, action),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors share the input-error status
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
