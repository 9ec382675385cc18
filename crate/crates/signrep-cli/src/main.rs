//! Command-line interface for the signrep toolkit.
//!
//! Structured results go to stdout and are byte-identical across identical
//! invocations; timing goes to stderr. Exit codes: 0 success (and pass for
//! verification-like commands), 1 a check failed, 2 usage or computation
//! error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use signrep::circuits::{build_ip_circuit, build_parity_circuit, circuit_verify, min_spr_b, ThrAndCircuit};
use signrep::construct::{ConstructParams, ConstructionRegistry};
use signrep::feasibility::{audit_certificate, FeasibilityProblem};
use signrep::format::parse_poly;
use signrep::grid::Grid;
use signrep::preset::{emit, run_preset, OutputFormat, PresetContext, PresetRegistry};
use signrep::rational::parse_rational;
use signrep::search::{
    boundary_certificates, coefficient_sign_census, min_degree, min_sparsity, SearchConfig,
};
use signrep::signs::{descartes_bound, sign_variations, CoefficientSequence};
use signrep::target::TargetFunction;
use signrep::vandermonde::GeneralizedVandermonde;
use signrep::verify::{verify_with_cap, RepKind};
use signrep::{Rational, SparsePoly};

#[derive(Parser)]
#[command(
    name = "signrep",
    version,
    about = "Exact sign representations of parity and inner product: verify, construct, search, and reproduce the small-case bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a polynomial against a target over a grid.
    Verify(VerifyArgs),
    /// Build one of the named construction families.
    Construct(ConstructArgs),
    /// Exact minimum support size under a per-variable degree cap.
    Minsparsity(MinSparsityArgs),
    /// Exact minimum total degree under a per-variable degree cap.
    Mindegree(MinDegreeArgs),
    /// Certify the forced coefficient signs for parity on {0,1}^n.
    Census(CensusArgs),
    /// Threshold-of-AND circuits: build, verify, or search for the minimum size.
    Circuit(CircuitArgs),
    /// Generalized Vandermonde determinant, inverse and sign pattern.
    Vandermonde(VandermondeArgs),
    /// Sign variations and the positive-root bound of a univariate polynomial.
    Descartes(DescartesArgs),
    /// Run a named experiment preset.
    Preset(PresetArgs),
}

#[derive(Args)]
struct TargetArgs {
    /// Target function: parity, ip, or table:<file>.
    #[arg(long)]
    target: String,
    /// Grid point set, as an inclusive range `a..b` or a comma list.
    #[arg(long)]
    grid: String,
    /// Number of variables (for ip: number of variable pairs).
    #[arg(long)]
    n: usize,
}

#[derive(Deserialize)]
struct TableEntry {
    point: Vec<i64>,
    value: u8,
}

impl TargetArgs {
    fn build(&self) -> anyhow::Result<TargetFunction> {
        let values = Grid::parse_values(&self.grid)?;
        if let Some(path) = self.target.strip_prefix("table:") {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading truth table {path}"))?;
            let entries: Vec<TableEntry> = serde_json::from_str(&text)?;
            let table: BTreeMap<Vec<i64>, u8> =
                entries.into_iter().map(|e| (e.point, e.value)).collect();
            let grid = Grid::new(self.n, values)?;
            return Ok(TargetFunction::truth_table(grid, table)?);
        }
        match self.target.as_str() {
            "parity" => Ok(TargetFunction::parity(Grid::new(self.n, values)?)),
            "ip" => Ok(TargetFunction::inner_product(Grid::new(2 * self.n, values)?)?),
            other => bail!("unknown target {other:?} (expected parity, ip, or table:<file>)"),
        }
    }

    fn dimension(&self) -> usize {
        if self.target == "ip" {
            2 * self.n
        } else {
            self.n
        }
    }
}

/// Reads a polynomial from a literal or a file, in text or JSON form.
fn read_poly(spec: &str, dimension: Option<usize>) -> anyhow::Result<SparsePoly> {
    let content = if Path::new(spec).is_file() {
        std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?
    } else {
        spec.to_string()
    };
    let trimmed = content.trim();
    if trimmed.starts_with('{') {
        let poly: SparsePoly = serde_json::from_str(trimmed)?;
        if let Some(d) = dimension {
            if poly.dimension() != d {
                bail!("polynomial has dimension {}, expected {d}", poly.dimension());
            }
        }
        Ok(poly)
    } else {
        Ok(parse_poly(trimmed, dimension)?)
    }
}

fn parse_alphas(text: &str) -> anyhow::Result<Vec<Rational>> {
    text.split(',')
        .map(|s| parse_rational(s).map_err(Into::into))
        .collect()
}

#[derive(Args)]
struct VerifyArgs {
    /// Polynomial: literal text, a text file, or a JSON file.
    #[arg(long)]
    poly: String,
    #[command(flatten)]
    target: TargetArgs,
    /// Representation kind: exact, sign, or weak.
    #[arg(long)]
    kind: RepKind,
    /// Refuse grids with more points than this.
    #[arg(long, default_value_t = signrep::verify::DEFAULT_GRID_CAP)]
    cap: u64,
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let target = args.target.build()?;
    let poly = read_poly(&args.poly, Some(args.target.dimension()))?;
    let report = verify_with_cap(&poly, &target, args.kind, args.cap)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Args)]
struct ConstructArgs {
    /// Family name; see `construct --list`.
    #[arg(long, required_unless_present = "list")]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Grid for grid-parameterized families, `a..b` or a comma list.
    #[arg(long)]
    grid: Option<String>,
    /// Comma-separated rational overrides for the family's root points.
    #[arg(long)]
    alphas: Option<String>,
    /// Output format: text or json.
    #[arg(long, default_value = "text")]
    format: String,
    /// Also verify the construction against its advertised target.
    #[arg(long)]
    verify: bool,
    /// List the registered families.
    #[arg(long)]
    list: bool,
}

fn cmd_construct(args: &ConstructArgs) -> anyhow::Result<ExitCode> {
    let registry = ConstructionRegistry::new();
    if args.list {
        for family in registry.iter() {
            println!("{:<14} {}", family.name(), family.describe());
        }
        return Ok(ExitCode::SUCCESS);
    }
    let name = args.family.as_deref().expect("clap enforces family");
    let family = registry.get(name)?;
    let grid = match (&args.grid, args.n) {
        (Some(g), Some(n)) => Some(Grid::new(n, Grid::parse_values(g)?)?),
        (Some(_), None) => bail!("--grid needs --n for the dimension"),
        _ => None,
    };
    let params = ConstructParams {
        n: args.n,
        m: args.m,
        grid,
        alphas: args.alphas.as_deref().map(parse_alphas).transpose()?,
    };
    let built = family.build(&params)?;
    match args.format.as_str() {
        "text" => println!("{}", built.poly),
        "json" => println!("{}", serde_json::to_string_pretty(&built.poly)?),
        other => bail!("unknown format {other:?} (expected text or json)"),
    }
    if args.verify {
        let report = signrep::verify::verify(&built.poly, &built.target, built.kind)?;
        eprintln!(
            "# verify: {} ({} over {} points)",
            if report.pass { "pass" } else { "FAIL" },
            built.kind,
            report.points_checked
        );
        if !report.pass {
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    target: TargetArgs,
    /// Representation kind: sign or weak.
    #[arg(long)]
    kind: RepKind,
    /// Per-variable degree cap D (defaults to m-1 for the grid).
    #[arg(long)]
    degcap: Option<u32>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    parallel: Option<usize>,
    /// Prune supports equivalent under the target's variable symmetries.
    #[arg(long)]
    symmetry: bool,
    /// Refuse to enumerate more candidate supports than this.
    #[arg(long, default_value_t = 1 << 20)]
    subset_cap: u64,
}

impl SearchArgs {
    fn config(&self, grid_m: usize) -> SearchConfig {
        SearchConfig {
            degree_cap: self.degcap.unwrap_or(grid_m as u32 - 1),
            max_support: None,
            symmetry: self.symmetry,
            grid_cap: signrep::verify::DEFAULT_GRID_CAP,
            subset_cap: self.subset_cap,
            threads: self.parallel,
        }
    }
}

#[derive(Args)]
struct MinSparsityArgs {
    #[command(flatten)]
    search: SearchArgs,
    /// Stop after this support size.
    #[arg(long)]
    max_support: Option<usize>,
    /// Re-verify the winning certificate through the verification path.
    #[arg(long)]
    audit: bool,
    /// Write the witness certificate plus every infeasibility certificate of
    /// the boundary layer (size k-1) as JSON lines.
    #[arg(long)]
    export_certs: Option<String>,
}

fn cmd_minsparsity(args: &MinSparsityArgs) -> anyhow::Result<ExitCode> {
    let target = args.search.target.build()?;
    let mut cfg = args.search.config(target.grid().m());
    cfg.max_support = args.max_support;
    let start = std::time::Instant::now();
    let found = min_sparsity(&target, args.search.kind, &cfg)?;
    let wall = start.elapsed();
    let audited = if args.audit {
        let problem = FeasibilityProblem {
            support: found.support.clone(),
            target: target.clone(),
            kind: args.search.kind,
            witness_point: None,
        };
        audit_certificate(&problem, &found.certificate)?;
        Some(true)
    } else {
        None
    };
    if let Some(path) = &args.export_certs {
        let mut file = std::fs::File::create(path)?;
        writeln!(
            file,
            "{}",
            json!({"support": found.support, "certificate": found.certificate})
        )?;
        if found.k > 1 {
            for (support, cert) in
                boundary_certificates(&target, args.search.kind, &cfg, found.k - 1)?
            {
                writeln!(file, "{}", json!({"support": support, "certificate": cert}))?;
            }
        }
        eprintln!("# certificates written to {path}");
    }
    let report = json!({
        "k": found.k,
        "degree_cap": found.degree_cap,
        "kind": args.search.kind,
        "witness": found.witness,
        "witness_text": found.witness.to_string(),
        "certificate": found.certificate,
        "certificates_checked": found.stats.subsets_examined,
        "stats": found.stats,
        "audited": audited,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    // timing is kept off stdout so identical runs emit identical bytes
    eprintln!("# wall_ms: {}", wall.as_millis());
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
struct MinDegreeArgs {
    #[command(flatten)]
    search: SearchArgs,
}

fn cmd_mindegree(args: &MinDegreeArgs) -> anyhow::Result<ExitCode> {
    let target = args.search.target.build()?;
    let cfg = args.search.config(target.grid().m());
    let start = std::time::Instant::now();
    let found = min_degree(&target, args.search.kind, &cfg)?;
    let wall = start.elapsed();
    let report = json!({
        "degree": found.degree,
        "degree_cap": found.degree_cap,
        "kind": args.search.kind,
        "witness": found.witness,
        "witness_text": found.witness.to_string(),
        "certificates_checked": found.stats.subsets_examined,
        "stats": found.stats,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    eprintln!("# wall_ms: {}", wall.as_millis());
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    n: usize,
}

fn cmd_census(args: &CensusArgs) -> anyhow::Result<ExitCode> {
    let report = coefficient_sign_census(args.n, &SearchConfig::default())?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if report.all_forced {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Args)]
struct CircuitArgs {
    /// Operation: minsize, build-parity, build-ip, or verify.
    #[arg(long)]
    op: String,
    /// Variables (build-parity, minsize over parity) or pairs (ip ops).
    #[arg(long)]
    n: Option<usize>,
    /// Target for minsize/verify: parity or ip.
    #[arg(long, default_value = "parity")]
    target: String,
    /// Circuit file (JSON) for verify.
    #[arg(long)]
    circuit: Option<String>,
    #[arg(long)]
    parallel: Option<usize>,
    #[arg(long)]
    symmetry: bool,
}

fn circuit_target(target: &str, n: usize) -> anyhow::Result<TargetFunction> {
    match target {
        "parity" => Ok(TargetFunction::parity(Grid::range(n, 0, 1)?)),
        "ip" => Ok(TargetFunction::inner_product(Grid::range(2 * n, 0, 1)?)?),
        other => bail!("unknown circuit target {other:?}"),
    }
}

fn cmd_circuit(args: &CircuitArgs) -> anyhow::Result<ExitCode> {
    match args.op.as_str() {
        "minsize" => {
            let n = args.n.ok_or_else(|| anyhow!("minsize needs --n"))?;
            let target = circuit_target(&args.target, n)?;
            let cfg = SearchConfig {
                symmetry: args.symmetry,
                threads: args.parallel,
                ..Default::default()
            };
            let start = std::time::Instant::now();
            let found = min_spr_b(&target, &cfg)?;
            let report = json!({
                "k": found.k,
                "target": args.target,
                "circuit": found.circuit,
                "stats": found.stats,
            });
            println!("{}", serde_json::to_string_pretty(&report)?);
            eprintln!("# wall_ms: {}", start.elapsed().as_millis());
            Ok(ExitCode::SUCCESS)
        }
        "build-parity" => {
            let n = args.n.ok_or_else(|| anyhow!("build-parity needs --n"))?;
            let circuit = build_parity_circuit(n)?;
            println!("{}", serde_json::to_string_pretty(&circuit)?);
            Ok(ExitCode::SUCCESS)
        }
        "build-ip" => {
            let pairs = args.n.ok_or_else(|| anyhow!("build-ip needs --n pairs"))?;
            let circuit = build_ip_circuit(pairs)?;
            println!("{}", serde_json::to_string_pretty(&circuit)?);
            Ok(ExitCode::SUCCESS)
        }
        "verify" => {
            let path = args
                .circuit
                .as_ref()
                .ok_or_else(|| anyhow!("verify needs --circuit <file>"))?;
            let text = std::fs::read_to_string(path)?;
            let circuit: ThrAndCircuit = serde_json::from_str(&text)?;
            let n = match args.target.as_str() {
                "ip" => {
                    if circuit.dimension % 2 != 0 {
                        bail!("ip circuit needs an even dimension");
                    }
                    circuit.dimension / 2
                }
                _ => circuit.dimension,
            };
            let target = circuit_target(&args.target, n)?;
            let report = circuit_verify(&circuit, &target)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        other => bail!("unknown circuit op {other:?}"),
    }
}

#[derive(Args)]
struct VandermondeArgs {
    /// Strictly increasing points, comma-separated rationals.
    #[arg(long)]
    points: String,
    /// Strictly increasing non-negative integer exponents, comma-separated.
    #[arg(long)]
    exponents: String,
}

fn cmd_vandermonde(args: &VandermondeArgs) -> anyhow::Result<ExitCode> {
    let points: Vec<Rational> = args
        .points
        .split(',')
        .map(|s| parse_rational(s).map_err(anyhow::Error::from))
        .collect::<anyhow::Result<_>>()?;
    let exponents: Vec<u32> = args
        .exponents
        .split(',')
        .map(|s| s.trim().parse::<u32>().context("bad exponent"))
        .collect::<anyhow::Result<_>>()?;
    let v = GeneralizedVandermonde::build(points, exponents)?;
    let det = v.det();
    let inverse = v.inverse().ok();
    let pattern = inverse.as_ref().map(|inv| {
        inv.iter()
            .map(|row| row.iter().map(signrep::rational::sign_of).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    });
    let predicted = v.predicted_sign_pattern();
    let matches = match (&pattern, &predicted) {
        (Some(p), Some(q)) => Some(p == q),
        _ => None,
    };
    let report = json!({
        "size": v.size(),
        "det": det.to_string(),
        "inverse": inverse.map(|inv| inv
            .iter()
            .map(|row| row.iter().map(|r| r.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
        "sign_pattern": pattern,
        "predicted_pattern": predicted,
        "pattern_matches": matches,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
struct DescartesArgs {
    /// Univariate polynomial, text or JSON, literal or file.
    #[arg(long)]
    poly: String,
}

fn cmd_descartes(args: &DescartesArgs) -> anyhow::Result<ExitCode> {
    let poly = read_poly(&args.poly, Some(1))?;
    let seq = CoefficientSequence::from_poly(&poly)?;
    let variations = sign_variations(&seq);
    let bound = descartes_bound(&poly)?;
    let report = json!({
        "poly": poly.to_string(),
        "spr": poly.spr(),
        "sign_variations": variations,
        "positive_root_bound": bound,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
struct PresetArgs {
    /// Preset name; see --list.
    #[arg(required_unless_present = "list")]
    name: Option<String>,
    /// List the registered presets.
    #[arg(long)]
    list: bool,
    /// Run the expensive gated cases too.
    #[arg(long)]
    slow: bool,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    parallel: Option<usize>,
    /// Output format: table, json, or csv.
    #[arg(long, default_value = "table")]
    format: String,
}

fn cmd_preset(args: &PresetArgs) -> anyhow::Result<ExitCode> {
    if args.list {
        let registry = PresetRegistry::new();
        for preset in registry.iter() {
            println!("{:<18} {}", preset.name(), preset.summary());
        }
        return Ok(ExitCode::SUCCESS);
    }
    let name = args.name.as_deref().expect("clap enforces name");
    let ctx = PresetContext {
        slow: args.slow,
        seed: args.seed,
        threads: args.parallel,
    };
    let format: OutputFormat = args.format.parse()?;
    let report = run_preset(name, &ctx)?;
    let mut stdout = std::io::stdout().lock();
    emit(&report, format, &mut stdout)?;
    eprintln!("# wall_ms: {}", report.wall_millis);
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Construct(args) => cmd_construct(args),
        Command::Minsparsity(args) => cmd_minsparsity(args),
        Command::Mindegree(args) => cmd_mindegree(args),
        Command::Census(args) => cmd_census(args),
        Command::Circuit(args) => cmd_circuit(args),
        Command::Vandermonde(args) => cmd_vandermonde(args),
        Command::Descartes(args) => cmd_descartes(args),
        Command::Preset(args) => cmd_preset(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
