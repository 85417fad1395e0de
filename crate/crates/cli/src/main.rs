//! `torfacet`: bigraded Betti tables, products and certificates for
//! Stanley–Reisner face rings from the command line.
//!
//! Exit codes: 0 on success or pass, 1 on a mathematical failure with a
//! witness, 2 on usage, parse or input errors.

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use torfacet::arrangements::{self, ArrangementReport};
use torfacet::facering::{self, CharMatrix};
use torfacet::homology::field::Rationals;
use torfacet::koszul::BettiTable;
use torfacet::{corpus, generators, hochster, koszul, massey};
use torfacet::{Coefficients, Error, Exec, HomologyGroup, SimplicialComplex, VertexSet};

/// Version tag carried by every `--json` document.
const SCHEMA: &str = "torfacet/1";

#[derive(Parser)]
#[command(name = "torfacet", version, about = "Tor-algebras of face rings and moment-angle cohomology")]
struct Cli {
    /// Named generator, e.g. `mgon:5`, `boundary_simplex:4`, `cut_cube_dual`, `random:8:1/2:42`.
    #[arg(long, global = true, value_name = "NAME[:PARAMS]", conflicts_with = "complex")]
    gen: Option<String>,

    /// Complex as JSON `{"m":..,"facets":[..]}`; `-` reads stdin.
    #[arg(long, global = true, value_name = "FILE")]
    complex: Option<String>,

    /// Coefficients: `q`, `z` or `fp:<p>`.
    #[arg(long, global = true)]
    coeff: Option<String>,

    /// Machine-readable output on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads; 1 runs everything on the calling thread.
    #[arg(long, global = true, env = "TORFACET_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bigraded Betti numbers of Z_K.
    Betti {
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Also list the multigraded pieces `(i, ω)`.
        #[arg(long)]
        multigraded: bool,
    },
    /// Reisner's Cohen–Macaulay test.
    CmTest,
    /// Whether a characteristic matrix gives a linear system of parameters.
    LsopCheck {
        /// JSON rows `[[1,0,-1],[0,1,-1]]` or `{"n":..,"rows":..}`.
        #[arg(long)]
        matrix: String,
    },
    /// Triple Massey product of three Koszul cocycles.
    Massey(MasseyArgs),
    /// Homology of the coordinate subspace arrangement complement U(K).
    Ukhom {
        #[arg(long, value_enum, default_value_t = Route::Both)]
        route: Route,
    },
    /// Combinatorial Alexander duality on every non-face.
    AlexanderCheck,
    /// The toral rank inequality dim H*(Z_K; Q) >= 2^(m-n).
    TrcCheck {
        /// Report a violation without failing.
        #[arg(long)]
        report_only: bool,
    },
    /// Build or transform a complex; prints complex JSON.
    Complex {
        #[command(subcommand)]
        op: ComplexOp,
    },
    /// Run a named battery over the stored corpus.
    Suite {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(corpus::SUITES))]
        name: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Hochster,
    Koszul,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Subcomplex,
    Dual,
    Both,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct MasseyArgs {
    #[command(subcommand)]
    demo: Option<MasseyDemo>,
    /// Cocycles as text (`v1u2 - v3u4`), JSON term records, or `@file`.
    #[arg(long, requires_all = ["a2", "a3"])]
    a1: Option<String>,
    #[arg(long)]
    a2: Option<String>,
    #[arg(long)]
    a3: Option<String>,
}

#[derive(Subcommand)]
enum MasseyDemo {
    /// The cut-cube example ⟨[v1u2], [v3u4], [v5u6]⟩.
    DemoP3,
}

#[derive(Subcommand)]
enum ComplexOp {
    /// The input complex itself (use with --gen).
    Gen,
    /// Join with a second complex, whose labels shift by m.
    Join {
        #[arg(long, conflicts_with = "with_complex", required_unless_present = "with_complex")]
        with_gen: Option<String>,
        #[arg(long)]
        with_complex: Option<String>,
    },
    /// Stellar subdivision at a face; the new vertex is m + 1.
    Stellar {
        #[arg(long, value_delimiter = ',', required = true)]
        face: Vec<usize>,
    },
    /// The dual complex K̂.
    Dual,
    Link {
        #[arg(long, value_delimiter = ',')]
        face: Vec<usize>,
    },
    Star {
        #[arg(long, value_delimiter = ',')]
        face: Vec<usize>,
    },
    /// The full subcomplex K_ω, on the same vertex set.
    Sub {
        #[arg(long, value_delimiter = ',')]
        omega: Vec<usize>,
    },
}

enum Failure {
    /// Bad input or usage; exit 2.
    Usage(String),
    /// A mathematical obstruction; exit 1.
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotACocycle | Error::UndefinedMassey(_) => Failure::Math(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// What a command produced: text for humans, a JSON payload, and whether
/// the mathematical check passed.
struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

impl Outcome {
    fn pass(text: String, json: Value) -> Self {
        Outcome { text, json, passed: true }
    }
}

struct Context {
    gen: Option<String>,
    complex: Option<String>,
    coeff: Option<Coefficients>,
    exec: Exec,
}

impl Context {
    fn input(&self) -> Result<SimplicialComplex, Failure> {
        match (&self.gen, &self.complex) {
            (Some(spec), _) => Ok(generators::from_spec(spec)?),
            (None, Some(path)) => load_complex(path),
            (None, None) => Err(Failure::Usage("this command needs an input complex: --gen or --complex".into())),
        }
    }

    fn coeff(&self) -> Coefficients {
        self.coeff.unwrap_or(Coefficients::Rationals)
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" { io::stdin().read_to_string(&mut text).map(|_| ()) } else { fs::read_to_string(path).map(|t| text = t) };
    res.map_err(|e| Failure::Usage(format!("cannot read `{path}`: {e}")))?;
    Ok(text)
}

fn load_complex(path: &str) -> Result<SimplicialComplex, Failure> {
    Ok(SimplicialComplex::from_json(&read_source(path)?)?)
}

fn labels(v: &[usize]) -> VertexSet {
    VertexSet::from_labels(v.iter().copied())
}

/// A group in the notation of its ring: `Q^3`, `F_2`, `Z^2 + Z/2`.
fn group_text(g: &HomologyGroup, coeff: Coefficients) -> String {
    match coeff {
        Coefficients::Integers => g.to_string(),
        _ if g.rank == 0 => "0".into(),
        _ if g.rank == 1 => coeff.label(),
        _ => format!("{}^{}", coeff.label(), g.rank),
    }
}

fn betti(ctx: &Context, method: Method, multigraded: bool) -> Result<Outcome, Failure> {
    let k = ctx.input()?;
    let coeff = ctx.coeff();
    let mut tables: Vec<(&str, BettiTable)> = Vec::new();
    if method != Method::Koszul {
        tables.push(("hochster", hochster::betti_table_hochster_with(&k, coeff, ctx.exec)));
    }
    if method != Method::Hochster {
        tables.push(("koszul", koszul::betti_table_koszul_with(&k, coeff, ctx.exec)));
    }
    let equal = tables.windows(2).all(|w| w[0].1.same_entries(&w[1].1) && w[0].1.multigraded == w[1].1.multigraded);
    let mut text = String::new();
    for (name, t) in &tables {
        text += &format!("{name} ({coeff}): {t}\n");
    }
    if multigraded {
        for ((i, omega), g) in &tables[0].1.multigraded {
            text += &format!("  (-{i}, {omega}): {}\n", group_text(g, coeff));
        }
    }
    if tables.len() > 1 {
        text += if equal { "tables agree\n" } else { "TABLES DIFFER\n" };
    }
    let methods: serde_json::Map<String, Value> =
        tables.iter().map(|(n, t)| (n.to_string(), t.to_json(multigraded))).collect();
    let json = json!({"field": coeff.label(), "methods": methods, "equal": equal});
    Ok(Outcome { text, json, passed: equal })
}

fn cm_test(ctx: &Context) -> Result<Outcome, Failure> {
    let k = ctx.input()?;
    let coeff = ctx.coeff();
    let verdict = facering::reisner_cm_test_with(&k, coeff, ctx.exec)?;
    let text = match &verdict {
        facering::CmVerdict::CohenMacaulay => format!("cohen-macaulay over {coeff}\n"),
        facering::CmVerdict::Fail { face, degree } => {
            format!("not cohen-macaulay over {coeff}: H̃_{degree}(link {face}) ≠ 0\n")
        }
    };
    let mut json = verdict.to_json();
    json["field"] = json!(coeff.label());
    Ok(Outcome { text, json, passed: verdict.is_cohen_macaulay() })
}

fn lsop_check(ctx: &Context, matrix: &str) -> Result<Outcome, Failure> {
    let k = ctx.input()?;
    let text = read_source(matrix)?;
    let lambda = match serde_json::from_str::<Vec<Vec<i64>>>(&text) {
        Ok(rows) => CharMatrix::new(rows)?,
        Err(_) => CharMatrix::from_json(&text)?,
    };
    let coeff = ctx.coeff.unwrap_or(Coefficients::Integers);
    let verdict = match coeff {
        Coefficients::Integers => facering::lsop_check_integer(&k, &lambda)?,
        _ => facering::lsop_check_field(&k, &lambda, coeff)?,
    };
    let text = match &verdict {
        facering::LsopVerdict::Pass => format!("pass over {coeff}\n"),
        facering::LsopVerdict::Fail { facet, det } => format!("fail over {coeff}: facet {facet} has minor det {det}\n"),
    };
    let mut json = verdict.to_json();
    json["field"] = json!(coeff.label());
    Ok(Outcome { text, json, passed: verdict.passed() })
}

fn massey_text(r: &massey::MasseyReport) -> String {
    let mut text = format!("representative: {}\ne: {}\nf: {}\n", r.representative, r.e, r.f);
    if !r.indeterminacy.is_empty() {
        text += &format!("indeterminacy: {}\n", r.indeterminacy.join(", "));
    }
    text + &format!("trivial: {}\n", r.trivial)
}

fn massey_cmd(ctx: &Context, args: &MasseyArgs) -> Result<Outcome, Failure> {
    if let Some(MasseyDemo::DemoP3) = args.demo {
        let f = Rationals;
        let demo = massey::demo_p3()?;
        let given = demo.with_given_solution.report(&f);
        let solver = demo.with_solver.report(&f);
        let same = demo.with_solver.same_coset(&f, &demo.with_given_solution);
        let mut text = massey_text(&given);
        text += &format!("solver's choice lands in the same coset: {same}\n");
        let json = json!({"complex": demo.complex.to_record(), "given": given, "solver": solver, "same_coset": same});
        return Ok(Outcome::pass(text, json));
    }
    let (Some(a1), Some(a2), Some(a3)) = (&args.a1, &args.a2, &args.a3) else {
        return Err(Failure::Usage("massey needs --a1, --a2 and --a3, or `massey demo-p3`".into()));
    };
    let k = ctx.input()?;
    let read = |a: &str| match a.strip_prefix('@') {
        Some(path) => read_source(path),
        None => Ok(a.to_string()),
    };
    let (a1, a2, a3) = (read(a1)?, read(a2)?, read(a3)?);
    let report = massey::triple_massey_report(&k, ctx.coeff(), [&a1, &a2, &a3])?;
    Ok(Outcome::pass(massey_text(&report), serde_json::to_value(&report).expect("plain data")))
}

fn uk_text(r: &ArrangementReport, coeff: Coefficients) -> String {
    let groups: Vec<String> = r
        .homology
        .iter()
        .filter(|(_, g)| !g.is_zero())
        .map(|(d, g)| format!("H̃_{d} = {}", group_text(g, coeff)))
        .collect();
    if groups.is_empty() {
        format!("{}: acyclic\n", r.route)
    } else {
        format!("{}: {}\n", r.route, groups.join(", "))
    }
}

fn ukhom(ctx: &Context, route: Route) -> Result<Outcome, Failure> {
    let k = ctx.input()?;
    let coeff = ctx.coeff();
    let mut reports = Vec::new();
    if route != Route::Dual {
        reports.push(arrangements::uk_homology_via_subcomplexes_with(&k, coeff, ctx.exec));
    }
    if route != Route::Subcomplex {
        reports.push(arrangements::uk_homology_via_dual_links_with(&k, coeff, ctx.exec)?);
    }
    let equal = reports.windows(2).all(|w| w[0].same_homology(&w[1]));
    let mut text: String = reports.iter().map(|r| uk_text(r, coeff)).collect();
    if reports.len() > 1 {
        text += if equal { "routes agree\n" } else { "ROUTES DIFFER\n" };
    }
    let json = json!({"field": coeff.label(), "routes": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(), "equal": equal});
    Ok(Outcome { text, json, passed: equal })
}

fn alexander(ctx: &Context) -> Result<Outcome, Failure> {
    let k = ctx.input()?;
    let coeff = ctx.coeff();
    let verdict = arrangements::alexander_duality_check_with(&k, coeff, ctx.exec)?;
    let text = match &verdict {
        arrangements::AlexanderVerdict::Pass { checked } => format!("pass over {coeff} ({checked} non-faces)\n"),
        arrangements::AlexanderVerdict::Fail { tau, degree, homology, cohomology } => format!(
            "fail over {coeff} at τ = {}: H̃_{degree}(K_τ) = {} but the dual link gives {}\n",
            labels(tau),
            group_text(homology, coeff),
            group_text(cohomology, coeff)
        ),
    };
    let passed = verdict.passed();
    Ok(Outcome { text, json: serde_json::to_value(&verdict).expect("plain data"), passed })
}

fn trc_check(ctx: &Context, report_only: bool) -> Result<Outcome, Failure> {
    let k = ctx.input()?;
    let r = arrangements::toral_rank_check_with(&k, ctx.exec);
    let mut text = format!(
        "dim H*(Z_K; Q) = {}, 2^(m-n) = {} (m = {}, n = {}{}), margin {}\n",
        r.lhs,
        r.rhs,
        r.m,
        r.n,
        if r.pure { "" } else { ", not pure" },
        r.margin
    );
    if !r.holds {
        eprintln!("toral rank inequality VIOLATED: {} < {}", r.lhs, r.rhs);
        text += "VIOLATED\n";
    }
    let mut json = serde_json::to_value(&r).expect("plain data");
    json["report_only"] = json!(report_only);
    Ok(Outcome { text, json, passed: r.holds || report_only })
}

fn complex_op(ctx: &Context, op: &ComplexOp) -> Result<Outcome, Failure> {
    let k = ctx.input()?;
    let out = match op {
        ComplexOp::Gen => k,
        ComplexOp::Join { with_gen, with_complex } => {
            let other = match (with_gen, with_complex) {
                (Some(spec), _) => generators::from_spec(spec)?,
                (None, Some(path)) => load_complex(path)?,
                (None, None) => return Err(Failure::Usage("join needs --with-gen or --with-complex".into())),
            };
            k.join(&other)?.complex
        }
        ComplexOp::Stellar { face } => k.stellar_subdivision(labels(face))?,
        ComplexOp::Dual => k.dual()?,
        ComplexOp::Link { face } => k.link(labels(face))?,
        ComplexOp::Star { face } => k.star(labels(face))?,
        ComplexOp::Sub { omega } => {
            let omega = labels(omega);
            if !omega.is_subset(k.vertex_set()) {
                return Err(Failure::Usage(format!("{omega} is not a subset of [{}]", k.m())));
            }
            k.restriction(omega)
        }
    };
    // complexes print the same JSON either way so commands compose
    Ok(Outcome::pass(out.to_json() + "\n", serde_json::to_value(out.to_record()).expect("plain data")))
}

fn suite(ctx: &Context, name: &str) -> Result<Outcome, Failure> {
    let fields: Vec<Coefficients> = ctx.coeff.into_iter().collect();
    let report = corpus::run_suite_with(name, &fields, ctx.exec)?;
    let mut text = format!("{}: {} passed, {} failed\n", report.suite, report.passed, report.failed);
    for c in report.failures() {
        let witness = c.witness.as_ref().map(Value::to_string).unwrap_or_default();
        text += &format!("  FAIL {} {} {}: {witness}\n", c.name, c.check, c.field.as_deref().unwrap_or(""));
    }
    let passed = report.all_passed();
    Ok(Outcome { text, json: serde_json::to_value(&report).expect("plain data"), passed })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Betti { .. } => "betti",
        Command::CmTest => "cm-test",
        Command::LsopCheck { .. } => "lsop-check",
        Command::Massey(_) => "massey",
        Command::Ukhom { .. } => "ukhom",
        Command::AlexanderCheck => "alexander-check",
        Command::TrcCheck { .. } => "trc-check",
        Command::Complex { .. } => "complex",
        Command::Suite { .. } => "suite",
    }
}

fn run(cli: &Cli, ctx: &Context) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Betti { method, multigraded } => betti(ctx, *method, *multigraded),
        Command::CmTest => cm_test(ctx),
        Command::LsopCheck { matrix } => lsop_check(ctx, matrix),
        Command::Massey(args) => massey_cmd(ctx, args),
        Command::Ukhom { route } => ukhom(ctx, *route),
        Command::AlexanderCheck => alexander(ctx),
        Command::TrcCheck { report_only } => trc_check(ctx, *report_only),
        Command::Complex { op } => complex_op(ctx, op),
        Command::Suite { name } => suite(ctx, name),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = command_name(&cli.command);
    let emit_error = |msg: &str, code: u8| {
        eprintln!("torfacet {command}: {msg}");
        if cli.json {
            println!("{}", json!({"schema": SCHEMA, "command": command, "error": msg}));
        }
        ExitCode::from(code)
    };
    let coeff = match cli.coeff.as_deref().map(str::parse::<Coefficients>).transpose() {
        Ok(c) => c,
        Err(e) => return emit_error(&e.to_string(), 2),
    };
    let exec = match cli.threads {
        Some(1) => Exec::Sequential,
        Some(0) | None => Exec::default(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            Ok(()) => Exec::default(),
            Err(e) => return emit_error(&format!("cannot start {n} threads: {e}"), 2),
        },
    };
    let ctx = Context { gen: cli.gen.clone(), complex: cli.complex.clone(), coeff, exec };
    match run(&cli, &ctx) {
        Ok(out) => {
            if cli.json && command != "complex" {
                let mut doc = json!({"schema": SCHEMA, "command": command, "passed": out.passed});
                if let (Value::Object(d), Value::Object(p)) = (&mut doc, out.json) {
                    d.extend(p);
                }
                println!("{doc}");
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => emit_error(&msg, 2),
        Err(Failure::Math(msg)) => emit_error(&msg, 1),
    }
}
