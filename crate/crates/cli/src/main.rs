//! `twistq`: command-line front end for the verification suites.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use twistq::arith::{parse_fe, Fe};
use twistq::diagram::{bundled_names, TwistedDiagram};
use twistq::drinfeld::{check_sigma_compat, poly_from_psi, DrinfeldPolynomial, SeriesLaw, UPoly, WeightSeries};
use twistq::hopf_tensor::{coproduct_report, tensor_highest_weight, verify_divided_powers};
use twistq::presentations::{
    chevalley_relations, chevalley_via_iso, drinfeld_relations, dump_relations, iso_images, sl2_relations,
    sl3tau_relations, target_algebra, Algebra, RelationInstance, DEFAULT_CUBIC_WINDOW,
};
use twistq::repcore::{check_relations, find_highest_weight, pullback, MatrixRep, BUNDLED_REPS};
use twistq::report::{CheckRecord, Report};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
}

fn data(e: impl ToString) -> CliError {
    CliError::Data(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "twistq", version, about = "Exact verification suites for twisted quantum loop algebras")]
struct Cli {
    /// Emit newline-delimited JSON records instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Degree window |k| <= N for relation families.
    #[arg(long, global = true, default_value_t = 3)]
    window: i64,
    /// Series order for Psi and Drinfeld extraction.
    #[arg(long, global = true, default_value_t = 10)]
    order: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print passing records too.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Load a diagram and solve for the marks n.
    DiagramCheck {
        /// Bundled name (a2_2, a3_2, a4_2, d4_3) or a TOML path.
        diagram: String,
    },
    /// Evaluate a relation suite in a matrix representation.
    CheckRelations(RelArgs),
    /// Describe a representation.
    RepInfo {
        #[arg(long, default_value = "Va")]
        rep: String,
    },
    /// Highest weight, Psi series and Drinfeld polynomials.
    Drinfeld(DrinfeldArgs),
    /// Coproduct checks on V_a (x) V_b.
    Tensor {
        #[arg(long, default_value = "sym")]
        a: String,
        #[arg(long, default_value = "sym")]
        b: String,
        /// Highest degree k of the Delta(X_k^+) family.
        #[arg(long, default_value_t = 6)]
        kmax: usize,
    },
    /// Divided-power identities and highest-weight congruences in V_a.
    Identities {
        #[arg(long, default_value_t = 4)]
        rmax: usize,
        #[arg(long, default_value = "sym")]
        a: String,
    },
    /// Chevalley generators through the isomorphism into the loop algebra.
    IsoCheck {
        #[arg(long, default_value = "a2_2")]
        diagram: String,
        #[arg(long, default_value = "Va")]
        rep: String,
    },
    /// Print relation instances, one JSON object per line.
    DumpRelations {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        #[arg(long, default_value = "a2_2")]
        diagram: String,
        /// Node for `sl2`: the subalgebra attached to this node.
        #[arg(long)]
        node: Option<u32>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AlgebraArg {
    Sl3tau,
    Chevalley,
    Drinfeld,
    Sl2,
}

#[derive(Args, Debug)]
struct RelArgs {
    #[arg(long, value_enum)]
    algebra: AlgebraArg,
    #[arg(long, default_value = "Va")]
    rep: String,
    /// Value for the parameter `a`: `sym` or a rational.
    #[arg(long, default_value = "sym")]
    a: String,
    /// Diagram for chevalley / drinfeld / sl2 (default: taken from the representation).
    #[arg(long)]
    diagram: Option<String>,
    /// Node for `sl2`.
    #[arg(long)]
    node: Option<u32>,
}

#[derive(Args, Debug)]
struct DrinfeldArgs {
    #[arg(long, conflicts_with = "tensor")]
    rep: Option<String>,
    /// Two parameter values (`sym` or rationals) for V_a (x) V_b.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    tensor: Option<Vec<String>>,
    #[arg(long, default_value = "sym")]
    a: String,
}

fn load_diagram(s: &str) -> Result<TwistedDiagram, CliError> {
    let p = Path::new(s);
    let with_ext = PathBuf::from(format!("{s}.toml"));
    for cand in [p, with_ext.as_path()] {
        if cand.is_file() {
            return TwistedDiagram::load(cand).map_err(data);
        }
    }
    let stem = p.file_stem().and_then(|x| x.to_str()).unwrap_or(s);
    TwistedDiagram::bundled(stem).ok_or_else(|| {
        CliError::Data(format!("no diagram file {s:?} and no bundled diagram {stem:?} (bundled: {})", bundled_names().join(", ")))
    })
}

fn load_rep(s: &str) -> Result<MatrixRep, CliError> {
    if let Some(r) = MatrixRep::bundled(s) {
        return Ok(r);
    }
    let p = Path::new(s);
    if p.is_file() {
        return MatrixRep::load(p).map_err(data);
    }
    let names: Vec<_> = BUNDLED_REPS.iter().map(|(n, _)| *n).collect();
    Err(CliError::Data(format!("no representation {s:?} (bundled: {})", names.join(", "))))
}

/// `sym` keeps the parameter symbolic (named `default`); otherwise a rational.
fn param_value(s: &str, default: &str) -> Result<Fe, CliError> {
    if s == "sym" {
        return Ok(Fe::named(default));
    }
    let v = parse_fe(s).map_err(|e| CliError::Usage(format!("--a {s}: {e}")))?;
    if !v.vars().is_empty() {
        return Err(CliError::Usage(format!("parameter value {s:?} must be `sym` or a rational number")));
    }
    Ok(v)
}

fn with_a(rep: MatrixRep, a: &str) -> Result<MatrixRep, CliError> {
    if a == "sym" {
        return Ok(rep);
    }
    let v = param_value(a, "a")?;
    rep.with_parameter("a", &v).map_err(|e| CliError::Usage(e.to_string()))
}

/// V_a with `a` replaced by `value` (`sym` means the symbol `name`).
fn va_with(value: &str, name: &str) -> Result<MatrixRep, CliError> {
    let rep = load_rep("Va")?;
    let v = param_value(value, name)?;
    if v == Fe::named("a") {
        return Ok(rep);
    }
    rep.with_parameter("a", &v).map_err(|e| CliError::Usage(e.to_string()))
}

fn rep_diagram(rep: &MatrixRep, explicit: Option<&str>) -> Result<TwistedDiagram, CliError> {
    if let Some(d) = explicit {
        return load_diagram(d);
    }
    match &rep.algebra {
        Algebra::Drinfeld(d) | Algebra::Chevalley(d) => load_diagram(d),
        _ => load_diagram("a2_2"),
    }
}

fn relations(alg: AlgebraArg, diag: &TwistedDiagram, node: Option<u32>, window: i64) -> Result<Vec<RelationInstance>, CliError> {
    Ok(match alg {
        AlgebraArg::Sl3tau => sl3tau_relations(window, window.min(DEFAULT_CUBIC_WINDOW)),
        AlgebraArg::Chevalley => chevalley_relations(diag),
        AlgebraArg::Drinfeld => drinfeld_relations(diag, window).map_err(data)?,
        AlgebraArg::Sl2 => {
            let i = node.ok_or_else(|| CliError::Usage("--algebra sl2 needs --node".into()))?;
            if !diag.has_node(i) {
                return Err(CliError::Usage(format!("node {i} is not in {}", diag.name)));
            }
            match target_algebra(diag, i) {
                Algebra::Sl2(e) => sl2_relations(window, e),
                _ => sl3tau_relations(window, window.min(DEFAULT_CUBIC_WINDOW)),
            }
        }
    })
}

fn cmd_diagram_check(arg: &str) -> Result<Report, CliError> {
    let mut report = Report::new(format!("diagram-check {arg}"));
    let d = match load_diagram(arg) {
        Ok(d) => d,
        Err(e) => {
            report.push(CheckRecord::new("diagram.load", "parse", false, e.to_string()));
            return Ok(report);
        }
    };
    let fmt = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(", ");
    report = report
        .header("diagram", &d.name)
        .header("m", d.m)
        .header("d", format!("({})", fmt(d.symmetrizers())))
        .header("n", format!("({})", fmt(d.marks())));
    for i in d.nodes() {
        report = report.header(format!("class[{i}]"), d.node_class(i));
    }
    report.push(CheckRecord::new("diagram.load", "parse", true, ""));
    for (j, r) in d.residual().iter().enumerate() {
        report.push(CheckRecord::new(format!("marks.residual[j={j}]"), "diagram", *r == 0, if *r == 0 { String::new() } else { r.to_string() }));
    }
    let pos = d.marks().iter().all(|&x| x > 0);
    report.push(CheckRecord::new("marks.positive", "diagram", pos, if pos { String::new() } else { "nonpositive mark".into() }));
    report.sort();
    Ok(report)
}

fn cmd_check_relations(args: &RelArgs, window: i64) -> Result<Report, CliError> {
    if window < 0 {
        return Err(CliError::Usage("--window must be >= 0".into()));
    }
    let rep = with_a(load_rep(&args.rep)?, &args.a)?;
    let diag = rep_diagram(&rep, args.diagram.as_deref())?;
    let rels = relations(args.algebra, &diag, args.node, window)?;
    let (rep, rels, skipped) = match args.algebra {
        AlgebraArg::Chevalley => {
            let (r, s) = chevalley_via_iso(&diag, &rels).map_err(data)?;
            (rep, r, s)
        }
        AlgebraArg::Sl2 => (pullback(&rep, &diag, args.node.expect("checked in relations")), rels, Vec::new()),
        _ => (rep, rels, Vec::new()),
    };
    let mut report = check_relations(&rep, &rels).map_err(data)?;
    let alg = format!("{:?}", args.algebra).to_lowercase();
    report.title = format!("check-relations --algebra {alg} --rep {}", args.rep);
    report.header.insert(0, ("window".into(), window.to_string()));
    report.header.insert(1, ("a".into(), args.a.clone()));
    if !skipped.is_empty() {
        report.notes.push(format!("no isomorphism image for: {}", skipped.join(", ")));
    }
    Ok(report)
}

fn cmd_rep_info(name: &str) -> Result<Report, CliError> {
    let rep = load_rep(name)?;
    let params: Vec<String> = rep.parameters().iter().map(|v| v.to_string()).collect();
    let nodes: Vec<String> = rep.nodes().iter().map(u32::to_string).collect();
    Ok(Report::new(format!("rep-info {name}"))
        .header("name", &rep.name)
        .header("algebra", &rep.algebra)
        .header("dim", rep.dim())
        .header("parameters", params.join(", "))
        .header("nodes", nodes.join(", ")))
}

fn series_law(rep: &MatrixRep, i: u32) -> Result<SeriesLaw, CliError> {
    match &rep.algebra {
        Algebra::Sl3Tau => Ok(SeriesLaw::new(twistq::diagram::NodeClass::SplitLinked, 2)),
        Algebra::Drinfeld(d) => Ok(SeriesLaw::for_node(&load_diagram(d)?, i)),
        other => Err(CliError::Usage(format!("no Drinfeld polynomial law for {other}"))),
    }
}

fn vec_string(v: &[Fe]) -> String {
    format!("({})", v.iter().map(Fe::to_string).collect::<Vec<_>>().join(", "))
}

fn cmd_drinfeld(args: &DrinfeldArgs, order: usize) -> Result<Report, CliError> {
    if let Some(t) = &args.tensor {
        return drinfeld_tensor(&t[0], &t[1], order);
    }
    let name = args.rep.as_deref().unwrap_or("Va");
    let rep = with_a(load_rep(name)?, &args.a)?;
    let hw = find_highest_weight(&rep, 1, order).map_err(data)?;
    let mut report = Report::new(format!("drinfeld --rep {name}")).header("a", &args.a).header("order", order).header("vector", vec_string(&hw.vector));
    let mut poly = DrinfeldPolynomial::new();
    for (i, nw) in &hw.nodes {
        let law = series_law(&rep, *i)?;
        report = report.header(format!("K[{i}]"), &nw.k).header(format!("psi+[{i}]"), &nw.psi_plus).header(format!("psi-[{i}]"), &nw.psi_minus);
        let w = WeightSeries { k: nw.k.clone(), psi_plus: nw.psi_plus.clone(), psi_minus: Some(nw.psi_minus.clone()) };
        match poly_from_psi(&w, law) {
            Ok(ex) => {
                report = report.header(format!("P[{i}]"), &ex.poly);
                report.push(CheckRecord::new(format!("poly[i={i}]"), "drinfeld", true, ""));
                poly = poly.with(*i, ex.poly);
            }
            Err(e) => report.push(CheckRecord::new(format!("poly[i={i}]"), "drinfeld", false, e.to_string())),
        }
    }
    if let Algebra::Drinfeld(d) = &rep.algebra {
        if report.passed() {
            report.extend(check_sigma_compat(&poly, &load_diagram(d)?));
        }
    }
    report.sort();
    Ok(report)
}

fn drinfeld_tensor(a: &str, b: &str, order: usize) -> Result<Report, CliError> {
    let va = va_with(a, "a")?;
    let vb = va_with(b, "b")?;
    let (pa, pb) = (param_value(a, "a")?, param_value(b, "b")?);
    let mut report = Report::new(format!("drinfeld --tensor {a} {b}")).header("order", order);
    match tensor_highest_weight(&va, &vb, order) {
        Ok(tw) => {
            report = report.header("vector", vec_string(&tw.vector)).header("K", &tw.k).header("psi+", &tw.psi_plus);
            report.push(CheckRecord::new("tensor.product-law", "drinfeld", true, ""));
            let w = WeightSeries { k: tw.k, psi_plus: tw.psi_plus, psi_minus: None };
            let want = UPoly::linear(&pa).mul(&UPoly::linear(&pb));
            match poly_from_psi(&w, SeriesLaw::new(twistq::diagram::NodeClass::SplitLinked, 2)) {
                Ok(ex) => {
                    let ok = ex.poly == want;
                    report = report.header("P", &ex.poly);
                    report.push(CheckRecord::new("tensor.poly", "drinfeld", ok, if ok { String::new() } else { format!("expected {want}") }));
                }
                Err(e) => report.push(CheckRecord::new("tensor.poly", "drinfeld", false, e.to_string())),
            }
        }
        Err(e) => report.push(CheckRecord::new("tensor.product-law", "drinfeld", false, e.to_string())),
    }
    report.sort();
    Ok(report)
}

fn cmd_tensor(a: &str, b: &str, kmax: usize) -> Result<Report, CliError> {
    let va = va_with(a, "a")?;
    let vb = va_with(b, "b")?;
    let mut r = coproduct_report(&va, &vb, kmax).map_err(data)?;
    r.title = format!("tensor --a {a} --b {b}");
    Ok(r)
}

fn cmd_identities(rmax: usize, a: &str) -> Result<Report, CliError> {
    let va = va_with(a, "a")?;
    let s = verify_divided_powers(&va, rmax).map_err(data)?;
    let mut r = s.report;
    r.title = format!("identities --rmax {rmax}");
    Ok(r)
}

fn cmd_iso_check(diagram: &str, rep: &str) -> Result<Report, CliError> {
    let diag = load_diagram(diagram)?;
    let rep = load_rep(rep)?;
    let images = iso_images(&diag).map_err(data)?;
    let (rels, skipped) = chevalley_via_iso(&diag, &chevalley_relations(&diag)).map_err(data)?;
    let mut report = check_relations(&rep, &rels).map_err(data)?;
    report.title = format!("iso-check {} in {}", diag.name, rep.name);
    for (g, img) in &images {
        report = report.header(format!("image {g}"), img.len().to_string() + " terms");
    }
    if !skipped.is_empty() {
        report.push(CheckRecord::new("iso.images", "iso", false, format!("no image for {}", skipped.join(", "))));
    }
    report.sort();
    Ok(report)
}

fn cmd_dump(alg: AlgebraArg, diagram: &str, node: Option<u32>, window: i64) -> Result<String, CliError> {
    let diag = load_diagram(diagram)?;
    Ok(dump_relations(&relations(alg, &diag, node, window)?))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.cmd {
        Cmd::DiagramCheck { diagram } => cmd_diagram_check(diagram),
        Cmd::CheckRelations(args) => cmd_check_relations(args, cli.window),
        Cmd::RepInfo { rep } => cmd_rep_info(rep),
        Cmd::Drinfeld(args) => cmd_drinfeld(args, cli.order),
        Cmd::Tensor { a, b, kmax } => cmd_tensor(a, b, *kmax),
        Cmd::Identities { rmax, a } => cmd_identities(*rmax, a),
        Cmd::IsoCheck { diagram, rep } => cmd_iso_check(diagram, rep),
        Cmd::DumpRelations { .. } => unreachable!("handled in main"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --jobs {n}: {e}");
            return ExitCode::from(2);
        }
    }
    if let Cmd::DumpRelations { algebra, diagram, node } = &cli.cmd {
        return match cmd_dump(*algebra, diagram, *node, cli.window) {
            Ok(s) => {
                print!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.to_jsonl());
            } else {
                print!("{}", report.to_text(cli.verbose));
            }
            let load_failed = report.find("diagram.load").is_some_and(|r| !r.pass);
            if load_failed {
                ExitCode::from(2)
            } else if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
