//! `uqso`: command-line front end.
//!
//! Exit codes: 0 when the requested check passes, 1 when it fails, 2 on
//! usage or input errors.

mod shorthand;

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use uqso::borel::{derive, Quotient, Variant, DEFAULT_MAX_DEGREE};
use uqso::freealg::{antipode, bracket, coproduct, multiply, Element, Sign};
use uqso::generators::{mu_table, sigma_table, Generators};
use uqso::params::{make_spec, parse_scalar, FreeChoices, ParamSpec};
use uqso::schemes::{
    count_root_sequences, enumerate_root_sequences, parse_scheme, regular_sets, Color, Scheme, SchemePair, Style,
};
use uqso::verify::{run_suite, Options, SUITES};
use uqso::Error;

#[derive(Parser)]
#[command(name = "uqso", version, about = "Exact computations in multiparameter U_q(so_{2n+1})")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Global {
    /// Rank.
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    /// Main parameter q, e.g. 2, -3 or 3/2.
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,
    /// Seed for unset free parameters and for randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Full parameter matrix as JSON {"n","q","p"}, inline or a file path.
    #[arg(long, global = true)]
    params: Option<String>,
    /// Degree budget of the Serre quotient tables.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the parameter matrix in use.
    Params,
    /// Black/white scheme combinatorics.
    Schemes {
        #[command(subcommand)]
        cmd: SchemesCmd,
    },
    /// Element arithmetic. Elements are JSON term lists or shorthand such as
    /// "[x 1, u 2 3] + 1/2 * phi 1 3 {2}-".
    Alg {
        #[command(subcommand)]
        cmd: AlgCmd,
    },
    /// Generators and coefficient tables.
    Gen {
        #[command(subcommand)]
        cmd: GenCmd,
    },
    /// Root sequences and Σ-monoids.
    Roots {
        #[command(subcommand)]
        cmd: RootsCmd,
    },
    /// Run verification suites and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct Interval {
    #[arg(long)]
    k: i64,
    #[arg(long)]
    m: i64,
    /// Black interior points, comma separated.
    #[arg(long, default_value = "", value_parser = parse_set)]
    set: BTreeSet<i64>,
    /// Use the negative scheme or generator.
    #[arg(long)]
    neg: bool,
}

impl Interval {
    fn sign(&self) -> Sign {
        if self.neg {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    fn scheme(&self, n: usize) -> uqso::Result<Scheme> {
        Scheme::new(n, self.sign(), self.k, self.m, self.set.iter().copied())
    }
}

#[derive(Subcommand)]
enum SchemesCmd {
    /// List the regular sets of an interval.
    Regular {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        m: i64,
        #[arg(long, value_parser = parse_color)]
        color: Option<Color>,
    },
    /// Draw a scheme.
    Render {
        #[command(flatten)]
        at: Interval,
        #[arg(long, default_value = "flat", value_parser = parse_style)]
        style: Style,
    },
    /// Overlay verdict for a positive and a negative scheme, each "k,m,S...".
    PairCheck {
        #[arg(long, allow_hyphen_values = true)]
        pos: String,
        #[arg(long, allow_hyphen_values = true)]
        neg: String,
    },
    /// Same interval with interior colors flipped.
    Dual {
        #[command(flatten)]
        at: Interval,
    },
    /// Colors flipped and labels reflected.
    Star {
        #[command(flatten)]
        at: Interval,
    },
}

#[derive(Args)]
struct AlgOut {
    /// Reduce the result modulo the quantum Serre relations.
    #[arg(long)]
    reduce: bool,
}

#[derive(Subcommand)]
enum AlgCmd {
    /// Skew bracket [a, b].
    Bracket {
        a: String,
        b: String,
        #[command(flatten)]
        out: AlgOut,
    },
    /// Product a·b in triangular normal form.
    Mul {
        a: String,
        b: String,
        #[command(flatten)]
        out: AlgOut,
    },
    /// Normal form modulo the Serre relations.
    Nf { a: String },
    Coproduct {
        a: String,
        #[command(flatten)]
        out: AlgOut,
    },
    Antipode {
        a: String,
        #[command(flatten)]
        out: AlgOut,
    },
    /// Skew derivation of a pure-sign element.
    Derive {
        a: String,
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum, default_value_t = DeriveKind::D)]
        variant: DeriveKind,
        #[command(flatten)]
        out: AlgOut,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DeriveKind {
    D,
    DStar,
    DNeg,
    DNegStar,
}

impl From<DeriveKind> for Variant {
    fn from(k: DeriveKind) -> Variant {
        match k {
            DeriveKind::D => Variant::D,
            DeriveKind::DStar => Variant::DStar,
            DeriveKind::DNeg => Variant::DNeg,
            DeriveKind::DNegStar => Variant::DNegStar,
        }
    }
}

#[derive(Subcommand)]
enum GenCmd {
    /// The bracketed word u[k,m].
    U {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        neg: bool,
    },
    /// The coideal generator for (k, m, S).
    Phi {
        #[command(flatten)]
        at: Interval,
    },
    /// σ or μ coefficients, closed form against direct evaluation.
    Tables {
        #[arg(long, value_enum)]
        kind: TableKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Sigma,
    Mu,
}

#[derive(Subcommand)]
enum RootsCmd {
    /// Number of root sequences.
    Count,
    /// All root sequences in lexicographic order.
    List,
    /// Σ-monoid of a scheme; with --member, test one degree.
    Sigma {
        #[command(flatten)]
        at: Interval,
        /// Degree as comma-separated letter counts, e.g. 1,2.
        #[arg(long)]
        member: Option<String>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    trials: Option<usize>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("not an integer: {t:?}")))
        .collect()
}

fn parse_set(s: &str) -> Result<BTreeSet<i64>, String> {
    Ok(parse_ints(s)?.into_iter().collect())
}

fn parse_color(s: &str) -> Result<Color, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_style(s: &str) -> Result<Style, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a command produced: a pass/fail verdict plus output.
struct Report {
    ok: bool,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: impl Into<String>, json: Value) -> Report {
        Report { ok: true, text: text.into(), json }
    }
}

fn specs(g: &Global, many: bool) -> uqso::Result<Vec<ParamSpec>> {
    if let Some(p) = &g.params {
        let raw = if p.trim_start().starts_with('{') {
            p.clone()
        } else {
            fs::read_to_string(p).map_err(|e| Error::Parse(format!("{p}: {e}")))?
        };
        let v: Value = serde_json::from_str(&raw).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok(vec![ParamSpec::from_json(&v)?]);
    }
    if many && g.q.is_none() && g.seed.is_none() {
        return Ok(ParamSpec::defaults(g.n));
    }
    let q = parse_scalar(g.q.as_deref().unwrap_or("2"))?;
    Ok(vec![make_spec(g.n, q, &FreeChoices::new(), Some(g.seed.unwrap_or(1)))?])
}

fn element(spec: &ParamSpec, gens: &Generators, src: &str) -> uqso::Result<Element> {
    match serde_json::from_str::<Value>(src) {
        Ok(v) => Element::from_json(spec.n, &v),
        Err(_) => shorthand::parse(spec, gens, src),
    }
}

fn elem_report(e: &Element) -> Report {
    Report::ok(e.to_string(), e.to_json())
}

fn set_text(s: &BTreeSet<i64>) -> String {
    let parts: Vec<String> = s.iter().map(i64::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn scheme_report(s: &Scheme) -> uqso::Result<Report> {
    Ok(Report::ok(
        format!("{},{},{}\n{}", s.k, s.m, set_text(&s.set), s.render(Style::Flat)?),
        s.to_json(),
    ))
}

fn schemes(g: &Global, cmd: &SchemesCmd) -> uqso::Result<Report> {
    let n = g.n;
    match cmd {
        SchemesCmd::Regular { k, m, color } => {
            Scheme::positive(n, *k, *m, [])?;
            let colors = match color {
                Some(c) => vec![*c],
                None => vec![Color::White, Color::Black],
            };
            let mut text = Vec::new();
            let mut out = serde_json::Map::new();
            for c in colors {
                let sets = regular_sets(n, *k, *m, c);
                let name = if c == Color::White { "white" } else { "black" };
                text.push(format!("{name}: {}", sets.iter().map(set_text).collect::<Vec<_>>().join(" ")));
                out.insert(name.into(), json!(sets));
            }
            Ok(Report::ok(text.join("\n"), Value::Object(out)))
        }
        SchemesCmd::Render { at, style } => {
            let s = at.scheme(n)?;
            let pic = s.render(*style)?;
            Ok(Report::ok(pic.clone(), json!({"scheme": s.to_json(), "style": style.to_string(), "picture": pic})))
        }
        SchemesCmd::PairCheck { pos, neg } => {
            let pair = SchemePair::new(parse_scheme(n, Sign::Positive, pos)?, parse_scheme(n, Sign::Negative, neg)?);
            let v = pair.bale_check()?;
            let mut text = vec![
                format!("passes: {}", v.passes),
                format!("all balanced: {}", v.all_balanced),
                format!("gra3: {}", v.gra3_witness.map_or("none", |o| o.name())),
            ];
            for (o, cols) in &v.overlays {
                let glyph = |c: Option<Color>| match c {
                    Some(Color::White) => '∘',
                    Some(Color::Black) => '●',
                    None => '·',
                };
                let row = |f: &dyn Fn(&uqso::schemes::Column) -> Option<Color>| {
                    cols.iter().map(|c| glyph(f(c)).to_string()).collect::<Vec<_>>().join(" ")
                };
                let labels: Vec<String> = cols.iter().map(|c| c.label.to_string()).collect();
                text.push(format!(
                    "{:<5}{}\n     {}\n     {}",
                    o.name(),
                    labels.join(" "),
                    row(&|c| c.top),
                    row(&|c| c.bottom)
                ));
            }
            let json = serde_json::to_value(&v).expect("serializable");
            Ok(Report { ok: v.passes, text: text.join("\n"), json })
        }
        SchemesCmd::Dual { at } => scheme_report(&at.scheme(n)?.complement_dual()),
        SchemesCmd::Star { at } => scheme_report(&at.scheme(n)?.star()),
    }
}

fn alg(spec: &ParamSpec, g: &Global, cmd: &AlgCmd) -> uqso::Result<Report> {
    let gens = Generators::new(spec);
    let quot = Quotient::new(spec, g.max_degree);
    let el = |s: &str| element(spec, &gens, s);
    let finish = |e: Element, out: &AlgOut| -> uqso::Result<Report> {
        Ok(elem_report(&if out.reduce { quot.nf(&e)? } else { e }))
    };
    match cmd {
        AlgCmd::Bracket { a, b, out } => finish(bracket(spec, &el(a)?, &el(b)?)?, out),
        AlgCmd::Mul { a, b, out } => finish(multiply(spec, &el(a)?, &el(b)?), out),
        AlgCmd::Nf { a } => Ok(elem_report(&quot.nf(&el(a)?)?)),
        AlgCmd::Antipode { a, out } => finish(antipode(spec, &el(a)?), out),
        AlgCmd::Coproduct { a, out } => {
            let mut t = coproduct(spec, &el(a)?);
            if out.reduce {
                t = quot.reduce_tensor(&t)?;
            }
            Ok(Report::ok(t.to_string(), t.to_json()))
        }
        AlgCmd::Derive { a, i, variant, out } => {
            if !(1..=spec.n).contains(i) {
                return Err(Error::Index(format!("derivative index {i} outside 1..={}", spec.n)));
            }
            finish(derive(spec, &el(a)?, *i, (*variant).into())?, out)
        }
    }
}

fn generators(spec: &ParamSpec, cmd: &GenCmd) -> uqso::Result<Report> {
    let gens = Generators::new(spec);
    match cmd {
        GenCmd::U { k, m, neg } => {
            let sign = if *neg { Sign::Negative } else { Sign::Positive };
            Ok(elem_report(&gens.u(*k, *m, sign)?))
        }
        GenCmd::Phi { at } => Ok(elem_report(&gens.phi(at.k, at.m, &at.set, at.sign())?)),
        GenCmd::Tables { kind } => {
            let rows = match kind {
                TableKind::Sigma => sigma_table(spec),
                TableKind::Mu => mu_table(spec),
            };
            let ok = rows.iter().all(|r| r.closed == r.direct);
            let text: Vec<String> = rows
                .iter()
                .map(|r| {
                    let idx = match r.i {
                        Some(i) => format!("k={} m={} i={}", r.k, r.m, i),
                        None => format!("k={} m={}", r.k, r.m),
                    };
                    let mark = if r.closed == r.direct { "" } else { "  MISMATCH" };
                    format!("{idx}: closed {} direct {}{mark}", r.closed, r.direct)
                })
                .collect();
            Ok(Report { ok, text: text.join("\n"), json: json!(rows) })
        }
    }
}

fn roots(g: &Global, cmd: &RootsCmd) -> uqso::Result<Report> {
    let n = g.n;
    match cmd {
        RootsCmd::Count => {
            let c = count_root_sequences(n);
            Ok(Report::ok(c.to_string(), json!(c.to_string())))
        }
        RootsCmd::List => {
            let all: Vec<Vec<u32>> = enumerate_root_sequences(n).map(|r| r.0).collect();
            let text: Vec<String> = all.iter().map(|r| format!("{r:?}")).collect();
            Ok(Report::ok(text.join("\n"), json!(all)))
        }
        RootsCmd::Sigma { at, member } => {
            let mon = at.scheme(n)?.sigma_generators();
            match member {
                None => {
                    let text: Vec<String> = mon.gens.iter().map(|d| format!("{d:?}")).collect();
                    Ok(Report::ok(text.join("\n"), json!({"generators": mon.gens})))
                }
                Some(d) => {
                    let d = parse_ints(d).map_err(Error::Parse)?;
                    if d.len() != n {
                        return Err(Error::Index(format!("degree needs {n} entries, got {}", d.len())));
                    }
                    let hit = mon.member(&d);
                    Ok(Report {
                        ok: hit,
                        text: hit.to_string(),
                        json: json!({"generators": mon.gens, "degree": d, "member": hit}),
                    })
                }
            }
        }
    }
}

fn verify(g: &Global, args: &VerifyArgs) -> uqso::Result<Report> {
    let names: Vec<&str> = if args.suite == "all" {
        SUITES.to_vec()
    } else {
        if !SUITES.contains(&args.suite.as_str()) {
            return Err(Error::UnknownSuite(args.suite.clone()));
        }
        vec![args.suite.as_str()]
    };
    let opts = Options {
        seed: g.seed.unwrap_or(0),
        trials: args.trials,
        max_degree: g.max_degree,
        jobs: args.jobs,
        ..Options::default()
    };
    let mut reports = Vec::new();
    let mut lines = Vec::new();
    for spec in specs(g, true)? {
        for name in &names {
            let r = run_suite(name, &spec, &opts)?;
            lines.push(format!(
                "{:<24} q={} {} {}/{} passed, {} skipped, {} ms",
                r.suite,
                spec.q,
                if r.pass { "PASS" } else { "FAIL" },
                r.passed,
                r.cases,
                r.skipped.len(),
                r.wall_ms
            ));
            reports.push(r);
        }
    }
    let ok = reports.iter().all(|r| r.pass);
    let json = serde_json::to_value(&reports).expect("serializable");
    if let Some(path) = &args.out {
        let body = serde_json::to_string_pretty(&json).expect("serializable");
        fs::write(path, body).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        return Ok(Report { ok, text: lines.join("\n"), json: json!({"written": path, "pass": ok}) });
    }
    // the report itself is the output, in both modes
    Ok(Report { ok, text: serde_json::to_string_pretty(&json).expect("serializable"), json })
}

fn run(cli: &Cli) -> uqso::Result<Report> {
    let g = &cli.global;
    match &cli.cmd {
        Cmd::Params => {
            let s = specs(g, false)?.remove(0);
            Ok(Report::ok(s.to_string(), s.to_json()))
        }
        Cmd::Schemes { cmd } => schemes(g, cmd),
        Cmd::Alg { cmd } => alg(&specs(g, false)?.remove(0), g, cmd),
        Cmd::Gen { cmd } => generators(&specs(g, false)?.remove(0), cmd),
        Cmd::Roots { cmd } => roots(g, cmd),
        Cmd::Verify(args) => verify(g, args),
    }
}

/// Bad input is a usage error; anything else is a failed computation.
fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Index(_)
        | Error::InvalidParameter(_)
        | Error::UnknownSuite(_)
        | Error::StyleNotApplicable(_)
        | Error::NotRegular(_)
        | Error::MixedSign { .. }
        | Error::Homogeneity { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            let body = if cli.global.json {
                serde_json::to_string_pretty(&r.json).expect("serializable")
            } else {
                r.text
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(io::stdout().lock(), "{body}");
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
