//! The `hpoly` command line.
//!
//! [`run`] parses arguments and returns the exit code together with
//! everything the process would print, so tests can drive it in-process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hpoly_core::descent::build_descent_system;
use hpoly_core::hpoly::{
    eulerian, length_poly, permutahedron_h, rank2_h, simple_embedding_h, toric_poincare,
    wonderful_h, HPolyReport, RankTwoCase,
};
use hpoly_core::oracle::monoid_h;
use hpoly_core::smooth::{
    compare_with_table, enumerate_smooth_subsets, is_combinatorially_smooth,
    tabulated_smooth_subsets,
};
use hpoly_core::{CartanType, Error, IntPoly, Limits, NodeSet, RootSystem, WeylGroup};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_SMOOTH: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Latex,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "hpoly",
    version,
    about = "Length polynomials, descent systems and H-polynomials of group embeddings"
)]
struct Cli {
    /// Output format. Non-polynomial reports print as plain text under `latex`.
    #[arg(long, value_enum, default_value = "plain", global = true)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// key=value file overriding the enumeration caps.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct TypeJ {
    /// Cartan type, e.g. A3, B4, E6.
    #[arg(long = "type")]
    cartan_type: String,
    /// Subset J of the simple reflections, e.g. s1,s3 (empty by default).
    #[arg(long, default_value = "")]
    j: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Σ t^l(w) over W^J.
    LengthPoly {
        #[command(flatten)]
        tj: TypeJ,
        /// Emit the polynomial in t^2.
        #[arg(long)]
        poincare: bool,
    },
    /// Eulerian polynomial of S_n.
    Eulerian {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        poincare: bool,
    },
    /// h-polynomial of the permutahedron from its face lattice.
    PermutahedronH {
        #[arg(long)]
        n: usize,
    },
    /// Minimal coset representatives W^J.
    Wj {
        #[command(flatten)]
        tj: TypeJ,
    },
    /// Descent system and augmented poset of J.
    Descent {
        #[command(flatten)]
        tj: TypeJ,
    },
    /// Decide combinatorial smoothness of J.
    SmoothCheck {
        #[command(flatten)]
        tj: TypeJ,
    },
    /// All combinatorially smooth proper subsets.
    SmoothList {
        #[arg(long = "type")]
        cartan_type: String,
    },
    /// Poincaré polynomial of the toric variety X(J).
    ToricPoincare {
        #[command(flatten)]
        tj: TypeJ,
    },
    /// H-polynomials of embeddings.
    Hpoly {
        #[command(subcommand)]
        kind: HpolyKind,
    },
    /// Brute-force orbit oracle.
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
    },
}

#[derive(Debug, Subcommand)]
enum HpolyKind {
    /// Simple embedding of type J.
    Simple {
        #[command(flatten)]
        tj: TypeJ,
        #[arg(long)]
        poincare: bool,
    },
    /// Wonderful compactification.
    Wonderful {
        #[arg(long = "type")]
        cartan_type: String,
        #[arg(long)]
        poincare: bool,
    },
    /// Projective semisimple rank-two embedding.
    Rank2 {
        /// I, II or III.
        #[arg(long)]
        case: String,
        /// Length N of the longest Weyl group element: 3, 4 or 6.
        #[arg(long = "n-long")]
        n_long: u32,
        /// Number of closed orbits isomorphic to G/B × G/B.
        #[arg(long)]
        k: u32,
        #[arg(long)]
        poincare: bool,
    },
}

#[derive(Debug, Subcommand)]
enum OracleKind {
    /// B×B-orbits on M_n(F_q).
    Mn {
        #[arg(long)]
        n: usize,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        q: Vec<u64>,
    },
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NotSmooth { .. } | Error::DeltaUndefined { .. } => EXIT_NOT_SMOOTH,
        Error::CapExceeded { .. } | Error::OracleScale(_) => EXIT_CAP,
        Error::NoFit(_) | Error::AmbiguousFit(_) | Error::PartitionMismatch(_) => EXIT_INTERNAL,
        _ => EXIT_INVALID,
    }
}

/// Runs the command line with `args` (program name first).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let limits = match load_limits(&cli) {
        Ok(l) => l,
        Err(e) => return failure(e),
    };
    match dispatch(&cli, limits) {
        Ok((code, text)) => match &cli.out {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => Outcome {
                    code,
                    stdout: String::new(),
                    stderr: String::new(),
                },
                Err(e) => Outcome {
                    code: EXIT_INTERNAL,
                    stdout: String::new(),
                    stderr: format!("error: cannot write {}: {e}\n", path.display()),
                },
            },
            None => Outcome {
                code,
                stdout: text,
                stderr: String::new(),
            },
        },
        Err(e) => failure(e),
    }
}

fn failure(e: CliError) -> Outcome {
    let (code, msg) = match e {
        CliError::Core(e) => (exit_code(&e), e.to_string()),
        CliError::Io(msg) => (EXIT_INVALID, msg),
    };
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

enum CliError {
    Core(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn load_limits(cli: &Cli) -> CliResult<Limits> {
    let mut limits = Limits::from_env()?;
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        limits.apply_config(&text)?;
    }
    Ok(limits)
}

fn parse_type(s: &str) -> CliResult<RootSystem> {
    let ct: CartanType = s.parse()?;
    Ok(RootSystem::new(ct))
}

fn parse_tj(tj: &TypeJ) -> CliResult<(RootSystem, NodeSet)> {
    let rs = parse_type(&tj.cartan_type)?;
    let j = NodeSet::parse(&tj.j, rs.rank())?;
    Ok((rs, j))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn subset_json(j: NodeSet) -> Value {
    serde_json::to_value(j).expect("NodeSet serialises")
}

fn poly_text(p: &IntPoly, format: Format) -> String {
    match format {
        Format::Latex => format!("{}\n", p.to_latex()),
        _ => format!("{}\n", p.to_plain()),
    }
}

fn emit_poly(format: Format, p: &IntPoly, provenance: Value) -> String {
    match format {
        Format::Json => {
            let mut v = provenance;
            v["polynomial"] = p.to_json();
            pretty(&v)
        }
        _ => poly_text(p, format),
    }
}

fn emit_report(format: Format, report: &HPolyReport, poincare: bool, provenance: Value) -> String {
    let shown = if poincare {
        &report.poincare
    } else {
        &report.h
    };
    match format {
        Format::Json => {
            let mut v = provenance;
            let body = report.to_json();
            for (k, val) in body.as_object().expect("report is an object") {
                v[k] = val.clone();
            }
            v["emitted"] = json!(if poincare { "poincare" } else { "h" });
            pretty(&v)
        }
        Format::Latex => match (&report.factors, poincare) {
            (Some((a, b)), false) => format!(
                "\\left[{}\\right]\\left[{}\\right] = {}\n",
                a.to_latex(),
                b.to_latex(),
                shown.to_latex()
            ),
            _ => format!("{}\n", shown.to_latex()),
        },
        Format::Plain => {
            let mut out = String::new();
            if let (Some((a, b)), false) = (&report.factors, poincare) {
                let _ = writeln!(out, "[{}] * [{}]", a.to_plain(), b.to_plain());
                let _ = writeln!(out, "= {}", shown.to_plain());
            } else {
                let _ = writeln!(out, "{}", shown.to_plain());
            }
            out
        }
    }
}

fn dispatch(cli: &Cli, limits: Limits) -> CliResult<(i32, String)> {
    let format = cli.format;
    let text = match &cli.command {
        Command::LengthPoly { tj, poincare } => {
            let (rs, j) = parse_tj(tj)?;
            let p = length_poly(&WeylGroup::with_limits(&rs, limits), j)?;
            let p = if *poincare { p.substitute_square() } else { p };
            emit_poly(
                format,
                &p,
                json!({
                    "command": "length-poly",
                    "type": rs.cartan_type(),
                    "j": subset_json(j),
                    "formula": if *poincare { "sum over W^J of t^(2 l(w))" } else { "sum over W^J of t^l(w)" },
                }),
            )
        }
        Command::Eulerian { n, poincare } => {
            let p = eulerian(*n, &limits)?;
            let p = if *poincare { p.substitute_square() } else { p };
            emit_poly(
                format,
                &p,
                json!({"command": "eulerian", "n": n, "formula": "sum over S_n of t^asc"}),
            )
        }
        Command::PermutahedronH { n } => {
            let p = permutahedron_h(*n, &limits)?;
            emit_poly(
                format,
                &p,
                json!({"command": "permutahedron-h", "n": n, "formula": "sum over faces of (t-1)^dim"}),
            )
        }
        Command::Wj { tj } => {
            let (rs, j) = parse_tj(tj)?;
            let g = WeylGroup::with_limits(&rs, limits);
            let q = g.quotient(j)?;
            match format {
                Format::Json => pretty(&json!({
                    "command": "wj",
                    "type": rs.cartan_type(),
                    "j": subset_json(j),
                    "size": q.len(),
                    "histogram": q.length_histogram(),
                    "elements": q.elements().iter().map(|w| g.record(w)).collect::<Vec<_>>(),
                })),
                _ => {
                    let mut out = String::new();
                    let _ = writeln!(
                        out,
                        "W^J for {} with J = {j}: {} elements",
                        rs.cartan_type(),
                        q.len()
                    );
                    let _ = writeln!(out, "length histogram: {:?}", q.length_histogram());
                    for w in q.elements() {
                        let _ = writeln!(out, "{}\t{}", w.length(), g.word_string(w));
                    }
                    out
                }
            }
        }
        Command::Descent { tj } => {
            let (rs, j) = parse_tj(tj)?;
            let g = WeylGroup::with_limits(&rs, limits);
            let ds = build_descent_system(&g, j)?;
            let stats = ds.nu_stats();
            let dump = ds.dump(&stats);
            match format {
                Format::Json => {
                    let mut v = json!({"command": "descent"});
                    let body = serde_json::to_value(&dump).expect("dump serialises");
                    for (k, val) in body.as_object().expect("dump is an object") {
                        v[k] = val.clone();
                    }
                    pretty(&v)
                }
                _ => {
                    let mut out = String::new();
                    let _ = writeln!(
                        out,
                        "descent system of {} with J = {j}: |W^J| = {}, |S^J| = {}",
                        rs.cartan_type(),
                        ds.quotient().len(),
                        ds.descent_set_len()
                    );
                    for c in &dump.classes {
                        let delta = c.delta.map_or("undefined".to_string(), |d| d.to_string());
                        let _ = writeln!(
                            out,
                            "S^J_{}: delta = {delta}: {}",
                            c.node,
                            c.elements.join(" ")
                        );
                    }
                    let names: Vec<&str> = dump.classes.iter().map(|c| c.node.as_str()).collect();
                    let _ = writeln!(
                        out,
                        "length\tword\t{}\tnu\tnu_weighted",
                        names
                            .iter()
                            .map(|n| format!("nu_{n}"))
                            .collect::<Vec<_>>()
                            .join("\t")
                    );
                    for e in &dump.elements {
                        let nus: Vec<String> = e.nu.values().map(|v| v.to_string()).collect();
                        let weighted = e.nu_weighted.map_or("-".to_string(), |x| x.to_string());
                        let _ = writeln!(
                            out,
                            "{}\t{}\t{}\t{}\t{weighted}",
                            e.length,
                            e.word,
                            nus.join("\t"),
                            e.nu_plain
                        );
                    }
                    out
                }
            }
        }
        Command::SmoothCheck { tj } => {
            let (rs, j) = parse_tj(tj)?;
            let verdict = is_combinatorially_smooth(&rs, j)?;
            let code = if verdict.smooth {
                EXIT_OK
            } else {
                EXIT_NOT_SMOOTH
            };
            let text = match format {
                Format::Json => pretty(&json!({
                    "command": "smooth-check",
                    "type": rs.cartan_type(),
                    "j": subset_json(j),
                    "smooth": verdict.smooth,
                    "violations": verdict.violations,
                    "reasons": verdict.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                })),
                _ => {
                    let mut out = format!(
                        "{} J = {j}: {}\n",
                        rs.cartan_type(),
                        if verdict.smooth {
                            "smooth"
                        } else {
                            "not smooth"
                        }
                    );
                    for v in &verdict.violations {
                        let _ = writeln!(out, "  - {v}");
                    }
                    out
                }
            };
            return Ok((code, text));
        }
        Command::SmoothList { cartan_type } => {
            let rs = parse_type(cartan_type)?;
            smooth_list(&rs, format)?
        }
        Command::ToricPoincare { tj } => {
            let (rs, j) = parse_tj(tj)?;
            let p = toric_poincare(&WeylGroup::with_limits(&rs, limits), j)?;
            emit_poly(
                format,
                &p,
                json!({
                    "command": "toric-poincare",
                    "type": rs.cartan_type(),
                    "j": subset_json(j),
                    "formula": "sum over W^J of t^(2 nu(w))",
                }),
            )
        }
        Command::Hpoly { kind } => match kind {
            HpolyKind::Simple { tj, poincare } => {
                let (rs, j) = parse_tj(tj)?;
                let r = simple_embedding_h(&WeylGroup::with_limits(&rs, limits), j)?;
                emit_report(
                    format,
                    &r,
                    *poincare,
                    json!({"command": "hpoly", "kind": "simple", "type": rs.cartan_type(), "j": subset_json(j)}),
                )
            }
            HpolyKind::Wonderful {
                cartan_type,
                poincare,
            } => {
                let rs = parse_type(cartan_type)?;
                let r = wonderful_h(&WeylGroup::with_limits(&rs, limits))?;
                emit_report(
                    format,
                    &r,
                    *poincare,
                    json!({"command": "hpoly", "kind": "wonderful", "type": rs.cartan_type(), "j": []}),
                )
            }
            HpolyKind::Rank2 {
                case,
                n_long,
                k,
                poincare,
            } => {
                let case: RankTwoCase = case.parse()?;
                let r = rank2_h(case, *n_long, *k)?;
                emit_report(
                    format,
                    &r,
                    *poincare,
                    json!({
                        "command": "hpoly",
                        "kind": "rank2",
                        "case": case.to_string(),
                        "n_long": n_long,
                        "k": k,
                    }),
                )
            }
        },
        Command::Oracle { kind } => match kind {
            OracleKind::Mn { n, q } => {
                let report = monoid_h(*n, q)?;
                match format {
                    Format::Json => pretty(&json!({
                        "command": "oracle",
                        "monoid": format!("M{n}"),
                        "qs": report.qs,
                        "representatives": report.profiles.iter().map(|p| json!({
                            "rep": p.rep,
                            "sizes": p.sizes.iter().map(|(q, s)| (q.to_string(), json!(s))).collect::<serde_json::Map<_, _>>(),
                            "a": p.a,
                            "b": p.b,
                        })).collect::<Vec<_>>(),
                        "polynomial": report.h.to_json(),
                    })),
                    _ => {
                        let mut out = String::new();
                        let heads: Vec<String> =
                            report.qs.iter().map(|q| format!("q={q}")).collect();
                        let _ = writeln!(out, "rep\t{}\ta\tb\tterm", heads.join("\t"));
                        for p in &report.profiles {
                            let sizes: Vec<String> =
                                p.sizes.values().map(|s| s.to_string()).collect();
                            let _ = writeln!(
                                out,
                                "{}\t{}\t{}\t{}\t{}",
                                p.rep,
                                sizes.join("\t"),
                                p.a,
                                p.b,
                                term_text(p.a, p.b)
                            );
                        }
                        let h = if format == Format::Latex {
                            report.h.to_latex()
                        } else {
                            report.h.to_plain()
                        };
                        let _ = writeln!(out, "H(t) = {h}");
                        out
                    }
                }
            }
        },
    };
    Ok((EXIT_OK, text))
}

fn term_text(a: u32, b: u32) -> String {
    let left = match a {
        0 => String::new(),
        1 => "(t-1)".to_string(),
        _ => format!("(t-1)^{a}"),
    };
    let right = match b {
        0 => String::new(),
        1 => "t".to_string(),
        _ => format!("t^{b}"),
    };
    match (left.is_empty(), right.is_empty()) {
        (true, true) => "1".to_string(),
        (false, false) => format!("{left} {right}"),
        _ => format!("{left}{right}"),
    }
}

fn smooth_list(rs: &RootSystem, format: Format) -> CliResult<String> {
    let ct = rs.cartan_type();
    let computed = enumerate_smooth_subsets(rs);
    let table = tabulated_smooth_subsets(ct);
    let cmp = compare_with_table(rs);
    let item_of = |j: &NodeSet| table.iter().find(|e| e.subset == *j).map(|e| e.item);
    Ok(match format {
        Format::Json => pretty(&json!({
            "command": "smooth-list",
            "type": ct,
            "count": computed.len(),
            "subsets": computed.iter().map(|j| json!({
                "j": subset_json(*j),
                "item": item_of(j).map(|c| c.to_string()),
            })).collect::<Vec<_>>(),
            "table_comparison": {
                "exact": cmp.is_exact(),
                "computed_only": cmp.computed_only,
                "table_only": cmp.table_only,
            },
        })),
        _ => {
            let mut out = format!("{ct}: {} smooth proper subsets\n", computed.len());
            let mut items: Vec<char> = table.iter().map(|e| e.item).collect();
            items.dedup();
            for item in items {
                let members: Vec<String> = computed
                    .iter()
                    .filter(|j| item_of(j) == Some(item))
                    .map(|j| j.to_string())
                    .collect();
                if !members.is_empty() {
                    let _ = writeln!(out, "({item}) {}", members.join(", "));
                }
            }
            if !cmp.computed_only.is_empty() {
                let names: Vec<String> = cmp.computed_only.iter().map(|j| j.to_string()).collect();
                let _ = writeln!(out, "smooth but not in the table: {}", names.join(", "));
            }
            if !cmp.table_only.is_empty() {
                let names: Vec<String> = cmp.table_only.iter().map(|j| j.to_string()).collect();
                let _ = writeln!(out, "in the table but not smooth: {}", names.join(", "));
            }
            out
        }
    })
}
