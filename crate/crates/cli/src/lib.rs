//! Command-line front end for `branchjac`.
//!
//! [`run`] takes the argument vector and returns the captured output and exit
//! code, so the whole interface can be tested in-process. Exit codes: 0 ok,
//! 1 validation failure, 2 verification mismatch, 3 parse error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use branchjac::{
    jacobian_invariants, jnd_family, jnd_formula, jnd_oracle, parse_family_json, parse_poly,
    recover_semigroup_indexed, semigroup_of, verify_decomposition, Branch, Error, JndFamily,
    NewtonDiagram, Semigroup, VerificationReport,
};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Parser, Debug)]
#[command(
    name = "branchjac",
    version,
    about = "Approximate roots, semigroups and approximate jacobian Newton diagrams of plane branches"
)]
struct Cli {
    /// Run one task per line of FILE (arguments as on the command line).
    #[arg(long, value_name = "FILE")]
    batch: Option<PathBuf>,

    /// Emit JSON instead of text (also applies to every batch task).
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Semigroup, characteristic, l and n sequences and Milnor number of a branch.
    Semigroup {
        #[arg(long = "f", value_name = "EXPR")]
        f: String,
    },
    /// Characteristic approximate roots f^(0), ..., f^(g-1).
    Roots {
        #[arg(long = "f", value_name = "EXPR")]
        f: String,
    },
    /// Approximate jacobian Newton diagrams from the closed formula.
    Jnd(JndArgs),
    /// Contact-class verification report of jac(f^(k), f).
    Verify {
        #[arg(long = "f", value_name = "EXPR")]
        f: String,
        #[arg(long, default_value = "all", value_name = "K|all")]
        k: KSel,
    },
    /// Recover the semigroup from a diagram family JSON file.
    Recover {
        #[arg(long, value_name = "FILE")]
        family: PathBuf,
    },
    /// Jacobian invariants (inclinations of N_J(f^(k), f)).
    Invariants {
        #[arg(long, value_name = "a,b,...")]
        semigroup: String,
        #[arg(long, default_value = "all", value_name = "K|all")]
        k: KSel,
    },
    /// Show two semigroup pairs that share a diagram at k = 1.
    DemoNoninjectivity,
}

#[derive(Args, Debug)]
struct JndArgs {
    #[arg(
        long,
        value_name = "a,b,...",
        required_unless_present = "f",
        conflicts_with = "f"
    )]
    semigroup: Option<String>,
    #[arg(long = "f", value_name = "EXPR")]
    f: Option<String>,
    #[arg(long, default_value = "all", value_name = "K|all")]
    k: KSel,
    /// Write the diagram as SVG; with several k, one file per k (`name.kK.svg`).
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Compare with the numeric oracle and print the verification report (needs --f).
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Clone, Copy)]
enum KSel {
    All,
    One(usize),
}

impl std::str::FromStr for KSel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(KSel::All);
        }
        s.parse()
            .map(KSel::One)
            .map_err(|_| format!("expected a non-negative integer or 'all', got {s:?}"))
    }
}

impl KSel {
    fn indices(self, g: usize) -> Result<Vec<usize>, Error> {
        if g == 0 {
            return Err(Error::SmoothBranch);
        }
        match self {
            KSel::All => Ok((0..g).collect()),
            KSel::One(k) if k < g => Ok(vec![k]),
            KSel::One(k) => Err(Error::IndexOutOfRange { k, g }),
        }
    }
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Json(_) => EXIT_PARSE,
            _ => EXIT_VALIDATION,
        };
        Failure {
            code,
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

impl Failure {
    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            kind: "io".into(),
            message: format!("{}: {e}", path.display()),
        }
    }
}

/// Successful output plus an exit code (nonzero for a verification mismatch).
struct Done {
    text: String,
    json: Value,
    code: i32,
}

impl Done {
    fn ok(text: String, json: Value) -> Self {
        Done {
            text,
            json,
            code: EXIT_OK,
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code,
                }
            } else {
                Outcome {
                    stdout: rendered,
                    stderr: String::new(),
                    code,
                }
            };
        }
    };
    if let Some(path) = &cli.batch {
        if cli.command.is_some() {
            return Outcome {
                stdout: String::new(),
                stderr: "--batch cannot be combined with a subcommand\n".into(),
                code: EXIT_PARSE,
            };
        }
        return run_batch(path, cli.json);
    }
    match cli.command {
        Some(cmd) => finish(execute(cmd), cli.json),
        None => Outcome {
            stdout: String::new(),
            stderr: "no subcommand given; see --help\n".into(),
            code: EXIT_PARSE,
        },
    }
}

fn finish(result: Result<Done, Failure>, json: bool) -> Outcome {
    match result {
        Ok(done) => Outcome {
            stdout: if json { pretty(&done.json) } else { done.text },
            stderr: String::new(),
            code: done.code,
        },
        Err(f) => Outcome {
            stdout: String::new(),
            stderr: if json {
                pretty(
                    &json!({"error": {"kind": f.kind, "message": f.message, "exit_code": f.code}}),
                )
            } else {
                format!("error: {}\n", f.message)
            },
            code: f.code,
        },
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON serializes");
    s.push('\n');
    s
}

/// Tasks run in parallel; outputs are concatenated in input order and the exit
/// code is the largest one seen.
fn run_batch(path: &Path, json: bool) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return finish(Err(Failure::io(path, e)), json),
    };
    let tasks: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let outcomes: Vec<Outcome> = tasks
        .par_iter()
        .map(|&(line, task)| {
            let Some(words) = shlex::split(task) else {
                return Outcome {
                    stdout: String::new(),
                    stderr: format!("line {line}: unbalanced quotes\n"),
                    code: EXIT_PARSE,
                };
            };
            if words.iter().any(|w| w == "--batch") {
                return Outcome {
                    stdout: String::new(),
                    stderr: format!("line {line}: nested --batch is not allowed\n"),
                    code: EXIT_PARSE,
                };
            }
            let mut argv = vec!["branchjac".to_string()];
            if json {
                argv.push("--json".into());
            }
            argv.extend(words);
            run(argv)
        })
        .collect();
    let mut out = Outcome::default();
    for (&(line, task), o) in tasks.iter().zip(outcomes) {
        if !json {
            let _ = writeln!(out.stdout, "# line {line}: {task}");
        }
        out.stdout.push_str(&o.stdout);
        if !o.stderr.is_empty() {
            let _ = write!(out.stderr, "line {line}: {}", o.stderr);
        }
        out.code = out.code.max(o.code);
    }
    out
}

fn execute(cmd: Command) -> Result<Done, Failure> {
    match cmd {
        Command::Semigroup { f } => cmd_semigroup(&f),
        Command::Roots { f } => cmd_roots(&f),
        Command::Jnd(args) => cmd_jnd(args),
        Command::Verify { f, k } => cmd_verify(&f, k),
        Command::Recover { family } => cmd_recover(&family),
        Command::Invariants { semigroup, k } => cmd_invariants(&semigroup, k),
        Command::DemoNoninjectivity => cmd_demo(),
    }
}

fn csv(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn vertex_chain(d: &NewtonDiagram) -> String {
    d.vertices()
        .iter()
        .map(|(a, b)| format!("({a},{b})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn diagram_json(k: usize, d: &NewtonDiagram) -> Value {
    let segments: Vec<Value> = d
        .canonical_decomposition()
        .iter()
        .map(|s| json!([s.length, s.height]))
        .collect();
    json!({"k": k, "segments": segments})
}

fn cmd_semigroup(src: &str) -> Result<Done, Failure> {
    let f = parse_poly(src)?;
    let s = semigroup_of(&f)?;
    let c = s.characteristic();
    let l = s.l_seq().to_vec();
    let n = s.n_seq();
    let mu = s.milnor();
    let text = format!(
        "semigroup: {s}\ncharacteristic: {c}\nl: {}\nn: {}\nmilnor: {mu}\n",
        csv(&l),
        csv(&n)
    );
    let json = json!({
        "semigroup": s.gens(),
        "characteristic": c.values(),
        "l": l,
        "n": n,
        "milnor": mu,
    });
    Ok(Done::ok(text, json))
}

fn cmd_roots(src: &str) -> Result<Done, Failure> {
    let f = parse_poly(src)?;
    let b = Branch::new(&f)?;
    let mut text = format!("semigroup: {}\n", b.semigroup);
    let mut roots = Vec::new();
    for (k, r) in b.roots.iter().enumerate() {
        let _ = writeln!(text, "f^({k}) = {r}");
        roots.push(json!({"k": k, "l": b.semigroup.l(k), "root": r.to_string()}));
    }
    Ok(Done::ok(
        text,
        json!({"semigroup": b.semigroup.gens(), "roots": roots}),
    ))
}

fn parse_semigroup(src: &str) -> Result<Semigroup, Failure> {
    src.parse::<Semigroup>().map_err(|e| {
        let mut f = Failure::from(e);
        if f.kind == "invalid_semigroup" && f.message.contains("bad integer") {
            f.code = EXIT_PARSE;
        }
        f
    })
}

fn svg_path(base: &Path, k: usize, many: bool) -> PathBuf {
    if !many {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("jnd");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("svg");
    base.with_file_name(format!("{stem}.k{k}.{ext}"))
}

fn cmd_jnd(args: JndArgs) -> Result<Done, Failure> {
    let f = args.f.as_deref().map(parse_poly).transpose()?;
    let s = match (&args.semigroup, &f) {
        (Some(src), _) => parse_semigroup(src)?,
        (None, Some(f)) => semigroup_of(f)?,
        (None, None) => unreachable!("clap requires one of --semigroup and --f"),
    };
    let ks = args.k.indices(s.g())?;
    let diagrams = ks
        .iter()
        .map(|&k| jnd_formula(&s, k))
        .collect::<Result<Vec<_>, _>>()?;

    let mut text = format!("semigroup: {s}\n");
    for (&k, d) in ks.iter().zip(&diagrams) {
        let _ = writeln!(text, "N_J(f^({k}), f) = {}", d.notation());
        let _ = writeln!(text, "  vertices: {}", vertex_chain(d));
    }
    let mut json = json!({
        "semigroup": s.gens(),
        "diagrams": ks.iter().zip(&diagrams).map(|(&k, d)| diagram_json(k, d)).collect::<Vec<_>>(),
    });

    if let Some(base) = &args.svg {
        for (&k, d) in ks.iter().zip(&diagrams) {
            let path = svg_path(base, k, ks.len() > 1);
            std::fs::write(&path, d.render_svg()).map_err(|e| Failure::io(&path, e))?;
        }
    }

    let mut code = EXIT_OK;
    if args.verify {
        let Some(f) = f else {
            return Err(Failure {
                code: EXIT_PARSE,
                kind: "usage".into(),
                message: "--verify needs a polynomial given with --f".into(),
            });
        };
        let checked: Vec<(usize, Result<NewtonDiagram, Error>, VerificationReport)> = ks
            .par_iter()
            .map(|&k| -> Result<_, Error> {
                Ok((k, jnd_oracle(&f, k), verify_decomposition(&f, k)?))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut oracle_json = Vec::new();
        let mut reports = Vec::new();
        for ((k, oracle, report), formula) in checked.into_iter().zip(&diagrams) {
            let agree = matches!(&oracle, Ok(o) if o == formula);
            if !agree || !report.passed() {
                code = EXIT_MISMATCH;
            }
            match &oracle {
                Ok(o) => {
                    let _ = writeln!(
                        text,
                        "oracle k={k}: {} ({})",
                        o.notation(),
                        if agree { "agrees" } else { "MISMATCH" }
                    );
                    oracle_json
                        .push(json!({"k": k, "diagram": diagram_json(k, o), "agrees": agree}));
                }
                Err(e) => {
                    let _ = writeln!(text, "oracle k={k}: failed: {e}");
                    oracle_json.push(json!({"k": k, "error": e.to_string(), "agrees": false}));
                }
            }
            let _ = write!(text, "{report}");
            reports.push(report.to_json());
        }
        json["oracle"] = Value::Array(oracle_json);
        json["reports"] = Value::Array(reports);
        json["pass"] = Value::Bool(code == EXIT_OK);
        let _ = writeln!(
            text,
            "{}",
            if code == EXIT_OK {
                "verification: PASS"
            } else {
                "verification: FAIL"
            }
        );
    }
    Ok(Done { text, json, code })
}

fn cmd_verify(src: &str, k: KSel) -> Result<Done, Failure> {
    let f = parse_poly(src)?;
    let s = semigroup_of(&f)?;
    let ks = k.indices(s.g())?;
    let reports = ks
        .par_iter()
        .map(|&k| verify_decomposition(&f, k))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = reports.iter().all(VerificationReport::passed);
    let mut text = format!("semigroup: {s}\n");
    for r in &reports {
        let _ = write!(text, "{r}");
    }
    let _ = writeln!(text, "verification: {}", if pass { "PASS" } else { "FAIL" });
    let json = json!({
        "semigroup": s.gens(),
        "reports": reports.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
        "pass": pass,
    });
    Ok(Done {
        text,
        json,
        code: if pass { EXIT_OK } else { EXIT_MISMATCH },
    })
}

fn cmd_recover(path: &Path) -> Result<Done, Failure> {
    let raw = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let v: Value = serde_json::from_str(&raw).map_err(|e| Error::Json(e.to_string()))?;
    let (claimed, entries) = parse_family_json(&v)?;
    let s = recover_semigroup_indexed(&entries)?;
    let mut code = EXIT_OK;
    let mut text = format!("{}\n", s.to_csv());
    if let Some(c) = &claimed {
        if c.as_slice() != s.gens() {
            code = EXIT_MISMATCH;
            let _ = writeln!(
                text,
                "warning: file claims semigroup {} but the diagrams give {}",
                csv(c),
                s.to_csv()
            );
        }
    }
    let json = json!({
        "semigroup": s.gens(),
        "claimed": claimed,
        "consistent": code == EXIT_OK,
    });
    Ok(Done { text, json, code })
}

fn cmd_invariants(src: &str, k: KSel) -> Result<Done, Failure> {
    let s = parse_semigroup(src)?;
    let ks = k.indices(s.g())?;
    let mut text = format!("semigroup: {s}\n");
    let mut out = Vec::new();
    for k in ks {
        let inv = jacobian_invariants(&s, k)?;
        let strs: Vec<String> = inv.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "k={k}: {}", strs.join(", "));
        out.push(json!({"k": k, "invariants": strs}));
    }
    Ok(Done::ok(
        text,
        json!({"semigroup": s.gens(), "invariants": out}),
    ))
}

/// Two pairs of semigroups whose diagrams at `k = 1` coincide although the
/// full families differ.
pub const COLLISIONS: [([u64; 3], [u64; 3]); 2] =
    [([4, 14, 31], [4, 6, 35]), ([4, 6, 37], [6, 10, 31])];

fn cmd_demo() -> Result<Done, Failure> {
    let mut text = String::new();
    let mut pairs = Vec::new();
    let mut families: Vec<JndFamily> = Vec::new();
    for (a, b) in COLLISIONS {
        let sa = Semigroup::new(a.to_vec())?;
        let sb = Semigroup::new(b.to_vec())?;
        let da = jnd_formula(&sa, 1)?;
        let db = jnd_formula(&sb, 1)?;
        let _ = writeln!(
            text,
            "k=1: {sa} -> {}   {sb} -> {}   {}",
            da.notation(),
            db.notation(),
            if da == db { "equal" } else { "different" }
        );
        pairs.push(json!({
            "semigroups": [sa.gens(), sb.gens()],
            "k1": [diagram_json(1, &da), diagram_json(1, &db)],
            "equal": da == db,
        }));
        families.push(jnd_family(&sa)?);
        families.push(jnd_family(&sb)?);
    }
    let _ = writeln!(text, "full families:");
    for fam in &families {
        let notes: Vec<String> = fam.diagrams.iter().map(NewtonDiagram::notation).collect();
        let _ = writeln!(text, "  {}: {}", fam.semigroup, notes.join(" | "));
    }
    let distinct = (0..families.len())
        .all(|i| (i + 1..families.len()).all(|j| families[i].diagrams != families[j].diagrams));
    let _ = writeln!(
        text,
        "full families pairwise distinct: {}",
        if distinct { "yes" } else { "no" }
    );
    let json = json!({
        "collisions": pairs,
        "families": families.iter().map(JndFamily::to_json).collect::<Vec<_>>(),
        "pairwise_distinct": distinct,
    });
    Ok(Done::ok(text, json))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn svg_names_per_k() {
        let base = Path::new("/tmp/out/diag.svg");
        assert_eq!(svg_path(base, 1, false), base);
        assert_eq!(svg_path(base, 1, true), Path::new("/tmp/out/diag.k1.svg"));
    }
}
