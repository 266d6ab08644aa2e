use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use homext::annulus::{ArcDiagram, ClosedCurve};
use homext::enumerate::complete_exceptional_sets;
use homext::hequiver::{
    build_algebraic, build_geometric, check_distinct, count_linear_extensions, exceptional_orderings, is_exceptional_set,
    HomExtQuiver,
};
use homext::hom::{ext_basis, graph_maps, ConnectionSide, ExtClass, GraphMap};
use homext::io::{check_range, format_collection, parse_collection, parse_module_arg, report};
use homext::linalg::Fp;
use homext::oracle::string_dims;
use homext::qwr::{is_gentle, iso_with_relations, QuiverWithRelations};
use homext::render::render_svg;
use homext::superquiver::{defining_representation, from_homext, is_irreducible, twist_equivalent_super, Superquiver};
use homext::twist::{classify, find_equivalence, twist, Equivalence, TwistWord, DEFAULT_WINDOW};
use homext::{Orientation, StringModule};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

/// Exceptional collections over type Ã quivers.
#[derive(Parser)]
#[command(name = "homext", version)]
struct Cli {
    /// Orientation vector such as "+-+-"; entry k is + when arrow k points k → k+1.
    #[arg(long, global = true, allow_hyphen_values = true)]
    quiver: Option<String>,
    /// Twist search window.
    #[arg(long, global = true, default_value_t = DEFAULT_WINDOW)]
    window: i64,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimension and graph-map basis of Hom(M1, M2).
    Hom { m1: String, m2: String },
    /// Dimension and basis of Ext(M1, M2).
    Ext { m1: String, m2: String },
    /// Hom-Ext quiver, orderings and exceptionality of a collection file.
    Hequiver { file: PathBuf },
    /// Exceptional orderings of a collection.
    Orderings { file: PathBuf },
    /// Cross-check every construction on a collection; exit 3 on disagreement.
    Check { file: PathBuf },
    /// Partition the complete exceptional sets with l ≤ max-l by Hom-Ext quiver.
    Classify {
        #[arg(long, default_value_t = 2)]
        max_l: usize,
    },
    /// Apply T_L^a T_R^b to a collection.
    Twist {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[arg(allow_hyphen_values = true)]
        b: i64,
    },
    /// Superquiver of a collection, optionally compared with a second one.
    Superquiver {
        file: PathBuf,
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Matrix-oracle dimensions against the string combinatorics.
    Oracle { m1: String, m2: String },
    /// SVG of the arc diagram; each --band adds the closed curve of that band power.
    Render {
        file: PathBuf,
        #[arg(long)]
        band: Vec<usize>,
    },
}

enum Fail {
    Usage(String),
    Io(String),
    Inconsistent(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Io(_) => 1,
            Fail::Usage(_) => 2,
            Fail::Inconsistent(_) => 3,
        }
    }
}

type Res<T> = Result<T, Fail>;

fn usage(e: impl ToString) -> Fail {
    Fail::Usage(e.to_string())
}

/// Text and JSON forms of one command's result.
struct Output {
    command: &'static str,
    text: String,
    json: Value,
}

fn parse_quiver(s: &str) -> Res<Orientation> {
    s.parse().map_err(|e| usage(format!("quiver {s:?}: {e}")))
}

fn quiver_arg(cli: &Cli) -> Res<Orientation> {
    let s = cli.quiver.as_deref().ok_or_else(|| usage("--quiver is required"))?;
    parse_quiver(s)
}

fn module_arg(q: &Orientation, s: &str) -> Res<StringModule> {
    let m = parse_module_arg(s).map_err(|_| usage(format!("cannot parse module {s:?}")))?;
    check_range(q, &[m]).map_err(usage)?;
    Ok(m)
}

/// Reads a collection; the quiver comes from `--quiver` or the file.
fn load(cli: &Cli, path: &Path) -> Res<(Orientation, Vec<StringModule>)> {
    let text = fs::read_to_string(path).map_err(|e| Fail::Io(format!("{}: {e}", path.display())))?;
    let c = parse_collection(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let q = match (&cli.quiver, &c.quiver) {
        (Some(a), Some(b)) if a != b => return Err(usage(format!("--quiver {a} disagrees with the file's {b}"))),
        (Some(a), _) | (None, Some(a)) => parse_quiver(a)?,
        (None, None) => return Err(usage("--quiver is required")),
    };
    check_range(&q, &c.modules).map_err(usage)?;
    check_distinct(&c.modules).map_err(usage)?;
    Ok((q, c.modules))
}

fn labels(ms: &[StringModule]) -> Vec<String> {
    ms.iter().map(ToString::to_string).collect()
}

fn describe_map(g: &GraphMap) -> String {
    format!(
        "graph map, quotient cut ({},{}), submodule cut ({},{}){}",
        g.quotient.p,
        g.quotient.q,
        g.submodule.p,
        g.submodule.q,
        if g.two_sided { ", two-sided" } else { "" }
    )
}

fn describe_ext(e: &ExtClass) -> String {
    match e {
        ExtClass::Connection { arrow, side, middle } => {
            let side = match side {
                ConnectionSide::AfterFirst => "after first",
                ConnectionSide::AfterSecond => "after second",
            };
            format!("connection through arrow {arrow} ({side}), middle {middle}")
        }
        ExtClass::GraphMap { map, middle } => format!(
            "from the two-sided map {} -> {}, middle {} + {}",
            map.source, map.target, middle[0], middle[1]
        ),
    }
}

fn write_quiver(s: &mut String, h: &QuiverWithRelations) {
    for (k, a) in h.arrows.iter().enumerate() {
        let kind = match a.degree {
            Some(0) => " hom",
            Some(1) => " ext",
            _ => "",
        };
        let _ = writeln!(s, "  a{k}: {} -> {}{kind}", h.vertices[a.src], h.vertices[a.tgt]);
    }
    for (x, y) in &h.relations {
        let _ = writeln!(s, "  relation a{x} a{y} = 0");
    }
}

fn cmd_hom(cli: &Cli, m1: &str, m2: &str) -> Res<Output> {
    let q = quiver_arg(cli)?;
    let (a, b) = (module_arg(&q, m1)?, module_arg(&q, m2)?);
    let basis = graph_maps(&q, &a, &b);
    let mut text = format!("dim Hom({a}, {b}) = {}\n", basis.len());
    for g in &basis {
        let _ = writeln!(text, "  {}", describe_map(g));
    }
    let json = json!({"quiver": q.to_string(), "source": a, "target": b, "dim": basis.len(), "basis": basis});
    Ok(Output { command: "hom", text, json })
}

fn cmd_ext(cli: &Cli, m1: &str, m2: &str) -> Res<Output> {
    let q = quiver_arg(cli)?;
    let (a, b) = (module_arg(&q, m1)?, module_arg(&q, m2)?);
    let basis = ext_basis(&q, &a, &b);
    let mut text = format!("dim Ext({a}, {b}) = {}\n", basis.len());
    for e in &basis {
        let _ = writeln!(text, "  {}", describe_ext(e));
    }
    let json = json!({"quiver": q.to_string(), "source": a, "target": b, "dim": basis.len(), "basis": basis});
    Ok(Output { command: "ext", text, json })
}

/// The geometric quiver, or the algebraic one when the diagram route does not
/// apply; the two must agree when both exist.
fn homext_quiver(q: &Orientation, ms: &[StringModule]) -> Res<HomExtQuiver> {
    let alg = build_algebraic(q, ms).map_err(usage)?;
    match build_geometric(q, ms) {
        Ok(geo) => {
            if iso_with_relations(&geo.quiver, &alg.quiver).is_none() {
                return Err(Fail::Inconsistent("geometric and algebraic Hom-Ext quivers differ".into()));
            }
            Ok(geo)
        }
        Err(_) => Ok(alg),
    }
}

fn named_orderings(ms: &[StringModule], orders: &[Vec<usize>]) -> Vec<Vec<String>> {
    orders.iter().map(|o| o.iter().map(|&k| ms[k].to_string()).collect()).collect()
}

const LIST_ORDERINGS_UP_TO: usize = 8;

fn cmd_hequiver(cli: &Cli, file: &Path) -> Res<Output> {
    let (q, ms) = load(cli, file)?;
    let exceptional = is_exceptional_set(&q, &ms);
    let mut text = format!("quiver {q}, {} modules, exceptional: {exceptional}\n", ms.len());
    let mut json = json!({"quiver": q.to_string(), "modules": ms, "exceptional": exceptional});
    if exceptional {
        let h = homext_quiver(&q, &ms)?;
        write_quiver(&mut text, &h.quiver);
        let count = count_linear_extensions(&h).map_err(usage)?;
        let _ = writeln!(text, "orderings: {count}");
        json["hom_ext_quiver"] = serde_json::to_value(&h.quiver).unwrap();
        json["linear_extensions"] = json!(count.to_string());
        if ms.len() <= LIST_ORDERINGS_UP_TO {
            let orders = exceptional_orderings(&q, &ms).map_err(usage)?;
            if orders.len().to_string() != count.to_string() {
                return Err(Fail::Inconsistent(format!("{} orderings found, {count} linear extensions", orders.len())));
            }
            let named = named_orderings(&ms, &orders);
            for o in &named {
                let _ = writeln!(text, "  {}", o.join(" "));
            }
            json["orderings"] = json!(named);
        }
    } else {
        let h = build_algebraic(&q, &ms).map_err(usage)?;
        let cycle: Vec<String> = h.quiver.find_cycle().unwrap_or_default().iter().map(|&v| ms[v].to_string()).collect();
        let _ = writeln!(text, "cycle: {}", cycle.join(" -> "));
        write_quiver(&mut text, &h.quiver);
        json["cycle"] = json!(cycle);
        json["hom_ext_quiver"] = serde_json::to_value(&h.quiver).unwrap();
    }
    Ok(Output { command: "hequiver", text, json })
}

fn cmd_orderings(cli: &Cli, file: &Path) -> Res<Output> {
    let (q, ms) = load(cli, file)?;
    let orders = exceptional_orderings(&q, &ms).map_err(usage)?;
    let named = named_orderings(&ms, &orders);
    let mut text = format!("{} exceptional orderings\n", named.len());
    for o in &named {
        let _ = writeln!(text, "  {}", o.join(" "));
    }
    Ok(Output { command: "orderings", text, json: json!({"quiver": q.to_string(), "count": named.len(), "orderings": named}) })
}

fn cmd_check(cli: &Cli, file: &Path) -> Res<Output> {
    let (q, ms) = load(cli, file)?;
    let algebraic = is_exceptional_set(&q, &ms);
    let diagram = ms.len() == q.n() && ArcDiagram::from_modules(&q, &ms).is_exceptional().unwrap_or(false);
    let orders = exceptional_orderings(&q, &ms).map_err(usage)?;
    let mut checks: Vec<(&str, bool)> = vec![("acyclic quiver = some exceptional ordering", algebraic == !orders.is_empty())];
    if ms.len() == q.n() {
        checks.push(("acyclic quiver = exceptional arc diagram", algebraic == diagram));
    }
    if algebraic {
        let alg = build_algebraic(&q, &ms).map_err(usage)?;
        checks.push(("no radical diagnostics", alg.diagnostics.is_empty()));
        if let Ok(geo) = build_geometric(&q, &ms) {
            checks.push(("geometric = algebraic", iso_with_relations(&geo.quiver, &alg.quiver).is_some()));
            let tiling = ArcDiagram::from_modules(&q, &ms).tiling_algebra();
            let same = tiling.is_ok_and(|t| iso_with_relations(&geo.quiver.without_degrees(), &t).is_some());
            checks.push(("geometric = tiling algebra", same));
            checks.push(("gentle", is_gentle(&geo.quiver)));
        }
        let count = count_linear_extensions(&alg).map_err(usage)?;
        checks.push(("linear extensions = orderings", count == orders.len().into()));
    }
    let mut text = format!("exceptional: {algebraic}\n");
    for (name, ok) in &checks {
        let _ = writeln!(text, "  {} {name}", if *ok { "ok  " } else { "FAIL" });
    }
    let json = json!({
        "quiver": q.to_string(),
        "exceptional": algebraic,
        "checks": checks.iter().map(|(n, ok)| json!({"check": n, "ok": ok})).collect::<Vec<_>>(),
    });
    if checks.iter().any(|c| !c.1) {
        print_output(cli, &Output { command: "check", text, json })?;
        return Err(Fail::Inconsistent("checks disagree".into()));
    }
    Ok(Output { command: "check", text, json })
}

#[derive(Serialize)]
struct Member {
    modules: Vec<StringModule>,
    /// From the class representative; `None` when the window is exhausted.
    equivalence: Option<Equivalence>,
}

fn cmd_classify(cli: &Cli, max_l: usize) -> Res<Output> {
    let q = quiver_arg(cli)?;
    let sets = complete_exceptional_sets(&q, max_l);
    let classes = classify(&q, &sets, cli.window).map_err(usage)?;
    let mut text = format!("{} sets with l ≤ {max_l}, {} classes (window {})\n", sets.len(), classes.len(), cli.window);
    let mut out = Vec::new();
    let mut exhausted = 0;
    for (k, c) in classes.iter().enumerate() {
        let members: Vec<Member> = c
            .members
            .iter()
            .map(|(s, w)| Member {
                modules: s.clone(),
                equivalence: match w {
                    Some(word) => Some(Equivalence { swap: None, word: *word }),
                    None => find_equivalence(&q, &c.representative, s, cli.window),
                },
            })
            .collect();
        let missing = members.iter().filter(|m| m.equivalence.is_none()).count();
        exhausted += missing;
        let _ = writeln!(
            text,
            "class {k}: {} members, representative {}{}",
            members.len(),
            labels(&c.representative).join(" "),
            if missing > 0 { format!(", {missing} beyond the window") } else { String::new() }
        );
        write_quiver(&mut text, &c.quiver.quiver.without_degrees());
        out.push(json!({"representative": c.representative, "quiver": c.quiver.quiver.without_degrees(), "members": members}));
    }
    let json = json!({
        "quiver": q.to_string(),
        "max_l": max_l,
        "window": cli.window,
        "sets": sets.len(),
        "class_count": classes.len(),
        "window_exhausted": exhausted,
        "classes": out,
    });
    Ok(Output { command: "classify", text, json })
}

fn cmd_twist(cli: &Cli, file: &Path, a: i64, b: i64) -> Res<Output> {
    let (q, ms) = load(cli, file)?;
    let w = TwistWord::new(a, b);
    let twisted: Vec<StringModule> = ms.iter().map(|m| twist(&q, m, w)).collect();
    let json = json!({"quiver": q.to_string(), "word": w, "modules": twisted});
    Ok(Output { command: "twist", text: format_collection(&twisted), json })
}

fn superquiver_of(q: &Orientation, ms: &[StringModule]) -> Res<(HomExtQuiver, Superquiver)> {
    let h = build_geometric(q, ms).map_err(usage)?;
    let s = from_homext(q, &h);
    Ok((h, s))
}

fn cmd_superquiver(cli: &Cli, file: &Path, compare: Option<&Path>) -> Res<Output> {
    let (q, ms) = load(cli, file)?;
    let (h, s) = superquiver_of(&q, &ms)?;
    let mut text = String::new();
    write_quiver(&mut text, &s.quiver);
    for (k, f) in s.frozen.iter().enumerate() {
        if *f {
            let _ = writeln!(text, "  a{k} frozen");
        }
    }
    let rep = defining_representation(&q, &h);
    let irreducible = match &rep {
        Some(r) => is_irreducible(&q, &s, r).map_err(usage)?,
        None => false,
    };
    let _ = writeln!(text, "defining representation: {}", if rep.is_some() { "found" } else { "none" });
    let _ = writeln!(text, "irreducible: {irreducible}");
    let mut json = json!({
        "quiver": q.to_string(),
        "superquiver": s,
        "trivial_twist": s.trivial_twist(),
        "representation": rep,
        "irreducible": irreducible,
    });
    if let Some(other) = compare {
        let (q2, ms2) = load(cli, other)?;
        if q2 != q {
            return Err(usage("compared collections must share the quiver"));
        }
        let (_, s2) = superquiver_of(&q, &ms2)?;
        let equivalent = twist_equivalent_super(&s, &s2);
        let relation = find_equivalence(&q, &ms, &ms2, cli.window);
        let _ = writeln!(text, "twist equivalent to {}: {equivalent}", other.display());
        if let Some(e) = relation {
            let _ = writeln!(text, "  by word ({},{}){}", e.word.a, e.word.b, e.swap.map_or(String::new(), |c| format!(" after swap {c}")));
        }
        json["compare"] = json!({"superquiver": s2, "twist_equivalent": equivalent, "equivalence": relation});
    }
    Ok(Output { command: "superquiver", text, json })
}

fn cmd_oracle(cli: &Cli, m1: &str, m2: &str) -> Res<Output> {
    let q = quiver_arg(cli)?;
    let (a, b) = (module_arg(&q, m1)?, module_arg(&q, m2)?);
    let inconsistent = |e: homext::oracle::OracleError| Fail::Inconsistent(e.to_string());
    let fp = string_dims::<Fp>(&q, &a, &b).map_err(inconsistent)?;
    let rat = string_dims::<BigRational>(&q, &a, &b).map_err(inconsistent)?;
    let (hom, ext) = (graph_maps(&q, &a, &b).len(), ext_basis(&q, &a, &b).len());
    let text = format!(
        "Hom({a}, {b}): oracle {} (F_p) {} (Q), strings {hom}\nExt({a}, {b}): oracle {} (F_p) {} (Q), strings {ext}\n",
        fp.hom, rat.hom, fp.ext_euler, rat.ext_euler
    );
    let json = json!({
        "quiver": q.to_string(),
        "source": a,
        "target": b,
        "hom": {"prime_field": fp.hom, "rational": rat.hom, "strings": hom},
        "ext": {"prime_field": fp.ext_euler, "rational": rat.ext_euler, "strings": ext},
    });
    if fp != rat || fp.hom != hom || fp.ext_euler != ext {
        print_output(cli, &Output { command: "oracle", text, json })?;
        return Err(Fail::Inconsistent("oracle and string combinatorics disagree".into()));
    }
    Ok(Output { command: "oracle", text, json })
}

fn cmd_render(cli: &Cli, file: &Path, bands: &[usize]) -> Res<Output> {
    let (q, ms) = load(cli, file)?;
    let curves: Vec<ClosedCurve> = bands.iter().map(|&l| ClosedCurve { winding: l }).collect();
    let svg = render_svg(&ArcDiagram::from_modules(&q, &ms), &curves);
    let json = json!({"quiver": q.to_string(), "svg": svg});
    Ok(Output { command: "render", text: svg, json })
}

fn print_output(cli: &Cli, o: &Output) -> Res<()> {
    let body = if cli.json { report(o.command, &o.json) + "\n" } else { o.text.clone() };
    match &cli.out {
        Some(p) => fs::write(p, body).map_err(|e| Fail::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Res<()> {
    let out = match &cli.cmd {
        Cmd::Hom { m1, m2 } => cmd_hom(cli, m1, m2)?,
        Cmd::Ext { m1, m2 } => cmd_ext(cli, m1, m2)?,
        Cmd::Hequiver { file } => cmd_hequiver(cli, file)?,
        Cmd::Orderings { file } => cmd_orderings(cli, file)?,
        Cmd::Check { file } => cmd_check(cli, file)?,
        Cmd::Classify { max_l } => cmd_classify(cli, *max_l)?,
        Cmd::Twist { file, a, b } => cmd_twist(cli, file, *a, *b)?,
        Cmd::Superquiver { file, compare } => cmd_superquiver(cli, file, compare.as_deref())?,
        Cmd::Oracle { m1, m2 } => cmd_oracle(cli, m1, m2)?,
        Cmd::Render { file, band } => cmd_render(cli, file, band)?,
    };
    print_output(cli, &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Fail::Usage(m) | Fail::Io(m) | Fail::Inconsistent(m)) = &f;
            eprintln!("homext: {m}");
            ExitCode::from(f.code())
        }
    }
}
